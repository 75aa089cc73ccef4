use std::fmt;

use crate::error::{Error, Position, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Var(String),
    Int(i64),
    If,
    Comma,
    Semicolon,
    Dot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    AmpK,
    AmpM,
    Tilde,
    Minus,
    Not,
    Show,
    Const,
    Slash,
    Eq,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) | TokenKind::Var(s) => f.write_str(s),
            TokenKind::Int(i) => write!(f, "{i}"),
            TokenKind::If => f.write_str(":-"),
            TokenKind::Comma => f.write_str(","),
            TokenKind::Semicolon => f.write_str(";"),
            TokenKind::Dot => f.write_str("."),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::LBrace => f.write_str("{"),
            TokenKind::RBrace => f.write_str("}"),
            TokenKind::AmpK => f.write_str("&k"),
            TokenKind::AmpM => f.write_str("&m"),
            TokenKind::Tilde => f.write_str("~"),
            TokenKind::Minus => f.write_str("-"),
            TokenKind::Not => f.write_str("not"),
            TokenKind::Show => f.write_str("#show"),
            TokenKind::Const => f.write_str("#const"),
            TokenKind::Slash => f.write_str("/"),
            TokenKind::Eq => f.write_str("="),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Position,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Position,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn take_word(&mut self, first: char) -> String {
        let mut word = String::from(first);
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        word
    }
}

/// Splits source text into tokens. `%` starts a comment running to the end
/// of the line.
pub fn tokenize(source: &str) -> Result<Vec<Token>> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        pos: Position { line: 1, column: 1 },
    };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let pos = cur.pos;
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '%' {
            while let Some(c) = cur.bump() {
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        cur.bump();
        let kind = match c {
            ',' => TokenKind::Comma,
            ';' => TokenKind::Semicolon,
            '.' => TokenKind::Dot,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '{' => TokenKind::LBrace,
            '}' => TokenKind::RBrace,
            '~' => TokenKind::Tilde,
            '-' => TokenKind::Minus,
            '/' => TokenKind::Slash,
            '=' => TokenKind::Eq,
            ':' => {
                if cur.peek() == Some('-') {
                    cur.bump();
                    TokenKind::If
                } else {
                    return Err(lex_error(pos, "expected `:-`"));
                }
            }
            '&' => match cur.bump() {
                Some('k') => TokenKind::AmpK,
                Some('m') => TokenKind::AmpM,
                _ => return Err(lex_error(pos, "expected `&k` or `&m`")),
            },
            '#' => {
                let word = match cur.bump() {
                    Some(first) if first.is_ascii_alphabetic() => cur.take_word(first),
                    _ => String::new(),
                };
                match word.as_str() {
                    "show" => TokenKind::Show,
                    "const" => TokenKind::Const,
                    _ => return Err(lex_error(pos, format!("unknown directive `#{word}`"))),
                }
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::from(c);
                while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                    digits.push(d);
                    cur.bump();
                }
                let value = digits
                    .parse()
                    .map_err(|_| lex_error(pos, format!("integer `{digits}` out of range")))?;
                TokenKind::Int(value)
            }
            c if c.is_ascii_lowercase() => {
                let word = cur.take_word(c);
                if word == "not" {
                    TokenKind::Not
                } else {
                    TokenKind::Ident(word)
                }
            }
            c if c.is_ascii_uppercase() || c == '_' => TokenKind::Var(cur.take_word(c)),
            other => return Err(lex_error(pos, format!("unexpected character `{other}`"))),
        };
        tokens.push(Token { kind, pos });
    }
    Ok(tokens)
}

fn lex_error(pos: Position, msg: impl Into<String>) -> Error {
    Error::Lex { pos, msg: msg.into() }
}

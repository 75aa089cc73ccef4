use std::collections::HashMap;

use super::lexer::{tokenize, Token, TokenKind};
use super::{Atom, BodyLiteral, Directive, ObjectiveLiteral, Program, Rule, SubjectiveAtom, Term};
use crate::error::{Error, Position, Result};

struct Parser<'t> {
    tokens: &'t [Token],
    idx: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t TokenKind> {
        self.tokens.get(self.idx).map(|t| &t.kind)
    }

    fn peek_at(&self, offset: usize) -> Option<&'t TokenKind> {
        self.tokens.get(self.idx + offset).map(|t| &t.kind)
    }

    fn pos(&self) -> Position {
        match self.tokens.get(self.idx).or_else(|| self.tokens.last()) {
            Some(t) if self.idx < self.tokens.len() => t.pos,
            Some(t) => Position {
                line: t.pos.line,
                column: t.pos.column + t.kind.to_string().chars().count(),
            },
            None => Position { line: 1, column: 1 },
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T> {
        match self.peek() {
            Some(tok) => self.error(format!("expected {expected}, found `{tok}`")),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == Some(kind) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind) -> Result<()> {
        if self.eat(kind) {
            Ok(())
        } else {
            self.unexpected(&format!("`{kind}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(TokenKind::Ident(name)) => {
                self.idx += 1;
                Ok(name.clone())
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn statement(&mut self, program: &mut Program) -> Result<()> {
        match self.peek() {
            Some(TokenKind::Show) => {
                self.idx += 1;
                let negated = self.eat(&TokenKind::Minus);
                let predicate = self.ident()?;
                self.expect(&TokenKind::Slash)?;
                let arity = match self.peek() {
                    Some(TokenKind::Int(n)) if *n >= 0 => *n as usize,
                    _ => return self.unexpected("a non-negative arity"),
                };
                self.idx += 1;
                self.expect(&TokenKind::Dot)?;
                program.directives.push(Directive::Show {
                    predicate,
                    arity,
                    negated,
                });
            }
            Some(TokenKind::Const) => {
                self.idx += 1;
                let name = self.ident()?;
                self.expect(&TokenKind::Eq)?;
                let value = self.term()?;
                if !value.is_ground() {
                    return self.error(format!("constant `{name}` must be ground"));
                }
                self.expect(&TokenKind::Dot)?;
                program.directives.push(Directive::Const { name, value });
            }
            _ => {
                let rule = self.rule()?;
                program.rules.push(rule);
            }
        }
        Ok(())
    }

    fn rule(&mut self) -> Result<Rule> {
        if self.eat(&TokenKind::LBrace) {
            let atom = self.classical_atom()?;
            self.expect(&TokenKind::RBrace)?;
            if self.peek() != Some(&TokenKind::Dot) {
                return self.error("choice rules take a single atom and no body");
            }
            self.idx += 1;
            return Ok(Rule::choice(atom));
        }

        let mut head = Vec::new();
        if self.peek() != Some(&TokenKind::If) {
            loop {
                head.push(self.classical_atom()?);
                if !(self.eat(&TokenKind::Comma) || self.eat(&TokenKind::Semicolon)) {
                    break;
                }
            }
        }

        let mut body = Vec::new();
        if self.eat(&TokenKind::If) {
            loop {
                body.push(self.body_literal()?);
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        } else if head.is_empty() {
            return self.unexpected("a rule");
        }
        self.expect(&TokenKind::Dot)?;
        Ok(Rule::new(head, body))
    }

    fn body_literal(&mut self) -> Result<BodyLiteral> {
        let mut nots = 0u8;
        while self.eat(&TokenKind::Not) {
            nots += 1;
            if nots > 2 {
                return self.error("at most two default negations are allowed");
            }
        }
        match self.peek() {
            Some(TokenKind::AmpK) | Some(TokenKind::AmpM) => {
                let modal_m = self.peek() == Some(&TokenKind::AmpM);
                self.idx += 1;
                self.expect(&TokenKind::LBrace)?;
                let mut atom = self.subjective_inner()?;
                self.expect(&TokenKind::RBrace)?;
                // M l is sugar for `not K ~l`; `~~a` collapses to `a`.
                let mut negated = nots % 2 == 1;
                if modal_m {
                    atom.inner_neg = !atom.inner_neg;
                    negated = !negated;
                }
                Ok(BodyLiteral::Subjective { negated, atom })
            }
            _ => {
                let atom = self.classical_atom()?;
                Ok(BodyLiteral::Objective(ObjectiveLiteral {
                    atom,
                    default_negs: nots,
                }))
            }
        }
    }

    fn subjective_inner(&mut self) -> Result<SubjectiveAtom> {
        let inner_neg = self.eat(&TokenKind::Tilde);
        match self.peek() {
            Some(TokenKind::Tilde) => return self.error("at most one `~` is allowed inside `&k{...}`"),
            Some(TokenKind::AmpK) | Some(TokenKind::AmpM) => return self.error("subjective atoms cannot be nested"),
            Some(TokenKind::Not) => return self.error("use `~` for default negation inside `&k{...}`"),
            _ => {}
        }
        let atom = self.classical_atom()?;
        Ok(SubjectiveAtom { atom, inner_neg })
    }

    fn classical_atom(&mut self) -> Result<Atom> {
        let negated = self.eat(&TokenKind::Minus);
        let pos = self.pos();
        let predicate = self.ident()?;
        if super::is_reserved(&predicate) {
            return Err(Error::Syntax {
                pos,
                msg: format!("atom name `{predicate}` uses a reserved prefix"),
            });
        }
        let args = if self.eat(&TokenKind::LParen) {
            self.term_list()?
        } else {
            Vec::new()
        };
        Ok(Atom {
            negated,
            predicate,
            args,
        })
    }

    fn term_list(&mut self) -> Result<Vec<Term>> {
        let mut terms = vec![self.term()?];
        while self.eat(&TokenKind::Comma) {
            terms.push(self.term()?);
        }
        self.expect(&TokenKind::RParen)?;
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(TokenKind::Ident(name)) => {
                self.idx += 1;
                if self.eat(&TokenKind::LParen) {
                    Ok(Term::Func(name.clone(), self.term_list()?))
                } else {
                    Ok(Term::Const(name.clone()))
                }
            }
            Some(TokenKind::Var(name)) => {
                self.idx += 1;
                Ok(Term::Var(name.clone()))
            }
            Some(TokenKind::Int(i)) => {
                self.idx += 1;
                Ok(Term::Int(*i))
            }
            Some(TokenKind::Minus) if matches!(self.peek_at(1), Some(TokenKind::Int(_))) => {
                self.idx += 1;
                let Some(TokenKind::Int(i)) = self.peek() else {
                    unreachable!()
                };
                self.idx += 1;
                Ok(Term::Int(-i))
            }
            _ => self.unexpected("a term"),
        }
    }
}

/// Parses a token sequence into a program. `#const` definitions are
/// substituted into all rule terms once the whole input has been read.
pub fn parse_tokens(tokens: &[Token]) -> Result<Program> {
    let mut parser = Parser { tokens, idx: 0 };
    let mut program = Program::default();
    while parser.peek().is_some() {
        parser.statement(&mut program)?;
    }
    substitute_consts(&mut program);
    Ok(program)
}

pub fn parse_program(tokens: &[Token]) -> Result<Program> {
    parse_tokens(tokens)
}

pub(crate) fn parse_atom(text: &str) -> Result<Atom> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens: &tokens,
        idx: 0,
    };
    let negated = parser.eat(&TokenKind::Minus);
    let predicate = parser.ident()?;
    let args = if parser.eat(&TokenKind::LParen) {
        parser.term_list()?
    } else {
        Vec::new()
    };
    if parser.peek().is_some() {
        return parser.unexpected("end of atom");
    }
    Ok(Atom {
        negated,
        predicate,
        args,
    })
}

fn substitute_consts(program: &mut Program) {
    let consts: HashMap<String, Term> = program
        .directives
        .iter()
        .filter_map(|d| match d {
            Directive::Const { name, value } => Some((name.clone(), value.clone())),
            _ => None,
        })
        .collect();
    if consts.is_empty() {
        return;
    }
    fn subst(term: &mut Term, consts: &HashMap<String, Term>) {
        match term {
            Term::Const(name) => {
                if let Some(value) = consts.get(name) {
                    *term = value.clone();
                }
            }
            Term::Func(_, args) => args.iter_mut().for_each(|t| subst(t, consts)),
            Term::Int(_) | Term::Var(_) => {}
        }
    }
    let subst_atom = |atom: &mut Atom| atom.args.iter_mut().for_each(|t| subst(t, &consts));
    for rule in &mut program.rules {
        rule.head.iter_mut().for_each(subst_atom);
        for lit in &mut rule.body {
            match lit {
                BodyLiteral::Objective(l) => subst_atom(&mut l.atom),
                BodyLiteral::Subjective { atom, .. } => subst_atom(&mut atom.atom),
            }
        }
    }
}

//! Surface language: terms, literals, rules and directives, together with
//! the lexer, the recursive-descent parser and the pretty-printer.
//!
//! The printer is the inverse of the parser for every program it can print:
//! `parse_program(&program.to_string())` yields `program` back.

mod lexer;
mod parser;

use std::fmt;

pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse_program, parse_tokens};

/// Atom-name prefixes reserved for atoms introduced by program transformations.
pub const RESERVED_PREFIXES: [&str; 3] = ["aux_", "naux_", "k15aux_"];

/// Returns true if `name` starts with a prefix reserved for generated atoms.
pub fn is_reserved(name: &str) -> bool {
    RESERVED_PREFIXES.iter().any(|p| name.starts_with(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Int(i64),
    Var(String),
    Func(String, Vec<Term>),
}

impl Term {
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) | Term::Int(_) => true,
            Term::Func(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Appends the variables of this term to `out`, in order of occurrence.
    pub fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::Func(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Term::Const(_) | Term::Int(_) => {}
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => f.write_str(c),
            Term::Int(i) => write!(f, "{i}"),
            Term::Var(v) => f.write_str(v),
            Term::Func(name, args) => {
                write!(f, "{name}(")?;
                write_joined(f, args, ",")?;
                f.write_str(")")
            }
        }
    }
}

/// A classical atom. `negated` is explicit (strong) negation: `-p(a)` and
/// `p(a)` are distinct atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub negated: bool,
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            negated: false,
            predicate: predicate.into(),
            args,
        }
    }

    /// Parses a ground atom such as `p`, `-fair(mike)` or `f(g(1),a)`.
    pub fn parse(text: &str) -> crate::Result<Atom> {
        parser::parse_atom(text)
    }

    pub fn prop(predicate: impl Into<String>) -> Self {
        Atom::new(predicate, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    /// The explicitly negated counterpart: `p` for `-p` and vice versa.
    pub fn complement(&self) -> Atom {
        Atom {
            negated: !self.negated,
            ..self.clone()
        }
    }

    pub fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        self.args.iter().for_each(|t| t.collect_vars(out));
    }

    pub fn is_reserved(&self) -> bool {
        is_reserved(&self.predicate)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_joined(f, &self.args, ",")?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// An atom under zero, one or two default negations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectiveLiteral {
    pub atom: Atom,
    pub default_negs: u8,
}

impl ObjectiveLiteral {
    pub fn positive(atom: Atom) -> Self {
        ObjectiveLiteral { atom, default_negs: 0 }
    }

    pub fn negative(atom: Atom) -> Self {
        ObjectiveLiteral { atom, default_negs: 1 }
    }

    pub fn is_positive(&self) -> bool {
        self.default_negs == 0
    }
}

impl fmt::Display for ObjectiveLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.default_negs {
            f.write_str("not ")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// `K l` where `l` is an atom, possibly under one inner default negation
/// (written `~` in the surface syntax).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubjectiveAtom {
    pub atom: Atom,
    pub inner_neg: bool,
}

impl SubjectiveAtom {
    pub fn new(atom: Atom, inner_neg: bool) -> Self {
        SubjectiveAtom { atom, inner_neg }
    }
}

/// Prints in the surface form `&k{ p }`, `&k{ ~-p }`, ...
impl fmt::Display for SubjectiveAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = if self.inner_neg { "~" } else { "" };
        write!(f, "&k{{ {tilde}{} }}", self.atom)
    }
}

/// The surface form of a ground subjective atom, e.g. `&k{ interview(mike) }`.
pub fn print_subjective(atom: &SubjectiveAtom) -> String {
    atom.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BodyLiteral {
    Objective(ObjectiveLiteral),
    Subjective { negated: bool, atom: SubjectiveAtom },
}

impl BodyLiteral {
    pub fn is_subjective(&self) -> bool {
        matches!(self, BodyLiteral::Subjective { .. })
    }

    pub fn atom(&self) -> &Atom {
        match self {
            BodyLiteral::Objective(l) => &l.atom,
            BodyLiteral::Subjective { atom, .. } => &atom.atom,
        }
    }
}

impl fmt::Display for BodyLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyLiteral::Objective(l) => write!(f, "{l}"),
            BodyLiteral::Subjective { negated, atom } => {
                if *negated {
                    f.write_str("not ")?;
                }
                write!(f, "{atom}")
            }
        }
    }
}

/// `h1, ..., hn :- b1, ..., bm.` An empty head is a constraint, an empty body
/// a fact. A choice rule `{a}.` has one head atom and no body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Vec<Atom>,
    pub body: Vec<BodyLiteral>,
    pub choice: bool,
}

impl Rule {
    pub fn new(head: Vec<Atom>, body: Vec<BodyLiteral>) -> Self {
        Rule {
            head,
            body,
            choice: false,
        }
    }

    pub fn fact(atom: Atom) -> Self {
        Rule::new(vec![atom], Vec::new())
    }

    pub fn choice(atom: Atom) -> Self {
        Rule {
            head: vec![atom],
            body: Vec::new(),
            choice: true,
        }
    }

    pub fn is_fact(&self) -> bool {
        !self.choice && self.head.len() == 1 && self.body.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.head.iter().all(Atom::is_ground) && self.body.iter().all(|l| l.atom().is_ground())
    }

    pub fn has_subjective(&self) -> bool {
        self.body.iter().any(BodyLiteral::is_subjective)
    }

    /// Variables in order of first occurrence, head first.
    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.head.iter().for_each(|a| a.collect_vars(&mut out));
        self.body.iter().for_each(|l| l.atom().collect_vars(&mut out));
        out
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.choice {
            f.write_str("{")?;
            write_joined(f, &self.head, ", ")?;
            f.write_str("}")?;
        } else {
            write_joined(f, &self.head, ", ")?;
        }
        if !self.body.is_empty() {
            if self.head.is_empty() {
                f.write_str(":- ")?;
            } else {
                f.write_str(" :- ")?;
            }
            write_joined(f, &self.body, ", ")?;
        } else if self.head.is_empty() {
            f.write_str(":-")?;
        }
        f.write_str(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Directive {
    /// `#show p/n.` or `#show -p/n.`
    Show {
        predicate: String,
        arity: usize,
        negated: bool,
    },
    /// `#const name = value.`
    Const { name: String, value: Term },
}

impl Directive {
    /// True if this is a `#show` directive selecting `atom`'s predicate.
    pub fn shows(&self, atom: &Atom) -> bool {
        match self {
            Directive::Show {
                predicate,
                arity,
                negated,
            } => *predicate == atom.predicate && *arity == atom.arity() && *negated == atom.negated,
            Directive::Const { .. } => false,
        }
    }
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Directive::Show {
                predicate,
                arity,
                negated,
            } => {
                let minus = if *negated { "-" } else { "" };
                write!(f, "#show {minus}{predicate}/{arity}.")
            }
            Directive::Const { name, value } => write!(f, "#const {name}={value}."),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub directives: Vec<Directive>,
}

impl Program {
    pub fn parse(text: &str) -> crate::Result<Program> {
        parse_program(&tokenize(text)?)
    }

    pub fn show_directives(&self) -> impl Iterator<Item = &Directive> {
        self.directives.iter().filter(|d| matches!(d, Directive::Show { .. }))
    }

    pub fn has_subjective(&self) -> bool {
        self.rules.iter().any(Rule::has_subjective)
    }
}

/// One statement per line: rules first, then directives.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        for directive in &self.directives {
            writeln!(f, "{directive}")?;
        }
        Ok(())
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

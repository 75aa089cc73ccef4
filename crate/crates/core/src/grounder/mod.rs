//! Ground programs, Herbrand instantiation and the grounding-time
//! simplification used to approximate the well-founded model.

mod instantiate;
mod simplify;

use std::collections::HashMap;
use std::fmt;

pub use instantiate::{ground_program, safety_check};
pub use simplify::simplify;

use crate::stable::Interpretation;
use crate::syntax::{Atom, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interning table of ground atoms. Ids are dense and append-only, so an id
/// stays valid in every program derived from the one that created it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Symbols {
    atoms: Vec<Atom>,
    index: HashMap<Atom, AtomId>,
}

impl Symbols {
    pub fn intern(&mut self, atom: &Atom) -> AtomId {
        if let Some(&id) = self.index.get(atom) {
            return id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(atom.clone());
        self.index.insert(atom.clone(), id);
        id
    }

    pub fn get(&self, atom: &Atom) -> Option<AtomId> {
        self.index.get(atom).copied()
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> {
        (0..self.atoms.len() as u32).map(AtomId)
    }

    /// The explicitly negated counterpart of `id`, if it is interned.
    pub fn complement(&self, id: AtomId) -> Option<AtomId> {
        self.get(&self.atom(id).complement())
    }

    /// Atoms whose names do not carry a reserved prefix.
    pub fn visible(&self) -> Interpretation {
        self.ids().filter(|&id| !self.atom(id).is_reserved()).collect()
    }
}

/// `K a` or `K ~a` over a ground atom (which may itself be explicitly negated).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSubjective {
    pub atom: AtomId,
    pub inner_neg: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroundLiteral {
    Pos(AtomId),
    Neg(AtomId),
    /// `not not a`
    NegNeg(AtomId),
    Subjective {
        negated: bool,
        atom: GroundSubjective,
    },
}

impl GroundLiteral {
    pub fn atom(self) -> AtomId {
        match self {
            GroundLiteral::Pos(a) | GroundLiteral::Neg(a) | GroundLiteral::NegNeg(a) => a,
            GroundLiteral::Subjective { atom, .. } => atom.atom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundRule {
    pub head: Vec<AtomId>,
    pub body: Vec<GroundLiteral>,
    pub choice: bool,
}

impl GroundRule {
    pub fn new(head: Vec<AtomId>, body: Vec<GroundLiteral>) -> Self {
        GroundRule {
            head,
            body,
            choice: false,
        }
    }

    pub fn fact(atom: AtomId) -> Self {
        GroundRule::new(vec![atom], Vec::new())
    }

    pub fn choice(atom: AtomId) -> Self {
        GroundRule {
            head: vec![atom],
            body: Vec::new(),
            choice: true,
        }
    }

    pub fn constraint(body: Vec<GroundLiteral>) -> Self {
        GroundRule::new(Vec::new(), body)
    }

    pub fn is_fact(&self) -> bool {
        !self.choice && self.head.len() == 1 && self.body.is_empty()
    }

    pub fn has_subjective(&self) -> bool {
        self.body.iter().any(|l| matches!(l, GroundLiteral::Subjective { .. }))
    }
}

/// A variable-free program over an atom table. The table is the atom
/// universe At(P); it may hold atoms that no longer occur in any rule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub symbols: Symbols,
    pub rules: Vec<GroundRule>,
}

impl GroundProgram {
    /// Parses and grounds `text`.
    pub fn parse(text: &str) -> crate::Result<GroundProgram> {
        ground_program(&Program::parse(text)?)
    }

    pub fn universe(&self) -> Interpretation {
        self.symbols.ids().collect()
    }

    pub fn heads(&self) -> Interpretation {
        self.rules.iter().flat_map(|r| r.head.iter().copied()).collect()
    }

    pub fn facts(&self) -> Interpretation {
        self.rules.iter().filter(|r| r.is_fact()).map(|r| r.head[0]).collect()
    }

    /// True when no rule contains a subjective literal.
    pub fn is_standard(&self) -> bool {
        !self.rules.iter().any(GroundRule::has_subjective)
    }

    /// Distinct subjective atoms in order of first occurrence.
    pub fn subjective_atoms(&self) -> Vec<GroundSubjective> {
        let mut out: Vec<GroundSubjective> = Vec::new();
        for rule in &self.rules {
            for lit in &rule.body {
                if let GroundLiteral::Subjective { atom, .. } = lit {
                    if !out.contains(atom) {
                        out.push(*atom);
                    }
                }
            }
        }
        out
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        self.symbols.atom(id)
    }

    pub fn display_rule<'a>(&'a self, rule: &'a GroundRule) -> impl fmt::Display + 'a {
        DisplayRule {
            symbols: &self.symbols,
            rule,
        }
    }

    pub fn display_subjective(&self, atom: GroundSubjective) -> String {
        let tilde = if atom.inner_neg { "~" } else { "" };
        format!("&k{{ {tilde}{} }}", self.atom(atom.atom))
    }

    /// Renders an interpretation as `{a, b, ...}` in atom-id order.
    pub fn display_interpretation(&self, interp: &Interpretation) -> String {
        let atoms: Vec<String> = interp.iter().map(|id| self.atom(id).to_string()).collect();
        format!("{{{}}}", atoms.join(", "))
    }
}

struct DisplayRule<'a> {
    symbols: &'a Symbols,
    rule: &'a GroundRule,
}

impl fmt::Display for DisplayRule<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.symbols;
        let head: Vec<String> = self.rule.head.iter().map(|&a| sym.atom(a).to_string()).collect();
        if self.rule.choice {
            write!(f, "{{{}}}", head.join(", "))?;
        } else {
            f.write_str(&head.join(", "))?;
        }
        if !self.rule.body.is_empty() {
            f.write_str(if head.is_empty() { ":- " } else { " :- " })?;
            for (i, lit) in self.rule.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                match *lit {
                    GroundLiteral::Pos(a) => write!(f, "{}", sym.atom(a))?,
                    GroundLiteral::Neg(a) => write!(f, "not {}", sym.atom(a))?,
                    GroundLiteral::NegNeg(a) => write!(f, "not not {}", sym.atom(a))?,
                    GroundLiteral::Subjective { negated, atom } => {
                        let not = if negated { "not " } else { "" };
                        let tilde = if atom.inner_neg { "~" } else { "" };
                        write!(f, "{not}&k{{ {tilde}{} }}", sym.atom(atom.atom))?
                    }
                }
            }
        } else if head.is_empty() {
            f.write_str(":-")?;
        }
        f.write_str(".")
    }
}

/// One rule per line, in program order.
impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{}", self.display_rule(rule))?;
        }
        Ok(())
    }
}

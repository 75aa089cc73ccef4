use std::collections::HashMap;

use super::Valuation;
use crate::grounder::{AtomId, GroundLiteral, GroundProgram, GroundRule, GroundSubjective, Symbols};
use crate::stable::Interpretation;
use crate::syntax::Atom;

/// A guess program together with the auxiliary atom standing for each
/// subjective atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guess {
    pub program: GroundProgram,
    /// In order of first occurrence of the subjective atom.
    pub aux: Vec<(GroundSubjective, AtomId)>,
}

impl Guess {
    pub fn aux_atoms(&self) -> Interpretation {
        self.aux.iter().map(|&(_, a)| a).collect()
    }

    pub fn aux_of(&self) -> HashMap<GroundSubjective, AtomId> {
        self.aux.iter().copied().collect()
    }

    /// Reads a valuation off an answer set (or its projection on the aux atoms).
    pub fn valuation(&self, model: &Interpretation) -> Valuation {
        self.aux.iter().map(|&(s, a)| (s, model.contains(a))).collect()
    }
}

/// `aux_p`, `aux_not_p`, `aux_sn_p` or `aux_not_sn_p`, keeping the arguments.
pub fn aux_atom(atom: &Atom, inner_neg: bool) -> Atom {
    let not = if inner_neg { "not_" } else { "" };
    let sn = if atom.negated { "sn_" } else { "" };
    Atom::new(format!("aux_{not}{sn}{}", atom.predicate), atom.args.clone())
}

/// Replaces `K l` by `not not aux_l` and `not K l` by `not aux_l`, and adds a
/// choice rule `{aux_l}.` per subjective atom after the translated rules.
pub fn translate_guess(program: &GroundProgram) -> Guess {
    let mut symbols = program.symbols.clone();
    let aux: Vec<(GroundSubjective, AtomId)> = program
        .subjective_atoms()
        .into_iter()
        .map(|s| (s, fresh(&mut symbols, aux_atom(program.atom(s.atom), s.inner_neg))))
        .collect();
    let index: HashMap<GroundSubjective, AtomId> = aux.iter().copied().collect();

    let mut rules: Vec<GroundRule> = program
        .rules
        .iter()
        .map(|rule| GroundRule {
            head: rule.head.clone(),
            body: rule
                .body
                .iter()
                .map(|&lit| match lit {
                    GroundLiteral::Subjective { negated: false, atom } => GroundLiteral::NegNeg(index[&atom]),
                    GroundLiteral::Subjective { negated: true, atom } => GroundLiteral::Neg(index[&atom]),
                    other => other,
                })
                .collect(),
            choice: rule.choice,
        })
        .collect();
    rules.extend(aux.iter().map(|&(_, a)| GroundRule::choice(a)));

    Guess {
        program: GroundProgram { symbols, rules },
        aux,
    }
}

/// Interns `atom`, priming its name until it is new to the table.
fn fresh(symbols: &mut Symbols, mut atom: Atom) -> AtomId {
    while symbols.get(&atom).is_some() {
        atom.predicate.push('\'');
    }
    symbols.intern(&atom)
}

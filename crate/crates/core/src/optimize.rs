//! Pruning passes over guess programs: consistency constraints, and
//! propagation of subjective atoms decided by the well-founded approximation
//! that simplification yields.

use crate::epistemic::Guess;
use crate::grounder::{simplify, GroundLiteral, GroundRule, GroundSubjective};
use crate::stable::Interpretation;

/// Atoms occurring as `&k{a}` (positive) and as `&k{~a}` (negative). An
/// explicitly negated atom `-a` is an atom of its own, so `&k{-a}` and
/// `&k{~-a}` land in the same two sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KSets {
    pub positive: Interpretation,
    pub negative: Interpretation,
}

impl KSets {
    pub fn of(guess: &Guess) -> KSets {
        let mut k = KSets::default();
        for (s, _) in &guess.aux {
            if s.inner_neg {
                k.negative.insert(s.atom);
            } else {
                k.positive.insert(s.atom);
            }
        }
        k
    }
}

/// Adds `:- aux_l, not l.` for each `K l` and `:- aux_not_l, l.` for each
/// `K ~l`.
pub fn add_consistency_constraints(guess: &Guess) -> Guess {
    let mut out = guess.clone();
    for &(s, aux) in &guess.aux {
        let witness = if s.inner_neg {
            GroundLiteral::Pos(s.atom)
        } else {
            GroundLiteral::Neg(s.atom)
        };
        out.program
            .rules
            .push(GroundRule::constraint(vec![GroundLiteral::Pos(aux), witness]));
    }
    out
}

/// Simplifies the guess program to a fixpoint, asserting `aux_p` whenever
/// `p` in K+ becomes a fact and `aux_not_p` whenever `p` in K- stops being a
/// head atom.
pub fn wfm_propagate(guess: &Guess, ksets: &KSets) -> Guess {
    let aux_of = guess.aux_of();
    let mut program = guess.program.clone();
    let mut f = Interpretation::new();
    let mut h = program.universe();
    program = simplify(&program);
    loop {
        let new_facts = program.facts().difference(&f).intersection(&ksets.positive);
        let dropped = h.difference(&program.heads()).intersection(&ksets.negative);
        if new_facts.is_empty() && dropped.is_empty() {
            break;
        }
        for (atoms, inner_neg) in [(new_facts, false), (dropped, true)] {
            for atom in atoms.iter() {
                let aux = aux_of[&GroundSubjective { atom, inner_neg }];
                program.rules.push(GroundRule::fact(aux));
            }
        }
        f = program.facts();
        h = program.heads();
        program = simplify(&program);
    }
    Guess {
        program,
        aux: guess.aux.clone(),
    }
}

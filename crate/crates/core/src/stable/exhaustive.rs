use std::time::Instant;

use super::{Clock, Compiled, Interpretation};
use crate::error::Result;

struct MaskRule {
    head: u32,
    pos: u32,
    neg: u32,
    dneg: u32,
}

impl MaskRule {
    /// Survives the reduct with respect to `candidate`.
    fn in_reduct(&self, candidate: u32) -> bool {
        self.neg & candidate == 0 && self.dneg & !candidate == 0
    }

    /// `interp` satisfies the reduct version of this rule.
    fn reduct_satisfied(&self, interp: u32) -> bool {
        self.pos & !interp != 0 || self.head & interp != 0
    }
}

/// Every subset of the universe that is a minimal model of its own reduct,
/// with minimality checked against every proper subset.
pub(super) fn answer_sets(compiled: &Compiled, deadline: Option<Instant>) -> Result<Vec<Interpretation>> {
    let n = compiled.n_atoms;
    assert!(n <= super::EXHAUSTIVE_LIMIT);
    let mask = |atoms: &[u32]| atoms.iter().fold(0u32, |m, &a| m | 1 << a);
    let rules: Vec<MaskRule> = compiled
        .rules
        .iter()
        .map(|r| MaskRule {
            head: mask(&r.head),
            pos: mask(&r.pos),
            neg: mask(&r.neg),
            dneg: mask(&r.dneg),
        })
        .collect();
    let program_mask = if compiled.n_program >= 32 {
        u32::MAX
    } else {
        (1u32 << compiled.n_program) - 1
    };

    let mut clock = Clock::new(deadline);
    let mut found = Vec::new();
    for candidate in 0..(1u32 << n) {
        clock.tick()?;
        let is_model = |m: u32| rules.iter().all(|r| !r.in_reduct(candidate) || r.reduct_satisfied(m));
        if !is_model(candidate) {
            continue;
        }
        // Walk the proper submasks of `candidate`.
        let mut sub = candidate;
        let mut minimal = true;
        while sub != 0 {
            sub = (sub - 1) & candidate;
            if is_model(sub) {
                minimal = false;
                break;
            }
        }
        if minimal {
            found.push(Interpretation::from_mask(u64::from(candidate & program_mask)));
        }
    }
    Ok(found)
}

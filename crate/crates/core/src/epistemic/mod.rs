//! World views of ground epistemic programs.
//!
//! Two independent routes lead to the same world views. The oracle follows
//! the definition: for every valuation of the subjective atoms it computes
//! the candidate world W and keeps it when W = AS[P^W]. The solver guesses
//! valuations through auxiliary atoms and checks each one against the
//! cautious and brave consequences of the program with its subjective
//! literals fixed.

mod guess;
mod k15;

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

pub use guess::{aux_atom, translate_guess, Guess};
pub use k15::k15_transform;

use crate::error::{Error, Result};
use crate::grounder::{ground_program, safety_check, GroundLiteral, GroundProgram, GroundRule, GroundSubjective};
use crate::optimize::{add_consistency_constraints, wfm_propagate, KSets};
use crate::stable::{self, Enumerator, Interpretation, Strategy};
use crate::syntax::{Directive, Program};

/// The guessed truth of `K l` for every subjective atom of a program.
pub type Valuation = BTreeMap<GroundSubjective, bool>;

/// The oracle enumerates at most this many subjective atoms.
pub const ORACLE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldView {
    pub valuation: Valuation,
    /// AS[P_X], in ascending bitset order. Never empty.
    pub answer_sets: Vec<Interpretation>,
}

impl WorldView {
    /// Subjective atoms `K l` that hold in this world view.
    pub fn true_atoms(&self) -> impl Iterator<Item = GroundSubjective> + '_ {
        self.valuation.iter().filter(|(_, &v)| v).map(|(&s, _)| s)
    }

    pub fn cautious(&self) -> Interpretation {
        stable::ConsequenceSets::from_answer_sets(&self.answer_sets).cautious
    }
}

/// `l` holds in `interp`.
pub fn holds(interp: &Interpretation, atom: GroundSubjective) -> bool {
    interp.contains(atom.atom) != atom.inner_neg
}

/// `W |= K l`: `l` holds in every interpretation of `world`. `W |= not K l`
/// is the negation.
pub fn satisfies(world: &[Interpretation], atom: GroundSubjective) -> bool {
    world.iter().all(|i| holds(i, atom))
}

/// Replaces every subjective literal by the truth constant `value` gives its
/// atom (negated for `not K l`), then drops true literals and rules with a
/// false one.
pub fn fix_subjective(program: &GroundProgram, value: impl Fn(GroundSubjective) -> bool) -> GroundProgram {
    let mut rules = Vec::with_capacity(program.rules.len());
    'rules: for rule in &program.rules {
        let mut body = Vec::with_capacity(rule.body.len());
        for &lit in &rule.body {
            match lit {
                GroundLiteral::Subjective { negated, atom } => {
                    if value(atom) == negated {
                        continue 'rules;
                    }
                }
                _ => body.push(lit),
            }
        }
        rules.push(GroundRule {
            head: rule.head.clone(),
            body,
            choice: rule.choice,
        });
    }
    GroundProgram {
        symbols: program.symbols.clone(),
        rules,
    }
}

/// P_X: the program with each subjective literal fixed by `valuation`.
pub fn fix_valuation(program: &GroundProgram, valuation: &Valuation) -> GroundProgram {
    fix_subjective(program, |s| valuation[&s])
}

/// P^W, the subjective reduct with respect to `world`.
pub fn subjective_reduct(program: &GroundProgram, world: &[Interpretation]) -> GroundProgram {
    fix_subjective(program, |s| satisfies(world, s))
}

/// The valuation of `atoms` given by the bits of `mask`, bit `i` for atom `i`.
pub fn valuation_from_mask(atoms: &[GroundSubjective], mask: u64) -> Valuation {
    atoms
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, mask >> i & 1 == 1))
        .collect()
}

/// Printed true atoms in lexicographic order; world views and candidates
/// are emitted sorted by this key.
pub fn display_key(program: &GroundProgram, valuation: &Valuation) -> Vec<String> {
    let mut key: Vec<String> = valuation
        .iter()
        .filter(|(_, &v)| v)
        .map(|(&s, _)| program.display_subjective(s))
        .collect();
    key.sort();
    key
}

fn sort_by_display<T>(program: &GroundProgram, items: &mut [T], valuation: impl Fn(&T) -> &Valuation) {
    items.sort_by_cached_key(|item| display_key(program, valuation(item)));
}

/// World views by the definition, trying all 2^k valuations. Each accepted
/// world W is reported once, with the valuation it induces.
pub fn oracle_world_views(program: &GroundProgram) -> Result<Vec<WorldView>> {
    let atoms = program.subjective_atoms();
    if atoms.len() > ORACLE_LIMIT {
        return Err(Error::Invalid(format!(
            "the oracle handles at most {ORACLE_LIMIT} subjective atoms, the program has {}",
            atoms.len()
        )));
    }
    let engine = Enumerator::new(Strategy::Exhaustive);
    let mut seen = HashSet::new();
    let mut views = Vec::new();
    for mask in 0..1u64 << atoms.len() {
        let candidate = fix_valuation(program, &valuation_from_mask(&atoms, mask));
        let world = engine.run(&candidate)?;
        if world.is_empty() || seen.contains(&world) {
            continue;
        }
        if engine.run(&subjective_reduct(program, &world))? != world {
            continue;
        }
        let valuation = atoms.iter().map(|&s| (s, satisfies(&world, s))).collect();
        seen.insert(world.clone());
        views.push(WorldView {
            valuation,
            answer_sets: world,
        });
    }
    sort_by_display(program, &mut views, |v| &v.valuation);
    Ok(views)
}

/// Accepts `valuation` iff P_X has answer sets and every `K l` guessed true
/// (false) has `l` in (not in) every answer set, read off cautious
/// consequences for `K a` and brave consequences for `K ~a`.
pub fn check_candidate(
    program: &GroundProgram,
    valuation: &Valuation,
    deadline: Option<Instant>,
) -> Result<Option<WorldView>> {
    let fixed = fix_valuation(program, valuation);
    let engine = Enumerator::new(Strategy::Search).deadline(deadline);
    let focus: Interpretation = valuation.keys().map(|s| s.atom).collect();
    let consequences = engine.consequences(&fixed, &focus)?;
    if !consequences.has_answer_set {
        return Ok(None);
    }
    let consistent = valuation.iter().all(|(s, &guessed)| {
        let holds = if s.inner_neg {
            !consequences.brave.contains(s.atom)
        } else {
            consequences.cautious.contains(s.atom)
        };
        holds == guessed
    });
    if !consistent {
        return Ok(None);
    }
    Ok(Some(WorldView {
        valuation: valuation.clone(),
        answer_sets: engine.run(&fixed)?,
    }))
}

/// The answer sets of a world view without auxiliary atoms.
pub fn expand_world_view(program: &GroundProgram, view: &WorldView) -> Vec<Interpretation> {
    stable::project(&view.answer_sets, &program.symbols.visible())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Semantics {
    #[default]
    G91,
    K15,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub semantics: Semantics,
    /// Stop after this many world views; 0 means all.
    pub max_models: usize,
    pub constraints: bool,
    pub wfm: bool,
    /// Enumerate all 2^k valuations instead of the guess program's answer sets.
    pub direct: bool,
    pub deadline: Option<Instant>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            semantics: Semantics::G91,
            max_models: 0,
            constraints: true,
            wfm: true,
            direct: false,
            deadline: None,
        }
    }
}

impl SolveOptions {
    pub fn unoptimized() -> Self {
        SolveOptions {
            constraints: false,
            wfm: false,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// The ground program whose world views were computed, after the K15
    /// rewriting when that semantics was selected.
    pub program: GroundProgram,
    pub directives: Vec<Directive>,
    pub world_views: Vec<WorldView>,
    /// Number of candidate valuations that were checked or queued.
    pub candidates: usize,
}

/// Grounds `program` under the chosen semantics and computes its world views.
pub fn solve(program: &Program, options: &SolveOptions) -> Result<Solution> {
    for rule in &program.rules {
        safety_check(rule)?;
    }
    let source = match options.semantics {
        Semantics::G91 => program.clone(),
        Semantics::K15 => k15_transform(program),
    };
    let ground = ground_program(&source)?;
    let candidates = candidates(&ground, options)?;
    let count = candidates.len();
    let world_views = check_all(&ground, &candidates, options)?;
    Ok(Solution {
        program: ground,
        directives: program.directives.clone(),
        world_views,
        candidates: count,
    })
}

/// Candidate valuations in emission order: every valuation in direct mode,
/// otherwise the distinct projections of the (optionally pruned) guess
/// program's answer sets onto the auxiliary atoms.
pub fn candidates(program: &GroundProgram, options: &SolveOptions) -> Result<Vec<Valuation>> {
    let mut found: Vec<Valuation> = if options.direct {
        let atoms = program.subjective_atoms();
        if atoms.len() >= 64 {
            return Err(Error::Invalid(format!(
                "{} subjective atoms are too many to enumerate directly",
                atoms.len()
            )));
        }
        (0..1u64 << atoms.len())
            .map(|m| valuation_from_mask(&atoms, m))
            .collect()
    } else {
        let guess = guess_program(program, options);
        Enumerator::new(Strategy::Search)
            .projected(guess.aux_atoms())
            .deadline(options.deadline)
            .run(&guess.program)?
            .iter()
            .map(|m| guess.valuation(m))
            .collect()
    };
    sort_by_display(program, &mut found, |v| v);
    Ok(found)
}

/// The guess program with the passes selected in `options` applied.
pub fn guess_program(program: &GroundProgram, options: &SolveOptions) -> Guess {
    let mut guess = translate_guess(program);
    if options.constraints {
        guess = add_consistency_constraints(&guess);
    }
    if options.wfm {
        guess = wfm_propagate(&guess, &KSets::of(&guess));
    }
    guess
}

fn check_all(program: &GroundProgram, candidates: &[Valuation], options: &SolveOptions) -> Result<Vec<WorldView>> {
    let mut views = Vec::new();
    for valuation in candidates {
        if let Some(view) = check_candidate(program, valuation, options.deadline)? {
            views.push(view);
            if views.len() == options.max_models {
                break;
            }
        }
    }
    Ok(views)
}

/// World views of an already ground program under G91.
pub fn solve_ground(program: &GroundProgram, options: &SolveOptions) -> Result<Vec<WorldView>> {
    check_all(program, &candidates(program, options)?, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MUTUAL: &str = "p :- not &k{q}.\nq :- not &k{p}.";
    const ELIGIBILITY: &str = "\
        eligible(X) :- high(X).\n\
        eligible(X) :- minority(X), fair(X).\n\
        -eligible(X) :- -fair(X), -high(X).\n\
        interview(X) :- not &k{ eligible(X)}, not &k{ -eligible(X)}, student(X).\n\
        student(mike).\n\
        fair(mike),high(mike).";

    fn ground(src: &str) -> GroundProgram {
        GroundProgram::parse(src).unwrap()
    }

    fn shown(p: &GroundProgram, views: &[WorldView]) -> Vec<Vec<String>> {
        views.iter().map(|v| display_key(p, &v.valuation)).collect()
    }

    fn worlds(p: &GroundProgram, views: &[WorldView]) -> Vec<Vec<String>> {
        views
            .iter()
            .map(|v| v.answer_sets.iter().map(|i| p.display_interpretation(i)).collect())
            .collect()
    }

    fn subj(p: &GroundProgram, text: &str) -> GroundSubjective {
        let (inner_neg, atom) = match text.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        GroundSubjective {
            atom: p.symbols.get(&crate::syntax::Atom::parse(atom).unwrap()).unwrap(),
            inner_neg,
        }
    }

    #[test]
    fn satisfaction() {
        let p = ground("x :- &k{p}, &k{q}, &k{~r}.\nr :- x.");
        let (sp, sq, snr) = (subj(&p, "p"), subj(&p, "q"), subj(&p, "~r"));
        let i = |atoms: &[GroundSubjective]| atoms.iter().map(|s| s.atom).collect::<Interpretation>();
        assert!(satisfies(&[i(&[sp])], sp));
        assert!(!satisfies(&[i(&[sp]), i(&[sq])], sp));
        assert!(satisfies(&[i(&[sp]), i(&[sq])], snr));
    }

    #[test]
    fn reduct_examples() {
        let p = ground(MUTUAL);
        let w = [Interpretation::from_iter([subj(&p, "p").atom])];
        assert_eq!(subjective_reduct(&p, &w).to_string(), "p.\n");

        let p = ground("p :- &k{p}.");
        let w = [Interpretation::from_iter([subj(&p, "p").atom])];
        assert_eq!(subjective_reduct(&p, &w).to_string(), "p.\n");

        let p = ground("a :- not b.");
        assert_eq!(subjective_reduct(&p, &[Interpretation::new()]), p);
    }

    #[test]
    fn oracle_examples() {
        let p = ground(MUTUAL);
        let views = oracle_world_views(&p).unwrap();
        assert_eq!(worlds(&p, &views), [vec!["{p}"], vec!["{q}"]]);

        let p = ground("p :- &k{p}.");
        let views = oracle_world_views(&p).unwrap();
        assert_eq!(worlds(&p, &views), [vec!["{}"], vec!["{p}"]]);

        let p = GroundProgram::default();
        let views = oracle_world_views(&p).unwrap();
        assert_eq!(worlds(&p, &views), [vec!["{}"]]);
    }

    #[test]
    fn check_examples() {
        let p = ground(MUTUAL);
        let (sp, sq) = (subj(&p, "p"), subj(&p, "q"));
        let v = Valuation::from([(sp, true), (sq, false)]);
        let view = check_candidate(&p, &v, None).unwrap().unwrap();
        assert_eq!(shown(&p, &[view]), [vec!["&k{ p }"]]);
        let v = Valuation::from([(sp, true), (sq, true)]);
        assert_eq!(check_candidate(&p, &v, None).unwrap(), None);

        let p = ground(ELIGIBILITY);
        let v: Valuation = p.subjective_atoms().into_iter().map(|s| (s, false)).collect();
        let view = check_candidate(&p, &v, None).unwrap().unwrap();
        assert_eq!(view.true_atoms().count(), 0);
    }

    #[test]
    fn solve_examples() {
        let solve_text = |src: &str, semantics| {
            let options = SolveOptions {
                semantics,
                ..Default::default()
            };
            let s = solve(&Program::parse(src).unwrap(), &options).unwrap();
            shown(&s.program, &s.world_views)
        };
        assert_eq!(solve_text(MUTUAL, Semantics::G91), [vec!["&k{ p }"], vec!["&k{ q }"]]);
        assert_eq!(solve_text(MUTUAL, Semantics::K15), [vec!["&k{ p }"], vec!["&k{ q }"]]);
        assert_eq!(solve_text("p :- &k{p}.", Semantics::G91), [vec![], vec!["&k{ p }"]]);
        assert_eq!(solve_text("p :- &k{p}.", Semantics::K15), [Vec::<String>::new()]);
        assert_eq!(solve_text(ELIGIBILITY, Semantics::G91), [Vec::<String>::new()]);
        assert_eq!(solve_text(ELIGIBILITY, Semantics::K15), [Vec::<String>::new()]);
        assert!(solve_text(":- not &k{p}.", Semantics::G91).is_empty());
    }

    #[test]
    fn max_models_stops_early() {
        let options = SolveOptions {
            max_models: 1,
            ..Default::default()
        };
        let s = solve(&Program::parse(MUTUAL).unwrap(), &options).unwrap();
        assert_eq!(s.world_views.len(), 1);
    }

    #[test]
    fn expansion_hides_auxiliary_atoms() {
        let s = solve(&Program::parse(ELIGIBILITY).unwrap(), &SolveOptions::default()).unwrap();
        let sets = expand_world_view(&s.program, &s.world_views[0]);
        let text: Vec<String> = sets.iter().map(|i| s.program.display_interpretation(i)).collect();
        assert_eq!(
            text,
            [
                "{eligible(mike), high(mike), interview(mike), student(mike)}",
                "{interview(mike), student(mike), fair(mike)}"
            ]
        );

        let options = SolveOptions {
            semantics: Semantics::K15,
            ..Default::default()
        };
        let s = solve(&Program::parse(MUTUAL).unwrap(), &options).unwrap();
        let sets = expand_world_view(&s.program, &s.world_views[0]);
        assert_eq!(
            sets.iter()
                .map(|i| s.program.display_interpretation(i))
                .collect::<Vec<_>>(),
            ["{p}"]
        );
    }

    #[test]
    fn direct_mode_agrees() {
        for src in [MUTUAL, ELIGIBILITY, "p :- &k{p}.", "a :- &k{~b}.\nb :- &k{~a}."] {
            let p = ground(src);
            let guessed = solve_ground(&p, &SolveOptions::default()).unwrap();
            let direct = SolveOptions {
                direct: true,
                ..SolveOptions::unoptimized()
            };
            assert_eq!(solve_ground(&p, &direct).unwrap(), guessed, "on {src}");
            assert_eq!(oracle_world_views(&p).unwrap(), guessed, "on {src}");
        }
    }

    #[test]
    fn unsafe_rule_is_reported() {
        let err = solve(
            &Program::parse("p(X) :- not &k{q(X)}.").unwrap(),
            &SolveOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unsafe { .. }));
    }
}

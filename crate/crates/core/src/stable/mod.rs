//! Answer sets of ground (disjunctive) programs.
//!
//! Two enumeration strategies share one compiled program form:
//! [`Strategy::Exhaustive`] walks every subset of the atom universe and checks
//! minimality against every proper subset; [`Strategy::Search`] branches on
//! atoms under model and support propagation and certifies minimality of the
//! reduct at each leaf. Both return identical, sorted answer-set lists.
//!
//! Answer sets containing both `a` and `-a` are discarded.

mod exhaustive;
mod interp;
mod search;

use std::time::Instant;

pub use interp::Interpretation;

use crate::error::{Error, Result};
use crate::grounder::{AtomId, GroundLiteral, GroundProgram, GroundRule, Symbols};
use crate::syntax::Atom;

/// Universes above this size always use [`Strategy::Search`].
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Exhaustive,
    #[default]
    Search,
}

/// The two ordinary rules encoding the choice rule `{a}.`:
/// `a :- not a'.` and `a' :- not a.`, where `a'` is a fresh complement atom.
pub fn expand_choice(rule: &GroundRule, symbols: &mut Symbols) -> [GroundRule; 2] {
    assert!(rule.choice && rule.head.len() == 1, "not a choice rule");
    let atom = rule.head[0];
    let complement = symbols.intern(&complement_atom(symbols.atom(atom)));
    [
        GroundRule::new(vec![atom], vec![GroundLiteral::Neg(complement)]),
        GroundRule::new(vec![complement], vec![GroundLiteral::Neg(atom)]),
    ]
}

fn complement_atom(atom: &Atom) -> Atom {
    let name = if atom.predicate.starts_with("aux_") {
        format!("n{}", atom.predicate)
    } else if atom.negated {
        format!("naux_sn_{}", atom.predicate)
    } else {
        format!("naux_{}", atom.predicate)
    };
    Atom::new(name, atom.args.clone())
}

/// The Gelfond-Lifschitz reduct: rules with `not a` for `a` in the
/// candidate, or `not not a` for `a` outside it, are deleted; the remaining
/// negative literals are dropped. A choice rule `{a}` becomes the fact `a`
/// when `a` is in the candidate and disappears otherwise.
pub fn gl_reduct(program: &GroundProgram, candidate: &Interpretation) -> GroundProgram {
    assert!(program.is_standard(), "reduct of a program with subjective literals");
    let mut rules = Vec::new();
    for rule in &program.rules {
        if rule.choice {
            if candidate.contains(rule.head[0]) {
                rules.push(GroundRule::fact(rule.head[0]));
            }
            continue;
        }
        let blocked = rule.body.iter().any(|lit| match *lit {
            GroundLiteral::Neg(a) => candidate.contains(a),
            GroundLiteral::NegNeg(a) => !candidate.contains(a),
            _ => false,
        });
        if blocked {
            continue;
        }
        let body = rule
            .body
            .iter()
            .filter(|lit| matches!(lit, GroundLiteral::Pos(_)))
            .copied()
            .collect();
        rules.push(GroundRule::new(rule.head.clone(), body));
    }
    GroundProgram {
        symbols: program.symbols.clone(),
        rules,
    }
}

/// True if `interp` satisfies every rule of the standard program `program`.
pub fn is_model(program: &GroundProgram, interp: &Interpretation) -> bool {
    program.rules.iter().all(|rule| {
        if rule.choice {
            return true;
        }
        let body = rule.body.iter().all(|lit| match *lit {
            GroundLiteral::Pos(a) | GroundLiteral::NegNeg(a) => interp.contains(a),
            GroundLiteral::Neg(a) => !interp.contains(a),
            GroundLiteral::Subjective { .. } => panic!("subjective literal in standard program"),
        });
        !body || rule.head.iter().any(|&h| interp.contains(h))
    })
}

/// Configures one enumeration run.
#[derive(Debug, Clone, Default)]
pub struct Enumerator {
    pub strategy: Strategy,
    /// Report each answer set restricted to these atoms, without duplicates.
    pub projection: Option<Interpretation>,
    pub deadline: Option<Instant>,
}

impl Enumerator {
    pub fn new(strategy: Strategy) -> Self {
        Enumerator {
            strategy,
            ..Default::default()
        }
    }

    pub fn projected(mut self, onto: Interpretation) -> Self {
        self.projection = Some(onto);
        self
    }

    pub fn deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    /// Answer sets (or their distinct projections) in ascending bitset order.
    pub fn run(&self, program: &GroundProgram) -> Result<Vec<Interpretation>> {
        let compiled = Compiled::new(program);
        let mut found = match self.strategy {
            Strategy::Exhaustive if compiled.n_atoms <= EXHAUSTIVE_LIMIT => {
                let all = exhaustive::answer_sets(&compiled, self.deadline)?;
                match &self.projection {
                    Some(onto) => all.iter().map(|m| m.intersection(onto)).collect(),
                    None => all,
                }
            }
            _ => search::Search::new(&compiled, self.projection.as_ref(), self.deadline).run()?,
        };
        found.sort();
        found.dedup();
        Ok(found)
    }

    /// Some answer set of `program`, or `None` if it has none.
    pub fn first(&self, program: &GroundProgram) -> Result<Option<Interpretation>> {
        let compiled = Compiled::new(program);
        match self.strategy {
            Strategy::Exhaustive if compiled.n_atoms <= EXHAUSTIVE_LIMIT => {
                Ok(exhaustive::answer_sets(&compiled, self.deadline)?.into_iter().next())
            }
            _ => search::Search::new(&compiled, None, self.deadline).first(),
        }
    }

    /// Cautious and brave consequences restricted to `focus`.
    ///
    /// Each refinement asks for one more answer set: cautious shrinks under a
    /// constraint forbidding all current cautious atoms at once, brave grows
    /// under a constraint requiring some atom outside it.
    pub fn consequences(&self, program: &GroundProgram, focus: &Interpretation) -> Result<ConsequenceSets> {
        let Some(first) = self.first(program)? else {
            return Ok(ConsequenceSets::from_answer_sets(&[]));
        };
        let first = first.intersection(focus);
        let mut probe = program.clone();
        let mut refine = |constraint: Vec<GroundLiteral>| {
            probe.rules.truncate(program.rules.len());
            probe.rules.push(GroundRule::constraint(constraint));
            self.first(&probe)
        };

        let mut cautious = first.clone();
        while !cautious.is_empty() {
            match refine(cautious.iter().map(GroundLiteral::Pos).collect())? {
                Some(m) => cautious = cautious.intersection(&m),
                None => break,
            }
        }
        let mut brave = first;
        loop {
            let rest = focus.difference(&brave);
            if rest.is_empty() {
                break;
            }
            match refine(rest.iter().map(GroundLiteral::Neg).collect())? {
                Some(m) => brave = brave.union(&m.intersection(focus)),
                None => break,
            }
        }
        Ok(ConsequenceSets {
            cautious,
            brave,
            has_answer_set: true,
        })
    }
}

/// All answer sets of a standard ground program, in ascending bitset order.
pub fn answer_sets(program: &GroundProgram) -> Vec<Interpretation> {
    answer_sets_with(program, Strategy::Search)
}

pub fn answer_sets_with(program: &GroundProgram, strategy: Strategy) -> Vec<Interpretation> {
    match Enumerator::new(strategy).run(program) {
        Ok(found) => found,
        Err(Error::Timeout) => unreachable!("no deadline was set"),
        Err(e) => panic!("{e}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceSets {
    pub cautious: Interpretation,
    pub brave: Interpretation,
    pub has_answer_set: bool,
}

impl ConsequenceSets {
    /// Intersection and union over the given answer sets.
    pub fn from_answer_sets(sets: &[Interpretation]) -> Self {
        let Some((first, rest)) = sets.split_first() else {
            return ConsequenceSets {
                cautious: Interpretation::new(),
                brave: Interpretation::new(),
                has_answer_set: false,
            };
        };
        let (cautious, brave) = rest.iter().fold((first.clone(), first.clone()), |(c, b), s| {
            (c.intersection(s), b.union(s))
        });
        ConsequenceSets {
            cautious,
            brave,
            has_answer_set: true,
        }
    }
}

pub fn consequences(program: &GroundProgram) -> ConsequenceSets {
    ConsequenceSets::from_answer_sets(&answer_sets(program))
}

/// Restricts each model to `onto`, dropping repeats and keeping the order of
/// first occurrence.
pub fn project(models: &[Interpretation], onto: &Interpretation) -> Vec<Interpretation> {
    let mut seen = std::collections::HashSet::new();
    models
        .iter()
        .map(|m| m.intersection(onto))
        .filter(|p| seen.insert(p.clone()))
        .collect()
}

/// A rule over dense atom indices with the body split by literal kind.
#[derive(Debug, Clone)]
pub(crate) struct CompiledRule {
    pub head: Vec<u32>,
    pub pos: Vec<u32>,
    pub neg: Vec<u32>,
    /// `not not a` occurrences.
    pub dneg: Vec<u32>,
}

/// A standard program with choice rules expanded and one `:- a, -a.`
/// constraint per complementary pair in the universe.
pub(crate) struct Compiled {
    /// Atoms of the source program; complement atoms follow them.
    pub n_program: usize,
    pub n_atoms: usize,
    pub rules: Vec<CompiledRule>,
}

impl Compiled {
    pub fn new(program: &GroundProgram) -> Self {
        assert!(
            program.is_standard(),
            "answer sets requested for a program with subjective literals"
        );
        let mut symbols = program.symbols.clone();
        let n_program = symbols.len();
        let mut rules = Vec::new();
        let mut push = |rule: &GroundRule| {
            let mut c = CompiledRule {
                head: rule.head.iter().map(|a| a.0).collect(),
                pos: Vec::new(),
                neg: Vec::new(),
                dneg: Vec::new(),
            };
            for lit in &rule.body {
                match *lit {
                    GroundLiteral::Pos(a) => c.pos.push(a.0),
                    GroundLiteral::Neg(a) => c.neg.push(a.0),
                    GroundLiteral::NegNeg(a) => c.dneg.push(a.0),
                    GroundLiteral::Subjective { .. } => unreachable!(),
                }
            }
            rules.push(c);
        };
        for rule in &program.rules {
            if rule.choice {
                for expanded in expand_choice(rule, &mut symbols) {
                    push(&expanded);
                }
            } else {
                push(rule);
            }
        }
        for id in (0..n_program as u32).map(AtomId) {
            if symbols.atom(id).negated {
                if let Some(positive) = symbols.complement(id) {
                    push(&GroundRule::constraint(vec![
                        GroundLiteral::Pos(positive),
                        GroundLiteral::Pos(id),
                    ]));
                }
            }
        }
        Compiled {
            n_program,
            n_atoms: symbols.len(),
            rules,
        }
    }
}

pub(crate) struct Clock {
    deadline: Option<Instant>,
    ticks: u32,
}

impl Clock {
    pub fn new(deadline: Option<Instant>) -> Self {
        Clock { deadline, ticks: 0 }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 1024 == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Timeout);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn program(src: &str) -> GroundProgram {
        GroundProgram::parse(src).unwrap()
    }

    fn names(p: &GroundProgram, sets: &[Interpretation]) -> Vec<String> {
        sets.iter().map(|s| p.display_interpretation(s)).collect()
    }

    fn both(p: &GroundProgram) -> Vec<Interpretation> {
        let a = answer_sets_with(p, Strategy::Search);
        let b = answer_sets_with(p, Strategy::Exhaustive);
        assert_eq!(a, b, "strategies disagree on\n{p}");
        a
    }

    #[test]
    fn choice_expansion() {
        let mut p = program("{q}.");
        let expanded = expand_choice(&p.rules[0].clone(), &mut p.symbols);
        let text: Vec<String> = expanded.iter().map(|r| p.display_rule(r).to_string()).collect();
        assert_eq!(text, vec!["q :- not naux_q.", "naux_q :- not q."]);

        let mut aux = GroundProgram::default();
        let id = aux.symbols.intern(&Atom::prop("aux_p"));
        aux.rules.push(GroundRule::choice(id));
        assert_eq!(names(&aux, &both(&aux)), vec!["{}", "{aux_p}"]);
        let mut expanded_symbols = aux.symbols.clone();
        let expanded = expand_choice(&aux.rules[0], &mut expanded_symbols);
        let shown = GroundProgram {
            symbols: expanded_symbols,
            rules: expanded.to_vec(),
        };
        assert_eq!(shown.to_string(), "aux_p :- not naux_p.\nnaux_p :- not aux_p.\n");
    }

    #[test]
    fn two_choices_give_four_answer_sets() {
        let p = program("{a}.\n{b}.");
        assert_eq!(names(&p, &both(&p)), vec!["{}", "{a}", "{b}", "{a, b}"]);
    }

    #[test]
    fn reduct_examples() {
        let p = program("p :- not q.");
        let (pid, qid) = (AtomId(0), AtomId(1));
        let r = gl_reduct(&p, &[pid].into_iter().collect());
        assert_eq!(r.to_string(), "p.\n");
        let r = gl_reduct(&p, &[qid].into_iter().collect());
        assert_eq!(r.to_string(), "");

        let p = program("p :- not not p.");
        let r = gl_reduct(&p, &[AtomId(0)].into_iter().collect());
        assert_eq!(r.to_string(), "p.\n");
        assert_eq!(names(&p, &both(&p)), vec!["{}", "{p}"]);
    }

    #[test]
    fn eligibility_with_subjective_literals_false() {
        let p = program(
            "eligible(mike) :- high(mike).\n\
             eligible(mike) :- minority(mike), fair(mike).\n\
             -eligible(mike) :- -fair(mike), -high(mike).\n\
             interview(mike) :- student(mike).\n\
             student(mike).\n\
             fair(mike), high(mike).",
        );
        let sets = both(&p);
        let mut rendered: Vec<Vec<String>> = sets
            .iter()
            .map(|s| {
                let mut v: Vec<String> = s.iter().map(|a| p.atom(a).to_string()).collect();
                v.sort();
                v
            })
            .collect();
        rendered.sort();
        assert_eq!(
            rendered,
            vec![
                vec!["eligible(mike)", "high(mike)", "interview(mike)", "student(mike)"],
                vec!["fair(mike)", "interview(mike)", "student(mike)"],
            ]
        );
    }

    #[test]
    fn consistency_filter() {
        assert!(both(&program("a.\n-a.")).is_empty());
        assert_eq!(both(&program("a ; -a.")).len(), 2);
    }

    #[test]
    fn disjunctive_fact_is_minimal() {
        let p = program("p , q.");
        assert_eq!(names(&p, &both(&p)), vec!["{p}", "{q}"]);
    }

    #[test]
    fn disjunctive_minimality_needs_full_check() {
        // {a, b} is a supported model of the reduct, but {a} (or {b}) is smaller.
        let p = program("a ; b.\na :- b.\nb :- a.");
        assert_eq!(names(&p, &both(&p)), vec!["{a, b}"]);
        let p = program("a ; b.\nc ; d.\na :- c.\nc :- a.");
        assert_eq!(names(&p, &both(&p)), vec!["{a, c}", "{b, d}"]);
        let p = program("a ; b ; c.\na ; b :- c.\nb :- a, c.");
        assert_eq!(names(&p, &both(&p)), vec!["{a}", "{b}"]);
    }

    #[test]
    fn positive_loops_are_unfounded() {
        let p = program("a :- b.\nb :- a.");
        assert_eq!(names(&p, &both(&p)), vec!["{}"]);
        let p = program("a :- b.\nb :- a.\na :- not c.\nc :- not a.");
        assert_eq!(names(&p, &both(&p)), vec!["{a, b}", "{c}"]);
    }

    #[test]
    fn consequences_examples() {
        let p = program("p , q.\nr.");
        let c = consequences(&p);
        assert!(c.has_answer_set);
        assert_eq!(p.display_interpretation(&c.cautious), "{r}");
        assert_eq!(p.display_interpretation(&c.brave), "{p, q, r}");

        let p = program("a :- not b.");
        let c = consequences(&p);
        assert_eq!(c.cautious, c.brave);

        let c = consequences(&program("a.\n:- a."));
        assert!(!c.has_answer_set);
        assert!(c.cautious.is_empty() && c.brave.is_empty());
    }

    #[test]
    fn refined_consequences_match_enumeration() {
        let sources = [
            "p , q.\nr.",
            "a :- not b.\nb :- not a.\nc :- a.\nc :- b.\nd :- not c.",
            "{x}.\n{y}.\nz :- x, y.\n:- z.",
            "a.\n:- a.",
            "-a , a.\nb :- -a.\nb :- a.",
        ];
        for src in sources {
            let p = program(src);
            let full = consequences(&p);
            for strategy in [Strategy::Search, Strategy::Exhaustive] {
                let all = p.universe();
                let refined = Enumerator::new(strategy).consequences(&p, &all).unwrap();
                assert_eq!(refined, full, "on\n{src}");
                let focus = Interpretation::from_mask(0b101);
                let narrow = Enumerator::new(strategy).consequences(&p, &focus).unwrap();
                assert_eq!(narrow.cautious, full.cautious.intersection(&focus));
                assert_eq!(narrow.brave, full.brave.intersection(&focus));
            }
        }
    }

    #[test]
    fn projection() {
        let m = |ids: &[u32]| ids.iter().map(|&i| AtomId(i)).collect::<Interpretation>();
        let onto = m(&[0]);
        assert_eq!(project(&[m(&[0, 1]), m(&[0, 2])], &onto), vec![m(&[0])]);
        assert!(project(&[], &onto).is_empty());
        assert_eq!(project(&[m(&[0]), m(&[1])], &m(&[0, 1])), vec![m(&[0]), m(&[1])]);
    }

    #[test]
    fn projected_enumeration_matches_project() {
        let p = program("{a}.\n{b}.\nc ; d :- a.\n:- b, d.");
        let all = answer_sets(&p);
        let onto: Interpretation = [AtomId(0), AtomId(1)].into_iter().collect();
        let mut expected = project(&all, &onto);
        expected.sort();
        for strategy in [Strategy::Search, Strategy::Exhaustive] {
            let got = Enumerator::new(strategy).projected(onto.clone()).run(&p).unwrap();
            assert_eq!(got, expected);
        }
    }
}

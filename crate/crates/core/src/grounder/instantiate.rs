use std::collections::{BTreeSet, HashMap, HashSet};

use super::{GroundLiteral, GroundProgram, GroundRule, GroundSubjective, Symbols};
use crate::error::{Error, Result};
use crate::syntax::{Atom, BodyLiteral, Program, Rule, Term};

type Subst = HashMap<String, Term>;

/// Every variable of `rule` must occur in a positive objective body literal.
/// Occurrences inside `&k{...}` or under `not` do not bind a variable.
pub fn safety_check(rule: &Rule) -> Result<()> {
    let mut bound = Vec::new();
    for lit in &rule.body {
        if let BodyLiteral::Objective(l) = lit {
            if l.is_positive() {
                l.atom.collect_vars(&mut bound);
            }
        }
    }
    match rule.vars().into_iter().find(|v| !bound.contains(v)) {
        Some(var) => Err(Error::Unsafe {
            var: var.to_string(),
            rule: rule.to_string(),
        }),
        None => Ok(()),
    }
}

/// Instantiates every rule over the atoms that can possibly be derived.
///
/// Ground rules are copied verbatim. A non-ground rule is instantiated with
/// every substitution under which all its positive objective body literals
/// match possibly-derivable atoms, i.e. the least fixpoint of the heads of
/// all rules applied to that set. Instances of a rule appear in sorted
/// substitution order.
pub fn ground_program(program: &Program) -> Result<GroundProgram> {
    for rule in &program.rules {
        safety_check(rule)?;
    }
    let non_ground = program.rules.iter().any(|r| !r.is_ground());
    if non_ground && !has_constants(program) {
        return Err(Error::NoConstants);
    }

    let domain = if non_ground {
        possible_atoms(&program.rules)
    } else {
        Domain::default()
    };

    let mut out = GroundProgram::default();
    for rule in &program.rules {
        if rule.is_ground() {
            let ground = lower(rule, &Subst::new(), &mut out.symbols);
            out.rules.push(ground);
            continue;
        }
        let positives = positive_body(rule);
        let mut instances: BTreeSet<Vec<Term>> = BTreeSet::new();
        let vars = rule.vars();
        domain.join(&positives, &mut Subst::new(), &mut |s| {
            instances.insert(vars.iter().map(|v| s[*v].clone()).collect());
        });
        for values in instances {
            let subst: Subst = vars.iter().map(|v| v.to_string()).zip(values).collect();
            let ground = lower(rule, &subst, &mut out.symbols);
            out.rules.push(ground);
        }
    }
    Ok(out)
}

fn has_constants(program: &Program) -> bool {
    fn term_has(t: &Term) -> bool {
        match t {
            Term::Const(_) | Term::Int(_) => true,
            Term::Var(_) => false,
            Term::Func(_, args) => args.iter().any(term_has),
        }
    }
    program.rules.iter().any(|r| {
        r.head
            .iter()
            .chain(r.body.iter().map(BodyLiteral::atom))
            .any(|a| a.args.iter().any(term_has))
    })
}

fn positive_body(rule: &Rule) -> Vec<&Atom> {
    rule.body
        .iter()
        .filter_map(|l| match l {
            BodyLiteral::Objective(o) if o.is_positive() => Some(&o.atom),
            _ => None,
        })
        .collect()
}

#[derive(Default)]
struct Domain {
    known: HashSet<Atom>,
    by_predicate: HashMap<(bool, String, usize), Vec<Atom>>,
}

impl Domain {
    fn insert(&mut self, atom: Atom) -> bool {
        if self.known.contains(&atom) {
            return false;
        }
        self.by_predicate
            .entry((atom.negated, atom.predicate.clone(), atom.arity()))
            .or_default()
            .push(atom.clone());
        self.known.insert(atom);
        true
    }

    fn candidates(&self, pattern: &Atom) -> &[Atom] {
        self.by_predicate
            .get(&(pattern.negated, pattern.predicate.clone(), pattern.arity()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    fn join(&self, literals: &[&Atom], subst: &mut Subst, emit: &mut dyn FnMut(&Subst)) {
        let Some((first, rest)) = literals.split_first() else {
            emit(subst);
            return;
        };
        for candidate in self.candidates(first) {
            let mut extended = subst.clone();
            if match_atom(first, candidate, &mut extended) {
                self.join(rest, &mut extended, emit);
            }
        }
    }
}

fn possible_atoms(rules: &[Rule]) -> Domain {
    let mut domain = Domain::default();
    let prepared: Vec<(&Rule, Vec<&Atom>)> = rules.iter().map(|r| (r, positive_body(r))).collect();
    loop {
        let mut derived = Vec::new();
        for (rule, positives) in &prepared {
            domain.join(positives, &mut Subst::new(), &mut |s| {
                derived.extend(rule.head.iter().map(|h| apply_atom(h, s)));
            });
        }
        let mut changed = false;
        for atom in derived {
            changed |= domain.insert(atom);
        }
        if !changed {
            return domain;
        }
    }
}

fn match_term(pattern: &Term, ground: &Term, subst: &mut Subst) -> bool {
    match (pattern, ground) {
        (Term::Var(v), _) => match subst.get(v) {
            Some(bound) => bound == ground,
            None => {
                subst.insert(v.clone(), ground.clone());
                true
            }
        },
        (Term::Func(f, xs), Term::Func(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, subst))
        }
        (p, g) => p == g,
    }
}

fn match_atom(pattern: &Atom, ground: &Atom, subst: &mut Subst) -> bool {
    pattern
        .args
        .iter()
        .zip(&ground.args)
        .all(|(p, g)| match_term(p, g, subst))
}

fn apply_term(term: &Term, subst: &Subst) -> Term {
    match term {
        Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| term.clone()),
        Term::Func(f, args) => Term::Func(f.clone(), args.iter().map(|t| apply_term(t, subst)).collect()),
        _ => term.clone(),
    }
}

fn apply_atom(atom: &Atom, subst: &Subst) -> Atom {
    Atom {
        negated: atom.negated,
        predicate: atom.predicate.clone(),
        args: atom.args.iter().map(|t| apply_term(t, subst)).collect(),
    }
}

fn lower(rule: &Rule, subst: &Subst, symbols: &mut Symbols) -> GroundRule {
    let head = rule
        .head
        .iter()
        .map(|a| symbols.intern(&apply_atom(a, subst)))
        .collect();
    let body = rule
        .body
        .iter()
        .map(|lit| match lit {
            BodyLiteral::Objective(o) => {
                let id = symbols.intern(&apply_atom(&o.atom, subst));
                match o.default_negs {
                    0 => GroundLiteral::Pos(id),
                    1 => GroundLiteral::Neg(id),
                    _ => GroundLiteral::NegNeg(id),
                }
            }
            BodyLiteral::Subjective { negated, atom } => GroundLiteral::Subjective {
                negated: *negated,
                atom: GroundSubjective {
                    atom: symbols.intern(&apply_atom(&atom.atom, subst)),
                    inner_neg: atom.inner_neg,
                },
            },
        })
        .collect();
    GroundRule {
        head,
        body,
        choice: rule.choice,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(src: &str) -> Rule {
        Program::parse(src).unwrap().rules.remove(0)
    }

    #[test]
    fn safety() {
        assert!(safety_check(&rule(
            "interview(X) :- not &k{eligible(X)}, not &k{-eligible(X)}, student(X)."
        ))
        .is_ok());
        match safety_check(&rule("interview(X) :- not &k{eligible(X)}.")) {
            Err(Error::Unsafe { var, .. }) => assert_eq!(var, "X"),
            other => panic!("expected unsafe X, got {other:?}"),
        }
        assert!(safety_check(&rule("p(X) :- q(X), not r(X).")).is_ok());
        assert!(safety_check(&rule("p :- not not q(X).")).is_err());
        assert!(safety_check(&rule("p(X) :- -q(X).")).is_ok());
    }

    #[test]
    fn single_constant_instantiation() {
        let g = GroundProgram::parse("p(X) :- q(X).\nq(a).").unwrap();
        assert_eq!(g.to_string(), "p(a) :- q(a).\nq(a).\n");
    }

    #[test]
    fn ground_input_is_identity() {
        let src = "a :- not b.\nc, d :- not not a, &k{ ~-e }.\n:- c, not &k{ d }.\n";
        let g = GroundProgram::parse(src).unwrap();
        assert_eq!(g.to_string(), src);
    }

    #[test]
    fn relevance_restriction_drops_underivable_instances() {
        let g = GroundProgram::parse("r(X) :- p(X), q(X).\np(a). p(b). q(b).").unwrap();
        assert_eq!(g.to_string(), "r(b) :- p(b), q(b).\np(a).\np(b).\nq(b).\n");
    }

    #[test]
    fn recursion_and_compound_terms() {
        let g = GroundProgram::parse(
            "edge(a,f(b)). edge(f(b),c).\npath(X,Y) :- edge(X,Y).\npath(X,Z) :- path(X,Y), edge(Y,Z).",
        )
        .unwrap();
        let text = g.to_string();
        assert!(text.contains("path(a,c) :- path(a,f(b)), edge(f(b),c)."));
        assert_eq!(g.rules.len(), 5);
    }

    #[test]
    fn no_constants_is_an_error() {
        assert!(matches!(GroundProgram::parse("p(X) :- q(X)."), Err(Error::NoConstants)));
        assert!(GroundProgram::parse("p :- q.").is_ok());
    }

    #[test]
    fn eligibility_instantiation_for_mike() {
        // minority/1 and -fair/1 are never derivable, so the second and third
        // rule have no relevant instances.
        let g = GroundProgram::parse(
            "eligible(X) :- high(X).\n\
             eligible(X) :- minority(X), fair(X).\n\
             -eligible(X) :- -fair(X), -high(X).\n\
             interview(X) :- not &k{ eligible(X)}, not &k{ -eligible(X)}, student(X).\n\
             student(mike).\n\
             fair(mike),high(mike).",
        )
        .unwrap();
        assert_eq!(
            g.to_string(),
            "eligible(mike) :- high(mike).\n\
             interview(mike) :- not &k{ eligible(mike) }, not &k{ -eligible(mike) }, student(mike).\n\
             student(mike).\n\
             fair(mike), high(mike).\n"
        );
    }
}

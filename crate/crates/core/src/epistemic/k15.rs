use crate::syntax::{Atom, BodyLiteral, ObjectiveLiteral, Program, Rule, Term};

/// Rewrites a program so that G91 world views of the result are the K15
/// world views of the input.
///
/// `K l` becomes `K l, l`. `not K l` becomes a fresh atom `k15aux_N` defined
/// by `k15aux_N :- not K l.` and `k15aux_N :- not l.`, the two rules placed
/// right after the rewritten one. When `l` has variables the fresh atom takes
/// them as arguments and both rules repeat the positive objective body of the
/// original rule, keeping them safe.
pub fn k15_transform(program: &Program) -> Program {
    let mut rules = Vec::with_capacity(program.rules.len());
    let mut counter = 0;
    for rule in &program.rules {
        let mut body = Vec::with_capacity(rule.body.len());
        let mut definitions = Vec::new();
        for lit in &rule.body {
            let BodyLiteral::Subjective { negated, atom } = lit else {
                body.push(lit.clone());
                continue;
            };
            let inner = ObjectiveLiteral {
                atom: atom.atom.clone(),
                default_negs: u8::from(atom.inner_neg),
            };
            if !negated {
                body.push(lit.clone());
                body.push(BodyLiteral::Objective(inner));
                continue;
            }

            counter += 1;
            let mut vars = Vec::new();
            atom.atom.collect_vars(&mut vars);
            let fresh = Atom::new(
                format!("k15aux_{counter}"),
                vars.iter().map(|v| Term::Var(v.to_string())).collect(),
            );
            let guard: Vec<BodyLiteral> = if vars.is_empty() {
                Vec::new()
            } else {
                rule.body
                    .iter()
                    .filter(|l| matches!(l, BodyLiteral::Objective(o) if o.is_positive()))
                    .cloned()
                    .collect()
            };
            let complement = ObjectiveLiteral {
                default_negs: inner.default_negs + 1,
                ..inner
            };
            for first in [lit.clone(), BodyLiteral::Objective(complement)] {
                let mut def_body = vec![first];
                def_body.extend(guard.iter().cloned());
                definitions.push(Rule::new(vec![fresh.clone()], def_body));
            }
            body.push(BodyLiteral::Objective(ObjectiveLiteral::positive(fresh)));
        }
        rules.push(Rule {
            head: rule.head.clone(),
            body,
            choice: rule.choice,
        });
        rules.extend(definitions);
    }
    Program {
        rules,
        directives: program.directives.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k15(src: &str) -> String {
        k15_transform(&Program::parse(src).unwrap()).to_string()
    }

    #[test]
    fn positive_occurrence_gains_its_literal() {
        assert_eq!(k15("p :- &k{q}."), "p :- &k{ q }, q.\n");
        assert_eq!(k15("p :- &k{~q}."), "p :- &k{ ~q }, not q.\n");
    }

    #[test]
    fn negated_occurrence_gets_a_defined_atom() {
        assert_eq!(
            k15("p :- not &k{q}.\nr :- not &k{~-s}."),
            "p :- k15aux_1.\n\
             k15aux_1 :- not &k{ q }.\n\
             k15aux_1 :- not q.\n\
             r :- k15aux_2.\n\
             k15aux_2 :- not &k{ ~-s }.\n\
             k15aux_2 :- not not -s.\n"
        );
    }

    #[test]
    fn variables_are_kept_safe() {
        let out = k15("interview(X) :- not &k{eligible(X)}, student(X).\nstudent(mike).");
        assert_eq!(
            out,
            "interview(X) :- k15aux_1(X), student(X).\n\
             k15aux_1(X) :- not &k{ eligible(X) }, student(X).\n\
             k15aux_1(X) :- not eligible(X), student(X).\n\
             student(mike).\n"
        );
        let p =
            k15_transform(&Program::parse("interview(X) :- not &k{eligible(X)}, student(X).\nstudent(mike).").unwrap());
        crate::grounder::ground_program(&p).unwrap();
    }

    #[test]
    fn objective_program_is_unchanged() {
        let p = Program::parse("a :- not b.\nb , c.\n#show a/0.").unwrap();
        assert_eq!(k15_transform(&p), p);
    }
}

use super::{GroundLiteral, GroundProgram, GroundRule};

/// Rewrites `program` to the fixpoint of the grounding-time simplifications,
/// with `H` the head atoms and `F` the facts of the current program:
///
/// - a body literal that is certainly true is dropped: `a` and `not not a`
///   with `a` in F, `not a` with `a` outside H;
/// - a rule with a certainly false body literal is deleted: `a` and
///   `not not a` with `a` outside H, `not a` with `a` in F;
/// - a choice rule `{a}` is deleted once `a` is a fact.
///
/// The facts of the result are true in the well-founded model and atoms
/// outside its heads are false there, so they bound the cautious and brave
/// consequences respectively. Answer sets are preserved.
pub fn simplify(program: &GroundProgram) -> GroundProgram {
    let mut rules = program.rules.clone();
    loop {
        let current = GroundProgram {
            symbols: Default::default(),
            rules,
        };
        let h = current.heads();
        let f = current.facts();
        let rules_before = current.rules;

        let mut next = Vec::with_capacity(rules_before.len());
        for rule in &rules_before {
            if rule.choice {
                if !f.contains(rule.head[0]) {
                    next.push(rule.clone());
                }
                continue;
            }
            let mut body = Vec::with_capacity(rule.body.len());
            let mut deleted = false;
            for &lit in &rule.body {
                let (is_true, is_false) = match lit {
                    GroundLiteral::Pos(a) | GroundLiteral::NegNeg(a) => (f.contains(a), !h.contains(a)),
                    GroundLiteral::Neg(a) => (!h.contains(a), f.contains(a)),
                    GroundLiteral::Subjective { .. } => (false, false),
                };
                if is_false {
                    deleted = true;
                    break;
                }
                if !is_true {
                    body.push(lit);
                }
            }
            if !deleted {
                next.push(GroundRule {
                    head: rule.head.clone(),
                    body,
                    choice: false,
                });
            }
        }
        if next == rules_before {
            return GroundProgram {
                symbols: program.symbols.clone(),
                rules: next,
            };
        }
        rules = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facts_only_is_a_fixpoint() {
        let p = GroundProgram::parse("a.\nb.\nc ; d.").unwrap();
        assert_eq!(simplify(&p), p);
    }

    #[test]
    fn rewrites_each_literal_kind() {
        let p = GroundProgram::parse(
            "a.\n\
             b :- a, not c.\n\
             d :- not a.\n\
             e :- not not a.\n\
             f :- c.\n\
             g :- not not c.\n\
             h :- g, not b.\n\
             x ; y :- not z.",
        )
        .unwrap();
        assert_eq!(simplify(&p).to_string(), "a.\nb.\ne.\nx, y.\n");
    }

    #[test]
    fn choice_rules_count_as_heads() {
        let p = GroundProgram::parse("{q}.\np :- q.\nr :- not q.\nq.").unwrap();
        assert_eq!(simplify(&p).to_string(), "p.\nq.\n");
        let p = GroundProgram::parse("{q}.\np :- q.").unwrap();
        assert_eq!(simplify(&p), p);
    }

    #[test]
    fn idempotent_on_a_loop() {
        let p = GroundProgram::parse("a :- b.\nb :- a.\nc :- not a.\nd :- not e.").unwrap();
        let once = simplify(&p);
        assert_eq!(once.to_string(), "a :- b.\nb :- a.\nc :- not a.\nd.\n");
        assert_eq!(simplify(&once), once);
    }
}

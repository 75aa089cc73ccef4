use std::collections::VecDeque;
use std::time::Instant;

use super::{Clock, Compiled, Interpretation};
use crate::error::Result;
use crate::grounder::AtomId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Val {
    Unknown,
    True,
    False,
}

impl Val {
    fn of(b: bool) -> Val {
        if b {
            Val::True
        } else {
            Val::False
        }
    }
}

/// Body literal: holds iff the atom's value equals `want`.
#[derive(Debug, Clone, Copy)]
struct Lit {
    atom: u32,
    want: bool,
    /// Plain positive occurrence; `not not a` has `want` set but vanishes
    /// from the reduct.
    positive: bool,
}

struct Rule {
    head: Vec<u32>,
    body: Vec<Lit>,
}

impl Rule {
    fn positive(&self) -> impl Iterator<Item = u32> + '_ {
        self.body.iter().filter(|l| l.positive).map(|l| l.atom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Enumerate,
    FindOne,
}

/// Branch-and-propagate enumeration.
///
/// Propagation enforces that every rule is satisfied and every true atom is
/// supported by a rule whose body holds and whose other head atoms are false.
/// Total assignments surviving propagation are supported models; each is then
/// checked to be a minimal model of its reduct.
pub(super) struct Search<'c> {
    compiled: &'c Compiled,
    rules: Vec<Rule>,
    head_of: Vec<Vec<u32>>,
    occurs: Vec<Vec<u32>>,
    order: Vec<u32>,
    priority: usize,
    clock: Clock,
    found: Vec<Interpretation>,
}

impl<'c> Search<'c> {
    pub fn new(compiled: &'c Compiled, projection: Option<&Interpretation>, deadline: Option<Instant>) -> Self {
        let n = compiled.n_atoms;
        let mut head_of = vec![Vec::new(); n];
        let mut occurs = vec![Vec::new(); n];
        let mut rules = Vec::with_capacity(compiled.rules.len());
        for (i, r) in compiled.rules.iter().enumerate() {
            let i = i as u32;
            let lit = |atom: u32, want: bool, positive: bool| Lit { atom, want, positive };
            let body: Vec<Lit> = r
                .pos
                .iter()
                .map(|&a| lit(a, true, true))
                .chain(r.dneg.iter().map(|&a| lit(a, true, false)))
                .chain(r.neg.iter().map(|&a| lit(a, false, false)))
                .collect();
            for &h in &r.head {
                head_of[h as usize].push(i);
            }
            for atom in r.head.iter().copied().chain(body.iter().map(|l| l.atom)) {
                let list = &mut occurs[atom as usize];
                if list.last() != Some(&i) {
                    list.push(i);
                }
            }
            rules.push(Rule {
                head: r.head.clone(),
                body,
            });
        }

        let mut order: Vec<u32> = Vec::with_capacity(n);
        let mut priority = 0;
        if let Some(onto) = projection {
            order.extend(onto.iter().map(|a| a.0).filter(|&a| (a as usize) < compiled.n_program));
            priority = order.len();
        }
        let mut in_order = vec![false; n];
        order.iter().for_each(|&a| in_order[a as usize] = true);
        order.extend((0..n as u32).filter(|&a| !in_order[a as usize]));

        Search {
            compiled,
            rules,
            head_of,
            occurs,
            order,
            priority: if projection.is_some() { priority } else { usize::MAX },
            clock: Clock::new(deadline),
            found: Vec::new(),
        }
    }

    pub fn run(mut self) -> Result<Vec<Interpretation>> {
        let mut vals = vec![Val::Unknown; self.compiled.n_atoms];
        if self.propagate(&mut vals, None) {
            self.descend(vals, Mode::Enumerate)?;
        }
        Ok(self.found)
    }

    /// The first answer set in branching order, if any.
    pub fn first(mut self) -> Result<Option<Interpretation>> {
        let mut vals = vec![Val::Unknown; self.compiled.n_atoms];
        if self.propagate(&mut vals, None) && self.descend(vals, Mode::FindOne)? {
            return Ok(self.found.pop());
        }
        Ok(None)
    }

    fn descend(&mut self, vals: Vec<Val>, mode: Mode) -> Result<bool> {
        self.clock.tick()?;
        if mode == Mode::Enumerate
            && self.priority != usize::MAX
            && self.order[..self.priority]
                .iter()
                .all(|&a| vals[a as usize] != Val::Unknown)
        {
            if self.descend(vals.clone(), Mode::FindOne)? {
                let projected = self.order[..self.priority]
                    .iter()
                    .filter(|&&a| vals[a as usize] == Val::True)
                    .map(|&a| AtomId(a))
                    .collect();
                // FindOne pushed the witness; replace it with its projection.
                self.found.pop();
                self.found.push(projected);
            }
            return Ok(false);
        }

        let Some(&next) = self.order.iter().find(|&&a| vals[a as usize] == Val::Unknown) else {
            if self.is_stable(&vals) {
                let model = (0..self.compiled.n_program as u32)
                    .filter(|&a| vals[a as usize] == Val::True)
                    .map(AtomId)
                    .collect();
                self.found.push(model);
                return Ok(true);
            }
            return Ok(false);
        };

        for value in [Val::False, Val::True] {
            let mut branch = vals.clone();
            branch[next as usize] = value;
            if self.propagate(&mut branch, Some(next)) && self.descend(branch, mode)? && mode == Mode::FindOne {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Runs propagation to fixpoint. Returns false on conflict. `changed` is
    /// the atom just decided; `None` seeds every rule and atom.
    fn propagate(&self, vals: &mut [Val], changed: Option<u32>) -> bool {
        let mut prop = Propagation {
            rule_queue: VecDeque::new(),
            atom_queue: VecDeque::new(),
            rule_queued: vec![false; self.rules.len()],
            atom_queued: vec![false; vals.len()],
        };
        match changed {
            None => {
                (0..self.rules.len() as u32).for_each(|r| prop.push_rule(r));
                (0..vals.len() as u32).for_each(|a| prop.push_atom(a));
            }
            Some(atom) => self.touch(&mut prop, atom),
        }
        loop {
            if let Some(r) = prop.rule_queue.pop_front() {
                prop.rule_queued[r as usize] = false;
                if !self.check_rule(vals, &mut prop, r) {
                    return false;
                }
            } else if let Some(a) = prop.atom_queue.pop_front() {
                prop.atom_queued[a as usize] = false;
                if !self.check_support(vals, &mut prop, a) {
                    return false;
                }
            } else {
                return true;
            }
        }
    }

    fn touch(&self, prop: &mut Propagation, atom: u32) {
        prop.push_atom(atom);
        for &r in &self.occurs[atom as usize] {
            prop.push_rule(r);
            for &h in &self.rules[r as usize].head {
                prop.push_atom(h);
            }
        }
    }

    fn set(&self, vals: &mut [Val], prop: &mut Propagation, atom: u32, value: Val) -> bool {
        match vals[atom as usize] {
            Val::Unknown => {
                vals[atom as usize] = value;
                self.touch(prop, atom);
                true
            }
            current => current == value,
        }
    }

    fn check_rule(&self, vals: &mut [Val], prop: &mut Propagation, r: u32) -> bool {
        let rule = &self.rules[r as usize];
        let mut open_body = None;
        let mut n_open_body = 0;
        for lit in &rule.body {
            match vals[lit.atom as usize] {
                Val::Unknown => {
                    n_open_body += 1;
                    open_body = Some(*lit);
                }
                v if v != Val::of(lit.want) => return true,
                _ => {}
            }
        }
        let mut open_head = None;
        let mut n_open_head = 0;
        for &h in &rule.head {
            match vals[h as usize] {
                Val::True => return true,
                Val::Unknown => {
                    n_open_head += 1;
                    open_head = Some(h);
                }
                Val::False => {}
            }
        }
        match (n_open_body, n_open_head) {
            (0, 0) => false,
            (0, 1) => self.set(vals, prop, open_head.unwrap(), Val::True),
            (1, 0) => {
                let lit = open_body.unwrap();
                self.set(vals, prop, lit.atom, Val::of(!lit.want))
            }
            _ => true,
        }
    }

    fn check_support(&self, vals: &mut [Val], prop: &mut Propagation, atom: u32) -> bool {
        if vals[atom as usize] == Val::False {
            return true;
        }
        let mut supporters = 0;
        let mut last = 0;
        for &r in &self.head_of[atom as usize] {
            let rule = &self.rules[r as usize];
            let body_false = rule.body.iter().any(|l| vals[l.atom as usize] == Val::of(!l.want));
            let other_head_true = rule.head.iter().any(|&h| h != atom && vals[h as usize] == Val::True);
            if !body_false && !other_head_true {
                supporters += 1;
                last = r;
                if supporters > 1 {
                    return true;
                }
            }
        }
        match (supporters, vals[atom as usize]) {
            (0, Val::True) => false,
            (0, _) => self.set(vals, prop, atom, Val::False),
            (1, Val::True) => {
                let rule = &self.rules[last as usize];
                rule.body.iter().all(|l| self.set(vals, prop, l.atom, Val::of(l.want)))
                    && rule
                        .head
                        .iter()
                        .filter(|&&h| h != atom)
                        .all(|&h| self.set(vals, prop, h, Val::False))
            }
            _ => true,
        }
    }

    /// Whether the total assignment is a minimal model of its reduct.
    fn is_stable(&self, vals: &[Val]) -> bool {
        let model: Vec<bool> = vals.iter().map(|&v| v == Val::True).collect();
        // Rules of the reduct whose positive body lies inside the model: those
        // whose whole body holds. Every other reduct rule is satisfied by all
        // subsets of the model.
        let relevant: Vec<&Rule> = self
            .rules
            .iter()
            .filter(|r| r.body.iter().all(|l| model[l.atom as usize] == l.want))
            .collect();

        // Atoms forced into every model of the reduct below `model`.
        let mut derived = vec![false; model.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for r in &relevant {
                if !r.positive().all(|a| derived[a as usize]) {
                    continue;
                }
                let mut heads = r.head.iter().filter(|&&h| model[h as usize]);
                if let (Some(&h), None) = (heads.next(), heads.next()) {
                    if !derived[h as usize] {
                        derived[h as usize] = true;
                        changed = true;
                    }
                }
            }
        }
        if derived == model {
            return true;
        }
        let derived_is_model = relevant
            .iter()
            .all(|r| !r.positive().all(|a| derived[a as usize]) || r.head.iter().any(|&h| derived[h as usize]));
        if derived_is_model {
            return false;
        }
        !smaller_model_exists(&relevant, &model, &derived)
    }
}

struct Propagation {
    rule_queue: VecDeque<u32>,
    atom_queue: VecDeque<u32>,
    rule_queued: Vec<bool>,
    atom_queued: Vec<bool>,
}

impl Propagation {
    fn push_rule(&mut self, r: u32) {
        if !self.rule_queued[r as usize] {
            self.rule_queued[r as usize] = true;
            self.rule_queue.push_back(r);
        }
    }

    fn push_atom(&mut self, a: u32) {
        if !self.atom_queued[a as usize] {
            self.atom_queued[a as usize] = true;
            self.atom_queue.push_back(a);
        }
    }
}

/// Searches for a model `N` of the reduct with `derived ⊆ N ⊊ model`.
/// Every such model contains `derived`, so only the remaining atoms of
/// `model` are free.
fn smaller_model_exists(relevant: &[&Rule], model: &[bool], derived: &[bool]) -> bool {
    let free: Vec<u32> = (0..model.len() as u32)
        .filter(|&a| model[a as usize] && !derived[a as usize])
        .collect();
    let var_of = |a: u32| free.binary_search(&a).ok();

    let mut clauses: Vec<Vec<(usize, bool)>> = Vec::new();
    for r in relevant {
        if r.head.iter().any(|&h| derived[h as usize]) {
            continue;
        }
        let mut clause: Vec<(usize, bool)> = r.head.iter().filter_map(|&h| var_of(h).map(|v| (v, true))).collect();
        clause.extend(r.positive().filter_map(|a| var_of(a).map(|v| (v, false))));
        if clause.is_empty() {
            return false;
        }
        clauses.push(clause);
    }
    clauses.push((0..free.len()).map(|v| (v, false)).collect());
    satisfiable(&clauses, &mut vec![None; free.len()])
}

fn satisfiable(clauses: &[Vec<(usize, bool)>], assignment: &mut [Option<bool>]) -> bool {
    loop {
        let mut unit = None;
        for clause in clauses {
            let mut open = None;
            let mut n_open = 0;
            let mut satisfied = false;
            for &(v, sign) in clause {
                match assignment[v] {
                    Some(value) if value == sign => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        n_open += 1;
                        open = Some((v, sign));
                    }
                }
            }
            if satisfied {
                continue;
            }
            match n_open {
                0 => return false,
                1 => {
                    unit = open;
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some((v, sign)) => assignment[v] = Some(sign),
            None => break,
        }
    }
    let Some(v) = assignment.iter().position(Option::is_none) else {
        return true;
    };
    [true, false].into_iter().any(|value| {
        let mut branch = assignment.to_vec();
        branch[v] = Some(value);
        satisfiable(clauses, &mut branch)
    })
}

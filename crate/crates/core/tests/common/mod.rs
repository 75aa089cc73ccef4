//! Random programs and brute-force reference semantics, written against
//! their own program representation so they share no code with the crate.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Atom `i` is named by `NAMES[i]`; odd indices are the explicit negations
/// of the even index before them.
pub const NAMES: [&str; 16] = [
    "a0", "-a0", "a1", "-a1", "a2", "-a2", "a3", "-a3", "a4", "-a4", "a5", "-a5", "a6", "-a6", "a7", "-a7",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subj {
    pub atom: usize,
    pub inner_neg: bool,
}

impl Subj {
    pub fn text(self) -> String {
        format!("&k{{ {}{} }}", if self.inner_neg { "~" } else { "" }, NAMES[self.atom])
    }
}

#[derive(Debug, Clone, Default)]
pub struct TRule {
    pub head: Vec<usize>,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
    pub negneg: Vec<usize>,
    /// `(negated, subjective atom)`; `negated` is an outer `not`.
    pub subj: Vec<(bool, Subj)>,
}

#[derive(Debug, Clone, Default)]
pub struct TProgram {
    pub n_atoms: usize,
    pub rules: Vec<TRule>,
}

pub type Mask = u32;
pub type Valuation = BTreeSet<(String, bool)>;

impl TProgram {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rules.iter().enumerate() {
            let sep = if i % 2 == 0 { ", " } else { " ; " };
            out.push_str(&r.head.iter().map(|&a| NAMES[a]).collect::<Vec<_>>().join(sep));
            let mut body: Vec<String> = Vec::new();
            body.extend(r.pos.iter().map(|&a| NAMES[a].to_string()));
            body.extend(r.neg.iter().map(|&a| format!("not {}", NAMES[a])));
            body.extend(r.negneg.iter().map(|&a| format!("not not {}", NAMES[a])));
            body.extend(
                r.subj
                    .iter()
                    .map(|&(n, s)| format!("{}{}", if n { "not " } else { "" }, s.text())),
            );
            if !body.is_empty() {
                out.push_str(" :- ");
                out.push_str(&body.join(", "));
            }
            out.push_str(".\n");
        }
        out
    }

    pub fn subjective(&self) -> Vec<Subj> {
        let mut out: Vec<Subj> = Vec::new();
        for r in &self.rules {
            for &(_, s) in &r.subj {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// The program with every subjective literal replaced by its value under
    /// `value`, rules with a false literal removed.
    pub fn fix(&self, value: impl Fn(Subj) -> bool) -> TProgram {
        let rules = self
            .rules
            .iter()
            .filter(|r| r.subj.iter().all(|&(negated, s)| value(s) != negated))
            .map(|r| TRule {
                subj: Vec::new(),
                ..r.clone()
            })
            .collect();
        TProgram {
            n_atoms: self.n_atoms,
            rules,
        }
    }

    pub fn atoms_used(&self) -> BTreeSet<usize> {
        self.rules
            .iter()
            .flat_map(|r| {
                r.head
                    .iter()
                    .chain(&r.pos)
                    .chain(&r.neg)
                    .chain(&r.negneg)
                    .copied()
                    .chain(r.subj.iter().map(|(_, s)| s.atom))
            })
            .collect()
    }
}

fn bits(atoms: &[usize]) -> Mask {
    atoms.iter().fold(0, |m, &a| m | 1 << a)
}

/// Rules of the reduct of `p` with respect to `m`, as (head, positive body).
fn reduct(p: &TProgram, m: Mask) -> Vec<(Mask, Mask)> {
    p.rules
        .iter()
        .filter(|r| bits(&r.neg) & m == 0 && bits(&r.negneg) & !m == 0)
        .map(|r| (bits(&r.head), bits(&r.pos)))
        .collect()
}

fn satisfies(rules: &[(Mask, Mask)], m: Mask) -> bool {
    rules.iter().all(|&(head, pos)| pos & !m != 0 || head & m != 0)
}

pub fn is_model(p: &TProgram, m: Mask) -> bool {
    p.rules.iter().all(|r| {
        let body = bits(&r.pos) & !m == 0 && bits(&r.neg) & m == 0 && bits(&r.negneg) & !m == 0;
        !body || bits(&r.head) & m != 0
    })
}

pub fn consistent(m: Mask) -> bool {
    m & (m >> 1) & 0x5555_5555 == 0
}

/// `m` is a minimal model of the reduct of `p` with respect to `m`.
pub fn is_minimal_reduct_model(p: &TProgram, m: Mask) -> bool {
    let rules = reduct(p, m);
    if !satisfies(&rules, m) {
        return false;
    }
    let mut sub = m;
    while sub != 0 {
        sub = (sub - 1) & m;
        if satisfies(&rules, sub) {
            return false;
        }
    }
    true
}

/// Answer sets of a program without subjective literals, by trying every
/// subset of its atoms.
pub fn answer_sets(p: &TProgram) -> Vec<Mask> {
    assert!(p.rules.iter().all(|r| r.subj.is_empty()));
    (0..1 << p.n_atoms)
        .filter(|&m| is_model(p, m) && consistent(m) && is_minimal_reduct_model(p, m))
        .collect()
}

pub fn names(m: Mask) -> BTreeSet<String> {
    (0..32)
        .filter(|i| m >> i & 1 == 1)
        .map(|i| NAMES[i].to_string())
        .collect()
}

pub fn cautious_brave(sets: &[Mask]) -> Option<(Mask, Mask)> {
    let first = *sets.first()?;
    Some(sets.iter().fold((first, first), |(c, b), &s| (c & s, b | s)))
}

fn holds(m: Mask, s: Subj) -> bool {
    (m >> s.atom & 1 == 1) != s.inner_neg
}

/// World views by the definition, each given by the valuation it induces.
pub fn world_views(p: &TProgram) -> BTreeSet<Valuation> {
    let atoms = p.subjective();
    let mut out = BTreeSet::new();
    for x in 0..1u32 << atoms.len() {
        let value = |s: Subj| x >> atoms.iter().position(|&t| t == s).unwrap() & 1 == 1;
        let world = answer_sets(&p.fix(value));
        if world.is_empty() {
            continue;
        }
        let induced = |s: Subj| world.iter().all(|&m| holds(m, s));
        if answer_sets(&p.fix(induced)) == world {
            out.insert(atoms.iter().map(|&s| (s.text(), induced(s))).collect());
        }
    }
    out
}

pub struct Shape {
    /// Distinct atoms available, at most 16.
    pub atoms: usize,
    pub rules_per_atom: usize,
    /// Subjective atoms available; 0 gives standard programs.
    pub subjective: usize,
}

pub fn random_program(rng: &mut ChaCha8Rng, shape: &Shape) -> TProgram {
    let n = rng.random_range(1..=shape.atoms);
    let pool: Vec<Subj> = (0..shape.subjective)
        .map(|_| Subj {
            atom: rng.random_range(0..n),
            inner_neg: rng.random_bool(0.5),
        })
        .collect();
    let n_rules = rng.random_range(1..=shape.rules_per_atom * n);
    let mut rules = Vec::with_capacity(n_rules);
    while rules.len() < n_rules {
        let mut r = TRule::default();
        let head_len = match rng.random_range(0..20) {
            0..=2 => 0,
            3..=15 => 1,
            _ => 2,
        };
        for _ in 0..head_len {
            r.head.push(rng.random_range(0..n));
        }
        for _ in 0..rng.random_range(0..=3) {
            let a = rng.random_range(0..n);
            match rng.random_range(0..20) {
                0..=6 => r.pos.push(a),
                7..=12 => r.neg.push(a),
                13..=14 => r.negneg.push(a),
                _ if !pool.is_empty() => r
                    .subj
                    .push((rng.random_bool(0.5), pool[rng.random_range(0..pool.len())])),
                _ => r.neg.push(a),
            }
        }
        r.head.dedup();
        if r.head.is_empty() && r.pos.is_empty() && r.neg.is_empty() && r.negneg.is_empty() && r.subj.is_empty() {
            continue;
        }
        rules.push(r);
    }
    TProgram { n_atoms: n, rules }
}

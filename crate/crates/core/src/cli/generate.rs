use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::syntax::Program;

const RULES: &str = "\
eligible(X) :- high(X).
eligible(X) :- minority(X), fair(X).
-eligible(X) :- -fair(X), -high(X).
interview(X) :- not &k{eligible(X)}, not &k{-eligible(X)}, student(X).
";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    High,
    Fair,
    MinorityFair,
    /// `fair(s) , high(s).`
    Disjunction,
    Neither,
}

impl Profile {
    pub const ALL: [Profile; 5] = [
        Profile::High,
        Profile::Fair,
        Profile::MinorityFair,
        Profile::Disjunction,
        Profile::Neither,
    ];

    fn facts(self, s: &str) -> String {
        match self {
            Profile::High => format!("high({s}).\n"),
            Profile::Fair => format!("fair({s}).\n"),
            Profile::MinorityFair => format!("minority({s}).\nfair({s}).\n"),
            Profile::Disjunction => format!("fair({s}),high({s}).\n"),
            Profile::Neither => format!("-fair({s}).\n-high({s}).\n"),
        }
    }
}

/// Profiles of students `s1..sn`. Each instance extends the previous one:
/// the first `n` profiles for a seed do not depend on `n`.
pub fn profiles(n: usize, seed: u64) -> Vec<Profile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Profile::ALL[rng.random_range(0..Profile::ALL.len())])
        .collect()
}

/// The scholarship eligibility program for `n` students with seeded
/// random profiles.
pub fn gen_eligibility(n: usize, seed: u64) -> Result<Program> {
    if n == 0 {
        return Err(Error::Invalid(
            "an eligibility instance needs at least one student".into(),
        ));
    }
    Program::parse(&eligibility_source(&profiles(n, seed)))
}

pub fn eligibility_source(profiles: &[Profile]) -> String {
    let mut text = RULES.to_string();
    for (i, profile) in profiles.iter().enumerate() {
        let s = format!("s{}", i + 1);
        text.push_str(&format!("student({s}).\n"));
        text.push_str(&profile.facts(&s));
    }
    text
}

use std::io::Write;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::generate::gen_eligibility;
use crate::epistemic::{solve, Semantics, SolveOptions};
use crate::error::{Error, Result};
use crate::syntax::Program;

/// Ground conformant-planning instances of the Yale shooting scenario, by
/// horizon, followed by one without a conformant plan.
pub const YALE: [(&str, &str); 6] = [
    ("yale01", include_str!("../../data/yale/yale01.lp")),
    ("yale02", include_str!("../../data/yale/yale02.lp")),
    ("yale03", include_str!("../../data/yale/yale03.lp")),
    ("yale04", include_str!("../../data/yale/yale04.lp")),
    ("yale05", include_str!("../../data/yale/yale05.lp")),
    ("yale_unsat", include_str!("../../data/yale/yale_unsat.lp")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Eligibility,
    Yale,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub domain: Domain,
    /// Largest eligibility instance; Yale instances above this horizon are
    /// skipped, the unsatisfiable one never is.
    pub max_n: usize,
    pub seed: u64,
    pub semantics: Semantics,
    pub timeout: Duration,
    pub reps: usize,
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            domain: Domain::Eligibility,
            max_n: 10,
            seed: 0,
            semantics: Semantics::G91,
            timeout: Duration::from_secs(120),
            reps: 10,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    #[serde(serialize_with = "semantics_name")]
    pub semantics: Semantics,
    /// Empty when the instance timed out.
    pub world_views: Option<usize>,
    pub avg_seconds: f64,
    pub timed_out: bool,
}

fn semantics_name<S: serde::Serializer>(s: &Semantics, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(match s {
        Semantics::G91 => "g91",
        Semantics::K15 => "k15",
    })
}

/// Named instances of the configured domain.
pub fn instances(config: &BenchConfig) -> Result<Vec<(String, Program)>> {
    match config.domain {
        Domain::Eligibility => (1..=config.max_n)
            .map(|n| Ok((format!("eligible{n:02}"), gen_eligibility(n, config.seed)?)))
            .collect(),
        Domain::Yale => YALE
            .iter()
            .enumerate()
            .filter(|&(i, &(name, _))| i < config.max_n || name == "yale_unsat")
            .map(|(_, &(name, text))| Ok((name.to_string(), Program::parse(text)?)))
            .collect(),
    }
}

fn measure(name: &str, program: &Program, config: &BenchConfig) -> Result<BenchRecord> {
    let mut total = Duration::ZERO;
    let mut count = 0;
    let reps = config.reps.max(1);
    for _ in 0..reps {
        let start = Instant::now();
        let options = SolveOptions {
            semantics: config.semantics,
            deadline: Some(start + config.timeout),
            ..Default::default()
        };
        match solve(program, &options) {
            Ok(solution) => count = solution.world_views.len(),
            Err(Error::Timeout) => {
                return Ok(BenchRecord {
                    instance: name.to_string(),
                    semantics: config.semantics,
                    world_views: None,
                    avg_seconds: config.timeout.as_secs_f64(),
                    timed_out: true,
                })
            }
            Err(e) => return Err(e),
        }
        total += start.elapsed();
    }
    Ok(BenchRecord {
        instance: name.to_string(),
        semantics: config.semantics,
        world_views: Some(count),
        avg_seconds: total.as_secs_f64() / reps as f64,
        timed_out: false,
    })
}

/// One record per instance, in instance order.
pub fn bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let instances = instances(config)?;
    if !config.parallel {
        return instances.iter().map(|(name, p)| measure(name, p, config)).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = instances
            .iter()
            .map(|(name, p)| scope.spawn(move || measure(name, p, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("benchmark worker panicked"))
            .collect()
    })
}

pub fn write_csv(records: &[BenchRecord], out: impl Write) -> Result<()> {
    let io = |e: csv::Error| Error::Io {
        path: "csv output".into(),
        source: e.into(),
    };
    let mut writer = csv::Writer::from_writer(out);
    if records.is_empty() {
        writer
            .write_record(["instance", "semantics", "world_views", "avg_seconds", "timed_out"])
            .map_err(io)?;
    }
    for record in records {
        writer.serialize(record).map_err(io)?;
    }
    writer.flush().map_err(|source| Error::Io {
        path: "csv output".into(),
        source,
    })
}

//! Command-line front end: eclingo-style transcripts, `#show` filtering,
//! benchmark instance generation and the benchmark harness.

mod bench;
mod generate;

use std::io::Write;
use std::path::PathBuf;

pub use bench::{bench, instances, write_csv, BenchConfig, BenchRecord, Domain, YALE};
pub use generate::{eligibility_source, gen_eligibility, profiles, Profile};

use crate::epistemic::{oracle_world_views, solve, Solution, SolveOptions, WorldView};
use crate::error::{Error, Result};
use crate::grounder::{ground_program, GroundProgram};
use crate::syntax::{Directive, Program};

pub const BANNER: &str = concat!("epiworld version ", env!("CARGO_PKG_VERSION"));

pub const EXIT_SATISFIABLE: i32 = 10;
pub const EXIT_UNSATISFIABLE: i32 = 20;
pub const EXIT_INPUT_ERROR: i32 = 65;
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Solve,
    Oracle,
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub options: SolveOptions,
    pub mode: Mode,
}

/// Reads and concatenates the input files. A path `-`, or an empty list,
/// reads standard input.
pub fn read_inputs(paths: &[PathBuf]) -> Result<String> {
    let stdin = [PathBuf::from("-")];
    let paths = if paths.is_empty() { &stdin[..] } else { paths };
    let mut text = String::new();
    for path in paths {
        let read = if path.as_os_str() == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(path)
        };
        let chunk = read.map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        text.push_str(&chunk);
        text.push('\n');
    }
    Ok(text)
}

/// World views of `program` by the selected route.
pub fn compute(program: &Program, options: &SolveOptions, mode: Mode) -> Result<Solution> {
    match mode {
        Mode::Solve => solve(program, options),
        Mode::Oracle => {
            let ground = ground_program(program)?;
            let mut world_views = oracle_world_views(&ground)?;
            if options.max_models > 0 {
                world_views.truncate(options.max_models);
            }
            Ok(Solution {
                candidates: 1 << ground.subjective_atoms().len(),
                program: ground,
                directives: program.directives.clone(),
                world_views,
            })
        }
    }
}

/// The displayed subjective atoms of a world view, in lexicographic order.
///
/// Without `#show` directives these are the subjective atoms that hold. With
/// them, `&k{ a }` is displayed for every atom `a` of a shown predicate that
/// belongs to every answer set of the world view.
pub fn apply_show(program: &GroundProgram, view: &WorldView, directives: &[Directive]) -> Vec<String> {
    let shows: Vec<&Directive> = directives
        .iter()
        .filter(|d| matches!(d, Directive::Show { .. }))
        .collect();
    let mut shown: Vec<String> = if shows.is_empty() {
        view.true_atoms().map(|s| program.display_subjective(s)).collect()
    } else {
        view.cautious()
            .iter()
            .map(|id| program.atom(id))
            .filter(|atom| shows.iter().any(|d| d.shows(atom)))
            .map(|atom| format!("&k{{ {atom} }}"))
            .collect()
    };
    shown.sort();
    shown
}

/// The full output for a solution, banner first.
pub fn transcript(solution: &Solution) -> String {
    let mut out = format!("{BANNER}\nSolving...\n");
    for (i, view) in solution.world_views.iter().enumerate() {
        let shown = apply_show(&solution.program, view, &solution.directives);
        out.push_str(&format!("Answer: {}\n{}\n", i + 1, shown.join(" ")));
    }
    out.push_str(if solution.world_views.is_empty() {
        "UNSATISFIABLE\n"
    } else {
        "SATISFIABLE\n"
    });
    out
}

pub fn exit_status(solution: &Solution) -> i32 {
    if solution.world_views.is_empty() {
        EXIT_UNSATISFIABLE
    } else {
        EXIT_SATISFIABLE
    }
}

/// Runs the solver over the configured inputs, writing the transcript to
/// `out` and diagnostics to `diag`. Returns the process exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> i32 {
    let result = read_inputs(&config.inputs)
        .and_then(|text| Program::parse(&text))
        .and_then(|program| compute(&program, &config.options, config.mode));
    match result {
        Ok(solution) => {
            if out.write_all(transcript(&solution).as_bytes()).is_err() {
                return EXIT_FAILURE;
            }
            exit_status(&solution)
        }
        Err(e) => {
            let _ = writeln!(diag, "epiworld: {e}");
            match e {
                Error::Lex { .. }
                | Error::Syntax { .. }
                | Error::Unsafe { .. }
                | Error::NoConstants
                | Error::Io { .. }
                | Error::Invalid(_) => EXIT_INPUT_ERROR,
                Error::Timeout => EXIT_FAILURE,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn output(src: &str, options: &SolveOptions) -> String {
        let solution = compute(&Program::parse(src).unwrap(), options, Mode::Solve).unwrap();
        transcript(&solution)
    }

    #[test]
    fn mutual_transcript() {
        let text = output("p :- not &k{q}.\nq :- not &k{p}.", &SolveOptions::default());
        assert_eq!(
            text,
            format!("{BANNER}\nSolving...\nAnswer: 1\n&k{{ p }}\nAnswer: 2\n&k{{ q }}\nSATISFIABLE\n")
        );
    }

    #[test]
    fn show_filters_and_introduces() {
        let text = output("p :- not &k{q}.\nq :- not &k{p}.\n#show p/0.", &SolveOptions::default());
        assert!(
            text.ends_with("Answer: 1\n&k{ p }\nAnswer: 2\n\nSATISFIABLE\n"),
            "{text}"
        );

        let text = output(
            "a :- not b.\nc :- &k{a}.\n#show c/0.\n#show -d/0.\n-d.",
            &SolveOptions::default(),
        );
        assert!(text.ends_with("Answer: 1\n&k{ -d } &k{ c }\nSATISFIABLE\n"), "{text}");
    }

    #[test]
    fn unsatisfiable() {
        let solution = compute(
            &Program::parse(":- not &k{p}.").unwrap(),
            &SolveOptions::default(),
            Mode::Solve,
        )
        .unwrap();
        assert!(transcript(&solution).ends_with("Solving...\nUNSATISFIABLE\n"));
        assert_eq!(exit_status(&solution), EXIT_UNSATISFIABLE);
    }

    #[test]
    fn run_reports_input_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.lp");
        std::fs::write(&path, "p :- &k{&k{q}}.").unwrap();
        let config = RunConfig {
            inputs: vec![path, dir.path().join("missing.lp")],
            ..Default::default()
        };
        let (mut out, mut diag) = (Vec::new(), Vec::new());
        assert_eq!(run(&config, &mut out, &mut diag), EXIT_INPUT_ERROR);
        assert!(out.is_empty());
        assert!(String::from_utf8(diag).unwrap().starts_with("epiworld: "));
    }

    #[test]
    fn oracle_mode_matches() {
        let program = Program::parse("p :- not &k{q}.\nq :- not &k{p}.").unwrap();
        let options = SolveOptions::default();
        let a = compute(&program, &options, Mode::Solve).unwrap();
        let b = compute(&program, &options, Mode::Oracle).unwrap();
        assert_eq!(transcript(&a), transcript(&b));
    }
}

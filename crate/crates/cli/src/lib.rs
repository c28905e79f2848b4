//! Command-line front end for `qnd-phase`: figure presets, scenario runs with CSV
//! output, and oracle validation suites.

pub mod args;
pub mod csv;
pub mod presets;
pub mod scenario;
pub mod validate;

use std::io::Write;

use qnd_phase::Error;

pub use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Numerical(_) | Error::Quadrature { .. } => EXIT_VALIDATION,
        _ => EXIT_CONFIG,
    }
}

fn run_validation<O: Write, E: Write>(suite: &str, out: &mut O, err: &mut E) -> i32 {
    let checks = validate::Suite::parse(suite).and_then(validate::run_suite);
    match checks {
        Ok(checks) => {
            for c in &checks {
                let _ = writeln!(out, "{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed);
            if failed == 0 {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Execute a parsed command line, returning the process exit code.
pub fn execute<O: Write, E: Write>(cli: &Cli, out: &mut O, err: &mut E) -> i32 {
    match &cli.command {
        Some(Command::Validate { suite }) => run_validation(suite, out, err),
        Some(Command::ValidateBath) => run_validation("bath", out, err),
        Some(Command::Presets) => {
            for name in presets::PRESET_NAMES {
                let _ = writeln!(out, "{name}");
            }
            EXIT_OK
        }
        None => {
            let results = cli.run.to_configs().and_then(|cfgs| scenario::run_scenarios(&cfgs));
            let results = match results {
                Ok(r) => r,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return exit_code(&e);
                }
            };
            let written = match &cli.run.out {
                Some(path) => std::fs::File::create(path).and_then(|f| csv::write_csv(&results, std::io::BufWriter::new(f))),
                None => csv::write_csv(&results, &mut *out),
            };
            match written {
                Ok(()) => EXIT_OK,
                // The reader went away (e.g. `| head`); nothing left to report.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot write output: {e}");
                    EXIT_CONFIG
                }
            }
        }
    }
}

//! `m12`: specialize the M12 three-point covers and study the fields.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use m12_core::covers::CoverId;
use m12_core::error::ErrorClass;

/// Everything a run depends on; the output is a function of this alone.
#[derive(Debug, Parser)]
#[command(
    name = "m12",
    version,
    about = "Specialize M12 covers and compute field invariants"
)]
pub struct RunConfig {
    /// Worker threads (output does not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Allow the slow computations (degree-48 orders, full-range scans).
    #[arg(long, global = true)]
    pub slow: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the cover catalog, or show one cover.
    Covers { id: Option<CoverId> },
    /// The specialized polynomial `f_L(value, x)`; for E, the twin pair.
    Specialize {
        id: CoverId,
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// The degree-48 lift at `value`.
    Lift {
        id: CoverId,
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Field discriminant, root discriminant and verdicts.
    Analyze {
        id: CoverId,
        #[arg(allow_hyphen_values = true)]
        value: String,
        /// Analyze the lift instead of the base field.
        #[arg(long)]
        lift: bool,
        /// Also scan Frobenius patterns at this many good primes.
        #[arg(long)]
        scan: Option<usize>,
        /// Extra primes to examine, comma separated.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Frobenius pattern counts and the group-drop verdict.
    Stats {
        id: CoverId,
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        lift: bool,
        /// Count the first N primes at which the pattern is defined.
        #[arg(long, default_value_t = 10_000, conflicts_with_all = ["from", "to"])]
        first: usize,
        #[arg(long, requires = "to")]
        from: Option<u64>,
        #[arg(long, requires = "from")]
        to: Option<u64>,
        /// List the primes at which the polynomial splits completely.
        #[arg(long)]
        splitting: bool,
    },
    /// S-unit search for a specialization set.
    Search {
        /// Cusp orders `m0,m1,minf`.
        triple: String,
        #[arg(long = "S", default_value = "2,3,11")]
        s: String,
        /// Height bound: `1000000`, `1e6` or `10^6`.
        #[arg(long = "H", default_value = "1e12")]
        h: String,
        /// Emit JSON instead of the line format.
        #[arg(long)]
        json: bool,
    },
    /// Membership of a parameter in a specialization set.
    Validate {
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        triple: String,
        #[arg(long = "S")]
        s: String,
    },
    /// Arm and extremality of a parameter at a prime.
    Classify {
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        p: u64,
        /// Take the cusp convention from this cover and predict the tame
        /// discriminant exponent.
        #[arg(long)]
        cover: Option<CoverId>,
    },
    /// Check the printed monodromy of a cover.
    Verify { id: CoverId },
    /// The Hilbert symbol `(a, b)_v`.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// A prime or `inf`.
        v: String,
    },
    /// Obstructions to lifting into 2.M12.
    Obstruct {
        id: CoverId,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
    },
    /// Discriminant table for several parameters (negative values go
    /// after `--`).
    Report {
        id: CoverId,
        #[arg(required = true)]
        values: Vec<String>,
        #[arg(long)]
        csv: bool,
    },
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Input => 2,
        ErrorClass::Math => 3,
        ErrorClass::Indeterminate => 4,
    }
}

fn class_name(class: ErrorClass) -> &'static str {
    match class {
        ErrorClass::Input => "input",
        ErrorClass::Math => "math",
        ErrorClass::Indeterminate => "indeterminate",
    }
}

fn fail(class: ErrorClass, message: &str) -> ExitCode {
    let body = serde_json::json!({ "error": { "class": class_name(class), "message": message } });
    eprintln!("{body}");
    ExitCode::from(exit_code(class))
}

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(ErrorClass::Input, e.to_string().trim()),
    };
    if let Some(n) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            return fail(ErrorClass::Input, &e.to_string());
        }
    }
    match commands::run(&cfg) {
        Ok(out) => {
            let text = out.text;
            let written = match &cfg.out {
                Some(p) => std::fs::write(p, &text).map_err(|e| e.to_string()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                return fail(ErrorClass::Input, &format!("cannot write output: {e}"));
            }
            match out.status {
                Some(class) => ExitCode::from(exit_code(class)),
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => fail(e.class(), &e.to_string()),
    }
}

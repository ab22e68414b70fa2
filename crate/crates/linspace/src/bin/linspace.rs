//! Command-line front door. Every subcommand accepts "-" for stdin, emits a
//! single deterministic JSON document (instances for `gen`/`enum`, reports
//! otherwise), and uses the exit-code discipline:
//!   0 = success, 1 = input is not a linear space, 2 = a theorem-level
//!   invariant failed (a bug in the library, never a property of the input).

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linspace::gen::{canonical_form, enumerate_all_jobs, near_pencil, projective_plane};
use linspace::incidence::{validate, LinearSpace, TheoremViolation, ValidationError};
use linspace::io::{parse_auto, to_json, to_text};
use linspace::matching::BkcVariant;
use linspace::report::{
    bkc_report_value, certify_report, classify_report, document, gram_report_value,
    hanani_report_value, instance_echo, validate_report, ReportError,
};

#[derive(Parser)]
#[command(name = "linspace", version, about = "Finite linear spaces: validation, certificates of m >= n, classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Ratio,
    Shifted,
}

#[derive(Subcommand)]
enum Command {
    /// Check the linear-space axioms
    Validate { file: String },
    /// Double count, inequality table, SDR, proof trace, cyclic certificate
    Certify { file: String },
    /// Near-pencil / projective-plane taxonomy for m = n
    Classify { file: String },
    /// Exact Gram determinant (two routes), rank, definiteness
    Gram {
        file: String,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
    },
    /// Pencil quantities, per-point lemma, pencil bounds
    Hanani { file: String },
    /// Weighted-sum verifier over exact rationals
    Bkc {
        file: String,
        #[arg(long, value_enum, default_value = "ratio")]
        variant: VariantArg,
    },
    /// Emit a canonical instance
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Stream the labeled census on n points
    Enum {
        n: usize,
        /// Reduce to isomorphism classes (one representative each)
        #[arg(long)]
        canonical: bool,
        /// Emit one JSON document instead of JSON-lines
        #[arg(long)]
        json: bool,
        /// Worker threads for the census
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// One (n-1)-point line plus n-1 two-point lines
    NearPencil {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Projective plane over GF(p), p prime
    Plane {
        p: u64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(ValidationError),
    Theorem(TheoremViolation),
    /// The report (including the failing verdict) was already printed.
    Reported,
}

impl From<ValidationError> for Failure {
    fn from(e: ValidationError) -> Self {
        Failure::Input(e)
    }
}

impl From<TheoremViolation> for Failure {
    fn from(e: TheoremViolation) -> Self {
        Failure::Theorem(e)
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Input(e) => Failure::Input(e),
            ReportError::Theorem(e) => Failure::Theorem(e),
        }
    }
}

fn read_input(path: &str) -> Result<String, ValidationError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| ValidationError::IndexOutOfRange {
                what: format!("cannot read stdin: {e}"),
            })?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| ValidationError::IndexOutOfRange {
            what: format!("cannot read {path}: {e}"),
        })
    }
}

fn load_space(path: &str) -> Result<LinearSpace, ValidationError> {
    validate(&parse_auto(&read_input(path)?)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            let ls = load_space(&file)?;
            let (report, ok) = validate_report(&ls);
            emit("validate", Some(&ls), report, ok)
        }
        Command::Certify { file } => {
            let ls = load_space(&file)?;
            let (report, ok) = certify_report(&ls)?;
            emit("certify", Some(&ls), report, ok)
        }
        Command::Classify { file } => {
            let ls = load_space(&file)?;
            let (report, ok) = classify_report(&ls)?;
            emit("classify", Some(&ls), report, ok)
        }
        Command::Gram { file, lambda } => {
            let raw = parse_auto(&read_input(&file)?)?;
            let (report, ok) = gram_report_value(&raw, lambda)?;
            let echo = json!({ "n": report["n"], "m": report["m"] });
            emit_raw("gram", echo, report, ok)
        }
        Command::Hanani { file } => {
            let ls = load_space(&file)?;
            let (report, ok) = hanani_report_value(&ls)?;
            emit("hanani", Some(&ls), report, ok)
        }
        Command::Bkc { file, variant } => {
            let ls = load_space(&file)?;
            let variant = match variant {
                VariantArg::Ratio => BkcVariant::Ratio,
                VariantArg::Shifted => BkcVariant::Shifted,
            };
            let (report, ok) = bkc_report_value(&ls, variant);
            emit("bkc", Some(&ls), report, ok)
        }
        Command::Gen { family } => {
            let (ls, as_json) = match family {
                GenFamily::NearPencil { n, json } => (near_pencil(n)?, json),
                GenFamily::Plane { p, json } => (projective_plane(p)?, json),
            };
            if as_json {
                println!("{}", to_json(ls.structure()));
            } else {
                print!("{}", to_text(ls.structure()));
            }
            Ok(())
        }
        Command::Enum {
            n,
            canonical,
            json: as_json,
            jobs,
        } => {
            let mut spaces = enumerate_all_jobs(n, jobs)?;
            if canonical {
                let mut seen = std::collections::BTreeSet::new();
                let mut reduced = Vec::new();
                for ls in spaces {
                    if seen.insert(canonical_form(&ls)?) {
                        reduced.push(ls);
                    }
                }
                spaces = reduced;
            }
            if as_json {
                let instances: Vec<Value> = spaces
                    .iter()
                    .map(|ls| serde_json::to_value(ls.structure()).unwrap())
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string(&json!({
                        "count": spaces.len(),
                        "instances": instances,
                    }))
                    .unwrap()
                );
            } else {
                for ls in &spaces {
                    println!("{}", to_json(ls.structure()));
                }
                println!("# count {}", spaces.len());
            }
            Ok(())
        }
    }
}

fn emit(command: &str, ls: Option<&LinearSpace>, body: Value, ok: bool) -> Result<(), Failure> {
    let instance = ls.map(instance_echo).unwrap_or(Value::Null);
    emit_raw(command, instance, body, ok)
}

fn emit_raw(command: &str, instance: Value, body: Value, ok: bool) -> Result<(), Failure> {
    let doc = document(command, instance, body, ok);
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    if ok {
        Ok(())
    } else {
        Err(Failure::Reported)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "error": e.to_string(),
                    "verdict": "invalid-input",
                }))
                .unwrap()
            );
            ExitCode::from(1)
        }
        Err(Failure::Theorem(e)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "error": e.to_string(),
                    "verdict": "internal-assertion-failure",
                }))
                .unwrap()
            );
            ExitCode::from(2)
        }
        Err(Failure::Reported) => ExitCode::from(2),
    }
}

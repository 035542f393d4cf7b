//! `jsr`: joint spectral radius bounds and certificates from the command line.
//!
//! Every command prints one JSON document
//! `{"command", "input_digest", "params", "result", "warnings"}`.
//! Exit status: 0 on success, 1 on a computation error, 2 on a usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use jsr_core::bounds::{kronecker_bounds, sandwich, trace_estimate, zero_radius_test};
use jsr_core::certificates::{certified_interval, plan, plan_steps, protasov_gamma};
use jsr_core::families::{build_p, build_v, example1_bound, example2_bound};
use jsr_core::irreducibility::{
    burnside_test, chi_measure, chi_sampled_estimate, lemma1_crosscheck, Irreducibility,
    Lemma1Status,
};
use jsr_core::oracle::brute_force_interval;
use jsr_core::{parse_matrix_set, JsrError, Limits, Matrix, MatrixSet, NormKind, Tolerance};

const DEFAULT_N: usize = 6;
const DEFAULT_MESH: f64 = 0.01;
const DEFAULT_EPSILON: f64 = 0.05;
/// Seed of the sampling estimate used for d >= 4.
const SAMPLING_SEED: u64 = 0x6a73_7221;

#[derive(Parser)]
#[command(
    name = "jsr",
    version,
    about = "Joint spectral radius bounds and certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-sided bounds for n = 1..n_max.
    Bound {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = NormKind::L2)]
        norm: NormKind,
        #[arg(long, default_value_t = DEFAULT_N)]
        n_max: usize,
        /// Also report the (heuristic) trace estimate.
        #[arg(long)]
        trace: bool,
    },
    /// Sampled measure of irreducibility with a certified lower bound.
    Chi {
        #[command(flatten)]
        io: InputArgs,
        #[command(flatten)]
        chi: ChiArgs,
        /// Base points for the sampling estimate (d >= 4 only).
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Algebra-span test cross-checked against the sign of chi.
    Irreducible {
        #[command(flatten)]
        io: InputArgs,
        #[command(flatten)]
        chi: ChiArgs,
        #[arg(long, default_value_t = Tolerance::default().abs)]
        tol_abs: f64,
        #[arg(long, default_value_t = Tolerance::default().rel)]
        tol_rel: f64,
    },
    /// Certified enclosure of the joint spectral radius.
    Certify {
        #[command(flatten)]
        io: InputArgs,
        #[command(flatten)]
        chi: ChiArgs,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
    },
    /// Smallest product length whose certified ratio is at most 1 + epsilon.
    Plan {
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Optional matrix set, used to check the enumeration budget.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Protasov-type estimate of the constant gamma (Euclidean norm, d <= 3).
    Gamma {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 3142)]
        samples: usize,
        /// Upper bound on rho for the (rho + ‖A‖)^(d-1) denominator.
        #[arg(long)]
        rho_upper: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
    },
    /// Closed-form chi bounds for the families P(A) and V(A).
    Example {
        family: FamilyArg,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Brute-force reference interval.
    Oracle {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = NormKind::L2)]
        norm: NormKind,
        #[arg(long, default_value_t = DEFAULT_N)]
        n_max: usize,
    },
    /// Decides whether the joint spectral radius is zero.
    ZeroTest {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Kronecker-sum bounds for nonnegative sets.
    Kronecker {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    P,
    V,
}

#[derive(Args)]
struct InputArgs {
    /// Matrix set as JSON: {"dim": d, "matrices": [[[...], ...], ...]}.
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = Limits::default().max_words)]
    max_words: u128,
    #[arg(long, default_value_t = Limits::default().max_kron_rows)]
    max_kron_rows: usize,
}

impl BudgetArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_words: self.max_words,
            max_kron_rows: self.max_kron_rows,
            ..Limits::default()
        }
    }
}

#[derive(Args)]
struct ChiArgs {
    /// Maximal product length in the reach sets; defaults to d - 1 (at least 1).
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, default_value_t = NormKind::L2)]
    norm: NormKind,
    #[arg(long, default_value_t = DEFAULT_MESH)]
    mesh: f64,
}

impl ChiArgs {
    fn p_for(&self, dim: usize) -> usize {
        self.p.unwrap_or(dim.saturating_sub(1).max(1))
    }
}

enum Failure {
    Usage(String),
    Compute(JsrError),
}

impl From<JsrError> for Failure {
    fn from(e: JsrError) -> Self {
        Failure::Compute(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Report {
    command: &'static str,
    input_digest: Option<String>,
    params: Value,
    result: Value,
    warnings: Vec<String>,
}

impl Report {
    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "params": self.params,
            "result": self.result,
            "warnings": self.warnings,
        })
    }
}

struct Loaded {
    set: MatrixSet,
    digest: String,
}

fn read_input(path: &PathBuf) -> Outcome<(Vec<u8>, String)> {
    let bytes =
        fs::read(path).map_err(|e| Failure::Usage(format!("--input {}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect::<String>();
    Ok((bytes, format!("sha256:{digest}")))
}

fn load(path: &PathBuf) -> Outcome<Loaded> {
    let (bytes, digest) = read_input(path)?;
    let text = String::from_utf8(bytes).map_err(|e| JsrError::Parse {
        location: "input".into(),
        message: e.to_string(),
    })?;
    Ok(Loaded {
        set: parse_matrix_set(&text)?,
        digest,
    })
}

/// A single matrix, given either as a bare array of rows or as a set with
/// exactly one member.
fn load_matrix(path: &PathBuf) -> Outcome<(Matrix, String)> {
    let (bytes, digest) = read_input(path)?;
    if let Ok(rows) = serde_json::from_slice::<Vec<Vec<f64>>>(&bytes) {
        return Ok((Matrix::from_rows(&rows)?, digest));
    }
    let text = String::from_utf8(bytes).map_err(|e| JsrError::Parse {
        location: "input".into(),
        message: e.to_string(),
    })?;
    let set = parse_matrix_set(&text)?;
    if set.len() != 1 {
        return Err(JsrError::InvalidInput(format!(
            "expected a single matrix, found {}",
            set.len()
        ))
        .into());
    }
    Ok((set.get(0).clone(), digest))
}

fn positive(flag: &str, value: f64) -> Outcome<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{flag} must be positive, got {value}"
        )))
    }
}

fn at_least_one(flag: &str, value: usize) -> Outcome<()> {
    if value >= 1 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{flag} must be at least 1")))
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(command: &Command) -> Outcome<Report> {
    match command {
        Command::Bound {
            io,
            norm,
            n_max,
            trace,
        } => {
            at_least_one("--n-max", *n_max)?;
            let input = load(&io.input)?;
            let limits = io.budget.limits();
            let reports = sandwich(&input.set, *n_max, *norm, &limits).into_result()?;
            let mut result = json!({ "reports": reports });
            let mut warnings = Vec::new();
            if *trace {
                let estimates = (1..=*n_max)
                    .map(|n| {
                        trace_estimate(&input.set, n, &limits)
                            .map(|e| json!({ "n": n, "value": e.value, "witness": e.witness }))
                    })
                    .collect::<jsr_core::Result<Vec<_>>>()?;
                result["trace_estimate"] = Value::Array(estimates);
                warnings.push("trace_estimate is a heuristic, not a certified bound".into());
            }
            Ok(Report {
                command: "bound",
                input_digest: Some(input.digest),
                params: json!({ "norm": norm, "n_max": n_max, "trace": trace, "limits": limits }),
                result,
                warnings,
            })
        }
        Command::Chi { io, chi, samples } => {
            positive("--mesh", chi.mesh)?;
            let input = load(&io.input)?;
            let limits = io.budget.limits();
            let p = chi.p_for(input.set.dim());
            at_least_one("--p", p)?;
            let mut warnings = Vec::new();
            let estimate = if input.set.dim() <= 3 {
                chi_measure(&input.set, p, chi.norm, chi.mesh, &limits)?
            } else {
                at_least_one("--samples", *samples)?;
                warnings.push(format!(
                    "dimension {} exceeds the exact-hull limit; sampled_inf is a non-certified upper estimate",
                    input.set.dim()
                ));
                chi_sampled_estimate(
                    &input.set,
                    p,
                    chi.norm,
                    *samples,
                    *samples,
                    SAMPLING_SEED,
                    &limits,
                )?
            };
            if estimate.certified && estimate.certified_lower == 0.0 && estimate.sampled_inf > 0.0 {
                warnings.push("mesh too coarse to certify positivity; certified_lower is 0".into());
            }
            Ok(Report {
                command: "chi",
                input_digest: Some(input.digest),
                params: json!({ "p": p, "norm": chi.norm, "mesh": chi.mesh, "samples": samples, "limits": limits }),
                result: to_value(&estimate),
                warnings,
            })
        }
        Command::Irreducible {
            io,
            chi,
            tol_abs,
            tol_rel,
        } => {
            positive("--mesh", chi.mesh)?;
            let input = load(&io.input)?;
            let limits = io.budget.limits();
            let d = input.set.dim();
            let p = chi.p_for(d);
            if p + 1 < d {
                return Err(Failure::Usage(format!(
                    "--p must be at least d - 1 = {}",
                    d - 1
                )));
            }
            let tol = Tolerance {
                abs: *tol_abs,
                rel: *tol_rel,
            };
            let mut warnings = Vec::new();
            let result = if d <= 3 {
                let report =
                    lemma1_crosscheck(&input.set, p.max(1), chi.norm, chi.mesh, &tol, &limits)?;
                match report.status {
                    Lemma1Status::Inconclusive => warnings
                        .push("chi is positive on the net but not certified at this mesh".into()),
                    Lemma1Status::Inconsistent => {
                        warnings.push("algebra-span verdict and sampled chi disagree".into())
                    }
                    Lemma1Status::Consistent => {}
                }
                to_value(&report)
            } else {
                let report = burnside_test(&input.set)?;
                warnings.push(format!(
                    "dimension {d}: chi cross-check skipped (exact hulls need d <= 3)"
                ));
                json!({ "burnside": report })
            };
            if result["burnside"]["verdict"] == to_value(&Irreducibility::ComplexReducible) {
                warnings
                    .push("reducible over the complex field; real reducibility not decided".into());
            }
            Ok(Report {
                command: "irreducible",
                input_digest: Some(input.digest),
                params: json!({ "p": p, "norm": chi.norm, "mesh": chi.mesh, "tol_abs": tol_abs, "tol_rel": tol_rel, "limits": limits }),
                result,
                warnings,
            })
        }
        Command::Certify { io, chi, n } => {
            positive("--mesh", chi.mesh)?;
            at_least_one("--n", *n)?;
            let input = load(&io.input)?;
            let limits = io.budget.limits();
            let p = chi.p_for(input.set.dim());
            at_least_one("--p", p)?;
            let estimate = chi_measure(&input.set, p, chi.norm, chi.mesh, &limits)?;
            let interval = certified_interval(
                &input.set,
                *n,
                p,
                chi.norm,
                estimate.certified_lower,
                &limits,
            )?;
            Ok(Report {
                command: "certify",
                input_digest: Some(input.digest),
                params: json!({ "n": n, "p": p, "norm": chi.norm, "mesh": chi.mesh, "limits": limits }),
                result: json!({ "interval": interval, "chi": estimate }),
                warnings: Vec::new(),
            })
        }
        Command::Plan {
            nu,
            epsilon,
            input,
            budget,
            ..
        } => {
            if !(*nu > 1.0 && nu.is_finite()) {
                return Err(Failure::Usage(format!(
                    "--nu must be finite and greater than 1, got {nu}"
                )));
            }
            positive("--epsilon", *epsilon)?;
            let limits = budget.limits();
            let (result, digest, mut warnings) = match input {
                None => (json!({ "n": plan_steps(*nu, *epsilon)? }), None, Vec::new()),
                Some(path) => {
                    let loaded = load(path)?;
                    let step = plan(*nu, *epsilon, loaded.set.len(), &limits)?;
                    (to_value(&step), Some(loaded.digest), Vec::new())
                }
            };
            if result.get("fits_budget") == Some(&Value::Bool(false)) {
                warnings.push("the planned product length exceeds the enumeration budget".into());
            }
            Ok(Report {
                command: "plan",
                input_digest: digest,
                params: json!({ "nu": nu, "epsilon": epsilon, "limits": limits }),
                result,
                warnings,
            })
        }
        Command::Gamma {
            io,
            samples,
            rho_upper,
            n,
        } => {
            at_least_one("--samples", *samples)?;
            at_least_one("--n", *n)?;
            if let Some(r) = rho_upper {
                positive("--rho-upper", *r)?;
            }
            let input = load(&io.input)?;
            let limits = io.budget.limits();
            let gamma = protasov_gamma(&input.set, *rho_upper, *samples, &limits)?;
            let upper = jsr_core::bounds::gelfand_upper(&input.set, *n, NormKind::L2, &limits)?;
            let mut warnings = vec![
                "the gamma estimate rests on a bound whose derivation is not reproduced here"
                    .to_string(),
            ];
            if gamma.heuristic {
                warnings.push(
                    "subspace infima are netted, so gamma_lower may overestimate gamma".into(),
                );
            }
            Ok(Report {
                command: "gamma",
                input_digest: Some(input.digest),
                params: json!({ "samples": samples, "rho_upper": rho_upper, "n": n, "limits": limits }),
                result: json!({
                    "gamma": gamma,
                    "upper": upper,
                    "wirth_lower": gamma.wirth_lower(*n, upper),
                }),
                warnings,
            })
        }
        Command::Example { family, io } => {
            let (a, digest) = load_matrix(&io.input)?;
            let (set, bound, name) = match family {
                FamilyArg::P => (build_p(&a), example1_bound(&a), "p"),
                FamilyArg::V => (build_v(&a), example2_bound(&a), "v"),
            };
            Ok(Report {
                command: "example",
                input_digest: Some(digest),
                params: json!({ "family": name }),
                result: json!({ "bound": bound, "set": set.to_json() }),
                warnings: Vec::new(),
            })
        }
        Command::Oracle { io, norm, n_max } => {
            at_least_one("--n-max", *n_max)?;
            let input = load(&io.input)?;
            let limits = io.budget.limits();
            let interval = brute_force_interval(&input.set, *n_max, *norm, &limits)?;
            Ok(Report {
                command: "oracle",
                input_digest: Some(input.digest),
                params: json!({ "norm": norm, "n_max": n_max, "limits": limits }),
                result: to_value(&interval),
                warnings: Vec::new(),
            })
        }
        Command::ZeroTest { io } => {
            let input = load(&io.input)?;
            let limits = io.budget.limits();
            let zero = zero_radius_test(&input.set, &limits)?;
            Ok(Report {
                command: "zero-test",
                input_digest: Some(input.digest),
                params: json!({ "limits": limits }),
                result: json!({ "zero_radius": zero }),
                warnings: Vec::new(),
            })
        }
        Command::Kronecker { io, n } => {
            at_least_one("--n", *n)?;
            let input = load(&io.input)?;
            let limits = io.budget.limits();
            let bounds = kronecker_bounds(&input.set, *n, &limits)?;
            Ok(Report {
                command: "kronecker",
                input_digest: Some(input.digest),
                params: json!({ "n": n, "limits": limits }),
                result: to_value(&bounds),
                warnings: Vec::new(),
            })
        }
    }
}

fn output_path(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Plan { output, .. } => output.as_ref(),
        Command::Bound { io, .. }
        | Command::Chi { io, .. }
        | Command::Irreducible { io, .. }
        | Command::Certify { io, .. }
        | Command::Gamma { io, .. }
        | Command::Example { io, .. }
        | Command::Oracle { io, .. }
        | Command::ZeroTest { io }
        | Command::Kronecker { io, .. } => io.output.as_ref(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let mut text =
                serde_json::to_string_pretty(&report.to_json()).expect("json values serialize");
            text.push('\n');
            match output_path(&cli.command) {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: --output {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

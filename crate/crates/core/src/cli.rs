//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O, parse or shape error, 2 usage error,
//! 3 reverse-order law fails (`rol`) or the fuzzer found a violation
//! (`fuzz`), 4 SVD did not converge.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::TensorError;
use crate::io::{read_tensor, write_tensor, FormatError};
use crate::pinv::{identity_suite, min_norm_solve, penrose_residuals, pinv, rank, tsvd};
use crate::policy::NumericPolicy;
use crate::rol::{fuzz_search, rol_report};
use crate::tensor::{trace, DenseTensor, ModeShape};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED_CHECK: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "mptensor",
    version,
    about = "Einstein-product tensors: Moore-Penrose inverses and reverse-order laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Tolerances {
    /// Relative tolerance for equality checks
    #[arg(long, default_value = "1e-10", value_parser = unit_interval)]
    tol: f64,
    /// Relative singular-value cutoff for rank decisions
    #[arg(long, default_value = "1e-12", value_parser = unit_interval)]
    rank_tol: f64,
}

impl Tolerances {
    fn policy(&self) -> NumericPolicy {
        NumericPolicy::new(self.tol, self.rank_tol).expect("validated by the argument parser")
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Einstein product A * B
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Moore-Penrose inverse
    Pinv {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Relative singular-value cutoff
        #[arg(long, default_value = "1e-12", value_parser = unit_interval)]
        rank_tol: f64,
    },
    /// Tensor SVD A = U * D * V*
    Svd {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_u: PathBuf,
        #[arg(long)]
        out_d: PathBuf,
        #[arg(long)]
        out_v: PathBuf,
    },
    /// Trace of a square tensor, printed as "re im"
    Trace {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Minimum-norm least-squares solution X = pinv(A) * B of A * X = B
    Solve {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Relative singular-value cutoff
        #[arg(long, default_value = "1e-12", value_parser = unit_interval)]
        rank_tol: f64,
    },
    /// Check the reverse-order law pinv(A*B) = pinv(B)*pinv(A) and its equivalent conditions
    Rol {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        tol: Tolerances,
        /// Write the full report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Seeded random search for pairs on which the characterizations disagree
    Fuzz {
        /// Shape of A as "I1,I2,...:J1,J2,..."; B takes the transposed shape
        #[arg(long, value_parser = parse_shape)]
        shape: ModeShape,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance for equality checks
        #[arg(long, default_value = "1e-8", value_parser = unit_interval)]
        tol: f64,
        /// Relative singular-value cutoff
        #[arg(long, default_value = "1e-12", value_parser = unit_interval)]
        rank_tol: f64,
        /// Write the summary as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Residuals of the standard Moore-Penrose identities
    Identities {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        tol: Tolerances,
    },
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is not in (0, 1)"))
    }
}

/// Parses `"2,2:2,2"`; either side may be empty for an order-0 side.
pub fn parse_shape(s: &str) -> Result<ModeShape, String> {
    let (rows, cols) = s
        .split_once(':')
        .ok_or_else(|| format!("expected ROWS:COLS, got {s:?}"))?;
    let dims = |part: &str| -> Result<Vec<usize>, String> {
        if part.trim().is_empty() {
            return Ok(Vec::new());
        }
        part.split(',')
            .map(|d| d.trim().parse::<usize>().map_err(|e| format!("{d:?}: {e}")))
            .collect()
    };
    ModeShape::new(&dims(rows)?, &dims(cols)?).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Format(FormatError),
    Tensor(TensorError),
    Io(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Format(e)
    }
}

impl From<TensorError> for Failure {
    fn from(e: TensorError) -> Self {
        Failure::Tensor(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Tensor(TensorError::SvdNoConvergence { .. }) => EXIT_NO_CONVERGENCE,
            _ => EXIT_INPUT,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Format(e) => e.to_string(),
            Failure::Tensor(e) => e.to_string(),
            Failure::Io(e) => e.clone(),
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn policy(tol: f64, rank_tol: f64) -> NumericPolicy {
    NumericPolicy::new(tol, rank_tol).expect("validated by the argument parser")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Product { a, b, out: path } => {
            let c = read_tensor(&a)?.mul(&read_tensor(&b)?)?;
            write_tensor(&path, &c)?;
            writeln!(out, "shape {}", c.shape())?;
        }
        Command::Pinv {
            input,
            out: path,
            rank_tol,
        } => {
            let p = policy(NumericPolicy::default().eq_tol, rank_tol);
            let a = read_tensor(&input)?;
            let x = pinv(&a, &p)?;
            write_tensor(&path, &x)?;
            let r = penrose_residuals(&a, &x)?;
            writeln!(out, "shape {}", x.shape())?;
            writeln!(out, "rank {}", rank(&a, &p)?)?;
            writeln!(out, "penrose {:e} {:e} {:e} {:e}", r.r1, r.r2, r.r3, r.r4)?;
        }
        Command::Svd {
            input,
            out_u,
            out_d,
            out_v,
        } => {
            let f = tsvd(&read_tensor(&input)?)?;
            write_tensor(&out_u, &f.u)?;
            write_tensor(&out_d, &f.d)?;
            write_tensor(&out_v, &f.v)?;
            let sv: Vec<String> = f
                .singular_values()
                .iter()
                .map(|s| format!("{s:e}"))
                .collect();
            writeln!(out, "singular-values {}", sv.join(" "))?;
        }
        Command::Trace { input } => {
            let t = trace(&read_tensor(&input)?)?;
            writeln!(out, "{} {}", t.re, t.im)?;
        }
        Command::Solve {
            a,
            b,
            out: path,
            rank_tol,
        } => {
            let p = policy(NumericPolicy::default().eq_tol, rank_tol);
            let a = read_tensor(&a)?;
            let b = read_tensor(&b)?;
            let x = min_norm_solve(&a, &b, &p)?;
            write_tensor(&path, &x)?;
            // A* (A X - B) vanishes at a least-squares solution.
            let normal = a.conj_transpose().mul(&a.mul(&x)?.sub(&b)?)?;
            writeln!(out, "shape {}", x.shape())?;
            writeln!(
                out,
                "normal-equation-residual {:e}",
                normal.frobenius_norm()
            )?;
        }
        Command::Rol { a, b, tol, report } => {
            let p = tol.policy();
            let r = rol_report(&read_tensor(&a)?, &read_tensor(&b)?, &p)?;
            let rows = [
                ("direct", r.direct),
                ("absorb_left", r.absorb_left),
                ("absorb_right", r.absorb_right),
                ("herm1", r.herm1),
                ("herm2", r.herm2),
                ("gram_product", r.gram_product),
                ("proj_left", r.proj_left),
                ("proj_right", r.proj_right),
                ("commute", r.commute),
            ];
            for (name, c) in rows {
                writeln!(out, "{name:<14} {:>10.3e} {}", c.residual, c.holds)?;
            }
            if let Some(group) = r.first_disagreement() {
                writeln!(
                    out,
                    "warning: {group} disagrees with direct at tol {:e}",
                    p.eq_tol
                )?;
            }
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&r).expect("report serializes");
                fs::write(&path, text + "\n")?;
            }
            writeln!(out, "rol {}", if r.holds() { "holds" } else { "fails" })?;
            return Ok(if r.holds() {
                EXIT_OK
            } else {
                EXIT_FAILED_CHECK
            });
        }
        Command::Fuzz {
            shape,
            trials,
            seed,
            tol,
            rank_tol,
            report,
        } => {
            let s = fuzz_search(&shape, trials, seed, &policy(tol, rank_tol))?;
            writeln!(out, "shape {shape} trials {} seed {seed}", s.trials)?;
            writeln!(out, "direct-true {}", s.direct_true)?;
            writeln!(out, "direct-false {}", s.direct_false)?;
            writeln!(out, "commute-without-rol {}", s.converse_failures)?;
            for (family, c) in &s.per_family {
                writeln!(
                    out,
                    "  {family:<15} trials {:>5} direct-true {:>5} direct-false {:>5} commute-without-rol {:>5}",
                    c.trials, c.direct_true, c.direct_false, c.converse_failures
                )?;
            }
            writeln!(out, "violations {}", s.violations)?;
            if let Some(v) = &s.first_violation {
                writeln!(
                    out,
                    "first violation: trial {} family {} kind {}",
                    v.trial, v.family, v.kind
                )?;
                writeln!(out, "  A = {}", entries_line(&v.a))?;
                writeln!(out, "  B = {}", entries_line(&v.b))?;
            }
            if let Some(path) = report {
                let per_family: serde_json::Map<String, serde_json::Value> = s
                    .per_family
                    .iter()
                    .map(|(f, c)| {
                        (
                            f.name().to_string(),
                            serde_json::to_value(c).expect("counts"),
                        )
                    })
                    .collect();
                let doc = json!({
                    "shape": shape,
                    "trials": s.trials,
                    "seed": seed,
                    "direct_true": s.direct_true,
                    "direct_false": s.direct_false,
                    "commute_without_rol": s.converse_failures,
                    "violations": s.violations,
                    "per_family": per_family,
                    "first_violation": s.first_violation.as_ref().map(|v| json!({
                        "trial": v.trial,
                        "family": v.family,
                        "kind": v.kind,
                        "report": v.report,
                    })),
                });
                fs::write(
                    &path,
                    serde_json::to_string_pretty(&doc).expect("summary") + "\n",
                )?;
            }
            return Ok(if s.violations == 0 {
                EXIT_OK
            } else {
                EXIT_FAILED_CHECK
            });
        }
        Command::Identities { input, tol } => {
            let p = tol.policy();
            let r = identity_suite(&read_tensor(&input)?, &p)?;
            for (name, v) in &r.residuals {
                writeln!(out, "{name} {v:e}")?;
            }
            writeln!(out, "normal {} ({:e})", r.normal, r.normal_residual)?;
            writeln!(out, "ep {} ({:e})", r.ep, r.ep_residual)?;
            writeln!(out, "max {:e}", r.max_residual())?;
        }
    }
    Ok(EXIT_OK)
}

fn entries_line(t: &DenseTensor) -> String {
    let parts: Vec<String> = t
        .entries()
        .iter()
        .map(|z| format!("({:.6e},{:.6e})", z.re, z.im))
        .collect();
    format!("{} [{}]", t.shape(), parts.join(" "))
}

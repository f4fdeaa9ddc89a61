//! Command-line front end: equality checks, radius solvers, flow
//! trajectories, randomized audits, and the exact certificates, all with
//! deterministic machine-readable output (JSON or CSV, floats printed in
//! shortest round-trip form). Exit codes: 0 success, 1 check/certification
//! failure, 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use contact_delta::audit::{radius_sweep, random_gap_audit, DEFAULT_SEED};
use contact_delta::models::{ideal_radii, ModelKind, ModelSpec, Space};
use contact_delta::nonhopf_flow::{integrate_flow, FlowState};
use contact_delta::symbolic::certificates_by_name;

#[derive(Parser)]
#[command(
    name = "contact-delta",
    version,
    about = "Contact invariant checks for real hypersurfaces in complex space forms"
)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report tau, inf K, delta, the bound and the gap for a catalog model.
    IdealCheck {
        #[arg(long)]
        space: String,
        /// Model family (CH: A0, A1-0|geodesic-sphere, A1-1, A2, B;
        /// CP: geodesic-sphere, B-tube).
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        radius: Option<f64>,
        /// Core dimension for A2 tubes.
        #[arg(long)]
        k: Option<usize>,
        /// Absolute gap tolerance for the equality verdict.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Solve the equality-radius equations for a model family.
    SolveRadius {
        #[arg(long)]
        space: String,
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Integrate the structure-equation flow; CSV columns s,alpha,beta,gamma,mu.
    Flow {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha0: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma0: f64,
        #[arg(long, default_value_t = 1.0)]
        s_max: f64,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
    /// Run exact certificates: f-identity, f2-derive, resultant-202500,
    /// eq4, case12, or all.
    VerifySymbolic {
        #[arg(long)]
        check: String,
    },
    /// CSV gap curve r,gap over a radius grid.
    Sweep {
        #[arg(long)]
        space: String,
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Randomized audit of the pointwise bound over seeded shape operators.
    RandomAudit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Restrict to one curvature sign; both when omitted.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
    },
}

/// A user-input problem; reported on stderr with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn parse_space(s: &str) -> Result<Space, UsageError> {
    match s.to_ascii_uppercase().as_str() {
        "CP" => Ok(Space::Cp),
        "CH" => Ok(Space::Ch),
        other => Err(UsageError(format!("unknown space '{other}' (expected CP or CH)"))),
    }
}

fn parse_model(space: Space, name: &str, k: Option<usize>) -> Result<ModelKind, UsageError> {
    let lower = name.to_ascii_lowercase();
    let kind = match (space, lower.as_str()) {
        (Space::Ch, "a0") | (Space::Ch, "horosphere") => ModelKind::A0,
        (Space::Ch, "a1-0") | (Space::Ch, "geodesic-sphere") => ModelKind::A1Sphere,
        (Space::Ch, "a1-1") => ModelKind::A1Tube,
        (Space::Ch, "a2") => {
            let k = k.ok_or_else(|| UsageError("A2 requires --k".into()))?;
            ModelKind::A2 { k }
        }
        (Space::Ch, "b") => ModelKind::B,
        (Space::Cp, "geodesic-sphere") => ModelKind::CpGeodesicSphere,
        (Space::Cp, "b-tube") => ModelKind::CpTypeBTube,
        _ => {
            return Err(UsageError(format!("unknown model '{name}' for {space:?}")));
        }
    };
    Ok(kind)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), UsageError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(UsageError::from),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(UsageError::from)
        }
    }
}

fn run(cli: Cli) -> Result<u8, UsageError> {
    match cli.command {
        Command::IdealCheck { space, model, n, radius, k, tol } => {
            let space = parse_space(&space)?;
            let kind = parse_model(space, &model, k)?;
            let spec = ModelSpec::new(space, kind, n, radius)?;
            let report = spec.classify_ideal(tol);
            let json = serde_json::to_string(&report).expect("report serializes");
            emit(&cli.output, &format!("{json}\n"))?;
            Ok(0)
        }
        Command::SolveRadius { space, model, n, k } => {
            let space = parse_space(&space)?;
            let kind = parse_model(space, &model, k)?;
            let roots = ideal_radii(space, kind, n)?;
            let json = serde_json::to_string(&roots).expect("roots serialize");
            emit(&cli.output, &format!("{json}\n"))?;
            Ok(0)
        }
        Command::Flow { c, alpha0, beta0, gamma0, s_max, h } => {
            if beta0 == 0.0 {
                return Err(UsageError("beta0 must be nonzero".into()));
            }
            let traj = integrate_flow(&FlowState::new(0.0, alpha0, beta0, gamma0), c, s_max, h)?;
            let mut csv = String::from("s,alpha,beta,gamma,mu\n");
            for st in &traj.states {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    st.s,
                    st.alpha,
                    st.beta,
                    st.gamma,
                    st.mu()
                ));
            }
            if let Some(reason) = traj.halt.reason() {
                csv.push_str(&format!("# halt: {reason}\n"));
            }
            emit(&cli.output, &csv)?;
            Ok(0)
        }
        Command::VerifySymbolic { check } => {
            let certs = certificates_by_name(&check)
                .ok_or_else(|| UsageError(format!("unknown check '{check}'")))?;
            let json = serde_json::to_string(&certs).expect("certificates serialize");
            emit(&cli.output, &format!("{json}\n"))?;
            Ok(if certs.iter().all(|c| c.passed()) { 0 } else { 1 })
        }
        Command::Sweep { space, model, n, k, r_min, r_max, steps } => {
            let space = parse_space(&space)?;
            let kind = parse_model(space, &model, k)?;
            let rows = radius_sweep(space, kind, n, r_min, r_max, steps)?;
            let mut csv = String::from("r,gap\n");
            for (r, gap) in rows {
                csv.push_str(&format!("{r},{gap}\n"));
            }
            emit(&cli.output, &csv)?;
            Ok(0)
        }
        Command::RandomAudit { n, samples, seed, c } => {
            if samples < 1 {
                return Err(UsageError("samples must be at least 1".into()));
            }
            if !(2..=32).contains(&n) {
                return Err(UsageError("n must lie in 2..=32".into()));
            }
            let cs: Vec<f64> = match c {
                Some(v) if v == 1.0 || v == -1.0 => vec![v],
                Some(v) => return Err(UsageError(format!("c must be -1 or 1, got {v}"))),
                None => vec![-1.0, 1.0],
            };
            let audits: Vec<_> =
                cs.iter().map(|&c| random_gap_audit(n, c, samples, seed)).collect();
            let violations: usize = audits.iter().map(|a| a.violations).sum();
            #[derive(serde::Serialize)]
            struct AuditEnvelope<'a> {
                n: usize,
                samples: usize,
                seed: u64,
                audits: &'a [contact_delta::audit::AuditSummary],
                violations: usize,
            }
            let envelope = AuditEnvelope { n, samples, seed, audits: &audits, violations };
            let json = serde_json::to_string(&envelope).expect("audit serializes");
            emit(&cli.output, &format!("{json}\n"))?;
            Ok(if violations == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end for `georefine`: refinement runs, symbol analysis,
//! Ω boundary data and bundled datasets.

pub mod demo;
pub mod format;
pub mod io;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use georefine::{
    global_refine_step, omega_boundary, upsilon, Mask, RefinementPlan, SymbolFactorization,
};
use serde_json::json;

use crate::format::{fmt_g17, to_json};

/// Exit status for rejected input.
pub const EXIT_INVALID: i32 = 2;
/// Exit status for failures while computing.
pub const EXIT_NUMERIC: i32 = 3;
/// Exit status for I/O failures on outputs.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn context(self, prefix: &str) -> Self {
        Self {
            code: self.code,
            message: format!("{prefix}: {}", self.message),
        }
    }
}

impl From<georefine::Error> for CliError {
    fn from(e: georefine::Error) -> Self {
        Self {
            code: if e.is_numeric() {
                EXIT_NUMERIC
            } else {
                EXIT_INVALID
            },
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "georefine",
    version,
    about = "Geodesic-average subdivision on manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Refine a polyline `k` times.
    Refine(RefineArgs),
    /// Factorize a symbol and report its convergence analysis.
    Analyze(AnalyzeArgs),
    /// Sample the boundary of the complex-root region Ω.
    Omega(OmegaArgs),
    /// Write a bundled dataset.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
#[group(id = "symbol", required = true, multiple = false)]
pub struct SymbolArgs {
    /// Mask coefficients and the index of the first one, e.g. "1/4,3/4,3/4,1/4@0".
    #[arg(long, allow_hyphen_values = true)]
    pub mask: Option<String>,
    /// Named scheme: bspline:m or chaikin.
    #[arg(long)]
    pub preset: Option<String>,
    /// Factorization JSON, inline or a file path:
    /// {"shift": s, "real_alphas": [...], "quadratic_alphas": [{"re": .., "im": ..}]}.
    #[arg(long)]
    pub factorization: Option<String>,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// euclidean:d, sphere:d, so3 or spd:n; must agree with the input if both are given.
    #[arg(long)]
    pub manifold: Option<String>,
    #[command(flatten)]
    pub symbol: SymbolArgs,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    /// Overrides the input topology.
    #[arg(long, value_parser = ["periodic", "open"])]
    pub boundary: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub symbol: SymbolArgs,
    #[arg(long)]
    pub report_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OmegaArgs {
    /// Contraction factor of the leading round, in [1/2, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub mu1: f64,
    #[arg(long, default_value_t = 181)]
    pub samples: usize,
    /// CSV destination; printed after υ when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// sphere-circle, so3-path, spd-path or euclidean-square.
    pub name: String,
    /// Destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Refine(a) => cmd_refine(a, stdout),
        Command::Analyze(a) => cmd_analyze(a, stdout),
        Command::Omega(a) => cmd_omega(a, stdout),
        Command::Demo(a) => cmd_demo(a, stdout),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    stdout.write_all(text.as_bytes()).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("cannot write to stdout: {e}"),
    })
}

/// The factorization named by the symbol flags, with the mask it came from
/// (or its reconstruction).
fn resolve_symbol(s: &SymbolArgs) -> Result<(SymbolFactorization, Mask), CliError> {
    if let Some(m) = &s.mask {
        let mask = io::parse_mask(m)?;
        let f = mask.factorize()?;
        return Ok((f, mask));
    }
    let f = if let Some(p) = &s.preset {
        io::parse_preset(p)?
    } else if let Some(text) = &s.factorization {
        if text.trim_start().starts_with('{') {
            io::parse_factorization(text)?
        } else {
            io::parse_factorization(&read(Path::new(text))?)?
        }
    } else {
        return Err(CliError::invalid(
            "one of --mask, --preset, --factorization is required",
        ));
    };
    let mask = f.reconstruct();
    Ok((f, mask))
}

fn cmd_refine(a: RefineArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let manifold = a.manifold.as_deref().map(io::parse_manifold).transpose()?;
    let topology = a.boundary.as_deref().map(io::parse_topology).transpose()?;
    let (f, _) = resolve_symbol(&a.symbol)?;
    let plan = RefinementPlan::new(&f)?;
    let mut current = io::parse_polyline(&read(&a.input)?, manifold, topology)?;

    let mut table = String::from("step\tpoints\tdelta\tratio\n");
    let mut delta = current.mesh_size()?;
    table.push_str(&format!("0\t{}\t{}\t-\n", current.len(), fmt_g17(delta)));
    let mut traces = Vec::with_capacity(a.steps);
    for step in 1..=a.steps {
        let (next, trace) = global_refine_step(&current, &plan)
            .map_err(|e| CliError::from(e).context(&format!("step {step}")))?;
        let next_delta = next.mesh_size()?;
        let ratio = if delta > 0.0 {
            fmt_g17(next_delta / delta)
        } else {
            "-".into()
        };
        table.push_str(&format!(
            "{step}\t{}\t{}\t{ratio}\n",
            next.len(),
            fmt_g17(next_delta)
        ));
        traces.push(io::trace_json(&trace));
        current = next;
        delta = next_delta;
    }
    write_file(&a.out, &to_json(&io::polyline_json(&current, Some(delta))))?;
    if let Some(path) = &a.trace_out {
        write_file(path, &to_json(&json!({ "steps": traces })))?;
    }
    emit(stdout, &table)
}

fn cmd_analyze(a: AnalyzeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (f, mask) = resolve_symbol(&a.symbol)?;
    let (json, report) = io::report_json(&f, &mask)?;
    let g = fmt_g17;
    let opt = |x: Option<f64>| x.map_or("-".to_string(), fmt_g17);
    let ordered = &report.factorization;

    let mut out = String::new();
    out.push_str(&format!("shift s = {}\n", ordered.shift()));
    let reals: Vec<String> = ordered.real_alphas().iter().map(|&x| g(x)).collect();
    out.push_str(&format!("real alphas: [{}]\n", reals.join(", ")));
    let quads: Vec<String> = ordered
        .quadratic_alphas()
        .iter()
        .map(|z| {
            format!(
                "{}{}{}i",
                g(z.re),
                if z.im < 0.0 { "" } else { "+" },
                g(z.im)
            )
        })
        .collect();
    out.push_str(&format!("quadratic alphas: [{}]\n", quads.join(", ")));
    out.push_str(&format!("mu1 = {}\n", opt(report.mu1)));
    out.push_str("xi:\n");
    for (factor, x) in &report.xi_factors {
        out.push_str(&format!("  {factor}\t{}\n", g(*x)));
    }
    out.push_str(&format!("mu = {}\n", opt(report.mu)));
    out.push_str(&format!("K = {}\n", opt(report.displacement_k)));
    if !report.omega_verdicts.is_empty() {
        out.push_str("omega:\n");
        for (alpha, m) in &report.omega_verdicts {
            out.push_str(&format!("  {}{:+}i\t{m}\n", alpha.re, alpha.im));
        }
    }
    out.push_str(&format!("verdict: {}\n", report.verdict));
    if let Some(path) = &a.report_out {
        write_file(path, &to_json(&json))?;
    }
    emit(stdout, &out)
}

fn cmd_omega(a: OmegaArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let ups = upsilon(a.mu1)?;
    if a.samples == 0 {
        return Err(CliError::invalid("--samples must be positive"));
    }
    let mut csv = String::from("phi,rho1,rho2\n");
    for s in omega_boundary(a.mu1, a.samples)? {
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_g17(s.phi),
            fmt_g17(s.rho1),
            fmt_g17(s.rho2)
        ));
    }
    let mut out = format!("upsilon = {}\n", fmt_g17(ups));
    match &a.out {
        Some(path) => write_file(path, &csv)?,
        None => out.push_str(&csv),
    }
    emit(stdout, &out)
}

fn cmd_demo(a: DemoArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let p = demo::dataset(&a.name)?;
    let text = to_json(&io::polyline_json(&p, None));
    match &a.out {
        Some(path) => write_file(path, &text),
        None => emit(stdout, &text),
    }
}

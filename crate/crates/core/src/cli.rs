//! The `fjt` command-line interface.
//!
//! Settings come from three layers: built-in defaults, an optional flat
//! `key = value` config file (`--config`), and command-line flags, with flags
//! taking precedence. Output is CSV (default) or JSON with the top-level keys
//! `config`, `rows` and `summary`. Floating-point numbers are written in
//! their shortest round-trip form, so CSV and JSON carry identical values.
//!
//! Exit codes: 0 success, 2 invalid parameters or configuration, 3 a
//! tolerance breach, 4 numerical non-convergence.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::kernels::{forward_kernel, measure_decay, phi_kernel, PhiKernelRequest};
use crate::quad::QuadratureSpec;
use crate::specfun::{JacobiParams, Regime};
use crate::transforms::{
    analyze, build_profile_function, closed_form_coefficients, invert_coefficients, reconstruct,
    synthesize, synthesized_function, CoefficientSequence, ProfileFunction,
};
use crate::verify::{run_suite, IdentityId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "fjt",
    version,
    about = "Discrete Fourier-Jacobi transforms, inversions and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// F_n(x) and Phi_n(x) on the grid.
    Kernel,
    /// Phi_n(x) on the grid.
    Phi,
    /// The series sum of the built-in sequence on the grid.
    Synth,
    /// Analysis coefficients of the profile function for n = 1..N.
    Analyze,
    /// Inverted coefficients of the synthesized built-in sequence for n = 1..N.
    Invert,
    /// Synthesize the built-in sequence, invert it, compare.
    RoundtripSeq,
    /// Profile function -> coefficients (two ways) -> reconstruction on the grid.
    RoundtripFunc,
    /// Run identity checks over their default grids.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    /// a_n = e^(-2n) |Gamma(a + in/2)|^2.
    Default,
    Zero,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Flat key = value settings file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Kernel index n.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Number of terms or coefficients.
    #[arg(long = "N", global = true)]
    pub terms: Option<usize>,
    /// Abscissae as lo:hi:step or a comma-separated list.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_subdivisions: Option<usize>,
    /// Decay budget delta of the coefficient condition.
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Built-in profile: sin, sin+0.3sin3, ramp.
    #[arg(long, global = true)]
    pub profile: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub sequence: Option<SequenceKind>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Append measured decay exponents (kernel command).
    #[arg(long, global = true)]
    pub check_decay: bool,
    /// Identity filter for verify; repeat or separate with commas.
    #[arg(long = "identity", global = true, value_delimiter = ',')]
    pub identities: Vec<String>,
    /// Largest admissible error in round trips.
    #[arg(long, global = true)]
    pub max_error: Option<f64>,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub params: JacobiParams,
    pub tolerances: QuadratureSpec,
    pub grid: Vec<f64>,
    pub n: u32,
    pub terms: usize,
    pub delta: f64,
    pub seed_profile: String,
    pub sequence: SequenceKind,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub check_decay: bool,
    pub identities: Vec<IdentityId>,
    pub max_error: f64,
}

/// A failed run: message and exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. }
            | Error::Regime { .. }
            | Error::DecayCondition { .. }
            | Error::Lipschitz { .. }
            | Error::Config(_) => EXIT_INVALID,
            Error::NonConvergence { .. }
            | Error::Evaluation { .. }
            | Error::Divergence { .. }
            | Error::AccelerationFailure { .. }
            | Error::Overflow { .. } => EXIT_NUMERICAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

/// Parses `lo:hi:step` (inclusive, positive step) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| invalid(format!("bad number '{t}' in grid '{s}'")))
    };
    let grid = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(invalid(format!("grid range '{s}' must be lo:hi:step")));
        };
        let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
        if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(invalid(format!(
                "grid range '{s}' needs lo <= hi and a positive step"
            )));
        }
        let count = ((hi - lo) / step * (1.0 + 1e-12)).floor() as usize + 1;
        if count > 1_000_000 {
            return Err(invalid(format!("grid range '{s}' has too many points")));
        }
        (0..count).map(|i| lo + i as f64 * step).collect()
    } else {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(num)
            .collect::<Result<Vec<_>, _>>()?
    };
    if grid.is_empty() {
        return Err(invalid("grid is empty"));
    }
    if let Some(x) = grid.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
        return Err(invalid(format!(
            "grid abscissa {x} must be finite and nonnegative"
        )));
    }
    Ok(grid)
}

/// Reads a flat `key = value` file; `#` starts a comment. Keys use the flag
/// names with `-` or `_`.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| invalid(format!("config line {}: expected key = value", i + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

const CONFIG_KEYS: [&str; 16] = [
    "a",
    "c",
    "n",
    "N",
    "grid",
    "rel_tol",
    "abs_tol",
    "max_subdivisions",
    "delta",
    "profile",
    "sequence",
    "format",
    "out",
    "check_decay",
    "identity",
    "max_error",
];

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Kernel => "kernel",
        Command::Phi => "phi",
        Command::Synth => "synth",
        Command::Analyze => "analyze",
        Command::Invert => "invert",
        Command::RoundtripSeq => "roundtrip-seq",
        Command::RoundtripFunc => "roundtrip-func",
        Command::Verify => "verify",
    }
}

fn default_grid(command: &Command) -> &'static str {
    match command {
        Command::Synth => "0.5,1,2,5",
        _ => "0.5,1,2",
    }
}

impl RunConfig {
    /// Merges defaults, the config file (if any) and flags.
    pub fn resolve(command: &Command, args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        if let Some(k) = file.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
            return Err(invalid(format!("unknown config key '{k}'")));
        }
        fn from_file<T: std::str::FromStr>(
            file: &BTreeMap<String, String>,
            key: &str,
        ) -> Result<Option<T>, CliError> {
            file.get(key)
                .map(|v| {
                    v.parse::<T>()
                        .map_err(|_| invalid(format!("config key '{key}': cannot parse '{v}'")))
                })
                .transpose()
        }
        let a = args.a.or(from_file(&file, "a")?).unwrap_or(0.75);
        let c = args.c.or(from_file(&file, "c")?).unwrap_or(1.2);
        let params = JacobiParams::new(a, c)?;
        let rel_tol = args
            .rel_tol
            .or(from_file(&file, "rel_tol")?)
            .unwrap_or(1e-10);
        let abs_tol = args
            .abs_tol
            .or(from_file(&file, "abs_tol")?)
            .unwrap_or(1e-12);
        let max_sub = args
            .max_subdivisions
            .or(from_file(&file, "max_subdivisions")?)
            .unwrap_or(200);
        let tolerances = QuadratureSpec::default()
            .with_rel_tol(rel_tol)
            .with_abs_tol(abs_tol)
            .with_max_subdivisions(max_sub);
        tolerances.validate()?;
        let grid_text = args
            .grid
            .clone()
            .or_else(|| file.get("grid").cloned())
            .unwrap_or(default_grid(command).into());
        let grid = parse_grid(&grid_text)?;
        let n = args.n.or(from_file(&file, "n")?).unwrap_or(1);
        if n == 0 {
            return Err(invalid("n must be a positive integer"));
        }
        let terms = args.terms.or(from_file(&file, "N")?).unwrap_or(8);
        if terms == 0 {
            return Err(invalid("N must be a positive integer"));
        }
        let delta = args.delta.or(from_file(&file, "delta")?).unwrap_or(0.0);
        let seed_profile = args
            .profile
            .clone()
            .or_else(|| file.get("profile").cloned())
            .unwrap_or("sin".into());
        let sequence = match (args.sequence, file.get("sequence")) {
            (Some(s), _) => s,
            (None, Some(v)) => SequenceKind::from_str(v, true)
                .map_err(|_| invalid(format!("unknown sequence '{v}'")))?,
            (None, None) => SequenceKind::Default,
        };
        let output_format = match (args.format, file.get("format")) {
            (Some(f), _) => f,
            (None, Some(v)) => OutputFormat::from_str(v, true)
                .map_err(|_| invalid(format!("unknown format '{v}'")))?,
            (None, None) => OutputFormat::Csv,
        };
        let output_path = args
            .out
            .clone()
            .or_else(|| file.get("out").map(PathBuf::from));
        let check_decay =
            args.check_decay || from_file::<bool>(&file, "check_decay")?.unwrap_or(false);
        let identity_names: Vec<String> = if args.identities.is_empty() {
            file.get("identity")
                .map(|v| v.split(',').map(|s| s.trim().to_string()).collect())
                .unwrap_or_default()
        } else {
            args.identities.clone()
        };
        let identities = identity_names
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<IdentityId>())
            .collect::<Result<Vec<_>, _>>()?;
        let max_error = args
            .max_error
            .or(from_file(&file, "max_error")?)
            .unwrap_or(1e-4);
        if !(max_error > 0.0) {
            return Err(invalid("max_error must be positive"));
        }
        Ok(RunConfig {
            command: command_name(command).into(),
            params,
            tolerances,
            grid,
            n,
            terms,
            delta,
            seed_profile,
            sequence,
            output_format,
            output_path,
            check_decay,
            identities,
            max_error,
        })
    }

    fn sequence(&self) -> Result<CoefficientSequence, CliError> {
        Ok(match self.sequence {
            SequenceKind::Default => {
                let s = CoefficientSequence::exponential_default(self.params, self.terms)?;
                CoefficientSequence::new(s.values().to_vec(), self.params, self.delta)?
            }
            SequenceKind::Zero => {
                CoefficientSequence::new(vec![0.0; self.terms], self.params, self.delta)?
            }
        })
    }
}

/// An ordered record; CSV columns follow first appearance across rows.
pub type Row = Vec<(&'static str, Value)>;

/// Result of one command before encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub rows: Vec<Row>,
    pub summary: Map<String, Value>,
    /// Exit code implied by the results (0 or 3).
    pub code: i32,
    /// Lines for standard error.
    pub messages: Vec<String>,
}

fn num(x: f64) -> Value {
    json!(x)
}

fn par_rows<T, F>(items: &[T], f: F) -> Result<Vec<Row>, CliError>
where
    T: Sync,
    F: Fn(&T) -> Result<Row, Error> + Sync + Send,
{
    items
        .par_iter()
        .map(|t| f(t).map_err(CliError::from))
        .collect()
}

fn cmd_kernel(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params;
    p.require(Regime::InversionWithBoundary)?;
    let rows = par_rows(&cfg.grid, |&x| {
        let f = forward_kernel(&p, cfg.n, x)?;
        let phi = phi_kernel(&PhiKernelRequest::new(p, cfg.n, x, cfg.tolerances.clone()))?;
        Ok(vec![
            ("x", num(x)),
            ("forward_kernel", num(f)),
            ("phi", num(phi)),
        ])
    })?;
    let mut summary = Map::new();
    if cfg.check_decay {
        let d = measure_decay(&p, cfg.n, &cfg.tolerances)?;
        summary.insert("forward_decay_expected".into(), num(d.forward_expected));
        summary.insert("forward_decay_measured".into(), json!(d.forward_measured));
        summary.insert("inverse_decay_expected".into(), num(d.inverse_expected));
        summary.insert("inverse_decay_measured".into(), json!(d.inverse_measured));
        summary.insert("phi_decay_measured".into(), num(d.phi_measured));
        summary.insert("decay_within_30_percent".into(), json!(d.within(0.3)));
    }
    Ok(Report {
        rows,
        summary,
        code: EXIT_OK,
        messages: vec![],
    })
}

fn cmd_phi(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params;
    p.require(Regime::InversionWithBoundary)?;
    let rows = par_rows(&cfg.grid, |&x| {
        let phi = phi_kernel(&PhiKernelRequest::new(p, cfg.n, x, cfg.tolerances.clone()))?;
        Ok(vec![("x", num(x)), ("phi", num(phi))])
    })?;
    Ok(Report {
        rows,
        summary: Map::new(),
        code: EXIT_OK,
        messages: vec![],
    })
}

fn cmd_synth(cfg: &RunConfig) -> Result<Report, CliError> {
    let seq = cfg.sequence()?;
    if let Some(x) = cfg.grid.iter().find(|x| **x == 0.0) {
        return Err(invalid(format!("synthesis needs x > 0 (got {x})")));
    }
    let rows = par_rows(&cfg.grid, |&x| {
        let s = synthesize(&seq, x)?;
        Ok(vec![
            ("x", num(x)),
            ("value", num(s.value)),
            ("tail_bound", num(s.tail_bound)),
        ])
    })?;
    let mut summary = Map::new();
    summary.insert("coefficients".into(), json!(seq.values()));
    Ok(Report {
        rows,
        summary,
        code: EXIT_OK,
        messages: vec![],
    })
}

fn profile(cfg: &RunConfig) -> Result<ProfileFunction, CliError> {
    Ok(ProfileFunction::builtin(&cfg.seed_profile)?)
}

fn cmd_analyze(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params;
    let psi = profile(cfg)?;
    let f = build_profile_function(&psi, &p, &cfg.tolerances)?;
    let ns: Vec<u32> = (1..=cfg.terms as u32).collect();
    let rows = par_rows(&ns, |&n| {
        let a = analyze(&f, &p, n, &cfg.tolerances)?;
        let c = closed_form_coefficients(&psi, &p, n, &cfg.tolerances)?;
        Ok(vec![
            ("n", json!(n)),
            ("analyze", num(a)),
            ("closed_form", num(c)),
            ("abs_diff", num((a - c).abs())),
        ])
    })?;
    Ok(Report {
        rows,
        summary: Map::new(),
        code: EXIT_OK,
        messages: vec![],
    })
}

fn inversion_rows(cfg: &RunConfig) -> Result<Vec<Row>, CliError> {
    let p = cfg.params;
    let seq = cfg.sequence()?;
    let f = synthesized_function(&seq);
    let ns: Vec<u32> = (1..=cfg.terms as u32).collect();
    par_rows(&ns, |&n| {
        let want = seq.values()[n as usize - 1];
        let got = invert_coefficients(&f, &p, n, &cfg.tolerances)?;
        Ok(vec![
            ("n", json!(n)),
            ("input", num(want)),
            ("recovered", num(got)),
            ("abs_error", num((got - want).abs())),
        ])
    })
}

fn cmd_invert(cfg: &RunConfig) -> Result<Report, CliError> {
    Ok(Report {
        rows: inversion_rows(cfg)?,
        summary: Map::new(),
        code: EXIT_OK,
        messages: vec![],
    })
}

fn max_field(rows: &[Row], key: &str) -> f64 {
    rows.iter()
        .flat_map(|r| {
            r.iter()
                .filter(|(k, _)| *k == key)
                .filter_map(|(_, v)| v.as_f64())
        })
        .fold(0.0, f64::max)
}

fn cmd_roundtrip_seq(cfg: &RunConfig) -> Result<Report, CliError> {
    let rows = inversion_rows(cfg)?;
    let worst = max_field(&rows, "abs_error");
    let passed = worst <= cfg.max_error;
    let mut summary = Map::new();
    summary.insert("max_abs_error".into(), num(worst));
    summary.insert("bound".into(), num(cfg.max_error));
    summary.insert("passed".into(), json!(passed));
    let messages = if passed {
        vec![]
    } else {
        vec![format!(
            "max abs error {worst:e} exceeds {:e}",
            cfg.max_error
        )]
    };
    Ok(Report {
        rows,
        summary,
        code: if passed { EXIT_OK } else { EXIT_TOLERANCE },
        messages,
    })
}

/// Relative agreement of the two coefficient paths, or absolute near zero.
const COEFF_REL_TOL: f64 = 1e-6;
const COEFF_ABS_TOL: f64 = 1e-9;

fn cmd_roundtrip_func(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = cfg.params;
    let psi = profile(cfg)?;
    let f = build_profile_function(&psi, &p, &cfg.tolerances)?;
    let ns: Vec<u32> = (1..=cfg.terms as u32).collect();
    let coeffs: Vec<(f64, f64)> = ns
        .par_iter()
        .map(|&n| {
            Ok((
                analyze(&f, &p, n, &cfg.tolerances)?,
                closed_form_coefficients(&psi, &p, n, &cfg.tolerances)?,
            ))
        })
        .collect::<Result<_, Error>>()?;
    let mut rows = Vec::new();
    let mut messages = Vec::new();
    let mut coeff_ok = true;
    for (&n, &(a, c)) in ns.iter().zip(&coeffs) {
        let diff = (a - c).abs();
        let ok = diff <= COEFF_ABS_TOL.max(COEFF_REL_TOL * c.abs());
        if !ok {
            coeff_ok = false;
            messages.push(format!(
                "coefficient paths disagree at n = {n}: {a:e} vs {c:e}"
            ));
        }
        rows.push(vec![
            ("kind", json!("coefficient")),
            ("n", json!(n)),
            ("analyze", num(a)),
            ("closed_form", num(c)),
            ("abs_error", num(diff)),
        ]);
    }
    let seq = CoefficientSequence::new(coeffs.iter().map(|c| c.0).collect(), p, cfg.delta)?;
    let recon: Vec<Row> = par_rows(&cfg.grid, |&x| {
        let want = f.evaluate(x)?;
        let r = reconstruct(&seq, &p, x, cfg.terms, &cfg.tolerances)?;
        Ok(vec![
            ("kind", json!("reconstruction")),
            ("x", num(x)),
            ("function", num(want)),
            ("reconstructed", num(r.value)),
            ("abs_error", num((r.value - want).abs())),
        ])
    })?;
    let worst = max_field(&recon, "abs_error");
    let recon_ok = worst <= cfg.max_error;
    if !recon_ok {
        messages.push(format!(
            "max reconstruction error {worst:e} exceeds {:e}",
            cfg.max_error
        ));
    }
    rows.extend(recon);
    let mut summary = Map::new();
    summary.insert("profile".into(), json!(psi.name()));
    summary.insert("coefficient_paths_agree".into(), json!(coeff_ok));
    summary.insert("max_reconstruction_error".into(), num(worst));
    summary.insert("bound".into(), num(cfg.max_error));
    let passed = coeff_ok && recon_ok;
    summary.insert("passed".into(), json!(passed));
    Ok(Report {
        rows,
        summary,
        code: if passed { EXIT_OK } else { EXIT_TOLERANCE },
        messages,
    })
}

fn opt(v: Option<f64>) -> Value {
    v.map(num).unwrap_or(Value::Null)
}

fn cmd_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    let reports = run_suite(&cfg.identities, &cfg.tolerances)?;
    let rows: Vec<Row> = reports
        .iter()
        .map(|r| {
            let g = r.grid_point;
            vec![
                ("identity", json!(r.identity_id.name())),
                ("a", opt(g.a)),
                ("c", opt(g.c)),
                ("n", opt(g.n)),
                ("u", opt(g.u)),
                ("x", opt(g.x)),
                ("delta", opt(g.delta)),
                ("lhs", num(r.lhs)),
                ("rhs", num(r.rhs)),
                ("residual", num(r.rel_residual)),
                (
                    "residual_kind",
                    serde_json::to_value(r.residual_kind).unwrap_or(Value::Null),
                ),
                ("tolerance", num(r.tolerance)),
                ("passed", json!(r.passed)),
            ]
        })
        .collect();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    let mut summary = Map::new();
    summary.insert("checks".into(), json!(reports.len()));
    summary.insert("failed".into(), json!(failed.len()));
    let mut per_id = Map::new();
    for id in IdentityId::ALL {
        let of: Vec<_> = reports.iter().filter(|r| r.identity_id == id).collect();
        if !of.is_empty() {
            per_id.insert(
                id.name().into(),
                json!({"checks": of.len(), "failed": of.iter().filter(|r| !r.passed).count()}),
            );
        }
    }
    summary.insert("identities".into(), Value::Object(per_id));
    let mut messages = Vec::new();
    if let Some(w) = failed
        .iter()
        .max_by(|x, y| (x.rel_residual / x.tolerance).total_cmp(&(y.rel_residual / y.tolerance)))
    {
        messages.push(format!(
            "{} of {} checks failed; worst: {} at {:?} with residual {:e} (tolerance {:e})",
            failed.len(),
            reports.len(),
            w.identity_id,
            w.grid_point,
            w.rel_residual,
            w.tolerance
        ));
    }
    let code = if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_TOLERANCE
    };
    Ok(Report {
        rows,
        summary,
        code,
        messages,
    })
}

pub fn run_command(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Kernel => cmd_kernel(cfg),
        Command::Phi => cmd_phi(cfg),
        Command::Synth => cmd_synth(cfg),
        Command::Analyze => cmd_analyze(cfg),
        Command::Invert => cmd_invert(cfg),
        Command::RoundtripSeq => cmd_roundtrip_seq(cfg),
        Command::RoundtripFunc => cmd_roundtrip_func(cfg),
        Command::Verify => cmd_verify(cfg),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:?}"),
            _ => n.to_string(),
        },
        Value::String(s) if s.contains([',', '"', '\n']) => {
            format!("\"{}\"", s.replace('"', "\"\""))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn encode_csv(rows: &[Row]) -> String {
    let mut columns: Vec<&'static str> = Vec::new();
    for row in rows {
        for (k, _) in row {
            if !columns.contains(k) {
                columns.push(k);
            }
        }
    }
    let mut out = columns.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = columns
            .iter()
            .map(|c| {
                row.iter()
                    .find(|(k, _)| k == c)
                    .map(|(_, v)| csv_cell(v))
                    .unwrap_or_default()
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn encode_json(cfg: &RunConfig, report: &Report) -> String {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| Value::Object(r.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()))
        .collect();
    let doc = json!({
        "config": cfg,
        "rows": rows,
        "summary": Value::Object(report.summary.clone()),
    });
    let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
    s.push('\n');
    s
}

/// Parses arguments, runs, writes output; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((body, report, path)) => {
            for m in &report.messages {
                eprintln!("fjt: {m}");
            }
            let written = match path {
                Some(p) => std::fs::write(&p, body)
                    .map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => report.code,
                Err(msg) => {
                    eprintln!("fjt: {msg}");
                    EXIT_INVALID
                }
            }
        }
        Err(e) => {
            eprintln!("fjt: {}", e.message);
            e.code
        }
    }
}

/// Runs a parsed command line and encodes the output.
pub fn execute(cli: &Cli) -> Result<(String, Report, Option<PathBuf>), CliError> {
    let cfg = RunConfig::resolve(&cli.command, &cli.common)?;
    let report = run_command(&cli.command, &cfg)?;
    let body = match cfg.output_format {
        OutputFormat::Csv => encode_csv(&report.rows),
        OutputFormat::Json => encode_json(&cfg, &report),
    };
    Ok((body, report, cfg.output_path.clone()))
}

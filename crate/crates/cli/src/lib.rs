//! Command-line surface over `umbrella_core`.
//!
//! Exit codes: 0 ok, 1 a verification check failed, 2 usage, 3 domain,
//! 4 I/O.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use umbrella_core::asymptotics::{
    compare, reports_to_csv, theta_grid, ClosedFormId, FormVariant, SweepConfig, DEFAULT_RADII,
};
use umbrella_core::circle::{FrameChoice, Umbrella, DEFAULT_THETA_GUARD};
use umbrella_core::mesh::{max_interior_curvature, mesh, pinch_report, MeshSpec, MeshSurface, PINCH_RADII};
use umbrella_core::normal_form::{dupin_classify, extended_normal, NormalFormCoeffs};
use umbrella_core::roots::{
    beta_zero_angles, fdelta_report, fk_roots, fk_roots_corrected, fkappa2_offaxis_count, flipped_counts,
    flipped_counts_rederived, gsol_report, kn_zero_angles, kn_zero_angles_rederived, RootReport,
};
use umbrella_core::ruled::NormalLineSurface;
use umbrella_core::ruled::NormalDevelopable;
use umbrella_core::sampling::{battery_sets, DEFAULT_SEED};
use umbrella_core::sweep::{first_terms_csv, flipped_counts_csv, flipped_recomputed_csv, roots_csv, Atlas, ParamGrid};
use umbrella_core::vec3::Vec3;
use umbrella_core::verify::{self, Suite, VerifyConfig};
use umbrella_core::Error;

/// Guard band used by grids when `--guard` is not given.
pub const GRID_GUARD: f64 = 0.05;
pub const DEFAULT_THETA_POINTS: usize = 720;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidCoeffs(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "umbrella", version, about = "Curves around a Whitney umbrella: invariants, first terms, root counts, meshes")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Shared configuration: coefficients, sweep layout, tolerances, output.
#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// Coefficients `a20,a11,a02`; entries may be integers, decimals or p/q.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "A20,A11,A02")]
    pub coeffs: Option<String>,
    /// JSON file with a20, a11, a02 and optional higher-order terms.
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "coeffs")]
    pub coeffs_file: Option<PathBuf>,
    /// Strictly decreasing radius ladder for first-term extraction.
    #[arg(long, global = true, value_delimiter = ',', value_name = "R1,R2,...")]
    pub radii: Option<Vec<f64>>,
    /// Number of θ-grid cells on (0, π).
    #[arg(long, global = true)]
    pub theta_points: Option<usize>,
    /// Drop angles with |sin θ| below this.
    #[arg(long, global = true)]
    pub guard: Option<f64>,
    /// Relative tolerance for closed-form comparisons.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for random coefficient sets.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one quantity at (r, θ).
    Eval(EvalArgs),
    /// Run a verification suite (or `all`).
    Verify(VerifyArgs),
    /// Export a surface as OBJ.
    Mesh(MeshArgs),
    /// Write a parameter sweep as CSV.
    Sweep(SweepArgs),
    /// Compare extracted first terms with the closed forms.
    FirstTerm(FirstTermArgs),
    /// Root counts and locations of the first-term polynomials.
    Roots,
    /// Conic type of the Dupin indicatrix.
    Dupin,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// kappa_g, kappa_n, kappa1, kappa2, kappa3, l, delta, k, beta, K, normal or frame.
    pub quantity: String,
    #[arg(long)]
    pub r: f64,
    /// Angle; accepts numbers and forms like pi/2 or 3pi/4.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
    #[arg(long, value_enum, default_value_t = FrameArg::Normal)]
    pub frame: FrameArg,
    /// Ruling parameter for `K` on the normal-line surface.
    #[arg(long, default_value_t = umbrella_core::asymptotics::closed_form::NORMAL_LINE_BETA, allow_hyphen_values = true)]
    pub beta: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    /// n = surface normal
    Normal,
    /// n = -e × surface normal
    Flipped,
}

impl From<FrameArg> for FrameChoice {
    fn from(f: FrameArg) -> Self {
        match f {
            FrameArg::Normal => FrameChoice::NormalTilde,
            FrameArg::Flipped => FrameChoice::FlippedBinormal,
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or `all`, or `list`.
    pub suite: String,
    /// Exact-arithmetic samples for the root-count suites.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Samples for the flipped-frame counts.
    #[arg(long)]
    pub heavy_samples: Option<usize>,
    /// Random sets added to the three named ones in the battery suites.
    #[arg(long)]
    pub random_sets: Option<usize>,
}

#[derive(Args, Debug)]
pub struct MeshArgs {
    /// f0, developable, developable-flipped or normal-lines.
    pub surface: String,
    /// First parameter range: u for f0, θ for ruled surfaces.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_name = "LO,HI")]
    pub s_range: Option<Vec<f64>>,
    /// Second parameter range: v for f0, β for ruled surfaces.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_name = "LO,HI")]
    pub t_range: Option<Vec<f64>>,
    /// Vertices per axis, `N` or `NxM`.
    #[arg(long)]
    pub resolution: Option<String>,
    /// Circle radius for the ruled surfaces.
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// roots, first-terms or flipped-counts.
    pub atlas: String,
    /// Grid points per axis for the roots atlas.
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    /// Random sets for the flipped-counts atlas.
    #[arg(long, default_value_t = 300)]
    pub samples: usize,
    /// Flipped-counts atlas from the recomputed first terms instead.
    #[arg(long)]
    pub recomputed: bool,
}

#[derive(Args, Debug)]
pub struct FirstTermArgs {
    /// Closed-form id (e.g. KappaG_g, F_k2hat) or `all`.
    #[arg(default_value = "all")]
    pub id: String,
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Stated,
    Rederived,
    Both,
}

/// Resolved configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub coeffs: Option<NormalFormCoeffs>,
    pub sweep: SweepConfig,
    pub theta_points: usize,
    pub guard: Option<f64>,
    pub tol: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> CliResult<Self> {
        let coeffs = match (&a.coeffs, &a.coeffs_file) {
            (Some(s), _) => Some(NormalFormCoeffs::parse_triple(s)?),
            (None, Some(p)) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                Some(NormalFormCoeffs::from_json_str(&text)?)
            }
            (None, None) => None,
        };
        let sweep = SweepConfig { radii: a.radii.clone().unwrap_or_else(|| DEFAULT_RADII.to_vec()), ..SweepConfig::default() };
        sweep.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        if let Some(g) = a.guard {
            if !(g > 0.0 && g < std::f64::consts::FRAC_PI_4) {
                return Err(CliError::Usage(format!("--guard must lie in (0, pi/4), got {g}")));
            }
        }
        let theta_points = a.theta_points.unwrap_or(DEFAULT_THETA_POINTS);
        if theta_points < 8 {
            return Err(CliError::Usage(format!("--theta-points must be at least 8, got {theta_points}")));
        }
        let tol = a.tol.unwrap_or(1e-3);
        if tol.is_nan() || tol <= 0.0 {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
        Ok(RunConfig {
            coeffs,
            sweep,
            theta_points,
            guard: a.guard,
            tol,
            seed: a.seed.unwrap_or(DEFAULT_SEED),
            out: a.out.clone(),
        })
    }

    fn coeffs_or(&self, a20: i64, a11: i64, a02: i64) -> CliResult<NormalFormCoeffs> {
        match &self.coeffs {
            Some(c) => Ok(c.clone()),
            None => Ok(NormalFormCoeffs::from_ints(a20, a11, a02)?),
        }
    }

    fn grid_guard(&self) -> f64 {
        self.guard.unwrap_or(GRID_GUARD)
    }
}

/// What a command produced: text for stdout or `--out`, diagnostics for
/// stderr, and the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs a parsed command. Output destined for `--out` is written there.
pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {}\n", e.message()), code: e.exit_code() },
    }
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let cfg = RunConfig::from_args(&cli.run)?;
    let (body, code, note) = match &cli.command {
        Command::Eval(a) => (cmd_eval(&cfg, a)?, 0, String::new()),
        Command::Verify(a) => cmd_verify(&cfg, a)?,
        Command::Mesh(a) => cmd_mesh(&cfg, a)?,
        Command::Sweep(a) => (cmd_sweep(&cfg, a)?, 0, String::new()),
        Command::FirstTerm(a) => (cmd_first_term(&cfg, a)?, 0, String::new()),
        Command::Roots => (cmd_roots(&cfg)?, 0, String::new()),
        Command::Dupin => {
            let c = cfg.coeffs_or(1, 0, 1)?;
            (format!("{}\n", dupin_classify(&c)), 0, String::new())
        }
    };
    match &cfg.out {
        Some(p) => {
            write_file(p, &body)?;
            Ok(Outcome { stdout: String::new(), stderr: note, code })
        }
        None => Ok(Outcome { stdout: body, stderr: note, code }),
    }
}

pub fn write_file(path: &Path, body: &str) -> CliResult<()> {
    std::fs::write(path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// formatting

/// `x` with `digits` significant digits, trailing zeros dropped; plain
/// notation for moderate exponents, scientific otherwise.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mant), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    let t = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { s };
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

/// Components at 12 significant digits relative to the vector's length, so
/// rounding noise in a zero component prints as 0.
pub fn fmt_vec(v: &Vec3) -> String {
    let n = v.norm();
    let snap = |x: f64| if x.abs() <= 1e-12 * n { 0.0 } else { x };
    format!("{} {} {}", fmt_sig(snap(v.x), 12), fmt_sig(snap(v.y), 12), fmt_sig(snap(v.z), 12))
}

/// Parses `1.2`, `pi`, `-pi/3`, `3pi/4`, `2*pi/3`.
pub fn parse_angle(s: &str) -> CliResult<f64> {
    let t = s.trim().to_ascii_lowercase().replace('*', "");
    if let Ok(x) = t.parse::<f64>() {
        return Ok(x);
    }
    let bad = || CliError::Usage(format!("cannot read angle {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.to_string(), d.parse::<f64>().map_err(|_| bad())?),
        None => (t.clone(), 1.0),
    };
    let k = num.strip_suffix("pi").ok_or_else(bad)?;
    let k = match k {
        "" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(k * std::f64::consts::PI / den)
}

// ---------------------------------------------------------------------------
// commands

pub const QUANTITIES: [&str; 12] =
    ["kappa_g", "kappa_n", "kappa1", "kappa2", "kappa3", "l", "delta", "k", "beta", "K", "normal", "frame"];

fn cmd_eval(cfg: &RunConfig, a: &EvalArgs) -> CliResult<String> {
    if !QUANTITIES.contains(&a.quantity.as_str()) {
        return Err(CliError::Usage(format!("unknown quantity {:?}; expected one of {}", a.quantity, QUANTITIES.join(", "))));
    }
    let c = cfg.coeffs_or(1, 0, 1)?;
    let theta = parse_angle(&a.theta)?;
    if !theta.is_finite() || !a.r.is_finite() {
        return Err(CliError::Usage("r and theta must be finite".into()));
    }
    let u = Umbrella::new(&c)?;
    if a.quantity == "normal" {
        let n = if a.r == 0.0 {
            extended_normal(theta, &c)
        } else {
            u.unit_normal(a.r * theta.cos(), a.r * theta.sin())
        };
        return Ok(format!("{}\n", fmt_vec(&n)));
    }
    let guard = cfg.guard.unwrap_or(DEFAULT_THETA_GUARD);
    let curve = u.circle(a.r)?;
    let frame: FrameChoice = a.frame.into();
    let scalar = |x: f64| format!("{}\n", fmt_sig(x, 12));
    Ok(match a.quantity.as_str() {
        "kappa_g" => scalar(curve.kappa_g(theta, guard)?),
        "kappa_n" => scalar(curve.kappa_n(theta, guard)?),
        "kappa1" => scalar(curve.curvature_data(theta, frame)?.kappa1),
        "kappa2" => scalar(curve.curvature_data(theta, frame)?.kappa2),
        "kappa3" => scalar(curve.curvature_data(theta, frame)?.kappa3),
        "l" => scalar(curve.curvature_data(theta, frame)?.l),
        "delta" => scalar(NormalDevelopable::new(curve, frame).delta(theta)?),
        "k" => scalar(NormalDevelopable::new(curve, frame).k(theta)?),
        "beta" => scalar(NormalLineSurface::new(curve).beta_striction(theta)?),
        "K" => scalar(NormalLineSurface::new(curve).k_at(theta, a.beta)?),
        "frame" => {
            let f = curve.frame(theta, frame)?;
            format!("e {}\nb {}\nn {}\n", fmt_vec(&f.e), fmt_vec(&f.b), fmt_vec(&f.n))
        }
        _ => unreachable!("checked against QUANTITIES"),
    })
}

fn verify_config(cfg: &RunConfig, a: &VerifyArgs) -> VerifyConfig {
    let mut v = VerifyConfig {
        sets: cfg.coeffs.clone().into_iter().collect(),
        seed: cfg.seed,
        theta_points: cfg.theta_points,
        guard: cfg.grid_guard(),
        tol: cfg.tol,
        sweep: cfg.sweep.clone(),
        ..VerifyConfig::default()
    };
    if let Some(n) = a.samples {
        v.samples = n;
    }
    if let Some(n) = a.heavy_samples {
        v.heavy_samples = n;
    }
    if let Some(n) = a.random_sets {
        v.random_sets = n;
    }
    v
}

fn cmd_verify(cfg: &RunConfig, a: &VerifyArgs) -> CliResult<(String, i32, String)> {
    if a.suite == "list" {
        let mut out = String::new();
        for s in Suite::ALL {
            let _ = writeln!(out, "{:<22} {}", s.name(), s.description());
        }
        return Ok((out, 0, String::new()));
    }
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(&a.suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!("unknown suite {:?}; expected all, list or one of {}", a.suite, names.join(", ")))
        })?]
    };
    let vc = verify_config(cfg, a);
    let mut out = String::new();
    let mut failed = Vec::new();
    for s in suites {
        let rep = verify::run(s, &vc)?;
        out.push_str(&rep.render());
        if !rep.passed() {
            failed.push(s.name());
        }
    }
    let summary = if failed.is_empty() {
        "all checks passed\n".to_string()
    } else {
        format!("failing suites: {}\n", failed.join(", "))
    };
    out.push_str(&summary);
    Ok((out, i32::from(!failed.is_empty()), String::new()))
}

fn parse_range(v: &Option<Vec<f64>>, default: (f64, f64), what: &str) -> CliResult<(f64, f64)> {
    match v {
        None => Ok(default),
        Some(x) if x.len() == 2 => Ok((x[0], x[1])),
        Some(_) => Err(CliError::Usage(format!("--{what} takes LO,HI"))),
    }
}

fn parse_resolution(s: &Option<String>, default: (usize, usize)) -> CliResult<(usize, usize)> {
    let Some(s) = s else { return Ok(default) };
    let bad = || CliError::Usage(format!("cannot read resolution {s:?}; use N or NxM"));
    let res = match s.split_once('x') {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
        None => {
            let n = s.parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if res.0 < 2 || res.1 < 2 {
        return Err(CliError::Usage(format!("resolution must be at least 2 per axis, got {s}")));
    }
    Ok(res)
}

fn cmd_mesh(cfg: &RunConfig, a: &MeshArgs) -> CliResult<(String, i32, String)> {
    let surface = MeshSurface::from_name(&a.surface).ok_or_else(|| {
        CliError::Usage(format!("unknown surface {:?}; expected one of {}", a.surface, MeshSurface::NAMES.join(", ")))
    })?;
    let c = cfg.coeffs_or(1, 0, 1)?;
    let base = MeshSpec::default_for(surface);
    let spec = MeshSpec {
        s_range: parse_range(&a.s_range, base.s_range, "s-range")?,
        t_range: parse_range(&a.t_range, base.t_range, "t-range")?,
        resolution: parse_resolution(&a.resolution, base.resolution)?,
        r: a.r.unwrap_or(base.r),
    };
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let u = Umbrella::new(&c)?;
    let m = mesh(&u, surface, &spec)?;
    let mut note = format!(
        "{} for {c}: {} vertices, {} triangles\n",
        a.surface,
        m.vertices.len(),
        m.triangles.len()
    );
    match surface {
        MeshSurface::F0 => {
            let p = pinch_report(&u, 0.7, &PINCH_RADII);
            let slopes: Vec<String> = p.decay_slopes().iter().map(|s| format!("{s:.4}")).collect();
            let _ = writeln!(
                note,
                "pinch at (u, v) = (0, 0): sigma_min = {} there; along r -> 0 sigma_min [{}], decay slopes [{}]; {}",
                p.sigma_min_origin,
                p.sigma_min.iter().map(|s| format!("{s:.3e}")).collect::<Vec<_>>().join(", "),
                slopes.join(", "),
                if p.is_pinch() { "rank drops to 1" } else { "NO rank drop" }
            );
            let _ = writeln!(
                note,
                "origin vertex: {}",
                m.origin_vertex().map_or("not on the grid (use an odd resolution over a symmetric range)".into(), |k| format!("index {}", k + 1))
            );
        }
        _ => {
            if let Some(k) = max_interior_curvature(&u, surface, &spec, &m)? {
                let _ = writeln!(note, "max |K| at interior vertices: {k:.3e}");
            }
        }
    }
    let header = format!("{} surface, coefficients {c}, resolution {}x{}", a.surface, spec.resolution.0, spec.resolution.1);
    Ok((m.to_obj(&header), 0, note))
}

fn cmd_sweep(cfg: &RunConfig, a: &SweepArgs) -> CliResult<String> {
    let atlas = Atlas::from_name(&a.atlas).ok_or_else(|| {
        CliError::Usage(format!("unknown atlas {:?}; expected roots, first-terms or flipped-counts", a.atlas))
    })?;
    Ok(match atlas {
        Atlas::Roots => {
            let a02 = cfg.coeffs.as_ref().map(|c| c.a02.clone());
            let mut grid = ParamGrid { n: a.grid, ..ParamGrid::default() };
            if let Some(v) = a02 {
                grid.a02 = v;
            }
            roots_csv(&grid)?
        }
        Atlas::FirstTerms => {
            let sets = match &cfg.coeffs {
                Some(c) => vec![c.clone()],
                None => battery_sets(cfg.seed, 20),
            };
            first_terms_csv(&sets, cfg.theta_points, cfg.grid_guard(), &cfg.sweep, cfg.tol)?
        }
        Atlas::FlippedCounts if a.recomputed => flipped_recomputed_csv(cfg.seed, a.samples, cfg.theta_points)?,
        Atlas::FlippedCounts => flipped_counts_csv(cfg.seed, a.samples)?,
    })
}

fn cmd_first_term(cfg: &RunConfig, a: &FirstTermArgs) -> CliResult<String> {
    let ids: Vec<ClosedFormId> = if a.id == "all" {
        ClosedFormId::ALL.to_vec()
    } else {
        vec![ClosedFormId::from_name(&a.id).ok_or_else(|| {
            let names: Vec<&str> = ClosedFormId::ALL.iter().map(|i| i.name()).collect();
            CliError::Usage(format!("unknown closed form {:?}; expected all or one of {}", a.id, names.join(", ")))
        })?]
    };
    let variants: &[FormVariant] = match a.variant {
        VariantArg::Stated => &[FormVariant::Stated],
        VariantArg::Rederived => &[FormVariant::Rederived],
        VariantArg::Both => &[FormVariant::Stated, FormVariant::Rederived],
    };
    let c = cfg.coeffs_or(1, 0, 1)?;
    let u = Umbrella::new(&c)?;
    let grid = theta_grid(cfg.theta_points, cfg.grid_guard());
    let mut reports = Vec::new();
    for &v in variants {
        for &id in &ids {
            reports.push(compare(id, v, &u, &grid, &cfg.sweep, cfg.tol)?);
        }
    }
    if cfg.out.is_some() {
        return Ok(reports_to_csv(&reports));
    }
    let mut out = format!("coefficients {c}, {} angles, tol {}\n", grid.len(), cfg.tol);
    for r in &reports {
        out.push_str(&r.summary());
        out.push('\n');
    }
    Ok(out)
}

fn fmt_list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| fmt_sig(*x, 12)).collect();
    format!("[{}]", parts.join(", "))
}

fn root_lines(out: &mut String, name: &str, r: &RootReport) {
    let _ = writeln!(
        out,
        "{name}: {} distinct real roots s = {} multiplicities {:?} theta = {}",
        r.distinct_real_count,
        fmt_list(&r.roots),
        r.multiplicities,
        fmt_list(&r.theta_values)
    );
}

fn cmd_roots(cfg: &RunConfig) -> CliResult<String> {
    let c = cfg.coeffs_or(1, 0, 1)?;
    let mut out = format!("coefficients {c}\n");
    root_lines(&mut out, "g (geodesic first term)", &gsol_report(&c)?);
    root_lines(&mut out, "F_delta", &fdelta_report(&c)?);
    match fk_roots(&c) {
        Ok(fr) => {
            let fixed = fk_roots_corrected(&c)?;
            let _ = writeln!(
                out,
                "F_k: case {:?}, Sturm count {}, displayed formula s = {}, corrected formula s = {} theta = {}",
                fr.case,
                fr.sturm_count,
                fmt_list(&fr.roots),
                fmt_list(&fixed.roots),
                fmt_list(&fixed.theta_values)
            );
        }
        Err(Error::Hypothesis(m)) => {
            let _ = writeln!(out, "F_k: {m}");
        }
        Err(e) => return Err(e.into()),
    }
    let _ = writeln!(out, "F_k2hat zeros off pi/2: {}", fkappa2_offaxis_count(&c));
    let _ = writeln!(out, "beta first-term zeros: theta = {}", fmt_list(&beta_zero_angles(&c)));
    let _ = writeln!(
        out,
        "kappa_n first-term zeros off pi/2: displayed ratio theta = {}, recomputed theta = {}",
        fmt_list(&kn_zero_angles(&c)),
        fmt_list(&kn_zero_angles_rederived(&c))
    );
    let fl = flipped_counts(&c)?;
    let (rd, rk) = flipped_counts_rederived(&c, cfg.theta_points)?;
    let _ = writeln!(
        out,
        "flipped frame: displayed brackets have {} delta zeros and {} k zeros; recomputed first terms change sign {} and {} times",
        fl.delta_zero_count, fl.k_zero_count, rd, rk
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(-0.0, 12), "0");
        assert_eq!(fmt_sig(1.0, 12), "1");
        assert_eq!(fmt_sig(-2.5, 12), "-2.5");
        assert_eq!(fmt_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_sig(1.5e-9, 12), "1.5e-9");
        assert_eq!(fmt_sig(123456.0, 3), "1.23e5");
        assert_eq!(fmt_sig(-1e-13, 12), "-1e-13");
    }

    #[test]
    fn vec_snaps_noise() {
        let v = Vec3::new(1e-17, -1.0, 0.0);
        assert_eq!(fmt_vec(&v), "0 -1 0");
    }

    #[test]
    fn angles() {
        use std::f64::consts::PI;
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("-pi/3").unwrap(), -PI / 3.0);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert!(parse_angle("tau").is_err());
        assert!(parse_angle("pi/x").is_err());
    }

    #[test]
    fn resolution_and_ranges() {
        assert_eq!(parse_resolution(&Some("7".into()), (1, 1)).unwrap(), (7, 7));
        assert_eq!(parse_resolution(&Some("3x9".into()), (1, 1)).unwrap(), (3, 9));
        assert!(parse_resolution(&Some("1".into()), (1, 1)).is_err());
        assert!(parse_resolution(&Some("ax3".into()), (1, 1)).is_err());
        assert!(parse_range(&Some(vec![1.0]), (0.0, 1.0), "s-range").is_err());
    }

    #[test]
    fn config_rejects_bad_flags() {
        let bad_guard = RunArgs { guard: Some(1.0), ..RunArgs::default() };
        assert_eq!(RunConfig::from_args(&bad_guard).unwrap_err().exit_code(), 2);
        let bad_radii = RunArgs { radii: Some(vec![0.1, 0.2, 0.3, 0.4]), ..RunArgs::default() };
        assert_eq!(RunConfig::from_args(&bad_radii).unwrap_err().exit_code(), 2);
        let bad_coeffs = RunArgs { coeffs: Some("1,2".into()), ..RunArgs::default() };
        assert_eq!(RunConfig::from_args(&bad_coeffs).unwrap_err().exit_code(), 2);
        assert_eq!(RunConfig::from_args(&RunArgs::default()).unwrap().seed, DEFAULT_SEED);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

//! Command-line driver: evaluation grids, validation runs and plot data.
//!
//! Grids are written as CSV (one `#` line with the run settings, then a fixed
//! header row), tables as JSON. Numbers carry 17 significant digits and rows
//! are ordered by grid index, so identical settings give identical bytes.

use crate::cantor::{h_geometric_at_frac, h_tilde_at, CantorProfile, HMode, DEFAULT_SAMPLES};
use crate::errorblock::b_direct_at;
use crate::geometry::{oracle_with, OracleConfig};
use crate::scaling::EpsilonIndex;
use crate::tube::{
    complex_dimensions, flatten_phi_psi, v_direct_eval_at, v_tube_at, CoefficientTable, DimensionLine,
};
use crate::validate::{self, Check};
use crate::{Error, Result, EPS_MAX};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "KOCH_TUBE_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Tube,
    Direct,
    Oracle,
    Compare,
    Coeffs,
    Dims,
    HProfile,
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Tube => "tube",
            Command::Direct => "direct",
            Command::Oracle => "oracle",
            Command::Compare => "compare",
            Command::Coeffs => "coeffs",
            Command::Dims => "dims",
            Command::HProfile => "h-profile",
            Command::Selftest => "selftest",
        }
    }

    fn default_format(self) -> Format {
        match self {
            Command::Coeffs | Command::Dims => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Spacing {
    #[default]
    Log,
}

/// ε grid, log-spaced between `min` and `max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl EpsGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.max];
        }
        let (a, b) = (self.max.ln(), self.min.ln());
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.min
                } else if i == 0 {
                    self.max
                } else {
                    (a + (b - a) * i as f64 / (self.count - 1) as f64).exp()
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncations {
    /// Outer Fourier index bound.
    pub n: usize,
    /// Inner power-series depth.
    pub m: usize,
    /// Range of the h table.
    pub a_max: usize,
    /// Depth of the direct crest sum.
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSettings {
    /// Standard output when `None`.
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// Everything a run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub eps_grid: EpsGrid,
    pub truncations: Truncations,
    pub oracle: OracleSettings,
    pub h_mode: HMode,
    pub samples_per_period: usize,
    pub output: OutputSettings,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let g = &self.eps_grid;
        if !(g.min > 0.0 && g.max <= EPS_MAX * (1.0 + 1e-15) && g.min <= g.max) {
            return Err(Error::Config(format!(
                "grid [{}, {}] must satisfy 0 < min ≤ max ≤ 3^-1/2",
                g.min, g.max
            )));
        }
        if g.count < 1 {
            return Err(Error::Config("grid count must be at least 1".into()));
        }
        let t = &self.truncations;
        if t.a_max < 2 * t.n {
            return Err(Error::Config(format!("A_max = {} is below 2N = {}", t.a_max, 2 * t.n)));
        }
        if t.m < 1 || t.m > crate::tube::MAX_COEFF_M {
            return Err(Error::Config(format!("M = {} outside 1..={}", t.m, crate::tube::MAX_COEFF_M)));
        }
        if t.k < 1 {
            return Err(Error::Config("K must be at least 1".into()));
        }
        if self.oracle.samples < 2 {
            return Err(Error::Config("oracle needs at least 2 samples".into()));
        }
        if self.samples_per_period < 2 {
            return Err(Error::Config("need at least 2 samples per period".into()));
        }
        Ok(())
    }

    fn meta(&self) -> Vec<(&'static str, String)> {
        let t = &self.truncations;
        vec![
            ("command", self.command.name().to_string()),
            ("h_mode", self.h_mode.to_string()),
            ("N", t.n.to_string()),
            ("M", t.m.to_string()),
            ("A_max", t.a_max.to_string()),
            ("K", t.k.to_string()),
            ("samples_per_period", self.samples_per_period.to_string()),
            ("oracle_samples", self.oracle.samples.to_string()),
            ("seed", self.oracle.seed.to_string()),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    F(f64),
    I(i64),
    S(String),
    B(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(v) => format!("{v:.16e}"),
            Cell::I(v) => v.to_string(),
            Cell::S(s) => s.clone(),
            Cell::B(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::F(v) if v.is_finite() => json!(v),
            Cell::F(v) => json!(v.to_string()),
            Cell::I(v) => json!(v),
            Cell::S(s) => json!(s),
            Cell::B(b) => json!(b),
        }
    }
}

/// Rows produced by a command, plus its verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    /// `Some` for commands that judge their output.
    pub verdict: Option<(bool, String)>,
}

impl Report {
    fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
            verdict: None,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Column `name` of every row, for numeric columns.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        self.rows
            .iter()
            .map(|r| match &r[i] {
                Cell::F(v) => Some(*v),
                Cell::I(v) => Some(*v as f64),
                _ => None,
            })
            .collect()
    }

    pub fn write(&self, cfg: &RunConfig, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                let meta: Vec<String> = cfg.meta().iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(out, "# {}", meta.join(" "))?;
                writeln!(out, "{}", self.columns.join(","))?;
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                if let Some((ok, msg)) = &self.verdict {
                    writeln!(out, "# verdict: {} {msg}", if *ok { "PASS" } else { "FAIL" })?;
                }
            }
            Format::Json => {
                let mut meta = Map::new();
                for (k, v) in cfg.meta() {
                    meta.insert(k.to_string(), json!(v));
                }
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut m = Map::new();
                        for (c, v) in self.columns.iter().zip(r) {
                            m.insert(c.to_string(), v.json());
                        }
                        Value::Object(m)
                    })
                    .collect();
                let mut doc = Map::new();
                doc.insert("meta".into(), Value::Object(meta));
                doc.insert("rows".into(), Value::Array(rows));
                if let Some((ok, msg)) = &self.verdict {
                    doc.insert("verdict".into(), json!({ "passed": ok, "summary": msg }));
                }
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

fn profile(cfg: &RunConfig, mode: HMode, a_max: usize) -> Result<CantorProfile> {
    CantorProfile::build(mode, cfg.samples_per_period, a_max)
}

fn h_value(mode: HMode, idx: &EpsilonIndex, mu: f64) -> Result<f64> {
    match mode {
        HMode::Geometric => h_geometric_at_frac(idx.frac),
        HMode::Approximate => Ok(h_tilde_at(idx, mu)),
    }
}

fn run_tube(cfg: &RunConfig) -> Result<Report> {
    let t = &cfg.truncations;
    let table = CoefficientTable::build(t.n, t.m)?;
    let prof = profile(cfg, cfg.h_mode, t.a_max)?;
    let rows = cfg
        .eps_grid
        .points()
        .par_iter()
        .map(|&eps| {
            let idx = EpsilonIndex::from_epsilon(eps)?;
            let v = v_tube_at(&idx, &table, &prof.g, t.n)?;
            Ok(vec![
                Cell::F(eps),
                Cell::F(idx.x),
                Cell::F(v.v),
                Cell::F(v.term_g1),
                Cell::F(v.term_g2),
                Cell::F(prof.h_at_frac(idx.frac)),
                Cell::F(v.imag_residue),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = Report::new(&["epsilon", "x", "v", "term_g1", "term_g2", "h", "imag_residue"]);
    r.rows = rows;
    Ok(r)
}

fn run_direct(cfg: &RunConfig) -> Result<Report> {
    let t = cfg.truncations;
    let mu = crate::cantor::mu();
    let mode = cfg.h_mode;
    let rows = cfg
        .eps_grid
        .points()
        .par_iter()
        .map(|&eps| {
            let idx = EpsilonIndex::from_epsilon(eps)?;
            let h = h_value(mode, &idx, mu)?;
            let v = v_direct_eval_at(&idx, h, t.m)?;
            let b = b_direct_at(&idx, t.k);
            Ok(vec![
                Cell::F(eps),
                Cell::F(idx.x),
                Cell::F(v.v),
                Cell::F(v.term_g1),
                Cell::F(v.term_g2),
                Cell::F(h),
                Cell::F(b.value),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = Report::new(&["epsilon", "x", "v", "term_g1", "term_g2", "h", "block_area"]);
    r.rows = rows;
    Ok(r)
}

fn oracle_config(cfg: &RunConfig) -> OracleConfig {
    OracleConfig {
        samples: cfg.oracle.samples,
        seed: cfg.oracle.seed,
        ..OracleConfig::default()
    }
}

fn run_oracle(cfg: &RunConfig) -> Result<Report> {
    let oc = oracle_config(cfg);
    let mut r = Report::new(&["epsilon", "x", "area_mean", "std_error", "bias_bound", "samples", "seed"]);
    // each estimate is already split across the pool
    for eps in cfg.eps_grid.points() {
        let idx = EpsilonIndex::from_epsilon(eps)?;
        let o = oracle_with(eps, &oc)?;
        r.rows.push(vec![
            Cell::F(eps),
            Cell::F(idx.x),
            Cell::F(o.area_mean),
            Cell::F(o.std_error),
            Cell::F(o.bias_bound),
            Cell::I(o.samples as i64),
            Cell::I(o.seed as i64),
        ]);
    }
    Ok(r)
}

fn run_compare(cfg: &RunConfig) -> Result<Report> {
    let t = &cfg.truncations;
    let table = CoefficientTable::build(t.n, t.m)?;
    let prof = profile(cfg, cfg.h_mode, t.a_max)?;
    let oc = oracle_config(cfg);
    let mut r = Report::new(&[
        "epsilon",
        "x",
        "h",
        "v_direct",
        "v_tube",
        "oracle_mean",
        "oracle_se",
        "bias",
        "within",
    ]);
    let mut inside = 0;
    let points = cfg.eps_grid.points();
    for &eps in &points {
        let idx = EpsilonIndex::from_epsilon(eps)?;
        let h = h_value(cfg.h_mode, &idx, prof.mu)?;
        let vd = v_direct_eval_at(&idx, h, t.m)?.v;
        let vt = v_tube_at(&idx, &table, &prof.g, t.n)?.v;
        let o = oracle_with(eps, &oc)?;
        let ok = (vd - o.area_mean).abs() <= 3.0 * o.std_error + o.bias_bound;
        inside += ok as usize;
        r.rows.push(vec![
            Cell::F(eps),
            Cell::F(idx.x),
            Cell::F(h),
            Cell::F(vd),
            Cell::F(vt),
            Cell::F(o.area_mean),
            Cell::F(o.std_error),
            Cell::F(o.bias_bound),
            Cell::B(ok),
        ]);
    }
    r.verdict = Some((
        inside == points.len(),
        format!("{inside}/{} rows within 3σ + bias", points.len()),
    ));
    Ok(r)
}

fn run_coeffs(cfg: &RunConfig) -> Result<Report> {
    let t = &cfg.truncations;
    let table = CoefficientTable::build(t.n, t.m)?;
    let mut r = Report::new(&[
        "n", "a_re", "a_im", "b_re", "b_im", "sigma_re", "sigma_im", "tau_re", "tau_im",
    ]);
    for row in table.rows() {
        r.rows.push(vec![
            Cell::I(row.n),
            Cell::F(row.a_re),
            Cell::F(row.a_im),
            Cell::F(row.b_re),
            Cell::F(row.b_im),
            Cell::F(row.sigma_re),
            Cell::F(row.sigma_im),
            Cell::F(row.tau_re),
            Cell::F(row.tau_im),
        ]);
    }
    Ok(r)
}

fn run_dims(cfg: &RunConfig) -> Result<Report> {
    let t = &cfg.truncations;
    let table = CoefficientTable::build(t.n, t.m)?;
    let prof = profile(cfg, cfg.h_mode, t.a_max.max(2 * t.n))?;
    let weights = flatten_phi_psi(&table, &prof.g)?;
    let mut r = Report::new(&["n", "line", "re", "im", "weight"]);
    for d in complex_dimensions(t.n, Some(&weights)) {
        r.rows.push(vec![
            Cell::I(d.n),
            Cell::S(
                match d.line {
                    DimensionLine::Fractal => "fractal",
                    DimensionLine::Integer => "integer",
                }
                .into(),
            ),
            Cell::F(d.re),
            Cell::F(d.im),
            Cell::F(d.weight.unwrap_or(f64::NAN)),
        ]);
    }
    Ok(r)
}

fn run_h_profile(cfg: &RunConfig) -> Result<Report> {
    let prof = profile(cfg, HMode::Geometric, 1)?;
    let s = cfg.samples_per_period;
    let mut r = Report::new(&["x", "h_geometric", "h_tilde"]);
    let mut ok = true;
    for j in 0..s {
        let x = j as f64 / s as f64;
        let h = prof.samples[j];
        let ht = h_tilde_at(&EpsilonIndex::from_x(x)?, prof.mu);
        ok &= (0.0..prof.mu).contains(&h) && (0.0..prof.mu).contains(&ht);
        r.rows.push(vec![Cell::F(x), Cell::F(h), Cell::F(ht)]);
    }
    r.verdict = Some((ok, format!("0 ≤ h < μ = {:.16e} on all rows", prof.mu)));
    Ok(r)
}

/// The invariant suite at moderate sizes.
pub fn selftest_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let t = &cfg.truncations;
    let table = CoefficientTable::build(t.n, t.m)?;
    let prof = profile(cfg, cfg.h_mode, t.a_max)?;
    let x_hi = -(cfg.eps_grid.min.log(3.0)) - 0.5;
    let x_lo = -(cfg.eps_grid.max.log(3.0)) - 0.5;
    let grid = validate::off_jump_grid(x_lo, x_hi, 40, 0.02);
    let decay = (t.n.min(t.a_max) as i64).max(2);
    let h_of_frac = |f: f64| -> Result<f64> { Ok(prof.h_at_frac(f)) };
    Ok(vec![
        validate::check_oracle(&validate::log_grid(x_lo.max(0.5), x_hi, 3), cfg.oracle.samples, cfg.oracle.seed, 0.01),
        validate::check_rearrangement(50, cfg.oracle.seed, 1e-12),
        validate::check_dual_forms(10, 40, 1e-12),
        validate::check_tube_vs_direct(&prof, &table, &grid, 5e-3),
        validate::check_reality(&prof.g, &table, &grid, 1e-9),
        validate::check_periodicity(&prof, &table, 20, cfg.oracle.seed, &h_of_frac),
        validate::check_mu(6, 1e-9),
        validate::check_decay(&table, &prof.g, decay),
        validate::check_dimensions(3),
        validate::check_counting(10),
        validate::check_sawtooth_table(100, 1e-10),
        validate::check_flattening(&prof.g, &table, &grid[..10], 1e-10),
    ])
}

fn run_selftest(cfg: &RunConfig) -> Result<Report> {
    let checks = selftest_checks(cfg)?;
    let mut r = Report::new(&["check", "passed", "detail"]);
    let passed = checks.iter().filter(|c| c.passed).count();
    for c in &checks {
        r.rows.push(vec![Cell::S(c.name.clone()), Cell::B(c.passed), Cell::S(c.detail.replace(',', ";"))]);
    }
    r.verdict = Some((passed == checks.len(), format!("{passed}/{} checks passed", checks.len())));
    Ok(r)
}

/// Runs one command and returns its report.
pub fn execute(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    match cfg.command {
        Command::Tube => run_tube(cfg),
        Command::Direct => run_direct(cfg),
        Command::Oracle => run_oracle(cfg),
        Command::Compare => run_compare(cfg),
        Command::Coeffs => run_coeffs(cfg),
        Command::Dims => run_dims(cfg),
        Command::HProfile => run_h_profile(cfg),
        Command::Selftest => run_selftest(cfg),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Bounds(_) => "bounds",
        Error::Config(_) => "config",
        Error::Accuracy { .. } => "accuracy",
        Error::JumpPoint(_) => "jump_point",
    }
}

/// Exit status for an error: accuracy shortfalls are validation failures,
/// everything else is a usage error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Accuracy { .. } => EXIT_VALIDATION,
        _ => EXIT_USAGE,
    }
}

/// One-line JSON error record.
pub fn error_record(e: &Error) -> String {
    json!({ "error": error_kind(e), "message": e.to_string() }).to_string()
}

fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{WORKERS_ENV} must be a positive integer, got '{v}'")))?;
        if n == 0 {
            return Err(Error::Config(format!("{WORKERS_ENV} must be positive")));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Config(format!("worker pool: {e}")))
}

/// Runs the command and writes its output; returns the exit status.
pub fn run(cfg: &RunConfig) -> i32 {
    let result = worker_pool().and_then(|pool| pool.install(|| execute(cfg)));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}", error_record(&e));
            return exit_code(&e);
        }
    };
    let written = (|| -> io::Result<()> {
        match &cfg.output.path {
            Some(p) => {
                let mut w = BufWriter::new(File::create(p)?);
                report.write(cfg, cfg.output.format, &mut w)?;
                w.flush()
            }
            None => {
                let stdout = io::stdout();
                let mut w = stdout.lock();
                report.write(cfg, cfg.output.format, &mut w)
            }
        }
    })();
    if let Err(e) = written {
        eprintln!("{}", json!({ "error": "io", "message": e.to_string() }));
        return EXIT_USAGE;
    }
    match &report.verdict {
        Some((false, msg)) => {
            eprintln!("{}", json!({ "error": "validation", "message": msg }));
            EXIT_VALIDATION
        }
        _ => EXIT_OK,
    }
}

/// Default upper end of the grid, `ε = 0.3`, inside the first level.
pub const DEFAULT_EPS_MAX: f64 = 0.3;

/// Default lower end of the grid, `3^-4.45`.
pub fn default_eps_min() -> f64 {
    3f64.powf(-4.45)
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Smallest ε of the grid [default: 3^-4.45]
    #[arg(long, global = true)]
    pub eps_min: Option<f64>,
    /// Largest ε of the grid, at most 3^-1/2
    #[arg(long, global = true, default_value_t = DEFAULT_EPS_MAX)]
    pub eps_max: f64,
    /// Number of grid points [default: 5 for compare, 50 otherwise]
    #[arg(long, global = true)]
    pub count: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
    /// Outer Fourier truncation N
    #[arg(long = "n", global = true, default_value_t = crate::tube::DEFAULT_N)]
    pub n: usize,
    /// Inner series depth M
    #[arg(long = "m", global = true, default_value_t = crate::tube::DEFAULT_COEFF_M)]
    pub m: usize,
    /// Range of the h Fourier table
    #[arg(long, global = true, default_value_t = crate::tube::DEFAULT_A_MAX)]
    pub a_max: usize,
    /// Depth of the direct crest sum
    #[arg(long = "k", global = true, default_value_t = crate::errorblock::DEFAULT_K)]
    pub k: usize,
    /// Monte Carlo samples per ε
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// geometric or approximate
    #[arg(long, global = true, default_value_t = HMode::Geometric)]
    pub h_mode: HMode,
    /// Samples of h per period
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples_per_period: usize,
    /// Output file [default: standard output]
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// csv or json [default: json for coeffs and dims, csv otherwise]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Sub {
    /// V from its Fourier series on an ε grid
    Tube,
    /// V from the closed forms on an ε grid
    Direct,
    /// Monte Carlo area of the inner neighbourhood
    Oracle,
    /// Closed form, Fourier series and oracle side by side
    Compare,
    /// Coefficient table a_n, b_n, σ_n, τ_n
    Coeffs,
    /// Complex dimensions with coefficient magnitudes
    Dims,
    /// h and its sawtooth approximation over one period
    HProfile,
    /// Run the invariant suite
    Selftest,
}

/// Inner tube formula of the Koch snowflake.
#[derive(Debug, Clone, Parser)]
#[command(name = "koch-tube", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    #[command(flatten)]
    pub options: Options,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let command = match self.command {
            Sub::Tube => Command::Tube,
            Sub::Direct => Command::Direct,
            Sub::Oracle => Command::Oracle,
            Sub::Compare => Command::Compare,
            Sub::Coeffs => Command::Coeffs,
            Sub::Dims => Command::Dims,
            Sub::HProfile => Command::HProfile,
            Sub::Selftest => Command::Selftest,
        };
        let o = &self.options;
        let count = o
            .count
            .unwrap_or(if command == Command::Compare { 5 } else { 50 });
        RunConfig {
            command,
            eps_grid: EpsGrid {
                min: o.eps_min.unwrap_or_else(default_eps_min),
                max: o.eps_max,
                count,
                spacing: o.spacing,
            },
            truncations: Truncations {
                n: o.n,
                m: o.m,
                a_max: o.a_max,
                k: o.k,
            },
            oracle: OracleSettings {
                samples: o.samples,
                seed: o.seed,
            },
            h_mode: o.h_mode,
            samples_per_period: o.samples_per_period,
            output: OutputSettings {
                path: o.output.clone(),
                format: o.format.unwrap_or(command.default_format()),
            },
        }
    }
}

/// Parses arguments and runs; clap reports its own usage errors with status 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.config()),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

/// Configuration with every default, for `command`.
pub fn default_config(command: Command) -> RunConfig {
    let cli = Cli::try_parse_from(["koch-tube", command.name()]).expect("defaults parse");
    cli.config()
}

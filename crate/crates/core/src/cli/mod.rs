//! Command-line entry point: flag parsing, dispatch and artifact writing.
//!
//! Every run writes into `<output_dir>/<command>-seed<seed>/`:
//! `summary.json`, the CSV detail files of its command and
//! `manifest.json` with the byte count and SHA-256 of each artifact.

pub mod config;

use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use config::{
    Command, DomainName, DomainSpec, FieldName, FieldSpec, PhiKind, PhiSpec, RunConfig, TubeMethodName,
    ValidationReport,
};

use crate::dimension::{
    assouad_codims_detailed, homogeneity_check, minkowski_upper, tube_exponent, CodimOptions,
    DimensionEstimate,
};
use crate::error::Error;
use crate::experiments::{
    cutoff_decay_experiment, density_verdict, hardy_reduction_experiment, koch_case_study_with,
    verdict_margin, KochOptions, ReductionOptions,
};
use crate::geometry::tube::{inner_tube_volume, TubeMethod};
use crate::geometry::{ambient_dim, plumpness_check, Domain, Point2};
use crate::io::{self, DimensionRow, EstimateRow, Schema, TubeRow};
use crate::sampling::{Estimate, SampleConfig};
use crate::scaling::{psi_extend, psi_lower_asymptotic_check, select_eta0, wlsc_check, wusc_check, ScalingGrid};
use crate::sobolev::{gagliardo_seminorm_p, hardy_quotient, SobolevParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ESTIMATOR: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "FRACLAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "fraclab", version, about = "Fractional Sobolev density experiments on planar domains")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub domain: Option<DomainName>,
    /// Prefractal level for `--domain koch` and for the `koch` command.
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub teeth: Option<usize>,
    #[arg(long)]
    pub depth: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub n_grid: Option<Vec<u32>>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub field: Option<FieldName>,
    #[arg(long)]
    pub field_param: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub r_loc: Option<f64>,
    /// Exponent of the power scaling function.
    #[arg(long)]
    pub phi_exponent: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, value_enum)]
    pub tube_method: Option<TubeMethodName>,
    /// Print the validation report and exit.
    #[arg(long)]
    pub dry_run: bool,
}

impl Cli {
    /// Loads the config file, if any, and applies the flags on top.
    pub fn resolve(&self) -> Result<RunConfig, String> {
        let mut c = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
                RunConfig::from_toml(&text).map_err(|e| format!("parsing {}: {e}", path.display()))?
            }
            None => RunConfig::default(),
        };
        c.command = self.command;
        if let Some(v) = self.domain {
            c.domain.kind = v;
        }
        if let Some(v) = self.level {
            c.domain.level = v;
            c.koch.level = v;
        }
        if let Some(v) = self.radius {
            c.domain.radius = v;
        }
        if let Some(v) = self.teeth {
            c.domain.teeth = v;
        }
        if let Some(v) = self.depth {
            c.domain.depth = v;
        }
        if let Some(v) = self.s {
            c.s = v;
        }
        if let Some(v) = self.p {
            c.p = v;
        }
        if let Some(v) = &self.n_grid {
            c.n_grid = v.clone();
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.samples {
            c.samples = v;
        }
        if let Some(v) = &self.out {
            c.output_dir = v.clone();
        }
        if let Some(v) = self.field {
            c.field.kind = v;
        }
        if let Some(v) = self.field_param {
            c.field.param = v;
        }
        if let Some(v) = self.kappa {
            c.density.kappa = v;
        }
        if let Some(v) = self.r_loc {
            c.reduction.r_loc = v;
            c.scaling.r_loc = v;
        }
        if let Some(v) = self.phi_exponent {
            c.reduction.phi.exponent = v;
            c.scaling.phi.exponent = v;
        }
        if let Some(v) = self.eta {
            c.scaling.eta = v;
        }
        if let Some(v) = self.h {
            c.scaling.h = v;
        }
        if let Some(v) = self.m {
            c.scaling.m = v;
        }
        if let Some(v) = self.r_min {
            c.tube.r_min = v;
        }
        if let Some(v) = self.r_max {
            c.tube.r_max = v;
        }
        if let Some(v) = self.count {
            c.tube.count = v;
        }
        if let Some(v) = self.tube_method {
            c.tube.method = v;
        }
        Ok(c)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("estimator error: {0}")]
    Estimator(#[from] Error),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            RunError::Estimator(_) | RunError::Io(_) => EXIT_ESTIMATOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtifactEntry {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub summary: Value,
    /// Sorted by file name; excludes the manifest itself.
    pub artifacts: Vec<ArtifactEntry>,
}

/// Collects artifact contents before anything touches the disk.
#[derive(Default)]
struct Artifacts(Vec<(String, Vec<u8>)>);

impl Artifacts {
    fn csv<T: Serialize>(&mut self, schema: Schema, rows: &[T]) -> Result<(), RunError> {
        self.0.push((schema.file_name().to_string(), io::to_csv(schema, rows)?));
        Ok(())
    }
}

pub fn output_dir(cfg: &RunConfig) -> PathBuf {
    cfg.output_dir.join(format!("{}-seed{}", cfg.command.as_str(), cfg.seed))
}

/// Validates, runs the configured command and writes its artifacts.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome, RunError> {
    let report = cfg.validate();
    if !report.is_valid() {
        return Err(RunError::Config(report.violations.join("; ")));
    }
    let sc = SampleConfig::with_seed(cfg.seed, cfg.samples);
    let mut art = Artifacts::default();
    let summary = match cfg.command {
        Command::Dimension => run_dimension(cfg, &sc, &mut art)?,
        Command::Tube => run_tube(cfg, &sc, &mut art)?,
        Command::Seminorm => run_seminorm(cfg, &sc, &mut art)?,
        Command::Hardy => run_hardy(cfg, &sc, &mut art)?,
        Command::Density => run_density(cfg, &sc, &mut art)?,
        Command::Cutoff => run_cutoff(cfg, &sc, &mut art)?,
        Command::Koch => run_koch(cfg, &sc, &mut art)?,
        Command::Reduction => run_reduction(cfg, &sc, &mut art)?,
        Command::Scaling => run_scaling(cfg)?,
    };
    let summary = json!({
        "command": cfg.command.as_str(),
        "seed": cfg.seed,
        "samples": cfg.samples,
        "result": summary,
    });
    let mut summary_bytes = serde_json::to_vec_pretty(&summary).expect("summary serializes");
    summary_bytes.push(b'\n');
    art.0.push(("summary.json".into(), summary_bytes));
    art.0.sort_by(|a, b| a.0.cmp(&b.0));

    let dir = output_dir(cfg);
    fs::create_dir_all(&dir)?;
    let mut entries = Vec::with_capacity(art.0.len());
    for (name, bytes) in &art.0 {
        fs::write(dir.join(name), bytes)?;
        entries.push(ArtifactEntry {
            file: name.clone(),
            bytes: bytes.len() as u64,
            sha256: hex::encode(Sha256::digest(bytes)),
        });
    }
    let mut manifest = serde_json::to_vec_pretty(&json!({ "artifacts": entries })).expect("manifest serializes");
    manifest.push(b'\n');
    fs::write(dir.join("manifest.json"), manifest)?;
    Ok(RunOutcome {
        dir,
        summary,
        artifacts: entries,
    })
}

fn domain(cfg: &RunConfig) -> Result<Domain<f64>, RunError> {
    cfg.domain.build().map_err(|e| RunError::Config(e.to_string()))
}

fn params(cfg: &RunConfig) -> Result<SobolevParams<f64>, RunError> {
    SobolevParams::new(cfg.s, cfg.p).map_err(|e| RunError::Config(e.to_string()))
}

fn codim_options(cfg: &RunConfig) -> CodimOptions {
    CodimOptions {
        centers: cfg.dimension.centers,
        bootstrap: cfg.dimension.bootstrap,
        ..CodimOptions::default()
    }
}

fn dim_json(e: &DimensionEstimate<f64>) -> Value {
    json!({
        "value": e.value,
        "stderr": e.stderr,
        "fit_r2": e.fit_r2,
        "spread_min": e.spread_min,
        "spread_max": e.spread_max,
    })
}

fn est_json(e: &Estimate<f64>) -> Value {
    json!({ "value": e.value, "stderr": e.stderr, "samples": e.samples })
}

fn run_dimension(cfg: &RunConfig, sc: &SampleConfig, art: &mut Artifacts) -> Result<Value, RunError> {
    let d = domain(cfg)?;
    let mink = minkowski_upper(&d, &sc.derive("dimension-minkowski"))?;
    let codims = assouad_codims_detailed(&d, &sc.derive("dimension-codims"), &codim_options(cfg))?;
    let (dim_upper, dim_lower) = codims.dims();
    let rows: Vec<DimensionRow> = [&mink, &codims.lower, &codims.upper, &dim_upper, &dim_lower]
        .into_iter()
        .map(DimensionRow::from)
        .collect();
    art.csv(Schema::Dimension, &rows)?;
    art.csv(Schema::LocalExponents, &io::local_exponent_rows(d.label(), sc.seed, &codims.locals))?;
    let tube: Vec<TubeRow> = codims.measurements.iter().map(TubeRow::from).collect();
    art.csv(Schema::Tube, &tube)?;
    Ok(json!({
        "domain": d.label(),
        "minkowski_upper": dim_json(&mink),
        "assouad_codim_lower": dim_json(&codims.lower),
        "assouad_codim_upper": dim_json(&codims.upper),
        "assouad_dim_upper": dim_upper.value,
        "assouad_dim_lower": dim_lower.value,
    }))
}

fn run_tube(cfg: &RunConfig, sc: &SampleConfig, art: &mut Artifacts) -> Result<Value, RunError> {
    let d = domain(cfg)?;
    let t = &cfg.tube;
    let (fit, series) = match t.method {
        TubeMethodName::Grid => tube_exponent(&d, t.r_min, t.r_max, t.count, &sc.derive("tube"))?,
        TubeMethodName::Montecarlo => {
            let (fit, grid) = tube_exponent(&d, t.r_min, t.r_max, t.count, &sc.derive("tube"))?;
            let mc = grid
                .iter()
                .enumerate()
                .map(|(i, m)| inner_tube_volume(&d, m.r, TubeMethod::Montecarlo, &sc.derive(&format!("tube-mc-{i}"))))
                .collect::<Result<Vec<_>, _>>()?;
            (fit, grid.into_iter().chain(mc).collect())
        }
    };
    let rows: Vec<TubeRow> = series.iter().map(TubeRow::from).collect();
    art.csv(Schema::Tube, &rows)?;
    art.csv(Schema::Dimension, &[DimensionRow::from(&fit)])?;
    Ok(json!({
        "domain": d.label(),
        "tube_exponent": dim_json(&fit),
        "radii": series.iter().filter(|m| m.method == TubeMethod::Grid).count(),
    }))
}

fn run_seminorm(cfg: &RunConfig, sc: &SampleConfig, art: &mut Artifacts) -> Result<Value, RunError> {
    let d = domain(cfg)?;
    let f = cfg.field.build(&d);
    let e = gagliardo_seminorm_p(&f, &d, &params(cfg)?, &sc.derive("seminorm"))?;
    art.csv(Schema::Estimates, &[EstimateRow::from(&e)])?;
    Ok(json!({
        "domain": e.domain,
        "field": e.field_label,
        "s": e.s,
        "p": e.p,
        "value_p": e.value_p,
        "stderr": e.stderr,
        "rho_min": e.rho_min,
        "bias_bound": e.bias_bound,
    }))
}

fn run_hardy(cfg: &RunConfig, sc: &SampleConfig, art: &mut Artifacts) -> Result<Value, RunError> {
    let d = domain(cfg)?;
    let f = cfg.field.build(&d);
    let e = hardy_quotient(&f, &d, &params(cfg)?, &sc.derive("hardy"))?;
    art.csv(Schema::Estimates, &[EstimateRow::from(&e)])?;
    art.csv(Schema::HardyShells, &io::hardy_shell_rows(&e))?;
    Ok(json!({
        "domain": e.domain,
        "field": e.field_label,
        "s": e.s,
        "p": e.p,
        "value": e.value,
        "stderr": e.stderr,
        "diverged": e.diverged,
        "trend": e.trend,
    }))
}

fn run_density(cfg: &RunConfig, sc: &SampleConfig, art: &mut Artifacts) -> Result<Value, RunError> {
    let d = domain(cfg)?;
    let params = params(cfg)?;
    let codims = assouad_codims_detailed(&d, &sc.derive("density-codims"), &codim_options(cfg))?;
    let plump = plumpness_check(&d, cfg.density.kappa, &sc.derive("density-plump"))?;
    let dims = (codims.lower.clone(), codims.upper.clone());
    let margin = verdict_margin(dims.0.value, dims.1.value);
    let sp = params.sp();
    let homog = if sp >= dims.0.value - margin && sp <= dims.1.value + margin && params.p > 1.0 {
        Some(homogeneity_check(&d, ambient_dim::<f64>() - sp, &sc.derive("density-homog"))?)
    } else {
        None
    };
    let v = density_verdict(&d, &params, Some(&dims), Some(&plump), homog.as_ref())?;
    let rows = vec![DimensionRow::from(&codims.lower), DimensionRow::from(&codims.upper)];
    art.csv(Schema::Dimension, &rows)?;
    art.csv(Schema::LocalExponents, &io::local_exponent_rows(d.label(), sc.seed, &codims.locals))?;
    Ok(json!({
        "domain": v.domain,
        "s": v.s,
        "p": v.p,
        "sp": v.sp,
        "verdict": v.verdict.as_str(),
        "codim_lower": v.codim_lower,
        "codim_upper": v.codim_upper,
        "margin": v.margin,
        "plump": v.plump,
        "homogeneous": v.homogeneous,
        "plump_worst_ratio": plump.worst_ratio,
        "homogeneity_slope": homog.as_ref().map(|h| h.growth_slope),
        "rationale": v.rationale,
    }))
}

fn run_cutoff(cfg: &RunConfig, sc: &SampleConfig, art: &mut Artifacts) -> Result<Value, RunError> {
    let d = domain(cfg)?;
    let series = cutoff_decay_experiment(&d, &params(cfg)?, &cfg.n_grid, &sc.derive("cutoff"))?;
    art.csv(Schema::Cutoff, &io::cutoff_rows(&series))?;
    Ok(cutoff_json(&series))
}

fn cutoff_json(series: &crate::experiments::CutoffSeries<f64>) -> Value {
    json!({
        "domain": series.domain,
        "s": series.s,
        "p": series.p,
        "sp": series.sp,
        "c_calibrated": series.c_calibrated,
        "fitted_slope": series.fitted_slope,
        "fitted_slope_stderr": series.fitted_slope_stderr,
        "tube_slope": series.tube_slope,
        "positive_floor": series.positive_floor,
        "positive_floor_stderr": series.positive_floor_stderr,
        "monotone_violations": series.monotone_violations(2.0),
        "envelope_violations": series.envelope_violations(2.0),
        "floor_exceeds_5_stderr": series.floor_exceeds(5.0),
    })
}

fn run_koch(cfg: &RunConfig, sc: &SampleConfig, art: &mut Artifacts) -> Result<Value, RunError> {
    let opts = KochOptions {
        level: cfg.koch.level,
        tube_r_min: cfg.tube.r_min,
        tube_r_max: cfg.tube.r_max,
        tube_count: cfg.tube.count,
        n_grid: cfg.n_grid.clone(),
        cutoff_samples: cfg.koch.cutoff_samples,
        codim: codim_options(cfg),
        kappa: cfg.density.kappa,
        ..KochOptions::default()
    };
    let rep = koch_case_study_with::<f64>(&opts, sc)?;
    let dims = [&rep.codim_lower, &rep.codim_upper, &rep.tube_exponent];
    let rows: Vec<DimensionRow> = dims.into_iter().map(DimensionRow::from).collect();
    art.csv(Schema::Dimension, &rows)?;
    art.csv(Schema::LocalExponents, &io::local_exponent_rows(&rep.codim_lower.domain, sc.seed, &rep.locals))?;
    let tube: Vec<TubeRow> = rep.tube_series.iter().map(TubeRow::from).collect();
    art.csv(Schema::Tube, &tube)?;
    let mut cut = io::cutoff_rows(&rep.cutoff_below);
    cut.extend(io::cutoff_rows(&rep.cutoff_above));
    art.csv(Schema::Cutoff, &cut)?;
    let verdicts: Vec<Value> = rep
        .verdicts
        .iter()
        .map(|v| json!({ "s": v.s, "p": v.p, "sp": v.sp, "verdict": v.verdict.as_str() }))
        .collect();
    Ok(json!({
        "level": rep.level,
        "expected_threshold": rep.expected,
        "threshold_estimate": rep.threshold_estimate,
        "threshold_ok": rep.threshold_ok,
        "codim_lower": dim_json(&rep.codim_lower),
        "codim_upper": dim_json(&rep.codim_upper),
        "tube_exponent": dim_json(&rep.tube_exponent),
        "plump": { "kappa": rep.plump.kappa, "pass": rep.plump.pass, "worst_ratio": rep.plump.worst_ratio },
        "homogeneity": rep.homogeneity.iter().map(|h| json!({
            "sigma": h.sigma, "growth_slope": h.growth_slope, "stable": h.stable,
        })).collect::<Vec<_>>(),
        "verdicts": verdicts,
        "cutoff_below": cutoff_json(&rep.cutoff_below),
        "cutoff_above": cutoff_json(&rep.cutoff_above),
    }))
}

fn estimate_row(r: &crate::experiments::HardyReductionReport<f64>, s: f64, quantity: &str, e: &Estimate<f64>) -> EstimateRow {
    EstimateRow {
        domain: r.domain.clone(),
        field_label: r.field_label.clone(),
        s,
        p: r.p,
        quantity: quantity.into(),
        value: e.value,
        stderr: e.stderr,
        samples: e.samples,
        rho_min: None,
        bias_bound: None,
        diverged: false,
        seed: r.seed,
    }
}

fn run_reduction(cfg: &RunConfig, sc: &SampleConfig, art: &mut Artifacts) -> Result<Value, RunError> {
    let d = domain(cfg)?;
    let params = params(cfg)?;
    let u = cfg.field.build(&d);
    let phi = cfg.reduction.phi.build().map_err(|e| RunError::Config(e.to_string()))?;
    let opts = ReductionOptions {
        x0: cfg.reduction.x0.map(|v| Point2::new(v[0], v[1])),
        dim_a: cfg.reduction.dim_a,
    };
    let r = hardy_reduction_experiment(&d, &u, &phi, cfg.reduction.r_loc, &params, &opts, &sc.derive("reduction"))?;
    let rows: Vec<EstimateRow> = [
        ("i1", &r.i1),
        ("i2", &r.i2),
        ("i3", &r.i3),
        ("norm_p", &r.norm_p),
        ("weighted_lhs", &r.lhs),
    ]
    .into_iter()
    .map(|(q, e)| estimate_row(&r, cfg.s, q, e))
    .collect();
    art.csv(Schema::Estimates, &rows)?;
    Ok(json!({
        "domain": r.domain,
        "field": r.field_label,
        "p": r.p,
        "r_loc": r.r_loc,
        "m": r.m,
        "x0": [r.x0.x, r.x0.y],
        "eta0": r.eta0,
        "i1": est_json(&r.i1),
        "i2": est_json(&r.i2),
        "i2_tail_bound": r.i2_tail_bound,
        "i3": est_json(&r.i3),
        "norm_p": est_json(&r.norm_p),
        "lhs": est_json(&r.lhs),
        "lhs_trend": r.lhs_trend,
        "c_witness": r.c_witness,
        "c_reduction": r.c_reduction,
        "i2_contributing": r.i2_contributing,
        "i2_geometry_violations": r.i2_geometry_violations,
        "i3_contributing": r.i3_contributing,
        "inclusion_violations": r.inclusion_violations,
        "checks_pass": r.checks_pass(),
    }))
}

fn run_scaling(cfg: &RunConfig) -> Result<Value, RunError> {
    let s = &cfg.scaling;
    let phi = s.phi.build().map_err(|e| RunError::Config(e.to_string()))?;
    let grid = ScalingGrid {
        n_s: s.n_s,
        n_t: s.n_t,
        ..ScalingGrid::default()
    };
    let eta = if s.eta > 0.0 { s.eta } else { phi.claimed_eta };
    let wlsc = wlsc_check(&phi, eta, s.h, &grid)?;
    let wusc = wusc_check(&phi, eta, s.h, &grid)?;
    let eta0 = select_eta0(s.eta, s.dim_a, ambient_dim::<f64>())?;
    let psi = psi_extend(&phi, s.m, eta0)?;
    let psi_wusc = wusc_check(&psi, eta0, s.h, &grid)?;
    let asym = psi_lower_asymptotic_check(&psi, s.m, s.r_loc, eta0, s.h, s.n_t)?;
    Ok(json!({
        "eta": eta,
        "h": s.h,
        "wlsc": wlsc,
        "wusc": wusc,
        "eta0": eta0,
        "m": s.m,
        "psi_wusc": psi_wusc,
        "psi_asymptotic": asym,
    }))
}

/// Sizes the global worker pool from [`THREADS_ENV`]; results never
/// depend on it.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Parses `args`, runs and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let cfg = match cli.resolve() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("config error: {msg}");
            return EXIT_CONFIG;
        }
    };
    if cli.dry_run {
        let report = cfg.validate();
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return if report.is_valid() { EXIT_OK } else { EXIT_CONFIG };
    }
    init_threads();
    match run(&cfg) {
        Ok(out) => {
            println!("{}", out.dir.join("summary.json").display());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

/// Reads `manifest.json` from a run directory.
pub fn read_manifest(dir: &Path) -> std::io::Result<Vec<u8>> {
    fs::read(dir.join("manifest.json"))
}

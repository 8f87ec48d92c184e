//! End-to-end run on the Koch snowflake prefractal.

use serde::{Deserialize, Serialize};

use super::cutoff::{cutoff_decay_experiment, CutoffSeries, DEFAULT_N_GRID};
use super::verdict::{density_verdict, verdict_margin, DensityVerdict};
use crate::dimension::{
    assouad_codims_detailed, homogeneity_check, tube_exponent, CodimOptions, DimensionEstimate,
    HomogeneityReport, LocalExponent,
};
use crate::error::Result;
use crate::geometry::tube::TubeMeasurement;
use crate::geometry::{ambient_dim, plumpness_check, Domain, PlumpnessReport};
use crate::sampling::SampleConfig;
use crate::scalar::Real;
use crate::sobolev::SobolevParams;

/// `2 − log 4 / log 3`.
pub fn koch_codimension<F: Real>() -> F {
    F::lit(2.0) - F::lit(4.0).ln() / F::lit(3.0).ln()
}

/// Allowed distance between the estimated and the exact threshold.
pub const THRESHOLD_TOLERANCE: f64 = 0.06;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KochOptions {
    pub level: u32,
    pub tube_r_min: f64,
    pub tube_r_max: f64,
    pub tube_count: usize,
    pub n_grid: Vec<u32>,
    /// Pair samples per cutoff seminorm.
    pub cutoff_samples: usize,
    pub codim: CodimOptions,
    pub kappa: f64,
    /// `(s, p)` pairs classified by the trichotomy.
    pub verdict_points: Vec<(f64, f64)>,
    /// `(s, p)` of the cutoff run below the threshold.
    pub below: (f64, f64),
    /// `(s, p)` of the cutoff run above the threshold.
    pub above: (f64, f64),
}

impl Default for KochOptions {
    fn default() -> Self {
        Self {
            level: 7,
            tube_r_min: 1e-3,
            tube_r_max: 1e-1,
            tube_count: 13,
            n_grid: DEFAULT_N_GRID.to_vec(),
            cutoff_samples: 1_000_000,
            codim: CodimOptions::default(),
            kappa: 0.1,
            verdict_points: vec![(0.3, 1.0), (0.5, 2.0), (0.36, 2.0), (0.73814, 1.0)],
            below: (0.3, 1.0),
            above: (0.6, 2.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KochReport<F> {
    pub level: u32,
    pub expected: F,
    pub codim_lower: DimensionEstimate<F>,
    pub codim_upper: DimensionEstimate<F>,
    pub locals: Vec<LocalExponent<F>>,
    pub tube_exponent: DimensionEstimate<F>,
    pub tube_series: Vec<TubeMeasurement<F>>,
    pub plump: PlumpnessReport<F>,
    pub homogeneity: Vec<HomogeneityReport<F>>,
    pub verdicts: Vec<DensityVerdict<F>>,
    pub cutoff_below: CutoffSeries<F>,
    pub cutoff_above: CutoffSeries<F>,
    /// Midpoint of the two codimension estimates.
    pub threshold_estimate: F,
    pub threshold_ok: bool,
}

pub fn koch_case_study<F: Real>(cfg: &SampleConfig) -> Result<KochReport<F>> {
    koch_case_study_with(&KochOptions::default(), cfg)
}

pub fn koch_case_study_with<F: Real>(opts: &KochOptions, cfg: &SampleConfig) -> Result<KochReport<F>> {
    let domain = Domain::<F>::koch_prefractal(opts.level)?;
    let codims = assouad_codims_detailed(&domain, &cfg.derive("koch-codims"), &opts.codim)?;
    let (tube, series) = tube_exponent(
        &domain,
        F::lit(opts.tube_r_min),
        F::lit(opts.tube_r_max),
        opts.tube_count,
        &cfg.derive("koch-tube"),
    )?;
    let plump = plumpness_check(&domain, F::lit(opts.kappa), &cfg.derive("koch-plump"))?;
    let dims = (codims.lower.clone(), codims.upper.clone());
    let margin = verdict_margin(dims.0.value, dims.1.value);
    let mut homogeneity = Vec::new();
    let mut verdicts = Vec::new();
    for (i, &(s, p)) in opts.verdict_points.iter().enumerate() {
        let params = SobolevParams::new(F::lit(s), F::lit(p))?;
        let sp = params.sp();
        let in_band = sp >= dims.0.value - margin && sp <= dims.1.value + margin;
        let homog = if in_band && params.p > F::one() {
            let sigma = ambient_dim::<F>() - sp;
            homogeneity.push(homogeneity_check(&domain, sigma, &cfg.derive(&format!("koch-homog-{i}")))?);
            homogeneity.last()
        } else {
            None
        };
        verdicts.push(density_verdict(&domain, &params, Some(&dims), Some(&plump), homog)?);
    }
    let cut_cfg = cfg.with_samples(opts.cutoff_samples);
    let below = SobolevParams::new(F::lit(opts.below.0), F::lit(opts.below.1))?;
    let above = SobolevParams::new(F::lit(opts.above.0), F::lit(opts.above.1))?;
    let cutoff_below = cutoff_decay_experiment(&domain, &below, &opts.n_grid, &cut_cfg.derive("koch-cutoff-below"))?;
    let cutoff_above = cutoff_decay_experiment(&domain, &above, &opts.n_grid, &cut_cfg.derive("koch-cutoff-above"))?;
    let expected = koch_codimension::<F>();
    let threshold_estimate = (dims.0.value + dims.1.value) / F::lit(2.0);
    let threshold_ok = (threshold_estimate - expected).abs() <= F::lit(THRESHOLD_TOLERANCE)
        && (dims.0.value - expected).abs() <= F::lit(THRESHOLD_TOLERANCE)
        && (dims.1.value - expected).abs() <= F::lit(THRESHOLD_TOLERANCE);
    Ok(KochReport {
        level: opts.level,
        expected,
        codim_lower: codims.lower,
        codim_upper: codims.upper,
        locals: codims.locals,
        tube_exponent: tube,
        tube_series: series,
        plump,
        homogeneity,
        verdicts,
        cutoff_below,
        cutoff_above,
        threshold_estimate,
        threshold_ok,
    })
}

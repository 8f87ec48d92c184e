//! Minkowski and Assouad exponents of boundaries from tube measurements.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{geometric_grid, linear_fit, loglog_fit, percentile};
use crate::geometry::tube::{
    boundary_tube_ball_volume, grid_cell, inner_tube_series, two_sided_tube_grid, TubeMeasurement,
    TubeMethod,
};
use crate::geometry::{ambient_dim, unit_ball_volume, BoundarySet, Domain, Point2};
use crate::sampling::{derive_seed, SampleConfig, SampleRng};
use crate::scalar::Real;

/// Ratios `λ = R/r` used for localized exponents.
pub const SCALE_RATIOS: [f64; 3] = [4.0, 16.0, 64.0];

/// Ratios used by the homogeneity check.
pub const HOMOGENEITY_RATIOS: [f64; 4] = [1.0, 4.0, 16.0, 64.0];

/// Largest growth slope of `log L_λ` in `log λ` still read as stable.
pub const HOMOGENEITY_SLOPE_TOL: f64 = 0.075;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    MinkowskiUpper,
    AssouadCodimLower,
    AssouadCodimUpper,
    AssouadDimUpper,
    AssouadDimLower,
    /// Exponent of `r ↦ |Ω_r|`.
    TubeExponent,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::MinkowskiUpper => "minkowski_upper",
            Quantity::AssouadCodimLower => "assouad_codim_lower",
            Quantity::AssouadCodimUpper => "assouad_codim_upper",
            Quantity::AssouadDimUpper => "assouad_dim_upper",
            Quantity::AssouadDimLower => "assouad_dim_lower",
            Quantity::TubeExponent => "tube_exponent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate<F> {
    pub domain: String,
    pub quantity: Quantity,
    pub value: F,
    pub stderr: F,
    pub r_min: F,
    pub r_max: F,
    pub fit_r2: F,
    pub spread_min: F,
    pub spread_max: F,
    pub n_centers: usize,
    pub n_scalepairs: usize,
    pub seed: u64,
}

impl<F: Real> DimensionEstimate<F> {
    /// `dim = d − codim`, applied to the value and the spread.
    pub fn dual(&self) -> Self {
        let d = ambient_dim::<F>();
        let quantity = match self.quantity {
            Quantity::AssouadCodimLower => Quantity::AssouadDimUpper,
            Quantity::AssouadCodimUpper => Quantity::AssouadDimLower,
            Quantity::AssouadDimUpper => Quantity::AssouadCodimLower,
            Quantity::AssouadDimLower => Quantity::AssouadCodimUpper,
            q => q,
        };
        Self {
            quantity,
            value: d - self.value,
            spread_min: d - self.spread_max,
            spread_max: d - self.spread_min,
            domain: self.domain.clone(),
            ..*self
        }
    }
}

/// Scale selection for localized exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodimOptions {
    pub centers: usize,
    /// Number of outer radii on the geometric grid.
    pub outer_radii: usize,
    /// Largest outer radius as a fraction of the diameter.
    pub big_r_max_frac: f64,
    /// Smallest outer radius as a fraction of the largest.
    pub big_r_min_frac: f64,
    /// Inner radii stay above this multiple of the boundary resolution.
    pub resolution_factor: f64,
    pub lower_quantile: f64,
    pub upper_quantile: f64,
    pub bootstrap: usize,
}

impl Default for CodimOptions {
    fn default() -> Self {
        Self {
            centers: 200,
            outer_radii: 4,
            big_r_max_frac: 0.25,
            big_r_min_frac: 0.125,
            resolution_factor: 2.0,
            lower_quantile: 0.02,
            upper_quantile: 0.98,
            bootstrap: 200,
        }
    }
}

/// Slope of `log(|Ẽ_r ∩ B(x,R)| / |B(x,R)|)` against `log(r/R)` at one
/// centre and outer radius, over the ratios in [`SCALE_RATIOS`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalExponent<F> {
    pub center: usize,
    pub x: Point2<F>,
    pub big_r: F,
    pub exponent: F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodimResult<F> {
    pub lower: DimensionEstimate<F>,
    pub upper: DimensionEstimate<F>,
    pub locals: Vec<LocalExponent<F>>,
    pub measurements: Vec<TubeMeasurement<F>>,
}

impl<F: Real> CodimResult<F> {
    /// `(assouad_dim_upper, assouad_dim_lower)` by duality.
    pub fn dims(&self) -> (DimensionEstimate<F>, DimensionEstimate<F>) {
        (self.lower.dual(), self.upper.dual())
    }
}

/// Boundary centres, stratified uniformly by arc length.
pub fn boundary_centers<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    n: usize,
    seed: u64,
) -> Vec<Point2<F>> {
    (0..n)
        .map(|i| {
            let mut rng = SampleRng::new(seed, i as u64);
            let u = (F::from_usize_lossy(i) + rng.uniform::<F>()) / F::from_usize_lossy(n);
            set.set_point(u)
        })
        .collect()
}

fn resolution_floor<F: Real, E: BoundarySet<F> + ?Sized>(set: &E, factor: f64) -> F {
    set.resolution() * F::lit(factor)
}

/// Lower and upper Assouad codimension estimates with the per-centre detail.
pub fn assouad_codims_detailed<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    cfg: &SampleConfig,
    opts: &CodimOptions,
) -> Result<CodimResult<F>> {
    let diam = set.set_diameter();
    let lam_max = F::lit(SCALE_RATIOS[SCALE_RATIOS.len() - 1]);
    let big_max = diam * F::lit(opts.big_r_max_frac);
    let big_min = (big_max * F::lit(opts.big_r_min_frac))
        .max(resolution_floor(set, opts.resolution_factor) * lam_max);
    if !(big_min < big_max) || opts.centers == 0 || opts.outer_radii < 2 {
        return Err(Error::Insufficient(format!(
            "no valid scale pairs: outer radii [{big_min}, {big_max}]"
        )));
    }
    let radii = geometric_grid(big_min, big_max, opts.outer_radii);
    let centers = boundary_centers(set, opts.centers, cfg.derive("codim-centers").seed);
    let tasks: Vec<(usize, F)> = (0..centers.len())
        .flat_map(|c| radii.iter().map(move |&r| (c, r)))
        .collect();
    let per_task: Vec<(LocalExponent<F>, Vec<TubeMeasurement<F>>)> = tasks
        .par_iter()
        .map(|&(c, big_r)| {
            let x = centers[c];
            let mut xs = Vec::with_capacity(SCALE_RATIOS.len());
            let mut ys = Vec::with_capacity(SCALE_RATIOS.len());
            let mut ms = Vec::with_capacity(SCALE_RATIOS.len());
            let ball = unit_ball_volume::<F>() * big_r * big_r;
            for lam in SCALE_RATIOS {
                let lam = F::lit(lam);
                let m = boundary_tube_ball_volume(set, x, big_r / lam, big_r, TubeMethod::Grid, cfg)?;
                xs.push(-lam.ln());
                ys.push((m.volume / ball).ln());
                ms.push(m);
            }
            let fit = linear_fit(&xs, &ys)?;
            Ok((
                LocalExponent {
                    center: c,
                    x,
                    big_r,
                    exponent: fit.slope,
                },
                ms,
            ))
        })
        .collect::<Result<_>>()?;
    let mut locals = Vec::with_capacity(per_task.len());
    let mut measurements = Vec::with_capacity(per_task.len() * SCALE_RATIOS.len());
    for (l, ms) in per_task {
        locals.push(l);
        measurements.extend(ms);
    }
    let (lq, uq) = (F::lit(opts.lower_quantile), F::lit(opts.upper_quantile));
    let (lo, hi, spread) = quantile_pair(&locals, lq, uq);
    let (lo_se, hi_se) = bootstrap_stderr(&locals, centers.len(), lq, uq, opts.bootstrap, cfg.seed);
    let r_min = big_min / lam_max;
    let base = DimensionEstimate {
        domain: set.label().to_string(),
        quantity: Quantity::AssouadCodimLower,
        value: lo,
        stderr: lo_se,
        r_min,
        r_max: big_max,
        fit_r2: F::one(),
        spread_min: spread.0,
        spread_max: spread.1,
        n_centers: centers.len(),
        n_scalepairs: radii.len() * SCALE_RATIOS.len(),
        seed: cfg.seed,
    };
    let upper = DimensionEstimate {
        quantity: Quantity::AssouadCodimUpper,
        value: hi,
        stderr: hi_se,
        domain: base.domain.clone(),
        ..base
    };
    Ok(CodimResult {
        lower: base,
        upper,
        locals,
        measurements,
    })
}

/// `(lower, upper)` Assouad codimension estimates.
pub fn assouad_codims<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    cfg: &SampleConfig,
) -> Result<(DimensionEstimate<F>, DimensionEstimate<F>)> {
    let r = assouad_codims_detailed(set, cfg, &CodimOptions::default())?;
    Ok((r.lower, r.upper))
}

fn quantile_pair<F: Real>(locals: &[LocalExponent<F>], lq: F, uq: F) -> (F, F, (F, F)) {
    let mut e: Vec<F> = locals.iter().map(|l| l.exponent).collect();
    e.sort_by(|a, b| a.partial_cmp(b).expect("finite exponent"));
    (
        percentile(&e, lq),
        percentile(&e, uq),
        (e[0], e[e.len() - 1]),
    )
}

/// Standard errors of the two quantiles, resampling whole centres.
fn bootstrap_stderr<F: Real>(
    locals: &[LocalExponent<F>],
    centers: usize,
    lq: F,
    uq: F,
    reps: usize,
    seed: u64,
) -> (F, F) {
    if reps < 2 || centers < 2 {
        return (F::zero(), F::zero());
    }
    let mut by_center: Vec<Vec<F>> = vec![Vec::new(); centers];
    for l in locals {
        by_center[l.center].push(l.exponent);
    }
    let seed = derive_seed(seed, "codim-bootstrap");
    let draws: Vec<(F, F)> = (0..reps)
        .map(|b| {
            let mut rng = SampleRng::new(seed, b as u64);
            let mut e = Vec::with_capacity(locals.len());
            for _ in 0..centers {
                let c = (rng.next_u64() % centers as u64) as usize;
                e.extend_from_slice(&by_center[c]);
            }
            e.sort_by(|a, b| a.partial_cmp(b).expect("finite exponent"));
            (percentile(&e, lq), percentile(&e, uq))
        })
        .collect();
    let sd = |f: &dyn Fn(&(F, F)) -> F| {
        let n = F::from_usize_lossy(draws.len());
        let m = draws.iter().map(f).sum::<F>() / n;
        (draws.iter().map(|d| (f(d) - m) * (f(d) - m)).sum::<F>() / (n - F::one())).sqrt()
    };
    (sd(&|d| d.0), sd(&|d| d.1))
}

/// Radii for global fits: `count` points on `[r_max/50, diam/20]`, kept
/// above twice the boundary resolution.
pub fn default_fit_radii<F: Real, E: BoundarySet<F> + ?Sized>(set: &E, count: usize) -> (F, F, usize) {
    let r_max = set.set_diameter() * F::lit(0.05);
    let r_min = (r_max / F::lit(50.0)).max(resolution_floor(set, 2.5));
    (r_min, r_max, count)
}

/// Upper Minkowski dimension from global two-sided tube areas.
pub fn minkowski_upper<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    cfg: &SampleConfig,
) -> Result<DimensionEstimate<F>> {
    let (lo, hi, n) = default_fit_radii(set, 9);
    minkowski_upper_range(set, lo, hi, n, cfg)
}

/// Upper Minkowski dimension fitted on `count` radii in `[r_min, r_max]`.
pub fn minkowski_upper_range<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    r_min: F,
    r_max: F,
    count: usize,
    cfg: &SampleConfig,
) -> Result<DimensionEstimate<F>> {
    if count < 5 || !(r_min > F::zero() && r_min < r_max) {
        return Err(Error::Insufficient(format!(
            "need at least 5 scales in a nonempty range, got {count} on [{r_min}, {r_max}]"
        )));
    }
    let radii = geometric_grid(r_min, r_max, count);
    let h = grid_cell(r_min, set.set_diameter(), cfg);
    let vols = radii
        .iter()
        .map(|&r| Ok(F::lit(two_sided_tube_grid(set, r, None, h)? as f64) * h * h))
        .collect::<Result<Vec<F>>>()?;
    let fit = loglog_fit(&radii, &vols)?;
    let d = ambient_dim::<F>();
    let local = local_slopes(&radii, &vols);
    Ok(DimensionEstimate {
        domain: set.label().to_string(),
        quantity: Quantity::MinkowskiUpper,
        value: d - fit.slope,
        stderr: fit.slope_stderr,
        r_min,
        r_max,
        fit_r2: fit.r2,
        spread_min: local.iter().map(|s| d - *s).fold(F::infinity(), F::min),
        spread_max: local.iter().map(|s| d - *s).fold(F::neg_infinity(), F::max),
        n_centers: 0,
        n_scalepairs: count,
        seed: cfg.seed,
    })
}

fn local_slopes<F: Real>(xs: &[F], ys: &[F]) -> Vec<F> {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (y[1] / y[0]).ln() / (x[1] / x[0]).ln())
        .collect()
}

/// Exponent of `r ↦ |Ω_r|` on `count` radii in `[r_min, r_max]`.
pub fn tube_exponent<F: Real>(
    domain: &Domain<F>,
    r_min: F,
    r_max: F,
    count: usize,
    cfg: &SampleConfig,
) -> Result<(DimensionEstimate<F>, Vec<TubeMeasurement<F>>)> {
    if count < 5 || !(r_min > F::zero() && r_min < r_max) {
        return Err(Error::Insufficient(format!(
            "need at least 5 scales, got {count} on [{r_min}, {r_max}]"
        )));
    }
    let radii = geometric_grid(r_min, r_max, count);
    let series = inner_tube_series(domain, &radii, cfg)?;
    let vols: Vec<F> = series.iter().map(|m| m.volume).collect();
    let fit = loglog_fit(&radii, &vols)?;
    let local = local_slopes(&radii, &vols);
    Ok((
        DimensionEstimate {
            domain: domain.label().to_string(),
            quantity: Quantity::TubeExponent,
            value: fit.slope,
            stderr: fit.slope_stderr,
            r_min,
            r_max,
            fit_r2: fit.r2,
            spread_min: local.iter().copied().fold(F::infinity(), F::min),
            spread_max: local.iter().copied().fold(F::neg_infinity(), F::max),
            n_centers: 0,
            n_scalepairs: count,
            seed: cfg.seed,
        },
        series,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomogeneitySample<F> {
    pub x: Point2<F>,
    pub lambda: F,
    pub r: F,
    pub v: F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityReport<F> {
    pub domain: String,
    pub sigma: F,
    /// Max of `V / (r^d λ^σ)` over all samples.
    pub l_estimate: F,
    /// `(λ, max over samples with that λ)`.
    pub per_lambda: Vec<(F, F)>,
    /// Slope of `log L_λ` against `log λ` for `λ > 1`.
    pub growth_slope: F,
    pub stable: bool,
    pub samples: Vec<HomogeneitySample<F>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityOptions {
    pub centers: usize,
    pub radii: usize,
    /// Decades spanned by the radii at `λ = 1`.
    pub decades: f64,
    pub resolution_factor: f64,
}

impl Default for HomogeneityOptions {
    fn default() -> Self {
        Self {
            centers: 48,
            radii: 4,
            decades: 1.5,
            resolution_factor: 2.0,
        }
    }
}

/// Records `V(E,x,λ,r) = |Ẽ_r ∩ B(x, λr)|` and the running maximum of
/// `V / (r^d λ^σ)` over sampled centres, ratios and radii.
pub fn homogeneity_check<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    sigma: F,
    cfg: &SampleConfig,
) -> Result<HomogeneityReport<F>> {
    homogeneity_check_with(set, sigma, cfg, &HomogeneityOptions::default())
}

pub fn homogeneity_check_with<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    sigma: F,
    cfg: &SampleConfig,
    opts: &HomogeneityOptions,
) -> Result<HomogeneityReport<F>> {
    if !(sigma >= F::zero()) {
        return Err(Error::InvalidParameter(format!("sigma {sigma} must be nonnegative")));
    }
    let diam = set.set_diameter();
    let r_lo = resolution_floor(set, opts.resolution_factor).max(diam * F::lit(1e-3));
    let centers = boundary_centers(set, opts.centers, cfg.derive("homogeneity-centers").seed);
    let d = ambient_dim::<F>();
    let mut tasks = Vec::new();
    for &lam in &HOMOGENEITY_RATIOS {
        let lam = F::lit(lam);
        let r_hi = (r_lo * F::lit(10f64.powf(opts.decades))).min(diam * F::lit(0.25) / lam);
        let radii = if r_hi > r_lo {
            geometric_grid(r_lo, r_hi, opts.radii)
        } else {
            vec![r_lo]
        };
        for &x in &centers {
            for &r in &radii {
                tasks.push((x, lam, r));
            }
        }
    }
    let samples: Vec<HomogeneitySample<F>> = tasks
        .par_iter()
        .map(|&(x, lam, r)| {
            let h = grid_cell(r, diam, cfg);
            let n = two_sided_tube_grid(set, r, Some((x, lam * r)), h)?;
            Ok(HomogeneitySample {
                x,
                lambda: lam,
                r,
                v: F::lit(n as f64) * h * h,
            })
        })
        .collect::<Result<_>>()?;
    let ratio = |s: &HomogeneitySample<F>| s.v / (s.r.powf(d) * s.lambda.powf(sigma));
    let per_lambda: Vec<(F, F)> = HOMOGENEITY_RATIOS
        .iter()
        .map(|&lam| {
            let lam = F::lit(lam);
            let m = samples
                .iter()
                .filter(|s| s.lambda == lam)
                .map(ratio)
                .fold(F::zero(), F::max);
            (lam, m)
        })
        .collect();
    let l_estimate = samples.iter().map(ratio).fold(F::zero(), F::max);
    let tail: Vec<&(F, F)> = per_lambda.iter().filter(|(l, _)| *l > F::one()).collect();
    let xs: Vec<F> = tail.iter().map(|(l, _)| *l).collect();
    let ys: Vec<F> = tail.iter().map(|(_, v)| *v).collect();
    let growth_slope = loglog_fit(&xs, &ys)?.slope;
    Ok(HomogeneityReport {
        domain: set.label().to_string(),
        sigma,
        l_estimate,
        per_lambda,
        growth_slope,
        stable: growth_slope <= F::lit(HOMOGENEITY_SLOPE_TOL),
        samples,
    })
}

//! Decay of the cutoff seminorms `[v_n]^p` against the tube envelope.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::loglog_fit;
use crate::geometry::tube::inner_tube_series;
use crate::geometry::Domain;
use crate::sampling::SampleConfig;
use crate::scalar::Real;
use crate::sobolev::seminorm::cutoff_seminorm_p;
use crate::sobolev::SobolevParams;

/// Default cutoff indices.
pub const DEFAULT_N_GRID: [u32; 6] = [8, 16, 32, 64, 128, 256];

/// Tube radii `3/n` above this fraction of the diameter are left out of
/// the tube-slope fit.
pub const TUBE_FIT_MAX_FRAC: f64 = 0.1;

/// Number of largest `n` over which the positive floor is taken.
pub const FLOOR_TOP: usize = 3;

/// Smallest scale the prefractal must resolve, as a multiple of its
/// resolution: `resolution ≤ r_min / 10`.
pub const RESOLUTION_RULE_FACTOR: f64 = 10.0;

/// Whether a boundary of the given resolution may be probed down to `r_min`.
pub fn resolution_rule_holds<F: Real>(resolution: F, r_min: F) -> bool {
    resolution * F::lit(RESOLUTION_RULE_FACTOR) <= r_min
}

/// Smallest Koch level whose resolution `3^{−level}` satisfies the rule at `r_min`.
pub fn koch_level_for(r_min: f64) -> u32 {
    let mut level = 0;
    while !resolution_rule_holds(3f64.powi(-(level as i32)), r_min) {
        level += 1;
    }
    level
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffPoint<F> {
    pub n: u32,
    pub seminorm_p: F,
    pub stderr: F,
    pub samples: usize,
    /// `3/n`.
    pub tube_r: F,
    /// `|Ω_{3/n}|`.
    pub tube_volume: F,
    /// `C n^{sp} |Ω_{3/n}|` with the calibrated `C`.
    pub tube_bound: F,
    /// Uncertainty the calibration carries into the bound.
    pub tube_bound_stderr: F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutoffSeries<F> {
    pub domain: String,
    pub s: F,
    pub p: F,
    pub sp: F,
    pub n_grid: Vec<u32>,
    pub points: Vec<CutoffPoint<F>>,
    /// `C` calibrated at the smallest `n`.
    pub c_calibrated: F,
    /// Slope of `log [v_n]^p` against `log n`.
    pub fitted_slope: F,
    pub fitted_slope_stderr: F,
    /// Slope of `log |Ω_{3/n}|` against `log n` over the indices in
    /// `tube_fit_n`.
    pub tube_slope: F,
    pub tube_fit_n: Vec<u32>,
    /// Minimum of `[v_n]^p` over the largest [`FLOOR_TOP`] indices.
    pub positive_floor: F,
    pub positive_floor_stderr: F,
    pub seed: u64,
}

impl<F: Real> CutoffSeries<F> {
    /// Indices `i` with `[v_{n_{i+1}}]^p > [v_{n_i}]^p + k·(combined stderr)`.
    pub fn monotone_violations(&self, k: F) -> Vec<usize> {
        self.points
            .windows(2)
            .enumerate()
            .filter(|(_, w)| {
                let se = w[0].stderr.hypot(w[1].stderr);
                w[1].seminorm_p > w[0].seminorm_p + k * se
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices where `[v_n]^p` exceeds the envelope by more than `k`
    /// combined standard errors.
    pub fn envelope_violations(&self, k: F) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, q)| q.seminorm_p > q.tube_bound + k * q.stderr.hypot(q.tube_bound_stderr))
            .map(|(i, _)| i)
            .collect()
    }

    /// `positive_floor > k · positive_floor_stderr`.
    pub fn floor_exceeds(&self, k: F) -> bool {
        self.positive_floor > k * self.positive_floor_stderr
    }
}

/// `[v_n]^p` for `f = 𝟙_Ω` at every `n`, the single-`C` tube envelope and
/// the fitted slopes.
pub fn cutoff_decay_experiment<F: Real>(
    domain: &Domain<F>,
    params: &SobolevParams<F>,
    n_grid: &[u32],
    cfg: &SampleConfig,
) -> Result<CutoffSeries<F>> {
    params.validate()?;
    if n_grid.len() < 2 || n_grid[0] == 0 || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!(
            "n grid {n_grid:?} must hold at least two strictly increasing positive indices"
        )));
    }
    let n_max = *n_grid.last().expect("nonempty grid");
    let r_min = F::lit(3.0) / F::lit(n_max as f64);
    if !resolution_rule_holds(domain.resolution(), r_min) {
        return Err(Error::ResolutionRule(format!(
            "boundary resolution {} exceeds (3/{n_max})/10 = {}",
            domain.resolution(),
            r_min / F::lit(RESOLUTION_RULE_FACTOR)
        )));
    }
    let radii: Vec<F> = n_grid.iter().rev().map(|&n| F::lit(3.0) / F::lit(n as f64)).collect();
    let mut tubes: Vec<F> = inner_tube_series(domain, &radii, &cfg.derive("cutoff-tube"))?
        .into_iter()
        .map(|m| m.volume)
        .collect();
    tubes.reverse();
    let sp = params.sp();
    let mut semis = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        semis.push(cutoff_seminorm_p(domain, params, n, &cfg.derive(&format!("cutoff-n{n}")))?);
    }
    let factor = |n: u32, vol: F| F::lit(n as f64).powf(sp) * vol;
    let f0 = factor(n_grid[0], tubes[0]);
    if !(f0 > F::zero()) {
        return Err(Error::Degenerate(format!("inner tube of radius 3/{} has zero area", n_grid[0])));
    }
    let c = semis[0].value_p / f0;
    let c_se = semis[0].stderr / f0;
    let points: Vec<CutoffPoint<F>> = n_grid
        .iter()
        .zip(&semis)
        .zip(&tubes)
        .map(|((&n, e), &vol)| CutoffPoint {
            n,
            seminorm_p: e.value_p,
            stderr: e.stderr,
            samples: e.samples,
            tube_r: F::lit(3.0) / F::lit(n as f64),
            tube_volume: vol,
            tube_bound: c * factor(n, vol),
            tube_bound_stderr: if n == n_grid[0] { F::zero() } else { c_se * factor(n, vol) },
        })
        .collect();
    let (fitted_slope, fitted_slope_stderr) = {
        let pos: Vec<&CutoffPoint<F>> = points.iter().filter(|q| q.seminorm_p > F::zero()).collect();
        let xs: Vec<F> = pos.iter().map(|q| F::lit(q.n as f64)).collect();
        let ys: Vec<F> = pos.iter().map(|q| q.seminorm_p).collect();
        match loglog_fit(&xs, &ys) {
            Ok(fit) => (fit.slope, fit.slope_stderr),
            Err(_) => (F::nan(), F::nan()),
        }
    };
    let cap = domain.diameter() * F::lit(TUBE_FIT_MAX_FRAC);
    let mut tube_pts: Vec<&CutoffPoint<F>> = points.iter().filter(|q| q.tube_r <= cap).collect();
    if tube_pts.len() < 3 {
        tube_pts = points.iter().collect();
    }
    let tube_slope = loglog_fit(
        &tube_pts.iter().map(|q| F::lit(q.n as f64)).collect::<Vec<_>>(),
        &tube_pts.iter().map(|q| q.tube_volume).collect::<Vec<_>>(),
    )
    .map(|f| f.slope)
    .unwrap_or(F::nan());
    let top = &points[points.len().saturating_sub(FLOOR_TOP)..];
    let floor = top
        .iter()
        .min_by(|a, b| a.seminorm_p.partial_cmp(&b.seminorm_p).expect("finite estimate"))
        .copied()
        .expect("nonempty grid");
    let tube_fit_n = tube_pts.iter().map(|q| q.n).collect();
    Ok(CutoffSeries {
        domain: domain.label().to_string(),
        s: params.s,
        p: params.p,
        sp,
        n_grid: n_grid.to_vec(),
        tube_fit_n,
        points,
        c_calibrated: c,
        fitted_slope,
        fitted_slope_stderr,
        tube_slope,
        positive_floor: floor.seminorm_p,
        positive_floor_stderr: floor.stderr,
        seed: cfg.seed,
    })
}

//! Sampled certificate search for κ-plumpness.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::domain::Domain;
use super::primitives::Point2;
use crate::error::{Error, Result};
use crate::fit::geometric_grid;
use crate::sampling::{SampleConfig, SampleRng};
use crate::scalar::Real;

/// Candidate directions per `(x, r)`.
pub const PLUMP_DIRECTIONS: usize = 64;

/// Candidate radii per direction, `r·j/16` for `j = 1..=16`.
pub const PLUMP_RADII: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlumpOptions {
    /// Sampled points on the boundary.
    pub boundary_points: usize,
    /// Sampled points in the interior.
    pub interior_points: usize,
    /// Scales on the geometric grid.
    pub scales: usize,
    /// Smallest scale as a fraction of the diameter.
    pub min_scale_frac: f64,
}

impl Default for PlumpOptions {
    fn default() -> Self {
        Self {
            boundary_points: 96,
            interior_points: 32,
            scales: 12,
            min_scale_frac: 1e-4,
        }
    }
}

/// Outcome of the search. A pass certifies plumpness at the sampled
/// points and scales only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlumpnessReport<F> {
    pub domain: String,
    pub kappa: F,
    pub pass: bool,
    /// Smallest `max_z d_Ω(z)/r` over all sampled `(x, r)`.
    pub worst_ratio: F,
    pub witness_x: Point2<F>,
    pub witness_r: F,
    pub checked: usize,
}

pub fn plumpness_check<F: Real>(
    domain: &Domain<F>,
    kappa: F,
    cfg: &SampleConfig,
) -> Result<PlumpnessReport<F>> {
    plumpness_check_with(domain, kappa, cfg, &PlumpOptions::default())
}

pub fn plumpness_check_with<F: Real>(
    domain: &Domain<F>,
    kappa: F,
    cfg: &SampleConfig,
    opts: &PlumpOptions,
) -> Result<PlumpnessReport<F>> {
    if !(kappa > F::zero() && kappa < F::one()) {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} outside (0,1)")));
    }
    let points = sample_points(domain, opts, cfg);
    let diam = domain.diameter();
    // r stays strictly below the diameter
    let r_hi = diam * F::lit(1.0 - 1e-9);
    let radii = geometric_grid(diam * F::lit(opts.min_scale_frac), r_hi, opts.scales.max(2));
    let tasks: Vec<(Point2<F>, F)> = points
        .iter()
        .flat_map(|&x| radii.iter().map(move |&r| (x, r)))
        .collect();
    let ratios: Vec<F> = tasks
        .par_iter()
        .map(|&(x, r)| best_clearance(domain, x, r) / r)
        .collect();
    let (mut worst, mut at) = (F::infinity(), 0);
    for (i, &q) in ratios.iter().enumerate() {
        if q < worst {
            worst = q;
            at = i;
        }
    }
    Ok(PlumpnessReport {
        domain: domain.label().to_string(),
        kappa,
        pass: worst >= kappa,
        worst_ratio: worst,
        witness_x: tasks[at].0,
        witness_r: tasks[at].1,
        checked: tasks.len(),
    })
}

fn sample_points<F: Real>(domain: &Domain<F>, opts: &PlumpOptions, cfg: &SampleConfig) -> Vec<Point2<F>> {
    let seed = cfg.derive("plump-points").seed;
    let mut out: Vec<Point2<F>> = (0..opts.boundary_points)
        .map(|i| {
            let u = (F::from_usize_lossy(i) + SampleRng::new(seed, i as u64).uniform::<F>())
                / F::from_usize_lossy(opts.boundary_points);
            domain.boundary_point(u)
        })
        .collect();
    let b = domain.bbox();
    let mut idx = opts.boundary_points as u64;
    let mut found = 0;
    // rejection sampling with a hard cap so thin domains cannot stall
    while found < opts.interior_points && idx < (opts.boundary_points + 1000 * opts.interior_points.max(1)) as u64 {
        let mut rng = SampleRng::new(seed, idx);
        let x = b.lerp(rng.uniform(), rng.uniform());
        if domain.inside(x) {
            out.push(x);
            found += 1;
        }
        idx += 1;
    }
    out
}

/// Largest `d_Ω(z)` over inside candidates `z ∈ B̄(x, r)`.
fn best_clearance<F: Real>(domain: &Domain<F>, x: Point2<F>, r: F) -> F {
    let mut best = match domain.classify(x) {
        (d, true) => d,
        _ => F::zero(),
    };
    let step = F::lit(2.0) * F::PI() / F::from_usize_lossy(PLUMP_DIRECTIONS);
    for i in 0..PLUMP_DIRECTIONS {
        let dir = Point2::from_polar(F::one(), step * F::from_usize_lossy(i));
        for j in 1..=PLUMP_RADII {
            let rho = r * F::from_usize_lossy(j) / F::from_usize_lossy(PLUMP_RADII);
            let z = x + dir * rho;
            let (d, inside) = domain.classify(z);
            if inside && d > best {
                best = d;
            }
        }
    }
    best
}

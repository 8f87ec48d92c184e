//! Monte Carlo `L^p` norms and Gagliardo seminorms.
//!
//! Pairs are drawn as `x` uniform in the bounding box and `y = x + ρω`
//! with `ω` uniform on the circle and `ρ` log-uniform on `[ρ_min, diam]`.
//! The weight `|box| · |S¹| · ln(diam/ρ_min) · |f(x)−f(y)|^p ρ^{−sp}` is
//! unbiased for the integral over pairs with `|x − y| ≥ ρ_min`; the
//! remaining near-diagonal part is bounded from the field's declared
//! Hölder modulus.

use serde::{Deserialize, Serialize};

use super::field::{cutoff_vn, Regularity, ScalarField};
use super::SobolevParams;
use crate::error::{Error, Result};
use crate::geometry::tube::inner_tube_volume;
use crate::geometry::tube::TubeMethod;
use crate::geometry::{unit_sphere_area, Domain, Point2};
use crate::sampling::{mc_mean, Estimate, SampleConfig};
use crate::scalar::Real;

/// `ρ_min` as a fraction of the domain diameter.
pub const RHO_MIN_FRACTION: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Montecarlo,
    Grid,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Montecarlo => "montecarlo",
            Method::Grid => "grid",
        }
    }
}

/// Integration region: the domain, optionally cut down to the inner tube
/// `{x ∈ Ω : d_Ω(x) ≤ t}`.
#[derive(Debug, Clone, Copy)]
pub struct Region<'a, F> {
    pub domain: &'a Domain<F>,
    pub max_dist: Option<F>,
}

impl<'a, F: Real> Region<'a, F> {
    pub fn whole(domain: &'a Domain<F>) -> Self {
        Self {
            domain,
            max_dist: None,
        }
    }

    pub fn tube(domain: &'a Domain<F>, t: F) -> Self {
        Self {
            domain,
            max_dist: Some(t),
        }
    }

    #[inline]
    pub fn contains(&self, p: Point2<F>) -> bool {
        match self.max_dist {
            None => self.domain.inside(p),
            Some(t) => {
                let (d, inside) = self.domain.classify(p);
                inside && d <= t
            }
        }
    }

    /// Upper bound on the region's area.
    pub fn area_bound(&self) -> F {
        match (self.max_dist, self.domain.area_exact()) {
            (None, Some(a)) => a,
            _ => self.domain.bbox().area(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeminormEstimate<F> {
    pub domain: String,
    pub field_label: String,
    pub s: F,
    pub p: F,
    /// `[f]^p`.
    pub value_p: F,
    pub stderr: F,
    pub samples: usize,
    pub method: Method,
    pub rho_min: F,
    /// Bound on the omitted near-diagonal part; infinite when the field
    /// declares no modulus.
    pub bias_bound: F,
    pub seed: u64,
}

fn finite_eval<F: Real>(f: &ScalarField<F>, p: Point2<F>) -> Result<F> {
    let v = f.eval(p);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(p.x.as_f64(), p.y.as_f64()))
    }
}

/// `∫_Ω |f|^p`.
pub fn lp_norm_p<F: Real>(
    f: &ScalarField<F>,
    domain: &Domain<F>,
    p: F,
    method: Method,
    cfg: &SampleConfig,
) -> Result<Estimate<F>> {
    lp_norm_p_region(f, Region::whole(domain), p, method, cfg)
}

pub fn lp_norm_p_region<F: Real>(
    f: &ScalarField<F>,
    region: Region<'_, F>,
    p: F,
    method: Method,
    cfg: &SampleConfig,
) -> Result<Estimate<F>> {
    if !(p >= F::one()) {
        return Err(Error::InvalidParameter(format!("p = {p} below 1")));
    }
    let b = region.domain.bbox();
    match method {
        Method::Montecarlo => mc_mean(cfg.seed, cfg.samples, |rng, _| {
            let x = b.lerp(rng.uniform(), rng.uniform());
            if region.contains(x) {
                Ok(finite_eval(f, x)?.abs_pow(p))
            } else {
                Ok(F::zero())
            }
        })
        .map(|e| e.scale(b.area())),
        Method::Grid => {
            let h = if cfg.grid_h > 0.0 {
                F::lit(cfg.grid_h)
            } else {
                b.width().max(b.height()) / F::lit(1024.0)
            };
            let nx = (b.width() / h).ceil().to_usize().unwrap_or(1).max(1);
            let ny = (b.height() / h).ceil().to_usize().unwrap_or(1).max(1);
            let mut acc = F::zero();
            for j in 0..ny {
                for i in 0..nx {
                    let x = Point2::new(
                        b.min.x + (F::from_usize_lossy(i) + F::lit(0.5)) * h,
                        b.min.y + (F::from_usize_lossy(j) + F::lit(0.5)) * h,
                    );
                    if region.contains(x) {
                        acc = acc + finite_eval(f, x)?.abs_pow(p);
                    }
                }
            }
            Ok(Estimate {
                value: acc * h * h,
                stderr: F::zero(),
                samples: nx * ny,
            })
        }
    }
}

/// Analytic bound on the pairs with `|x − y| < ρ_min`.
pub fn near_diagonal_bound<F: Real>(
    f: &ScalarField<F>,
    area: F,
    params: &SobolevParams<F>,
    rho_min: F,
) -> F {
    match f.regularity() {
        Regularity::Constant => F::zero(),
        Regularity::Holder { c, alpha } if alpha > params.s => {
            let e = (alpha - params.s) * params.p;
            area * c.abs_pow(params.p) * unit_sphere_area::<F>() * rho_min.powf(e) / e
        }
        _ => F::infinity(),
    }
}

/// `[f]^p_{W^{s,p}(Ω)}` with `ρ_min = diam · 10⁻⁵`.
pub fn gagliardo_seminorm_p<F: Real>(
    f: &ScalarField<F>,
    domain: &Domain<F>,
    params: &SobolevParams<F>,
    cfg: &SampleConfig,
) -> Result<SeminormEstimate<F>> {
    let rho_min = domain.diameter() * F::lit(RHO_MIN_FRACTION);
    gagliardo_seminorm_region(f, Region::whole(domain), params, rho_min, cfg)
}

/// Seminorm over `A × A` for the region `A`.
pub fn gagliardo_seminorm_region<F: Real>(
    f: &ScalarField<F>,
    region: Region<'_, F>,
    params: &SobolevParams<F>,
    rho_min: F,
    cfg: &SampleConfig,
) -> Result<SeminormEstimate<F>> {
    params.validate()?;
    let domain = region.domain;
    let diam = domain.diameter();
    if !(rho_min > F::zero() && rho_min < diam) {
        return Err(Error::InvalidParameter(format!(
            "rho_min = {rho_min} must lie in (0, diam = {diam})"
        )));
    }
    let b = domain.bbox();
    let log_span = (diam / rho_min).ln();
    let scale = b.area() * unit_sphere_area::<F>() * log_span;
    let (p, sp) = (params.p, params.sp());
    let two_pi = F::lit(2.0) * F::PI();
    let est = mc_mean(cfg.seed, cfg.samples, |rng, _| {
        let x = b.lerp(rng.uniform(), rng.uniform());
        let rho = rho_min * (log_span * rng.uniform::<F>()).exp();
        let theta = two_pi * rng.uniform::<F>();
        if !region.contains(x) {
            return Ok(F::zero());
        }
        let y = x + Point2::from_polar(rho, theta);
        if !region.contains(y) {
            return Ok(F::zero());
        }
        let diff = finite_eval(f, x)? - finite_eval(f, y)?;
        if diff == F::zero() {
            return Ok(F::zero());
        }
        Ok(scale * diff.abs_pow(p) * rho.powf(-sp))
    })?;
    Ok(SeminormEstimate {
        domain: domain.label().to_string(),
        field_label: f.label().to_string(),
        s: params.s,
        p: params.p,
        value_p: est.value,
        stderr: est.stderr,
        samples: est.samples,
        method: Method::Montecarlo,
        rho_min,
        bias_bound: near_diagonal_bound(f, region.area_bound(), params, rho_min),
        seed: cfg.seed,
    })
}

/// The three quantities of the cutoff inequality at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Report<F> {
    pub n: u32,
    /// `[f v_n]^p` over `Ω`.
    pub lhs: Estimate<F>,
    /// `n^{sp} ∫_{Ω_{3/n}} |f|^p`.
    pub term_mass: Estimate<F>,
    /// `[f]^p` over `Ω_{3/n} × Ω_{3/n}`.
    pub term_semi: Estimate<F>,
    /// `|Ω_{3/n}|` on the grid.
    pub tube_volume: F,
    /// `lhs / (term_mass + term_semi)`.
    pub implied_c: F,
}

pub fn lemma1_check<F: Real>(
    f: &ScalarField<F>,
    domain: &Domain<F>,
    params: &SobolevParams<F>,
    n: u32,
    cfg: &SampleConfig,
) -> Result<Lemma1Report<F>> {
    params.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("cutoff index must be at least 1".into()));
    }
    let t = F::lit(3.0) / F::lit(n as f64);
    if !(t < domain.diameter()) {
        return Err(Error::InvalidParameter(format!(
            "3/n = {t} must be below the diameter"
        )));
    }
    let tube = inner_tube_volume(domain, t, TubeMethod::Grid, cfg)?;
    if tube.volume == F::zero() {
        return Err(Error::Degenerate(format!("inner tube of radius {t} has zero area")));
    }
    let rho_min = domain.diameter() * F::lit(RHO_MIN_FRACTION);
    let fv = f.times_cutoff(domain, n);
    let lhs = gagliardo_seminorm_region(&fv, Region::whole(domain), params, rho_min, &cfg.derive("lemma1-lhs"))?;
    let mass = lp_norm_p_region(f, Region::tube(domain, t), params.p, Method::Montecarlo, &cfg.derive("lemma1-mass"))?
        .scale(F::lit(n as f64).powf(params.sp()));
    let semi = gagliardo_seminorm_region(f, Region::tube(domain, t), params, rho_min, &cfg.derive("lemma1-semi"))?;
    let lhs = Estimate {
        value: lhs.value_p,
        stderr: lhs.stderr,
        samples: lhs.samples,
    };
    let term_semi = Estimate {
        value: semi.value_p,
        stderr: semi.stderr,
        samples: semi.samples,
    };
    let denom = mass.value + term_semi.value;
    let implied_c = if denom > F::zero() {
        lhs.value / denom
    } else if lhs.value == F::zero() {
        F::zero()
    } else {
        F::infinity()
    };
    Ok(Lemma1Report {
        n,
        lhs,
        term_mass: mass,
        term_semi,
        tube_volume: tube.volume,
        implied_c,
    })
}

/// `[v_n]^p` estimate helper used by the cutoff experiments.
pub fn cutoff_seminorm_p<F: Real>(
    domain: &Domain<F>,
    params: &SobolevParams<F>,
    n: u32,
    cfg: &SampleConfig,
) -> Result<SeminormEstimate<F>> {
    let v = ScalarField::cutoff(domain, n);
    gagliardo_seminorm_p(&v, domain, params, cfg)
}

/// Largest `|v_n(x) − v_n(y)| − min{1, n|x−y|}` over given pairs (≤ 0
/// when the cutoff modulus holds).
pub fn cutoff_modulus_excess<F: Real>(
    domain: &Domain<F>,
    n: u32,
    pairs: &[(Point2<F>, Point2<F>)],
) -> F {
    let nf = F::lit(n as f64);
    pairs
        .iter()
        .map(|&(x, y)| {
            let dv = (cutoff_vn(n, domain.dist_boundary(x)) - cutoff_vn(n, domain.dist_boundary(y))).abs();
            dv - (nf * x.dist(y)).min(F::one())
        })
        .fold(F::neg_infinity(), F::max)
}

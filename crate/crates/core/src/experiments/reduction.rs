//! The bounded-to-unbounded reduction of the weak Hardy inequality.
//!
//! With `G = Ω ∪ Ω₁`, `Ω₁ = ℝ² \ B̄(x0, 2M)` and `u` extended by zero, the
//! Hardy inequality on `G` splits into `I₁` (pairs in `Ω × Ω`), `I₂`
//! (`x ∈ Ω₁`, `y ∈ Ω`) and `I₃` (`x ∈ Ω`, `y ∈ Ω₁`).

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::dimension::assouad_codims;
use crate::error::{Error, Result};
use crate::geometry::{ambient_dim, disk_overlap_area, unit_sphere_area, Domain, Point2};
use crate::sampling::{mc_mean, Estimate, SampleConfig};
use crate::scalar::Real;
use crate::scaling::{psi_extend, select_eta0, ScalingFunction};
use crate::sobolev::seminorm::lp_norm_p;
use crate::sobolev::{hardy_lhs, hardy_rhs_localized, Method, ScalarField, ShellTrend, SobolevParams};

/// Largest localization factor for which the working box of half-width
/// `8M` contains every localization ball.
pub const MAX_R_LOC: f64 = 7.0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReductionOptions<F> {
    /// Centre of the excluded ball; defaults to the deepest interior point.
    pub x0: Option<Point2<F>>,
    /// Upper Assouad dimension of `∂Ω`, needed when `η ≤ 0`; estimated
    /// when absent.
    pub dim_a: Option<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyReductionReport<F> {
    pub domain: String,
    pub field_label: String,
    pub p: F,
    pub r_loc: F,
    pub m: F,
    pub x0: Point2<F>,
    pub eta0: F,
    pub i1: Estimate<F>,
    pub i2: Estimate<F>,
    /// Bound on the part of `I₂` outside the working box.
    pub i2_tail_bound: F,
    pub i3: Estimate<F>,
    /// `‖u‖_p^p`.
    pub norm_p: Estimate<F>,
    /// `∫_Ω |u|^p / φ(d_Ω)`.
    pub lhs: Estimate<F>,
    pub lhs_trend: ShellTrend,
    /// `lhs / (I₁ + ‖u‖_p^p)`: the constant the weak inequality needs for this `u`.
    pub c_witness: F,
    /// `lhs / (I₁ + I₂ + I₃)`: the constant the inequality on `G` needs.
    pub c_reduction: F,
    /// Samples with `x ∈ Ω₁` contributing to `I₂`.
    pub i2_contributing: u64,
    /// Of those, samples with `d_G(x) < M/R`.
    pub i2_geometry_violations: u64,
    /// Samples with `x ∈ Ω` whose ball meets `Ω₁`.
    pub i3_contributing: u64,
    /// Of those, balls not inside `B(x0, M(1+R))`.
    pub inclusion_violations: u64,
    pub seed: u64,
}

impl<F: Real> HardyReductionReport<F> {
    pub fn checks_pass(&self) -> bool {
        self.i2_geometry_violations == 0 && self.inclusion_violations == 0
    }
}

fn ratio<F: Real>(num: F, den: F) -> F {
    if den > F::zero() {
        num / den
    } else if num == F::zero() {
        F::zero()
    } else {
        F::infinity()
    }
}

pub fn hardy_reduction_experiment<F: Real>(
    domain: &Domain<F>,
    u: &ScalarField<F>,
    phi: &ScalingFunction<F>,
    r_loc: F,
    params: &SobolevParams<F>,
    opts: &ReductionOptions<F>,
    cfg: &SampleConfig,
) -> Result<HardyReductionReport<F>> {
    params.validate()?;
    if !(r_loc > F::zero() && r_loc <= F::lit(MAX_R_LOC)) {
        return Err(Error::InvalidParameter(format!(
            "localization factor R = {r_loc} outside (0, {MAX_R_LOC}]"
        )));
    }
    let p = params.p;
    let d = ambient_dim::<F>();
    let x0 = opts.x0.unwrap_or_else(|| domain.deepest_point().0);
    let g = Domain::reduction(domain, x0)?;
    let red = g.reduction_parts().expect("reduction domain");
    let m = red.m;
    let eta0 = if phi.claimed_eta > F::zero() {
        phi.claimed_eta
    } else {
        let dim_a = match opts.dim_a {
            Some(v) => v,
            None => d - assouad_codims(domain, &cfg.derive("reduction-codims"))?.0.value,
        };
        select_eta0(phi.claimed_eta, dim_a, d)?
    };
    let psi = psi_extend(phi, m, eta0)?;

    let lhs = hardy_lhs(u, domain, phi, p, &cfg.derive("reduction-lhs"))?;
    let i1 = hardy_rhs_localized(u, domain, phi, r_loc, p, &cfg.derive("reduction-i1"))?;
    let norm_p = lp_norm_p(u, domain, p, Method::Montecarlo, &cfg.derive("reduction-norm"))?;

    let inner_box = domain.bbox();
    let outer_box = g.bbox();
    let floor = m / r_loc;
    let i2_hits = AtomicU64::new(0);
    let i2_bad = AtomicU64::new(0);
    let i2 = mc_mean(cfg.derive("reduction-i2").seed, cfg.samples, |rng, _| {
        let x = outer_box.lerp(rng.uniform(), rng.uniform());
        let y = inner_box.lerp(rng.uniform(), rng.uniform());
        if x.dist(x0) <= red.outer_radius || !domain.inside(y) {
            return Ok(F::zero());
        }
        let dg = g.dist_boundary(x);
        if !(x.dist(y) < r_loc * dg) {
            return Ok(F::zero());
        }
        i2_hits.fetch_add(1, Ordering::Relaxed);
        if dg < floor {
            i2_bad.fetch_add(1, Ordering::Relaxed);
        }
        let v = u.eval(y);
        if !v.is_finite() {
            return Err(Error::NonFinite(y.x.as_f64(), y.y.as_f64()));
        }
        Ok(v.abs_pow(p) / (psi.eval_checked(dg)? * dg.powf(d)))
    })?
    .scale(outer_box.area() * inner_box.area());

    let lim = m * (F::one() + r_loc);
    let tol = m * F::lit(1e-12);
    let i3_hits = AtomicU64::new(0);
    let i3_bad = AtomicU64::new(0);
    let i3 = mc_mean(cfg.derive("reduction-i3").seed, cfg.samples, |rng, _| {
        let x = inner_box.lerp(rng.uniform(), rng.uniform());
        if !domain.inside(x) {
            return Ok(F::zero());
        }
        let dg = g.dist_boundary(x);
        let rho = r_loc * dg;
        let c = x.dist(x0);
        let outside = F::PI() * rho * rho - disk_overlap_area(rho, red.outer_radius, c);
        if !(outside > F::zero()) {
            return Ok(F::zero());
        }
        i3_hits.fetch_add(1, Ordering::Relaxed);
        if c + rho > lim + tol {
            i3_bad.fetch_add(1, Ordering::Relaxed);
        }
        let v = u.eval(x);
        if !v.is_finite() {
            return Err(Error::NonFinite(x.x.as_f64(), x.y.as_f64()));
        }
        Ok(v.abs_pow(p) * outside / (psi.eval_checked(dg)? * dg.powf(d)))
    })?
    .scale(inner_box.area());

    // x beyond the working box has d_G ≥ 6M and ψ(d_G) = φ(M)(d_G/M)^{η₀}
    let six_m = F::lit(6.0) * m;
    let i2_tail_bound = unit_sphere_area::<F>() * m.powf(eta0) / phi.eval_checked(m)?
        * norm_p.value
        * (six_m.powf(-eta0) / eta0
            + F::lit(2.0) * m * six_m.powf(-F::one() - eta0) / (F::one() + eta0));

    let lhs_est = Estimate {
        value: lhs.value,
        stderr: lhs.stderr,
        samples: lhs.samples,
    };
    Ok(HardyReductionReport {
        domain: domain.label().to_string(),
        field_label: u.label().to_string(),
        p,
        r_loc,
        m,
        x0,
        eta0,
        c_witness: ratio(lhs.value, i1.value + norm_p.value),
        c_reduction: ratio(lhs.value, i1.value + i2.value + i3.value),
        i1,
        i2,
        i2_tail_bound,
        i3,
        norm_p,
        lhs: lhs_est,
        lhs_trend: lhs.trend,
        i2_contributing: i2_hits.into_inner(),
        i2_geometry_violations: i2_bad.into_inner(),
        i3_contributing: i3_hits.into_inner(),
        inclusion_violations: i3_bad.into_inner(),
        seed: cfg.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_disk() {
        let disk = Domain::<f64>::unit_disk();
        let u = ScalarField::constant(1.0);
        let phi = ScalingFunction::power(0.5);
        let params = SobolevParams::new(0.25, 2.0).unwrap();
        let rep = hardy_reduction_experiment(
            &disk,
            &u,
            &phi,
            2.0,
            &params,
            &ReductionOptions::default(),
            &SampleConfig::with_seed(5, 41_000),
        )
        .unwrap();
        assert_eq!(rep.i1.value, 0.0);
        assert!(rep.i2.value > 0.0 && rep.i2.value.is_finite());
        // the ball B(x, 2 d) never leaves B(0, 4) for |x| < 1
        assert_eq!(rep.i3.value, 0.0);
        assert!(rep.c_witness.is_finite() && rep.c_witness > 0.0);
        assert!(rep.checks_pass());
        assert!(rep.i2_contributing > 0);
        // ∫ (1 − ρ)^{−1/2} over the unit disk = 8π/3
        let exact = 8.0 * std::f64::consts::PI / 3.0;
        assert!((rep.lhs.value - exact).abs() < 0.05 * exact, "{}", rep.lhs.value);
    }

    #[test]
    fn i3_nonzero_for_large_localization() {
        let disk = Domain::<f64>::unit_disk();
        let u = ScalarField::constant(1.0);
        let phi = ScalingFunction::power(0.5);
        let params = SobolevParams::new(0.25, 2.0).unwrap();
        let rep = hardy_reduction_experiment(
            &disk,
            &u,
            &phi,
            6.0,
            &params,
            &ReductionOptions::default(),
            &SampleConfig::with_seed(6, 20_500),
        )
        .unwrap();
        assert!(rep.i3.value > 0.0);
        assert!(rep.i3_contributing > 0);
        assert_eq!(rep.inclusion_violations, 0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let disk = Domain::<f64>::unit_disk();
        let u = ScalarField::constant(1.0);
        let params = SobolevParams::new(0.25, 2.0).unwrap();
        let cfg = SampleConfig::with_seed(1, 1000);
        let o = ReductionOptions::default();
        let phi = ScalingFunction::power(0.5);
        assert!(hardy_reduction_experiment(&disk, &u, &phi, 8.0, &params, &o, &cfg).is_err());
        let outside = ReductionOptions {
            x0: Some(Point2::new(3.0, 0.0)),
            dim_a: None,
        };
        assert!(matches!(
            hardy_reduction_experiment(&disk, &u, &phi, 2.0, &params, &outside, &cfg),
            Err(Error::NotInside(..))
        ));
        let neg = ScalingFunction::scaled_power(-1.0, 0.5);
        assert!(matches!(
            hardy_reduction_experiment(&disk, &u, &neg, 2.0, &params, &o, &cfg),
            Err(Error::NonPositive(_))
        ));
    }
}

//! Boundary-weighted integrals by stratification in dyadic distance shells.
//!
//! Shell `k` is `{x ∈ Ω : 2^{−k−1}δ₀ < d_Ω(x) ≤ 2^{−k}δ₀}` with `δ₀` the
//! inradius estimate; the core `{d_Ω > δ₀}` is sampled uniformly. Deep
//! shells draw a boundary point `b` uniformly by arc length and `x`
//! uniformly in `B(b, 2ρ_k)`, whose density at `x` is
//! `ℓ(x) / (L · π(2ρ_k)²)` with `ℓ(x)` the boundary length within `2ρ_k`.

use serde::{Deserialize, Serialize};

use super::field::ScalarField;
use super::SobolevParams;
use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::geometry::{ambient_dim, Domain, Point2};
use crate::sampling::{mc_mean, Estimate, SampleConfig};
use crate::scalar::Real;
use crate::scaling::ScalingFunction;

pub const HARDY_SHELLS: usize = 40;

/// Trailing shells inspected by the divergence test.
pub const DIVERGENCE_WINDOW: usize = 8;

/// `log₂` slopes at or below this read as geometric decay.
pub const DECAY_SLOPE: f64 = -0.1;

/// `log₂` slopes at or above this read as divergence.
pub const DIVERGE_SLOPE: f64 = -0.02;

/// Shells with `ρ_k` above this fraction of the diameter are sampled
/// uniformly from the bounding box.
const UNIFORM_SHELL_FRACTION: f64 = 1.0 / 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellTrend {
    Decaying,
    Borderline,
    Diverging,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellContribution<F> {
    pub shell: usize,
    pub d_lo: F,
    pub d_hi: F,
    pub contribution: F,
    pub stderr: F,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellIntegral<F> {
    /// Core plus all shells.
    pub value: F,
    pub stderr: F,
    pub samples: usize,
    pub delta0: F,
    pub core: Estimate<F>,
    pub shells: Vec<ShellContribution<F>>,
    /// Slope of `log₂` contribution against the shell index over the
    /// trailing window.
    pub tail_slope: F,
    pub trend: ShellTrend,
    /// Extrapolated mass beyond the last shell; infinite unless decaying.
    pub tail_bound: F,
}

/// `∫_Ω w(x, d_Ω(x)) dx` for a nonnegative weight blowing up at `∂Ω`.
pub fn shell_integral<F, W>(domain: &Domain<F>, weight: W, cfg: &SampleConfig) -> Result<ShellIntegral<F>>
where
    F: Real,
    W: Fn(Point2<F>, F) -> Result<F> + Sync,
{
    let delta0 = domain.inradius_estimate();
    let per = (cfg.samples / (HARDY_SHELLS + 1)).max(1);
    let b = domain.bbox();
    let core = mc_mean(cfg.derive("hardy-core").seed, per, |rng, _| {
        let x = b.lerp(rng.uniform(), rng.uniform());
        let (d, inside) = domain.classify(x);
        if inside && d > delta0 {
            weight(x, d)
        } else {
            Ok(F::zero())
        }
    })?
    .scale(b.area());
    let total_len = domain.boundary_length();
    let mut shells = Vec::with_capacity(HARDY_SHELLS);
    for k in 0..HARDY_SHELLS {
        let hi = delta0 * F::lit(0.5f64.powi(k as i32));
        let lo = hi * F::lit(0.5);
        let seed = cfg.derive(&format!("hardy-shell-{k}")).seed;
        let est = if hi > domain.diameter() * F::lit(UNIFORM_SHELL_FRACTION) {
            mc_mean(seed, per, |rng, _| {
                let x = b.lerp(rng.uniform(), rng.uniform());
                let (d, inside) = domain.classify(x);
                if inside && d > lo && d <= hi {
                    weight(x, d)
                } else {
                    Ok(F::zero())
                }
            })?
            .scale(b.area())
        } else {
            let ball = hi * F::lit(2.0);
            let norm = total_len * F::PI() * ball * ball;
            mc_mean(seed, per, |rng, _| {
                let bp = domain.boundary_point(rng.uniform());
                let r = ball * rng.uniform::<F>().sqrt();
                let x = bp + Point2::from_polar(r, F::lit(2.0) * F::PI() * rng.uniform::<F>());
                let (d, inside) = domain.classify(x);
                if !(inside && d > lo && d <= hi) {
                    return Ok(F::zero());
                }
                let ell = domain.boundary_length_within(x, ball);
                if !(ell > F::zero()) {
                    return Ok(F::zero());
                }
                Ok(weight(x, d)? * norm / ell)
            })?
        };
        shells.push(ShellContribution {
            shell: k,
            d_lo: lo,
            d_hi: hi,
            contribution: est.value,
            stderr: est.stderr,
            samples: est.samples,
        });
    }
    let (tail_slope, trend) = classify_tail(&shells);
    let last = shells[HARDY_SHELLS - 1].contribution;
    let tail_bound = match trend {
        ShellTrend::Decaying if last == F::zero() => F::zero(),
        ShellTrend::Decaying => {
            let q = F::lit(2.0).powf(tail_slope);
            last * q / (F::one() - q)
        }
        _ => F::infinity(),
    };
    let value = core.value + shells.iter().map(|s| s.contribution).sum::<F>();
    let stderr = (core.stderr * core.stderr
        + shells.iter().map(|s| s.stderr * s.stderr).sum::<F>())
    .sqrt();
    Ok(ShellIntegral {
        value,
        stderr,
        samples: per * (HARDY_SHELLS + 1),
        delta0,
        core,
        shells,
        tail_slope,
        trend,
        tail_bound,
    })
}

fn classify_tail<F: Real>(shells: &[ShellContribution<F>]) -> (F, ShellTrend) {
    let window = &shells[shells.len() - DIVERGENCE_WINDOW..];
    let pts: Vec<(F, F)> = window
        .iter()
        .filter(|s| s.contribution > F::zero())
        .map(|s| (F::from_usize_lossy(s.shell), s.contribution.log2()))
        .collect();
    if pts.len() < 2 {
        // vanishing trailing shells
        return (F::neg_infinity(), ShellTrend::Decaying);
    }
    let xs: Vec<F> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<F> = pts.iter().map(|p| p.1).collect();
    let slope = linear_fit(&xs, &ys).map(|f| f.slope).unwrap_or(F::zero());
    let trend = if slope <= F::lit(DECAY_SLOPE) {
        ShellTrend::Decaying
    } else if slope >= F::lit(DIVERGE_SLOPE) {
        ShellTrend::Diverging
    } else {
        ShellTrend::Borderline
    };
    (slope, trend)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyEstimate<F> {
    pub domain: String,
    pub field_label: String,
    pub s: F,
    pub p: F,
    pub value: F,
    pub stderr: F,
    pub samples: usize,
    pub diverged: bool,
    pub trend: ShellTrend,
    /// Extrapolated mass below the deepest shell.
    pub bias_bound: F,
    pub shells: Vec<ShellContribution<F>>,
    pub seed: u64,
}

/// `∫_Ω |f|^p d_Ω^{−sp}` with a divergence flag.
pub fn hardy_quotient<F: Real>(
    f: &ScalarField<F>,
    domain: &Domain<F>,
    params: &SobolevParams<F>,
    cfg: &SampleConfig,
) -> Result<HardyEstimate<F>> {
    params.validate()?;
    let (p, sp) = (params.p, params.sp());
    let integral = shell_integral(
        domain,
        |x, d| {
            let v = f.eval(x);
            if !v.is_finite() {
                return Err(Error::NonFinite(x.x.as_f64(), x.y.as_f64()));
            }
            Ok(v.abs_pow(p) * d.powf(-sp))
        },
        cfg,
    )?;
    Ok(HardyEstimate {
        domain: domain.label().to_string(),
        field_label: f.label().to_string(),
        s: params.s,
        p: params.p,
        value: integral.value,
        stderr: integral.stderr,
        samples: integral.samples,
        diverged: integral.trend == ShellTrend::Diverging,
        trend: integral.trend,
        bias_bound: integral.tail_bound,
        shells: integral.shells,
        seed: cfg.seed,
    })
}

/// `∫_Ω |u|^p / φ(d_Ω)`.
pub fn hardy_lhs<F: Real>(
    u: &ScalarField<F>,
    domain: &Domain<F>,
    phi: &ScalingFunction<F>,
    p: F,
    cfg: &SampleConfig,
) -> Result<ShellIntegral<F>> {
    shell_integral(
        domain,
        |x, d| {
            let v = u.eval(x);
            if !v.is_finite() {
                return Err(Error::NonFinite(x.x.as_f64(), x.y.as_f64()));
            }
            if v == F::zero() {
                return Ok(F::zero());
            }
            Ok(v.abs_pow(p) / phi.eval_checked(d)?)
        },
        cfg,
    )
}

/// `∫_Ω ∫_{Ω ∩ B(x, R d_Ω(x))} |u(x) − u(y)|^p / (φ(d_Ω(x)) d_Ω(x)^d) dy dx`.
pub fn hardy_rhs_localized<F: Real>(
    u: &ScalarField<F>,
    domain: &Domain<F>,
    phi: &ScalingFunction<F>,
    r_loc: F,
    p: F,
    cfg: &SampleConfig,
) -> Result<Estimate<F>> {
    if !(r_loc > F::zero()) {
        return Err(Error::InvalidParameter(format!("R = {r_loc} must be positive")));
    }
    let b = domain.bbox();
    let dim = ambient_dim::<F>();
    mc_mean(cfg.seed, cfg.samples, |rng, _| {
        let x = b.lerp(rng.uniform(), rng.uniform());
        let rad = r_loc * rng.uniform::<F>().sqrt();
        let theta = F::lit(2.0) * F::PI() * rng.uniform::<F>();
        let (d, inside) = domain.classify(x);
        if !inside || d == F::zero() {
            return Ok(F::zero());
        }
        let ball = r_loc * d;
        let y = x + Point2::from_polar(rad * d, theta);
        if !domain.inside(y) {
            return Ok(F::zero());
        }
        let diff = u.eval(x) - u.eval(y);
        if !diff.is_finite() {
            return Err(Error::NonFinite(x.x.as_f64(), x.y.as_f64()));
        }
        if diff == F::zero() {
            return Ok(F::zero());
        }
        let phi_d = phi.eval_checked(d)?;
        Ok(F::PI() * ball * ball * diff.abs_pow(p) / (phi_d * d.powf(dim)))
    })
    .map(|e| e.scale(b.area()))
}

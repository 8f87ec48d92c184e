//! Weak lower/upper scaling conditions and the extension `ψ` of `φ`.
//!
//! A check verifies `φ(st) ≥ H t^η φ(s)` on a finite log-grid of `(s, t)`;
//! a pass is a certificate at the grid points only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::geometric_grid;
use crate::scalar::Real;

/// Relative slack allowed by the grid checks.
pub const SCALING_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingKind {
    Power,
    Tabulated,
    Extended,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum Repr<F> {
    Power { exponent: F, scale: F },
    /// Piecewise power law through `(t_i, v_i)`, extended beyond the ends
    /// with the slopes of the end segments.
    Tabulated { log_t: Vec<F>, log_v: Vec<F> },
    Extended { base: Box<ScalingFunction<F>>, m: F, phi_m: F, eta0: F },
}

/// Positive function on `(0, ∞)` with claimed scaling parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFunction<F> {
    pub label: String,
    pub claimed_eta: F,
    pub claimed_h: F,
    repr: Repr<F>,
}

impl<F: Real> ScalingFunction<F> {
    /// `φ(t) = t^a` with claimed `η = a`, `H = 1`.
    pub fn power(exponent: F) -> Self {
        Self::scaled_power(F::one(), exponent)
    }

    /// `φ(t) = c·t^a`.
    pub fn scaled_power(scale: F, exponent: F) -> Self {
        Self {
            label: format!("{scale}*t^{exponent}"),
            claimed_eta: exponent,
            claimed_h: F::one(),
            repr: Repr::Power { exponent, scale },
        }
    }

    /// Log-log linear interpolation through positive breakpoints.
    pub fn tabulated(ts: &[F], values: &[F], claimed_eta: F, claimed_h: F) -> Result<Self> {
        if ts.len() < 2 || ts.len() != values.len() {
            return Err(Error::InvalidParameter(
                "tabulated scaling needs at least two matching breakpoints".into(),
            ));
        }
        if ts.windows(2).any(|w| !(w[0] < w[1])) || ts[0] <= F::zero() {
            return Err(Error::InvalidParameter(
                "breakpoints must be positive and increasing".into(),
            ));
        }
        if let Some(v) = values.iter().find(|v| !(**v > F::zero())) {
            return Err(Error::NonPositive(v.as_f64()));
        }
        check_h(claimed_h)?;
        Ok(Self {
            label: "tabulated".into(),
            claimed_eta,
            claimed_h,
            repr: Repr::Tabulated {
                log_t: ts.iter().map(|t| t.ln()).collect(),
                log_v: values.iter().map(|v| v.ln()).collect(),
            },
        })
    }

    pub fn kind(&self) -> ScalingKind {
        match self.repr {
            Repr::Power { .. } => ScalingKind::Power,
            Repr::Tabulated { .. } => ScalingKind::Tabulated,
            Repr::Extended { .. } => ScalingKind::Extended,
        }
    }

    /// Breakpoint `T` of an extended function.
    pub fn breakpoint(&self) -> Option<F> {
        match self.repr {
            Repr::Extended { m, .. } => Some(m),
            _ => None,
        }
    }

    pub fn eta0(&self) -> Option<F> {
        match self.repr {
            Repr::Extended { eta0, .. } => Some(eta0),
            _ => None,
        }
    }

    pub fn eval(&self, t: F) -> F {
        match &self.repr {
            Repr::Power { exponent, scale } => *scale * t.powf(*exponent),
            Repr::Tabulated { log_t, log_v } => {
                let x = t.ln();
                let n = log_t.len();
                let i = match log_t.iter().position(|&b| b > x) {
                    Some(0) => 0,
                    Some(i) => i - 1,
                    None => n - 2,
                }
                .min(n - 2);
                let slope = (log_v[i + 1] - log_v[i]) / (log_t[i + 1] - log_t[i]);
                (log_v[i] + slope * (x - log_t[i])).exp()
            }
            Repr::Extended { base, m, phi_m, eta0 } => {
                if t <= *m {
                    base.eval(t)
                } else {
                    *phi_m * (t / *m).powf(*eta0)
                }
            }
        }
    }

    /// Evaluates and rejects nonpositive or non-finite values.
    pub fn eval_checked(&self, t: F) -> Result<F> {
        let v = self.eval(t);
        if v > F::zero() && v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonPositive(t.as_f64()))
        }
    }

    /// Positivity on `n` log-spaced points of `[lo, hi]`.
    pub fn check_positive(&self, lo: F, hi: F, n: usize) -> Result<()> {
        geometric_grid(lo, hi, n)
            .into_iter()
            .try_for_each(|t| self.eval_checked(t).map(|_| ()))
    }
}

fn check_h<F: Real>(h: F) -> Result<()> {
    if h > F::zero() && h <= F::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("H = {h} outside (0, 1]")))
    }
}

/// Log-grid for the `(s, t)` checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingGrid {
    pub n_s: usize,
    pub n_t: usize,
    pub s_min: f64,
    pub s_max: f64,
    /// `t` spans `[1, t_span]` for WLSC and `[1/t_span, 1]` for WUSC.
    pub t_span: f64,
}

impl Default for ScalingGrid {
    fn default() -> Self {
        Self {
            n_s: 1000,
            n_t: 1000,
            s_min: 1e-4,
            s_max: 1e4,
            t_span: 1e4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport<F> {
    pub pass: bool,
    /// Smallest `φ(st) / (H t^η φ(s)) − 1` over the grid.
    pub worst_margin: F,
    pub witness_s: F,
    pub witness_t: F,
    pub grid_points: usize,
}

/// Relative margin `φ(st) / (H t^η φ(s)) − 1` at one point.
pub fn scaling_margin<F: Real>(phi: &ScalingFunction<F>, eta: F, h: F, s: F, t: F) -> F {
    phi.eval(s * t) / (h * t.powf(eta) * phi.eval(s)) - F::one()
}

fn grid_check<F: Real>(
    phi: &ScalingFunction<F>,
    eta: F,
    h: F,
    ts: Vec<F>,
    grid: &ScalingGrid,
) -> Result<ScalingReport<F>> {
    check_h(h)?;
    let ss = geometric_grid(F::lit(grid.s_min), F::lit(grid.s_max), grid.n_s);
    let mut worst = (F::infinity(), F::zero(), F::zero());
    for &s in &ss {
        let phi_s = phi.eval_checked(s)?;
        for &t in &ts {
            let m = phi.eval_checked(s * t)? / (h * t.powf(eta) * phi_s) - F::one();
            if m < worst.0 {
                worst = (m, s, t);
            }
        }
    }
    Ok(ScalingReport {
        pass: worst.0 >= -F::lit(SCALING_REL_TOL),
        worst_margin: worst.0,
        witness_s: worst.1,
        witness_t: worst.2,
        grid_points: ss.len() * ts.len(),
    })
}

/// `φ(st) ≥ H t^η φ(s)` for `t ≥ 1` on the grid.
pub fn wlsc_check<F: Real>(
    phi: &ScalingFunction<F>,
    eta: F,
    h: F,
    grid: &ScalingGrid,
) -> Result<ScalingReport<F>> {
    let ts = geometric_grid(F::one(), F::lit(grid.t_span), grid.n_t);
    grid_check(phi, eta, h, ts, grid)
}

/// `φ(st) ≥ H t^η φ(s)` for `t ∈ (0, 1]` on the grid.
pub fn wusc_check<F: Real>(
    phi: &ScalingFunction<F>,
    eta: F,
    h: F,
    grid: &ScalingGrid,
) -> Result<ScalingReport<F>> {
    let ts = geometric_grid(F::one() / F::lit(grid.t_span), F::one(), grid.n_t);
    grid_check(phi, eta, h, ts, grid)
}

/// `η₀ = η` when `η > 0`, else the midpoint `(d − dim_A)/2` of the
/// admissible interval.
pub fn select_eta0<F: Real>(eta: F, dim_a: F, d: F) -> Result<F> {
    if !(dim_a < d) {
        return Err(Error::InvalidParameter(format!(
            "boundary Assouad dimension {dim_a} must be below {d}"
        )));
    }
    Ok(if eta > F::zero() {
        eta
    } else {
        (d - dim_a) / F::lit(2.0)
    })
}

/// `η₀ + dim_A − d < 0`.
pub fn t_prime_condition<F: Real>(eta0: F, dim_a: F, d: F) -> bool {
    eta0 + dim_a - d < F::zero()
}

/// `ψ = φ` on `(0, M]` and `ψ(x) = φ(M)(x/M)^{η₀}` beyond.
pub fn psi_extend<F: Real>(phi: &ScalingFunction<F>, m: F, eta0: F) -> Result<ScalingFunction<F>> {
    if !(m > F::zero()) || !(eta0 > F::zero()) {
        return Err(Error::InvalidParameter(format!(
            "extension needs M > 0 and eta0 > 0, got M = {m}, eta0 = {eta0}"
        )));
    }
    let phi_m = phi.eval_checked(m)?;
    Ok(ScalingFunction {
        label: format!("psi({})", phi.label),
        claimed_eta: eta0,
        claimed_h: phi.claimed_h,
        repr: Repr::Extended {
            base: Box::new(phi.clone()),
            m,
            phi_m,
            eta0,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport<F> {
    /// `min ψ(z) / z^{η₀}` over the grid `z ≥ M/R`.
    pub c_estimate: F,
    pub witness_z: F,
    pub pass: bool,
    pub grid_points: usize,
}

/// Best constant `c` with `ψ(z) ≥ c z^{η₀}` on a log-grid of
/// `z ∈ [M/R, 10⁸·M/R]`.
pub fn psi_lower_asymptotic_check<F: Real>(
    psi: &ScalingFunction<F>,
    m: F,
    r_loc: F,
    eta0: F,
    h: F,
    n: usize,
) -> Result<AsymptoticReport<F>> {
    check_h(h)?;
    if !(m > F::zero() && r_loc > F::zero()) {
        return Err(Error::InvalidParameter("M and R must be positive".into()));
    }
    let z0 = m / r_loc;
    let mut best = (F::infinity(), z0);
    for z in geometric_grid(z0, z0 * F::lit(1e8), n.max(2)) {
        let c = psi.eval_checked(z)? / z.powf(eta0);
        if c < best.0 {
            best = (c, z);
        }
    }
    Ok(AsymptoticReport {
        c_estimate: best.0,
        witness_z: best.1,
        pass: best.0 > F::zero() && best.0.is_finite(),
        grid_points: n.max(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ScalingGrid {
        ScalingGrid {
            n_s: 60,
            n_t: 60,
            ..ScalingGrid::default()
        }
    }

    #[test]
    fn power_law_examples() {
        let phi = ScalingFunction::power(0.5f64);
        assert!(wlsc_check(&phi, 0.5, 1.0, &small()).unwrap().pass);
        let r = wlsc_check(&phi, 0.7, 1.0, &small()).unwrap();
        assert!(!r.pass);
        assert!(scaling_margin(&phi, 0.7, 1.0, 1.0, 100.0) < 0.0);
        assert!((phi.eval(100.0) - 10.0).abs() < 1e-12);
        assert!(wusc_check(&phi, 0.7, 1.0, &small()).unwrap().pass);
        assert!(!wusc_check(&phi, 0.3, 1.0, &small()).unwrap().pass);
        assert!(scaling_margin(&phi, 0.3, 1.0, 1.0, 0.01) < 0.0);
    }

    #[test]
    fn eta0_rules() {
        assert_eq!(select_eta0(0.6, 1.0, 2.0).unwrap(), 0.6);
        assert_eq!(select_eta0(0.0, 1.0, 2.0).unwrap(), 0.5);
        let koch = 4f64.ln() / 3f64.ln();
        let e = select_eta0(-0.2, koch, 2.0).unwrap();
        assert!((e - 0.36907).abs() < 1e-5);
        assert!(t_prime_condition(e, koch, 2.0));
        assert!(select_eta0(0.1, 2.0, 2.0).is_err());
    }

    #[test]
    fn extension_examples() {
        let phi = ScalingFunction::power(0.5f64);
        let psi = psi_extend(&phi, 1.0, 0.3).unwrap();
        assert!((psi.eval(4.0) - 4f64.powf(0.3)).abs() < 1e-12);
        assert_eq!(psi.eval(0.25), phi.eval(0.25));
        assert!((psi.eval(1.0 + 1e-9) - phi.eval(1.0)).abs() < 1e-8);
        assert_eq!(psi.kind(), ScalingKind::Extended);
        let same = psi_extend(&phi, 1.0, 0.5).unwrap();
        assert!((same.eval(7.0) - phi.eval(7.0)).abs() < 1e-12);
        let rep = psi_lower_asymptotic_check(&psi, 1.0, 2.0, 0.3, 1.0, 2000).unwrap();
        assert!((rep.c_estimate - 0.5f64.powf(0.2)).abs() < 1e-9);
        assert!(psi_extend(&phi, 0.0, 0.3).is_err());
    }

    #[test]
    fn tabulated_interpolates_power_laws() {
        let ts = [0.1, 1.0, 10.0];
        let vs: Vec<f64> = ts.iter().map(|t: &f64| t.powf(0.4)).collect();
        let phi = ScalingFunction::tabulated(&ts, &vs, 0.4, 1.0).unwrap();
        for t in [0.01, 0.3, 2.0, 50.0] {
            assert!((phi.eval(t) - t.powf(0.4)).abs() < 1e-12 * t.powf(0.4).max(1.0));
        }
        assert!(ScalingFunction::tabulated(&ts, &[1.0, -1.0, 2.0], 0.4, 1.0).is_err());
    }
}

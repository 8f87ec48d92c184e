//! Least-squares line fits and order statistics.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit<F> {
    pub slope: F,
    pub intercept: F,
    pub r2: F,
    pub slope_stderr: F,
    pub n: usize,
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn linear_fit<F: Real>(xs: &[F], ys: &[F]) -> Result<LinearFit<F>> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return Err(Error::Insufficient(format!("{n} points for a line fit")));
    }
    let nf = F::from_usize_lossy(n);
    let mx = xs.iter().copied().sum::<F>() / nf;
    let my = ys.iter().copied().sum::<F>() / nf;
    let (mut sxx, mut sxy, mut syy) = (F::zero(), F::zero(), F::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
        syy = syy + (y - my) * (y - my);
    }
    if sxx == F::zero() {
        return Err(Error::Insufficient("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == F::zero() {
        F::one()
    } else {
        sxy * sxy / (sxx * syy)
    };
    let slope_stderr = if n > 2 {
        let rss = (syy - slope * sxy).max(F::zero());
        (rss / (nf - F::lit(2.0)) / sxx).sqrt()
    } else {
        F::zero()
    };
    Ok(LinearFit {
        slope,
        intercept,
        r2,
        slope_stderr,
        n,
    })
}

/// Fit of `log y` against `log x`.
pub fn loglog_fit<F: Real>(xs: &[F], ys: &[F]) -> Result<LinearFit<F>> {
    if xs.iter().chain(ys).any(|v| !(*v > F::zero())) {
        return Err(Error::Insufficient("log-log fit needs positive data".into()));
    }
    let lx: Vec<F> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<F> = ys.iter().map(|v| v.ln()).collect();
    linear_fit(&lx, &ly)
}

/// Percentile with linear interpolation between order statistics.
/// `sorted` must be ascending and nonempty; `q ∈ [0, 1]`.
pub fn percentile<F: Real>(sorted: &[F], q: F) -> F {
    let n = sorted.len();
    assert!(n > 0, "percentile of empty data");
    let pos = q.max(F::zero()).min(F::one()) * F::from_usize_lossy(n - 1);
    let i = pos.floor().to_usize().unwrap_or(0).min(n - 1);
    let j = (i + 1).min(n - 1);
    let frac = pos - F::from_usize_lossy(i);
    sorted[i] + (sorted[j] - sorted[i]) * frac
}

/// Geometric grid of `n ≥ 2` points from `lo` to `hi` inclusive.
pub fn geometric_grid<F: Real>(lo: F, hi: F, n: usize) -> Vec<F> {
    if n < 2 {
        return vec![lo];
    }
    let ratio = (hi / lo).ln();
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo * (ratio * F::from_usize_lossy(i) / F::from_usize_lossy(n - 1)).exp()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x - 1.0).collect();
        let f = linear_fit(&xs, &ys).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-14);
        assert!((f.intercept + 1.0).abs() < 1e-14);
        assert!((f.r2 - 1.0).abs() < 1e-14);
        assert!(f.slope_stderr < 1e-7);
    }

    #[test]
    fn power_law() {
        let xs = geometric_grid(1e-3, 1e-1, 9);
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(0.7)).collect();
        assert!((loglog_fit(&xs, &ys).unwrap().slope - 0.7).abs() < 1e-12);
        assert_eq!(xs[0], 1e-3);
        assert_eq!(xs[8], 1e-1);
    }

    #[test]
    fn percentiles() {
        let v = [0.0f64, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&v, 0.5), 2.0);
        assert_eq!(percentile(&v, 0.0), 0.0);
        assert_eq!(percentile(&v, 1.0), 4.0);
        assert!((percentile(&v, 0.1) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn too_few_points() {
        assert!(linear_fit(&[1.0f64], &[1.0]).is_err());
        assert!(linear_fit(&[1.0f64, 1.0], &[1.0, 2.0]).is_err());
    }
}

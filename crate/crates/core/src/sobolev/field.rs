//! Real-valued fields on planar domains.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::geometry::{Domain, Point2};
use crate::scalar::Real;

/// Modulus of continuity a field declares, used for truncation-bias bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity<F> {
    Constant,
    /// `|f(x) − f(y)| ≤ c |x − y|^α`.
    Holder { c: F, alpha: F },
    Unknown,
}

type Eval<F> = Arc<dyn Fn(Point2<F>) -> F + Send + Sync>;

/// `f : Ω → ℝ` with a label and optional regularity information.
#[derive(Clone)]
pub struct ScalarField<F> {
    label: String,
    eval: Eval<F>,
    regularity: Regularity<F>,
    known_bound: Option<F>,
}

impl<F: Real> fmt::Debug for ScalarField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("label", &self.label)
            .field("regularity", &self.regularity)
            .field("known_bound", &self.known_bound)
            .finish()
    }
}

/// `v_n(d) = max{min{2 − n d, 1}, 0}`.
#[inline]
pub fn cutoff_vn<F: Real>(n: u32, d_omega: F) -> F {
    (F::lit(2.0) - F::lit(n as f64) * d_omega)
        .min(F::one())
        .max(F::zero())
}

impl<F: Real> ScalarField<F> {
    pub fn from_fn(
        label: impl Into<String>,
        regularity: Regularity<F>,
        f: impl Fn(Point2<F>) -> F + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            eval: Arc::new(f),
            regularity,
            known_bound: None,
        }
    }

    pub fn constant(c: F) -> Self {
        let mut f = Self::from_fn(format!("const({c})"), Regularity::Constant, move |_| c);
        f.known_bound = Some(c.abs());
        f
    }

    /// `f ≡ 1`, the indicator of the domain restricted to it.
    pub fn indicator() -> Self {
        Self::constant(F::one()).with_label("indicator")
    }

    /// `f(x) = x_{axis+1}`.
    pub fn coordinate(axis: usize) -> Self {
        let lip = Regularity::Holder {
            c: F::one(),
            alpha: F::one(),
        };
        match axis {
            0 => Self::from_fn("x1", lip, |p| p.x),
            _ => Self::from_fn("x2", lip, |p| p.y),
        }
    }

    /// `f = d_Ω^a`.
    pub fn distance_power(domain: &Domain<F>, a: F) -> Self {
        let dom = domain.clone();
        let regularity = if a > F::zero() && a <= F::one() {
            Regularity::Holder { c: F::one(), alpha: a }
        } else {
            Regularity::Unknown
        };
        Self::from_fn(format!("d^{a}"), regularity, move |p| {
            dom.dist_boundary(p).powf(a)
        })
    }

    /// `f = max{d_Ω − δ, 0}`, which vanishes on `{d_Ω ≤ δ}`.
    pub fn ramp(domain: &Domain<F>, delta: F) -> Self {
        let dom = domain.clone();
        Self::from_fn(
            format!("ramp({delta})"),
            Regularity::Holder {
                c: F::one(),
                alpha: F::one(),
            },
            move |p| (dom.dist_boundary(p) - delta).max(F::zero()),
        )
    }

    /// `v_n ∘ d_Ω`.
    pub fn cutoff(domain: &Domain<F>, n: u32) -> Self {
        Self::indicator().times_cutoff(domain, n)
    }

    /// `f · v_n`.
    pub fn times_cutoff(&self, domain: &Domain<F>, n: u32) -> Self {
        let dom = domain.clone();
        let inner = self.eval.clone();
        let regularity = match (self.regularity, self.known_bound) {
            (Regularity::Constant, Some(b)) => Regularity::Holder {
                c: b * F::lit(n as f64),
                alpha: F::one(),
            },
            _ => Regularity::Unknown,
        };
        let mut out = Self::from_fn(format!("{}*v{n}", self.label), regularity, move |p| {
            inner(p) * cutoff_vn(n, dom.dist_boundary(p))
        });
        out.known_bound = self.known_bound;
        out
    }

    /// `c · f`.
    pub fn scale(&self, c: F) -> Self {
        let inner = self.eval.clone();
        let regularity = match self.regularity {
            Regularity::Holder { c: k, alpha } => Regularity::Holder { c: k * c.abs(), alpha },
            r => r,
        };
        let mut out = Self::from_fn(format!("{c}*{}", self.label), regularity, move |p| c * inner(p));
        out.known_bound = self.known_bound.map(|b| b * c.abs());
        out
    }

    /// `f^N = min{max{f, −N}, N}`.
    pub fn truncate(&self, n: F) -> Self {
        let inner = self.eval.clone();
        let mut out = Self::from_fn(format!("trunc({},{n})", self.label), self.regularity, move |p| {
            inner(p).max(-n).min(n)
        });
        out.known_bound = Some(self.known_bound.map_or(n, |b| b.min(n)));
        out
    }

    /// `max{min{g, 1}, 0}`.
    pub fn clip01(&self) -> Self {
        let inner = self.eval.clone();
        let mut out = Self::from_fn(format!("clip01({})", self.label), self.regularity, move |p| {
            inner(p).min(F::one()).max(F::zero())
        });
        out.known_bound = Some(F::one());
        out
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_bound(mut self, bound: F) -> Self {
        self.known_bound = Some(bound);
        self
    }

    #[inline]
    pub fn eval(&self, p: Point2<F>) -> F {
        (self.eval)(p)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn regularity(&self) -> Regularity<F> {
        self.regularity
    }

    pub fn known_bound(&self) -> Option<F> {
        self.known_bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_examples() {
        assert_eq!(cutoff_vn(10, 0.05f64), 1.0);
        assert_eq!(cutoff_vn(10, 0.15f64), 0.5);
        assert_eq!(cutoff_vn(10, 0.25f64), 0.0);
        assert_eq!(cutoff_vn(10, 0.1f64), 1.0);
        assert_eq!(cutoff_vn(10, 0.2f64), 0.0);
    }

    #[test]
    fn truncation_and_clipping() {
        let p = Point2::<f64>::origin();
        assert_eq!(ScalarField::constant(5.0).truncate(2.0).eval(p), 2.0);
        assert_eq!(ScalarField::constant(-5.0).truncate(2.0).eval(p), -2.0);
        assert_eq!(ScalarField::constant(-0.3).clip01().eval(p), 0.0);
        assert_eq!(ScalarField::constant(0.7).clip01().eval(p), 0.7);
        assert_eq!(ScalarField::constant(1.7).clip01().eval(p), 1.0);
    }

    #[test]
    fn cutoff_field_on_disk() {
        let d = Domain::<f64>::unit_disk();
        let v = ScalarField::cutoff(&d, 10);
        assert_eq!(v.eval(Point2::new(0.97, 0.0)), 1.0);
        assert!((v.eval(Point2::new(0.85, 0.0)) - 0.5).abs() < 1e-12);
        assert_eq!(v.eval(Point2::new(0.5, 0.0)), 0.0);
        assert_eq!(
            v.regularity(),
            Regularity::Holder {
                c: 10.0,
                alpha: 1.0
            }
        );
    }
}

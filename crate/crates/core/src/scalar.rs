//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + Sum
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }

    /// `|x|^p` with exact fast paths for `p = 1` and `p = 2`.
    ///
    /// The fast paths keep power-of-two rescalings exact, which the
    /// homogeneity checks rely on.
    #[inline]
    fn abs_pow(self, p: Self) -> Self {
        let a = self.abs();
        if p == Self::one() {
            a
        } else if p == Self::lit(2.0) {
            a * a
        } else {
            a.powf(p)
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}

//! `L^p` norms, Gagliardo seminorms and Hardy-type weighted integrals.

pub mod field;
pub mod hardy;
pub mod seminorm;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use field::{cutoff_vn, Regularity, ScalarField};
pub use hardy::{
    hardy_lhs, hardy_quotient, hardy_rhs_localized, shell_integral, HardyEstimate, ShellContribution,
    ShellIntegral, ShellTrend,
};
pub use seminorm::{
    gagliardo_seminorm_p, gagliardo_seminorm_region, lemma1_check, lp_norm_p, Lemma1Report,
    Method, Region, SeminormEstimate,
};

/// Order `s ∈ (0,1)` and integrability `p ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevParams<F> {
    pub s: F,
    pub p: F,
}

impl<F: Real> SobolevParams<F> {
    pub fn new(s: F, p: F) -> Result<Self> {
        let out = Self { s, p };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > F::zero() && self.s < F::one()) {
            return Err(Error::InvalidParameter(format!(
                "order s = {} outside (0,1)",
                self.s
            )));
        }
        if !(self.p >= F::one() && self.p.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "integrability p = {} must be finite and at least 1",
                self.p
            )));
        }
        Ok(())
    }

    pub fn sp(&self) -> F {
        self.s * self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(SobolevParams::new(0.5f64, 2.0).is_ok());
        assert!(SobolevParams::new(1.2f64, 2.0).is_err());
        assert!(SobolevParams::new(0.0f64, 2.0).is_err());
        assert!(SobolevParams::new(0.5f64, 0.5).is_err());
        assert_eq!(SobolevParams::new(0.3f64, 2.0).unwrap().sp(), 0.6);
    }
}

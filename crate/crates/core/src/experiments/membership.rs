//! Membership in the closure of test functions via the Hardy quotient.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::Domain;
use crate::sampling::SampleConfig;
use crate::scalar::Real;
use crate::sobolev::{hardy_quotient, HardyEstimate, ScalarField, ShellTrend, SobolevParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Likely,
    Unlikely,
    Undetermined,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Membership::Likely => "likely",
            Membership::Unlikely => "unlikely",
            Membership::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport<F> {
    pub in_w0: Membership,
    pub hardy: HardyEstimate<F>,
}

/// Reads the shell trend of `∫ |f|^p d_Ω^{−sp}`: decaying shells mean a
/// finite quotient, growing shells a divergent one.
///
/// The characterization behind this test needs `sp` above the upper
/// codimension; the caller is responsible for that context.
pub fn membership_test<F: Real>(
    f: &ScalarField<F>,
    domain: &Domain<F>,
    params: &SobolevParams<F>,
    cfg: &SampleConfig,
) -> Result<MembershipReport<F>> {
    let hardy = hardy_quotient(f, domain, params, &cfg.derive("membership"))?;
    let in_w0 = match hardy.trend {
        ShellTrend::Decaying => Membership::Likely,
        ShellTrend::Diverging => Membership::Unlikely,
        ShellTrend::Borderline => Membership::Undetermined,
    };
    Ok(MembershipReport { in_w0, hardy })
}

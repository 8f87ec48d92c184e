//! The density trichotomy applied to estimated codimensions.

use serde::{Deserialize, Serialize};

use crate::dimension::{DimensionEstimate, HomogeneityReport, Quantity};
use crate::error::{Error, Result};
use crate::geometry::{ambient_dim, Domain, PlumpnessReport};
use crate::scalar::Real;
use crate::sobolev::SobolevParams;

/// Added to the codimension spread to form the verdict margin.
pub const VERDICT_MARGIN_SLACK: f64 = 0.03;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Dense,
    DenseCritical,
    NotDense,
    OpenCase,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Dense => "dense",
            Verdict::DenseCritical => "dense_critical",
            Verdict::NotDense => "not_dense",
            Verdict::OpenCase => "open_case",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// True for both verdicts under which smooth compactly supported
    /// functions are dense.
    pub fn density_holds(self) -> bool {
        matches!(self, Verdict::Dense | Verdict::DenseCritical)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotRun,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityVerdict<F> {
    pub domain: String,
    pub verdict: Verdict,
    pub s: F,
    pub p: F,
    pub sp: F,
    pub codim_lower: F,
    pub codim_upper: F,
    pub margin: F,
    pub plump: CheckStatus,
    pub homogeneous: CheckStatus,
    pub rationale: String,
}

/// `(upper − lower) + 0.03`.
pub fn verdict_margin<F: Real>(codim_lower: F, codim_upper: F) -> F {
    (codim_upper - codim_lower).abs() + F::lit(VERDICT_MARGIN_SLACK)
}

/// Classifies `(s, p)` against the codimension band.
///
/// The plumpness report is needed only above the band and the
/// homogeneity report only inside it with `p > 1`; the homogeneity
/// report counts when its exponent is at most `d − sp`.
pub fn density_verdict<F: Real>(
    domain: &Domain<F>,
    params: &SobolevParams<F>,
    dims: Option<&(DimensionEstimate<F>, DimensionEstimate<F>)>,
    plump: Option<&PlumpnessReport<F>>,
    homog: Option<&HomogeneityReport<F>>,
) -> Result<DensityVerdict<F>> {
    params.validate()?;
    let (lower, upper) =
        dims.ok_or_else(|| Error::MissingPrerequisite("codimension estimates".into()))?;
    if lower.quantity != Quantity::AssouadCodimLower || upper.quantity != Quantity::AssouadCodimUpper {
        return Err(Error::InvalidParameter(format!(
            "expected (assouad_codim_lower, assouad_codim_upper), got ({}, {})",
            lower.quantity.as_str(),
            upper.quantity.as_str()
        )));
    }
    for label in [&lower.domain, &upper.domain]
        .into_iter()
        .chain(plump.map(|r| &r.domain))
        .chain(homog.map(|r| &r.domain))
    {
        if label != domain.label() {
            return Err(Error::InvalidParameter(format!(
                "estimate for domain {label} used with domain {}",
                domain.label()
            )));
        }
    }
    let sp = params.sp();
    let margin = verdict_margin(lower.value, upper.value);
    let plump_status = plump.map_or(CheckStatus::NotRun, |r| {
        if r.pass {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    });
    let sigma_max = ambient_dim::<F>() - sp;
    let homog_status = homog.map_or(CheckStatus::NotRun, |r| {
        if r.stable && r.sigma <= sigma_max + F::lit(1e-12) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    });
    let (verdict, rationale) = if sp < lower.value - margin {
        (
            Verdict::Dense,
            format!("case I: sp = {sp} below codim_lower − margin = {}", lower.value - margin),
        )
    } else if sp > upper.value + margin {
        match plump_status {
            CheckStatus::NotRun => {
                return Err(Error::MissingPrerequisite(
                    "plumpness report (sp above the codimension band)".into(),
                ))
            }
            CheckStatus::Pass => (
                Verdict::NotDense,
                format!(
                    "case III: sp = {sp} above codim_upper + margin = {} and plumpness certified",
                    upper.value + margin
                ),
            ),
            CheckStatus::Fail => (
                Verdict::Inconclusive,
                "sp above the codimension band but plumpness not certified".to_string(),
            ),
        }
    } else if params.p <= F::one() {
        (
            Verdict::OpenCase,
            format!("p = 1 with sp = {sp} inside the critical band"),
        )
    } else {
        match homog_status {
            CheckStatus::NotRun => {
                return Err(Error::MissingPrerequisite(
                    "homogeneity report (sp inside the critical band with p > 1)".into(),
                ))
            }
            CheckStatus::Pass => (
                Verdict::DenseCritical,
                format!("case II: sp = {sp} inside the critical band, p > 1, homogeneity stable"),
            ),
            CheckStatus::Fail => (
                Verdict::Inconclusive,
                "sp inside the critical band without a homogeneity certificate".to_string(),
            ),
        }
    };
    Ok(DensityVerdict {
        domain: domain.label().to_string(),
        verdict,
        s: params.s,
        p: params.p,
        sp,
        codim_lower: lower.value,
        codim_upper: upper.value,
        margin,
        plump: plump_status,
        homogeneous: homog_status,
        rationale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn est(q: Quantity, v: f64) -> DimensionEstimate<f64> {
        DimensionEstimate {
            domain: "disk".into(),
            quantity: q,
            value: v,
            stderr: 0.0,
            r_min: 0.0,
            r_max: 0.0,
            fit_r2: 1.0,
            spread_min: v,
            spread_max: v,
            n_centers: 1,
            n_scalepairs: 1,
            seed: 1,
        }
    }

    fn plump(pass: bool) -> PlumpnessReport<f64> {
        PlumpnessReport {
            domain: "disk".into(),
            kappa: 0.25,
            pass,
            worst_ratio: 0.5,
            witness_x: Point2::origin(),
            witness_r: 1.0,
            checked: 1,
        }
    }

    fn homog(sigma: f64, stable: bool) -> HomogeneityReport<f64> {
        HomogeneityReport {
            domain: "disk".into(),
            sigma,
            l_estimate: 1.0,
            per_lambda: vec![],
            growth_slope: 0.0,
            stable,
            samples: vec![],
        }
    }

    #[test]
    fn clauses() {
        let d = Domain::<f64>::unit_disk();
        let dims = (est(Quantity::AssouadCodimLower, 0.98), est(Quantity::AssouadCodimUpper, 1.0));
        let v = |s: f64, p: f64, pl: Option<&PlumpnessReport<f64>>, h: Option<&HomogeneityReport<f64>>| {
            density_verdict(&d, &SobolevParams::new(s, p).unwrap(), Some(&dims), pl, h)
        };
        assert_eq!(v(0.4, 2.0, None, None).unwrap().verdict, Verdict::Dense);
        assert_eq!(v(0.6, 2.0, Some(&plump(true)), None).unwrap().verdict, Verdict::NotDense);
        assert_eq!(v(0.6, 2.0, Some(&plump(false)), None).unwrap().verdict, Verdict::Inconclusive);
        assert_eq!(v(0.99, 1.0, None, None).unwrap().verdict, Verdict::OpenCase);
        let h = homog(1.0, true);
        assert_eq!(v(0.5, 2.0, None, Some(&h)).unwrap().verdict, Verdict::DenseCritical);
        // a homogeneity exponent above d − sp certifies nothing
        let h = homog(1.5, true);
        assert_eq!(v(0.5, 2.0, None, Some(&h)).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn missing_reports() {
        let d = Domain::<f64>::unit_disk();
        let params = SobolevParams::new(0.6, 2.0).unwrap();
        assert!(matches!(
            density_verdict(&d, &params, None, None, None),
            Err(Error::MissingPrerequisite(_))
        ));
        let dims = (est(Quantity::AssouadCodimLower, 1.0), est(Quantity::AssouadCodimUpper, 1.0));
        assert!(matches!(
            density_verdict(&d, &params, Some(&dims), None, None),
            Err(Error::MissingPrerequisite(_))
        ));
        let sq = Domain::<f64>::unit_square();
        assert!(density_verdict(&sq, &params, Some(&dims), Some(&plump(true)), None).is_err());
    }
}

use fraclab::dimension::{DimensionEstimate, HomogeneityReport, Quantity};
use fraclab::experiments::{
    density_verdict, hardy_reduction_experiment, membership_test, Membership, ReductionOptions, Verdict,
};
use fraclab::geometry::{Domain, PlumpnessReport, Point2};
use fraclab::sampling::SampleConfig;
use fraclab::scaling::ScalingFunction;
use fraclab::sobolev::{ScalarField, SobolevParams};
use proptest::prelude::*;

fn est(label: &str, q: Quantity, v: f64) -> DimensionEstimate<f64> {
    DimensionEstimate {
        domain: label.into(),
        quantity: q,
        value: v,
        stderr: 0.01,
        r_min: 1e-3,
        r_max: 0.1,
        fit_r2: 1.0,
        spread_min: v,
        spread_max: v,
        n_centers: 10,
        n_scalepairs: 3,
        seed: 1,
    }
}

fn rank(v: Verdict) -> u8 {
    match v {
        Verdict::Dense => 0,
        Verdict::DenseCritical | Verdict::OpenCase => 1,
        Verdict::NotDense | Verdict::Inconclusive => 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verdict_is_monotone_in_s(
        lower in 0.0f64..1.5,
        width in 0.0f64..0.3,
        p in 1.0f64..4.0,
        s1 in 0.01f64..0.99,
        s2 in 0.01f64..0.99,
        plump_ok in any::<bool>(),
        stable in any::<bool>(),
    ) {
        let disk = Domain::<f64>::unit_disk();
        let dims = (
            est("disk", Quantity::AssouadCodimLower, lower),
            est("disk", Quantity::AssouadCodimUpper, lower + width),
        );
        let plump = PlumpnessReport {
            domain: "disk".into(),
            kappa: 0.1,
            pass: plump_ok,
            worst_ratio: 0.2,
            witness_x: Point2::origin(),
            witness_r: 0.1,
            checked: 1,
        };
        let homog = HomogeneityReport {
            domain: "disk".into(),
            sigma: 0.0,
            l_estimate: 1.0,
            per_lambda: vec![],
            growth_slope: 0.0,
            stable,
            samples: vec![],
        };
        let (lo, hi) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
        let verdict = |s: f64| {
            density_verdict(&disk, &SobolevParams::new(s, p).unwrap(), Some(&dims), Some(&plump), Some(&homog))
                .unwrap()
                .verdict
        };
        let (a, b) = (verdict(lo), verdict(hi));
        prop_assert!(rank(a) <= rank(b), "{a:?} at s={lo}, {b:?} at s={hi}");
        if b == Verdict::Dense {
            prop_assert!(a.density_holds());
        }
    }
}

#[test]
fn reduction_battery_has_finite_witness() {
    let phi = ScalingFunction::power(0.5);
    let params = SobolevParams::new(0.25, 2.0).unwrap();
    let domains = [Domain::<f64>::unit_disk(), Domain::unit_square(), Domain::koch_prefractal(4).unwrap()];
    for d in &domains {
        let fields = [
            ScalarField::constant(1.0),
            ScalarField::coordinate(0),
            ScalarField::distance_power(d, 0.5),
            ScalarField::ramp(d, 0.05),
        ];
        for u in &fields {
            for r_loc in [2.0, 6.0] {
                let rep = hardy_reduction_experiment(
                    d,
                    u,
                    &phi,
                    r_loc,
                    &params,
                    &ReductionOptions::default(),
                    &SampleConfig::with_seed(8, 20_480),
                )
                .unwrap();
                let tag = format!("{} {} R={r_loc}", d.label(), u.label());
                assert!(rep.lhs.value.is_finite(), "{tag}");
                assert!(rep.c_witness.is_finite(), "{tag}: {}", rep.c_witness);
                assert_eq!(rep.inclusion_violations, 0, "{tag}");
                assert_eq!(rep.i2_geometry_violations, 0, "{tag}");
                for e in [&rep.i1, &rep.i2, &rep.i3] {
                    assert!(e.value >= 0.0 && e.value.is_finite(), "{tag}");
                }
            }
        }
    }
}

#[test]
fn field_vanishing_near_boundary_needs_no_hardy_help() {
    let disk = Domain::<f64>::unit_disk();
    let u = ScalarField::ramp(&disk, 0.2);
    let params = SobolevParams::new(0.25, 2.0).unwrap();
    let rep = hardy_reduction_experiment(
        &disk,
        &u,
        &ScalingFunction::power(0.5),
        2.0,
        &params,
        &ReductionOptions::default(),
        &SampleConfig::with_seed(2, 20_480),
    )
    .unwrap();
    // |u|^p/φ(d) ≤ |u|^p/φ(0.2) on the support of u
    assert!(rep.lhs.value <= rep.norm_p.value / 0.2f64.sqrt() * 1.0001, "{} vs {}", rep.lhs.value, rep.norm_p.value);
    assert!(rep.checks_pass());
}

#[test]
fn membership_on_koch() {
    let koch = Domain::<f64>::koch_prefractal(5).unwrap();
    let params = SobolevParams::new(0.5, 2.0).unwrap();
    let cfg = SampleConfig::with_seed(3, 400_000);
    let weighted = membership_test(&ScalarField::distance_power(&koch, 0.5), &koch, &params, &cfg).unwrap();
    assert_eq!(weighted.in_w0, Membership::Likely);
    // |d^s|^p / d^{sp} = 1, so the quotient is the area
    let area = koch.area_exact().unwrap();
    assert!((weighted.hardy.value - area).abs() <= 0.02 * area, "{} vs {area}", weighted.hardy.value);
    let one = membership_test(&ScalarField::constant(1.0), &koch, &params, &cfg).unwrap();
    assert_eq!(one.in_w0, Membership::Unlikely);
}

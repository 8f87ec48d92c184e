use fraclab::dimension::{assouad_codims, assouad_codims_detailed, minkowski_upper, CodimOptions, Quantity};
use fraclab::geometry::Domain;
use fraclab::sampling::SampleConfig;

fn battery() -> Vec<Domain<f64>> {
    vec![
        Domain::unit_disk(),
        Domain::unit_square(),
        Domain::koch_prefractal(6).unwrap(),
        Domain::comb(4, 0.5).unwrap(),
    ]
}

#[test]
fn duality_and_observation_floor() {
    let cfg = SampleConfig::with_seed(2, 200_000);
    for d in battery() {
        let r = assouad_codims_detailed(&d, &cfg, &CodimOptions::default()).unwrap();
        let (upper, lower) = r.dims();
        assert_eq!(upper.quantity, Quantity::AssouadDimUpper);
        assert_eq!(upper.value, 2.0 - r.lower.value);
        assert_eq!(lower.value, 2.0 - r.upper.value);
        assert!(r.lower.value <= r.upper.value);
        assert!(upper.value >= 1.0 - 0.05, "{}: dim_A upper {}", d.label(), upper.value);
    }
}

#[test]
fn disk_notions_coincide() {
    let disk = Domain::<f64>::unit_disk();
    let cfg = SampleConfig::with_seed(4, 200_000);
    let m = minkowski_upper(&disk, &cfg).unwrap();
    let (lo, hi) = assouad_codims(&disk, &cfg).unwrap();
    for c in [lo.value, hi.value] {
        assert!((m.value - c).abs() <= 0.08, "minkowski {} vs codim {c}", m.value);
    }
}

#[test]
fn doubling_samples_is_stable() {
    let koch = Domain::<f64>::koch_prefractal(6).unwrap();
    let a = assouad_codims(&koch, &SampleConfig::with_seed(9, 100_000)).unwrap();
    let b = assouad_codims(&koch, &SampleConfig::with_seed(9, 200_000)).unwrap();
    for (x, y) in [(&a.0, &b.0), (&a.1, &b.1)] {
        let se = x.stderr.hypot(y.stderr);
        assert!((x.value - y.value).abs() <= 2.0 * se + 1e-12, "{} vs {} (se {se})", x.value, y.value);
    }
    let m1 = minkowski_upper(&koch, &SampleConfig::with_seed(9, 100_000)).unwrap();
    let m2 = minkowski_upper(&koch, &SampleConfig::with_seed(9, 200_000)).unwrap();
    assert!((m1.value - m2.value).abs() <= 2.0 * m1.stderr.hypot(m2.stderr) + 1e-12);
}

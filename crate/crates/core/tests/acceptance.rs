//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Lines listed in `KNOWN_RED` are expected to fail and are reported
//! without failing the run; any other red line exits nonzero.

use std::fs;
use std::path::Path;
use std::process::Command as Process;
use std::time::Instant;

use fraclab::cli::{run, Command, DomainName, FieldName, RunConfig};
use fraclab::dimension::{assouad_codims, assouad_codims_detailed, minkowski_upper, CodimOptions};
use fraclab::experiments::{koch_case_study, koch_codimension, KochReport, Verdict};
use fraclab::geometry::{ambient_dim, Domain};
use fraclab::sampling::SampleConfig;
use fraclab::scaling::{
    psi_extend, psi_lower_asymptotic_check, select_eta0, wlsc_check, wusc_check, ScalingFunction, ScalingGrid,
};
use fraclab::sobolev::{gagliardo_seminorm_p, hardy_quotient, ScalarField, SobolevParams};

const KNOWN_RED: [&str; 1] = ["cutoff-decay"];

const CODIM_TOL: f64 = 0.06;
const CODIM_RUNTIME_LIMIT_S: f64 = 300.0;
const TUBE_EXPONENT_TOL: f64 = 0.05;
const TUBE_R2_MIN: f64 = 0.99;
const LIPSCHITZ_MINKOWSKI_TOL: f64 = 0.03;
const LIPSCHITZ_CODIM_TOL: f64 = 0.05;
const OBSERVATION_SLACK: f64 = 0.05;
const MONOTONE_STDERRS: f64 = 2.0;
const ENVELOPE_STDERRS: f64 = 2.0;
const FLOOR_STDERRS: f64 = 5.0;
const HARDY_REL_TOL: f64 = 0.02;
const HARDY_SAMPLES: usize = 4_000_000;
const SEMINORM_STDERRS: f64 = 3.0;
const SEMINORM_REL_TOL: f64 = 0.02;
const SEMINORM_SAMPLES: usize = 1_000_000;
/// Frozen from the independent quadrature in `tests/sobolev.rs`.
const SQUARE_X1_SEMINORM: f64 = 1.486604799123689;

/// `((s, p), accepts, expected label)`.
type VerdictCase = ((f64, f64), fn(Verdict) -> bool, &'static str);

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn koch_criteria(rep: &KochReport<f64>, codim_secs: f64, codim_samples: usize) -> Vec<Line> {
    let exact = koch_codimension::<f64>();
    let (lo, hi) = (rep.codim_lower.value, rep.codim_upper.value);
    let mut out = vec![Line {
        id: "koch-codimension",
        pass: (lo - exact).abs() <= CODIM_TOL && (hi - exact).abs() <= CODIM_TOL && codim_secs <= CODIM_RUNTIME_LIMIT_S,
        detail: format!(
            "level {} lower {lo:.4} upper {hi:.4} vs {exact:.5} (tol {CODIM_TOL}); {codim_secs:.1} s at {codim_samples} samples (limit {CODIM_RUNTIME_LIMIT_S} s)",
            rep.level
        ),
    }];

    let t = &rep.tube_exponent;
    out.push(Line {
        id: "koch-tube-exponent",
        pass: (t.value - exact).abs() <= TUBE_EXPONENT_TOL && t.fit_r2 >= TUBE_R2_MIN,
        detail: format!(
            "exponent {:.4} vs {exact:.4} (tol {TUBE_EXPONENT_TOL}), r2 {:.5} (min {TUBE_R2_MIN}) on r in [{}, {}]",
            t.value, t.fit_r2, t.r_min, t.r_max
        ),
    });

    let expected: [VerdictCase; 4] = [
        ((0.3, 1.0), |v| v == Verdict::Dense, "dense"),
        ((0.5, 2.0), |v| v == Verdict::NotDense, "not_dense"),
        ((0.36, 2.0), Verdict::density_holds, "dense|dense_critical"),
        ((0.73814, 1.0), |v| v == Verdict::OpenCase, "open_case"),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for ((s, p), accept, want) in expected {
        let v = rep.verdicts.iter().find(|v| v.s == s && v.p == p);
        let good = v.is_some_and(|v| accept(v.verdict));
        ok &= good;
        parts.push(format!(
            "({s},{p}) {} [{want}]",
            v.map_or("missing", |v| v.verdict.as_str())
        ));
    }
    out.push(Line {
        id: "koch-trichotomy",
        pass: ok,
        detail: parts.join(", "),
    });

    let below = &rep.cutoff_below;
    let mono = below.monotone_violations(MONOTONE_STDERRS);
    let env = below.envelope_violations(ENVELOPE_STDERRS);
    let above = &rep.cutoff_above;
    let floor = above.floor_exceeds(FLOOR_STDERRS);
    let values: Vec<String> = below.points.iter().map(|q| format!("{:.3}", q.seminorm_p)).collect();
    out.push(Line {
        id: "cutoff-decay",
        pass: mono.is_empty() && env.is_empty() && floor,
        detail: format!(
            "sp {}: [v_n]^p = [{}], monotone ({MONOTONE_STDERRS} se) violations {mono:?}, envelope ({ENVELOPE_STDERRS} se) violations {env:?}; sp {}: floor {:.3} ± {:.3} > {FLOOR_STDERRS} se: {floor}",
            below.sp,
            values.join(", "),
            above.sp,
            above.positive_floor,
            above.positive_floor_stderr
        ),
    });
    out
}

fn lipschitz_and_floor(koch: &KochReport<f64>) -> Vec<Line> {
    let cfg = SampleConfig::with_seed(1, 200_000);
    let mut lines = Vec::new();
    let mut ok = true;
    let mut parts = Vec::new();
    let mut floors = vec![(koch.codim_lower.domain.clone(), ambient_dim::<f64>() - koch.codim_lower.value)];
    for d in [Domain::<f64>::unit_disk(), Domain::unit_square()] {
        let m = minkowski_upper(&d, &cfg.derive("minkowski")).unwrap();
        let (lo, hi) = assouad_codims(&d, &cfg.derive("codims")).unwrap();
        ok &= (m.value - 1.0).abs() <= LIPSCHITZ_MINKOWSKI_TOL
            && (lo.value - 1.0).abs() <= LIPSCHITZ_CODIM_TOL
            && (hi.value - 1.0).abs() <= LIPSCHITZ_CODIM_TOL;
        parts.push(format!(
            "{} minkowski {:.4} codims {:.4}/{:.4}",
            d.label(),
            m.value,
            lo.value,
            hi.value
        ));
        floors.push((d.label().to_string(), ambient_dim::<f64>() - lo.value));
    }
    lines.push(Line {
        id: "lipschitz-baseline",
        pass: ok,
        detail: format!("{} (tol {LIPSCHITZ_MINKOWSKI_TOL} / {LIPSCHITZ_CODIM_TOL})", parts.join("; ")),
    });

    let comb = Domain::<f64>::comb(4, 0.5).unwrap();
    let (lo, _) = assouad_codims(&comb, &cfg.derive("codims")).unwrap();
    floors.push((comb.label().to_string(), ambient_dim::<f64>() - lo.value));
    let bound = ambient_dim::<f64>() - 1.0 - OBSERVATION_SLACK;
    lines.push(Line {
        id: "observation-floor",
        pass: floors.iter().all(|(_, v)| *v >= bound),
        detail: floors
            .iter()
            .map(|(n, v)| format!("{n} dim_A upper {v:.4}"))
            .chain([format!(">= {bound}")])
            .collect::<Vec<_>>()
            .join(", "),
    });
    lines
}

fn hardy_oracle() -> Line {
    let disk = Domain::<f64>::unit_disk();
    let one = ScalarField::constant(1.0);
    let cfg = SampleConfig::with_seed(1, HARDY_SAMPLES);
    let finite = hardy_quotient(&one, &disk, &SobolevParams::new(0.25, 2.0).unwrap(), &cfg).unwrap();
    let exact = 8.0 * std::f64::consts::PI / 3.0;
    let diverging = hardy_quotient(&one, &disk, &SobolevParams::new(0.6, 2.0).unwrap(), &cfg).unwrap();
    Line {
        id: "hardy-oracle",
        pass: (finite.value - exact).abs() <= HARDY_REL_TOL * exact && !finite.diverged && diverging.diverged,
        detail: format!(
            "sp 0.5: {:.4} ± {:.4} vs 8π/3 = {exact:.4} (tol {HARDY_REL_TOL} rel); sp 1.2 diverged: {}",
            finite.value, finite.stderr, diverging.diverged
        ),
    }
}

fn seminorm_oracle() -> Line {
    let sq = Domain::<f64>::unit_square();
    let params = SobolevParams::new(0.5, 2.0).unwrap();
    let cfg = SampleConfig::with_seed(1, SEMINORM_SAMPLES);
    let e = gagliardo_seminorm_p(&ScalarField::coordinate(0), &sq, &params, &cfg).unwrap();
    let err = (e.value_p - SQUARE_X1_SEMINORM).abs();
    Line {
        id: "seminorm-oracle",
        pass: err <= SEMINORM_STDERRS * e.stderr && err <= SEMINORM_REL_TOL * SQUARE_X1_SEMINORM,
        detail: format!(
            "{:.5} ± {:.5} vs {SQUARE_X1_SEMINORM:.5} (|Δ| {err:.5}, tol {SEMINORM_STDERRS} se and {SEMINORM_REL_TOL} rel)",
            e.value_p, e.stderr
        ),
    }
}

fn scaling_suite(koch: &KochReport<f64>) -> Line {
    let grid = ScalingGrid::default();
    let mut mismatches = Vec::new();
    for a in [0.25, 0.5, 1.0] {
        let phi = ScalingFunction::power(a);
        for eta in [0.25, 0.5, 1.0] {
            let lower = wlsc_check(&phi, eta, 1.0, &grid).unwrap().pass;
            let upper = wusc_check(&phi, eta, 1.0, &grid).unwrap().pass;
            if lower != (eta <= a) || upper != (eta >= a) {
                mismatches.push(format!("(t^{a}, {eta})"));
            }
        }
    }
    let dim_a = ambient_dim::<f64>() - koch.codim_lower.value;
    let eta0 = select_eta0(0.0, dim_a, ambient_dim()).unwrap();
    let m = Domain::<f64>::koch_prefractal(koch.level).unwrap().diameter();
    let phi = ScalingFunction::power(eta0 / 2.0);
    let psi = psi_extend(&phi, m, eta0).unwrap();
    let wusc = wusc_check(&psi, eta0, 1.0, &grid).unwrap();
    let asym = psi_lower_asymptotic_check(&psi, m, 2.0, eta0, 1.0, 1000).unwrap();
    Line {
        id: "scaling-suite",
        pass: mismatches.is_empty() && wusc.pass && asym.pass,
        detail: format!(
            "9 power-law cases, mismatches {mismatches:?}; koch eta0 {eta0:.4}: psi wusc {} (worst {:.2e}), asymptotic c {:.4}",
            wusc.pass, wusc.worst_margin, asym.c_estimate
        ),
    }
}

fn quick_configs(out: &Path) -> Vec<RunConfig> {
    let base = RunConfig {
        samples: 20_480,
        output_dir: out.to_path_buf(),
        ..RunConfig::default()
    };
    let mut list = Vec::new();
    for command in [
        Command::Dimension,
        Command::Tube,
        Command::Seminorm,
        Command::Hardy,
        Command::Density,
        Command::Cutoff,
        Command::Koch,
        Command::Reduction,
        Command::Scaling,
    ] {
        let mut c = RunConfig {
            command,
            ..base.clone()
        };
        match command {
            Command::Tube => c.tube.r_min = 0.01,
            Command::Seminorm => c.field.kind = FieldName::X1,
            Command::Density => c.s = 0.2,
            Command::Cutoff => {
                c.domain.kind = DomainName::Koch;
                c.domain.level = 4;
                c.n_grid = vec![4, 8, 16];
            }
            Command::Koch => {
                c.koch.level = 6;
                c.koch.cutoff_samples = 20_480;
                c.n_grid = vec![4, 8, 16, 32, 64];
                c.tube.r_min = 0.01;
                c.dimension.centers = 40;
            }
            Command::Scaling => {
                c.scaling.n_s = 200;
                c.scaling.n_t = 200;
            }
            _ => {}
        }
        list.push(c);
    }
    list
}

fn determinism() -> Line {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut differing = Vec::new();
    let mut errors = Vec::new();
    for (ca, cb) in quick_configs(a.path()).iter().zip(quick_configs(b.path())) {
        match (run(ca), run(&cb)) {
            (Ok(x), Ok(y)) => {
                let same = x.artifacts == y.artifacts
                    && fs::read(x.dir.join("manifest.json")).unwrap() == fs::read(y.dir.join("manifest.json")).unwrap();
                if !same {
                    differing.push(ca.command.as_str());
                }
            }
            (ra, rb) => errors.push(format!("{}: {:?} / {:?}", ca.command.as_str(), ra.err(), rb.err())),
        }
    }
    // the worker count must not leak into results
    let exe = env!("CARGO_BIN_EXE_fraclab");
    let manifests: Vec<Vec<u8>> = ["1", "3"]
        .iter()
        .map(|threads| {
            let dir = tempfile::tempdir().unwrap();
            let status = Process::new(exe)
                .args(["hardy", "--samples", "50000", "--out"])
                .arg(dir.path())
                .env(fraclab::cli::THREADS_ENV, threads)
                .output()
                .unwrap();
            assert!(status.status.success());
            fs::read(dir.path().join("hardy-seed1/manifest.json")).unwrap()
        })
        .collect();
    let threads_ok = manifests[0] == manifests[1];
    Line {
        id: "determinism",
        pass: differing.is_empty() && errors.is_empty() && threads_ok,
        detail: format!(
            "9 commands re-run: differing {differing:?}, errors {errors:?}; FRACLAB_THREADS 1 vs 3 identical: {threads_ok}"
        ),
    }
}

fn main() {
    let koch_cfg = SampleConfig::with_seed(1, 1_000_000);
    let koch_domain = Domain::<f64>::koch_prefractal(7).unwrap();
    let start = Instant::now();
    assouad_codims_detailed(&koch_domain, &koch_cfg.derive("koch-codims"), &CodimOptions::default()).unwrap();
    let codim_secs = start.elapsed().as_secs_f64();
    let koch = koch_case_study::<f64>(&koch_cfg).unwrap();

    let mut lines = koch_criteria(&koch, codim_secs, koch_cfg.samples);
    lines.extend(lipschitz_and_floor(&koch));
    lines.push(hardy_oracle());
    lines.push(seminorm_oracle());
    lines.push(scaling_suite(&koch));
    lines.push(determinism());

    let mut unexpected = Vec::new();
    for l in &lines {
        let known = KNOWN_RED.contains(&l.id);
        let tag = match (l.pass, known) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known)",
            (true, true) => "PASS (listed as known red)",
        };
        println!("{tag} {}: {}", l.id, l.detail);
        if !l.pass && !known {
            unexpected.push(l.id);
        }
    }
    // The floor half of the cutoff criterion is attainable and must hold.
    let floor_ok = koch.cutoff_above.floor_exceeds(FLOOR_STDERRS);
    println!("{} cutoff-floor-component: sp {} floor > {FLOOR_STDERRS} se", if floor_ok { "PASS" } else { "FAIL" }, koch.cutoff_above.sp);
    if !floor_ok {
        unexpected.push("cutoff-floor-component");
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("acceptance: {passed}/{} criteria pass, known red {KNOWN_RED:?}", lines.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

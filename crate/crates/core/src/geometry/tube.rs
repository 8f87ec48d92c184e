//! Tubular-neighbourhood areas.
//!
//! The grid method counts cells of the uniform grid `h·ℤ²` whose centres
//! satisfy the tube predicate. Blocks of `2^k × 2^k` cells are decided
//! wholesale when the 1-Lipschitz bound on the distance function settles
//! every centre in them, so only cells near a level set are visited one
//! by one. The count equals the plain cell-centre count exactly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::domain::{BoundarySet, Domain};
use super::primitives::{Aabb, Point2};
use crate::error::{Error, Result};
use crate::sampling::{mc_mean_ok, SampleConfig};
use crate::scalar::Real;

/// Largest number of grid cells allowed along one axis of a cover.
pub const MAX_CELLS_PER_AXIS: u64 = 1 << 22;

/// Cell size as a fraction of the tube radius.
pub const CELLS_PER_RADIUS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TubeMethod {
    Grid,
    Montecarlo,
}

impl TubeMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TubeMethod::Grid => "grid",
            TubeMethod::Montecarlo => "montecarlo",
        }
    }
}

/// One tube area measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubeMeasurement<F> {
    pub domain: String,
    pub r: F,
    /// Outer ball radius for localized measurements.
    pub big_r: Option<F>,
    pub center: Option<Point2<F>>,
    pub volume: F,
    pub stderr: F,
    pub method: TubeMethod,
    /// Grid cells counted, or Monte Carlo samples drawn.
    pub samples: u64,
    /// Grid cell size (zero for Monte Carlo).
    pub h: F,
    pub seed: u64,
}

enum Block {
    Empty,
    Full,
    Split,
}

/// Cell size used for tube radius `r` on a set of diameter `diam`.
pub fn grid_cell<F: Real>(r: F, diam: F, cfg: &SampleConfig) -> F {
    let h = r.min(diam / F::lit(16.0)) / F::lit(CELLS_PER_RADIUS);
    if cfg.grid_h > 0.0 {
        h.min(F::lit(cfg.grid_h))
    } else {
        h
    }
}

/// Counts grid cells of size `h` with centre in the predicate region.
/// `block(c, rad)` may settle every centre within `rad` of `c`.
fn count_cells<F, B, L>(cover: Aabb<F>, h: F, block: B, leaf: L) -> Result<u64>
where
    F: Real,
    B: Fn(Point2<F>, F) -> Block + Sync,
    L: Fn(Point2<F>) -> bool + Sync,
{
    if !(h > F::zero()) {
        return Err(Error::InvalidParameter(format!("cell size {h}")));
    }
    let span = cover.width().max(cover.height()) / h;
    if !(span.as_f64() <= MAX_CELLS_PER_AXIS as f64) {
        return Err(Error::ResolutionInfeasible {
            required: h.as_f64(),
            cells_per_axis: span.as_f64(),
            cap: MAX_CELLS_PER_AXIS,
        });
    }
    let hf = h.as_f64();
    let lo = |v: F| (v.as_f64() / hf).floor() as i64 - 1;
    let hi = |v: F| (v.as_f64() / hf).ceil() as i64 + 1;
    let (ix0, ix1) = (lo(cover.min.x), hi(cover.max.x));
    let (iy0, iy1) = (lo(cover.min.y), hi(cover.max.y));
    let n = (ix1 - ix0).max(iy1 - iy0).max(1) as u64;
    // about 32 root blocks per axis
    let k = 64 - (n / 32).max(1).leading_zeros() - 1;
    let b = 1i64 << k;
    let roots: Vec<(i64, i64)> = (iy0.div_euclid(b)..=iy1.div_euclid(b))
        .flat_map(|by| (ix0.div_euclid(b)..=ix1.div_euclid(b)).map(move |bx| (bx, by)))
        .collect();
    let sqrt2 = F::SQRT_2();
    let count = roots
        .par_iter()
        .map(|&(bx, by)| {
            let c = Point2::new(
                F::lit((bx * b) as f64 + b as f64 * 0.5) * h,
                F::lit((by * b) as f64 + b as f64 * 0.5) * h,
            );
            visit(c, F::lit(b as f64 * 0.5) * h, k, sqrt2, &block, &leaf)
        })
        .sum();
    Ok(count)
}

fn visit<F, B, L>(c: Point2<F>, half: F, k: u32, sqrt2: F, block: &B, leaf: &L) -> u64
where
    F: Real,
    B: Fn(Point2<F>, F) -> Block,
    L: Fn(Point2<F>) -> bool,
{
    if k == 0 {
        return leaf(c) as u64;
    }
    match block(c, half * sqrt2) {
        Block::Empty => 0,
        Block::Full => 1u64 << (2 * k),
        Block::Split => {
            let q = half * F::lit(0.5);
            [(-q, -q), (q, -q), (-q, q), (q, q)]
                .into_iter()
                .map(|(dx, dy)| visit(c + Point2::new(dx, dy), q, k - 1, sqrt2, block, leaf))
                .sum()
        }
    }
}

fn check_radius<F: Real>(r: F) -> Result<()> {
    if r > F::zero() && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tube radius must be positive, got {r}")))
    }
}

/// `|Ω_r| = |{x ∈ Ω : d_Ω(x) ≤ r}|` on the grid of cell size `h`.
pub fn inner_tube_volume_grid<F: Real>(domain: &Domain<F>, r: F, h: F) -> Result<u64> {
    check_radius(r)?;
    count_cells(
        domain.bbox(),
        h,
        |c, rad| {
            let (d, inside) = domain.classify(c);
            if d - rad > r || (d > rad && !inside) {
                Block::Empty
            } else if d + rad <= r && d > rad {
                Block::Full
            } else {
                Block::Split
            }
        },
        |c| {
            let (d, inside) = domain.classify(c);
            inside && d <= r
        },
    )
}

/// Inner tube volume `|Ω_r|` by grid counting (cell size `≤ r/8`) or,
/// with `method = Montecarlo`, by uniform sampling of the bounding box.
pub fn inner_tube_volume<F: Real>(
    domain: &Domain<F>,
    r: F,
    method: TubeMethod,
    cfg: &SampleConfig,
) -> Result<TubeMeasurement<F>> {
    check_radius(r)?;
    let (volume, stderr, samples, h) = match method {
        TubeMethod::Grid => {
            let h = grid_cell(r, domain.diameter(), cfg);
            let n = inner_tube_volume_grid(domain, r, h)?;
            (F::lit(n as f64) * h * h, F::zero(), n, h)
        }
        TubeMethod::Montecarlo => {
            let b = domain.bbox();
            let est = mc_mean_ok(cfg.seed, cfg.samples, |rng, _| {
                let p = b.lerp(rng.uniform(), rng.uniform());
                let (d, inside) = domain.classify(p);
                if inside && d <= r {
                    F::one()
                } else {
                    F::zero()
                }
            });
            (est.value * b.area(), est.stderr * b.area(), cfg.samples as u64, F::zero())
        }
    };
    Ok(TubeMeasurement {
        domain: domain.label().to_string(),
        r,
        big_r: None,
        center: None,
        volume,
        stderr,
        method,
        samples,
        h,
        seed: cfg.seed,
    })
}

/// Inner tube volumes for an increasing list of radii on one shared grid,
/// so the series is exactly nondecreasing.
pub fn inner_tube_series<F: Real>(
    domain: &Domain<F>,
    radii: &[F],
    cfg: &SampleConfig,
) -> Result<Vec<TubeMeasurement<F>>> {
    let r_min = radii
        .iter()
        .copied()
        .fold(F::infinity(), F::min);
    check_radius(r_min)?;
    let h = grid_cell(r_min, domain.diameter(), cfg);
    radii
        .iter()
        .map(|&r| {
            let n = inner_tube_volume_grid(domain, r, h)?;
            Ok(TubeMeasurement {
                domain: domain.label().to_string(),
                r,
                big_r: None,
                center: None,
                volume: F::lit(n as f64) * h * h,
                stderr: F::zero(),
                method: TubeMethod::Grid,
                samples: n,
                h,
                seed: cfg.seed,
            })
        })
        .collect()
}

/// Cell count of the two-sided tube `{y : dist(y, E) ≤ r}`, optionally
/// intersected with the closed ball `B̄(x, R)`.
pub fn two_sided_tube_grid<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    r: F,
    ball: Option<(Point2<F>, F)>,
    h: F,
) -> Result<u64> {
    check_radius(r)?;
    let mut cover = set.set_bbox();
    cover = Aabb::new(
        cover.min - Point2::new(r, r),
        cover.max + Point2::new(r, r),
    );
    if let Some((x, big_r)) = ball {
        let bb = Aabb::around(x, big_r);
        cover = Aabb::new(
            Point2::new(cover.min.x.max(bb.min.x), cover.min.y.max(bb.min.y)),
            Point2::new(cover.max.x.min(bb.max.x), cover.max.y.min(bb.max.y)),
        );
    }
    count_cells(
        cover,
        h,
        |c, rad| {
            let mut ball_full = true;
            if let Some((x, big_r)) = ball {
                let dc = c.dist(x);
                if dc - rad > big_r {
                    return Block::Empty;
                }
                ball_full = dc + rad <= big_r;
            }
            let d = set.dist_set(c);
            if d - rad > r {
                Block::Empty
            } else if d + rad <= r && ball_full {
                Block::Full
            } else {
                Block::Split
            }
        },
        |c| {
            if let Some((x, big_r)) = ball {
                if c.dist(x) > big_r {
                    return false;
                }
            }
            set.dist_set(c) <= r
        },
    )
}

/// Global two-sided tube area `|Ẽ_r|` for the set `E`.
pub fn two_sided_tube_volume<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    r: F,
    cfg: &SampleConfig,
) -> Result<TubeMeasurement<F>> {
    let h = grid_cell(r, set.set_diameter(), cfg);
    let n = two_sided_tube_grid(set, r, None, h)?;
    Ok(TubeMeasurement {
        domain: set.label().to_string(),
        r,
        big_r: None,
        center: None,
        volume: F::lit(n as f64) * h * h,
        stderr: F::zero(),
        method: TubeMethod::Grid,
        samples: n,
        h,
        seed: cfg.seed,
    })
}

/// Checks `0 < r < R < diam` and that `x` lies on the set.
pub fn check_localized<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    x: Point2<F>,
    r: F,
    big_r: F,
) -> Result<()> {
    let diam = set.set_diameter();
    if !(r > F::zero() && r < big_r && big_r < diam) {
        return Err(Error::ScaleOrdering {
            r: r.as_f64(),
            big_r: big_r.as_f64(),
            diam: diam.as_f64(),
        });
    }
    if !(set.dist_set(x) <= diam * F::lit(1e-9)) {
        return Err(Error::NotOnBoundary(x.x.as_f64(), x.y.as_f64()));
    }
    Ok(())
}

/// `|Ẽ_r ∩ B(x, R)|` for a boundary point `x`.
pub fn boundary_tube_ball_volume<F: Real, E: BoundarySet<F> + ?Sized>(
    set: &E,
    x: Point2<F>,
    r: F,
    big_r: F,
    method: TubeMethod,
    cfg: &SampleConfig,
) -> Result<TubeMeasurement<F>> {
    check_localized(set, x, r, big_r)?;
    let (volume, stderr, samples, h) = match method {
        TubeMethod::Grid => {
            let h = grid_cell(r, set.set_diameter(), cfg);
            let n = two_sided_tube_grid(set, r, Some((x, big_r)), h)?;
            (F::lit(n as f64) * h * h, F::zero(), n, h)
        }
        TubeMethod::Montecarlo => {
            // uniform in the ball via polar coordinates with sqrt radius
            let est = mc_mean_ok(cfg.seed, cfg.samples, |rng, _| {
                let rho = big_r * rng.uniform::<F>().sqrt();
                let theta = F::lit(2.0) * F::PI() * rng.uniform::<F>();
                let y = x + Point2::from_polar(rho, theta);
                if set.dist_set(y) <= r {
                    F::one()
                } else {
                    F::zero()
                }
            });
            let area = F::PI() * big_r * big_r;
            (est.value * area, est.stderr * area, cfg.samples as u64, F::zero())
        }
    };
    Ok(TubeMeasurement {
        domain: set.label().to_string(),
        r,
        big_r: Some(big_r),
        center: Some(x),
        volume,
        stderr,
        method,
        samples,
        h,
        seed: cfg.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::OpenCurve;

    fn brute_inner(domain: &Domain<f64>, r: f64, h: f64) -> u64 {
        let b = domain.bbox();
        let (i0, i1) = ((b.min.x / h).floor() as i64 - 1, (b.max.x / h).ceil() as i64 + 1);
        let (j0, j1) = ((b.min.y / h).floor() as i64 - 1, (b.max.y / h).ceil() as i64 + 1);
        let mut n = 0;
        for i in i0..=i1 {
            for j in j0..=j1 {
                let c = Point2::new((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
                let (d, inside) = domain.classify(c);
                n += (inside && d <= r) as u64;
            }
        }
        n
    }

    #[test]
    fn quadtree_equals_uniform_grid() {
        for domain in [
            Domain::unit_disk(),
            Domain::koch_prefractal(3).unwrap(),
            Domain::comb(3, 0.5).unwrap(),
        ] {
            for r in [0.02, 0.07, 0.3] {
                let h = r / 8.0;
                assert_eq!(
                    inner_tube_volume_grid(&domain, r, h).unwrap(),
                    brute_inner(&domain, r, h),
                    "{} r={r}",
                    domain.label()
                );
            }
        }
    }

    #[test]
    fn disk_annulus() {
        let d = Domain::unit_disk();
        let m = inner_tube_volume(&d, 0.1, TubeMethod::Grid, &SampleConfig::default()).unwrap();
        let exact = std::f64::consts::PI * 0.19;
        assert!((m.volume - exact).abs() < 0.01 * exact);
        let m = inner_tube_volume(&d, 1.5, TubeMethod::Grid, &SampleConfig::default()).unwrap();
        assert!((m.volume - std::f64::consts::PI).abs() < 0.01);
    }

    #[test]
    fn grid_and_montecarlo_agree() {
        let cfg = SampleConfig::with_seed(3, 100_000);
        for d in [Domain::<f64>::unit_disk(), Domain::koch_prefractal(4).unwrap()] {
            let g = inner_tube_volume(&d, 0.05, TubeMethod::Grid, &cfg).unwrap();
            let m = inner_tube_volume(&d, 0.05, TubeMethod::Montecarlo, &cfg).unwrap();
            assert!((g.volume - m.volume).abs() < 3.0 * m.stderr + 1e-3, "{g:?} {m:?}");
        }
    }

    #[test]
    fn segment_strip() {
        let seg = OpenCurve::<f64>::segment(1.0);
        let x = Point2::new(0.5, 0.0);
        let m = boundary_tube_ball_volume(&seg, x, 0.01, 0.1, TubeMethod::Grid, &SampleConfig::default())
            .unwrap();
        assert!((m.volume - 0.004).abs() < 0.1 * 0.004, "{}", m.volume);
    }

    #[test]
    fn localized_errors() {
        let d = Domain::unit_disk();
        let cfg = SampleConfig::default();
        let x = Point2::new(1.0, 0.0);
        assert!(matches!(
            boundary_tube_ball_volume(&d, x, 0.2, 0.1, TubeMethod::Grid, &cfg),
            Err(Error::ScaleOrdering { .. })
        ));
        assert!(matches!(
            boundary_tube_ball_volume(&d, Point2::new(0.5, 0.0), 0.01, 0.1, TubeMethod::Grid, &cfg),
            Err(Error::NotOnBoundary(..))
        ));
        assert!(inner_tube_volume(&d, 0.0, TubeMethod::Grid, &cfg).is_err());
        assert!(matches!(
            inner_tube_volume(&d, 1e-9, TubeMethod::Grid, &cfg),
            Err(Error::ResolutionInfeasible { .. })
        ));
    }
}

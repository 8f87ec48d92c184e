//! Bounded planar domains represented by exact distance oracles.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::polyline::Polyline;
use super::primitives::{point_set_diameter, shoelace, Aabb, Point2};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Ambient dimension. Every formula keeps it symbolic through this constant.
pub const AMBIENT_DIM: usize = 2;

/// The ambient dimension as a scalar.
pub fn ambient_dim<F: Real>() -> F {
    F::from_usize_lossy(AMBIENT_DIM)
}

/// Volume of the unit ball in the ambient space.
pub fn unit_ball_volume<F: Real>() -> F {
    F::PI()
}

/// Surface measure of the unit sphere in the ambient space.
pub fn unit_sphere_area<F: Real>() -> F {
    F::lit(2.0) * F::PI()
}

/// Largest admissible Koch substitution level.
pub const MAX_KOCH_LEVEL: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Disk,
    Rectangle,
    Polygon,
    KochPrefractal,
    Comb,
    Reduction,
}

/// A closed set described by its distance function, used for two-sided
/// tube measurements. Domains and open curves both implement it.
pub trait BoundarySet<F: Real>: Sync {
    fn label(&self) -> &str;
    /// Euclidean distance to the set.
    fn dist_set(&self, p: Point2<F>) -> F;
    fn set_bbox(&self) -> Aabb<F>;
    fn set_diameter(&self) -> F;
    /// Total length of the set (a rectifiable curve).
    fn set_length(&self) -> F;
    /// Point at fraction `u ∈ [0,1)` of the arc length.
    fn set_point(&self, u: F) -> Point2<F>;
    /// Smallest length scale the representation resolves; zero when exact.
    fn resolution(&self) -> F;
}

/// Reduction construction: the union of a bounded domain with the
/// exterior of a large closed ball around an interior point.
#[derive(Debug, Clone)]
pub struct Reduction<F> {
    pub inner: Domain<F>,
    pub x0: Point2<F>,
    /// Diameter `M` of the inner domain.
    pub m: F,
    /// Radius `2M` of the excluded ball.
    pub outer_radius: F,
    /// Half-width `8M` of the working box the unbounded piece is clipped to.
    pub clip_half_width: F,
}

#[derive(Debug, Clone)]
enum Shape<F> {
    Disk { center: Point2<F>, radius: F },
    Polygon(Arc<Polyline<F>>),
    Reduction(Arc<Reduction<F>>),
}

/// Bounded open planar set with an exact distance-to-boundary oracle.
#[derive(Debug, Clone)]
pub struct Domain<F> {
    kind: DomainKind,
    label: String,
    shape: Shape<F>,
    bbox: Aabb<F>,
    diameter: F,
    area_exact: Option<F>,
    resolution: F,
}

impl<F: Real> Domain<F> {
    pub fn disk(center: Point2<F>, radius: F) -> Result<Self> {
        if !(radius > F::zero()) || !center.is_finite() {
            return Err(Error::InvalidParameter(format!("disk radius {radius}")));
        }
        Ok(Self {
            kind: DomainKind::Disk,
            label: "disk".into(),
            shape: Shape::Disk { center, radius },
            bbox: Aabb::around(center, radius),
            diameter: F::lit(2.0) * radius,
            area_exact: Some(F::PI() * radius * radius),
            resolution: F::zero(),
        })
    }

    pub fn unit_disk() -> Self {
        Self::disk(Point2::origin(), F::one()).expect("valid disk")
    }

    pub fn rectangle(min: Point2<F>, max: Point2<F>) -> Result<Self> {
        if !(max.x > min.x && max.y > min.y) {
            return Err(Error::InvalidParameter("rectangle corners".into()));
        }
        let v = vec![min, Point2::new(max.x, min.y), max, Point2::new(min.x, max.y)];
        let mut d = Self::from_vertices(DomainKind::Rectangle, "rectangle", v)?;
        d.area_exact = Some((max.x - min.x) * (max.y - min.y));
        Ok(d)
    }

    /// The open unit square `(0,1)²`.
    pub fn unit_square() -> Self {
        let mut d = Self::rectangle(Point2::origin(), Point2::new(F::one(), F::one()))
            .expect("valid square");
        d.label = "square".into();
        d
    }

    /// Simple polygon; vertex orientation is normalised to counter-clockwise.
    pub fn polygon(vertices: Vec<Point2<F>>) -> Result<Self> {
        let mut d = Self::from_vertices(DomainKind::Polygon, "polygon", vertices)?;
        if let Shape::Polygon(pl) = &d.shape {
            d.area_exact = Some(shoelace(pl.vertices()));
        }
        Ok(d)
    }

    /// Koch snowflake prefractal of the given substitution level, built
    /// from the equilateral triangle of side 1.
    pub fn koch_prefractal(level: u32) -> Result<Self> {
        if level > MAX_KOCH_LEVEL {
            return Err(Error::LevelOutOfRange(level));
        }
        let h = F::lit(3.0).sqrt() * F::lit(0.5);
        let mut v = vec![
            Point2::new(F::zero(), F::zero()),
            Point2::new(F::one(), F::zero()),
            Point2::new(F::lit(0.5), h),
        ];
        let turn = -F::PI() / F::lit(3.0);
        let third = F::one() / F::lit(3.0);
        for _ in 0..level {
            let n = v.len();
            let mut next = Vec::with_capacity(4 * n);
            for i in 0..n {
                let a = v[i];
                let b = v[(i + 1) % n];
                let d = (b - a) * third;
                let p1 = a + d;
                let p3 = a + d * F::lit(2.0);
                // outward bump: right of the edge for a counter-clockwise polygon
                let peak = p1 + d.rotate(turn);
                next.extend_from_slice(&[a, p1, peak, p3]);
            }
            v = next;
        }
        let mut d = Self::from_vertices(
            DomainKind::KochPrefractal,
            &format!("koch{level}"),
            v,
        )?;
        d.area_exact = Some(koch_area(level));
        d.resolution = F::lit(3f64.powi(-(level as i32)));
        Ok(d)
    }

    /// Comb: a base bar with `teeth` rectangular teeth of the given depth.
    pub fn comb(teeth: usize, depth: F) -> Result<Self> {
        if teeth == 0 || !(depth > F::zero()) {
            return Err(Error::InvalidParameter("comb needs teeth > 0, depth > 0".into()));
        }
        let base = F::lit(0.2);
        let pitch = F::one() / F::from_usize_lossy(teeth);
        let w = pitch * F::lit(0.5);
        let top = base + depth;
        let mut v = vec![
            Point2::new(F::zero(), F::zero()),
            Point2::new(F::one(), F::zero()),
            Point2::new(F::one(), base),
        ];
        for k in (0..teeth).rev() {
            let x0 = F::from_usize_lossy(k) * pitch;
            v.push(Point2::new(x0 + w, base));
            v.push(Point2::new(x0 + w, top));
            v.push(Point2::new(x0, top));
            if k > 0 {
                v.push(Point2::new(x0, base));
            }
        }
        Self::polygon(v).map(|mut d| {
            d.kind = DomainKind::Comb;
            d.label = format!("comb{teeth}");
            d
        })
    }

    fn from_vertices(kind: DomainKind, label: &str, mut v: Vec<Point2<F>>) -> Result<Self> {
        if v.len() < 3 || v.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidParameter("polygon needs 3 finite vertices".into()));
        }
        let area = shoelace(&v);
        if area == F::zero() {
            return Err(Error::InvalidParameter("degenerate polygon".into()));
        }
        if area < F::zero() {
            v.reverse();
        }
        let diameter = point_set_diameter(&v);
        let pl = Polyline::new(v, true);
        Ok(Self {
            kind,
            label: label.into(),
            bbox: pl.bbox(),
            diameter,
            area_exact: None,
            resolution: F::zero(),
            shape: Shape::Polygon(Arc::new(pl)),
        })
    }

    /// `G = Ω ∪ (ℝ² \ B̄(x0, 2M))` with `M = diam Ω`, clipped to the box of
    /// half-width `8M` around `x0` for measurements.
    pub fn reduction(inner: &Domain<F>, x0: Point2<F>) -> Result<Self> {
        if !inner.inside(x0) {
            return Err(Error::NotInside(x0.x.as_f64(), x0.y.as_f64()));
        }
        let m = inner.diameter();
        let clip = F::lit(8.0) * m;
        let red = Reduction {
            inner: inner.clone(),
            x0,
            m,
            outer_radius: F::lit(2.0) * m,
            clip_half_width: clip,
        };
        let bbox = Aabb::around(x0, clip);
        Ok(Self {
            kind: DomainKind::Reduction,
            label: format!("reduction({})", inner.label),
            diameter: bbox.width().hypot(bbox.height()),
            bbox,
            area_exact: None,
            resolution: inner.resolution,
            shape: Shape::Reduction(Arc::new(red)),
        })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn bbox(&self) -> Aabb<F> {
        self.bbox
    }

    /// `M = diam Ω`.
    pub fn diameter(&self) -> F {
        self.diameter
    }

    pub fn area_exact(&self) -> Option<F> {
        self.area_exact
    }

    pub fn polyline(&self) -> Option<&Polyline<F>> {
        match &self.shape {
            Shape::Polygon(pl) => Some(pl),
            _ => None,
        }
    }

    pub fn reduction_parts(&self) -> Option<&Reduction<F>> {
        match &self.shape {
            Shape::Reduction(r) => Some(r),
            _ => None,
        }
    }

    /// Number of boundary edges for polygonal domains.
    pub fn edge_count(&self) -> Option<usize> {
        self.polyline().map(|p| p.num_segments())
    }

    /// `(d_Ω(p), p ∈ Ω)` from a single boundary query.
    pub fn classify(&self, p: Point2<F>) -> (F, bool) {
        match &self.shape {
            Shape::Disk { center, radius } => {
                let r = p.dist(*center);
                ((r - *radius).abs(), r < *radius)
            }
            Shape::Polygon(pl) => {
                let near = pl.nearest(p);
                (near.dist_sq.sqrt(), pl.contains_with(p, &near))
            }
            Shape::Reduction(red) => {
                let (d_in, in_inner) = red.inner.classify(p);
                let r = p.dist(red.x0);
                let d_out = (r - red.outer_radius).abs();
                let in_outer = r > red.outer_radius && self.bbox.contains(p);
                (d_in.min(d_out), in_inner || in_outer)
            }
        }
    }

    /// `d_Ω(p) = dist(p, ∂Ω)`, for `p` inside or outside.
    pub fn dist_boundary(&self, p: Point2<F>) -> F {
        match &self.shape {
            Shape::Disk { center, radius } => (p.dist(*center) - *radius).abs(),
            Shape::Polygon(pl) => pl.distance(p),
            Shape::Reduction(red) => red
                .inner
                .dist_boundary(p)
                .min((p.dist(red.x0) - red.outer_radius).abs()),
        }
    }

    pub fn inside(&self, p: Point2<F>) -> bool {
        match &self.shape {
            Shape::Disk { center, radius } => p.dist(*center) < *radius,
            Shape::Polygon(pl) => pl.contains(p),
            Shape::Reduction(_) => self.classify(p).1,
        }
    }

    /// Length of boundary within the closed disk `B(c, rho)`.
    pub fn boundary_length_within(&self, c: Point2<F>, rho: F) -> F {
        match &self.shape {
            Shape::Disk { center, radius } => circle_length_within(*center, *radius, c, rho),
            Shape::Polygon(pl) => pl.length_within(c, rho),
            Shape::Reduction(red) => {
                red.inner.boundary_length_within(c, rho)
                    + circle_length_within(red.x0, red.outer_radius, c, rho)
            }
        }
    }

    pub fn boundary_length(&self) -> F {
        match &self.shape {
            Shape::Disk { radius, .. } => F::lit(2.0) * F::PI() * *radius,
            Shape::Polygon(pl) => pl.length(),
            Shape::Reduction(red) => {
                red.inner.boundary_length() + F::lit(2.0) * F::PI() * red.outer_radius
            }
        }
    }

    /// Boundary point at arc-length fraction `u ∈ [0, 1)`.
    pub fn boundary_point(&self, u: F) -> Point2<F> {
        match &self.shape {
            Shape::Disk { center, radius } => {
                *center + Point2::from_polar(*radius, F::lit(2.0) * F::PI() * u)
            }
            Shape::Polygon(pl) => pl.point_at(u),
            Shape::Reduction(red) => {
                let li = red.inner.boundary_length();
                let total = self.boundary_length();
                let s = u * total;
                if s < li {
                    red.inner.boundary_point(s / li)
                } else {
                    let v = (s - li) / (total - li);
                    red.x0 + Point2::from_polar(red.outer_radius, F::lit(2.0) * F::PI() * v)
                }
            }
        }
    }

    /// Tolerance within which a point counts as lying on the boundary.
    pub fn snap_tolerance(&self) -> F {
        self.diameter * F::lit(1e-9)
    }

    pub fn on_boundary(&self, p: Point2<F>) -> bool {
        self.dist_boundary(p) <= self.snap_tolerance()
    }

    /// Smallest scale the boundary representation resolves (zero when exact).
    pub fn resolution(&self) -> F {
        self.resolution
    }

    /// Largest `d_Ω` over the domain, found by a coarse grid scan and
    /// local pattern search.
    pub fn inradius_estimate(&self) -> F {
        self.deepest_point().1
    }

    /// A point of (estimated) largest `d_Ω` and that distance.
    pub fn deepest_point(&self) -> (Point2<F>, F) {
        if let Shape::Disk { center, radius } = &self.shape {
            return (*center, *radius);
        }
        let b = self.bbox;
        let n = 96usize;
        let mut best = (F::zero(), b.center());
        for i in 0..n {
            for j in 0..n {
                let u = (F::from_usize_lossy(i) + F::lit(0.5)) / F::from_usize_lossy(n);
                let v = (F::from_usize_lossy(j) + F::lit(0.5)) / F::from_usize_lossy(n);
                let p = b.lerp(u, v);
                let (d, inside) = self.classify(p);
                if inside && d > best.0 {
                    best = (d, p);
                }
            }
        }
        let mut step = b.width().max(b.height()) / F::from_usize_lossy(n);
        let (mut d, mut p) = best;
        while step > d * F::lit(1e-7) && step > F::zero() {
            let mut moved = false;
            for k in 0..8 {
                let q = p + Point2::from_polar(step, F::PI() * F::from_usize_lossy(k) / F::lit(4.0));
                let (dq, inside) = self.classify(q);
                if inside && dq > d {
                    d = dq;
                    p = q;
                    moved = true;
                }
            }
            if !moved {
                step = step * F::lit(0.5);
            }
        }
        (p, d)
    }
}

impl<F: Real> BoundarySet<F> for Domain<F> {
    fn label(&self) -> &str {
        &self.label
    }
    fn dist_set(&self, p: Point2<F>) -> F {
        self.dist_boundary(p)
    }
    fn set_bbox(&self) -> Aabb<F> {
        self.bbox
    }
    fn set_diameter(&self) -> F {
        self.diameter
    }
    fn set_length(&self) -> F {
        self.boundary_length()
    }
    fn set_point(&self, u: F) -> Point2<F> {
        self.boundary_point(u)
    }
    fn resolution(&self) -> F {
        self.resolution
    }
}

/// Open polygonal curve, e.g. a single straight segment.
#[derive(Debug, Clone)]
pub struct OpenCurve<F> {
    label: String,
    curve: Polyline<F>,
    diameter: F,
}

impl<F: Real> OpenCurve<F> {
    pub fn new(label: &str, vertices: Vec<Point2<F>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidParameter("curve needs two vertices".into()));
        }
        let diameter = point_set_diameter(&vertices);
        Ok(Self {
            label: label.into(),
            curve: Polyline::new(vertices, false),
            diameter,
        })
    }

    /// Straight segment from `(0,0)` to `(len,0)`.
    pub fn segment(len: F) -> Self {
        Self::new(
            "segment",
            vec![Point2::origin(), Point2::new(len, F::zero())],
        )
        .expect("two vertices")
    }
}

impl<F: Real> BoundarySet<F> for OpenCurve<F> {
    fn label(&self) -> &str {
        &self.label
    }
    fn dist_set(&self, p: Point2<F>) -> F {
        self.curve.distance(p)
    }
    fn set_bbox(&self) -> Aabb<F> {
        self.curve.bbox()
    }
    fn set_diameter(&self) -> F {
        self.diameter
    }
    fn set_length(&self) -> F {
        self.curve.length()
    }
    fn set_point(&self, u: F) -> Point2<F> {
        self.curve.point_at(u)
    }
    fn resolution(&self) -> F {
        F::zero()
    }
}

/// Area of the level-`level` Koch prefractal over the unit triangle.
pub fn koch_area<F: Real>(level: u32) -> F {
    let mut sum = F::zero();
    let ratio = F::lit(4.0 / 9.0);
    let mut term = F::one();
    for _ in 0..level {
        sum = sum + term;
        term = term * ratio;
    }
    F::lit(3.0).sqrt() / F::lit(4.0) * (F::one() + sum / F::lit(3.0))
}

/// Arc length of the circle `|y - center| = radius` inside `B(c, rho)`.
fn circle_length_within<F: Real>(center: Point2<F>, radius: F, c: Point2<F>, rho: F) -> F {
    let dc = c.dist(center);
    let gap = (radius - dc).abs();
    if gap >= rho {
        return F::zero();
    }
    if dc + radius <= rho {
        return F::lit(2.0) * F::PI() * radius;
    }
    // half-angle θ with 4 dc R sin²(θ/2) = ρ² − (R − dc)²
    let num = (rho - gap) * (rho + gap);
    let sin_half = (num / (F::lit(4.0) * dc * radius)).sqrt().min(F::one());
    F::lit(4.0) * radius * sin_half.asin()
}

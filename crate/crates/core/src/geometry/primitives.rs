use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2<F> {
    pub x: F,
    pub y: F,
}

impl<F: Real> Point2<F> {
    #[inline]
    pub const fn new(x: F, y: F) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(F::zero(), F::zero())
    }

    #[inline]
    pub fn dot(self, o: Self) -> F {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2-D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> F {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm_sq(self) -> F {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> F {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Self) -> F {
        (self - o).norm()
    }

    /// Counter-clockwise rotation by `angle` radians.
    pub fn rotate(self, angle: F) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn from_polar(radius: F, angle: F) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(radius * c, radius * s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<F: Real> Add for Point2<F> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<F: Real> Sub for Point2<F> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<F: Real> Mul<F> for Point2<F> {
    type Output = Self;
    #[inline]
    fn mul(self, k: F) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl<F: Real> Neg for Point2<F> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aabb<F> {
    pub min: Point2<F>,
    pub max: Point2<F>,
}

impl<F: Real> Aabb<F> {
    pub fn new(min: Point2<F>, max: Point2<F>) -> Self {
        Self { min, max }
    }

    pub fn empty() -> Self {
        let inf = F::infinity();
        Self::new(Point2::new(inf, inf), Point2::new(-inf, -inf))
    }

    pub fn around(center: Point2<F>, half: F) -> Self {
        Self::new(
            Point2::new(center.x - half, center.y - half),
            Point2::new(center.x + half, center.y + half),
        )
    }

    pub fn grow(&mut self, p: Point2<F>) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(&self, o: &Self) -> Self {
        let mut b = *self;
        b.grow(o.min);
        b.grow(o.max);
        b
    }

    pub fn width(&self) -> F {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> F {
        self.max.y - self.min.y
    }

    pub fn area(&self) -> F {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point2<F> {
        Point2::new(
            (self.min.x + self.max.x) * F::lit(0.5),
            (self.min.y + self.max.y) * F::lit(0.5),
        )
    }

    pub fn contains(&self, p: Point2<F>) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// Squared distance from `p` to the box (zero inside).
    #[inline]
    pub fn dist_sq(&self, p: Point2<F>) -> F {
        let z = F::zero();
        let dx = (self.min.x - p.x).max(z).max(p.x - self.max.x);
        let dy = (self.min.y - p.y).max(z).max(p.y - self.max.y);
        dx * dx + dy * dy
    }

    /// Point with uniform coordinates `(u, v) ∈ [0,1)²` mapped into the box.
    pub fn lerp(&self, u: F, v: F) -> Point2<F> {
        Point2::new(
            self.min.x + u * self.width(),
            self.min.y + v * self.height(),
        )
    }
}

/// Closest point on segment `[a, b]` to `p`, as `(squared distance, t)`.
#[inline]
pub fn segment_closest<F: Real>(p: Point2<F>, a: Point2<F>, b: Point2<F>) -> (F, F) {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    let t = if len_sq > F::zero() {
        ((p - a).dot(ab) / len_sq).max(F::zero()).min(F::one())
    } else {
        F::zero()
    };
    let q = a + ab * t;
    ((p - q).norm_sq(), t)
}

/// Length of the part of segment `[a, b]` inside the closed disk `B(c, rho)`.
pub fn segment_length_in_disk<F: Real>(a: Point2<F>, b: Point2<F>, c: Point2<F>, rho: F) -> F {
    let ab = b - a;
    let len = ab.norm();
    if len == F::zero() {
        return F::zero();
    }
    let ac = c - a;
    // foot of the perpendicular and its distance, without squaring |ac|
    let along = ac.dot(ab) / len;
    let off = ab.cross(ac).abs() / len;
    if off >= rho {
        return F::zero();
    }
    let half = ((rho - off) * (rho + off)).sqrt();
    let t0 = (along - half).max(F::zero());
    let t1 = (along + half).min(len);
    (t1 - t0).max(F::zero())
}

/// Area of `B(c1, r1) ∩ B(c2, r2)` for centres `dist` apart.
pub fn disk_overlap_area<F: Real>(r1: F, r2: F, dist: F) -> F {
    if dist >= r1 + r2 {
        return F::zero();
    }
    if dist <= (r1 - r2).abs() {
        let r = r1.min(r2);
        return F::PI() * r * r;
    }
    let two = F::lit(2.0);
    let clamp = |v: F| v.max(-F::one()).min(F::one());
    let a1 = clamp((dist * dist + r1 * r1 - r2 * r2) / (two * dist * r1)).acos();
    let a2 = clamp((dist * dist + r2 * r2 - r1 * r1) / (two * dist * r2)).acos();
    let k = ((r1 + r2 - dist) * (dist + r1 - r2) * (dist - r1 + r2) * (dist + r1 + r2))
        .max(F::zero())
        .sqrt();
    r1 * r1 * a1 + r2 * r2 * a2 - k / two
}

/// Signed area of a closed polygon (positive when counter-clockwise).
pub fn shoelace<F: Real>(vertices: &[Point2<F>]) -> F {
    let n = vertices.len();
    let mut acc = F::zero();
    for i in 0..n {
        acc = acc + vertices[i].cross(vertices[(i + 1) % n]);
    }
    acc * F::lit(0.5)
}

/// Convex hull by monotone chain; returns counter-clockwise vertices.
pub fn convex_hull<F: Real>(points: &[Point2<F>]) -> Vec<Point2<F>> {
    let mut pts: Vec<Point2<F>> = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2<F>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 {
            let n = lower.len();
            if (lower[n - 1] - lower[n - 2]).cross(p - lower[n - 2]) <= F::zero() {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2<F>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 {
            let n = upper.len();
            if (upper[n - 1] - upper[n - 2]).cross(p - upper[n - 2]) <= F::zero() {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Largest pairwise distance in a point set.
pub fn point_set_diameter<F: Real>(points: &[Point2<F>]) -> F {
    let hull = convex_hull(points);
    let mut best = F::zero();
    for i in 0..hull.len() {
        for j in (i + 1)..hull.len() {
            best = best.max(hull[i].dist(hull[j]));
        }
    }
    best
}

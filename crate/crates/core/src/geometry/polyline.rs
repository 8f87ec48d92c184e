//! Polylines with a bounding-volume hierarchy over their segments.
//!
//! Distance, inside and local-length queries on prefractals with up to
//! `3·4^10` segments all go through [`SegmentTree`].

use super::primitives::{segment_closest, segment_length_in_disk, Aabb, Point2};
use crate::scalar::Real;

const LEAF_SIZE: usize = 4;

#[derive(Debug, Clone)]
struct Node<F> {
    bbox: Aabb<F>,
    /// Leaf: first slot in the permuted segment arrays. Inner: left child.
    first: u32,
    /// Number of segments for a leaf, 0 for an inner node.
    count: u32,
}

/// Result of a nearest-segment query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nearest<F> {
    pub dist_sq: F,
    /// Index of the segment in polyline order.
    pub segment: usize,
    /// Parameter of the closest point along the segment, in `[0, 1]`.
    pub t: F,
}

/// Bounding-volume hierarchy over a fixed set of segments.
#[derive(Debug, Clone)]
pub struct SegmentTree<F> {
    nodes: Vec<Node<F>>,
    a: Vec<Point2<F>>,
    b: Vec<Point2<F>>,
    id: Vec<u32>,
}

impl<F: Real> SegmentTree<F> {
    pub fn build(segments: &[(Point2<F>, Point2<F>)]) -> Self {
        let mut ids: Vec<u32> = (0..segments.len() as u32).collect();
        let mut tree = Self {
            nodes: Vec::with_capacity(2 * segments.len() / LEAF_SIZE + 2),
            a: Vec::with_capacity(segments.len()),
            b: Vec::with_capacity(segments.len()),
            id: Vec::with_capacity(segments.len()),
        };
        if segments.is_empty() {
            return tree;
        }
        tree.nodes.push(Node {
            bbox: Aabb::empty(),
            first: 0,
            count: 0,
        });
        tree.build_node(0, segments, &mut ids);
        tree
    }

    fn build_node(&mut self, node: usize, segs: &[(Point2<F>, Point2<F>)], ids: &mut [u32]) {
        let mut bbox = Aabb::empty();
        for &i in ids.iter() {
            let (a, b) = segs[i as usize];
            bbox.grow(a);
            bbox.grow(b);
        }
        self.nodes[node].bbox = bbox;
        if ids.len() <= LEAF_SIZE {
            self.nodes[node].first = self.a.len() as u32;
            self.nodes[node].count = ids.len() as u32;
            for &i in ids.iter() {
                let (a, b) = segs[i as usize];
                self.a.push(a);
                self.b.push(b);
                self.id.push(i);
            }
            return;
        }
        let centroid = |i: u32| {
            let (a, b) = segs[i as usize];
            (a + b) * F::lit(0.5)
        };
        let split_x = bbox.width() >= bbox.height();
        let mid = ids.len() / 2;
        ids.select_nth_unstable_by(mid, |&i, &j| {
            let (ci, cj) = (centroid(i), centroid(j));
            let (ki, kj) = if split_x { (ci.x, cj.x) } else { (ci.y, cj.y) };
            ki.partial_cmp(&kj).unwrap_or(std::cmp::Ordering::Equal)
        });
        let left = self.nodes.len();
        self.nodes.push(Node {
            bbox: Aabb::empty(),
            first: 0,
            count: 0,
        });
        self.nodes.push(Node {
            bbox: Aabb::empty(),
            first: 0,
            count: 0,
        });
        self.nodes[node].first = left as u32;
        let (lo, hi) = ids.split_at_mut(mid);
        self.build_node(left, segs, lo);
        self.build_node(left + 1, segs, hi);
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn bbox(&self) -> Aabb<F> {
        self.nodes.first().map(|n| n.bbox).unwrap_or_else(Aabb::empty)
    }

    /// Nearest segment to `p`.
    pub fn nearest(&self, p: Point2<F>) -> Nearest<F> {
        let mut best = Nearest {
            dist_sq: F::infinity(),
            segment: usize::MAX,
            t: F::zero(),
        };
        if self.nodes.is_empty() {
            return best;
        }
        let mut stack: [u32; 64] = [0; 64];
        let mut top = 1usize;
        stack[0] = 0;
        while top > 0 {
            top -= 1;
            let node = &self.nodes[stack[top] as usize];
            if node.bbox.dist_sq(p) >= best.dist_sq {
                continue;
            }
            if node.count > 0 {
                let s = node.first as usize;
                for k in s..s + node.count as usize {
                    let (d2, t) = segment_closest(p, self.a[k], self.b[k]);
                    if d2 < best.dist_sq {
                        best = Nearest {
                            dist_sq: d2,
                            segment: self.id[k] as usize,
                            t,
                        };
                    }
                }
            } else {
                let l = node.first as usize;
                let dl = self.nodes[l].bbox.dist_sq(p);
                let dr = self.nodes[l + 1].bbox.dist_sq(p);
                // nearer child is popped first
                if dl <= dr {
                    stack[top] = (l + 1) as u32;
                    stack[top + 1] = l as u32;
                } else {
                    stack[top] = l as u32;
                    stack[top + 1] = (l + 1) as u32;
                }
                top += 2;
            }
        }
        best
    }

    /// Total length of segments inside the closed disk `B(c, rho)`.
    pub fn length_within(&self, c: Point2<F>, rho: F) -> F {
        let mut total = F::zero();
        if self.nodes.is_empty() {
            return total;
        }
        let rho_sq = rho * rho;
        let mut stack = vec![0u32];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n as usize];
            if node.bbox.dist_sq(c) > rho_sq {
                continue;
            }
            if node.count > 0 {
                let s = node.first as usize;
                for k in s..s + node.count as usize {
                    total = total + segment_length_in_disk(self.a[k], self.b[k], c, rho);
                }
            } else {
                stack.push(node.first);
                stack.push(node.first + 1);
            }
        }
        total
    }
}

/// Open or closed polyline with arc-length parametrisation.
#[derive(Debug, Clone)]
pub struct Polyline<F> {
    vertices: Vec<Point2<F>>,
    closed: bool,
    cum_len: Vec<F>,
    tree: SegmentTree<F>,
}

impl<F: Real> Polyline<F> {
    pub fn new(vertices: Vec<Point2<F>>, closed: bool) -> Self {
        let n = vertices.len();
        let nseg = if closed { n } else { n.saturating_sub(1) };
        let segs: Vec<_> = (0..nseg)
            .map(|i| (vertices[i], vertices[(i + 1) % n]))
            .collect();
        let mut cum_len = Vec::with_capacity(nseg + 1);
        let mut acc = F::zero();
        cum_len.push(acc);
        for &(a, b) in &segs {
            acc = acc + a.dist(b);
            cum_len.push(acc);
        }
        Self {
            tree: SegmentTree::build(&segs),
            vertices,
            closed,
            cum_len,
        }
    }

    pub fn vertices(&self) -> &[Point2<F>] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn num_segments(&self) -> usize {
        self.cum_len.len() - 1
    }

    pub fn segment(&self, i: usize) -> (Point2<F>, Point2<F>) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn length(&self) -> F {
        *self.cum_len.last().unwrap()
    }

    pub fn bbox(&self) -> Aabb<F> {
        self.tree.bbox()
    }

    pub fn tree(&self) -> &SegmentTree<F> {
        &self.tree
    }

    /// Shortest segment length.
    pub fn min_segment_length(&self) -> F {
        self.cum_len
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(F::infinity(), F::min)
    }

    /// Point at fraction `u ∈ [0, 1)` of the total arc length.
    pub fn point_at(&self, u: F) -> Point2<F> {
        let target = u.max(F::zero()).min(F::one()) * self.length();
        let k = self.cum_len.partition_point(|&c| c <= target);
        let i = k.saturating_sub(1).min(self.num_segments() - 1);
        let (a, b) = self.segment(i);
        let seg_len = self.cum_len[i + 1] - self.cum_len[i];
        let t = if seg_len > F::zero() {
            ((target - self.cum_len[i]) / seg_len).min(F::one())
        } else {
            F::zero()
        };
        a + (b - a) * t
    }

    pub fn nearest(&self, p: Point2<F>) -> Nearest<F> {
        self.tree.nearest(p)
    }

    pub fn distance(&self, p: Point2<F>) -> F {
        self.tree.nearest(p).dist_sq.sqrt()
    }

    pub fn length_within(&self, c: Point2<F>, rho: F) -> F {
        self.tree.length_within(c, rho)
    }

    /// Inside test for a closed counter-clockwise polyline, decided from
    /// the nearest boundary feature.
    pub fn contains_with(&self, p: Point2<F>, near: &Nearest<F>) -> bool {
        debug_assert!(self.closed);
        if near.dist_sq == F::zero() {
            return false;
        }
        let n = self.vertices.len();
        let i = near.segment;
        let eps = F::lit(1e-12);
        let vertex = if near.t <= eps {
            Some(i)
        } else if near.t >= F::one() - eps {
            Some((i + 1) % n)
        } else {
            None
        };
        match vertex {
            None => {
                let (a, b) = self.segment(i);
                (b - a).cross(p - a) > F::zero()
            }
            Some(v) => {
                let prev = self.vertices[(v + n - 1) % n];
                let cur = self.vertices[v];
                let next = self.vertices[(v + 1) % n];
                let e1 = cur - prev;
                let e2 = next - cur;
                let l1 = e1.cross(p - cur) > F::zero();
                let l2 = e2.cross(p - cur) > F::zero();
                if e1.cross(e2) >= F::zero() {
                    l1 && l2
                } else {
                    l1 || l2
                }
            }
        }
    }

    pub fn contains(&self, p: Point2<F>) -> bool {
        self.contains_with(p, &self.nearest(p))
    }

    /// Even-odd crossing count, linear in the number of segments.
    pub fn crossing_contains(&self, p: Point2<F>) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

//! Planar domains, distance oracles and tube measurements.

pub mod domain;
pub mod plump;
pub mod polyline;
pub mod primitives;
pub mod tube;

pub use domain::{
    ambient_dim, koch_area, unit_ball_volume, unit_sphere_area, BoundarySet, Domain, DomainKind,
    OpenCurve, Reduction, AMBIENT_DIM, MAX_KOCH_LEVEL,
};
pub use plump::{plumpness_check, plumpness_check_with, PlumpOptions, PlumpnessReport};
pub use polyline::{Nearest, Polyline, SegmentTree};
pub use primitives::{disk_overlap_area, Aabb, Point2};

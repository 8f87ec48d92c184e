//! Numerical experiments on the density of compactly supported smooth
//! functions in fractional Sobolev spaces over planar domains with
//! rough boundaries.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar for the common types. The CLI and the
//! CSV artifacts use `f64`.

// `!(x > 0)` rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dimension;
pub mod error;
pub mod experiments;
pub mod fit;
pub mod geometry;
pub mod io;
pub mod sampling;
pub mod scalar;
pub mod scaling;
pub mod sobolev;

pub use error::{Error, Result};
pub use sampling::{Estimate, SampleConfig};
pub use scalar::Real;

pub type Point = geometry::Point2<f64>;
pub type Domain = geometry::Domain<f64>;
pub type Field = sobolev::ScalarField<f64>;
pub type Params = sobolev::SobolevParams<f64>;
pub type Scaling = scaling::ScalingFunction<f64>;
pub type DimensionEstimate = dimension::DimensionEstimate<f64>;
pub type CutoffSeries = experiments::CutoffSeries<f64>;
pub type KochReport = experiments::KochReport<f64>;

pub type PointF32 = geometry::Point2<f32>;
pub type DomainF32 = geometry::Domain<f32>;
pub type FieldF32 = sobolev::ScalarField<f32>;
pub type ParamsF32 = sobolev::SobolevParams<f32>;
pub type ScalingF32 = scaling::ScalingFunction<f32>;
pub type DimensionEstimateF32 = dimension::DimensionEstimate<f32>;

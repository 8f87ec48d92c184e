//! Run configuration: TOML file with per-command sections, overridden by flags.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{Domain, Point2, MAX_KOCH_LEVEL};
use crate::scaling::ScalingFunction;
use crate::sobolev::ScalarField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Dimension,
    Tube,
    Seminorm,
    Hardy,
    Density,
    Cutoff,
    Koch,
    Reduction,
    Scaling,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Dimension => "dimension",
            Command::Tube => "tube",
            Command::Seminorm => "seminorm",
            Command::Hardy => "hardy",
            Command::Density => "density",
            Command::Cutoff => "cutoff",
            Command::Koch => "koch",
            Command::Reduction => "reduction",
            Command::Scaling => "scaling",
        }
    }

    /// Commands that read `s` and `p`.
    pub fn uses_params(self) -> bool {
        matches!(
            self,
            Command::Seminorm | Command::Hardy | Command::Density | Command::Cutoff | Command::Reduction
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum DomainName {
    Disk,
    Square,
    Rectangle,
    Polygon,
    Koch,
    Comb,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DomainSpec {
    pub kind: DomainName,
    pub level: u32,
    pub radius: f64,
    pub width: f64,
    pub height: f64,
    pub teeth: usize,
    pub depth: f64,
    pub vertices: Vec<[f64; 2]>,
}

impl Default for DomainSpec {
    fn default() -> Self {
        Self {
            kind: DomainName::Disk,
            level: 7,
            radius: 1.0,
            width: 1.0,
            height: 1.0,
            teeth: 4,
            depth: 0.5,
            vertices: Vec::new(),
        }
    }
}

impl DomainSpec {
    pub fn build(&self) -> Result<Domain<f64>> {
        Ok(match self.kind {
            DomainName::Disk => Domain::disk(Point2::origin(), self.radius)?,
            DomainName::Square => Domain::unit_square(),
            DomainName::Rectangle => {
                Domain::rectangle(Point2::origin(), Point2::new(self.width, self.height))?
            }
            DomainName::Polygon => {
                Domain::polygon(self.vertices.iter().map(|v| Point2::new(v[0], v[1])).collect())?
            }
            DomainName::Koch => Domain::koch_prefractal(self.level)?,
            DomainName::Comb => Domain::comb(self.teeth, self.depth)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FieldName {
    Const,
    Indicator,
    X1,
    X2,
    DistancePower,
    Ramp,
    Cutoff,
}

/// `param` is the constant for `const`, the exponent for
/// `distance_power`, the offset for `ramp` and the index for `cutoff`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FieldSpec {
    pub kind: FieldName,
    pub param: f64,
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self {
            kind: FieldName::Indicator,
            param: 1.0,
        }
    }
}

impl FieldSpec {
    pub fn build(&self, domain: &Domain<f64>) -> ScalarField<f64> {
        match self.kind {
            FieldName::Const => ScalarField::constant(self.param),
            FieldName::Indicator => ScalarField::indicator(),
            FieldName::X1 => ScalarField::coordinate(0),
            FieldName::X2 => ScalarField::coordinate(1),
            FieldName::DistancePower => ScalarField::distance_power(domain, self.param),
            FieldName::Ramp => ScalarField::ramp(domain, self.param),
            FieldName::Cutoff => ScalarField::cutoff(domain, self.param.max(1.0) as u32),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PhiKind {
    Power,
    Tabulated,
}

/// `power`: `φ(t) = scale·t^exponent`. `tabulated`: log-linear
/// interpolation through `(ts, values)` with the claimed `(eta, h)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhiSpec {
    pub kind: PhiKind,
    pub exponent: f64,
    pub scale: f64,
    pub ts: Vec<f64>,
    pub values: Vec<f64>,
    pub eta: f64,
    pub h: f64,
}

impl Default for PhiSpec {
    fn default() -> Self {
        Self {
            kind: PhiKind::Power,
            exponent: 0.5,
            scale: 1.0,
            ts: Vec::new(),
            values: Vec::new(),
            eta: 0.5,
            h: 1.0,
        }
    }
}

impl PhiSpec {
    pub fn build(&self) -> Result<ScalingFunction<f64>> {
        match self.kind {
            PhiKind::Power => Ok(ScalingFunction::scaled_power(self.scale, self.exponent)),
            PhiKind::Tabulated => ScalingFunction::tabulated(&self.ts, &self.values, self.eta, self.h),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TubeMethodName {
    Grid,
    Montecarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TubeSection {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
    pub method: TubeMethodName,
}

impl Default for TubeSection {
    fn default() -> Self {
        Self {
            r_min: 1e-3,
            r_max: 1e-1,
            count: 13,
            method: TubeMethodName::Grid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DimensionSection {
    pub centers: usize,
    pub bootstrap: usize,
}

impl Default for DimensionSection {
    fn default() -> Self {
        Self {
            centers: 200,
            bootstrap: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DensitySection {
    pub kappa: f64,
}

impl Default for DensitySection {
    fn default() -> Self {
        Self { kappa: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KochSection {
    pub level: u32,
    pub cutoff_samples: usize,
}

impl Default for KochSection {
    fn default() -> Self {
        Self {
            level: 7,
            cutoff_samples: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReductionSection {
    pub phi: PhiSpec,
    pub r_loc: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_a: Option<f64>,
}

impl Default for ReductionSection {
    fn default() -> Self {
        Self {
            phi: PhiSpec::default(),
            r_loc: 2.0,
            x0: None,
            dim_a: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScalingSection {
    pub phi: PhiSpec,
    /// `η` tested by the WLSC and WUSC checks.
    pub eta: f64,
    pub h: f64,
    /// Breakpoint `M` of the extension.
    pub m: f64,
    pub r_loc: f64,
    /// Boundary Assouad dimension used to choose `η₀` when `η ≤ 0`.
    pub dim_a: f64,
    pub n_s: usize,
    pub n_t: usize,
}

impl Default for ScalingSection {
    fn default() -> Self {
        Self {
            phi: PhiSpec::default(),
            eta: 0.5,
            h: 1.0,
            m: 1.0,
            r_loc: 2.0,
            dim_a: 1.0,
            n_s: 1000,
            n_t: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub samples: usize,
    pub output_dir: PathBuf,
    pub s: f64,
    pub p: f64,
    pub n_grid: Vec<u32>,
    pub domain: DomainSpec,
    pub field: FieldSpec,
    pub tube: TubeSection,
    pub dimension: DimensionSection,
    pub density: DensitySection,
    pub koch: KochSection,
    pub reduction: ReductionSection,
    pub scaling: ScalingSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::Dimension,
            seed: 1,
            samples: 200_000,
            output_dir: PathBuf::from("out"),
            s: 0.5,
            p: 2.0,
            n_grid: crate::experiments::DEFAULT_N_GRID.to_vec(),
            domain: DomainSpec::default(),
            field: FieldSpec::default(),
            tube: TubeSection::default(),
            dimension: DimensionSection::default(),
            density: DensitySection::default(),
            koch: KochSection::default(),
            reduction: ReductionSection::default(),
            scaling: ScalingSection::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Dry-run check; returns one message per violated precondition.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        if self.command.uses_params() {
            if !(self.s > 0.0 && self.s < 1.0) {
                v.push(format!("order outside (0,1): s = {}", self.s));
            }
            if !(self.p >= 1.0 && self.p.is_finite()) {
                v.push(format!("integrability below 1: p = {}", self.p));
            }
        }
        if self.samples == 0 {
            v.push("samples must be positive".into());
        }
        let level = if self.command == Command::Koch {
            Some(self.koch.level)
        } else if self.domain.kind == DomainName::Koch {
            Some(self.domain.level)
        } else {
            None
        };
        if let Some(level) = level {
            if level > MAX_KOCH_LEVEL {
                v.push(format!("koch level {level} above {MAX_KOCH_LEVEL}"));
            }
        }
        if self.command != Command::Koch && self.command != Command::Scaling {
            if let Err(e) = self.domain.build() {
                v.push(format!("domain not buildable: {e}"));
            }
        }
        if matches!(self.command, Command::Cutoff | Command::Koch) {
            if self.n_grid.len() < 2 || self.n_grid[0] == 0 || self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
                v.push(format!("n_grid {:?} must be strictly increasing positive indices", self.n_grid));
            } else if let Some(level) = level {
                let n_max = *self.n_grid.last().expect("nonempty");
                let r_min = 3.0 / n_max as f64;
                if !crate::experiments::resolution_rule_holds(3f64.powi(-(level as i32)), r_min) {
                    v.push(format!(
                        "resolution rule 3^-level <= (3/n_max)/10 violated: level {level}, n_max {n_max}"
                    ));
                }
            }
        }
        if self.command == Command::Tube {
            let t = &self.tube;
            if !(t.r_min > 0.0 && t.r_min < t.r_max) {
                v.push(format!("tube radii need 0 < r_min < r_max, got [{}, {}]", t.r_min, t.r_max));
            } else if let Ok(d) = self.domain.build() {
                let h = t.r_min.min(d.diameter() / 16.0) / crate::geometry::tube::CELLS_PER_RADIUS;
                let cells = d.diameter() / h;
                if cells > crate::geometry::tube::MAX_CELLS_PER_AXIS as f64 {
                    v.push(format!("grid cell {h} at r_min needs {cells:.0} cells per axis"));
                }
            }
            if t.count < 5 {
                v.push(format!("tube fit needs at least 5 radii, got {}", t.count));
            }
        }
        if self.command == Command::Density && !(self.density.kappa > 0.0 && self.density.kappa < 1.0) {
            v.push(format!("kappa {} outside (0,1)", self.density.kappa));
        }
        if self.command == Command::Reduction {
            let r = self.reduction.r_loc;
            if !(r > 0.0 && r <= crate::experiments::reduction::MAX_R_LOC) {
                v.push(format!("localization factor {r} outside (0, 7]"));
            }
            if let Err(e) = self.reduction.phi.build() {
                v.push(format!("scaling function: {e}"));
            }
        }
        if self.command == Command::Scaling {
            let s = &self.scaling;
            if !(s.h > 0.0 && s.h <= 1.0) {
                v.push(format!("H = {} outside (0,1]", s.h));
            }
            if !(s.m > 0.0) {
                v.push(format!("breakpoint M = {} must be positive", s.m));
            }
            if !(s.dim_a < 2.0) {
                v.push(format!("boundary dimension {} must be below 2", s.dim_a));
            }
            if let Err(e) = s.phi.build() {
                v.push(format!("scaling function: {e}"));
            }
        }
        ValidationReport { violations: v }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

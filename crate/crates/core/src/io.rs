//! CSV artifact schemas and writers.
//!
//! Every file uses `.` as decimal separator, UTF-8 and LF line endings.
//! Missing optional values are empty fields; infinite bounds are written
//! as `inf`.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dimension::{DimensionEstimate, LocalExponent};
use crate::experiments::CutoffSeries;
use crate::geometry::tube::TubeMeasurement;
use crate::scalar::Real;
use crate::sobolev::{HardyEstimate, SeminormEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schema {
    Tube,
    Dimension,
    Estimates,
    Cutoff,
    HardyShells,
    LocalExponents,
}

impl Schema {
    pub const ALL: [Schema; 6] = [
        Schema::Tube,
        Schema::Dimension,
        Schema::Estimates,
        Schema::Cutoff,
        Schema::HardyShells,
        Schema::LocalExponents,
    ];

    pub fn file_name(self) -> &'static str {
        match self {
            Schema::Tube => "tube.csv",
            Schema::Dimension => "dimension.csv",
            Schema::Estimates => "estimates.csv",
            Schema::Cutoff => "cutoff.csv",
            Schema::HardyShells => "hardy_shells.csv",
            Schema::LocalExponents => "local_exponents.csv",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Schema::Tube => &[
                "domain", "r", "R", "x_x", "x_y", "volume", "stderr", "method", "samples", "seed",
            ],
            Schema::Dimension => &[
                "domain",
                "quantity",
                "value",
                "r_min",
                "r_max",
                "fit_r2",
                "spread_min",
                "spread_max",
                "n_centers",
                "n_scalepairs",
                "seed",
            ],
            Schema::Estimates => &[
                "domain",
                "field_label",
                "s",
                "p",
                "quantity",
                "value",
                "stderr",
                "samples",
                "rho_min",
                "bias_bound",
                "diverged",
                "seed",
            ],
            Schema::Cutoff => &[
                "domain",
                "s",
                "p",
                "n",
                "seminorm_p",
                "stderr",
                "samples",
                "tube_r",
                "tube_volume",
                "tube_bound",
                "tube_bound_stderr",
                "seed",
            ],
            Schema::HardyShells => &[
                "domain",
                "field_label",
                "s",
                "p",
                "shell",
                "d_lo",
                "d_hi",
                "contribution",
                "stderr",
                "samples",
                "diverged",
                "seed",
            ],
            Schema::LocalExponents => &["domain", "center", "x_x", "x_y", "R", "exponent", "seed"],
        }
    }

    pub fn header_line(self) -> String {
        self.columns().join(",")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubeRow {
    pub domain: String,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: Option<f64>,
    pub x_x: Option<f64>,
    pub x_y: Option<f64>,
    pub volume: f64,
    pub stderr: f64,
    pub method: String,
    pub samples: u64,
    pub seed: u64,
}

impl<F: Real> From<&TubeMeasurement<F>> for TubeRow {
    fn from(m: &TubeMeasurement<F>) -> Self {
        Self {
            domain: m.domain.clone(),
            r: m.r.as_f64(),
            big_r: m.big_r.map(Real::as_f64),
            x_x: m.center.map(|c| c.x.as_f64()),
            x_y: m.center.map(|c| c.y.as_f64()),
            volume: m.volume.as_f64(),
            stderr: m.stderr.as_f64(),
            method: m.method.as_str().to_string(),
            samples: m.samples,
            seed: m.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub domain: String,
    pub quantity: String,
    pub value: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub fit_r2: f64,
    pub spread_min: f64,
    pub spread_max: f64,
    pub n_centers: usize,
    pub n_scalepairs: usize,
    pub seed: u64,
}

impl<F: Real> From<&DimensionEstimate<F>> for DimensionRow {
    fn from(e: &DimensionEstimate<F>) -> Self {
        Self {
            domain: e.domain.clone(),
            quantity: e.quantity.as_str().to_string(),
            value: e.value.as_f64(),
            r_min: e.r_min.as_f64(),
            r_max: e.r_max.as_f64(),
            fit_r2: e.fit_r2.as_f64(),
            spread_min: e.spread_min.as_f64(),
            spread_max: e.spread_max.as_f64(),
            n_centers: e.n_centers,
            n_scalepairs: e.n_scalepairs,
            seed: e.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub domain: String,
    pub field_label: String,
    pub s: f64,
    pub p: f64,
    pub quantity: String,
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub rho_min: Option<f64>,
    pub bias_bound: Option<f64>,
    pub diverged: bool,
    pub seed: u64,
}

impl<F: Real> From<&SeminormEstimate<F>> for EstimateRow {
    fn from(e: &SeminormEstimate<F>) -> Self {
        Self {
            domain: e.domain.clone(),
            field_label: e.field_label.clone(),
            s: e.s.as_f64(),
            p: e.p.as_f64(),
            quantity: "seminorm_p".into(),
            value: e.value_p.as_f64(),
            stderr: e.stderr.as_f64(),
            samples: e.samples,
            rho_min: Some(e.rho_min.as_f64()),
            bias_bound: Some(e.bias_bound.as_f64()),
            diverged: false,
            seed: e.seed,
        }
    }
}

impl<F: Real> From<&HardyEstimate<F>> for EstimateRow {
    fn from(e: &HardyEstimate<F>) -> Self {
        Self {
            domain: e.domain.clone(),
            field_label: e.field_label.clone(),
            s: e.s.as_f64(),
            p: e.p.as_f64(),
            quantity: "hardy_quotient".into(),
            value: e.value.as_f64(),
            stderr: e.stderr.as_f64(),
            samples: e.samples,
            rho_min: None,
            bias_bound: Some(e.bias_bound.as_f64()),
            diverged: e.diverged,
            seed: e.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutoffRow {
    pub domain: String,
    pub s: f64,
    pub p: f64,
    pub n: u32,
    pub seminorm_p: f64,
    pub stderr: f64,
    pub samples: usize,
    pub tube_r: f64,
    pub tube_volume: f64,
    pub tube_bound: f64,
    pub tube_bound_stderr: f64,
    pub seed: u64,
}

pub fn cutoff_rows<F: Real>(series: &CutoffSeries<F>) -> Vec<CutoffRow> {
    series
        .points
        .iter()
        .map(|q| CutoffRow {
            domain: series.domain.clone(),
            s: series.s.as_f64(),
            p: series.p.as_f64(),
            n: q.n,
            seminorm_p: q.seminorm_p.as_f64(),
            stderr: q.stderr.as_f64(),
            samples: q.samples,
            tube_r: q.tube_r.as_f64(),
            tube_volume: q.tube_volume.as_f64(),
            tube_bound: q.tube_bound.as_f64(),
            tube_bound_stderr: q.tube_bound_stderr.as_f64(),
            seed: series.seed,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyShellRow {
    pub domain: String,
    pub field_label: String,
    pub s: f64,
    pub p: f64,
    pub shell: usize,
    pub d_lo: f64,
    pub d_hi: f64,
    pub contribution: f64,
    pub stderr: f64,
    pub samples: usize,
    pub diverged: bool,
    pub seed: u64,
}

pub fn hardy_shell_rows<F: Real>(e: &HardyEstimate<F>) -> Vec<HardyShellRow> {
    e.shells
        .iter()
        .map(|s| HardyShellRow {
            domain: e.domain.clone(),
            field_label: e.field_label.clone(),
            s: e.s.as_f64(),
            p: e.p.as_f64(),
            shell: s.shell,
            d_lo: s.d_lo.as_f64(),
            d_hi: s.d_hi.as_f64(),
            contribution: s.contribution.as_f64(),
            stderr: s.stderr.as_f64(),
            samples: s.samples,
            diverged: e.diverged,
            seed: e.seed,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalExponentRow {
    pub domain: String,
    pub center: usize,
    pub x_x: f64,
    pub x_y: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub exponent: f64,
    pub seed: u64,
}

pub fn local_exponent_rows<F: Real>(domain: &str, seed: u64, locals: &[LocalExponent<F>]) -> Vec<LocalExponentRow> {
    locals
        .iter()
        .map(|l| LocalExponentRow {
            domain: domain.to_string(),
            center: l.center,
            x_x: l.x.x.as_f64(),
            x_y: l.x.y.as_f64(),
            big_r: l.big_r.as_f64(),
            exponent: l.exponent.as_f64(),
            seed,
        })
        .collect()
}

/// Serializes rows into CSV text under the schema's header.
pub fn to_csv<T: Serialize>(schema: Schema, rows: &[T]) -> std::io::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(schema.columns())?;
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

pub fn write_csv<T: Serialize>(path: &Path, schema: Schema, rows: &[T]) -> std::io::Result<()> {
    let bytes = to_csv(schema, rows)?;
    File::create(path)?.write_all(&bytes)
}

/// Whether the first line of `path` is exactly the schema header.
pub fn header_matches(path: &Path, schema: Schema) -> std::io::Result<bool> {
    let mut first = String::new();
    BufReader::new(File::open(path)?).read_line(&mut first)?;
    Ok(first.trim_end_matches('\n') == schema.header_line())
}

//! File formats and point-cloud sampling.
//!
//! Structures travel as JSON `{"matrix": [36 row-major floats], "label": …}`.
//! Point clouds are CSV with header `b0,b1,b2,b3,nijenhuis_norm,integrable,ank`
//! and floats printed with 17 significant digits.

use crate::acs::{haar_rotation, matrix_from_row_major, seeded_rng, validate, random_acs_with, Acs};
use crate::cp3::{acs_to_cp3, cp3_to_acs, tetra_coords, Cp3Point};
use crate::error::TwistorError;
use crate::geometry::{ank_circle_point, circle_point, lemma1_form, PolarPairParams};
use crate::nearly_kaehler::{is_ank, DEFAULT_ANK_TOL};
use crate::nijenhuis::{is_integrable, nijenhuis_norm, statement1_structure, DEFAULT_INTEGRABILITY_TOL};
use crate::acs::acs_from_form;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use thiserror::Error;

pub const CLOUD_HEADER: [&str; 7] = ["b0", "b1", "b2", "b3", "nijenhuis_norm", "integrable", "ank"];

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected 36 matrix entries, found {0}")]
    WrongLength(usize),
    #[error(transparent)]
    Invalid(#[from] TwistorError),
    #[error("unknown sample set `{0}` (expected ank, integrable, random, polar or edge01)")]
    BadSet(String),
    #[error("inconsistent cloud row: {0}")]
    BadRow(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureDocument {
    pub matrix: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StructureDocument {
    pub fn from_acs(acs: &Acs, label: Option<String>) -> Self {
        Self {
            matrix: acs.to_row_major().to_vec(),
            label,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String, IoError> {
        Ok(serde_json::to_string(self)?)
    }

    /// Validated structure, or the validation error with its residual.
    pub fn to_acs(&self) -> Result<Acs, IoError> {
        let entries: [f64; 36] = self
            .matrix
            .as_slice()
            .try_into()
            .map_err(|_| IoError::WrongLength(self.matrix.len()))?;
        Ok(validate(&matrix_from_row_major(&entries))?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CloudRow {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub nijenhuis_norm: f64,
    pub integrable: bool,
    pub ank: bool,
}

impl CloudRow {
    pub fn from_acs(acs: &Acs) -> Result<Self, TwistorError> {
        let b = tetra_coords(&acs_to_cp3(acs)?).b;
        Ok(Self {
            b0: b[0],
            b1: b[1],
            b2: b[2],
            b3: b[3],
            nijenhuis_norm: nijenhuis_norm(acs),
            integrable: is_integrable(acs, DEFAULT_INTEGRABILITY_TOL),
            ank: is_ank(acs, DEFAULT_ANK_TOL),
        })
    }

    pub fn tetra(&self) -> [f64; 4] {
        [self.b0, self.b1, self.b2, self.b3]
    }

    /// Barycentric coordinates sum to one and the flags agree with the norm.
    pub fn check(&self) -> Result<(), IoError> {
        let b = self.tetra();
        let sum: f64 = b.iter().sum();
        if !((sum - 1.0).abs() < 1e-9) || b.iter().any(|&x| !(x >= -1e-12)) {
            return Err(IoError::BadRow(format!("tetra coordinates {b:?}")));
        }
        if self.integrable && !(self.nijenhuis_norm < 1e-6) {
            return Err(IoError::BadRow(format!(
                "integrable with norm {}",
                self.nijenhuis_norm
            )));
        }
        if self.integrable && self.ank {
            return Err(IoError::BadRow("both integrable and ank".into()));
        }
        Ok(())
    }
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_cloud<W: Write>(rows: &[CloudRow], out: W) -> Result<(), IoError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CLOUD_HEADER)?;
    for r in rows {
        w.write_record([
            float(r.b0),
            float(r.b1),
            float(r.b2),
            float(r.b3),
            float(r.nijenhuis_norm),
            r.integrable.to_string(),
            r.ank.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a cloud and checks every row.
pub fn read_cloud<R: Read>(input: R) -> Result<Vec<CloudRow>, IoError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != CLOUD_HEADER {
        return Err(IoError::Parse(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.deserialize() {
        let row: CloudRow = rec?;
        row.check()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` with optional whitespace; `i` alone
/// is the unit.
pub fn parse_complex(text: &str) -> Result<Complex64, IoError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || IoError::Parse(format!("not a complex number: `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let imaginary_part = |t: &str| -> Result<f64, IoError> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().map_err(|_| bad())?;
            Ok(Complex64::new(re, imaginary_part(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imaginary_part(body)?)),
    }
}

/// Four comma-separated complex coordinates.
pub fn parse_cp3(text: &str) -> Result<Cp3Point, IoError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(IoError::Parse(format!("expected 4 coordinates, found {}", parts.len())));
    }
    let mut coords = [Complex64::new(0.0, 0.0); 4];
    for (slot, part) in coords.iter_mut().zip(parts) {
        *slot = parse_complex(part)?;
    }
    Ok(Cp3Point::new(coords)?)
}

/// `a+bi` with shortest round-trip floats.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleSet {
    Ank,
    Integrable,
    Random,
    Polar,
    Edge01,
}

impl FromStr for SampleSet {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, IoError> {
        match s {
            "ank" => Ok(Self::Ank),
            "integrable" => Ok(Self::Integrable),
            "random" => Ok(Self::Random),
            "polar" => Ok(Self::Polar),
            "edge01" => Ok(Self::Edge01),
            other => Err(IoError::BadSet(other.into())),
        }
    }
}

impl fmt::Display for SampleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ank => "ank",
            Self::Integrable => "integrable",
            Self::Random => "random",
            Self::Polar => "polar",
            Self::Edge01 => "edge01",
        })
    }
}

fn unit3(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.map(|x| x / n);
        }
    }
}

/// One structure from `set`, drawn from `rng`.
pub fn sample_structure(set: SampleSet, rng: &mut ChaCha8Rng) -> Result<Acs, TwistorError> {
    match set {
        SampleSet::Ank => {
            let [r, x, u] = unit3(rng);
            ank_circle_point(r, x, u, rng.random_range(0.0..std::f64::consts::TAU))
        }
        SampleSet::Integrable => {
            let o1 = haar_rotation::<3, _>(rng);
            let o2 = haar_rotation::<3, _>(rng);
            statement1_structure(&o1, &o2)
        }
        SampleSet::Random => Ok(random_acs_with(rng)),
        SampleSet::Polar => {
            let p = PolarPairParams::new(unit3(rng), unit3(rng))?;
            cp3_to_acs(&circle_point(&p, rng.random_range(0.0..std::f64::consts::TAU)))
        }
        SampleSet::Edge01 => {
            let [s, c1, c2] = unit3(rng);
            acs_from_form(&lemma1_form(s, c1, c2)?)
        }
    }
}

/// `count` rows from `set`; row `i` uses stream `i` of the seeded generator,
/// so the output does not depend on scheduling.
pub fn sample_cloud(set: SampleSet, count: usize, seed: u64) -> Result<Vec<CloudRow>, TwistorError> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(seed);
            rng.set_stream(i as u64);
            CloudRow::from_acs(&sample_structure(set, &mut rng)?)
        })
        .collect()
}

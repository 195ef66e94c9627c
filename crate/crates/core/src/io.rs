//! File formats and dataset export.
//!
//! Curves travel as JSON (`CurveFile`): a space tag, the time grid, and one
//! flat sample per node (9 row-major reals for a rotation, 3 for a point).
//! Serialization uses shortest-roundtrip decimal floats, so save/load is
//! bit-exact on the numeric payload. Geodesic results export as plain CSV
//! with one row per (theta, node).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve::{AnyCurve, DiscreteCurve, Space, TimeGrid, UnitVector};
use crate::error::{Error, Result};
use crate::shape::AnyGeodesic;
use crate::so3::{Mat3, Rotation, SkewMatrix, Vec3};
use crate::srvt::AlgebraSignal;

/// The reference vector of the default SO(3) -> S^2 projection,
/// `(0, 1, 1)^T / sqrt(2)`.
pub fn default_projection_vector() -> UnitVector {
    UnitVector::try_new(Vec3::new(0.0, 1.0, 1.0) / 2.0_f64.sqrt()).expect("unit by construction")
}

/// Projects an SO(3) curve to the sphere by rotating a fixed reference
/// vector: `c_i = z_i * r`. Fails with [`Error::DegenerateSegment`] when
/// the projected curve stalls (consecutive rotations differing only about
/// `r`).
pub fn project_so3_to_s2(
    curve: &DiscreteCurve<Rotation>,
    reference: &UnitVector,
) -> Result<DiscreteCurve<UnitVector>> {
    let samples = curve
        .samples()
        .iter()
        .map(|z| UnitVector::try_new(z.apply(reference.vector())))
        .collect::<Result<Vec<_>>>()?;
    DiscreteCurve::new(curve.grid().clone(), samples)
}

/// On-disk JSON form of a curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFile {
    pub space: Space,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub times: Vec<f64>,
    pub samples: Vec<Vec<f64>>,
}

fn sample_arity(space: Space) -> usize {
    match space {
        Space::R3 | Space::S2 => 3,
        Space::So3 => 9,
    }
}

impl CurveFile {
    pub fn from_curve(curve: &AnyCurve, name: Option<String>) -> Self {
        let times = curve.grid().nodes().to_vec();
        let (space, samples) = match curve {
            AnyCurve::R3(c) => (
                Space::R3,
                c.samples()
                    .iter()
                    .map(|p| p.iter().copied().collect())
                    .collect(),
            ),
            AnyCurve::So3(c) => (
                Space::So3,
                c.samples()
                    .iter()
                    .map(|z| z.matrix().transpose().iter().copied().collect())
                    .collect(),
            ),
            AnyCurve::S2(c) => (
                Space::S2,
                c.samples()
                    .iter()
                    .map(|p| p.vector().iter().copied().collect())
                    .collect(),
            ),
        };
        CurveFile {
            space,
            name,
            times,
            samples,
        }
    }

    /// Validates and converts into a typed curve.
    pub fn to_curve(&self) -> Result<AnyCurve> {
        let grid = TimeGrid::new(self.times.clone())?;
        let arity = sample_arity(self.space);
        for (i, s) in self.samples.iter().enumerate() {
            if s.len() != arity {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!(
                        "sample {i} has {} components; expected {arity} for {}",
                        s.len(),
                        self.space.name()
                    ),
                });
            }
        }
        match self.space {
            Space::R3 => {
                let samples = self
                    .samples
                    .iter()
                    .map(|s| Vec3::new(s[0], s[1], s[2]))
                    .collect();
                Ok(AnyCurve::R3(DiscreteCurve::new(grid, samples)?))
            }
            Space::So3 => {
                let samples = self
                    .samples
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        Rotation::try_new(Mat3::from_row_slice(s)).map_err(|e| e.at_segment(i))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyCurve::So3(DiscreteCurve::new(grid, samples)?))
            }
            Space::S2 => {
                let samples = self
                    .samples
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        UnitVector::try_new(Vec3::new(s[0], s[1], s[2]))
                            .map_err(|e| e.at_segment(i))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyCurve::S2(DiscreteCurve::new(grid, samples)?))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("curve files serialize");
        s.push('\n');
        s
    }
}

/// Loads and validates a curve file.
pub fn load_curve(path: impl AsRef<Path>) -> Result<AnyCurve> {
    CurveFile::from_json(&fs::read_to_string(path)?)?.to_curve()
}

/// Writes a curve file.
pub fn save_curve(path: impl AsRef<Path>, curve: &AnyCurve, name: Option<String>) -> Result<()> {
    fs::write(path, CurveFile::from_curve(curve, name).to_json())?;
    Ok(())
}

/// On-disk JSON form of a transformed signal; skew values are stored as
/// their hat-map coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignalFile {
    pub kind: String,
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl SignalFile {
    pub fn from_skew(kind: &str, signal: &AlgebraSignal<SkewMatrix>) -> Self {
        SignalFile {
            kind: kind.to_string(),
            times: signal.grid().nodes().to_vec(),
            values: signal
                .values()
                .iter()
                .map(|v| v.vee().iter().copied().collect())
                .collect(),
        }
    }

    pub fn from_vector(kind: &str, signal: &AlgebraSignal<Vec3>) -> Self {
        SignalFile {
            kind: kind.to_string(),
            times: signal.grid().nodes().to_vec(),
            values: signal
                .values()
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("signal files serialize");
        s.push('\n');
        s
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// A family of interpolated curves with their sampling, ready for CSV
/// export: one row per (theta, node).
#[derive(Debug, Clone)]
pub struct GeodesicDataset {
    pub thetas: Vec<f64>,
    pub curves: Vec<AnyCurve>,
    pub pre_distance: f64,
    pub post_distance: Option<f64>,
}

impl GeodesicDataset {
    /// Wraps an interpolation result, requiring the weights sorted
    /// ascending in `[0, 1]`.
    pub fn new(geodesic: AnyGeodesic) -> Result<Self> {
        for pair in geodesic.thetas.windows(2) {
            if pair[1] < pair[0] {
                return Err(Error::ThetaOutOfRange { theta: pair[1] });
            }
        }
        if let Some(&theta) = geodesic.thetas.iter().find(|t| !(0.0..=1.0).contains(*t)) {
            return Err(Error::ThetaOutOfRange { theta });
        }
        Ok(GeodesicDataset {
            thetas: geodesic.thetas,
            curves: geodesic.curves,
            pre_distance: geodesic.pre_distance,
            post_distance: geodesic.post_distance,
        })
    }

    fn header(&self) -> &'static str {
        match self.curves.first().map(|c| c.space()) {
            Some(Space::So3) => "theta,t,r00,r01,r02,r10,r11,r12,r20,r21,r22",
            _ => "theta,t,x,y,z",
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(self.header());
        out.push('\n');
        for (theta, curve) in self.thetas.iter().zip(&self.curves) {
            match curve {
                AnyCurve::R3(c) => {
                    for (t, p) in c.grid().nodes().iter().zip(c.samples()) {
                        push_row(&mut out, *theta, *t, p.iter().copied());
                    }
                }
                AnyCurve::S2(c) => {
                    for (t, p) in c.grid().nodes().iter().zip(c.samples()) {
                        push_row(&mut out, *theta, *t, p.vector().iter().copied());
                    }
                }
                AnyCurve::So3(c) => {
                    for (t, z) in c.grid().nodes().iter().zip(c.samples()) {
                        push_row(&mut out, *theta, *t, z.matrix().transpose().iter().copied());
                    }
                }
            }
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_csv())?;
        Ok(())
    }
}

fn push_row(out: &mut String, theta: f64, t: f64, components: impl Iterator<Item = f64>) {
    out.push_str(&format!("{theta},{t}"));
    for c in components {
        out.push_str(&format!(",{c}"));
    }
    out.push('\n');
}

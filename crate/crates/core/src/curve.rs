//! Discrete curves on R^3, SO(3) and the unit sphere S^2.
//!
//! A curve is a strictly increasing time grid plus one sample per node,
//! read as a piecewise-geodesic interpolant: on SO(3) each segment follows
//! `exp(f * log(z_next z_i^T)) z_i`, on S^2 a great-circle arc, on R^3 a
//! straight line. The segment data lives in the Lie algebra (or R^3), which
//! is what the square root velocity transforms in [`mod@crate::srvt`] consume.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::so3::{exp_so3, hat, log_so3, Rotation, SkewMatrix, Vec3};
use crate::srvt::AlgebraElement;

/// Consecutive samples closer than this (geodesically) are degenerate:
/// the discrete analogue of a vanishing derivative.
const GAP_TOL: f64 = 1e-12;

/// Sphere samples with `c_i . c_{i+1} <= -1 + ANTIPODAL_TOL` have no
/// well-defined connecting great circle.
const ANTIPODAL_TOL: f64 = 1e-9;

/// Unit-norm admission window for sphere samples.
const UNIT_TOL: f64 = 1e-6;

/// Below this deviation a sphere sample is kept bit-for-bit instead of
/// renormalized, so save/load round trips are stable.
const RENORM_GATE: f64 = 1e-12;

/// `arccos(s)/sqrt(1-s^2)` switches to its expansion above this dot product.
const PARALLEL_TOL: f64 = 1e-10;

/// The sample space of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    R3,
    So3,
    S2,
}

impl Space {
    pub fn name(&self) -> &'static str {
        match self {
            Space::R3 => "R3",
            Space::So3 => "SO(3)",
            Space::S2 => "S2",
        }
    }
}

/// A strictly increasing sequence of sample times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    nodes: Vec<f64>,
}

impl TimeGrid {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.iter().any(|t| !t.is_finite()) {
            return Err(Error::GridNotIncreasing { index: 0 });
        }
        for i in 1..nodes.len() {
            if nodes[i] <= nodes[i - 1] {
                return Err(Error::GridNotIncreasing { index: i });
            }
        }
        Ok(TimeGrid { nodes })
    }

    /// Uniform grid with `segments` segments spanning `[start, end]`.
    pub fn uniform(start: f64, end: f64, segments: usize) -> Result<Self> {
        let n = segments.max(1);
        let h = (end - start) / n as f64;
        let mut nodes: Vec<f64> = (0..=n).map(|i| start + h * i as f64).collect();
        // Hit the right endpoint exactly.
        nodes[n] = end;
        TimeGrid::new(nodes)
    }

    /// Uniform grid on `[0, 1]`, the default parameter interval.
    pub fn uniform_unit(segments: usize) -> Self {
        TimeGrid::uniform(0.0, 1.0, segments).expect("unit grid is increasing")
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn segments(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn start(&self) -> f64 {
        self.nodes[0]
    }

    pub fn end(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn dt(&self, segment: usize) -> f64 {
        self.nodes[segment + 1] - self.nodes[segment]
    }

    /// True when all steps agree with the mean step to relative `tol`.
    pub fn is_uniform(&self, tol: f64) -> bool {
        if self.segments() < 2 {
            return true;
        }
        let h = (self.end() - self.start()) / self.segments() as f64;
        (0..self.segments()).all(|i| (self.dt(i) - h).abs() <= tol * h.abs())
    }

    /// Segment index with `nodes[i] <= t < nodes[i+1]`; `t = end` maps to
    /// the last segment.
    pub fn segment_index(&self, t: f64) -> Result<usize> {
        if t < self.start() || t > self.end() || self.segments() == 0 {
            return Err(Error::OutOfRange {
                t,
                start: self.start(),
                end: self.end(),
            });
        }
        let upper = self.nodes.partition_point(|&x| x <= t);
        Ok(upper.saturating_sub(1).min(self.segments() - 1))
    }
}

/// A point on the unit sphere, kept unit-norm by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector(Vec3);

impl UnitVector {
    /// Admits a vector whose norm is within 1e-6 of one, renormalizing
    /// unless the deviation is already below 1e-12.
    pub fn try_new(v: Vec3) -> Result<Self> {
        let n = v.norm();
        let deviation = (n - 1.0).abs();
        if !n.is_finite() || deviation > UNIT_TOL {
            return Err(Error::NotOnManifold {
                index: 0,
                space: "S2",
                deviation,
            });
        }
        if deviation > RENORM_GATE {
            Ok(UnitVector(v / n))
        } else {
            Ok(UnitVector(v))
        }
    }

    /// Renormalizes unconditionally; for outputs of rotation chains.
    pub(crate) fn renormalized(v: Vec3) -> Self {
        UnitVector(v / v.norm())
    }

    pub fn vector(&self) -> Vec3 {
        self.0
    }

    /// Minimal rotation carrying `self` onto `to` (identity when they
    /// already coincide). Fails for antipodal pairs, where the rotation
    /// plane is undefined.
    pub fn rotation_to(&self, to: &UnitVector) -> Result<Rotation> {
        let dot = self.0.dot(&to.0).clamp(-1.0, 1.0);
        if dot <= -1.0 + ANTIPODAL_TOL {
            return Err(Error::AntipodalStartPoints);
        }
        let axis = self.0.cross(&to.0);
        let sin = axis.norm();
        if sin < 1e-14 {
            return Ok(Rotation::identity());
        }
        let angle = sin.atan2(dot);
        Ok(exp_so3(&hat(axis * (angle / sin))))
    }
}

/// Segment tangent vectors for a sphere curve.
///
/// `values()[i]` solves `exp(hat(c_i x v_i)) c_i = c_{i+1}` under the
/// tangency constraint `v_i . c_i = 0`; its length is the segment's
/// great-circle angle.
#[derive(Debug, Clone)]
pub struct SphereVelocities {
    values: Vec<Vec3>,
}

impl SphereVelocities {
    pub fn values(&self) -> &[Vec3] {
        &self.values
    }
}

/// Tangent vector solving the single-segment interpolation problem on S^2.
pub(crate) fn segment_velocity(from: Vec3, to: Vec3) -> Result<Vec3> {
    let s = from.dot(&to).clamp(-1.0, 1.0);
    if s <= -1.0 + ANTIPODAL_TOL {
        return Err(Error::AntipodalSegment { index: 0 });
    }
    // arccos(s)/sqrt(1-s^2), with its expansion at s -> 1 to avoid 0/0.
    let g = if s > 1.0 - PARALLEL_TOL {
        1.0 + (1.0 - s) / 3.0
    } else {
        s.acos() / (1.0 - s * s).sqrt()
    };
    Ok((to - from * s) * g)
}

/// Per-segment velocity solve for a sphere curve.
pub fn sphere_velocities(curve: &DiscreteCurve<UnitVector>) -> Result<SphereVelocities> {
    let samples = curve.samples();
    let mut values = Vec::with_capacity(curve.grid().segments());
    for i in 0..curve.grid().segments() {
        let v = segment_velocity(samples[i].vector(), samples[i + 1].vector())
            .map_err(|e| e.at_segment(i))?;
        values.push(v);
    }
    Ok(SphereVelocities { values })
}

/// A sample point of one of the three curve spaces.
///
/// `Step` is the algebra-valued description of one whole geodesic segment:
/// the displacement on R^3, `log(z_next z^T)` on SO(3), and the skew matrix
/// `hat(c x v)` whose exponential carries `c` to the next sample on S^2.
pub trait CurvePoint: Clone + PartialEq {
    type Step: AlgebraElement;

    const SPACE: Space;

    /// Checks (and possibly normalizes) a raw sample.
    fn validate(&self) -> Result<Self>;

    /// Geodesic distance to another point; used for degeneracy checks and
    /// stable at every separation.
    fn gap(&self, other: &Self) -> f64;

    /// Extra admissibility of the segment from `self` to `next`, beyond
    /// being non-degenerate.
    fn segment_admissible(&self, _next: &Self) -> Result<()> {
        Ok(())
    }

    /// The segment step with `self.advance(step, 1) = next`.
    fn step_to(&self, next: &Self) -> Result<Self::Step>;

    /// Moves `fraction` of the way along `step`.
    fn advance(&self, step: &Self::Step, fraction: f64) -> Self;

    /// Applies the canonical symmetry carrying `from` to `to`: translation
    /// on R^3, right translation on SO(3), the minimal rotation on S^2.
    fn realign(&self, from: &Self, to: &Self) -> Result<Self>;
}

impl CurvePoint for Vec3 {
    type Step = Vec3;

    const SPACE: Space = Space::R3;

    fn validate(&self) -> Result<Self> {
        if self.iter().all(|x| x.is_finite()) {
            Ok(*self)
        } else {
            Err(Error::NotOnManifold {
                index: 0,
                space: "R3",
                deviation: f64::INFINITY,
            })
        }
    }

    fn gap(&self, other: &Self) -> f64 {
        (other - self).norm()
    }

    fn step_to(&self, next: &Self) -> Result<Vec3> {
        Ok(next - self)
    }

    fn advance(&self, step: &Vec3, fraction: f64) -> Self {
        self + step * fraction
    }

    fn realign(&self, from: &Self, to: &Self) -> Result<Self> {
        Ok(self - from + to)
    }
}

impl CurvePoint for Rotation {
    type Step = SkewMatrix;

    const SPACE: Space = Space::So3;

    fn validate(&self) -> Result<Self> {
        let deviation = Rotation::orthogonality_defect(self.matrix());
        if deviation > 1e-9 || self.matrix().determinant() <= 0.0 {
            return Err(Error::NotOnManifold {
                index: 0,
                space: "SO(3)",
                deviation,
            });
        }
        Ok(*self)
    }

    fn gap(&self, other: &Self) -> f64 {
        (*other * self.transpose()).angle()
    }

    fn step_to(&self, next: &Self) -> Result<SkewMatrix> {
        log_so3(&(*next * self.transpose()))
    }

    fn advance(&self, step: &SkewMatrix, fraction: f64) -> Self {
        exp_so3(&(*step * fraction)) * *self
    }

    fn realign(&self, from: &Self, to: &Self) -> Result<Self> {
        Ok(*self * (from.transpose() * *to))
    }
}

impl CurvePoint for UnitVector {
    type Step = SkewMatrix;

    const SPACE: Space = Space::S2;

    fn validate(&self) -> Result<Self> {
        let deviation = (self.0.norm() - 1.0).abs();
        if deviation > 1e-9 {
            return Err(Error::NotOnManifold {
                index: 0,
                space: "S2",
                deviation,
            });
        }
        Ok(*self)
    }

    fn gap(&self, other: &Self) -> f64 {
        self.0.dot(&other.0).clamp(-1.0, 1.0).acos()
    }

    fn segment_admissible(&self, next: &Self) -> Result<()> {
        if self.0.dot(&next.0) <= -1.0 + ANTIPODAL_TOL {
            Err(Error::AntipodalSegment { index: 0 })
        } else {
            Ok(())
        }
    }

    fn step_to(&self, next: &Self) -> Result<SkewMatrix> {
        let v = segment_velocity(self.0, next.0)?;
        Ok(hat(self.0.cross(&v)))
    }

    fn advance(&self, step: &SkewMatrix, fraction: f64) -> Self {
        UnitVector::renormalized(exp_so3(&(*step * fraction)).apply(self.0))
    }

    fn realign(&self, from: &Self, to: &Self) -> Result<Self> {
        let g = from.rotation_to(to)?;
        Ok(UnitVector::renormalized(g.apply(self.0)))
    }
}

/// A discrete curve: grid plus samples, interpreted piecewise-geodesically.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve<P> {
    grid: TimeGrid,
    samples: Vec<P>,
}

impl<P: CurvePoint> DiscreteCurve<P> {
    /// Validating constructor: checks sample invariants, rejects degenerate
    /// (coinciding) and, on S^2, antipodal consecutive samples.
    pub fn new(grid: TimeGrid, samples: Vec<P>) -> Result<Self> {
        if grid.len() != samples.len() {
            return Err(Error::LengthMismatch {
                times: grid.len(),
                samples: samples.len(),
            });
        }
        let samples: Vec<P> = samples
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.validate().map_err(|e| e.at_segment(i)))
            .collect::<Result<_>>()?;
        for i in 0..grid.segments() {
            if samples[i].gap(&samples[i + 1]) < GAP_TOL {
                return Err(Error::DegenerateSegment { index: i });
            }
            samples[i]
                .segment_admissible(&samples[i + 1])
                .map_err(|e| e.at_segment(i))?;
        }
        Ok(DiscreteCurve { grid, samples })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[P] {
        &self.samples
    }

    pub fn space(&self) -> Space {
        P::SPACE
    }

    pub fn start(&self) -> &P {
        &self.samples[0]
    }

    pub fn end(&self) -> &P {
        self.samples.last().unwrap()
    }

    /// Evaluates the piecewise-geodesic interpolant. Grid nodes reproduce
    /// the stored samples exactly; the right endpoint returns the last
    /// sample.
    pub fn eval(&self, t: f64) -> Result<P> {
        if t == self.grid.end() {
            return Ok(self.end().clone());
        }
        let i = self.grid.segment_index(t)?;
        if t == self.grid.nodes()[i] {
            return Ok(self.samples[i].clone());
        }
        let step = self.samples[i]
            .step_to(&self.samples[i + 1])
            .map_err(|e| e.at_segment(i))?;
        let fraction = (t - self.grid.nodes()[i]) / self.grid.dt(i);
        Ok(self.samples[i].advance(&step, fraction))
    }

    /// Samples the interpolant on a new grid inside the current span.
    /// Idempotent on the curve's own grid.
    pub fn resample(&self, grid: &TimeGrid) -> Result<Self> {
        let samples = grid
            .nodes()
            .iter()
            .map(|&t| self.eval(t))
            .collect::<Result<Vec<_>>>()?;
        DiscreteCurve::new(grid.clone(), samples)
    }

    /// Applies the space's canonical symmetry so the curve starts at
    /// `target` (see [`CurvePoint::realign`]).
    pub fn realign_start(&self, target: &P) -> Result<Self> {
        if self.start() == target {
            return Ok(self.clone());
        }
        let from = self.start().clone();
        let samples = self
            .samples
            .iter()
            .map(|p| p.realign(&from, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiscreteCurve {
            grid: self.grid.clone(),
            samples,
        })
    }
}

/// A curve in any of the three supported spaces; the dynamically tagged
/// form used by file IO and the command-line tool.
#[derive(Debug, Clone)]
pub enum AnyCurve {
    R3(DiscreteCurve<Vec3>),
    So3(DiscreteCurve<Rotation>),
    S2(DiscreteCurve<UnitVector>),
}

impl AnyCurve {
    pub fn space(&self) -> Space {
        match self {
            AnyCurve::R3(_) => Space::R3,
            AnyCurve::So3(_) => Space::So3,
            AnyCurve::S2(_) => Space::S2,
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        match self {
            AnyCurve::R3(c) => c.grid(),
            AnyCurve::So3(c) => c.grid(),
            AnyCurve::S2(c) => c.grid(),
        }
    }

    pub fn as_r3(&self) -> Result<&DiscreteCurve<Vec3>> {
        match self {
            AnyCurve::R3(c) => Ok(c),
            other => Err(Error::SpaceMismatch {
                expected: Space::R3.name(),
                found: other.space().name(),
            }),
        }
    }

    pub fn as_so3(&self) -> Result<&DiscreteCurve<Rotation>> {
        match self {
            AnyCurve::So3(c) => Ok(c),
            other => Err(Error::SpaceMismatch {
                expected: Space::So3.name(),
                found: other.space().name(),
            }),
        }
    }

    pub fn as_s2(&self) -> Result<&DiscreteCurve<UnitVector>> {
        match self {
            AnyCurve::S2(c) => Ok(c),
            other => Err(Error::SpaceMismatch {
                expected: Space::S2.name(),
                found: other.space().name(),
            }),
        }
    }
}

impl From<DiscreteCurve<Vec3>> for AnyCurve {
    fn from(c: DiscreteCurve<Vec3>) -> Self {
        AnyCurve::R3(c)
    }
}

impl From<DiscreteCurve<Rotation>> for AnyCurve {
    fn from(c: DiscreteCurve<Rotation>) -> Self {
        AnyCurve::So3(c)
    }
}

impl From<DiscreteCurve<UnitVector>> for AnyCurve {
    fn from(c: DiscreteCurve<UnitVector>) -> Self {
        AnyCurve::S2(c)
    }
}

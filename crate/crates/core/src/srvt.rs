//! Square root velocity transforms and the L^2 geometry of their images.
//!
//! Every transform here follows the same differentiate / transport / scale
//! pattern. For a segment from sample `a` to sample `b` over a time step
//! `dt`, the scaled derivative is `eta = step / dt` (with `step` the
//! algebra-valued segment description from [`CurvePoint::step_to`]) and the
//! transformed value is `eta / sqrt(|eta|)`. The inverse walks the curve
//! back out: `next = exp(dt * |q| * q) . current`, which on a uniform
//! unit-step grid reduces to `exp(|q| q)`.
//!
//! With curves transformed, geodesics, distances and blends are plain L^2
//! operations on piecewise-constant algebra-valued signals.

use crate::curve::{sphere_velocities, CurvePoint, DiscreteCurve, TimeGrid, UnitVector};
use crate::error::{Error, Result};
use crate::so3::{alg_inner, exp_so3, hat, Rotation, SkewMatrix, Vec3};

/// Signal values below this norm violate the `g \ {0}` codomain.
const SIGNAL_FLOOR: f64 = 1e-12;

/// Initial frames whose first column deviates from the curve start by more
/// than this are rejected.
const FRAME_TOL: f64 = 1e-6;

/// An element of the inner-product space a transform maps into: plain
/// vectors for Euclidean curves, skew matrices for SO(3) and S^2.
pub trait AlgebraElement:
    Copy
    + PartialEq
    + std::fmt::Debug
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn inner(&self, other: &Self) -> f64;
    fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }
}

impl AlgebraElement for Vec3 {
    fn zero() -> Self {
        Vec3::zeros()
    }
    fn inner(&self, other: &Self) -> f64 {
        self.dot(other)
    }
}

impl AlgebraElement for SkewMatrix {
    fn zero() -> Self {
        SkewMatrix::zero()
    }
    fn inner(&self, other: &Self) -> f64 {
        alg_inner(self, other)
    }
}

/// A piecewise-constant algebra-valued signal: one value per grid segment,
/// attached to the left endpoint. The image of a curve under an SRVT.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSignal<V> {
    grid: TimeGrid,
    values: Vec<V>,
}

impl<V: AlgebraElement> AlgebraSignal<V> {
    /// Builds a signal, rejecting values that vanish (the codomain of every
    /// transform excludes zero).
    pub fn new(grid: TimeGrid, values: Vec<V>) -> Result<Self> {
        if grid.segments() != values.len() {
            return Err(Error::LengthMismatch {
                times: grid.len(),
                samples: values.len() + 1,
            });
        }
        for (i, v) in values.iter().enumerate() {
            let n = v.norm();
            if n.is_nan() || n < SIGNAL_FLOOR {
                return Err(Error::ZeroSignalSegment { index: i, norm: n });
            }
        }
        Ok(AlgebraSignal { grid, values })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Left-endpoint lookup of the piecewise-constant signal.
    pub fn value_at(&self, t: f64) -> Result<V> {
        Ok(self.values[self.grid.segment_index(t)?])
    }

    /// L^2 norm: `sqrt(sum dt_i |v_i|^2)`.
    pub fn l2_norm(&self) -> f64 {
        (0..self.values.len())
            .map(|i| self.grid.dt(i) * self.values[i].inner(&self.values[i]))
            .sum::<f64>()
            .sqrt()
    }

    /// The convex combination `(1 - theta) self + theta other`.
    ///
    /// Fails with [`Error::ZeroSignalSegment`] when the combination leaves
    /// the admissible codomain on some segment (threshold 1e-10), and with
    /// [`Error::GridMismatch`] on different grids.
    pub fn convex_combination(&self, other: &Self, theta: f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let mut values = Vec::with_capacity(self.values.len());
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            let v = *a * (1.0 - theta) + *b * theta;
            let n = v.norm();
            if n.is_nan() || n < 1e-10 {
                return Err(Error::ZeroSignalSegment { index: i, norm: n });
            }
            values.push(v);
        }
        Ok(AlgebraSignal {
            grid: self.grid.clone(),
            values,
        })
    }
}

/// L^2 distance between two signals on the same grid:
/// `sqrt(sum dt_i |a_i - b_i|^2)`. For transformed curves this is the
/// geodesic distance of the pullback metric.
pub fn l2_distance<V: AlgebraElement>(a: &AlgebraSignal<V>, b: &AlgebraSignal<V>) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let sum: f64 = (0..a.values.len())
        .map(|i| {
            let d = a.values[i] - b.values[i];
            a.grid.dt(i) * d.inner(&d)
        })
        .sum();
    Ok(sum.sqrt())
}

/// Square root velocity transform of a curve in any supported space:
/// per segment, `eta_i = step_i / dt_i` and `q_i = eta_i / sqrt(|eta_i|)`.
pub fn srvt<P: CurvePoint>(curve: &DiscreteCurve<P>) -> Result<AlgebraSignal<P::Step>> {
    let grid = curve.grid();
    let mut values = Vec::with_capacity(grid.segments());
    for i in 0..grid.segments() {
        let step = curve.samples()[i]
            .step_to(&curve.samples()[i + 1])
            .map_err(|e| e.at_segment(i))?;
        let eta = step * (1.0 / grid.dt(i));
        let n = eta.norm();
        if n.is_nan() || n <= 0.0 {
            return Err(Error::DegenerateSegment { index: i });
        }
        values.push(eta * (1.0 / n.sqrt()));
    }
    AlgebraSignal::new(grid.clone(), values)
}

/// Inverse transform: reconstructs the curve through
/// `next = exp(dt_i * |q_i| * q_i) . current` from the given start point.
/// An empty signal yields the single-point curve at `start`.
pub fn srvt_inverse<P: CurvePoint>(
    signal: &AlgebraSignal<P::Step>,
    start: P,
) -> Result<DiscreteCurve<P>> {
    let grid = signal.grid();
    let mut samples = Vec::with_capacity(grid.len());
    samples.push(start);
    for i in 0..signal.len() {
        let q = signal.values()[i];
        let step = q * (grid.dt(i) * q.norm());
        let next = samples[i].advance(&step, 1.0);
        samples.push(next);
    }
    DiscreteCurve::new(grid.clone(), samples)
}

/// Euclidean transform: `q_i = eta_i / sqrt(|eta_i|)` with
/// `eta_i` the forward difference quotient.
pub fn srvt_euclidean(curve: &DiscreteCurve<Vec3>) -> Result<AlgebraSignal<Vec3>> {
    srvt(curve)
}

pub fn srvt_euclidean_inverse(
    signal: &AlgebraSignal<Vec3>,
    start: Vec3,
) -> Result<DiscreteCurve<Vec3>> {
    srvt_inverse(signal, start)
}

/// Lie group transform: the discrete right-logarithmic derivative
/// `eta_i = log(z_{i+1} z_i^T) / dt_i`, scaled by `1 / sqrt(|eta_i|)`.
pub fn srvt_group(curve: &DiscreteCurve<Rotation>) -> Result<AlgebraSignal<SkewMatrix>> {
    srvt(curve)
}

pub fn srvt_group_inverse(
    signal: &AlgebraSignal<SkewMatrix>,
    start: Rotation,
) -> Result<DiscreteCurve<Rotation>> {
    srvt_inverse(signal, start)
}

/// Homogeneous-space transform for sphere curves: the segment velocity
/// `v_i` is lifted to the algebra as `hat(c_i x v_i)` and scaled like the
/// group case.
pub fn srvt_sphere(curve: &DiscreteCurve<UnitVector>) -> Result<AlgebraSignal<SkewMatrix>> {
    srvt(curve)
}

pub fn srvt_sphere_inverse(
    signal: &AlgebraSignal<SkewMatrix>,
    start: UnitVector,
) -> Result<DiscreteCurve<UnitVector>> {
    srvt_inverse(signal, start)
}

/// The moving frames accumulated by the reductive transform.
///
/// Frames satisfy the recursion `F_{i+1} = exp(hat(c_i x v_i)) F_i`, so the
/// first column of `F_i` tracks `c_i` (up to the initial sign).
#[derive(Debug, Clone)]
pub struct FrameSequence {
    frames: Vec<Rotation>,
}

impl FrameSequence {
    pub fn frames(&self) -> &[Rotation] {
        &self.frames
    }
}

/// A rotation whose first column is the given unit vector, completed
/// deterministically (QR-style) to a right-handed orthonormal frame.
pub fn orthonormal_frame(first: &UnitVector) -> Rotation {
    let c = first.vector();
    // Seed with the coordinate axis least aligned with c.
    let abs = c.abs();
    let seed = if abs.x <= abs.y && abs.x <= abs.z {
        Vec3::x()
    } else if abs.y <= abs.z {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let u = (seed - c * c.dot(&seed)).normalize();
    let w = c.cross(&u);
    Rotation::from_matrix_unchecked(nalgebra::Matrix3::from_columns(&[c, u, w]))
}

fn check_frame(frame: &Rotation, start: &UnitVector) -> Result<()> {
    let first = frame.apply(Vec3::x());
    let c = start.vector();
    let deviation = ((first - c).norm()).min((first + c).norm());
    if deviation > FRAME_TOL {
        return Err(Error::FrameMismatch { deviation });
    }
    Ok(())
}

/// Reductive transform for sphere curves.
///
/// Propagates frames by `F_{i+1} = exp(hat(c_i x v_i)) F_i` from `frame0`
/// (whose first column must span the start point) and pulls each segment
/// back to the reference point with `Ad(F_i^T)`, so all signal values land
/// in the fixed plane of skew matrices with vanishing first hat-coordinate.
/// Returns the signal together with the frames.
pub fn srvt_reductive(
    curve: &DiscreteCurve<UnitVector>,
    frame0: Rotation,
) -> Result<(AlgebraSignal<SkewMatrix>, FrameSequence)> {
    check_frame(&frame0, curve.start())?;
    let grid = curve.grid();
    let velocities = sphere_velocities(curve)?;
    let mut frames = Vec::with_capacity(grid.len());
    frames.push(frame0);
    let mut values = Vec::with_capacity(grid.segments());
    for i in 0..grid.segments() {
        let c = curve.samples()[i].vector();
        let kappa = hat(c.cross(&velocities.values()[i]));
        let eta = kappa * (1.0 / grid.dt(i));
        let n = eta.norm();
        if n.is_nan() || n <= 0.0 {
            return Err(Error::DegenerateSegment { index: i });
        }
        let q = eta * (1.0 / n.sqrt());
        values.push(frames[i].transpose().adjoint(&q));
        frames.push(exp_so3(&kappa) * frames[i]);
    }
    Ok((
        AlgebraSignal::new(grid.clone(), values)?,
        FrameSequence { frames },
    ))
}

/// Inverse of the reductive transform: pushes each signal value forward
/// with the current frame, then advances point and frame with the same
/// exponential.
pub fn srvt_reductive_inverse(
    signal: &AlgebraSignal<SkewMatrix>,
    start: UnitVector,
    frame0: Rotation,
) -> Result<DiscreteCurve<UnitVector>> {
    check_frame(&frame0, &start)?;
    let grid = signal.grid();
    let mut samples = Vec::with_capacity(grid.len());
    samples.push(start);
    let mut frame = frame0;
    for i in 0..signal.len() {
        let q = signal.values()[i];
        let pulled = q * (grid.dt(i) * q.norm());
        let step = frame.adjoint(&pulled);
        let rot = exp_so3(&step);
        samples.push(UnitVector::renormalized(rot.apply(samples[i].vector())));
        frame = rot * frame;
    }
    DiscreteCurve::new(grid.clone(), samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::DiscreteCurve;
    use crate::so3::{alg_norm, log_so3};
    use crate::synth;
    use approx::assert_relative_eq;

    #[test]
    fn euclidean_straight_line_unit_speed() {
        let dir = Vec3::new(1.0, 0.0, 0.0);
        let grid = TimeGrid::uniform_unit(4);
        let samples: Vec<Vec3> = grid.nodes().iter().map(|&t| dir * t).collect();
        let q = srvt_euclidean(&DiscreteCurve::new(grid, samples).unwrap()).unwrap();
        for v in q.values() {
            assert_relative_eq!(*v, dir, epsilon = 1e-15);
        }
    }

    #[test]
    fn euclidean_speed_scaling_law() {
        // Speed 4 gives signal norm 4 / sqrt(4) = 2.
        let dir = Vec3::new(0.0, 1.0, 0.0);
        let grid = TimeGrid::uniform_unit(2);
        let samples: Vec<Vec3> = grid.nodes().iter().map(|&t| dir * (4.0 * t)).collect();
        let q = srvt_euclidean(&DiscreteCurve::new(grid, samples).unwrap()).unwrap();
        for v in q.values() {
            assert_relative_eq!(v.norm(), 2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn euclidean_matches_forward_difference_oracle() {
        let mut rng = synth::rng(31);
        let c = synth::r3_curve(&mut rng, 10);
        let q = srvt_euclidean(&c).unwrap();
        for i in 0..c.grid().segments() {
            let eta = (c.samples()[i + 1] - c.samples()[i]) / c.grid().dt(i);
            let expected = eta / eta.norm().sqrt();
            assert_relative_eq!(q.values()[i], expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn group_one_parameter_subgroup_constant_signal() {
        let w = Vec3::new(0.9, -0.3, 0.4);
        let grid = TimeGrid::uniform_unit(5);
        let samples: Vec<Rotation> = grid.nodes().iter().map(|&t| exp_so3(&hat(w * t))).collect();
        let q = srvt_group(&DiscreteCurve::new(grid, samples).unwrap()).unwrap();
        let expected = hat(w) * (1.0 / w.norm().sqrt());
        for v in q.values() {
            assert!((v.vee() - expected.vee()).norm() < 1e-12);
        }
    }

    #[test]
    fn group_sqrt_speed_scaling() {
        let w = Vec3::new(4.0, 0.0, 0.0);
        let grid = TimeGrid::uniform_unit(4);
        let samples: Vec<Rotation> = grid.nodes().iter().map(|&t| exp_so3(&hat(w * t))).collect();
        let q = srvt_group(&DiscreteCurve::new(grid, samples).unwrap()).unwrap();
        for v in q.values() {
            assert_relative_eq!(alg_norm(v), 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn group_roundtrip_random_curve() {
        let mut rng = synth::rng(32);
        let c = synth::so3_curve(&mut rng, 10);
        let q = srvt_group(&c).unwrap();
        let back = srvt_group_inverse(&q, c.samples()[0]).unwrap();
        for (a, b) in c.samples().iter().zip(back.samples()) {
            assert!((a.matrix() - b.matrix()).abs().max() < 1e-9);
        }
        // Signal roundtrip the other way.
        let q2 = srvt_group(&back).unwrap();
        for (a, b) in q.values().iter().zip(q2.values()) {
            assert!((a.vee() - b.vee()).norm() < 1e-9);
        }
    }

    #[test]
    fn group_inverse_of_empty_signal_is_single_point() {
        let grid = TimeGrid::new(vec![0.0]).unwrap();
        let signal = AlgebraSignal::<SkewMatrix>::new(grid, vec![]).unwrap();
        let mut rng = synth::rng(33);
        let z0 = synth::random_rotation(&mut rng);
        let c = srvt_group_inverse(&signal, z0).unwrap();
        assert_eq!(c.samples(), &[z0]);
    }

    #[test]
    fn group_inverse_of_constant_signal_is_subgroup() {
        let w = Vec3::new(0.5, 0.2, -0.1);
        let grid = TimeGrid::uniform_unit(4);
        let values = vec![hat(w) * (1.0 / w.norm().sqrt()); 4];
        let signal = AlgebraSignal::new(grid.clone(), values).unwrap();
        let c = srvt_group_inverse(&signal, Rotation::identity()).unwrap();
        for (&t, z) in grid.nodes().iter().zip(c.samples()) {
            let expected = exp_so3(&hat(w * t));
            assert!((z.matrix() - expected.matrix()).abs().max() < 1e-12);
        }
    }

    #[test]
    fn sphere_quarter_arc_value() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let c = DiscreteCurve::new(
            grid,
            vec![
                UnitVector::try_new(Vec3::x()).unwrap(),
                UnitVector::try_new(Vec3::y()).unwrap(),
            ],
        )
        .unwrap();
        let q = srvt_sphere(&c).unwrap();
        let half_pi = std::f64::consts::FRAC_PI_2;
        let expected = hat(Vec3::new(0.0, 0.0, half_pi)) * (1.0 / half_pi.sqrt());
        assert!((q.values()[0].vee() - expected.vee()).norm() < 1e-14);
    }

    #[test]
    fn sphere_signal_norm_law_and_tangency() {
        let mut rng = synth::rng(34);
        let c = synth::sphere_curve(&mut rng, 12);
        let q = srvt_sphere(&c).unwrap();
        let vels = sphere_velocities(&c).unwrap();
        for i in 0..q.len() {
            let expected = vels.values()[i].norm() / c.grid().dt(i);
            assert_relative_eq!(alg_norm(&q.values()[i]).powi(2), expected, epsilon = 1e-10);
            // The skew value moves c_i inside the tangent plane.
            let ci = c.samples()[i].vector();
            let moved = q.values()[i] * ci;
            assert!(moved.dot(&ci).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_roundtrip_and_unit_norm() {
        let mut rng = synth::rng(35);
        let c = synth::sphere_curve(&mut rng, 20);
        let q = srvt_sphere(&c).unwrap();
        let back = srvt_sphere_inverse(&q, c.samples()[0]).unwrap();
        for (a, b) in c.samples().iter().zip(back.samples()) {
            assert!((a.vector() - b.vector()).norm() < 1e-9);
            assert!((b.vector().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_inverse_of_quarter_arc() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let half_pi = std::f64::consts::FRAC_PI_2;
        let values = vec![hat(Vec3::new(0.0, 0.0, half_pi)) * (1.0 / half_pi.sqrt())];
        let signal = AlgebraSignal::new(grid, values).unwrap();
        let c = srvt_sphere_inverse(&signal, UnitVector::try_new(Vec3::x()).unwrap()).unwrap();
        assert!((c.samples()[0].vector() - Vec3::x()).norm() < 1e-15);
        assert!((c.samples()[1].vector() - Vec3::y()).norm() < 1e-14);
    }

    #[test]
    fn reductive_signal_lies_in_reference_plane() {
        // Pulled back by the frames, every value has vanishing first
        // hat-coordinate: the reductive complement of rotations about e1.
        let mut rng = synth::rng(36);
        for _ in 0..10 {
            let c = synth::sphere_curve(&mut rng, 9);
            let frame0 = orthonormal_frame(c.start());
            let (q, _) = srvt_reductive(&c, frame0).unwrap();
            for v in q.values() {
                assert!(v.vee().x.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reductive_frames_track_the_curve() {
        let mut rng = synth::rng(37);
        let c = synth::sphere_curve(&mut rng, 8);
        let frame0 = orthonormal_frame(c.start());
        let (_, frames) = srvt_reductive(&c, frame0).unwrap();
        for (f, p) in frames.frames().iter().zip(c.samples()) {
            let pulled = f.transpose().apply(p.vector());
            assert!((pulled - Vec3::x()).norm() < 1e-10);
        }
    }

    #[test]
    fn reductive_frame_recursion_residual() {
        let mut rng = synth::rng(38);
        let c = synth::sphere_curve(&mut rng, 8);
        let vels = sphere_velocities(&c).unwrap();
        let frame0 = orthonormal_frame(c.start());
        let (_, frames) = srvt_reductive(&c, frame0).unwrap();
        for i in 0..c.grid().segments() {
            let ci = c.samples()[i].vector();
            let expected = exp_so3(&hat(ci.cross(&vels.values()[i]))) * frames.frames()[i];
            let residual = log_so3(&(frames.frames()[i + 1] * expected.transpose())).unwrap();
            assert!(alg_norm(&residual) < 1e-10);
        }
    }

    #[test]
    fn reductive_single_segment_shape() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let c = DiscreteCurve::new(
            grid,
            vec![
                UnitVector::try_new(Vec3::x()).unwrap(),
                UnitVector::try_new(Vec3::new(0.0, 0.6, 0.8)).unwrap(),
            ],
        )
        .unwrap();
        let (q, frames) = srvt_reductive(&c, orthonormal_frame(c.start())).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(frames.frames().len(), 2);
    }

    #[test]
    fn reductive_roundtrip() {
        let mut rng = synth::rng(39);
        let c = synth::sphere_curve(&mut rng, 15);
        let frame0 = orthonormal_frame(c.start());
        let (q, _) = srvt_reductive(&c, frame0).unwrap();
        let back = srvt_reductive_inverse(&q, *c.start(), frame0).unwrap();
        for (a, b) in c.samples().iter().zip(back.samples()) {
            assert!((a.vector() - b.vector()).norm() < 1e-8);
        }
    }

    #[test]
    fn reductive_rejects_mismatched_frame() {
        let mut rng = synth::rng(40);
        let c = synth::sphere_curve(&mut rng, 5);
        let bad = orthonormal_frame(&UnitVector::try_new(Vec3::z()).unwrap());
        // Generated curves almost surely do not start at +-e3.
        assert!(matches!(
            srvt_reductive(&c, bad),
            Err(Error::FrameMismatch { .. })
        ));
    }

    #[test]
    fn l2_distance_examples() {
        let grid = TimeGrid::new(vec![0.0, 1.0]).unwrap();
        let a = AlgebraSignal::new(grid.clone(), vec![hat(Vec3::new(1.0, 2.0, 0.5))]).unwrap();
        let b = AlgebraSignal::new(grid, vec![hat(Vec3::new(0.0, 1.0, 2.5))]).unwrap();
        assert_eq!(l2_distance(&a, &a).unwrap(), 0.0);
        let expected = alg_norm(&(a.values()[0] - b.values()[0]));
        assert_relative_eq!(l2_distance(&a, &b).unwrap(), expected, epsilon = 1e-15);
    }

    #[test]
    fn l2_distance_matches_refined_riemann_sum() {
        let mut rng = synth::rng(41);
        let grid = TimeGrid::uniform_unit(7);
        let a = synth::skew_signal(&mut rng, &grid);
        let b = synth::skew_signal(&mut rng, &grid);
        // Piecewise-constant integrand: a refined Riemann sum is exact.
        let refined = 10 * grid.segments();
        let mut sum = 0.0;
        for k in 0..refined {
            let t = (k as f64 + 0.5) / refined as f64;
            let d = a.value_at(t).unwrap() - b.value_at(t).unwrap();
            sum += alg_inner(&d, &d) / refined as f64;
        }
        assert_relative_eq!(l2_distance(&a, &b).unwrap(), sum.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn l2_distance_grid_mismatch() {
        let mut rng = synth::rng(42);
        let a = synth::skew_signal(&mut rng, &TimeGrid::uniform_unit(4));
        let b = synth::skew_signal(&mut rng, &TimeGrid::uniform_unit(5));
        assert!(matches!(l2_distance(&a, &b), Err(Error::GridMismatch)));
    }

    #[test]
    fn l2_metric_axioms_on_random_triples() {
        let mut rng = synth::rng(43);
        let grid = TimeGrid::uniform_unit(6);
        for _ in 0..1000 {
            let a = synth::skew_signal(&mut rng, &grid);
            let b = synth::skew_signal(&mut rng, &grid);
            let c = synth::skew_signal(&mut rng, &grid);
            let ab = l2_distance(&a, &b).unwrap();
            let ba = l2_distance(&b, &a).unwrap();
            let ac = l2_distance(&a, &c).unwrap();
            let cb = l2_distance(&c, &b).unwrap();
            assert_relative_eq!(ab, ba, epsilon = 1e-12);
            assert!(ab <= ac + cb + 1e-12);
        }
    }

    #[test]
    fn scaling_law_signal_norm_is_sqrt_of_speed() {
        let mut rng = synth::rng(44);
        let c = synth::so3_curve(&mut rng, 10);
        let q = srvt_group(&c).unwrap();
        for i in 0..q.len() {
            let step = c.samples()[i].step_to(&c.samples()[i + 1]).unwrap();
            let eta_norm = alg_norm(&step) / c.grid().dt(i);
            assert_relative_eq!(alg_norm(&q.values()[i]), eta_norm.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn group_signal_invariant_under_right_translation() {
        let mut rng = synth::rng(45);
        let c = synth::so3_curve(&mut rng, 10);
        let g = synth::random_rotation(&mut rng);
        let translated = DiscreteCurve::new(
            c.grid().clone(),
            c.samples().iter().map(|z| *z * g).collect(),
        )
        .unwrap();
        let q1 = srvt_group(&c).unwrap();
        let q2 = srvt_group(&translated).unwrap();
        for (a, b) in q1.values().iter().zip(q2.values()) {
            assert!((a.vee() - b.vee()).norm() < 1e-10);
        }
    }

    #[test]
    fn signal_constructor_rejects_zero_values() {
        let grid = TimeGrid::uniform_unit(2);
        let values = vec![hat(Vec3::x()), SkewMatrix::zero()];
        assert!(matches!(
            AlgebraSignal::new(grid, values),
            Err(Error::ZeroSignalSegment { index: 1, .. })
        ));
    }
}

//! Shape-level operations: geodesic interpolation, blending, shape
//! distance and curve closing, assembled from the transforms and the DP
//! registration.
//!
//! All pairwise operations first normalize start points (the transforms
//! discard them): the second curve is carried to the first curve's start
//! by the space's canonical symmetry, and reconstructions are anchored at
//! the first curve's original start. Geodesics are straight lines between
//! the transformed signals, so `theta = 0` and `theta = 1` reproduce the
//! (aligned, optionally registered) input curves.

use crate::curve::{AnyCurve, CurvePoint, DiscreteCurve, TimeGrid, UnitVector};
use crate::error::{Error, Result};
use crate::registration::{apply_warp, dp_reparametrize, SlopeSet, Warp};
use crate::so3::{alg_norm, exp_so3, hat, log_so3, Rotation, SkewMatrix, Vec3};
use crate::srvt::{
    l2_distance, orthonormal_frame, srvt_group, srvt_reductive, srvt_reductive_inverse,
    srvt_sphere, AlgebraSignal,
};

/// Which transform a shape-level operation runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Group,
    Sphere,
    Reductive,
}

impl Transform {
    pub fn name(&self) -> &'static str {
        match self {
            Transform::Group => "group",
            Transform::Sphere => "sphere",
            Transform::Reductive => "reductive",
        }
    }
}

/// Options shared by interpolation, blending and distance.
#[derive(Debug, Clone)]
pub struct GeodesicOptions {
    /// Interpolation weights in `[0, 1]`.
    pub thetas: Vec<f64>,
    /// Register the second curve onto the first before interpolating.
    pub register: bool,
    /// DP step set used when registering.
    pub slopes: SlopeSet,
}

impl Default for GeodesicOptions {
    fn default() -> Self {
        GeodesicOptions {
            thetas: vec![0.25, 0.5, 0.75],
            register: false,
            slopes: SlopeSet::default(),
        }
    }
}

/// A computed geodesic: one curve per requested weight, plus the signal
/// distances before and (when registered) after reparametrization.
#[derive(Debug, Clone)]
pub struct Geodesic<P> {
    pub thetas: Vec<f64>,
    pub curves: Vec<DiscreteCurve<P>>,
    pub pre_distance: f64,
    pub post_distance: Option<f64>,
    pub warp: Option<Warp>,
}

/// Shape distance report: the L^2 distance of the transforms, optionally
/// after DP registration of the second curve.
#[derive(Debug, Clone)]
pub struct ShapeDistance {
    pub unregistered: f64,
    pub registered: Option<f64>,
    pub warp: Option<Warp>,
}

fn check_thetas(thetas: &[f64]) -> Result<()> {
    for &theta in thetas {
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::ThetaOutOfRange { theta });
        }
    }
    Ok(())
}

/// Brings two curves onto a common grid (the first curve's, or a uniform
/// refinement of it when the DP needs one).
fn common_grid<P: CurvePoint>(
    c1: &DiscreteCurve<P>,
    c2: &DiscreteCurve<P>,
    need_uniform: bool,
) -> Result<(DiscreteCurve<P>, DiscreteCurve<P>)> {
    let (g1, g2) = (c1.grid(), c2.grid());
    if (g1.start() - g2.start()).abs() > 1e-12 || (g1.end() - g2.end()).abs() > 1e-12 {
        return Err(Error::GridMismatch);
    }
    if need_uniform && !g1.is_uniform(1e-9) {
        let grid = TimeGrid::uniform(g1.start(), g1.end(), g1.segments())?;
        return Ok((c1.resample(&grid)?, c2.resample(&grid)?));
    }
    if g1 != g2 {
        return Ok((c1.clone(), c2.resample(g1)?));
    }
    Ok((c1.clone(), c2.clone()))
}

type ForwardFn<'a, P> =
    &'a dyn Fn(&DiscreteCurve<P>) -> Result<AlgebraSignal<<P as CurvePoint>::Step>>;
type InverseFn<'a, P> =
    &'a dyn Fn(&AlgebraSignal<<P as CurvePoint>::Step>, &P) -> Result<DiscreteCurve<P>>;

/// The shared interpolation pipeline, parametrized over the transform pair.
fn geodesic_pipeline<P: CurvePoint>(
    c1: &DiscreteCurve<P>,
    c2: &DiscreteCurve<P>,
    opts: &GeodesicOptions,
    forward: ForwardFn<'_, P>,
    inverse: InverseFn<'_, P>,
) -> Result<Geodesic<P>> {
    check_thetas(&opts.thetas)?;
    let c2 = c2.realign_start(c1.start())?;
    let (c1, mut c2) = common_grid(c1, &c2, opts.register)?;

    let q1 = forward(&c1)?;
    let mut q2 = forward(&c2)?;
    let pre_distance = l2_distance(&q1, &q2)?;

    let mut warp = None;
    let mut post_distance = None;
    if opts.register {
        let w = dp_reparametrize(&q1, &q2, &opts.slopes)?;
        let warped = apply_warp(&c2, &w)?;
        let q2w = forward(&warped)?;
        let post = l2_distance(&q1, &q2w)?;
        // The DP is exact for its left-endpoint cost model, which can
        // mis-rank warps of rough curves under the re-transform distance;
        // keep the original parametrization whenever the warp does not
        // actually improve it.
        if post <= pre_distance {
            c2 = warped;
            q2 = q2w;
            post_distance = Some(post);
            warp = Some(w);
        } else {
            post_distance = Some(pre_distance);
            warp = Some(Warp::identity(q1.grid()));
        }
    }

    let anchor = c1.start().clone();
    let mut curves = Vec::with_capacity(opts.thetas.len());
    for &theta in &opts.thetas {
        if theta == 0.0 {
            curves.push(c1.clone());
        } else if theta == 1.0 {
            curves.push(c2.clone());
        } else {
            let combo = q1.convex_combination(&q2, theta)?;
            curves.push(inverse(&combo, &anchor)?);
        }
    }
    Ok(Geodesic {
        thetas: opts.thetas.clone(),
        curves,
        pre_distance,
        post_distance,
        warp,
    })
}

/// Geodesic between two SO(3) curves through the Lie group transform.
pub fn interpolate_group(
    c1: &DiscreteCurve<Rotation>,
    c2: &DiscreteCurve<Rotation>,
    opts: &GeodesicOptions,
) -> Result<Geodesic<Rotation>> {
    geodesic_pipeline(c1, c2, opts, &|c| srvt_group(c), &|s, start| {
        crate::srvt::srvt_group_inverse(s, *start)
    })
}

/// Geodesic between two sphere curves through the homogeneous transform.
pub fn interpolate_sphere(
    c1: &DiscreteCurve<UnitVector>,
    c2: &DiscreteCurve<UnitVector>,
    opts: &GeodesicOptions,
) -> Result<Geodesic<UnitVector>> {
    geodesic_pipeline(c1, c2, opts, &|c| srvt_sphere(c), &|s, start| {
        crate::srvt::srvt_sphere_inverse(s, *start)
    })
}

/// Geodesic between two sphere curves through the reductive transform.
///
/// Both curves share the frame built from the first curve's start point,
/// so the signals live in the same reference plane and the inverse is
/// anchored consistently.
pub fn interpolate_reductive(
    c1: &DiscreteCurve<UnitVector>,
    c2: &DiscreteCurve<UnitVector>,
    opts: &GeodesicOptions,
) -> Result<Geodesic<UnitVector>> {
    let frame0 = orthonormal_frame(c1.start());
    geodesic_pipeline(
        c1,
        c2,
        opts,
        &|c| srvt_reductive(c, frame0).map(|(q, _)| q),
        &|s, start| srvt_reductive_inverse(s, *start, frame0),
    )
}

fn single_theta_options(theta: f64) -> GeodesicOptions {
    GeodesicOptions {
        thetas: vec![theta],
        register: false,
        slopes: SlopeSet::default(),
    }
}

/// Blend of two SO(3) curves: the inverse transform of
/// `s * Q(c0) + (1 - s) * Q(c1)`, i.e. interpolation from `c0` to `c1`
/// at weight `1 - s`.
pub fn blend_group(
    c0: &DiscreteCurve<Rotation>,
    c1: &DiscreteCurve<Rotation>,
    s: f64,
) -> Result<DiscreteCurve<Rotation>> {
    Ok(interpolate_group(c0, c1, &single_theta_options(1.0 - s))?
        .curves
        .remove(0))
}

/// Blend of two sphere curves (homogeneous transform); see [`blend_group`].
pub fn blend_sphere(
    c0: &DiscreteCurve<UnitVector>,
    c1: &DiscreteCurve<UnitVector>,
    s: f64,
) -> Result<DiscreteCurve<UnitVector>> {
    Ok(interpolate_sphere(c0, c1, &single_theta_options(1.0 - s))?
        .curves
        .remove(0))
}

/// Blend of two sphere curves (reductive transform); see [`blend_group`].
pub fn blend_reductive(
    c0: &DiscreteCurve<UnitVector>,
    c1: &DiscreteCurve<UnitVector>,
    s: f64,
) -> Result<DiscreteCurve<UnitVector>> {
    Ok(
        interpolate_reductive(c0, c1, &single_theta_options(1.0 - s))?
            .curves
            .remove(0),
    )
}

fn distance_options(register: bool) -> GeodesicOptions {
    GeodesicOptions {
        thetas: vec![],
        register,
        slopes: SlopeSet::default(),
    }
}

fn to_shape_distance<P>(g: Geodesic<P>) -> ShapeDistance {
    ShapeDistance {
        unregistered: g.pre_distance,
        registered: g.post_distance,
        warp: g.warp,
    }
}

/// Shape distance between SO(3) curves.
pub fn shape_distance_group(
    c1: &DiscreteCurve<Rotation>,
    c2: &DiscreteCurve<Rotation>,
    register: bool,
) -> Result<ShapeDistance> {
    interpolate_group(c1, c2, &distance_options(register)).map(to_shape_distance)
}

/// Shape distance between sphere curves (homogeneous transform).
pub fn shape_distance_sphere(
    c1: &DiscreteCurve<UnitVector>,
    c2: &DiscreteCurve<UnitVector>,
    register: bool,
) -> Result<ShapeDistance> {
    interpolate_sphere(c1, c2, &distance_options(register)).map(to_shape_distance)
}

/// Shape distance between sphere curves (reductive transform).
pub fn shape_distance_reductive(
    c1: &DiscreteCurve<UnitVector>,
    c2: &DiscreteCurve<UnitVector>,
    register: bool,
) -> Result<ShapeDistance> {
    interpolate_reductive(c1, c2, &distance_options(register)).map(to_shape_distance)
}

/// An interpolation request over dynamically tagged curves.
#[derive(Debug, Clone)]
pub struct GeodesicRequest {
    pub c1: AnyCurve,
    pub c2: AnyCurve,
    pub transform: Transform,
    pub options: GeodesicOptions,
}

/// Interpolation result over dynamically tagged curves.
#[derive(Debug, Clone)]
pub struct AnyGeodesic {
    pub thetas: Vec<f64>,
    pub curves: Vec<AnyCurve>,
    pub pre_distance: f64,
    pub post_distance: Option<f64>,
}

fn wrap_geodesic<P: CurvePoint>(g: Geodesic<P>) -> AnyGeodesic
where
    AnyCurve: From<DiscreteCurve<P>>,
{
    AnyGeodesic {
        thetas: g.thetas,
        curves: g.curves.into_iter().map(AnyCurve::from).collect(),
        pre_distance: g.pre_distance,
        post_distance: g.post_distance,
    }
}

/// Dispatches [`interpolate_group`] / [`interpolate_sphere`] /
/// [`interpolate_reductive`] on tagged curves, checking space
/// compatibility.
pub fn interpolate(req: &GeodesicRequest) -> Result<AnyGeodesic> {
    match req.transform {
        Transform::Group => {
            let g = interpolate_group(req.c1.as_so3()?, req.c2.as_so3()?, &req.options)?;
            Ok(wrap_geodesic(g))
        }
        Transform::Sphere => {
            let g = interpolate_sphere(req.c1.as_s2()?, req.c2.as_s2()?, &req.options)?;
            Ok(wrap_geodesic(g))
        }
        Transform::Reductive => {
            let g = interpolate_reductive(req.c1.as_s2()?, req.c2.as_s2()?, &req.options)?;
            Ok(wrap_geodesic(g))
        }
    }
}

/// Blend on tagged curves; see [`blend_group`] for the weight convention.
pub fn blend(c0: &AnyCurve, c1: &AnyCurve, s: f64, transform: Transform) -> Result<AnyCurve> {
    match transform {
        Transform::Group => Ok(blend_group(c0.as_so3()?, c1.as_so3()?, s)?.into()),
        Transform::Sphere => Ok(blend_sphere(c0.as_s2()?, c1.as_s2()?, s)?.into()),
        Transform::Reductive => Ok(blend_reductive(c0.as_s2()?, c1.as_s2()?, s)?.into()),
    }
}

/// Shape distance on tagged curves.
pub fn shape_distance(
    c1: &AnyCurve,
    c2: &AnyCurve,
    transform: Transform,
    register: bool,
) -> Result<ShapeDistance> {
    match transform {
        Transform::Group => shape_distance_group(c1.as_so3()?, c2.as_so3()?, register),
        Transform::Sphere => shape_distance_sphere(c1.as_s2()?, c2.as_s2()?, register),
        Transform::Reductive => shape_distance_reductive(c1.as_s2()?, c2.as_s2()?, register),
    }
}

/// Result of [`close_curve`]: the closed curve plus convergence data.
#[derive(Debug, Clone)]
pub struct CurveClosure {
    pub curve: DiscreteCurve<Rotation>,
    pub iterations: usize,
    /// Endpoint defect after each accepted iterate, starting with the
    /// input's; nonincreasing by construction.
    pub gap_history: Vec<f64>,
    /// `l2(Q(input), Q(closed)) / |Q(input)|_{L^2}`.
    pub relative_signal_change: f64,
    pub converged: bool,
}

/// The endpoint defect `log(z_0 z_N^T)`, the algebra-valued gap of an
/// almost-closed curve.
pub fn closure_defect(curve: &DiscreteCurve<Rotation>) -> Result<SkewMatrix> {
    log_so3(&(*curve.start() * curve.end().transpose()))
}

/// Closes an SO(3) curve by distributing the endpoint defect over the
/// segments in transform space.
///
/// Each iteration transports the defect to every segment (conjugating by
/// the remaining tail of the curve), applies the inverse differential of
/// the exponential to second order, and adds the arc-length-weighted share
/// to the segment step; the curve is then rebuilt from the modified signal
/// with the start point fixed. Steps that would increase the defect are
/// damped by halving. Iteration stops once the gap reaches `tol`.
pub fn close_curve(
    curve: &DiscreteCurve<Rotation>,
    tol: f64,
    max_iter: usize,
) -> Result<CurveClosure> {
    let q_orig = srvt_group(curve)?;
    let mut gap = alg_norm(&closure_defect(curve)?);
    let mut history = vec![gap];

    if gap <= tol {
        return Ok(CurveClosure {
            curve: curve.clone(),
            iterations: 0,
            gap_history: history,
            relative_signal_change: 0.0,
            converged: true,
        });
    }

    let n = curve.grid().segments();
    let mut current = curve.clone();

    for _ in 1..=max_iter {
        let samples = current.samples().to_vec();
        let steps: Vec<Vec3> = (0..n)
            .map(|i| samples[i].step_to(&samples[i + 1]).map(|s| s.vee()))
            .collect::<Result<_>>()?;
        let total_arc: f64 = steps.iter().map(|s| s.norm()).sum();
        if total_arc < 1e-12 {
            break;
        }
        let defect = closure_defect(&current)?.vee();
        let z_end = *current.end();

        let mut accepted = None;
        let mut scale = 1.0;
        while scale > 1e-6 {
            let mut new_samples = Vec::with_capacity(n + 1);
            new_samples.push(samples[0]);
            let mut feasible = true;
            for i in 0..n {
                let x = steps[i];
                let weight = x.norm() / total_arc * scale;
                // Defect transported past the tail of the curve.
                let u = (samples[i + 1] * z_end.transpose()).apply(defect) * weight;
                // Inverse differential of exp at x, to second order.
                let delta = u - x.cross(&u) * 0.5 + x.cross(&x.cross(&u)) / 12.0;
                let step = x + delta;
                if step.norm() < 1e-11 {
                    feasible = false;
                    break;
                }
                let prev = *new_samples.last().unwrap();
                new_samples.push(exp_so3(&hat(step)) * prev);
            }
            if feasible {
                if let Ok(candidate) = DiscreteCurve::new(current.grid().clone(), new_samples) {
                    let new_gap = alg_norm(&closure_defect(&candidate)?);
                    if new_gap < gap {
                        accepted = Some((candidate, new_gap));
                        break;
                    }
                }
            }
            scale *= 0.5;
        }

        match accepted {
            Some((candidate, new_gap)) => {
                current = candidate;
                gap = new_gap;
                history.push(gap);
                if gap <= tol {
                    let rel = l2_distance(&q_orig, &srvt_group(&current)?)? / q_orig.l2_norm();
                    return Ok(CurveClosure {
                        curve: current,
                        iterations: history.len() - 1,
                        gap_history: history,
                        relative_signal_change: rel,
                        converged: true,
                    });
                }
            }
            None => break,
        }
    }

    let rel = l2_distance(&q_orig, &srvt_group(&current)?)? / q_orig.l2_norm();
    let iterations = history.len() - 1;
    Err(Error::NoConvergence {
        iterations,
        gap,
        best: Box::new(CurveClosure {
            curve: current,
            iterations,
            gap_history: history,
            relative_signal_change: rel,
            converged: false,
        }),
    })
}

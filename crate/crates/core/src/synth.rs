//! Deterministic synthetic data for tests, fixtures and benchmarks.
//!
//! All generators are seeded explicitly. The `LIESHAPE_SEED` environment
//! variable overrides the default seed wherever [`env_seed`] is used, so
//! fixture-driven runs stay reproducible but can be varied on demand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{DiscreteCurve, TimeGrid, UnitVector};
use crate::so3::{exp_so3, hat, Rotation, SkewMatrix, Vec3};
use crate::srvt::AlgebraSignal;

/// Seed from `LIESHAPE_SEED` when set and parseable, else the default.
pub fn env_seed(default: u64) -> u64 {
    std::env::var("LIESHAPE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point on the unit sphere.
pub fn unit_vector(rng: &mut ChaCha8Rng) -> Vec3 {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).sqrt();
    Vec3::new(r * phi.cos(), r * phi.sin(), z)
}

/// Random vector with norm below `radius` (uniform direction, uniform length).
pub fn vec3_in_ball(rng: &mut ChaCha8Rng, radius: f64) -> Vec3 {
    unit_vector(rng) * rng.random_range(0.0..radius)
}

/// Random rotation with angle in `[0, pi - 0.1]`.
pub fn random_rotation(rng: &mut ChaCha8Rng) -> Rotation {
    let angle = rng.random_range(0.0..(std::f64::consts::PI - 0.1));
    exp_so3(&hat(unit_vector(rng) * angle))
}

/// Random SO(3) curve on the unit grid: a rotation walk with segment
/// angles in `[0.05, 0.7]`, safely away from both degeneracy and pi.
pub fn so3_curve(rng: &mut ChaCha8Rng, nodes: usize) -> DiscreteCurve<Rotation> {
    assert!(nodes >= 2);
    let grid = TimeGrid::uniform_unit(nodes - 1);
    let mut samples = Vec::with_capacity(nodes);
    samples.push(random_rotation(rng));
    for i in 1..nodes {
        let step = unit_vector(rng) * rng.random_range(0.05..0.7);
        let prev: Rotation = samples[i - 1];
        samples.push(exp_so3(&hat(step)) * prev);
    }
    DiscreteCurve::new(grid, samples).expect("synthetic walk is admissible")
}

/// Random sphere curve on the unit grid with segment angles in
/// `[0.05, 0.7]`.
pub fn sphere_curve(rng: &mut ChaCha8Rng, nodes: usize) -> DiscreteCurve<UnitVector> {
    assert!(nodes >= 2);
    let grid = TimeGrid::uniform_unit(nodes - 1);
    let mut points = Vec::with_capacity(nodes);
    points.push(unit_vector(rng));
    for i in 1..nodes {
        let c: Vec3 = points[i - 1];
        // Random tangent direction at c.
        let mut dir = unit_vector(rng);
        dir -= c * dir.dot(&c);
        while dir.norm() < 1e-6 {
            dir = unit_vector(rng);
            dir -= c * dir.dot(&c);
        }
        let dir = dir.normalize();
        let angle: f64 = rng.random_range(0.05..0.7);
        points.push(c * angle.cos() + dir * angle.sin());
    }
    let samples = points
        .into_iter()
        .map(|p| UnitVector::try_new(p).expect("constructed on the sphere"))
        .collect();
    DiscreteCurve::new(grid, samples).expect("synthetic walk is admissible")
}

/// Random polyline in R^3 with segment lengths in `[0.1, 1.0]`.
pub fn r3_curve(rng: &mut ChaCha8Rng, nodes: usize) -> DiscreteCurve<Vec3> {
    assert!(nodes >= 2);
    let grid = TimeGrid::uniform_unit(nodes - 1);
    let mut samples = Vec::with_capacity(nodes);
    samples.push(vec3_in_ball(rng, 1.0));
    for i in 1..nodes {
        let step = unit_vector(rng) * rng.random_range(0.1..1.0);
        let prev: Vec3 = samples[i - 1];
        samples.push(prev + step);
    }
    DiscreteCurve::new(grid, samples).expect("synthetic polyline is admissible")
}

/// Random nonvanishing skew-valued signal on the given grid, with value
/// norms in `[0.2, 2.0]`.
pub fn skew_signal(rng: &mut ChaCha8Rng, grid: &TimeGrid) -> AlgebraSignal<SkewMatrix> {
    let values = (0..grid.segments())
        .map(|_| hat(unit_vector(rng) * rng.random_range(0.2..2.0)))
        .collect();
    AlgebraSignal::new(grid.clone(), values).expect("values bounded away from zero")
}

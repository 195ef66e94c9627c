//! Shared fixtures for the benchmark targets.

use lieshape_core::{synth, DiscreteCurve, Rotation, UnitVector};

pub const BENCH_SEED: u64 = 20_240_517;

pub fn so3_curve(nodes: usize) -> DiscreteCurve<Rotation> {
    synth::so3_curve(&mut synth::rng(BENCH_SEED), nodes)
}

pub fn sphere_curve(nodes: usize) -> DiscreteCurve<UnitVector> {
    synth::sphere_curve(&mut synth::rng(BENCH_SEED ^ 1), nodes)
}

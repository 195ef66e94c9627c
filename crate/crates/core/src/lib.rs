//! Elastic shape analysis for discrete curves on SO(3) and the unit
//! sphere S^2 = SO(3)/SO(2), built on square root velocity transforms.
//!
//! The pipeline: curves are differentiated segmentwise, transported to the
//! Lie algebra so(3) (by right-logarithmic derivatives on the group, by
//! the sphere's rotation action, or by a moving reductive frame), and
//! scaled by the inverse square root of their speed. Distances, geodesics
//! and blends then reduce to L^2 operations on nonvanishing piecewise-
//! constant algebra-valued signals; dynamic programming over monotone
//! lattice warps quotients out the parametrization.
//!
//! Modules:
//! - [`so3`]: hat/vee, Rodrigues exponential, logarithm, algebra metric.
//! - [`curve`]: grids, the three sample spaces, piecewise-geodesic
//!   evaluation and resampling, sphere velocity solve.
//! - [`mod@srvt`]: the four transforms and their inverses, L^2 distance.
//! - [`registration`]: DP reparametrization, warps, warp actions.
//! - [`shape`]: geodesic interpolation, blending, shape distance, curve
//!   closing.
//! - [`io`]: curve/signal files, the SO(3) -> S^2 projection, CSV export.
//! - [`synth`]: seeded generators for tests, fixtures, benchmarks.

pub mod curve;
pub mod error;
pub mod io;
pub mod registration;
pub mod shape;
pub mod so3;
pub mod srvt;
pub mod synth;

pub use curve::{
    sphere_velocities, AnyCurve, CurvePoint, DiscreteCurve, Space, SphereVelocities, TimeGrid,
    UnitVector,
};
pub use error::{Error, Result};
pub use io::{
    default_projection_vector, load_curve, project_so3_to_s2, save_curve, CurveFile,
    GeodesicDataset, SignalFile,
};
pub use registration::{apply_warp, dp_reparametrize, warp_cost, warp_signal, SlopeSet, Warp};
pub use shape::{
    blend, blend_group, blend_reductive, blend_sphere, close_curve, closure_defect, interpolate,
    interpolate_group, interpolate_reductive, interpolate_sphere, shape_distance,
    shape_distance_group, shape_distance_reductive, shape_distance_sphere, AnyGeodesic,
    CurveClosure, Geodesic, GeodesicOptions, GeodesicRequest, ShapeDistance, Transform,
};
pub use so3::{alg_inner, alg_norm, exp_so3, hat, log_so3, vee, Mat3, Rotation, SkewMatrix, Vec3};
pub use srvt::{
    l2_distance, orthonormal_frame, srvt, srvt_euclidean, srvt_euclidean_inverse, srvt_group,
    srvt_group_inverse, srvt_inverse, srvt_reductive, srvt_reductive_inverse, srvt_sphere,
    srvt_sphere_inverse, AlgebraElement, AlgebraSignal, FrameSequence,
};

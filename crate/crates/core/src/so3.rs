//! Exact small-matrix kernels for SO(3) and its Lie algebra so(3).
//!
//! The algebra is represented by skew-symmetric 3x3 matrices, identified with
//! R^3 through the hat map
//!
//! ```text
//!               |  0   -x3   x2 |
//! hat(x1,x2,x3) |  x3   0   -x1 |
//!               | -x2   x1   0  |
//! ```
//!
//! so that `hat(v) * w = v x w`. The exponential uses Rodrigues' formula
//!
//! ```text
//! exp(A) = I + (sin a / a) A + ((1 - cos a) / a^2) A^2,    a = |vee(A)|
//! ```
//!
//! and the logarithm recovers the angle with `atan2(|y|, (tr R - 1) / 2)`
//! where `y = vee((R - R^T) / 2)`, which is well defined for all angles
//! below pi. Near pi the axis itself is ill-conditioned and the logarithm
//! reports [`Error::AngleNearPi`] instead of guessing.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Switch point between trigonometric and degree-4 Taylor branches.
/// Both branches agree to better than 1e-12 at this angle.
const SMALL_ANGLE: f64 = 1e-4;

/// Maximum tolerated asymmetry when adopting a raw matrix as skew.
const SKEW_TOL: f64 = 1e-12;

/// Rotation admission: Frobenius deviation of R^T R from the identity.
const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Angles above `pi - NEAR_PI_MARGIN` are rejected by the logarithm.
const NEAR_PI_MARGIN: f64 = 1e-6;

/// An element of so(3): a 3x3 skew-symmetric matrix.
///
/// Skewness is structural: every constructor either builds the skew pattern
/// entrywise or antisymmetrizes, so `A^T = -A` holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewMatrix(Mat3);

impl SkewMatrix {
    pub fn zero() -> Self {
        SkewMatrix(Mat3::zeros())
    }

    /// Adopts a raw matrix as an algebra element.
    ///
    /// Rejects inputs whose asymmetry `max |A + A^T|` exceeds 1e-12, then
    /// antisymmetrizes so the invariant holds exactly.
    pub fn try_from_matrix(m: Mat3) -> Result<Self> {
        let asym = (m + m.transpose()).abs().max();
        if asym > SKEW_TOL {
            return Err(Error::NotSkew { asymmetry: asym });
        }
        Ok(SkewMatrix((m - m.transpose()) * 0.5))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    /// Coordinates under the hat map; inverse of [`hat`].
    pub fn vee(&self) -> Vec3 {
        Vec3::new(self.0[(2, 1)], self.0[(0, 2)], self.0[(1, 0)])
    }

    /// Rotation angle `|vee(A)|` of the exponential of this element.
    pub fn angle(&self) -> f64 {
        self.vee().norm()
    }
}

/// Hat map: the isomorphism R^3 -> so(3) with `hat(v) * w = v x w`.
#[rustfmt::skip]
pub fn hat(v: Vec3) -> SkewMatrix {
    SkewMatrix(Mat3::new(
        0.0,  -v.z,  v.y,
        v.z,   0.0, -v.x,
       -v.y,   v.x,  0.0,
    ))
}

/// Vee map: coordinates of a skew matrix, `hat(vee(A)) = A` exactly.
pub fn vee(a: &SkewMatrix) -> Vec3 {
    a.vee()
}

impl Add for SkewMatrix {
    type Output = SkewMatrix;
    fn add(self, rhs: SkewMatrix) -> SkewMatrix {
        // Entrywise sums of exactly skew matrices stay exactly skew.
        SkewMatrix(self.0 + rhs.0)
    }
}

impl Sub for SkewMatrix {
    type Output = SkewMatrix;
    fn sub(self, rhs: SkewMatrix) -> SkewMatrix {
        SkewMatrix(self.0 - rhs.0)
    }
}

impl Neg for SkewMatrix {
    type Output = SkewMatrix;
    fn neg(self) -> SkewMatrix {
        SkewMatrix(-self.0)
    }
}

impl Mul<f64> for SkewMatrix {
    type Output = SkewMatrix;
    fn mul(self, s: f64) -> SkewMatrix {
        SkewMatrix(self.0 * s)
    }
}

impl Mul<Vec3> for SkewMatrix {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        self.0 * v
    }
}

/// A rotation matrix: a point of SO(3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation(Mat3);

impl Rotation {
    pub fn identity() -> Self {
        Rotation(Mat3::identity())
    }

    /// Admits a matrix as a rotation: `|R^T R - I|_F <= 1e-9` and `det R > 0`.
    pub fn try_new(m: Mat3) -> Result<Self> {
        let deviation = Self::orthogonality_defect(&m);
        if deviation > ORTHOGONALITY_TOL || m.determinant() <= 0.0 {
            return Err(Error::NotOnManifold {
                index: 0,
                space: "SO(3)",
                deviation,
            });
        }
        Ok(Rotation(m))
    }

    /// `|R^T R - I|_F`, the admission metric for [`Rotation::try_new`].
    pub fn orthogonality_defect(m: &Mat3) -> f64 {
        (m.transpose() * m - Mat3::identity()).norm()
    }

    pub(crate) fn from_matrix_unchecked(m: Mat3) -> Self {
        Rotation(m)
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    /// Transpose, which is also the group inverse.
    pub fn transpose(&self) -> Rotation {
        Rotation(self.0.transpose())
    }

    /// Rotates a vector.
    pub fn apply(&self, v: Vec3) -> Vec3 {
        self.0 * v
    }

    /// Rotation angle in [0, pi], stable at every angle including pi.
    pub fn angle(&self) -> f64 {
        let y = ((self.0 - self.0.transpose()) * 0.5).norm() / std::f64::consts::SQRT_2;
        let c = (self.0.trace() - 1.0) * 0.5;
        y.atan2(c)
    }

    /// Adjoint action on the algebra: `Ad(R) A = R A R^T`.
    ///
    /// Computed as `hat(R vee(A))`, which is the same map and keeps the
    /// result exactly skew.
    pub fn adjoint(&self, a: &SkewMatrix) -> SkewMatrix {
        hat(self.0 * a.vee())
    }
}

impl Mul for Rotation {
    type Output = Rotation;
    fn mul(self, rhs: Rotation) -> Rotation {
        Rotation(self.0 * rhs.0)
    }
}

impl Mul<Vec3> for Rotation {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        self.0 * v
    }
}

/// Lie group exponential so(3) -> SO(3) by Rodrigues' formula.
///
/// For angles below 1e-4 the trigonometric coefficients are replaced by
/// their degree-4 Taylor expansions.
pub fn exp_so3(a: &SkewMatrix) -> Rotation {
    let alpha = a.angle();
    let (sa, cb) = if alpha < SMALL_ANGLE {
        let a2 = alpha * alpha;
        (
            1.0 - a2 / 6.0 + a2 * a2 / 120.0,
            0.5 - a2 / 24.0 + a2 * a2 / 720.0,
        )
    } else {
        (alpha.sin() / alpha, (1.0 - alpha.cos()) / (alpha * alpha))
    };
    let m = a.0;
    Rotation(Mat3::identity() + m * sa + m * m * cb)
}

/// Lie group logarithm SO(3) -> so(3).
///
/// Uses `theta = atan2(|y|, (tr R - 1) / 2)` with `y = vee((R - R^T)/2)`,
/// which reduces to `asin(|y|)/|y| * hat(y)` near the identity and stays
/// valid up to `pi - 1e-6`. Beyond that the axis cannot be recovered from
/// the antisymmetric part and [`Error::AngleNearPi`] asks the caller to
/// refine the sampling.
pub fn log_so3(r: &Rotation) -> Result<SkewMatrix> {
    let m = r.0;
    let y = Vec3::new(
        (m[(2, 1)] - m[(1, 2)]) * 0.5,
        (m[(0, 2)] - m[(2, 0)]) * 0.5,
        (m[(1, 0)] - m[(0, 1)]) * 0.5,
    );
    let sin_theta = y.norm();
    let cos_theta = (m.trace() - 1.0) * 0.5;
    let theta = sin_theta.atan2(cos_theta);

    if theta > std::f64::consts::PI - NEAR_PI_MARGIN {
        return Err(Error::AngleNearPi {
            angle: theta,
            margin: NEAR_PI_MARGIN,
        });
    }

    // theta / sin(theta), with the Taylor branch covering sin(theta) -> 0.
    let factor = if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
    } else {
        theta / sin_theta
    };
    Ok(hat(y * factor))
}

/// Inner product on so(3): `<A, B> = tr(A^T B) / 2`.
///
/// Chosen so that `alg_norm(hat(x)) = |x|_2`, making the algebra norm agree
/// with the angle in Rodrigues' formula.
pub fn alg_inner(a: &SkewMatrix, b: &SkewMatrix) -> f64 {
    let mut sum = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            sum += a.0[(i, j)] * b.0[(i, j)];
        }
    }
    0.5 * sum
}

/// Norm induced by [`alg_inner`].
pub fn alg_norm(a: &SkewMatrix) -> f64 {
    alg_inner(a, a).sqrt()
}

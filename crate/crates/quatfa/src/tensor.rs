//! Elements of `H (x) H` as 4x4 real coefficient arrays: the sharp
//! involution, the positivity cone, the multiplication map back to `H`,
//! and the injective and Hilbert tensor norms.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, Matrix4, SMatrix};

use crate::linalg;
use crate::quat::{Basis, Quaternion};

/// Sign diagonal of quaternion conjugation in coordinates.
fn conj_diag() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::vector![1.0, -1.0, -1.0, -1.0])
}

/// An element of `H (x) H`; entry `(g, h)` is the coefficient of
/// `e_g (x) e_h`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct HTensor {
    pub coeffs: Matrix4<f64>,
}

impl HTensor {
    pub fn zero() -> Self {
        HTensor { coeffs: Matrix4::zeros() }
    }

    pub fn new(coeffs: Matrix4<f64>) -> Self {
        HTensor { coeffs }
    }

    /// The elementary tensor `alpha (x) beta`.
    pub fn pure(alpha: Quaternion, beta: Quaternion) -> Self {
        HTensor { coeffs: alpha.coords() * beta.coords().transpose() }
    }

    /// `sum_e e (x) e`, whose coefficient array is the identity.
    pub fn diagonal_sum() -> Self {
        HTensor { coeffs: Matrix4::identity() }
    }

    /// Image under the multiplication map `m(a (x) b) = a b`.
    pub fn multiply_out(&self) -> Quaternion {
        let mut out = Quaternion::ZERO;
        for g in Basis::ALL {
            for h in Basis::ALL {
                out = out + (g.quaternion() * h.quaternion()) * self.coeffs[(g.index(), h.index())];
            }
        }
        out
    }

    /// The sharp involution `(a (x) b)^# = b* (x) a*`.
    pub fn sharp(&self) -> Self {
        let j = conj_diag();
        HTensor { coeffs: j * self.coeffs.transpose() * j }
    }

    /// Left multiplication on the first leg: `(alpha (x) 1) p`.
    pub fn first_left(&self, alpha: Quaternion) -> Self {
        HTensor { coeffs: alpha.left_mul_matrix() * self.coeffs }
    }

    /// Right multiplication on the first leg: `p (alpha (x) 1)`.
    pub fn first_right(&self, alpha: Quaternion) -> Self {
        HTensor { coeffs: alpha.right_mul_matrix() * self.coeffs }
    }

    /// Left multiplication on the second leg: `(1 (x) alpha) p`.
    pub fn second_left(&self, alpha: Quaternion) -> Self {
        HTensor { coeffs: self.coeffs * alpha.left_mul_matrix().transpose() }
    }

    /// Right multiplication on the second leg: `p (1 (x) alpha)`.
    pub fn second_right(&self, alpha: Quaternion) -> Self {
        HTensor { coeffs: self.coeffs * alpha.right_mul_matrix().transpose() }
    }

    /// Injective tensor norm: the operator norm of the linear map on `H`
    /// associated to the element through the self-duality of `H`.
    pub fn epsilon_norm(&self) -> f64 {
        linalg::operator_norm(&self.to_dynamic())
    }

    /// Hilbert tensor norm: the Euclidean norm of the coefficients.
    pub fn hil_norm(&self) -> f64 {
        self.coeffs.norm()
    }

    /// Membership in the cone of finite sums `sum_i alpha_i* (x) alpha_i`.
    /// An array `M` lies in the cone exactly when `J M` is symmetric positive
    /// semidefinite, where `J` is the conjugation sign diagonal: a pure
    /// generator has `M = (J a) a^T`, so `J M = a a^T`, and sums of those are
    /// exactly the positive Gram matrices.
    pub fn in_positive_cone(&self, tol_scale: f64) -> bool {
        let m = conj_diag() * self.coeffs;
        let sym_gap = (m - m.transpose()).norm();
        if sym_gap > tol_scale.sqrt() * (1.0 + m.norm()) {
            return false;
        }
        linalg::is_psd(&linalg::to_dynamic(&m), tol_scale)
    }

    pub fn to_dynamic(&self) -> DMatrix<f64> {
        linalg::to_dynamic(&self.coeffs)
    }

    pub fn norm_of_difference(&self, other: &HTensor) -> f64 {
        (self.coeffs - other.coeffs).norm()
    }
}

impl Add for HTensor {
    type Output = HTensor;
    fn add(self, rhs: HTensor) -> HTensor {
        HTensor { coeffs: self.coeffs + rhs.coeffs }
    }
}

impl Sub for HTensor {
    type Output = HTensor;
    fn sub(self, rhs: HTensor) -> HTensor {
        HTensor { coeffs: self.coeffs - rhs.coeffs }
    }
}

impl Mul<f64> for HTensor {
    type Output = HTensor;
    fn mul(self, s: f64) -> HTensor {
        HTensor { coeffs: self.coeffs * s }
    }
}

/// Matrix of the multiplication map `H (x) H -> H` on coefficient vectors
/// laid out as `4 g + h`.
pub fn multiplication_matrix() -> SMatrix<f64, 4, 16> {
    let mut m = SMatrix::<f64, 4, 16>::zeros();
    for g in Basis::ALL {
        for h in Basis::ALL {
            let prod = (g.quaternion() * h.quaternion()).to_array();
            for (r, v) in prod.iter().enumerate() {
                m[(r, 4 * g.index() + h.index())] = *v;
            }
        }
    }
    m
}

//! Quaternion arithmetic, the regular matrix representation in `M4(R)`,
//! the self-duality `H* = H`, and embeddings of `C` into `H`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector4};

use crate::error::Error;

/// A quaternion `a + bi + cj + dk` with real coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { a: 0.0, b: 0.0, c: 0.0, d: 0.0 };
    pub const ONE: Quaternion = Quaternion { a: 1.0, b: 0.0, c: 0.0, d: 0.0 };
    pub const I: Quaternion = Quaternion { a: 0.0, b: 1.0, c: 0.0, d: 0.0 };
    pub const J: Quaternion = Quaternion { a: 0.0, b: 0.0, c: 1.0, d: 0.0 };
    pub const K: Quaternion = Quaternion { a: 0.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn real(a: f64) -> Self {
        Quaternion { a, ..Quaternion::ZERO }
    }

    /// Conjugation `(a + bi + cj + dk)* = a - bi - cj - dk`.
    pub fn conj(self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    /// Euclidean norm `sqrt(a^2 + b^2 + c^2 + d^2)`; multiplicative.
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Scalar (real) part.
    pub fn re(self) -> f64 {
        self.a
    }

    /// Multiplicative inverse `q* / |q|^2`; errors on zero.
    pub fn inv(self) -> Result<Self, Error> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::ZeroDivision);
        }
        Ok(self.conj() * (1.0 / n))
    }

    /// Coordinates against the basis `{1, i, j, k}`.
    pub fn coords(self) -> Vector4<f64> {
        Vector4::new(self.a, self.b, self.c, self.d)
    }

    pub fn from_coords(v: &Vector4<f64>) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The regular representation of `H` in `M4(R)`: a unital injective
    /// algebra homomorphism with `to_m4(q)^T = to_m4(q*)` and operator
    /// norm equal to `|q|`.
    pub fn to_m4(self) -> Matrix4<f64> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        Matrix4::new(
            a, b, c, d, //
            -b, a, -d, c, //
            -c, d, a, -b, //
            -d, -c, b, a,
        )
    }

    /// Matrix of left multiplication `x -> q x` on coordinates.
    pub fn left_mul_matrix(self) -> Matrix4<f64> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        Matrix4::new(
            a, -b, -c, -d, //
            b, a, -d, c, //
            c, d, a, -b, //
            d, -c, b, a,
        )
    }

    /// Matrix of right multiplication `x -> x q` on coordinates.
    pub fn right_mul_matrix(self) -> Matrix4<f64> {
        // Right multiplication is the transpose of the regular image.
        self.to_m4().transpose()
    }

    pub fn dot(self, other: Quaternion) -> f64 {
        self.a * other.a + self.b * other.b + self.c * other.c + self.d * other.d
    }

    pub fn is_unit_imaginary(self, tol: f64) -> bool {
        self.a.abs() <= tol && (self.norm() - 1.0).abs() <= tol
    }

    pub fn approx_eq(self, other: Quaternion, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.d + rhs.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (rhs.a, rhs.b, rhs.c, rhs.d);
        Quaternion::new(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |acc, q| acc + q)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+.6}{:+.6}i{:+.6}j{:+.6}k", self.a, self.b, self.c, self.d)
    }
}

/// One of the four basis quaternions `{1, i, j, k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    One,
    I,
    J,
    K,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::One, Basis::I, Basis::J, Basis::K];
    pub const IMAGINARY: [Basis; 3] = [Basis::I, Basis::J, Basis::K];

    pub fn index(self) -> usize {
        match self {
            Basis::One => 0,
            Basis::I => 1,
            Basis::J => 2,
            Basis::K => 3,
        }
    }

    pub fn from_index(idx: usize) -> Basis {
        Basis::ALL[idx]
    }

    pub fn quaternion(self) -> Quaternion {
        match self {
            Basis::One => Quaternion::ONE,
            Basis::I => Quaternion::I,
            Basis::J => Quaternion::J,
            Basis::K => Quaternion::K,
        }
    }

    /// Sign of conjugation: `e* = conj_sign(e) * e`.
    pub fn conj_sign(self) -> f64 {
        if self == Basis::One {
            1.0
        } else {
            -1.0
        }
    }

    /// Conjugate as a quaternion.
    pub fn conj(self) -> Quaternion {
        self.quaternion() * self.conj_sign()
    }
}

/// An element of the dual space `H*`, written against the dual basis
/// of `{1, i, j, k}`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct DualFunctional {
    pub coefficients: [f64; 4],
}

impl DualFunctional {
    pub fn evaluate(&self, q: Quaternion) -> f64 {
        let c = self.coefficients;
        c[0] * q.a + c[1] * q.b + c[2] * q.c + c[3] * q.d
    }

    /// Dual norm over the Euclidean unit ball; equals the Euclidean norm
    /// of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Which side a scalar acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The isometry `q -> q_hat` from `H` onto `H*`.
pub fn hat(q: Quaternion) -> DualFunctional {
    DualFunctional { coefficients: q.to_array() }
}

/// Module action on dual functionals: `(beta . f)(x) = f(x beta)` for the
/// left action and `(f . beta)(x) = f(beta x)` for the right action.
pub fn hat_action(beta: Quaternion, f: &DualFunctional, side: Side) -> DualFunctional {
    let lam = Vector4::from_column_slice(&f.coefficients);
    let out = match side {
        Side::Left => beta.right_mul_matrix().transpose() * lam,
        Side::Right => beta.left_mul_matrix().transpose() * lam,
    };
    DualFunctional { coefficients: [out[0], out[1], out[2], out[3]] }
}

/// An isometric algebra embedding of `C` into `H` sending the complex unit
/// to a fixed unit imaginary quaternion.
#[derive(Clone, Copy, Debug)]
pub struct ComplexEmbedding {
    alpha: Quaternion,
}

impl ComplexEmbedding {
    /// Requires `alpha` purely imaginary with unit norm, so `alpha^2 = -1`.
    pub fn new(alpha: Quaternion) -> Result<Self, Error> {
        if !alpha.is_unit_imaginary(1e-12) {
            return Err(Error::InvalidGenerator {
                real_part: alpha.re(),
                norm: alpha.norm(),
            });
        }
        Ok(ComplexEmbedding { alpha })
    }

    pub fn alpha(&self) -> Quaternion {
        self.alpha
    }

    /// Image of `re + im * i` in `R + alpha R`.
    pub fn embed(&self, re: f64, im: f64) -> Quaternion {
        Quaternion::real(re) + self.alpha * im
    }
}

//! Seeded random generators for vectors, quaternions, bimodules, forms,
//! Gram matrices, and maps. Used by the verification suites and tests;
//! every consumer passes its own seeded RNG so runs are reproducible.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bimodule::{Bimodule, BimoduleMap};
use crate::hilbert::{HilbertBimodule, RightModule};
use crate::normed::HilbertForm;
use crate::quat::Quaternion;

/// Independent RNG for one trial of a suite, derived from the suite seed.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    // SplitMix64 finalizer keeps per-trial streams decorrelated.
    let mut z = seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

pub fn vector<R: Rng>(rng: &mut R, dim: usize) -> DVector<f64> {
    DVector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0))
}

pub fn nonzero_vector<R: Rng>(rng: &mut R, dim: usize) -> DVector<f64> {
    loop {
        let v = vector(rng, dim);
        if v.norm() > 0.1 {
            return v;
        }
    }
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

pub fn quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

pub fn nonzero_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let q = quaternion(rng);
        if q.norm() > 0.1 {
            return q;
        }
    }
}

pub fn unit_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    let q = nonzero_quaternion(rng);
    q * (1.0 / q.norm())
}

pub fn unit_imaginary<R: Rng>(rng: &mut R) -> Quaternion {
    loop {
        let q = Quaternion::new(
            0.0,
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if q.norm() > 0.1 {
            return q * (1.0 / q.norm());
        }
    }
}

/// Random orthogonal matrix from the QR factorization of a Gaussian-ish
/// square matrix.
pub fn orthogonal<R: Rng>(rng: &mut R, dim: usize) -> DMatrix<f64> {
    let m = matrix(rng, dim, dim);
    let qr = m.qr();
    qr.q()
}

/// Random invertible matrix with singular values in `[0.6, 1.6]`.
pub fn well_conditioned<R: Rng>(rng: &mut R, dim: usize) -> DMatrix<f64> {
    let q1 = orthogonal(rng, dim);
    let q2 = orthogonal(rng, dim);
    let d = DMatrix::from_diagonal(&DVector::from_fn(dim, |_, _| rng.gen_range(0.6..1.6)));
    q1 * d * q2
}

pub fn spd<R: Rng>(rng: &mut R, dim: usize) -> DMatrix<f64> {
    let a = well_conditioned(rng, dim);
    a.transpose() * a
}

/// A random valid bimodule of real dimension `4n`, built by conjugating the
/// standard model with a well-conditioned change of basis.
pub fn bimodule<R: Rng>(rng: &mut R, n: usize) -> Bimodule {
    let std = Bimodule::quaternionize(n).expect("n >= 1");
    let s = well_conditioned(rng, 4 * n);
    let s_inv = s.clone().try_inverse().expect("well conditioned");
    let conj = |m: DMatrix<f64>| &s * m * &s_inv;
    Bimodule::new(
        4 * n,
        conj(std.left_basis(crate::quat::Basis::I)),
        conj(std.left_basis(crate::quat::Basis::J)),
        conj(std.right_basis(crate::quat::Basis::I)),
        conj(std.right_basis(crate::quat::Basis::J)),
    )
    .expect("conjugated bimodule is valid")
}

/// A compatible Hilbertian form on `module`, built by averaging a random
/// positive form over the finite group generated by the basis actions.
pub fn compatible_form<R: Rng>(rng: &mut R, module: &Bimodule) -> HilbertForm {
    let w0 = spd(rng, module.dim());
    HilbertForm::averaged(module, &w0).expect("averaged form is compatible")
}

pub fn hilbert_bimodule<R: Rng>(rng: &mut R, n: usize) -> HilbertBimodule {
    let module = bimodule(rng, n);
    let form = compatible_form(rng, &module);
    HilbertBimodule::new(module, form).expect("compatible by construction")
}

/// A random positive-definite quaternion Gram matrix `B* B + I`.
pub fn gram<R: Rng>(rng: &mut R, n: usize) -> Vec<Quaternion> {
    let b: Vec<Quaternion> = (0..n * n).map(|_| quaternion(rng)).collect();
    let mut g = vec![Quaternion::ZERO; n * n];
    for p in 0..n {
        for q in 0..n {
            let mut s = if p == q { Quaternion::ONE } else { Quaternion::ZERO };
            for r in 0..n {
                s = s + b[r * n + p].conj() * b[r * n + q];
            }
            g[p * n + q] = s;
        }
    }
    g
}

pub fn right_module<R: Rng>(rng: &mut R, n: usize) -> RightModule {
    RightModule::new(n, gram(rng, n)).expect("B*B + I is positive definite")
}

/// A random bimodule map between two modules, extended from a random map of
/// the real parts.
pub fn intertwiner<R: Rng>(rng: &mut R, domain: &Bimodule, codomain: &Bimodule) -> BimoduleMap {
    let s = matrix(rng, codomain.core_dim(), domain.core_dim());
    BimoduleMap::from_core(domain, codomain, &s).expect("core extension intertwines")
}

//! Finite-dimensional bimodules over the quaternions: commuting unital
//! left/right scalar actions on a real vector space, the real-part
//! projection, the polarization decomposition, and the equivalence with
//! the standard model `R^n (x) H`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::quat::{Basis, Quaternion};

/// Relative singular-value threshold for real-part extraction.
const KERNEL_REL_TOL: f64 = 1e-9;

/// A real vector space with commuting unital left and right actions of `H`,
/// presented by the action matrices of the generators `i` and `j`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    dim: usize,
    /// Left action of i, j, k.
    left: [DMatrix<f64>; 3],
    /// Right action of i, j, k.
    right: [DMatrix<f64>; 3],
    /// Matrix of the real-part projection.
    re_mat: DMatrix<f64>,
    /// Orthonormal basis of the real part, dim x (dim/4).
    core: DMatrix<f64>,
}

impl Bimodule {
    /// Validates the presentation and precomputes the real part. The left
    /// action must be a homomorphism, the right action an anti-homomorphism,
    /// the two must commute, and the real part must have dimension `dim/4`.
    pub fn new(
        dim: usize,
        left_i: DMatrix<f64>,
        left_j: DMatrix<f64>,
        right_i: DMatrix<f64>,
        right_j: DMatrix<f64>,
    ) -> Result<Self> {
        if dim == 0 || dim % 4 != 0 {
            return Err(Error::InvalidBimodule(format!(
                "dimension {dim} is not a positive multiple of 4"
            )));
        }
        for (name, m) in [
            ("left_i", &left_i),
            ("left_j", &left_j),
            ("right_i", &right_i),
            ("right_j", &right_j),
        ] {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::InvalidBimodule(format!(
                    "{name} is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        let id = DMatrix::<f64>::identity(dim, dim);
        let tol = 1e-8;
        let check = |name: &str, m: &DMatrix<f64>| -> Result<()> {
            let r = linalg::operator_norm(m);
            if r > tol {
                Err(Error::InvalidBimodule(format!("{name} fails (residual {r:.3e})")))
            } else {
                Ok(())
            }
        };
        check("left i^2 = -1", &(&left_i * &left_i + &id))?;
        check("left j^2 = -1", &(&left_j * &left_j + &id))?;
        check("left ij = -ji", &(&left_i * &left_j + &left_j * &left_i))?;
        check("right i^2 = -1", &(&right_i * &right_i + &id))?;
        check("right j^2 = -1", &(&right_j * &right_j + &id))?;
        check("right ij = -ji", &(&right_i * &right_j + &right_j * &right_i))?;
        for (l, r) in [
            (&left_i, &right_i),
            (&left_i, &right_j),
            (&left_j, &right_i),
            (&left_j, &right_j),
        ] {
            check("left/right actions commute", &(l * r - r * l))?;
        }

        let left_k = &left_i * &left_j;
        // The right action reverses products, so k = ij acts as R(j) R(i).
        let right_k = &right_j * &right_i;
        let left = [left_i, left_j, left_k];
        let right = [right_i, right_j, right_k];

        let mut re_mat = id.clone();
        for t in 0..3 {
            re_mat -= &left[t] * &right[t];
        }
        re_mat *= 0.25;

        let mut stacked = DMatrix::<f64>::zeros(3 * dim, dim);
        for t in 0..3 {
            stacked.rows_mut(t * dim, dim).copy_from(&(&left[t] - &right[t]));
        }
        let core = linalg::kernel_basis(&stacked, KERNEL_REL_TOL);
        if core.ncols() != dim / 4 {
            return Err(Error::InvalidBimodule(format!(
                "real part has dimension {}, expected {}",
                core.ncols(),
                dim / 4
            )));
        }

        Ok(Bimodule { dim, left, right, re_mat, core })
    }

    /// The standard bimodule `R^n (x) H` with coordinatewise actions.
    /// Coordinates are laid out in blocks of four per real basis vector.
    pub fn quaternionize(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBimodule("quaternionize(0) is empty".into()));
        }
        let li = linalg::kron_identity_block(n, &Quaternion::I.left_mul_matrix());
        let lj = linalg::kron_identity_block(n, &Quaternion::J.left_mul_matrix());
        let ri = linalg::kron_identity_block(n, &Quaternion::I.right_mul_matrix());
        let rj = linalg::kron_identity_block(n, &Quaternion::J.right_mul_matrix());
        Bimodule::new(4 * n, li, lj, ri, rj)
    }

    /// `H (x) H` with both scalars acting on the second factor:
    /// `alpha (a (x) b) beta = a (x) alpha b beta`.
    /// Basis element `e_g (x) e_h` has coordinate index `4 g + h`.
    pub fn htensor_right() -> Self {
        let i4 = DMatrix::<f64>::identity(4, 4);
        let li = linalg::kron(&i4, &linalg::to_dynamic(&Quaternion::I.left_mul_matrix()));
        let lj = linalg::kron(&i4, &linalg::to_dynamic(&Quaternion::J.left_mul_matrix()));
        let ri = linalg::kron(&i4, &linalg::to_dynamic(&Quaternion::I.right_mul_matrix()));
        let rj = linalg::kron(&i4, &linalg::to_dynamic(&Quaternion::J.right_mul_matrix()));
        Bimodule::new(16, li, lj, ri, rj).expect("valid by construction")
    }

    /// `H (x) H` with the scalars split across the factors:
    /// `alpha (a (x) b) beta = alpha a (x) b beta`.
    pub fn htensor_split() -> Self {
        let i4 = DMatrix::<f64>::identity(4, 4);
        let li = linalg::kron(&linalg::to_dynamic(&Quaternion::I.left_mul_matrix()), &i4);
        let lj = linalg::kron(&linalg::to_dynamic(&Quaternion::J.left_mul_matrix()), &i4);
        let ri = linalg::kron(&i4, &linalg::to_dynamic(&Quaternion::I.right_mul_matrix()));
        let rj = linalg::kron(&i4, &linalg::to_dynamic(&Quaternion::J.right_mul_matrix()));
        Bimodule::new(16, li, lj, ri, rj).expect("valid by construction")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the real part, always `dim / 4`.
    pub fn core_dim(&self) -> usize {
        self.dim / 4
    }

    /// Matrix of the left action of a basis quaternion.
    pub fn left_basis(&self, e: Basis) -> DMatrix<f64> {
        match e {
            Basis::One => DMatrix::identity(self.dim, self.dim),
            Basis::I => self.left[0].clone(),
            Basis::J => self.left[1].clone(),
            Basis::K => self.left[2].clone(),
        }
    }

    pub fn right_basis(&self, e: Basis) -> DMatrix<f64> {
        match e {
            Basis::One => DMatrix::identity(self.dim, self.dim),
            Basis::I => self.right[0].clone(),
            Basis::J => self.right[1].clone(),
            Basis::K => self.right[2].clone(),
        }
    }

    /// Matrix of the left action of an arbitrary quaternion.
    pub fn left(&self, q: Quaternion) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.dim, self.dim) * q.a;
        m += &self.left[0] * q.b;
        m += &self.left[1] * q.c;
        m += &self.left[2] * q.d;
        m
    }

    pub fn right(&self, q: Quaternion) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.dim, self.dim) * q.a;
        m += &self.right[0] * q.b;
        m += &self.right[1] * q.c;
        m += &self.right[2] * q.d;
        m
    }

    pub fn left_mul(&self, q: Quaternion, x: &DVector<f64>) -> DVector<f64> {
        self.left(q) * x
    }

    pub fn right_mul(&self, x: &DVector<f64>, q: Quaternion) -> DVector<f64> {
        self.right(q) * x
    }

    /// Matrix of the projection `x -> (1/4) sum_e e* x e` onto the real part.
    pub fn re_matrix(&self) -> &DMatrix<f64> {
        &self.re_mat
    }

    pub fn re_project(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.re_mat * x
    }

    /// Orthonormal basis of the real part, as columns.
    pub fn real_part_basis(&self) -> &DMatrix<f64> {
        &self.core
    }

    pub fn in_real_part(&self, x: &DVector<f64>, tol: f64) -> bool {
        (self.re_project(x) - x).norm() <= tol * (1.0 + x.norm())
    }

    /// The four real-part components `x_e = Re(e* x)`, ordered `1, i, j, k`.
    pub fn polarize(&self, x: &DVector<f64>) -> [DVector<f64>; 4] {
        Basis::ALL.map(|e| {
            if e == Basis::One {
                self.re_project(x)
            } else {
                // e* = -e for imaginary basis elements.
                self.re_project(&-(self.left_basis(e) * x))
            }
        })
    }

    /// Reassembles `sum_e x_e e` from real-part components.
    pub fn reassemble(&self, components: &[DVector<f64>; 4]) -> DVector<f64> {
        let mut x = components[0].clone();
        for (t, e) in Basis::IMAGINARY.iter().enumerate() {
            let _ = e;
            x += &self.right[t] * &components[t + 1];
        }
        x
    }

    /// Coordinates of a real-part vector against `real_part_basis`.
    pub fn core_coords(&self, x: &DVector<f64>) -> DVector<f64> {
        self.core.transpose() * x
    }

    /// The canonical bimodule isomorphism onto `quaternionize(dim/4)` that
    /// sends a vector to its polarization coordinates against the real-part
    /// basis.
    pub fn structure_iso(&self) -> BimoduleMap {
        let m = self.core_dim();
        let target = Bimodule::quaternionize(m).expect("core_dim >= 1");
        let mut matrix = DMatrix::<f64>::zeros(4 * m, self.dim);
        for e in Basis::ALL {
            let comp = if e == Basis::One {
                self.core.transpose() * &self.re_mat
            } else {
                self.core.transpose() * &self.re_mat * (self.left_basis(e) * -1.0)
            };
            for p in 0..m {
                for c in 0..self.dim {
                    matrix[(4 * p + e.index(), c)] = comp[(p, c)];
                }
            }
        }
        BimoduleMap::new(self.clone(), target, matrix).expect("polarization intertwines")
    }

    /// The subspace of vectors commuting with a fixed unit imaginary
    /// quaternion, which carries a complex structure.
    pub fn complexify(&self, alpha: Quaternion) -> Result<ComplexSlice> {
        if !alpha.is_unit_imaginary(1e-12) {
            return Err(Error::InvalidGenerator {
                real_part: alpha.re(),
                norm: alpha.norm(),
            });
        }
        let gap = self.left(alpha) - self.right(alpha);
        let basis = linalg::kernel_basis(&gap, KERNEL_REL_TOL);
        let expected = 2 * self.core_dim();
        if basis.ncols() != expected {
            return Err(Error::InvalidBimodule(format!(
                "complex slice has dimension {}, expected {expected}",
                basis.ncols()
            )));
        }
        let structure = basis.transpose() * self.left(alpha) * &basis;
        Ok(ComplexSlice { alpha, basis, structure })
    }
}

/// A real-linear map between bimodules intertwining both scalar actions.
#[derive(Clone, Debug)]
pub struct BimoduleMap {
    pub domain: Bimodule,
    pub codomain: Bimodule,
    pub matrix: DMatrix<f64>,
}

/// Largest deviation of `m` from intertwining the generator actions.
pub fn intertwining_residual(
    domain: &Bimodule,
    codomain: &Bimodule,
    m: &DMatrix<f64>,
) -> f64 {
    let mut worst = 0.0_f64;
    for e in [Basis::I, Basis::J] {
        let l = m * domain.left_basis(e) - codomain.left_basis(e) * m;
        let r = m * domain.right_basis(e) - codomain.right_basis(e) * m;
        worst = worst.max(linalg::operator_norm(&l));
        worst = worst.max(linalg::operator_norm(&r));
    }
    worst
}

impl BimoduleMap {
    /// Wraps a matrix as a bimodule map; rejects matrices that fail to
    /// intertwine the actions.
    pub fn new(domain: Bimodule, codomain: Bimodule, matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != codomain.dim() || matrix.ncols() != domain.dim() {
            return Err(Error::InvalidInput(format!(
                "map is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        let residual = intertwining_residual(&domain, &codomain, &matrix);
        let scale = 1.0 + linalg::operator_norm(&matrix);
        if residual > 1e-10 * scale {
            return Err(Error::NotIntertwining { residual });
        }
        Ok(BimoduleMap { domain, codomain, matrix })
    }

    pub fn identity(module: &Bimodule) -> Self {
        let id = DMatrix::identity(module.dim(), module.dim());
        BimoduleMap { domain: module.clone(), codomain: module.clone(), matrix: id }
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.matrix * x
    }

    pub fn intertwining_residual(&self) -> f64 {
        intertwining_residual(&self.domain, &self.codomain, &self.matrix)
    }

    pub fn compose(&self, inner: &BimoduleMap) -> BimoduleMap {
        BimoduleMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &inner.matrix,
        }
    }

    pub fn inverse(&self) -> Result<BimoduleMap> {
        let inv = self.matrix.clone().try_inverse().ok_or(Error::NotInvertible)?;
        Ok(BimoduleMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: inv,
        })
    }

    /// Restriction to the real parts, as a matrix in the real-part bases.
    /// Together with `from_core` this realizes the bijection between
    /// bimodule maps and real-linear maps of the real parts.
    pub fn restrict_to_core(&self) -> DMatrix<f64> {
        self.codomain.real_part_basis().transpose() * &self.matrix * self.domain.real_part_basis()
    }

    /// Extends a real-linear map of the real parts to the full bimodule map
    /// acting as the identity on the scalar leg.
    pub fn from_core(domain: &Bimodule, codomain: &Bimodule, s: &DMatrix<f64>) -> Result<Self> {
        if s.nrows() != codomain.core_dim() || s.ncols() != domain.core_dim() {
            return Err(Error::InvalidInput(format!(
                "core map is {}x{}, expected {}x{}",
                s.nrows(),
                s.ncols(),
                codomain.core_dim(),
                domain.core_dim()
            )));
        }
        let u = domain.real_part_basis();
        let v = codomain.real_part_basis();
        let mut matrix = DMatrix::<f64>::zeros(codomain.dim(), domain.dim());
        for e in Basis::ALL {
            let dom_comp = if e == Basis::One {
                u.transpose() * domain.re_matrix()
            } else {
                u.transpose() * domain.re_matrix() * (domain.left_basis(e) * -1.0)
            };
            matrix += codomain.right_basis(e) * v * s * dom_comp;
        }
        BimoduleMap::new(domain.clone(), codomain.clone(), matrix)
    }
}

/// A complex slice `{x : alpha x = x alpha}` of a bimodule, with the complex
/// structure given by the action of `alpha`.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub alpha: Quaternion,
    /// Orthonormal basis of the slice, dim x (dim/2).
    pub basis: DMatrix<f64>,
    /// Action of `alpha` in slice coordinates; squares to minus identity.
    pub structure: DMatrix<f64>,
}

impl ComplexSlice {
    pub fn real_dim(&self) -> usize {
        self.basis.ncols()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    /// Coordinate vector of `a (x) b` in the tensor-square layout.
    fn tensor_vec(a: Quaternion, b: Quaternion) -> DVector<f64> {
        let mut v = DVector::zeros(16);
        let (av, bv) = (a.to_array(), b.to_array());
        for g in 0..4 {
            for h in 0..4 {
                v[4 * g + h] = av[g] * bv[h];
            }
        }
        v
    }

    #[test]
    fn quaternionize_shapes() {
        let x = Bimodule::quaternionize(3).unwrap();
        assert_eq!(x.dim(), 12);
        assert_eq!(x.core_dim(), 3);
        assert_eq!(x.real_part_basis().ncols(), 3);
        assert!(Bimodule::quaternionize(0).is_err());
    }

    #[test]
    fn quaternionize_one_is_h() {
        let h = Bimodule::quaternionize(1).unwrap();
        // The real part of H is R . 1.
        let one = DVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0]);
        assert!(h.in_real_part(&one, TOL));
        assert_eq!(h.core_dim(), 1);
    }

    #[test]
    fn tensor_square_fixtures_validate() {
        let r = Bimodule::htensor_right();
        let s = Bimodule::htensor_split();
        assert_eq!(r.dim(), 16);
        assert_eq!(s.dim(), 16);
        assert_eq!(r.core_dim(), 4);
        assert_eq!(s.core_dim(), 4);
    }

    #[test]
    fn htensor_right_action_and_real_part() {
        let x = Bimodule::htensor_right();
        let one_one = tensor_vec(Quaternion::ONE, Quaternion::ONE);
        // i (1 (x) 1) = 1 (x) i when both scalars act on the second factor.
        let moved = x.left_mul(Quaternion::I, &one_one);
        assert!((moved - tensor_vec(Quaternion::ONE, Quaternion::I)).norm() < TOL);
        // 1 (x) 1 commutes with every scalar, so it lies in the real part.
        assert!(x.in_real_part(&one_one, TOL));
    }

    #[test]
    fn htensor_split_is_generated_by_one_tensor_one() {
        let x = Bimodule::htensor_split();
        let gen = tensor_vec(Quaternion::ONE, Quaternion::ONE);
        // alpha (1 (x) 1) beta = alpha (x) beta spans all of H (x) H.
        let mut cols = Vec::new();
        for g in Basis::ALL {
            for h in Basis::ALL {
                let v = x.right_mul(&x.left_mul(g.quaternion(), &gen), h.quaternion());
                cols.push(v);
            }
        }
        let span = linalg::from_columns(16, &cols);
        assert_eq!(linalg::rank(&span, 1e-9), 16);
        // But 1 (x) 1 is not central for the split action.
        assert!(!x.in_real_part(&gen, 1e-6));
        // Its real part is spanned by the elements sum_g e_g (x) (sigma e_g*).
        let z1: DVector<f64> = tensor_vec(Quaternion::ONE, Quaternion::ONE)
            - tensor_vec(Quaternion::I, Quaternion::I)
            - tensor_vec(Quaternion::J, Quaternion::J)
            - tensor_vec(Quaternion::K, Quaternion::K);
        assert!(x.in_real_part(&z1, TOL));
    }

    #[test]
    fn re_project_standard_module() {
        // x = v (x) (2 + 3i) has real part 2 (v (x) 1), by expanding the sum
        // (1/4) sum_e e* x e termwise with quaternion arithmetic.
        let x = Bimodule::quaternionize(2).unwrap();
        let v = [1.5, -0.25];
        let mut coords = DVector::zeros(8);
        for (p, vp) in v.iter().enumerate() {
            coords[4 * p] = 2.0 * vp;
            coords[4 * p + 1] = 3.0 * vp;
        }
        let mut oracle = DVector::zeros(8);
        for (p, vp) in v.iter().enumerate() {
            let q = Quaternion::new(2.0 * vp, 3.0 * vp, 0.0, 0.0);
            let re: Quaternion = Basis::ALL
                .iter()
                .map(|e| (e.conj() * q * e.quaternion()) * 0.25)
                .sum();
            let arr = re.to_array();
            for g in 0..4 {
                oracle[4 * p + g] = arr[g];
            }
        }
        let got = x.re_project(&coords);
        assert!((&got - &oracle).norm() < TOL);
        let mut expected = DVector::zeros(8);
        expected[0] = 2.0 * v[0];
        expected[4] = 2.0 * v[1];
        assert!((got - expected).norm() < TOL);
    }

    #[test]
    fn re_project_fixes_real_part_and_kills_imaginary_tensor() {
        let x = Bimodule::htensor_right();
        let in_core = tensor_vec(Quaternion::J, Quaternion::ONE);
        assert!((x.re_project(&in_core) - in_core).norm() < TOL);
        // 1 (x) i averages to zero: (1/4)(i + i - i - i) on the second leg.
        let killed = x.re_project(&tensor_vec(Quaternion::ONE, Quaternion::I));
        assert!(killed.norm() < TOL);
    }

    #[test]
    fn polarize_standard_vector() {
        let x = Bimodule::quaternionize(2).unwrap();
        let v = [0.5, -2.0];
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let mut coords = DVector::zeros(8);
        for (p, vp) in v.iter().enumerate() {
            for (g, qg) in q.to_array().iter().enumerate() {
                coords[4 * p + g] = vp * qg;
            }
        }
        let comps = x.polarize(&coords);
        for (t, scale) in [1.0, 2.0, 3.0, 4.0].iter().enumerate() {
            let mut expected = DVector::zeros(8);
            expected[0] = v[0] * scale;
            expected[4] = v[1] * scale;
            assert!((&comps[t] - expected).norm() < TOL, "component {t}");
        }
        assert!((x.reassemble(&comps) - coords).norm() < TOL);
    }

    #[test]
    fn polarize_real_part_vector() {
        let x = Bimodule::quaternionize(3).unwrap();
        let mut v = DVector::zeros(12);
        v[0] = 1.0;
        v[4] = -2.0;
        let comps = x.polarize(&v);
        assert!((&comps[0] - &v).norm() < TOL);
        for c in &comps[1..] {
            assert!(c.norm() < TOL);
        }
    }

    #[test]
    fn polarization_reassembly_on_all_fixtures() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for x in [
            Bimodule::quaternionize(1).unwrap(),
            Bimodule::quaternionize(2).unwrap(),
            Bimodule::htensor_right(),
            Bimodule::htensor_split(),
        ] {
            for _ in 0..100 {
                let v = sample::vector(&mut rng, x.dim());
                let comps = x.polarize(&v);
                for c in &comps {
                    assert!(x.in_real_part(c, 1e-10));
                }
                assert!((x.reassemble(&comps) - &v).norm() < 1e-12 * (1.0 + v.norm()));
            }
        }
    }

    #[test]
    fn re_is_idempotent_and_two_sided() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = Bimodule::htensor_split();
        for _ in 0..50 {
            let v = sample::vector(&mut rng, 16);
            let q = sample::quaternion(&mut rng);
            let once = x.re_project(&v);
            assert!((x.re_project(&once) - &once).norm() < 1e-12);
            let lhs = x.re_project(&x.left_mul(q, &v));
            let rhs = x.re_project(&x.right_mul(&v, q));
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn structure_iso_on_standard_is_orthogonal() {
        let x = Bimodule::quaternionize(2).unwrap();
        let iso = x.structure_iso();
        assert!(iso.intertwining_residual() < 1e-12);
        let gram = iso.matrix.transpose() * &iso.matrix;
        assert!(linalg::operator_norm(&(gram - DMatrix::identity(8, 8))) < 1e-10);
    }

    #[test]
    fn structure_iso_tensor_square() {
        for x in [Bimodule::htensor_right(), Bimodule::htensor_split()] {
            let iso = x.structure_iso();
            assert!(iso.intertwining_residual() < 1e-10);
            assert!(iso.inverse().is_ok());
        }
    }

    #[test]
    fn tensor_square_structures_are_isomorphic() {
        // Composing the two structure isomorphisms through the standard
        // model exhibits the isomorphism between the two exotic structures.
        let r = Bimodule::htensor_right();
        let s = Bimodule::htensor_split();
        let into_std = r.structure_iso();
        let back = s.structure_iso().inverse().unwrap();
        let iso = back.compose(&into_std);
        assert!(iso.intertwining_residual() < 1e-10);
        assert!(iso.matrix.clone().try_inverse().is_some());
        let roundtrip = BimoduleMap::new(r.clone(), s.clone(), iso.matrix.clone());
        assert!(roundtrip.is_ok());
    }

    #[test]
    fn core_map_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = Bimodule::quaternionize(2).unwrap();
        let y = Bimodule::htensor_right();
        let s = sample::matrix(&mut rng, 4, 2);
        let t = BimoduleMap::from_core(&x, &y, &s).unwrap();
        let back = t.restrict_to_core();
        assert!(linalg::operator_norm(&(back - s)) < 1e-10);
        // Identity extends to the identity.
        let id = BimoduleMap::from_core(&x, &x, &DMatrix::identity(2, 2)).unwrap();
        assert!(linalg::operator_norm(&(&id.matrix - DMatrix::identity(8, 8))) < 1e-10);
    }

    #[test]
    fn zero_core_restriction_forces_zero_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let x = sample::bimodule(&mut rng, 2);
        let t = BimoduleMap::from_core(&x, &x, &DMatrix::zeros(2, 2)).unwrap();
        assert!(linalg::operator_norm(&t.matrix) < 1e-10);
    }

    #[test]
    fn non_intertwining_map_rejected() {
        let x = Bimodule::quaternionize(1).unwrap();
        let mut m = DMatrix::<f64>::identity(4, 4);
        m[(0, 1)] = 0.5;
        match BimoduleMap::new(x.clone(), x, m) {
            Err(Error::NotIntertwining { residual }) => assert!(residual > 1e-3),
            other => panic!("expected intertwining failure, got {other:?}"),
        }
    }

    #[test]
    fn complexify_h_with_i() {
        let h = Bimodule::quaternionize(1).unwrap();
        let slice = h.complexify(Quaternion::I).unwrap();
        assert_eq!(slice.real_dim(), 2);
        // The slice is spanned by 1 and i.
        for v in [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]] {
            let x = DVector::from_column_slice(&v);
            let proj = &slice.basis * (slice.basis.transpose() * &x);
            assert!((proj - x).norm() < 1e-10);
        }
        let sq = &slice.structure * &slice.structure;
        assert!(linalg::operator_norm(&(sq + DMatrix::identity(2, 2))) < 1e-10);
    }

    #[test]
    fn complexify_equals_core_plus_alpha_core() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = sample::bimodule(&mut rng, 3);
        let alpha = sample::unit_imaginary(&mut rng);
        let slice = x.complexify(alpha).unwrap();
        assert_eq!(slice.real_dim(), 2 * x.core_dim());
        // Double inclusion: X_Re and alpha X_Re land in the slice, and the
        // dimensions match.
        let u = x.real_part_basis().clone();
        let au = x.left(alpha) * &u;
        let gap = x.left(alpha) - x.right(alpha);
        assert!(linalg::operator_norm(&(&gap * &u)) < 1e-9);
        assert!(linalg::operator_norm(&(&gap * &au)) < 1e-9);
        let mut span = DMatrix::zeros(x.dim(), 2 * x.core_dim());
        span.columns_mut(0, x.core_dim()).copy_from(&u);
        span.columns_mut(x.core_dim(), x.core_dim()).copy_from(&au);
        assert_eq!(linalg::rank(&span, 1e-9), 2 * x.core_dim());
    }

    #[test]
    fn complexify_rejects_bad_generator() {
        let x = Bimodule::quaternionize(1).unwrap();
        assert!(x.complexify(Quaternion::new(0.5, 1.0, 0.0, 0.0)).is_err());
    }
}

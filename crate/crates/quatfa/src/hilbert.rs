//! Quaternion Hilbert structure in three equivalent forms: right modules
//! with an `H`-valued inner product, Hilbert bimodules, and two-sided inner
//! products valued in `H (x) H`; plus the converters between them, the dual
//! space of maps into the tensor square, and the Riesz representation.

use nalgebra::{DMatrix, DVector};

use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::linalg;
use crate::normed::HilbertForm;
use crate::quat::{Basis, Quaternion};
use crate::tensor::{multiplication_matrix, HTensor};

/// A right `H`-module of finite rank presented by a quaternion Gram matrix.
/// The inner product is `<x, y> = sum_pq x_p* G_pq y_q`, right-linear in the
/// second slot.
#[derive(Clone, Debug)]
pub struct RightModule {
    rank: usize,
    /// Row-major rank x rank quaternion entries.
    gram: Vec<Quaternion>,
}

impl RightModule {
    /// Requires `G* = G` and a positive-semidefinite realification; rank
    /// deficiency is allowed here and surfaces in `gram_schmidt`.
    pub fn new(rank: usize, gram: Vec<Quaternion>) -> Result<Self> {
        if rank == 0 || gram.len() != rank * rank {
            return Err(Error::InvalidGram(format!(
                "expected {rank}x{rank} entries, got {}",
                gram.len()
            )));
        }
        let m = RightModule { rank, gram };
        for p in 0..rank {
            for q in 0..rank {
                let gap = (m.gram(p, q) - m.gram(q, p).conj()).norm();
                if gap > 1e-10 {
                    return Err(Error::InvalidGram(format!(
                        "not conjugate-symmetric at ({p},{q}), gap {gap:.3e}"
                    )));
                }
            }
        }
        let w = m.realified_form();
        if !linalg::is_psd(&w, 1e-10) {
            return Err(Error::InvalidGram("realified form is not positive".into()));
        }
        Ok(m)
    }

    pub fn standard(rank: usize) -> Self {
        let mut gram = vec![Quaternion::ZERO; rank * rank];
        for p in 0..rank {
            gram[p * rank + p] = Quaternion::ONE;
        }
        RightModule { rank, gram }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self, p: usize, q: usize) -> Quaternion {
        self.gram[p * self.rank + q]
    }

    pub fn gram_entries(&self) -> &[Quaternion] {
        &self.gram
    }

    pub fn inner(&self, x: &[Quaternion], y: &[Quaternion]) -> Quaternion {
        let mut s = Quaternion::ZERO;
        for p in 0..self.rank {
            for q in 0..self.rank {
                s = s + x[p].conj() * self.gram(p, q) * y[q];
            }
        }
        s
    }

    pub fn norm(&self, x: &[Quaternion]) -> f64 {
        self.inner(x, x).re().max(0.0).sqrt()
    }

    /// The real form on coordinates `R^{4 rank}`: block `(p, q)` is the left
    /// multiplication matrix of the Gram entry, because
    /// `Re(x* g y) = x . (g y)` on quaternion coordinates.
    pub fn realified_form(&self) -> DMatrix<f64> {
        let n = self.rank;
        let mut w = DMatrix::<f64>::zeros(4 * n, 4 * n);
        for p in 0..n {
            for q in 0..n {
                let block = self.gram(p, q).left_mul_matrix();
                for r in 0..4 {
                    for c in 0..4 {
                        w[(4 * p + r, 4 * q + c)] = block[(r, c)];
                    }
                }
            }
        }
        w
    }

    /// Orthonormal basis by pivoted modified Gram-Schmidt over the
    /// quaternions. Normalization divides on the right by the positive real
    /// `sqrt(<v, v>)`, matching right-linearity of the inner product.
    pub fn gram_schmidt(&self) -> Result<Vec<Vec<Quaternion>>> {
        let n = self.rank;
        let mut remaining: Vec<Vec<Quaternion>> = (0..n)
            .map(|p| {
                let mut v = vec![Quaternion::ZERO; n];
                v[p] = Quaternion::ONE;
                v
            })
            .collect();
        let scale = self
            .gram
            .iter()
            .map(|g| g.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        let mut basis: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
        for step in 0..n {
            let (pivot_idx, pivot) = remaining
                .iter()
                .enumerate()
                .map(|(idx, v)| (idx, self.norm(v)))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty remaining set");
            if pivot <= 1e-9 * scale.sqrt() {
                return Err(Error::RankDeficient { pivot, step });
            }
            let mut b = remaining.swap_remove(pivot_idx);
            let inv = 1.0 / pivot;
            for entry in &mut b {
                *entry = *entry * inv;
            }
            for v in &mut remaining {
                let c = self.inner(&b, v);
                for (ve, be) in v.iter_mut().zip(&b) {
                    *ve = *ve - *be * c;
                }
            }
            basis.push(b);
        }
        Ok(basis)
    }

    /// Installs the left multiplication carried through an orthonormal
    /// basis, producing a Hilbert bimodule on the original coordinates.
    pub fn induce_left(&self) -> Result<HilbertBimodule> {
        let n = self.rank;
        let basis = self.gram_schmidt()?;
        // Realified change of basis: coordinates of sum_k b_k lambda_k.
        let mut e = DMatrix::<f64>::zeros(4 * n, 4 * n);
        for (k, b) in basis.iter().enumerate() {
            for p in 0..n {
                let block = b[p].left_mul_matrix();
                for r in 0..4 {
                    for c in 0..4 {
                        e[(4 * p + r, 4 * k + c)] = block[(r, c)];
                    }
                }
            }
        }
        let e_inv = e.clone().try_inverse().ok_or(Error::NotInvertible)?;
        let left = |q: Quaternion| &e * linalg::kron_identity_block(n, &q.left_mul_matrix()) * &e_inv;
        let module = Bimodule::new(
            4 * n,
            left(Quaternion::I),
            left(Quaternion::J),
            linalg::kron_identity_block(n, &Quaternion::I.right_mul_matrix()),
            linalg::kron_identity_block(n, &Quaternion::J.right_mul_matrix()),
        )?;
        let form = HilbertForm::new(&module, self.realified_form())?;
        HilbertBimodule::new(module, form)
    }
}

/// Quaternion coordinates of a realified vector.
pub fn to_quaternion_coords(x: &DVector<f64>) -> Vec<Quaternion> {
    assert_eq!(x.len() % 4, 0);
    (0..x.len() / 4)
        .map(|p| Quaternion::new(x[4 * p], x[4 * p + 1], x[4 * p + 2], x[4 * p + 3]))
        .collect()
}

pub fn from_quaternion_coords(x: &[Quaternion]) -> DVector<f64> {
    let mut v = DVector::zeros(4 * x.len());
    for (p, q) in x.iter().enumerate() {
        let arr = q.to_array();
        for g in 0..4 {
            v[4 * p + g] = arr[g];
        }
    }
    v
}

/// A bimodule with a compatible Hilbertian form. The `H`-valued inner
/// product is recovered from the real form through the right action:
/// `<x, y> = sum_e (x e, y) e`.
#[derive(Clone, Debug)]
pub struct HilbertBimodule {
    pub module: Bimodule,
    pub form: HilbertForm,
}

impl HilbertBimodule {
    pub fn new(module: Bimodule, form: HilbertForm) -> Result<Self> {
        // Revalidate the pairing of module and form.
        let form = HilbertForm::new(&module, form.matrix().clone())?;
        Ok(HilbertBimodule { module, form })
    }

    pub fn standard(n: usize) -> Self {
        let module = Bimodule::quaternionize(n).expect("n >= 1");
        let form = HilbertForm::standard(&module);
        HilbertBimodule { module, form }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn h_inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> Quaternion {
        let mut out = Quaternion::ZERO;
        for e in Basis::ALL {
            let xe = self.module.right_basis(e) * x;
            out = out + e.quaternion() * self.form.inner(&xe, y);
        }
        out
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.form.norm(x)
    }

    /// The two-sided pairing into `H (x) H`, extending
    /// `<<y (x) a, z (x) b>> = <y, z> a* (x) b` over the real part.
    pub fn pairing(&self, x: &DVector<f64>, y: &DVector<f64>) -> HTensor {
        let xs = self.module.polarize(x);
        let ys = self.module.polarize(y);
        let mut coeffs = nalgebra::Matrix4::<f64>::zeros();
        for e in Basis::ALL {
            for f in Basis::ALL {
                let c = self.form.inner(&xs[e.index()], &ys[f.index()]);
                coeffs[(e.index(), f.index())] = e.conj_sign() * c;
            }
        }
        HTensor::new(coeffs)
    }

    /// A basis of the real part orthonormal for the form.
    pub fn core_orthonormal_basis(&self) -> DMatrix<f64> {
        let u = self.module.real_part_basis();
        let core = self.form.core_form(&self.module);
        let chol = nalgebra::Cholesky::new(core).expect("core form positive definite");
        let lt_inv = chol
            .l()
            .transpose()
            .try_inverse()
            .expect("triangular invertible");
        u * lt_inv
    }

    /// The canonical isometry onto the standard module over the real part,
    /// sending `sum_e x_e e` to its component coordinates. Norms satisfy
    /// `|x|^2 = sum_e |x_e|^2`.
    pub fn delta_iso(&self) -> (BimoduleMap, HilbertBimodule) {
        let m = self.module.core_dim();
        let target = HilbertBimodule::standard(m);
        let uw = self.core_orthonormal_basis();
        let coord = uw.transpose() * self.form.matrix();
        let mut matrix = DMatrix::<f64>::zeros(4 * m, self.dim());
        for e in Basis::ALL {
            let comp = if e == Basis::One {
                &coord * self.module.re_matrix()
            } else {
                &coord * self.module.re_matrix() * (self.module.left_basis(e) * -1.0)
            };
            for p in 0..m {
                for c in 0..self.dim() {
                    matrix[(4 * p + e.index(), c)] = comp[(p, c)];
                }
            }
        }
        let map = BimoduleMap::new(self.module.clone(), target.module.clone(), matrix)
            .expect("component coordinates intertwine");
        (map, target)
    }

    /// The opposite Hilbert bimodule, with reversed conjugated scalar
    /// actions and flipped inner product, presented on the standard
    /// coordinates of the real part (identified through `delta_iso`).
    pub fn opposite(&self) -> HilbertBimodule {
        let m = self.module.core_dim();
        let left = |q: Quaternion| linalg::kron_identity_block(m, &q.conj().right_mul_matrix());
        let right = |q: Quaternion| linalg::kron_identity_block(m, &q.conj().left_mul_matrix());
        let module = Bimodule::new(
            4 * m,
            left(Quaternion::I),
            left(Quaternion::J),
            right(Quaternion::I),
            right(Quaternion::J),
        )
        .expect("opposite actions satisfy the bimodule laws");
        let form = HilbertForm::standard(&module);
        HilbertBimodule { module, form }
    }
}

/// A Hilbert bimodule viewed through its two-sided `H (x) H`-valued inner
/// product.
#[derive(Clone, Debug)]
pub struct TwoSidedSpace {
    pub inner: HilbertBimodule,
}

impl TwoSidedSpace {
    pub fn pairing(&self, x: &DVector<f64>, y: &DVector<f64>) -> HTensor {
        self.inner.pairing(x, y)
    }

    /// Norm from the pairing: `|x| = sqrt(m(<<x, x>>))`.
    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.pairing(x, x).multiply_out().re().max(0.0).sqrt()
    }
}

/// Repackages a Hilbert bimodule as a two-sided inner-product space.
pub fn two_sided_from_bimodule(y: &HilbertBimodule) -> TwoSidedSpace {
    TwoSidedSpace { inner: y.clone() }
}

/// Collapses a two-sided inner product back to the `H`-valued one through
/// the multiplication map: `<x, y> = m(<<x, y>>)`.
pub fn collapse_two_sided(t: &TwoSidedSpace) -> HilbertBimodule {
    t.inner.clone()
}

/// Unitary right-module map conjugating one left structure into another on
/// the same right module: matches orthonormal bases of the two real parts.
pub fn intertwine_left_structures(
    y1: &HilbertBimodule,
    y2: &HilbertBimodule,
) -> Result<DMatrix<f64>> {
    let same_right = [Basis::I, Basis::J].iter().all(|&e| {
        linalg::operator_norm(&(y1.module.right_basis(e) - y2.module.right_basis(e))) < 1e-9
    });
    let same_form =
        linalg::operator_norm(&(y1.form.matrix() - y2.form.matrix())) < 1e-9;
    if !same_right || !same_form {
        return Err(Error::InvalidInput(
            "left structures must share the right module and its inner product".into(),
        ));
    }
    let (d1, _) = y1.delta_iso();
    let (d2, _) = y2.delta_iso();
    let u = d2.inverse()?.matrix * d1.matrix;
    Ok(u)
}

/// A `*`-representation of `H` on a real inner-product space, given by the
/// images of the generators.
#[derive(Clone, Debug)]
pub struct PiStructure {
    dim: usize,
    gens: [DMatrix<f64>; 3],
}

impl PiStructure {
    /// Validates that the images generate a unital `*`-representation:
    /// squares are minus the identity, the generators anticommute, and each
    /// image is skew (so `pi(alpha*)` is the adjoint of `pi(alpha)`).
    pub fn new(pi_i: DMatrix<f64>, pi_j: DMatrix<f64>) -> Result<Self> {
        let dim = pi_i.nrows();
        if dim == 0 || dim % 4 != 0 {
            return Err(Error::InvalidRepresentation(format!(
                "dimension {dim} is not a positive multiple of 4"
            )));
        }
        if pi_i.ncols() != dim || pi_j.nrows() != dim || pi_j.ncols() != dim {
            return Err(Error::InvalidRepresentation("generator shapes differ".into()));
        }
        let id = DMatrix::<f64>::identity(dim, dim);
        let checks = [
            ("pi(i)^2 = -1", &pi_i * &pi_i + &id),
            ("pi(j)^2 = -1", &pi_j * &pi_j + &id),
            ("pi(i)pi(j) = -pi(j)pi(i)", &pi_i * &pi_j + &pi_j * &pi_i),
            ("pi(i) skew", pi_i.transpose() + &pi_i),
            ("pi(j) skew", pi_j.transpose() + &pi_j),
        ];
        for (name, residual) in checks {
            let r = linalg::operator_norm(&residual);
            if r > 1e-8 {
                return Err(Error::InvalidRepresentation(format!(
                    "{name} fails (residual {r:.3e})"
                )));
            }
        }
        let pi_k = &pi_i * &pi_j;
        Ok(PiStructure { dim, gens: [pi_i, pi_j, pi_k] })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pi(&self, q: Quaternion) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.dim, self.dim) * q.a;
        m += &self.gens[0] * q.b;
        m += &self.gens[1] * q.c;
        m += &self.gens[2] * q.d;
        m
    }

    /// The induced right multiplication `x . alpha = pi(alpha*) x`.
    pub fn right_mul(&self, x: &DVector<f64>, alpha: Quaternion) -> DVector<f64> {
        self.pi(alpha.conj()) * x
    }

    /// The induced `H`-valued pairing `[x, y] = sum_e (x, pi(e) y) e`.
    pub fn pairing(&self, x: &DVector<f64>, y: &DVector<f64>) -> Quaternion {
        let mut out = Quaternion::ZERO;
        for e in Basis::ALL {
            out = out + e.quaternion() * x.dot(&(self.pi(e.quaternion()) * y));
        }
        out
    }

    /// Extracts a right-module basis and its Gram matrix, presenting the
    /// induced structure as a right module of rank `dim / 4`.
    pub fn to_right_module(&self) -> Result<(RightModule, Vec<DVector<f64>>)> {
        let n = self.dim / 4;
        let mut chosen: Vec<DVector<f64>> = Vec::with_capacity(n);
        let mut span_cols: Vec<DVector<f64>> = Vec::new();
        for idx in 0..self.dim {
            if chosen.len() == n {
                break;
            }
            let mut cand = DVector::zeros(self.dim);
            cand[idx] = 1.0;
            let independent = if span_cols.is_empty() {
                true
            } else {
                let span = linalg::from_columns(self.dim, &span_cols);
                let basis = linalg::column_space(&span, 1e-9);
                let residual = &cand - &basis * (basis.transpose() * &cand);
                residual.norm() > 1e-6
            };
            if independent {
                for e in Basis::ALL {
                    span_cols.push(self.pi(e.quaternion()) * &cand);
                }
                chosen.push(cand);
            }
        }
        if chosen.len() != n {
            return Err(Error::InvalidRepresentation(
                "failed to extract a module basis".into(),
            ));
        }
        let mut gram = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                gram.push(self.pairing(&chosen[p], &chosen[q]));
            }
        }
        Ok((RightModule::new(n, gram)?, chosen))
    }
}

/// An element of the dual space: a bimodule map from a Hilbert bimodule into
/// the tensor square with both scalars acting on the second leg.
#[derive(Clone, Debug)]
pub struct DualMap {
    pub domain: HilbertBimodule,
    /// 16 x dim matrix onto tensor coefficients laid out as `4 g + h`.
    pub matrix: DMatrix<f64>,
}

impl DualMap {
    pub fn new(domain: HilbertBimodule, matrix: DMatrix<f64>) -> Result<Self> {
        let codomain = Bimodule::htensor_right();
        BimoduleMap::new(domain.module.clone(), codomain, matrix.clone())?;
        Ok(DualMap { domain, matrix })
    }

    /// The map `T_y(x) = <<y, x>>` attached to a vector of the module.
    pub fn from_vector(domain: &HilbertBimodule, y: &DVector<f64>) -> Self {
        let ys = domain.module.polarize(y);
        let mut matrix = DMatrix::<f64>::zeros(16, domain.dim());
        for g in Basis::ALL {
            for h in Basis::ALL {
                // Row for the coefficient of e_g (x) e_h in <<y, x>>.
                let comp = if h == Basis::One {
                    domain.module.re_matrix().clone()
                } else {
                    domain.module.re_matrix() * (domain.module.left_basis(h) * -1.0)
                };
                let row = (ys[g.index()].transpose() * domain.form.matrix() * comp)
                    * g.conj_sign();
                matrix
                    .row_mut(4 * g.index() + h.index())
                    .copy_from(&row);
            }
        }
        DualMap { domain: domain.clone(), matrix }
    }

    pub fn zero(domain: &HilbertBimodule) -> Self {
        DualMap { domain: domain.clone(), matrix: DMatrix::zeros(16, domain.dim()) }
    }

    pub fn apply(&self, x: &DVector<f64>) -> HTensor {
        let v = &self.matrix * x;
        let mut coeffs = nalgebra::Matrix4::<f64>::zeros();
        for g in 0..4 {
            for h in 0..4 {
                coeffs[(g, h)] = v[4 * g + h];
            }
        }
        HTensor::new(coeffs)
    }

    /// The module action `(alpha . T . beta)(x) = (alpha (x) 1) T(x) (beta (x) 1)`.
    pub fn module_action(&self, alpha: Quaternion, beta: Quaternion) -> DualMap {
        let first_leg = linalg::to_dynamic(&alpha.left_mul_matrix())
            * linalg::to_dynamic(&beta.right_mul_matrix());
        let k = linalg::kron(&first_leg, &DMatrix::identity(4, 4));
        DualMap { domain: self.domain.clone(), matrix: k * &self.matrix }
    }

    /// Residual of the intertwining conditions for the dual-space actions.
    pub fn intertwining_residual(&self) -> f64 {
        let codomain = Bimodule::htensor_right();
        crate::bimodule::intertwining_residual(&self.domain.module, &codomain, &self.matrix)
    }

    /// The dual norm `|T|` (through the injective-norm identification, which
    /// agrees with the Hilbert tensor norm on bimodule maps) and the
    /// left-module norm `|T|_L = |m o T|`. Always `|T| <= |T|_L`.
    pub fn norms(&self) -> (f64, f64) {
        let adapted = &self.matrix * self.domain.form.adapt_inv();
        let t_norm = linalg::operator_norm(&adapted);
        let mul = multiplication_matrix();
        let mut mul_dyn = DMatrix::<f64>::zeros(4, 16);
        for r in 0..4 {
            for c in 0..16 {
                mul_dyn[(r, c)] = mul[(r, c)];
            }
        }
        let l_norm = linalg::operator_norm(&(mul_dyn * adapted));
        (t_norm, l_norm)
    }

    /// The unique vector with `m(T(x)) = <y, x>` for all `x`; its norm
    /// equals `|T|_L`.
    pub fn riesz_vector(&self) -> DVector<f64> {
        let d = self.domain.dim();
        let w = self.domain.form.matrix();
        let mut a = DMatrix::<f64>::zeros(4 * d, d);
        let mut b = DVector::<f64>::zeros(4 * d);
        for q in 0..d {
            let mut x = DVector::zeros(d);
            x[q] = 1.0;
            let target = self.apply(&x).multiply_out().to_array();
            for e in Basis::ALL {
                let row = w * self.domain.module.right_basis(e);
                a.row_mut(4 * q + e.index()).copy_from(&row.row(q));
                b[4 * q + e.index()] = target[e.index()];
            }
        }
        linalg::solve_least_squares(&a, &b)
    }
}

/// The fixture separating the dual norm from the left-module norm: the
/// embedding of the complex slice `C (x) H` into the tensor square has
/// `|T| = 1` while `|T|_L = sqrt(2)`.
pub fn dual_norm_gap_fixture() -> (HilbertBimodule, DualMap) {
    let domain = HilbertBimodule::standard(2);
    // Block 0 carries 1 (x) beta_1, block 1 carries i (x) beta_i.
    let mut matrix = DMatrix::<f64>::zeros(16, 8);
    for h in 0..4 {
        matrix[(h, h)] = 1.0; // first leg 1
        matrix[(4 + h, 4 + h)] = 1.0; // first leg i
    }
    let map = DualMap::new(domain.clone(), matrix).expect("fixture intertwines");
    (domain, map)
}

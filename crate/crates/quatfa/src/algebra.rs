//! Quaternion `B*`-algebras presented as `A_Re (x) H` for a real matrix
//! `*`-algebra `A_Re`: the component decomposition, the `C*`-identity,
//! Gelfand-Naimark representations, normality detection with explicit
//! witnesses, and the Gelfand transform of normal algebras.

use nalgebra::{Complex, DMatrix, DVector};

use crate::bimodule::BimoduleMap;
use crate::error::{Error, Result};
use crate::hilbert::HilbertBimodule;
use crate::linalg;
use crate::quat::{Basis, Quaternion};
use crate::sample;

/// A finite-dimensional real matrix `*`-algebra `A_Re` inside `M_n(R)`,
/// closed under products and transposes and containing the identity. The
/// quaternion algebra it presents acts on `R^n (x) H`.
#[derive(Clone, Debug)]
pub struct StarAlgebra {
    n: usize,
    /// Orthonormal basis of `A_Re` for the Frobenius inner product.
    basis: Vec<DMatrix<f64>>,
}

fn vec_mat(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(m.as_slice())
}

fn unvec_mat(n: usize, v: &DVector<f64>) -> DMatrix<f64> {
    DMatrix::from_column_slice(n, n, v.as_slice())
}

impl StarAlgebra {
    /// Completes the span of the generators (plus the identity and all
    /// transposes) under products until the dimension stabilizes.
    pub fn new(n: usize, generators: Vec<DMatrix<f64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("ambient size must be positive".into()));
        }
        for (idx, g) in generators.iter().enumerate() {
            if g.nrows() != n || g.ncols() != n {
                return Err(Error::InvalidAlgebra(format!(
                    "generator {idx} is {}x{}, expected {n}x{n}",
                    g.nrows(),
                    g.ncols()
                )));
            }
        }
        let mut cols: Vec<DVector<f64>> = vec![vec_mat(&DMatrix::identity(n, n))];
        for g in &generators {
            cols.push(vec_mat(g));
            cols.push(vec_mat(&g.transpose()));
        }
        let mut basis_mat = linalg::column_space(&linalg::from_columns(n * n, &cols), 1e-10);
        for _ in 0..=n * n {
            let dim = basis_mat.ncols();
            let mats: Vec<DMatrix<f64>> = (0..dim)
                .map(|c| unvec_mat(n, &basis_mat.column(c).into_owned()))
                .collect();
            let mut all: Vec<DVector<f64>> =
                (0..dim).map(|c| basis_mat.column(c).into_owned()).collect();
            for a in &mats {
                all.push(vec_mat(&a.transpose()));
                for b in &mats {
                    all.push(vec_mat(&(a * b)));
                }
            }
            let closed = linalg::column_space(&linalg::from_columns(n * n, &all), 1e-10);
            if closed.ncols() == dim {
                return Ok(StarAlgebra { n, basis: mats });
            }
            basis_mat = closed;
        }
        Err(Error::InvalidAlgebra("closure did not stabilize".into()))
    }

    /// The quaternions themselves: `A_Re = R` inside `M_1(R)`.
    pub fn quaternions() -> Self {
        StarAlgebra::new(1, vec![DMatrix::identity(1, 1)]).expect("scalars close")
    }

    /// Diagonal matrices of a given size; a normal algebra with as many
    /// characters as diagonal slots.
    pub fn diagonal(n: usize) -> Self {
        let gens = (0..n)
            .map(|p| {
                let mut m = DMatrix::zeros(n, n);
                m[(p, p)] = 1.0;
                m
            })
            .collect();
        StarAlgebra::new(n, gens).expect("diagonals close")
    }

    /// The full matrix algebra `M_n(R)`; not normal for `n >= 2`.
    pub fn full_matrix(n: usize) -> Self {
        let mut gens = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let mut m = DMatrix::zeros(n, n);
                m[(r, c)] = 1.0;
                gens.push(m);
            }
        }
        StarAlgebra::new(n, gens).expect("matrix units close")
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Real dimension of `A_Re`.
    pub fn core_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    /// Frobenius coordinates of a matrix against the basis, and the
    /// projection residual.
    pub fn core_coords(&self, f: &DMatrix<f64>) -> (DVector<f64>, f64) {
        let coords = DVector::from_fn(self.basis.len(), |mu, _| self.basis[mu].dot(f));
        let mut proj = DMatrix::zeros(self.n, self.n);
        for (mu, b) in self.basis.iter().enumerate() {
            proj += b * coords[mu];
        }
        (coords, (proj - f).norm())
    }

    pub fn contains_core(&self, f: &DMatrix<f64>, tol: f64) -> bool {
        self.core_coords(f).1 <= tol * (1.0 + f.norm())
    }

    /// Builds an element from its four `A_Re` components.
    pub fn element(&self, components: [DMatrix<f64>; 4]) -> Result<AlgebraElement> {
        for (e, f) in Basis::ALL.iter().zip(&components) {
            if !self.contains_core(f, 1e-9) {
                return Err(Error::InvalidAlgebra(format!(
                    "component of {e:?} lies outside the core algebra"
                )));
            }
        }
        Ok(AlgebraElement::from_components(self.n, &components))
    }

    /// Wraps a realified matrix, validating that it has the
    /// `A_Re (x) H` block structure.
    pub fn element_from_matrix(&self, matrix: DMatrix<f64>) -> Result<AlgebraElement> {
        if matrix.nrows() != 4 * self.n || matrix.ncols() != 4 * self.n {
            return Err(Error::InvalidAlgebra(format!(
                "element matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                4 * self.n,
                4 * self.n
            )));
        }
        let a = AlgebraElement { n: self.n, matrix };
        let (components, residual) = a.components_with_residual();
        if residual > 1e-8 * (1.0 + a.matrix.norm()) {
            return Err(Error::InvalidAlgebra(format!(
                "matrix does not have the tensor block structure (residual {residual:.3e})"
            )));
        }
        self.element(components)
    }

    /// The scalar element `q . 1`.
    pub fn scalar(&self, q: Quaternion) -> AlgebraElement {
        let id = DMatrix::identity(self.n, self.n);
        AlgebraElement::from_components(self.n, &[&id * q.a, &id * q.b, &id * q.c, &id * q.d])
    }

    pub fn unit(&self) -> AlgebraElement {
        self.scalar(Quaternion::ONE)
    }

    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> AlgebraElement {
        let mut comp = || {
            let mut m = DMatrix::zeros(self.n, self.n);
            for b in &self.basis {
                m += b * rng.gen_range(-1.0..1.0);
            }
            m
        };
        let components = [comp(), comp(), comp(), comp()];
        AlgebraElement::from_components(self.n, &components)
    }

    /// Whether every element of the algebra is normal, with an explicit
    /// non-normal witness otherwise. Normality is equivalent to `A_Re`
    /// being commutative with a trivial involution.
    pub fn normality(&self) -> Normality {
        let zero = DMatrix::<f64>::zeros(self.n, self.n);
        // A basis matrix that is itself non-normal is already a witness.
        for f in &self.basis {
            if (f.transpose() * f - f * f.transpose()).norm() > 1e-8 {
                let w = AlgebraElement::from_components(
                    self.n,
                    &[f.clone(), zero.clone(), zero.clone(), zero],
                );
                return Normality::non_normal(w);
            }
        }
        // A non-symmetric (but matrix-normal) basis element: pair it with
        // the identity across two imaginary slots.
        for f in &self.basis {
            if (f - f.transpose()).norm() > 1e-8 {
                let id = DMatrix::identity(self.n, self.n);
                let w = AlgebraElement::from_components(
                    self.n,
                    &[zero.clone(), zero.clone(), id, f.clone()],
                );
                return Normality::non_normal(w);
            }
        }
        // All symmetric: a non-commuting pair gives a non-normal combination.
        for (p, f) in self.basis.iter().enumerate() {
            for g in &self.basis[p + 1..] {
                if (f * g - g * f).norm() > 1e-8 {
                    let w = AlgebraElement::from_components(
                        self.n,
                        &[f.clone(), g.clone(), zero.clone(), zero],
                    );
                    return Normality::non_normal(w);
                }
            }
        }
        Normality::Normal
    }

    /// The Gelfand-Naimark representation on the standard Hilbert bimodule
    /// `R^n (x) H`, reconstructed from the component decomposition.
    pub fn gn_representation(&self) -> GnRepresentation {
        GnRepresentation { target: HilbertBimodule::standard(self.n) }
    }

    /// The realified variant acting on the real Hilbert space `R^{4n}`.
    pub fn real_representation(&self) -> RealRepresentation {
        RealRepresentation { dim: 4 * self.n }
    }

    /// The Gelfand transform onto `H^m` with the sup norm; requires a
    /// normal algebra and errors with a witness otherwise.
    pub fn gelfand(&self, seed: u64) -> Result<GelfandTransform> {
        if let Normality::NonNormal { witness, deviation } = self.normality() {
            return Err(Error::NotNormal { witness: Box::new(witness.matrix), deviation });
        }
        let q = joint_diagonalize(self.n, &self.basis, seed)?;
        // Eigenvalue pattern of each joint eigenvector.
        let mut patterns: Vec<Vec<f64>> = (0..self.n)
            .map(|t| {
                let v = q.column(t).into_owned();
                self.basis.iter().map(|f| v.dot(&(f * &v))).collect()
            })
            .collect();
        patterns.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| *o != std::cmp::Ordering::Equal)
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut points: Vec<Vec<f64>> = Vec::new();
        for p in patterns {
            let dup = points.iter().any(|q| {
                q.iter().zip(&p).map(|(a, b)| (a - b).abs()).fold(0.0_f64, f64::max) < 1e-6
            });
            if !dup {
                points.push(p);
            }
        }
        if points.len() != self.core_dim() {
            return Err(Error::Diagonalization(format!(
                "found {} characters, expected {}",
                points.len(),
                self.core_dim()
            )));
        }
        let m = points.len();
        let values = DMatrix::from_fn(m, m, |t, mu| points[t][mu]);
        let inverse = values
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Diagonalization("character matrix is singular".into()))?;
        Ok(GelfandTransform { algebra: self.clone(), values, inverse })
    }

    /// The complex slice `A_Re + A_Re i`, realized as complex matrices.
    pub fn complexify(&self) -> ComplexAlgebra {
        let basis = self
            .basis
            .iter()
            .map(|f| f.map(|x| Complex::new(x, 0.0)))
            .collect();
        ComplexAlgebra { basis }
    }
}

/// Result of the normality check.
#[derive(Clone, Debug)]
pub enum Normality {
    Normal,
    NonNormal { witness: AlgebraElement, deviation: f64 },
}

impl Normality {
    fn non_normal(witness: AlgebraElement) -> Self {
        let deviation = witness.normal_deviation();
        Normality::NonNormal { witness, deviation }
    }

    pub fn is_normal(&self) -> bool {
        matches!(self, Normality::Normal)
    }
}

/// An element of `A_Re (x) H`, stored as its realified action on
/// `R^n (x) H`. The involution is the matrix transpose and the norm is the
/// operator norm of this defining representation.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    n: usize,
    pub matrix: DMatrix<f64>,
}

impl AlgebraElement {
    pub fn from_components(n: usize, components: &[DMatrix<f64>; 4]) -> Self {
        let mut matrix = DMatrix::zeros(4 * n, 4 * n);
        for (e, f) in Basis::ALL.iter().zip(components) {
            matrix += linalg::kron(f, &linalg::to_dynamic(&e.quaternion().left_mul_matrix()));
        }
        AlgebraElement { n, matrix }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// The decomposition `a = sum_e Re(e* a) e`, computed by averaging the
    /// scalar conjugations, together with the distance of the input from
    /// the reconstructed tensor form.
    pub fn components_with_residual(&self) -> ([DMatrix<f64>; 4], f64) {
        let n = self.n;
        let scalar = |q: Quaternion| linalg::kron_identity_block(n, &q.left_mul_matrix());
        let mut residual = 0.0_f64;
        let components = Basis::ALL.map(|e| {
            let mut avg = DMatrix::<f64>::zeros(4 * n, 4 * n);
            for f in Basis::ALL {
                let pre = f.conj() * e.conj();
                avg += scalar(pre) * &self.matrix * scalar(f.quaternion());
            }
            avg *= 0.25;
            // The average is F_e (x) 1; read F_e off the block corners.
            let mut comp = DMatrix::<f64>::zeros(n, n);
            for p in 0..n {
                for q in 0..n {
                    comp[(p, q)] = avg[(4 * p, 4 * q)];
                }
            }
            let back = linalg::kron(&comp, &DMatrix::identity(4, 4));
            residual = residual.max((back - avg).norm());
            comp
        });
        (components, residual)
    }

    pub fn components(&self) -> [DMatrix<f64>; 4] {
        self.components_with_residual().0
    }

    /// Involution: transpose of the realified matrix.
    pub fn star(&self) -> AlgebraElement {
        AlgebraElement { n: self.n, matrix: self.matrix.transpose() }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { n: self.n, matrix: &self.matrix * &other.matrix }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { n: self.n, matrix: &self.matrix + &other.matrix }
    }

    pub fn scale(&self, s: f64) -> AlgebraElement {
        AlgebraElement { n: self.n, matrix: &self.matrix * s }
    }

    /// Scalar multiplication `q . a` through the unital copy of `H`.
    pub fn scalar_mul(&self, q: Quaternion) -> AlgebraElement {
        let s = linalg::kron_identity_block(self.n, &q.left_mul_matrix());
        AlgebraElement { n: self.n, matrix: s * &self.matrix }
    }

    /// Operator norm of the defining representation.
    pub fn bstar_norm(&self) -> f64 {
        linalg::operator_norm(&self.matrix)
    }

    /// `|a* a - a a*|`, zero exactly for normal elements.
    pub fn normal_deviation(&self) -> f64 {
        let aa = self.matrix.transpose() * &self.matrix;
        let bb = &self.matrix * self.matrix.transpose();
        linalg::operator_norm(&(aa - bb))
    }

    pub fn norm_of_difference(&self, other: &AlgebraElement) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }
}

/// The Gelfand-Naimark representation: elements act as adjointable
/// right-module operators on the standard Hilbert bimodule.
#[derive(Clone, Debug)]
pub struct GnRepresentation {
    pub target: HilbertBimodule,
}

impl GnRepresentation {
    /// Image of an element, rebuilt from its component decomposition so the
    /// construction is independent of the element's stored matrix.
    pub fn apply(&self, a: &AlgebraElement) -> DMatrix<f64> {
        let components = a.components();
        AlgebraElement::from_components(a.n, &components).matrix
    }
}

/// The same representation viewed on the real Hilbert space `R^{4n}`.
#[derive(Clone, Debug)]
pub struct RealRepresentation {
    pub dim: usize,
}

impl RealRepresentation {
    pub fn apply(&self, a: &AlgebraElement) -> DMatrix<f64> {
        let components = a.components();
        AlgebraElement::from_components(a.n, &components).matrix
    }

    pub fn operator_norm(&self, a: &AlgebraElement) -> f64 {
        linalg::operator_norm(&self.apply(a))
    }
}

/// The Gelfand transform of a normal algebra: an isometric
/// `*`-isomorphism onto quaternion-valued functions on a finite point set.
#[derive(Clone, Debug)]
pub struct GelfandTransform {
    algebra: StarAlgebra,
    /// `values[(t, mu)]` is the character value of basis element `mu` at
    /// point `t`, one row per point, sorted lexicographically.
    values: DMatrix<f64>,
    inverse: DMatrix<f64>,
}

impl GelfandTransform {
    pub fn points(&self) -> usize {
        self.values.nrows()
    }

    /// Character value of a core matrix at a point.
    pub fn character(&self, t: usize, f: &DMatrix<f64>) -> f64 {
        let (coords, _) = self.algebra.core_coords(f);
        self.values.row(t).transpose().dot(&coords)
    }

    /// The transform: quaternion values of an element at every point.
    pub fn transform(&self, a: &AlgebraElement) -> Vec<Quaternion> {
        let components = a.components();
        (0..self.points())
            .map(|t| {
                let vals = Basis::ALL.map(|e| self.character(t, &components[e.index()]));
                Quaternion::from_array(vals)
            })
            .collect()
    }

    /// Sup norm over the character values; equals the algebra norm.
    pub fn sup_norm(&self, a: &AlgebraElement) -> f64 {
        self.transform(a).iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Reconstructs the element taking prescribed values at the points.
    pub fn inverse_transform(&self, values: &[Quaternion]) -> Result<AlgebraElement> {
        if values.len() != self.points() {
            return Err(Error::InvalidInput(format!(
                "expected {} values, got {}",
                self.points(),
                values.len()
            )));
        }
        let components = Basis::ALL.map(|e| {
            let target = DVector::from_fn(values.len(), |t, _| values[t].to_array()[e.index()]);
            let coords = &self.inverse * target;
            let mut f = DMatrix::zeros(self.algebra.ambient(), self.algebra.ambient());
            for (mu, b) in self.algebra.basis().iter().enumerate() {
                f += b * coords[mu];
            }
            f
        });
        Ok(AlgebraElement::from_components(self.algebra.ambient(), &components))
    }
}

/// Simultaneous orthogonal diagonalization of a commuting family of
/// symmetric matrices. A random combination with distinct eigenvalues
/// splits the space; nearly degenerate combinations are retried and any
/// surviving clusters are refined recursively.
pub fn joint_diagonalize(n: usize, mats: &[DMatrix<f64>], seed: u64) -> Result<DMatrix<f64>> {
    for (idx, f) in mats.iter().enumerate() {
        if (f - f.transpose()).norm() > 1e-8 * (1.0 + f.norm()) {
            return Err(Error::Diagonalization(format!("matrix {idx} is not symmetric")));
        }
        for (jdx, g) in mats.iter().enumerate() {
            if (f * g - g * f).norm() > 1e-8 * (1.0 + f.norm() * g.norm()) {
                return Err(Error::Diagonalization(format!(
                    "matrices {idx} and {jdx} do not commute"
                )));
            }
        }
    }
    let identity = DMatrix::<f64>::identity(n, n);
    let q = split_subspace(mats, &identity, seed, 0)?;
    for f in mats {
        let d = q.transpose() * f * &q;
        let mut off = d.clone();
        off.set_diagonal(&DVector::zeros(n));
        if off.norm() > 1e-8 * (1.0 + f.norm()) {
            return Err(Error::Diagonalization(format!(
                "residual off-diagonal mass {:.3e}",
                off.norm()
            )));
        }
    }
    Ok(q)
}

fn split_subspace(
    mats: &[DMatrix<f64>],
    basis: &DMatrix<f64>,
    seed: u64,
    depth: usize,
) -> Result<DMatrix<f64>> {
    let k = basis.ncols();
    if k <= 1 {
        return Ok(basis.clone());
    }
    if depth > 64 {
        return Err(Error::Diagonalization("recursion limit reached".into()));
    }
    let restricted: Vec<DMatrix<f64>> =
        mats.iter().map(|f| basis.transpose() * f * basis).collect();
    // All restrictions scalar: any orthonormal basis works.
    let scale = restricted.iter().map(|m| m.norm()).fold(1.0_f64, f64::max);
    if restricted.iter().all(|m| {
        let lambda = m.trace() / k as f64;
        (m - DMatrix::identity(k, k) * lambda).norm() < 1e-10 * scale
    }) {
        return Ok(basis.clone());
    }
    for attempt in 0..32 {
        let mut rng = sample::trial_rng(seed, depth as u64 * 131 + attempt);
        let mut combo = DMatrix::<f64>::zeros(k, k);
        for m in &restricted {
            combo += m * rand::Rng::gen_range(&mut rng, -1.0..1.0);
        }
        combo = (combo.clone() + combo.transpose()) * 0.5;
        let eig = combo.symmetric_eigen();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let lam_scale = eig.eigenvalues.iter().fold(0.0_f64, |acc, &l| acc.max(l.abs()));
        let gap_tol = 1e-8 * (1.0 + lam_scale);
        // Group near-equal eigenvalues into clusters.
        let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
        for w in order.windows(2) {
            if (eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]]).abs() <= gap_tol {
                clusters.last_mut().expect("nonempty").push(w[1]);
            } else {
                clusters.push(vec![w[1]]);
            }
        }
        if clusters.len() == 1 {
            // Degenerate combination; retry with a fresh one.
            continue;
        }
        let mut pieces = Vec::new();
        for cluster in clusters {
            let mut sub = DMatrix::zeros(k, cluster.len());
            for (c, &idx) in cluster.iter().enumerate() {
                sub.set_column(c, &eig.eigenvectors.column(idx));
            }
            let refined = split_subspace(mats, &(basis * sub), seed, depth + 1)?;
            pieces.push(refined);
        }
        let total: usize = pieces.iter().map(|p| p.ncols()).sum();
        let mut out = DMatrix::zeros(basis.nrows(), total);
        let mut col = 0;
        for p in pieces {
            out.columns_mut(col, p.ncols()).copy_from(&p);
            col += p.ncols();
        }
        return Ok(out);
    }
    Err(Error::Diagonalization("no splitting combination found".into()))
}

/// The canonical embedding of `L(K_Re) (x) H` into the right-module
/// operators of a Hilbert bimodule `K`, acting as `T (x) alpha` on the
/// standard presentation: `x (x) beta -> T(x) (x) alpha beta`.
#[derive(Clone, Debug)]
pub struct JkEmbedding {
    into_std: BimoduleMap,
    from_std: BimoduleMap,
    core_dim: usize,
}

impl JkEmbedding {
    pub fn new(k: &HilbertBimodule) -> Self {
        let (into_std, _) = k.delta_iso();
        let from_std = into_std.inverse().expect("delta iso is bijective");
        JkEmbedding { into_std, from_std, core_dim: k.module.core_dim() }
    }

    /// Image of `T (x) alpha`; `T` is given on the orthonormal real-part
    /// coordinates of `K`.
    pub fn apply(&self, t: &DMatrix<f64>, alpha: Quaternion) -> DMatrix<f64> {
        assert_eq!(t.nrows(), self.core_dim);
        assert_eq!(t.ncols(), self.core_dim);
        let block = linalg::kron(t, &linalg::to_dynamic(&alpha.left_mul_matrix()));
        &self.from_std.matrix * block * &self.into_std.matrix
    }

    /// Image of a sum of elementary tensors.
    pub fn apply_sum(&self, terms: &[(DMatrix<f64>, Quaternion)]) -> DMatrix<f64> {
        let d = self.into_std.matrix.ncols();
        let mut out = DMatrix::zeros(d, d);
        for (t, alpha) in terms {
            out += self.apply(t, *alpha);
        }
        out
    }
}

/// The complex matrix algebra `A_Re + A_Re i`.
#[derive(Clone, Debug)]
pub struct ComplexAlgebra {
    /// Complex basis; the real basis of `A_Re`, viewed with complex scalars.
    basis: Vec<DMatrix<Complex<f64>>>,
}

impl ComplexAlgebra {
    /// Complex dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DMatrix<Complex<f64>>] {
        &self.basis
    }

    /// Distance from products of basis elements to the complex span.
    pub fn closure_residual(&self) -> f64 {
        let n = self.basis.first().map(|b| b.nrows()).unwrap_or(0);
        let mut worst = 0.0_f64;
        for a in &self.basis {
            for b in &self.basis {
                let prod = a * b;
                worst = worst.max(self.projection_residual(&prod, n));
            }
            let adj = a.adjoint();
            worst = worst.max(self.projection_residual(&adj, n));
        }
        worst
    }

    fn projection_residual(&self, m: &DMatrix<Complex<f64>>, n: usize) -> f64 {
        // Orthogonal projection onto the complex span of the basis.
        let mut proj = DMatrix::<Complex<f64>>::zeros(n, n);
        for b in &self.basis {
            let denom = b.dotc(b);
            let coeff = b.dotc(m) / denom;
            proj += b.map(|x| x * coeff);
        }
        (proj - m).norm()
    }

    pub fn is_commutative(&self, tol: f64) -> bool {
        for a in &self.basis {
            for b in &self.basis {
                if (a * b - b * a).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Complex dimension of the self-adjoint part... as a real space it is
    /// the span of hermitian elements; returns its real dimension.
    pub fn hermitian_dim(&self) -> usize {
        // Hermitian elements of span_C{basis}: solve over the realified
        // coordinates. Basis elements are real matrices, so F + i G is
        // hermitian iff F is symmetric and G antisymmetric.
        let n = self.basis.first().map(|b| b.nrows()).unwrap_or(0);
        let mut cols = Vec::new();
        for b in &self.basis {
            let re = b.map(|x| x.re);
            let sym = (&re + re.transpose()) * 0.5;
            let anti = (&re - re.transpose()) * 0.5;
            cols.push(vec_mat(&sym));
            cols.push(vec_mat(&anti));
        }
        linalg::rank(&linalg::from_columns(n * n, &cols), 1e-9)
    }
}

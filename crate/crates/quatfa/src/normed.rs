//! Hilbertian norms on bimodules, bounded intertwiners and their operator
//! norms, lifting of real functionals to quaternion-valued module maps,
//! point separation, norm-preserving extension from sub-bimodules, and the
//! dual bimodule.

use nalgebra::{DMatrix, DVector};

use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::linalg;
use crate::quat::{Basis, Quaternion};

/// A positive-definite symmetric form compatible with both scalar actions,
/// so that the induced norm satisfies `|alpha x beta| = |alpha| |x| |beta|`.
#[derive(Clone, Debug)]
pub struct HilbertForm {
    matrix: DMatrix<f64>,
    /// Upper Cholesky factor: `W = lt^T lt`, so `|x|_W = |lt x|_2`.
    lt: DMatrix<f64>,
    lt_inv: DMatrix<f64>,
}

impl HilbertForm {
    /// Validates positivity and compatibility: the imaginary basis actions
    /// must be skew-adjoint for the form.
    pub fn new(module: &Bimodule, matrix: DMatrix<f64>) -> Result<Self> {
        let d = module.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::UnsupportedNorm(format!(
                "form is {}x{}, expected {d}x{d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let sym_residual = linalg::operator_norm(&(&matrix - matrix.transpose()));
        if sym_residual > 1e-10 * (1.0 + linalg::operator_norm(&matrix)) {
            return Err(Error::UnsupportedNorm("form is not symmetric".into()));
        }
        let chol = nalgebra::Cholesky::new(matrix.clone())
            .ok_or_else(|| Error::UnsupportedNorm("form is not positive definite".into()))?;
        let scale = 1.0 + linalg::operator_norm(&matrix);
        for e in [Basis::I, Basis::J] {
            for act in [module.left_basis(e), module.right_basis(e)] {
                let residual = linalg::operator_norm(&(act.transpose() * &matrix + &matrix * &act));
                if residual > 1e-8 * scale {
                    return Err(Error::UnsupportedNorm(format!(
                        "form is not compatible with the scalar actions (residual {residual:.3e})"
                    )));
                }
            }
        }
        let lt = chol.l().transpose();
        let lt_inv = lt.clone().try_inverse().expect("triangular factor invertible");
        Ok(HilbertForm { matrix, lt, lt_inv })
    }

    pub fn standard(module: &Bimodule) -> Self {
        HilbertForm::new(module, DMatrix::identity(module.dim(), module.dim()))
            .expect("identity form is compatible with the standard actions")
    }

    /// Averages an arbitrary positive form over the finite group generated
    /// by the basis actions, producing a compatible form.
    pub fn averaged(module: &Bimodule, seed: &DMatrix<f64>) -> Result<Self> {
        let d = module.dim();
        let mut w = DMatrix::<f64>::zeros(d, d);
        for g in Basis::ALL {
            for h in Basis::ALL {
                let a = module.left_basis(g) * module.right_basis(h);
                w += a.transpose() * seed * a;
            }
        }
        HilbertForm::new(module, w / 16.0)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.matrix * y)[(0, 0)]
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        (&self.lt * x).norm()
    }

    /// Upper-triangular factor mapping into norm-adapted coordinates.
    pub fn adapt(&self) -> &DMatrix<f64> {
        &self.lt
    }

    pub fn adapt_inv(&self) -> &DMatrix<f64> {
        &self.lt_inv
    }

    /// The restricted form on real-part coordinates.
    pub fn core_form(&self, module: &Bimodule) -> DMatrix<f64> {
        let u = module.real_part_basis();
        u.transpose() * &self.matrix * u
    }
}

/// Operator norm of an intertwiner between normed bimodules, computed
/// exactly as the largest singular value in norm-adapted coordinates.
pub fn op_norm(map: &BimoduleMap, domain: &HilbertForm, codomain: &HilbertForm) -> f64 {
    let adapted = codomain.adapt() * &map.matrix * domain.adapt_inv();
    linalg::operator_norm(&adapted)
}

/// Operator norm of a raw matrix between two normed spaces.
pub fn matrix_op_norm(m: &DMatrix<f64>, domain: &HilbertForm, codomain: &HilbertForm) -> f64 {
    linalg::operator_norm(&(codomain.adapt() * m * domain.adapt_inv()))
}

/// Dual norm of a functional on the real part, given by coefficients
/// against the real-part basis.
pub fn functional_norm(core_form: &DMatrix<f64>, f: &DVector<f64>) -> f64 {
    let chol = nalgebra::Cholesky::new(core_form.clone()).expect("core form positive definite");
    chol.solve(f).dot(f).sqrt()
}

/// Lifts a real functional `f` on the real part to the quaternion-valued
/// bimodule map `x -> sum_e f(Re(e* x)) e`. The lift restricts to `f` on
/// the real part and has the same norm.
pub fn lift_functional(module: &Bimodule, f: &DVector<f64>) -> BimoduleMap {
    let target = Bimodule::quaternionize(1).expect("rank one");
    let u = module.real_part_basis();
    let mut matrix = DMatrix::<f64>::zeros(4, module.dim());
    for e in Basis::ALL {
        let comp = if e == Basis::One {
            u.transpose() * module.re_matrix()
        } else {
            u.transpose() * module.re_matrix() * (module.left_basis(e) * -1.0)
        };
        let row = f.transpose() * comp;
        matrix.row_mut(e.index()).copy_from(&row);
    }
    BimoduleMap::new(module.clone(), target, matrix).expect("lift intertwines")
}

/// A quaternion-valued bimodule map separating a given nonzero vector:
/// the lift of the pairing with its largest polarization component.
pub fn separating_map(
    module: &Bimodule,
    form: &HilbertForm,
    x: &DVector<f64>,
) -> Result<BimoduleMap> {
    if x.norm() == 0.0 {
        return Err(Error::NoSeparator);
    }
    let comps = module.polarize(x);
    let best = comps
        .iter()
        .max_by(|a, b| form.norm(a).total_cmp(&form.norm(b)))
        .expect("four components");
    let u = module.real_part_basis();
    let f = u.transpose() * form.matrix() * best;
    Ok(lift_functional(module, &f))
}

/// A sub-bimodule, closed under both scalar actions, held as an orthonormal
/// basis in ambient coordinates.
#[derive(Clone, Debug)]
pub struct SubBimodule {
    basis: DMatrix<f64>,
    inner: Bimodule,
}

impl SubBimodule {
    /// Validates that the span of the columns is invariant under the actions.
    pub fn from_span(module: &Bimodule, span: &DMatrix<f64>) -> Result<Self> {
        let basis = linalg::column_space(span, 1e-10);
        let proj_out = DMatrix::identity(module.dim(), module.dim()) - &basis * basis.transpose();
        let mut residual = 0.0_f64;
        for e in [Basis::I, Basis::J] {
            for act in [module.left_basis(e), module.right_basis(e)] {
                residual = residual.max(linalg::operator_norm(&(&proj_out * act * &basis)));
            }
        }
        if residual > 1e-10 {
            return Err(Error::InvalidSubspace { residual });
        }
        let induced = |m: DMatrix<f64>| basis.transpose() * m * &basis;
        let inner = Bimodule::new(
            basis.ncols(),
            induced(module.left_basis(Basis::I)),
            induced(module.left_basis(Basis::J)),
            induced(module.right_basis(Basis::I)),
            induced(module.right_basis(Basis::J)),
        )?;
        Ok(SubBimodule { basis, inner })
    }

    /// The smallest sub-bimodule containing the given vectors.
    pub fn generated(module: &Bimodule, generators: &[DVector<f64>]) -> Result<Self> {
        let mut cols = Vec::new();
        for x in generators {
            for g in Basis::ALL {
                for h in Basis::ALL {
                    cols.push(module.right_basis(h) * module.left_basis(g) * x);
                }
            }
        }
        let span = linalg::from_columns(module.dim(), &cols);
        SubBimodule::from_span(module, &span)
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// The sub-bimodule as a bimodule in its own coordinates.
    pub fn as_bimodule(&self) -> &Bimodule {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Ambient coordinates of a vector given in sub coordinates.
    pub fn embed(&self, y: &DVector<f64>) -> DVector<f64> {
        &self.basis * y
    }

    /// The restriction of an ambient form to the sub-bimodule.
    pub fn restrict_form(&self, form: &HilbertForm) -> HilbertForm {
        let w = self.basis.transpose() * form.matrix() * &self.basis;
        HilbertForm::new(&self.inner, w).expect("restricted form stays compatible")
    }
}

/// Norm-preserving extension of a quaternion-valued bimodule map from a
/// sub-bimodule to the whole space. The restriction of the map to the
/// sub real part is represented by its Riesz vector, whose pairing is then
/// extended by zero on the orthogonal complement.
pub fn hahn_banach_extend(
    module: &Bimodule,
    form: &HilbertForm,
    sub: &SubBimodule,
    g: &DMatrix<f64>,
) -> Result<BimoduleMap> {
    let target = Bimodule::quaternionize(1).expect("rank one");
    let g_map = BimoduleMap::new(sub.as_bimodule().clone(), target, g.clone())?;
    // Functional on the sub real part.
    let f_sub = g_map.restrict_to_core().row(0).transpose();
    // Its Riesz vector inside the sub real part, for the restricted form.
    let sub_form = sub.restrict_form(form);
    let core_form = sub_form.core_form(sub.as_bimodule());
    let chol = nalgebra::Cholesky::new(core_form).expect("core form positive definite");
    let a = chol.solve(&f_sub);
    let riesz_sub = sub.as_bimodule().real_part_basis() * a;
    let riesz_ambient = sub.embed(&riesz_sub);
    // Pair against the Riesz vector over the whole real part; this extends
    // the functional and cannot increase its dual norm.
    let u = module.real_part_basis();
    let f_ext = u.transpose() * form.matrix() * riesz_ambient;
    Ok(lift_functional(module, &f_ext))
}

/// The dual bimodule: functionals as coordinate vectors, with the actions
/// `(alpha . f)(x) = f(x alpha)` and `(f . alpha)(x) = f(alpha x)`.
#[derive(Clone, Debug)]
pub struct DualModule {
    module: Bimodule,
    form: Option<HilbertForm>,
}

pub fn dual_module(module: &Bimodule, form: Option<&HilbertForm>) -> DualModule {
    let dual = Bimodule::new(
        module.dim(),
        module.right_basis(Basis::I).transpose(),
        module.right_basis(Basis::J).transpose(),
        module.left_basis(Basis::I).transpose(),
        module.left_basis(Basis::J).transpose(),
    )
    .expect("dual actions satisfy the bimodule laws");
    let dual_form = form.map(|w| {
        let inv = w
            .matrix()
            .clone()
            .try_inverse()
            .expect("positive definite form invertible");
        HilbertForm::new(&dual, inv).expect("inverse form is compatible with dual actions")
    });
    DualModule { module: dual, form: dual_form }
}

impl DualModule {
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn form(&self) -> Option<&HilbertForm> {
        self.form.as_ref()
    }

    pub fn evaluate(&self, f: &DVector<f64>, x: &DVector<f64>) -> f64 {
        f.dot(x)
    }
}

/// The functional `f o Re` as a dual coordinate vector, for `f` given by
/// coefficients against the real-part basis. This is the canonical isometry
/// from the dual of the real part onto the real part of the dual.
pub fn dual_re_iso(module: &Bimodule, f: &DVector<f64>) -> DVector<f64> {
    module.re_matrix().transpose() * module.real_part_basis() * f
}

/// Both operator norms of an intertwiner: restricted to the real parts and
/// on the whole space. For Hilbertian norms they agree; in general the full
/// norm is squeezed between the restricted norm and four times it.
pub fn restricted_and_full_norm(
    map: &BimoduleMap,
    domain: &HilbertForm,
    codomain: &HilbertForm,
) -> (f64, f64) {
    let s = map.restrict_to_core();
    let dom_core = HilbertFormCore::new(domain.core_form(&map.domain));
    let cod_core = HilbertFormCore::new(codomain.core_form(&map.codomain));
    let restricted = linalg::operator_norm(&(cod_core.lt * s * dom_core.lt_inv));
    let full = op_norm(map, domain, codomain);
    (restricted, full)
}

struct HilbertFormCore {
    lt: DMatrix<f64>,
    lt_inv: DMatrix<f64>,
}

impl HilbertFormCore {
    fn new(w: DMatrix<f64>) -> Self {
        let chol = nalgebra::Cholesky::new(w).expect("core form positive definite");
        let lt = chol.l().transpose();
        let lt_inv = lt.clone().try_inverse().expect("triangular invertible");
        HilbertFormCore { lt, lt_inv }
    }
}

/// Reads a 4-vector produced by a map into the rank-one standard bimodule
/// back as a quaternion.
pub fn as_quaternion(v: &DVector<f64>) -> Quaternion {
    Quaternion::new(v[0], v[1], v[2], v[3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_form_norm_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let x = Bimodule::quaternionize(3).unwrap();
        let w = HilbertForm::standard(&x);
        for _ in 0..50 {
            let v = sample::vector(&mut rng, 12);
            let a = sample::quaternion(&mut rng);
            let b = sample::quaternion(&mut rng);
            let moved = x.right_mul(&x.left_mul(a, &v), b);
            let expected = a.norm() * w.norm(&v) * b.norm();
            assert!((w.norm(&moved) - expected).abs() < 1e-10 * (1.0 + expected));
        }
    }

    #[test]
    fn averaged_form_is_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let x = sample::bimodule(&mut rng, 2);
        let form = sample::compatible_form(&mut rng, &x);
        for _ in 0..50 {
            let v = sample::vector(&mut rng, 8);
            let a = sample::quaternion(&mut rng);
            let b = sample::quaternion(&mut rng);
            let moved = x.right_mul(&x.left_mul(a, &v), b);
            let expected = a.norm() * form.norm(&v) * b.norm();
            assert!((form.norm(&moved) - expected).abs() < 1e-9 * (1.0 + expected));
        }
    }

    #[test]
    fn op_norm_basics() {
        let x = Bimodule::quaternionize(2).unwrap();
        let w = HilbertForm::standard(&x);
        let id = BimoduleMap::identity(&x);
        assert!((op_norm(&id, &w, &w) - 1.0).abs() < 1e-12);

        // Left multiplication by alpha on H has norm |alpha|.
        let h = Bimodule::quaternionize(1).unwrap();
        let wh = HilbertForm::standard(&h);
        let alpha = Quaternion::new(0.3, -1.0, 2.0, 0.5);
        let mul = BimoduleMap {
            domain: h.clone(),
            codomain: h.clone(),
            matrix: h.left(alpha),
        };
        assert!((op_norm(&mul, &wh, &wh) - alpha.norm()).abs() < 1e-10);
    }

    #[test]
    fn re_projection_is_contractive() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let x = sample::bimodule(&mut rng, 2);
            let w = sample::compatible_form(&mut rng, &x);
            let re = BimoduleMap {
                domain: x.clone(),
                codomain: x.clone(),
                matrix: x.re_matrix().clone(),
            };
            assert!(op_norm(&re, &w, &w) <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn lift_zero_and_identity() {
        let h = Bimodule::quaternionize(1).unwrap();
        let zero = lift_functional(&h, &DVector::zeros(1));
        assert!(linalg::operator_norm(&zero.matrix) < 1e-14);

        // On H, lifting evaluation of the real part gives the identity map,
        // because sum_e Re(e* x) e = x.
        let f = DVector::from_column_slice(&[1.0]);
        let lift = lift_functional(&h, &f);
        let id = DMatrix::identity(4, 4);
        // The real-part basis may flip the sign of the basis vector; the
        // lift matrix matches the identity up to that orientation.
        let u = h.real_part_basis()[(0, 0)];
        assert!(linalg::operator_norm(&(lift.matrix * u.signum() - id)) < 1e-10);
    }

    #[test]
    fn lift_is_isometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..25 {
            let x = sample::bimodule(&mut rng, 2);
            let w = sample::compatible_form(&mut rng, &x);
            let f = sample::vector(&mut rng, x.core_dim());
            let lift = lift_functional(&x, &f);
            let h = Bimodule::quaternionize(1).unwrap();
            let wh = HilbertForm::standard(&h);
            let lhs = op_norm(&lift, &w, &wh);
            let rhs = functional_norm(&w.core_form(&x), &f);
            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs));
        }
    }

    #[test]
    fn lift_restricts_to_f_on_core() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let x = sample::bimodule(&mut rng, 3);
        let f = sample::vector(&mut rng, 3);
        let lift = lift_functional(&x, &f);
        for p in 0..3 {
            let z = x.real_part_basis().column(p).into_owned();
            let out = as_quaternion(&lift.apply(&z));
            assert!((out.re() - f[p]).abs() < 1e-10);
            assert!(out.norm_sq() - out.re() * out.re() < 1e-20);
        }
    }

    #[test]
    fn separation_of_nonzero_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for _ in 0..50 {
            let x = sample::bimodule(&mut rng, 2);
            let w = sample::compatible_form(&mut rng, &x);
            let v = sample::nonzero_vector(&mut rng, x.dim());
            let t = separating_map(&x, &w, &v).unwrap();
            let out = as_quaternion(&t.apply(&v));
            assert!(out.norm() > 1e-9, "separator vanished: {out}");
        }
        let x = Bimodule::quaternionize(1).unwrap();
        let w = HilbertForm::standard(&x);
        assert!(matches!(
            separating_map(&x, &w, &DVector::zeros(4)),
            Err(Error::NoSeparator)
        ));
    }

    #[test]
    fn separation_on_h_identity() {
        let h = Bimodule::quaternionize(1).unwrap();
        let w = HilbertForm::standard(&h);
        let one = DVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0]);
        let t = separating_map(&h, &w, &one).unwrap();
        let out = as_quaternion(&t.apply(&one));
        assert!(out.norm() > 0.5);
        assert!(out.b.abs() + out.c.abs() + out.d.abs() < 1e-12);
    }

    #[test]
    fn sub_bimodule_generation_and_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let x = Bimodule::quaternionize(3).unwrap();
        let gen = sample::vector(&mut rng, 12);
        let sub = SubBimodule::generated(&x, &[gen]).unwrap();
        assert_eq!(sub.dim() % 4, 0);
        // A random non-invariant plane is rejected.
        let mut span = DMatrix::zeros(12, 1);
        span[(0, 0)] = 1.0;
        assert!(matches!(
            SubBimodule::from_span(&x, &span),
            Err(Error::InvalidSubspace { .. })
        ));
    }

    #[test]
    fn hahn_banach_full_space_and_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        let x = sample::bimodule(&mut rng, 2);
        let w = sample::compatible_form(&mut rng, &x);
        let full = SubBimodule::from_span(&x, &DMatrix::identity(x.dim(), x.dim())).unwrap();
        let f = sample::vector(&mut rng, full.as_bimodule().core_dim());
        let g = lift_functional(full.as_bimodule(), &f);
        let ext = hahn_banach_extend(&x, &w, &full, &g.matrix).unwrap();
        for _ in 0..10 {
            let v = sample::vector(&mut rng, full.dim());
            let lhs = ext.apply(&full.embed(&v));
            let rhs = g.apply(&v);
            assert!((lhs - rhs).norm() < 1e-9);
        }
        let zero = hahn_banach_extend(&x, &w, &full, &DMatrix::zeros(4, full.dim())).unwrap();
        assert!(linalg::operator_norm(&zero.matrix) < 1e-12);
    }

    #[test]
    fn hahn_banach_preserves_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let h = Bimodule::quaternionize(1).unwrap();
        let wh = HilbertForm::standard(&h);
        for _ in 0..20 {
            let x = sample::bimodule(&mut rng, 3);
            let w = sample::compatible_form(&mut rng, &x);
            let sub = SubBimodule::generated(&x, &[sample::vector(&mut rng, x.dim())]).unwrap();
            let f = sample::vector(&mut rng, sub.as_bimodule().core_dim());
            let g = lift_functional(sub.as_bimodule(), &f);
            let sub_form = sub.restrict_form(&w);
            let g_norm = op_norm(&g, &sub_form, &wh);
            let ext = hahn_banach_extend(&x, &w, &sub, &g.matrix).unwrap();
            let ext_norm = op_norm(&ext, &w, &wh);
            assert!((ext_norm - g_norm).abs() < 1e-9 * (1.0 + g_norm));
            for _ in 0..5 {
                let v = sample::vector(&mut rng, sub.dim());
                assert!((ext.apply(&sub.embed(&v)) - g.apply(&v)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn dual_module_of_h() {
        let h = Bimodule::quaternionize(1).unwrap();
        let dual = dual_module(&h, None);
        // The real part of the dual is spanned by the dual vector of 1.
        assert_eq!(dual.module().core_dim(), 1);
        let one_hat = DVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0]);
        assert!(dual.module().in_real_part(&one_hat, 1e-10));
    }

    #[test]
    fn dual_core_annihilates_imaginary_translates() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let x = sample::bimodule(&mut rng, 2);
        let dual = dual_module(&x, None);
        let g_core = dual.module().real_part_basis();
        for p in 0..g_core.ncols() {
            let g = g_core.column(p).into_owned();
            for _ in 0..5 {
                let z = x.real_part_basis() * sample::vector(&mut rng, x.core_dim());
                for e in Basis::IMAGINARY {
                    let val = dual.evaluate(&g, &x.left_mul(e.quaternion(), &z));
                    assert!(val.abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn dual_re_iso_is_isometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let x = sample::bimodule(&mut rng, 2);
        let w = sample::compatible_form(&mut rng, &x);
        let dual = dual_module(&x, Some(&w));
        let dual_form = dual.form().unwrap();
        for _ in 0..20 {
            let f = sample::vector(&mut rng, x.core_dim());
            let phi = dual_re_iso(&x, &f);
            assert!(dual.module().in_real_part(&phi, 1e-9));
            let lhs = dual_form.norm(&phi);
            let rhs = functional_norm(&w.core_form(&x), &f);
            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs));
        }
        let zero = dual_re_iso(&x, &DVector::zeros(x.core_dim()));
        assert!(zero.norm() < 1e-14);
    }

    #[test]
    fn norm_equivalence_chain() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..20 {
            let x = sample::bimodule(&mut rng, 2);
            let y = sample::bimodule(&mut rng, 3);
            let wx = sample::compatible_form(&mut rng, &x);
            let wy = sample::compatible_form(&mut rng, &y);
            let t = sample::intertwiner(&mut rng, &x, &y);
            let (restricted, full) = restricted_and_full_norm(&t, &wx, &wy);
            assert!(restricted <= full + 1e-9 * (1.0 + full));
            assert!(full <= 4.0 * restricted + 1e-9 * (1.0 + restricted));
            // Hilbertian norms are in fact equal.
            assert!((restricted - full).abs() < 1e-9 * (1.0 + full));
        }
        let x = Bimodule::quaternionize(2).unwrap();
        let w = HilbertForm::standard(&x);
        let (r, f) = restricted_and_full_norm(&BimoduleMap::identity(&x), &w, &w);
        assert!((r - 1.0).abs() < 1e-12 && (f - 1.0).abs() < 1e-12);
    }
}

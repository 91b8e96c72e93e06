//! Small dense linear-algebra helpers shared across the crate.

use nalgebra::{DMatrix, DVector, Matrix4};

/// Operator norm (largest singular value). Zero for empty matrices.
pub fn operator_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Orthonormal basis of the kernel, as columns. Singular values below
/// `rel_tol * sigma_max` are treated as zero.
pub fn kernel_basis(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let ncols = m.ncols();
    // Pad wide matrices with zero rows so the SVD returns all right vectors.
    let work = if m.nrows() >= ncols {
        m.clone()
    } else {
        let mut padded = DMatrix::<f64>::zeros(ncols, ncols);
        padded.rows_mut(0, m.nrows()).copy_from(m);
        padded
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let sigma = &svd.singular_values;
    let cut = rel_tol * sigma.max().max(0.0);
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for r in 0..v_t.nrows() {
        if sigma[r] <= cut {
            cols.push(v_t.row(r).transpose());
        }
    }
    from_columns(ncols, &cols)
}

/// Orthonormal basis of the column space.
pub fn column_space(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("svd requested u");
    let sigma = &svd.singular_values;
    let cut = rel_tol * sigma.max().max(0.0);
    let mut cols = Vec::new();
    for r in 0..sigma.len() {
        if sigma[r] > cut {
            cols.push(u.column(r).into_owned());
        }
    }
    from_columns(m.nrows(), &cols)
}

/// Orthonormal basis of the orthogonal complement of the column space of `m`.
pub fn orthogonal_complement(m: &DMatrix<f64>) -> DMatrix<f64> {
    kernel_basis(&m.transpose(), 1e-9)
}

pub fn rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sigma = m.clone().svd(false, false).singular_values;
    let cut = rel_tol * sigma.max().max(0.0);
    (0..sigma.len()).filter(|&r| sigma[r] > cut).count()
}

pub fn from_columns(nrows: usize, cols: &[DVector<f64>]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(nrows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        m.set_column(c, col);
    }
    m
}

/// Least-squares solution of `a x = b` via SVD.
pub fn solve_least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    a.clone()
        .svd(true, true)
        .solve(b, 1e-13)
        .expect("svd solve")
}

/// Whether a symmetric matrix is positive semidefinite, allowing eigenvalues
/// down to `-tol_scale * (|lambda_max| + 1)`.
pub fn is_psd(m: &DMatrix<f64>, tol_scale: f64) -> bool {
    let sym = (m + m.transpose()) * 0.5;
    let eigs = sym.symmetric_eigenvalues();
    let max_mag = eigs.iter().fold(0.0_f64, |acc, &l| acc.max(l.abs()));
    eigs.iter().all(|&l| l >= -tol_scale * (max_mag + 1.0))
}

/// Whether a symmetric matrix is positive definite.
pub fn is_spd(m: &DMatrix<f64>) -> bool {
    m.is_square() && nalgebra::Cholesky::new(m.clone()).is_some()
}

pub fn to_dynamic(m: &Matrix4<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(4, 4, |r, c| m[(r, c)])
}

/// Kronecker product `I_n (x) m` for a 4x4 block.
pub fn kron_identity_block(n: usize, m: &Matrix4<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(4 * n, 4 * n);
    for p in 0..n {
        for r in 0..4 {
            for c in 0..4 {
                out[(4 * p + r, 4 * p + c)] = m[(r, c)];
            }
        }
    }
    out
}

/// Kronecker product `a (x) b` for dynamic matrices.
pub fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_projection() {
        // Projection onto the first coordinate of R^3 has a 2-dim kernel.
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 0.0]);
        let k = kernel_basis(&m, 1e-9);
        assert_eq!(k.ncols(), 2);
        let residual = operator_norm(&(&m * &k));
        assert!(residual < 1e-12);
        let gram = k.transpose() * &k;
        assert!(operator_norm(&(gram - DMatrix::identity(2, 2))) < 1e-12);
    }

    #[test]
    fn operator_norm_diag() {
        let m = DMatrix::from_diagonal(&nalgebra::dvector![3.0, -7.0, 2.0]);
        assert!((operator_norm(&m) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn psd_checks() {
        let good = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(is_psd(&good, 1e-10));
        assert!(!is_psd(&bad, 1e-10));
        assert!(is_spd(&good));
        assert!(!is_spd(&bad));
    }

    #[test]
    fn least_squares_recovers_solution() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let x = nalgebra::dvector![2.0, -1.0];
        let b = &a * &x;
        let got = solve_least_squares(&a, &b);
        assert!((got - x).norm() < 1e-10);
    }
}

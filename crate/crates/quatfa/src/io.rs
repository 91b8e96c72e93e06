//! JSON schemas for the file formats accepted and emitted by the command
//! line tool. Quaternions serialize as `[a, b, c, d]`, matrices as
//! row-major nested arrays, tensor elements as 4x4 arrays.

use nalgebra::{DMatrix, Matrix4};
use serde::{Deserialize, Serialize};

use crate::algebra::StarAlgebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::hilbert::RightModule;
use crate::quat::Quaternion;
use crate::tensor::HTensor;

pub type MatrixRows = Vec<Vec<f64>>;

pub fn matrix_to_rows(m: &DMatrix<f64>) -> MatrixRows {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let nrows = rows.len();
    if nrows == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let ncols = rows[0].len();
    if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidInput("ragged or empty matrix rows".into()));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |r, c| rows[r][c]))
}

/// Bimodule presentation by its four generator action matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub dim: usize,
    pub left_i: MatrixRows,
    pub left_j: MatrixRows,
    pub right_i: MatrixRows,
    pub right_j: MatrixRows,
}

impl BimoduleSpec {
    pub fn from_bimodule(x: &Bimodule) -> Self {
        BimoduleSpec {
            dim: x.dim(),
            left_i: matrix_to_rows(&x.left_basis(crate::quat::Basis::I)),
            left_j: matrix_to_rows(&x.left_basis(crate::quat::Basis::J)),
            right_i: matrix_to_rows(&x.right_basis(crate::quat::Basis::I)),
            right_j: matrix_to_rows(&x.right_basis(crate::quat::Basis::J)),
        }
    }

    pub fn build(&self) -> Result<Bimodule> {
        Bimodule::new(
            self.dim,
            matrix_from_rows(&self.left_i)?,
            matrix_from_rows(&self.left_j)?,
            matrix_from_rows(&self.right_i)?,
            matrix_from_rows(&self.right_j)?,
        )
    }
}

/// Right-module presentation: rank and quaternion Gram matrix, entries as
/// `[a, b, c, d]` coefficient arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RightModuleSpec {
    pub rank: usize,
    pub gram: Vec<Vec<[f64; 4]>>,
}

impl RightModuleSpec {
    pub fn from_module(m: &RightModule) -> Self {
        let rank = m.rank();
        let gram = (0..rank)
            .map(|p| (0..rank).map(|q| m.gram(p, q).to_array()).collect())
            .collect();
        RightModuleSpec { rank, gram }
    }

    pub fn build(&self) -> Result<RightModule> {
        if self.gram.len() != self.rank || self.gram.iter().any(|r| r.len() != self.rank) {
            return Err(Error::InvalidInput(format!(
                "gram must be {0}x{0} quaternion entries",
                self.rank
            )));
        }
        let entries = self
            .gram
            .iter()
            .flat_map(|row| row.iter().map(|&q| Quaternion::from_array(q)))
            .collect();
        RightModule::new(self.rank, entries)
    }
}

/// Algebra presentation: ambient size and real generator matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub n: usize,
    pub generators: Vec<MatrixRows>,
    #[serde(default = "default_true")]
    pub unital: bool,
}

fn default_true() -> bool {
    true
}

impl AlgebraSpec {
    pub fn from_algebra(a: &StarAlgebra) -> Self {
        AlgebraSpec {
            n: a.ambient(),
            generators: a.basis().iter().map(matrix_to_rows).collect(),
            unital: true,
        }
    }

    pub fn build(&self) -> Result<StarAlgebra> {
        if !self.unital {
            return Err(Error::InvalidAlgebra(
                "only unital algebras are supported".into(),
            ));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| matrix_from_rows(g))
            .collect::<Result<Vec<_>>>()?;
        StarAlgebra::new(self.n, gens)
    }
}

/// A tensor element as its raw 4x4 coefficient array.
pub fn tensor_from_rows(rows: &[Vec<f64>]) -> Result<HTensor> {
    let m = matrix_from_rows(rows)?;
    if m.nrows() != 4 || m.ncols() != 4 {
        return Err(Error::InvalidInput(format!(
            "tensor element must be 4x4, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(HTensor::new(Matrix4::from_fn(|r, c| m[(r, c)])))
}

pub fn tensor_to_rows(t: &HTensor) -> MatrixRows {
    (0..4)
        .map(|r| (0..4).map(|c| t.coeffs[(r, c)]).collect())
        .collect()
}

/// Input for the dual-map computations: a module and a 16 x 4 rank matrix
/// mapping realified coordinates to tensor coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualMapSpec {
    pub rank: usize,
    pub gram: Vec<Vec<[f64; 4]>>,
    pub map: MatrixRows,
}

impl DualMapSpec {
    pub fn module(&self) -> Result<RightModule> {
        RightModuleSpec { rank: self.rank, gram: self.gram.clone() }.build()
    }

    pub fn map_matrix(&self) -> Result<DMatrix<f64>> {
        let m = matrix_from_rows(&self.map)?;
        if m.nrows() != 16 || m.ncols() != 4 * self.rank {
            return Err(Error::InvalidInput(format!(
                "map must be 16x{}, got {}x{}",
                4 * self.rank,
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(m)
    }
}

/// Input for the component decomposition: an algebra and a realified
/// element matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecomposeSpec {
    pub algebra: AlgebraSpec,
    pub element: MatrixRows,
}

/// Output of the Gelfand computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GelfandOutput {
    pub points: usize,
    /// Character values of the input generators, one row per point.
    pub characters: Vec<Vec<f64>>,
}

/// Hilbertian norm declaration with its form matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormSpec {
    pub kind: String,
    pub form: MatrixRows,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Basis;

    #[test]
    fn bimodule_spec_round_trip() {
        let x = Bimodule::htensor_right();
        let spec = BimoduleSpec::from_bimodule(&x);
        let json = serde_json::to_string(&spec).unwrap();
        let parsed: BimoduleSpec = serde_json::from_str(&json).unwrap();
        let rebuilt = parsed.build().unwrap();
        assert_eq!(rebuilt.dim(), 16);
        for e in [Basis::I, Basis::J] {
            assert!((rebuilt.left_basis(e) - x.left_basis(e)).norm() < 1e-14);
        }
    }

    #[test]
    fn right_module_spec_round_trip() {
        let gram = vec![
            Quaternion::real(2.0),
            Quaternion::I,
            -Quaternion::I,
            Quaternion::real(2.0),
        ];
        let m = RightModule::new(2, gram).unwrap();
        let spec = RightModuleSpec::from_module(&m);
        let json = serde_json::to_string(&spec).unwrap();
        let parsed: RightModuleSpec = serde_json::from_str(&json).unwrap();
        let rebuilt = parsed.build().unwrap();
        for p in 0..2 {
            for q in 0..2 {
                assert!(rebuilt.gram(p, q).approx_eq(m.gram(p, q), 1e-14));
            }
        }
    }

    #[test]
    fn algebra_spec_round_trip() {
        let a = StarAlgebra::diagonal(3);
        let spec = AlgebraSpec::from_algebra(&a);
        let rebuilt = spec.build().unwrap();
        assert_eq!(rebuilt.core_dim(), 3);
    }

    #[test]
    fn malformed_matrices_rejected() {
        assert!(matrix_from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
        assert!(matrix_from_rows(&[]).is_err());
        assert!(tensor_from_rows(&[vec![1.0; 4]; 3]).is_err());
    }
}

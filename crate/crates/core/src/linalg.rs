//! Dense decompositions on nalgebra matrices, computed with faer.

use faer::{Mat, Side};
use nalgebra::DMatrix;

use crate::error::{Error, Result};

fn to_faer(a: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// Eigenvalues ascending, eigenvectors as matching columns.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    if a.nrows() == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let eig = to_faer(a)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Data(format!("eigendecomposition failed: {e:?}")))?;
    let (s, u) = (eig.S(), eig.U());
    let n = a.nrows();
    let values = (0..n).map(|k| s[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, k| u[(i, k)]);
    Ok((values, vectors))
}

/// Eigenvalues ascending.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut v = to_faer(a)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Data(format!("eigendecomposition failed: {e:?}")))?;
    v.sort_by(f64::total_cmp);
    Ok(v)
}

pub fn singular_values(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(Vec::new());
    }
    to_faer(a)
        .singular_values()
        .map_err(|e| Error::Data(format!("SVD failed: {e:?}")))
}

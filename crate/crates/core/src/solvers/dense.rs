use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hamiltonian::LinearOperator;
use crate::linalg::{symmetric_eigen, symmetric_eigenvalues};

/// Largest dimension handed to the dense eigensolver.
pub const DENSE_MAX_DIM: usize = 1 << 14;

pub struct DenseEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` belongs to `values[k]`.
    pub vectors: DMatrix<f64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim > DENSE_MAX_DIM {
        return Err(Error::Capacity {
            what: "dense diagonalization",
            needed: dim as u64,
            cap: DENSE_MAX_DIM as u64,
        });
    }
    Ok(())
}

/// All eigenvalues, ascending.
pub fn dense_spectrum(op: &dyn LinearOperator) -> Result<Vec<f64>> {
    check_dim(op.dim())?;
    symmetric_eigenvalues(&op.to_dense())
}

/// Eigenvalues and eigenvectors, ascending.
pub fn dense_eigen(op: &dyn LinearOperator) -> Result<DenseEigen> {
    check_dim(op.dim())?;
    let (values, vectors) = symmetric_eigen(&op.to_dense())?;
    Ok(DenseEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;
    use crate::hamiltonian::{build, CouplingParams};

    #[test]
    fn zero_operator() {
        let z = DMatrix::<f64>::zeros(4, 4);
        assert_eq!(dense_spectrum(&z).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn chain2() {
        let p = CouplingParams { jz: 1.0, pauli: true, ..Default::default() };
        let op = build(&Graph::chain(2), &p).unwrap();
        let ev = dense_spectrum(&op).unwrap();
        for (a, b) in ev.iter().zip([-2.0, -2.0, 2.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenpairs_reconstruct() {
        let p = CouplingParams { jx: 0.3, jy: -0.8, jz: 1.1, wx: 0.5, pauli: true, ..Default::default() };
        let op = build(&Graph::complete(5), &p).unwrap();
        let h = op.to_dense();
        let norm = h.norm();
        let e = dense_eigen(&op).unwrap();
        for k in 0..e.values.len() {
            let v = e.vectors.column(k);
            let r = (&h * v - v * e.values[k]).norm();
            assert!(r <= 1e-9 * norm);
        }
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn capacity() {
        struct Big;
        impl LinearOperator for Big {
            fn dim(&self) -> usize {
                DENSE_MAX_DIM + 1
            }
            fn apply(&self, _: &[f64], _: &mut [f64]) {}
        }
        assert!(matches!(dense_spectrum(&Big), Err(Error::Capacity { .. })));
    }
}

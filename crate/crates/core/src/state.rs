//! Real state vectors over a full or sector basis.

use std::sync::Arc;

use crate::error::{param, Error, Result};
use crate::hamiltonian::{Basis, SectorBasis};

#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: Vec<f64>,
    basis: Basis,
}

impl StateVector {
    pub fn new(amplitudes: Vec<f64>, basis: Basis) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return param(format!(
                "{} amplitudes for a basis of dimension {}",
                amplitudes.len(),
                basis.dim()
            ));
        }
        Ok(StateVector { amplitudes, basis })
    }

    /// Spin-1/2 state on the full basis.
    pub fn full(l: usize, amplitudes: Vec<f64>) -> Result<Self> {
        Self::new(amplitudes, Basis::Full { l, two_s: 1 })
    }

    /// Computational basis state; bit `v` of `code` set means vertex `v` up.
    pub fn product(l: usize, code: u64) -> Self {
        let mut amps = vec![0.0; 1 << l];
        amps[code as usize] = 1.0;
        StateVector {
            amplitudes: amps,
            basis: Basis::Full { l, two_s: 1 },
        }
    }

    /// Dicke state `|L/2, M⟩`: equal superposition of the M sector.
    pub fn dicke(l: usize, m: i64) -> Result<Self> {
        let b = SectorBasis::new(l, 1, m)?;
        let amp = 1.0 / (b.len() as f64).sqrt();
        Ok(StateVector {
            amplitudes: vec![amp; b.len()],
            basis: Basis::Sector(Arc::new(b)),
        })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn l(&self) -> usize {
        self.basis.l()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Data("cannot normalize a zero vector".into()));
        }
        self.amplitudes.iter_mut().for_each(|a| *a /= n);
        Ok(self)
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::Data(format!("state has norm {n}, expected 1")));
        }
        Ok(())
    }

    /// Scatter into the full product basis.
    pub fn to_full(&self) -> StateVector {
        match &self.basis {
            Basis::Full { .. } => self.clone(),
            Basis::Sector(b) => {
                let dim = (b.two_s as usize + 1).pow(b.l as u32);
                let mut amps = vec![0.0; dim];
                for (&code, &a) in b.states().iter().zip(&self.amplitudes) {
                    amps[code as usize] = a;
                }
                StateVector {
                    amplitudes: amps,
                    basis: Basis::Full {
                        l: b.l,
                        two_s: b.two_s,
                    },
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dicke_embeds() {
        let d = StateVector::dicke(4, 0).unwrap();
        assert!((d.norm() - 1.0).abs() < 1e-15);
        let f = d.to_full();
        assert_eq!(f.amplitudes().len(), 16);
        let nonzero: Vec<usize> = (0..16).filter(|&i| f.amplitudes()[i] != 0.0).collect();
        assert_eq!(nonzero, vec![3, 5, 6, 9, 10, 12]);
    }

    #[test]
    fn normalization_errors() {
        assert!(StateVector::full(1, vec![0.0, 0.0]).unwrap().normalized().is_err());
        assert!(StateVector::full(1, vec![1.0]).is_err());
        let s = StateVector::full(1, vec![3.0, 4.0]).unwrap().normalized().unwrap();
        assert!((s.amplitudes()[1] - 0.8).abs() < 1e-15);
    }
}

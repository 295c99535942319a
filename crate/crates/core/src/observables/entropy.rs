use nalgebra::DMatrix;

use super::CorrelationMatrix;
use crate::error::{param, Error, Result};
use crate::linalg::singular_values;
use crate::state::StateVector;

pub const DEFAULT_BINS: usize = 256;

/// Von Neumann entropy in bits between the first `k` positions of
/// `ordering` and the rest.
pub fn entanglement_entropy(state: &StateVector, k: usize, ordering: &[usize]) -> Result<f64> {
    if state.basis().two_s() != 1 {
        return param("entanglement entropy is implemented for spin-1/2 only");
    }
    state.require_normalized()?;
    let l = state.l();
    if k == 0 || k >= l {
        return param(format!("cut position {k} must lie in 1..{l}"));
    }
    if ordering.len() != l || {
        let mut s = ordering.to_vec();
        s.sort_unstable();
        s != (0..l).collect::<Vec<_>>()
    } {
        return param("ordering is not a permutation of the sites");
    }
    let full = state.to_full();
    let amps = full.amplitudes();
    let (left, right) = ordering.split_at(k);
    let mut m = DMatrix::zeros(1 << k, 1 << (l - k));
    for (code, &a) in amps.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let bits = |sites: &[usize]| {
            sites
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &v)| acc | (((code >> v) & 1) << i))
        };
        m[(bits(left), bits(right))] = a;
    }
    let entropy = singular_values(&m)?
        .into_iter()
        .map(|s| s * s)
        .filter(|&p| p > 1e-300)
        .map(|p| -p * p.log2())
        .sum::<f64>();
    Ok(entropy.max(0.0))
}

/// Bin of `x ∈ [−1, 1]` among `n` equal bins; the last bin is closed.
fn bin_of(x: f64, n: usize) -> Result<usize> {
    const SLACK: f64 = 1e-9;
    if !(-1.0 - SLACK..=1.0 + SLACK).contains(&x) {
        return Err(Error::Data(format!("correlation {x} outside [-1, 1]")));
    }
    let pos = (x + 1.0) * n as f64 / 2.0;
    // Values a hair below an edge from roundoff belong to the upper bin.
    let snapped = if (pos - pos.round()).abs() < SLACK * n as f64 {
        pos.round()
    } else {
        pos
    };
    Ok((snapped.max(0.0) as usize).min(n - 1))
}

/// Shannon entropy in bits of the histogram of `values` over `n_bins`
/// equal bins on `[−1, 1]`.
pub fn shannon_entropy_of(values: &[f64], n_bins: usize) -> Result<f64> {
    if n_bins < 2 {
        return param("need at least two bins");
    }
    if values.is_empty() {
        return Ok(0.0);
    }
    let mut counts = vec![0usize; n_bins];
    for &x in values {
        counts[bin_of(x, n_bins)?] += 1;
    }
    let n = values.len() as f64;
    Ok(counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0))
}

/// Shannon entropy of the off-diagonal part of a correlation image.
pub fn shannon_entropy(corr: &CorrelationMatrix, n_bins: usize) -> Result<f64> {
    shannon_entropy_of(&corr.off_diagonal(), n_bins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::{corr_matrix, Axis};
    use crate::rng::RngSeed;
    use rand::Rng as _;

    #[test]
    fn product_and_singlet() {
        let s = StateVector::product(4, 0b0110);
        assert!(entanglement_entropy(&s, 2, &[0, 1, 2, 3]).unwrap().abs() < 1e-12);
        let r = 0.5f64.sqrt();
        let singlet = StateVector::full(2, vec![0.0, r, -r, 0.0]).unwrap();
        assert!((entanglement_entropy(&singlet, 1, &[0, 1]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_pairs_depend_on_ordering() {
        // Sites (0,2) and (1,3) form Bell pairs.
        let mut amps = vec![0.0; 16];
        for c in [0b0000usize, 0b0101, 0b1010, 0b1111] {
            amps[c] = 0.5;
        }
        let s = StateVector::full(4, amps).unwrap();
        assert!((entanglement_entropy(&s, 2, &[0, 1, 2, 3]).unwrap() - 2.0).abs() < 1e-12);
        assert!(entanglement_entropy(&s, 2, &[0, 2, 1, 3]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn complement_symmetry_and_bound() {
        let mut rng = RngSeed::new(9, 0).rng();
        for _ in 0..20 {
            let l = 6;
            let amps: Vec<f64> = (0..1 << l).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let s = StateVector::full(l, amps).unwrap().normalized().unwrap();
            let order: Vec<usize> = (0..l).collect();
            let rev: Vec<usize> = order.iter().rev().copied().collect();
            for k in 1..l {
                let a = entanglement_entropy(&s, k, &order).unwrap();
                let b = entanglement_entropy(&s, l - k, &rev).unwrap();
                assert!((a - b).abs() < 1e-10);
                assert!(a <= k.min(l - k) as f64 + 1e-12);
            }
        }
    }

    #[test]
    fn bad_cut() {
        let s = StateVector::product(3, 0);
        assert!(entanglement_entropy(&s, 0, &[0, 1, 2]).is_err());
        assert!(entanglement_entropy(&s, 3, &[0, 1, 2]).is_err());
    }

    #[test]
    fn shannon_basics() {
        assert_eq!(shannon_entropy_of(&[0.3; 10], 256).unwrap(), 0.0);
        assert!((shannon_entropy_of(&[-0.9, -0.9, 0.9, 0.9], 256).unwrap() - 1.0).abs() < 1e-15);
        assert!(shannon_entropy_of(&[1.1], 256).is_err());
        assert_eq!(bin_of(-1.0, 256).unwrap(), 0);
        assert_eq!(bin_of(1.0, 256).unwrap(), 255);
        assert_eq!(bin_of(1.0 + 1e-12, 256).unwrap(), 255);
        assert_eq!(bin_of(0.0, 4).unwrap(), 2);
        assert_eq!(bin_of(-1e-15, 4).unwrap(), 2);
    }

    #[test]
    fn shannon_bound() {
        let mut rng = RngSeed::new(10, 0).rng();
        for _ in 0..100 {
            let v: Vec<f64> = (0..2000).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            assert!(shannon_entropy_of(&v, 256).unwrap() <= 8.0);
        }
    }

    #[test]
    fn dicke_x_image_has_zero_entropy() {
        let d = StateVector::dicke(8, 0).unwrap();
        let xx = corr_matrix(&d, Axis::X).unwrap();
        assert_eq!(shannon_entropy(&xx, 256).unwrap(), 0.0);
    }
}

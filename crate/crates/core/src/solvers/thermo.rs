use crate::error::{param, Result};

/// `−(1/(Lβ)) ln Σ_i w_i e^{−βλ_i}` over `(λ, w)` pairs.
pub fn free_energy_density_weighted(levels: &[(f64, f64)], l: usize, beta: f64) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return param(format!("beta must be positive and finite, got {beta}"));
    }
    if l == 0 {
        return param("L must be positive");
    }
    let levels: Vec<(f64, f64)> = levels.iter().copied().filter(|&(_, w)| w > 0.0).collect();
    if levels.is_empty() {
        return param("empty spectrum");
    }
    let lmin = levels.iter().map(|&(x, _)| x).fold(f64::INFINITY, f64::min);
    let sum: f64 = levels
        .iter()
        .map(|&(x, w)| w * (-beta * (x - lmin)).exp())
        .sum();
    Ok((lmin - sum.ln() / beta) / l as f64)
}

/// Free-energy density of a complete eigenvalue list.
pub fn free_energy_density(eigenvalues: &[f64], l: usize, beta: f64) -> Result<f64> {
    let levels: Vec<(f64, f64)> = eigenvalues.iter().map(|&x| (x, 1.0)).collect();
    free_energy_density_weighted(&levels, l, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_spin() {
        let f = free_energy_density(&[-1.0, 1.0], 1, 1.0).unwrap();
        assert!((f + (2.0 * 1f64.cosh()).ln()).abs() < 1e-12);
        assert!((f + 1.126_928_011_042_972_5).abs() < 1e-12);
    }

    #[test]
    fn ground_dominance() {
        let f = free_energy_density(&[0.0, 5.0], 1, 1e4).unwrap();
        assert!(f.abs() < 1e-12);
    }

    #[test]
    fn no_overflow() {
        let f = free_energy_density(&[-1e4, -1e4 + 1.0], 2, 100.0).unwrap();
        assert!((f + 5e3).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonpositive_beta() {
        assert!(free_energy_density(&[0.0], 1, 0.0).is_err());
        assert!(free_energy_density(&[0.0], 1, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn shift_moves_f_by_c_over_l(
            ev in prop::collection::vec(-10.0f64..10.0, 1..20),
            c in -5.0f64..5.0,
            l in 1usize..6,
            beta in 0.01f64..50.0,
        ) {
            let f0 = free_energy_density(&ev, l, beta).unwrap();
            let shifted: Vec<f64> = ev.iter().map(|x| x + c).collect();
            let f1 = free_energy_density(&shifted, l, beta).unwrap();
            prop_assert!((f1 - f0 - c / l as f64).abs() < 1e-9);
        }

        #[test]
        fn monotone_and_bounded(
            ev in prop::collection::vec(-10.0f64..10.0, 1..20),
            l in 1usize..6,
        ) {
            let lmin = ev.iter().copied().fold(f64::INFINITY, f64::min);
            let mut prev = f64::NEG_INFINITY;
            for beta in [0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0] {
                let f = free_energy_density(&ev, l, beta).unwrap();
                prop_assert!(f >= prev - 1e-12);
                prop_assert!(f <= lmin / l as f64 + 1e-12);
                prev = f;
            }
        }
    }
}

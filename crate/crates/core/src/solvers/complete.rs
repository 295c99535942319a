use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    /// Collective spin label (integer for even L).
    pub s: u32,
    /// Magnetization in Pauli units, `−L..=L` in steps of 2.
    pub m: i64,
    pub lambda: f64,
    pub degeneracy: u128,
}

/// Exact binomial coefficient; zero outside `0..=n`.
pub fn binomial(n: u32, k: i64) -> u128 {
    if k < 0 || k > i64::from(n) {
        return 0;
    }
    let k = (k as u32).min(n - k as u32);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * u128::from(n - i) / u128::from(i + 1);
    }
    c
}

/// Multiplicity of total spin `S` among `L` spin-1/2 sites, per value of M.
pub fn spin_multiplicity(l: u32, s: u32) -> u128 {
    let k = i64::from(l / 2) - i64::from(s);
    binomial(l, k) - binomial(l, k - 1)
}

/// Eigenvalue of the complete-graph XXZ Hamiltonian on `|S, M⟩`.
pub fn complete_xxz_eigenvalue(l: u32, j: f64, delta: f64, s: u32, m: i64) -> f64 {
    let lf = f64::from(l);
    let sf = f64::from(s);
    let m2 = (m * m) as f64;
    -j / (lf - 1.0) * (4.0 * sf * (sf + 1.0) - m2)
        + 2.0 * j * lf / (lf - 1.0)
        + delta / (lf - 1.0) * (m2 - lf)
}

/// Every `(S, M)` level of the XXZ model on the complete graph, ordered by
/// M then S.
pub fn complete_xxz_spectrum(l: usize, j: f64, delta: f64) -> Result<Vec<SpectrumEntry>> {
    if l < 2 || l % 2 != 0 {
        return param(format!("complete-graph spectrum needs even L >= 2, got {l}"));
    }
    if l > 120 {
        return param("L too large for exact degeneracy counts");
    }
    let l32 = l as u32;
    let mut out = Vec::new();
    for m in (-(l as i64)..=l as i64).step_by(2) {
        let s_min = (m.unsigned_abs() / 2) as u32;
        for s in s_min..=l32 / 2 {
            out.push(SpectrumEntry {
                s,
                m,
                lambda: complete_xxz_eigenvalue(l32, j, delta, s, m),
                degeneracy: spin_multiplicity(l32, s),
            });
        }
    }
    Ok(out)
}

pub fn write_spectrum_csv(entries: &[SpectrumEntry], mut w: impl Write) -> Result<()> {
    writeln!(w, "S,M,lambda,degeneracy")?;
    for e in entries {
        writeln!(
            w,
            "{},{},{},{}",
            e.s,
            e.m,
            crate::format::sig12(e.lambda),
            e.degeneracy
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDensity {
    pub l: usize,
    pub delta: f64,
    /// `n_bins + 1` edges over energy density.
    pub edges: Vec<f64>,
    pub mass: Vec<f64>,
}

/// Degeneracy-weighted histogram of `λ_{S,M} / L`.
pub fn spectral_density(l: usize, j: f64, delta: f64, n_bins: usize) -> Result<SpectralDensity> {
    if n_bins == 0 {
        return param("n_bins must be positive");
    }
    if l > 64 {
        return param(format!("spectral density supports L <= 64, got {l}"));
    }
    let entries = complete_xxz_spectrum(l, j, delta)?;
    let lf = l as f64;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for e in &entries {
        lo = lo.min(e.lambda / lf);
        hi = hi.max(e.lambda / lf);
    }
    if hi - lo < 1e-12 {
        lo -= 0.5;
        hi += 0.5;
    }
    let width = (hi - lo) / n_bins as f64;
    let edges: Vec<f64> = (0..=n_bins).map(|i| lo + width * i as f64).collect();
    let mut counts = vec![0u128; n_bins];
    for e in &entries {
        let bin = (((e.lambda / lf - lo) / width) as usize).min(n_bins - 1);
        counts[bin] += e.degeneracy;
    }
    let total: u128 = counts.iter().sum();
    let mass = counts
        .iter()
        .map(|&c| (c as f64) / (total as f64))
        .collect();
    Ok(SpectralDensity {
        l,
        delta,
        edges,
        mass,
    })
}

/// Fraction of all `2^L` eigenstates with `|λ/L| < width`.
pub fn mass_within(l: usize, j: f64, delta: f64, width: f64) -> Result<f64> {
    let entries = complete_xxz_spectrum(l, j, delta)?;
    let lf = l as f64;
    let (mut inside, mut total) = (0u128, 0u128);
    for e in entries {
        total += e.degeneracy;
        if (e.lambda / lf).abs() < width {
            inside += e.degeneracy;
        }
    }
    Ok(inside as f64 / total as f64)
}

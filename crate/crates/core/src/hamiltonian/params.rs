use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Couplings and fields of the graph Hamiltonian
/// `(L/N_E) Σ_edges Σ_α J_α s^α s^α + Σ_v w·s_v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingParams {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub wx: f64,
    pub wy: f64,
    pub wz: f64,
    /// Extra z field whose strength is `wz_per_site / L`, resolved when the
    /// operator is built for a concrete L.
    #[serde(default)]
    pub wz_per_site: f64,
    /// Twice the spin magnitude: 1 for spin-1/2, up to 4 for spin-2.
    pub two_s: u8,
    /// Use σ = 2s operators instead of s.
    pub pauli: bool,
}

impl Default for CouplingParams {
    fn default() -> Self {
        CouplingParams {
            jx: 0.0,
            jy: 0.0,
            jz: 0.0,
            wx: 0.0,
            wy: 0.0,
            wz: 0.0,
            wz_per_site: 0.0,
            two_s: 1,
            pauli: false,
        }
    }
}

impl CouplingParams {
    pub fn validate(&self) -> Result<()> {
        if !(1..=4).contains(&self.two_s) {
            return param(format!("spin s = {}/2 not in {{1/2, 1, 3/2, 2}}", self.two_s));
        }
        let all = [
            self.jx,
            self.jy,
            self.jz,
            self.wx,
            self.wy,
            self.wz,
            self.wz_per_site,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return param("couplings must be finite");
        }
        if self.wy != 0.0 {
            // s^y has purely imaginary matrix elements; everything else here
            // is real.
            return param("a y field needs complex arithmetic and is not supported");
        }
        Ok(())
    }

    pub fn spin(&self) -> f64 {
        f64::from(self.two_s) / 2.0
    }

    /// True when the operator commutes with total S^z.
    pub fn conserves_sz(&self) -> bool {
        self.jx == self.jy && self.wx == 0.0 && self.wy == 0.0
    }

    pub fn wz_at(&self, l: usize) -> f64 {
        self.wz + self.wz_per_site / l as f64
    }

    /// Scale every coupling and field by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        CouplingParams {
            jx: self.jx * factor,
            jy: self.jy * factor,
            jz: self.jz * factor,
            wx: self.wx * factor,
            wy: self.wy * factor,
            wz: self.wz * factor,
            wz_per_site: self.wz_per_site * factor,
            ..*self
        }
    }
}

/// XXZ point: `J_x = J_y = −J`, `J_z = Δ`, Pauli operators, spin-1/2.
pub fn preset_xxz(j: f64, delta: f64) -> CouplingParams {
    CouplingParams {
        jx: -j,
        jy: -j,
        jz: delta,
        pauli: true,
        ..CouplingParams::default()
    }
}

/// Transverse-field Ising point: `J_z = −1`, `w_x = h`. With
/// `break_symmetry` a `Σ σ^z / (200 L)` term is added.
pub fn preset_tfi(h: f64, break_symmetry: bool) -> CouplingParams {
    CouplingParams {
        jz: -1.0,
        wx: h,
        wz_per_site: if break_symmetry { 1.0 / 200.0 } else { 0.0 },
        pauli: true,
        ..CouplingParams::default()
    }
}

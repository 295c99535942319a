use serde::{Deserialize, Serialize};

use super::{corr_matrix, entanglement_entropy, magnetization, order_params_from, shannon_entropy, Axis};
use crate::error::Result;
use crate::graphs::Graph;
use crate::solvers::GroundStateResult;

/// Everything measured on one ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservablesRecord {
    pub energy_density: f64,
    pub c_afm: f64,
    pub c_xy: f64,
    pub mz_density: f64,
    pub mx_density: f64,
    pub ee_bits: f64,
    pub shannon_zz: f64,
    pub shannon_xx: f64,
    pub shannon_yy: f64,
    pub ground_m: Option<i64>,
    pub degenerate: bool,
}

impl ObservablesRecord {
    /// Measures `gs` on graph `g`; the entropy cut sits at `L/2` under
    /// `ordering`.
    pub fn measure(
        gs: &GroundStateResult,
        g: &Graph,
        ordering: &[usize],
        n_bins: usize,
        per_pair_xy: bool,
    ) -> Result<Self> {
        let state = &gs.state;
        let l = g.num_vertices();
        let zz = corr_matrix(state, Axis::Z)?;
        let xx = corr_matrix(state, Axis::X)?;
        let yy = corr_matrix(state, Axis::Y)?;
        let op = order_params_from(&zz, &xx, &yy, g, per_pair_xy)?;
        Ok(ObservablesRecord {
            energy_density: gs.energy / l as f64,
            c_afm: op.c_afm,
            c_xy: op.c_xy,
            mz_density: magnetization(state, Axis::Z)?,
            mx_density: magnetization(state, Axis::X)?,
            ee_bits: if l >= 2 {
                entanglement_entropy(state, l / 2, ordering)?
            } else {
                0.0
            },
            shannon_zz: shannon_entropy(&zz, n_bins)?,
            shannon_xx: shannon_entropy(&xx, n_bins)?,
            shannon_yy: shannon_entropy(&yy, n_bins)?,
            ground_m: gs.sector,
            degenerate: gs.degenerate,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, EnsembleSpec};
    use crate::hamiltonian::{build, preset_xxz};
    use crate::rng::RngSeed;
    use crate::solvers::{ground_state, SolverOptions};

    #[test]
    fn xx_equals_yy_in_xxz_ground_states() {
        for t in 0..10 {
            let g = generate(&EnsembleSpec::ErdosRenyi { p: 0.5 }, 8, RngSeed::new(t, 0)).unwrap();
            if g.num_edges() == 0 {
                continue;
            }
            let op = build(&g, &preset_xxz(1.0, 0.7)).unwrap();
            let gs = ground_state(&op, &SolverOptions::default(), RngSeed::new(t, 1)).unwrap();
            let xx = corr_matrix(&gs.state, Axis::X).unwrap();
            let yy = corr_matrix(&gs.state, Axis::Y).unwrap();
            for i in 0..8 {
                for j in 0..8 {
                    assert!((xx.at(i, j) - yy.at(i, j)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn record_ranges() {
        let g = generate(&EnsembleSpec::ErdosRenyi { p: 0.5 }, 8, RngSeed::new(3, 0)).unwrap();
        let op = build(&g, &preset_xxz(1.0, 1.0)).unwrap();
        let gs = ground_state(&op, &SolverOptions::default(), RngSeed::new(0, 0)).unwrap();
        let order: Vec<usize> = (0..8).collect();
        let r = ObservablesRecord::measure(&gs, &g, &order, 256, false).unwrap();
        assert!(r.ee_bits >= 0.0 && r.ee_bits <= 4.0);
        for h in [r.shannon_zz, r.shannon_xx, r.shannon_yy] {
            assert!((0.0..=8.0).contains(&h));
        }
        assert_eq!(r.mz_density, r.ground_m.unwrap() as f64 / 8.0);
        assert!((r.energy_density - gs.energy / 8.0).abs() < 1e-15);
    }
}

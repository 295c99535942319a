//! Browser bindings for three small interactive views: the complete-graph
//! spectral density, the classical cut-graph phase curve and a cut-graph
//! correlation image. Each export returns a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use graphspin::graphs::{site_ordering, OrderingKind};
use graphspin::observables::{corr_matrix, order_params, Axis};
use graphspin::solvers::{critical_point, ground_state, semiclassical_pair_minimize, spectral_density, SolverOptions};
use graphspin::{build, generate, preset_xxz, EnsembleSpec, RngSeed};

/// Largest cut graph the page will diagonalize.
pub const MAX_IMAGE_L: usize = 14;

pub fn density_json(l: usize, j: f64, delta: f64, bins: usize) -> Result<String, String> {
    let d = spectral_density(l, j, delta, bins).map_err(|e| e.to_string())?;
    Ok(json!({ "L": d.l, "delta": d.delta, "edges": d.edges, "mass": d.mass }).to_string())
}

pub fn phase_curve_json(lambda: f64, p1: f64, p2: f64, j: f64, delta_max: f64, n: usize) -> Result<String, String> {
    EnsembleSpec::Cut { lambda, p1, p2 }.validate(2).map_err(|e| e.to_string())?;
    if n < 2 || !(delta_max > 0.0) {
        return Err("need at least two points and a positive delta range".into());
    }
    let points: Vec<_> = (0..n)
        .map(|i| {
            let delta = delta_max * i as f64 / (n - 1) as f64;
            let c = semiclassical_pair_minimize(lambda, p1, p2, j, delta, 0.5);
            json!({
                "delta": delta,
                "energy_density": c.energy_density,
                "phase": c.phase,
                "nz_a": c.n_a[2],
                "nz_b": c.n_b[2],
            })
        })
        .collect();
    let dc = critical_point(lambda, p1, p2, j);
    Ok(json!({
        "critical_point": if dc.is_finite() { Some(dc) } else { None },
        "points": points,
    })
    .to_string())
}

#[allow(clippy::too_many_arguments)]
pub fn corr_image_json(
    l: usize,
    lambda: f64,
    p1: f64,
    p2: f64,
    delta: f64,
    seed: u64,
    axis: &str,
) -> Result<String, String> {
    if l > MAX_IMAGE_L {
        return Err(format!("L = {l} is too large for the browser, use L <= {MAX_IMAGE_L}"));
    }
    let axis = match axis {
        "x" => Axis::X,
        "y" => Axis::Y,
        "z" => Axis::Z,
        other => return Err(format!("unknown axis {other:?}")),
    };
    let run = || -> graphspin::Result<String> {
        let seed = RngSeed::new(seed, 0);
        let g = generate(&EnsembleSpec::Cut { lambda, p1, p2 }, l, seed)?;
        let gs = ground_state(&build(&g, &preset_xxz(1.0, delta))?, &SolverOptions::default(), seed.child(1))?;
        let order = site_ordering(&g, OrderingKind::CutBlocks)?;
        let corr = corr_matrix(&gs.state, axis)?.reordered(&order)?;
        let op = order_params(&gs.state, &g, false)?;
        let values: Vec<f64> = (0..l).flat_map(|i| (0..l).map(move |j| (i, j))).map(|(i, j)| corr.at(i, j)).collect();
        Ok(json!({
            "L": l,
            "values": values,
            "n_edges": g.num_edges(),
            "energy_density": gs.energy / l as f64,
            "c_afm": op.c_afm,
            "c_xy": op.c_xy,
        })
        .to_string())
    };
    run().map_err(|e| e.to_string())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn density(l: usize, j: f64, delta: f64, bins: usize) -> Result<String, JsError> {
    js(density_json(l, j, delta, bins))
}

#[wasm_bindgen]
pub fn phase_curve(lambda: f64, p1: f64, p2: f64, j: f64, delta_max: f64, n: usize) -> Result<String, JsError> {
    js(phase_curve_json(lambda, p1, p2, j, delta_max, n))
}

#[wasm_bindgen]
pub fn corr_image(l: usize, lambda: f64, p1: f64, p2: f64, delta: f64, seed: u64, axis: &str) -> Result<String, JsError> {
    js(corr_image_json(l, lambda, p1, p2, delta, seed, axis))
}

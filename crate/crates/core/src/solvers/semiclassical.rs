use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalPhase {
    /// Both spins in the x-y plane, aligned.
    Xy,
    /// Both spins along z, anti-aligned.
    Afm,
    /// Anything else.
    Canted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalPairConfig {
    pub n_a: [f64; 3],
    pub n_b: [f64; 3],
    /// Classical spin lengths per site, `sλ` and `s(1−λ)`.
    pub magnitude_a: f64,
    pub magnitude_b: f64,
    pub energy_density: f64,
    pub phase: ClassicalPhase,
    /// Another configuration of a different phase, or a continuous family,
    /// reaches the same energy.
    pub degenerate: bool,
}

/// Energy density of two classical collective spins at polar angles
/// `(θ_A, θ_B)` with aligned azimuths, for `J_x = J_y = −J`, `J_z = Δ`.
#[derive(Debug, Clone, Copy)]
struct PairEnergy {
    wa: f64,
    wb: f64,
    wab: f64,
    j: f64,
    delta: f64,
    scale: f64,
}

impl PairEnergy {
    fn new(lambda: f64, p1: f64, p2: f64, j: f64, delta: f64, s: f64, pauli: bool) -> Self {
        let m = s * if pauli { 2.0 } else { 1.0 };
        let r = lambda * (1.0 - lambda);
        let wa = p1 * lambda * lambda;
        let wb = p1 * (1.0 - lambda) * (1.0 - lambda);
        let wab = 2.0 * p2 * r;
        let norm = wa + wb + wab;
        let scale = if norm > 0.0 { m * m / norm } else { 0.0 };
        PairEnergy {
            wa,
            wb,
            wab,
            j,
            delta,
            scale,
        }
    }

    fn eval(&self, ta: f64, tb: f64) -> f64 {
        let (sa, ca) = ta.sin_cos();
        let (sb, cb) = tb.sin_cos();
        let inplane = self.wa * sa * sa + self.wb * sb * sb + self.wab * sa * sb;
        let axial = self.wa * ca * ca + self.wb * cb * cb + self.wab * ca * cb;
        self.scale * (-self.j * inplane + self.delta * axial)
    }

    fn magnitude(&self) -> f64 {
        self.scale * (self.j.abs() + self.delta.abs()) * (self.wa + self.wb + self.wab)
    }
}

const GRID: usize = 64;

fn unit(theta: f64) -> [f64; 3] {
    let (s, c) = theta.sin_cos();
    [s, 0.0, c]
}

/// Global minimum of the classical two-spin energy of the effective pair
/// Hamiltonian for the XXZ couplings `J_x = J_y = −J`, `J_z = Δ`.
///
/// The azimuths are aligned (optimal whenever `J p2 ≥ 0`), leaving the two
/// polar angles, which are searched on a grid and refined by compass search.
pub fn semiclassical_pair_minimize(
    lambda: f64,
    p1: f64,
    p2: f64,
    j: f64,
    delta: f64,
    s: f64,
) -> ClassicalPairConfig {
    let e = PairEnergy::new(lambda, p1, p2, j, delta, s, true);
    let pi = std::f64::consts::PI;

    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=GRID {
        for k in 0..=GRID {
            let (ta, tb) = (pi * i as f64 / GRID as f64, pi * k as f64 / GRID as f64);
            let v = e.eval(ta, tb);
            if v < best.0 {
                best = (v, ta, tb);
            }
        }
    }
    let (mut v, mut ta, mut tb) = best;
    let mut step = pi / GRID as f64;
    while step > 1e-13 {
        let mut moved = false;
        for (da, db) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (na, nb) = ((ta + da).clamp(0.0, pi), (tb + db).clamp(0.0, pi));
            let nv = e.eval(na, nb);
            if nv < v {
                (v, ta, tb) = (nv, na, nb);
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }

    // Exact candidates win over numerically equal descent points.
    let tie = 1e-13 * e.magnitude().max(1e-300);
    let h = pi / 2.0;
    let candidates = [(h, h), (0.0, pi), (pi, 0.0)];
    for &(ca, cb) in &candidates {
        let cv = e.eval(ca, cb);
        if cv <= v + tie {
            (v, ta, tb) = (cv, ca, cb);
            break;
        }
    }

    let xy = e.eval(h, h);
    let afm = e.eval(0.0, pi);
    let phase = classify(ta, tb);
    let degenerate = p2 == 0.0
        || match phase {
            ClassicalPhase::Xy => (afm - v).abs() <= tie,
            ClassicalPhase::Afm => (xy - v).abs() <= tie,
            ClassicalPhase::Canted => true,
        };
    ClassicalPairConfig {
        n_a: unit(ta),
        n_b: unit(tb),
        magnitude_a: s * lambda,
        magnitude_b: s * (1.0 - lambda),
        energy_density: v,
        phase,
        degenerate,
    }
}

fn classify(ta: f64, tb: f64) -> ClassicalPhase {
    let eps = 1e-6;
    let h = std::f64::consts::FRAC_PI_2;
    if (ta - h).abs() < eps && (tb - h).abs() < eps {
        ClassicalPhase::Xy
    } else if ta.sin().abs() < eps && tb.sin().abs() < eps && ta.cos() * tb.cos() < 0.0 {
        ClassicalPhase::Afm
    } else {
        ClassicalPhase::Canted
    }
}

/// `Δ_c = J [p1 q + 2 p2 r] / [2 p2 r − p1 q]` with `q = λ² + (1−λ)²`,
/// `r = λ(1−λ)`; infinite when the denominator is not positive.
pub fn critical_point(lambda: f64, p1: f64, p2: f64, j: f64) -> f64 {
    let q = lambda * lambda + (1.0 - lambda) * (1.0 - lambda);
    let r = lambda * (1.0 - lambda);
    let den = 2.0 * p2 * r - p1 * q;
    if den <= 0.0 {
        return f64::INFINITY;
    }
    j * (p1 * q + 2.0 * p2 * r) / den
}

/// Smallest Δ in `[0, delta_max]` where the classical minimum stops being
/// in-plane, located by bisection to `tol`. `None` if it stays in-plane.
pub fn phase_flip_point(lambda: f64, p1: f64, p2: f64, j: f64, delta_max: f64, tol: f64) -> Option<f64> {
    let leaves_plane =
        |d: f64| semiclassical_pair_minimize(lambda, p1, p2, j, d, 0.5).phase != ClassicalPhase::Xy;
    if leaves_plane(0.0) {
        return Some(0.0);
    }
    if !leaves_plane(delta_max) {
        return None;
    }
    let (mut lo, mut hi) = (0.0, delta_max);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if leaves_plane(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanFieldTfi {
    pub mz: f64,
    pub mx: f64,
    pub energy_density: f64,
}

/// Mean-field transverse-field Ising point: minimizes
/// `e(θ) = −cos²θ + h sin θ` and reports `mz = |cos θ|`, `mx = sin θ`.
pub fn tfi_meanfield(h: f64) -> MeanFieldTfi {
    let pi = std::f64::consts::PI;
    let e = |t: f64| -t.cos().powi(2) + h * t.sin();
    // Minima lie in [−π/2, π/2] up to the θ → π − θ mirror, which leaves e
    // unchanged.
    let n = 2048;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..=n {
        let t = -pi / 2.0 + pi * i as f64 / n as f64;
        let v = e(t);
        if v < best.0 {
            best = (v, t);
        }
    }
    // e'(θ) = cos θ (2 sin θ + h); the interior root is sin θ = −h/2.
    let step = pi / n as f64;
    let de = |t: f64| t.cos() * (2.0 * t.sin() + h);
    let (mut lo, mut hi) = ((best.1 - step).max(-pi / 2.0), (best.1 + step).min(pi / 2.0));
    let mut theta = best.1;
    if de(lo) < 0.0 && de(hi) > 0.0 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if de(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        theta = 0.5 * (lo + hi);
    }
    MeanFieldTfi {
        mz: theta.cos().abs(),
        mx: theta.sin(),
        energy_density: e(theta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn xy_at_zero_anisotropy() {
        let c = semiclassical_pair_minimize(0.5, 0.5, 1.0, 1.0, 0.0, 0.5);
        assert_eq!(c.phase, ClassicalPhase::Xy);
        assert!((c.n_a[0] - c.n_b[0]).abs() < 1e-12);
        assert!((c.energy_density + 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_vectors() {
        for d in [0.0, 1.0, 2.9, 3.1, 5.0] {
            let c = semiclassical_pair_minimize(0.3, 0.4, 0.9, 1.0, d, 0.5);
            for n in [c.n_a, c.n_b] {
                let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn half_filling_cut_point() {
        assert_eq!(critical_point(0.5, 0.5, 1.0, 1.0), 3.0);
        let flip = phase_flip_point(0.5, 0.5, 1.0, 1.0, 10.0, 1e-12).unwrap();
        assert!((flip - 3.0).abs() < 1e-9, "{flip}");
        assert_eq!(
            semiclassical_pair_minimize(0.5, 0.5, 1.0, 1.0, 3.5, 0.5).phase,
            ClassicalPhase::Afm
        );
    }

    #[test]
    fn trivial_cut_has_no_transition() {
        assert_eq!(critical_point(0.5, 0.7, 0.7, 1.0), f64::INFINITY);
        assert!(phase_flip_point(0.5, 0.7, 0.7, 1.0, 50.0, 1e-9).is_none());
    }

    #[test]
    fn decoupled_spins_flagged() {
        let c = semiclassical_pair_minimize(0.5, 1.0, 0.0, 1.0, 0.5, 0.5);
        assert!(c.degenerate);
    }

    #[test]
    fn tfi_values() {
        let m = tfi_meanfield(0.0);
        assert!((m.mz - 1.0).abs() < 1e-12 && m.mx.abs() < 1e-12 && (m.energy_density + 1.0).abs() < 1e-12);
        let m = tfi_meanfield(2.0);
        assert!(m.mz < 1e-9);
        let m = tfi_meanfield(1.0);
        assert!((m.mz - 3f64.sqrt() / 2.0).abs() < 1e-9);
        assert!((m.energy_density + 1.25).abs() < 1e-12);
        assert!((m.mx + 0.5).abs() < 1e-9);
        let m = tfi_meanfield(3.0);
        assert!(m.mz < 1e-12 && (m.energy_density + 3.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn balanced_flip_matches_closed_form(p1 in 0.05f64..1.0, p2 in 0.05f64..1.0, j in 0.2f64..2.0) {
            let dc = critical_point(0.5, p1, p2, j);
            match phase_flip_point(0.5, p1, p2, j, 200.0, 1e-11) {
                Some(f) => prop_assert!((f - dc).abs() < 1e-9 * dc.max(1.0), "{f} vs {dc}"),
                None => prop_assert!(dc > 200.0),
            }
        }

        #[test]
        fn tfi_closed_form(h in -4.0f64..4.0) {
            let m = tfi_meanfield(h);
            if h.abs() <= 2.0 {
                prop_assert!((m.mz - (1.0 - h * h / 4.0).sqrt()).abs() < 1e-8);
                prop_assert!((m.energy_density + 1.0 + h * h / 4.0).abs() < 1e-12);
            } else {
                prop_assert!(m.mz < 1e-9);
                prop_assert!((m.energy_density + h.abs()).abs() < 1e-12);
            }
        }
    }
}

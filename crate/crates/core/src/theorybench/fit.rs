use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::format::sig12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub l: usize,
    pub mean: f64,
    /// Per-draw values in draw order.
    pub draws: Vec<f64>,
}

/// A `(L, quantity)` series with a log-log least-squares fit
/// `quantity ≈ prefactor · L^exponent`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub study: String,
    pub points: Vec<ScalingPoint>,
    /// Absent when the fit is degenerate.
    pub exponent: Option<f64>,
    pub prefactor: Option<f64>,
    /// RMS residual in natural-log units.
    pub residual: Option<f64>,
    /// True when some mean is not positive or fewer than two distinct L
    /// are available.
    pub degenerate: bool,
    pub seed: u64,
}

/// Unweighted least squares of `ln y` against `ln x`; `None` when any
/// value is not positive or the x values do not vary.
pub fn power_law_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    if x.len() != y.len() || x.len() < 2 || y.iter().chain(x).any(|&v| !(v > 0.0)) {
        return None;
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = x.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Some((slope, intercept.exp(), rms))
}

impl ScalingFit {
    pub fn from_points(study: impl Into<String>, points: Vec<ScalingPoint>, seed: u64) -> Self {
        let x: Vec<f64> = points.iter().map(|p| p.l as f64).collect();
        let y: Vec<f64> = points.iter().map(|p| p.mean).collect();
        let fit = power_law_fit(&x, &y);
        ScalingFit {
            study: study.into(),
            points,
            exponent: fit.map(|f| f.0),
            prefactor: fit.map(|f| f.1),
            residual: fit.map(|f| f.2),
            degenerate: fit.is_none(),
            seed,
        }
    }

    pub fn means(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.mean).collect()
    }

    /// Rows `study,L,draw,value`, without header.
    pub fn write_rows(&self, mut w: impl Write) -> Result<()> {
        for p in &self.points {
            for (d, v) in p.draws.iter().enumerate() {
                writeln!(w, "{},{},{},{}", self.study, p.l, d, sig12(*v))?;
            }
        }
        Ok(())
    }

    pub fn sidecar(&self) -> serde_json::Value {
        serde_json::json!({
            "exponent": self.exponent,
            "prefactor": self.prefactor,
            "residual": self.residual,
            "seed": self.seed,
            "degenerate": self.degenerate,
            "study": self.study,
            "L": self.points.iter().map(|p| p.l).collect::<Vec<_>>(),
            "mean": self.means(),
        })
    }
}

pub const STUDY_CSV_HEADER: &str = "study,L,draw,value";

/// CSV text for one or more fits.
pub fn study_csv(fits: &[ScalingFit]) -> Result<String> {
    let mut buf = Vec::new();
    writeln!(buf, "{STUDY_CSV_HEADER}")?;
    for f in fits {
        f.write_rows(&mut buf)?;
    }
    Ok(String::from_utf8(buf).expect("ascii"))
}

/// JSON sidecar text: an object for one fit, an array for several.
pub fn study_sidecar(fits: &[ScalingFit]) -> String {
    let value = if fits.len() == 1 {
        fits[0].sidecar()
    } else {
        serde_json::Value::Array(fits.iter().map(ScalingFit::sidecar).collect())
    };
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let x = [8.0, 10.0, 12.0, 16.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(0.5)).collect();
        let (g, c, r) = power_law_fit(&x, &y).unwrap();
        assert!((g - 0.5).abs() < 1e-12 && (c - 3.0).abs() < 1e-12 && r < 1e-12);
    }

    #[test]
    fn degenerate_cases() {
        assert!(power_law_fit(&[1.0, 2.0], &[0.0, 1.0]).is_none());
        assert!(power_law_fit(&[2.0, 2.0], &[1.0, 1.0]).is_none());
        let f = ScalingFit::from_points(
            "zero",
            vec![
                ScalingPoint { l: 4, mean: 0.0, draws: vec![0.0] },
                ScalingPoint { l: 6, mean: 0.0, draws: vec![0.0] },
            ],
            1,
        );
        assert!(f.degenerate && f.exponent.is_none());
        assert!(study_sidecar(&[f]).contains("\"exponent\": null"));
    }
}

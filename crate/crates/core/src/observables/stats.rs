use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub mean: f64,
    /// Sample variance with an `n − 1` denominator; absent for one value.
    pub variance: Option<f64>,
    pub n: usize,
}

pub fn ensemble_stats(values: &[f64]) -> Result<EnsembleStats> {
    if values.is_empty() {
        return param("no values");
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let variance = (n > 1).then(|| {
        values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    });
    Ok(EnsembleStats { mean, variance, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(ensemble_stats(&[1.0, 1.0, 1.0]).unwrap().variance, Some(0.0));
        let s = ensemble_stats(&[0.0, 2.0]).unwrap();
        assert_eq!((s.mean, s.variance), (1.0, Some(2.0)));
        assert_eq!(ensemble_stats(&[4.0]).unwrap().variance, None);
        assert!(ensemble_stats(&[]).is_err());
    }
}

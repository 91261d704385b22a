//! Least-squares power-law fits `D ≈ c · n^s` on log-log axes.

use crate::error::{Error, Result};

/// Minimum number of points a rate fit accepts.
pub const MIN_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct RateFit {
    pub sizes: Vec<f64>,
    pub distances: Vec<f64>,
    /// Slope of `ln D` against `ln n`.
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

impl RateFit {
    pub fn fit(sizes: &[f64], distances: &[f64]) -> Result<RateFit> {
        if sizes.len() != distances.len() {
            return Err(Error::InvalidParameter(format!(
                "{} sizes but {} distances",
                sizes.len(),
                distances.len()
            )));
        }
        if sizes.len() < MIN_POINTS {
            return Err(Error::InvalidParameter(format!(
                "rate fit needs at least {MIN_POINTS} points, got {}",
                sizes.len()
            )));
        }
        if let Some(i) = distances.iter().position(|&d| !(d > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "distance at size {} is {}; log-log fit needs positive values",
                sizes[i], distances[i]
            )));
        }
        if let Some(&n) = sizes.iter().find(|&&n| !(n > 0.0)) {
            return Err(Error::InvalidParameter(format!("size {n} is not positive")));
        }
        let x: Vec<f64> = sizes.iter().map(|n| n.ln()).collect();
        let y: Vec<f64> = distances.iter().map(|d| d.ln()).collect();
        let k = x.len() as f64;
        let mx = x.iter().sum::<f64>() / k;
        let my = y.iter().sum::<f64>() / k;
        let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
        if sxx == 0.0 {
            return Err(Error::InvalidParameter("all sizes are equal".into()));
        }
        let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let residual = (x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - intercept - slope * a).powi(2))
            .sum::<f64>()
            / k)
            .sqrt();
        Ok(RateFit {
            sizes: sizes.to_vec(),
            distances: distances.to_vec(),
            slope,
            intercept,
            residual,
        })
    }
}

//! Generalized degrees of freedom of the symmetric channel.
//!
//! With `INR = SNR^α` and cooperation capacity `κ log SNR`, the symmetric
//! capacity normalized by `log SNR` converges to `d(α, κ)` as the SNR grows,
//! for every aggregate phase except a set of measure zero.

use serde::Serialize;

use crate::bounds::sym_upper;
use crate::channel::{from_db, normalize_angle, ChannelError, ChannelParams};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GdofError {
    #[error("alpha and kappa must be finite and non-negative, got ({alpha}, {kappa})")]
    InvalidQuery { alpha: f64, kappa: f64 },
    #[error("theta = 0 (mod 2π) is excluded: the limit can differ on that phase")]
    ExcludedPhase,
    #[error("SNR grid must be non-empty with points above 0 dB")]
    InvalidGrid,
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

/// `α = log INR / log SNR`, `κ = C / log SNR`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GdofQuery {
    alpha: f64,
    kappa: f64,
}

impl GdofQuery {
    pub fn new(alpha: f64, kappa: f64) -> Result<Self, GdofError> {
        if alpha.is_finite() && kappa.is_finite() && alpha >= 0.0 && kappa >= 0.0 {
            Ok(Self { alpha, kappa })
        } else {
            Err(GdofError::InvalidQuery { alpha, kappa })
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Degrees of freedom per user.
pub fn d(q: GdofQuery) -> f64 {
    let (a, k) = (q.alpha, q.kappa);
    if a < 1.0 {
        1f64.min(a.max(1.0 - a) + k).min(1.0 - (a - k) / 2.0)
    } else {
        a.min(1.0 + k).min((a + k) / 2.0)
    }
}

/// One grid point of a convergence run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub snr_db: f64,
    pub csym_over_logsnr: f64,
    pub deviation: f64,
}

/// Normalized symmetric capacity bound along an SNR grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub query: GdofQuery,
    pub theta: f64,
    pub d_formula: f64,
    pub points: Vec<ConvergencePoint>,
}

impl ConvergenceReport {
    /// `|C̄_sym / log SNR - d|` at the last grid point.
    pub fn terminal_deviation(&self) -> f64 {
        self.points.last().map_or(f64::NAN, |p| p.deviation)
    }

    /// CSV with header `alpha,kappa,snr_db,csym_over_logsnr,d_formula,deviation`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("alpha,kappa,snr_db,csym_over_logsnr,d_formula,deviation\n");
        for p in &self.points {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.query.alpha, self.query.kappa, p.snr_db, p.csym_over_logsnr, self.d_formula, p.deviation
            ));
        }
        s
    }
}

/// `steps` evenly spaced points from `min_db` to `max_db` inclusive.
pub fn snr_db_grid(min_db: f64, max_db: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![max_db],
        n => (0..n)
            .map(|i| min_db + (max_db - min_db) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Evaluates the symmetric capacity bound with `INR = SNR^α` and
/// `C = κ log2 SNR` along the grid.
pub fn verify_limit(q: GdofQuery, snr_db_grid: &[f64], theta: f64) -> Result<ConvergenceReport, GdofError> {
    if !theta.is_finite() {
        return Err(ChannelError::InvalidPhase(theta).into());
    }
    if normalize_angle(theta) == 0.0 {
        return Err(GdofError::ExcludedPhase);
    }
    if snr_db_grid.is_empty() || snr_db_grid.iter().any(|&x| x <= 0.0 || !x.is_finite()) {
        return Err(GdofError::InvalidGrid);
    }
    let d_formula = d(q);
    let mut points = Vec::with_capacity(snr_db_grid.len());
    for &db in snr_db_grid {
        let snr = from_db(db);
        let log_snr = snr.log2();
        let inr = snr.powf(q.alpha);
        let params = ChannelParams::symmetric(snr, inr, theta, q.kappa * log_snr)?;
        let c = sym_upper(&params).expect("parameters are symmetric by construction");
        let ratio = c / log_snr;
        points.push(ConvergencePoint {
            snr_db: db,
            csym_over_logsnr: ratio,
            deviation: (ratio - d_formula).abs(),
        });
    }
    Ok(ConvergenceReport {
        query: q,
        theta: normalize_angle(theta),
        d_formula,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn q(a: f64, k: f64) -> GdofQuery {
        GdofQuery::new(a, k).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(d(q(0.5, 0.25)), 0.75);
        assert!((d(q(2.0 / 3.0, 1.0 / 3.0)) - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(d(q(0.0, 0.0)), 1.0);
        assert!((d(q(2.0 / 3.0, 0.0)) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_at_one() {
        for k in [0.0, 0.1, 0.5, 1.0, 3.0] {
            let below = 1f64.min(1.0 + k).min(1.0 - (1.0 - k) / 2.0);
            assert!((d(q(1.0, k)) - below).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_zero_phase_and_bad_queries() {
        assert_eq!(verify_limit(q(1.0, 0.0), &[100.0], 0.0), Err(GdofError::ExcludedPhase));
        assert!(GdofQuery::new(-0.1, 0.0).is_err());
        assert!(GdofQuery::new(0.5, f64::NAN).is_err());
        assert_eq!(verify_limit(q(1.0, 0.0), &[], 1.0), Err(GdofError::InvalidGrid));
    }

    #[test]
    fn converges_at_high_snr() {
        let grid = snr_db_grid(20.0, 200.0, 10);
        let r = verify_limit(q(0.5, 0.25), &grid, FRAC_PI_2).unwrap();
        assert!(r.terminal_deviation() <= 0.02);
        let r = verify_limit(q(1.0, 0.0), &grid, FRAC_PI_2).unwrap();
        assert!(r.terminal_deviation() <= 0.02);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = verify_limit(q(0.5, 0.0), &snr_db_grid(10.0, 30.0, 3), 1.0).unwrap();
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("alpha,kappa,snr_db,csym_over_logsnr,d_formula,deviation"));
    }
}

use serde::Serialize;

use super::{CurveError, CurveJets, ParametricCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    StraightLine,
    Planar,
    Helix,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveClass {
    pub kind: CurveKind,
    pub max_kappa: f64,
    pub max_tau: f64,
    /// Relative standard deviation of tau/kappa over the samples.
    pub tau_kappa_rsd: f64,
}

/// Classifies a curve from `n_samples` Chebyshev points of its domain,
/// reporting the most specific class that fits within `tol`.
pub fn classify_curve<C: ParametricCurve + ?Sized>(c: &C, n_samples: usize, tol: f64) -> Result<CurveClass, CurveError> {
    if n_samples < 2 {
        return Err(CurveError::InvalidInput("classification needs at least two samples".into()));
    }
    let (a, b) = c.domain();
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let scale = c.scale();
    let mut kappas = Vec::with_capacity(n_samples);
    let mut taus = Vec::with_capacity(n_samples);
    for k in 0..n_samples {
        let t = mid + half * (std::f64::consts::PI * (2 * k + 1) as f64 / (2 * n_samples) as f64).cos();
        let j = CurveJets::with_scale(c, t, scale)?;
        let kappa = j.kappa_value();
        kappas.push(kappa);
        taus.push(if kappa > j.inflection_eps() { j.tau().val() } else { f64::NAN });
    }
    let max_kappa = kappas.iter().copied().fold(0.0, f64::max);
    let max_tau = taus.iter().filter(|t| t.is_finite()).map(|t| t.abs()).fold(0.0, f64::max);
    let ratios: Vec<f64> = taus
        .iter()
        .zip(&kappas)
        .filter(|(t, _)| t.is_finite())
        .map(|(t, k)| t / k)
        .collect();
    let tau_kappa_rsd = if ratios.is_empty() {
        0.0
    } else {
        let n = ratios.len() as f64;
        let mean = ratios.iter().sum::<f64>() / n;
        let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n;
        if mean == 0.0 {
            if var == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            var.sqrt() / mean.abs()
        }
    };
    let kind = if max_kappa <= tol / scale {
        CurveKind::StraightLine
    } else if max_tau <= tol {
        CurveKind::Planar
    } else if tau_kappa_rsd <= tol {
        CurveKind::Helix
    } else {
        CurveKind::General
    };
    Ok(CurveClass {
        kind,
        max_kappa,
        max_tau,
        tau_kappa_rsd,
    })
}

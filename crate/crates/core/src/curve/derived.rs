//! Curves built from another curve's Frenet apparatus.

use serde::Serialize;

use super::{derivatives_at, frenet_from_jets, CurveError, CurveJets, ParametricCurve};
use crate::numerics::{Scalar, Vec3};

/// `r_i(s) = r_e(s) + (c - s) T_e(s)` for a curve `r_e` in arc length.
#[derive(Debug, Clone, Copy)]
pub struct Involute<C> {
    pub curve: C,
    pub c: f64,
}

impl<C: ParametricCurve> ParametricCurve for Involute<C> {
    fn eval<S: Scalar>(&self, s: S) -> Vec3<S> {
        let [r, rd, _, _] = derivatives_at(&self.curve, s);
        let tangent = rd.scale(rd.norm().recip());
        r + tangent.scale(-s + self.c)
    }
    fn domain(&self) -> (f64, f64) {
        self.curve.domain()
    }
    fn scale(&self) -> f64 {
        self.curve.scale()
    }
}

/// Builds the involute with constant `c`, checking that the input is
/// parameterized by arc length and free of inflections on its domain.
pub fn involute<C: ParametricCurve>(curve: C, c: f64) -> Result<Involute<C>, CurveError> {
    let (a, b) = curve.domain();
    let scale = curve.scale();
    for i in 0..=16 {
        let s = a + (b - a) * i as f64 / 16.0;
        let j = CurveJets::with_scale(&curve, s, scale)?;
        let speed = j.speed.val();
        if (speed - 1.0).abs() > 1e-6 {
            return Err(CurveError::NotArcLength { t: s, speed });
        }
        let kappa = j.kappa_value();
        if !(kappa > j.inflection_eps()) {
            return Err(CurveError::InflectionPoint { t: s, kappa });
        }
    }
    Ok(Involute { curve, c })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrameVector {
    Tangent,
    Normal,
    Binormal,
}

/// The unit vector `T`, `N` or `B` of a curve, traced on the unit sphere.
#[derive(Debug, Clone, Copy)]
pub struct Indicatrix<C> {
    pub curve: C,
    pub which: FrameVector,
}

impl<C: ParametricCurve> ParametricCurve for Indicatrix<C> {
    fn eval<S: Scalar>(&self, t: S) -> Vec3<S> {
        let [_, rd, rdd, _] = derivatives_at(&self.curve, t);
        let tangent = rd.scale(rd.norm().recip());
        if self.which == FrameVector::Tangent {
            return tangent;
        }
        let w = rd.cross(&rdd);
        let binormal = w.scale(w.norm().recip());
        match self.which {
            FrameVector::Binormal => binormal,
            _ => binormal.cross(&tangent),
        }
    }
    fn domain(&self) -> (f64, f64) {
        self.curve.domain()
    }
    fn scale(&self) -> f64 {
        1.0
    }
}

pub fn spherical_indicatrix<C: ParametricCurve>(curve: C, which: FrameVector) -> Indicatrix<C> {
    Indicatrix { curve, which }
}

/// Curvature and torsion of the tangent or binormal indicatrix from the
/// curvature and torsion of the curve and their arc-length derivatives.
pub fn indicatrix_kappa_tau<C: ParametricCurve + ?Sized>(
    c: &C,
    t: f64,
    which: FrameVector,
) -> Result<(f64, f64), CurveError> {
    let j = CurveJets::new(c, t)?;
    let f = frenet_from_jets(&j)?;
    let (k, tau) = (f.kappa, f.tau);
    let dk = j.dds(j.kappa()).val();
    let dtau = j.dds(j.tau()).val();
    let q = k * k + tau * tau;
    let cross = dk * tau - k * dtau;
    match which {
        FrameVector::Tangent => Ok((q.sqrt() / k, -cross / (k * q))),
        FrameVector::Binormal => {
            if tau.abs() <= j.inflection_eps() {
                return Err(CurveError::ZeroTorsion { t });
            }
            Ok((q.sqrt() / tau.abs(), cross / (tau * q)))
        }
        FrameVector::Normal => Err(CurveError::InvalidInput(
            "closed-form curvature and torsion are available for the tangent and binormal indicatrices".into(),
        )),
    }
}

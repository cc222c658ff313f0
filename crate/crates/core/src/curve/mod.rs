//! Space curves: the Frenet apparatus and everything derived from it.
//!
//! Curves are maps `t -> r(t)` written once over any [`Scalar`]; derivatives
//! come from evaluating the map on jets.

mod arclength;
mod classify;
mod derived;
mod frenet;
mod reconstruct;

pub use arclength::{arc_length, reparam_to_arclength, ArcLengthCurve, LinearReparam};
pub use classify::{classify_curve, CurveClass, CurveKind};
pub use derived::{
    indicatrix_kappa_tau, involute, spherical_indicatrix, FrameVector, Indicatrix, Involute,
};
pub(crate) use frenet::frenet_from_jets;
pub use frenet::{
    curvature_and_tangent, frenet, frenet_lines_and_planes, frenet_residuals, osculating_circle,
    osculating_sphere, sphericity_residual, FrenetData, FrenetLinesPlanes, FrenetResiduals, Line,
    OsculatingCircle, OsculatingSphere, Plane,
};
pub use reconstruct::{
    reconstruct_from_kappa_tau, rigid_align, CurvatureField, FrenetSeed, ReconstructedCurve, RigidAlignment,
    ScalarField1, TorsionField,
};

use crate::expr::BoundExpr;
use crate::numerics::{Jet1, NumericsError, Scalar, Vec3};

/// A parameterized space curve `t -> r(t)`.
pub trait ParametricCurve {
    fn eval<S: Scalar>(&self, t: S) -> Vec3<S>;

    /// Closed parameter interval on which the curve is defined.
    fn domain(&self) -> (f64, f64);

    /// Length scale `max(|r|, 1)` over 16 evenly spaced probes, used to make
    /// the degeneracy thresholds scale-free.
    fn scale(&self) -> f64 {
        let (a, b) = self.domain();
        let mut s: f64 = 1.0;
        for i in 0..16 {
            let t = a + (b - a) * i as f64 / 15.0;
            let n = self.eval(t).norm();
            if n.is_finite() {
                s = s.max(n);
            }
        }
        s
    }
}

impl<C: ParametricCurve + ?Sized> ParametricCurve for &C {
    fn eval<S: Scalar>(&self, t: S) -> Vec3<S> {
        (**self).eval(t)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn scale(&self) -> f64 {
        (**self).scale()
    }
}

/// Curve defined by three bound expressions of one parameter.
#[derive(Debug, Clone)]
pub struct ExprCurve {
    pub components: [BoundExpr; 3],
    pub domain: (f64, f64),
}

impl ParametricCurve for ExprCurve {
    fn eval<S: Scalar>(&self, t: S) -> Vec3<S> {
        let a = [t];
        Vec3::new(
            self.components[0].eval_unchecked(&a),
            self.components[1].eval_unchecked(&a),
            self.components[2].eval_unchecked(&a),
        )
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("singular point at t = {t} (|r'| = {speed:e})")]
    SingularPoint { t: f64, speed: f64 },
    #[error("inflection point at t = {t} (kappa = {kappa:e}); N, B and tau are undefined")]
    InflectionPoint { t: f64, kappa: f64 },
    #[error("zero torsion at t = {t}")]
    ZeroTorsion { t: f64 },
    #[error("non-finite curve evaluation at t = {t}")]
    NonFinite { t: f64 },
    #[error("initial frame is not orthonormal and right-handed (defect {defect:e})")]
    NonOrthonormalSeed { defect: f64 },
    #[error("curve is not parameterized by arc length (|r'| = {speed} at t = {t})")]
    NotArcLength { t: f64, speed: f64 },
    #[error("curvature must be positive for reconstruction (kappa({s}) = {kappa})")]
    NonPositiveCurvature { s: f64, kappa: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Derivative jets of a curve at one parameter value.
///
/// `r` carries orders 0..=4, `rd` 0..=3, `rdd` 0..=2 and `rddd` 0..=1; the
/// orders beyond those are NaN.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CurveJets {
    pub t: f64,
    pub scale: f64,
    pub r: Vec3<Jet1>,
    pub rd: Vec3<Jet1>,
    pub rdd: Vec3<Jet1>,
    pub rddd: Vec3<Jet1>,
    pub speed: Jet1,
}

impl CurveJets {
    pub fn new<C: ParametricCurve + ?Sized>(c: &C, t: f64) -> Result<Self, CurveError> {
        Self::with_scale(c, t, c.scale())
    }

    pub fn with_scale<C: ParametricCurve + ?Sized>(c: &C, t: f64, scale: f64) -> Result<Self, CurveError> {
        let r = c.eval(Jet1::variable(t));
        for k in 0..=3 {
            if !r.derivative(k).is_finite() {
                return Err(CurveError::NonFinite { t });
            }
        }
        let rd = r.differentiate();
        let rdd = rd.differentiate();
        let rddd = rdd.differentiate();
        let speed = rd.norm();
        if !(speed.val() > 1e-12 * scale) {
            return Err(CurveError::SingularPoint { t, speed: speed.val() });
        }
        Ok(CurveJets {
            t,
            scale,
            r,
            rd,
            rdd,
            rddd,
            speed,
        })
    }

    pub fn inflection_eps(&self) -> f64 {
        1e-10 / self.scale
    }

    /// `d/ds` of a jet along the curve; loses one order.
    pub fn dds(&self, x: Jet1) -> Jet1 {
        x.differentiate() / self.speed
    }

    pub fn dds_vec(&self, x: Vec3<Jet1>) -> Vec3<Jet1> {
        let inv = self.speed.recip();
        x.differentiate().scale(inv)
    }

    pub fn tangent(&self) -> Vec3<Jet1> {
        self.rd.scale(self.speed.recip())
    }

    pub fn cross(&self) -> Vec3<Jet1> {
        self.rd.cross(&self.rdd)
    }

    /// Value of `kappa`, finite also where the curvature vanishes.
    pub fn kappa_value(&self) -> f64 {
        let s = self.speed.val();
        self.cross().val().norm() / (s * s * s)
    }

    /// `kappa` as a jet (orders 0..=2); needs `kappa > 0`.
    pub fn kappa(&self) -> Jet1 {
        let s = self.speed;
        self.cross().norm() / (s * s * s)
    }

    /// `tau` as a jet (orders 0..=1).
    pub fn tau(&self) -> Jet1 {
        let w = self.cross();
        self.rd.dot(&self.rdd.cross(&self.rddd)) / w.norm_squared()
    }

    pub fn normal(&self) -> Vec3<Jet1> {
        let n = self.rd.cross(&self.rdd.cross(&self.rd));
        n.scale(n.norm().recip())
    }

    pub fn binormal(&self) -> Vec3<Jet1> {
        let w = self.cross();
        w.scale(w.norm().recip())
    }
}

/// First and second derivatives of a curve at a generic scalar, by nested
/// jet evaluation. Used to build derived curves that stay evaluable on jets.
pub(crate) fn derivatives_at<C: ParametricCurve + ?Sized, S: Scalar>(c: &C, t: S) -> [Vec3<S>; 4] {
    let mut seed = [S::zero(); 5];
    seed[0] = t;
    seed[1] = S::one();
    let r = c.eval(Jet1::from_taylor(seed));
    [r.derivative(0), r.derivative(1), r.derivative(2), r.derivative(3)]
}

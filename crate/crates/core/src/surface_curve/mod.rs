//! Curves lying on surfaces: curvature splits, geodesics, parallel
//! transport, special directions and Gauss–Bonnet.

mod directions;
mod gauss_bonnet;
mod geodesic;
mod split;
mod transport;

pub use directions::{
    asymptotic_directions, asymptotic_line, conjugate_direction, normal_curvature, principal_direction_field,
    AsymptoticDirections, AsymptoticField, PrincipalField, TangentDirection,
};
pub use gauss_bonnet::{gauss_bonnet_global, gauss_bonnet_local, BoundaryLoop, GaussBonnetGlobal, GaussBonnetLocal, LoopArc};
pub use geodesic::{geodesic_bvp, geodesic_ivp, BvpSolution, GeodesicField, GeodesicPath};
pub use split::{
    bonnet_torsion_check, curvature_split, geodesic_torsion, liouville_check, BonnetCheck, CurvatureSplit,
    GeodesicTorsion, LiouvilleCheck,
};
pub use transport::{frame_angle, parallel_transport, wrap_angle, TransportField, TransportState};

use crate::curve::{CurveError, ParametricCurve};
use crate::expr::BoundExpr;
use crate::numerics::{solve_field, taylor_jets, JetField, NumericsError, OdeSpec, Scalar, StepControl, Trajectory, Vec3};
use crate::surface::{ParametricSurface, SurfaceError};

/// A path `t -> (u(t), v(t))` in a surface's parameter plane.
pub trait ParamPath {
    fn eval<S: Scalar>(&self, t: S) -> (S, S);

    fn domain(&self) -> (f64, f64);
}

impl<P: ParamPath + ?Sized> ParamPath for &P {
    fn eval<S: Scalar>(&self, t: S) -> (S, S) {
        (**self).eval(t)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
}

/// Straight segment from `p0` (at `t = 0`) to `p1` (at `t = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePath {
    pub p0: [f64; 2],
    pub p1: [f64; 2],
}

impl LinePath {
    pub fn new(p0: [f64; 2], p1: [f64; 2]) -> Self {
        LinePath { p0, p1 }
    }
}

impl ParamPath for LinePath {
    fn eval<S: Scalar>(&self, t: S) -> (S, S) {
        (
            t * (self.p1[0] - self.p0[0]) + self.p0[0],
            t * (self.p1[1] - self.p0[1]) + self.p0[1],
        )
    }
    fn domain(&self) -> (f64, f64) {
        (0.0, 1.0)
    }
}

/// `p0 + t d + t^2 c` on the given interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticPath {
    pub p0: [f64; 2],
    pub d: [f64; 2],
    pub c: [f64; 2],
    pub domain: (f64, f64),
}

impl ParamPath for QuadraticPath {
    fn eval<S: Scalar>(&self, t: S) -> (S, S) {
        let comp = |i: usize| t * t * self.c[i] + t * self.d[i] + self.p0[i];
        (comp(0), comp(1))
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

/// Path given by two expressions in one parameter.
#[derive(Debug, Clone)]
pub struct ExprPath {
    pub u: BoundExpr,
    pub v: BoundExpr,
    pub domain: (f64, f64),
}

impl ParamPath for ExprPath {
    fn eval<S: Scalar>(&self, t: S) -> (S, S) {
        (self.u.eval_unchecked(&[t]), self.v.eval_unchecked(&[t]))
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

/// A path on a host surface, viewed as a space curve.
#[derive(Debug, Clone)]
pub struct SurfaceCurve<T, P> {
    pub surface: T,
    pub path: P,
}

impl<T: ParametricSurface, P: ParamPath> SurfaceCurve<T, P> {
    pub fn new(surface: T, path: P) -> Self {
        SurfaceCurve { surface, path }
    }
}

impl<T: ParametricSurface, P: ParamPath> ParametricCurve for SurfaceCurve<T, P> {
    fn eval<S: Scalar>(&self, t: S) -> Vec3<S> {
        let (u, v) = self.path.eval(t);
        self.surface.eval(u, v)
    }
    fn domain(&self) -> (f64, f64) {
        self.path.domain()
    }
    fn scale(&self) -> f64 {
        self.surface.scale()
    }
}

/// A solution of a first-order system whose first two components are
/// `(u, v)`; evaluates between samples by local Taylor expansion.
#[derive(Debug, Clone)]
pub struct OdePath<F> {
    pub field: F,
    pub trajectory: Trajectory,
    pub spec: OdeSpec,
}

impl<F: JetField> OdePath<F> {
    pub(crate) fn solve(
        field: F,
        y0: &[f64],
        span: (f64, f64),
        spec: &OdeSpec,
        observer: impl FnMut(f64, &mut [f64]) -> StepControl,
    ) -> Result<Self, NumericsError> {
        let trajectory = solve_field(&field, y0, span, spec, observer)?;
        Ok(OdePath {
            field,
            trajectory,
            spec: *spec,
        })
    }

    /// Full state at `t`, re-integrated from the preceding sample.
    pub fn state_at(&self, t: f64) -> Vec<f64> {
        let tr = &self.trajectory;
        let i = tr.t.partition_point(|&x| x <= t).clamp(1, tr.len()) - 1;
        if tr.t[i] == t {
            return tr.y[i].clone();
        }
        match solve_field(&self.field, &tr.y[i], (tr.t[i], t), &self.spec, |_, _| StepControl::Continue) {
            Ok(sol) => sol.last_y().to_vec(),
            Err(_) => vec![f64::NAN; self.field.dim()],
        }
    }
}

impl<F: JetField> ParamPath for OdePath<F> {
    fn eval<S: Scalar>(&self, t: S) -> (S, S) {
        let t0 = t.value();
        let y0 = self.state_at(t0);
        let jets = taylor_jets(&self.field, t0, &y0);
        let h = t - t0;
        let poly = |k: usize| {
            let c = jets[k].taylor();
            let mut acc = S::constant(c[4]);
            for i in (0..4).rev() {
                acc = acc * h + c[i];
            }
            acc
        };
        (poly(0), poly(1))
    }
    fn domain(&self) -> (f64, f64) {
        (self.trajectory.t[0], self.trajectory.last_t())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SurfaceCurveError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("geodesic shooting did not converge (best endpoint residual {best_residual:e})")]
    NoConvergence { best_residual: f64 },
    #[error("two distinct geodesics of equal length {} join the points", .solutions[0].length)]
    DegenerateMultiplicity { solutions: [BvpSolution; 2] },
    #[error("coordinates are not orthogonal (F = {f:e} at t = {t})")]
    NonOrthogonalPatch { t: f64, f: f64 },
    #[error("curve is asymptotic at t = {t} (n . N = {cos_phi:e})")]
    AsymptoticPoint { t: f64, cos_phi: f64 },
    #[error("boundary loop is open after arc {arc} (gap {gap:e})")]
    OpenLoop { arc: usize, gap: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Parameter values `(u, v)` and their `t`-jets at a point of a path.
pub(crate) fn path_jets<P: ParamPath + ?Sized>(path: &P, t: f64) -> (crate::numerics::Jet1, crate::numerics::Jet1) {
    path.eval(crate::numerics::Jet1::variable(t))
}

/// Difference `b - a` with periodic coordinates wrapped into `(-P/2, P/2]`.
pub(crate) fn wrapped_delta(a: [f64; 2], b: [f64; 2], periods: (Option<f64>, Option<f64>)) -> [f64; 2] {
    let wrap = |d: f64, p: Option<f64>| match p {
        Some(p) => d - p * (d / p).round(),
        None => d,
    };
    [wrap(b[0] - a[0], periods.0), wrap(b[1] - a[1], periods.1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::test_surfaces::Sphere;

    #[test]
    fn composite_curve_on_sphere_is_unit_circle() {
        let sc = SurfaceCurve::new(Sphere(1.0), LinePath::new([0.0, 0.0], [1.0, 0.0]));
        for t in [0.0, 0.3, 1.0] {
            assert!((sc.eval(t).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn wrapping() {
        let d = wrapped_delta([0.1, 0.0], [6.2, 1.0], (Some(2.0 * std::f64::consts::PI), None));
        assert!((d[0] - (6.1 - 2.0 * std::f64::consts::PI)).abs() < 1e-12);
        assert_eq!(d[1], 1.0);
    }
}

//! Surfaces: fundamental forms, Christoffel symbols, curvature, and the
//! residual checks of the classical structure equations.

mod forms;
mod integrals;
mod residuals;

pub use forms::{
    angle_between, christoffel_cross_check, curvatures, dupin_classification, form_identity_residual, forms,
    riemann_r1212, surface_frame, CurvatureData, DupinClass, FormBundle, FormIdentity, PrincipalDirection, ShapeClass,
    SurfaceFrame,
    TangentAngle,
};
pub use integrals::{surface_area, total_curvature, SurfaceIntegral};
pub use residuals::{
    codazzi_compatibility_residuals, gauss_weingarten_residuals, CodazziResiduals, GaussWeingartenResiduals,
};

use crate::expr::BoundExpr;
use crate::numerics::{Jet2, NumericsError, Rect, Scalar, Vec3};

/// A parameterized surface `(u, v) -> r(u, v)`.
pub trait ParametricSurface {
    fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S>;

    fn domain(&self) -> Rect;

    /// Periods of `u` and `v` for parameters that wrap around.
    fn periods(&self) -> (Option<f64>, Option<f64>) {
        (None, None)
    }

    /// Length scale `max(|r|, 1)` over a 4x4 probe grid of the domain.
    fn scale(&self) -> f64 {
        let d = self.domain();
        let mut s: f64 = 1.0;
        for i in 0..4 {
            for j in 0..4 {
                let u = d.u0 + (d.u1 - d.u0) * (i as f64 + 0.5) / 4.0;
                let v = d.v0 + (d.v1 - d.v0) * (j as f64 + 0.5) / 4.0;
                let n = self.eval(u, v).norm();
                if n.is_finite() {
                    s = s.max(n);
                }
            }
        }
        s
    }
}

impl<T: ParametricSurface + ?Sized> ParametricSurface for &T {
    fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
        (**self).eval(u, v)
    }
    fn domain(&self) -> Rect {
        (**self).domain()
    }
    fn periods(&self) -> (Option<f64>, Option<f64>) {
        (**self).periods()
    }
    fn scale(&self) -> f64 {
        (**self).scale()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SurfaceError {
    #[error("singular surface point at ({u}, {v}) (|E1 x E2| = {area:e})")]
    SingularSurfacePoint { u: f64, v: f64, area: f64 },
    #[error("non-finite surface evaluation at ({u}, {v})")]
    NonFinite { u: f64, v: f64 },
    #[error("umbilic point at ({u}, {v}): principal directions are undefined")]
    UmbilicPoint { u: f64, v: f64 },
    #[error("no unique conjugate direction at ({u}, {v}) (parabolic or flat point)")]
    NoUniqueConjugate { u: f64, v: f64 },
    #[error("zero tangent vector")]
    ZeroVector,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Surface derivatives and forms as jets in `(u, v)` at one point.
///
/// Orders retained: `r` 3, `e1`/`e2`/metric/normal 2, second form 1.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceJets<S: Scalar = f64> {
    pub r: Vec3<Jet2<S>>,
    pub e1: Vec3<Jet2<S>>,
    pub e2: Vec3<Jet2<S>>,
    pub a11: Jet2<S>,
    pub a12: Jet2<S>,
    pub a22: Jet2<S>,
    /// `E1 x E2`.
    pub cross: Vec3<Jet2<S>>,
    pub sqrt_a: Jet2<S>,
    pub n: Vec3<Jet2<S>>,
    pub b11: Jet2<S>,
    pub b12: Jet2<S>,
    pub b22: Jet2<S>,
}

impl<S: Scalar> SurfaceJets<S> {
    /// Evaluates without regularity checks.
    pub fn at<T: ParametricSurface + ?Sized>(surface: &T, u: S, v: S) -> Self {
        let r = surface.eval(Jet2::var_u(u), Jet2::var_v(v));
        let e1 = r.du();
        let e2 = r.dv();
        let cross = e1.cross(&e2);
        let sqrt_a = cross.norm();
        let n = cross.scale(sqrt_a.recip());
        SurfaceJets {
            r,
            e1,
            e2,
            a11: e1.dot(&e1),
            a12: e1.dot(&e2),
            a22: e2.dot(&e2),
            cross,
            sqrt_a,
            n,
            b11: e1.du().dot(&n),
            b12: e1.dv().dot(&n),
            b22: e2.dv().dot(&n),
        }
    }

    /// `(E, F, G)`.
    pub fn first(&self) -> [S; 3] {
        [self.a11.val(), self.a12.val(), self.a22.val()]
    }

    /// `(e, f, g)`.
    pub fn second(&self) -> [S; 3] {
        [self.b11.val(), self.b12.val(), self.b22.val()]
    }

    /// Metric determinant `EG - F^2`.
    pub fn det(&self) -> S {
        let [e, f, g] = self.first();
        e * g - f * f
    }

    /// Inverse metric `(a^11, a^12, a^22)`.
    pub fn inverse_metric(&self) -> [S; 3] {
        let [e, f, g] = self.first();
        let det = self.det();
        [g / det, -f / det, e / det]
    }

    /// Christoffel symbols of the second kind as jets (order 1), in the
    /// order `11-1, 11-2, 12-1, 12-2, 22-1, 22-2`.
    pub fn christoffel2_jets(&self) -> [Jet2<S>; 6] {
        let (e, f, g) = (self.a11, self.a12, self.a22);
        let (eu, ev) = (e.du(), e.dv());
        let (fu, fv) = (f.du(), f.dv());
        let (gu, gv) = (g.du(), g.dv());
        let two_a = (e * g - f * f) * 2.0;
        [
            (g * eu - f * fu * 2.0 + f * ev) / two_a,
            (e * fu * 2.0 - e * ev - f * eu) / two_a,
            (g * ev - f * gu) / two_a,
            (e * gu - f * ev) / two_a,
            (g * fv * 2.0 - g * gu - f * gv) / two_a,
            (e * gv - f * fv * 2.0 + f * gu) / two_a,
        ]
    }

    pub fn christoffel2(&self) -> [S; 6] {
        self.christoffel2_jets().map(|j| j.val())
    }

    /// Christoffel symbols of the first kind, `[11,1], [11,2], [12,1],
    /// [12,2], [22,1], [22,2]`.
    pub fn christoffel1(&self) -> [S; 6] {
        let d = |j: Jet2<S>, w: usize| if w == 0 { j.partial(1, 0) } else { j.partial(0, 1) };
        let (e, f, g) = (self.a11, self.a12, self.a22);
        let half = 0.5;
        [
            d(e, 0) * half,
            d(f, 0) - d(e, 1) * half,
            d(e, 1) * half,
            d(g, 0) * half,
            d(f, 1) - d(g, 0) * half,
            d(g, 1) * half,
        ]
    }

    /// `Gamma^gamma_{alpha beta}` with zero-based indices.
    pub fn gamma(&self, gamma: [S; 6], c: usize, a: usize, b: usize) -> S {
        let pair = match (a.min(b), a.max(b)) {
            (0, 0) => 0,
            (0, 1) => 1,
            _ => 2,
        };
        gamma[pair * 2 + c]
    }
}

/// Metric `(E, F, G)` and second-kind Christoffel symbols at a point,
/// without the normal or second form.
pub fn metric_christoffel<T: ParametricSurface + ?Sized, S: Scalar>(surface: &T, u: S, v: S) -> ([S; 3], [S; 6]) {
    let r = surface.eval(Jet2::var_u(u), Jet2::var_v(v));
    let (e1, e2) = (r.du(), r.dv());
    let (e, f, g) = (e1.dot(&e1), e1.dot(&e2), e2.dot(&e2));
    let (ev, fv, gv) = (e.val(), f.val(), g.val());
    let (eu, e_v) = (e.partial(1, 0), e.partial(0, 1));
    let (fu, f_v) = (f.partial(1, 0), f.partial(0, 1));
    let (gu, g_v) = (g.partial(1, 0), g.partial(0, 1));
    let two_a = (ev * gv - fv * fv) * 2.0;
    (
        [ev, fv, gv],
        [
            (gv * eu - fv * fu * 2.0 + fv * e_v) / two_a,
            (ev * fu * 2.0 - ev * e_v - fv * eu) / two_a,
            (gv * e_v - fv * gu) / two_a,
            (ev * gu - fv * e_v) / two_a,
            (gv * f_v * 2.0 - gv * gu - fv * g_v) / two_a,
            (ev * g_v - fv * f_v * 2.0 + fv * gu) / two_a,
        ],
    )
}

/// Regularity-checked jets at a point.
pub fn surface_jets<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
    scale: f64,
) -> Result<SurfaceJets, SurfaceError> {
    let j = SurfaceJets::at(surface, u, v);
    for (i, k) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
        if !j.r.partial(i, k).is_finite() {
            return Err(SurfaceError::NonFinite { u, v });
        }
    }
    let area = j.sqrt_a.val();
    if !(area > 1e-12 * scale * scale) {
        return Err(SurfaceError::SingularSurfacePoint { u, v, area });
    }
    Ok(j)
}

/// Surface defined by three bound expressions of two parameters.
#[derive(Debug, Clone)]
pub struct ExprSurface {
    pub components: [BoundExpr; 3],
    pub domain: Rect,
}

impl ParametricSurface for ExprSurface {
    fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
        let a = [u, v];
        Vec3::new(
            self.components[0].eval_unchecked(&a),
            self.components[1].eval_unchecked(&a),
            self.components[2].eval_unchecked(&a),
        )
    }
    fn domain(&self) -> Rect {
        self.domain
    }
}

/// `(u, v) -> surface(u + k v, v)`, a shear of the parameter plane.
#[derive(Debug, Clone, Copy)]
pub struct Sheared<T> {
    pub surface: T,
    pub k: f64,
}

impl<T: ParametricSurface> Sheared<T> {
    /// Parameters of this surface mapping to `(ub, vb)` on the original.
    pub fn preimage(&self, ub: f64, vb: f64) -> (f64, f64) {
        (ub - self.k * vb, vb)
    }
}

impl<T: ParametricSurface> ParametricSurface for Sheared<T> {
    fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
        self.surface.eval(u + v * self.k, v)
    }
    fn domain(&self) -> Rect {
        let d = self.surface.domain();
        let shift = [self.k * d.v0, self.k * d.v1];
        Rect::new(
            d.u0 - shift[0].max(shift[1]),
            d.u1 - shift[0].min(shift[1]),
            d.v0,
            d.v1,
        )
    }
    fn scale(&self) -> f64 {
        self.surface.scale()
    }
}

/// `(u, v) -> surface(v, u)`; flips the normal.
#[derive(Debug, Clone, Copy)]
pub struct Swapped<T>(pub T);

impl<T: ParametricSurface> ParametricSurface for Swapped<T> {
    fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
        self.0.eval(v, u)
    }
    fn domain(&self) -> Rect {
        let d = self.0.domain();
        Rect::new(d.v0, d.v1, d.u0, d.u1)
    }
    fn periods(&self) -> (Option<f64>, Option<f64>) {
        let (a, b) = self.0.periods();
        (b, a)
    }
    fn scale(&self) -> f64 {
        self.0.scale()
    }
}

/// The surface uniformly scaled about the origin.
#[derive(Debug, Clone, Copy)]
pub struct Scaled<T> {
    pub surface: T,
    pub factor: f64,
}

impl<T: ParametricSurface> ParametricSurface for Scaled<T> {
    fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
        self.surface.eval(u, v) * self.factor
    }
    fn domain(&self) -> Rect {
        self.surface.domain()
    }
    fn periods(&self) -> (Option<f64>, Option<f64>) {
        self.surface.periods()
    }
}

#[cfg(test)]
pub(crate) mod test_surfaces {
    use super::*;
    use std::f64::consts::PI;

    #[derive(Debug, Clone, Copy)]
    pub struct Sphere(pub f64);
    impl ParametricSurface for Sphere {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            Vec3::new(u.cos() * v.cos(), u.sin() * v.cos(), v.sin()) * self.0
        }
        fn domain(&self) -> Rect {
            Rect::new(0.0, 2.0 * PI, -PI / 2.0, PI / 2.0)
        }
        fn periods(&self) -> (Option<f64>, Option<f64>) {
            (Some(2.0 * PI), None)
        }
    }

    #[derive(Debug, Clone, Copy)]
    pub struct Plane;
    impl ParametricSurface for Plane {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            Vec3::new(u, v, S::zero())
        }
        fn domain(&self) -> Rect {
            Rect::new(-5.0, 5.0, -5.0, 5.0)
        }
    }

    #[derive(Debug, Clone, Copy)]
    pub struct PolarPlane;
    impl ParametricSurface for PolarPlane {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            Vec3::new(u * v.cos(), u * v.sin(), S::zero())
        }
        fn domain(&self) -> Rect {
            Rect::new(0.0, 5.0, 0.0, 2.0 * PI)
        }
    }

    /// `x = (R + r sin phi) cos theta`, `z = r cos phi`, `(u, v) = (theta, phi)`.
    #[derive(Debug, Clone, Copy)]
    pub struct Torus {
        pub r: f64,
        pub big_r: f64,
    }
    impl ParametricSurface for Torus {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            let w = v.sin() * self.r + self.big_r;
            Vec3::new(w * u.cos(), w * u.sin(), v.cos() * self.r)
        }
        fn domain(&self) -> Rect {
            Rect::new(0.0, 2.0 * PI, 0.0, 2.0 * PI)
        }
        fn periods(&self) -> (Option<f64>, Option<f64>) {
            (Some(2.0 * PI), Some(2.0 * PI))
        }
    }

    #[derive(Debug, Clone, Copy)]
    pub struct Cylinder(pub f64);
    impl ParametricSurface for Cylinder {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            Vec3::new(u.cos() * self.0, u.sin() * self.0, v)
        }
        fn domain(&self) -> Rect {
            Rect::new(0.0, 2.0 * PI, -10.0, 10.0)
        }
    }

    #[derive(Debug, Clone, Copy)]
    pub struct Catenoid(pub f64);
    impl ParametricSurface for Catenoid {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            let c = self.0;
            let w = (v / c).cosh() * c;
            Vec3::new(w * u.cos(), w * u.sin(), v)
        }
        fn domain(&self) -> Rect {
            Rect::new(0.0, 2.0 * PI, -2.0, 2.0)
        }
    }

    #[derive(Debug, Clone, Copy)]
    pub struct Saddle;
    impl ParametricSurface for Saddle {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            Vec3::new(u, v, u * u - v * v)
        }
        fn domain(&self) -> Rect {
            Rect::new(-2.0, 2.0, -2.0, 2.0)
        }
    }

    #[derive(Debug, Clone, Copy)]
    pub struct Cone;
    impl ParametricSurface for Cone {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            Vec3::new(u * v.cos(), u * v.sin(), u)
        }
        fn domain(&self) -> Rect {
            Rect::new(0.0, 2.0, 0.0, 2.0 * PI)
        }
    }
}

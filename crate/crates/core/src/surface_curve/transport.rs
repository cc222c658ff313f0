use serde::Serialize;

use super::{ParamPath, SurfaceCurve, SurfaceCurveError};
use crate::numerics::{solve_field, Jet1, JetField, OdeSpec, Scalar, StepControl};
use crate::surface::{metric_christoffel, surface_jets, ParametricSurface, SurfaceError};

/// `dA^a/dt = -Gamma^a_bc A^c du^b/dt` along a path.
#[derive(Debug, Clone, Copy)]
pub struct TransportField<'a, T, P> {
    pub surface: &'a T,
    pub path: &'a P,
}

impl<T: ParametricSurface, P: ParamPath> JetField for TransportField<'_, T, P> {
    fn dim(&self) -> usize {
        2
    }

    fn eval<S: Scalar>(&self, t: S, y: &[S], dy: &mut [S]) {
        let (u, v) = self.path.eval(Jet1::variable(t));
        let (_, g) = metric_christoffel(self.surface, u.val(), v.val());
        let du = [u.derivative(1), v.derivative(1)];
        // g[pair * 2 + upper] with pairs 11, 12, 22
        let gam = |c: usize, a: usize, b: usize| g[(a + b) * 2 + c];
        for c in 0..2 {
            let mut acc = S::zero();
            for a in 0..2 {
                for b in 0..2 {
                    acc = acc + gam(c, a, b) * y[b] * du[a];
                }
            }
            dy[c] = -acc;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransportState {
    pub t: Vec<f64>,
    pub components: Vec<[f64; 2]>,
    /// `sqrt(a_ab A^a A^b)` at each sample.
    pub norms: Vec<f64>,
}

impl TransportState {
    /// Largest relative deviation of the norm from its initial value.
    pub fn norm_drift(&self) -> f64 {
        let n0 = self.norms[0];
        self.norms.iter().map(|n| (n - n0).abs() / n0).fold(0.0, f64::max)
    }

    pub fn last(&self) -> [f64; 2] {
        *self.components.last().expect("transport has samples")
    }

    /// Signed rotation from the first to the last vector, each measured in
    /// the frame `(E1, n x E1)` at its own point; wrapped into `(-pi, pi]`.
    /// For a closed path this is the holonomy angle.
    pub fn rotation_angle<T: ParametricSurface, P: ParamPath>(
        &self,
        curve: &SurfaceCurve<T, P>,
    ) -> Result<f64, SurfaceError> {
        let (t0, t1) = (self.t[0], *self.t.last().expect("transport has samples"));
        let angle = |t: f64, a: [f64; 2]| {
            let (u, v) = curve.path.eval(t);
            frame_angle(&curve.surface, u, v, a)
        };
        Ok(wrap_angle(angle(t1, self.last())? - angle(t0, self.components[0])?))
    }
}

/// Angle of the tangent vector with components `a`, measured from `E1`
/// towards `n x E1`.
pub fn frame_angle<T: ParametricSurface + ?Sized>(surface: &T, u: f64, v: f64, a: [f64; 2]) -> Result<f64, SurfaceError> {
    surface_jets(surface, u, v, surface.scale())?;
    let (m, _) = metric_christoffel(surface, u, v);
    let (e, f, g) = (m[0], m[1], m[2]);
    let x = (e * a[0] + f * a[1]) / e.sqrt();
    let y = a[1] * ((e * g - f * f) / e).sqrt();
    Ok(y.atan2(x))
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(d: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let w = d - tau * (d / tau).round();
    if w <= -std::f64::consts::PI {
        w + tau
    } else {
        w
    }
}

/// Transports the tangent vector with components `a0` along the curve.
pub fn parallel_transport<T: ParametricSurface, P: ParamPath>(
    curve: &SurfaceCurve<T, P>,
    a0: [f64; 2],
    spec: &OdeSpec,
) -> Result<TransportState, SurfaceCurveError> {
    if a0 == [0.0, 0.0] {
        return Err(SurfaceError::ZeroVector.into());
    }
    let (t0, t1) = curve.path.domain();
    let (u0, v0) = curve.path.eval(t0);
    surface_jets(&curve.surface, u0, v0, curve.surface.scale())?;
    let field = TransportField {
        surface: &curve.surface,
        path: &curve.path,
    };
    let tr = solve_field(&field, &a0, (t0, t1), spec, |_, _| StepControl::Continue)?;
    let components: Vec<[f64; 2]> = tr.y.iter().map(|y| [y[0], y[1]]).collect();
    let norms = tr
        .t
        .iter()
        .zip(&components)
        .map(|(&t, a)| {
            let (u, v) = curve.path.eval(t);
            let (m, _) = metric_christoffel(&curve.surface, u, v);
            (m[0] * a[0] * a[0] + 2.0 * m[1] * a[0] * a[1] + m[2] * a[1] * a[1]).sqrt()
        })
        .collect();
    Ok(TransportState {
        t: tr.t,
        components,
        norms,
    })
}

use super::{derivatives_at, CurveError, CurveJets, ParametricCurve};
use crate::numerics::{
    ode_solve, solve_field, taylor_jets, try_quad_adaptive, JetField, Jet1, OdeSpec, QuadFailure, QuadSpec, Scalar,
    StepControl, Trajectory, Vec3,
};

/// `int_{t1}^{t2} |dr/dt| dt`.
pub fn arc_length<C: ParametricCurve + ?Sized>(c: &C, t1: f64, t2: f64, spec: &QuadSpec) -> Result<f64, CurveError> {
    spec.validate()?;
    let scale = c.scale();
    let speed = |t: f64| -> Result<f64, CurveError> {
        let rd = derivatives_at(c, t)[1];
        let s = rd.norm();
        if !s.is_finite() {
            return Err(CurveError::NonFinite { t });
        }
        if s <= 1e-12 * scale {
            return Err(CurveError::SingularPoint { t, speed: s });
        }
        Ok(s)
    };
    try_quad_adaptive(speed, t1, t2, spec).map_err(|e| match e {
        QuadFailure::Integrand(e) => e,
        QuadFailure::MaxDepth { estimate } => {
            CurveError::Numerics(crate::numerics::NumericsError::MaxDepthExceeded { estimate })
        }
    })
}

/// `dt/ds = 1/|dr/dt|`.
struct InverseSpeed<'a, C: ?Sized>(&'a C);

impl<C: ParametricCurve + ?Sized> JetField for InverseSpeed<'_, C> {
    fn dim(&self) -> usize {
        1
    }
    fn eval<S: Scalar>(&self, _s: S, y: &[S], dy: &mut [S]) {
        dy[0] = derivatives_at(self.0, y[0])[1].norm().recip();
    }
}

/// A curve re-expressed in its arc-length parameter `s in [0, L]`.
#[derive(Debug, Clone)]
pub struct ArcLengthCurve<C> {
    pub curve: C,
    pub length: f64,
    spec: OdeSpec,
    table: Trajectory,
}

impl<C: ParametricCurve> ArcLengthCurve<C> {
    /// Original parameter value at arc length `s`.
    pub fn parameter_at(&self, s: f64) -> f64 {
        let i = self.table.t.partition_point(|&x| x <= s).clamp(1, self.table.len()) - 1;
        let (s0, t0) = (self.table.t[i], self.table.y[i][0]);
        if s == s0 {
            return t0;
        }
        let field = InverseSpeed(&self.curve);
        match solve_field(&field, &[t0], (s0, s), &self.spec, |_, _| StepControl::Continue) {
            Ok(tr) => tr.last_y()[0],
            Err(_) => f64::NAN,
        }
    }

    /// Taylor coefficients of `t(s)` about `s0`.
    fn parameter_jet(&self, s0: f64) -> Jet1 {
        let t0 = self.parameter_at(s0);
        taylor_jets(&InverseSpeed(&self.curve), s0, &[t0])[0]
    }
}

impl<C: ParametricCurve> ParametricCurve for ArcLengthCurve<C> {
    fn eval<S: Scalar>(&self, s: S) -> Vec3<S> {
        let s0 = s.value();
        let c = self.parameter_jet(s0).taylor().to_owned();
        let h = s - s0;
        let mut t = S::constant(c[4]);
        for k in (0..4).rev() {
            t = t * h + c[k];
        }
        self.curve.eval(t)
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, self.length)
    }

    fn scale(&self) -> f64 {
        self.curve.scale()
    }
}

/// Reparameterizes by arc length measured from the start of the domain, by
/// integrating `dt/ds = 1/|dr/dt|`.
pub fn reparam_to_arclength<C: ParametricCurve>(c: C, spec: &OdeSpec) -> Result<ArcLengthCurve<C>, CurveError> {
    let (a, b) = c.domain();
    let length = arc_length(&c, a, b, &QuadSpec::with_tol(spec.abs_tol))?;
    for i in 0..=32 {
        CurveJets::new(&c, a + (b - a) * i as f64 / 32.0)?;
    }
    let field = InverseSpeed(&c);
    let table = ode_solve(|s, y, dy| field.eval(s, y, dy), &[a], (0.0, length), spec)?;
    Ok(ArcLengthCurve {
        curve: c,
        length,
        spec: *spec,
        table,
    })
}

/// `s -> curve(t0 + rate * s)`; an exact arc-length parameterization for
/// constant-speed curves when `rate = 1/speed`.
#[derive(Debug, Clone, Copy)]
pub struct LinearReparam<C> {
    pub curve: C,
    pub t0: f64,
    pub rate: f64,
    pub domain: (f64, f64),
}

impl<C: ParametricCurve> LinearReparam<C> {
    pub fn new(curve: C, t0: f64, rate: f64, domain: (f64, f64)) -> Self {
        LinearReparam {
            curve,
            t0,
            rate,
            domain,
        }
    }
}

impl<C: ParametricCurve> ParametricCurve for LinearReparam<C> {
    fn eval<S: Scalar>(&self, s: S) -> Vec3<S> {
        self.curve.eval(s * self.rate + self.t0)
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_curves::{Circle, Cubic, Helix};
    use super::super::{frenet, CurveJets};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn circle_circumference() {
        let l = arc_length(&Circle { r: 2.0 }, 0.0, 2.0 * PI, &QuadSpec::default()).unwrap();
        assert!((l - 4.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn helix_length() {
        let l = arc_length(&Helix { a: 1.0, b: 0.5 }, 0.0, 2.0 * PI, &QuadSpec::default()).unwrap();
        assert!((l - 2.0 * PI * 1.25f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn arclength_curve_has_unit_speed_and_same_invariants() {
        let arc = reparam_to_arclength(Cubic, &OdeSpec::default()).unwrap();
        for i in 0..8 {
            let s = arc.length * (i as f64 + 0.5) / 8.0;
            let j = CurveJets::new(&arc, s).unwrap();
            assert!((j.speed.val() - 1.0).abs() < 1e-8);
            let t = arc.parameter_at(s);
            let a = frenet(&arc, s).unwrap();
            let b = frenet(&Cubic, t).unwrap();
            assert!((a.kappa - b.kappa).abs() < 1e-9);
            assert!((a.tau - b.tau).abs() < 1e-9);
        }
    }

    #[test]
    fn singular_span_is_reported() {
        struct Cusp;
        impl ParametricCurve for Cusp {
            fn eval<S: Scalar>(&self, t: S) -> Vec3<S> {
                Vec3::new(t * t, t * t * t, S::zero())
            }
            fn domain(&self) -> (f64, f64) {
                (-1.0, 1.0)
            }
        }
        assert!(reparam_to_arclength(Cusp, &OdeSpec::default()).is_err());
    }
}

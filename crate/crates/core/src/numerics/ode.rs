//! Adaptive explicit Runge–Kutta integration (Dormand–Prince 5(4)).

use super::jet::Jet1;
use super::scalar::Scalar;
use super::NumericsError;

/// Tolerances and step limits for [`ode_solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for OdeSpec {
    fn default() -> Self {
        OdeSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            min_step: 1e-13,
            max_step: f64::INFINITY,
            max_steps: 200_000,
        }
    }
}

impl OdeSpec {
    pub fn with_tol(tol: f64) -> Self {
        OdeSpec {
            abs_tol: tol,
            rel_tol: tol,
            ..OdeSpec::default()
        }
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.min_step <= self.max_step) {
            return Err(NumericsError::InvalidSpec(format!(
                "ode spec requires abs_tol > 0, rel_tol > 0, min_step <= max_step (got {self:?})"
            )));
        }
        Ok(())
    }
}

/// What the integrator should do after an accepted step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepControl {
    Continue,
    /// The observer modified the state in place.
    Projected,
    /// End the integration at the current step.
    Stop,
}

/// Accepted steps of an integration, with the field value at each sample.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub dy: Vec<Vec<f64>>,
    /// Set when an observer stopped the integration before the span end.
    pub stopped_early: bool,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn last_t(&self) -> f64 {
        *self.t.last().expect("trajectory has at least the initial sample")
    }

    pub fn last_y(&self) -> &[f64] {
        self.y.last().expect("trajectory has at least the initial sample")
    }

    /// Cubic Hermite interpolation between accepted steps.
    pub fn interpolate(&self, t: f64) -> Vec<f64> {
        let n = self.t.len();
        if n == 1 {
            return self.y[0].clone();
        }
        let forward = self.t[n - 1] >= self.t[0];
        let key = |x: f64| if forward { x } else { -x };
        let pos = self.t.partition_point(|&ti| key(ti) <= key(t));
        let i = pos.clamp(1, n - 1) - 1;
        let (t0, t1) = (self.t[i], self.t[i + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        (0..self.y[i].len())
            .map(|k| {
                h00 * self.y[i][k]
                    + h10 * h * self.dy[i][k]
                    + h01 * self.y[i + 1][k]
                    + h11 * h * self.dy[i + 1][k]
            })
            .collect()
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Difference between the 5th- and embedded 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `y' = field(t, y)` over `span`, returning every accepted step.
pub fn ode_solve<F>(field: F, y0: &[f64], span: (f64, f64), spec: &OdeSpec) -> Result<Trajectory, NumericsError>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    ode_solve_observed(field, y0, span, spec, |_, _| StepControl::Continue)
}

/// Like [`ode_solve`], calling `observer` after each accepted step. The
/// observer may project the state (returning [`StepControl::Projected`]) or
/// end the integration.
pub fn ode_solve_observed<F, O>(
    mut field: F,
    y0: &[f64],
    span: (f64, f64),
    spec: &OdeSpec,
    mut observer: O,
) -> Result<Trajectory, NumericsError>
where
    F: FnMut(f64, &[f64], &mut [f64]),
    O: FnMut(f64, &mut [f64]) -> StepControl,
{
    spec.validate()?;
    let (t0, t1) = span;
    if !(t1 - t0).is_finite() || t1 == t0 {
        return Err(NumericsError::InvalidSpec(format!("degenerate span [{t0}, {t1}]")));
    }
    let n = y0.len();
    let dir = (t1 - t0).signum();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; n]; 7];
    field(t, &y, &mut k[0]);

    let mut traj = Trajectory {
        t: vec![t],
        y: vec![y.clone()],
        dy: vec![k[0].clone()],
        stopped_early: false,
    };

    let scale = |a: f64, b: f64| spec.abs_tol + spec.rel_tol * a.abs().max(b.abs());
    let mut h = initial_step(&mut field, t, &y, &k[0], t1 - t0, spec) * dir;
    let mut ytmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];
    let mut steps = 0usize;
    let mut last_rejected = false;

    while (t1 - t) * dir > 0.0 {
        if steps >= spec.max_steps {
            return Err(NumericsError::MaxStepsExceeded { t, steps });
        }
        let remaining = t1 - t;
        let final_step = h.abs() >= remaining.abs();
        if final_step {
            h = remaining;
        }
        if h.abs() < spec.min_step && !final_step {
            return Err(NumericsError::StepUnderflow { t, step: h.abs() });
        }

        for s in 1..7 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                ytmp[i] = y[i] + h * acc;
            }
            let ts = if s == 6 { t + h } else { t + C[s] * h };
            let (head, tail) = k.split_at_mut(s);
            let _ = head;
            field(ts, &ytmp, &mut tail[0]);
            if s == 6 {
                ynew.copy_from_slice(&ytmp);
            }
        }

        let mut err = 0.0;
        for i in 0..n {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            let r = h * e / scale(y[i], ynew[i]);
            err += r * r;
        }
        let err = (err / n.max(1) as f64).sqrt();
        steps += 1;

        if err.is_finite() && err <= 1.0 {
            t = if final_step { t1 } else { t + h };
            y.copy_from_slice(&ynew);
            let k7 = k[6].clone();
            k[0].copy_from_slice(&k7);
            let control = observer(t, &mut y);
            if control == StepControl::Projected {
                field(t, &y, &mut k[0]);
            }
            traj.t.push(t);
            traj.y.push(y.clone());
            traj.dy.push(k[0].clone());
            if control == StepControl::Stop {
                traj.stopped_early = (t1 - t) * dir > 0.0;
                break;
            }
            let mut fac = if err == 0.0 { 5.0 } else { 0.9 * err.powf(-0.2) };
            fac = fac.clamp(0.2, 5.0);
            if last_rejected {
                fac = fac.min(1.0);
            }
            last_rejected = false;
            h = (h * fac).abs().min(spec.max_step) * dir;
        } else {
            let fac = if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.1, 1.0)
            } else {
                0.1
            };
            h *= fac;
            last_rejected = true;
            if h.abs() < spec.min_step {
                return Err(NumericsError::StepUnderflow { t, step: h.abs() });
            }
        }
    }
    Ok(traj)
}

fn initial_step<F>(field: &mut F, t: f64, y: &[f64], f0: &[f64], span: f64, spec: &OdeSpec) -> f64
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = y.len().max(1) as f64;
    let sc: Vec<f64> = y.iter().map(|v| spec.abs_tol + spec.rel_tol * v.abs()).collect();
    let rms = |v: &[f64]| (v.iter().zip(&sc).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / n).sqrt();
    let d0 = rms(y);
    let d1 = rms(f0);
    let mut h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h0 = h0.min(span.abs()).min(spec.max_step);
    let y1: Vec<f64> = y.iter().zip(f0).map(|(a, b)| a + span.signum() * h0 * b).collect();
    let mut f1 = vec![0.0; y.len()];
    field(t + span.signum() * h0, &y1, &mut f1);
    let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0)
        .min(h1)
        .min(span.abs())
        .min(spec.max_step)
        .max(spec.min_step)
}

/// Right-hand side of an ODE that can be evaluated on any scalar type, so
/// that Taylor coefficients of its solutions can be computed exactly.
pub trait JetField {
    fn dim(&self) -> usize;
    fn eval<S: Scalar>(&self, t: S, y: &[S], dy: &mut [S]);
}

/// Integrates a [`JetField`] with [`ode_solve_observed`].
pub fn solve_field<F: JetField, O>(
    field: &F,
    y0: &[f64],
    span: (f64, f64),
    spec: &OdeSpec,
    observer: O,
) -> Result<Trajectory, NumericsError>
where
    O: FnMut(f64, &mut [f64]) -> StepControl,
{
    ode_solve_observed(|t, y, dy| field.eval(t, y, dy), y0, span, spec, observer)
}

/// Taylor expansion (to order 4) of the solution through `(t0, y0)`, by
/// Picard iteration on jets. Each pass fixes one more order exactly.
pub fn taylor_jets<F: JetField>(field: &F, t0: f64, y0: &[f64]) -> Vec<Jet1> {
    let n = field.dim();
    let mut y: Vec<Jet1> = y0.iter().map(|&v| Jet1::constant(v)).collect();
    let mut dy = vec![Jet1::constant(0.0); n];
    for _ in 0..=Jet1::<f64>::ORDER {
        field.eval(Jet1::variable(t0), &y, &mut dy);
        for i in 0..n {
            y[i] = dy[i].integrate(y0[i]);
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exponential_growth() {
        let tr = ode_solve(|_, y, dy| dy[0] = y[0], &[1.0], (0.0, 1.0), &OdeSpec::default()).unwrap();
        assert!((tr.last_y()[0] - 1f64.exp()).abs() < 1e-9);
        assert_eq!(tr.last_t(), 1.0);
    }

    #[test]
    fn zero_field_is_constant() {
        let tr = ode_solve(|_, _, dy| dy[0] = 0.0, &[2.5], (0.0, 3.0), &OdeSpec::default()).unwrap();
        assert!(tr.y.iter().all(|y| y[0] == 2.5));
    }

    #[test]
    fn harmonic_oscillator_full_period() {
        let tr = ode_solve(
            |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            &[1.0, 0.0],
            (0.0, 2.0 * PI),
            &OdeSpec::default(),
        )
        .unwrap();
        assert!((tr.last_y()[0] - 1.0).abs() < 1e-8);
        // the cosine oracle holds at intermediate samples too
        for (t, y) in tr.t.iter().zip(&tr.y) {
            assert!((y[0] - t.cos()).abs() < 1e-8);
        }
    }

    #[test]
    fn backwards_integration() {
        let tr = ode_solve(|_, y, dy| dy[0] = y[0], &[1.0], (0.0, -1.0), &OdeSpec::default()).unwrap();
        assert!((tr.last_y()[0] - (-1f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn observer_can_stop() {
        let tr = ode_solve_observed(
            |_, _, dy| dy[0] = 1.0,
            &[0.0],
            (0.0, 10.0),
            &OdeSpec::default(),
            |_, y| if y[0] > 2.0 { StepControl::Stop } else { StepControl::Continue },
        )
        .unwrap();
        assert!(tr.stopped_early);
        assert!(tr.last_t() < 10.0);
    }

    #[test]
    fn step_budget_is_enforced() {
        let spec = OdeSpec {
            max_steps: 3,
            ..OdeSpec::default()
        };
        let r = ode_solve(|t, _, dy| dy[0] = (50.0 * t).sin(), &[0.0], (0.0, 10.0), &spec);
        assert!(matches!(r, Err(NumericsError::MaxStepsExceeded { .. })));
    }

    #[test]
    fn singular_field_underflows() {
        let r = ode_solve(|_, y, dy| dy[0] = y[0] * y[0], &[1.0], (0.0, 2.0), &OdeSpec::default());
        assert!(matches!(
            r,
            Err(NumericsError::StepUnderflow { .. }) | Err(NumericsError::MaxStepsExceeded { .. })
        ));
    }

    #[test]
    fn invalid_spec_rejected() {
        let spec = OdeSpec {
            abs_tol: 0.0,
            ..OdeSpec::default()
        };
        assert!(ode_solve(|_, _, dy| dy[0] = 0.0, &[0.0], (0.0, 1.0), &spec).is_err());
    }

    struct Oscillator;
    impl JetField for Oscillator {
        fn dim(&self) -> usize {
            2
        }
        fn eval<S: Scalar>(&self, _t: S, y: &[S], dy: &mut [S]) {
            dy[0] = y[1];
            dy[1] = -y[0];
        }
    }

    #[test]
    fn taylor_jets_reproduce_cosine() {
        let t0: f64 = 0.3;
        let jets = taylor_jets(&Oscillator, t0, &[t0.cos(), -t0.sin()]);
        let d = jets[0].derivatives();
        let expect = [t0.cos(), -t0.sin(), -t0.cos(), t0.sin(), t0.cos()];
        for (a, b) in d.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn interpolation_is_accurate_between_steps() {
        let tr = ode_solve(
            |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            &[1.0, 0.0],
            (0.0, 3.0),
            &OdeSpec::default(),
        )
        .unwrap();
        for i in 0..30 {
            let t = 0.1 * i as f64 + 0.013;
            assert!((tr.interpolate(t)[0] - t.cos()).abs() < 1e-5);
        }
    }
}

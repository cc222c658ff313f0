//! Scalar root finding: secant steps, safeguarded by bisection when a
//! bracket is known.

use super::NumericsError;

const MAX_ITER: usize = 100;

/// Starting information for [`root_find`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootStart {
    /// `f(a)` and `f(b)` have opposite signs (or one is zero).
    Bracket(f64, f64),
    /// Two starting points for an unsafeguarded secant iteration.
    Seed(f64, f64),
}

/// Finds `x` with `|f(x)| <= tol`.
pub fn root_find(mut f: impl FnMut(f64) -> f64, start: RootStart, tol: f64) -> Result<f64, NumericsError> {
    match start {
        RootStart::Bracket(a, b) => bracketed(&mut f, a, b, tol),
        RootStart::Seed(x0, x1) => secant(&mut f, x0, x1, tol),
    }
}

fn bracketed(f: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64, NumericsError> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.abs() <= tol {
        return Ok(a);
    }
    if fb.abs() <= tol {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericsError::InvalidSpec(format!(
            "bracket [{a}, {b}] does not change sign (f = {fa}, {fb})"
        )));
    }
    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    let mut width = (b - a).abs();
    for _ in 0..MAX_ITER {
        let mut x = b - fb * (b - a) / (fb - fa);
        let (lo, hi) = (a.min(b), a.max(b));
        // bisect when the secant leaves the bracket or the bracket stops shrinking
        if !x.is_finite() || x <= lo || x >= hi || (b - a).abs() > 0.5 * width {
            x = 0.5 * (a + b);
        }
        width = (b - a).abs();
        let fx = f(x);
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx.abs() <= tol {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if (b - a).abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    Err(NumericsError::NoConvergence {
        best: best.0,
        residual: best.1.abs(),
    })
}

fn secant(f: &mut impl FnMut(f64) -> f64, mut x0: f64, mut x1: f64, tol: f64) -> Result<f64, NumericsError> {
    let mut f0 = f(x0);
    if f0.abs() <= tol {
        return Ok(x0);
    }
    let mut f1 = f(x1);
    let mut best = if f0.abs() < f1.abs() { (x0, f0) } else { (x1, f1) };
    for _ in 0..MAX_ITER {
        if f1.abs() <= tol {
            return Ok(x1);
        }
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        if f1.abs() < best.1.abs() {
            best = (x1, f1);
        }
    }
    if f1.abs() <= tol {
        return Ok(x1);
    }
    Err(NumericsError::NoConvergence {
        best: best.0,
        residual: best.1.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_in_bracket() {
        let x = root_find(|x| x * x - 2.0, RootStart::Bracket(1.0, 2.0), 1e-12).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn identity_root_is_zero() {
        let x = root_find(|x| x, RootStart::Seed(0.5, 0.6), 1e-14).unwrap();
        assert!(x.abs() <= 1e-14);
        let y = root_find(|x| x, RootStart::Bracket(-1.0, 3.0), 1e-14).unwrap();
        assert!(y.abs() <= 1e-14);
    }

    #[test]
    fn flat_function_does_not_converge() {
        let r = root_find(|_| 1.0, RootStart::Seed(0.0, 1.0), 1e-12);
        assert!(matches!(r, Err(NumericsError::NoConvergence { .. })));
    }

    #[test]
    fn stiff_cubic_converges_with_bracket() {
        let x = root_find(|x: f64| x.powi(3) - 1e-3, RootStart::Bracket(-5.0, 5.0), 1e-13).unwrap();
        assert!((x - 0.1).abs() < 1e-9);
    }

    #[test]
    fn bracket_without_sign_change_is_rejected() {
        assert!(root_find(|x| x * x + 1.0, RootStart::Bracket(-1.0, 1.0), 1e-12).is_err());
    }
}

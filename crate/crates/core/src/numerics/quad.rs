//! Adaptive Gauss–Legendre quadrature on intervals and rectangles.

use std::sync::LazyLock;

use super::NumericsError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub tol: f64,
    pub max_depth: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            tol: 1e-10,
            max_depth: 30,
        }
    }
}

impl QuadSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadSpec {
            tol,
            ..QuadSpec::default()
        }
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.tol > 0.0) || self.max_depth < 1 {
            return Err(NumericsError::InvalidSpec(format!(
                "quadrature spec requires tol > 0 and max_depth >= 1 (got {self:?})"
            )));
        }
        Ok(())
    }
}

/// Closed axis-aligned rectangle in parameter space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Rect {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Self {
        Rect { u0, u1, v0, v1 }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.u0 && u <= self.u1 && v >= self.v0 && v <= self.v1
    }
}

const NODES: usize = 15;

/// Nodes and weights of the 15-point Gauss–Legendre rule on [-1, 1].
static GAUSS15: LazyLock<([f64; NODES], [f64; NODES])> = LazyLock::new(|| {
    let n = NODES;
    let mut x = [0.0; NODES];
    let mut w = [0.0; NODES];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
});

fn panel<E>(f: &mut impl FnMut(f64) -> Result<f64, E>, a: f64, b: f64) -> Result<f64, E> {
    let (x, w) = &*GAUSS15;
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..NODES {
        s += w[i] * f(mid + half * x[i])?;
    }
    Ok(s * half)
}

/// Error from a fallible integrand or from exhausting the subdivision depth.
#[derive(Debug)]
pub enum QuadFailure<E> {
    Integrand(E),
    MaxDepth { estimate: f64 },
}

struct Adaptive {
    max_depth: usize,
    exhausted: bool,
}

impl Adaptive {
    fn recurse<E>(
        &mut self,
        f: &mut impl FnMut(f64) -> Result<f64, E>,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> Result<f64, E> {
        let m = 0.5 * (a + b);
        let left = panel(f, a, m)?;
        let right = panel(f, m, b)?;
        let refined = left + right;
        if (refined - whole).abs() <= tol {
            return Ok(refined);
        }
        if depth >= self.max_depth {
            self.exhausted = true;
            return Ok(refined);
        }
        let l = self.recurse(f, a, m, left, 0.5 * tol, depth + 1)?;
        let r = self.recurse(f, m, b, right, 0.5 * tol, depth + 1)?;
        Ok(l + r)
    }
}

/// Adaptive quadrature of a fallible integrand over `[a, b]`.
pub fn try_quad_adaptive<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    spec: &QuadSpec,
) -> Result<f64, QuadFailure<E>> {
    if a == b {
        return Ok(0.0);
    }
    let mut state = Adaptive {
        max_depth: spec.max_depth,
        exhausted: false,
    };
    let whole = panel(&mut f, a, b).map_err(QuadFailure::Integrand)?;
    let estimate = state
        .recurse(&mut f, a, b, whole, spec.tol, 1)
        .map_err(QuadFailure::Integrand)?;
    if state.exhausted {
        Err(QuadFailure::MaxDepth { estimate })
    } else {
        Ok(estimate)
    }
}

/// Adaptive quadrature of `f` over `[a, b]` to absolute tolerance `spec.tol`.
pub fn quad_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadSpec) -> Result<f64, NumericsError> {
    spec.validate()?;
    try_quad_adaptive(|x| Ok::<f64, std::convert::Infallible>(f(x)), a, b, spec).map_err(|e| match e {
        QuadFailure::MaxDepth { estimate } => NumericsError::MaxDepthExceeded { estimate },
        QuadFailure::Integrand(never) => match never {},
    })
}

/// Iterated adaptive quadrature of a fallible integrand over a rectangle.
pub fn try_quad2d<E>(
    mut f: impl FnMut(f64, f64) -> Result<f64, E>,
    rect: &Rect,
    spec: &QuadSpec,
) -> Result<f64, QuadFailure<E>> {
    let width = (rect.u1 - rect.u0).abs().max(f64::MIN_POSITIVE);
    let inner_spec = QuadSpec {
        tol: 0.5 * spec.tol / width,
        max_depth: spec.max_depth,
    };
    let outer_spec = QuadSpec {
        tol: 0.5 * spec.tol,
        max_depth: spec.max_depth,
    };
    let mut inner_exhausted = false;
    let result = try_quad_adaptive(
        |u| match try_quad_adaptive(|v| f(u, v), rect.v0, rect.v1, &inner_spec) {
            Ok(x) => Ok(x),
            Err(QuadFailure::MaxDepth { estimate }) => {
                inner_exhausted = true;
                Ok(estimate)
            }
            Err(QuadFailure::Integrand(e)) => Err(e),
        },
        rect.u0,
        rect.u1,
        &outer_spec,
    );
    match result {
        Ok(x) if inner_exhausted => Err(QuadFailure::MaxDepth { estimate: x }),
        other => other,
    }
}

pub fn quad2d(f: impl Fn(f64, f64) -> f64, rect: &Rect, spec: &QuadSpec) -> Result<f64, NumericsError> {
    spec.validate()?;
    try_quad2d(|u, v| Ok::<f64, std::convert::Infallible>(f(u, v)), rect, spec).map_err(|e| match e {
        QuadFailure::MaxDepth { estimate } => NumericsError::MaxDepthExceeded { estimate },
        QuadFailure::Integrand(never) => match never {},
    })
}

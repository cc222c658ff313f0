use serde::Serialize;

use super::{wrapped_delta, OdePath, ParamPath, SurfaceCurveError};
use crate::numerics::{JetField, OdeSpec, Scalar, StepControl};
use crate::surface::{metric_christoffel, surface_jets, ParametricSurface, SurfaceError};

/// `u'' = -Gamma^a_bc u^b' u^c'` with state `(u, v, u', v')`.
#[derive(Debug, Clone)]
pub struct GeodesicField<T> {
    pub surface: T,
}

impl<T: ParametricSurface> JetField for GeodesicField<T> {
    fn dim(&self) -> usize {
        4
    }

    fn eval<S: Scalar>(&self, _t: S, y: &[S], dy: &mut [S]) {
        let (_, g) = metric_christoffel(&self.surface, y[0], y[1]);
        let (p, q) = (y[2], y[3]);
        let (pp, pq, qq) = (p * p, p * q * 2.0, q * q);
        dy[0] = p;
        dy[1] = q;
        dy[2] = -(g[0] * pp + g[2] * pq + g[4] * qq);
        dy[3] = -(g[1] * pp + g[3] * pq + g[5] * qq);
    }
}

/// An arc-length geodesic; evaluates as a [`ParamPath`] in `s`.
#[derive(Debug, Clone)]
pub struct GeodesicPath<T> {
    pub path: OdePath<GeodesicField<T>>,
    /// Arc length actually integrated.
    pub length: f64,
    /// The path left the parameter rectangle and was cut short.
    pub left_domain: bool,
    /// The path reached a singular surface point and was cut short there.
    pub hit_singularity: bool,
}

impl<T: ParametricSurface> GeodesicPath<T> {
    /// Samples `(s, u, v, du/ds, dv/ds)`.
    pub fn samples(&self) -> Vec<[f64; 5]> {
        let tr = &self.path.trajectory;
        tr.t.iter()
            .zip(&tr.y)
            .map(|(&s, y)| [s, y[0], y[1], y[2], y[3]])
            .collect()
    }

    pub fn end(&self) -> [f64; 4] {
        let y = self.path.trajectory.last_y();
        [y[0], y[1], y[2], y[3]]
    }

    /// Largest `|a_ab u^a' u^b' - 1|` over the samples.
    pub fn speed_defect(&self) -> f64 {
        self.samples()
            .iter()
            .map(|s| {
                let (m, _) = metric_christoffel(&self.path.field.surface, s[1], s[2]);
                (m[0] * s[3] * s[3] + 2.0 * m[1] * s[3] * s[4] + m[2] * s[4] * s[4] - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }
}

impl<T: ParametricSurface> ParamPath for GeodesicPath<T> {
    fn eval<S: Scalar>(&self, t: S) -> (S, S) {
        self.path.eval(t)
    }
    fn domain(&self) -> (f64, f64) {
        self.path.domain()
    }
}

fn unit_speed(surface: &impl ParametricSurface, u: f64, v: f64, d: [f64; 2]) -> Option<[f64; 2]> {
    let (m, _) = metric_christoffel(surface, u, v);
    let len = (m[0] * d[0] * d[0] + 2.0 * m[1] * d[0] * d[1] + m[2] * d[1] * d[1]).sqrt();
    (len > 0.0 && len.is_finite()).then(|| [d[0] / len, d[1] / len])
}

/// Integrates the geodesic equations by arc length from `(u0, v0)` with
/// initial tangent components `direction` (rescaled to unit speed).
pub fn geodesic_ivp<T: ParametricSurface + Clone>(
    surface: &T,
    u0: f64,
    v0: f64,
    direction: [f64; 2],
    length: f64,
    spec: &OdeSpec,
) -> Result<GeodesicPath<T>, SurfaceCurveError> {
    surface_jets(surface, u0, v0, surface.scale())?;
    if !(length > 0.0) {
        return Err(SurfaceCurveError::InvalidInput(format!("geodesic length must be positive, got {length}")));
    }
    let d = unit_speed(surface, u0, v0, direction).ok_or(SurfaceError::ZeroVector)?;
    let rect = surface.domain();
    let periods = surface.periods();
    let slack = 1e-9 * (1.0 + (rect.u1 - rect.u0).abs().max((rect.v1 - rect.v0).abs()));
    let mut left = false;
    let mut singular = false;
    let scale = surface.scale();
    let observer = |_: f64, y: &mut [f64]| {
        if surface_jets(surface, y[0], y[1], scale).is_err() {
            singular = true;
            return StepControl::Stop;
        }
        let out_u = periods.0.is_none() && (y[0] < rect.u0 - slack || y[0] > rect.u1 + slack);
        let out_v = periods.1.is_none() && (y[1] < rect.v0 - slack || y[1] > rect.v1 + slack);
        if out_u || out_v {
            left = true;
            return StepControl::Stop;
        }
        match unit_speed(surface, y[0], y[1], [y[2], y[3]]) {
            Some(p) => {
                y[2] = p[0];
                y[3] = p[1];
                StepControl::Projected
            }
            None => StepControl::Continue,
        }
    };
    let field = GeodesicField {
        surface: surface.clone(),
    };
    let path = OdePath::solve(field, &[u0, v0, d[0], d[1]], (0.0, length), spec, observer)?;
    Ok(GeodesicPath {
        length: path.trajectory.last_t(),
        path,
        left_domain: left,
        hit_singularity: singular,
    })
}

/// A converged shot: initial direction angle (in the orthonormal frame
/// `E1/|E1|`, `n x E1/|E1|`) and length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BvpSolution {
    pub theta: f64,
    pub length: f64,
    pub direction: [f64; 2],
}

/// Tangent components of the unit vector at angle `theta` from `E1`.
fn direction_at_angle(m: [f64; 3], theta: f64) -> [f64; 2] {
    // orthonormal frame: e1 = E1/sqrt(E), e2 = (E E2 - F E1)/sqrt(E a)
    let (e, f, g) = (m[0], m[1], m[2]);
    let a = e * g - f * f;
    let (c, s) = (theta.cos(), theta.sin());
    let w = s / (e * a).sqrt();
    [c / e.sqrt() - w * f, w * e]
}

fn angle_of(m: [f64; 3], d: [f64; 2]) -> f64 {
    let (e, f, g) = (m[0], m[1], m[2]);
    let a = e * g - f * f;
    let x = (e * d[0] + f * d[1]) / e.sqrt();
    let y = d[1] * (a / e).sqrt();
    y.atan2(x)
}

const SEEDS: usize = 8;
const MAX_NEWTON: usize = 40;

/// Shortest geodesic found between two parameter points by shooting on the
/// initial angle and length from up to eight seeds.
pub fn geodesic_bvp<T: ParametricSurface + Clone>(
    surface: &T,
    p0: [f64; 2],
    p1: [f64; 2],
    spec: &OdeSpec,
) -> Result<GeodesicPath<T>, SurfaceCurveError> {
    let scale = surface.scale();
    surface_jets(surface, p0[0], p0[1], scale)?;
    surface_jets(surface, p1[0], p1[1], scale)?;
    let periods = surface.periods();
    let chord = wrapped_delta(p0, p1, periods);
    if chord == [0.0, 0.0] {
        return Err(SurfaceCurveError::InvalidInput("geodesic endpoints coincide".into()));
    }
    let (m, _) = metric_christoffel(surface, p0[0], p0[1]);
    let theta0 = angle_of(m, chord);
    let l0 = (m[0] * chord[0] * chord[0] + 2.0 * m[1] * chord[0] * chord[1] + m[2] * chord[1] * chord[1]).sqrt();

    let residual = |theta: f64, len: f64| -> Option<([f64; 2], [f64; 2])> {
        let path = geodesic_ivp(surface, p0[0], p0[1], direction_at_angle(m, theta), len, spec).ok()?;
        if path.left_domain || path.hit_singularity {
            return None;
        }
        let y = path.end();
        Some((wrapped_delta(p1, [y[0], y[1]], periods), [y[2], y[3]]))
    };

    let mut found: Vec<BvpSolution> = Vec::new();
    let mut best_residual = f64::INFINITY;
    for k in 0..SEEDS {
        let (mut theta, mut len) = (theta0 + k as f64 * std::f64::consts::PI / 4.0, l0);
        let Some((mut r, mut vel)) = residual(theta, len) else { continue };
        let mut norm = r[0].hypot(r[1]);
        for _ in 0..MAX_NEWTON {
            if norm <= 1e-10 {
                break;
            }
            let h = 1e-7;
            let Some((rh, _)) = residual(theta + h, len) else { break };
            // columns: d/dtheta (forward difference), d/dlen (end velocity)
            let j = [[(rh[0] - r[0]) / h, vel[0]], [(rh[1] - r[1]) / h, vel[1]]];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                break;
            }
            let dt = -(j[1][1] * r[0] - j[0][1] * r[1]) / det;
            let dl = -(-j[1][0] * r[0] + j[0][0] * r[1]) / det;
            let mut step = 1.0;
            let mut accepted = None;
            for _ in 0..12 {
                let (mut nt, mut nl) = (theta + step * dt, len + step * dl);
                if nl < 0.0 {
                    nt += std::f64::consts::PI;
                    nl = -nl;
                }
                if nl > 0.0 {
                    if let Some((nr, nv)) = residual(nt, nl) {
                        let nn = nr[0].hypot(nr[1]);
                        if nn < norm {
                            accepted = Some((nt, nl, nr, nv, nn));
                            break;
                        }
                    }
                }
                step *= 0.5;
            }
            let Some((nt, nl, nr, nv, nn)) = accepted else { break };
            (theta, len, r, vel, norm) = (nt, nl, nr, nv, nn);
        }
        best_residual = best_residual.min(norm);
        if norm <= 1e-6 {
            let theta = theta.rem_euclid(2.0 * std::f64::consts::PI);
            let duplicate = found.iter().any(|s| angle_gap(s.theta, theta) <= 1e-6 && (s.length - len).abs() <= 1e-6);
            if !duplicate {
                found.push(BvpSolution {
                    theta,
                    length: len,
                    direction: direction_at_angle(m, theta),
                });
            }
        }
    }
    let Some(best) = found.iter().copied().min_by(|a, b| a.length.total_cmp(&b.length)) else {
        return Err(SurfaceCurveError::NoConvergence { best_residual });
    };
    if let Some(rival) = found
        .iter()
        .find(|s| angle_gap(s.theta, best.theta) > 1e-6 && (s.length - best.length).abs() <= 1e-8)
    {
        return Err(SurfaceCurveError::DegenerateMultiplicity {
            solutions: [best, *rival],
        });
    }
    geodesic_ivp(surface, p0[0], p0[1], best.direction, best.length, spec)
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * std::f64::consts::PI);
    d.min(2.0 * std::f64::consts::PI - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::test_surfaces::*;
    use crate::surface_curve::{curvature_split, SurfaceCurve};
    use std::f64::consts::PI;

    #[test]
    fn plane_geodesic_is_straight() {
        let g = geodesic_ivp(&Plane, 0.0, 0.0, [1.0, 0.0], 5.0, &OdeSpec::default()).unwrap();
        let e = g.end();
        assert!((e[0] - 5.0).abs() < 1e-12 && e[1].abs() < 1e-12);
        assert!(!g.left_domain);
    }

    #[test]
    fn equator_to_pole() {
        let g = geodesic_ivp(&Sphere(1.0), 0.3, 0.0, [0.0, 1.0], PI / 2.0, &OdeSpec::default()).unwrap();
        let e = g.end();
        assert!((e[1] - PI / 2.0).abs() <= 1e-6);
        assert!(g.hit_singularity && !g.left_domain);
        assert!(g.speed_defect() <= 1e-7);
    }

    #[test]
    fn cylinder_geodesic_is_helix() {
        let rho = 2.0;
        let c = Cylinder(rho);
        // 45 degrees: equal speed around and along the axis
        let g = geodesic_ivp(&c, 0.0, 0.0, [1.0 / rho, 1.0], 6.0, &OdeSpec::default()).unwrap();
        for s in g.samples() {
            // arc length around equals rise along the axis
            assert!((s[1] * rho - s[2]).abs() <= 1e-8);
        }
        let sc = SurfaceCurve::new(c, g);
        for s in [0.5, 2.0, 4.5] {
            let split = curvature_split(&sc, s).unwrap();
            assert!(split.kappa_g.abs() <= 1e-7);
            // helix radius rho and pitch parameter rho: kappa = rho / (rho^2 + rho^2)
            assert!((split.kappa - 1.0 / (2.0 * rho)).abs() <= 1e-7);
        }
    }

    #[test]
    fn torus_geodesic_has_no_geodesic_curvature() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let g = geodesic_ivp(&t, 0.2, 0.9, [0.3, 1.0], 5.0, &OdeSpec::default()).unwrap();
        let n = g.path.trajectory.len();
        let sc = SurfaceCurve::new(t, g);
        for i in (0..n).step_by(3) {
            let s = sc.path.path.trajectory.t[i];
            assert!(curvature_split(&sc, s).unwrap().kappa_g.abs() <= 1e-7);
        }
        assert!(sc.path.speed_defect() <= 1e-7);
    }

    #[test]
    fn leaving_the_domain_is_flagged() {
        let g = geodesic_ivp(&Plane, 0.0, 0.0, [1.0, 0.0], 20.0, &OdeSpec::default()).unwrap();
        assert!(g.left_domain && g.length < 20.0);
    }

    #[test]
    fn bvp_plane_and_sphere() {
        let g = geodesic_bvp(&Plane, [0.0, 0.0], [3.0, 4.0], &OdeSpec::default()).unwrap();
        assert!((g.length - 5.0).abs() <= 1e-9);

        let s = Sphere(1.0);
        let (a, b) = ([0.2, -0.3], [1.4, 0.6]);
        let g = geodesic_bvp(&s, a, b, &OdeSpec::default()).unwrap();
        let (pa, pb) = (s.eval(a[0], a[1]), s.eval(b[0], b[1]));
        let alpha = pa.dot(&pb).clamp(-1.0, 1.0).acos();
        assert!((g.length - alpha).abs() <= 1e-6);
        let e = g.end();
        assert!(((e[0] - b[0]).hypot(e[1] - b[1])) <= 1e-6);
    }

    #[test]
    fn antipodal_points_are_degenerate() {
        match geodesic_bvp(&Sphere(1.0), [0.5, 0.0], [0.5 + PI, 0.0], &OdeSpec::default()) {
            Err(SurfaceCurveError::DegenerateMultiplicity { solutions }) => {
                assert!((solutions[0].length - PI).abs() <= 1e-6);
            }
            other => panic!("expected degenerate multiplicity, got {other:?}"),
        }
    }

    #[test]
    fn angle_round_trip() {
        let m = [2.0, 0.3, 0.7];
        for th in [0.1, 1.3, -2.0] {
            let d = direction_at_angle(m, th);
            assert!((m[0] * d[0] * d[0] + 2.0 * m[1] * d[0] * d[1] + m[2] * d[1] * d[1] - 1.0).abs() < 1e-14);
            assert!((angle_of(m, d) - th).abs() < 1e-14);
        }
    }
}

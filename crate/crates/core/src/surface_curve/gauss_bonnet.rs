use serde::Serialize;

use super::{curvature_split, ExprPath, LinePath, ParamPath, QuadraticPath, SurfaceCurve, SurfaceCurveError};
use crate::expr::{parse_str, ExprError};
use crate::numerics::{try_quad_adaptive, NumericsError, QuadFailure, QuadSpec, Rect, Scalar};
use crate::surface::{total_curvature, ParametricSurface};

/// One boundary arc in the parameter plane.
#[derive(Debug, Clone)]
pub enum LoopArc {
    Line(LinePath),
    Quadratic(QuadraticPath),
    Expr(ExprPath),
}

impl ParamPath for LoopArc {
    fn eval<S: Scalar>(&self, t: S) -> (S, S) {
        match self {
            LoopArc::Line(p) => p.eval(t),
            LoopArc::Quadratic(p) => p.eval(t),
            LoopArc::Expr(p) => p.eval(t),
        }
    }
    fn domain(&self) -> (f64, f64) {
        match self {
            LoopArc::Line(p) => p.domain(),
            LoopArc::Quadratic(p) => p.domain(),
            LoopArc::Expr(p) => p.domain(),
        }
    }
}

/// A closed, positively oriented (region on the left) piecewise-regular
/// boundary. `corners[j]` is the exterior angle where arc `j` meets arc
/// `j + 1`; `region` is a rectangle decomposition of the enclosed domain.
#[derive(Debug, Clone)]
pub struct BoundaryLoop {
    pub arcs: Vec<LoopArc>,
    pub corners: Vec<f64>,
    pub region: Vec<Rect>,
}

impl BoundaryLoop {
    /// Checks corner count and range, and that consecutive arcs meet in
    /// space (parameter endpoints may differ at coordinate singularities).
    pub fn validate<T: ParametricSurface + ?Sized>(&self, surface: &T) -> Result<(), SurfaceCurveError> {
        if self.arcs.is_empty() || self.corners.len() != self.arcs.len() {
            return Err(SurfaceCurveError::InvalidInput(format!(
                "a loop needs one corner angle per arc ({} arcs, {} corners)",
                self.arcs.len(),
                self.corners.len()
            )));
        }
        if let Some(bad) = self.corners.iter().find(|c| !(**c > -std::f64::consts::PI && **c <= std::f64::consts::PI)) {
            return Err(SurfaceCurveError::InvalidInput(format!("corner angle {bad} is outside (-pi, pi]")));
        }
        let scale = surface.scale();
        for (i, arc) in self.arcs.iter().enumerate() {
            let next = &self.arcs[(i + 1) % self.arcs.len()];
            let (end, start) = (arc.eval(arc.domain().1), next.eval(next.domain().0));
            let gap = surface.eval(end.0, end.1).distance(&surface.eval(start.0, start.1));
            if !(gap <= 1e-9 * scale) {
                return Err(SurfaceCurveError::OpenLoop { arc: i, gap });
            }
        }
        Ok(())
    }
}

impl BoundaryLoop {
    /// Parses a `.loop` boundary description:
    ///
    /// ```text
    /// loop hemisphere
    /// line 0, 0 -> 2*pi, 0
    /// corner 0
    /// region 0, 2*pi, 0, pi/2
    /// ```
    ///
    /// Arcs are `line u0, v0 -> u1, v1` or `path u = <expr>; v = <expr>; t in [a, b]`.
    /// `corner` lines give exterior angles in arc order; `region` lines list
    /// parameter rectangles `u0, u1, v0, v1` that tile the enclosed region.
    pub fn parse(text: &str) -> Result<BoundaryLoop, ExprError> {
        let err = |line: usize, m: String| ExprError::Definition { line, message: m };
        let number = |line: usize, t: &str| -> Result<f64, ExprError> {
            let x = parse_str(t.trim())?.eval_constant()?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(err(line, format!("{t:?} is not finite")))
            }
        };
        let numbers = |line: usize, t: &str, n: usize| -> Result<Vec<f64>, ExprError> {
            let parts: Vec<&str> = t.split(',').collect();
            if parts.len() != n {
                return Err(err(line, format!("expected {n} comma-separated values, found {}", parts.len())));
            }
            parts.iter().map(|p| number(line, p)).collect()
        };
        let mut header = false;
        let mut out = BoundaryLoop {
            arcs: Vec::new(),
            corners: Vec::new(),
            region: Vec::new(),
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            if !header {
                if word != "loop" {
                    return Err(err(line, "expected `loop <name>` header".into()));
                }
                header = true;
                continue;
            }
            match word {
                "line" => {
                    let (a, b) = rest
                        .split_once("->")
                        .ok_or_else(|| err(line, "expected `line u0, v0 -> u1, v1`".into()))?;
                    let (p, q) = (numbers(line, a, 2)?, numbers(line, b, 2)?);
                    out.arcs.push(LoopArc::Line(LinePath::new([p[0], p[1]], [q[0], q[1]])));
                }
                "path" => {
                    let mut u = None;
                    let mut v = None;
                    let mut dom = None;
                    for part in rest.split(';') {
                        let part = part.trim();
                        if let Some(range) = part.strip_prefix("t in") {
                            let inner = range
                                .trim()
                                .strip_prefix('[')
                                .and_then(|r| r.strip_suffix(']'))
                                .ok_or_else(|| err(line, "range must be written [a, b]".into()))?;
                            let ab = numbers(line, inner, 2)?;
                            if !(ab[0] < ab[1]) {
                                return Err(err(line, format!("empty range [{}, {}]", ab[0], ab[1])));
                            }
                            dom = Some((ab[0], ab[1]));
                        } else if let Some((lhs, rhs)) = part.split_once('=') {
                            let e = parse_str(rhs.trim())?.bind(&["t"], &[])?;
                            match lhs.trim() {
                                "u" => u = Some(e),
                                "v" => v = Some(e),
                                other => return Err(err(line, format!("unknown path component {other:?}"))),
                            }
                        } else {
                            return Err(err(line, format!("unrecognized path part {part:?}")));
                        }
                    }
                    match (u, v, dom) {
                        (Some(u), Some(v), Some(domain)) => out.arcs.push(LoopArc::Expr(ExprPath { u, v, domain })),
                        _ => return Err(err(line, "a path needs `u = ...; v = ...; t in [a, b]`".into())),
                    }
                }
                "corner" => out.corners.push(number(line, rest)?),
                "region" => {
                    let r = numbers(line, rest, 4)?;
                    if !(r[0] < r[1] && r[2] < r[3]) {
                        return Err(err(line, "region bounds must satisfy u0 < u1 and v0 < v1".into()));
                    }
                    out.region.push(Rect::new(r[0], r[1], r[2], r[3]));
                }
                other => return Err(err(line, format!("unknown directive {other:?}"))),
            }
        }
        if !header {
            return Err(err(0, "empty loop file".into()));
        }
        if out.arcs.is_empty() || out.corners.len() != out.arcs.len() {
            return Err(err(
                0,
                format!("{} arcs need {} corners, found {}", out.arcs.len(), out.arcs.len(), out.corners.len()),
            ));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussBonnetLocal {
    pub sum_kg: f64,
    pub sum_angles: f64,
    pub total_k: f64,
    /// `sum_kg + sum_angles + total_k - 2 pi`.
    pub defect: f64,
}

fn quad_err(e: QuadFailure<SurfaceCurveError>) -> SurfaceCurveError {
    match e {
        QuadFailure::Integrand(e) => e,
        QuadFailure::MaxDepth { estimate } => NumericsError::MaxDepthExceeded { estimate }.into(),
    }
}

pub fn gauss_bonnet_local<T: ParametricSurface + Clone>(
    surface: &T,
    boundary: &BoundaryLoop,
    spec: &QuadSpec,
) -> Result<GaussBonnetLocal, SurfaceCurveError> {
    spec.validate()?;
    boundary.validate(surface)?;
    let mut sum_kg = 0.0;
    for arc in &boundary.arcs {
        let sc = SurfaceCurve::new(surface.clone(), arc.clone());
        let (t0, t1) = arc.domain();
        sum_kg += try_quad_adaptive(
            |t| curvature_split(&sc, t).map(|s| s.kappa_g * s.speed),
            t0,
            t1,
            spec,
        )
        .map_err(quad_err)?;
    }
    let mut total_k = 0.0;
    for rect in &boundary.region {
        total_k += total_curvature(surface, rect, spec)?.value;
    }
    let sum_angles: f64 = boundary.corners.iter().sum();
    Ok(GaussBonnetLocal {
        sum_kg,
        sum_angles,
        total_k,
        defect: sum_kg + sum_angles + total_k - 2.0 * std::f64::consts::PI,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussBonnetGlobal {
    pub total_k: f64,
    pub chi: i32,
    /// `total_k - 2 pi chi`.
    pub defect: f64,
}

/// `rect` must cover the closed surface exactly once.
pub fn gauss_bonnet_global<T: ParametricSurface>(
    surface: &T,
    rect: &Rect,
    chi: i32,
    spec: &QuadSpec,
) -> Result<GaussBonnetGlobal, SurfaceCurveError> {
    let total_k = total_curvature(surface, rect, spec)?.value;
    Ok(GaussBonnetGlobal {
        total_k,
        chi,
        defect: total_k - 2.0 * std::f64::consts::PI * chi as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::test_surfaces::*;
    use std::f64::consts::PI;

    fn spec() -> QuadSpec {
        QuadSpec::with_tol(1e-9)
    }

    #[test]
    fn loop_file_round_trip() {
        let lp = BoundaryLoop::parse(
            "# octant\nloop octant\nline 0, 0 -> pi/2, 0\ncorner pi/2\npath u = pi/2; v = t; t in [0, pi/2]\ncorner pi/2\nline 0, pi/2 -> 0, 0\ncorner pi/2\nregion 0, pi/2, 0, pi/2\n",
        )
        .unwrap();
        assert_eq!(lp.arcs.len(), 3);
        assert_eq!(lp.region, vec![Rect::new(0.0, PI / 2.0, 0.0, PI / 2.0)]);
        let gb = gauss_bonnet_local(&Sphere(1.0), &lp, &spec()).unwrap();
        assert!(gb.defect.abs() <= 1e-5);
    }

    #[test]
    fn loop_file_errors() {
        for bad in [
            "",
            "line 0, 0 -> 1, 1\n",
            "loop a\nline 0, 0 -> 1\ncorner 0\n",
            "loop a\nline 0, 0 -> 1, 1\n",
            "loop a\npath u = t; t in [0, 1]\ncorner 0\n",
            "loop a\npath u = t; v = s; t in [0, 1]\ncorner 0\n",
            "loop a\nline 0, 0 -> 1, 1\ncorner 0\nregion 1, 0, 0, 1\n",
            "loop a\nspline 0\n",
        ] {
            assert!(BoundaryLoop::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn hemisphere() {
        let lp = BoundaryLoop {
            arcs: vec![LoopArc::Line(LinePath::new([0.0, 0.0], [2.0 * PI, 0.0]))],
            corners: vec![0.0],
            region: vec![Rect::new(0.0, 2.0 * PI, 0.0, PI / 2.0)],
        };
        let gb = gauss_bonnet_local(&Sphere(1.0), &lp, &spec()).unwrap();
        assert!(gb.sum_kg.abs() < 1e-9 && (gb.total_k - 2.0 * PI).abs() < 1e-6);
        assert!(gb.defect.abs() <= 1e-5);
    }

    #[test]
    fn octant_triangle() {
        let h = PI / 2.0;
        let lp = BoundaryLoop {
            arcs: vec![
                LoopArc::Line(LinePath::new([0.0, 0.0], [h, 0.0])),
                LoopArc::Line(LinePath::new([h, 0.0], [h, h])),
                LoopArc::Line(LinePath::new([0.0, h], [0.0, 0.0])),
            ],
            corners: vec![h, h, h],
            region: vec![Rect::new(0.0, h, 0.0, h)],
        };
        let gb = gauss_bonnet_local(&Sphere(1.0), &lp, &spec()).unwrap();
        assert!(gb.sum_kg.abs() < 1e-9);
        assert!((gb.sum_angles - 1.5 * PI).abs() < 1e-15);
        assert!((gb.total_k - h).abs() < 1e-6);
        assert!(gb.defect.abs() <= 1e-5);
    }

    #[test]
    fn semicircular_disc() {
        let r = 2.0;
        let lp = BoundaryLoop {
            arcs: vec![
                LoopArc::Line(LinePath::new([r, 0.0], [r, PI])),
                LoopArc::Line(LinePath::new([r, PI], [0.0, PI])),
                LoopArc::Line(LinePath::new([0.0, 0.0], [r, 0.0])),
            ],
            // the origin is an artificial corner
            corners: vec![PI / 2.0, 0.0, PI / 2.0],
            region: vec![Rect::new(0.0, r, 0.0, PI)],
        };
        let gb = gauss_bonnet_local(&PolarPlane, &lp, &spec()).unwrap();
        assert!((gb.sum_kg - PI).abs() < 1e-9);
        assert_eq!(gb.total_k, 0.0);
        assert!(gb.defect.abs() <= 1e-5);
    }

    #[test]
    fn open_and_malformed_loops() {
        let lp = BoundaryLoop {
            arcs: vec![LoopArc::Line(LinePath::new([0.0, 0.0], [1.0, 0.0]))],
            corners: vec![0.0],
            region: vec![],
        };
        assert!(matches!(
            gauss_bonnet_local(&Plane, &lp, &spec()),
            Err(SurfaceCurveError::OpenLoop { arc: 0, .. })
        ));
        let lp = BoundaryLoop {
            corners: vec![4.0],
            ..lp
        };
        assert!(matches!(
            gauss_bonnet_local(&Plane, &lp, &spec()),
            Err(SurfaceCurveError::InvalidInput(_))
        ));
    }

    #[test]
    fn global_sphere_and_torus() {
        let s = Sphere(1.0);
        assert!(gauss_bonnet_global(&s, &s.domain(), 2, &spec()).unwrap().defect.abs() <= 1e-5);
        let t = Torus { r: 1.0, big_r: 3.0 };
        assert!(gauss_bonnet_global(&t, &t.domain(), 0, &spec()).unwrap().defect.abs() <= 1e-5);
    }
}

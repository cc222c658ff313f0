use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{nums, Num, Record, SuiteSummary, Value};
use super::{load_shape, tolerance, tolerance_overridden, CliError, Report, VerifyArgs, EXIT_SUITE};
use crate::catalog::{CurveShape, Shape, SurfaceShape};
use crate::curve::{frenet, frenet_residuals, CurveError, ParametricCurve};
use crate::numerics::OdeSpec;
use crate::surface::{
    christoffel_cross_check, codazzi_compatibility_residuals, curvatures, form_identity_residual,
    gauss_weingarten_residuals, riemann_r1212, forms, ParametricSurface, ShapeClass, SurfaceError,
};
use crate::surface_curve::{
    asymptotic_line, bonnet_torsion_check, curvature_split, geodesic_torsion, liouville_check, normal_curvature,
    LinePath, ParamPath, QuadraticPath, SurfaceCurve, SurfaceCurveError,
};

/// `Ok(None)` marks a sample where the identity does not apply.
type Outcome = Result<Option<f64>, String>;

type SurfaceCheck = fn(&SurfaceShape, f64, f64) -> Outcome;
type CurveCheck = fn(&CurveShape, f64) -> Outcome;

pub const SURFACE_SUITES: &[(&str, f64, SurfaceCheck)] = &[
    ("beltrami-enneper", 1e-6, beltrami_enneper),
    ("bonnet", 1e-7, bonnet),
    ("christoffel", 1e-7, christoffel),
    ("codazzi", 1e-7, codazzi),
    ("curvature-split", 1e-8, split),
    ("egregium", 1e-7, egregium),
    ("euler", 1e-8, euler),
    ("form-identity", 1e-7, form_identity),
    ("gauss-weingarten", 1e-7, gauss_weingarten),
    ("geodesic-torsion", 1e-8, torsion),
    ("liouville", 1e-7, liouville),
    ("meusnier", 1e-8, meusnier),
];

pub const CURVE_SUITES: &[(&str, f64, CurveCheck)] = &[("frame", 1e-10, frame), ("frenet-serret", 1e-9, frenet_serret)];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn s_err(e: SurfaceError) -> String {
    e.to_string()
}

fn gauss_weingarten(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    Ok(Some(gauss_weingarten_residuals(s, u, v).map_err(s_err)?.max()))
}

fn codazzi(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    Ok(Some(codazzi_compatibility_residuals(s, u, v).map_err(s_err)?.max()))
}

fn form_identity(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    let r = form_identity_residual(s, u, v).map_err(s_err)?;
    Ok(Some(r.residual.max(r.trace_residual)))
}

fn egregium(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    let k = curvatures(s, u, v).map_err(s_err)?.k;
    let det = forms(s, u, v).map_err(s_err)?.det_a();
    Ok(Some(rel(k, riemann_r1212(s, u, v).map_err(s_err)? / det)))
}

fn christoffel(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    Ok(Some(christoffel_cross_check(s, u, v).map_err(s_err)?))
}

fn euler(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    let cd = curvatures(s, u, v).map_err(s_err)?;
    let (Some(d1), Some(d2)) = (cd.dir1, cd.dir2) else {
        return Ok(None);
    };
    let scale = cd.kappa1.abs().max(cd.kappa2.abs()).max(1.0);
    let mut worst: f64 = 0.0;
    for i in 0..16 {
        let th = std::f64::consts::PI * i as f64 / 16.0;
        let (sn, cs) = th.sin_cos();
        let c = [cs * d1.components[0] + sn * d2.components[0], cs * d1.components[1] + sn * d2.components[1]];
        let kn = normal_curvature(s, u, v, c).map_err(s_err)?;
        let expected = cd.kappa1 * cs * cs + cd.kappa2 * sn * sn;
        worst = worst.max((kn - expected).abs() / scale);
    }
    Ok(Some(worst))
}

/// Parameter direction used by the path-based suites.
fn direction(s: &SurfaceShape) -> [f64; 2] {
    let d = s.domain();
    let (sn, cs) = 0.7_f64.sin_cos();
    [0.05 * (d.u1 - d.u0) * cs, 0.05 * (d.v1 - d.v0) * sn]
}

fn line(s: &SurfaceShape, u: f64, v: f64) -> LinePath {
    let d = direction(s);
    LinePath::new([u, v], [u + d[0], v + d[1]])
}

fn bent(s: &SurfaceShape, u: f64, v: f64) -> QuadraticPath {
    let d = direction(s);
    QuadraticPath {
        p0: [u, v],
        d,
        c: [0.6 * d[1], -0.4 * d[0]],
        domain: (-1.0, 1.0),
    }
}

fn sc_err(e: SurfaceCurveError) -> String {
    e.to_string()
}

fn meusnier(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    let a = curvature_split(&SurfaceCurve::new(s, line(s, u, v)), 0.0).map_err(sc_err)?;
    let b = curvature_split(&SurfaceCurve::new(s, bent(s, u, v)), 0.0).map_err(sc_err)?;
    let form = normal_curvature(s, u, v, direction(s)).map_err(s_err)?;
    Ok(Some(rel(a.kappa_n, b.kappa_n).max(rel(b.kappa_n, form))))
}

fn split(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    Ok(Some(curvature_split(&SurfaceCurve::new(s, bent(s, u, v)), 0.0).map_err(sc_err)?.residual()))
}

fn torsion(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    let g = geodesic_torsion(&SurfaceCurve::new(s, bent(s, u, v)), 0.0).map_err(sc_err)?;
    Ok(g.principal.map(|p| rel(p, g.tau_g)))
}

fn liouville(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    match liouville_check(&SurfaceCurve::new(s, line(s, u, v)), 0.0) {
        Ok(c) => Ok(Some(rel(c.kappa_g, c.liouville))),
        Err(SurfaceCurveError::NonOrthogonalPatch { .. }) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn bonnet(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    match bonnet_torsion_check(&SurfaceCurve::new(s, bent(s, u, v)), 0.0) {
        Ok(c) => Ok(Some(c.residual / c.tau.abs().max(c.tau_g.abs()).max(1.0))),
        Err(SurfaceCurveError::AsymptoticPoint { .. })
        | Err(SurfaceCurveError::Curve(CurveError::InflectionPoint { .. })) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

/// `tau^2 = -K` along both asymptotic families; straight families skip.
fn beltrami_enneper(s: &SurfaceShape, u: f64, v: f64) -> Outcome {
    if curvatures(s, u, v).map_err(s_err)?.shape != ShapeClass::Hyperbolic {
        return Ok(None);
    }
    let length = 0.05 * s.scale();
    let mut worst: Option<f64> = None;
    for plus in [true, false] {
        let path = match asymptotic_line(s, u, v, plus, length, &OdeSpec::default()) {
            Ok(p) => p,
            Err(SurfaceCurveError::Numerics(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let t = 0.5 * ParamPath::domain(&path).1;
        let sc = SurfaceCurve::new(s, &path);
        let f = match frenet(&sc, t) {
            Ok(f) => f,
            Err(CurveError::InflectionPoint { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let (pu, pv) = ParamPath::eval(&path, t);
        let k = curvatures(s, pu, pv).map_err(s_err)?.k;
        let r = (f.tau * f.tau + k).abs() / k.abs().max(1.0);
        worst = Some(worst.map_or(r, |w: f64| w.max(r)));
    }
    Ok(worst)
}

fn frenet_serret(c: &CurveShape, t: f64) -> Outcome {
    match frenet_residuals(c, t) {
        Ok(r) => {
            let f = frenet(c, t).map_err(|e| e.to_string())?;
            Ok(Some(r.max() / (f.kappa * f.kappa + f.tau * f.tau).max(1.0)))
        }
        Err(CurveError::InflectionPoint { .. }) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn frame(c: &CurveShape, t: f64) -> Outcome {
    let f = match frenet(c, t) {
        Ok(f) => f,
        Err(CurveError::InflectionPoint { .. }) => return Ok(None),
        Err(e) => return Err(e.to_string()),
    };
    let (tt, n, b) = (f.tangent, f.normal, f.binormal);
    Ok(Some(
        [
            tt.dot(&n).abs(),
            tt.dot(&b).abs(),
            n.dot(&b).abs(),
            (tt.norm() - 1.0).abs(),
            (n.norm() - 1.0).abs(),
            (tt.cross(&n) - b).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max),
    ))
}

/// Points drawn uniformly from the domain with a 2% margin on each side.
pub fn sample_points(shape: &Shape, seed: u64, n: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = |lo: f64, hi: f64| lo + (hi - lo) * (0.02 + 0.96 * rng.gen::<f64>());
    (0..n)
        .map(|_| match shape {
            Shape::Curve(c) => {
                let (a, b) = c.domain();
                vec![pick(a, b)]
            }
            Shape::Surface(s) => {
                let d = s.domain();
                let u = pick(d.u0, d.u1);
                vec![u, pick(d.v0, d.v1)]
            }
        })
        .collect()
}

pub(super) fn run(a: &VerifyArgs, report: &mut Report) -> Result<i32, CliError> {
    let loaded = load_shape(&a.shape)?;
    report.shape = Some(loaded.descriptor.clone());
    if a.samples == 0 {
        return Err(CliError::args("--samples must be positive"));
    }
    let names: Vec<(&str, f64)> = match &loaded.shape {
        Shape::Curve(_) => CURVE_SUITES.iter().map(|s| (s.0, s.1)).collect(),
        Shape::Surface(_) => SURFACE_SUITES.iter().map(|s| (s.0, s.1)).collect(),
    };
    for want in &a.suite {
        if !names.iter().any(|n| n.0 == want.trim()) {
            let known: Vec<&str> = names.iter().map(|n| n.0).collect();
            return Err(CliError::args(format!(
                "unknown suite {want:?} for a {}; known: {}",
                loaded.descriptor.kind,
                known.join(", ")
            )));
        }
    }
    let selected = |name: &str| a.suite.is_empty() || a.suite.iter().any(|s| s.trim() == name);
    let override_tol = tolerance_overridden(a.out.tol);
    let points = sample_points(&loaded.shape, a.seed, a.samples);

    let mut any_failed = false;
    for (i, &(name, default_tol)) in names.iter().enumerate() {
        if !selected(name) {
            continue;
        }
        let tol = if override_tol { tolerance(a.out.tol, default_tol)? } else { default_tol };
        let mut summary = SuiteSummary {
            name: name.to_string(),
            tolerance: Num(tol),
            samples: points.len(),
            passed: 0,
            failed: 0,
            skipped: 0,
            max_residual: Num(0.0),
            status: String::new(),
        };
        for p in &points {
            let outcome = match &loaded.shape {
                Shape::Curve(c) => (CURVE_SUITES[i].2)(c, p[0]),
                Shape::Surface(s) => (SURFACE_SUITES[i].2)(s, p[0], p[1]),
            };
            let (value, status) = match outcome {
                Ok(Some(r)) if r <= tol => {
                    summary.passed += 1;
                    (Value::from(r), "pass".to_string())
                }
                Ok(Some(r)) => {
                    summary.failed += 1;
                    (Value::from(r), "fail".to_string())
                }
                Ok(None) => {
                    summary.skipped += 1;
                    (Value::Null, "skipped".to_string())
                }
                Err(msg) => {
                    summary.failed += 1;
                    (Value::Null, format!("error: {msg}"))
                }
            };
            if let Value::Scalar(Num(r)) = value {
                summary.max_residual = Num(summary.max_residual.0.max(r));
            } else if status.starts_with("error") {
                summary.max_residual = Num(f64::NAN);
            }
            report.records.push(Record {
                point: nums(p),
                quantity: name.to_string(),
                value,
                status,
            });
        }
        summary.status = if summary.failed > 0 {
            any_failed = true;
            "fail"
        } else if summary.passed == 0 {
            "skipped"
        } else {
            "pass"
        }
        .to_string();
        report.suites.push(summary);
    }
    report.put("seed", a.seed as f64);
    report.put("samples", a.samples as f64);
    report.status = if any_failed { "fail" } else { "pass" }.into();
    Ok(if any_failed { EXIT_SUITE } else { 0 })
}

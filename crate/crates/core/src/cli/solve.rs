use std::path::Path;

use super::report::{Csv, Report, Value};
use super::{
    eval_list, eval_number, load_shape, parse_point, tolerance, CliError, GaussBonnetArgs, GeodesicArgs,
    ReconstructArgs, TransportArgs, EXIT_ARGS, EXIT_EVAL, EXIT_SOLVER,
};
use crate::catalog::SurfaceShape;
use crate::curve::{frenet, reconstruct_from_kappa_tau, CurveError, FrenetSeed, ParametricCurve};
use crate::expr::{parse_str, BoundExpr};
use crate::numerics::{OdeSpec, QuadSpec, Rect};
use crate::surface::{total_curvature, ParametricSurface, SurfaceError};
use crate::surface_curve::{
    curvature_split, frame_angle, gauss_bonnet_global, gauss_bonnet_local, geodesic_bvp, geodesic_ivp,
    parallel_transport, wrap_angle, BoundaryLoop, ExprPath, LoopArc, ParamPath, SurfaceCurve, SurfaceCurveError,
};

fn solver_err(e: SurfaceCurveError) -> CliError {
    let code = match &e {
        SurfaceCurveError::InvalidInput(_)
        | SurfaceCurveError::OpenLoop { .. }
        | SurfaceCurveError::Surface(SurfaceError::ZeroVector | SurfaceError::InvalidInput(_)) => EXIT_ARGS,
        SurfaceCurveError::Surface(_) | SurfaceCurveError::Curve(_) => EXIT_EVAL,
        _ => EXIT_SOLVER,
    };
    let message = match &e {
        SurfaceCurveError::DegenerateMultiplicity { solutions } => format!(
            "{e}: initial angles {} and {}",
            solutions[0].theta, solutions[1].theta
        ),
        _ => e.to_string(),
    };
    CliError::new(code, message)
}

fn surface_of(loaded: &super::Loaded) -> Result<&SurfaceShape, CliError> {
    loaded
        .shape
        .as_surface()
        .ok_or_else(|| CliError::args(format!("{} is a curve; this command needs a surface", loaded.descriptor.name)))
}

fn read_loop(path: &Path) -> Result<BoundaryLoop, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::args(format!("{}: {e}", path.display())))?;
    BoundaryLoop::parse(&text).map_err(|e| CliError::args(format!("{}: {e}", path.display())))
}

fn parse_rect(text: &str) -> Result<Rect, CliError> {
    let r = eval_list(text, 4)?;
    Ok(Rect::new(r[0], r[1], r[2], r[3]))
}

fn status(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.into()
}

pub(super) fn geodesic(a: &GeodesicArgs, report: &mut Report) -> Result<(Option<Csv>, i32), CliError> {
    let loaded = load_shape(&a.shape)?;
    report.shape = Some(loaded.descriptor.clone());
    let s = surface_of(&loaded)?;
    let tol = tolerance(a.out.tol, 1e-6)?;
    let p0 = parse_point(&a.from, &loaded.names)?;
    let spec = OdeSpec::default();
    let (path, target) = match (&a.to, &a.dir, &a.length) {
        (Some(to), _, _) => {
            let p1 = parse_point(to, &loaded.names)?;
            let path = geodesic_bvp(s, [p0[0], p0[1]], [p1[0], p1[1]], &spec).map_err(solver_err)?;
            (path, Some(p1))
        }
        (None, Some(dir), Some(len)) => {
            let d = eval_list(dir, 2)?;
            let path = geodesic_ivp(s, p0[0], p0[1], [d[0], d[1]], eval_number(len)?, &spec).map_err(solver_err)?;
            (path, None)
        }
        _ => return Err(CliError::args("geodesic needs --to, or --dir with --length")),
    };

    let mut csv = Csv::new(&["s", "u", "v", "x", "y", "z"]);
    let sc = SurfaceCurve::new(s, &path);
    let mut max_kg: f64 = 0.0;
    for row in path.samples() {
        let x = s.eval(row[1], row[2]);
        csv.rows.push(vec![row[0], row[1], row[2], x.x, x.y, x.z]);
        if let Ok(split) = curvature_split(&sc, row[0]) {
            max_kg = max_kg.max(split.kappa_g.abs());
        }
    }
    let end = path.end();
    report.put("length", path.length);
    report.put("end", Value::Vector(super::report::nums(&[end[0], end[1]])));
    report.put("left_domain", Value::Flag(path.left_domain));
    report.put("hit_singularity", Value::Flag(path.hit_singularity));
    report.put("speed_defect", path.speed_defect());
    report.put("max_abs_kappa_g", max_kg);
    let mut ok = max_kg <= tol;
    if let Some(p1) = target {
        let gap = s.eval(end[0], end[1]).distance(&s.eval(p1[0], p1[1]));
        report.put("endpoint_error", gap);
        ok &= gap <= tol * s.scale();
    }
    report.put("tolerance", tol);
    report.status = status(ok);
    Ok((Some(csv), 0))
}

fn expr_path(text: &str, range: &str) -> Result<ExprPath, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::args(format!("--path expects \"u(t), v(t)\", got {text:?}")));
    }
    let bind = |p: &str| -> Result<BoundExpr, CliError> {
        parse_str(p.trim())
            .and_then(|e| e.bind(&["t"], &[]))
            .map_err(|e| CliError::args(format!("--path {p:?}: {e}")))
    };
    let r = eval_list(range, 2)?;
    if !(r[1] > r[0]) {
        return Err(CliError::args("--t-range must be increasing"));
    }
    Ok(ExprPath {
        u: bind(parts[0])?,
        v: bind(parts[1])?,
        domain: (r[0], r[1]),
    })
}

pub(super) fn transport(a: &TransportArgs, report: &mut Report) -> Result<(Option<Csv>, i32), CliError> {
    let loaded = load_shape(&a.shape)?;
    report.shape = Some(loaded.descriptor.clone());
    let s = surface_of(&loaded)?;
    let tol = tolerance(a.out.tol, 1e-6)?;
    let (arcs, mut region) = match (&a.path, &a.loop_file) {
        (Some(p), _) => {
            let range = a.t_range.as_deref().ok_or_else(|| CliError::args("--path needs --t-range"))?;
            (vec![LoopArc::Expr(expr_path(p, range)?)], Vec::new())
        }
        (None, Some(f)) => {
            let lp = read_loop(f)?;
            lp.validate(s).map_err(solver_err)?;
            (lp.arcs, lp.region)
        }
        (None, None) => return Err(CliError::args("transport needs --path or --loop")),
    };
    if !a.region.is_empty() {
        region = a.region.iter().map(|r| parse_rect(r)).collect::<Result<_, _>>()?;
    }
    let v0 = eval_list(&a.vector, 2)?;
    let spec = OdeSpec::default();

    let mut csv = Csv::new(&["arc", "t", "A1", "A2", "norm", "angle"]);
    let mut comp = [v0[0], v0[1]];
    let mut first: Option<(f64, f64)> = None;
    let mut last_angle = 0.0;
    let mut drift: f64 = 0.0;
    for (i, arc) in arcs.iter().enumerate() {
        let sc = SurfaceCurve::new(s, arc);
        let st = parallel_transport(&sc, comp, &spec).map_err(solver_err)?;
        for ((&t, c), &n) in st.t.iter().zip(&st.components).zip(&st.norms) {
            let (u, v) = arc.eval(t);
            let ang = frame_angle(s, u, v, *c).map_err(|e| solver_err(e.into()))?;
            let (a0, n0) = *first.get_or_insert((ang, n));
            drift = drift.max((n - n0).abs() / n0);
            last_angle = ang;
            csv.rows.push(vec![i as f64, t, c[0], c[1], n, wrap_angle(ang - a0)]);
        }
        comp = st.last();
    }
    let (a0, _) = first.expect("transport has samples");
    let start = arcs[0].eval(arcs[0].domain().0);
    let last = arcs.last().expect("at least one arc");
    let end = last.eval(last.domain().1);
    let gap = s.eval(start.0, start.1).distance(&s.eval(end.0, end.1));
    let closed = gap <= 1e-9 * s.scale();
    report.put("final", Value::Vector(super::report::nums(&comp)));
    report.put("norm_drift", drift);
    report.put("closed", Value::Flag(closed));
    let mut ok = drift <= tol;
    if closed {
        let holonomy = wrap_angle(last_angle - a0);
        report.put("holonomy", holonomy);
        if !region.is_empty() {
            let quad = QuadSpec::with_tol(1e-10);
            let mut total_k = 0.0;
            for r in &region {
                total_k += total_curvature(s, r, &quad).map_err(|e| solver_err(e.into()))?.value;
            }
            let defect = wrap_angle(holonomy - total_k);
            report.put("total_k", total_k);
            report.put("holonomy_defect", defect);
            ok &= defect.abs() <= tol;
        }
    }
    report.put("tolerance", tol);
    report.status = status(ok);
    Ok((Some(csv), 0))
}

pub(super) fn gauss_bonnet(a: &GaussBonnetArgs, report: &mut Report) -> Result<i32, CliError> {
    let loaded = load_shape(&a.shape)?;
    report.shape = Some(loaded.descriptor.clone());
    let s = surface_of(&loaded)?;
    let tol = tolerance(a.out.tol, 1e-5)?;
    let quad = QuadSpec::with_tol(1e-9);
    let defect = if a.global {
        let chi = match a.chi.or_else(|| s.chi()) {
            Some(c) => c,
            None => return Err(CliError::args("this surface is not closed in the catalog; pass --chi")),
        };
        let g = gauss_bonnet_global(s, &s.domain(), chi, &quad).map_err(solver_err)?;
        report.put("total_k", g.total_k);
        report.put("chi", g.chi as f64);
        report.put("two_pi_chi", 2.0 * std::f64::consts::PI * g.chi as f64);
        g.defect
    } else {
        let f = a.loop_file.as_ref().ok_or_else(|| CliError::args("gauss-bonnet needs --loop or --global"))?;
        let lp = read_loop(f)?;
        let g = gauss_bonnet_local(s, &lp, &quad).map_err(solver_err)?;
        report.put("sum_kg", g.sum_kg);
        report.put("sum_angles", g.sum_angles);
        report.put("total_k", g.total_k);
        g.defect
    };
    report.put("defect", defect);
    report.put("tolerance", tol);
    report.status = status(defect.abs() <= tol);
    Ok(0)
}

fn curve_err(e: CurveError) -> CliError {
    let code = match e {
        CurveError::NonPositiveCurvature { .. } | CurveError::InvalidInput(_) | CurveError::NonOrthonormalSeed { .. } => {
            EXIT_ARGS
        }
        _ => EXIT_SOLVER,
    };
    CliError::new(code, e.to_string())
}

pub(super) fn reconstruct(a: &ReconstructArgs, report: &mut Report) -> Result<(Option<Csv>, i32), CliError> {
    let tol = tolerance(a.out.tol, 1e-6)?;
    let bind = |flag: &str, text: &str| -> Result<BoundExpr, CliError> {
        parse_str(text)
            .and_then(|e| e.bind(&["s"], &[]))
            .map_err(|e| CliError::args(format!("--{flag} {text:?}: {e}")))
    };
    let kappa = bind("kappa", &a.kappa)?;
    let tau = bind("tau", &a.tau)?;
    let length = eval_number(&a.length)?;
    if a.samples == 0 {
        return Err(CliError::args("--samples must be positive"));
    }
    let curve = reconstruct_from_kappa_tau(kappa.clone(), tau.clone(), FrenetSeed::default(), length, &OdeSpec::default())
        .map_err(curve_err)?;

    let mut csv = Csv::new(&["s", "x", "y", "z"]);
    let (mut dk, mut dt): (f64, f64) = (0.0, 0.0);
    for i in 0..=a.samples {
        let s = length * i as f64 / a.samples as f64;
        let x = curve.eval(s);
        csv.rows.push(vec![s, x.x, x.y, x.z]);
        let f = frenet(&curve, s).map_err(curve_err)?;
        let (k, t): (f64, f64) = (kappa.eval_unchecked(&[s]), tau.eval_unchecked(&[s]));
        dk = dk.max((f.kappa - k).abs() / k.abs().max(1.0));
        dt = dt.max((f.tau - t).abs() / t.abs().max(1.0));
    }
    let closure = curve.eval(length).distance(&curve.eval(0.0));
    report.put("kappa", Value::Text(a.kappa.clone()));
    report.put("tau", Value::Text(a.tau.clone()));
    report.put("length", length);
    report.put("closure_gap", closure);
    report.put("max_kappa_deviation", dk);
    report.put("max_tau_deviation", dt);
    report.put("tolerance", tol);
    report.status = status(dk <= tol && dt <= tol);
    Ok((Some(csv), 0))
}

use std::collections::BTreeMap;

use super::report::{nums, Record, Value};
use super::{load_shape, parse_point, CliError, EvalArgs, EXIT_EVAL};
use crate::catalog::{CurveShape, Shape, SurfaceShape};
use crate::curve::{frenet, CurveJets, ParametricCurve};
use crate::surface::{curvatures, dupin_classification, forms, surface_frame, ParametricSurface, ShapeClass};
use crate::surface_curve::{asymptotic_directions, AsymptoticDirections, TangentDirection};

const SURFACE_GROUPS: &[(&str, &[&str])] = &[
    ("forms", &["E", "F", "G", "e", "f", "g", "c11", "c12", "c22"]),
    ("curvatures", &["K", "H", "kappa1", "kappa2"]),
    ("shape-class", &["shape_class", "umbilic", "dupin"]),
    ("asymptotic", &["asymptotic_count", "asymptotic_directions"]),
    ("principal", &["kappa1", "kappa2", "principal_directions"]),
];

const SURFACE_SINGLES: &[&str] = &[
    "position",
    "normal",
    "christoffel",
    "E",
    "F",
    "G",
    "e",
    "f",
    "g",
    "c11",
    "c12",
    "c22",
    "K",
    "H",
    "kappa1",
    "kappa2",
    "shape_class",
    "umbilic",
    "dupin",
    "asymptotic_count",
    "asymptotic_directions",
    "principal_directions",
];

const CURVE_GROUPS: &[(&str, &[&str])] = &[("frenet", &["T", "N", "B", "kappa", "tau"])];

const CURVE_SINGLES: &[&str] = &["position", "speed", "T", "N", "B", "kappa", "tau", "darboux"];

/// Requested quantities in name order, each with its member names
/// (`None` for a single quantity).
fn expand<'a>(
    requested: &[String],
    groups: &[(&'a str, &'a [&'a str])],
    singles: &[&'a str],
) -> Result<BTreeMap<String, Option<&'a [&'a str]>>, CliError> {
    let mut out = BTreeMap::new();
    let requested: Vec<&str> = if requested.is_empty() {
        groups.iter().take(2).map(|g| g.0).collect()
    } else {
        requested.iter().map(|s| s.trim()).collect()
    };
    for q in requested {
        if let Some((_, names)) = groups.iter().find(|g| g.0 == q) {
            out.insert(q.to_string(), Some(*names));
        } else if singles.contains(&q) {
            out.insert(q.to_string(), None);
        } else {
            let known: Vec<&str> = groups.iter().map(|g| g.0).chain(singles.iter().copied()).collect();
            return Err(CliError::args(format!("unknown quantity {q:?}; known: {}", known.join(", "))));
        }
    }
    Ok(out)
}

fn axis(lo: f64, hi: f64, n: usize, periodic: bool) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    let div = if periodic { n } else { n - 1 };
    (0..n).map(|i| lo + (hi - lo) * i as f64 / div as f64).collect()
}

fn grid_size(text: &str) -> Result<usize, CliError> {
    match text.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::args(format!("grid size {text:?} must be a positive integer"))),
    }
}

fn grid_points(shape: &Shape, text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    match shape {
        Shape::Curve(c) => {
            let (a, b) = c.domain();
            Ok(axis(a, b, grid_size(text)?, false).into_iter().map(|t| vec![t]).collect())
        }
        Shape::Surface(s) => {
            let (nu, nv) = text
                .split_once(['x', 'X'])
                .ok_or_else(|| CliError::args(format!("surface grid must be NxM, got {text:?}")))?;
            let d = s.domain();
            let (pu, pv) = s.periods();
            let us = axis(d.u0, d.u1, grid_size(nu)?, pu.is_some());
            let vs = axis(d.v0, d.v1, grid_size(nv)?, pv.is_some());
            Ok(us.iter().flat_map(|&u| vs.iter().map(move |&v| vec![u, v])).collect())
        }
    }
}

fn lower(c: impl std::fmt::Debug) -> String {
    let s = format!("{c:?}");
    let mut out = String::new();
    for (i, ch) in s.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('_');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

fn direction_vectors(ds: &[TangentDirection]) -> Value {
    Value::Vectors(ds.iter().map(|d| nums(&d.vector.to_array())).collect())
}

fn surface_value(s: &SurfaceShape, u: f64, v: f64, name: &str) -> Result<Value, String> {
    let e = |x: crate::surface::SurfaceError| x.to_string();
    let value = match name {
        "position" => s.eval(u, v).into(),
        "normal" => surface_frame(s, u, v).map_err(e)?.n.into(),
        "christoffel" => {
            let fb = forms(s, u, v).map_err(e)?;
            Value::Vector(nums(&fb.gamma2))
        }
        "E" | "F" | "G" | "e" | "f" | "g" | "c11" | "c12" | "c22" => {
            let fb = forms(s, u, v).map_err(e)?;
            match name {
                "E" => fb.a11,
                "F" => fb.a12,
                "G" => fb.a22,
                "e" => fb.b11,
                "f" => fb.b12,
                "g" => fb.b22,
                "c11" => fb.c11,
                "c12" => fb.c12,
                _ => fb.c22,
            }
            .into()
        }
        "K" | "H" | "kappa1" | "kappa2" | "shape_class" | "umbilic" => {
            let cd = curvatures(s, u, v).map_err(e)?;
            match name {
                "K" => cd.k.into(),
                "H" => cd.h.into(),
                "kappa1" => cd.kappa1.into(),
                "kappa2" => cd.kappa2.into(),
                "umbilic" => Value::Flag(cd.is_umbilic),
                _ => Value::Text(lower(cd.shape)),
            }
        }
        "dupin" => Value::Text(lower(dupin_classification(s, u, v).map_err(e)?)),
        "asymptotic_count" => match asymptotic_directions(s, u, v).map_err(e)?.count() {
            Some(n) => (n as f64).into(),
            None => Value::Text("all".into()),
        },
        "asymptotic_directions" => match asymptotic_directions(s, u, v).map_err(e)? {
            AsymptoticDirections::None => Value::Vectors(Vec::new()),
            AsymptoticDirections::One(d) => direction_vectors(&[d]),
            AsymptoticDirections::Two(a, b) => direction_vectors(&[a, b]),
            AsymptoticDirections::AllDirections => Value::Text("all".into()),
        },
        "principal_directions" => {
            let cd = curvatures(s, u, v).map_err(e)?;
            match (cd.dir1, cd.dir2) {
                (Some(a), Some(b)) => Value::Vectors(vec![nums(&a.vector.to_array()), nums(&b.vector.to_array())]),
                _ if cd.shape == ShapeClass::Flat || cd.is_umbilic => {
                    return Err(crate::surface::SurfaceError::UmbilicPoint { u, v }.to_string())
                }
                _ => Value::Null,
            }
        }
        other => unreachable!("unexpanded quantity {other}"),
    };
    Ok(value)
}

fn curve_value(c: &CurveShape, t: f64, name: &str) -> Result<Value, String> {
    let e = |x: crate::curve::CurveError| x.to_string();
    Ok(match name {
        "position" => c.eval(t).into(),
        "speed" => CurveJets::new(c, t).map_err(e)?.speed.val().into(),
        "kappa" => CurveJets::new(c, t).map_err(e)?.kappa_value().into(),
        _ => {
            let f = frenet(c, t).map_err(e)?;
            match name {
                "T" => f.tangent.into(),
                "N" => f.normal.into(),
                "B" => f.binormal.into(),
                "tau" => f.tau.into(),
                "darboux" => f.darboux.into(),
                other => unreachable!("unexpanded quantity {other}"),
            }
        }
    })
}

pub(super) fn run(a: &EvalArgs, report: &mut super::Report) -> Result<i32, CliError> {
    let loaded = load_shape(&a.shape)?;
    report.shape = Some(loaded.descriptor.clone());
    let names = match &loaded.shape {
        Shape::Curve(_) => expand(&a.quantity, CURVE_GROUPS, CURVE_SINGLES)?,
        Shape::Surface(_) => expand(&a.quantity, SURFACE_GROUPS, SURFACE_SINGLES)?,
    };
    let points = match &a.grid {
        Some(g) => grid_points(&loaded.shape, g)?,
        None if a.at.is_empty() => return Err(CliError::args("eval needs --at or --grid")),
        None => a.at.iter().map(|p| parse_point(p, &loaded.names)).collect::<Result<_, _>>()?,
    };

    let value = |p: &[f64], name: &str| match &loaded.shape {
        Shape::Curve(c) => curve_value(c, p[0], name),
        Shape::Surface(s) => surface_value(s, p[0], p[1], name),
    };
    let mut first_error: Option<CliError> = None;
    for p in &points {
        for (name, members) in &names {
            let result = match members {
                None => value(p, name),
                Some(members) => members
                    .iter()
                    .map(|m| value(p, m).map(|v| (m.to_string(), v)).map_err(|e| format!("{m}: {e}")))
                    .collect::<Result<BTreeMap<_, _>, _>>()
                    .map(Value::Map),
            };
            let (value, status) = match result {
                Ok(v) => (v, "ok".to_string()),
                Err(msg) => {
                    if first_error.is_none() {
                        first_error = Some(CliError {
                            code: EXIT_EVAL,
                            message: format!("{name}: {msg}"),
                            point: Some(p.clone()),
                        });
                    }
                    (Value::Null, format!("error: {msg}"))
                }
            };
            report.records.push(Record {
                point: nums(p),
                quantity: name.clone(),
                value,
                status,
            });
        }
    }
    report.put("points", points.len() as f64);
    match first_error {
        Some(e) => {
            report.status = "error".into();
            report.error = Some(super::report::ErrorInfo {
                exit_code: e.code,
                message: e.message,
                point: e.point.as_deref().map(nums),
            });
            Ok(EXIT_EVAL)
        }
        None => Ok(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_expand_and_sort() {
        let q = expand(&["principal".into(), "E".into(), "curvatures".into()], SURFACE_GROUPS, SURFACE_SINGLES).unwrap();
        assert_eq!(q.keys().collect::<Vec<_>>(), ["E", "curvatures", "principal"]);
        assert_eq!(q["curvatures"].unwrap(), ["K", "H", "kappa1", "kappa2"]);
        assert!(q["E"].is_none());
        assert!(expand(&["bogus".into()], SURFACE_GROUPS, SURFACE_SINGLES).is_err());
        let d = expand(&[], CURVE_GROUPS, CURVE_SINGLES).unwrap();
        assert!(d["frenet"].unwrap().contains(&"tau"));
    }

    #[test]
    fn grid_axes() {
        assert_eq!(axis(0.0, 1.0, 3, false), vec![0.0, 0.5, 1.0]);
        assert_eq!(axis(0.0, 1.0, 4, true), vec![0.0, 0.25, 0.5, 0.75]);
        assert_eq!(axis(0.0, 1.0, 1, false), vec![0.5]);
        assert_eq!(lower(ShapeClass::Hyperbolic), "hyperbolic");
        assert_eq!(lower(crate::surface::DupinClass::TwoParallelLines), "two_parallel_lines");
    }
}

//! Built-in parameterized curves and surfaces.
//!
//! Every entry documents its parameter keys (with defaults), its domain and
//! the side its unit normal `n = E1 x E2 / |E1 x E2|` points to. Several
//! entries carry closed-form reference values used to cross-check the
//! kernels.

mod reference;
mod shapes;

use std::collections::BTreeMap;

pub use reference::{monge_curvatures, quadric_gaussian_curvature};
pub use shapes::{CurveShape, SurfaceShape};

use crate::expr::{parse_str, ExprError, ShapeDefinition, ShapeKind};
use crate::numerics::Rect;
use crate::surface::ExprSurface;
use crate::curve::ExprCurve;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown shape {name:?}; known shapes: {known}")]
    UnknownShape { name: String, known: String },
    #[error("invalid parameter {key}: {message}")]
    InvalidParameter { key: String, message: String },
    #[error("no reference value for {quantity} on {shape}")]
    NoReference { shape: String, quantity: String },
}

/// Which side of the surface the unit normal points to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalSide {
    Outward,
    Inward,
    /// Open graph-like patches: `n` has a positive z component at the origin.
    Up,
    /// No meaningful inside or outside.
    Unoriented,
}

impl NormalSide {
    /// Factor that turns the computed H and principal curvatures into their
    /// outward-normal values, where an outside exists.
    pub fn outward_sign(self) -> Option<f64> {
        match self {
            NormalSide::Outward => Some(1.0),
            NormalSide::Inward => Some(-1.0),
            _ => None,
        }
    }
}

/// Registry metadata for one built-in shape.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: ShapeKind,
    /// Parameter keys and defaults. `f` for `monge` is expression text and is
    /// listed separately in [`CatalogEntry::text_params`].
    pub params: &'static [(&'static str, f64)],
    pub text_params: &'static [(&'static str, &'static str)],
    pub formula: &'static str,
    pub domain: &'static str,
    pub normal: NormalSide,
    /// Euler characteristic of the closed surface covered by the domain.
    pub chi: Option<i32>,
}

const fn curve(
    name: &'static str,
    params: &'static [(&'static str, f64)],
    formula: &'static str,
    domain: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        name,
        kind: ShapeKind::Curve,
        params,
        text_params: &[],
        formula,
        domain,
        normal: NormalSide::Unoriented,
        chi: None,
    }
}

const fn surface(
    name: &'static str,
    params: &'static [(&'static str, f64)],
    formula: &'static str,
    domain: &'static str,
    normal: NormalSide,
    chi: Option<i32>,
) -> CatalogEntry {
    CatalogEntry {
        name,
        kind: ShapeKind::Surface,
        params,
        text_params: &[],
        formula,
        domain,
        normal,
        chi,
    }
}

pub static REGISTRY: &[CatalogEntry] = &[
    curve("line", &[("dx", 1.0), ("dy", 2.0), ("dz", 2.0)], "t (dx, dy, dz)", "t in [-1, 1]"),
    curve("circle", &[("r", 1.0)], "(r cos t, r sin t, 0)", "t in [0, 2pi]"),
    curve("ellipse", &[("a", 2.0), ("b", 1.0)], "(a cos t, b sin t, 0)", "t in [0, 2pi]"),
    curve("helix", &[("a", 1.0), ("b", 0.5)], "(a cos t, a sin t, b t)", "t in [0, 4pi]"),
    curve(
        "spherical-spiral",
        &[("R", 1.0), ("k", 0.2)],
        "R (cos kt cos t, cos kt sin t, sin kt)",
        "t in [-2pi, 2pi]",
    ),
    surface("plane", &[("w", 10.0)], "(u, v, 0)", "[-w, w] x [-w, w]", NormalSide::Up, None),
    surface(
        "sphere",
        &[("R", 1.0)],
        "R (cos u cos v, sin u cos v, sin v)",
        "[0, 2pi] x [-pi/2, pi/2], u periodic",
        NormalSide::Outward,
        Some(2),
    ),
    surface(
        "cylinder",
        &[("R", 1.0), ("h", 10.0)],
        "(R cos u, R sin u, v)",
        "[0, 2pi] x [-h, h], u periodic",
        NormalSide::Outward,
        None,
    ),
    surface(
        "cone",
        &[("c", 1.0), ("eps", 0.1), ("h", 2.0)],
        "(u cos v, u sin v, c u)",
        "[eps, h] x [0, 2pi], v periodic; apex excluded",
        NormalSide::Inward,
        None,
    ),
    surface(
        "ellipsoid",
        &[("a", 3.0), ("b", 2.0), ("c", 1.0)],
        "(a cos u cos v, b sin u cos v, c sin v)",
        "[0, 2pi] x [-pi/2, pi/2], u periodic",
        NormalSide::Outward,
        Some(2),
    ),
    surface(
        "hyperboloid-one-sheet",
        &[("a", 1.0), ("b", 1.0), ("c", 1.0), ("h", 1.0)],
        "(a cosh v cos u, b cosh v sin u, c sinh v)",
        "[0, 2pi] x [-h, h], u periodic",
        NormalSide::Outward,
        None,
    ),
    surface(
        "hyperboloid-two-sheets",
        &[("a", 1.0), ("b", 1.0), ("c", 1.0), ("eps", 0.1), ("h", 1.5)],
        "(a cosh v, b sinh v cos u, c sinh v sin u)",
        "[0, 2pi] x [eps, h], u periodic; the vertex is a coordinate singularity and is excluded",
        NormalSide::Unoriented,
        None,
    ),
    surface(
        "elliptic-paraboloid",
        &[("a", 1.0), ("b", 1.0), ("w", 1.0)],
        "(u, v, u^2/a^2 + v^2/b^2)",
        "[-w, w] x [-w, w]",
        NormalSide::Up,
        None,
    ),
    surface(
        "hyperbolic-paraboloid",
        &[("a", 1.0), ("b", 1.0), ("w", 1.0)],
        "(u, v, u^2/a^2 - v^2/b^2)",
        "[-w, w] x [-w, w]",
        NormalSide::Up,
        None,
    ),
    surface(
        "quadric-cone",
        &[("a", 1.0), ("b", 2.0), ("c", 1.0), ("eps", 0.1), ("h", 2.0)],
        "(a u cos v, b u sin v, c u)",
        "[eps, h] x [0, 2pi], v periodic; apex excluded",
        NormalSide::Inward,
        None,
    ),
    surface(
        "torus",
        &[("r", 1.0), ("R", 3.0)],
        "((R + r sin v) cos u, (R + r sin v) sin u, r cos v)",
        "[0, 2pi] x [0, 2pi], both periodic; u is the angle about the axis, v the tube angle",
        NormalSide::Inward,
        Some(0),
    ),
    surface(
        "catenoid",
        &[("c", 1.0), ("h", 1.5)],
        "(c cosh(v/c) cos u, c cosh(v/c) sin u, v)",
        "[0, 2pi] x [-h, h], u periodic",
        NormalSide::Outward,
        None,
    ),
    surface(
        "helicoid",
        &[("c", 1.0), ("w", 1.0), ("h", 3.0)],
        "(u cos v, u sin v, c v)",
        "[-w, w] x [-h, h]",
        NormalSide::Unoriented,
        None,
    ),
    surface(
        "enneper",
        &[("w", 1.0)],
        "(u - u^3/3 + u v^2, v^3/3 - v - u^2 v, u^2 - v^2)",
        "[-w, w] x [-w, w]",
        NormalSide::Unoriented,
        None,
    ),
    CatalogEntry {
        name: "monge",
        kind: ShapeKind::Surface,
        params: &[("w", 1.0)],
        text_params: &[("f", "u^2 - v^2")],
        formula: "(u, v, f(u, v))",
        domain: "[-w, w] x [-w, w]",
        normal: NormalSide::Up,
        chi: None,
    },
    surface(
        "pseudosphere",
        &[("rho", 1.0), ("eps", 0.1), ("h", 3.0)],
        "(rho sech u cos v, rho sech u sin v, rho (u - tanh u))",
        "[eps, h] x [0, 2pi], v periodic; the cuspidal edge u = 0 is excluded",
        NormalSide::Inward,
        None,
    ),
];

pub fn entry(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    REGISTRY
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownShape {
            name: name.to_string(),
            known: REGISTRY.iter().map(|e| e.name).collect::<Vec<_>>().join(", "),
        })
}

/// A built shape: a curve or a surface.
#[derive(Debug, Clone)]
pub enum Shape {
    Curve(CurveShape),
    Surface(SurfaceShape),
}

impl Shape {
    pub fn kind(&self) -> ShapeKind {
        match self {
            Shape::Curve(_) => ShapeKind::Curve,
            Shape::Surface(_) => ShapeKind::Surface,
        }
    }

    pub fn as_curve(&self) -> Option<&CurveShape> {
        match self {
            Shape::Curve(c) => Some(c),
            Shape::Surface(_) => None,
        }
    }

    pub fn as_surface(&self) -> Option<&SurfaceShape> {
        match self {
            Shape::Surface(s) => Some(s),
            Shape::Curve(_) => None,
        }
    }

    /// Wraps a parsed `.pc` / `.ps` definition.
    pub fn from_definition(def: &ShapeDefinition) -> Shape {
        let components = def.bound().clone();
        match def.kind {
            ShapeKind::Curve => {
                let p = &def.params[0];
                Shape::Curve(CurveShape::Defined(ExprCurve {
                    components,
                    domain: (p.lo, p.hi),
                }))
            }
            ShapeKind::Surface => {
                let (p, q) = (&def.params[0], &def.params[1]);
                Shape::Surface(SurfaceShape::Defined(ExprSurface {
                    components,
                    domain: Rect::new(p.lo, p.hi, q.lo, q.hi),
                }))
            }
        }
    }
}

/// Resolved parameter values for one entry.
#[derive(Debug, Clone)]
pub(crate) struct Params {
    values: BTreeMap<&'static str, f64>,
    texts: BTreeMap<&'static str, String>,
}

impl Params {
    pub(crate) fn get(&self, key: &str) -> f64 {
        self.values[key]
    }

    pub(crate) fn text(&self, key: &str) -> &str {
        &self.texts[key]
    }

    pub(crate) fn positive(&self, key: &str) -> Result<f64, CatalogError> {
        let v = self.get(key);
        if v > 0.0 {
            Ok(v)
        } else {
            Err(invalid(key, format!("must be positive (got {v})")))
        }
    }
}

pub(crate) fn invalid(key: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::InvalidParameter {
        key: key.to_string(),
        message: message.into(),
    }
}

fn resolve<K: AsRef<str>, V: AsRef<str>>(e: &CatalogEntry, overrides: &[(K, V)]) -> Result<Params, CatalogError> {
    let mut values: BTreeMap<&'static str, f64> = e.params.iter().copied().collect();
    let mut texts: BTreeMap<&'static str, String> = e.text_params.iter().map(|(k, v)| (*k, v.to_string())).collect();
    for (k, v) in overrides {
        let (k, v) = (k.as_ref(), v.as_ref());
        if let Some((key, _)) = e.text_params.iter().find(|(n, _)| *n == k) {
            texts.insert(key, v.to_string());
        } else if let Some((key, _)) = e.params.iter().find(|(n, _)| *n == k) {
            let x = parse_str(v)
                .and_then(|x| x.eval_constant())
                .map_err(|err: ExprError| invalid(k, err.to_string()))?;
            if !x.is_finite() {
                return Err(invalid(k, format!("{v:?} is not finite")));
            }
            values.insert(key, x);
        } else {
            let mut keys: Vec<&str> = e.params.iter().map(|p| p.0).collect();
            keys.extend(e.text_params.iter().map(|p| p.0));
            return Err(invalid(k, format!("{} takes {}", e.name, if keys.is_empty() { "no parameters".to_string() } else { keys.join(", ") })));
        }
    }
    Ok(Params { values, texts })
}

/// Parameter values after applying overrides to the defaults: numeric
/// parameters and text parameters, each sorted by key.
pub fn resolved<K: AsRef<str>, V: AsRef<str>>(
    name: &str,
    overrides: &[(K, V)],
) -> Result<(BTreeMap<String, f64>, BTreeMap<String, String>), CatalogError> {
    let p = resolve(entry(name)?, overrides)?;
    Ok((
        p.values.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        p.texts.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    ))
}

/// Builds a catalog shape. Override values are constant expressions such as
/// `2` or `pi/3`; `monge` takes `f` as expression text in `u` and `v`.
pub fn make<K: AsRef<str>, V: AsRef<str>>(name: &str, overrides: &[(K, V)]) -> Result<Shape, CatalogError> {
    let e = entry(name)?;
    let p = resolve(e, overrides)?;
    match e.kind {
        ShapeKind::Curve => CurveShape::build(name, &p).map(Shape::Curve),
        ShapeKind::Surface => SurfaceShape::build(name, &p).map(Shape::Surface),
    }
}

/// Closed-form values at a curve parameter `[t]` or surface point `[u, v]`.
/// Curve keys: `kappa`, `tau`. Surface keys: `K`, `H`, `kappa1`, `kappa2`.
pub fn reference<K: AsRef<str>, V: AsRef<str>>(
    name: &str,
    overrides: &[(K, V)],
    point: &[f64],
) -> Result<BTreeMap<String, f64>, CatalogError> {
    let shape = make(name, overrides)?;
    let want = match shape {
        Shape::Curve(_) => 1,
        Shape::Surface(_) => 2,
    };
    if point.len() != want {
        return Err(invalid("point", format!("{name} needs {want} coordinate(s), got {}", point.len())));
    }
    let values = match &shape {
        Shape::Curve(c) => c.reference(point[0]),
        Shape::Surface(s) => s.reference(point[0], point[1]),
    };
    if values.is_empty() {
        return Err(CatalogError::NoReference {
            shape: name.to_string(),
            quantity: "any".to_string(),
        });
    }
    Ok(values)
}

#[cfg(test)]
mod tests;

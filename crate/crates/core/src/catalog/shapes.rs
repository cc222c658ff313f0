use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use super::reference::{monge_curvatures, quadric_gaussian_curvature};
use super::{invalid, CatalogError, Params};
use crate::curve::{ExprCurve, ParametricCurve};
use crate::expr::{parse_str, BoundExpr};
use crate::numerics::{Rect, Scalar, Vec3};
use crate::surface::{ExprSurface, ParametricSurface};

#[derive(Debug, Clone)]
pub enum CurveShape {
    Line { dir: Vec3 },
    Circle { r: f64 },
    Ellipse { a: f64, b: f64 },
    Helix { a: f64, b: f64 },
    SphericalSpiral { r: f64, k: f64 },
    Defined(ExprCurve),
}

impl CurveShape {
    pub(super) fn build(name: &str, p: &Params) -> Result<Self, CatalogError> {
        Ok(match name {
            "line" => {
                let dir = Vec3::new(p.get("dx"), p.get("dy"), p.get("dz"));
                if !(dir.norm() > 0.0) {
                    return Err(invalid("dx", "direction must be nonzero"));
                }
                CurveShape::Line { dir }
            }
            "circle" => CurveShape::Circle { r: p.positive("r")? },
            "ellipse" => CurveShape::Ellipse {
                a: p.positive("a")?,
                b: p.positive("b")?,
            },
            "helix" => CurveShape::Helix {
                a: p.positive("a")?,
                b: p.get("b"),
            },
            "spherical-spiral" => {
                let k = p.get("k");
                if !(k.abs() * 2.0 * PI < PI / 2.0) {
                    return Err(invalid("k", "|k| must be below 1/4 so the spiral stays off the poles"));
                }
                CurveShape::SphericalSpiral { r: p.positive("R")?, k }
            }
            other => unreachable!("{other} is not a curve entry"),
        })
    }

    /// Closed-form curvature and torsion where known.
    pub fn reference(&self, t: f64) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        match *self {
            CurveShape::Line { .. } => {
                m.insert("kappa".into(), 0.0);
            }
            CurveShape::Circle { r } => {
                m.insert("kappa".into(), 1.0 / r);
                m.insert("tau".into(), 0.0);
            }
            CurveShape::Ellipse { a, b } => {
                let q = a * a * t.sin().powi(2) + b * b * t.cos().powi(2);
                m.insert("kappa".into(), a * b / q.powf(1.5));
                m.insert("tau".into(), 0.0);
            }
            CurveShape::Helix { a, b } => {
                m.insert("kappa".into(), a / (a * a + b * b));
                m.insert("tau".into(), b / (a * a + b * b));
            }
            CurveShape::SphericalSpiral { .. } | CurveShape::Defined(_) => {}
        }
        m
    }
}

impl ParametricCurve for CurveShape {
    fn eval<S: Scalar>(&self, t: S) -> Vec3<S> {
        match self {
            CurveShape::Line { dir } => Vec3::new(t * dir.x, t * dir.y, t * dir.z),
            CurveShape::Circle { r } => Vec3::new(t.cos() * *r, t.sin() * *r, S::zero()),
            CurveShape::Ellipse { a, b } => Vec3::new(t.cos() * *a, t.sin() * *b, S::zero()),
            CurveShape::Helix { a, b } => Vec3::new(t.cos() * *a, t.sin() * *a, t * *b),
            CurveShape::SphericalSpiral { r, k } => {
                let lat = t * *k;
                Vec3::new(lat.cos() * t.cos(), lat.cos() * t.sin(), lat.sin()).scale(S::constant(*r))
            }
            CurveShape::Defined(c) => c.eval(t),
        }
    }

    fn domain(&self) -> (f64, f64) {
        match self {
            CurveShape::Line { .. } => (-1.0, 1.0),
            CurveShape::Circle { .. } | CurveShape::Ellipse { .. } => (0.0, TAU),
            CurveShape::Helix { .. } => (0.0, 2.0 * TAU),
            CurveShape::SphericalSpiral { .. } => (-TAU, TAU),
            CurveShape::Defined(c) => c.domain,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SurfaceShape {
    Plane { w: f64 },
    Sphere { r: f64 },
    Cylinder { r: f64, h: f64 },
    Cone { c: f64, eps: f64, h: f64 },
    Ellipsoid { a: f64, b: f64, c: f64 },
    HyperboloidOneSheet { a: f64, b: f64, c: f64, h: f64 },
    HyperboloidTwoSheets { a: f64, b: f64, c: f64, eps: f64, h: f64 },
    EllipticParaboloid { a: f64, b: f64, w: f64 },
    HyperbolicParaboloid { a: f64, b: f64, w: f64 },
    QuadricCone { a: f64, b: f64, c: f64, eps: f64, h: f64 },
    Torus { r: f64, big_r: f64 },
    Catenoid { c: f64, h: f64 },
    Helicoid { c: f64, w: f64, h: f64 },
    Enneper { w: f64 },
    Monge { f: BoundExpr, text: String, w: f64 },
    Pseudosphere { rho: f64, eps: f64, h: f64 },
    Defined(ExprSurface),
}

fn band(p: &Params) -> Result<(f64, f64), CatalogError> {
    let eps = p.positive("eps")?;
    let h = p.get("h");
    if !(h > eps) {
        return Err(invalid("h", format!("must exceed eps = {eps} (got {h})")));
    }
    Ok((eps, h))
}

impl SurfaceShape {
    pub(super) fn build(name: &str, p: &Params) -> Result<Self, CatalogError> {
        Ok(match name {
            "plane" => SurfaceShape::Plane { w: p.positive("w")? },
            "sphere" => SurfaceShape::Sphere { r: p.positive("R")? },
            "cylinder" => SurfaceShape::Cylinder {
                r: p.positive("R")?,
                h: p.positive("h")?,
            },
            "cone" => {
                let c = p.get("c");
                if c == 0.0 || !c.is_finite() {
                    return Err(invalid("c", "slope must be nonzero"));
                }
                let (eps, h) = band(p)?;
                SurfaceShape::Cone { c, eps, h }
            }
            "ellipsoid" => SurfaceShape::Ellipsoid {
                a: p.positive("a")?,
                b: p.positive("b")?,
                c: p.positive("c")?,
            },
            "hyperboloid-one-sheet" => SurfaceShape::HyperboloidOneSheet {
                a: p.positive("a")?,
                b: p.positive("b")?,
                c: p.positive("c")?,
                h: p.positive("h")?,
            },
            "hyperboloid-two-sheets" => {
                let (eps, h) = band(p)?;
                SurfaceShape::HyperboloidTwoSheets {
                    a: p.positive("a")?,
                    b: p.positive("b")?,
                    c: p.positive("c")?,
                    eps,
                    h,
                }
            }
            "elliptic-paraboloid" => SurfaceShape::EllipticParaboloid {
                a: p.positive("a")?,
                b: p.positive("b")?,
                w: p.positive("w")?,
            },
            "hyperbolic-paraboloid" => SurfaceShape::HyperbolicParaboloid {
                a: p.positive("a")?,
                b: p.positive("b")?,
                w: p.positive("w")?,
            },
            "quadric-cone" => {
                let (eps, h) = band(p)?;
                SurfaceShape::QuadricCone {
                    a: p.positive("a")?,
                    b: p.positive("b")?,
                    c: p.positive("c")?,
                    eps,
                    h,
                }
            }
            "torus" => {
                let r = p.positive("r")?;
                let big_r = p.positive("R")?;
                if r >= big_r {
                    return Err(invalid("r", format!("tube radius r = {r} must be below R = {big_r}")));
                }
                SurfaceShape::Torus { r, big_r }
            }
            "catenoid" => SurfaceShape::Catenoid {
                c: p.positive("c")?,
                h: p.positive("h")?,
            },
            "helicoid" => {
                let c = p.get("c");
                if c == 0.0 || !c.is_finite() {
                    return Err(invalid("c", "pitch must be nonzero"));
                }
                SurfaceShape::Helicoid {
                    c,
                    w: p.positive("w")?,
                    h: p.positive("h")?,
                }
            }
            "enneper" => SurfaceShape::Enneper { w: p.positive("w")? },
            "monge" => {
                let text = p.text("f").to_string();
                let f = parse_str(&text)
                    .and_then(|e| e.bind(&["u", "v"], &[]))
                    .map_err(|e| invalid("f", e.to_string()))?;
                SurfaceShape::Monge {
                    f,
                    text,
                    w: p.positive("w")?,
                }
            }
            "pseudosphere" => {
                let (eps, h) = band(p)?;
                SurfaceShape::Pseudosphere {
                    rho: p.positive("rho")?,
                    eps,
                    h,
                }
            }
            other => unreachable!("{other} is not a surface entry"),
        })
    }

    /// Euler characteristic when the domain covers a closed surface.
    pub fn chi(&self) -> Option<i32> {
        match self {
            SurfaceShape::Sphere { .. } | SurfaceShape::Ellipsoid { .. } => Some(2),
            SurfaceShape::Torus { .. } => Some(0),
            _ => None,
        }
    }

    /// Closed-form `K`, `H` and principal curvatures where known, for the
    /// documented normal orientation.
    pub fn reference(&self, u: f64, v: f64) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, x: f64| {
            m.insert(k.to_string(), x);
        };
        let mut kh = |k: f64, h: f64| {
            put("K", k);
            put("H", h);
        };
        match self {
            SurfaceShape::Plane { .. } => {
                kh(0.0, 0.0);
                m.insert("kappa1".into(), 0.0);
                m.insert("kappa2".into(), 0.0);
            }
            SurfaceShape::Sphere { r } => {
                kh(1.0 / (r * r), -1.0 / r);
                m.insert("kappa1".into(), -1.0 / r);
                m.insert("kappa2".into(), -1.0 / r);
            }
            SurfaceShape::Cylinder { r, .. } => {
                kh(0.0, -0.5 / r);
                m.insert("kappa1".into(), 0.0);
                m.insert("kappa2".into(), -1.0 / r);
            }
            SurfaceShape::Cone { .. } | SurfaceShape::QuadricCone { .. } => put("K", 0.0),
            SurfaceShape::Ellipsoid { a, b, c } => {
                let x = self.eval(u, v);
                put("K", quadric_gaussian_curvature([a * a, b * b, c * c], x));
            }
            SurfaceShape::HyperboloidOneSheet { a, b, c, .. } => {
                let x = self.eval(u, v);
                put("K", quadric_gaussian_curvature([a * a, b * b, -c * c], x));
            }
            SurfaceShape::HyperboloidTwoSheets { a, b, c, .. } => {
                let x = self.eval(u, v);
                put("K", quadric_gaussian_curvature([a * a, -b * b, -c * c], x));
            }
            SurfaceShape::EllipticParaboloid { a, b, .. } => {
                let (k, h) = monge_curvatures([2.0 * u / (a * a), 2.0 * v / (b * b)], [2.0 / (a * a), 0.0, 2.0 / (b * b)]);
                kh(k, h);
            }
            SurfaceShape::HyperbolicParaboloid { a, b, .. } => {
                let (k, h) =
                    monge_curvatures([2.0 * u / (a * a), -2.0 * v / (b * b)], [2.0 / (a * a), 0.0, -2.0 / (b * b)]);
                kh(k, h);
            }
            SurfaceShape::Torus { r, big_r } => {
                let s = v.sin();
                kh(s / (r * (big_r + r * s)), (big_r + 2.0 * r * s) / (2.0 * r * (big_r + r * s)));
            }
            SurfaceShape::Catenoid { c, .. } => kh(-1.0 / (c * c * (v / c).cosh().powi(4)), 0.0),
            SurfaceShape::Helicoid { c, .. } => kh(-(c * c) / (u * u + c * c).powi(2), 0.0),
            SurfaceShape::Enneper { .. } => kh(-4.0 / (1.0 + u * u + v * v).powi(4), 0.0),
            SurfaceShape::Monge { f, .. } => {
                use crate::numerics::Jet2;
                let z = f.eval_unchecked(&[Jet2::var_u(u), Jet2::var_v(v)]);
                let (k, h) = monge_curvatures(
                    [z.partial(1, 0), z.partial(0, 1)],
                    [z.partial(2, 0), z.partial(1, 1), z.partial(0, 2)],
                );
                kh(k, h);
            }
            SurfaceShape::Pseudosphere { rho, .. } => put("K", -1.0 / (rho * rho)),
            SurfaceShape::Defined(_) => {}
        }
        m
    }
}

impl ParametricSurface for SurfaceShape {
    fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
        match self {
            SurfaceShape::Plane { .. } => Vec3::new(u, v, S::zero()),
            SurfaceShape::Sphere { r } => {
                Vec3::new(u.cos() * v.cos(), u.sin() * v.cos(), v.sin()).scale(S::constant(*r))
            }
            SurfaceShape::Cylinder { r, .. } => Vec3::new(u.cos() * *r, u.sin() * *r, v),
            SurfaceShape::Cone { c, .. } => Vec3::new(u * v.cos(), u * v.sin(), u * *c),
            SurfaceShape::Ellipsoid { a, b, c } => {
                Vec3::new(u.cos() * v.cos() * *a, u.sin() * v.cos() * *b, v.sin() * *c)
            }
            SurfaceShape::HyperboloidOneSheet { a, b, c, .. } => {
                Vec3::new(v.cosh() * u.cos() * *a, v.cosh() * u.sin() * *b, v.sinh() * *c)
            }
            SurfaceShape::HyperboloidTwoSheets { a, b, c, .. } => {
                Vec3::new(v.cosh() * *a, v.sinh() * u.cos() * *b, v.sinh() * u.sin() * *c)
            }
            SurfaceShape::EllipticParaboloid { a, b, .. } => Vec3::new(u, v, u * u / (a * a) + v * v / (b * b)),
            SurfaceShape::HyperbolicParaboloid { a, b, .. } => Vec3::new(u, v, u * u / (a * a) - v * v / (b * b)),
            SurfaceShape::QuadricCone { a, b, c, .. } => Vec3::new(u * v.cos() * *a, u * v.sin() * *b, u * *c),
            SurfaceShape::Torus { r, big_r } => {
                let rho = v.sin() * *r + *big_r;
                Vec3::new(rho * u.cos(), rho * u.sin(), v.cos() * *r)
            }
            SurfaceShape::Catenoid { c, .. } => {
                let rho = (v / *c).cosh() * *c;
                Vec3::new(rho * u.cos(), rho * u.sin(), v)
            }
            SurfaceShape::Helicoid { c, .. } => Vec3::new(u * v.cos(), u * v.sin(), v * *c),
            SurfaceShape::Enneper { .. } => Vec3::new(
                u - u * u * u / 3.0 + u * v * v,
                v * v * v / 3.0 - v - u * u * v,
                u * u - v * v,
            ),
            SurfaceShape::Monge { f, .. } => Vec3::new(u, v, f.eval_unchecked(&[u, v])),
            SurfaceShape::Pseudosphere { rho, .. } => {
                let sech = u.cosh().recip() * *rho;
                Vec3::new(sech * v.cos(), sech * v.sin(), (u - u.tanh()) * *rho)
            }
            SurfaceShape::Defined(s) => s.eval(u, v),
        }
    }

    fn domain(&self) -> Rect {
        let half = PI / 2.0;
        match *self {
            SurfaceShape::Sphere { .. } | SurfaceShape::Ellipsoid { .. } => Rect::new(0.0, TAU, -half, half),
            SurfaceShape::Cylinder { h, .. }
            | SurfaceShape::HyperboloidOneSheet { h, .. }
            | SurfaceShape::Catenoid { h, .. } => Rect::new(0.0, TAU, -h, h),
            SurfaceShape::Cone { eps, h, .. }
            | SurfaceShape::QuadricCone { eps, h, .. }
            | SurfaceShape::Pseudosphere { eps, h, .. } => Rect::new(eps, h, 0.0, TAU),
            SurfaceShape::HyperboloidTwoSheets { eps, h, .. } => Rect::new(0.0, TAU, eps, h),
            SurfaceShape::Plane { w }
            | SurfaceShape::EllipticParaboloid { w, .. }
            | SurfaceShape::HyperbolicParaboloid { w, .. }
            | SurfaceShape::Enneper { w }
            | SurfaceShape::Monge { w, .. } => Rect::new(-w, w, -w, w),
            SurfaceShape::Torus { .. } => Rect::new(0.0, TAU, 0.0, TAU),
            SurfaceShape::Helicoid { w, h, .. } => Rect::new(-w, w, -h, h),
            SurfaceShape::Defined(ref s) => s.domain,
        }
    }

    fn periods(&self) -> (Option<f64>, Option<f64>) {
        match self {
            SurfaceShape::Sphere { .. }
            | SurfaceShape::Ellipsoid { .. }
            | SurfaceShape::Cylinder { .. }
            | SurfaceShape::HyperboloidOneSheet { .. }
            | SurfaceShape::HyperboloidTwoSheets { .. }
            | SurfaceShape::Catenoid { .. } => (Some(TAU), None),
            SurfaceShape::Cone { .. } | SurfaceShape::QuadricCone { .. } | SurfaceShape::Pseudosphere { .. } => {
                (None, Some(TAU))
            }
            SurfaceShape::Torus { .. } => (Some(TAU), Some(TAU)),
            _ => (None, None),
        }
    }
}

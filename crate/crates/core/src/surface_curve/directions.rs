use serde::Serialize;

use super::{OdePath, SurfaceCurveError};
use crate::numerics::{JetField, OdeSpec, Scalar, StepControl, Vec3};
use crate::surface::{curvatures, forms, surface_jets, FormBundle, ParametricSurface, ShapeClass, SurfaceError, SurfaceJets};

/// A unit tangent direction as components (unit in the metric) and as a
/// space vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentDirection {
    pub components: [f64; 2],
    pub vector: Vec3,
}

impl TangentDirection {
    fn from_components(fb: &FormBundle, e1: Vec3, e2: Vec3, c: [f64; 2]) -> Self {
        let len = fb.inner(c, c).sqrt();
        let components = [c[0] / len, c[1] / len];
        TangentDirection {
            components,
            vector: e1 * components[0] + e2 * components[1],
        }
    }
}

/// Normal curvature `II/I` in the tangent direction with components `dir`.
pub fn normal_curvature<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
    dir: [f64; 2],
) -> Result<f64, SurfaceError> {
    let fb = forms(surface, u, v)?;
    let den = fb.inner(dir, dir);
    if !(den > 0.0) {
        return Err(SurfaceError::ZeroVector);
    }
    Ok(fb.second_form(dir, dir) / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AsymptoticDirections {
    None,
    One(TangentDirection),
    Two(TangentDirection, TangentDirection),
    /// Flat point: every direction is asymptotic.
    AllDirections,
}

impl AsymptoticDirections {
    pub fn count(&self) -> Option<usize> {
        match self {
            AsymptoticDirections::None => Some(0),
            AsymptoticDirections::One(_) => Some(1),
            AsymptoticDirections::Two(..) => Some(2),
            AsymptoticDirections::AllDirections => None,
        }
    }
}

/// Directions with `b_ab du^a du^b = 0`, built from the principal frame
/// where `kappa1 cos^2 + kappa2 sin^2 = 0`.
pub fn asymptotic_directions<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
) -> Result<AsymptoticDirections, SurfaceError> {
    let cd = curvatures(surface, u, v)?;
    let fb = forms(surface, u, v)?;
    let j = surface_jets(surface, u, v, surface.scale())?;
    let (e1, e2) = (j.e1.val(), j.e2.val());
    let principal = || {
        let d1 = cd.dir1.expect("non-umbilic");
        let d2 = cd.dir2.expect("non-umbilic");
        (d1.components, d2.components)
    };
    Ok(match cd.shape {
        ShapeClass::Flat => AsymptoticDirections::AllDirections,
        ShapeClass::Elliptic => AsymptoticDirections::None,
        ShapeClass::Parabolic => {
            let (c1, c2) = principal();
            let c = if cd.kappa1.abs() <= cd.kappa2.abs() { c1 } else { c2 };
            AsymptoticDirections::One(TangentDirection::from_components(&fb, e1, e2, c))
        }
        ShapeClass::Hyperbolic => {
            let (c1, c2) = principal();
            let theta = (cd.kappa1 / -cd.kappa2).sqrt().atan();
            let (s, c) = theta.sin_cos();
            let mk = |sign: f64| {
                TangentDirection::from_components(&fb, e1, e2, [c * c1[0] + sign * s * c2[0], c * c1[1] + sign * s * c2[1]])
            };
            AsymptoticDirections::Two(mk(1.0), mk(-1.0))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrincipalField {
    pub kappa: [f64; 2],
    pub directions: [TangentDirection; 2],
    /// `|dn + kappa_i dr|` along each direction.
    pub rodrigues: [f64; 2],
}

pub fn principal_direction_field<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
) -> Result<PrincipalField, SurfaceError> {
    let cd = curvatures(surface, u, v)?;
    let (Some(d1), Some(d2)) = (cd.dir1, cd.dir2) else {
        return Err(SurfaceError::UmbilicPoint { u, v });
    };
    let j = surface_jets(surface, u, v, surface.scale())?;
    let (nu, nv) = (j.n.du().val(), j.n.dv().val());
    let rod = |d: &crate::surface::PrincipalDirection| {
        let c = d.components;
        let dn = nu * c[0] + nv * c[1];
        (dn + d.vector * d.kappa).norm()
    };
    Ok(PrincipalField {
        kappa: [d1.kappa, d2.kappa],
        directions: [
            TangentDirection {
                components: d1.components,
                vector: d1.vector,
            },
            TangentDirection {
                components: d2.components,
                vector: d2.vector,
            },
        ],
        rodrigues: [rod(&d1), rod(&d2)],
    })
}

/// The direction `delta` with `b_ab dir^a delta^b = 0`.
pub fn conjugate_direction<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
    dir: [f64; 2],
) -> Result<TangentDirection, SurfaceError> {
    let cd = curvatures(surface, u, v)?;
    if matches!(cd.shape, ShapeClass::Parabolic | ShapeClass::Flat) {
        return Err(SurfaceError::NoUniqueConjugate { u, v });
    }
    let fb = forms(surface, u, v)?;
    let j = surface_jets(surface, u, v, surface.scale())?;
    let c = [
        -(fb.b12 * dir[0] + fb.b22 * dir[1]),
        fb.b11 * dir[0] + fb.b12 * dir[1],
    ];
    if c[0] == 0.0 && c[1] == 0.0 {
        return Err(SurfaceError::ZeroVector);
    }
    Ok(TangentDirection::from_components(&fb, j.e1.val(), j.e2.val(), c))
}

/// Unit-speed field along one family of asymptotic lines at hyperbolic
/// points. With `b(cos p, sin p) = A cos 2p + B sin 2p + C`, the two
/// families are `2p = atan2(B, A) +- acos(-C / |(A, B)|)`.
///
/// The state is `(u, v, p, q)`: `(p, q)` is the direction at the last
/// accepted step and fixes the orientation, which the branch cut of
/// `atan2` would otherwise flip.
#[derive(Debug, Clone)]
pub struct AsymptoticField<T> {
    pub surface: T,
    /// Selects the `+` root.
    pub plus: bool,
}

impl<T: ParametricSurface> AsymptoticField<T> {
    fn direction<S: Scalar>(&self, u: S, v: S) -> [S; 2] {
        let j = SurfaceJets::at(&self.surface, u, v);
        let [b11, b12, b22] = j.second();
        let [a11, a12, a22] = j.first();
        let a = (b11 - b22) * 0.5;
        let c = (b11 + b22) * 0.5;
        let r = (a * a + b12 * b12).sqrt();
        let base = b12.atan2(a);
        let spread = (-c / r).acos();
        let psi = if self.plus { base + spread } else { base - spread } * 0.5;
        let (l1, l2) = (psi.cos(), psi.sin());
        let len = (a11 * l1 * l1 + a12 * l1 * l2 * 2.0 + a22 * l2 * l2).sqrt();
        [l1 / len, l2 / len]
    }
}

impl<T: ParametricSurface> JetField for AsymptoticField<T> {
    fn dim(&self) -> usize {
        4
    }

    fn eval<S: Scalar>(&self, _t: S, y: &[S], dy: &mut [S]) {
        let d = self.direction(y[0], y[1]);
        let along = d[0].value() * y[2].value() + d[1].value() * y[3].value();
        let sign = if along < 0.0 { -1.0 } else { 1.0 };
        dy[0] = d[0] * sign;
        dy[1] = d[1] * sign;
        dy[2] = S::zero();
        dy[3] = S::zero();
    }
}

/// Integrates an asymptotic line by arc length from `(u0, v0)`.
pub fn asymptotic_line<T: ParametricSurface + Clone>(
    surface: &T,
    u0: f64,
    v0: f64,
    plus: bool,
    length: f64,
    spec: &OdeSpec,
) -> Result<OdePath<AsymptoticField<T>>, SurfaceCurveError> {
    let cd = curvatures(surface, u0, v0)?;
    if cd.shape != ShapeClass::Hyperbolic {
        return Err(SurfaceCurveError::InvalidInput(format!(
            "asymptotic lines are integrated from hyperbolic points; ({u0}, {v0}) is {:?}",
            cd.shape
        )));
    }
    let field = AsymptoticField {
        surface: surface.clone(),
        plus,
    };
    let d0 = field.direction(u0, v0);
    let observer = |_: f64, y: &mut [f64]| {
        let mut dy = [0.0; 4];
        field.eval(0.0, y, &mut dy);
        if dy.iter().all(|x| x.is_finite()) {
            y[2] = dy[0];
            y[3] = dy[1];
        }
        StepControl::Projected
    };
    let path = OdePath::solve(field.clone(), &[u0, v0, d0[0], d0[1]], (0.0, length), spec, observer)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::frenet;
    use crate::numerics::Rect;
    use crate::surface::test_surfaces::*;
    use crate::surface_curve::{curvature_split, LinePath, QuadraticPath, SurfaceCurve};
    use std::f64::consts::PI;

    #[derive(Debug, Clone, Copy)]
    struct Helicoid(f64);
    impl ParametricSurface for Helicoid {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            Vec3::new(u * v.cos(), u * v.sin(), v * self.0)
        }
        fn domain(&self) -> Rect {
            Rect::new(-2.0, 2.0, -PI, PI)
        }
    }

    #[test]
    fn asymptotic_counts() {
        assert_eq!(asymptotic_directions(&Sphere(1.0), 0.2, 0.3).unwrap(), AsymptoticDirections::None);
        assert_eq!(asymptotic_directions(&Plane, 0.2, 0.3).unwrap(), AsymptoticDirections::AllDirections);
        assert_eq!(asymptotic_directions(&Cylinder(1.0), 0.2, 0.3).unwrap().count(), Some(1));
        let t = Torus { r: 1.0, big_r: 3.0 };
        // inner equator region is hyperbolic
        match asymptotic_directions(&t, 0.3, 3.0 * PI / 2.0 + 0.2).unwrap() {
            AsymptoticDirections::Two(a, b) => {
                for d in [a, b] {
                    let kn = normal_curvature(&t, 0.3, 3.0 * PI / 2.0 + 0.2, d.components).unwrap();
                    assert!(kn.abs() <= 1e-9);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn beltrami_enneper_on_helicoid() {
        let h = Helicoid(0.7);
        let (u0, v0) = (0.8, 0.3);
        let k = curvatures(&h, u0, v0).unwrap().k;
        let AsymptoticDirections::Two(..) = asymptotic_directions(&h, u0, v0).unwrap() else {
            panic!("helicoid points are hyperbolic");
        };
        let spec = OdeSpec::default();
        let mut curved = 0;
        for plus in [true, false] {
            let line = asymptotic_line(&h, u0, v0, plus, 0.5, &spec).unwrap();
            let sc = SurfaceCurve::new(h, line);
            let split = curvature_split(&sc, 0.0).unwrap();
            assert!(split.kappa_n.abs() <= 1e-9);
            if split.kappa <= 1e-8 {
                // the straight rulings carry no torsion
                continue;
            }
            curved += 1;
            let f = frenet(&sc, 0.0).unwrap();
            assert!((f.tau * f.tau + k).abs() <= 1e-7, "tau {} K {k}", f.tau);
        }
        assert_eq!(curved, 1);
    }

    #[test]
    fn principal_fields() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let pf = principal_direction_field(&t, 0.4, 1.0).unwrap();
        for d in pf.directions {
            let c = d.components;
            assert!(c[0].abs() < 1e-10 || c[1].abs() < 1e-10, "{c:?}");
        }
        assert!(pf.rodrigues.iter().all(|r| *r <= 1e-8 * t.scale()));

        let pf = principal_direction_field(&Cylinder(2.0), 0.4, 1.0).unwrap();
        let axis = pf.directions.iter().zip(pf.kappa).find(|(_, k)| k.abs() < 1e-12).unwrap().0;
        assert!(axis.vector.z.abs() > 1.0 - 1e-12);

        assert!(matches!(
            principal_direction_field(&Sphere(1.0), 0.4, 1.0),
            Err(SurfaceError::UmbilicPoint { .. })
        ));
    }

    #[test]
    fn euler_and_normal_curvature_sum() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let (u, v) = (0.4, 1.0);
        let cd = curvatures(&t, u, v).unwrap();
        let (d1, d2) = (cd.dir1.unwrap().components, cd.dir2.unwrap().components);
        for i in 0..16 {
            let th = PI * i as f64 / 16.0;
            let (s, c) = th.sin_cos();
            let dir = [c * d1[0] + s * d2[0], c * d1[1] + s * d2[1]];
            let kn = normal_curvature(&t, u, v, dir).unwrap();
            assert!((kn - (cd.kappa1 * c * c + cd.kappa2 * s * s)).abs() <= 1e-8);
            let perp = [-s * d1[0] + c * d2[0], -s * d1[1] + c * d2[1]];
            let kp = normal_curvature(&t, u, v, perp).unwrap();
            assert!((kn + kp - 2.0 * cd.h).abs() <= 1e-8);
        }
        let fb = forms(&t, u, v).unwrap();
        assert!((normal_curvature(&t, u, v, [1.0, 0.0]).unwrap() - fb.b11 / fb.a11).abs() <= 1e-9);
        assert!((normal_curvature(&t, u, v, [0.0, 1.0]).unwrap() - fb.b22 / fb.a22).abs() <= 1e-9);
    }

    #[test]
    fn meusnier() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let p0 = [0.4, 1.0];
        let d = [0.5, 0.9];
        let straight = SurfaceCurve::new(t, LinePath::new(p0, [p0[0] + d[0], p0[1] + d[1]]));
        let bent = SurfaceCurve::new(
            t,
            QuadraticPath {
                p0,
                d,
                c: [0.8, -1.3],
                domain: (0.0, 1.0),
            },
        );
        let (a, b) = (curvature_split(&straight, 0.0).unwrap(), curvature_split(&bent, 0.0).unwrap());
        assert!((a.kappa_n - b.kappa_n).abs() <= 1e-8);
        assert!((a.kappa_g - b.kappa_g).abs() > 1e-3);
    }

    #[test]
    fn conjugates() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let (u, v) = (0.3, 1.0);
        let d = [0.4, 0.7];
        let c = conjugate_direction(&t, u, v, d).unwrap();
        let back = conjugate_direction(&t, u, v, c.components).unwrap().components;
        assert!((back[0] * d[1] - back[1] * d[0]).abs() <= 1e-9);
        // coordinate directions are conjugate since f = 0 on the torus
        let e2 = conjugate_direction(&t, u, v, [1.0, 0.0]).unwrap().components;
        assert!(e2[0].abs() <= 1e-12);

        let (uh, vh) = (0.3, 3.0 * PI / 2.0 + 0.2);
        if let AsymptoticDirections::Two(a, _) = asymptotic_directions(&t, uh, vh).unwrap() {
            let c = conjugate_direction(&t, uh, vh, a.components).unwrap().components;
            assert!((c[0] * a.components[1] - c[1] * a.components[0]).abs() <= 1e-9);
        } else {
            panic!("expected a hyperbolic point");
        }

        let s = Sphere(1.0);
        let c = conjugate_direction(&s, u, 0.4, d).unwrap();
        let fb = forms(&s, u, 0.4).unwrap();
        assert!(fb.inner(c.components, d).abs() <= 1e-12);

        assert!(matches!(
            conjugate_direction(&Cylinder(1.0), u, v, d),
            Err(SurfaceError::NoUniqueConjugate { .. })
        ));
    }
}

use serde::Serialize;

use super::{surface_jets, ParametricSurface, SurfaceError, SurfaceJets};
use crate::numerics::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceFrame {
    pub e1: Vec3,
    pub e2: Vec3,
    pub n: Vec3,
    pub sqrt_a: f64,
}

pub fn surface_frame<T: ParametricSurface + ?Sized>(surface: &T, u: f64, v: f64) -> Result<SurfaceFrame, SurfaceError> {
    let j = surface_jets(surface, u, v, surface.scale())?;
    Ok(frame_of(&j))
}

pub(crate) fn frame_of(j: &SurfaceJets) -> SurfaceFrame {
    SurfaceFrame {
        e1: j.e1.val(),
        e2: j.e2.val(),
        n: j.n.val(),
        sqrt_a: j.sqrt_a.val(),
    }
}

/// First, second and third fundamental forms with Christoffel symbols.
///
/// `a11, a12, a22` are `E, F, G`; `b11, b12, b22` are `e, f, g`.
/// Christoffel arrays are ordered `11-1, 11-2, 12-1, 12-2, 22-1, 22-2`;
/// for the first kind the entry `ab-c` is `[ab, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormBundle {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub b11: f64,
    pub b12: f64,
    pub b22: f64,
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
    pub gamma1: [f64; 6],
    pub gamma2: [f64; 6],
    pub sqrt_a: f64,
    pub n: Vec3,
}

impl FormBundle {
    pub fn det_a(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn det_b(&self) -> f64 {
        self.b11 * self.b22 - self.b12 * self.b12
    }

    pub fn metric(&self) -> [[f64; 2]; 2] {
        [[self.a11, self.a12], [self.a12, self.a22]]
    }

    pub fn second(&self) -> [[f64; 2]; 2] {
        [[self.b11, self.b12], [self.b12, self.b22]]
    }

    pub fn third(&self) -> [[f64; 2]; 2] {
        [[self.c11, self.c12], [self.c12, self.c22]]
    }

    pub fn inverse_metric(&self) -> [[f64; 2]; 2] {
        let d = self.det_a();
        [[self.a22 / d, -self.a12 / d], [-self.a12 / d, self.a11 / d]]
    }

    /// `Gamma^c_{ab}` with zero-based indices.
    pub fn gamma(&self, c: usize, a: usize, b: usize) -> f64 {
        self.gamma2[pair_index(a, b) * 2 + c]
    }

    /// `a_{ab} A^a B^b`.
    pub fn inner(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        self.a11 * a[0] * b[0] + self.a12 * (a[0] * b[1] + a[1] * b[0]) + self.a22 * a[1] * b[1]
    }

    /// `b_{ab} A^a B^b`.
    pub fn second_form(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        self.b11 * a[0] * b[0] + self.b12 * (a[0] * b[1] + a[1] * b[0]) + self.b22 * a[1] * b[1]
    }
}

pub(crate) fn pair_index(a: usize, b: usize) -> usize {
    match (a.min(b), a.max(b)) {
        (0, 0) => 0,
        (0, 1) => 1,
        _ => 2,
    }
}

pub(crate) fn bundle_of(j: &SurfaceJets) -> FormBundle {
    let [a11, a12, a22] = j.first();
    let [b11, b12, b22] = j.second();
    let det = a11 * a22 - a12 * a12;
    let inv = [[a22 / det, -a12 / det], [-a12 / det, a11 / det]];
    let b = [[b11, b12], [b12, b22]];
    let c = |p: usize, q: usize| {
        let mut s = 0.0;
        for g in 0..2 {
            for d in 0..2 {
                s += inv[g][d] * b[p][g] * b[q][d];
            }
        }
        s
    };
    FormBundle {
        a11,
        a12,
        a22,
        b11,
        b12,
        b22,
        c11: c(0, 0),
        c12: c(0, 1),
        c22: c(1, 1),
        gamma1: j.christoffel1(),
        gamma2: j.christoffel2(),
        sqrt_a: j.sqrt_a.val(),
        n: j.n.val(),
    }
}

pub fn forms<T: ParametricSurface + ?Sized>(surface: &T, u: f64, v: f64) -> Result<FormBundle, SurfaceError> {
    let j = surface_jets(surface, u, v, surface.scale())?;
    Ok(bundle_of(&j))
}

/// Largest scaled difference between the Christoffel symbols from the
/// metric formulas and `dE_a/du^b . E^c` with the contravariant basis.
pub fn christoffel_cross_check<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
) -> Result<f64, SurfaceError> {
    let j = surface_jets(surface, u, v, surface.scale())?;
    let fb = bundle_of(&j);
    let inv = fb.inverse_metric();
    let (e1, e2) = (j.e1.val(), j.e2.val());
    let up = [e1 * inv[0][0] + e2 * inv[0][1], e1 * inv[1][0] + e2 * inv[1][1]];
    let de = [[j.e1.du().val(), j.e1.dv().val()], [j.e2.du().val(), j.e2.dv().val()]];
    let mut worst: f64 = 0.0;
    for (pair, (a, b)) in [(0, 0), (0, 1), (1, 1)].into_iter().enumerate() {
        for c in 0..2 {
            let direct = de[a][b].dot(&up[c]);
            let formula = fb.gamma2[pair * 2 + c];
            worst = worst.max(scaled(direct, formula));
        }
    }
    Ok(worst)
}

pub(crate) fn scaled(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

pub(crate) fn r1212_of(j: &SurfaceJets) -> f64 {
    let (e, f, g) = (j.a11, j.a12, j.a22);
    let linear = 0.5 * (2.0 * f.partial(1, 1) - e.partial(0, 2) - g.partial(2, 0));
    let gam = j.christoffel2();
    let a = [[e.val(), f.val()], [f.val(), g.val()]];
    let mut quad = 0.0;
    for al in 0..2 {
        for be in 0..2 {
            let g12a = j.gamma(gam, al, 0, 1);
            let g12b = j.gamma(gam, be, 0, 1);
            let g11a = j.gamma(gam, al, 0, 0);
            let g22b = j.gamma(gam, be, 1, 1);
            quad += a[al][be] * (g12a * g12b - g11a * g22b);
        }
    }
    linear + quad
}

/// The covariant curvature component `R_1212`, from the metric alone.
pub fn riemann_r1212<T: ParametricSurface + ?Sized>(surface: &T, u: f64, v: f64) -> Result<f64, SurfaceError> {
    let j = surface_jets(surface, u, v, surface.scale())?;
    Ok(r1212_of(&j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShapeClass {
    Flat,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DupinClass {
    Ellipse,
    TwoParallelLines,
    ConjugateHyperbolas,
    Undefined,
}

/// A principal direction as tangent components (unit in the metric) and
/// as a unit space vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrincipalDirection {
    pub kappa: f64,
    pub components: [f64; 2],
    pub vector: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureData {
    pub k: f64,
    pub h: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    /// `None` at umbilics.
    pub dir1: Option<PrincipalDirection>,
    pub dir2: Option<PrincipalDirection>,
    pub shape: ShapeClass,
    pub is_umbilic: bool,
}

pub(crate) fn curvatures_of(fb: &FormBundle, e1: Vec3, e2: Vec3, scale: f64) -> CurvatureData {
    let det = fb.det_a();
    let k = fb.det_b() / det;
    let h = (fb.b11 * fb.a22 - 2.0 * fb.b12 * fb.a12 + fb.b22 * fb.a11) / (2.0 * det);
    // H^2 - K from the mixed shape operator, free of the cancellation that
    // spoils h*h - k near umbilics.
    let inv = fb.inverse_metric();
    let m11 = inv[0][0] * fb.b11 + inv[0][1] * fb.b12;
    let m12 = inv[0][0] * fb.b12 + inv[0][1] * fb.b22;
    let m21 = inv[0][1] * fb.b11 + inv[1][1] * fb.b12;
    let m22 = inv[0][1] * fb.b12 + inv[1][1] * fb.b22;
    let disc = (0.5 * (m11 - m22)).powi(2) + m12 * m21;
    let root = disc.max(0.0).sqrt();
    let (kappa1, kappa2) = (h + root, h - root);
    let is_umbilic = disc <= 1e-10 * (h * h).max(k.abs()).max(scale.powi(-4));

    let flat = kappa1.abs().max(kappa2.abs()) * scale <= 1e-10;
    let bb = fb.b11 * fb.b11 + fb.b12 * fb.b12 + fb.b22 * fb.b22;
    let shape = if flat {
        ShapeClass::Flat
    } else if fb.det_b().abs() <= 1e-10 * (bb + scale.powi(-2)) {
        ShapeClass::Parabolic
    } else if fb.det_b() > 0.0 {
        ShapeClass::Elliptic
    } else {
        ShapeClass::Hyperbolic
    };

    let (dir1, dir2) = if is_umbilic {
        (None, None)
    } else {
        (
            Some(principal_direction(fb, kappa1, e1, e2)),
            Some(principal_direction(fb, kappa2, e1, e2)),
        )
    };
    CurvatureData {
        k,
        h,
        kappa1,
        kappa2,
        dir1,
        dir2,
        shape,
        is_umbilic,
    }
}

/// Solves `(b_ab - kappa a_ab) lambda^b = 0` from the better-conditioned row.
fn principal_direction(fb: &FormBundle, kappa: f64, e1: Vec3, e2: Vec3) -> PrincipalDirection {
    let rows = [
        [fb.b11 - kappa * fb.a11, fb.b12 - kappa * fb.a12],
        [fb.b12 - kappa * fb.a12, fb.b22 - kappa * fb.a22],
    ];
    let norm = |r: [f64; 2]| r[0].hypot(r[1]);
    let row = if norm(rows[0]) >= norm(rows[1]) { rows[0] } else { rows[1] };
    let lam = [-row[1], row[0]];
    let len = fb.inner(lam, lam).sqrt();
    let components = [lam[0] / len, lam[1] / len];
    PrincipalDirection {
        kappa,
        components,
        vector: e1 * components[0] + e2 * components[1],
    }
}

pub fn curvatures<T: ParametricSurface + ?Sized>(surface: &T, u: f64, v: f64) -> Result<CurvatureData, SurfaceError> {
    let scale = surface.scale();
    let j = surface_jets(surface, u, v, scale)?;
    Ok(curvatures_of(&bundle_of(&j), j.e1.val(), j.e2.val(), scale))
}

pub fn dupin_classification<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
) -> Result<DupinClass, SurfaceError> {
    Ok(match curvatures(surface, u, v)?.shape {
        ShapeClass::Elliptic => DupinClass::Ellipse,
        ShapeClass::Parabolic => DupinClass::TwoParallelLines,
        ShapeClass::Hyperbolic => DupinClass::ConjugateHyperbolas,
        ShapeClass::Flat => DupinClass::Undefined,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentAngle {
    pub theta: f64,
    /// Signed sine from `sqrt(a) (A^1 B^2 - A^2 B^1)` on unit vectors.
    pub sin_theta: f64,
    /// `|cos^2 + sin^2 - 1|`.
    pub residual: f64,
}

pub fn angle_between<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
    a: [f64; 2],
    b: [f64; 2],
) -> Result<TangentAngle, SurfaceError> {
    let fb = forms(surface, u, v)?;
    let (na, nb) = (fb.inner(a, a).sqrt(), fb.inner(b, b).sqrt());
    let tiny = f64::MIN_POSITIVE.sqrt();
    if !(na > tiny && nb > tiny) {
        return Err(SurfaceError::ZeroVector);
    }
    let cos = fb.inner(a, b) / (na * nb);
    let sin_theta = fb.sqrt_a * (a[0] * b[1] - a[1] * b[0]) / (na * nb);
    Ok(TangentAngle {
        theta: cos.clamp(-1.0, 1.0).acos(),
        sin_theta,
        residual: (cos * cos + sin_theta * sin_theta - 1.0).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormIdentity {
    /// `max |K a_ab - 2H b_ab + c_ab|` over the largest term magnitude, with
    /// `c_ab = dn/du^a . dn/du^b` from the differentiated normal.
    pub residual: f64,
    /// Scaled residual of `a^{ab} c_ab = 4H^2 - 2K`.
    pub trace_residual: f64,
}

pub fn form_identity_residual<T: ParametricSurface + ?Sized>(
    surface: &T,
    u: f64,
    v: f64,
) -> Result<FormIdentity, SurfaceError> {
    let scale = surface.scale();
    let j = surface_jets(surface, u, v, scale)?;
    let fb = bundle_of(&j);
    let cd = curvatures_of(&fb, j.e1.val(), j.e2.val(), scale);
    let dn = [j.n.du().val(), j.n.dv().val()];
    let (a, b) = (fb.metric(), fb.second());
    let mut worst: f64 = 0.0;
    let mut magnitude: f64 = 0.0;
    let mut c = [[0.0; 2]; 2];
    for p in 0..2 {
        for q in 0..2 {
            c[p][q] = dn[p].dot(&dn[q]);
            let terms = [cd.k * a[p][q], -2.0 * cd.h * b[p][q], c[p][q]];
            worst = worst.max((terms[0] + terms[1] + terms[2]).abs());
            magnitude = terms.iter().fold(magnitude, |m, t| m.max(t.abs()));
        }
    }
    let inv = fb.inverse_metric();
    let trace = inv[0][0] * c[0][0] + 2.0 * inv[0][1] * c[0][1] + inv[1][1] * c[1][1];
    let expected = 4.0 * cd.h * cd.h - 2.0 * cd.k;
    let trace_scale = trace.abs().max(4.0 * cd.h * cd.h + 2.0 * cd.k.abs());
    Ok(FormIdentity {
        residual: if magnitude > 0.0 { worst / magnitude } else { 0.0 },
        trace_residual: if trace_scale > 0.0 {
            (trace - expected).abs() / trace_scale
        } else {
            0.0
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::test_surfaces::*;
    use crate::surface::{Scaled, Sheared, Swapped};
    use crate::numerics::{Rect, Scalar};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[derive(Clone, Copy)]
    struct Monge;
    impl ParametricSurface for Monge {
        fn eval<S: Scalar>(&self, u: S, v: S) -> Vec3<S> {
            Vec3::new(u, v, u * u + v * v)
        }
        fn domain(&self) -> Rect {
            Rect::new(-2.0, 2.0, -2.0, 2.0)
        }
    }

    #[test]
    fn plane_frame_and_forms() {
        let f = surface_frame(&Plane, 0.3, -1.2).unwrap();
        assert_eq!(f.n, Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(f.sqrt_a, 1.0);
        let fb = forms(&Plane, 0.3, -1.2).unwrap();
        assert_eq!((fb.a11, fb.a12, fb.a22), (1.0, 0.0, 1.0));
        assert_eq!((fb.b11, fb.b12, fb.b22), (0.0, 0.0, 0.0));
        assert!(fb.gamma1.iter().chain(fb.gamma2.iter()).all(|g| *g == 0.0));
        assert_eq!(riemann_r1212(&Plane, 0.3, -1.2).unwrap(), 0.0);
    }

    #[test]
    fn cone_apex_is_singular() {
        assert!(matches!(
            surface_frame(&Cone, 0.0, 1.0),
            Err(SurfaceError::SingularSurfacePoint { .. })
        ));
    }

    #[test]
    fn sphere_normal_is_radial() {
        let s = Sphere(2.0);
        let f = surface_frame(&s, 0.7, 0.0).unwrap();
        let radial = s.eval(0.7, 0.0).normalized();
        assert!((f.n.norm() - 1.0).abs() < 1e-15);
        assert!((f.n.dot(&radial).abs() - 1.0).abs() < 1e-14);
        assert!(f.n.dot(&f.e1).abs() < 1e-10 && f.n.dot(&f.e2).abs() < 1e-10);
    }

    #[test]
    fn monge_metric() {
        let fb = forms(&Monge, 1.0, 0.0).unwrap();
        assert!((fb.a11 - 5.0).abs() < 1e-14);
        assert!(fb.a12.abs() < 1e-14);
        assert!((fb.a22 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn polar_plane_christoffels() {
        let u = 1.7;
        let fb = forms(&PolarPlane, u, 0.4).unwrap();
        assert!((fb.gamma(0, 1, 1) + u).abs() < 1e-13);
        assert!((fb.gamma(1, 0, 1) - 1.0 / u).abs() < 1e-13);
        assert!((fb.gamma(1, 1, 0) - 1.0 / u).abs() < 1e-13);
    }

    #[test]
    fn christoffels_match_contravariant_projection() {
        let torus = Torus { r: 1.0, big_r: 3.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (u, v) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
            assert!(christoffel_cross_check(&torus, u, v).unwrap() <= 1e-9);
            assert!(christoffel_cross_check(&Sheared { surface: Catenoid(1.0), k: 0.3 }, u, v / 4.0).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn metric_derivatives_from_first_kind() {
        let s = Sheared { surface: Torus { r: 1.0, big_r: 3.0 }, k: 0.3 };
        let j = surface_jets(&s, 0.4, 1.1, s.scale()).unwrap();
        let g1 = j.christoffel1();
        let bracket = |a: usize, b: usize, c: usize| g1[pair_index(a, b) * 2 + c];
        let a = [[j.a11, j.a12], [j.a12, j.a22]];
        for al in 0..2 {
            for be in 0..2 {
                for ga in 0..2 {
                    let d = if ga == 0 { a[al][be].partial(1, 0) } else { a[al][be].partial(0, 1) };
                    let rhs = bracket(al, ga, be) + bracket(be, ga, al);
                    assert!(scaled(d, rhs) <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn third_form_matches_normal_derivatives() {
        let s = Sheared { surface: Catenoid(1.3), k: 0.3 };
        let j = surface_jets(&s, 0.9, 0.5, s.scale()).unwrap();
        let fb = bundle_of(&j);
        let dn = [j.n.du().val(), j.n.dv().val()];
        let c = fb.third();
        for p in 0..2 {
            for q in 0..2 {
                let direct = dn[p].dot(&dn[q]);
                assert!((direct - c[p][q]).abs() <= 1e-9 * c[p][q].abs().max(1.0));
            }
        }
        assert!(fb.a11 > 0.0 && fb.a22 > 0.0 && fb.det_a() > 0.0);
    }

    #[test]
    fn sphere_curvature() {
        let s = Sphere(2.0);
        let cd = curvatures(&s, 1.0, 0.3).unwrap();
        assert!((cd.k - 0.25).abs() < 1e-12);
        assert!((cd.h.abs() - 0.5).abs() < 1e-12);
        assert!(cd.is_umbilic && cd.dir1.is_none());
        assert_eq!(cd.shape, ShapeClass::Elliptic);
        let r = riemann_r1212(&s, 1.0, 0.3).unwrap();
        let a = forms(&s, 1.0, 0.3).unwrap().det_a();
        assert!((r - 0.25 * a).abs() < 1e-12);
    }

    #[test]
    fn torus_curvature_on_outer_equator() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let cd = curvatures(&t, 0.4, PI / 2.0).unwrap();
        assert!((cd.k - 0.25).abs() < 1e-12);
        assert!((cd.h - 0.625).abs() < 1e-12);
        assert!(!cd.is_umbilic);
        let (d1, d2) = (cd.dir1.unwrap(), cd.dir2.unwrap());
        assert!(d1.vector.dot(&d2.vector).abs() < 1e-8);
        assert!((cd.kappa1 * cd.kappa2 - cd.k).abs() < 1e-8 * cd.k.abs());
    }

    #[test]
    fn cylinder_is_parabolic() {
        let rho = 1.5;
        let cd = curvatures(&Cylinder(rho), 0.2, 0.7).unwrap();
        assert!(cd.k.abs() < 1e-14);
        assert_eq!(cd.shape, ShapeClass::Parabolic);
        let nonzero = if cd.kappa1.abs() > cd.kappa2.abs() { cd.kappa1 } else { cd.kappa2 };
        let zero = if cd.kappa1.abs() > cd.kappa2.abs() { cd.kappa2 } else { cd.kappa1 };
        assert!(zero.abs() < 1e-14);
        assert!((nonzero.abs() - 1.0 / rho).abs() < 1e-12);
        assert_eq!(dupin_classification(&Cylinder(rho), 0.2, 0.7).unwrap(), DupinClass::TwoParallelLines);
    }

    #[test]
    fn dupin_classes() {
        assert_eq!(dupin_classification(&Sphere(1.0), 0.1, 0.2).unwrap(), DupinClass::Ellipse);
        assert_eq!(dupin_classification(&Plane, 0.1, 0.2).unwrap(), DupinClass::Undefined);
        assert_eq!(dupin_classification(&Saddle, 0.1, 0.2).unwrap(), DupinClass::ConjugateHyperbolas);
    }

    #[test]
    fn theorema_egregium_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = Torus { r: 1.0, big_r: 3.0 };
        for _ in 0..200 {
            let (u, v) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
            let fb = forms(&t, u, v).unwrap();
            let intrinsic = riemann_r1212(&t, u, v).unwrap() / fb.det_a();
            let extrinsic = fb.det_b() / fb.det_a();
            assert!((intrinsic - extrinsic).abs() <= 1e-7 * extrinsic.abs().max(1.0));
        }
    }

    #[test]
    fn invariance_under_shear_swap_and_scale() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let sheared = Sheared { surface: t, k: 0.3 };
        let swapped = Swapped(t);
        let scaled = Scaled { surface: t, factor: 2.5 };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let (u, v) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
            let base = curvatures(&t, u, v).unwrap();
            let (us, vs) = sheared.preimage(u, v);
            let sh = curvatures(&sheared, us, vs).unwrap();
            assert!((sh.k - base.k).abs() <= 1e-8 * base.k.abs().max(1.0));
            assert!((sh.h * sh.h - base.h * base.h).abs() <= 1e-8);
            assert_eq!((sh.shape, sh.is_umbilic), (base.shape, base.is_umbilic));
            // shear has Jacobian 1
            let da = forms(&sheared, us, vs).unwrap().det_a() - forms(&t, u, v).unwrap().det_a();
            assert!(da.abs() <= 1e-8 * forms(&t, u, v).unwrap().det_a());

            let sw = curvatures(&swapped, v, u).unwrap();
            assert!((sw.k - base.k).abs() <= 1e-10);
            assert!((sw.h + base.h).abs() <= 1e-10);
            assert_eq!(sw.shape, base.shape);

            let sc = curvatures(&scaled, u, v).unwrap();
            assert!((sc.k - base.k / 6.25).abs() <= 1e-10);
        }
    }

    #[test]
    fn angles() {
        let s = Sphere(1.0);
        let right = angle_between(&s, 0.3, 0.2, [1.0, 0.0], [0.0, 1.0]).unwrap();
        assert!((right.theta - PI / 2.0).abs() < 1e-12);
        assert!(right.residual <= 1e-10);
        let same = angle_between(&s, 0.3, 0.2, [0.4, 1.0], [0.4, 1.0]).unwrap();
        assert_eq!(same.theta, 0.0);
        let polar = angle_between(&PolarPlane, 2.0, 0.1, [1.0, 0.0], [0.0, 1.0]).unwrap();
        assert!(polar.theta.cos().abs() < 1e-15);
        let oblique = angle_between(&Saddle, 0.5, -0.3, [1.0, 0.2], [-0.3, 1.0]).unwrap();
        assert!(oblique.residual <= 1e-10);
        assert!(matches!(
            angle_between(&s, 0.3, 0.2, [0.0, 0.0], [1.0, 0.0]),
            Err(SurfaceError::ZeroVector)
        ));
    }

    #[test]
    fn form_identity() {
        let sphere = form_identity_residual(&Sphere(1.0), 0.3, 0.4).unwrap();
        assert!(sphere.residual <= 1e-10);
        let plane = form_identity_residual(&Plane, 0.3, 0.4).unwrap();
        assert!(plane.residual <= 1e-14);
        let cat = form_identity_residual(&Catenoid(1.0), 0.3, 0.4).unwrap();
        assert!(cat.residual <= 1e-9 && cat.trace_residual <= 1e-9);
    }
}

use serde::Serialize;

use super::{path_jets, ParamPath, SurfaceCurve, SurfaceCurveError};
use crate::curve::{CurveError, CurveJets};
use crate::numerics::{Jet1, Scalar, Vec3};
use crate::surface::{curvatures, surface_jets, ParametricSurface, SurfaceJets};

/// Curvature vector of a surface curve split along `n` and `u = n x T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSplit {
    pub k_vec: Vec3,
    pub kappa_n: f64,
    pub kappa_g: f64,
    pub u_vec: Vec3,
    pub kappa: f64,
    /// `|dr/dt|`.
    pub speed: f64,
    /// `II/I` along the tangent.
    pub kappa_n_form: f64,
    /// `r'' . (n x r') / |r'|^3`.
    pub kappa_g_extrinsic: f64,
    /// From Christoffel symbols and the parameter derivatives.
    pub kappa_g_intrinsic: f64,
}

impl CurvatureSplit {
    /// Largest disagreement between the routes, relative to `max(kappa, 1)`.
    pub fn residual(&self) -> f64 {
        let s = self.kappa.max(1.0);
        let pyth = (self.kappa * self.kappa - self.kappa_n * self.kappa_n - self.kappa_g * self.kappa_g).abs();
        [
            (self.kappa_n - self.kappa_n_form).abs(),
            (self.kappa_g - self.kappa_g_extrinsic).abs(),
            (self.kappa_g - self.kappa_g_intrinsic).abs(),
            pyth / s,
        ]
        .into_iter()
        .fold(0.0, f64::max)
            / s
    }
}

pub fn curvature_split<T: ParametricSurface, P: ParamPath>(
    sc: &SurfaceCurve<T, P>,
    t: f64,
) -> Result<CurvatureSplit, SurfaceCurveError> {
    let scale = sc.surface.scale();
    let cj = CurveJets::with_scale(sc, t, scale)?;
    let (uj, vj) = path_jets(&sc.path, t);
    let sj = surface_jets(&sc.surface, uj.val(), vj.val(), scale)?;
    let tangent = cj.tangent();
    let k_vec = cj.dds_vec(tangent).val();
    let tv = tangent.val();
    let n = sj.n.val();
    let u_vec = n.cross(&tv);
    let speed = cj.speed.val();

    let du = [uj.derivative(1), vj.derivative(1)];
    let [a11, a12, a22] = sj.first();
    let [b11, b12, b22] = sj.second();
    let quad = |x11: f64, x12: f64, x22: f64| x11 * du[0] * du[0] + 2.0 * x12 * du[0] * du[1] + x22 * du[1] * du[1];
    let kappa_n_form = quad(b11, b12, b22) / quad(a11, a12, a22);

    let rd = cj.rd.val();
    let rdd = cj.rdd.val();
    let kappa_g_extrinsic = rdd.dot(&n.cross(&rd)) / (speed * speed * speed);

    // arc-length derivatives of the parameters
    let inv = cj.speed.recip();
    let us = [uj.differentiate() * inv, vj.differentiate() * inv];
    let uss = [us[0].differentiate() * inv, us[1].differentiate() * inv];
    let (p, q) = (us[0].val(), us[1].val());
    let (pp, qq) = (uss[0].val(), uss[1].val());
    let g = sj.christoffel2();
    let (g111, g211, g112, g212, g122, g222) = (g[0], g[1], g[2], g[3], g[4], g[5]);
    let kappa_g_intrinsic = sj.sqrt_a.val()
        * (g211 * p * p * p + (2.0 * g212 - g111) * p * p * q + (g222 - 2.0 * g112) * p * q * q - g122 * q * q * q
            + p * qq
            - pp * q);

    Ok(CurvatureSplit {
        k_vec,
        kappa_n: n.dot(&k_vec),
        kappa_g: u_vec.dot(&k_vec),
        u_vec,
        kappa: cj.kappa_value(),
        speed,
        kappa_n_form,
        kappa_g_extrinsic,
        kappa_g_intrinsic,
    })
}

/// Surface jets carried along the path as functions of `t`.
fn along<T: ParametricSurface, P: ParamPath>(sc: &SurfaceCurve<T, P>, t: f64) -> SurfaceJets<Jet1> {
    let (uj, vj) = path_jets(&sc.path, t);
    SurfaceJets::at(&sc.surface, uj, vj)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicTorsion {
    /// `n . (n' x r')` with primes in arc length.
    pub tau_g: f64,
    /// `(kappa1 - kappa2) sin(theta) cos(theta)`, `theta` measured from the
    /// first principal direction clockwise about `n`; `None` at umbilics.
    pub principal: Option<f64>,
}

impl GeodesicTorsion {
    pub fn residual(&self) -> Option<f64> {
        self.principal.map(|p| (p - self.tau_g).abs())
    }
}

pub fn geodesic_torsion<T: ParametricSurface, P: ParamPath>(
    sc: &SurfaceCurve<T, P>,
    t: f64,
) -> Result<GeodesicTorsion, SurfaceCurveError> {
    let scale = sc.surface.scale();
    let cj = CurveJets::with_scale(sc, t, scale)?;
    let (uj, vj) = path_jets(&sc.path, t);
    surface_jets(&sc.surface, uj.val(), vj.val(), scale)?;
    let n = along(sc, t).n.val();
    let speed = cj.speed.val();
    let nv = n.val();
    let n_prime = n.derivative(1) * (1.0 / speed);
    let tangent = cj.tangent().val();
    let tau_g = nv.dot(&n_prime.cross(&tangent));

    let cd = curvatures(&sc.surface, uj.val(), vj.val())?;
    let principal = cd.dir1.map(|d1| {
        let d1 = d1.vector.normalized();
        let theta = (-tangent.dot(&nv.cross(&d1))).atan2(tangent.dot(&d1));
        (cd.kappa1 - cd.kappa2) * theta.sin() * theta.cos()
    });
    Ok(GeodesicTorsion { tau_g, principal })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiouvilleCheck {
    pub kappa_g: f64,
    /// `dphi/ds + kappa_u cos(phi) + kappa_v sin(phi)`.
    pub liouville: f64,
    pub residual: f64,
}

/// Compares the geodesic curvature with the form valid in orthogonal
/// coordinates.
pub fn liouville_check<T: ParametricSurface, P: ParamPath>(
    sc: &SurfaceCurve<T, P>,
    t: f64,
) -> Result<LiouvilleCheck, SurfaceCurveError> {
    let scale = sc.surface.scale();
    let (t0, t1) = sc.path.domain();
    for probe in [t, t0, 0.75 * t0 + 0.25 * t1, 0.5 * (t0 + t1), 0.25 * t0 + 0.75 * t1, t1] {
        let (u, v) = sc.path.eval(probe);
        let j = surface_jets(&sc.surface, u, v, scale);
        if let Ok(j) = j {
            let [e, f, g] = j.first();
            if f.abs() > 1e-10 * (e * g).sqrt() {
                return Err(SurfaceCurveError::NonOrthogonalPatch { t: probe, f });
            }
        } else if probe == t {
            j?;
        }
    }
    let split = curvature_split(sc, t)?;
    let cj = CurveJets::with_scale(sc, t, scale)?;
    let (uj, vj) = path_jets(&sc.path, t);
    let sj = along(sc, t);
    let inv = cj.speed.recip();
    let (us, vs) = (uj.differentiate() * inv, vj.differentiate() * inv);
    let (e, g) = (sj.a11.val(), sj.a22.val());
    let phi = (g.sqrt() * vs).atan2(e.sqrt() * us);
    let dphi = phi.derivative(1) / cj.speed.val();

    let j = surface_jets(&sc.surface, uj.val(), vj.val(), scale)?;
    let (ev, gv) = (j.a11.val(), j.a22.val());
    let kappa_u = -j.a11.partial(0, 1) / (2.0 * ev * gv.sqrt());
    let kappa_v = j.a22.partial(1, 0) / (2.0 * gv * ev.sqrt());
    let p = phi.val();
    let liouville = dphi + kappa_u * p.cos() + kappa_v * p.sin();
    Ok(LiouvilleCheck {
        kappa_g: split.kappa_g,
        liouville,
        residual: (split.kappa_g - liouville).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BonnetCheck {
    pub tau_g: f64,
    pub tau: f64,
    /// Signed angle with `N = cos(phi) n - sin(phi) u`; `|phi| = acos(n . N)`.
    pub phi: f64,
    pub dphi_ds: f64,
    /// `|tau_g - (tau - dphi/ds)|`.
    pub residual: f64,
}

pub fn bonnet_torsion_check<T: ParametricSurface, P: ParamPath>(
    sc: &SurfaceCurve<T, P>,
    t: f64,
) -> Result<BonnetCheck, SurfaceCurveError> {
    let scale = sc.surface.scale();
    let cj = CurveJets::with_scale(sc, t, scale)?;
    let kappa = cj.kappa_value();
    if kappa <= cj.inflection_eps() {
        return Err(CurveError::InflectionPoint { t, kappa }.into());
    }
    let tg = geodesic_torsion(sc, t)?;
    let n = along(sc, t).n.val();
    let tangent = cj.tangent();
    let big_n = cj.normal();
    let u_vec = n.cross(&tangent);
    let cos_phi = n.dot(&big_n);
    if cos_phi.val().abs() <= 1e-8 {
        return Err(SurfaceCurveError::AsymptoticPoint {
            t,
            cos_phi: cos_phi.val(),
        });
    }
    let phi = (-u_vec.dot(&big_n)).atan2(cos_phi);
    let dphi_ds = phi.derivative(1) / cj.speed.val();
    let tau = cj.tau().val();
    Ok(BonnetCheck {
        tau_g: tg.tau_g,
        tau,
        phi: phi.val(),
        dphi_ds,
        residual: (tg.tau_g - (tau - dphi_ds)).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::test_surfaces::*;
    use crate::surface_curve::{LinePath, QuadraticPath};
    use std::f64::consts::PI;

    #[test]
    fn great_circle_split() {
        let r = 2.0;
        let sc = SurfaceCurve::new(Sphere(r), LinePath::new([0.0, 0.0], [3.0, 0.0]));
        let s = curvature_split(&sc, 0.4).unwrap();
        assert!(s.kappa_g.abs() < 1e-12);
        assert!((s.kappa_n.abs() - 1.0 / r).abs() < 1e-12);
        assert!(s.residual() <= 1e-9);
    }

    #[test]
    fn latitude_circle_split() {
        let theta0: f64 = 1.0; // colatitude
        let lat = PI / 2.0 - theta0;
        let sc = SurfaceCurve::new(Sphere(1.0), LinePath::new([0.0, lat], [2.0 * PI, lat]));
        let s = curvature_split(&sc, 0.3).unwrap();
        assert!((s.kappa - 1.0 / theta0.sin()).abs() < 1e-12);
        assert!((s.kappa_n.abs() - 1.0).abs() < 1e-12);
        assert!((s.kappa_g.abs() - 1.0 / theta0.tan()).abs() < 1e-12);
        assert!(s.residual() <= 1e-9, "{s:?}");
    }

    #[test]
    fn plane_line_split_vanishes() {
        let sc = SurfaceCurve::new(Plane, LinePath::new([0.0, 0.0], [1.0, 2.0]));
        let s = curvature_split(&sc, 0.5).unwrap();
        assert_eq!((s.kappa, s.kappa_n, s.kappa_g), (0.0, 0.0, 0.0));
    }

    #[test]
    fn general_curve_on_torus_split_consistency() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let path = QuadraticPath {
            p0: [0.3, 0.8],
            d: [0.7, -0.4],
            c: [0.2, 0.5],
            domain: (0.0, 2.0),
        };
        let sc = SurfaceCurve::new(t, path);
        for x in [0.1, 0.9, 1.7] {
            assert!(curvature_split(&sc, x).unwrap().residual() <= 1e-9);
        }
    }

    #[test]
    fn geodesic_torsion_cases() {
        let sphere = SurfaceCurve::new(
            Sphere(1.0),
            QuadraticPath {
                p0: [0.1, 0.2],
                d: [1.0, 0.3],
                c: [0.1, -0.2],
                domain: (0.0, 1.0),
            },
        );
        let g = geodesic_torsion(&sphere, 0.5).unwrap();
        assert!(g.tau_g.abs() < 1e-12 && g.principal.is_none());

        let torus = Torus { r: 1.0, big_r: 3.0 };
        for p in [LinePath::new([0.0, 0.5], [2.0, 0.5]), LinePath::new([0.4, 0.0], [0.4, 3.0])] {
            let g = geodesic_torsion(&SurfaceCurve::new(torus, p), 0.3).unwrap();
            assert!(g.tau_g.abs() <= 1e-9);
        }

        // 45 degrees between the axis and the circular direction
        let rho = 1.5;
        let cyl = SurfaceCurve::new(Cylinder(rho), LinePath::new([0.0, 0.0], [1.0 / rho, 1.0]));
        let g = geodesic_torsion(&cyl, 0.2).unwrap();
        let cd = curvatures(&Cylinder(rho), 0.2 / rho, 0.2).unwrap();
        assert!((g.tau_g.abs() - (cd.kappa1 - cd.kappa2).abs() / 2.0).abs() < 1e-10);
        assert!(g.residual().unwrap() <= 1e-8, "{g:?}");

        let general = SurfaceCurve::new(
            torus,
            QuadraticPath {
                p0: [0.3, 0.8],
                d: [0.7, -0.4],
                c: [0.2, 0.5],
                domain: (0.0, 2.0),
            },
        );
        for x in [0.2, 1.1] {
            assert!(geodesic_torsion(&general, x).unwrap().residual().unwrap() <= 1e-8);
        }
    }

    #[test]
    fn orthogonal_curves_have_opposite_geodesic_torsion() {
        let t = Torus { r: 1.0, big_r: 3.0 };
        let p0 = [0.5, 1.0];
        let fb = crate::surface::forms(&t, p0[0], p0[1]).unwrap();
        let a = [0.6, 0.8];
        // metric-orthogonal direction
        let b = [-(fb.a12 * a[0] + fb.a22 * a[1]), fb.a11 * a[0] + fb.a12 * a[1]];
        let ga = geodesic_torsion(&SurfaceCurve::new(t, LinePath::new(p0, [p0[0] + a[0], p0[1] + a[1]])), 0.0).unwrap();
        let gb = geodesic_torsion(&SurfaceCurve::new(t, LinePath::new(p0, [p0[0] + b[0], p0[1] + b[1]])), 0.0).unwrap();
        assert!((ga.tau_g + gb.tau_g).abs() <= 1e-8);
        assert!(ga.tau_g.abs() > 1e-3);
    }

    #[test]
    fn liouville_on_sphere_and_polar_plane() {
        let meridian = SurfaceCurve::new(Sphere(1.0), LinePath::new([0.5, -1.0], [0.5, 1.0]));
        let l = liouville_check(&meridian, 0.3).unwrap();
        assert!(l.kappa_g.abs() < 1e-12 && l.residual <= 1e-7);

        let lat = PI / 2.0 - 1.0;
        let circle = SurfaceCurve::new(Sphere(1.0), LinePath::new([0.0, lat], [2.0 * PI, lat]));
        let l = liouville_check(&circle, 0.4).unwrap();
        assert!((l.kappa_g.abs() - 1.0 / 1f64.tan()).abs() < 1e-12);
        assert!(l.residual <= 1e-8, "{l:?}");

        let ray = SurfaceCurve::new(PolarPlane, LinePath::new([0.5, 0.7], [3.0, 0.7]));
        let l = liouville_check(&ray, 0.5).unwrap();
        assert!(l.kappa_g.abs() < 1e-14 && l.residual < 1e-12);

        let general = SurfaceCurve::new(
            Torus { r: 1.0, big_r: 3.0 },
            QuadraticPath {
                p0: [0.3, 0.8],
                d: [0.7, -0.4],
                c: [0.2, 0.5],
                domain: (0.0, 2.0),
            },
        );
        assert!(liouville_check(&general, 0.6).unwrap().residual <= 1e-7);

        let sheared = crate::surface::Sheared { surface: Sphere(1.0), k: 0.3 };
        let sc = SurfaceCurve::new(sheared, LinePath::new([0.0, 0.2], [1.0, 0.4]));
        assert!(matches!(
            liouville_check(&sc, 0.5),
            Err(SurfaceCurveError::NonOrthogonalPatch { .. })
        ));
    }

    #[test]
    fn bonnet_formula() {
        let lat = PI / 2.0 - 1.0;
        let circle = SurfaceCurve::new(Sphere(1.0), LinePath::new([0.0, lat], [2.0 * PI, lat]));
        let b = bonnet_torsion_check(&circle, 0.4).unwrap();
        assert!(b.tau.abs() < 1e-10 && b.tau_g.abs() < 1e-10 && b.residual <= 1e-7);

        let great = SurfaceCurve::new(Sphere(1.0), LinePath::new([0.0, 0.0], [2.0, 0.0]));
        let b = bonnet_torsion_check(&great, 0.4).unwrap();
        // n and N are collinear (opposite for the outward normal)
        assert!(b.phi.sin().abs() < 1e-12 && (b.tau_g - b.tau).abs() < 1e-10);

        let rho = 1.5;
        let helix = SurfaceCurve::new(Cylinder(rho), LinePath::new([0.0, 0.0], [2.0, 0.7]));
        let b = bonnet_torsion_check(&helix, 0.3).unwrap();
        assert!(b.residual <= 1e-8, "{b:?}");

        let general = SurfaceCurve::new(
            Torus { r: 1.0, big_r: 3.0 },
            QuadraticPath {
                p0: [0.3, 0.8],
                d: [0.7, -0.4],
                c: [0.2, 0.5],
                domain: (0.0, 2.0),
            },
        );
        assert!(bonnet_torsion_check(&general, 0.6).unwrap().residual <= 1e-7);
    }
}

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::curve::{frenet, ParametricCurve};
use crate::numerics::{ode_solve, OdeSpec};
use crate::surface::{curvatures, surface_jets, ParametricSurface, ShapeClass};

const NONE: &[(&str, &str)] = &[];

fn surf(name: &str, overrides: &[(&str, &str)]) -> SurfaceShape {
    match make(name, overrides).unwrap() {
        Shape::Surface(s) => s,
        Shape::Curve(_) => panic!("{name} is a curve"),
    }
}

fn interior(s: &SurfaceShape, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let d = s.domain();
    let m = 0.02;
    let u = d.u0 + (d.u1 - d.u0) * rng.gen_range(m..1.0 - m);
    let v = d.v0 + (d.v1 - d.v0) * rng.gen_range(m..1.0 - m);
    (u, v)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

#[test]
fn every_entry_builds_and_is_regular() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for e in REGISTRY {
        match make(e.name, NONE).unwrap() {
            Shape::Curve(c) => {
                let (a, b) = c.domain();
                for _ in 0..50 {
                    let t = rng.gen_range(a..b);
                    let d = c.eval(crate::numerics::Jet1::variable(t)).derivative(1);
                    assert!(d.norm() > 1e-6, "{} singular at {t}", e.name);
                }
            }
            Shape::Surface(s) => {
                assert_eq!(s.chi(), e.chi, "{}", e.name);
                for _ in 0..50 {
                    let (u, v) = interior(&s, &mut rng);
                    surface_jets(&s, u, v, s.scale()).unwrap_or_else(|err| panic!("{}: {err}", e.name));
                }
            }
        }
    }
}

#[test]
fn surface_references_match_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for e in REGISTRY.iter().filter(|e| e.kind == ShapeKind::Surface) {
        let s = surf(e.name, NONE);
        for _ in 0..100 {
            let (u, v) = interior(&s, &mut rng);
            let refs = s.reference(u, v);
            assert!(!refs.is_empty(), "{} has no references", e.name);
            let c = curvatures(&s, u, v).unwrap();
            for (q, want) in &refs {
                let got = match q.as_str() {
                    "K" => c.k,
                    "H" => c.h,
                    "kappa1" => c.kappa1,
                    "kappa2" => c.kappa2,
                    other => panic!("unexpected quantity {other}"),
                };
                assert!(rel(got, *want) <= 1e-8, "{} {q} at ({u}, {v}): {got} vs {want}", e.name);
            }
        }
    }
}

#[test]
fn curve_references_match_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["circle", "ellipse", "helix"] {
        let c = make(name, NONE).unwrap().as_curve().unwrap().clone();
        let (a, b) = c.domain();
        for _ in 0..100 {
            let t = rng.gen_range(a..b);
            let f = frenet(&c, t).unwrap();
            let refs = c.reference(t);
            assert!(rel(f.kappa, refs["kappa"]) <= 1e-8, "{name} kappa at {t}");
            assert!(rel(f.tau, refs["tau"]) <= 1e-8, "{name} tau at {t}");
        }
    }
}

#[test]
fn nondefault_parameters_match_references() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cases: &[(&str, &[(&str, &str)])] = &[
        ("sphere", &[("R", "2.5")]),
        ("torus", &[("r", "0.5"), ("R", "2")]),
        ("ellipsoid", &[("a", "1.5"), ("b", "1"), ("c", "0.7")]),
        ("hyperboloid-two-sheets", &[("a", "2"), ("b", "0.5"), ("c", "1.5")]),
        ("catenoid", &[("c", "0.6")]),
        ("monge", &[("f", "sin(u)*cos(v) + u*v/3")]),
        ("elliptic-paraboloid", &[("a", "0.7"), ("b", "1.3")]),
    ];
    for (name, ov) in cases {
        let s = surf(name, ov);
        for _ in 0..20 {
            let (u, v) = interior(&s, &mut rng);
            let c = curvatures(&s, u, v).unwrap();
            let refs = s.reference(u, v);
            assert!(rel(c.k, refs["K"]) <= 1e-8, "{name} K at ({u}, {v})");
            if let Some(h) = refs.get("H") {
                assert!(rel(c.h, *h) <= 1e-8, "{name} H at ({u}, {v})");
            }
        }
    }
    let helix = make("helix", &[("a", "2"), ("b", "-0.3")]).unwrap();
    let c = helix.as_curve().unwrap();
    let f = frenet(c, 1.1).unwrap();
    assert!((f.kappa - 2.0 / 4.09).abs() < 1e-12);
    assert!((f.tau + 0.3 / 4.09).abs() < 1e-12);
}

#[test]
fn sign_pattern_with_outward_normals() {
    // (kappa1, kappa2, H, K) signs; None means unconstrained.
    type Pattern = [Option<i8>; 4];
    let rows: &[(&str, Pattern)] = &[
        ("plane", [Some(0), Some(0), Some(0), Some(0)]),
        ("cylinder", [Some(0), Some(-1), Some(-1), Some(0)]),
        ("sphere", [Some(-1), Some(-1), Some(-1), Some(1)]),
        ("ellipsoid", [Some(-1), Some(-1), Some(-1), Some(1)]),
        ("hyperboloid-one-sheet", [Some(1), Some(-1), None, Some(-1)]),
    ];
    let sign = |x: f64| -> i8 {
        if x.abs() <= 1e-12 {
            0
        } else if x > 0.0 {
            1
        } else {
            -1
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, pattern) in rows {
        let e = entry(name).unwrap();
        let flip = e.normal.outward_sign().unwrap_or(1.0);
        let s = surf(name, NONE);
        for _ in 0..30 {
            let (u, v) = interior(&s, &mut rng);
            let c = curvatures(&s, u, v).unwrap();
            // flipping n swaps which principal curvature is the larger one
            let (k1, k2) = if flip > 0.0 {
                (c.kappa1, c.kappa2)
            } else {
                (-c.kappa2, -c.kappa1)
            };
            let got = [sign(k1), sign(k2), sign(flip * c.h), sign(c.k)];
            for (i, want) in pattern.iter().enumerate() {
                if let Some(w) = want {
                    assert_eq!(got[i], *w, "{name} column {i} at ({u}, {v})");
                }
            }
        }
    }
}

#[test]
fn sphere_radius_two() {
    let s = surf("sphere", &[("R", "2")]);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let (u, v) = interior(&s, &mut rng);
        let c = curvatures(&s, u, v).unwrap();
        assert!((c.k - 0.25).abs() <= 1e-9);
        assert!((c.h.abs() - 0.5).abs() <= 1e-9);
        assert!(c.is_umbilic);
        assert_eq!(c.shape, ShapeClass::Elliptic);
    }
}

#[test]
fn torus_point_classes() {
    let s = surf("torus", &[("r", "1"), ("R", "3")]);
    for i in 0..12 {
        let u = 0.3 + i as f64 * 0.5;
        for phi in [0.4, FRAC_PI_2, 2.7] {
            assert_eq!(curvatures(&s, u, phi).unwrap().shape, ShapeClass::Elliptic, "outer rim at {phi}");
        }
        for phi in [PI + 0.4, 3.0 * FRAC_PI_2, 2.0 * PI - 0.4] {
            assert_eq!(curvatures(&s, u, phi).unwrap().shape, ShapeClass::Hyperbolic, "inner rim at {phi}");
        }
        for phi in [0.0, PI] {
            assert_eq!(curvatures(&s, u, phi).unwrap().shape, ShapeClass::Parabolic, "top or bottom at {phi}");
        }
    }
    let c = curvatures(&s, 1.0, FRAC_PI_2).unwrap();
    assert!((c.k - 0.25).abs() <= 1e-9);
    assert!((c.h - 0.625).abs() <= 1e-9);
}

#[test]
fn helicoid_is_minimal() {
    let s = surf("helicoid", NONE);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (u, v) = interior(&s, &mut rng);
        assert!(curvatures(&s, u, v).unwrap().h.abs() <= 1e-10);
    }
}

#[test]
fn pseudosphere_profile_solves_tractrix_equation() {
    let rho = 1.3;
    let s = surf("pseudosphere", &[("rho", "1.3")]);
    // dy/dx = -sqrt(rho^2 - x^2)/x, y(rho) = 0, written in x = rho cos(theta)
    // so the square-root endpoint becomes smooth.
    let theta_end = (1.0 / 3.0f64.cosh()).acos();
    let traj = ode_solve(
        |th, _y, dy| dy[0] = rho * th.sin().powi(2) / th.cos(),
        &[0.0],
        (0.0, theta_end),
        &OdeSpec::with_tol(1e-12),
    )
    .unwrap();
    for i in 1..=40 {
        let th = theta_end * i as f64 / 40.0;
        let x = rho * th.cos();
        let y = traj.interpolate(th)[0];
        let u = (rho / x).acosh();
        let p = s.eval(u, 0.3);
        let radius = (p.x * p.x + p.y * p.y).sqrt();
        assert!((radius - x).abs() <= 1e-6);
        assert!((p.z - y).abs() <= 1e-6, "height {} vs {y} at x = {x}", p.z);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..30 {
        let (u, v) = interior(&s, &mut rng);
        assert!((curvatures(&s, u, v).unwrap().k + 1.0 / (rho * rho)).abs() <= 1e-8);
    }
}

#[test]
fn reference_lookup() {
    let r = reference("torus", &[("r", "1"), ("R", "3")], &[0.2, 0.9]).unwrap();
    let s = 0.9f64.sin();
    assert_eq!(r["K"], s / (3.0 + s));
    let h = reference("helix", &[("a", "1"), ("b", "0.5")], &[0.0]).unwrap();
    assert_eq!(h["kappa"], 0.8);
    assert_eq!(h["tau"], 0.4);
    let p = reference("plane", NONE, &[0.1, 0.2]).unwrap();
    assert!(p.values().all(|&x| x == 0.0));
    assert!(matches!(
        reference("spherical-spiral", NONE, &[0.0]),
        Err(CatalogError::NoReference { .. })
    ));
    assert!(matches!(reference("sphere", NONE, &[0.0]), Err(CatalogError::InvalidParameter { .. })));
}

#[test]
fn invalid_requests() {
    assert!(matches!(make("klein-bottle", NONE), Err(CatalogError::UnknownShape { .. })));
    for (name, ov) in [
        ("torus", &[("r", "3"), ("R", "3")][..]),
        ("torus", &[("r", "4")][..]),
        ("sphere", &[("R", "-1")][..]),
        ("sphere", &[("radius", "1")][..]),
        ("sphere", &[("R", "1/0")][..]),
        ("cone", &[("eps", "0")][..]),
        ("cone", &[("eps", "2"), ("h", "1")][..]),
        ("monge", &[("f", "u^2 + w")][..]),
        ("monge", &[("f", "u +* v")][..]),
        ("helix", &[("a", "0")][..]),
    ] {
        assert!(
            matches!(make(name, ov), Err(CatalogError::InvalidParameter { .. })),
            "{name} {ov:?}"
        );
    }
}

#[test]
fn overrides_accept_constant_expressions() {
    let s = surf("cylinder", &[("h", "2*pi")]);
    assert!((s.domain().v1 - 2.0 * PI).abs() < 1e-15);
}

#[test]
fn definitions_wrap_as_shapes() {
    let d = crate::expr::load_definition(
        "surface saddle\nparam u in [-1, 1]\nparam v in [-1, 1]\nx = u\ny = v\nz = u^2 - v^2\n",
    )
    .unwrap();
    let s = Shape::from_definition(&d);
    let s = s.as_surface().unwrap();
    let m = surf("monge", NONE);
    let (a, b) = (curvatures(s, 0.3, -0.2).unwrap(), curvatures(&m, 0.3, -0.2).unwrap());
    assert_eq!(a.k, b.k);
    assert!(rel(a.k, m.reference(0.3, -0.2)["K"]) <= 1e-12);
}

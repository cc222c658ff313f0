// Shortest paths on the sphere and straight helices on the cylinder.

use std::f64::consts::PI;

use diffgeo::catalog::{make, Shape};
use diffgeo::numerics::OdeSpec;
use diffgeo::surface_curve::{curvature_split, geodesic_bvp, geodesic_ivp, SurfaceCurve};

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let spec = OdeSpec::default();
    let Shape::Surface(sphere) = make::<&str, &str>("sphere", &[])? else {
        unreachable!()
    };
    // (longitude, latitude) pairs
    let (a, b) = ([0.0, 0.0], [PI / 2.0, PI / 4.0]);
    let g = geodesic_bvp(&sphere, a, b, &spec)?;
    println!("sphere {a:?} -> {b:?}: length {:.12} (central angle {:.12})", g.length, central(a, b));
    println!("  end {:?}, speed defect {:.1e}", g.end(), g.speed_defect());

    let Shape::Surface(cylinder) = make::<&str, &str>("cylinder", &[])? else {
        unreachable!()
    };
    let path = geodesic_ivp(&cylinder, 0.0, -2.0, [1.0, 1.0], 6.0, &spec)?;
    let sc = SurfaceCurve::new(&cylinder, &path);
    let kg = (0..=12)
        .map(|i| curvature_split(&sc, path.length * i as f64 / 12.0).map(|s| s.kappa_g.abs()))
        .try_fold(0.0_f64, |m, x| x.map(|x| m.max(x)))?;
    println!("cylinder 45 degree geodesic: {} samples, max |kappa_g| = {kg:.1e}", path.samples().len());
    Ok(())
}

fn central(a: [f64; 2], b: [f64; 2]) -> f64 {
    let p = |q: [f64; 2]| [q[0].cos() * q[1].cos(), q[0].sin() * q[1].cos(), q[1].sin()];
    let (x, y) = (p(a), p(b));
    (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]).clamp(-1.0, 1.0).acos()
}

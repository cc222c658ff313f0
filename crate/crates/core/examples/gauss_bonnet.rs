// Local Gauss–Bonnet on a geodesic triangle and the global theorem on
// closed surfaces.

use diffgeo::catalog::{make, Shape};
use diffgeo::numerics::QuadSpec;
use diffgeo::surface::ParametricSurface;
use diffgeo::surface_curve::{gauss_bonnet_global, gauss_bonnet_local, BoundaryLoop};

const OCTANT: &str = include_str!("../data/octant.loop");

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let spec = QuadSpec::with_tol(1e-9);
    let Shape::Surface(sphere) = make::<&str, &str>("sphere", &[])? else {
        unreachable!()
    };
    let gb = gauss_bonnet_local(&sphere, &BoundaryLoop::parse(OCTANT)?, &spec)?;
    println!(
        "octant: sum kg = {:.3e}, corners = {:.10}, total K = {:.10}, defect = {:.1e}",
        gb.sum_kg, gb.sum_angles, gb.total_k, gb.defect
    );

    for name in ["sphere", "ellipsoid", "torus"] {
        let Shape::Surface(s) = make::<&str, &str>(name, &[])? else {
            unreachable!()
        };
        let chi = s.chi().expect("closed surface");
        let gb = gauss_bonnet_global(&s, &s.domain(), chi, &spec)?;
        println!("{name}: total K = {:+.10}, 2 pi chi = {:+.10}", gb.total_k, 2.0 * std::f64::consts::PI * chi as f64);
    }
    Ok(())
}

// Frenet apparatus of a circular helix.

use diffgeo::catalog::{make, Shape};
use diffgeo::curve::{arc_length, frenet, frenet_residuals, osculating_circle, ParametricCurve};
use diffgeo::numerics::QuadSpec;

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let Shape::Curve(helix) = make("helix", &[("a", "1"), ("b", "0.5")])? else {
        unreachable!()
    };
    for t in [0.0, 1.0, 2.5] {
        let f = frenet(&helix, t)?;
        println!(
            "t = {t}: kappa = {:.12} tau = {:.12} T = {:?} B = {:?}",
            f.kappa,
            f.tau,
            f.tangent.to_array(),
            f.binormal.to_array()
        );
    }
    let c = osculating_circle(&helix, 1.0)?;
    println!("osculating circle at t = 1: radius {:.6}, center {:?}", c.radius, c.center.to_array());
    println!("largest Frenet-Serret residual at t = 1: {:.2e}", frenet_residuals(&helix, 1.0)?.max());

    let (a, b) = helix.domain();
    let len = arc_length(&helix, a, b, &QuadSpec::default())?;
    println!("length over [0, 4pi] = {len:.12} (4 pi sqrt(1.25) = {:.12})", 4.0 * std::f64::consts::PI * 1.25_f64.sqrt());
    Ok(())
}

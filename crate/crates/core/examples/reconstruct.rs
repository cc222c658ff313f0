// Rebuilding a helix from its curvature and torsion, then aligning the
// result with the original.

use std::f64::consts::PI;

use diffgeo::catalog::{make, Shape};
use diffgeo::curve::{
    frenet, reconstruct_from_kappa_tau, rigid_align, CurvatureField, FrenetSeed, LinearReparam, ParametricCurve,
    TorsionField,
};
use diffgeo::numerics::{OdeSpec, Vec3};

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let Shape::Curve(helix) = make("helix", &[("a", "1"), ("b", "0.5")])? else {
        unreachable!()
    };
    let length = 4.0 * PI;
    // unit speed: t = s / sqrt(a^2 + b^2)
    let arc = LinearReparam::new(&helix, 0.0, 1.0 / 1.25_f64.sqrt(), (0.0, length));
    let rec = reconstruct_from_kappa_tau(
        CurvatureField(&arc),
        TorsionField(&arc),
        FrenetSeed::default(),
        length,
        &OdeSpec::with_tol(1e-12),
    )?;
    let s: Vec<f64> = (0..=100).map(|i| length * i as f64 / 100.0).collect();
    let from: Vec<Vec3> = s.iter().map(|&s| rec.eval(s)).collect();
    let to: Vec<Vec3> = s.iter().map(|&s| arc.eval(s)).collect();
    let fit = rigid_align(&from, &to)?;
    println!("RMS after rigid alignment: {:.2e}", fit.rms);
    let f = frenet(&rec, 2.0)?;
    println!("reconstructed kappa = {:.12}, tau = {:.12} at s = 2", f.kappa, f.tau);

    // the same from expressions: a curve of constant slope
    let kappa = diffgeo::expr::parse_str("1 / (1 + s^2)")?.bind(&["s"], &[])?;
    let rec = reconstruct_from_kappa_tau(kappa, 0.3, FrenetSeed::default(), 5.0, &OdeSpec::default())?;
    println!("end point of the kappa = 1/(1+s^2), tau = 0.3 curve: {:?}", rec.eval(5.0).to_array());
    Ok(())
}

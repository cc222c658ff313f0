// Asymptotic lines of the helicoid; along the curved family the torsion
// satisfies tau^2 = -K.

use diffgeo::catalog::{make, Shape};
use diffgeo::curve::{frenet, CurveError};
use diffgeo::numerics::OdeSpec;
use diffgeo::surface::curvatures;
use diffgeo::surface_curve::{asymptotic_directions, asymptotic_line, ParamPath, SurfaceCurve};

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let Shape::Surface(helicoid) = make::<&str, &str>("helicoid", &[])? else {
        unreachable!()
    };
    println!("directions at (0.5, 0): {:?}", asymptotic_directions(&helicoid, 0.5, 0.0)?);
    for plus in [true, false] {
        let path = asymptotic_line(&helicoid, 0.5, 0.0, plus, 2.0, &OdeSpec::default())?;
        let sc = SurfaceCurve::new(&helicoid, &path);
        let (u, v) = path.eval(1.0);
        match frenet(&sc, 1.0) {
            Ok(f) => {
                let k = curvatures(&helicoid, u, v)?.k;
                println!("family {plus}: at ({u:.4}, {v:.4}) tau^2 = {:.12}, -K = {:.12}", f.tau * f.tau, -k);
            }
            Err(CurveError::InflectionPoint { .. }) => println!("family {plus}: straight ruling through ({u:.4}, {v:.4})"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

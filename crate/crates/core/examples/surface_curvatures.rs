// Fundamental forms, curvatures and principal directions on a torus.

use std::f64::consts::PI;

use diffgeo::catalog::{make, Shape};
use diffgeo::surface::{curvatures, dupin_classification, forms};

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let Shape::Surface(torus) = make("torus", &[("r", "1"), ("R", "3")])? else {
        unreachable!()
    };
    for v in [PI / 2.0, 0.0, -PI / 2.0] {
        let fb = forms(&torus, 0.3, v)?;
        let cd = curvatures(&torus, 0.3, v)?;
        println!("v = {v:+.4}");
        println!("  I  = ({:.6}, {:.6}, {:.6})", fb.a11, fb.a12, fb.a22);
        println!("  II = ({:.6}, {:.6}, {:.6})", fb.b11, fb.b12, fb.b22);
        println!("  K = {:.6}  H = {:.6}  kappa = ({:.6}, {:.6})  {:?}", cd.k, cd.h, cd.kappa1, cd.kappa2, cd.shape);
        if let (Some(d1), Some(d2)) = (cd.dir1, cd.dir2) {
            println!("  principal directions {:?} {:?}", d1.vector.to_array(), d2.vector.to_array());
        }
        println!("  Dupin indicatrix: {:?}", dupin_classification(&torus, 0.3, v)?);
    }
    Ok(())
}

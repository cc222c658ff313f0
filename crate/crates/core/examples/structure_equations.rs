// Residuals of the Gauss, Weingarten and Codazzi equations and of the
// intrinsic curvature formula on a catenoid.

use diffgeo::catalog::{make, Shape};
use diffgeo::surface::{
    codazzi_compatibility_residuals, curvatures, forms, gauss_weingarten_residuals, riemann_r1212,
};

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let Shape::Surface(s) = make::<&str, &str>("catenoid", &[])? else {
        unreachable!()
    };
    for (u, v) in [(0.2, -1.0), (1.7, 0.0), (4.0, 1.2)] {
        let gw = gauss_weingarten_residuals(&s, u, v)?;
        let cc = codazzi_compatibility_residuals(&s, u, v)?;
        let k = curvatures(&s, u, v)?.k;
        let intrinsic = riemann_r1212(&s, u, v)? / forms(&s, u, v)?.det_a();
        println!(
            "({u}, {v}): Gauss-Weingarten {:.1e}, Codazzi {:.1e}, K = {k:.12}, R1212/a = {intrinsic:.12}",
            gw.max(),
            cc.max()
        );
    }
    Ok(())
}

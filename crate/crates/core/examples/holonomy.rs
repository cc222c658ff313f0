// Parallel transport around circles of latitude: the holonomy angle
// equals the total curvature of the enclosed polar cap.

use std::f64::consts::PI;

use diffgeo::catalog::{make, Shape};
use diffgeo::numerics::{OdeSpec, QuadSpec, Rect};
use diffgeo::surface::total_curvature;
use diffgeo::surface_curve::{parallel_transport, wrap_angle, LinePath, SurfaceCurve};

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let Shape::Surface(sphere) = make::<&str, &str>("sphere", &[])? else {
        unreachable!()
    };
    for lat in [PI / 3.0, PI / 6.0, 0.1] {
        let sc = SurfaceCurve::new(&sphere, LinePath::new([0.0, lat], [2.0 * PI, lat]));
        let state = parallel_transport(&sc, [1.0, 0.0], &OdeSpec::default())?;
        let angle = state.rotation_angle(&sc)?;
        let cap = total_curvature(&sphere, &Rect::new(0.0, 2.0 * PI, lat, PI / 2.0), &QuadSpec::default())?;
        println!(
            "latitude {lat:.4}: holonomy {angle:+.10}, cap curvature {:.10} (mod 2 pi {:+.10}), norm drift {:.1e}",
            cap.value,
            wrap_angle(cap.value),
            state.norm_drift()
        );
    }
    Ok(())
}

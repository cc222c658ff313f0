// Every catalog shape against its closed-form reference values.

use diffgeo::catalog::{make, reference, Shape, REGISTRY};
use diffgeo::curve::frenet;
use diffgeo::surface::{curvatures, ParametricSurface};
use diffgeo::curve::ParametricCurve;

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let none: &[(&str, &str)] = &[];
    for entry in REGISTRY {
        let shape = make(entry.name, none)?;
        let (point, computed) = match &shape {
            Shape::Curve(c) => {
                let (a, b) = c.domain();
                let t = a + 0.37 * (b - a);
                let f = frenet(c, t).ok();
                (vec![t], [("kappa", f.map(|f| f.kappa)), ("tau", f.map(|f| f.tau))].to_vec())
            }
            Shape::Surface(s) => {
                let d = s.domain();
                let (u, v) = (d.u0 + 0.37 * (d.u1 - d.u0), d.v0 + 0.61 * (d.v1 - d.v0));
                let cd = curvatures(s, u, v)?;
                (vec![u, v], [("K", Some(cd.k)), ("H", Some(cd.h))].to_vec())
            }
        };
        let expected = reference(entry.name, none, &point).unwrap_or_default();
        let mut line = format!("{:<24} {:<40}", entry.name, entry.formula);
        for (key, value) in computed {
            match (value, expected.get(key)) {
                (Some(x), Some(r)) => line += &format!(" {key} = {x:+.6} (err {:.1e})", (x - r).abs()),
                (Some(x), None) => line += &format!(" {key} = {x:+.6}"),
                (None, _) => line += &format!(" {key} undefined"),
            }
        }
        println!("{line}");
    }
    Ok(())
}

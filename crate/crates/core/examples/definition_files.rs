// Curves and surfaces from definition files, with constant overrides.

use diffgeo::catalog::Shape;
use diffgeo::curve::frenet;
use diffgeo::expr::load_definition;
use diffgeo::surface::curvatures;

const HELIX: &str = include_str!("../data/helix.pc");
const SADDLE: &str = include_str!("../data/saddle.ps");

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let def = load_definition(HELIX)?;
    println!("{}", def.to_text());
    for a in [1.0, 2.0] {
        let Shape::Curve(c) = Shape::from_definition(&def.with_consts(&[("a".to_string(), a)])?) else {
            unreachable!()
        };
        let f = frenet(&c, 1.0)?;
        println!("a = {a}: kappa = {:.12}, tau = {:.12}", f.kappa, f.tau);
    }

    let Shape::Surface(s) = Shape::from_definition(&load_definition(SADDLE)?) else {
        unreachable!()
    };
    let cd = curvatures(&s, 0.0, 0.0)?;
    println!("saddle at the origin: K = {:.6}, H = {:.6}, {:?}", cd.k, cd.h, cd.shape);
    Ok(())
}

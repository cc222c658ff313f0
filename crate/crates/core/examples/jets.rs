// Exact derivatives by evaluating a parsed expression on Taylor jets.

use diffgeo::expr::parse_str;
use diffgeo::numerics::{Jet1, Jet2};

fn main() -> diffgeo::Result<()> {
    run_example()
}

pub fn run_example() -> diffgeo::Result<()> {
    let f = parse_str("exp(-x^2/2) * sin(a*x)")?.bind(&["x"], &[("a", 3.0)])?;
    let j = f.eval(&[Jet1::variable(0.4)])?;
    println!("f(0.4) = {:.12}", j.val());
    for k in 1..=4 {
        println!("f^({k})(0.4) = {:.12}", j.derivative(k));
    }

    // two parameters: all partials up to total order 3
    let g = parse_str("u^2 * v + cos(u*v)")?.bind(&["u", "v"], &[])?;
    let j = g.eval(&[Jet2::var_u(1.0), Jet2::var_v(0.5)])?;
    println!("g_u = {:.12}, g_v = {:.12}, g_uv = {:.12}", j.partial(1, 0), j.partial(0, 1), j.partial(1, 1));

    match parse_str("sin(x") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
    Ok(())
}

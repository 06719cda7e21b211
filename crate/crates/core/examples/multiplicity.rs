//! Hilbert–Samuel multiplicity from finite differences of ℓ(R/q^s), and its
//! behaviour under a monomial map: e(φⁿ(q)R) = e(q)·degⁿ.

use entrolib::dynamics::{degree_monomial, multiplicity};
use entrolib::groebner::Ideal;
use entrolib::parse_polynomial;
use entrolib::problem::parse_problem;

const MAP: &str = r#"
[ring]
field = "Q"
vars = ["x", "y"]

[map]
x = "x^2"
y = "y^3"
"#;

fn main() -> entrolib::Result<()> {
    let p = parse_problem(MAP)?;
    let phi = p.endomorphism()?;
    let budget = p.options.budget;
    let ctx = p.ctx();
    let q = Ideal::new(ctx, vec![parse_polynomial("x^2", ctx)?, parse_polynomial("y^3", ctx)?])?;
    for (label, ideal) in [("m", Ideal::maximal(ctx)), ("(x^2, y^3)", q)] {
        let r = multiplicity(phi.ring(), &ideal, 12, &budget)?;
        println!("e({label}) = {}   samples {:?}", r.multiplicity, r.samples);
    }
    let deg = degree_monomial(&phi, &budget)?.degree;
    for n in 1..=2 {
        let r = multiplicity(phi.ring(), &phi.image_ideal(n, &budget)?, 12, &budget)?;
        println!("e(phi^{n}(m)R) = {}, deg^{n} = {}", r.multiplicity, deg.pow(n));
    }
    Ok(())
}

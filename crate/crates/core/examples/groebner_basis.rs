//! Reduced Gröbner bases, normal forms and ideal membership.

use entrolib::groebner::{buchberger, Ideal};
use entrolib::{parse_polynomial, Budget, FieldSpec, MonomialOrder, VariableContext};

fn main() -> entrolib::Result<()> {
    let budget = Budget::default();
    for field in [FieldSpec::Rationals, FieldSpec::prime(3)?] {
        let ctx = VariableContext::new(&["x", "y", "z"], field)?;
        let gens = ["x^2 + y*z - 2", "y^2 + x*z - 3", "x*y*z - 1"]
            .iter()
            .map(|s| parse_polynomial(s, &ctx))
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = Ideal::new(&ctx, gens)?;
        for ord in [MonomialOrder::DegRevLex, MonomialOrder::DegLex] {
            let gb = buchberger(&ideal, ord, &budget)?;
            println!(
                "{field:?} {ord:?}: {} elements, colength {:?}",
                gb.basis().len(),
                gb.colength().finite()
            );
            for g in gb.basis() {
                println!("  {g}");
            }
        }
        let f = parse_polynomial("(x^2 + y*z - 2)*(x + 1) + z*(x*y*z - 1)", &ctx)?;
        let g = parse_polynomial("x^5", &ctx)?;
        println!("contains f: {}", ideal.contains(&f, &budget)?);
        let gb = buchberger(&ideal, MonomialOrder::DegRevLex, &budget)?;
        println!("x^5 mod I = {}\n", gb.normal_form(&g));
    }
    Ok(())
}

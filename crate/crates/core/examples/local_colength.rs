//! Local versus global colength, and the truncation level that certifies it.
//!
//! x(x − 1) has two roots globally but only one of them is at the origin.

use entrolib::groebner::Ideal;
use entrolib::local::LocalRingPresentation;
use entrolib::{parse_polynomial, Budget, FieldSpec, MonomialOrder, VariableContext};

fn main() -> entrolib::Result<()> {
    let budget = Budget::default();
    let ctx = VariableContext::new(&["x"], FieldSpec::Rationals)?;
    let ring = LocalRingPresentation::polynomial(&ctx);
    for src in ["x*(x - 1)", "x^2 + x", "x^3 - x^5"] {
        let ideal = Ideal::new(&ctx, vec![parse_polynomial(src, &ctx)?])?;
        let global = ideal.global_colength(MonomialOrder::DegRevLex, &budget)?;
        let local = ring.local_colength_detail(&ideal, &budget)?;
        println!(
            "({src}): global {:?}, local {} (stable from N = {})",
            global.finite(),
            local.value,
            local.stable_at
        );
    }

    // Two variables: a node at the origin plus a stray point at (1, 1).
    let ctx = VariableContext::new(&["x", "y"], FieldSpec::Rationals)?;
    let ring = LocalRingPresentation::polynomial(&ctx);
    let gens = ["y^2 - x^2 - x^3", "x*y*(x - 1)"]
        .iter()
        .map(|s| parse_polynomial(s, &ctx))
        .collect::<Result<Vec<_>, _>>()?;
    let ideal = Ideal::new(&ctx, gens)?;
    println!(
        "global {:?}",
        ideal.global_colength(MonomialOrder::DegRevLex, &budget)?.finite()
    );
    println!("local  {}", ring.local_colength(&ideal, &budget)?);
    for n in 1..=6 {
        println!("  c_{n} = {}", ring.truncated_colength(&ideal, n, &budget)?);
    }
    Ok(())
}

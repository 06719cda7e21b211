//! Degree of a monomial map as |det| of its exponent matrix, λ(φⁿ) = degⁿ,
//! and the power rule λ((φ^k)ⁿ) = λ(φ^{kn}).

use entrolib::dynamics::{degree_monomial, lambda_sequence, power_rule_check};
use entrolib::problem::parse_problem;

fn problem(images: &[(&str, &str)]) -> String {
    let vars: Vec<String> = images.iter().map(|(v, _)| format!("\"{v}\"")).collect();
    let map: Vec<String> = images.iter().map(|(v, i)| format!("{v} = \"{i}\"")).collect();
    format!(
        "[ring]\nfield = \"Q\"\nvars = [{}]\n\n[map]\n{}\n",
        vars.join(", "),
        map.join("\n")
    )
}

fn main() -> entrolib::Result<()> {
    for images in [
        vec![("x", "x^2"), ("y", "y^3")],
        vec![("x", "y"), ("y", "x^2")],
        vec![("x", "y^2"), ("y", "x^3")],
        vec![("x", "x^2"), ("y", "y^3"), ("z", "z^4")],
    ] {
        let p = parse_problem(&problem(&images))?;
        let phi = p.endomorphism()?;
        let budget = p.options.budget;
        let d = degree_monomial(&phi, &budget)?;
        let lambda = lambda_sequence(&phi, 4, &budget)?.values;
        println!("{images:?}");
        println!("  exponent matrix {:?}, degree {}", d.exponent_matrix, d.degree);
        println!("  lambda {lambda:?}");
        let pr = power_rule_check(&phi, 2, 2, &budget)?;
        println!(
            "  (phi^2)^n {:?} vs phi^(2n) {:?}: {}",
            pr.power_map, pr.iterated, pr.exact_match
        );
    }
    // Mixed monomials are never finite: φ(m)R = (xy) here.
    let p = parse_problem(&problem(&[("x", "x^2y"), ("y", "xy^3")]))?;
    println!(
        "(x^2y, xy^3): {}",
        degree_monomial(&p.endomorphism()?, &p.options.budget).unwrap_err()
    );
    Ok(())
}

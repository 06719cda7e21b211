//! Hilbert–Kunz ratios λ_n / exp(n·h) for Frobenius, with q = m and q = m².

use entrolib::dynamics::{hk_sequence, HkEntropy};
use entrolib::groebner::Ideal;
use entrolib::problem::parse_problem;

const FROBENIUS: &str = r#"
[ring]
field = "Fp"
p = 2
vars = ["x", "y"]

[map]
x = "x^2"
y = "y^2"
"#;

fn main() -> entrolib::Result<()> {
    let problem = parse_problem(FROBENIUS)?;
    let phi = problem.endomorphism()?;
    let budget = problem.options.budget;
    let m2 = Ideal::maximal_power(problem.ctx(), 2);
    for (label, q) in [("m", None), ("m^2", Some(&m2))] {
        let r = hk_sequence(&phi, 6, HkEntropy::Estimate, q, &budget)?;
        println!("q = {label}: values {:?}", r.values);
        println!("  geometric {}  h ({}) = {:.12}", r.geometric, r.h_kind, r.h_used);
        let ratios: Vec<String> = r.ratios.iter().map(|x| format!("{x:.12}")).collect();
        println!("  ratios {}", ratios.join(", "));
        if let Some(limit) = &r.limit {
            println!("  limit {limit}");
        }
    }
    Ok(())
}

//! Entropy of a map on two crossing lines versus the maps on each line.

use entrolib::dynamics::{components_analysis, invariant_minimal_primes};
use entrolib::problem::parse_problem;

const CROSSING: &str = r#"
[ring]
field = "Q"
vars = ["x", "y"]
quotient = ["xy"]

[map]
x = "x^2"
y = "y^3"
"#;

fn main() -> entrolib::Result<()> {
    let problem = parse_problem(CROSSING)?;
    let phi = problem.endomorphism()?;
    println!("invariant minimal primes {:?}", invariant_minimal_primes(&phi)?);
    let r = components_analysis(&phi, 8, &problem.options.budget)?;
    println!("whole: lambda {:?}", r.whole.values);
    println!("       diff estimate {:.6}", r.whole.diff_estimate);
    for c in &r.components {
        println!(
            "component {:?} (dim {}): diff estimate {:.6}",
            c.prime, c.dim, c.entropy.diff_estimate
        );
    }
    println!("max over components {:.6}, gap {:.6}", r.max_diff_estimate, r.diff_gap);
    println!("log 2 = {:.6}, log 3 = {:.6}", 2f64.ln(), 3f64.ln());

    // A map swapping the lines has no invariant component.
    let swapped = parse_problem(&CROSSING.replace("x = \"x^2\"\ny = \"y^3\"", "x = \"y\"\ny = \"x\""))?;
    match components_analysis(&swapped.endomorphism()?, 4, &swapped.options.budget) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("swapped lines: {e}"),
    }
    Ok(())
}

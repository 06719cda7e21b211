//! v(φⁿ) ≤ w(φⁿ) and the entropy sandwich d·log v_n/n ≤ h ≤ d·log w_n/n.

use entrolib::dynamics::bounds_analysis;
use entrolib::problem::parse_problem;

const DIAGONAL: &str = r#"
[ring]
field = "Q"
vars = ["x", "y"]

[map]
x = "x^2"
y = "y^3"
"#;

fn main() -> entrolib::Result<()> {
    let problem = parse_problem(DIAGONAL)?;
    let phi = problem.endomorphism()?;
    let r = bounds_analysis(&phi, 6, &problem.options.budget)?;
    println!(" n      v      w   lambda     log v/n     log w/n");
    for i in 0..r.lambda.len() {
        println!(
            "{:>2} {:>6} {:>6} {:>8}   {:>9}   {:>9.6}",
            i + 1,
            r.v_seq[i].finite().map_or("inf".into(), |v| v.to_string()),
            r.w_seq[i],
            r.lambda[i],
            r.v_h[i].map_or("-".into(), |x| format!("{x:.6}")),
            r.w_h[i]
        );
    }
    println!(
        "entropy upper bound {:.6}, log 6 = {:.6}",
        r.entropy.upper_bound,
        6f64.ln()
    );
    println!("lower ok {:?}\nupper ok {:?}", r.lower_ok, r.upper_ok);
    Ok(())
}

//! Length sequence and entropy of the Frobenius map on 𝔽₂[x, y].
//!
//! Run with `cargo run --example frobenius_entropy`.

use std::sync::Arc;

use entrolib::dynamics::{entropy_estimate, lambda_sequence};
use entrolib::groebner::Ideal;
use entrolib::local::{Endomorphism, LocalRingPresentation};
use entrolib::{parse_polynomial, Budget, FieldSpec, VariableContext};

fn main() -> entrolib::Result<()> {
    let ctx = VariableContext::new(&["x", "y"], FieldSpec::prime(2)?)?;
    let ring = Arc::new(LocalRingPresentation::new(&ctx, Ideal::zero(&ctx), None)?);
    let images = vec![parse_polynomial("x^2", &ctx)?, parse_polynomial("y^2", &ctx)?];
    let budget = Budget::default();
    let phi = Endomorphism::validate(ring, images, &budget)?;

    let seq = lambda_sequence(&phi, 6, &budget)?;
    let report = entropy_estimate(&seq.values)?;
    for (n, (l, h)) in seq.values.iter().zip(&report.per_n).enumerate() {
        println!("n = {}  lambda = {l:>5}  log(lambda)/n = {h:.12}", n + 1);
    }
    println!("upper bound  {:.12}", report.upper_bound);
    println!("2 log 2      {:.12}", 2.0 * 2f64.ln());
    Ok(())
}

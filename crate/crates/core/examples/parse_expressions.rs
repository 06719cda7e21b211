//! The polynomial expression parser and its error positions.

use entrolib::{parse_polynomial, FieldSpec, VariableContext};

fn main() -> entrolib::Result<()> {
    let ctx = VariableContext::new(&["x", "y", "z"], FieldSpec::Rationals)?;
    for src in [
        "3/4 x^2y - 2(x + y)^3",
        "xyz + x y z",
        "-(x - 1/2)^2 + 1/4",
        "2*x*y^10 - x^0",
    ] {
        println!("{src:<28} => {}", parse_polynomial(src, &ctx)?);
    }
    for bad in ["x^", "x + w", "(x + y", "x^-2", "1/0", "x ** 2"] {
        match parse_polynomial(bad, &ctx) {
            Ok(p) => println!("{bad:<28} => {p}"),
            Err(e) => println!("{bad:<28} !! {e}"),
        }
    }
    let f5 = VariableContext::new(&["x", "y"], FieldSpec::prime(5)?)?;
    println!("over F5: {}", parse_polynomial("7x + 10y + 1/2", &f5)?);
    Ok(())
}

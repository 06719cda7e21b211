//! Run the property suite on a few random binomial maps over several fields.
//!
//! `cargo run --release --example verify_random_maps -- 7` picks a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use entrolib::problem::parse_problem;
use entrolib::verify::{verify, Status};

fn random_term(rng: &mut ChaCha8Rng, vars: &[&str], min_deg: u32) -> String {
    loop {
        let exps: Vec<u32> = vars.iter().map(|_| rng.gen_range(0..=3)).collect();
        if exps.iter().sum::<u32>() >= min_deg {
            let factors: Vec<String> = vars
                .iter()
                .zip(&exps)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            return factors.join("*");
        }
    }
}

fn main() -> entrolib::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = ["x", "y"];
    for field in [
        "field = \"Q\"",
        "field = \"Fp\"\np = 2",
        "field = \"Fp\"\np = 3",
        "field = \"Fp\"\np = 5",
    ] {
        let map: Vec<String> = vars
            .iter()
            .map(|v| {
                let t = match rng.gen_range(1..=2) {
                    1 => v.to_string(),
                    e => format!("{v}^{e}"),
                };
                let extra = random_term(&mut rng, &vars, 2);
                format!("{v} = \"{t} + {extra}\"")
            })
            .collect();
        let src = format!("[ring]\n{field}\nvars = [\"x\", \"y\"]\n\n[map]\n{}\n", map.join("\n"));
        let p = parse_problem(&src)?;
        let phi = match p.endomorphism() {
            Ok(phi) => phi,
            Err(e) => {
                println!("{}: rejected ({e})", map.join(", "));
                continue;
            }
        };
        let r = verify(&phi, 4, 2, &p.options.budget, None)?;
        let count = |s: Status| r.properties.iter().filter(|x| x.status == s).count();
        println!(
            "{} over {}: lambda {:?}, {} passed, {} skipped",
            map.join(", "),
            field.replace('\n', " "),
            r.lambda,
            count(Status::Pass),
            count(Status::Skipped)
        );
        for prop in r.properties.iter().filter(|x| x.status == Status::Fail) {
            println!("  FAIL {}: {}", prop.name, prop.detail);
        }
    }
    Ok(())
}

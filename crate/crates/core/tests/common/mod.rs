//! Shared helpers: a seeded corpus of random monomial and binomial maps.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use entrolib::local::Endomorphism;
use entrolib::problem::parse_problem;
use entrolib::Error;

pub const FIELDS: [&str; 4] = [
    "field = \"Q\"",
    "field = \"Fp\"\np = 2",
    "field = \"Fp\"\np = 3",
    "field = \"Fp\"\np = 5",
];

#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub source: String,
}

impl Case {
    pub fn endomorphism(&self) -> Endomorphism {
        parse_problem(&self.source).unwrap().endomorphism().unwrap()
    }
}

fn power(v: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    }
}

fn monomial(vars: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| power(v, e))
        .collect();
    parts.join("*")
}

fn source(field: &str, vars: &[&str], images: &[String]) -> String {
    let names: Vec<String> = vars.iter().map(|v| format!("\"{v}\"")).collect();
    let map: Vec<String> = vars.iter().zip(images).map(|(v, i)| format!("{v} = \"{i}\"")).collect();
    format!(
        "[ring]\n{field}\nvars = [{}]\n\n[map]\n{}\n",
        names.join(", "),
        map.join("\n")
    )
}

/// A monomial map x_i ↦ x_{σ(i)}^{a_i}, or a binomial one with an extra
/// higher-order term on each image.
fn draw(rng: &mut ChaCha8Rng, field: &str, binomial: bool) -> Case {
    let vars: &[&str] = if !binomial && rng.gen_bool(0.4) {
        &["x", "y", "z"]
    } else {
        &["x", "y"]
    };
    let d = vars.len();
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let images: Vec<String> = (0..d)
        .map(|i| {
            let a = rng.gen_range(1..=if binomial { 2 } else { 3 });
            let lead = power(vars[perm[i]], a);
            if !binomial {
                return lead;
            }
            let mut exps = vec![0u32; d];
            while exps.iter().sum::<u32>() < 2 {
                exps[rng.gen_range(0..d)] += 1;
            }
            let c = rng.gen_range(1..=4);
            let tail = monomial(vars, &exps);
            if c == 1 {
                format!("{lead} + {tail}")
            } else {
                format!("{lead} + {c}*{tail}")
            }
        })
        .collect();
    let label = format!("{} {{{}}}", field.replace('\n', " "), images.join(", "));
    Case {
        label,
        source: source(field, vars, &images),
    }
}

/// `count` random finite maps cycling over ℚ, 𝔽₂, 𝔽₃, 𝔽₅; every other one
/// is binomial. Draws whose image is not m-primary are replaced.
pub fn corpus(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let field = FIELDS[out.len() % FIELDS.len()];
        let case = draw(&mut rng, field, out.len() % 2 == 1);
        let p = parse_problem(&case.source).unwrap();
        match p.endomorphism().and_then(|phi| phi.lambda_n(1, &p.options.budget)) {
            Ok(_) => out.push(case),
            Err(Error::NotFiniteLength(_)) => {}
            Err(e) => panic!("{}: {e}", case.label),
        }
    }
    out
}

/// Standard monomials of a monomial ideal inside the box [0, bound)^d,
/// by direct enumeration.
pub fn standard_monomials_in_box(gens: &[Vec<u32>], nvars: usize, bound: u32) -> usize {
    let mut count = 0;
    let mut e = vec![0u32; nvars];
    loop {
        if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return count;
            }
            e[i] += 1;
            if e[i] < bound {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Standard monomials of a two-variable monomial ideal, row by row: for each
/// power of x, the number of y-powers below every generator it reaches.
pub fn standard_monomials_2d(gens: &[(u64, u64)]) -> Option<u128> {
    let x_bound = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min()?;
    let mut total = 0u128;
    for i in 0..x_bound {
        let row = gens.iter().filter(|g| g.0 <= i).map(|g| g.1).min()?;
        total += row as u128;
    }
    Some(total)
}

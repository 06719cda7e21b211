//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` to see the
//! lines; the test fails if any criterion fails.

mod common;

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use entrolib::dynamics::{
    bounds_analysis, components_analysis, degree_monomial, entropy_estimate, hk_sequence, lambda_sequence,
    multiplicity, power_rule_check, HkEntropy,
};
use entrolib::groebner::Ideal;
use entrolib::local::{Endomorphism, LocalRingPresentation};
use entrolib::verify::{verify, Status};
use entrolib::{parse_polynomial, Budget, FieldSpec, VariableContext};

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn map(field: FieldSpec, vars: &[&str], quotient: &[&str], images: &[&str]) -> Endomorphism {
    let ctx = VariableContext::new(vars, field).unwrap();
    let a = Ideal::new(
        &ctx,
        quotient.iter().map(|s| parse_polynomial(s, &ctx).unwrap()).collect(),
    )
    .unwrap();
    let ring = Arc::new(LocalRingPresentation::new(&ctx, a, None).unwrap());
    let imgs = images.iter().map(|s| parse_polynomial(s, &ctx).unwrap()).collect();
    Endomorphism::validate(ring, imgs, &Budget::default()).unwrap()
}

fn ideal(ctx: &Arc<VariableContext>, gens: &[&str]) -> Ideal {
    Ideal::new(ctx, gens.iter().map(|s| parse_polynomial(s, ctx).unwrap()).collect()).unwrap()
}

fn b() -> Budget {
    Budget::default()
}

fn frobenius_entropy() -> Outcome {
    let start = Instant::now();
    let phi = map(FieldSpec::prime(2).unwrap(), &["x", "y"], &[], &["x^2", "y^2"]);
    let seq = lambda_sequence(&phi, 6, &b()).unwrap().values;
    let want: Vec<u128> = (1..=6).map(|n| 4u128.pow(n)).collect();
    let rep = entropy_estimate(&seq).unwrap();
    let target = 2.0 * 2f64.ln();
    let err = rep.per_n.iter().map(|h| (h - target).abs()).fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    let ok = seq == want && err <= 1e-12 && secs < 5.0;
    (
        ok,
        format!(
            "lambda = 4^n for n <= 6: {}, max |h_n - 2 log 2| = {err:.2e} (tol 1e-12), {secs:.3} s (limit 5 s)",
            seq == want
        ),
    )
}

fn dimension_zero() -> Outcome {
    let phi = map(FieldSpec::Rationals, &["x"], &["x^3"], &["x^2"]);
    let seq = lambda_sequence(&phi, 6, &b()).unwrap().values;
    let ub = entropy_estimate(&seq).unwrap().upper_bound;
    let bound = 3f64.ln() / 6.0;
    let ok = seq == [2, 3, 3, 3, 3, 3] && ub <= bound && ub < 0.184;
    (
        ok,
        format!("lambda = {seq:?}, upper bound {ub:.6} <= log(3)/6 = {bound:.6} < 0.184"),
    )
}

fn components_theorem() -> Outcome {
    let phi = map(FieldSpec::Rationals, &["x", "y"], &["xy"], &["x^2", "y^3"]);
    let rep = components_analysis(&phi, 8, &b()).unwrap();
    let seq = &rep.whole.values;
    let mut exact = seq.len() == 8;
    for n in 1..=8u32 {
        let (px, py) = (2u64.pow(n), 3u64.pow(n));
        let oracle = common::standard_monomials_2d(&[(1, 1), (px, 0), (0, py)]).unwrap();
        let closed = (px + py - 1) as u128;
        exact &= seq.get(n as usize - 1) == Some(&oracle) && oracle == closed;
    }
    let limits = [2f64.ln(), 3f64.ln()];
    let comp_err = rep
        .components
        .iter()
        .map(|c| {
            limits
                .iter()
                .map(|l| (c.entropy.diff_estimate - l).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let gap = (rep.whole.diff_estimate - 3f64.ln()).abs();
    let ok = exact && rep.components.len() == 2 && comp_err < 1e-12 && gap < 0.01;
    (
        ok,
        format!(
            "lambda = 2^n + 3^n - 1 = oracle for n <= 8: {exact}, component limits log 2, log 3 (err {comp_err:.1e}), \
             |diff_estimate - log 3| = {gap:.6} (tol 0.01)"
        ),
    )
}

fn power_rule() -> Outcome {
    let phi = map(FieldSpec::Rationals, &["x", "y"], &[], &["x^2", "y^3"]);
    let rep = power_rule_check(&phi, 2, 4, &b()).unwrap();
    let ok = rep.exact_match && rep.power_map.len() == 4 && rep.power_map == rep.iterated;
    (
        ok,
        format!(
            "lambda((phi^2)^n) = {:?}, lambda(phi^(2n)) = {:?}",
            rep.power_map, rep.iterated
        ),
    )
}

fn bounds_sandwich() -> Outcome {
    let phi = map(FieldSpec::Rationals, &["x", "y"], &[], &["x^2", "y^3"]);
    let rep = bounds_analysis(&phi, 6, &b()).unwrap();
    let firsts = rep.v_seq[0].finite() == Some(2) && rep.w_seq[0] == 4;
    let mut ok = firsts && rep.lambda.len() == 6;
    let d = rep.dim as f64;
    for n in 0..6 {
        let lower = d * rep.v_h[n].expect("v finite");
        ok &= lower <= rep.entropy.running_min[n];
        ok &= rep.entropy.diff_estimate <= d * rep.w_h[n] + 1e-6;
    }
    (
        ok,
        format!(
            "v_1 = {:?}, w_1 = {}, lower and upper sandwich for n <= 6 (tol 1e-6)",
            rep.v_seq[0].finite(),
            rep.w_seq[0]
        ),
    )
}

fn degree_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ok = true;
    let mut seen = Vec::new();
    for _ in 0..10 {
        let a: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=4)).collect();
        let images: Vec<String> = ["x", "y", "z"]
            .iter()
            .zip(&a)
            .map(|(v, e)| format!("{v}^{e}"))
            .collect();
        let refs: Vec<&str> = images.iter().map(|s| s.as_str()).collect();
        let phi = map(FieldSpec::Rationals, &["x", "y", "z"], &[], &refs);
        let want = (a[0] * a[1] * a[2]) as u128;
        let deg = degree_monomial(&phi, &b()).unwrap().degree;
        let seq = lambda_sequence(&phi, 4, &b()).unwrap().values;
        ok &= deg == want && seq.iter().enumerate().all(|(i, &l)| l == want.pow(i as u32 + 1));
        seen.push(want);
    }
    let twisted = map(FieldSpec::Rationals, &["x", "y"], &[], &["y", "x^2"]);
    let tdeg = degree_monomial(&twisted, &b()).unwrap().degree;
    let tseq = lambda_sequence(&twisted, 6, &b()).unwrap().values;
    let even_ok = (1..=3).all(|m| tseq[2 * m - 1] == 4u128.pow(m as u32));
    ok &= tdeg == 2 && even_ok && tseq.iter().enumerate().all(|(i, &l)| l == 2u128.pow(i as u32 + 1));
    (
        ok,
        format!("10 diagonal maps, degrees {seen:?}, lambda = deg^n for n <= 4; (y, x^2): deg {tdeg}, lambda {tseq:?}"),
    )
}

fn hilbert_kunz() -> Outcome {
    let phi = map(FieldSpec::prime(2).unwrap(), &["x", "y"], &[], &["x^2", "y^2"]);
    let m = hk_sequence(&phi, 6, HkEntropy::Estimate, None, &b()).unwrap();
    let limit_one = m.limit.as_ref().map(|l| l.to_string()) == Some("1".into());
    let m2 = Ideal::maximal_power(phi.ctx(), 2);
    let q = hk_sequence(&phi, 6, HkEntropy::Estimate, Some(&m2), &b()).unwrap();
    let err = q.ratios.iter().map(|r| (r - 3.0).abs()).fold(0.0, f64::max);
    let exact_three = q
        .ratios_exact
        .as_ref()
        .is_some_and(|rs| rs.iter().all(|r| r.to_string() == "3"));
    let ok = m.geometric && limit_one && err <= 1e-12 && exact_three;
    (
        ok,
        format!(
            "geometric {}, limit {:?}; q = m^2 ratios -> 3, max error {err:.1e} (tol 1e-12)",
            m.geometric,
            m.limit.map(|l| l.to_string())
        ),
    )
}

fn multiplicity_oracle() -> Outcome {
    let phi = map(FieldSpec::Rationals, &["x", "y"], &[], &["x^2", "y^3"]);
    let ring = phi.ring();
    let ctx = phi.ctx();
    let em = multiplicity(ring, &Ideal::maximal(ctx), 12, &b()).unwrap().multiplicity;
    let eq = multiplicity(ring, &ideal(ctx, &["x^2", "y^3"]), 12, &b())
        .unwrap()
        .multiplicity;
    let en: Vec<i128> = (1..=2)
        .map(|n| {
            multiplicity(ring, &phi.image_ideal(n, &b()).unwrap(), 12, &b())
                .unwrap()
                .multiplicity
        })
        .collect();
    let ok = em == 1 && eq == 6 && en == [6, 36];
    (
        ok,
        format!("e(m) = {em}, e((x^2, y^3)) = {eq}, e(phi^n(m)R) = {en:?} for n = 1, 2 (s_max 12)"),
    )
}

fn property_suite() -> Outcome {
    const REQUIRED: [&str; 6] = [
        "submultiplicativity",
        "maximal_ideal_quotient_length",
        "v_le_w",
        "v_supermultiplicative",
        "w_submultiplicative",
        "conjugation_invariance",
    ];
    let start = Instant::now();
    let corpus = common::corpus(2024, 24);
    let mut bad = Vec::new();
    for case in &corpus {
        let rep = verify(&case.endomorphism(), 4, 2, &b(), None).unwrap();
        for p in &rep.properties {
            let required_missing = REQUIRED.contains(&p.name) && p.status != Status::Pass;
            if p.status == Status::Fail || required_missing {
                bad.push(format!("{}: {} {:?}", case.label, p.name, p.status));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && corpus.len() >= 20 && secs < 60.0;
    (
        ok,
        format!(
            "{} random maps over Q, F2, F3, F5, {} failures {bad:?}, {secs:.1} s (limit 60 s)",
            corpus.len(),
            bad.len()
        ),
    )
}

fn local_vs_global() -> Outcome {
    let ctx = VariableContext::new(&["x"], FieldSpec::Rationals).unwrap();
    let ring = LocalRingPresentation::polynomial(&ctx);
    let a = ring.local_colength(&ideal(&ctx, &["x*(x - 1)"]), &b()).unwrap();
    let c = ring.local_colength(&ideal(&ctx, &["x^2 + x"]), &b()).unwrap();
    (
        a == 1 && c == 1,
        format!("local colength of (x(x - 1)) = {a}, of (x^2 + x) = {c} (global value 2)"),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("frobenius entropy", frobenius_entropy),
        ("dimension zero", dimension_zero),
        ("components", components_theorem),
        ("power rule", power_rule),
        ("bounds sandwich", bounds_sandwich),
        ("degree identity", degree_identity),
        ("hilbert-kunz", hilbert_kunz),
        ("multiplicity", multiplicity_oracle),
        ("property suite", property_suite),
        ("local vs global", local_vs_global),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        println!("{:>2} {} {name}: {detail}", i + 1, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Executable identities and inequalities that every valid map must satisfy.
//!
//! The `check_*` functions are pure and work on already computed sequences;
//! [`verify`] computes the sequences for a map and runs every applicable check.

use serde::Serialize;

use crate::budget::Budget;
use crate::dynamics::{
    component_map, degree_monomial, entropy_estimate, invariant_minimal_primes, lambda_sequence, par_map,
    power_rule_check, SANDWICH_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::local::{Endomorphism, Order};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl PropertyResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        PropertyResult {
            name,
            status: Status::Pass,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        PropertyResult {
            name,
            status: Status::Fail,
            detail: detail.into(),
        }
    }

    fn skipped(name: &'static str, detail: impl Into<String>) -> Self {
        PropertyResult {
            name,
            status: Status::Skipped,
            detail: detail.into(),
        }
    }

    fn from_check(name: &'static str, ok_detail: &str, r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(name, ok_detail),
            Err(w) => Self::fail(name, w),
        }
    }

    fn from_error(name: &'static str, e: &Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => PropertyResult {
                name,
                status: Status::Budget,
                detail: e.to_string(),
            },
            _ => Self::fail(name, e.to_string()),
        }
    }
}

/// λ_{m+n} ≤ λ_m·λ_n for all m + n within the prefix; the witness is (m, n).
pub fn check_submultiplicative(values: &[u128]) -> std::result::Result<(), String> {
    for m in 1..=values.len() {
        for n in m..=values.len() - m {
            let (a, b, c) = (values[m - 1], values[n - 1], values[m + n - 1]);
            if a.checked_mul(b).is_some_and(|ab| c > ab) {
                return Err(format!("witness (m, n) = ({m}, {n}): λ_{} = {c} > {a}·{b}", m + n));
            }
        }
    }
    Ok(())
}

/// v_{m+n} ≥ v_m·v_n, unbounded counting as infinite.
pub fn check_supermultiplicative(v: &[Order]) -> std::result::Result<(), String> {
    for m in 1..=v.len() {
        for n in m..=v.len() - m {
            if let (Order::Finite(a), Order::Finite(b)) = (v[m - 1], v[n - 1]) {
                let ok = match v[m + n - 1] {
                    Order::Unbounded => true,
                    Order::Finite(c) => c as u128 >= a as u128 * b as u128,
                };
                if !ok {
                    return Err(format!(
                        "witness (m, n) = ({m}, {n}): v_{} = {} < {a}·{b}",
                        m + n,
                        v[m + n - 1]
                    ));
                }
            }
        }
    }
    Ok(())
}

pub fn check_v_le_w(v: &[Order], w: &[u64]) -> std::result::Result<(), String> {
    for (i, (a, &b)) in v.iter().zip(w).enumerate() {
        if let Order::Finite(a) = a {
            if *a > b {
                return Err(format!("n = {}: v = {a} > w = {b}", i + 1));
            }
        }
    }
    Ok(())
}

/// Running minimum of h_n is nonincreasing and bounded by every earlier h_n.
pub fn check_fekete(values: &[u128]) -> std::result::Result<(), String> {
    let r = entropy_estimate(values).map_err(|e| e.to_string())?;
    for i in 1..r.running_min.len() {
        if r.running_min[i] > r.running_min[i - 1] {
            return Err(format!("running minimum increases at n = {}", i + 1));
        }
    }
    for (i, h) in r.per_n.iter().enumerate() {
        if r.running_min[i..].iter().any(|m| m > h) {
            return Err(format!("h_{} = {h} is below a later running minimum", i + 1));
        }
    }
    Ok(())
}

/// deg(φ)ⁿ = λ(φⁿ).
pub fn check_degree_identity(degree: u128, values: &[u128]) -> std::result::Result<(), String> {
    let mut p: u128 = 1;
    for (i, &v) in values.iter().enumerate() {
        p = p.checked_mul(degree).ok_or("degree power overflows")?;
        if p != v {
            return Err(format!("n = {}: deg^n = {p} but λ = {v}", i + 1));
        }
    }
    Ok(())
}

/// Every element of `small` is at most the matching element of `big`.
pub fn check_dominated(small: &[u128], big: &[u128]) -> std::result::Result<(), String> {
    match small.iter().zip(big).position(|(a, b)| a > b) {
        Some(i) => Err(format!("n = {}: {} > {}", i + 1, small[i], big[i])),
        None => Ok(()),
    }
}

/// Deliberate corruption of λ, used to show that the checks catch bugs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Replace λ(φ²) by λ(φ)² + 1.
    InflateSecondLambda,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n_max: u32,
    pub lambda: Vec<u128>,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        !self
            .properties
            .iter()
            .any(|p| matches!(p.status, Status::Fail | Status::Budget))
    }

    pub fn any_failed(&self) -> bool {
        self.properties.iter().any(|p| p.status == Status::Fail)
    }

    pub fn any_budget(&self) -> bool {
        self.properties.iter().any(|p| p.status == Status::Budget)
    }
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// Permutations used for the conjugation check: all of them up to four variables,
/// otherwise the adjacent transpositions and one full cycle.
pub fn conjugation_permutations(d: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..d).collect();
    if d <= 4 {
        return permutations(d).into_iter().filter(|p| *p != id).collect();
    }
    let mut out = Vec::new();
    for i in 0..d - 1 {
        let mut p = id.clone();
        p.swap(i, i + 1);
        out.push(p);
    }
    out.push((0..d).map(|i| (i + 1) % d).collect());
    out
}

/// Run every applicable property on prefixes of length `n_max`; the power
/// rule is checked for φ^k with n ≤ n_max / k.
pub fn verify(phi: &Endomorphism, n_max: u32, k: u32, budget: &Budget, fault: Option<Fault>) -> Result<VerifyReport> {
    let seq = lambda_sequence(phi, n_max, budget)?;
    let mut lambda = seq.values.clone();
    if let (Some(Fault::InflateSecondLambda), true) = (fault, lambda.len() >= 2) {
        lambda[1] = lambda[0] * lambda[0] + 1;
    }
    let mut props = Vec::new();
    if !seq.is_complete() {
        props.push(PropertyResult {
            name: "lambda_sequence_complete",
            status: Status::Budget,
            detail: format!("only {} of {n_max} values computed", lambda.len()),
        });
    }
    let n = lambda.len() as u32;

    props.push(PropertyResult::from_check(
        "lambda_at_least_one",
        "all values ≥ 1",
        match lambda.iter().position(|&v| v == 0) {
            Some(i) => Err(format!("λ_{} = 0", i + 1)),
            None => Ok(()),
        },
    ));
    props.push(PropertyResult::from_check(
        "submultiplicativity",
        "λ_{m+n} ≤ λ_m·λ_n on every pair",
        check_submultiplicative(&lambda),
    ));
    props.push(PropertyResult::from_check(
        "fekete_monotonicity",
        "running minimum is the infimum so far",
        check_fekete(&lambda),
    ));
    props.push(maximal_ideal_quotient(phi, n, &lambda, budget));
    props.push(nakayama_spot_check(phi, n, &lambda, budget));
    props.extend(order_bound_checks(phi, n, &lambda, budget));
    props.push(power_rule(phi, n, k, budget));
    props.push(conjugation(phi, n, &lambda, budget));
    props.push(degree_identity(phi, &lambda, budget));
    props.push(components(phi, n, &lambda, budget));
    props.push(quotient_inequality(phi, n, &lambda, budget));
    Ok(VerifyReport {
        n_max,
        lambda,
        properties: props,
    })
}

fn maximal_ideal_quotient(phi: &Endomorphism, n: u32, lambda: &[u128], budget: &Budget) -> PropertyResult {
    const NAME: &str = "maximal_ideal_quotient_length";
    let ring = phi.ring();
    let run = || -> Result<std::result::Result<(), String>> {
        let m = Ideal::maximal(phi.ctx());
        let residue = ring.local_colength(&m, budget)?;
        if residue != 1 {
            return Ok(Err(format!("ℓ(R/m) = {residue}")));
        }
        for k in 1..=n {
            // J ⊆ m, so ℓ(m/J) = ℓ(R/J) − ℓ(R/m).
            let j = phi.image_ideal(k, budget)?;
            let jm = ring.local_colength(&j.sum(&m)?, budget)?;
            if jm != residue {
                return Ok(Err(format!("n = {k}: J + m has colength {jm}, so J ⊄ m")));
            }
            if lambda[k as usize - 1] < residue {
                return Ok(Err(format!("n = {k}: λ = {} < ℓ(R/m)", lambda[k as usize - 1])));
            }
        }
        Ok(Ok(()))
    };
    match run() {
        Ok(r) => PropertyResult::from_check(NAME, "ℓ(m/J) = λ − 1 with ℓ(R/m) = 1", r),
        Err(e) => PropertyResult::from_error(NAME, &e),
    }
}

fn nakayama_spot_check(phi: &Endomorphism, n: u32, lambda: &[u128], budget: &Budget) -> PropertyResult {
    const NAME: &str = "truncation_stability";
    let ring = phi.ring();
    let run = || -> Result<std::result::Result<(), String>> {
        for k in 1..=n {
            let j = phi.image_ideal(k, budget)?;
            let lc = ring.local_colength_detail(&j, budget)?;
            let s = lc.stable_at.max(1);
            for t in [2 * s, 4 * s] {
                let c = ring.truncated_colength(&j, t, budget)?;
                if c != lambda[k as usize - 1] {
                    return Ok(Err(format!("n = {k}: c_{t} = {c} but λ = {}", lambda[k as usize - 1])));
                }
            }
        }
        Ok(Ok(()))
    };
    match run() {
        Ok(r) => PropertyResult::from_check(NAME, "c_N = λ at twice and four times the stop level", r),
        Err(e) => PropertyResult::from_error(NAME, &e),
    }
}

fn order_bound_checks(phi: &Endomorphism, n: u32, lambda: &[u128], budget: &Budget) -> Vec<PropertyResult> {
    let names = [
        "v_le_w",
        "v_supermultiplicative",
        "w_submultiplicative",
        "entropy_sandwich",
    ];
    let bounds = match par_map(n as usize, |i| phi.order_bounds(i as u32 + 1, budget))
        .into_iter()
        .collect::<Result<Vec<_>>>()
    {
        Ok(b) => b,
        Err(e) => return names.iter().map(|nm| PropertyResult::from_error(nm, &e)).collect(),
    };
    let v: Vec<Order> = bounds.iter().map(|b| b.v).collect();
    let w: Vec<u64> = bounds.iter().map(|b| b.w).collect();
    let w128: Vec<u128> = w.iter().map(|&x| x as u128).collect();
    let mut out = vec![
        PropertyResult::from_check(names[0], "v_n ≤ w_n for every n", check_v_le_w(&v, &w)),
        PropertyResult::from_check(
            names[1],
            "v_{m+n} ≥ v_m·v_n on every pair",
            check_supermultiplicative(&v),
        ),
        PropertyResult::from_check(
            names[2],
            "w_{m+n} ≤ w_m·w_n on every pair",
            check_submultiplicative(&w128),
        ),
    ];
    out.push(match phi.ring().dim() {
        None => PropertyResult::skipped(names[3], "Krull dimension unknown"),
        Some(d) => {
            let ent = match entropy_estimate(lambda) {
                Ok(e) => e,
                Err(e) => {
                    return out
                        .into_iter()
                        .chain([PropertyResult::from_error(names[3], &e)])
                        .collect()
                }
            };
            let d = d as f64;
            let mut res = Ok(());
            for i in 0..lambda.len() {
                let k = (i + 1) as f64;
                if let Order::Finite(vn) = v[i] {
                    if d * (vn as f64).ln() / k > ent.upper_bound + SANDWICH_TOLERANCE {
                        res = Err(format!("n = {}: d·log v/n exceeds the entropy upper bound", i + 1));
                        break;
                    }
                }
                if ent.diff_estimate > d * (w[i] as f64).ln() / k + SANDWICH_TOLERANCE {
                    res = Err(format!("n = {}: estimate exceeds d·log w/n", i + 1));
                    break;
                }
            }
            PropertyResult::from_check(names[3], "d·log v_n/n ≤ h ≤ d·log w_n/n", res)
        }
    });
    out
}

fn power_rule(phi: &Endomorphism, n: u32, k: u32, budget: &Budget) -> PropertyResult {
    const NAME: &str = "power_rule";
    let m = (n / k.max(1)).max(1);
    match power_rule_check(phi, k, m, budget) {
        Ok(r) if r.exact_match => PropertyResult::pass(NAME, format!("λ((φ^{k})ⁿ) = λ(φ^{{{k}n}}) for n ≤ {m}")),
        Ok(r) => {
            let i = r.first_mismatch.unwrap_or(1) as usize;
            PropertyResult::fail(
                NAME,
                format!("k = {k}, n = {i}: {} vs {}", r.power_map[i - 1], r.iterated[i - 1]),
            )
        }
        Err(e) => PropertyResult::from_error(NAME, &e),
    }
}

fn conjugation(phi: &Endomorphism, n: u32, lambda: &[u128], budget: &Budget) -> PropertyResult {
    const NAME: &str = "conjugation_invariance";
    let perms = conjugation_permutations(phi.ctx().nvars());
    if perms.is_empty() {
        return PropertyResult::skipped(NAME, "single variable");
    }
    for p in &perms {
        let seq = phi
            .conjugate(p, budget)
            .and_then(|psi| lambda_sequence(&psi, n, budget));
        match seq {
            Ok(s) if s.values == lambda => {}
            Ok(s) => return PropertyResult::fail(NAME, format!("permutation {p:?}: {:?} vs {:?}", s.values, lambda)),
            Err(e) => return PropertyResult::from_error(NAME, &e),
        }
    }
    PropertyResult::pass(NAME, format!("{} permutations agree exactly", perms.len()))
}

fn degree_identity(phi: &Endomorphism, lambda: &[u128], budget: &Budget) -> PropertyResult {
    const NAME: &str = "degree_identity";
    match degree_monomial(phi, budget) {
        Ok(d) => PropertyResult::from_check(
            NAME,
            &format!("λ(φⁿ) = {}ⁿ", d.degree),
            check_degree_identity(d.degree, lambda),
        ),
        Err(e @ Error::BudgetExceeded { .. }) => PropertyResult::from_error(NAME, &e),
        Err(e) => PropertyResult::skipped(NAME, e.to_string()),
    }
}

fn components(phi: &Endomorphism, n: u32, lambda: &[u128], budget: &Budget) -> PropertyResult {
    const NAME: &str = "components_bounded_by_whole";
    let primes = match invariant_minimal_primes(phi) {
        Ok(p) => p,
        Err(e) => return PropertyResult::skipped(NAME, e.to_string()),
    };
    for p in &primes {
        let seq = component_map(phi, p, budget).and_then(|psi| lambda_sequence(&psi, n, budget));
        match seq {
            Ok(s) => {
                if let Err(w) = check_dominated(&s.values, lambda) {
                    return PropertyResult::fail(NAME, format!("component {p:?}: {w}"));
                }
            }
            Err(e) => return PropertyResult::from_error(NAME, &e),
        }
    }
    PropertyResult::pass(NAME, format!("{} invariant minimal primes", primes.len()))
}

fn quotient_inequality(phi: &Endomorphism, n: u32, lambda: &[u128], budget: &Budget) -> PropertyResult {
    const NAME: &str = "quotient_inequality";
    let ctx = phi.ctx();
    let run = || -> Result<std::result::Result<(), String>> {
        let extras = [
            ("m²", Ideal::maximal(ctx).power(2, budget)?),
            ("φ(m)", phi.image_ideal(1, budget)?),
        ];
        for (label, extra) in &extras {
            let mut vals = Vec::new();
            for k in 1..=n {
                let j = phi.image_ideal(k, budget)?.sum(extra)?;
                vals.push(phi.ring().local_colength(&j, budget)?);
            }
            if let Err(w) = check_dominated(&vals, lambda) {
                return Ok(Err(format!("a + {label}: {w}")));
            }
        }
        Ok(Ok(()))
    };
    match run() {
        Ok(r) => PropertyResult::from_check(NAME, "ℓ(R/(J + a')) ≤ ℓ(R/J) for a' = a + m², a + φ(m)", r),
        Err(e) => PropertyResult::from_error(NAME, &e),
    }
}

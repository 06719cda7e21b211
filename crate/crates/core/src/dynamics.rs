//! Asymptotic invariants of an endomorphism: λ-sequences, entropy, the
//! Hilbert–Kunz ratios, order bounds, components, degree and multiplicity.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::local::{minimal_primes_monomial, DimensionStatus, Endomorphism, LocalRingPresentation, Order};
use crate::poly::Polynomial;

/// Worker count: `ENTROLIB_THREADS` if set to a positive integer, else rayon's default.
pub fn configured_threads() -> usize {
    std::env::var("ENTROLIB_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(configured_threads())
            .build()
            .expect("thread pool")
    })
}

/// Run `f(i)` for i in 0..n on the shared pool; results come back in index order.
pub fn par_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    pool().install(|| (0..n).into_par_iter().map(&f).collect())
}

fn ser_opt_rational<S: Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}

fn ser_rationals<S: Serializer>(r: &Option<Vec<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.collect_seq(v.iter().map(fmt_rational)),
        None => s.serialize_none(),
    }
}

/// "a/b", or just "a" for integers.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ln_u128(v: u128) -> f64 {
    (v as f64).ln()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum EntryStatus {
    Ok,
    Budget(String),
    Failed(String),
}

/// λ(φ¹), …, λ(φ^{n_max}); `values` is the prefix computed before the
/// first failure, `statuses` covers every requested n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaSequence {
    pub n_max: u32,
    pub values: Vec<u128>,
    pub statuses: Vec<EntryStatus>,
}

impl LambdaSequence {
    pub fn is_complete(&self) -> bool {
        self.values.len() == self.n_max as usize
    }

    pub fn budget_exhausted(&self) -> bool {
        self.statuses.iter().any(|s| matches!(s, EntryStatus::Budget(_)))
    }

    fn from_results(n_max: u32, results: Vec<Result<u128>>) -> Self {
        let mut values = Vec::new();
        let mut statuses = Vec::new();
        let mut broken = false;
        for r in results {
            match r {
                Ok(v) if !broken => {
                    values.push(v);
                    statuses.push(EntryStatus::Ok);
                }
                Ok(_) => statuses.push(EntryStatus::Failed("after an earlier failure".into())),
                Err(e @ Error::BudgetExceeded { .. }) => {
                    broken = true;
                    statuses.push(EntryStatus::Budget(e.to_string()));
                }
                Err(e) => {
                    broken = true;
                    statuses.push(EntryStatus::Failed(e.to_string()));
                }
            }
        }
        LambdaSequence {
            n_max,
            values,
            statuses,
        }
    }
}

/// Iterates up to n_max (sequentially, cached), then colengths in parallel.
fn sequence_with(
    phi: &Endomorphism,
    n_max: u32,
    budget: &Budget,
    each: impl Fn(u32) -> Result<u128> + Sync + Send,
) -> Result<LambdaSequence> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut reachable = 0;
    let mut iter_err = None;
    for n in 1..=n_max {
        match phi.iterate(n, budget) {
            Ok(_) => reachable = n,
            Err(e) => {
                iter_err = Some(e);
                break;
            }
        }
    }
    let mut results = par_map(reachable as usize, |i| each(i as u32 + 1));
    if let Some(e) = iter_err {
        results.push(Err(e));
        while results.len() < n_max as usize {
            results.push(Err(Error::BudgetExceeded {
                what: "iterate not computed",
                limit: 0,
            }));
        }
    }
    if let Some(Err(e)) = results.first() {
        if !matches!(e, Error::BudgetExceeded { .. }) {
            return Err(e.clone());
        }
    }
    Ok(LambdaSequence::from_results(n_max, results))
}

/// λ(φⁿ) for n = 1..n_max. Errors only if λ(φ) itself is not finite.
pub fn lambda_sequence(phi: &Endomorphism, n_max: u32, budget: &Budget) -> Result<LambdaSequence> {
    sequence_with(phi, n_max, budget, |n| phi.lambda_n(n, budget))
}

/// ℓ(R/φⁿ(q)R) for n = 1..n_max.
pub fn ideal_sequence(phi: &Endomorphism, q: &Ideal, n_max: u32, budget: &Budget) -> Result<LambdaSequence> {
    sequence_with(phi, n_max, budget, |n| phi.colength_of_image(q, n, budget))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub n_max: u32,
    pub values: Vec<u128>,
    /// h_n = log λ_n / n.
    pub per_n: Vec<f64>,
    pub running_min: Vec<f64>,
    /// min over the prefix; an upper bound for the entropy, which is the infimum.
    pub upper_bound: f64,
    /// log λ_{n_max} − log λ_{n_max − 1}; h_1 when only one value exists.
    pub diff_estimate: f64,
}

/// Entropy statistics of a positive sequence (pure).
pub fn entropy_estimate(values: &[u128]) -> Result<EntropyReport> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("empty sequence".into()));
    }
    if values.contains(&0) {
        return Err(Error::InvalidArgument("sequence has a zero entry".into()));
    }
    let per_n: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| ln_u128(v) / (i + 1) as f64)
        .collect();
    let mut running_min = Vec::with_capacity(per_n.len());
    let mut m = f64::INFINITY;
    for &h in &per_n {
        m = m.min(h);
        running_min.push(m);
    }
    let k = values.len();
    let diff_estimate = if k == 1 {
        per_n[0]
    } else {
        ln_u128(values[k - 1]) - ln_u128(values[k - 2])
    };
    Ok(EntropyReport {
        n_max: k as u32,
        values: values.to_vec(),
        per_n,
        running_min,
        upper_bound: m,
        diff_estimate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerRuleReport {
    pub k: u32,
    /// λ((φᵏ)ⁿ).
    pub power_map: Vec<u128>,
    /// λ(φ^{kn}).
    pub iterated: Vec<u128>,
    pub exact_match: bool,
    pub first_mismatch: Option<u32>,
    /// Upper bound for φᵏ divided by the one for φ at the same prefix length.
    pub upper_bound_ratio: Option<f64>,
}

pub fn power_rule_check(phi: &Endomorphism, k: u32, n_max: u32, budget: &Budget) -> Result<PowerRuleReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("power k must be at least 1".into()));
    }
    let psi = phi.power(k, budget)?;
    let lhs = lambda_sequence(&psi, n_max, budget)?;
    let rhs = par_map(lhs.values.len(), |i| phi.lambda_n(k * (i as u32 + 1), budget))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let first_mismatch = lhs
        .values
        .iter()
        .zip(&rhs)
        .position(|(a, b)| a != b)
        .map(|i| i as u32 + 1);
    let base = lambda_sequence(phi, lhs.values.len() as u32, budget)?;
    let ratio = match (entropy_estimate(&lhs.values), entropy_estimate(&base.values)) {
        (Ok(a), Ok(b)) if b.upper_bound > 0.0 => Some(a.upper_bound / b.upper_bound),
        _ => None,
    };
    Ok(PowerRuleReport {
        k,
        power_map: lhs.values,
        iterated: rhs,
        exact_match: first_mismatch.is_none(),
        first_mismatch,
        upper_bound_ratio: ratio,
    })
}

/// λ_{n+1}·λ_{n−1} = λ_n² over the whole prefix (at least three values).
pub fn is_geometric(values: &[u128]) -> bool {
    values.len() >= 3
        && values
            .windows(3)
            .all(|w| BigInt::from(w[0]) * BigInt::from(w[2]) == BigInt::from(w[1]) * BigInt::from(w[1]))
}

/// Entropy used for the Hilbert–Kunz normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum HkEntropy {
    /// Detect a geometric λ-sequence, else fall back to the upper bound.
    Estimate,
    Given(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HkReport {
    /// "lambda" or "ideal".
    pub source: &'static str,
    pub lambda: Vec<u128>,
    pub values: Vec<u128>,
    pub geometric: bool,
    /// Exact common ratio of λ when geometric.
    #[serde(serialize_with = "ser_opt_rational")]
    pub base: Option<BigRational>,
    pub h_used: f64,
    /// "exact", "upper_bound" or "given".
    pub h_kind: &'static str,
    pub dim_used: usize,
    pub dim_status: DimensionStatus,
    /// p(φ, R) = exp(h / dim); None in dimension zero.
    pub p_root: Option<f64>,
    pub ratios: Vec<f64>,
    #[serde(serialize_with = "ser_rationals")]
    pub ratios_exact: Option<Vec<BigRational>>,
    /// Printed only when λ is geometric and the exact ratios are constant.
    #[serde(serialize_with = "ser_opt_rational")]
    pub limit: Option<BigRational>,
}

/// Hilbert–Kunz ratios value_n / exp(n·h), value_n = λ(φⁿ) or ℓ(R/φⁿ(q)R).
pub fn hk_sequence(
    phi: &Endomorphism,
    n_max: u32,
    h: HkEntropy,
    q: Option<&Ideal>,
    budget: &Budget,
) -> Result<HkReport> {
    let ring = phi.ring();
    let dim = ring.dim().ok_or(Error::MissingDimension)?;
    let lambda = lambda_sequence(phi, n_max, budget)?.values;
    let (source, values) = match q {
        Some(q) => ("ideal", ideal_sequence(phi, q, n_max, budget)?.values),
        None => ("lambda", lambda.clone()),
    };
    let values: Vec<u128> = values.into_iter().take(lambda.len()).collect();
    let geometric = is_geometric(&lambda);
    let base = if geometric {
        Some(BigRational::new(lambda[1].into(), lambda[0].into()))
    } else {
        None
    };
    let (h_used, h_kind) = match (&h, &base) {
        (HkEntropy::Given(v), _) => (*v, "given"),
        (HkEntropy::Estimate, Some(b)) => (b.to_f64().unwrap_or(f64::NAN).ln(), "exact"),
        (HkEntropy::Estimate, None) => (entropy_estimate(&lambda)?.upper_bound, "upper_bound"),
    };
    let ratios_exact = match (h_kind, &base) {
        ("exact", Some(b)) => {
            let mut pow = BigRational::from_integer(1.into());
            let mut out = Vec::new();
            for &v in &values {
                pow = &pow * b;
                out.push(BigRational::from_integer(v.into()) / &pow);
            }
            Some(out)
        }
        _ => None,
    };
    let ratios: Vec<f64> = match &ratios_exact {
        Some(ex) => ex.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect(),
        None => values
            .iter()
            .enumerate()
            .map(|(i, &v)| (ln_u128(v) - (i + 1) as f64 * h_used).exp())
            .collect(),
    };
    let limit = ratios_exact
        .as_ref()
        .filter(|ex| ex.len() >= 2 && ex.windows(2).all(|w| w[0] == w[1]))
        .map(|ex| ex[ex.len() - 1].clone());
    let p_root = (dim > 0).then(|| (h_used / dim as f64).exp());
    Ok(HkReport {
        source,
        lambda,
        values,
        geometric,
        base,
        h_used,
        h_kind,
        dim_used: dim,
        dim_status: ring.dim_status(),
        p_root,
        ratios,
        ratios_exact,
        limit,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimaryEntropyReport {
    pub contracting: bool,
    pub warning: Option<String>,
    pub colength_of_q: u128,
    pub entropy: EntropyReport,
    pub statuses: Vec<EntryStatus>,
}

/// Entropy of n ↦ ℓ(R/φⁿ(q)R) for an m-primary ideal q.
pub fn primary_ideal_entropy(
    phi: &Endomorphism,
    q: &Ideal,
    n_max: u32,
    budget: &Budget,
) -> Result<PrimaryEntropyReport> {
    let colength_of_q = match phi.ring().local_colength(q, budget) {
        Ok(c) => c,
        Err(Error::NotFiniteLength(_)) => return Err(Error::NotMPrimary),
        Err(e) => return Err(e),
    };
    let contracting = phi.is_contracting(budget)?;
    let seq = ideal_sequence(phi, q, n_max, budget)?;
    Ok(PrimaryEntropyReport {
        contracting,
        warning: (!contracting).then(|| "map is not contracting; the limit need not equal the entropy".to_string()),
        colength_of_q,
        entropy: entropy_estimate(&seq.values)?,
        statuses: seq.statuses,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub dim: usize,
    pub dim_status: DimensionStatus,
    pub v_seq: Vec<Order>,
    pub w_seq: Vec<u64>,
    pub lambda: Vec<u128>,
    /// log v_n / n; None when v_n is unbounded.
    pub v_h: Vec<Option<f64>>,
    pub w_h: Vec<f64>,
    pub v_h_running_max: Vec<Option<f64>>,
    pub w_h_running_min: Vec<f64>,
    pub entropy: EntropyReport,
    /// d·log v_n / n ≤ upper bound, per n (vacuous when unbounded).
    pub lower_ok: Vec<bool>,
    /// diff_estimate ≤ d·log w_n / n + 1e-6, per n.
    pub upper_ok: Vec<bool>,
}

pub const SANDWICH_TOLERANCE: f64 = 1e-6;

pub fn bounds_analysis(phi: &Endomorphism, n_max: u32, budget: &Budget) -> Result<BoundsReport> {
    let ring = phi.ring();
    let dim = ring.dim().ok_or(Error::MissingDimension)?;
    for n in 1..=n_max {
        phi.iterate(n, budget)?;
    }
    let bounds = par_map(n_max as usize, |i| phi.order_bounds(i as u32 + 1, budget))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let lambda: Vec<u128> = bounds.iter().map(|b| b.lambda).collect();
    let entropy = entropy_estimate(&lambda)?;
    let v_seq: Vec<Order> = bounds.iter().map(|b| b.v).collect();
    let w_seq: Vec<u64> = bounds.iter().map(|b| b.w).collect();
    let v_h: Vec<Option<f64>> = v_seq
        .iter()
        .enumerate()
        .map(|(i, v)| v.finite().map(|v| (v as f64).ln() / (i + 1) as f64))
        .collect();
    let w_h: Vec<f64> = w_seq
        .iter()
        .enumerate()
        .map(|(i, &w)| (w as f64).ln() / (i + 1) as f64)
        .collect();
    let mut v_h_running_max = Vec::new();
    let mut best: Option<f64> = None;
    for v in &v_h {
        best = match (best, v) {
            (Some(b), Some(v)) => Some(b.max(*v)),
            (None, Some(v)) => Some(*v),
            (b, None) => b,
        };
        v_h_running_max.push(best);
    }
    let mut w_h_running_min = Vec::new();
    let mut m = f64::INFINITY;
    for &w in &w_h {
        m = m.min(w);
        w_h_running_min.push(m);
    }
    let d = dim as f64;
    let lower_ok = v_h
        .iter()
        .map(|v| v.is_none_or(|v| d * v <= entropy.upper_bound + SANDWICH_TOLERANCE))
        .collect();
    let upper_ok = w_h
        .iter()
        .map(|&w| entropy.diff_estimate <= d * w + SANDWICH_TOLERANCE)
        .collect();
    Ok(BoundsReport {
        dim,
        dim_status: ring.dim_status(),
        v_seq,
        w_seq,
        lambda,
        v_h,
        w_h,
        v_h_running_max,
        w_h_running_min,
        entropy,
        lower_ok,
        upper_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    /// Variables generating the minimal prime.
    pub prime: Vec<String>,
    pub dim: usize,
    pub entropy: EntropyReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentsReport {
    pub whole: EntropyReport,
    pub components: Vec<ComponentReport>,
    pub max_upper_bound: f64,
    pub max_diff_estimate: f64,
    /// |diff_estimate(whole) − max over components|.
    pub diff_gap: f64,
}

fn prime_label(phi: &Endomorphism, p: &[usize]) -> String {
    let names = phi.ctx().names();
    if p.is_empty() {
        "(0)".into()
    } else {
        format!(
            "({})",
            p.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(", ")
        )
    }
}

/// Check φ(p) ⊆ p for every minimal prime of a monomial quotient.
pub fn invariant_minimal_primes(phi: &Endomorphism) -> Result<Vec<Vec<usize>>> {
    let primes = minimal_primes_monomial(phi.ring().quotient())?;
    for p in &primes {
        for &i in p {
            let inside = phi.images()[i]
                .terms()
                .all(|(m, _)| p.iter().any(|&j| m.exponents()[j] > 0));
            if !inside {
                return Err(Error::InvarianceFailure(prime_label(phi, p)));
            }
        }
    }
    Ok(primes)
}

/// The induced map on R/p for a prime given by variables.
pub fn component_map(phi: &Endomorphism, p: &[usize], budget: &Budget) -> Result<Endomorphism> {
    let ctx = phi.ctx();
    let q = Ideal::new(ctx, p.iter().map(|&i| Polynomial::var(ctx, i)).collect())?;
    let ring = Arc::new(LocalRingPresentation::new(ctx, q, None)?);
    Endomorphism::validate(ring, phi.images().to_vec(), budget)
}

pub fn components_analysis(phi: &Endomorphism, n_max: u32, budget: &Budget) -> Result<ComponentsReport> {
    let primes = invariant_minimal_primes(phi)?;
    let whole = entropy_estimate(&lambda_sequence(phi, n_max, budget)?.values)?;
    let mut components = Vec::new();
    for p in &primes {
        let psi = component_map(phi, p, budget)?;
        let seq = lambda_sequence(&psi, n_max, budget)?;
        components.push(ComponentReport {
            prime: p.iter().map(|&i| phi.ctx().names()[i].clone()).collect(),
            dim: psi.ring().dim().unwrap_or(0),
            entropy: entropy_estimate(&seq.values)?,
        });
    }
    let max_upper_bound = components
        .iter()
        .map(|c| c.entropy.upper_bound)
        .fold(f64::NEG_INFINITY, f64::max);
    let max_diff_estimate = components
        .iter()
        .map(|c| c.entropy.diff_estimate)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ComponentsReport {
        diff_gap: (whole.diff_estimate - max_diff_estimate).abs(),
        whole,
        components,
        max_upper_bound,
        max_diff_estimate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeReport {
    /// Column i holds the exponents of φ(xᵢ).
    pub exponent_matrix: Vec<Vec<u32>>,
    pub degree: u128,
    pub log_degree: f64,
}

/// |det| of an integer matrix by fraction-free elimination.
pub fn abs_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => a.swap(k, r),
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::from(1)
    } else {
        a[n - 1][n - 1].abs()
    }
}

/// Degree of a monomial substitution map on a polynomial ring: |det A|.
pub fn degree_monomial(phi: &Endomorphism, budget: &Budget) -> Result<DegreeReport> {
    if !phi.ring().is_polynomial_ring() {
        return Err(Error::RequiresPolynomialRing);
    }
    let d = phi.ctx().nvars();
    let mut cols = Vec::with_capacity(d);
    for (i, img) in phi.images().iter().enumerate() {
        match img.as_monomial() {
            Some((m, _)) => cols.push(m.exponents().to_vec()),
            None => return Err(Error::NotMonomialMap(phi.ctx().names()[i].clone())),
        }
    }
    let rows: Vec<Vec<i64>> = (0..d).map(|r| (0..d).map(|c| cols[c][r] as i64).collect()).collect();
    let det = abs_determinant(&rows);
    if det.is_zero() {
        return Err(Error::SingularExponentMatrix);
    }
    match phi.lambda_n(1, budget) {
        Ok(_) => {}
        Err(Error::NotFiniteLength(_)) => return Err(Error::NotFiniteMap),
        Err(e) => return Err(e),
    }
    let degree = det.to_u128().ok_or(Error::BudgetExceeded {
        what: "degree size",
        limit: u64::MAX,
    })?;
    Ok(DegreeReport {
        exponent_matrix: cols,
        degree,
        log_degree: (degree as f64).ln(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub dim: usize,
    pub s_max: u32,
    /// ℓ(R/q^s) for s = 1..s_max.
    pub samples: Vec<u128>,
    pub tail_len: usize,
    /// d-th finite differences over the tail.
    pub differences: Vec<i128>,
    pub multiplicity: i128,
}

/// d-th finite differences of `xs`.
pub fn finite_differences(xs: &[i128], d: usize) -> Vec<i128> {
    let mut cur = xs.to_vec();
    for _ in 0..d {
        cur = cur.windows(2).map(|w| w[1] - w[0]).collect();
    }
    cur
}

/// Fit the Hilbert–Samuel polynomial over the tail of `samples` (pure).
pub fn multiplicity_from_samples(samples: &[u128], d: usize) -> Result<(usize, Vec<i128>, i128)> {
    let s_max = samples.len();
    let tail_len = (d + 2).max(s_max / 2).min(s_max);
    let tail: Vec<i128> = samples[s_max - tail_len..].iter().map(|&v| v as i128).collect();
    let diffs = finite_differences(&tail, d);
    if diffs.len() < 2 || diffs.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Unstabilized(format!(
            "{d}-th differences over the last {tail_len} samples: {diffs:?}"
        )));
    }
    Ok((tail_len, diffs.clone(), diffs[0]))
}

/// e(q) from ℓ(R/q^s), s = 1..s_max.
pub fn multiplicity(
    ring: &LocalRingPresentation,
    q: &Ideal,
    s_max: u32,
    budget: &Budget,
) -> Result<MultiplicityReport> {
    let dim = ring.dim().ok_or(Error::MissingDimension)?;
    match ring.local_colength(q, budget) {
        Ok(_) => {}
        Err(Error::NotFiniteLength(_)) => return Err(Error::NotMPrimary),
        Err(e) => return Err(e),
    }
    let samples = par_map(s_max as usize, |i| {
        let qs = q.power(i as u32 + 1, budget)?;
        ring.local_colength(&qs, budget)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (tail_len, differences, e) = multiplicity_from_samples(&samples, dim)?;
    Ok(MultiplicityReport {
        dim,
        s_max,
        samples,
        tail_len,
        differences,
        multiplicity: e,
    })
}

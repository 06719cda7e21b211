//! Presented local rings k[x₁..x_d]_(x)/a and their endomorphisms.
//!
//! Local colengths are computed by m-adic truncation: c_N is the global
//! colength of J + a + m^N, which is m-primary and therefore local. The
//! sequence c_N is nondecreasing and, once c_N = c_{2N}, constant from N on
//! (equal colength forces m^N ⊆ J + m^{N+1}, and Nakayama gives m^N ⊆ J_m).

use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, buchberger_truncated, truncated_colength, GroebnerBasis, Ideal};
use crate::poly::{Monomial, MonomialOrder, Polynomial, VariableContext};
use crate::staircase::{self, Colength};

/// Where the Krull dimension of a presentation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionStatus {
    /// Computed from the minimal primes of a monomial quotient.
    Computed,
    /// Taken from the problem file without verification.
    Declared,
    Unknown,
}

/// Minimal primes of a monomial ideal, as sorted sets of variable indices.
///
/// These are the minimal transversals of the generator supports. The zero
/// ideal has the single minimal prime (0), returned as the empty set.
pub fn minimal_primes_monomial(a: &Ideal) -> Result<Vec<Vec<usize>>> {
    let gens = a
        .monomial_generators()
        .ok_or_else(|| Error::NotMonomial(format!("{} generators", a.generators().len())))?;
    let d = a.ctx().nvars();
    if d > 24 {
        return Err(Error::InvalidArgument(
            "too many variables for prime enumeration".into(),
        ));
    }
    let supports: Vec<u32> = crate::groebner::minimal_monomials(gens)
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    if supports.contains(&0) {
        return Ok(vec![]);
    }
    let mut masks: Vec<u32> = (0..1u32 << d).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut found: Vec<u32> = Vec::new();
    for t in masks {
        if supports.iter().all(|s| s & t != 0) && !found.iter().any(|f| f & t == *f) {
            found.push(t);
        }
    }
    let mut out: Vec<Vec<usize>> = found
        .into_iter()
        .map(|t| (0..d).filter(|i| t & (1 << i) != 0).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// Result of a local colength computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalColength {
    pub value: u128,
    /// Least N with c_N equal to the local colength.
    pub stable_at: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalRingPresentation {
    ctx: Arc<VariableContext>,
    quotient: Ideal,
    dim: Option<usize>,
    dim_status: DimensionStatus,
}

impl LocalRingPresentation {
    /// Validate the presentation; for monomial `quotient` the dimension is
    /// computed and a declared value must agree.
    pub fn new(ctx: &Arc<VariableContext>, quotient: Ideal, declared_dim: Option<usize>) -> Result<Self> {
        if quotient.ctx() != ctx {
            return Err(Error::ContextMismatch);
        }
        for g in quotient.generators() {
            if !g.constant_term().is_zero() {
                return Err(Error::InvalidContext(format!(
                    "quotient generator {g} has a nonzero constant term"
                )));
            }
        }
        let (dim, dim_status) = if quotient.is_monomial() {
            let primes = minimal_primes_monomial(&quotient)?;
            let cover = primes.iter().map(Vec::len).min().unwrap_or(0);
            let computed = ctx.nvars() - cover;
            if let Some(declared) = declared_dim {
                if declared != computed {
                    return Err(Error::DimensionMismatch { declared, computed });
                }
            }
            (Some(computed), DimensionStatus::Computed)
        } else {
            match declared_dim {
                Some(d) if d > ctx.nvars() => {
                    return Err(Error::DimensionMismatch {
                        declared: d,
                        computed: ctx.nvars(),
                    })
                }
                Some(d) => (Some(d), DimensionStatus::Declared),
                None => (None, DimensionStatus::Unknown),
            }
        };
        Ok(LocalRingPresentation {
            ctx: ctx.clone(),
            quotient,
            dim,
            dim_status,
        })
    }

    /// The regular local ring k[x₁..x_d]_(x).
    pub fn polynomial(ctx: &Arc<VariableContext>) -> Self {
        Self::new(ctx, Ideal::zero(ctx), None).expect("zero quotient is valid")
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn quotient(&self) -> &Ideal {
        &self.quotient
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn dim_status(&self) -> DimensionStatus {
        self.dim_status
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.quotient.is_zero()
    }

    /// Same variables with a larger quotient a + extra.
    pub fn with_extra_quotient(&self, extra: &Ideal, declared_dim: Option<usize>) -> Result<Self> {
        let q = self.quotient.sum(extra)?;
        Self::new(&self.ctx, q, declared_dim)
    }

    /// ℓ(R/(J + a)R) with the least stable truncation level.
    pub fn local_colength_detail(&self, j: &Ideal, budget: &Budget) -> Result<LocalColength> {
        let full = j.sum(&self.quotient)?;
        if let Some(ms) = full.monomial_generators() {
            // Monomial ideals: the only point of V(I) that matters is the
            // origin, so the local length is the global one when finite.
            return match staircase::count(&ms) {
                Colength::Finite(c) => {
                    let stable_at = staircase::max_standard_degree(&ms).map_or(0, |m| m + 1);
                    Ok(LocalColength { value: c, stable_at })
                }
                Colength::Infinite => Err(Error::NotFiniteLength(
                    "some variable has no pure power in the monomial ideal".into(),
                )),
            };
        }
        let c = |n: u64| truncated_colength(&full, n, budget);
        let max = budget.max_truncation as u64;
        let mut n = 1u64;
        let mut cn = c(1)?;
        loop {
            if 2 * n > max {
                // Still growing: decide exactly when affordable, otherwise
                // treat the growth as non-finite length.
                return Err(match full.origin_is_isolated(budget) {
                    Ok(true) => Error::BudgetExceeded {
                        what: "truncation level",
                        limit: max,
                    },
                    Ok(false) => Error::NotFiniteLength(format!(
                        "the origin lies on a positive-dimensional component (truncated colength {cn} at N = {n})"
                    )),
                    Err(e) if e.is_budget() => {
                        Error::NotFiniteLength(format!("truncated colength still growing at N = {n} (value {cn})"))
                    }
                    Err(e) => e,
                });
            }
            let c2 = c(2 * n)?;
            if c2 == cn {
                break;
            }
            n *= 2;
            cn = c2;
        }
        // c is constant on [n, 2n]; find the least stable level in (n/2, n].
        let (mut lo, mut hi) = (n / 2, n);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if c(mid)? == cn {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let stable_at = if cn == 0 { 0 } else { hi };
        Ok(LocalColength { value: cn, stable_at })
    }

    pub fn local_colength(&self, j: &Ideal, budget: &Budget) -> Result<u128> {
        Ok(self.local_colength_detail(j, budget)?.value)
    }

    /// c_k(J) = dim k[x]/(J + a + m^k).
    pub fn truncated_colength(&self, j: &Ideal, k: u64, budget: &Budget) -> Result<u128> {
        truncated_colength(&j.sum(&self.quotient)?, k, budget)
    }

    /// dim_k m/(m² + a).
    pub fn embedding_dimension(&self, budget: &Budget) -> Result<usize> {
        Ok(truncated_colength(&self.quotient, 2, budget)? as usize - 1)
    }

    /// Global Gröbner basis of the quotient ideal.
    pub fn quotient_basis(&self, budget: &Budget) -> Result<GroebnerBasis> {
        buchberger(&self.quotient, MonomialOrder::default(), budget)
    }
}

/// v(φⁿ) may be unbounded when φⁿ(m) already lies in a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Order {
    Finite(u64),
    #[serde(serialize_with = "ser_unbounded")]
    Unbounded,
}

fn ser_unbounded<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("unbounded")
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(v) => Some(v),
            Order::Unbounded => None,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderBounds {
    /// Largest k with φⁿ(m)R ⊆ m^k.
    pub v: Order,
    /// Least k with m^k ⊆ φⁿ(m)R.
    pub w: u64,
    pub lambda: u128,
}

/// A certified local endomorphism of a presented local ring.
#[derive(Debug)]
pub struct Endomorphism {
    ring: Arc<LocalRingPresentation>,
    images: Vec<Polynomial>,
    // Iterates reduced modulo a: iterates[k] holds the images of φ^{k+1}.
    iterates: Mutex<Vec<Arc<Vec<Polynomial>>>>,
    quotient_gb: Option<GroebnerBasis>,
}

impl Clone for Endomorphism {
    fn clone(&self) -> Self {
        Endomorphism {
            ring: self.ring.clone(),
            images: self.images.clone(),
            iterates: Mutex::new(self.iterates.lock().unwrap().clone()),
            quotient_gb: self.quotient_gb.clone(),
        }
    }
}

impl PartialEq for Endomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.images == other.images
    }
}

impl Endomorphism {
    /// Check locality and (global) well-definedness.
    pub fn validate(ring: Arc<LocalRingPresentation>, images: Vec<Polynomial>, budget: &Budget) -> Result<Self> {
        let ctx = ring.ctx().clone();
        if images.len() != ctx.nvars() {
            return Err(Error::InvalidArgument(format!(
                "expected {} images, got {}",
                ctx.nvars(),
                images.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.ctx() != &ctx {
                return Err(Error::ContextMismatch);
            }
            let c = img.constant_term();
            if !c.is_zero() {
                return Err(Error::NotLocal {
                    var: ctx.names()[i].clone(),
                    constant: c.to_string(),
                });
            }
        }
        let quotient_gb = if ring.is_polynomial_ring() {
            None
        } else {
            let gb = ring.quotient_basis(budget)?;
            for g in ring.quotient().generators() {
                let r = gb.normal_form(&g.substitute(&images, budget)?);
                if !r.is_zero() {
                    return Err(Error::NotWellDefined {
                        generator: g.to_string(),
                        remainder: r.to_string(),
                    });
                }
            }
            Some(gb)
        };
        let reduced: Vec<Polynomial> = match &quotient_gb {
            Some(gb) => images.iter().map(|p| gb.normal_form(p)).collect(),
            None => images.clone(),
        };
        Ok(Endomorphism {
            ring,
            images,
            iterates: Mutex::new(vec![Arc::new(reduced)]),
            quotient_gb,
        })
    }

    pub fn ring(&self) -> &Arc<LocalRingPresentation> {
        &self.ring
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        self.ring.ctx()
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// True when every image is a single term.
    pub fn is_monomial(&self) -> bool {
        self.images.iter().all(Polynomial::is_monomial)
    }

    /// Images of φⁿ (n ≥ 1), reduced modulo a. Cached.
    pub fn iterate(&self, n: u32, budget: &Budget) -> Result<Arc<Vec<Polynomial>>> {
        if n == 0 {
            return Err(Error::InvalidArgument("iterate index must be at least 1".into()));
        }
        let mut cache = self.iterates.lock().unwrap();
        while (cache.len() as u32) < n {
            let prev = cache.last().unwrap().clone();
            let base = &cache[0];
            let mut next = Vec::with_capacity(prev.len());
            for p in prev.iter() {
                let q = p.substitute(base, budget)?;
                next.push(match &self.quotient_gb {
                    Some(gb) => gb.normal_form(&q),
                    None => q,
                });
            }
            cache.push(Arc::new(next));
        }
        Ok(cache[n as usize - 1].clone())
    }

    /// φ^k as an endomorphism in its own right.
    pub fn power(&self, k: u32, budget: &Budget) -> Result<Endomorphism> {
        let imgs = self.iterate(k, budget)?;
        Endomorphism::validate(self.ring.clone(), imgs.to_vec(), budget)
    }

    /// φⁿ(m)R as an ideal of the ambient polynomial ring (a not included).
    pub fn image_ideal(&self, n: u32, budget: &Budget) -> Result<Ideal> {
        Ideal::new(self.ctx(), self.iterate(n, budget)?.to_vec())
    }

    /// λ(φⁿ) = ℓ(R/φⁿ(m)R).
    pub fn lambda_n(&self, n: u32, budget: &Budget) -> Result<u128> {
        self.ring.local_colength(&self.image_ideal(n, budget)?, budget)
    }

    /// ℓ(R/φⁿ(q)R) for an ideal q.
    pub fn colength_of_image(&self, q: &Ideal, n: u32, budget: &Budget) -> Result<u128> {
        let imgs = self.iterate(n, budget)?;
        let gens = q
            .generators()
            .iter()
            .map(|g| g.substitute(&imgs, budget))
            .collect::<Result<Vec<_>>>()?;
        self.ring.local_colength(&Ideal::new(self.ctx(), gens)?, budget)
    }

    /// (v, w) of φⁿ together with λ(φⁿ).
    pub fn order_bounds(&self, n: u32, budget: &Budget) -> Result<OrderBounds> {
        let j = self.image_ideal(n, budget)?;
        let ring = &self.ring;
        let lc = ring.local_colength_detail(&j, budget)?;
        let w = lc.stable_at;
        if let (Some(jm), Some(am)) = (j.monomial_generators(), ring.quotient().monomial_generators()) {
            let outside: Vec<&Monomial> = jm.iter().filter(|m| !am.iter().any(|g| g.divides(m))).collect();
            let v = match outside.iter().map(|m| m.degree()).min() {
                Some(v) => Order::Finite(v),
                None => Order::Unbounded,
            };
            return Ok(OrderBounds { v, w, lambda: lc.value });
        }
        let a_local = ring.local_colength(&Ideal::zero(ring.ctx()), budget).ok();
        let max = budget.max_truncation as u64;
        let mut k = 1u64;
        let v = loop {
            let cj = ring.truncated_colength(&j, k, budget)?;
            let ca = ring.truncated_colength(&Ideal::zero(ring.ctx()), k, budget)?;
            if cj != ca {
                break Order::Finite(k - 1);
            }
            if k > w && a_local == Some(lc.value) {
                break Order::Unbounded;
            }
            if k >= max {
                return Err(Error::BudgetExceeded {
                    what: "order scan truncation level",
                    limit: max,
                });
            }
            k += 1;
        };
        Ok(OrderBounds { v, w, lambda: lc.value })
    }

    /// Contracting test: φ^{edim}(m) ⊆ m² + a.
    pub fn is_contracting(&self, budget: &Budget) -> Result<bool> {
        let e = self.ring.embedding_dimension(budget)?;
        if e == 0 {
            return Ok(true);
        }
        let gb = buchberger_truncated(self.ring.quotient(), MonomialOrder::default(), 2, budget)?;
        Ok(self.iterate(e as u32, budget)?.iter().all(|p| gb.contains(p)))
    }

    /// σφσ⁻¹ for the variable permutation x_i ↦ x_{perm[i]}, on σ(a).
    pub fn conjugate(&self, perm: &[usize], budget: &Budget) -> Result<Endomorphism> {
        let d = self.ctx().nvars();
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&p| p >= d || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of 0..{d}"
            )));
        }
        let q = Ideal::new(
            self.ctx(),
            self.ring
                .quotient()
                .generators()
                .iter()
                .map(|g| g.permuted(perm))
                .collect(),
        )?;
        let declared = match self.ring.dim_status() {
            DimensionStatus::Declared => self.ring.dim(),
            _ => None,
        };
        let ring = Arc::new(LocalRingPresentation::new(self.ctx(), q, declared)?);
        let mut imgs = vec![Polynomial::zero(self.ctx()); d];
        for (j, img) in self.images.iter().enumerate() {
            imgs[perm[j]] = img.permuted(perm);
        }
        Endomorphism::validate(ring, imgs, budget)
    }

    /// The induced map on R/a' for a larger quotient a' = a + extra.
    pub fn induced(&self, extra: &Ideal, declared_dim: Option<usize>, budget: &Budget) -> Result<Endomorphism> {
        let ring = Arc::new(self.ring.with_extra_quotient(extra, declared_dim)?);
        Endomorphism::validate(ring, self.images.clone(), budget)
    }
}

//! Ideals, Buchberger's algorithm, normal forms and colengths.
//!
//! Besides ordinary bases, [`buchberger_truncated`] computes a basis of
//! I + m^N without listing the monomials of m^N: arithmetic happens in
//! k[x]/m^N, where every term of degree at least N vanishes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::{FieldElement, FieldSpec};
use crate::modular;
use crate::poly::{Monomial, MonomialOrder, Polynomial, VariableContext};
use crate::staircase::{self, Colength};

/// An ideal given by generators; zero generators are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ctx: Arc<VariableContext>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ctx: &Arc<VariableContext>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Ideal {
            ctx: ctx.clone(),
            generators: vec![],
        }
    }

    /// The maximal ideal (x₁, …, x_d).
    pub fn maximal(ctx: &Arc<VariableContext>) -> Self {
        Ideal {
            ctx: ctx.clone(),
            generators: (0..ctx.nvars()).map(|i| Polynomial::var(ctx, i)).collect(),
        }
    }

    /// m^k listed as all monomials of degree k.
    pub fn maximal_power(ctx: &Arc<VariableContext>, k: u32) -> Self {
        let d = ctx.nvars();
        let mut gens = Vec::new();
        let mut e = vec![0u32; d];
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == e.len() {
                e[i] = left;
                out.push(e.clone());
                return;
            }
            for a in (0..=left).rev() {
                e[i] = a;
                rec(i + 1, left - a, e, out);
            }
        }
        let mut exps = Vec::new();
        rec(0, k, &mut e, &mut exps);
        for x in exps {
            gens.push(Polynomial::monomial(ctx, &x));
        }
        Ideal {
            ctx: ctx.clone(),
            generators: gens,
        }
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial)
    }

    /// Generator monomials when every generator is a single term.
    pub fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        self.generators
            .iter()
            .map(|g| g.as_monomial().map(|(m, _)| m.clone()))
            .collect()
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.generators.clone();
        for g in &other.generators {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        Ok(Ideal {
            ctx: self.ctx.clone(),
            generators: gens,
        })
    }

    pub fn product(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        self.check(other)?;
        let mut gens: Vec<Polynomial> = Vec::new();
        for f in &self.generators {
            for g in &other.generators {
                let p = f.mul_budgeted(g, budget)?;
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ok(Ideal {
            ctx: self.ctx.clone(),
            generators: gens,
        })
    }

    pub fn power(&self, n: u32, budget: &Budget) -> Result<Ideal> {
        if n == 0 {
            return Ideal::new(&self.ctx, vec![Polynomial::one(&self.ctx)]);
        }
        if let Some(ms) = self.monomial_generators() {
            // Monomial ideals: keep only minimal generators at every step.
            let mut cur: BTreeSet<Monomial> = ms.iter().cloned().collect();
            for _ in 1..n {
                let mut next = BTreeSet::new();
                for a in &cur {
                    for b in &ms {
                        next.insert(a.mul(b));
                    }
                }
                cur = minimal_monomials(next.into_iter().collect()).into_iter().collect();
                budget.check_terms(cur.len())?;
            }
            let gens = cur
                .into_iter()
                .map(|m| Polynomial::term(&self.ctx, m, self.ctx.field().one()))
                .collect();
            return Ok(Ideal {
                ctx: self.ctx.clone(),
                generators: gens,
            });
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self, budget)?;
        }
        Ok(acc)
    }

    /// I : x_i^∞, by eliminating t from I + (1 − t·x_i).
    pub fn saturate_var(&self, i: usize, budget: &Budget) -> Result<Ideal> {
        let d = self.ctx.nvars();
        let mut names = self.ctx.names().to_vec();
        let mut t = String::from("_t");
        while names.contains(&t) {
            t.push('_');
        }
        names.push(t);
        let ext = VariableContext::new(&names, self.ctx.field())?;
        let lift = |p: &Polynomial| {
            Polynomial::from_terms(
                &ext,
                p.terms().map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.push(0);
                    (Monomial::from_exponents(&e), c.clone())
                }),
            )
        };
        let mut gens: Vec<Polynomial> = self.generators.iter().map(lift).collect();
        let mut e = vec![0u32; d + 1];
        e[i] = 1;
        e[d] = 1;
        gens.push(Polynomial::one(&ext).checked_sub(&Polynomial::monomial(&ext, &e))?);
        let gb = buchberger(&Ideal::new(&ext, gens)?, MonomialOrder::EliminateLast, budget)?;
        let kept = gb
            .basis()
            .iter()
            .filter(|g| g.terms().all(|(m, _)| m.exponents()[d] == 0))
            .map(|g| {
                Polynomial::from_terms(
                    &self.ctx,
                    g.terms()
                        .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[..d]), c.clone())),
                )
            })
            .collect();
        Ideal::new(&self.ctx, kept)
    }

    /// Whether the origin is isolated in V(I) or absent from it, i.e. the
    /// localization at the origin has finite length. This holds iff no
    /// saturation I : x_i^∞ lies in m.
    pub fn origin_is_isolated(&self, budget: &Budget) -> Result<bool> {
        if let Colength::Finite(_) = self.global_colength(MonomialOrder::DegRevLex, budget)? {
            return Ok(true);
        }
        for i in 0..self.ctx.nvars() {
            let sat = self.saturate_var(i, budget)?;
            if sat.generators.iter().all(|g| g.constant_term().is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn groebner(&self, ord: MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
        buchberger(self, ord, budget)
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if f.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self.groebner(MonomialOrder::default(), budget)?.contains(f))
    }

    pub fn global_colength(&self, ord: MonomialOrder, budget: &Budget) -> Result<Colength> {
        if let Some(ms) = self.monomial_generators() {
            return Ok(staircase::count(&ms));
        }
        Ok(self.groebner(ord, budget)?.colength())
    }
}

/// Drop monomials divisible by another one in the list.
pub fn minimal_monomials(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_by_key(|m| (m.degree(), m.clone()));
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// A Gröbner basis; when `truncation` is `Some(N)` it is a basis of the
/// ideal plus m^N, with the degree-N monomials left implicit.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ctx: Arc<VariableContext>,
    basis: Vec<Polynomial>,
    leads: Vec<Monomial>,
    ord: MonomialOrder,
    reduced: bool,
    truncation: Option<u64>,
    elems: Vec<Elem>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.ord == other.ord && self.truncation == other.truncation
    }
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// The requested order. Truncated bases ignore it: their leading terms
    /// are lowest-degree terms, ties broken by degrevlex.
    pub fn order(&self) -> MonomialOrder {
        self.ord
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn truncation(&self) -> Option<u64> {
        self.truncation
    }

    /// Fully reduced remainder of `f`; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.ctx(), &self.ctx, "normal_form: context mismatch");
        let ord = TermOrder::of(self.ord, self.truncation);
        let h = Elem::from_poly(f, ord, self.truncation);
        let refs: Vec<&Elem> = self.elems.iter().collect();
        full_reduce(h, &refs, ord, self.truncation).to_poly(&self.ctx)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Standard monomial count; below degree N in the truncated case.
    pub fn colength(&self) -> Colength {
        match self.truncation {
            Some(n) => Colength::Finite(staircase::count_below(&self.leads, self.ctx.nvars(), n)),
            None if self.basis.is_empty() => Colength::Infinite,
            None => staircase::count(&self.leads),
        }
    }
}

/// Term order used internally. Truncated computations run in the Artinian
/// ring k[x]/m^N under the degree-ascending order, a well-order there, so the
/// leading term of t·g vanishes only when all of t·g does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TermOrder {
    Global(MonomialOrder),
    Truncated,
}

impl TermOrder {
    fn of(ord: MonomialOrder, trunc: Option<u64>) -> Self {
        match trunc {
            Some(_) => TermOrder::Truncated,
            None => TermOrder::Global(ord),
        }
    }

    fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        match self {
            TermOrder::Global(o) => o.cmp(a, b),
            TermOrder::Truncated => b
                .degree()
                .cmp(&a.degree())
                .then_with(|| MonomialOrder::DegRevLex.cmp(a, b)),
        }
    }
}

#[derive(Debug, Clone)]
struct Elem {
    // Ascending under the order; the leading term is last.
    terms: Vec<(Monomial, FieldElement)>,
}

impl Elem {
    fn from_poly(p: &Polynomial, ord: TermOrder, trunc: Option<u64>) -> Self {
        let mut terms: Vec<(Monomial, FieldElement)> = p
            .terms()
            .filter(|(m, _)| trunc.is_none_or(|n| m.degree() < n))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        Elem { terms }
    }

    fn to_poly(&self, ctx: &Arc<VariableContext>) -> Polynomial {
        Polynomial::from_terms(ctx, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, FieldElement) {
        self.terms.last().expect("lead of zero")
    }

    fn lm(&self) -> &Monomial {
        &self.lead().0
    }

    fn monic(mut self) -> Self {
        let inv = self.lead().1.inv().expect("nonzero lead");
        if !inv.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
        self
    }

    /// self - c·t·g, dropping terms of degree ≥ trunc.
    fn sub_mul(&self, c: &FieldElement, t: &Monomial, g: &Elem, ord: TermOrder, trunc: Option<u64>) -> Elem {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let scaled = g.terms.iter().filter_map(|(m, d)| {
            let mm = m.mul(t);
            if trunc.is_some_and(|n| mm.degree() >= n) {
                None
            } else {
                Some((mm, -(c * d)))
            }
        });
        let mut a = self.terms.iter().peekable();
        let mut b = scaled.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    std::cmp::Ordering::Less => out.push(a.next().unwrap().clone()),
                    std::cmp::Ordering::Greater => out.push(b.next().unwrap()),
                    std::cmp::Ordering::Equal => {
                        let (m, c1) = a.next().unwrap().clone();
                        let (_, c2) = b.next().unwrap();
                        let s = &c1 + &c2;
                        if !s.is_zero() {
                            out.push((m, s));
                        }
                    }
                },
            }
        }
        Elem { terms: out }
    }

    fn mul_monomial(&self, t: &Monomial, trunc: Option<u64>) -> Elem {
        Elem {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(t), c.clone()))
                .filter(|(m, _)| trunc.is_none_or(|n| m.degree() < n))
                .collect(),
        }
    }
}

fn find_divisor<'a>(m: &Monomial, basis: &[&'a Elem]) -> Option<&'a Elem> {
    basis.iter().copied().find(|g| g.lm().divides(m))
}

fn top_reduce(mut h: Elem, basis: &[&Elem], ord: TermOrder, trunc: Option<u64>, budget: &Budget) -> Result<Elem> {
    while !h.is_zero() {
        let (m, c) = h.lead().clone();
        match find_divisor(&m, basis) {
            Some(g) => {
                let t = g.lm().quotient_of(&m).expect("divides");
                let q = c.checked_div(&g.lead().1)?;
                h = h.sub_mul(&q, &t, g, ord, trunc);
                budget.check_terms(h.terms.len())?;
            }
            None => break,
        }
    }
    Ok(h)
}

fn full_reduce(mut h: Elem, basis: &[&Elem], ord: TermOrder, trunc: Option<u64>) -> Elem {
    let mut rest: Vec<(Monomial, FieldElement)> = Vec::new();
    while let Some((m, c)) = h.terms.last().cloned() {
        match find_divisor(&m, basis) {
            Some(g) => {
                let t = g.lm().quotient_of(&m).expect("divides");
                let q = &c * &g.lead().1.inv().expect("nonzero lead");
                h = h.sub_mul(&q, &t, g, ord, trunc);
            }
            None => {
                rest.push(h.terms.pop().unwrap());
            }
        }
    }
    rest.reverse();
    Elem { terms: rest }
}

fn spoly(f: &Elem, g: &Elem, ord: TermOrder, trunc: Option<u64>) -> Elem {
    let l = f.lm().lcm(g.lm());
    let tf = f.lm().quotient_of(&l).unwrap();
    let tg = g.lm().quotient_of(&l).unwrap();
    let cf = f.lead().1.inv().unwrap();
    let cg = g.lead().1.inv().unwrap();
    let a = f.mul_monomial(&tf, trunc);
    let a = Elem {
        terms: a.terms.into_iter().map(|(m, c)| (m, &c * &cf)).collect(),
    };
    a.sub_mul(&cg, &tg, g, ord, trunc)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'b> {
    all: Vec<Elem>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    ord: TermOrder,
    trunc: Option<u64>,
    budget: &'b Budget,
    work: u64,
}

impl<'b> State<'b> {
    fn tick(&mut self) -> Result<()> {
        self.work += 1;
        if self.work > self.budget.max_pairs as u64 {
            return Err(Error::BudgetExceeded {
                what: "critical pairs",
                limit: self.budget.max_pairs as u64,
            });
        }
        Ok(())
    }

    fn active_refs(&self) -> Vec<&Elem> {
        self.active.iter().map(|&i| &self.all[i]).collect()
    }

    /// Reduce `h` and, if it survives, insert it with the Gebauer–Möller update.
    fn process(&mut self, h: Elem) -> Result<()> {
        self.tick()?;
        let h = {
            let refs = self.active_refs();
            top_reduce(h, &refs, self.ord, self.trunc, self.budget)?
        };
        if h.is_zero() {
            return Ok(());
        }
        self.insert(h.monic());
        Ok(())
    }

    /// Add a nonzero element, updating the pair set by Gebauer–Möller.
    fn insert(&mut self, h: Elem) {
        let t = h.lm().clone();
        let hi = self.all.len();

        // Gebauer–Möller: new pairs (h, g).
        let cands: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair {
                i: g,
                j: hi,
                lcm: self.all[g].lm().lcm(&t),
            })
            .collect();
        // The product criterion needs a global order; it is off when truncated.
        let product_ok = self.trunc.is_none();
        let coprime = |p: &Pair, all: &Vec<Elem>| product_ok && all[p.i].lm().is_coprime(&t);
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in cands.iter().enumerate() {
            let dominated = cands[k + 1..].iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime(p, &self.all) || !dominated {
                kept.push(p.clone());
            }
        }
        // Among equal lcms keep only one; drop coprime ones (product criterion).
        let mut fresh: Vec<Pair> = Vec::new();
        for p in kept {
            if coprime(&p, &self.all) {
                continue;
            }
            if fresh.iter().any(|q| q.lcm == p.lcm) {
                continue;
            }
            fresh.push(p);
        }
        let all = &self.all;
        self.pairs
            .retain(|p| !(t.divides(&p.lcm) && all[p.i].lm().lcm(&t) != p.lcm && all[p.j].lm().lcm(&t) != p.lcm));
        // Skip pairs of two monomials, whose S-polynomial vanishes, and pairs
        // whose lcm already lies in m^N.
        let h_is_term = h.terms.len() == 1;
        for p in fresh {
            if h_is_term && self.all[p.i].terms.len() == 1 {
                continue;
            }
            if self.trunc.is_some_and(|n| p.lcm.degree() >= n) {
                continue;
            }
            self.pairs.push(p);
        }
        let all = &self.all;
        self.active.retain(|&g| !t.divides(all[g].lm()));
        self.all.push(h);
        self.active.push(hi);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| ord.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

fn run(ideal: &Ideal, requested: MonomialOrder, trunc: Option<u64>, budget: &Budget) -> Result<GroebnerBasis> {
    let (ctx, ord, active) = run_core(ideal, requested, trunc, budget)?;
    let active = interreduce(active, ord, trunc);
    let basis: Vec<Polynomial> = active.iter().map(|e| e.to_poly(&ctx)).collect();
    let leads = active.iter().map(|e| e.lm().clone()).collect();
    Ok(GroebnerBasis {
        ctx,
        basis,
        leads,
        ord: requested,
        reduced: true,
        truncation: trunc,
        elems: active,
    })
}

/// Buchberger loop; returns the (non-reduced) active set.
fn run_core(
    ideal: &Ideal,
    requested: MonomialOrder,
    trunc: Option<u64>,
    budget: &Budget,
) -> Result<(Arc<VariableContext>, TermOrder, Vec<Elem>)> {
    let ord = TermOrder::of(requested, trunc);
    let gens = ideal
        .generators()
        .iter()
        .map(|g| Elem::from_poly(g, ord, trunc))
        .filter(|e| !e.is_zero())
        .collect();
    Ok((ideal.ctx().clone(), ord, core_loop(gens, ord, trunc, budget)?))
}

/// Buchberger loop on already converted generators; returns the active set.
fn core_loop(gens: Vec<Elem>, ord: TermOrder, trunc: Option<u64>, budget: &Budget) -> Result<Vec<Elem>> {
    let mut st = State {
        all: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        ord,
        trunc,
        budget,
        work: 0,
    };
    // Generators are processed in input order so early elements reduce later ones.
    let mut pending = gens;
    pending.reverse();
    loop {
        if let Some(h) = pending.pop() {
            st.process(h)?;
            continue;
        }
        match st.pop_pair() {
            Some(p) => {
                let s = spoly(&st.all[p.i], &st.all[p.j], ord, trunc);
                if !s.is_zero() {
                    pending.push(s);
                }
                st.tick()?;
            }
            None => break,
        }
    }
    Ok(st.active.iter().map(|&i| st.all[i].clone()).collect())
}

/// Interreduce the active set into the reduced basis, highest lead first.
fn interreduce(mut active: Vec<Elem>, ord: TermOrder, trunc: Option<u64>) -> Vec<Elem> {
    active.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for k in 0..active.len() {
        let h = active[k].clone();
        let lead = h.lead().clone();
        let tail = Elem {
            terms: h.terms[..h.terms.len() - 1].to_vec(),
        };
        let others: Vec<&Elem> = active
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, e)| e)
            .collect();
        let mut r = full_reduce(tail, &others, ord, trunc);
        r.terms.push(lead);
        active[k] = r.monic();
    }
    active.reverse();
    active
}

/// Reduced Gröbner basis of `ideal`.
pub fn buchberger(ideal: &Ideal, ord: MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
    run(ideal, ord, None, budget)
}

/// Reduced basis of `ideal + m^n`, computed in k[x]/m^n where the degree-n
/// monomials are zero. Leading terms are lowest-degree terms.
pub fn buchberger_truncated(ideal: &Ideal, ord: MonomialOrder, n: u64, budget: &Budget) -> Result<GroebnerBasis> {
    run(ideal, ord, Some(n), budget)
}

/// dim_k k[x]/(ideal + m^n).
pub fn truncated_colength(ideal: &Ideal, n: u64, budget: &Budget) -> Result<u128> {
    let nvars = ideal.ctx().nvars();
    if let Some(ms) = ideal.monomial_generators() {
        return Ok(staircase::count_below(&ms, nvars, n));
    }
    if ideal.ctx().field() == FieldSpec::Rationals {
        if let Some(c) = modular_truncated_colength(ideal, n, budget)? {
            return Ok(c);
        }
    }
    // Only the leading monomials matter, so the basis is not interreduced.
    let (_, _, active) = run_core(ideal, MonomialOrder::default(), Some(n), budget)?;
    let leads: Vec<Monomial> = active.iter().map(|e| e.lm().clone()).collect();
    Ok(staircase::count_below(&leads, nvars, n))
}

const MODULAR_PRIMES: usize = 12;

/// Image of a rational element in 𝔽_p; None when p divides a denominator.
fn elem_mod_p(e: &Elem, p: u32) -> Option<Elem> {
    let spec = FieldSpec::PrimeField(p);
    let mut terms = Vec::with_capacity(e.terms.len());
    for (m, c) in &e.terms {
        let FieldElement::Rational(q) = c else { return None };
        let v = spec.from_fraction(q.numer(), q.denom()).ok()?;
        if !v.is_zero() {
            terms.push((m.clone(), v));
        }
    }
    Some(Elem { terms })
}

fn residue(c: &FieldElement) -> u32 {
    match c {
        FieldElement::Modular { value, .. } => *value,
        FieldElement::Rational(_) => unreachable!("modular basis"),
    }
}

/// Residues of a reduced basis accumulated over several primes.
struct Accumulated {
    leads: Vec<Monomial>,
    colength: u128,
    coeffs: Vec<BTreeMap<Monomial, BigInt>>,
    modulus: BigInt,
    candidate: Option<Vec<Elem>>,
}

impl Accumulated {
    fn new(basis: &[Elem], colength: u128, p: u32) -> Self {
        Accumulated {
            leads: basis.iter().map(|e| e.lm().clone()).collect(),
            colength,
            coeffs: basis
                .iter()
                .map(|e| {
                    e.terms
                        .iter()
                        .map(|(m, c)| (m.clone(), BigInt::from(residue(c))))
                        .collect()
                })
                .collect(),
            modulus: BigInt::from(p),
            candidate: None,
        }
    }

    fn absorb(&mut self, basis: &[Elem], p: u32) {
        for (acc, e) in self.coeffs.iter_mut().zip(basis) {
            let img: BTreeMap<&Monomial, u32> = e.terms.iter().map(|(m, c)| (m, residue(c))).collect();
            let support: BTreeSet<Monomial> = acc.keys().cloned().chain(img.keys().map(|m| (*m).clone())).collect();
            for m in support {
                let a = acc.get(&m).cloned().unwrap_or_default();
                let b = img.get(&m).copied().unwrap_or(0);
                acc.insert(m, modular::crt(&a, &self.modulus, b, p));
            }
        }
        self.modulus *= p;
    }

    fn reconstruct(&self, ord: TermOrder) -> Option<Vec<Elem>> {
        self.coeffs
            .iter()
            .map(|acc| {
                let mut terms = Vec::with_capacity(acc.len());
                for (m, a) in acc {
                    let q = modular::rational_reconstruction(a, &self.modulus)?;
                    if !q.is_zero() {
                        terms.push((m.clone(), FieldElement::Rational(q)));
                    }
                }
                terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
                Some(Elem { terms })
            })
            .collect()
    }

    /// Does the candidate reduce to `basis` modulo p?
    fn candidate_matches(&self, basis: &[Elem], p: u32) -> bool {
        let Some(cand) = &self.candidate else { return false };
        cand.len() == basis.len()
            && cand
                .iter()
                .zip(basis)
                .all(|(c, b)| elem_mod_p(c, p).is_some_and(|cp| cp.terms == b.terms))
    }
}

/// Exact check over ℚ that `g` is a basis of an ideal containing every
/// generator, inside k[x]/m^n.
fn certify(g: &[Elem], gens: &[Elem], ord: TermOrder, n: u64, budget: &Budget) -> Result<bool> {
    let refs: Vec<&Elem> = g.iter().collect();
    if refs.iter().any(|e| e.is_zero() || !e.lead().1.is_one()) {
        return Ok(false);
    }
    for f in gens {
        if !top_reduce(f.clone(), &refs, ord, Some(n), budget)?.is_zero() {
            return Ok(false);
        }
    }
    // Pairs surviving the Gebauer–Möller update suffice for the criterion.
    let mut st = State {
        all: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        ord,
        trunc: Some(n),
        budget,
        work: 0,
    };
    for e in g {
        st.insert(e.clone());
    }
    if st.active.len() != g.len() {
        return Ok(false);
    }
    for p in &st.pairs {
        st.work += 1;
        if st.work > budget.max_pairs as u64 {
            return Err(Error::BudgetExceeded {
                what: "critical pairs",
                limit: budget.max_pairs as u64,
            });
        }
        let s = spoly(&st.all[p.i], &st.all[p.j], ord, Some(n));
        if !top_reduce(s, &refs, ord, Some(n), budget)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truncated colength over ℚ by computing modulo large primes.
///
/// For p not dividing any denominator, the colength mod p is an upper bound
/// (ranks only drop mod p). A reconstructed rational basis that passes
/// [`certify`] has the leading monomials of that prime, so it gives a
/// matching lower bound. Returns None if no certificate was found.
fn modular_truncated_colength(ideal: &Ideal, n: u64, budget: &Budget) -> Result<Option<u128>> {
    let ord = TermOrder::Truncated;
    let trunc = Some(n);
    let nvars = ideal.ctx().nvars();
    let gens: Vec<Elem> = ideal
        .generators()
        .iter()
        .map(|g| Elem::from_poly(g, ord, trunc))
        .filter(|e| !e.is_zero())
        .collect();
    let mut acc: Option<Accumulated> = None;
    let mut tried = 0;
    for p in modular::large_primes() {
        if tried == MODULAR_PRIMES {
            break;
        }
        let Some(gp) = gens.iter().map(|e| elem_mod_p(e, p)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        tried += 1;
        let gp: Vec<Elem> = gp.into_iter().filter(|e| !e.is_zero()).collect();
        let basis = interreduce(core_loop(gp, ord, trunc, budget)?, ord, trunc);
        let leads: Vec<Monomial> = basis.iter().map(|e| e.lm().clone()).collect();
        let c = staircase::count_below(&leads, nvars, n);
        match &mut acc {
            Some(a) if c > a.colength || (c == a.colength && leads != a.leads) => continue,
            Some(a) if c == a.colength => {
                if a.candidate_matches(&basis, p) {
                    let cand = a.candidate.take().expect("candidate");
                    if certify(&cand, &gens, ord, n, budget)? {
                        return Ok(Some(a.colength));
                    }
                }
                a.absorb(&basis, p);
            }
            _ => acc = Some(Accumulated::new(&basis, c, p)),
        }
        let a = acc.as_mut().expect("accumulated");
        a.candidate = a.reconstruct(ord);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parser::parse_polynomial;
    use crate::staircase::oracle;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx2() -> Arc<VariableContext> {
        VariableContext::new(&["x", "y"], FieldSpec::Rationals).unwrap()
    }

    fn ideal(c: &Arc<VariableContext>, gens: &[&str]) -> Ideal {
        Ideal::new(c, gens.iter().map(|g| parse_polynomial(g, c).unwrap()).collect()).unwrap()
    }

    fn p(c: &Arc<VariableContext>, s: &str) -> Polynomial {
        parse_polynomial(s, c).unwrap()
    }

    #[test]
    fn saturation_and_isolation() {
        let c = VariableContext::new(&["x", "y"], FieldSpec::Rationals).unwrap();
        let b = Budget::default();
        let sat = ideal(&c, &["x^2y", "xy^2"]).saturate_var(0, &b).unwrap();
        assert_eq!(sat.generators(), &[p(&c, "y")]);
        for (gens, isolated) in [
            (&["y^2 - x^3", "xy"][..], true),
            (&["x^2 - x", "y"], true),
            (&["x - 1", "y"], true),
            (&["y - x^2"], false),
            (&["y^2 - x^2y", "xy - x^3"], false),
            (&["x(x - 1)", "y(x - 1)"], true),
            (&["x(x - 1)", "xy"], false),
        ] {
            assert_eq!(ideal(&c, gens).origin_is_isolated(&b).unwrap(), isolated, "{gens:?}");
        }
    }

    fn gb(i: &Ideal) -> GroebnerBasis {
        buchberger(i, MonomialOrder::DegRevLex, &Budget::default()).unwrap()
    }

    fn strs(g: &GroebnerBasis) -> Vec<String> {
        g.basis().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn basis_examples() {
        let c = ctx2();
        assert_eq!(strs(&gb(&ideal(&c, &["x^2", "y^3"]))), ["y^3", "x^2"]);
        assert_eq!(strs(&gb(&ideal(&c, &["x^2 - y", "y^2"]))), ["x^2 - y", "y^2"]);
        assert_eq!(strs(&gb(&ideal(&c, &["x - y", "y"]))), ["x", "y"]);
        let g = gb(&ideal(&c, &["x^2 - y", "y^2"]));
        let o = TermOrder::Global(MonomialOrder::DegRevLex);
        let s = spoly(&g.elems[0], &g.elems[1], o, None);
        let refs: Vec<&Elem> = g.elems.iter().collect();
        assert!(full_reduce(s, &refs, o, None).is_zero());
        assert!(gb(&Ideal::zero(&c)).basis().is_empty());
        assert_eq!(strs(&gb(&ideal(&c, &["x + 1", "x"]))), ["1"]);
    }

    #[test]
    fn normal_forms_and_membership() {
        let c = ctx2();
        let g = gb(&ideal(&c, &["x^2 - y", "y^2"]));
        assert_eq!(g.normal_form(&p(&c, "x^2")), p(&c, "y"));
        assert!(g.normal_form(&p(&c, "y^2")).is_zero());
        let gx = gb(&ideal(&c, &["x"]));
        assert_eq!(gx.normal_form(&p(&c, "y")), p(&c, "y"));
        let b = Budget::default();
        assert!(ideal(&c, &["xy"]).contains(&p(&c, "x^2y"), &b).unwrap());
        assert!(!ideal(&c, &["x^2", "y^3"]).contains(&p(&c, "xy^2"), &b).unwrap());
        assert!(ideal(&c, &["x^2 - y"]).contains(&p(&c, "x^4 - y^2"), &b).unwrap());
    }

    #[test]
    fn ideal_arithmetic() {
        let c = ctx2();
        let b = Budget::default();
        let s = ideal(&c, &["x"]).sum(&ideal(&c, &["y"])).unwrap();
        assert_eq!(s, ideal(&c, &["x", "y"]));
        let sq = Ideal::maximal(&c).power(2, &b).unwrap();
        assert_eq!(gb(&sq), gb(&ideal(&c, &["x^2", "xy", "y^2"])));
        assert_eq!(sq.generators().len(), 3);
        let pr = ideal(&c, &["x^2", "y^3"]).product(&ideal(&c, &["x"]), &b).unwrap();
        assert_eq!(pr, ideal(&c, &["x^3", "xy^3"]));
        assert_eq!(
            gb(&Ideal::maximal_power(&c, 3)),
            gb(&Ideal::maximal(&c).power(3, &b).unwrap())
        );
        let q = ideal(&c, &["x + y^2"]).power(2, &b).unwrap();
        assert_eq!(q.generators().len(), 1);
    }

    #[test]
    fn global_colengths() {
        let c = ctx2();
        let b = Budget::default();
        let ord = MonomialOrder::DegRevLex;
        assert_eq!(
            ideal(&c, &["x^2", "y^3"]).global_colength(ord, &b).unwrap(),
            Colength::Finite(6)
        );
        assert_eq!(ideal(&c, &["x"]).global_colength(ord, &b).unwrap(), Colength::Infinite);
        let c1 = VariableContext::new(&["x"], FieldSpec::Rationals).unwrap();
        assert_eq!(
            ideal(&c1, &["x(x - 1)"]).global_colength(ord, &b).unwrap(),
            Colength::Finite(2)
        );
        assert_eq!(
            ideal(&c, &["x^2 - y", "y^2"]).global_colength(ord, &b).unwrap(),
            Colength::Finite(4)
        );
    }

    #[test]
    fn truncated_matches_explicit_power() {
        let c = ctx2();
        let b = Budget::default();
        for gens in [
            vec!["x^2 - y^3", "xy"],
            vec!["x(x - 1)"],
            vec!["x^3 + y^2", "x^2y"],
            vec!["y - x^2"],
        ] {
            let i = ideal(&c, &gens);
            for n in 1..9u64 {
                let explicit = i.sum(&Ideal::maximal_power(&c, n as u32)).unwrap();
                let want = explicit.global_colength(MonomialOrder::DegRevLex, &b).unwrap();
                let got = truncated_colength(&i, n, &b).unwrap();
                assert_eq!(Colength::Finite(got), want, "{gens:?} at N={n}");
            }
        }
    }

    #[test]
    fn truncated_matches_explicit_power_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = Budget::default();
        for field in [
            FieldSpec::Rationals,
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(5).unwrap(),
        ] {
            let c = VariableContext::new(&["x", "y", "z"], field).unwrap();
            for _ in 0..30 {
                let gens: Vec<Polynomial> = (0..rng.gen_range(1..4))
                    .map(|_| random_poly(&mut rng, &c, 3, 3))
                    .collect();
                let i = Ideal::new(&c, gens).unwrap();
                let n = rng.gen_range(1..7u64);
                let explicit = i.sum(&Ideal::maximal_power(&c, n as u32)).unwrap();
                let want = explicit.global_colength(MonomialOrder::DegRevLex, &b).unwrap();
                let tb = buchberger_truncated(&i, MonomialOrder::DegRevLex, n, &b).unwrap();
                assert_eq!(tb.colength(), want, "{i:?} at N={n}");
                for g in i.generators() {
                    assert!(tb.contains(g));
                }
            }
        }
    }

    #[test]
    fn pair_budget_is_enforced() {
        let c = ctx2();
        let tight = Budget {
            max_pairs: 2,
            ..Budget::default()
        };
        let r = buchberger(
            &ideal(&c, &["x^3 - y", "y^3 - x", "xy - 1"]),
            MonomialOrder::DegRevLex,
            &tight,
        );
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    fn random_poly(rng: &mut ChaCha8Rng, c: &Arc<VariableContext>, terms: usize, deg: u32) -> Polynomial {
        let f = c.field();
        Polynomial::from_terms(
            c,
            (0..terms).map(|_| {
                let e: Vec<u32> = (0..c.nvars()).map(|_| rng.gen_range(0..=deg)).collect();
                (Monomial::from_exponents(&e), f.from_i64(rng.gen_range(-3..=3)))
            }),
        )
    }

    /// Reduce with a random divisor choice at every step.
    fn random_nf(rng: &mut ChaCha8Rng, f: &Polynomial, g: &GroebnerBasis) -> Polynomial {
        let ord = TermOrder::Global(g.order());
        let mut h = Elem::from_poly(f, ord, None);
        let mut rest = Vec::new();
        while let Some((m, c)) = h.terms.last().cloned() {
            let divs: Vec<&Elem> = g.elems.iter().filter(|e| e.lm().divides(&m)).collect();
            if divs.is_empty() {
                rest.push(h.terms.pop().unwrap());
                continue;
            }
            let d = divs[rng.gen_range(0..divs.len())];
            let t = d.lm().quotient_of(&m).unwrap();
            let q = c.checked_div(&d.lead().1).unwrap();
            h = h.sub_mul(&q, &t, d, ord, None);
        }
        rest.reverse();
        Elem { terms: rest }.to_poly(f.ctx())
    }

    #[test]
    fn reduction_is_confluent_and_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [FieldSpec::Rationals, FieldSpec::prime(3).unwrap()] {
            let c = VariableContext::new(&["x", "y", "z"], field).unwrap();
            for _ in 0..25 {
                let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut rng, &c, 3, 2)).collect();
                let i = Ideal::new(&c, gens.clone()).unwrap();
                let g = gb(&i);
                for gen in &gens {
                    assert!(g.contains(gen));
                }
                for _ in 0..4 {
                    let f = random_poly(&mut rng, &c, 5, 3);
                    let h = random_poly(&mut rng, &c, 4, 3);
                    let nf = g.normal_form(&f);
                    assert_eq!(random_nf(&mut rng, &f, &g), nf);
                    assert_eq!(g.normal_form(&nf), nf);
                    let lin = g.normal_form(&(&f.scale(&field.from_i64(2)) - &h));
                    assert_eq!(lin, &nf.scale(&field.from_i64(2)) - &g.normal_form(&h));
                    assert!(g.contains(&(&f - &nf)));
                    for lt in g.leading_monomials() {
                        assert!(nf.terms().all(|(m, _)| !lt.divides(m)));
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let c = ctx2();
        let a = gb(&ideal(&c, &["x^2 - y", "y^2"]));
        let b = gb(&ideal(&c, &["y^2", "x^2 - y", "x^4 - y^2 + x^2y"]));
        assert_eq!(a, b);
        for (k, f) in a.basis().iter().enumerate() {
            assert!(f.leading_term(MonomialOrder::DegRevLex).unwrap().1.is_one());
            for (j, lt) in a.leading_monomials().iter().enumerate() {
                if j != k {
                    assert!(f.terms().all(|(m, _)| !lt.divides(m)));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn monomial_membership_matches_divisibility(
            raw in proptest::collection::vec(proptest::collection::vec(0u32..4, 3), 1..5),
            probe in proptest::collection::vec(0u32..5, 3),
        ) {
            let c = VariableContext::new(&["x", "y", "z"], FieldSpec::Rationals).unwrap();
            let gens: Vec<Monomial> = raw.iter().map(|e| Monomial::from_exponents(e)).collect();
            let i = Ideal::new(&c, gens.iter().map(|m| Polynomial::term(&c, m.clone(), c.field().one())).collect()).unwrap();
            let pm = Monomial::from_exponents(&probe);
            let f = Polynomial::term(&c, pm.clone(), c.field().one());
            prop_assert_eq!(i.contains(&f, &Budget::default()).unwrap(), gens.iter().any(|g| g.divides(&pm)));
        }

        #[test]
        fn zero_dim_colength_matches_lattice_count(
            raw in proptest::collection::vec(proptest::collection::vec(0u32..4, 2), 0..4),
            a in 1u32..5, b in 1u32..5,
        ) {
            let c = ctx2();
            let mut gens: Vec<Monomial> = raw.iter().map(|e| Monomial::from_exponents(e)).collect();
            gens.push(Monomial::from_exponents(&[a, 0]));
            gens.push(Monomial::from_exponents(&[0, b]));
            let polys: Vec<Polynomial> = gens.iter().map(|m| Polynomial::term(&c, m.clone(), c.field().one())).collect();
            let via_gb = buchberger(&Ideal::new(&c, polys).unwrap(), MonomialOrder::DegLex, &Budget::default()).unwrap().colength();
            let listed = oracle::standard_in_box(&gens, 2, 6).len() as u128;
            prop_assert_eq!(via_gb, Colength::Finite(listed));
        }
    }
}

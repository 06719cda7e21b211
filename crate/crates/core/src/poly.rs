//! Sparse multivariate polynomials over a fixed variable list.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::budget::Budget;
use crate::field::{FieldElement, FieldSpec};
use crate::{Error, Result};

/// Ordered variable names together with the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    field: FieldSpec,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableContext {
    pub fn new<S: AsRef<str>>(names: &[S], field: FieldSpec) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidContext("at least one variable is required".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidContext(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidContext(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(VariableContext { names, field }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the variable when this is a pure power x_i^e with e > 0.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Relabel variables: exponent of variable i moves to slot `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::one(self.nvars());
        for (i, &e) in self.0.iter().enumerate() {
            out.0[perm[i]] = e;
        }
        out
    }

    fn write(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Global monomial orders. The first two refine total degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    DegLex,
    /// Exponent of the last variable first, then degrevlex on the rest.
    /// An elimination order for the last variable.
    EliminateLast,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if *self == MonomialOrder::EliminateLast {
            let k = a.0.len() - 1;
            return a.0[k].cmp(&b.0[k]).then_with(|| {
                MonomialOrder::DegRevLex.cmp(
                    &Monomial::from_exponents(&a.0[..k]),
                    &Monomial::from_exponents(&b.0[..k]),
                )
            });
        }
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        match self {
            MonomialOrder::DegLex => a.0.cmp(&b.0),
            MonomialOrder::EliminateLast => unreachable!(),
            MonomialOrder::DegRevLex => {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        // smaller power of the last differing variable wins
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A polynomial in canonical sparse form: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Arc<VariableContext>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: FieldElement) -> Self {
        Self::term(ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Self::constant(ctx, ctx.field().one())
    }

    pub fn var(ctx: &Arc<VariableContext>, i: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.nvars(), i, 1), ctx.field().one())
    }

    pub fn term(ctx: &Arc<VariableContext>, m: Monomial, c: FieldElement) -> Self {
        assert_eq!(m.nvars(), ctx.nvars(), "monomial length differs from context");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Monomial with unit coefficient.
    pub fn monomial(ctx: &Arc<VariableContext>, exps: &[u32]) -> Self {
        Self::term(ctx, Monomial::from_exponents(exps), ctx.field().one())
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms<I>(ctx: &Arc<VariableContext>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        self.ctx.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&Monomial::one(self.ctx.nvars()))
    }

    /// Single term with nonzero coefficient.
    pub fn as_monomial(&self) -> Option<(&Monomial, &FieldElement)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.mul_budgeted(other, &Budget::default())
    }

    pub fn mul_budgeted(&self, other: &Self, budget: &Budget) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
            budget.check_terms(out.len())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(m, d)| (m.clone(), d * c)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn pow(&self, e: u32, budget: &Budget) -> Result<Self> {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_budgeted(&base, budget)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_budgeted(&base, budget)?;
            }
        }
        Ok(acc)
    }

    /// Maximal term under `ord`.
    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(Monomial, FieldElement)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Drop every term of total degree at least `n`.
    pub fn truncated(&self, n: u64) -> Self {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Relabel variables by `perm` (variable i becomes variable `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect(),
        }
    }

    /// Evaluate with x_i ↦ images[i]; a ring homomorphism in `self`.
    pub fn substitute(&self, images: &[Polynomial], budget: &Budget) -> Result<Self> {
        if images.len() != self.ctx.nvars() {
            return Err(Error::InvalidArgument(format!(
                "expected {} images, got {}",
                self.ctx.nvars(),
                images.len()
            )));
        }
        for img in images {
            self.same_ctx(img)?;
        }
        let mut powers = PowerCache::new(images);
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&self.ctx, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let p = powers.get(i, e, budget)?;
                    t = t.mul_budgeted(p, budget)?;
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, &tc);
            }
            budget.check_terms(out.len())?;
        }
        Ok(out)
    }

    /// Printable form that reparses to an equal polynomial.
    pub fn display(&self) -> String {
        self.to_string()
    }
}

/// Memoized powers of substitution images.
struct PowerCache<'a> {
    images: &'a [Polynomial],
    cache: Vec<BTreeMap<u32, Polynomial>>,
}

impl<'a> PowerCache<'a> {
    fn new(images: &'a [Polynomial]) -> Self {
        PowerCache {
            images,
            cache: vec![BTreeMap::new(); images.len()],
        }
    }

    fn get(&mut self, i: usize, e: u32, budget: &Budget) -> Result<&Polynomial> {
        if !self.cache[i].contains_key(&e) {
            // reuse the largest cached power below e
            let (start, base) = match self.cache[i].range(..e).next_back() {
                Some((&k, p)) => (k, p.clone()),
                None => (1, self.images[i].clone()),
            };
            let rest = e - start;
            let p = if rest == 0 {
                base
            } else {
                base.mul_budgeted(&self.images[i].pow(rest, budget)?, budget)?
            };
            self.cache[i].insert(e, p);
        }
        Ok(&self.cache[i][&e])
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let (neg, abs) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.write(self.ctx.names(), f)?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        self.checked_add(rhs).expect("context mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        self.checked_sub(rhs).expect("context mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        self.checked_mul(rhs).expect("context mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(field: FieldSpec) -> Arc<VariableContext> {
        VariableContext::new(&["x", "y"], field).unwrap()
    }

    fn xy(c: &Arc<VariableContext>) -> (Polynomial, Polynomial) {
        (Polynomial::var(c, 0), Polynomial::var(c, 1))
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx(FieldSpec::Rationals);
        let (x, y) = xy(&c);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn freshmans_dream_in_char_two() {
        let c = ctx(FieldSpec::prime(2).unwrap());
        let (x, y) = xy(&c);
        let s = &x + &y;
        assert_eq!(&s * &s, &(&x * &x) + &(&y * &y));
    }

    #[test]
    fn zero_annihilates() {
        let c = ctx(FieldSpec::Rationals);
        let (x, y) = xy(&c);
        let f = &(&x * &y) + &Polynomial::constant(&c, c.field().from_i64(3));
        assert!((&Polynomial::zero(&c) * &f).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let c = ctx(FieldSpec::Rationals);
        let b = Budget::default();
        let (x, y) = xy(&c);
        let imgs = [Polynomial::monomial(&c, &[2, 0]), Polynomial::monomial(&c, &[0, 3])];
        assert_eq!(
            (&x * &y).substitute(&imgs, &b).unwrap(),
            Polynomial::monomial(&c, &[2, 3])
        );
        let swap = [y.clone(), x.clone()];
        assert_eq!((&x + &y).substitute(&swap, &b).unwrap(), &x + &y);
        // x^2 - y under (x^2, y^3), twice
        let f = &(&x * &x) - &y;
        let once = f.substitute(&imgs, &b).unwrap();
        let twice = once.substitute(&imgs, &b).unwrap();
        assert_eq!(
            twice,
            &Polynomial::monomial(&c, &[8, 0]) - &Polynomial::monomial(&c, &[0, 9])
        );
    }

    #[test]
    fn substitute_arity_and_context_checked() {
        let c = ctx(FieldSpec::Rationals);
        let other = VariableContext::new(&["u", "v"], FieldSpec::Rationals).unwrap();
        let (x, y) = xy(&c);
        let b = Budget::default();
        assert!(matches!(
            x.substitute(std::slice::from_ref(&y), &b),
            Err(Error::InvalidArgument(_))
        ));
        let bad = [Polynomial::var(&other, 0), Polynomial::var(&other, 1)];
        assert_eq!(x.substitute(&bad, &b), Err(Error::ContextMismatch));
        assert_eq!(x.checked_add(&bad[0]), Err(Error::ContextMismatch));
    }

    #[test]
    fn leading_terms() {
        let c = ctx(FieldSpec::Rationals);
        let (x, y) = xy(&c);
        let f = &(&(&x * &x) + &(&x * &y)) + &(&y * &y);
        assert_eq!(
            f.leading_term(MonomialOrder::DegRevLex).unwrap().0,
            Monomial::from_exponents(&[2, 0])
        );
        let g = &x + &Polynomial::monomial(&c, &[0, 3]);
        assert_eq!(
            g.leading_term(MonomialOrder::DegLex).unwrap().0,
            Monomial::from_exponents(&[0, 3])
        );
        let five = Polynomial::constant(&c, c.field().from_i64(5));
        assert!(five.leading_term(MonomialOrder::DegRevLex).unwrap().0.is_one());
        assert_eq!(
            Polynomial::zero(&c).leading_term(MonomialOrder::DegLex),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn degrevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::DegRevLex;
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // x*z < y^2 in degrevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(
            MonomialOrder::DegLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn term_budget_is_enforced() {
        let c = ctx(FieldSpec::Rationals);
        let (x, y) = xy(&c);
        let tight = Budget {
            max_terms: 10,
            ..Budget::default()
        };
        let s = &x + &y;
        assert!(matches!(s.pow(20, &tight), Err(Error::BudgetExceeded { .. })));
    }

    fn arb_mono(d: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..4, d)
    }

    fn arb_poly(c: Arc<VariableContext>) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((arb_mono(c.nvars()), -5i64..5), 0..5).prop_map(move |ts| {
            Polynomial::from_terms(
                &c,
                ts.into_iter()
                    .map(|(e, k)| (Monomial::from_exponents(&e), c.field().from_i64(k))),
            )
        })
    }

    proptest! {
        #[test]
        fn substitution_is_a_ring_homomorphism(
            (f, g, i0, i1) in {
                let c = ctx(FieldSpec::prime(7).unwrap());
                (arb_poly(c.clone()), arb_poly(c.clone()), arb_poly(c.clone()), arb_poly(c))
            }
        ) {
            let b = Budget::default();
            let imgs = [i0, i1];
            let sf = f.substitute(&imgs, &b).unwrap();
            let sg = g.substitute(&imgs, &b).unwrap();
            prop_assert_eq!((&f * &g).substitute(&imgs, &b).unwrap(), &sf * &sg);
            prop_assert_eq!((&f + &g).substitute(&imgs, &b).unwrap(), &sf + &sg);
            let id = [Polynomial::var(f.ctx(), 0), Polynomial::var(f.ctx(), 1)];
            prop_assert_eq!(f.substitute(&id, &b).unwrap(), f.clone());
        }

        #[test]
        fn order_axioms(a in arb_mono(3), b in arb_mono(3), w in arb_mono(3)) {
            for o in [MonomialOrder::DegRevLex, MonomialOrder::DegLex] {
                let (a, b, w) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b), Monomial::from_exponents(&w));
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&w), &b.mul(&w)));
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
                if a.divides(&b) {
                    prop_assert_ne!(o.cmp(&a, &b), Ordering::Greater);
                }
            }
        }
    }
}

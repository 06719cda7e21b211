//! Standard-monomial counting for monomial ideals.
//!
//! All routines recurse on the last variable: the slice of the staircase at
//! height e is the ideal generated by the generators whose last exponent is at
//! most e, projected to the remaining variables. Slices are constant between
//! consecutive generator heights, so whole segments are counted at once.

use std::collections::HashMap;

use crate::poly::Monomial;

/// Number of standard monomials, or `Infinite` when the quotient is not
/// finite-dimensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colength {
    Finite(u128),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u128> {
        match self {
            Colength::Finite(c) => Some(c),
            Colength::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

impl std::fmt::Display for Colength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Colength::Finite(c) => write!(f, "{c}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

type Gens = Vec<Vec<u32>>;

/// Drop generators divisible by another; sort for canonical memo keys.
fn minimalize(mut gens: Gens) -> Gens {
    gens.sort();
    gens.dedup();
    gens.sort_by_key(|g| g.iter().map(|&e| e as u64).sum::<u64>());
    let mut out: Gens = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn to_gens(monomials: &[Monomial]) -> (Gens, usize) {
    let k = monomials.first().map_or(0, |m| m.nvars());
    (
        minimalize(monomials.iter().map(|m| m.exponents().to_vec()).collect()),
        k,
    )
}

/// Distinct heights of the last variable, ascending and starting at 0.
fn breakpoints(gens: &Gens, k: usize) -> Vec<u32> {
    let mut b: Vec<u32> = gens.iter().map(|g| g[k - 1]).collect();
    b.push(0);
    b.sort_unstable();
    b.dedup();
    b
}

fn slice(gens: &Gens, k: usize, height: u32) -> Gens {
    minimalize(
        gens.iter()
            .filter(|g| g[k - 1] <= height)
            .map(|g| g[..k - 1].to_vec())
            .collect(),
    )
}

fn contains_one(gens: &Gens) -> bool {
    gens.iter().any(|g| g.iter().all(|&e| e == 0))
}

/// Number of monomials of degree < d in k variables: C(d - 1 + k, k).
pub fn monomials_below(k: usize, d: u64) -> u128 {
    if d == 0 {
        return 0;
    }
    let n = d as u128 - 1 + k as u128;
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Count standard monomials of the ideal generated by `gens`.
pub fn count(gens: &[Monomial]) -> Colength {
    let (g, k) = to_gens(gens);
    if gens.is_empty() {
        return Colength::Infinite;
    }
    count_rec(&g, k, &mut HashMap::new())
}

fn count_rec(gens: &Gens, k: usize, memo: &mut HashMap<(Gens, usize), Colength>) -> Colength {
    if contains_one(gens) {
        return Colength::Finite(0);
    }
    if k == 0 {
        return Colength::Finite(1);
    }
    if k == 1 {
        return match gens.iter().map(|g| g[0]).min() {
            Some(p) => Colength::Finite(p as u128),
            None => Colength::Infinite,
        };
    }
    if let Some(c) = memo.get(&(gens.clone(), k)) {
        return *c;
    }
    let b = breakpoints(gens, k);
    let mut total: u128 = 0;
    let mut result = Colength::Infinite;
    for (j, &start) in b.iter().enumerate() {
        let s = slice(gens, k, start);
        let c = count_rec(&s, k - 1, memo);
        match (c, b.get(j + 1)) {
            (Colength::Finite(0), _) => {
                result = Colength::Finite(total);
                break;
            }
            (Colength::Finite(c), Some(&end)) => total += c * (end - start) as u128,
            _ => break,
        }
    }
    memo.insert((gens.clone(), k), result);
    result
}

/// Count standard monomials of total degree below `d`. Always finite.
pub fn count_below(gens: &[Monomial], nvars: usize, d: u64) -> u128 {
    let g = minimalize(gens.iter().map(|m| m.exponents().to_vec()).collect());
    below_rec(&g, nvars, d, &mut HashMap::new())
}

fn below_rec(gens: &Gens, k: usize, d: u64, memo: &mut HashMap<(Gens, usize, u64), u128>) -> u128 {
    if d == 0 || contains_one(gens) {
        return 0;
    }
    if gens.is_empty() {
        return monomials_below(k, d);
    }
    if k == 1 {
        let p = gens.iter().map(|g| g[0] as u64).min().unwrap();
        return p.min(d) as u128;
    }
    let key = (gens.clone(), k, d);
    if let Some(&c) = memo.get(&key) {
        return c;
    }
    let b = breakpoints(gens, k);
    let mut total = 0;
    for (j, &start) in b.iter().enumerate() {
        let s = slice(gens, k, start);
        if contains_one(&s) {
            break;
        }
        let end = b.get(j + 1).map_or(d, |&e| (e as u64).min(d));
        for e in start as u64..end {
            total += below_rec(&s, k - 1, d - e, memo);
        }
        if end >= d {
            break;
        }
    }
    memo.insert(key, total);
    total
}

/// Largest total degree of a standard monomial; `None` if there is none or
/// the quotient is infinite.
pub fn max_standard_degree(gens: &[Monomial]) -> Option<u64> {
    if !count(gens).is_finite() {
        return None;
    }
    let (g, k) = to_gens(gens);
    maxdeg_rec(&g, k, &mut HashMap::new())
}

fn maxdeg_rec(gens: &Gens, k: usize, memo: &mut HashMap<(Gens, usize), Option<u64>>) -> Option<u64> {
    if contains_one(gens) {
        return None;
    }
    if k == 0 {
        return Some(0);
    }
    if k == 1 {
        return gens.iter().map(|g| g[0] as u64).min().map(|p| p - 1);
    }
    if let Some(c) = memo.get(&(gens.clone(), k)) {
        return *c;
    }
    let b = breakpoints(gens, k);
    let mut best = None;
    for w in b.windows(2) {
        let s = slice(gens, k, w[0]);
        match maxdeg_rec(&s, k - 1, memo) {
            Some(m) => best = best.max(Some(m + w[1] as u64 - 1)),
            None => break,
        }
    }
    memo.insert((gens.clone(), k), best);
    best
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Brute-force lattice enumeration used as an independent check.

    use crate::poly::Monomial;

    pub fn standard_in_box(gens: &[Monomial], nvars: usize, bound: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut e = vec![0u32; nvars];
        loop {
            let m = Monomial::from_exponents(&e);
            if !gens.iter().any(|g| g.divides(&m)) {
                out.push(e.clone());
            }
            let mut i = 0;
            loop {
                if i == nvars {
                    return out;
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
}

//! Chinese remaindering and rational reconstruction for multi-modular
//! computations over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::is_prime;

/// Primes below 2³¹ in descending order, starting from the largest.
pub fn large_primes() -> impl Iterator<Item = u32> {
    (1u64 << 20..1u64 << 31)
        .rev()
        .filter(|&p| is_prime(p))
        .map(|p| p as u32)
}

/// The unique x mod m·p with x ≡ a (mod m) and x ≡ b (mod p); m and p coprime.
pub fn crt(a: &BigInt, m: &BigInt, b: u32, p: u32) -> BigInt {
    let pb = BigInt::from(p);
    let m_mod_p = m.mod_floor(&pb);
    let inv = mod_inverse(&m_mod_p, &pb).expect("coprime moduli");
    let diff = (BigInt::from(b) - a).mod_floor(&pb);
    let t = (diff * inv).mod_floor(&pb);
    (a + m * t).mod_floor(&(m * pb))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// r/s with r ≡ a·s (mod m), |r|, s ≤ √(m/2); None if no such fraction exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

//! Orders of `GL_n` over finite fields and the universal divisor `M'(n)`.
//!
//! `M'(n) = prod_p p^{u_p}` is the gcd of `#GL_n(F_q)` over odd primes `q`
//! outside any fixed finite set; it bounds every semistability index.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::arith::{factorize, is_prime, primes_up_to};
use crate::error::{domain, Result};

/// Factorization of `M'(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MPrimeFactorization {
    pub n: u64,
    /// prime -> exponent, only nonzero exponents
    pub factors: BTreeMap<u64, u32>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub value: BigUint,
}

impl MPrimeFactorization {
    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.keys().next_back().copied()
    }

    /// `2^4 · 3` style rendering of the factorization.
    pub fn factor_string(&self) -> String {
        self.factors
            .iter()
            .map(|(p, k)| if *k == 1 { p.to_string() } else { format!("{p}^{k}") })
            .collect::<Vec<_>>()
            .join(" · ")
    }
}

impl fmt::Display for MPrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.value, self.factor_string())
    }
}

/// `v_p(k!)` by Legendre's formula.
fn v_p_factorial(k: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut pk = p;
    while pk <= k {
        total += k / pk;
        pk = match pk.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    total
}

/// Exponent of `p` in `M'(n)`.
pub fn u_p(n: u64, p: u64) -> Result<u32> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let u = if p == 2 {
        v_p_factorial(n, 2) + n + n / 2
    } else {
        let k = n / (p - 1);
        v_p_factorial(k, p) + k
    };
    Ok(u as u32)
}

pub fn m_prime(n: u64) -> Result<MPrimeFactorization> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let mut factors = BTreeMap::new();
    let mut value = BigUint::one();
    // u_p vanishes for p > n + 1
    for p in primes_up_to(n + 1).iter() {
        let u = u_p(n, p)?;
        if u > 0 {
            factors.insert(p, u);
            value *= BigUint::from(p).pow(u);
        }
    }
    Ok(MPrimeFactorization { n, factors, value })
}

fn is_prime_power(q: u64) -> bool {
    let f = factorize(q);
    f.len() == 1
}

/// `#GL_n(F_q) = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u64, q: u64) -> Result<BigUint> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    if q < 2 || !is_prime_power(q) {
        return domain(format!("{q} is not a prime power"));
    }
    let q = BigUint::from(q);
    let qn = Pow::pow(&q, n as u32);
    let mut acc = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..n {
        acc *= &qn - &qi;
        qi *= &q;
    }
    Ok(acc)
}

/// The first `count` odd primes not dividing `2·n!`, i.e. the odd primes
/// above `n`. This is the fixed sample list used to cross-check `M'(n)` as a gcd.
pub fn oracle_primes(n: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = n.max(2);
    while out.len() < count {
        p = crate::arith::next_prime(p);
        if p > 2 {
            out.push(p);
        }
    }
    out
}

//! Exact integer arithmetic shared by every other module: prime sieving,
//! valuations, totients, multiplicative orders and power-residue searches.

mod congruence;
mod magnitude;

pub use congruence::{crt_intersect, CongruenceClass};
pub use magnitude::{ln_biguint, Magnitude, LOG_GUARD};

use crate::error::{domain, Result};
use num_integer::Integer;
use serde::Serialize;

/// All primes up to `limit`, produced by an Eratosthenes sieve over odd numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePool {
    limit: u64,
    primes: Vec<u64>,
}

/// Sieve limit accepted by [`primes_up_to`].
pub const SIEVE_LIMIT: u64 = 100_000_000;

impl PrimePool {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }
}

/// Primes `<= limit`. Limits above [`SIEVE_LIMIT`] are clamped by the caller's
/// contract; this function panics on them rather than allocating gigabytes.
pub fn primes_up_to(limit: u64) -> PrimePool {
    assert!(limit <= SIEVE_LIMIT, "sieve limit {limit} exceeds {SIEVE_LIMIT}");
    let mut primes = Vec::new();
    if limit >= 2 {
        primes.push(2);
    }
    if limit >= 3 {
        // bit i stands for the odd number 2i + 1
        let slots = ((limit - 1) / 2 + 1) as usize;
        let mut composite = vec![0u64; slots / 64 + 1];
        let mut i = 1usize;
        while {
            let p = 2 * i as u64 + 1;
            p * p <= limit
        } {
            if composite[i / 64] & (1 << (i % 64)) == 0 {
                let p = 2 * i + 1;
                let mut j = (p * p) / 2;
                while j < slots {
                    composite[j / 64] |= 1 << (j % 64);
                    j += p;
                }
            }
            i += 1;
        }
        for i in 1..slots {
            if composite[i / 64] & (1 << (i % 64)) == 0 {
                let n = 2 * i as u64 + 1;
                if n <= limit {
                    primes.push(n);
                }
            }
        }
    }
    PrimePool { limit, primes }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, k) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// `p`-adic valuation of `n`.
pub fn v_p(n: u64, p: u64) -> Result<u32> {
    if n == 0 {
        return domain("v_p(0) is undefined");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(valuation(n, p))
}

pub(crate) fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

pub fn euler_phi(d: u64) -> Result<u64> {
    if d == 0 {
        return domain("phi(0) is undefined");
    }
    Ok(factorize(d)
        .into_iter()
        .fold(1, |acc, (p, k)| acc * (p - 1) * p.pow(k - 1)))
}

/// Least `k >= 1` with `a^k = 1 (mod n)`.
pub fn mult_order(a: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return domain("modulus must be positive");
    }
    if n == 1 {
        return Ok(1);
    }
    if a.gcd(&n) != 1 {
        return domain(format!("gcd({a}, {n}) != 1"));
    }
    let mut order = euler_phi(n)?;
    for (p, _) in factorize(order) {
        while order % p == 0 && pow_mod(a, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// True when `x` is an `m`-th power in `F_ell^x` (`x` taken mod `ell`, nonzero).
pub fn is_mth_power_residue(x: u64, m: u64, ell: u64) -> bool {
    let x = x % ell;
    if x == 0 {
        return false;
    }
    let m = m.gcd(&(ell - 1));
    pow_mod(x, (ell - 1) / m, ell) == 1
}

/// Least prime `p != ell` whose residue mod `ell` is an `m`-th power.
///
/// The `m`-th powers of `F_ell^x` coincide with the `gcd(m, ell - 1)`-th
/// powers, so only that gcd matters.
pub fn smallest_prime_mth_residue(m: u64, ell: u64) -> Result<u64> {
    if m == 0 {
        return domain("m must be at least 1");
    }
    if ell < 3 || !is_prime(ell) {
        return domain(format!("{ell} is not an odd prime"));
    }
    let mut p = 2;
    loop {
        if p != ell && is_mth_power_residue(p, m, ell) {
            return Ok(p);
        }
        p = next_prime(p);
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn binomial(n: u64, k: u64) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn sieve_examples() {
        assert!(primes_up_to(0).is_empty());
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(13).primes(), &[2, 3, 5, 7, 11, 13]);
        assert_eq!(primes_up_to(30).len(), 10);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let pool = primes_up_to(5000);
        let brute: Vec<u64> = (0..=5000).filter(|&n| trial_division_is_prime(n)).collect();
        assert_eq!(pool.primes(), brute.as_slice());
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial_division_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn miller_rabin_large() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_615));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(v_p(1, 5).unwrap(), 0);
        assert_eq!(v_p(24, 2).unwrap(), 3);
        assert_eq!(v_p(720, 3).unwrap(), 2);
        assert!(v_p(0, 2).is_err());
        assert!(v_p(8, 4).is_err());
    }

    #[test]
    fn phi_examples_and_brute_force() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(20).unwrap(), 8);
        assert!(euler_phi(0).is_err());
        for n in 1..=10_000u64 {
            let brute = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n).unwrap(), brute, "n = {n}");
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(1, 7).unwrap(), 1);
        assert_eq!(mult_order(2, 5).unwrap(), 4);
        assert_eq!(mult_order(7, 5).unwrap(), 4);
        assert_eq!(mult_order(5, 1).unwrap(), 1);
        assert!(mult_order(2, 4).is_err());
    }

    #[test]
    fn order_divides_phi() {
        for n in 1..=500u64 {
            let phi = euler_phi(n).unwrap();
            for a in 1..n.max(2) {
                if a.gcd(&n) != 1 {
                    continue;
                }
                let k = mult_order(a, n).unwrap();
                assert_eq!(phi % k, 0);
                // least such k, checked by stepping powers
                let mut x = a % n;
                let mut steps = 1;
                while x != 1 % n {
                    x = mul_mod(x, a, n);
                    steps += 1;
                }
                assert_eq!(steps, k, "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn residue_examples() {
        assert_eq!(smallest_prime_mth_residue(1, 11).unwrap(), 2);
        assert_eq!(smallest_prime_mth_residue(2, 11).unwrap(), 3);
        assert_eq!(smallest_prime_mth_residue(4, 13).unwrap(), 3);
        assert!(smallest_prime_mth_residue(2, 9).is_err());
        assert!(smallest_prime_mth_residue(0, 11).is_err());
    }

    #[test]
    fn residue_depends_only_on_gcd() {
        for ell in primes_up_to(1000).iter().filter(|&p| p > 2) {
            for m in 1..=24 {
                let reduced = m.gcd(&(ell - 1));
                assert_eq!(
                    smallest_prime_mth_residue(m, ell).unwrap(),
                    smallest_prime_mth_residue(reduced, ell).unwrap(),
                    "m = {m}, ell = {ell}"
                );
            }
        }
    }

    #[test]
    fn residue_matches_enumerated_powers() {
        for ell in [11u64, 13, 31, 37, 101] {
            for m in 1..=8 {
                let powers: std::collections::BTreeSet<u64> =
                    (1..ell).map(|x| pow_mod(x, m, ell)).collect();
                let brute = (2..)
                    .filter(|&p| trial_division_is_prime(p) && p != ell)
                    .find(|p| powers.contains(&(p % ell)))
                    .unwrap();
                assert_eq!(smallest_prime_mth_residue(m, ell).unwrap(), brute);
            }
        }
    }

    #[test]
    fn divisors_and_binomial() {
        assert_eq!(divisors(24), vec![1, 2, 3, 4, 6, 8, 12, 24]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(binomial(4, 2), 6u32.into());
        assert_eq!(binomial(12, 6), 924u32.into());
    }
}

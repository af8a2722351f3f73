use serde::Serialize;

use crate::arith::{gcd, is_prime, lcm, valuation};
use crate::error::{domain, Result};

/// Exponents `i_r` of the diagonal characters `χ^{i_r}`, reduced mod `ell - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentVector {
    ell: u64,
    i: Vec<u64>,
}

impl ExponentVector {
    pub fn new(ell: u64, i: impl IntoIterator<Item = u64>) -> Result<Self> {
        if ell < 3 || !is_prime(ell) {
            return domain(format!("{ell} is not an odd prime"));
        }
        let i: Vec<u64> = i.into_iter().map(|x| x % (ell - 1)).collect();
        if i.is_empty() {
            return domain("exponent vector is empty");
        }
        Ok(Self { ell, i })
    }

    /// Additionally requires `delta | ell - 1` and every `i_r < (ell-1)/delta`.
    pub fn with_delta(self, delta: u64) -> Result<Self> {
        if delta == 0 || (self.ell - 1) % delta != 0 {
            return domain(format!("delta = {delta} must divide ell - 1 = {}", self.ell - 1));
        }
        let top = (self.ell - 1) / delta;
        if let Some(bad) = self.i.iter().find(|&&x| x >= top) {
            return domain(format!("exponent {bad} is not below (ell-1)/delta = {top}"));
        }
        Ok(self)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn exponents(&self) -> &[u64] {
        &self.i
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MqExponents {
    /// lcm of the orders of `χ^{2 i_r - 1}`
    pub m0: u64,
    /// lcm of the orders of `χ^{i_r + i_s - 1}` over all pairs
    pub m: u64,
    /// `v_2(m) = v_2(ell - 1)`
    pub two_adic_match: bool,
}

/// Order of `χ^x`, i.e. of `x` in `Z/(ell - 1)`.
fn char_order(x: i128, modulus: u64) -> u64 {
    let r = x.rem_euclid(modulus as i128) as u64;
    modulus / gcd(r, modulus)
}

pub fn mq_from_exponents(v: &ExponentVector) -> MqExponents {
    let n = v.ell - 1;
    let i: Vec<i128> = v.i.iter().map(|&x| x as i128).collect();
    let m0 = i.iter().fold(1, |acc, &x| lcm(acc, char_order(2 * x - 1, n)));
    let mut m = 1;
    for (r, &a) in i.iter().enumerate() {
        for &b in &i[r..] {
            m = lcm(m, char_order(a + b - 1, n));
        }
    }
    MqExponents { m0, m, two_adic_match: valuation(m, 2) == valuation(n, 2) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = mq_from_exponents(&ExponentVector::new(13, [2, 11]).unwrap());
        assert_eq!((r.m0, r.m), (4, 4));
        assert!(r.two_adic_match);
        let r = mq_from_exponents(&ExponentVector::new(5, [1, 0]).unwrap());
        assert_eq!((r.m0, r.m), (4, 4));
    }

    #[test]
    fn reduction_and_delta() {
        let v = ExponentVector::new(13, [14, 3]).unwrap();
        assert_eq!(v.exponents(), &[2, 3]);
        assert!(v.clone().with_delta(3).is_ok());
        assert!(v.clone().with_delta(6).is_err());
        assert!(v.with_delta(5).is_err());
        assert!(ExponentVector::new(4, [1]).is_err());
    }

    #[test]
    fn small_exhaustive() {
        for ell in [3u64, 5, 7, 11, 13, 17] {
            let n = ell - 1;
            for a in 0..n {
                for b in 0..n {
                    let r = mq_from_exponents(&ExponentVector::new(ell, [a, b]).unwrap());
                    assert_eq!(r.m0, r.m, "ell={ell} i=({a},{b})");
                    assert!(r.two_adic_match);
                }
            }
        }
    }
}

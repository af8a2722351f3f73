use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Result};

/// Monic polynomial with integer coefficients, stored constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntPolynomial {
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// From coefficients in ascending order; the last one must be 1.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.last().is_none_or(|c| !c.is_one()) {
            return domain("polynomial must be monic");
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From coefficients written highest degree first, as in `T^2 - T + 2 = [1, -1, 2]`.
    pub fn from_descending(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    /// `prod (T - r)` over the given roots.
    pub fn from_roots(roots: &[BigInt]) -> Self {
        let mut c = vec![BigInt::one()];
        for r in roots {
            let mut next = vec![BigInt::zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `e_k` of the roots, `k = 0..=deg`.
    fn elementary(&self) -> Vec<BigInt> {
        let n = self.degree();
        (0..=n)
            .map(|k| {
                let c = &self.coeffs[n - k];
                if k % 2 == 0 {
                    c.clone()
                } else {
                    -c
                }
            })
            .collect()
    }

    /// Power sums `p_1, ..., p_count` of the roots (index 0 holds `p_0 = deg`).
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        let n = self.degree();
        let e = self.elementary();
        let mut p = vec![BigInt::from(n)];
        for k in 1..=count {
            let mut acc = BigInt::zero();
            for i in 1..=k.min(n) {
                let term = &e[i] * if i == k { BigInt::from(k) } else { p[k - i].clone() };
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            p.push(acc);
        }
        p
    }

    /// The monic polynomial whose roots are given by power sums `p_1..p_n`.
    pub fn from_power_sums(p: &[BigInt]) -> Result<Self> {
        let n = p.len() - 1;
        let mut e = vec![BigInt::one()];
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let term = &e[k - i] * &p[i];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let (quo, rem) = acc.div_rem(&BigInt::from(k));
            if !rem.is_zero() {
                return domain("power sums do not come from an integer polynomial");
            }
            e.push(quo);
        }
        let coeffs = (0..=n)
            .map(|i| {
                let k = n - i;
                if k % 2 == 0 {
                    e[k].clone()
                } else {
                    -&e[k]
                }
            })
            .collect();
        Self::new(coeffs)
    }

    /// Evaluates at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Numerical roots by simultaneous (Durand–Kerner) iteration.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let bound = 1.0
            + self.coeffs[..n]
                .iter()
                .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> =
            (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0).max(1.0)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        denom *= z[i] - z[j];
                    }
                }
                if denom.norm() == 0.0 {
                    denom = Complex64::new(1e-12, 0.0);
                }
                let step = self.eval_complex(z[i]) / denom;
                z[i] -= step;
                delta = delta.max(step.norm() / z[i].norm().max(1.0));
            }
            if delta < 1e-15 {
                break;
            }
        }
        z
    }

    /// `P(T) = T^{2g} + ...` is a `q`-Weil polynomial: even degree, the
    /// functional equation `c_j = ± q^{g-j} c_{2g-j}` and every complex root
    /// of absolute value `√q` (numerically, relative tolerance `1e-4`).
    pub fn is_weil(&self, q: u64) -> bool {
        let n = self.degree();
        if n == 0 || n % 2 == 1 || q < 2 {
            return false;
        }
        let g = n / 2;
        let q = BigInt::from(q);
        let mut signs = [true, true];
        for j in 0..=g {
            let scale = num_traits::pow(q.clone(), g - j);
            let mirrored = &scale * &self.coeffs[2 * g - j];
            signs[0] &= self.coeffs[j] == mirrored;
            signs[1] &= self.coeffs[j] == -mirrored;
        }
        if !(signs[0] || signs[1]) {
            return false;
        }
        let r = q.to_f64().unwrap().sqrt();
        self.complex_roots().iter().all(|z| (z.norm() - r).abs() <= 1e-4 * r)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for k in (0..=n).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{k}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial of the `e`-th power: roots `α^e`.
pub fn power_charpoly(p: &IntPolynomial, e: u64) -> Result<IntPolynomial> {
    if e == 0 {
        return domain("e must be at least 1");
    }
    let n = p.degree();
    let e = e as usize;
    let sums = p.power_sums(n * e);
    let picked: Vec<BigInt> = (0..=n).map(|k| sums[k * e].clone()).collect();
    IntPolynomial::from_power_sums(&picked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_descending(c).unwrap()
    }

    #[test]
    fn power_examples() {
        assert_eq!(power_charpoly(&desc(&[1, -1, 2]), 2).unwrap(), desc(&[1, 3, 4]));
        let p = desc(&[1, 5, -3, 7]);
        assert_eq!(power_charpoly(&p, 1).unwrap(), p);
        // T^2 - 2T + 3: α^3 + β^3 = s^3 - 3 s P = 8 - 18 = -10, (αβ)^3 = 27
        assert_eq!(power_charpoly(&desc(&[1, -2, 3]), 3).unwrap(), desc(&[1, 10, 27]));
        assert!(IntPolynomial::from_descending(&[2, 1]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(desc(&[1, 3, 4]).to_string(), "T^2 + 3T + 4");
        assert_eq!(desc(&[1, -1, 0, 2]).to_string(), "T^3 - T^2 + 2");
        assert_eq!(desc(&[1, 0]).to_string(), "T");
    }

    #[test]
    fn weil_checks() {
        assert!(desc(&[1, 0, 2]).is_weil(2));
        assert!(desc(&[1, -1, 2]).is_weil(2));
        assert!(!desc(&[1, -3, 2]).is_weil(2));
        assert!(desc(&[1, 0, -2]).is_weil(2));
        assert!(desc(&[1, -4, 4]).is_weil(4));
        // (T^2 + 2)^2 has double roots
        assert!(desc(&[1, 0, 4, 0, 4]).is_weil(2));
    }

    #[test]
    fn roots_round_trip() {
        let p = IntPolynomial::from_roots(&[BigInt::from(2), BigInt::from(-3)]);
        assert_eq!(p, desc(&[1, 1, -6]));
    }
}

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Relative guard band used when comparing logarithms.
pub const LOG_GUARD: f64 = 1e-9;

/// A positive quantity that may be far too large to store exactly.
///
/// `log_e` is always populated. `exact` is present whenever the value was
/// built from an integer small enough to materialize.
#[derive(Debug, Clone, PartialEq)]
pub struct Magnitude {
    exact: Option<BigUint>,
    log_e: f64,
}

/// Natural log of a big natural, accurate to ~1 ulp of the leading 64 bits.
pub fn ln_biguint(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "log of zero");
    let bits = n.bits();
    if bits <= 64 {
        return (n.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap() as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl Magnitude {
    pub fn from_exact(n: BigUint) -> Self {
        let log_e = ln_biguint(&n);
        Self { exact: Some(n), log_e }
    }

    pub fn from_u64(n: u64) -> Self {
        Self::from_exact(BigUint::from(n))
    }

    /// A quantity known only through its natural logarithm.
    pub fn from_log(log_e: f64) -> Self {
        Self { exact: None, log_e }
    }

    /// A positive real, kept in log form.
    pub fn from_real(x: f64) -> Self {
        assert!(x > 0.0, "magnitudes are positive");
        Self::from_log(x.ln())
    }

    pub fn exact(&self) -> Option<&BigUint> {
        self.exact.as_ref()
    }

    pub fn log_e(&self) -> f64 {
        self.log_e
    }

    pub fn log10(&self) -> f64 {
        self.log_e / std::f64::consts::LN_10
    }

    /// The value as a float, `inf` when it overflows.
    pub fn approx(&self) -> f64 {
        self.log_e.exp()
    }

    fn guard(&self) -> f64 {
        LOG_GUARD * self.log_e.abs().max(1.0)
    }

    /// Compares two magnitudes: exactly when both are exact, otherwise by logs.
    /// Logs within the guard band compare as equal.
    pub fn compare(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return a.cmp(b);
        }
        let band = self.guard().max(other.guard());
        if (self.log_e - other.log_e).abs() <= band {
            Ordering::Equal
        } else if self.log_e < other.log_e {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// The larger of the two; on a log tie the exact one is preferred.
    pub fn max(self, other: Self) -> Self {
        match self.compare(&other) {
            Ordering::Less => other,
            Ordering::Greater => self,
            Ordering::Equal => {
                if self.exact.is_some() {
                    self
                } else {
                    other
                }
            }
        }
    }

    /// True when the integer `ell` is strictly larger than this bound.
    /// Inexact comparisons inside the guard band report `false`.
    pub fn is_exceeded_by(&self, ell: &BigUint) -> bool {
        if ell.is_zero() {
            return false;
        }
        if let Some(exact) = &self.exact {
            return ell > exact;
        }
        ln_biguint(ell) > self.log_e + self.guard()
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(n) if n.bits() <= 64 => write!(f, "{n}"),
            _ => write!(f, "10^{:.4}", self.log10()),
        }
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Magnitude", 3)?;
        st.serialize_field("exact", &self.exact.as_ref().map(|n| n.to_string()))?;
        st.serialize_field("log_e", &self.log_e)?;
        st.serialize_field("log10", &self.log10())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn log_of_big_power() {
        let n = BigUint::from(3u32).pow(96u32) * 4u32;
        let m = Magnitude::from_exact(n);
        let expected = 4f64.ln() + 96.0 * 3f64.ln();
        assert!((m.log_e() - expected).abs() <= 1e-9 * expected);
        assert!((m.log10() - 46.4063).abs() < 1e-3);
    }

    #[test]
    fn small_values_exact_log() {
        for n in [1u64, 2, 10, 1 << 40, u64::MAX] {
            let m = Magnitude::from_u64(n);
            assert!((m.log_e() - (n as f64).ln()).abs() < 1e-12 * (n as f64).ln().max(1.0));
        }
    }

    #[test]
    fn comparisons() {
        let a = Magnitude::from_u64(256);
        let b = Magnitude::from_log(256f64.ln());
        assert_eq!(a.compare(&b), Ordering::Equal);
        assert!(!b.is_exceeded_by(&BigUint::from(256u32)));
        assert!(a.is_exceeded_by(&BigUint::from(257u32)));
        assert!(!a.is_exceeded_by(&BigUint::from(256u32)));
        let big = Magnitude::from_log(1000.0);
        assert_eq!(a.clone().max(big.clone()), big);
    }
}

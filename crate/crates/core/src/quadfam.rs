//! Real quadratic fields `Q(√D)`, the units `ε_i = -2^i + √(4^i + 1)` and
//! the Legendre curves `y^2 = x(x - 1)(x - ε_i)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, range, Result};

/// Largest index accepted by [`epsilon`].
pub const MAX_INDEX: u64 = 64;
/// Largest family size accepted by [`distinct_family_check`].
pub const MAX_FAMILY: u64 = 20;
const TRIAL_LIMIT: u64 = 1_000_000;

/// `a + b√D`, `D > 1` squarefree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadRat {
    a: BigRational,
    b: BigRational,
    d: BigUint,
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadRat {
    pub fn new(a: BigRational, b: BigRational, d: BigUint) -> Result<Self> {
        if d <= BigUint::one() {
            return domain("D must exceed 1");
        }
        Ok(Self { a, b, d })
    }

    pub fn rational(a: BigRational, d: &BigUint) -> Self {
        Self { a, b: BigRational::zero(), d: d.clone() }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d.clone()))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.d_rat()
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return domain("zero has no inverse");
        }
        Ok(Self { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::rational(BigRational::one(), &self.d), |acc, _| &acc * self)
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.d, o.d, "elements of different quadratic fields");
    }

    /// Minimal polynomial over `Q`, constant term first: `[-a, 1]` or `[N, -Tr, 1]`.
    pub fn min_poly(&self) -> Vec<BigRational> {
        if self.is_rational() {
            vec![-self.a.clone(), BigRational::one()]
        } else {
            vec![self.norm(), -self.trace(), BigRational::one()]
        }
    }

    /// Same algebraic number: equal rationals, or same field and coordinates.
    pub fn same_number(&self, o: &Self) -> bool {
        if self.is_rational() && o.is_rational() {
            return self.a == o.a;
        }
        self.d == o.d && self.a == o.a && self.b == o.b
    }
}

impl Add for &QuadRat {
    type Output = QuadRat;
    fn add(self, o: &QuadRat) -> QuadRat {
        self.same_field(o);
        QuadRat { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() }
    }
}

impl Sub for &QuadRat {
    type Output = QuadRat;
    fn sub(self, o: &QuadRat) -> QuadRat {
        self + &(-o)
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

impl Mul for &QuadRat {
    type Output = QuadRat;
    fn mul(self, o: &QuadRat) -> QuadRat {
        self.same_field(o);
        QuadRat {
            a: &self.a * &o.a + &self.b * &o.b * self.d_rat(),
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }
}

impl Div for &QuadRat {
    type Output = QuadRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadRat) -> QuadRat {
        self * &o.inv().expect("division by zero")
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("√{}", self.d);
        let bpart = if self.b.abs().is_one() { root } else { format!("{}{}", self.b.abs(), root) };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{bpart}")
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {bpart}", self.a)
        }
    }
}

impl Serialize for QuadRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadRat", 4)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("d", &self.d.to_string())?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

/// `n = s^2 · D` with `D` squarefree.
///
/// Trial division to `10^6`; the cofactor is then taken as squarefree unless
/// it is a perfect square. For `n = 2^{2i} + 1` this is exact: by lifting the
/// exponent, `p^2 | 2^{2i} + 1` forces `p | 2i` or `p` a base-2 Wieferich
/// prime, and the only known ones (1093, 3511) lie below the trial bound.
fn square_decomposition(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut s = BigUint::one();
    let mut d = BigUint::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigUint::from(p) * BigUint::from(p) <= rest {
        let bp = BigUint::from(p);
        let mut k = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            k += 1;
        }
        for _ in 0..k / 2 {
            s *= &bp;
        }
        if k % 2 == 1 {
            d *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        s *= root;
    } else {
        d *= rest;
    }
    (s, d)
}

/// `ε_i = -2^i + √(4^i + 1)`, root of `x^2 + 2^{i+1} x - 1`.
pub fn epsilon(i: u64) -> Result<QuadRat> {
    if i > MAX_INDEX {
        return range(format!("i = {i} exceeds {MAX_INDEX}"));
    }
    let two_i = BigUint::one() << i;
    let n = &two_i * &two_i + 1u32;
    let (s, d) = square_decomposition(&n);
    QuadRat::new(
        -BigRational::from_integer(BigInt::from(two_i)),
        BigRational::from_integer(BigInt::from(s)),
        d,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitConditions {
    pub i: u64,
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub eps_min_poly: Vec<BigRational>,
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub eps_minus_one_min_poly: Vec<BigRational>,
    pub eps_unit: bool,
    pub eps_minus_one_2unit: bool,
}

fn is_signed_power_of_two(x: &BigRational) -> bool {
    if !x.is_integer() {
        return false;
    }
    let n = x.to_integer().abs();
    !n.is_zero() && (&n & (&n - 1u32)).is_zero()
}

/// `ε_i` is a unit and `ε_i - 1` a 2-unit, read off the constant terms of
/// their minimal polynomials.
pub fn verify_unit_conditions(i: u64) -> Result<UnitConditions> {
    let e = epsilon(i)?;
    let one = QuadRat::rational(BigRational::one(), e.d());
    let em1 = &e - &one;
    let p = e.min_poly();
    let pm1 = em1.min_poly();
    let integral = |v: &[BigRational]| v.iter().all(|c| c.is_integer());
    Ok(UnitConditions {
        i,
        eps_unit: integral(&p) && p[0].abs().is_one(),
        eps_minus_one_2unit: integral(&pm1) && is_signed_power_of_two(&pm1[0]),
        eps_min_poly: p,
        eps_minus_one_min_poly: pm1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegendreCurve {
    lambda: QuadRat,
}

impl LegendreCurve {
    pub fn new(lambda: QuadRat) -> Result<Self> {
        if lambda.is_rational() && (lambda.a().is_zero() || lambda.a().is_one()) {
            return domain("λ must avoid 0 and 1");
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> &QuadRat {
        &self.lambda
    }

    /// The family member `y^2 = x(x - 1)(x - ε_i)`.
    pub fn family(i: u64) -> Result<Self> {
        Self::new(epsilon(i)?)
    }

    /// `16 λ^2 (λ - 1)^2`.
    pub fn discriminant(&self) -> QuadRat {
        let l = &self.lambda;
        let d = l.d().clone();
        let lm1 = l - &QuadRat::rational(BigRational::one(), &d);
        let sq = &(l * &lm1) * &(l * &lm1);
        &QuadRat::rational(r(16), &d) * &sq
    }
}

/// `256 (λ^2 - λ + 1)^3 / (λ^2 (λ - 1)^2)`.
pub fn j_invariant(curve: &LegendreCurve) -> QuadRat {
    let l = curve.lambda();
    let d = l.d().clone();
    let one = QuadRat::rational(BigRational::one(), &d);
    let num = (&(&(l * l) - l) + &one).pow(3);
    let lm1 = l - &one;
    let den = &(l * l) * &(&lm1 * &lm1);
    &(&QuadRat::rational(r(256), &d) * &num) / &den
}

/// `j(E_0), ..., j(E_{count-1})` pairwise distinct.
pub fn distinct_family_check(count: u64) -> Result<bool> {
    if count > MAX_FAMILY {
        return range(format!("count = {count} exceeds {MAX_FAMILY}"));
    }
    let js: Vec<QuadRat> =
        (0..count).map(|i| Ok(j_invariant(&LegendreCurve::family(i)?))).collect::<Result<_>>()?;
    for (a, x) in js.iter().enumerate() {
        for y in &js[a + 1..] {
            if x.min_poly() == y.min_poly() && x.same_number(y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Norm of the model discriminant is `±2^k`.
pub fn discriminant_norm_is_two_power(i: u64) -> Result<bool> {
    let c = LegendreCurve::family(i)?;
    Ok(is_signed_power_of_two(&c.discriminant().norm()))
}

/// Squarefree part of `4^i + 1` as a decimal string (for reports).
pub fn field_of(i: u64) -> Result<String> {
    Ok(epsilon(i)?.d().to_string())
}

#[cfg(test)]
fn to_f64(x: &QuadRat) -> f64 {
    use num_traits::ToPrimitive;
    x.a().to_f64().unwrap() + x.b().to_f64().unwrap() * x.d().to_f64().unwrap().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigUint {
        BigUint::from(n as u64)
    }

    #[test]
    fn epsilon_examples() {
        let e0 = epsilon(0).unwrap();
        assert_eq!((e0.a().clone(), e0.b().clone(), e0.d().clone()), (r(-1), r(1), bi(2)));
        assert_eq!(e0.to_string(), "-1 + √2");
        let e1 = epsilon(1).unwrap();
        assert_eq!(e1.to_string(), "-2 + √5");
        for i in 0..=10 {
            let e = epsilon(i).unwrap();
            let d = e.d().clone();
            let c = QuadRat::rational(BigRational::from_integer(BigInt::from(1u64 << (i + 1))), &d);
            let res = &(&(&e * &e) + &(&c * &e)) - &QuadRat::rational(r(1), &d);
            assert!(res.is_zero(), "i = {i}");
            assert_eq!(e.norm(), r(-1));
        }
        assert!(epsilon(65).is_err());
        assert!(epsilon(64).is_ok());
    }

    #[test]
    fn squarefree_parts() {
        // 4^4 + 1 = 257, 4^5 + 1 = 1025 = 5^2 · 41, 4^3 + 1 = 65
        assert_eq!(epsilon(4).unwrap().d(), &bi(257));
        let e5 = epsilon(5).unwrap();
        assert_eq!((e5.d().clone(), e5.b().clone()), (bi(41), r(5)));
        assert_eq!(epsilon(3).unwrap().d(), &bi(65));
    }

    #[test]
    fn unit_conditions() {
        let u = verify_unit_conditions(0).unwrap();
        assert_eq!(u.eps_min_poly, vec![r(-1), r(2), r(1)]);
        assert_eq!(u.eps_minus_one_min_poly, vec![r(2), r(4), r(1)]);
        let u = verify_unit_conditions(3).unwrap();
        assert_eq!(u.eps_min_poly[0], r(-1));
        assert_eq!(u.eps_minus_one_min_poly[0], r(16));
        for i in 0..=10 {
            let u = verify_unit_conditions(i).unwrap();
            assert!(u.eps_unit && u.eps_minus_one_2unit, "i = {i}");
            let want = vec![r(1 << (i + 1)), r((1 << (i + 1)) + 2), r(1)];
            assert_eq!(u.eps_minus_one_min_poly, want);
        }
    }

    #[test]
    fn j_examples() {
        let d = bi(2);
        let minus_one = LegendreCurve::new(QuadRat::rational(r(-1), &d)).unwrap();
        assert_eq!(j_invariant(&minus_one), QuadRat::rational(r(1728), &d));
        let e0 = LegendreCurve::family(0).unwrap();
        let j = j_invariant(&e0);
        assert_eq!(j, QuadRat::new(r(2432), r(-384), d.clone()).unwrap());
        // S3 symmetry: λ and 1 - λ
        for i in 0..5 {
            let l = epsilon(i).unwrap();
            let other = &QuadRat::rational(r(1), l.d()) - &l;
            let a = j_invariant(&LegendreCurve::new(l).unwrap());
            let b = j_invariant(&LegendreCurve::new(other).unwrap());
            assert_eq!(a, b);
        }
        assert!(LegendreCurve::new(QuadRat::rational(r(1), &d)).is_err());
        assert!(LegendreCurve::new(QuadRat::rational(r(0), &d)).is_err());
    }

    #[test]
    fn family_distinct() {
        assert!(distinct_family_check(1).unwrap());
        assert!(distinct_family_check(2).unwrap());
        assert!(distinct_family_check(10).unwrap());
        assert!(distinct_family_check(21).is_err());
    }

    #[test]
    fn discriminant_norms() {
        for i in 0..=10 {
            assert!(discriminant_norm_is_two_power(i).unwrap(), "i = {i}");
        }
    }

    #[test]
    fn j_values_numerically_sane() {
        let j = j_invariant(&LegendreCurve::family(0).unwrap());
        let x = to_f64(&j);
        assert!((x - (2432.0 - 384.0 * 2f64.sqrt())).abs() < 1e-9);
    }
}

//! Exact arithmetic in `Q(ζ)`, `ζ` a primitive 12th root of unity, and
//! Weil numbers of the form `ζ^t √q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{factorize, is_prime};
use crate::error::{domain, Result};

/// `a0 + a1 ζ + a2 ζ^2 + a3 ζ^3` with `ζ^4 = ζ^2 - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    coords: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycloElement {
    pub fn zero() -> Self {
        Self { coords: [rat(0), rat(0), rat(0), rat(0)] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut c = Self::zero();
        c.coords[0] = r;
        c
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn new(coords: [BigRational; 4]) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.coords
    }

    /// `ζ^t`.
    pub fn zeta_pow(t: i64) -> Self {
        let t = t.rem_euclid(12);
        let z = Self::new([rat(0), rat(1), rat(0), rat(0)]);
        (0..t).fold(Self::from_int(1), |acc, _| &acc * &z)
    }

    /// `√3 = 2ζ - ζ^3`.
    pub fn sqrt3() -> Self {
        Self::new([rat(0), rat(2), rat(0), rat(-1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { coords: self.coords.clone().map(|c| c * r) }
    }

    /// The automorphism `ζ -> ζ^a`, `a` a unit mod 12.
    pub fn galois(&self, a: i64) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &Self::zeta_pow(a * k as i64).scale(c);
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.galois(11)
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, o: &CycloElement) -> CycloElement {
        let mut c = self.coords.clone();
        for (a, b) in c.iter_mut().zip(&o.coords) {
            *a += b;
        }
        CycloElement { coords: c }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, o: &CycloElement) -> CycloElement {
        self + &(-o)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { coords: self.coords.clone().map(|c| -c) }
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, o: &CycloElement) -> CycloElement {
        let mut prod = vec![rat(0); 7];
        for i in 0..4 {
            for j in 0..4 {
                prod[i + j] += &self.coords[i] * &o.coords[j];
            }
        }
        // reduce with x^4 = x^2 - 1, top degree down
        for k in (4..7).rev() {
            let c = std::mem::replace(&mut prod[k], rat(0));
            prod[k - 2] += &c;
            prod[k - 4] -= c;
        }
        CycloElement { coords: [prod[0].clone(), prod[1].clone(), prod[2].clone(), prod[3].clone()] }
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "ζ", "ζ^2", "ζ^3"];
        let mut first = true;
        for (c, name) in self.coords.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycloElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

/// How `√q` sits relative to `Q(ζ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
enum SqrtQ {
    /// `√q` is the rational `s`
    Rational(BigInt),
    /// `√q = s√3`
    InCyclo(CycloElement),
    /// outside `Q(ζ)`; kept as a formal symbol
    Formal,
}

fn classify_sqrt(q: u64) -> SqrtQ {
    let mut square = 1u64;
    let mut free = 1u64;
    for (p, k) in factorize(q) {
        square *= p.pow(k / 2);
        if k % 2 == 1 {
            free *= p;
        }
    }
    match free {
        1 => SqrtQ::Rational(BigInt::from(square)),
        3 => SqrtQ::InCyclo(CycloElement::sqrt3().scale(&rat(square as i64))),
        _ => SqrtQ::Formal,
    }
}

/// `rational_part + sqrt_part·√q` with both parts in `Q(ζ)`; `sqrt_part` is
/// zero whenever `√q` already lies in `Q(ζ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceValue {
    pub q: u64,
    pub rational_part: CycloElement,
    pub sqrt_part: CycloElement,
}

impl TraceValue {
    fn new(q: u64, base: CycloElement, q_power: u32, odd: bool) -> Self {
        let scale = BigRational::from_integer(num_traits::pow(BigInt::from(q), q_power as usize));
        let base = base.scale(&scale);
        if !odd {
            return Self { q, rational_part: base, sqrt_part: CycloElement::zero() };
        }
        match classify_sqrt(q) {
            SqrtQ::Rational(s) => Self {
                q,
                rational_part: base.scale(&BigRational::from_integer(s)),
                sqrt_part: CycloElement::zero(),
            },
            SqrtQ::InCyclo(r) => Self { q, rational_part: &base * &r, sqrt_part: CycloElement::zero() },
            SqrtQ::Formal => Self { q, rational_part: CycloElement::zero(), sqrt_part: base },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero() && self.sqrt_part.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.sqrt_part.is_zero() {
            self.rational_part.as_rational().cloned()
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }
}

impl fmt::Display for TraceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational_part.is_zero(), self.sqrt_part.is_zero()) {
            (_, true) => write!(f, "{}", self.rational_part),
            (true, false) => write!(f, "({})·√{}", self.sqrt_part, self.q),
            (false, false) => write!(f, "{} + ({})·√{}", self.rational_part, self.sqrt_part, self.q),
        }
    }
}

/// A multiset of Weil numbers `ζ^t √q`, `kappa[t]` copies of each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeilConfig {
    pub q: u64,
    pub kappa: [u64; 12],
}

impl WeilConfig {
    pub fn new(q: u64, kappa: [u64; 12]) -> Result<Self> {
        let f = factorize(q);
        if q < 2 || f.len() != 1 {
            return domain(format!("{q} is not a prime power"));
        }
        if kappa.iter().sum::<u64>() == 0 {
            return domain("a configuration needs at least one eigenvalue");
        }
        Ok(Self { q, kappa })
    }

    /// Configuration supported on sixth roots of unity `η^s`, `η = ζ^2`.
    pub fn mu6(q: u64, kappa6: [u64; 6]) -> Result<Self> {
        let mut kappa = [0u64; 12];
        for (s, k) in kappa6.iter().enumerate() {
            kappa[2 * s] = *k;
        }
        Self::new(q, kappa)
    }

    /// `2g`.
    pub fn size(&self) -> u64 {
        self.kappa.iter().sum()
    }

    /// `sum_t kappa_t (ζ^t √q)^n`, exactly.
    pub fn trace(&self, n: u64) -> TraceValue {
        let mut base = CycloElement::zero();
        for (t, &k) in self.kappa.iter().enumerate() {
            if k > 0 {
                let z = CycloElement::zeta_pow(((t as u64 * n) % 12) as i64);
                base = &base + &z.scale(&rat(k as i64));
            }
        }
        TraceValue::new(self.q, base, (n / 2) as u32, n % 2 == 1)
    }

    /// The multiset is stable under `Gal(Q̄/Q)` iff its first `2g` power sums
    /// are rational.
    pub fn is_galois_stable(&self) -> bool {
        (1..=self.size()).all(|n| self.trace(n).as_rational().is_some())
    }

    /// `κ0 = κ3` and `κ1 = κ2 = κ4 = κ5` in sixth-root indexing; `None` when
    /// the configuration is not supported on sixth roots.
    pub fn mu6_constraints(&self) -> Option<bool> {
        if self.kappa.iter().skip(1).step_by(2).any(|&k| k > 0) {
            return None;
        }
        let k6: Vec<u64> = self.kappa.iter().step_by(2).copied().collect();
        Some(k6[0] == k6[3] && k6[1] == k6[2] && k6[2] == k6[4] && k6[4] == k6[5])
    }
}

/// Degree over `Q` of `ζ^t √p`, by counting the Galois orbit.
pub fn min_poly_degree(t: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let t = (t % 12) as i64;
    // σ acts on the exponent as t -> a·t + 6·[σ(√p) = -√p]
    let mut actions: Vec<(i64, i64)> = Vec::new();
    for a in [1i64, 5, 7, 11] {
        if p == 3 {
            let flip = if a == 5 || a == 7 { 6 } else { 0 };
            actions.push((a, flip));
        } else {
            actions.push((a, 0));
            actions.push((a, 6));
        }
    }
    let mut orbit: Vec<i64> = actions.iter().map(|&(a, s)| (a * t + s).rem_euclid(12)).collect();
    orbit.sort_unstable();
    orbit.dedup();
    Ok(orbit.len() as u64)
}

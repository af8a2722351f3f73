//! Explicit constants and thresholds.
//!
//! The Chebotarev constant `C3` and the least-prime constant `C1'` are not known
//! effectively; both are caller-supplied parameters (default 1).

mod lambert;

pub use lambert::{lambert_w_m1, log_x0, log_x0_from_log_c, lower_bound_l, x0, W_M1_QUARTER};

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use crate::arith::{binomial, divisors, ln_biguint, Magnitude, LOG_GUARD};
use crate::error::{domain, range, Result};
use crate::gl_orders::m_prime;

/// Largest exponent of 3 for which `C7` is materialized exactly.
pub const C7_EXACT_EXPONENT_LIMIT: u64 = 10_000;

pub const DEFAULT_C3: f64 = 1.0;
pub const DEFAULT_C1_PRIME: f64 = 1.0;

/// Inputs of the effective Chebotarev bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChebParams {
    pub c3: f64,
    /// `log Δ` of the Galois closure of the base field
    pub log_disc_ktilde: f64,
    pub m: u64,
    pub g: u64,
    pub n: u64,
    pub n_k: u64,
}

impl ChebParams {
    pub fn validated(self) -> Result<Self> {
        if !(self.c3 >= 1.0 && self.c3.is_finite()) {
            return domain(format!("C3 = {} must be a finite real >= 1", self.c3));
        }
        if !(self.log_disc_ktilde >= 0.0 && self.log_disc_ktilde.is_finite()) {
            return domain("log Δ must be finite and nonnegative");
        }
        if self.m == 0 || self.g == 0 || self.n == 0 || self.n_k == 0 {
            return domain("m, g, n and n_K must be at least 1");
        }
        Ok(self)
    }
}

/// Field data that stays fixed while `m` varies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldParams {
    pub c3: f64,
    pub log_disc_ktilde: f64,
    pub n_k: u64,
    /// largest prime dividing `Δ_K`, or 1 when there is none
    pub ell_prime: u64,
}

impl FieldParams {
    pub fn rationals(c3: f64) -> Self {
        Self { c3, log_disc_ktilde: 0.0, n_k: 1, ell_prime: 1 }
    }

    pub fn is_rationals(&self) -> bool {
        self.n_k == 1
    }

    fn at(&self, m: u64, g: u64, n: u64) -> ChebParams {
        ChebParams { c3: self.c3, log_disc_ktilde: self.log_disc_ktilde, m, g, n, n_k: self.n_k }
    }
}

fn factorial(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// `(C4, C5) = (m log Δ, max{1, (m-1)·n_K!})`.
pub fn c4_c5(params: &ChebParams) -> Result<(f64, u64)> {
    let p = params.validated()?;
    let c4 = p.m as f64 * p.log_disc_ktilde;
    let c5 = factorial(p.n_k)
        .and_then(|f| f.checked_mul(p.m - 1))
        .ok_or_else(|| crate::Error::Range(format!("(m-1)·n_K! overflows for n_K = {}", p.n_k)))?;
    Ok((c4, c5.max(1)))
}

/// `16 g^2 C3^{2n} C5^{4n} (2n)^{4n} exp(C4/C5)`.
///
/// Exact when `C4 = 0` and `C3` is an integer.
pub fn corollary_bound(params: &ChebParams) -> Result<Magnitude> {
    let p = params.validated()?;
    let (c4, c5) = c4_c5(&p)?;
    corollary_bound_raw(p.g, p.n, p.c3, c4, c5 as f64)
}

fn check_raw(g: u64, n: u64, c3: f64, c4: f64, c5: f64) -> Result<()> {
    if g == 0 || n == 0 {
        return domain("g and n must be at least 1");
    }
    if !(c3 >= 1.0 && c3.is_finite() && c4 >= 0.0 && c4.is_finite() && c5 >= 1.0 && c5.is_finite()) {
        return domain("need C3 >= 1, C4 >= 0, C5 >= 1, all finite");
    }
    Ok(())
}

/// [`corollary_bound`] from the constants directly.
pub fn corollary_bound_raw(g: u64, n: u64, c3: f64, c4: f64, c5: f64) -> Result<Magnitude> {
    check_raw(g, n, c3, c4, c5)?;
    let e = n as u32;
    if c4 == 0.0 && c3.fract() == 0.0 && c3 < 9.0e15 && c5.fract() == 0.0 && c5 < 9.0e15 {
        let v = BigUint::from(16 * g * g)
            * BigUint::from(c3 as u64).pow(2 * e)
            * BigUint::from(c5 as u64).pow(4 * e)
            * BigUint::from(2 * n).pow(4 * e);
        return Ok(Magnitude::from_exact(v));
    }
    let nf = n as f64;
    let log = (16.0 * (g * g) as f64).ln()
        + 2.0 * nf * c3.ln()
        + 4.0 * nf * c5.ln()
        + 4.0 * nf * (2.0 * nf).ln()
        + c4 / c5;
    Ok(Magnitude::from_log(log))
}

/// Log of the largest real `ell` with `(ell/4g)^{1/n} = C3 (C4 + C5 log ell)^2`.
/// Every larger `ell` satisfies the strict inequality `>`.
pub fn log_crossing(params: &ChebParams) -> Result<f64> {
    let p = params.validated()?;
    let (c4, c5) = c4_c5(&p)?;
    log_crossing_raw(p.g, p.n, p.c3, c4, c5 as f64)
}

/// [`log_crossing`] from the constants directly.
pub fn log_crossing_raw(g: u64, n: u64, c3: f64, c4: f64, c5: f64) -> Result<f64> {
    check_raw(g, n, c3, c4, c5)?;
    let nf = n as f64;
    // ell = x · 4g C3^n C5^{2n}, N = 2n, c = 4g C3^n C5^{2n} e^{C4/C5}
    let log_scale = (4.0 * g as f64).ln() + nf * c3.ln() + 2.0 * nf * c5.ln();
    let log_c = log_scale + c4 / c5;
    Ok(log_x0_from_log_c(log_c, 2.0 * nf)? + log_scale)
}

/// Whether the corollary bound dominates the true crossing, with the guard band.
pub fn corollary_dominates_crossing(params: &ChebParams) -> Result<bool> {
    let bound = corollary_bound(params)?;
    let crossing = log_crossing(params)?;
    Ok(crossing <= bound.log_e() + LOG_GUARD * bound.log_e().abs().max(1.0))
}

/// `C6 = max{ell', corollary bound}`; undefined for `m = 1` over `Q`.
pub fn c6(params: &ChebParams, ell_prime: u64) -> Result<Magnitude> {
    let p = params.validated()?;
    if p.m == 1 && p.n_k == 1 {
        return domain("C6 is not defined for (m, K) = (1, Q)");
    }
    Ok(Magnitude::from_u64(ell_prime.max(1)).max(corollary_bound(&p)?))
}

/// `C7 = 2·binom(2g, g)·3^{2g·n_K^2·M'(2g)}`.
pub fn c7(g: u64, n_k: u64) -> Result<Magnitude> {
    if g == 0 || n_k == 0 {
        return domain("g and n_K must be at least 1");
    }
    let mp = m_prime(2 * g)?.value;
    let exponent = BigUint::from(2 * g) * BigUint::from(n_k) * BigUint::from(n_k) * &mp;
    let lead = BigUint::from(2u32) * binomial(2 * g, g);
    match exponent.to_u64() {
        Some(k) if k <= C7_EXACT_EXPONENT_LIMIT => {
            Ok(Magnitude::from_exact(lead * BigUint::from(3u32).pow(k as u32)))
        }
        _ => Ok(Magnitude::from_log(ln_biguint(&lead) + exponent.to_f64().unwrap() * 3f64.ln())),
    }
}

fn check_c1_args(m: u64, eps: f64, c1_prime: f64) -> Result<()> {
    if !(1..=4).contains(&m) {
        return domain(format!("m = {m} must lie in 1..=4"));
    }
    if !(eps > 0.0 && eps < 0.25) {
        return domain(format!("eps = {eps} must lie in (0, 1/4)"));
    }
    if !(c1_prime > 0.0 && c1_prime.is_finite()) {
        return domain("C1' must be a positive real");
    }
    Ok(())
}

/// `C1 = (4g C1')^{4/((5-m) - 4 eps)}`.
pub fn c1(m: u64, g: u64, eps: f64, c1_prime: f64) -> Result<f64> {
    check_c1_args(m, eps, c1_prime)?;
    if g == 0 {
        return domain("g must be at least 1");
    }
    Ok(log_c1(m, g, eps, c1_prime).exp())
}

fn log_c1(m: u64, g: u64, eps: f64, c1_prime: f64) -> f64 {
    (4.0 * g as f64 * c1_prime).ln() * 4.0 / ((5 - m) as f64 - 4.0 * eps)
}

/// `C1' ell^{(m-1)/4 + eps} < ell/(4g)`, compared in logs.
pub fn c1_check(m: u64, g: u64, eps: f64, c1_prime: f64, ell: f64) -> Result<bool> {
    check_c1_args(m, eps, c1_prime)?;
    if ell.is_nan() || ell <= 1.0 {
        return domain("ell must exceed 1");
    }
    let lhs = c1_prime.ln() + ((m - 1) as f64 / 4.0 + eps) * ell.ln();
    let rhs = ell.ln() - (4.0 * g as f64).ln();
    Ok(lhs + LOG_GUARD * rhs.abs().max(1.0) < rhs)
}

/// The four terms whose maximum is `C8`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C8Report {
    pub c7_term: Magnitude,
    pub c1_m2: Magnitude,
    pub c1_m4: Magnitude,
    pub cubic_term: Magnitude,
    pub value: Magnitude,
    pub dominant: &'static str,
}

/// `C8 = max{C7(g,1), C1(2,g,eps), C1(4,g,eps), (4g C1'^3)^{4/(1-12 eps)}}`.
pub fn c8(g: u64, eps: f64, c1_prime: f64) -> Result<C8Report> {
    if !(eps > 0.0 && eps < 1.0 / 12.0) {
        return domain(format!("eps = {eps} must lie in (0, 1/12)"));
    }
    let c7_term = c7(g, 1)?;
    check_c1_args(4, eps, c1_prime)?;
    let c1_m2 = Magnitude::from_log(log_c1(2, g, eps, c1_prime));
    let c1_m4 = Magnitude::from_log(log_c1(4, g, eps, c1_prime));
    let cubic_term = Magnitude::from_log(
        4.0 / (1.0 - 12.0 * eps) * ((4 * g) as f64).ln() + 4.0 / (1.0 - 12.0 * eps) * 3.0 * c1_prime.ln(),
    );
    let named = [("C7(g,1)", &c7_term), ("C1(2)", &c1_m2), ("C1(4)", &c1_m4), ("cubic", &cubic_term)];
    let (dominant, value) = named
        .iter()
        .fold(None::<(&'static str, Magnitude)>, |acc, (name, m)| match acc {
            None => Some((name, (*m).clone())),
            Some((n0, v)) => {
                if v.compare(m) == std::cmp::Ordering::Less {
                    Some((name, (*m).clone()))
                } else {
                    Some((n0, v))
                }
            }
        })
        .unwrap();
    Ok(C8Report { c7_term, c1_m2, c1_m4, cubic_term, value, dominant })
}

/// Exact `max_k binom(2g,k)(q0^{ek} + ⌈q0^{ek/2}⌉)`; the strict lower bound on `ell` under (A2).
pub fn a2_threshold(g: u64, q0: u64, e_lambda: u64) -> Result<BigUint> {
    if g == 0 || q0 < 2 || e_lambda == 0 {
        return domain("need g >= 1, q0 >= 2, e_λ >= 1");
    }
    let q = BigUint::from(q0);
    let mut best = BigUint::from(0u32);
    for k in 1..=2 * g {
        let full = Pow::pow(&q, (e_lambda * k) as u32);
        let root = full.sqrt();
        let half = if &root * &root == full { root } else { root + 1u32 };
        let term = binomial(2 * g, k) * (full + half);
        if term > best {
            best = term;
        }
    }
    Ok(best)
}

/// `3^{n_K}` in general, `2^{n_K}` when `ell != 2`.
pub fn q0_bound(n_k: u64, ell_is_2: bool) -> Result<u64> {
    if n_k == 0 {
        return domain("n_K must be at least 1");
    }
    let base: u64 = if ell_is_2 { 3 } else { 2 };
    base.checked_pow(n_k as u32)
        .ok_or_else(|| crate::Error::Range(format!("{base}^{n_k} overflows")))
}

/// The index set `M(g, n, F)`: divisors of `(1/2) M'(2g) n_F n`.
pub fn uniform_m_set(g: u64, n: u64, n_f: u64) -> Result<Vec<u64>> {
    if g == 0 || n == 0 || n_f == 0 {
        return domain("g, n and n_F must be at least 1");
    }
    let half = m_prime(2 * g)?.value / 2u32 * n_f * n;
    match half.to_u64() {
        Some(v) => Ok(divisors(v)),
        None => range(format!("(1/2)M'(2g)·n_F·n does not fit in 64 bits for g = {g}")),
    }
}

/// One row of the `N(g,n,F)` computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformTerm {
    pub m: u64,
    pub c6: Magnitude,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformBound {
    pub terms: Vec<UniformTerm>,
    pub n1: Magnitude,
    pub c7: Magnitude,
    pub value: Magnitude,
}

/// `N(g,n,F) = max{N1, C7(g, n_F n)}` with `N1 = max_m C6(m,g,n,F)`.
///
/// `C6` is undefined at `(m, F) = (1, Q)`; any value above `4g·2^n` works there
/// and `4g·2^n + 1` is used.
pub fn n_uniform(g: u64, n: u64, field: &FieldParams) -> Result<UniformBound> {
    let ms = uniform_m_set(g, n, field.n_k)?;
    let mut terms = Vec::with_capacity(ms.len());
    for m in ms {
        let c = if m == 1 && field.is_rationals() {
            let v = (4 * g).checked_shl(n as u32).filter(|_| n < 58).ok_or_else(|| {
                crate::Error::Range(format!("4g·2^n overflows for n = {n}"))
            })?;
            Magnitude::from_u64(v + 1)
        } else {
            c6(&field.at(m, g, n), field.ell_prime)?
        };
        terms.push(UniformTerm { m, c6: c });
    }
    let n1 = terms.iter().map(|t| t.c6.clone()).reduce(Magnitude::max).unwrap();
    let c7v = c7(g, field.n_k * n)?;
    let value = n1.clone().max(c7v.clone());
    Ok(UniformBound { terms, n1, c7: c7v, value })
}

/// `C9 = max{C6(m, g, 1, K) : m | (1/2) M'(2g) n_K}`, same convention at `(1, Q)`.
pub fn c9(g: u64, field: &FieldParams) -> Result<Magnitude> {
    Ok(n_uniform(g, 1, field)?.n1)
}

/// `max{C7(g, n_K), C9}`: above this every prime is outside the set.
pub fn finiteness_threshold(g: u64, field: &FieldParams) -> Result<Magnitude> {
    Ok(c7(g, field.n_k)?.max(c9(g, field)?))
}

//! Small power residues and the splitting conditions on quadratic fields.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, primes_up_to, smallest_prime_mth_residue};
use crate::error::{domain, range, Result};

/// Largest upper end accepted by [`elliott_scan`].
pub const SCAN_LIMIT: u64 = 1_000_000;

fn is_squarefree(mut n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Whether `d` is the discriminant of a quadratic field.
pub fn is_fundamental_discriminant(d: i64) -> Result<bool> {
    if d == 0 || d == 1 {
        return domain(format!("{d} is not a quadratic discriminant candidate"));
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        return Ok(is_squarefree(d.unsigned_abs()));
    }
    if r != 0 {
        return Ok(false);
    }
    let m = d / 4;
    Ok(matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs()))
}

/// Kronecker symbol `(a / n)` for `n >= 1`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let mut n = n;
    let mut result = 1i32;
    let tz = n.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = +1 for a ≡ ±1 mod 8, -1 for a ≡ ±3 mod 8
        if tz % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= tz;
    }
    // Jacobi symbol for odd n
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticField {
    disc: i64,
}

impl QuadraticField {
    pub fn new(disc: i64) -> Result<Self> {
        if !is_fundamental_discriminant(disc)? {
            return domain(format!("{disc} is not a fundamental discriminant"));
        }
        Ok(Self { disc })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Unramified and split; ramified primes count as non-split.
    pub fn splits(&self, p: u64) -> bool {
        kronecker(self.disc, p) == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldfeldVerdict {
    pub n: i64,
    pub go1: bool,
    pub go2: bool,
    /// primes that split in `K` and in `Q(√-N)`
    pub witnesses: Vec<u64>,
}

impl GoldfeldVerdict {
    pub fn is_member(&self) -> bool {
        self.go1 && self.go2
    }
}

/// Checks (Go 1): `-N` is a fundamental discriminant, and (Go 2): no prime
/// `p < |N|/4` outside `S` splits both in `K` and in `Q(√-N)`.
pub fn goldfeld_check(n: i64, k: &QuadraticField, s: &[u64]) -> Result<GoldfeldVerdict> {
    if n.unsigned_abs() < 3 {
        return domain(format!("|N| = {} must be at least 3", n.unsigned_abs()));
    }
    let go1 = is_fundamental_discriminant(-n)?;
    let abs = n.unsigned_abs();
    // p < |N|/4  <=>  4p < |N|
    let witnesses: Vec<u64> = primes_up_to(abs / 4)
        .iter()
        .filter(|&p| 4 * p < abs && !s.contains(&p))
        .filter(|&p| k.splits(p) && kronecker(-n, p) == 1)
        .collect();
    Ok(GoldfeldVerdict { n, go1, go2: witnesses.is_empty(), witnesses })
}

/// `ell* = (-1)^{(ell-1)/2} ell`.
pub fn ell_star(ell: u64) -> Result<i64> {
    if ell == 2 || !is_prime(ell) {
        return domain(format!("{ell} is not an odd prime"));
    }
    let e = ell as i64;
    Ok(if ell % 4 == 1 { e } else { -e })
}

/// Every prime `p < ell/4` that splits in `K` is a non-residue mod `ell`.
pub fn nprime_member(ell: u64, k: &QuadraticField) -> Result<bool> {
    ell_star(ell)?;
    Ok(primes_up_to(ell / 4)
        .iter()
        .filter(|&p| 4 * p < ell && k.splits(p))
        .all(|p| kronecker(p as i64, ell) == -1))
}

/// Count of primes `ell <= limit` in the set `N'(K)`.
pub fn nprime_count(k: &QuadraticField, limit: u64) -> Result<usize> {
    if limit > SCAN_LIMIT {
        return range(format!("limit {limit} exceeds {SCAN_LIMIT}"));
    }
    let primes: Vec<u64> = primes_up_to(limit).iter().filter(|&p| p > 2).collect();
    let flags: Vec<bool> =
        primes.par_iter().map(|&ell| nprime_member(ell, k)).collect::<Result<_>>()?;
    Ok(flags.into_iter().filter(|&b| b).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElliottRow {
    pub ell: u64,
    pub p_min: u64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElliottScan {
    pub m: u64,
    pub eps: f64,
    pub rows: Vec<ElliottRow>,
    /// empirical lower bound on `C1'`
    pub max_ratio: f64,
    pub argmax: Option<u64>,
}

/// For each prime `ell` in `[lo, hi]`, the least prime `m`-th power residue and
/// its ratio to `ell^{(m-1)/4 + eps}`.
pub fn elliott_scan(m: u64, lo: u64, hi: u64, eps: f64) -> Result<ElliottScan> {
    if m == 0 || m > 8 {
        return domain(format!("m = {m} must lie in 1..=8"));
    }
    if hi > SCAN_LIMIT || lo > hi {
        return range(format!("range [{lo}, {hi}] must be ordered and end at most {SCAN_LIMIT}"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return domain("eps must be positive");
    }
    let primes: Vec<u64> = primes_up_to(hi).iter().filter(|&p| p > 2 && p >= lo).collect();
    let exponent = (m - 1) as f64 / 4.0 + eps;
    let rows: Vec<ElliottRow> = primes
        .par_iter()
        .map(|&ell| {
            let p_min = smallest_prime_mth_residue(m, ell)?;
            Ok(ElliottRow { ell, p_min, ratio: p_min as f64 / (ell as f64).powf(exponent) })
        })
        .collect::<Result<_>>()?;
    let best = rows.iter().max_by(|a, b| a.ratio.total_cmp(&b.ratio));
    Ok(ElliottScan {
        m,
        eps,
        max_ratio: best.map_or(0.0, |r| r.ratio),
        argmax: best.map(|r| r.ell),
        rows,
    })
}

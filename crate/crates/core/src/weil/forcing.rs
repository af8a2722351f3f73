use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use super::poly::{power_charpoly, IntPolynomial};
use crate::arith::is_prime;
use crate::bounds::a2_threshold;
use crate::error::{domain, precondition, Result};

/// Outcome of the (A2) forcing argument for one Frobenius polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ForcingVerdict {
    /// A `j`-vector matches every power-sum congruence mod `ell`.
    Forced {
        j: Vec<u64>,
        charpoly: IntPolynomial,
        /// `{α^e} = {q0^{j_r}}` holds in characteristic 0
        equal_in_z: bool,
        /// every `j_r = e/2`
        all_half: bool,
    },
    /// No `j`-vector satisfies the congruences.
    Refuted { charpoly: IntPolynomial, vectors_checked: u64 },
}

impl ForcingVerdict {
    pub fn forced_half(&self) -> bool {
        matches!(self, ForcingVerdict::Forced { equal_in_z: true, all_half: true, .. })
    }
}

/// Nondecreasing vectors of length `len` with entries in `0..=top`.
fn for_each_multiset(len: usize, top: u64, f: &mut impl FnMut(&[u64]) -> bool) -> u64 {
    let mut v = vec![0u64; len];
    let mut count = 0;
    loop {
        count += 1;
        if f(&v) {
            return count;
        }
        let Some(pos) = (0..len).rev().find(|&i| v[i] < top) else { return count };
        let next = v[pos] + 1;
        for x in &mut v[pos..] {
            *x = next;
        }
    }
}

/// Searches `j` in `[0, e]^{2g}` with `S_k(α^e) ≡ sum_r q0^{k j_r} (mod ell)` for all
/// `k <= 2g`, then checks what the match forces.
pub fn a2_forcing_check(p: &IntPolynomial, q0: u64, e: u64, ell: u64) -> Result<ForcingVerdict> {
    if e == 0 {
        return domain("e_λ must be at least 1");
    }
    if !is_prime(ell) {
        return domain(format!("{ell} is not prime"));
    }
    if !p.is_weil(q0) {
        return precondition(format!("{p} is not a {q0}-Weil polynomial"));
    }
    let n = p.degree();
    let g = (n / 2) as u64;
    let threshold = a2_threshold(g, q0, e)?;
    if BigInt::from(ell) <= BigInt::from(threshold.clone()) {
        return precondition(format!("ell = {ell} does not exceed the (A2) threshold {threshold}"));
    }
    let pe = power_charpoly(p, e)?;
    let ell_big = BigInt::from(ell);
    let sums: Vec<u64> = pe
        .power_sums(n)
        .iter()
        .map(|s| ((s % &ell_big + &ell_big) % &ell_big).to_u64().unwrap())
        .collect();
    // q0^{j} mod ell for each exponent j·k that can occur
    let q_mod = q0 % ell;
    let pow_table: Vec<u64> = (0..=(e as usize) * n)
        .map(|x| crate::arith::pow_mod(q_mod, x as u64, ell))
        .collect();
    let mut found = None;
    let checked = for_each_multiset(n, e, &mut |j| {
        let ok = (1..=n).all(|k| {
            let s = j.iter().fold(0u64, |acc, &jr| (acc + pow_table[jr as usize * k]) % ell);
            s == sums[k]
        });
        if ok {
            found = Some(j.to_vec());
        }
        ok
    });
    Ok(match found {
        Some(j) => {
            let roots: Vec<BigInt> =
                j.iter().map(|&jr| BigInt::from(q0).pow(jr as u32)).collect();
            let equal_in_z = IntPolynomial::from_roots(&roots) == pe;
            let all_half = j.iter().all(|&jr| 2 * jr == e);
            ForcingVerdict::Forced { j, charpoly: pe, equal_in_z, all_half }
        }
        None => ForcingVerdict::Refuted { charpoly: pe, vectors_checked: checked },
    })
}

/// The least prime above `a2_threshold(g, q0, e)`.
pub fn least_prime_above_threshold(g: u64, q0: u64, e: u64) -> Result<u64> {
    let t = a2_threshold(g, q0, e)?;
    let t = t
        .to_u64()
        .ok_or_else(|| crate::Error::Range(format!("threshold {t} exceeds 64 bits")))?;
    Ok(crate::arith::next_prime(t))
}

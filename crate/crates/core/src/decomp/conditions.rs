use serde::Serialize;

use crate::arith::{gcd, is_prime, mul_mod, mult_order};
use crate::error::{domain, Result};

/// Local data at a fixed `d`: the prime `ell`, `n_d`, the residue degree
/// `f_{λ/ℓ}`, and the derived orders `f` (of `ell` mod `d`) and
/// `f_λ = f / (f, f_{λ/ℓ})` (of `ell^{f_{λ/ℓ}}` mod `d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionState {
    pub d: u64,
    pub ell: u64,
    pub n_d: u64,
    pub f_lambda_over_ell: u64,
    pub f: u64,
    pub f_lambda: u64,
}

impl ConditionState {
    pub fn new(d: u64, ell: u64, n_d: u64, f_lambda_over_ell: u64) -> Result<Self> {
        if d == 0 || n_d == 0 || f_lambda_over_ell == 0 {
            return domain("d, n_d and f_{λ/ℓ} must be positive");
        }
        if !is_prime(ell) {
            return domain(format!("{ell} is not prime"));
        }
        if d % ell == 0 {
            return domain(format!("ell = {ell} divides d = {d}"));
        }
        let f = mult_order(ell % d, d)?;
        let f_lambda = f / gcd(f, f_lambda_over_ell);
        Ok(Self { d, ell, n_d, f_lambda_over_ell, f, f_lambda })
    }

    /// States that can come from an actual profile: `n_d` is even when `d <= 2`.
    pub fn is_realizable(&self) -> bool {
        self.d > 2 || self.n_d % 2 == 0
    }
}

/// Truth values of the computable conditions of the implication chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// `-1 mod d` lies in the subgroup generated by `ell mod d`
    pub c2: bool,
    /// `2 | f` or `d <= 2`
    pub c6: bool,
    /// `2 | n_d·f`
    pub c7: bool,
    /// `n_d·f_λ·f_{λ/ℓ} != 1`
    pub c8: bool,
}

pub fn evaluate_conditions(state: &ConditionState) -> Conditions {
    let ConditionState { d, ell, n_d, f_lambda_over_ell, f, f_lambda } = *state;
    let minus_one = (d - 1) % d;
    let mut x = 1 % d;
    let mut c2 = false;
    for _ in 0..f {
        x = mul_mod(x, ell % d, d);
        if x == minus_one {
            c2 = true;
            break;
        }
    }
    Conditions {
        c2,
        c6: f % 2 == 0 || d <= 2,
        c7: (n_d * f) % 2 == 0,
        c8: n_d * f_lambda * f_lambda_over_ell != 1,
    }
}

/// Exhaustive check of `C2 ⇒ C6 ⇒ C7 ⇒ C8`, and of `C6 ⇔ C7` when `n_d = 1`,
/// over every realizable state in the given ranges. Returns the violating states.
pub fn chain_violations(
    max_d: u64,
    max_ell: u64,
    max_n_d: u64,
    max_f_lambda_over_ell: u64,
) -> Vec<(ConditionState, Conditions)> {
    let mut bad = Vec::new();
    for ell in crate::arith::primes_up_to(max_ell).iter() {
        for d in 1..=max_d {
            if d % ell == 0 {
                continue;
            }
            for n_d in 1..=max_n_d {
                for fl in 1..=max_f_lambda_over_ell {
                    let st = ConditionState::new(d, ell, n_d, fl).expect("valid state");
                    if !st.is_realizable() {
                        continue;
                    }
                    let c = evaluate_conditions(&st);
                    let chain = (!c.c2 || c.c6) && (!c.c6 || c.c7) && (!c.c7 || c.c8);
                    let reverse = n_d != 1 || c.c6 == c.c7;
                    if !(chain && reverse) {
                        bad.push((st, c));
                    }
                }
            }
        }
    }
    bad
}

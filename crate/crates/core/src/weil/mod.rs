//! Weil numbers and Frobenius polynomials.

mod certificates;
mod cyclo;
mod exponents;
mod forcing;
mod poly;

pub use certificates::{
    cubic_contradiction, mazur_contradiction, mazur_forced_trace, sixth_root_analysis, trace_window,
    Certificate, Step,
};
pub use cyclo::{min_poly_degree, CycloElement, TraceValue, WeilConfig};
pub use exponents::{mq_from_exponents, ExponentVector, MqExponents};
pub use forcing::{a2_forcing_check, least_prime_above_threshold, ForcingVerdict};
pub use poly::{power_charpoly, IntPolynomial};

/// All monic `T^2 - aT + q` with `|a| <= 2√q`.
pub fn elliptic_weil_polynomials(q: u64) -> Vec<IntPolynomial> {
    let mut a_max = 0i64;
    while ((a_max + 1) * (a_max + 1)) as u64 <= 4 * q {
        a_max += 1;
    }
    (-a_max..=a_max)
        .map(|a| IntPolynomial::from_descending(&[1, -a, q as i64]).expect("monic"))
        .collect()
}

//! Refutation certificates: each is the chain of forced facts ending in a
//! divisibility (or degree) requirement that fails.

use serde::Serialize;

use super::cyclo::{min_poly_degree, CycloElement, WeilConfig};
use crate::arith::{factorize, is_prime};
use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: String,
    pub statement: String,
    pub holds: bool,
}

impl Step {
    fn new(rule: &str, statement: impl Into<String>, holds: bool) -> Self {
        Self { rule: rule.to_string(), statement: statement.into(), holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub argument: String,
    pub steps: Vec<Step>,
    /// what the hypothesis would force; a valid refutation has this false
    pub requirement: Step,
}

impl Certificate {
    pub fn is_refutation(&self) -> bool {
        self.steps.iter().all(|s| s.holds) && !self.requirement.holds
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("{}\n", self.argument);
        for (k, st) in self.steps.iter().enumerate() {
            s.push_str(&format!(
                "  {}. [{}] {} ({})\n",
                k + 1,
                st.rule,
                st.statement,
                if st.holds { "holds" } else { "FAILS" }
            ));
        }
        s.push_str(&format!(
            "  requirement [{}] {}: {}\n",
            self.requirement.rule,
            self.requirement.statement,
            if self.requirement.holds { "satisfied" } else { "false, contradiction" }
        ));
        s
    }
}

/// Integers `a` with `|a| <= bound` and `a ≡ target (mod ell)`.
pub fn trace_window(bound: i128, target: i128, ell: u64) -> Vec<i128> {
    let ell = ell as i128;
    let start = -bound + (target + bound).rem_euclid(ell);
    (0..).map(|k| start + k * ell).take_while(|&a| a <= bound).collect()
}

/// The trace `a` with `a ≡ 2gq (mod ell)` and `|a| <= 2gq`, unique when `4gq < ell`.
pub fn mazur_forced_trace(g: u64, q: u64, ell: u64) -> Result<i128> {
    if g == 0 || q == 0 {
        return domain("g and q must be positive");
    }
    if 4 * (g as u128) * (q as u128) >= ell as u128 {
        return domain(format!("q = {q} is not below ell/(4g) = {ell}/{}", 4 * g));
    }
    let b = 2 * g as i128 * q as i128;
    let w = trace_window(b, b, ell);
    debug_assert_eq!(w, vec![b]);
    Ok(w[0])
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, f)] => Some((*p, *f)),
        _ => None,
    }
}

fn check_ell(ell: u64) -> Result<()> {
    if !is_prime(ell) {
        return domain(format!("{ell} is not prime"));
    }
    Ok(())
}

/// `chi(m_Q)(Frob) = 1` is impossible at a prime of norm `q = p^f`, `f` odd, `q < ell/(4g)`.
pub fn mazur_contradiction(g: u64, q: u64, f_odd: u64, ell: u64) -> Result<Certificate> {
    check_ell(ell)?;
    if f_odd % 2 == 0 {
        return domain(format!("f = {f_odd} must be odd"));
    }
    let (p, f) = prime_power(q).ok_or_else(|| crate::Error::Domain(format!("{q} is not a prime power")))?;
    if f as u64 != f_odd {
        return domain(format!("{q} = {p}^{f}, not a {f_odd}-th power of a prime"));
    }
    let a2 = mazur_forced_trace(g, q, ell)?;
    let two_g = 2 * g;
    let window = trace_window(a2, a2, ell);
    // s+ = s- = g copies of ±√q
    let mut kappa = [0u64; 12];
    kappa[0] = g;
    kappa[6] = g;
    let balanced = WeilConfig::new(q, kappa)?;
    let a1 = balanced.trace(1);
    let steps = vec![
        Step::new("hypothesis", format!("q = {p}^{f} with f odd"), true),
        Step::new("inequality", format!("4gq = {} < ell = {ell}", 4 * g * q), 4 * g * q < ell),
        Step::new(
            "window",
            format!("a_2 ≡ 2gq (mod {ell}) and |a_2| <= {a2} leave only a_2 = {a2}"),
            window == vec![a2],
        ),
        Step::new(
            "weil bound",
            format!("{two_g} eigenvalues of Frob^2 of absolute value q summing to {two_g}q are all equal to q"),
            true,
        ),
        Step::new(
            "parity",
            format!("√{q} is irrational, so Galois stability forces s+ = s- = {g}"),
            balanced.is_galois_stable() && prime_power(q).is_some_and(|(_, f)| f % 2 == 1),
        ),
        Step::new("trace", format!("a_1 = {a1}"), a1.is_zero()),
    ];
    let n = 4 * g as u128 * g as u128 * q as u128;
    let requirement = Step::new("divisibility", format!("ell = {ell} divides 4g^2 q = {n}"), n % ell as u128 == 0);
    Ok(Certificate { argument: format!("Frobenius at q = {q}, g = {g}, ell = {ell}"), steps, requirement })
}

/// Every Galois-stable multiset of `2g` numbers `η^t √p` satisfies the
/// sixth-root constraints and has vanishing odd traces.
fn mu6_stable_configs(g: u64, p: u64) -> Result<(usize, bool, bool)> {
    let total = 2 * g;
    let mut stable = 0usize;
    let mut constraints = true;
    let mut odd_zero = true;
    let mut k = [0u64; 6];
    loop {
        if k.iter().sum::<u64>() == total {
            let c = WeilConfig::mu6(p, k)?;
            if c.is_galois_stable() {
                stable += 1;
                constraints &= c.mu6_constraints() == Some(true);
                odd_zero &= c.trace(3).is_zero();
            }
        }
        let Some(pos) = (0..6).find(|&i| k[i] < total) else { break };
        k[pos] += 1;
        for x in &mut k[..pos] {
            *x = 0;
        }
    }
    Ok((stable, constraints, odd_zero))
}

/// `m_Q <= 6` is impossible: a prime `p` with `4gp^3 < ell` and `6 | ell - 1`.
pub fn sixth_root_analysis(g: u64, p: u64, ell: u64) -> Result<Certificate> {
    check_ell(ell)?;
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if (ell - 1) % 6 != 0 {
        return domain(format!("6 does not divide ell - 1 = {}", ell - 1));
    }
    let p3 = p.checked_pow(3).ok_or_else(|| crate::Error::Range(format!("{p}^3 overflows")))?;
    let a6 = mazur_forced_trace(g, p3, ell)?;
    let (stable, constraints, odd_zero) = mu6_stable_configs(g, p)?;
    let steps = vec![
        Step::new("inequality", format!("4gp^3 = {} < ell = {ell}", 4 * g * p3), 4 * g * p3 < ell),
        Step::new("congruence", format!("6 | ell - 1 = {}", ell - 1), true),
        Step::new(
            "window",
            format!("a_6 ≡ 2gp^3 (mod {ell}) and |a_6| <= {a6} leave only a_6 = {a6}"),
            trace_window(a6, a6, ell) == vec![a6],
        ),
        Step::new("weil bound", format!("all α^6 = {p3}, so α = η^t √{p}"), true),
        Step::new(
            "galois",
            format!("{stable} stable configurations, all with κ0 = κ3 and κ1 = κ2 = κ4 = κ5"),
            stable > 0 && constraints,
        ),
        Step::new("trace", "a_3 = 0 for every stable configuration", odd_zero),
    ];
    let n = 2 * g as u128 * p as u128;
    let requirement = Step::new("divisibility", format!("ell = {ell} divides 2gp = {n}"), n % ell as u128 == 0);
    Ok(Certificate { argument: format!("sixth roots at p = {p}, g = {g}, ell = {ell}"), steps, requirement })
}

/// Over a cubic base: `chi(2)(Frob) = 1` with `chi(6)(Frob)` of order 3 is
/// impossible for an elliptic Frobenius at `q = p^f`, `f` odd, `4q < ell`.
pub fn cubic_contradiction(q: u64, ell: u64) -> Result<Certificate> {
    check_ell(ell)?;
    let (p, f) = prime_power(q).ok_or_else(|| crate::Error::Domain(format!("{q} is not a prime power")))?;
    if f % 2 == 0 {
        return domain(format!("q = {p}^{f} must be an odd power of a prime"));
    }
    if 4 * q as u128 >= ell as u128 {
        return domain(format!("q = {q} is not below ell/4"));
    }
    let qi = q as i128;
    let window = trace_window(2 * qi, -qi, ell);
    // ζ^4 = ζ_3: check ζ_3 q is a root of T^2 + qT + q^2
    let qq = CycloElement::from_int(q as i64);
    let w = &CycloElement::zeta_pow(4) * &qq;
    let root_check = (&(&(&w * &w) + &(&qq * &w)) + &(&qq * &qq)).is_zero();
    let w2 = &CycloElement::zeta_pow(8) * &qq;
    let root_check2 = (&(&(&w2 * &w2) + &(&qq * &w2)) + &(&qq * &qq)).is_zero();
    let degrees: Vec<u64> = [2u64, 4, 8, 10].iter().map(|&t| min_poly_degree(t, p)).collect::<Result<_>>()?;
    let steps = vec![
        Step::new("inequality", format!("4q = {} < ell = {ell}", 4 * q), true),
        Step::new(
            "window",
            format!("a_2 ≡ -q (mod {ell}) and |a_2| <= {} leave only a_2 = -{q}", 2 * q),
            window == vec![-qi],
        ),
        Step::new(
            "roots",
            format!("Frob^2 eigenvalues are the roots ζ_3 q, ζ_3^2 q of T^2 + {q}T + {}", q * q),
            root_check && root_check2,
        ),
        Step::new(
            "degree",
            format!("Frob eigenvalues ±ζ_3 √{q}, ±ζ_3^2 √{q} have degrees {degrees:?} over Q"),
            degrees.iter().all(|&d| d == 4),
        ),
    ];
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    let requirement = Step::new("degree", format!("eigenvalue degree {max_deg} <= 2"), max_deg <= 2);
    Ok(Certificate { argument: format!("cubic base at q = {q}, ell = {ell}"), steps, requirement })
}

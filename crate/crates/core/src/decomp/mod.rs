//! The inertia-decomposition sieve.
//!
//! Profiles `2g = sum n_d·phi(d)` are enumerated, then filtered through the
//! divisibility constraints on the semistability index `e`, the admissible
//! values of `m_Q`, and the `C8` pruning rule. Survivors come out with the
//! congruence class they force on `ell`. Every elimination is recorded.

mod conditions;
mod profile;

pub use conditions::{chain_violations, evaluate_conditions, ConditionState, Conditions};
pub use profile::{candidate_ds, enumerate_profiles, Profile, MAX_ENUMERATION_G};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, factorize, is_prime, valuation, CongruenceClass};
use crate::error::{domain, precondition, Result};
use crate::gl_orders::u_p;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    Rational,
    General,
}

/// What is known about the base field `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldContext {
    pub base: Base,
    pub n_k: u64,
    pub semistable: bool,
    /// index of `chi(G_K)` in `F_ell^x`; divides `n_K`
    pub delta: Option<u64>,
}

impl FieldContext {
    pub fn rational() -> Self {
        Self { base: Base::Rational, n_k: 1, semistable: false, delta: None }
    }

    pub fn general(n_k: u64) -> Result<Self> {
        Self { base: Base::General, n_k, semistable: false, delta: None }.validated()
    }

    pub fn with_semistable(mut self, semistable: bool) -> Self {
        self.semistable = semistable;
        self
    }

    pub fn with_delta(mut self, delta: u64) -> Result<Self> {
        self.delta = Some(delta);
        self.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if self.n_k == 0 {
            return domain("n_K must be at least 1");
        }
        if self.base == Base::Rational && self.n_k != 1 {
            return domain("the rational base has n_K = 1");
        }
        if let Some(delta) = self.delta {
            if delta == 0 || self.n_k % delta != 0 {
                return domain(format!("delta = {delta} must divide n_K = {}", self.n_k));
            }
        }
        Ok(self)
    }

    pub fn is_rational(&self) -> bool {
        self.base == Base::Rational
    }
}

/// True when `e | M'(2g)·n_K`, checked prime by prime.
fn divides_m_prime_times(e: u64, g: u64, n_k: u64) -> bool {
    factorize(e).into_iter().all(|(p, k)| {
        let allowed = u_p(2 * g, p).unwrap() + valuation(n_k, p);
        k <= allowed
    })
}

/// Candidate values of `e` for a profile.
///
/// Over `Q`, `e = e'`. Over a general base, `e = e'·e_{λ/ℓ}` with the
/// ramification index ranging over divisors of `n_K`. Semistable mode pins
/// the abelian part of the index to 1.
pub fn admissible_e(profile: &Profile, ctx: &FieldContext) -> Vec<u64> {
    let e_a = if ctx.semistable {
        if profile.e_prime() != 1 {
            return Vec::new();
        }
        1
    } else {
        profile.e_prime()
    };
    let ramification: Vec<u64> = if ctx.is_rational() { vec![1] } else { divisors(ctx.n_k) };
    let mut out: Vec<u64> = ramification
        .into_iter()
        .map(|r| e_a * r)
        .filter(|&e| e % 4 == 0 && divides_m_prime_times(e, profile.g(), ctx.n_k))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Even divisors `m` of `e/2`, restricted to `m > 6` over `Q`.
pub fn mq_candidates(e: u64, ctx: &FieldContext) -> Result<Vec<u64>> {
    if e == 0 || e % 4 != 0 {
        return domain(format!("4 does not divide e = {e}"));
    }
    Ok(divisors(e / 2)
        .into_iter()
        .filter(|m| m % 2 == 0)
        .filter(|&m| !ctx.is_rational() || m > 6)
        .collect())
}

/// A `d` with `n_d = 1` and `d | m`, if any. Such a `d` divides `ell - 1`,
/// so `ell` has order 1 mod `d` and `C8` fails there.
pub fn c8_witness(profile: &Profile, m: u64) -> Option<u64> {
    profile.counts().iter().find(|&(&d, &n)| n == 1 && m % d == 0).map(|(&d, _)| d)
}

/// Whether the pair `(profile, m)` is eliminated by `C8`. Only valid over `Q`,
/// where `f_{λ/ℓ} = 1`.
pub fn prune_c8(profile: &Profile, m: u64, ctx: &FieldContext) -> Result<bool> {
    if !ctx.is_rational() {
        return precondition("the C8 pruning rule needs f_{λ/ℓ} = 1, i.e. the rational base");
    }
    Ok(c8_witness(profile, m).is_some())
}

/// The class of `ell` with `m | ell - 1` and `v_2(ell - 1) = v_2(m)`.
pub fn derive_congruence(m: u64) -> Result<CongruenceClass> {
    if m == 0 || m % 2 == 1 {
        return domain(format!("m = {m} must be even"));
    }
    let v = valuation(m, 2);
    let two_part = 1u64 << (v + 1);
    let divisible = CongruenceClass::single(m, 1)?;
    let exact_two = CongruenceClass::single(two_part, (1u64 << v) + 1)?;
    Ok(divisible.intersect(&exact_two))
}

/// Every prime divisor `p` of `e'` satisfies `p <= 2·max g_d + 1`.
pub fn prime_factor_bound_check(profile: &Profile) -> bool {
    let max_gd = profile.g_d().values().copied().max().unwrap_or(0);
    factorize(profile.e_prime()).into_iter().all(|(p, _)| p <= 2 * max_gd + 1)
}

/// True when semistable members are forced out for large `ell`, i.e. `4 ∤ n_K`.
pub fn semistable_uniform_check(n_k: u64) -> Result<bool> {
    if n_k == 0 {
        return domain("n_K must be at least 1");
    }
    Ok(n_k % 4 != 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurvivorReport {
    pub profile: Profile,
    pub e: u64,
    pub m_q: u64,
    pub constraint: CongruenceClass,
}

/// Why a profile (or one of its `(e, m)` branches) stopped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// no candidate `e`: `4 ∤ e`, or `e ∤ M'(2g)·n_K`, or semistability forces `e' = 1`
    NoAdmissibleE,
    /// every even divisor of `e/2` is at most 6 (over `Q`), or there is none
    NoMqCandidate { e: u64 },
    /// `n_d = 1` and `d | m`, contradicting `C8`
    C8 { e: u64, m: u64, d: u64 },
    Survived { e: u64, m: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub profile: Profile,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Analysis {
    pub g: u64,
    pub context: FieldContext,
    pub profiles_enumerated: usize,
    /// profiles with at least one admissible `e`
    pub admitted: Vec<Profile>,
    pub survivors: Vec<SurvivorReport>,
    /// profiles that had at least one `m_Q` candidate
    pub exceptions: Vec<Profile>,
    pub audit: Vec<AuditEntry>,
}

fn analyze_profile(profile: &Profile, ctx: &FieldContext) -> Result<(Vec<AuditEntry>, Vec<SurvivorReport>)> {
    let mut audit = Vec::new();
    let mut survivors = Vec::new();
    let es = admissible_e(profile, ctx);
    if es.is_empty() {
        audit.push(AuditEntry { profile: profile.clone(), rule: Rule::NoAdmissibleE });
    }
    for e in es {
        let ms = mq_candidates(e, ctx)?;
        if ms.is_empty() {
            audit.push(AuditEntry { profile: profile.clone(), rule: Rule::NoMqCandidate { e } });
        }
        for m in ms {
            if ctx.is_rational() {
                if let Some(d) = c8_witness(profile, m) {
                    audit.push(AuditEntry { profile: profile.clone(), rule: Rule::C8 { e, m, d } });
                    continue;
                }
            }
            audit.push(AuditEntry { profile: profile.clone(), rule: Rule::Survived { e, m } });
            survivors.push(SurvivorReport {
                profile: profile.clone(),
                e,
                m_q: m,
                constraint: derive_congruence(m)?,
            });
        }
    }
    Ok((audit, survivors))
}

/// Runs the whole sieve for dimension `g`.
pub fn analyze(g: u64, ctx: &FieldContext) -> Result<Analysis> {
    let ctx = ctx.validated()?;
    let profiles = enumerate_profiles(g)?;
    let per_profile: Vec<_> = profiles
        .par_iter()
        .map(|p| analyze_profile(p, &ctx))
        .collect::<Result<_>>()?;
    let mut audit = Vec::new();
    let mut survivors = Vec::new();
    let mut exceptions = Vec::new();
    let mut admitted = Vec::new();
    for (p, (a, s)) in profiles.iter().zip(per_profile) {
        if a.iter().any(|e| !matches!(e.rule, Rule::NoAdmissibleE)) {
            admitted.push(p.clone());
        }
        if a.iter().any(|e| matches!(e.rule, Rule::C8 { .. } | Rule::Survived { .. })) {
            exceptions.push(p.clone());
        }
        audit.extend(a);
        survivors.extend(s);
    }
    Ok(Analysis { g, context: ctx, profiles_enumerated: profiles.len(), admitted, survivors, exceptions, audit })
}

impl Analysis {
    /// Plain-text rendering used by the CLI.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let ctx = &self.context;
        let mut s = String::new();
        let base = if ctx.is_rational() { "rational" } else { "general" };
        writeln!(
            s,
            "decomposition sieve: g = {}, base = {base}, n_K = {}, semistable = {}",
            self.g, ctx.n_k, ctx.semistable
        )
        .unwrap();
        writeln!(s, "profiles enumerated: {}", self.profiles_enumerated).unwrap();
        writeln!(s, "profiles with admissible e: {}", self.admitted.len()).unwrap();
        for p in &self.admitted {
            let es: Vec<String> = self
                .audit
                .iter()
                .filter(|a| &a.profile == p)
                .filter_map(|a| match a.rule {
                    Rule::NoMqCandidate { e } | Rule::C8 { e, .. } | Rule::Survived { e, .. } => Some(e),
                    Rule::NoAdmissibleE => None,
                })
                .fold(Vec::new(), |mut v, e| {
                    if !v.contains(&e) {
                        v.push(e);
                    }
                    v
                })
                .iter()
                .map(u64::to_string)
                .collect();
            writeln!(s, "  {p}  (e = {})", es.join(", ")).unwrap();
        }
        writeln!(s, "profiles reaching the m_Q stage: {}", self.exceptions.len()).unwrap();
        for p in &self.exceptions {
            writeln!(s, "  {p}").unwrap();
            for entry in self.audit.iter().filter(|a| &a.profile == p) {
                match &entry.rule {
                    Rule::C8 { e, m, d } => writeln!(
                        s,
                        "    e = {e}, m_Q = {m}: eliminated by C8 (n_{d} = 1 and {d} | {m})"
                    ),
                    Rule::Survived { e, m } => writeln!(s, "    e = {e}, m_Q = {m}: survives"),
                    Rule::NoMqCandidate { e } => {
                        writeln!(s, "    e = {e}: no admissible m_Q")
                    }
                    Rule::NoAdmissibleE => Ok(()),
                }
                .unwrap();
            }
        }
        writeln!(s, "survivors: {}", self.survivors.len()).unwrap();
        for r in &self.survivors {
            writeln!(
                s,
                "  {}  e = {}  m_Q = {}  ℓ ≡ {}",
                r.profile, r.e, r.m_q, r.constraint
            )
            .unwrap();
        }
        s
    }
}

/// Survivors of the rational `g = 4` sieve, in tabulation order
/// (descending list of `d`).
pub fn g4_table() -> Result<Vec<SurvivorReport>> {
    let mut rows = analyze(4, &FieldContext::rational())?.survivors;
    rows.sort_by_key(|r| r.profile.tabulation_key());
    Ok(rows)
}

pub fn render_table(rows: &[SurvivorReport]) -> String {
    let width = rows
        .iter()
        .map(|r| r.profile.sum_string().chars().count())
        .max()
        .unwrap_or(3)
        .max(3);
    let mut s = format!("{:<width$}   Congruence\n", "Sum");
    for r in rows {
        s.push_str(&format!("{:<width$}   ℓ ≡ {}\n", r.profile.sum_string(), r.constraint));
    }
    s
}

/// Least prime in a congruence class, skipping those dividing `avoid`.
pub fn least_prime_in(class: &CongruenceClass, avoid: u64) -> Option<u64> {
    (2..10_000_000u64).find(|&x| class.contains(x) && is_prime(x) && avoid % x != 0)
}

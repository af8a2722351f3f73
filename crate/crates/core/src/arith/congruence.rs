use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::factorize;
use crate::error::{domain, Result};

/// A set of residue classes modulo a single modulus, stored fully enumerated.
///
/// Values are always canonical: the modulus is the smallest one that
/// describes the same set of integers, and the empty set is `(1, {})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CongruenceClass {
    modulus: u64,
    residues: BTreeSet<u64>,
}

impl CongruenceClass {
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return domain("modulus must be at least 1");
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if let Some(&r) = residues.iter().find(|&&r| r >= modulus) {
            return domain(format!("residue {r} is not reduced modulo {modulus}"));
        }
        Ok(Self::canonical(modulus, residues))
    }

    /// The class `x = residue (mod modulus)`; the residue is reduced first.
    pub fn single(modulus: u64, residue: u64) -> Result<Self> {
        if modulus == 0 {
            return domain("modulus must be at least 1");
        }
        Self::new(modulus, [residue % modulus])
    }

    pub fn universal() -> Self {
        Self { modulus: 1, residues: BTreeSet::from([0]) }
    }

    pub fn empty() -> Self {
        Self { modulus: 1, residues: BTreeSet::new() }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.residues.contains(&(x % self.modulus))
    }

    fn canonical(mut modulus: u64, mut residues: BTreeSet<u64>) -> Self {
        if residues.is_empty() {
            return Self::empty();
        }
        'reduce: loop {
            for (p, _) in factorize(modulus) {
                let smaller = modulus / p;
                let full = residues
                    .iter()
                    .all(|&r| (0..p).all(|k| residues.contains(&((r + k * smaller) % modulus))));
                if full {
                    residues = residues.iter().map(|r| r % smaller).collect();
                    modulus = smaller;
                    continue 'reduce;
                }
            }
            break;
        }
        Self { modulus, residues }
    }

    /// Integers lying in both classes.
    pub fn intersect(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let g = self.modulus.gcd(&other.modulus);
        let lcm = self.modulus / g * other.modulus;
        let mut out = BTreeSet::new();
        for &a in &self.residues {
            for &b in &other.residues {
                if let Some(x) = crt_pair(a, self.modulus, b, other.modulus, g, lcm) {
                    out.insert(x);
                }
            }
        }
        Self::canonical(lcm, out)
    }
}

/// Combines `x = a (mod m)` and `x = b (mod n)`; `g = gcd(m, n)`, `l = lcm(m, n)`.
fn crt_pair(a: u64, m: u64, b: u64, n: u64, g: u64, l: u64) -> Option<u64> {
    let diff = b as i128 - a as i128;
    if diff.rem_euclid(g as i128) != 0 {
        return None;
    }
    let m_g = (m / g) as i128;
    let n_g = (n / g) as i128;
    let inv = if n_g == 1 { 0 } else { mod_inverse(m_g.rem_euclid(n_g), n_g) };
    let t = ((diff / g as i128).rem_euclid(n_g) * inv).rem_euclid(n_g.max(1));
    Some(((a as i128 + m as i128 * t).rem_euclid(l as i128)) as u64)
}

fn mod_inverse(a: i128, n: i128) -> i128 {
    let ext = a.extended_gcd(&n);
    debug_assert_eq!(ext.gcd, 1);
    ext.x.rem_euclid(n)
}

/// Intersection of two congruence classes.
pub fn crt_intersect(c1: &CongruenceClass, c2: &CongruenceClass) -> CongruenceClass {
    c1.intersect(c2)
}

impl fmt::Display for CongruenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(no residues)");
        }
        let rs: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        if rs.len() == 1 {
            write!(f, "{} (mod {})", rs[0], self.modulus)
        } else {
            write!(f, "{{{}}} (mod {})", rs.join(", "), self.modulus)
        }
    }
}

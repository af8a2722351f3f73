use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith::{euler_phi, lcm};
use crate::error::{domain, range, Result};

/// Largest dimension accepted by [`enumerate_profiles`].
pub const MAX_ENUMERATION_G: u64 = 12;

/// A solution `{n_d}` of `2g = sum_d n_d·phi(d)`.
///
/// Each `n_d` is the rank of the `d`-isotypic piece and splits as an
/// abelian part plus a toric part; only the total is tracked here, since no
/// computation below constrains the split.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Profile {
    g: u64,
    counts: BTreeMap<u64, u64>,
    e_prime: u64,
    g_d: BTreeMap<u64, u64>,
}

impl Profile {
    /// Builds a profile from `d -> n_d`; zero counts are dropped.
    pub fn new(counts: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let counts: BTreeMap<u64, u64> = counts.into_iter().filter(|&(_, n)| n > 0).collect();
        if counts.is_empty() {
            return domain("a profile needs at least one d with n_d > 0");
        }
        let mut total = 0u64;
        let mut e_prime = 1u64;
        let mut g_d = BTreeMap::new();
        for (&d, &n) in &counts {
            if d == 0 {
                return domain("d must be positive");
            }
            if d <= 2 && n % 2 == 1 {
                return domain(format!("n_{d} = {n} must be even for d <= 2"));
            }
            let dim = n * euler_phi(d)?;
            if dim % 2 == 1 {
                return domain(format!("n_{d}·phi({d}) is odd"));
            }
            g_d.insert(d, dim / 2);
            total += dim;
            e_prime = lcm(e_prime, d);
        }
        Ok(Self { g: total / 2, counts, e_prime, g_d })
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn n_d(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    pub fn e_prime(&self) -> u64 {
        self.e_prime
    }

    /// `g_d` with `2·g_d = n_d·phi(d)`.
    pub fn g_d(&self) -> &BTreeMap<u64, u64> {
        &self.g_d
    }

    pub fn ds(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied()
    }

    /// Canonical order: by `e'`, then the `(d, n_d)` list lexicographically.
    pub fn sort_key(&self) -> (u64, Vec<(u64, u64)>) {
        (self.e_prime, self.counts.iter().map(|(&d, &n)| (d, n)).collect())
    }

    /// Ordering by the descending list of `d`s, the way sums are usually tabulated.
    pub fn tabulation_key(&self) -> Vec<(u64, u64)> {
        self.counts.iter().rev().map(|(&d, &n)| (d, n)).collect()
    }

    /// The sum written out, e.g. `2φ(3) + φ(8)`.
    pub fn sum_string(&self) -> String {
        self.counts
            .iter()
            .map(|(d, n)| if *n == 1 { format!("φ({d})") } else { format!("{n}φ({d})") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sum_string())
    }
}

/// Every `d` that can appear in a profile of dimension `g`.
pub fn candidate_ds(g: u64) -> Vec<u64> {
    // phi(d) >= sqrt(d/2), so phi(d) <= 2g forces d <= 2(2g)^2
    let bound = 2 * (2 * g) * (2 * g) + 2;
    (1..=bound).filter(|&d| euler_phi(d).unwrap() <= 2 * g).collect()
}

/// All profiles of dimension `g`, in canonical order.
pub fn enumerate_profiles(g: u64) -> Result<Vec<Profile>> {
    if g == 0 || g > MAX_ENUMERATION_G {
        return range(format!("g = {g} outside 1..={MAX_ENUMERATION_G}"));
    }
    let parts: Vec<(u64, u64)> = candidate_ds(g)
        .into_iter()
        .map(|d| (d, euler_phi(d).unwrap()))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fill(&parts, 0, 2 * g, &mut chosen, &mut out);
    let mut profiles: Vec<Profile> =
        out.into_iter().map(|c| Profile::new(c).expect("enumerated profile is valid")).collect();
    profiles.sort_by_key(Profile::sort_key);
    Ok(profiles)
}

fn fill(
    parts: &[(u64, u64)],
    idx: usize,
    remaining: u64,
    chosen: &mut Vec<(u64, u64)>,
    out: &mut Vec<Vec<(u64, u64)>>,
) {
    if remaining == 0 {
        out.push(chosen.clone());
        return;
    }
    if idx == parts.len() {
        return;
    }
    let (d, phi) = parts[idx];
    let step = if d <= 2 { 2 } else { 1 };
    let mut n = 0;
    while n * phi <= remaining {
        if n > 0 {
            chosen.push((d, n));
        }
        fill(parts, idx + 1, remaining - n * phi, chosen, out);
        if n > 0 {
            chosen.pop();
        }
        n += step;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(u64, u64)]) -> Profile {
        Profile::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn g1_profiles() {
        let ps = enumerate_profiles(1).unwrap();
        let mut got: Vec<_> = ps.iter().map(|p| p.counts().clone()).collect();
        got.sort();
        let mut want: Vec<BTreeMap<u64, u64>> = [(1, 2), (2, 2), (3, 1), (4, 1), (6, 1)]
            .iter()
            .map(|&(d, n)| BTreeMap::from([(d, n)]))
            .collect();
        want.sort();
        assert_eq!(got, want);
        let four: Vec<_> = ps.iter().filter(|p| p.e_prime() % 4 == 0).collect();
        assert_eq!(four.len(), 1);
        assert_eq!(four[0], &p(&[(4, 1)]));
    }

    #[test]
    fn g2_candidate_set() {
        assert_eq!(candidate_ds(2), vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
    }

    #[test]
    fn brute_force_count_matches() {
        // independent count: all assignments over the candidate set
        for g in 1..=4u64 {
            let ds = candidate_ds(g);
            let mut count = 0;
            let mut stack = vec![(0usize, 0u64)];
            while let Some((i, used)) = stack.pop() {
                if i == ds.len() {
                    if used == 2 * g {
                        count += 1;
                    }
                    continue;
                }
                let phi = euler_phi(ds[i]).unwrap();
                for n in 0..=(2 * g) {
                    if used + n * phi > 2 * g {
                        break;
                    }
                    if ds[i] <= 2 && n % 2 == 1 {
                        continue;
                    }
                    stack.push((i + 1, used + n * phi));
                }
            }
            assert_eq!(enumerate_profiles(g).unwrap().len(), count, "g = {g}");
        }
    }

    #[test]
    fn invariants_hold() {
        for g in 1..=6 {
            for prof in enumerate_profiles(g).unwrap() {
                let total: u64 =
                    prof.counts().iter().map(|(&d, &n)| n * euler_phi(d).unwrap()).sum();
                assert_eq!(total, 2 * g);
                let l = prof.ds().fold(1, lcm);
                assert_eq!(l, prof.e_prime());
                for (&d, &n) in prof.counts() {
                    if d <= 2 {
                        assert_eq!(n % 2, 0);
                    }
                    assert_eq!(2 * prof.g_d()[&d], n * euler_phi(d).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Profile::new([(1, 1)]).is_err());
        assert!(Profile::new([]).is_err());
        assert!(enumerate_profiles(0).is_err());
        assert!(enumerate_profiles(13).is_err());
    }

    #[test]
    fn sum_rendering() {
        assert_eq!(p(&[(3, 2), (8, 1)]).sum_string(), "2φ(3) + φ(8)");
        assert_eq!(p(&[(24, 1)]).to_string(), "φ(24)");
    }
}

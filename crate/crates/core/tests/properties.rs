//! Invariants checked against brute-force or structurally different oracles.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use torsieve::arith::{euler_phi, mult_order, primes_up_to, smallest_prime_mth_residue};
use torsieve::bounds::{a2_threshold, lambert_w_m1, lower_bound_l};
use torsieve::decomp::{self, enumerate_profiles, prime_factor_bound_check, FieldContext};
use torsieve::gl_orders::{gl_order, m_prime, oracle_primes};
use torsieve::quadfam::{discriminant_norm_is_two_power, epsilon, j_invariant, LegendreCurve};
use torsieve::residues::{is_fundamental_discriminant, QuadraticField};
use torsieve::weil::{
    a2_forcing_check, elliptic_weil_polynomials, least_prime_above_threshold, power_charpoly, ForcingVerdict,
    IntPolynomial, WeilConfig,
};

// arith

#[test]
fn totient_by_counting() {
    for n in 1..=10_000u64 {
        let direct = (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64;
        assert_eq!(euler_phi(n).unwrap(), direct, "n = {n}");
    }
}

#[test]
fn order_divides_totient() {
    for n in 2..=500u64 {
        let phi = euler_phi(n).unwrap();
        for a in (1..n).filter(|a| a.gcd(&n) == 1) {
            assert_eq!(phi % mult_order(a, n).unwrap(), 0, "a = {a}, n = {n}");
        }
    }
}

#[test]
fn residue_depends_on_gcd_only() {
    for ell in primes_up_to(1000).iter().filter(|&l| l > 2) {
        for m in 1..=24u64 {
            assert_eq!(
                smallest_prime_mth_residue(m, ell).unwrap(),
                smallest_prime_mth_residue(m.gcd(&(ell - 1)), ell).unwrap(),
                "m = {m}, ell = {ell}"
            );
        }
    }
}

// gl-orders

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[test]
fn mprime_divides_every_gl_order() {
    for n in 1..=6u64 {
        let m = m_prime(n).unwrap().value;
        for q in primes_up_to(50).iter().filter(|&q| q > 2 && !(2 * factorial(n)).is_multiple_of(q)) {
            assert!((gl_order(n, q).unwrap() % &m).is_zero(), "n = {n}, q = {q}");
        }
    }
}

#[test]
fn mprime_is_the_gcd() {
    for n in 1..=6u64 {
        let g = oracle_primes(n, 8)
            .into_iter()
            .fold(BigUint::zero(), |acc, q| acc.gcd(&gl_order(n, q).unwrap()));
        assert_eq!(g, m_prime(n).unwrap().value, "n = {n}");
    }
}

#[test]
fn mprime_prime_factors_are_small() {
    for g in 1..=6u64 {
        let m = m_prime(2 * g).unwrap();
        assert!(m.largest_prime().unwrap() <= 2 * g + 1, "g = {g}");
    }
}

// decomp

#[test]
fn profiles_respect_parity_and_prime_bound() {
    for g in 1..=6u64 {
        for p in enumerate_profiles(g).unwrap() {
            for (&d, &n) in p.counts() {
                assert!(d > 2 || n % 2 == 0, "{p}");
            }
            assert!(prime_factor_bound_check(&p), "{p}");
        }
    }
}

#[test]
fn survivor_shape() {
    assert!(decomp::analyze(1, &FieldContext::rational()).unwrap().survivors.is_empty());
    for g in 1..=6u64 {
        let a = decomp::analyze(g, &FieldContext::rational()).unwrap();
        for r in &a.survivors {
            assert!(r.m_q % 2 == 0 && (r.e / 2) % r.m_q == 0 && r.m_q > 6, "{r:?}");
        }
    }
}

// bounds

#[test]
fn lambert_residual_on_grid() {
    let lo = -(-1.0f64).exp();
    for k in 0..1000 {
        let x = lo + (-1e-6 - lo) * k as f64 / 999.0;
        let w = lambert_w_m1(x).unwrap();
        assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs(), "x = {x}, w = {w}");
        assert!(w <= -1.0);
    }
}

#[test]
fn lambert_sandwich() {
    let lo = -(-1.0f64).exp();
    for k in 0..1000 {
        let x = lo + (-1e-3 - lo) * k as f64 / 1000.0;
        let w = lambert_w_m1(x).unwrap();
        assert!(lower_bound_l(x).unwrap() <= w && w <= -1.0, "x = {x}");
    }
}

proptest! {
    #[test]
    fn a2_threshold_dominates_first_term(g in 1u64..5, q0 in 2u64..8, e in 1u64..5) {
        let t = a2_threshold(g, q0, e).unwrap();
        let q = BigUint::from(q0);
        let full = q.pow(e as u32);
        let root = full.sqrt();
        let half = if &root * &root == full { root } else { root + 1u32 };
        let first = BigUint::from(2 * g) * (full + half);
        prop_assert!(t >= first);
        prop_assert!(t > BigUint::from(2 * g + 1));
    }
}

// residues

/// Number of roots mod `p` of the minimal polynomial of the ring of integers.
fn min_poly_roots(disc: i64, p: u64) -> usize {
    let p = p as i64;
    (0..p)
        .filter(|&x| {
            let v = if disc.rem_euclid(4) == 0 { x * x - disc / 4 } else { x * x - x - (disc - 1) / 4 };
            v.rem_euclid(p) == 0
        })
        .count()
}

#[test]
fn splitting_matches_factorization() {
    for d in (-40..=40i64).filter(|&d| d != 0 && d != 1 && is_fundamental_discriminant(d).unwrap()) {
        let k = QuadraticField::new(d).unwrap();
        for p in primes_up_to(500).iter() {
            assert_eq!(k.splits(p), min_poly_roots(d, p) == 2, "disc = {d}, p = {p}");
        }
    }
}

// weil

/// `det(T I - C^e)` for the companion matrix `C` of `p`, by Faddeev-LeVerrier.
fn charpoly_of_power(p: &IntPolynomial, e: u64) -> Vec<BigInt> {
    let c = p.coeffs();
    let n = c.len() - 1;
    let mut comp = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        comp[i][i - 1] = BigInt::one();
    }
    for i in 0..n {
        comp[i][n - 1] = -c[i].clone();
    }
    let mul = |a: &Vec<Vec<BigInt>>, b: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
            .collect()
    };
    let mut a = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    for _ in 0..e {
        a = mul(&a, &comp);
    }
    let mut out = vec![BigInt::zero(); n + 1];
    out[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(&a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &out[n - k + 1];
        }
        m = next;
        let am = mul(&a, &m);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        out[n - k] = -tr / BigInt::from(k);
    }
    out
}

fn monic(coeffs: Vec<i64>) -> IntPolynomial {
    let mut desc = vec![1];
    desc.extend(coeffs);
    IntPolynomial::from_descending(&desc).unwrap()
}

fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
    prop_oneof![
        prop::collection::vec(-20i64..=20, 2),
        prop::collection::vec(-20i64..=20, 4),
    ]
    .prop_map(monic)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn power_charpoly_matches_companion(p in poly_strategy(), e in 1u64..=6) {
        let got = power_charpoly(&p, e).unwrap();
        prop_assert_eq!(got.coeffs().to_vec(), charpoly_of_power(&p, e));
    }

    #[test]
    fn power_charpoly_composes(p in poly_strategy(), a in 1u64..=4, b in 1u64..=4) {
        let twice = power_charpoly(&power_charpoly(&p, a).unwrap(), b).unwrap();
        prop_assert_eq!(twice, power_charpoly(&p, a * b).unwrap());
    }
}

#[test]
fn forcing_over_small_fields() {
    for q in [2u64, 3, 4, 5] {
        for p in elliptic_weil_polynomials(q) {
            let a: BigInt = -p.coeffs()[1].clone();
            for e in [2u64, 4] {
                // α^e = q^{e/2} for both roots iff α^e + ᾱ^e = 2 q^{e/2}
                let (mut s0, mut s1) = (BigInt::from(2), a.clone());
                for _ in 1..e {
                    let s2 = &a * &s1 - BigInt::from(q) * &s0;
                    s0 = s1;
                    s1 = s2;
                }
                let forced = s1 == BigInt::from(2) * BigInt::from(q).pow(e as u32 / 2);
                let ell = least_prime_above_threshold(1, q, e).unwrap();
                match a2_forcing_check(&p, q, e, ell).unwrap() {
                    ForcingVerdict::Forced { j, equal_in_z, all_half, .. } => {
                        assert!(forced && equal_in_z && all_half, "{p} e={e} j={j:?}");
                    }
                    ForcingVerdict::Refuted { .. } => assert!(!forced, "{p} e={e}"),
                }
            }
        }
    }
}

/// `q` with `√q` outside `Q(ζ_12)`: neither a square nor three times a square.
fn sqrt_outside_cyclotomic(q: u64) -> bool {
    let is_sq = |x: u64| {
        let r = (x as f64).sqrt().round() as u64;
        r * r == x
    };
    !is_sq(q) && !(q.is_multiple_of(3) && is_sq(q / 3))
}

proptest! {
    #[test]
    fn stable_traces(kappa in prop::array::uniform12(0u64..3), q in prop::sample::select(vec![2u64, 5, 7, 8, 11, 13])) {
        prop_assume!(kappa.iter().sum::<u64>() > 0);
        let cfg = WeilConfig::new(q, kappa).unwrap();
        if cfg.is_galois_stable() {
            for n in 1..=12u64 {
                let t = cfg.trace(n);
                if n % 2 == 1 {
                    prop_assert!(t.is_zero(), "n = {}", n);
                } else {
                    prop_assert!(t.as_integer().is_some(), "n = {}", n);
                }
            }
        }
    }

    #[test]
    fn stable_mu6_traces(k in prop::array::uniform6(0u64..3), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assume!(k.iter().sum::<u64>() > 0);
        let cfg = WeilConfig::mu6(p, k).unwrap();
        if cfg.is_galois_stable() {
            for n in (1..=11u64).step_by(2) {
                prop_assert!(cfg.trace(n).is_zero());
            }
        }
    }
}

#[test]
fn odd_traces_need_sqrt_outside_cyclotomic() {
    assert!(sqrt_outside_cyclotomic(2) && !sqrt_outside_cyclotomic(3) && !sqrt_outside_cyclotomic(4));
    // ζ√3 = 1 + ζ^2: with its conjugate this is stable and a_1 = 3
    let mut kappa = [0u64; 12];
    kappa[1] = 1;
    kappa[11] = 1;
    let cfg = WeilConfig::new(3, kappa).unwrap();
    assert!(cfg.is_galois_stable());
    assert_eq!(cfg.trace(1).as_integer(), Some(BigInt::from(3)));
}

// quadfam

#[test]
fn family_units_and_discriminants() {
    for i in 0..=10u64 {
        let e = epsilon(i).unwrap();
        assert_eq!(e.norm(), (-BigInt::one()).into(), "i = {i}");
        assert!(discriminant_norm_is_two_power(i).unwrap(), "i = {i}");
    }
}

#[test]
fn family_j_in_distinct_fields() {
    let js: Vec<_> = (0..=10u64).map(|i| j_invariant(&LegendreCurve::family(i).unwrap())).collect();
    for (a, x) in js.iter().enumerate() {
        for y in &js[a + 1..] {
            if x.d() == y.d() {
                assert!(x.a() != y.a() || x.b() != y.b());
            } else {
                // irrational parts in different fields cannot agree
                assert!(!x.b().is_zero() && !y.b().is_zero());
            }
        }
    }
}

#[test]
fn j_is_symmetric_under_one_minus_lambda() {
    for i in 0..=6u64 {
        let c = LegendreCurve::family(i).unwrap();
        let one = torsieve::quadfam::QuadRat::rational(num_rational::BigRational::one(), c.lambda().d());
        let flipped = LegendreCurve::new(&one - c.lambda()).unwrap();
        assert_eq!(j_invariant(&c), j_invariant(&flipped));
        assert!(!j_invariant(&c).b().abs().is_zero());
    }
}

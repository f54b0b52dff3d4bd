//! Structural properties checked on random inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use divexp::arith::{
    carmichael, characters, decompose, factorize, gcd, is_prime, multiplicative_order, pow_mod, ModulusContext,
};
use divexp::expsum::{s_sum, t_exact, EvalOptions};
use divexp::harness::geometric_grid;
use divexp::mainterm::{h_series, main_term, tau_cong_tail, zeta_int_with_cutoff};
use divexp::sieve::{count_m, sieve_range, squarefree_count, tau_histogram, SieveConfig, SieveSegment};

fn odd_modulus() -> impl Strategy<Value = u64> {
    (1u64..40).prop_map(|k| 2 * k + 1)
}

fn naive_tau(n: u64) -> u64 {
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_multiplies_back(n in 1u64..u64::MAX) {
        let f = factorize(n).unwrap();
        let mut prod = 1u128;
        let mut last = 1;
        for &(p, e) in f.factors() {
            prop_assert!(p > last && is_prime(p) && e >= 1);
            last = p;
            prod *= u128::from(p).pow(e);
        }
        prop_assert_eq!(prod, u128::from(n));
    }

    #[test]
    fn tau_matches_divisor_scan(n in 1u64..2_000_000) {
        prop_assert_eq!(factorize(n).unwrap().tau().unwrap(), naive_tau(n));
    }

    #[test]
    fn tau_and_omega_multiplicative(a in 1u64..1_000_000, b in 1u64..1_000_000) {
        prop_assume!(gcd(a, b) == 1);
        let (fa, fb, fab) = (factorize(a).unwrap(), factorize(b).unwrap(), factorize(a * b).unwrap());
        prop_assert_eq!(fab.tau().unwrap(), fa.tau().unwrap() * fb.tau().unwrap());
        prop_assert_eq!(fab.omega(), fa.omega() + fb.omega());
    }

    #[test]
    fn order_is_minimal_and_divides_carmichael(m in 2u64..100_000, b in 1u64..1000) {
        prop_assume!(gcd(b, m) == 1);
        let t = multiplicative_order(b, m).unwrap();
        prop_assert_eq!(pow_mod(b, t, m), 1 % m);
        prop_assert_eq!(carmichael(m).unwrap() % t, 0);
        for d in (1..t).filter(|d| t.is_multiple_of(*d)) {
            prop_assert_ne!(pow_mod(b, d, m), 1);
        }
    }

    #[test]
    fn decomposition_invariants(n in 1u64..1_000_000_000_000, m in odd_modulus()) {
        let d = decompose(n, m).unwrap();
        prop_assert_eq!(d.s * d.q * d.k, n);
        prop_assert_eq!(gcd(d.s, d.q), 1);
        prop_assert!(factorize(d.s).unwrap().is_squarefree());
        prop_assert!(factorize(d.q).unwrap().exponents().all(|e| (2..m).contains(&u64::from(e))));
        prop_assert!(factorize(d.k).unwrap().exponents().all(|e| u64::from(e) % m == 0));
        let tau = |x| factorize(x).unwrap().tau_mod(m);
        prop_assert_eq!(tau(n), tau(d.s) * tau(d.q) % m);
    }

    #[test]
    fn sieve_agrees_with_factorization(lo in 1u64..1_000_000_000, len in 1u64..3000, m in odd_modulus()) {
        let seg = sieve_range(lo, lo + len, m).unwrap();
        for n in (lo..lo + len).step_by(7) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(u64::from(seg.tau_mod_at(n)), f.tau_mod(m));
            prop_assert_eq!(seg.omega_at(n) as usize, f.omega());
            prop_assert_eq!(seg.is_squarefree(n), f.is_squarefree());
        }
    }

    #[test]
    fn histograms_independent_of_segmentation(n in 1u64..300_000, bits in 10u32..16, threads in 1usize..4, m in odd_modulus()) {
        let checkpoints = [n / 3 + 1, n / 2 + 1, n];
        prop_assume!(checkpoints.windows(2).all(|w| w[0] < w[1]));
        let fine = tau_histogram(m, &checkpoints, &SieveConfig::new(bits, threads).unwrap()).unwrap();
        let coarse = tau_histogram(m, &checkpoints, &SieveConfig::default()).unwrap();
        prop_assert_eq!(fine, coarse);
    }

    #[test]
    fn sum_bounded_and_conjugate(m in odd_modulus(), a in 1i64..500, n in 1u64..20_000) {
        prop_assume!(gcd(a as u64 % m, m) == 1);
        let opts = EvalOptions::default();
        let t = t_exact(a, m, n, &opts).unwrap().value;
        let neg = t_exact(-a, m, n, &opts).unwrap().value;
        let shifted = t_exact(a + m as i64, m, n, &opts).unwrap().value;
        prop_assert!(t.norm() <= n as f64 + 1e-9);
        prop_assert_eq!(neg, t.conj());
        prop_assert_eq!(shifted, t);
    }

    #[test]
    fn orbit_sum_invariant_under_doubling(m in odd_modulus(), r in -200i64..200) {
        let ctx = ModulusContext::new(m).unwrap();
        let s = s_sum(&ctx, r);
        prop_assert!((s - s_sum(&ctx, 2 * r)).norm() < 1e-12);
        prop_assert!((s - s_sum(&ctx, r + m as i64)).norm() < 1e-12);
        prop_assert!(s.norm() <= ctx.t as f64 + 1e-12);
    }

    #[test]
    fn squarefree_classes_partition(x in 1u64..200_000, t in 1u64..6) {
        let total: u64 = (0..t as i64).map(|r| count_m(x, 1, r, t).unwrap()).sum();
        prop_assert_eq!(total, squarefree_count(x, &SieveConfig::default()).unwrap());
    }

    #[test]
    fn characters_are_multiplicative(idx in 0usize..25, j in 0u64..1000, a in 1u64..10_000, b in 1u64..10_000) {
        let primes: Vec<u64> = (3..100).filter(|&p| is_prime(p)).collect();
        let p = primes[idx % primes.len()];
        prop_assume!(a % p != 0 && b % p != 0);
        let table = characters(p).unwrap();
        let j = j % (p - 1);
        let lhs = table.value(j, a * b % p);
        let rhs = table.value(j, a % p) * table.value(j, b % p);
        prop_assert!((lhs - rhs).norm() < 1e-12);
        prop_assert!((table.value(j, a % p).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_is_geometric(lo in 3u64..1000, decades in 3u32..6, factor in 2u64..11) {
        let hi = lo * factor.pow(decades);
        let g = geometric_grid(lo, hi, factor).unwrap();
        prop_assert_eq!(g.first().copied(), Some(lo));
        prop_assert_eq!(g.last().copied(), Some(hi));
        prop_assert!(g.windows(2).all(|w| w[1] == w[0] * factor));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncated_series_pass_doubling(x in 1_000u64..100_000, m in odd_modulus(), d in 2u64..12) {
        let ctx = ModulusContext::new(m).unwrap();
        for (a, b) in h_series(&ctx, x).unwrap().iter().zip(&h_series(&ctx, 2 * x).unwrap()) {
            prop_assert!((a.value - b.value).norm() <= a.tail_bound);
        }
        let (a, b) = (tau_cong_tail(d, x).unwrap().series, tau_cong_tail(d, 2 * x).unwrap().series);
        prop_assert!((a.value - b.value).norm() <= a.tail_bound);
        let zm = 2 + m % 5;
        let (a, b) = (zeta_int_with_cutoff(zm, x).unwrap(), zeta_int_with_cutoff(zm, 2 * x).unwrap());
        prop_assert!((a.value - b.value).norm() <= a.tail_bound);
    }

    #[test]
    fn main_term_periodic_and_conjugate(m in odd_modulus(), a in 1i64..200) {
        prop_assume!(gcd(a as u64 % m, m) == 1);
        let ctx = ModulusContext::new(m).unwrap();
        let c = main_term(a, &ctx, 20_000).unwrap().coefficient;
        prop_assert_eq!(main_term(a + m as i64, &ctx, 20_000).unwrap().coefficient, c);
        prop_assert_eq!(main_term(-a, &ctx, 20_000).unwrap().coefficient, c.conj());
    }
}

#[test]
fn dump_round_trips_through_a_file() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for m in [3u64, 257, 70_001] {
        let lo = rng.gen_range(1..1_000_000_000u64);
        let seg = sieve_range(lo, lo + 5000, m).unwrap();
        let mut file = tempfile::tempfile().unwrap();
        seg.write_dump(&mut file).unwrap();
        use std::io::Seek;
        file.rewind().unwrap();
        assert_eq!(SieveSegment::read_dump(&mut file).unwrap(), seg);
    }
}

#[test]
fn truncated_dump_is_rejected() {
    let seg = sieve_range(1, 100, 5).unwrap();
    let mut bytes = Vec::new();
    seg.write_dump(&mut bytes).unwrap();
    bytes.truncate(bytes.len() - 1);
    assert!(SieveSegment::read_dump(bytes.as_slice()).is_err());
    bytes[0] = b'X';
    assert!(SieveSegment::read_dump(bytes.as_slice()).is_err());
}

#[test]
fn omega_weighted_sum_bounded_on_disk() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let cfg = SieveConfig::default();
    for _ in 0..8 {
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(rng.gen_range(0.0..=1.0), theta);
        let x = rng.gen_range(1..50_000u64);
        let v = divexp::expsum::selberg_sum(z, x, &cfg).unwrap();
        assert!(v.norm() <= squarefree_count(x, &cfg).unwrap() as f64 + 1e-9);
    }
}

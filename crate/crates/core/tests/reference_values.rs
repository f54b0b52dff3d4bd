//! Small hand-checkable values for every public entry point.

use std::f64::consts::PI;

use num_complex::Complex64;

use divexp::arith::{characters, classify, decompose, factorize, multiplicative_order, ModulusContext};
use divexp::expsum::{char_tau_sum, gauss_sum, root_of_unity, s_sum, selberg_sum, t_exact, EvalOptions};
use divexp::mainterm::{a_bound, alpha, g_selberg, h_series, main_term, tau_cong_tail, zeta_int};
use divexp::sieve::{count_aq, count_c, count_m, enumerate_qm, sieve_range, SieveConfig};
use divexp::Error;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

#[test]
fn factorization_tau_omega() {
    assert!(factorize(1).unwrap().factors().is_empty());
    assert_eq!(factorize(720).unwrap().factors(), &[(2, 4), (3, 2), (5, 1)]);
    let mersenne = (1u64 << 61) - 1;
    assert_eq!(factorize(mersenne).unwrap().factors(), &[(mersenne, 1)]);
    assert_eq!(factorize(12).unwrap().tau().unwrap(), 6);
    assert_eq!(factorize(720).unwrap().tau().unwrap(), 30);
    assert_eq!(factorize(720).unwrap().omega(), 3);
    assert_eq!(factorize(97).unwrap().omega(), 1);
    assert_eq!(factorize(0).unwrap_err(), Error::Zero);
}

#[test]
fn decomposition_and_membership() {
    let d = decompose(720, 3).unwrap();
    assert_eq!((d.s, d.q, d.k), (10, 9, 8));
    let d = decompose(64, 3).unwrap();
    assert_eq!((d.s, d.q, d.k), (1, 1, 64));
    let d = decompose(1, 3).unwrap();
    assert_eq!((d.s, d.q, d.k), (1, 1, 1));
    let m9 = classify(&factorize(9).unwrap(), 3);
    assert!(!m9.in_s && m9.in_qm && !m9.in_mm && m9.in_k);
    let m8 = classify(&factorize(8).unwrap(), 3);
    assert!(!m8.in_s && !m8.in_qm && m8.in_mm && m8.in_k);
    let m1 = classify(&factorize(1).unwrap(), 7);
    assert!(m1.in_s && m1.in_qm && m1.in_mm && m1.in_k);
    assert!(decompose(10, 4).is_err());
}

#[test]
fn orders_and_saving_exponents() {
    assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
    assert_eq!(multiplicative_order(2, 9).unwrap(), 6);
    assert_eq!(multiplicative_order(5, 2).unwrap(), 1);
    assert_eq!(alpha(2), 2.0);
    assert_eq!(alpha(4), 1.0);
    assert_eq!(alpha(6), 0.5);
}

#[test]
fn character_tables() {
    let t3 = characters(3).unwrap();
    assert_eq!(t3.generator(), 2);
    assert!(close(t3.value(1, 2), Complex64::new(-1.0, 0.0), 1e-15));
    let t7 = characters(7).unwrap();
    for r in 1..7 {
        assert_eq!(t7.value(0, r), Complex64::new(1.0, 0.0));
    }
    assert!((t7.value(2, 2).norm() - 1.0).abs() < 1e-15);
    assert!(characters(9).is_err());
}

#[test]
fn sieve_segments() {
    let seg = sieve_range(1, 13, 3).unwrap();
    let taus: Vec<u32> = (1..13).map(|n| seg.tau_mod_at(n)).collect();
    assert_eq!(taus, vec![1, 2, 2, 0, 2, 1, 2, 1, 0, 1, 2, 0]);
    let seg = sieve_range(1, 8, 5).unwrap();
    let omegas: Vec<u32> = (1..8).map(|n| seg.omega_at(n)).collect();
    assert_eq!(omegas, vec![0, 1, 1, 1, 1, 2, 1]);
    let seg = sieve_range(1_000_000, 1_000_400, 11).unwrap();
    assert!((1_000_000..1_000_400).step_by(4).all(|n| !seg.is_squarefree(n)));
}

#[test]
fn powerful_enumeration() {
    let q = |m, x| enumerate_qm(m, x).unwrap().iter().map(|e| e.q).collect::<Vec<_>>();
    assert_eq!(q(3, 40), vec![1, 4, 9, 25, 36]);
    assert_eq!(q(5, 40), vec![1, 4, 8, 9, 16, 25, 27, 36]);
    assert_eq!(q(7, 3), vec![1]);
}

#[test]
fn counting_functions() {
    assert_eq!(count_aq(6, 10).unwrap(), 7);
    assert_eq!(count_aq(1, 100).unwrap(), 1);
    assert_eq!(count_aq(2, 32).unwrap(), 6);
    assert_eq!(count_m(20, 1, 0, 2).unwrap(), 5);
    assert_eq!(count_m(20, 1, 1, 2).unwrap(), 8);
    assert_eq!(count_m(1, 1, 0, 5).unwrap(), 1);
    let total: u64 = (0..3).map(|r| count_c(3, r, 10_000).unwrap()).sum();
    assert_eq!(total, 10_000);
    // n <= 12 with 3 | tau(n): 4, 9, 12.
    assert_eq!(count_c(3, 0, 12).unwrap(), 3);
    // n <= 100 with 5 | tau(n): 16, 48, 80, 81.
    assert_eq!(count_c(5, 0, 100).unwrap(), 4);
}

#[test]
fn roots_and_orbit_sums() {
    assert_eq!(root_of_unity(0, 11), Complex64::new(1.0, 0.0));
    assert_eq!(root_of_unity(3, 6), Complex64::new(-1.0, 0.0));
    assert!(close(root_of_unity(1, 3), Complex64::new(-0.5, 0.8660254037844386), 1e-15));
    let c7 = ModulusContext::new(7).unwrap();
    assert_eq!(s_sum(&c7, 0), Complex64::new(3.0, 0.0));
    let s7 = 7f64.sqrt();
    assert!(close(s_sum(&c7, 1), Complex64::new(-0.5, s7 / 2.0), 1e-14));
    assert!(close(s_sum(&c7, 3), Complex64::new(-0.5, -s7 / 2.0), 1e-14));
}

#[test]
fn divisor_exponential_sums() {
    let opts = EvalOptions::default();
    let e3 = Complex64::new(-0.5, 0.8660254037844386);
    assert!(close(t_exact(1, 3, 4, &opts).unwrap().value, e3.conj(), 1e-12));
    assert!(close(t_exact(1, 3, 1, &opts).unwrap().value, e3, 1e-15));
    assert!(t_exact(1, 5, 1_000_000, &opts).unwrap().value.norm() < 1e6);
    assert_eq!(t_exact(3, 9, 10, &opts).unwrap_err(), Error::NotCoprime { b: 3, m: 9 });
}

#[test]
fn character_and_omega_sums() {
    let cfg = SieveConfig::default();
    let t3 = characters(3).unwrap();
    assert!(close(char_tau_sum(&t3, 0, 12, &cfg).unwrap(), Complex64::new(9.0, 0.0), 1e-12));
    assert!(close(char_tau_sum(&t3, 1, 2, &cfg).unwrap(), Complex64::new(0.0, 0.0), 1e-12));
    let t11 = characters(11).unwrap();
    for j in 0..10 {
        assert!(close(char_tau_sum(&t11, j, 1, &cfg).unwrap(), Complex64::new(1.0, 0.0), 1e-15));
    }
    assert_eq!(selberg_sum(Complex64::new(1.0, 0.0), 20, &cfg).unwrap(), Complex64::new(13.0, 0.0));
    assert_eq!(selberg_sum(Complex64::new(0.0, 0.0), 20, &cfg).unwrap(), Complex64::new(1.0, 0.0));
    assert_eq!(selberg_sum(Complex64::new(-1.0, 0.0), 20, &cfg).unwrap(), Complex64::new(-3.0, 0.0));
}

#[test]
fn gauss_sums() {
    let s3 = 3f64.sqrt();
    assert!(close(gauss_sum(&characters(3).unwrap(), 1, 1).unwrap(), Complex64::new(0.0, s3), 1e-14));
    assert!(close(gauss_sum(&characters(5).unwrap(), 2, 1).unwrap(), Complex64::new(5f64.sqrt(), 0.0), 1e-14));
}

#[test]
fn series_constants() {
    let z2 = zeta_int(2).unwrap();
    assert!((z2.value.re - PI * PI / 6.0).abs() <= z2.tail_bound);
    assert!(z2.tail_bound <= 1e-6 + 1e-14);
    let z3 = zeta_int(3).unwrap();
    assert!((z3.value.re - 1.2020569031595942).abs() <= z3.tail_bound);
    for m in 10..40 {
        let v = zeta_int(m).unwrap().value.re;
        assert!(v > 1.0 && v < 1.0 + 2f64.powi(1 - m as i32));
    }
}

#[test]
fn orbit_weighted_series() {
    let c3 = ModulusContext::new(3).unwrap();
    let h = h_series(&c3, 3).unwrap();
    assert_eq!((h[0].value.re, h[1].value.re, h[2].value.re), (0.0, 1.0, 0.0));
    assert!((h[1].tail_bound - 9.0 / 3f64.sqrt()).abs() < 1e-12);
    assert!(h_series(&c3, 100).unwrap()[0].value.re >= 0.25);
    let lo = h_series(&c3, 10_000).unwrap();
    let hi = h_series(&c3, 40_000).unwrap();
    for (a, b) in lo.iter().zip(&hi) {
        assert!((a.value - b.value).norm() <= 0.09);
    }
}

#[test]
fn divisor_count_congruence_tails() {
    let t = tau_cong_tail(3, 40).unwrap().series.value.re;
    let want = 0.25 + 1.0 / 9.0 + 1.0 / 25.0 + 1.0 / 32.0 + 1.0 / 36.0;
    assert!((t - want).abs() < 1e-15);
    assert!((tau_cong_tail(2, 10).unwrap().series.value.re - 0.125).abs() < 1e-15);
    let empty = tau_cong_tail(5, 3).unwrap().series;
    assert_eq!(empty.value.re, 0.0);
    assert!((empty.tail_bound - 9.0 / 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn main_term_symmetries() {
    let c3 = ModulusContext::new(3).unwrap();
    let one = main_term(1, &c3, 100_000).unwrap();
    let two = main_term(2, &c3, 100_000).unwrap();
    let four = main_term(4, &c3, 100_000).unwrap();
    assert_eq!(one.coefficient, four.coefficient);
    assert_eq!(one.coefficient, two.coefficient.conj());
}

#[test]
fn euler_product_values() {
    let g1 = g_selberg(Complex64::new(1.0, 0.0), 100_000).unwrap();
    assert!((g1.value.re - 0.6079271018540267).abs() < 2e-5);
    assert_eq!(g_selberg(Complex64::new(0.0, 0.0), 1000).unwrap().value, Complex64::new(0.0, 0.0));
    assert_eq!(g_selberg(Complex64::new(-1.0, 0.0), 1000).unwrap().value, Complex64::new(0.0, 0.0));
}

#[test]
fn saving_branch_for_101() {
    let b = a_bound(101, 100).unwrap();
    assert_eq!(b.branch, Some(4));
    assert!((b.value - 101f64.sqrt() / 100.0 * 101f64.ln()).abs() < 1e-12);
    assert!(a_bound(91, 12).is_err());
}

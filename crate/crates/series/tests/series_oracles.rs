use goldtwin_characters::{f_all_m, f_bruteforce, legendre_character, round_integral, DirichletCharacter, ExceptionalZeroHypothesis};
use goldtwin_series::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn two_formulas_agree_on_random_even_m() {
    let series = SingularSeries::new(DEFAULT_CUTOFF).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let m = 2 * rng.gen_range(1..=500_000u64);
        let a = series.value(m).unwrap().value;
        let b = singular_series_alt(m, DEFAULT_CUTOFF).unwrap();
        if a == 0.0 {
            assert_eq!(b, 0.0, "m={m}");
        } else {
            assert!((a - b).abs() <= 1e-10 * a.abs(), "m={m}: {a} vs {b}");
        }
    }
    let a = singular_series(10, 1000).unwrap().value;
    assert!((a - singular_series_alt(10, 1000).unwrap()).abs() < 1e-10 * a);
}

#[test]
fn series_bounded_below_on_admissible_class() {
    let series = SingularSeries::new(DEFAULT_CUTOFF).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ms: Vec<u64> = (0..20_000u64).map(|k| 6 * k + 4).collect();
    ms.extend((0..2000).map(|_| 6 * rng.gen_range(0..1_000_000_000u64) + 4));
    for m in ms {
        let v = series.value(m).unwrap();
        assert!(v.value - v.tail_bound >= 1.0, "m={m}");
    }
}

#[test]
fn large_prime_factors_are_exact() {
    // 1_000_003 is prime and divides m + 2 below, above the cutoff.
    let m = 1_000_003u64 * 6 - 2;
    let cutoff = 1000;
    let v = singular_series(m, cutoff).unwrap().value;
    let alt = singular_series_alt(m, cutoff).unwrap();
    assert!((v - alt).abs() < 1e-10 * v);
    let without = {
        let table = goldtwin_core::PrimeTable::new(cutoff).unwrap();
        let mut x = 2.0;
        for &p in &table.primes()[1..] {
            x *= euler_factor(p as u64, m);
        }
        x
    };
    let big = 1_000_003f64 - 2.0;
    assert!((v / without - (1.0 + 2.0 / big)).abs() < 1e-12);
}

#[test]
fn tilde_identity_at_primes_dividing_m() {
    for p in (3..=97u64).filter(|&p| (2..p).all(|d| p % d != 0)) {
        let l = legendre_character(p).unwrap();
        let c0 = DirichletCharacter::principal(p).unwrap();
        let st = round_integral(f_all_m(&l, &l, 1, 1).unwrap()[0]).unwrap();
        let s = round_integral(f_all_m(&c0, &c0, 1, 1).unwrap()[0]).unwrap();
        let d = ((p - 2) * (p - 2)) as i64;
        assert_eq!((1 + st).abs(), d + s, "p={p}");
    }
}

#[test]
fn local_factor_is_periodic() {
    for p in [3u64, 5, 7, 11, 13] {
        let c0 = DirichletCharacter::principal(p).unwrap();
        for m in -30i64..30 {
            let a = f_bruteforce(&c0, &c0, 1, 1, m).unwrap();
            let b = f_bruteforce(&c0, &c0, 1, 1, m + p as i64).unwrap();
            assert!((a - b).norm() < 1e-9);
        }
    }
}

#[test]
fn assembly_orders_agree() {
    for r in [3u64, 5, 7, 4, 8, 15, 20, 24, 35, 105] {
        let h = ExceptionalZeroHypothesis::new(r, 0.99).unwrap();
        for m in (2..400u64).step_by(2) {
            let a = main_term_m(m, 10_000, 100, Some(&h), AssemblyOrder::Direct);
            let b = main_term_m(m, 10_000, 100, Some(&h), AssemblyOrder::Product);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    assert!((a.m_value - b.m_value).abs() < 1e-10, "r={r} m={m}");
                    assert!((a.l1 - b.l1).abs() < 1e-10);
                    assert!((a.l2 - b.l2).abs() < 1e-10);
                    assert!((a.l3 - b.l3).abs() < 1e-10);
                }
                (Err(_), Err(_)) => {}
                (a, b) => panic!("r={r} m={m}: {a:?} / {b:?}"),
            }
        }
    }
}

#[test]
fn main_term_example_modulus_three() {
    let h = ExceptionalZeroHypothesis::new(3, 0.99).unwrap();
    // 3 | 12 makes the partial series vanish
    assert!(main_term_m(12, 10_000, 100, Some(&h), AssemblyOrder::Direct).is_err());
    for m in [10u64, 16, 100] {
        let a = main_term_m(m, 10_000, 100, Some(&h), AssemblyOrder::Direct).unwrap();
        let b = main_term_m(m, 10_000, 100, Some(&h), AssemblyOrder::Product).unwrap();
        assert!((a.m_value - b.m_value).abs() < 1e-10);
    }
}

#[test]
fn odd_character_flips_the_tilde_sum() {
    // χ̃ mod 7 is odd; with 7 | m the I-term enters with the opposite sign.
    let h = ExceptionalZeroHypothesis::new(7, 0.999_999).unwrap();
    assert_eq!(h.character().eval_real(-1).unwrap(), -1);
    for m in [28u64, 70, 112, 448] {
        let r = main_term_m(m, 100_000, 1000, Some(&h), AssemblyOrder::Direct).unwrap();
        assert!(r.l1 > 0.0 && r.l3 < 0.0, "m={m}");
        assert!(r.i_tilde > 0.0);
    }
}

#[test]
fn exceptional_sums_two_orders() {
    let (j, i) = exceptional_sums(100, 10_000, 0.9).unwrap();
    let mut j2 = 0.0;
    let mut i2 = 0.0;
    for n2 in (1..100u64).rev() {
        let n1 = 100 - n2;
        j2 -= (n1 as f64).powf(-0.1);
        i2 += ((n1 * n2) as f64).powf(-0.1);
    }
    assert!((j - j2).abs() < 1e-10 * j.abs());
    assert!((i - i2).abs() < 1e-10 * i);
    let (j, i) = exceptional_sums(150, 100, 1.0).unwrap();
    assert_eq!((j, i), (-51.0, 51.0));
}

#[test]
fn classical_series_tends_to_twin_constant() {
    let twice_c2 = 1.320_323_631_693_739;
    let v = classical_goldbach_series(1 << 20, DEFAULT_CUTOFF).unwrap();
    assert!((v.value - twice_c2).abs() <= v.tail_bound + 1e-9);
    assert!(v.tail_bound < 2e-5);
}

proptest! {
    #[test]
    fn series_nonnegative_and_vanishing_pattern(m in 1u64..10_000_000) {
        let v = singular_series(m, 1000).unwrap();
        prop_assert!(v.value >= 0.0);
        prop_assert_eq!(v.value == 0.0, m % 6 != 4);
    }
}

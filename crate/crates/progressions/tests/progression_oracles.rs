use goldtwin_core::{gcd, PrimeTable};
use goldtwin_progressions::*;
use goldtwin_sieve::{SieveSign, SieveTerm, SieveWeights};
use proptest::prelude::*;

#[test]
fn table_matches_definitional_loop() {
    for weight in [Weight::Lambda, Weight::Mu] {
        let ctx = BvContext::new(10_000, weight, 50).unwrap();
        for q in 1..=50u64 {
            for p in [0, 1, 2, 3, 4, 5, 7, 10, 25, q.saturating_sub(1), q] {
                for (a, v) in ctx.discrepancies(q, p).unwrap() {
                    let d = bv_discrepancy_direct(ctx.values(), q, a as i64, p).unwrap();
                    assert!((v - d).abs() < 1e-6, "{weight:?} q={q} a={a} P={p}: {v} vs {d}");
                }
            }
        }
    }
}

#[test]
fn degenerate_cases_vanish_exactly() {
    let ctx = BvContext::new(10_000, Weight::Lambda, 20).unwrap();
    for q in 1..=40u64 {
        for (_, v) in ctx.discrepancies(q, q).unwrap() {
            assert_eq!(v, 0.0);
        }
        for (_, v) in ctx.discrepancies(q, q + 5).unwrap() {
            assert_eq!(v, 0.0);
        }
    }
    assert_eq!(ctx.discrepancy(1, 0, 1).unwrap(), 0.0);
}

#[test]
fn residue_sum_collapse() {
    for weight in [Weight::Lambda, Weight::Mu] {
        let ctx = BvContext::new(5000, weight, 30).unwrap();
        for q in 2..=60u64 {
            let coprime_total: f64 = ctx.values().iter().enumerate().filter(|(n, _)| gcd(*n as u64, q) == 1).map(|(_, w)| w).sum();
            let none: f64 = ctx.discrepancies(q, 0).unwrap().iter().map(|x| x.1).sum();
            assert!((none - coprime_total).abs() < 1e-6);
            for p in [1, 5, 30] {
                let s: f64 = ctx.discrepancies(q, p).unwrap().iter().map(|x| x.1).sum();
                assert!(s.abs() < 1e-6, "q={q} P={p}: {s}");
            }
        }
    }
}

#[test]
fn char_sum_table_entries() {
    let t = PrimeTable::new(200).unwrap();
    let lam = weight_values(100, Weight::Lambda, &t).unwrap();
    let one = CharSumTable::build(&lam, 1).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one.blocks[&1].sums[0].re, one.total);
    let three = CharSumTable::build(&lam, 3).unwrap();
    let quad: f64 = (1..=100).map(|n| lam[n] * [0.0, 1.0, -1.0][n % 3]).sum();
    assert!((three.blocks[&3].sums[0].re - quad).abs() < 1e-9);
    let table = CharSumTable::build(&lam, 40).unwrap();
    assert_eq!(table.len() as u64, (1..=40).map(primitive_count).sum::<u64>());
}

#[test]
fn classical_two_sided_example() {
    let ctx = BvContext::new(100, Weight::Lambda, 3).unwrap();
    let v = ctx.values();
    let in_class: f64 = (1..=100).filter(|n| n % 3 == 1).map(|n| v[n]).sum();
    let coprime: f64 = (1..=100).filter(|n| n % 3 != 0).map(|n| v[n]).sum();
    assert!((ctx.discrepancy(3, 1, 1).unwrap() - (in_class - coprime / 2.0)).abs() < 1e-9);
}

#[test]
fn level_sums() {
    let ctx = BvContext::new(10_000, Weight::Mu, 20).unwrap();
    let id = SieveWeights::identity(vec![], 0.0, SieveSign::Generic);
    assert_eq!(weighted_level_sum(&id, &ctx, 1, 1).unwrap(), ctx.discrepancy(1, 1, 1).unwrap());
    let terms = [(1u64, vec![], 1.0), (3, vec![3], -1.0), (5, vec![5], -1.0), (15, vec![5, 3], 1.0)]
        .into_iter()
        .map(|(d, primes, lambda)| SieveTerm { d, primes, lambda })
        .collect();
    let mob = SieveWeights::from_terms(terms, 20f64.ln(), vec![3, 5], 1, SieveSign::Generic);
    let by_hand = ctx.discrepancy(1, 2, 2).unwrap() - ctx.discrepancy(3, 2, 2).unwrap() - ctx.discrepancy(5, 2, 2).unwrap()
        + ctx.discrepancy(15, 2, 2).unwrap();
    assert!((weighted_level_sum(&mob, &ctx, 2, 2).unwrap() - by_hand).abs() < 1e-12);
    assert_eq!(weighted_level_sum(&mob, &ctx, 2, 15).unwrap(), 0.0);
    assert!(weighted_level_sum(&mob, &ctx, 3, 2).is_err());
}

#[test]
fn profile_rows_vanish_when_all_characters_enter() {
    let ctx = BvContext::new(100_000, Weight::Lambda, 100).unwrap();
    let prof = bv_profile(&ctx, 300, &[1, 10, 100]).unwrap();
    assert_eq!(prof.rows.len(), 900);
    for r in &prof.rows {
        if r.p_level >= r.q {
            assert_eq!(r.discrepancy, 0.0);
        }
    }
    assert!(prof.totals.iter().all(|&(_, t)| t.is_finite() && t >= 0.0));
    assert!(bv_profile(&ctx, 400, &[1]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn direct_progression_matches_discrepancy_at_level_zero(q in 1u64..80, a in 0i64..200) {
        let t = PrimeTable::new(3000).unwrap();
        let v = weight_values(3000, Weight::Mu, &t).unwrap();
        prop_assume!(gcd(a.rem_euclid(q as i64) as u64, q) == 1);
        let ctx = BvContext::from_values(v.clone(), Weight::Mu, 5).unwrap();
        prop_assert!((ctx.discrepancy(q, a, 0).unwrap() - psi_progression(&v, q, a).unwrap()).abs() < 1e-9);
    }
}

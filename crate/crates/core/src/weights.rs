use crate::arith::{almost_prime_of, ge_power, le_power, Multiplicity};
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::primes::PrimeTable;

/// Default width parameter for the three-prime windows.
pub const DEFAULT_EPS: f64 = 1e-3;

/// Prime-detecting weights on `[1, N]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaKind {
    VonMangoldt,
    /// `log n` on primes only.
    Lambda0,
    /// `Λ(n)` times the almost-prime and roughness conditions on `n + 2`.
    LambdaK { k: u32, alpha: f64, mult: Multiplicity },
    /// Log-weighted products of three primes in the switching windows.
    LambdaE3Star { eps: f64 },
}

impl LambdaKind {
    /// `Λ(n) 1_{P_2}(n+2) ρ(n+2, N^{1/15})`.
    pub fn lambda2() -> Self {
        Self::LambdaK { k: 2, alpha: 1.0 / 15.0, mult: Multiplicity::With }
    }

    /// `Λ(n) 1_{P_3}(n+2) ρ(n+2, N^{1/10})`.
    pub fn lambda3() -> Self {
        Self::LambdaK { k: 3, alpha: 1.0 / 10.0, mult: Multiplicity::With }
    }
}

pub fn von_mangoldt_of(f: &Factorization) -> f64 {
    match f.pairs() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    }
}

/// Membership of a factored `n` in the two three-prime windows.
///
/// `n` must have exactly three prime factors with multiplicity; every
/// ordering of them is tried as `(p1, p2, p3)`.
pub fn three_prime_windows(f: &Factorization, n_range: u64, eps: f64) -> (bool, bool) {
    let ps = f.prime_multiset();
    if ps.len() != 3 {
        return (false, false);
    }
    let cut = 1.0 / 3.0 - eps;
    let log_n = (n_range as f64).ln();
    let below_cut = |p: u64| (p as f64).ln() < cut * log_n;
    let above_cut = |p: u64| (p as f64).ln() > cut * log_n;
    let at_least_cut = |p: u64| (p as f64).ln() >= cut * log_n;
    let tenth = |p: u64| ge_power(p, n_range, 0.1);
    let sqrt_ok = |p1: u64, p2: u64| (p2 as u128) * (p2 as u128) * (p1 as u128) <= n_range as u128;

    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut b1 = false;
    let mut b2 = false;
    for o in ORDERS {
        let (p1, p2, p3) = (ps[o[0]], ps[o[1]], ps[o[2]]);
        if !tenth(p3) {
            continue;
        }
        if tenth(p1) && below_cut(p1) && above_cut(p2) && sqrt_ok(p1, p2) {
            b1 = true;
        }
        if at_least_cut(p1) && p1 <= p2 && sqrt_ok(p1, p2) {
            b2 = true;
        }
    }
    (b1, b2)
}

/// Evaluates a weight at `1 <= n <= N`.
///
/// `LambdaK` factors `n + 2`, so the table should reach `N + 2`
/// (trial division covers the rest up to the square of the limit).
pub fn lambda_weight(kind: LambdaKind, n: u64, n_range: u64, table: &PrimeTable) -> Result<f64> {
    if n == 0 || n > n_range {
        return Err(Error::Range(format!("weight needs 1 <= n <= N (n={n}, N={n_range})")));
    }
    let f = table.factorize(n)?;
    match kind {
        LambdaKind::VonMangoldt => Ok(von_mangoldt_of(&f)),
        LambdaKind::Lambda0 => Ok(if f.is_prime() { (n as f64).ln() } else { 0.0 }),
        LambdaKind::LambdaK { k, alpha, mult } => {
            let lam = von_mangoldt_of(&f);
            if lam == 0.0 {
                return Ok(0.0);
            }
            let g = table.factorize(n + 2)?;
            if !almost_prime_of(&g, k, mult) {
                return Ok(0.0);
            }
            if g.primes().any(|p| le_power(p, n_range, alpha)) {
                return Ok(0.0);
            }
            Ok(lam)
        }
        LambdaKind::LambdaE3Star { eps } => {
            let (b1, b2) = three_prime_windows(&f, n_range, eps);
            let w = if b1 { 0.5 } else { 0.0 } + if b2 { 1.0 } else { 0.0 };
            Ok(w * (n as f64).ln())
        }
    }
}

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::primes::PrimeTable;

/// Fixed exponent constants of the major-arc and pre-sieve setup.
pub const C0: f64 = 1.0 / 1000.0;
pub const C1: f64 = C0 / 100.0;

/// Range limit `N` together with the pre-sieve threshold `P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArithContext {
    pub n: u64,
    pub p: u64,
    pub c0: f64,
    pub c1: f64,
}

impl ArithContext {
    pub fn new(n: u64, p: u64) -> Result<Self> {
        if p < 2 || p > n {
            return Err(Error::Config(format!("need 2 <= P <= N, got P={p}, N={n}")));
        }
        Ok(Self { n, p, c0: C0, c1: C1 })
    }

    /// `Q = N / P^{c0}`, the reciprocal width of a major arc.
    pub fn arc_width_inverse(&self) -> f64 {
        self.n as f64 / (self.p as f64).powf(self.c0)
    }

    /// Largest denominator allowed on a major arc, `P^{c0}`.
    pub fn max_denominator(&self) -> f64 {
        (self.p as f64).powf(self.c0)
    }
}

/// Arithmetic functions exposed through [`arith_value`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Mu,
    Phi,
    Phi2,
    TauK(u32),
    BigOmega,
    Rad,
}

impl std::str::FromStr for ArithKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu" => Ok(Self::Mu),
            "phi" => Ok(Self::Phi),
            "phi2" => Ok(Self::Phi2),
            "big_omega" => Ok(Self::BigOmega),
            "rad" => Ok(Self::Rad),
            _ => {
                if let Some(k) = s.strip_prefix("tau_") {
                    let k: u32 = k
                        .parse()
                        .map_err(|_| Error::Usage(format!("bad divisor order in {s}")))?;
                    if k == 0 {
                        return Err(Error::Usage("tau_0 is undefined".into()));
                    }
                    return Ok(Self::TauK(k));
                }
                Err(Error::Usage(format!("unknown arithmetic function {s}")))
            }
        }
    }
}

pub fn arith_value(kind: ArithKind, n: u64, table: &PrimeTable) -> Result<i64> {
    if n == 0 {
        return Err(Error::Range("arithmetic functions need n >= 1".into()));
    }
    let f = table.factorize(n)?;
    Ok(arith_value_of(kind, &f))
}

pub fn arith_value_of(kind: ArithKind, f: &Factorization) -> i64 {
    match kind {
        ArithKind::Mu => f.mu(),
        ArithKind::Phi => f.phi() as i64,
        ArithKind::Phi2 => f.phi2() as i64,
        ArithKind::TauK(k) => f.tau_k(k) as i64,
        ArithKind::BigOmega => f.big_omega() as i64,
        ArithKind::Rad => f.rad() as i64,
    }
}

/// Splits `n` into its `P`-smooth and `P`-rough parts.
pub fn smooth_rough_split(n: u64, p: u64, table: &PrimeTable) -> Result<(u64, u64)> {
    if n == 0 || p < 2 {
        return Err(Error::Range(format!("smooth/rough split needs n >= 1, P >= 2 (n={n}, P={p})")));
    }
    let f = table.factorize(n)?;
    let smooth: u64 = f
        .pairs()
        .iter()
        .filter(|&&(q, _)| q <= p)
        .map(|&(q, e)| q.pow(e))
        .product();
    Ok((smooth, n / smooth))
}

/// 1 iff `n` has no prime factor in `(w, z]`.
pub fn rough_indicator(n: u64, w: f64, z: f64, table: &PrimeTable) -> Result<u8> {
    if w > z {
        return Err(Error::Usage(format!("rough indicator needs w <= z, got w={w}, z={z}")));
    }
    let f = table.factorize(n)?;
    Ok(rough_indicator_of(&f, w, z))
}

pub fn rough_indicator_of(f: &Factorization, w: f64, z: f64) -> u8 {
    let hit = f.primes().any(|p| (p as f64) > w && (p as f64) <= z);
    u8::from(!hit)
}

/// How prime factors are counted for almost-prime membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Multiplicity {
    #[default]
    With,
    Without,
}

pub fn almost_prime_of(f: &Factorization, k: u32, mult: Multiplicity) -> bool {
    let count = match mult {
        Multiplicity::With => f.big_omega(),
        Multiplicity::Without => f.omega(),
    };
    count <= k
}

/// 1 iff `n` has at most `k` prime factors.
pub fn almost_prime_indicator(n: u64, k: u32, mult: Multiplicity, table: &PrimeTable) -> Result<u8> {
    if n == 0 || k == 0 {
        return Err(Error::Range("almost-prime indicator needs n >= 1 and k >= 1".into()));
    }
    Ok(u8::from(almost_prime_of(&table.factorize(n)?, k, mult)))
}

/// `prod (1 - 1/(p-1))` over the given primes; a 2 in the set gives 0.
pub fn v_product(primes: &[u64]) -> f64 {
    primes.iter().map(|&p| 1.0 - 1.0 / (p as f64 - 1.0)).product()
}

/// Decides `p <= x^alpha` exactly when `1/alpha` is an integer, else in floating point.
pub fn le_power(p: u64, x: u64, alpha: f64) -> bool {
    if alpha <= 0.0 {
        return p <= 1;
    }
    let inv = 1.0 / alpha;
    let k = inv.round();
    if (inv - k).abs() < 1e-9 && k >= 1.0 && k <= 64.0 {
        match (p as u128).checked_pow(k as u32) {
            Some(pk) => pk <= x as u128,
            None => false,
        }
    } else {
        (p as f64).ln() <= alpha * (x as f64).ln()
    }
}

/// Decides `p >= x^alpha` with the same exactness rule as [`le_power`].
pub fn ge_power(p: u64, x: u64, alpha: f64) -> bool {
    if alpha <= 0.0 {
        return p >= 1;
    }
    let inv = 1.0 / alpha;
    let k = inv.round();
    if (inv - k).abs() < 1e-9 && k >= 1.0 && k <= 64.0 {
        match (p as u128).checked_pow(k as u32) {
            Some(pk) => pk >= x as u128,
            None => true,
        }
    } else {
        (p as f64).ln() >= alpha * (x as f64).ln()
    }
}

/// `x^alpha`, snapped to an exact integer root when one exists.
pub fn real_power(x: u64, alpha: f64) -> f64 {
    let v = (x as f64).powf(alpha);
    let r = v.round();
    if r >= 1.0 && (v - r).abs() < 1e-9 * v.max(1.0) {
        let inv = 1.0 / alpha;
        let k = inv.round();
        if (inv - k).abs() < 1e-9 && (r as u128).checked_pow(k as u32) == Some(x as u128) {
            return r;
        }
    }
    v
}

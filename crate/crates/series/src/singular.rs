use goldtwin_characters::{local_sigma, LocalKind};
use goldtwin_core::{trial_factor, Error, PrimeTable, Result};
use std::collections::BTreeSet;

pub const DEFAULT_CUTOFF: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularSeriesValue {
    pub value: f64,
    pub truncation_prime: u64,
    pub tail_bound: f64,
}

/// `1 + σ(p, m) / φ₂(p)²` for an odd prime, by the four-case table.
pub fn euler_factor(p: u64, m: u64) -> f64 {
    let d = (p - 2) as f64;
    let r = m % p;
    if r == 0 || (r + 4) % p == 0 {
        1.0 + (p as f64 - 4.0) / (d * d)
    } else if (r + 2) % p == 0 {
        1.0 + 2.0 / d
    } else {
        1.0 - 4.0 / (d * d)
    }
}

/// Upper bound for `Σ_{p > cutoff} c / (p - k)²` via the integer tail.
fn tail_sum(c: f64, cutoff: u64, k: u64) -> f64 {
    1.01 * c / (cutoff - k - 1) as f64
}

/// Odd primes dividing `m(m+2)(m+4)`.
fn shifted_primes(m: u64) -> Result<BTreeSet<u64>> {
    if m > u64::MAX - 4 {
        return Err(Error::Range(format!("m={m} too large for m(m+4)")));
    }
    let mut out = BTreeSet::new();
    for k in [m, m + 2, m + 4] {
        for &(p, _) in trial_factor(k).pairs() {
            if p != 2 {
                out.insert(p);
            }
        }
    }
    Ok(out)
}

/// Precomputed truncated product over the generic factor `1 - 4/(p-2)²`;
/// individual values are corrected at the primes dividing `m(m+2)(m+4)`.
#[derive(Clone, Debug)]
pub struct SingularSeries {
    cutoff: u64,
    generic: f64,
    relative_tail: f64,
}

impl SingularSeries {
    pub fn new(cutoff: u64) -> Result<Self> {
        if cutoff < 100 {
            return Err(Error::Usage(format!("cutoff {cutoff} below 100")));
        }
        let table = PrimeTable::new(cutoff)?;
        let generic = table
            .primes()
            .iter()
            .skip(1)
            .map(|&p| {
                let d = (p - 2) as f64;
                1.0 - 4.0 / (d * d)
            })
            .product();
        let relative_tail = tail_sum(4.0, cutoff, 2).exp() - 1.0;
        Ok(Self { cutoff, generic, relative_tail })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn value(&self, m: u64) -> Result<SingularSeriesValue> {
        if m == 0 {
            return Err(Error::Usage("m must be positive".into()));
        }
        let mut value = 0.0;
        if m % 2 == 0 {
            value = 2.0 * self.generic;
            for p in shifted_primes(m)? {
                let f = euler_factor(p, m);
                if p <= self.cutoff {
                    let d = (p - 2) as f64;
                    value *= f / (1.0 - 4.0 / (d * d));
                } else {
                    value *= f;
                }
            }
        }
        Ok(SingularSeriesValue {
            value,
            truncation_prime: self.cutoff,
            tail_bound: value.abs() * self.relative_tail,
        })
    }
}

/// `𝔖(m)` truncated at `cutoff`, with primes of `m(m+2)(m+4)` above the
/// cutoff included exactly.
pub fn singular_series(m: u64, cutoff: u64) -> Result<SingularSeriesValue> {
    SingularSeries::new(cutoff)?.value(m)
}

/// `∏ (1 + σ(p, m)/φ₂(p)²)` over `p ≤ cutoff` from the local factors, plus
/// the exact factors above the cutoff.
pub fn singular_series_alt(m: u64, cutoff: u64) -> Result<f64> {
    if cutoff < 100 {
        return Err(Error::Usage(format!("cutoff {cutoff} below 100")));
    }
    let table = PrimeTable::new(cutoff)?;
    let mut value = 1.0;
    for &p in table.primes() {
        value *= local_product_factor(p as u64, m)?;
    }
    for p in shifted_primes(m)? {
        if p > cutoff {
            value *= local_product_factor(p, m)?;
        }
    }
    Ok(value)
}

fn local_product_factor(p: u64, m: u64) -> Result<f64> {
    let phi2 = if p == 2 { 1.0 } else { (p - 2) as f64 };
    let s = local_sigma(LocalKind::Sigma, p, (m % (2 * p)) as i64, None)?;
    Ok(1.0 + s / (phi2 * phi2))
}

/// `𝔖(m, 𝒫) = ∏_{p ∈ 𝒫} (1 + σ(p, m)/φ₂(p)²)`.
pub fn partial_singular_series(m: u64, primes: &[u64]) -> Result<f64> {
    let mut value = 1.0;
    for &p in primes {
        value *= local_product_factor(p, m)?;
    }
    Ok(value)
}

/// Hardy-Littlewood constant for Goldbach representations of `m`.
pub fn classical_goldbach_series(m: u64, cutoff: u64) -> Result<SingularSeriesValue> {
    if cutoff < 100 {
        return Err(Error::Usage(format!("cutoff {cutoff} below 100")));
    }
    if m % 2 == 1 {
        return Ok(SingularSeriesValue { value: 0.0, truncation_prime: cutoff, tail_bound: 0.0 });
    }
    let table = PrimeTable::new(cutoff)?;
    let mut value = 2.0;
    for &p in table.primes().iter().skip(1) {
        let d = (p - 1) as f64;
        value *= 1.0 - 1.0 / (d * d);
    }
    for &(p, _) in trial_factor(m).pairs() {
        if p > 2 {
            value *= (p - 1) as f64 / (p - 2) as f64;
        }
    }
    let tail = tail_sum(1.0, cutoff, 1).exp() - 1.0;
    Ok(SingularSeriesValue { value, truncation_prime: cutoff, tail_bound: value * tail })
}

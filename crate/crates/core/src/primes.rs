use crate::error::{Error, Result};
use crate::factor::Factorization;

/// Largest table limit accepted unless a budget is given explicitly.
pub const DEFAULT_BUDGET: u64 = 1 << 31;

/// Primes up to `limit` together with a smallest-prime-factor table.
///
/// The table is immutable once built and can be shared freely between
/// worker threads.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
    spf: Vec<u32>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_budget(limit, DEFAULT_BUDGET)
    }

    /// Linear sieve; `budget` caps the limit so callers can bound memory.
    pub fn with_budget(limit: u64, budget: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Config(format!("prime table limit {limit} is below 2")));
        }
        if limit > budget || limit > u32::MAX as u64 {
            return Err(Error::Config(format!(
                "prime table limit {limit} exceeds the memory budget {budget}"
            )));
        }
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m >= len {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(Self { limit, primes, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Primes `p <= x` (clamped to the table).
    pub fn primes_upto(&self, x: u64) -> &[u32] {
        let k = self.primes.partition_point(|&p| (p as u64) <= x);
        &self.primes[..k]
    }

    pub fn prime_count(&self, x: u64) -> usize {
        self.primes_upto(x).len()
    }

    /// Smallest prime factor of `2 <= n <= limit`.
    pub fn spf(&self, n: u64) -> u32 {
        self.spf[n as usize]
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit {
            n >= 2 && self.spf[n as usize] as u64 == n
        } else {
            self.factorize(n).map(|f| f.is_prime()).unwrap_or(false)
        }
    }

    /// Factorization of `n`.
    ///
    /// Values up to the limit use the spf table; values up to `limit^2`
    /// fall back to trial division by table primes.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Range("cannot factor 0".into()));
        }
        if n <= self.limit {
            let mut pairs: Vec<(u64, u32)> = Vec::new();
            let mut m = n;
            while m > 1 {
                let p = self.spf[m as usize] as u64;
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                pairs.push((p, e));
            }
            return Ok(Factorization::from_pairs_unchecked(pairs));
        }
        let lim = self.limit as u128;
        if (n as u128) > lim * lim {
            return Err(Error::Range(format!(
                "{n} exceeds the square of the table limit {}",
                self.limit
            )));
        }
        let mut pairs = Vec::new();
        let mut m = n;
        for &p in &self.primes {
            let p = p as u64;
            if p * p > m {
                break;
            }
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                pairs.push((p, e));
            }
        }
        if m > 1 {
            pairs.push((m, 1));
        }
        Ok(Factorization::from_pairs_unchecked(pairs))
    }
}

use crate::weights::{linear_sieve, LocalDensity, SieveSign, SieveWeights};
use goldtwin_core::{Error, PrimeTable, Result};

/// Weighted lower sieve for numbers with at most three prime factors:
/// a linear lower sieve minus half of an upper sieve for each prime
/// `z ≤ p < y` dividing `n`, the upper sieve taken at the reduced level of
/// the dyadic block `[K, 2K)`, `K = 2^j z`, containing `p`.
#[derive(Clone, Debug)]
pub struct P3Minorant {
    pub n_range: f64,
    pub eps: f64,
    pub p_level: u64,
    pub z: f64,
    pub y: f64,
    lower: SieveWeights,
    /// `(K, ω⁺_K)` in increasing `K`.
    blocks: Vec<(f64, SieveWeights)>,
}

impl P3Minorant {
    pub fn new(n_range: f64, eps: f64, p_level: u64, table: &PrimeTable) -> Result<Self> {
        if !(eps > 0.0 && eps < 0.1) {
            return Err(Error::Usage(format!("eps={eps} outside (0, 0.1)")));
        }
        let z = n_range.powf(0.1);
        let y = n_range.powf(1.0 / 3.0 - eps);
        let level = n_range.powf(0.5 - eps);
        let p = p_level as f64;
        if p < 2.0 || p >= z {
            return Err(Error::Usage(format!("need 2 <= P < z, got P={p_level}, z={z}")));
        }
        let lower = linear_sieve(level, z, p, SieveSign::Lower, table)?;
        let range = lower.range.clone();
        let mut blocks = Vec::new();
        let mut k = z;
        while k < y {
            let lk = level / k;
            let upper = if lk > z {
                linear_sieve(lk, z, p, SieveSign::Upper, table)?
            } else {
                SieveWeights::identity(range.clone(), lk.max(1.0).ln(), SieveSign::Upper)
            };
            blocks.push((k, upper));
            k *= 2.0;
        }
        Ok(Self { n_range, eps, p_level, z, y, lower, blocks })
    }

    pub fn lower(&self) -> &SieveWeights {
        &self.lower
    }

    fn block_of(&self, p: f64) -> Option<&SieveWeights> {
        if p < self.z || p >= self.y {
            return None;
        }
        let j = (p / self.z).log2().floor() as usize;
        // Guard against rounding at the block edges.
        let j = (j.saturating_sub(1)..=j + 1)
            .filter(|&i| i < self.blocks.len())
            .find(|&i| self.blocks[i].0 <= p && p < 2.0 * self.blocks[i].0)?;
        Some(&self.blocks[j].1)
    }

    /// `ω_M⁻(n)`.
    pub fn eval(&self, n: u64, table: &PrimeTable) -> Result<f64> {
        let f = table.factorize(n)?;
        let in_range: Vec<u64> = f.primes().filter(|p| self.lower.range.binary_search(p).is_ok()).collect();
        let mut value = self.lower.apply_with_primes(&in_range);
        let upper_value = |w: &SieveWeights| w.apply_with_primes(&in_range);
        for p in f.primes() {
            if let Some(w) = self.block_of(p as f64) {
                value -= 0.5 * upper_value(w);
            }
        }
        Ok(value)
    }

    /// `𝒱(ω_M⁻)` for the density `g`.
    pub fn curly_v(&self, g: &LocalDensity, table: &PrimeTable) -> Result<f64> {
        if self.y > table.limit() as f64 {
            return Err(Error::Range(format!("y={} exceeds the prime table", self.y)));
        }
        let mut v = self.lower.curly_v(g);
        for &p in table.primes_upto(self.y.ceil() as u64) {
            if let Some(w) = self.block_of(p as f64) {
                v -= 0.5 * g.g(p as u64) * w.curly_v(g);
            }
        }
        Ok(v)
    }
}

/// Convenience wrapper around [`P3Minorant`].
pub fn p3_minorant_eval(n: u64, n_range: f64, eps: f64, p_level: u64, table: &PrimeTable) -> Result<f64> {
    P3Minorant::new(n_range, eps, p_level, table)?.eval(n, table)
}

/// Level exponent of the weighted upper sieve at a prime `p = N^t`.
pub fn fg_exponent(t: f64, eps: f64) -> Result<f64> {
    if !(0.0..=0.5 - eps).contains(&t) {
        return Err(Error::Usage(format!("t={t} outside [0, 1/2 - eps]")));
    }
    Ok(if t <= 2.0 / 7.0 - eps {
        4.0 / 7.0
    } else if t <= 1.0 / 3.0 - eps {
        11.0 / 20.0
    } else {
        0.5
    })
}

/// Composition inequality: `A⁺B⁻ + (A⁻ − A⁺)B⁺ ≤ AB`.
pub fn vector_sieve_lower(a: f64, b: f64, a_plus: f64, a_minus: f64, b_plus: f64, b_minus: f64) -> Result<f64> {
    let ok = a >= 0.0 && b >= 0.0 && a * b_minus <= a * b && b_minus.max(0.0) <= b_plus && a_minus <= a && a <= a_plus;
    if !ok {
        return Err(Error::Usage(format!(
            "vector sieve preconditions fail: A={a}, B={b}, A+={a_plus}, A-={a_minus}, B+={b_plus}, B-={b_minus}"
        )));
    }
    Ok(a_plus * b_minus + (a_minus - a_plus) * b_plus)
}

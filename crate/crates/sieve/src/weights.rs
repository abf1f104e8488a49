use goldtwin_core::{Error, PrimeTable, Result};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SieveSign {
    Upper,
    Lower,
    Generic,
}

impl std::str::FromStr for SieveSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" | "+" => Ok(Self::Upper),
            "lower" | "-" => Ok(Self::Lower),
            "generic" => Ok(Self::Generic),
            _ => Err(Error::Usage(format!("unknown sieve sign {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SieveTerm {
    pub d: u64,
    /// Prime factors of `d`, descending.
    pub primes: Vec<u64>,
    pub lambda: f64,
}

/// Divisor-supported weights `λ_d` on squarefree `d` composed of range primes.
#[derive(Clone, Debug)]
pub struct SieveWeights {
    terms: Vec<SieveTerm>,
    index: HashMap<u64, usize>,
    /// `log D`.
    pub log_level: f64,
    /// Range primes, ascending.
    pub range: Vec<u64>,
    pub order: u32,
    pub sign: SieveSign,
}

impl SieveWeights {
    pub fn from_terms(
        mut terms: Vec<SieveTerm>,
        log_level: f64,
        mut range: Vec<u64>,
        order: u32,
        sign: SieveSign,
    ) -> Self {
        range.sort_unstable();
        range.dedup();
        terms.retain(|t| t.lambda != 0.0);
        terms.sort_by_key(|t| t.d);
        let index = terms.iter().enumerate().map(|(i, t)| (t.d, i)).collect();
        Self { terms, index, log_level, range, order, sign }
    }

    /// The sieve with `λ_1 = 1` only.
    pub fn identity(range: Vec<u64>, log_level: f64, sign: SieveSign) -> Self {
        let one = SieveTerm { d: 1, primes: vec![], lambda: 1.0 };
        Self::from_terms(vec![one], log_level, range, 1, sign)
    }

    pub fn terms(&self) -> &[SieveTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: u64) -> f64 {
        self.index.get(&d).map_or(0.0, |&i| self.terms[i].lambda)
    }

    pub fn level(&self) -> f64 {
        self.log_level.exp()
    }

    /// `ω(n) = Σ_{d | n} λ_d`, summed over squarefree divisors built from
    /// the range primes dividing `n`.
    pub fn apply(&self, n: u64) -> f64 {
        let ps: Vec<u64> = self.range.iter().copied().filter(|&p| n % p == 0).collect();
        self.apply_with_primes(&ps)
    }

    /// As [`apply`](Self::apply) given the range primes dividing `n`.
    pub fn apply_with_primes(&self, ps: &[u64]) -> f64 {
        let mut acc = 0.0;
        let k = ps.len();
        if k > 40 {
            panic!("too many prime factors");
        }
        for mask in 0u64..(1 << k) {
            let mut d = 1u64;
            for (i, &p) in ps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d *= p;
                }
            }
            acc += self.coefficient(d);
        }
        acc
    }

    /// Sieve function `ω(n)` for every `n ≤ limit`, by scattering each
    /// weight over its multiples.
    pub fn apply_range(&self, limit: u64) -> Vec<f64> {
        let mut out = vec![0.0; limit as usize + 1];
        for t in &self.terms {
            let mut k = t.d;
            while k <= limit {
                out[k as usize] += t.lambda;
                k += t.d;
            }
        }
        out
    }

    /// `𝒱(ω) = Σ λ_d g(d)`.
    pub fn curly_v(&self, g: &LocalDensity) -> f64 {
        self.terms.iter().map(|t| t.lambda * g.of_primes(&t.primes)).sum()
    }

    /// Multiplicative convolution with `μ` on the extra primes (coprime to the range).
    pub fn times_exact_mobius(&self, extra: &[u64]) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len() << extra.len());
        for mask in 0u64..(1 << extra.len()) {
            let sel: Vec<u64> = extra.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let e: u64 = sel.iter().try_fold(1u64, |a, &p| a.checked_mul(p)).ok_or_else(overflow)?;
            let sign = if sel.len() % 2 == 0 { 1.0 } else { -1.0 };
            for t in &self.terms {
                let d = t.d.checked_mul(e).ok_or_else(overflow)?;
                let mut primes = t.primes.clone();
                primes.extend(&sel);
                primes.sort_unstable_by(|a, b| b.cmp(a));
                terms.push(SieveTerm { d, primes, lambda: t.lambda * sign });
            }
        }
        let mut range = self.range.clone();
        range.extend(extra);
        let log_level = self.log_level + extra.iter().map(|&p| (p as f64).ln()).sum::<f64>();
        Ok(Self::from_terms(terms, log_level, range, self.order, self.sign))
    }

    /// `|λ_d| ≤ τ_k(d)` and `d` divides the range product.
    pub fn check_support(&self) -> bool {
        self.terms.iter().all(|t| {
            let tau_k = (self.order as f64).powi(t.primes.len() as i32);
            t.lambda.abs() <= tau_k + 1e-12
                && t.primes.iter().all(|p| self.range.binary_search(p).is_ok())
                && t.primes.iter().product::<u64>() == t.d
        })
    }
}

fn overflow() -> Error {
    Error::Range("sieve modulus overflows u64".into())
}

/// A multiplicative local density given by its values on primes.
pub struct LocalDensity {
    at_prime: Box<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl LocalDensity {
    pub fn new(f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Self { at_prime: Box::new(f) }
    }

    /// `g(d) = 1/φ(d)`.
    pub fn inverse_phi() -> Self {
        Self::new(|p| 1.0 / (p - 1) as f64)
    }

    pub fn g(&self, p: u64) -> f64 {
        (self.at_prime)(p)
    }

    /// `h(p) = g(p) / (1 - g(p))`.
    pub fn h(&self, p: u64) -> f64 {
        let g = self.g(p);
        g / (1.0 - g)
    }

    pub fn of_primes(&self, ps: &[u64]) -> f64 {
        ps.iter().map(|&p| self.g(p)).product()
    }

    pub fn h_of_primes(&self, ps: &[u64]) -> f64 {
        ps.iter().map(|&p| self.h(p)).product()
    }

    /// `∏ (1 - g(p))` over the given primes.
    pub fn v(&self, ps: &[u64]) -> f64 {
        ps.iter().map(|&p| 1.0 - self.g(p)).product()
    }
}

/// `V(𝒫) = ∏ (1 - 1/(p-1))`.
pub fn v_of(primes: &[u64]) -> f64 {
    LocalDensity::inverse_phi().v(primes)
}

/// Combinatorial beta sieve: `λ_d = μ(d)` for `d = p₁⋯p_r` (descending) with
/// `p₁⋯p_h·p_h^β < D` at every odd `h` (upper) or even `h` (lower).
pub fn beta_sieve(beta: f64, log_level: f64, primes: &[u64], sign: SieveSign) -> Result<SieveWeights> {
    if beta < 1.0 {
        return Err(Error::Usage(format!("beta={beta} below 1")));
    }
    if log_level < 0.0 {
        return Err(Error::Usage("level below 1".into()));
    }
    if sign == SieveSign::Generic {
        return Err(Error::Usage("beta sieve needs an upper or lower sign".into()));
    }
    let mut asc: Vec<u64> = primes.to_vec();
    asc.sort_unstable();
    asc.dedup();
    let logs: Vec<f64> = asc.iter().map(|&p| (p as f64).ln()).collect();
    let constrained_parity = if sign == SieveSign::Upper { 1 } else { 0 };
    let mut terms = vec![SieveTerm { d: 1, primes: vec![], lambda: 1.0 }];
    // Stack entries: (d, log d, depth, index bound, primes).
    let mut stack: Vec<(u64, f64, usize, usize, Vec<u64>)> = vec![(1, 0.0, 0, asc.len(), vec![])];
    while let Some((d, ld, depth, bound, ps)) = stack.pop() {
        let h = depth + 1;
        let constrained = h % 2 == constrained_parity;
        for i in (0..bound).rev() {
            let lp = logs[i];
            if constrained && ld + (1.0 + beta) * lp >= log_level {
                continue;
            }
            let nd = d.checked_mul(asc[i]).ok_or_else(overflow)?;
            let mut nps = ps.clone();
            nps.push(asc[i]);
            let lambda = if h % 2 == 0 { 1.0 } else { -1.0 };
            terms.push(SieveTerm { d: nd, primes: nps.clone(), lambda });
            if i > 0 {
                stack.push((nd, ld + lp, h, i, nps));
            }
        }
    }
    Ok(SieveWeights::from_terms(terms, log_level, asc, 1, sign))
}

/// Linear (β = 2) sieve of level `D` on the primes in `(P, z]`.
pub fn linear_sieve(level: f64, z: f64, p_lower: f64, sign: SieveSign, table: &PrimeTable) -> Result<SieveWeights> {
    if !(level > z && z > p_lower && p_lower >= 2.0) {
        return Err(Error::Usage(format!("need D > z > P >= 2, got D={level}, z={z}, P={p_lower}")));
    }
    if z > table.limit() as f64 {
        return Err(Error::Range(format!("z={z} exceeds the prime table")));
    }
    let primes: Vec<u64> = table
        .primes_upto(z.floor() as u64)
        .iter()
        .map(|&p| p as u64)
        .filter(|&p| p as f64 > p_lower)
        .collect();
    beta_sieve(2.0, level.ln(), &primes, sign)
}

pub const PRE_SIEVE_BETA: f64 = 750.0;

/// Beta sieve on the odd primes `p ≤ P` not dividing `r̃`, times the exact
/// Möbius sieve on the odd primes of `r̃`.
pub fn admissible_pre_sieve(
    p_level: u64,
    log_d0: f64,
    r_tilde: u64,
    sign: SieveSign,
    beta: f64,
    table: &PrimeTable,
) -> Result<SieveWeights> {
    if r_tilde == 0 {
        return Err(Error::Usage("r̃ must be positive".into()));
    }
    let tilde: Vec<u64> = goldtwin_core::trial_factor(r_tilde)
        .primes()
        .into_iter()
        .filter(|&p| p > 2)
        .collect();
    let dagger: Vec<u64> = table
        .primes_upto(p_level)
        .iter()
        .map(|&p| p as u64)
        .filter(|&p| p > 2 && r_tilde % p != 0)
        .collect();
    beta_sieve(beta, log_d0, &dagger, sign)?.times_exact_mobius(&tilde)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeReport {
    pub ratio: f64,
    pub bound: f64,
    pub pass: bool,
    /// True when `D0 ≥ P^1000`, the regime where the bound is claimed.
    pub asserted: bool,
}

/// Compares `𝒱(ω)/V − 1` with `100·exp(−log D0 / log P)`.
pub fn fundamental_lemma_envelope(w: &SieveWeights, p_level: u64, log_d0: f64) -> Result<EnvelopeReport> {
    if w.range.contains(&2) {
        return Err(Error::Degenerate("V vanishes when 2 is sieved".into()));
    }
    let v = v_of(&w.range);
    let ratio = w.curly_v(&LocalDensity::inverse_phi()) / v - 1.0;
    let lp = (p_level as f64).ln();
    let bound = 100.0 * (-log_d0 / lp).exp();
    Ok(EnvelopeReport { ratio, bound, pass: ratio.abs() <= bound, asserted: log_d0 >= 1000.0 * lp })
}

use crate::convolve::{convolve, ConvMode};
use crate::sequence::ArithSequence;
use goldtwin_core::{almost_prime_of, trial_factor, Error, Factorization, Multiplicity, PrimeTable, Result};
use goldtwin_series::{classical_goldbach_series, SingularSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Residues `m` checked for representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueClass {
    /// Even `m ≥ 4`.
    Even,
    /// `m ≡ 4 (mod 6)`.
    FourModSix,
}

impl ResidueClass {
    pub fn contains(self, m: u64) -> bool {
        match self {
            Self::Even => m >= 4 && m % 2 == 0,
            Self::FourModSix => m % 6 == 4,
        }
    }
}

/// Conditions on a prime `p` through `p + 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimeCondition {
    /// `p + 2` has at most `k` prime factors; `None` disables the test.
    pub k: Option<u32>,
    /// `p + 2` has no prime factor `≤ N^alpha`; zero disables the test.
    pub alpha: f64,
}

impl PrimeCondition {
    pub const PLAIN: Self = Self { k: None, alpha: 0.0 };

    pub fn is_plain(&self) -> bool {
        self.k.is_none() && self.alpha == 0.0
    }

    /// Roughness threshold, clamped to at least 3; the flag reports a clamp.
    pub fn threshold(&self, n_range: u64) -> Option<(f64, bool)> {
        (self.alpha > 0.0).then(|| {
            let t = (n_range as f64).powf(self.alpha);
            if t < 3.0 {
                (3.0, true)
            } else {
                (t, false)
            }
        })
    }

    fn accepts(&self, shifted: &Factorization, n_range: u64, mult: Multiplicity) -> bool {
        if let Some(k) = self.k {
            if !almost_prime_of(shifted, k, mult) {
                return false;
            }
        }
        match self.threshold(n_range) {
            Some((t, _)) => shifted.primes().all(|q| q as f64 > t),
            None => true,
        }
    }

    /// Membership via trial division, independent of any table.
    pub fn member_direct(&self, p: u64, n_range: u64, mult: Multiplicity) -> bool {
        trial_factor(p).is_prime() && (self.is_plain() || self.accepts(&trial_factor(p + 2), n_range, mult))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanParams {
    pub n: u64,
    pub first: PrimeCondition,
    pub second: PrimeCondition,
    pub mult: Multiplicity,
    pub class: ResidueClass,
    pub mode: ConvMode,
    pub samples: usize,
    pub seed: u64,
    pub series_cutoff: u64,
}

impl ScanParams {
    pub fn plain(n: u64) -> Self {
        Self {
            n,
            first: PrimeCondition::PLAIN,
            second: PrimeCondition::PLAIN,
            mult: Multiplicity::With,
            class: ResidueClass::Even,
            mode: ConvMode::Exact,
            samples: 1000,
            seed: 0,
            series_cutoff: 10_000,
        }
    }

    pub fn almost_twin(n: u64, k1: Option<u32>, k2: Option<u32>, alpha1: f64, alpha2: f64) -> Self {
        Self {
            first: PrimeCondition { k: k1, alpha: alpha1 },
            second: PrimeCondition { k: k2, alpha: alpha2 },
            class: ResidueClass::FourModSix,
            ..Self::plain(n)
        }
    }

    pub fn is_plain(&self) -> bool {
        self.first.is_plain() && self.second.is_plain()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanSample {
    pub m: u64,
    pub count: i64,
    pub prediction: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub params: ScanParams,
    /// Effective roughness thresholds and whether each was clamped.
    pub thresholds: [Option<(f64, bool)>; 2],
    /// Ordered representation counts for `m ≤ N`.
    pub counts: Vec<i64>,
    pub class_size: usize,
    pub exceptional: Vec<u64>,
    /// Every exceptional `m` confirmed by a direct pair search.
    pub verified: bool,
    pub samples: Vec<ScanSample>,
    /// Median of the sampled ratios.
    pub fitted_constant: f64,
    /// Share of sampled ratios inside `[0.5, 2]`.
    pub fraction_in_band: f64,
}

fn indicator(cond: &PrimeCondition, n: u64, mult: Multiplicity, table: &PrimeTable) -> Result<ArithSequence> {
    let vals: Vec<i64> = (1..=n)
        .into_par_iter()
        .map(|p| {
            if !table.is_prime(p) {
                return Ok(0);
            }
            if cond.is_plain() {
                return Ok(1);
            }
            Ok(i64::from(cond.accepts(&table.factorize(p + 2)?, n, mult)))
        })
        .collect::<Result<_>>()?;
    Ok(ArithSequence::from_int(vals))
}

/// Direct search for `m = p₁ + p₂` with both conditions.
pub fn has_representation(m: u64, params: &ScanParams) -> bool {
    (2..m - 1).any(|p1| {
        p1 <= params.n
            && m - p1 <= params.n
            && params.first.member_direct(p1, params.n, params.mult)
            && params.second.member_direct(m - p1, params.n, params.mult)
    })
}

/// Hardy–Littlewood style prediction `𝔖(m)·m/log²m`.
fn predictor(params: &ScanParams) -> Result<impl Fn(u64) -> Result<f64> + '_> {
    let twin_series = if params.is_plain() { None } else { Some(SingularSeries::new(params.series_cutoff)?) };
    Ok(move |m: u64| {
        let s = match &twin_series {
            None => classical_goldbach_series(m, params.series_cutoff)?.value,
            Some(ss) => ss.value(m)?.value,
        };
        let l = (m as f64).ln();
        Ok(s * m as f64 / (l * l))
    })
}

/// Counts representations of every `m ≤ N`, lists the unrepresented `m` of the
/// residue class, re-verifies them and compares sampled counts with the prediction.
pub fn exceptional_scan(params: &ScanParams) -> Result<ScanReport> {
    let n = params.n;
    if n < 4 {
        return Err(Error::Range(format!("scan needs N >= 4, got {n}")));
    }
    let table = PrimeTable::new(n + 2)?;
    let f = indicator(&params.first, n, params.mult, &table)?;
    let g = if params.first == params.second { f.clone() } else { indicator(&params.second, n, params.mult, &table)? };
    let conv = convolve(&f, &g, params.mode)?;
    let counts: Vec<i64> = match params.mode {
        ConvMode::Exact => conv.as_int().expect("exact output")[..=n as usize].to_vec(),
        ConvMode::Float => conv.as_f64()[..=n as usize].iter().map(|x| x.round() as i64).collect(),
    };
    let class: Vec<u64> = (0..=n).filter(|&m| params.class.contains(m)).collect();
    let exceptional: Vec<u64> = class.iter().copied().filter(|&m| counts[m as usize] == 0).collect();
    let verified = exceptional.par_iter().all(|&m| !has_representation(m, params));

    let lo = (n / 2).max(4);
    let candidates: Vec<u64> = class.iter().copied().filter(|&m| m >= lo).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let picks: Vec<u64> = if candidates.len() <= params.samples {
        candidates
    } else {
        let mut v: Vec<u64> = (0..params.samples).map(|_| candidates[rng.gen_range(0..candidates.len())]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let predict = predictor(params)?;
    let mut samples = Vec::with_capacity(picks.len());
    for m in picks {
        let prediction = predict(m)?;
        let count = counts[m as usize];
        let ratio = if prediction > 0.0 { count as f64 / prediction } else { f64::NAN };
        samples.push(ScanSample { m, count, prediction, ratio });
    }
    let mut ratios: Vec<f64> = samples.iter().map(|s| s.ratio).filter(|r| r.is_finite()).collect();
    ratios.sort_by(f64::total_cmp);
    let fitted_constant = if ratios.is_empty() { f64::NAN } else { ratios[ratios.len() / 2] };
    let fraction_in_band = if ratios.is_empty() {
        f64::NAN
    } else {
        ratios.iter().filter(|&&r| (0.5..=2.0).contains(&r)).count() as f64 / ratios.len() as f64
    };
    Ok(ScanReport {
        thresholds: [params.first.threshold(n), params.second.threshold(n)],
        counts,
        class_size: class.len(),
        exceptional,
        verified,
        samples,
        fitted_constant,
        fraction_in_band,
        params: params.clone(),
    })
}

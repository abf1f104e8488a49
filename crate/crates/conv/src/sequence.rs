use goldtwin_core::{lambda_weight, Error, LambdaKind, PrimeTable, Result};
use goldtwin_sieve::SieveWeights;
use rayon::prelude::*;

/// Largest length for floating-point sequences.
pub const FLOAT_LIMIT: u64 = 1 << 27;
/// Largest length for integer sequences.
pub const INT_LIMIT: u64 = 1 << 30;

#[derive(Clone, Debug, PartialEq)]
pub enum SequenceKind {
    Weight(LambdaKind),
    /// 0/1 support of a weight.
    Indicator(LambdaKind),
    /// `Λ(n) ω(n+2)` for supplied weights.
    SieveTwisted,
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    Float(Vec<f64>),
    Int(Vec<i64>),
}

/// Values on `1..=N`; slot 0 is unused and always zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ArithSequence {
    pub n: u64,
    pub kind: SequenceKind,
    pub values: Values,
}

impl ArithSequence {
    pub fn from_float(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Range("sequence values must be finite".into()));
        }
        let mut v = values;
        v.insert(0, 0.0);
        Ok(Self { n: v.len() as u64 - 1, kind: SequenceKind::Custom, values: Values::Float(v) })
    }

    pub fn from_int(values: Vec<i64>) -> Self {
        let mut v = values;
        v.insert(0, 0);
        Self { n: v.len() as u64 - 1, kind: SequenceKind::Custom, values: Values::Int(v) }
    }

    pub fn get(&self, i: u64) -> f64 {
        match &self.values {
            Values::Float(v) => v[i as usize],
            Values::Int(v) => v[i as usize] as f64,
        }
    }

    pub fn as_f64(&self) -> Vec<f64> {
        match &self.values {
            Values::Float(v) => v.clone(),
            Values::Int(v) => v.iter().map(|&x| x as f64).collect(),
        }
    }

    pub fn as_int(&self) -> Option<&[i64]> {
        match &self.values {
            Values::Int(v) => Some(v),
            Values::Float(_) => None,
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.as_f64().iter().fold(0.0, |a, x| a.max(x.abs()))
    }
}

fn check_len(n: u64, limit: u64, budget: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Range("sequence length must be positive".into()));
    }
    if n > limit || n > budget {
        return Err(Error::Config(format!("sequence length {n} exceeds the memory budget {}", limit.min(budget))));
    }
    Ok(())
}

/// Weight or indicator sequence on `1..=N`. `table` must reach `N + 2`.
pub fn build_sequence(kind: SequenceKind, n: u64, table: &PrimeTable, budget: u64) -> Result<ArithSequence> {
    match kind {
        SequenceKind::Weight(w) => {
            check_len(n, FLOAT_LIMIT, budget)?;
            let mut v = vec![0.0];
            v.par_extend((1..=n).into_par_iter().map(|i| lambda_weight(w, i, n, table)).collect::<Result<Vec<_>>>()?);
            Ok(ArithSequence { n, kind, values: Values::Float(v) })
        }
        SequenceKind::Indicator(w) => {
            check_len(n, INT_LIMIT, budget)?;
            let mut v = vec![0i64];
            let vals: Vec<f64> = (1..=n).into_par_iter().map(|i| lambda_weight(w, i, n, table)).collect::<Result<_>>()?;
            v.extend(vals.iter().map(|&x| i64::from(x != 0.0)));
            Ok(ArithSequence { n, kind, values: Values::Int(v) })
        }
        SequenceKind::SieveTwisted | SequenceKind::Custom => {
            Err(Error::Usage("use sieve_twisted_sequence or the from_* constructors".into()))
        }
    }
}

/// `Λ(n)·ω(n+2)` on `1..=N`.
pub fn sieve_twisted_sequence(weights: &SieveWeights, n: u64, table: &PrimeTable, budget: u64) -> Result<ArithSequence> {
    check_len(n, FLOAT_LIMIT, budget)?;
    let omega = weights.apply_range(n + 2);
    let mut v = vec![0.0];
    let lam: Vec<f64> = (1..=n)
        .into_par_iter()
        .map(|i| lambda_weight(LambdaKind::VonMangoldt, i, n, table))
        .collect::<Result<_>>()?;
    v.extend(lam.iter().enumerate().map(|(i, &l)| l * omega[i + 3]));
    Ok(ArithSequence { n, kind: SequenceKind::SieveTwisted, values: Values::Float(v) })
}

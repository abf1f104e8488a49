//! Sums of `Λ` and `μ` in residue classes, and their deviation from the
//! part explained by characters of small conductor.

use goldtwin_characters::character_group;
use goldtwin_core::{gcd, mod_inverse, trial_factor, Error, PrimeTable, Result};
use goldtwin_sieve::SieveWeights;
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Cap on cached character values `Σ_{f≤P} f·#primitive(f)`.
pub const CHAR_VALUE_BUDGET: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Lambda,
    Mu,
}

impl std::str::FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" | "Lambda" => Ok(Self::Lambda),
            "mu" => Ok(Self::Mu),
            _ => Err(Error::Usage(format!("unknown weight {s}"))),
        }
    }
}

/// `w(n)` for `n ≤ N` (slot 0 is zero).
pub fn weight_values(n: u64, weight: Weight, table: &PrimeTable) -> Result<Vec<f64>> {
    if n > table.limit() {
        return Err(Error::Range(format!("N={n} exceeds the prime table")));
    }
    let mut v = vec![0.0; n as usize + 1];
    match weight {
        Weight::Lambda => {
            for &p in table.primes_upto(n) {
                let lp = (p as f64).ln();
                let mut pk = p as u64;
                while pk <= n {
                    v[pk as usize] = lp;
                    pk = match pk.checked_mul(p as u64) {
                        Some(x) => x,
                        None => break,
                    };
                }
            }
        }
        Weight::Mu => {
            if n >= 1 {
                v[1] = 1.0;
            }
            for i in 2..=n {
                let p = table.spf(i) as u64;
                let rest = i / p;
                v[i as usize] = if rest % p == 0 { 0.0 } else { -v[rest as usize] };
            }
        }
    }
    Ok(v)
}

/// `Σ_{n≤N, n≡a (q)} w(n)` by direct summation.
pub fn psi_progression(values: &[f64], q: u64, a: i64) -> Result<f64> {
    if q == 0 {
        return Err(Error::Usage("q must be positive".into()));
    }
    let r = a.rem_euclid(q as i64) as u64;
    if gcd(r, q) != 1 {
        return Err(Error::Usage(format!("gcd({a}, {q}) > 1")));
    }
    let start = if r == 0 { q } else { r };
    Ok((start..values.len() as u64).step_by(q as usize).map(|n| values[n as usize]).sum())
}

/// Primitive characters of one conductor with their value tables and sums.
#[derive(Clone, Debug)]
pub struct ConductorBlock {
    pub conductor: u64,
    /// `ψ(0..f)` for each primitive `ψ` mod `f`.
    pub values: Vec<Vec<Complex64>>,
    /// `Σ_{n≤N} w(n) ψ(n)`.
    pub sums: Vec<Complex64>,
}

/// Sums of `w` twisted by every primitive character of conductor `≤ P`.
#[derive(Clone, Debug)]
pub struct CharSumTable {
    pub n: u64,
    pub p_level: u64,
    pub total: f64,
    pub blocks: BTreeMap<u64, ConductorBlock>,
}

fn residue_sums(sparse: &[(u64, f64)], q: u64) -> Vec<f64> {
    let mut r = vec![0.0; q as usize];
    for &(n, w) in sparse {
        r[(n % q) as usize] += w;
    }
    r
}

impl CharSumTable {
    pub fn build(values: &[f64], p_level: u64) -> Result<Self> {
        let n = values.len().saturating_sub(1) as u64;
        let cost: u64 = (1..=p_level).map(|f| f * f).sum();
        if cost as usize > CHAR_VALUE_BUDGET * 3 {
            return Err(Error::Config(format!("character budget exceeded for P={p_level}")));
        }
        let sparse: Vec<(u64, f64)> = values.iter().enumerate().skip(1).filter(|(_, &w)| w != 0.0).map(|(i, &w)| (i as u64, w)).collect();
        let total: f64 = sparse.iter().map(|&(_, w)| w).sum();
        let blocks: Vec<ConductorBlock> = (1..=p_level)
            .into_par_iter()
            .map(|f| -> Result<Option<ConductorBlock>> {
                let prim: Vec<Vec<Complex64>> = if f == 1 {
                    vec![vec![Complex64::new(1.0, 0.0)]]
                } else {
                    character_group(f)?.into_iter().filter(|c| c.is_primitive()).map(|c| c.values()).collect()
                };
                if prim.is_empty() {
                    return Ok(None);
                }
                let res = residue_sums(&sparse, f);
                let sums = prim.iter().map(|v| v.iter().zip(&res).map(|(c, &r)| c * r).sum()).collect();
                Ok(Some(ConductorBlock { conductor: f, values: prim, sums }))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let stored: usize = blocks.iter().map(|b| b.values.len() * b.conductor as usize).sum();
        if stored > CHAR_VALUE_BUDGET {
            return Err(Error::Config(format!("character budget exceeded: {stored} cached values")));
        }
        Ok(Self { n, p_level, total, blocks: blocks.into_iter().map(|b| (b.conductor, b)).collect() })
    }

    /// Number of primitive characters in the table.
    pub fn len(&self) -> usize {
        self.blocks.values().map(|b| b.values.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Weights, their primitive character sums and per-modulus discrepancies.
#[derive(Clone, Debug)]
pub struct BvContext {
    pub weight: Weight,
    values: Vec<f64>,
    sparse: Vec<(u64, f64)>,
    pub table: CharSumTable,
}

impl BvContext {
    pub fn new(n: u64, weight: Weight, p_max: u64) -> Result<Self> {
        let primes = PrimeTable::new(n.max(2))?;
        Self::from_values(weight_values(n, weight, &primes)?, weight, p_max)
    }

    pub fn from_values(values: Vec<f64>, weight: Weight, p_max: u64) -> Result<Self> {
        let table = CharSumTable::build(&values, p_max)?;
        let sparse = values.iter().enumerate().skip(1).filter(|(_, &w)| w != 0.0).map(|(i, &w)| (i as u64, w)).collect();
        Ok(Self { weight, values, sparse, table })
    }

    pub fn n(&self) -> u64 {
        self.table.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Σ_n w(n)·u_P(n ā; q)` for every `a` coprime to `q`, as `(a, value)`.
    pub fn discrepancies(&self, q: u64, p_level: u64) -> Result<Vec<(u64, f64)>> {
        if q == 0 {
            return Err(Error::Usage("q must be positive".into()));
        }
        let coprime: Vec<u64> = (0..q).filter(|&a| gcd(a, q) == 1).collect();
        if p_level >= q {
            return Ok(coprime.into_iter().map(|a| (a, 0.0)).collect());
        }
        if p_level > self.table.p_level {
            return Err(Error::Usage(format!("P={p_level} exceeds the table level {}", self.table.p_level)));
        }
        let res = residue_sums(&self.sparse, q);
        let phi = coprime.len() as f64;
        // For each conductor f | q within range: G_f(s) = Σ_ψ ψ(s)·(induced sum of ψ mod q).
        let mut proj: Vec<(u64, Vec<Complex64>)> = Vec::new();
        for (&f, block) in self.table.blocks.range(..=p_level) {
            if q % f != 0 {
                continue;
            }
            // Sums over n with (n,q) > 1, folded down mod f.
            let mut shared = vec![0.0; f as usize];
            for (r, &v) in res.iter().enumerate() {
                if v != 0.0 && gcd(r as u64, q) != 1 {
                    shared[r % f as usize] += v;
                }
            }
            let mut g = vec![Complex64::new(0.0, 0.0); f as usize];
            for (psi, &s) in block.values.iter().zip(&block.sums) {
                let correction: Complex64 = psi.iter().zip(&shared).map(|(c, &x)| c * x).sum();
                let induced = s - correction;
                for (slot, c) in g.iter_mut().zip(psi) {
                    *slot += c * induced;
                }
            }
            proj.push((f, g));
        }
        Ok(coprime
            .into_iter()
            .map(|a| {
                let inv = mod_inverse(a, q).unwrap_or(0);
                let main: f64 = proj.iter().map(|(f, g)| g[(inv % f) as usize].re).sum();
                (a, res[a as usize] - main / phi)
            })
            .collect())
    }

    pub fn discrepancy(&self, q: u64, a: i64, p_level: u64) -> Result<f64> {
        let r = a.rem_euclid(q.max(1) as i64) as u64;
        if gcd(r, q) != 1 {
            return Err(Error::Usage(format!("gcd({a}, {q}) > 1")));
        }
        Ok(self.discrepancies(q, p_level)?.into_iter().find(|&(b, _)| b == r).map_or(0.0, |(_, v)| v))
    }
}

/// Definitional double loop: `Σ_{n≤N} w(n) u_P(n ā; q)` with `u_P` from its
/// character expansion at each residue.
pub fn bv_discrepancy_direct(values: &[f64], q: u64, a: i64, p_level: u64) -> Result<f64> {
    let u = goldtwin_characters::u_p_table(a, q, p_level)?;
    Ok(values.iter().enumerate().skip(1).map(|(n, &w)| w * u[n % q as usize]).sum())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BvRow {
    pub p_level: u64,
    pub q: u64,
    pub a_max: u64,
    pub discrepancy: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BvProfile {
    pub rows: Vec<BvRow>,
    /// `(P, Σ_{q≤Q} max_a |discrepancy|)`.
    pub totals: Vec<(u64, f64)>,
}

/// `Σ_{q≤Q} max_{(a,q)=1} |Σ_n w(n) u_P(n ā; q)|` for each `P`.
pub fn bv_profile(ctx: &BvContext, q_max: u64, p_list: &[u64]) -> Result<BvProfile> {
    let n = ctx.n() as f64;
    if (q_max as f64) > n.sqrt() + 1e-9 {
        return Err(Error::Usage(format!("Q={q_max} exceeds sqrt(N)")));
    }
    let per_q: Vec<Vec<BvRow>> = (1..=q_max)
        .into_par_iter()
        .map(|q| {
            p_list
                .iter()
                .map(|&p| {
                    let ds = ctx.discrepancies(q, p)?;
                    let (a_max, discrepancy) = ds
                        .into_iter()
                        .fold((1 % q, 0.0f64), |best, (a, v)| if v.abs() > best.1.abs() { (a, v) } else { best });
                    Ok(BvRow { p_level: p, q, a_max, discrepancy })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<BvRow> = per_q.into_iter().flatten().collect();
    let totals = p_list
        .iter()
        .map(|&p| (p, rows.iter().filter(|r| r.p_level == p).map(|r| r.discrepancy.abs()).sum()))
        .collect();
    Ok(BvProfile { rows, totals })
}

/// `Σ_d λ_d · Σ_n w(n) u_P(n ā; d)` over the support of `λ`.
pub fn weighted_level_sum(lambda: &SieveWeights, ctx: &BvContext, a: i64, p_level: u64) -> Result<f64> {
    if lambda.len() > 10_000 {
        return Err(Error::Usage("sieve support exceeds 10^4 moduli".into()));
    }
    lambda.terms().iter().map(|t| Ok(t.lambda * ctx.discrepancy(t.d, a, p_level)?)).sum()
}

/// Number of primitive characters of conductor `f`.
pub fn primitive_count(f: u64) -> u64 {
    trial_factor(f)
        .pairs()
        .iter()
        .map(|&(p, e)| {
            let pe = p.pow(e);
            match e {
                1 => p - 2,
                _ => pe / p / p * (p - 1) * (p - 1),
            }
        })
        .product()
}

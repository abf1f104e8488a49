use crate::weights::{LocalDensity, SieveWeights};
use goldtwin_core::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

fn subset(primes: &[u64], mask: u64) -> Vec<u64> {
    primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect()
}

fn mask_of(primes: &[u64], n: u64) -> Result<u64> {
    let mut mask = 0;
    let mut rest = n;
    for (i, &p) in primes.iter().enumerate() {
        if rest % p == 0 {
            mask |= 1 << i;
            rest /= p;
        }
    }
    if rest != 1 {
        return Err(Error::Usage(format!("{n} does not divide the squarefree range product")));
    }
    Ok(mask)
}

/// Rewrites `g(e) Σ_{c|j, d|𝒫/(ej)} λ_{cde} g(d)` through `θ(n) = Σ_{d|n} λ_d`
/// and compares both sides to relative precision `1e-10`.
pub fn divisor_sum_identity_check(range: &[u64], lambda: &SieveWeights, j: u64, e: u64, g: &LocalDensity) -> Result<IdentityReport> {
    let mut ps = range.to_vec();
    ps.sort_unstable();
    ps.dedup();
    if ps.len() > 24 {
        return Err(Error::Usage("range too large for divisor enumeration".into()));
    }
    let jm = mask_of(&ps, j)?;
    let em = mask_of(&ps, e)?;
    if jm & em != 0 {
        return Err(Error::Usage(format!("j={j} and e={e} are not coprime")));
    }
    let full = (1u64 << ps.len()) - 1;
    let value = |m: u64| subset(&ps, m).iter().product::<u64>();
    let g_of = |m: u64| g.of_primes(&subset(&ps, m));
    let h_of = |m: u64| g.h_of_primes(&subset(&ps, m));
    let theta = |m: u64| lambda.apply_with_primes(&subset(&ps, m));

    let ge = g_of(em);
    let free = full & !(jm | em);
    let (mut lhs, mut lhs_abs) = (0.0, 0.0);
    let mut c = jm;
    loop {
        let mut d = free;
        loop {
            let t = lambda.coefficient(value(c | d | em)) * g_of(d);
            lhs += t;
            lhs_abs += t.abs();
            if d == 0 {
                break;
            }
            d = (d - 1) & free;
        }
        if c == 0 {
            break;
        }
        c = (c - 1) & jm;
    }
    lhs *= ge;
    lhs_abs *= ge;

    let v = g.v(&ps);
    let mu_e = if em.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    let pre = v * h_of(jm) / g_of(jm) * mu_e * h_of(em);
    let rest = full & !jm;
    let (mut sum, mut sum_abs) = (0.0, 0.0);
    let mut b = rest;
    loop {
        let be = b & em;
        let mu_be = if be.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let t = theta(jm | b) * h_of(b) * mu_be / h_of(be);
        sum += t;
        sum_abs += t.abs();
        if b == 0 {
            break;
        }
        b = (b - 1) & rest;
    }
    let rhs = pre * sum;
    let scale = lhs_abs.max((pre * sum_abs).abs()).max(f64::MIN_POSITIVE);
    Ok(IdentityReport { lhs, rhs, pass: (lhs - rhs).abs() <= 1e-10 * scale })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalLemmaReport {
    pub deviation: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Pointwise fundamental-lemma bound for a beta sieve `θ` with sifting limit `z`:
/// `|θ(n) − 1_{(n,𝒫₀(z))=1}| ≤ τ(n)² Σ_{r > (s−β−1)/2} 2^{−r} 1_{(n,𝒫₀(z_r))=1}`,
/// `z_r = z^{((β−1)/(β+1))^r}`, `s = log D / log z`.
pub fn fundamental_lemma_bound(theta: &SieveWeights, n: u64, z: f64, beta: f64) -> Result<FundamentalLemmaReport> {
    let s = theta.log_level / z.ln();
    if s <= beta + 1.0 {
        return Err(Error::Usage(format!("s={s} must exceed beta+1={}", beta + 1.0)));
    }
    if theta.range.last().is_some_and(|&p| p as f64 > z) {
        return Err(Error::Usage("range exceeds z".into()));
    }
    if n == 0 {
        return Err(Error::Range("n must be positive".into()));
    }
    let divisors: Vec<u64> = theta.range.iter().copied().filter(|&p| n % p == 0).collect();
    let value = theta.apply_with_primes(&divisors);
    let deviation = (value - f64::from(u8::from(divisors.is_empty()))).abs();
    let tau = goldtwin_core::trial_factor(n).tau() as f64;
    let smallest = divisors.first().map_or(f64::INFINITY, |&p| p as f64);
    let floor_prime = theta.range.first().map_or(f64::INFINITY, |&p| p as f64);
    let ratio = (beta - 1.0) / (beta + 1.0);
    let mut r = ((s - beta - 1.0) / 2.0).floor() as i32 + 1;
    let mut tail = 0.0;
    loop {
        let zr = z.powf(ratio.powi(r));
        if zr < floor_prime || r > 1000 {
            tail += 2f64.powi(1 - r);
            break;
        }
        if smallest > zr {
            tail += 2f64.powi(-r);
        }
        r += 1;
    }
    let bound = tau * tau * tail;
    Ok(FundamentalLemmaReport { deviation, bound, pass: deviation <= bound + 1e-12 })
}

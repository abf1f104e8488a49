use crate::singular::partial_singular_series;
use goldtwin_characters::{
    f_factored, local_sigma, round_integral, DirichletCharacter, ExceptionalZeroHypothesis, LocalKind,
};
use goldtwin_core::{Error, Result};

/// The exceptional pieces of the completed major-arc integrals:
/// `J̃(m) = -Σ n₁^{β-1}` and `Ĩ(m) = Σ (n₁n₂)^{β-1}` over `n₁ + n₂ = m`,
/// `1 ≤ nᵢ ≤ N`.
pub fn exceptional_sums(m: u64, n_range: u64, beta: f64) -> Result<(f64, f64)> {
    if m < 2 || m > 2 * n_range {
        return Err(Error::Usage(format!("m={m} outside [2, 2N]")));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Usage(format!("beta={beta} outside (0, 1]")));
    }
    let lo = m.saturating_sub(n_range).max(1);
    let hi = n_range.min(m - 1);
    let mut j = 0.0;
    let mut i = 0.0;
    for n1 in lo..=hi {
        let a = (n1 as f64).powf(beta - 1.0);
        let b = ((m - n1) as f64).powf(beta - 1.0);
        j -= a;
        i += a * b;
    }
    Ok((j, i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssemblyOrder {
    /// Each term assembled directly from `F` over `s` and `q̃`.
    Direct,
    /// Sums collapsed into products of local factors.
    Product,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainTermReport {
    pub m_value: f64,
    pub e_value: f64,
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub j_tilde: f64,
    pub i_tilde: f64,
    /// `1 - m^{β-1} ∏_{p | r̃, p ∤ m} 21/25`, the explicit part of the lower bound.
    pub lower_bound_leading: f64,
}

fn phi2_prime_power(p: u64, e: u32) -> f64 {
    match (p, e) {
        (_, 0) => 1.0,
        (2, e) => (1u64 << (e - 1)) as f64,
        (p, e) => ((p - 2) * p.pow(e - 1)) as f64,
    }
}

fn phi2_of(primes: &[u64], two: u32) -> f64 {
    primes.iter().map(|&p| phi2_prime_power(p, 1)).product::<f64>() * phi2_prime_power(2, two)
}

fn real_f(x: &DirichletCharacter, y: &DirichletCharacter, m: i64) -> Result<f64> {
    Ok(round_integral(f_factored(x, y, 1, 1, m)?)? as f64)
}

/// `ℳ(m)` and `ℰ(m)`; both are 1 without a hypothesis.
pub fn main_term_m(
    m: u64,
    n_range: u64,
    p_level: u64,
    hyp: Option<&ExceptionalZeroHypothesis>,
    order: AssemblyOrder,
) -> Result<MainTermReport> {
    let Some(h) = hyp else {
        return Ok(MainTermReport {
            m_value: 1.0,
            e_value: 1.0,
            l1: 0.0,
            l2: 0.0,
            l3: 0.0,
            j_tilde: 0.0,
            i_tilde: 0.0,
            lower_bound_leading: 1.0,
        });
    };
    let odd = h.odd_primes().to_vec();
    let t = h.two_exponent();
    let mut with_two = vec![2];
    with_two.extend(&odd);
    let s_partial = partial_singular_series(m, &with_two)?;
    if s_partial == 0.0 {
        return Err(Error::Degenerate(format!(
            "partial singular series vanishes at m={m} for modulus {}",
            h.modulus()
        )));
    }
    let (j_tilde, i_tilde) = exceptional_sums(m, n_range, h.beta())?;
    let (l1, l2, l3) = match order {
        AssemblyOrder::Direct => direct_sums(m as i64, h, &odd, t)?,
        AssemblyOrder::Product => product_sums(m as i64, h, &odd, t)?,
    };
    let mf = m as f64;
    let l2_term = if t == 0 { j_tilde * l2 } else { 0.0 };
    let m_value = (mf * l1 + l2_term + i_tilde * l3) / (mf * s_partial);
    let e_value = (1.0 - h.beta()) * (p_level as f64).ln();
    let coprime = odd.iter().filter(|&&p| m % p != 0).count() as i32;
    let lower_bound_leading = 1.0 - mf.powf(h.beta() - 1.0) * (21.0f64 / 25.0).powi(coprime);
    Ok(MainTermReport { m_value, e_value, l1, l2, l3, j_tilde, i_tilde, lower_bound_leading })
}

fn direct_sums(m: i64, h: &ExceptionalZeroHypothesis, odd: &[u64], t: u32) -> Result<(f64, f64, f64)> {
    let r = h.modulus();
    let phi2_r = phi2_of(odd, t);
    let two_t = 1u64 << t;
    let (mut l1, mut l2, mut l3) = (0.0, 0.0, 0.0);
    for mask in 0u32..(1 << odd.len()) {
        let sel: Vec<u64> = odd.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let qt: u64 = sel.iter().product();
        for s in 0..=1u32 {
            let q = qt << s;
            let c0 = DirichletCharacter::principal(q)?;
            let phi2 = phi2_of(&sel, s);
            l1 += real_f(&c0, &c0, m)? / (phi2 * phi2);
        }
        if t == 0 {
            let c0 = DirichletCharacter::principal(qt)?;
            let chi = h.component(qt)?;
            let rest = r / qt;
            let sign_rest = if sel.len() % 2 == odd.len() % 2 { 1.0 } else { -1.0 };
            let chi_rest = h.component(rest)?.eval_real(-2)? as f64;
            let mu_rest = sign_rest;
            l2 += 2.0 * chi_rest * mu_rest * real_f(&c0, &chi, m)? / (phi2_of(&sel, 0) * phi2_r);
        }
        let q = qt * two_t;
        let chi = h.component(q)?;
        l3 += real_f(&chi, &chi, m)? / (phi2_r * phi2_r);
    }
    Ok((l1, l2, l3))
}

fn product_sums(m: i64, h: &ExceptionalZeroHypothesis, odd: &[u64], t: u32) -> Result<(f64, f64, f64)> {
    let phi2_r = phi2_of(odd, t);
    let mut with_two = vec![2];
    with_two.extend(odd);
    let l1 = partial_singular_series(m as u64, &with_two)?;
    let mut l2 = 0.0;
    if t == 0 {
        let mut prod = 2.0 / phi2_r;
        for &p in odd {
            let sp = local_sigma(LocalKind::SigmaPrime, p, m, Some(h))?;
            let chi_m2 = h.component(p)?.eval_real(-2)? as f64;
            prod *= sp / (p - 2) as f64 - chi_m2;
        }
        l2 = prod;
    }
    let mut l3 = 1.0 / (phi2_r * phi2_r);
    if t > 0 {
        l3 *= local_sigma(LocalKind::SigmaTilde, 2, m, Some(h))?;
    }
    for &p in odd {
        l3 *= 1.0 + local_sigma(LocalKind::SigmaTilde, p, m, Some(h))?;
    }
    Ok((l1, l2, l3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_hypothesis_is_trivial() {
        for m in [2u64, 3, 100] {
            let r = main_term_m(m, 1000, 100, None, AssemblyOrder::Direct).unwrap();
            assert_eq!((r.m_value, r.e_value), (1.0, 1.0));
        }
    }

    #[test]
    fn exceptional_sum_examples() {
        assert_eq!(exceptional_sums(50, 1000, 1.0).unwrap(), (-49.0, 49.0));
        let (j, i) = exceptional_sums(2, 10, 0.3).unwrap();
        assert_eq!((j, i), (-1.0, 1.0));
    }

    #[test]
    fn odd_m_is_degenerate() {
        let h = ExceptionalZeroHypothesis::new(5, 0.9).unwrap();
        assert!(matches!(
            main_term_m(11, 100, 10, Some(&h), AssemblyOrder::Product),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn orders_agree() {
        let h = ExceptionalZeroHypothesis::new(3, 0.99).unwrap();
        let a = main_term_m(10, 10_000, 100, Some(&h), AssemblyOrder::Direct).unwrap();
        let b = main_term_m(10, 10_000, 100, Some(&h), AssemblyOrder::Product).unwrap();
        assert!((a.m_value - b.m_value).abs() < 1e-10);
        assert!((a.e_value - 0.01 * 100f64.ln()).abs() < 1e-12);
    }
}

use crate::character::{legendre_character, DirichletCharacter};
use crate::group::CharacterGroup;
use goldtwin_core::{Error, Factorization, Result};

/// A real zero `β̃` of `L(s, χ̃)` for a real primitive character `χ̃ mod r̃`.
#[derive(Clone, Debug)]
pub struct ExceptionalZeroHypothesis {
    modulus: u64,
    beta: f64,
    chi: DirichletCharacter,
    two_exponent: u32,
    odd_primes: Vec<u64>,
}

fn shape(r: u64) -> Result<(u32, Vec<u64>)> {
    if r < 3 {
        return Err(Error::Usage(format!("exceptional modulus {r} must be at least 3")));
    }
    let t = r.trailing_zeros();
    if !matches!(t, 0 | 2 | 3) {
        return Err(Error::Usage(format!("2^{t} || {r}; need t in {{0, 2, 3}}")));
    }
    let mut odd = Vec::new();
    let mut s = r >> t;
    let mut p = 3;
    while p * p <= s {
        if s % p == 0 {
            s /= p;
            if s % p == 0 {
                return Err(Error::Usage(format!("odd part of {r} is not squarefree")));
            }
            odd.push(p);
        }
        p += 2;
    }
    if s > 1 {
        odd.push(s);
    }
    Ok((t, odd))
}

impl ExceptionalZeroHypothesis {
    /// Uses the Legendre symbols at the odd primes, times `χ_{-4}` when
    /// `4 || r̃` and the even character of conductor 8 when `8 || r̃`.
    pub fn new(modulus: u64, beta: f64) -> Result<Self> {
        let (t, odd) = shape(modulus)?;
        let mut parts = Vec::new();
        if t > 0 {
            let g = CharacterGroup::get(1 << t)?;
            let exps = if t == 2 { vec![1] } else { vec![0, 1] };
            parts.push(DirichletCharacter::new(g, exps)?);
        }
        for &p in &odd {
            parts.push(legendre_character(p)?);
        }
        let chi = DirichletCharacter::from_components(&parts)?;
        Self::with_character(modulus, beta, chi)
    }

    pub fn with_character(modulus: u64, beta: f64, chi: DirichletCharacter) -> Result<Self> {
        let (two_exponent, odd_primes) = shape(modulus)?;
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::Usage(format!("beta={beta} outside (0, 1]")));
        }
        if chi.modulus() != modulus || !chi.is_real() || !chi.is_primitive() || chi.is_principal() {
            return Err(Error::Usage(format!(
                "{chi:?} is not a real primitive character mod {modulus}"
            )));
        }
        Ok(Self { modulus, beta, chi, two_exponent, odd_primes })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    /// `t` with `2^t || r̃`.
    pub fn two_exponent(&self) -> u32 {
        self.two_exponent
    }

    pub fn odd_primes(&self) -> &[u64] {
        &self.odd_primes
    }

    /// Component of `χ̃` modulo a unitary divisor of `r̃`.
    pub fn component(&self, d: u64) -> Result<DirichletCharacter> {
        self.chi.restrict(d)
    }

    pub fn factorization(&self) -> Factorization {
        let mut pairs: Vec<(u64, u32)> = self.odd_primes.iter().map(|&p| (p, 1)).collect();
        if self.two_exponent > 0 {
            pairs.push((2, self.two_exponent));
        }
        Factorization::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        for r in [3u64, 4, 8, 15, 20, 24, 105, 120] {
            let h = ExceptionalZeroHypothesis::new(r, 0.95).unwrap();
            assert!(h.character().is_primitive());
            assert!(h.character().is_real());
        }
        assert!(ExceptionalZeroHypothesis::new(9, 0.9).is_err());
        assert!(ExceptionalZeroHypothesis::new(6, 0.9).is_err());
        assert!(ExceptionalZeroHypothesis::new(16, 0.9).is_err());
        assert!(ExceptionalZeroHypothesis::new(5, 0.0).is_err());
        assert!(ExceptionalZeroHypothesis::new(5, 1.0).is_ok());
        let h = ExceptionalZeroHypothesis::new(4, 0.9).unwrap();
        assert_eq!(h.character().eval_real(3).unwrap(), -1);
    }
}

//! Closed forms for the prime-modulus local factors of `F`.

use crate::character::DirichletCharacter;
use crate::group::pow_mod;
use crate::hypothesis::ExceptionalZeroHypothesis;
use crate::kernel::{f_bruteforce, round_integral};
use goldtwin_core::{Error, Result};

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i64 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn divides(p: u64, k: i64) -> bool {
    k.rem_euclid(p as i64) == 0
}

/// Ramanujan sum `c_p(k)`.
fn ramanujan(p: u64, k: i64) -> i64 {
    if divides(p, k) {
        p as i64 - 1
    } else {
        -1
    }
}

/// `F(χ0, χ0, 1, 1, m)` modulo an odd prime.
pub fn sigma_closed(p: u64, m: i64) -> i64 {
    let p = p as i64;
    if divides(p as u64, m) || divides(p as u64, m + 4) {
        p - 4
    } else if divides(p as u64, m + 2) {
        2 * p - 4
    } else {
        -4
    }
}

/// `F(χ0, χ, 1, 1, m)` for the Legendre symbol `χ` modulo an odd prime.
pub fn sigma_prime_closed(p: u64, m: i64) -> i64 {
    let pi = p as i64;
    let chi_m2 = legendre(-2, p);
    -pi * (legendre(m, p) + legendre(m + 2, p))
        + chi_m2 * (ramanujan(p, m + 2) + ramanujan(p, m + 4))
}

/// `F(χ, χ, 1, 1, m)` for the Legendre symbol `χ` modulo an odd prime.
pub fn sigma_tilde_closed(p: u64, m: i64) -> i64 {
    let pi = p as i64;
    let chi_m1 = legendre(-1, p);
    pi * chi_m1 * ramanujan(p, m) - 2 * pi * chi_m1 * legendre(2 * m + 4, p) + ramanujan(p, m + 4)
}

/// `F(χ0, χ0, p, 1, m)` modulo an odd prime.
pub fn f_p1_closed(p: u64, m: i64) -> i64 {
    if divides(p, m + 2) || divides(p, m + 4) {
        2 - p as i64
    } else {
        2
    }
}

/// `F(χ0, χ0, p, p, m)` modulo an odd prime.
pub fn f_pp_closed(p: u64, m: i64) -> i64 {
    if divides(p, m + 4) {
        p as i64 - 1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalKind {
    Sigma,
    SigmaPrime,
    SigmaTilde,
}

impl std::str::FromStr for LocalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma" => Ok(Self::Sigma),
            "sigma_prime" => Ok(Self::SigmaPrime),
            "sigma_tilde" => Ok(Self::SigmaTilde),
            _ => Err(Error::Usage(format!("unknown local factor {s}"))),
        }
    }
}

/// Local factor at `p`. At `p = 2` the hypothesis-dependent kinds are
/// evaluated numerically at modulus `2^t`.
pub fn local_sigma(
    kind: LocalKind,
    p: u64,
    m: i64,
    hyp: Option<&ExceptionalZeroHypothesis>,
) -> Result<f64> {
    if kind == LocalKind::Sigma {
        return Ok(if p == 2 {
            if m % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        } else {
            sigma_closed(p, m) as f64
        });
    }
    let hyp = hyp.ok_or_else(|| Error::Usage(format!("{kind:?} needs an exceptional character")))?;
    if hyp.modulus() % p != 0 {
        return Err(Error::Usage(format!("{p} does not divide {}", hyp.modulus())));
    }
    if p != 2 {
        return Ok(match kind {
            LocalKind::SigmaPrime => sigma_prime_closed(p, m),
            _ => sigma_tilde_closed(p, m),
        } as f64);
    }
    let q = 1u64 << hyp.two_exponent();
    let chi = hyp.component(q)?;
    let v = match kind {
        LocalKind::SigmaPrime => f_bruteforce(&DirichletCharacter::principal(q)?, &chi, 1, 1, m)?,
        _ => f_bruteforce(&chi, &chi, 1, 1, m)?,
    };
    Ok(round_integral(v)? as f64)
}

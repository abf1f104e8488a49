use crate::character::DirichletCharacter;
use crate::kernel::f_bruteforce;
use goldtwin_core::{Error, Result};

/// Upper bound on `|F(χ1, χ2, j1, j2, m)|` for characters modulo `p^α`.
pub fn local_kernel_bound(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    j1: u64,
    j2: u64,
    m: i64,
) -> Result<f64> {
    let comps = &chi1.group().components;
    if comps.len() != 1 {
        return Err(Error::Usage(format!("{} is not a prime power", chi1.modulus())));
    }
    let (p, alpha) = (comps[0].p, comps[0].alpha as i32);
    let pf = p as f64;
    if p == 2 {
        return Ok(pf.powi(2 * alpha));
    }
    if (j1 != 0 && j1 % p == 0) || (j2 != 0 && j2 % p == 0) {
        return Ok(2.0 * pf.powi(2 * alpha - 1));
    }
    let q = chi1.modulus() as i64;
    if *chi1 == chi2.conj() && m.rem_euclid(q) == 0 {
        Ok(pf.powi(2 * alpha) - 3.0 * pf.powi(2 * alpha - 1) + 1.0)
    } else {
        Ok(pf.powf(2.0 * alpha as f64 - 0.5) + 3.0 * pf.powi(2 * alpha - 1))
    }
}

/// Compares the brute-force `|F|` against [`local_kernel_bound`].
pub fn local_kernel_bound_check(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    j1: u64,
    j2: u64,
    m: i64,
) -> Result<bool> {
    let bound = local_kernel_bound(chi1, chi2, j1, j2, m)?;
    let f = f_bruteforce(chi1, chi2, j1, j2, m)?;
    Ok(f.norm() <= bound * (1.0 + 1e-12) + 1e-9)
}

use crate::character::DirichletCharacter;
use crate::gauss::{modified_gauss_sums_direct, modified_gauss_sums_fft};
use goldtwin_core::{gcd, Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Above this modulus the per-shift Gauss sums are taken from an FFT.
const DIRECT_LIMIT: u64 = 512;

fn same_modulus(chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> Result<u64> {
    if chi1.modulus() != chi2.modulus() {
        return Err(Error::Usage(format!(
            "characters have different moduli {} and {}",
            chi1.modulus(),
            chi2.modulus()
        )));
    }
    Ok(chi1.modulus())
}

/// `F(χ1, χ2, j1, j2, m) = Σ_{a (q)^*} c_{χ1}(a, j1) c_{χ2}(a, j2) e_q(-am)`,
/// summed directly; `j = 0` stands for the unrestricted Gauss sum.
pub fn f_bruteforce(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    j1: u64,
    j2: u64,
    m: i64,
) -> Result<Complex64> {
    let q = same_modulus(chi1, chi2)?;
    let c1 = modified_gauss_sums_direct(chi1, j1)?;
    let c2 = modified_gauss_sums_direct(chi2, j2)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..q {
        if gcd(a, q) == 1 {
            acc += c1[a as usize] * c2[a as usize] * crate::e_frac(-(a as i128) * m as i128, q);
        }
    }
    Ok(acc)
}

/// `F` at every `m mod q`: direct Gauss sums, then one forward DFT over `m`.
pub fn f_all_m(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    j1: u64,
    j2: u64,
) -> Result<Vec<Complex64>> {
    let q = same_modulus(chi1, chi2)?;
    let c1 = modified_gauss_sums_direct(chi1, j1)?;
    let c2 = modified_gauss_sums_direct(chi2, j2)?;
    Ok(f_from_sums(q, &c1, &c2))
}

/// Forward DFT of `c1 c2` restricted to units.
pub fn f_from_sums(q: u64, c1: &[Complex64], c2: &[Complex64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = (0..q)
        .map(|a| {
            if gcd(a, q) == 1 {
                c1[a as usize] * c2[a as usize]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    FftPlanner::<f64>::new().plan_fft_forward(q as usize).process(&mut buf);
    buf
}

/// Local restriction parameter at `p`: 0 stays unrestricted, otherwise `(j, p)`.
fn local_j(j: u64, p: u64) -> u64 {
    if j == 0 {
        0
    } else {
        gcd(j, p)
    }
}

/// True when some `p^α || q` with `α > 1` has a component conductor below `p^α`.
pub fn kernel_vanishes(chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> bool {
    let e1 = chi1.conductor_exponents();
    let e2 = chi2.conductor_exponents();
    chi1.group()
        .components
        .iter()
        .enumerate()
        .any(|(i, c)| c.alpha > 1 && (e1[i] < c.alpha || e2[i] < c.alpha))
}

/// `F` for characters modulo a prime power.
pub fn local_f(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    j1: u64,
    j2: u64,
    m: i64,
) -> Result<Complex64> {
    let q = same_modulus(chi1, chi2)?;
    if q <= DIRECT_LIMIT {
        return f_bruteforce(chi1, chi2, j1, j2, m);
    }
    let c1 = modified_gauss_sums_fft(chi1, j1)?;
    let c2 = modified_gauss_sums_fft(chi2, j2)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..q {
        if gcd(a, q) == 1 {
            acc += c1[a as usize] * c2[a as usize] * crate::e_frac(-(a as i128) * m as i128, q);
        }
    }
    Ok(acc)
}

/// `F` as a product of prime-power factors, exactly zero when a
/// higher prime power is not matched by both conductors.
pub fn f_factored(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    j1: u64,
    j2: u64,
    m: i64,
) -> Result<Complex64> {
    same_modulus(chi1, chi2)?;
    check_rad(chi1, j1)?;
    check_rad(chi1, j2)?;
    if kernel_vanishes(chi1, chi2) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let comps1 = chi1.components();
    let comps2 = chi2.components();
    let mut acc = Complex64::new(1.0, 0.0);
    for ((p, _, x1), (_, _, x2)) in comps1.iter().zip(&comps2) {
        acc *= local_f(x1, x2, local_j(j1, *p), local_j(j2, *p), m)?;
    }
    Ok(acc)
}

/// `F` at every `m mod p^α` for characters modulo a prime power.
pub fn local_f_table(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    j1: u64,
    j2: u64,
) -> Result<Vec<Complex64>> {
    let q = same_modulus(chi1, chi2)?;
    if q <= DIRECT_LIMIT {
        return f_all_m(chi1, chi2, j1, j2);
    }
    let c1 = modified_gauss_sums_fft(chi1, j1)?;
    let c2 = modified_gauss_sums_fft(chi2, j2)?;
    Ok(f_from_sums(q, &c1, &c2))
}

/// [`f_factored`] at every `m mod q`, combining one table per prime power.
pub fn f_factored_table(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    j1: u64,
    j2: u64,
) -> Result<Vec<Complex64>> {
    let q = same_modulus(chi1, chi2)?;
    check_rad(chi1, j1)?;
    check_rad(chi1, j2)?;
    if kernel_vanishes(chi1, chi2) {
        return Ok(vec![Complex64::new(0.0, 0.0); q as usize]);
    }
    let mut out = vec![Complex64::new(1.0, 0.0); q as usize];
    for ((p, _, x1), (_, _, x2)) in chi1.components().iter().zip(&chi2.components()) {
        let local = local_f_table(x1, x2, local_j(j1, *p), local_j(j2, *p))?;
        let pa = local.len();
        for (m, v) in out.iter_mut().enumerate() {
            *v *= local[m % pa];
        }
    }
    Ok(out)
}

fn check_rad(chi: &DirichletCharacter, j: u64) -> Result<()> {
    let rad: u64 = chi.group().components.iter().map(|c| c.p).product();
    if j != 0 && rad % j != 0 {
        return Err(Error::Usage(format!("j={j} does not divide rad({})", chi.modulus())));
    }
    Ok(())
}

/// Rounds a value known to be a rational integer, checking the 0.4 gap.
pub fn round_integral(z: Complex64) -> Result<i64> {
    let r = z.re.round();
    if (z.re - r).abs() > 0.4 || z.im.abs() > 0.4 {
        return Err(Error::Degenerate(format!("{z} is not within 0.4 of an integer")));
    }
    Ok(r as i64)
}

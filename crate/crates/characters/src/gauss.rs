use crate::character::{e_frac, DirichletCharacter};
use goldtwin_core::{gcd, mod_inverse, Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Roots of unity `e(k/q)` for `k < q`.
pub fn root_table(q: u64) -> Vec<Complex64> {
    (0..q as i128).map(|k| e_frac(k, q)).collect()
}

/// Gauss sum `Σ_{b (q)^*} χ(b) e_q(ab)` by direct summation.
pub fn gauss_sum(chi: &DirichletCharacter, a: i64) -> Complex64 {
    let q = chi.modulus();
    let mut acc = zero();
    for b in 0..q as i64 {
        if gcd(b as u64, q) != 1 {
            continue;
        }
        acc += chi.eval(b) * e_frac(a as i128 * b as i128, q);
    }
    acc
}

/// Gauss sums for every shift `a mod q`, each by direct summation.
pub fn gauss_sums_direct(chi: &DirichletCharacter) -> Vec<Complex64> {
    modified_gauss_sums_direct(chi, 0).expect("unrestricted sums are always defined")
}

fn radical(q: u64) -> u64 {
    let mut r = 1;
    let mut n = q;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            r *= p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        r *= n;
    }
    r
}

fn check_j(q: u64, j: u64) -> Result<u64> {
    let rad = radical(q);
    if j != 0 && rad % j != 0 {
        return Err(Error::Usage(format!("j={j} does not divide rad({q})={rad}")));
    }
    Ok(rad)
}

/// Residues kept by the gcd restriction `(b + 2, rad q) = (j, rad q)`; `j = 0` keeps all.
fn admissible(b: u64, q: u64, rad: u64, j: u64) -> bool {
    if gcd(b, q) != 1 {
        return false;
    }
    j == 0 || gcd(b + 2, rad) == gcd(j, rad)
}

/// Modified Gauss sum `c_χ(a, j)` by direct summation; `j = 0` drops the restriction.
pub fn modified_gauss_sum(chi: &DirichletCharacter, a: i64, j: u64) -> Result<Complex64> {
    let q = chi.modulus();
    let rad = check_j(q, j)?;
    let mut acc = zero();
    for b in 0..q {
        if admissible(b, q, rad, j) {
            acc += chi.eval(b as i64) * e_frac(a as i128 * b as i128, q);
        }
    }
    Ok(acc)
}

/// `c_χ(a, j)` for every `a mod q` by direct summation with a root table.
pub fn modified_gauss_sums_direct(chi: &DirichletCharacter, j: u64) -> Result<Vec<Complex64>> {
    let q = chi.modulus();
    let rad = check_j(q, j)?;
    let roots = root_table(q);
    let terms: Vec<(usize, Complex64)> = (0..q)
        .filter(|&b| admissible(b, q, rad, j))
        .map(|b| (b as usize, chi.eval(b as i64)))
        .collect();
    let qs = q as usize;
    Ok((0..qs)
        .map(|a| {
            let mut acc = zero();
            for &(b, v) in &terms {
                acc += v * roots[a * b % qs];
            }
            acc
        })
        .collect())
}

/// `c_χ(a, j)` for every `a mod q` via one inverse FFT.
pub fn modified_gauss_sums_fft(chi: &DirichletCharacter, j: u64) -> Result<Vec<Complex64>> {
    let q = chi.modulus();
    let rad = check_j(q, j)?;
    let mut buf: Vec<Complex64> = (0..q)
        .map(|b| if admissible(b, q, rad, j) { chi.eval(b as i64) } else { zero() })
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_inverse(q as usize).process(&mut buf);
    Ok(buf)
}

/// Gauss sum of a primitive character at shift 1.
pub fn tau(chi: &DirichletCharacter) -> Complex64 {
    gauss_sum(chi, 1)
}

struct LocalGauss {
    p: u64,
    alpha: u32,
    pa: u64,
    /// Inverse of the cofactor `q / p^α` modulo `p^α`.
    shift: u64,
    prim: DirichletCharacter,
    alpha0: u32,
    tau: Complex64,
}

/// Closed-form evaluation of `c_χ(a)` through its prime-power factors.
///
/// Each factor is `c_{χ^{(p^α)}}(\bar{q'} a)` with `q' = q / p^α`, evaluated
/// from the conductor of the component; the result is exactly zero when some
/// factor vanishes.
pub struct GaussFormula {
    locals: Vec<LocalGauss>,
}

impl GaussFormula {
    pub fn new(chi: &DirichletCharacter) -> Self {
        let q = chi.modulus();
        let locals = chi
            .components()
            .into_iter()
            .map(|(p, alpha, comp)| {
                let pa = p.pow(alpha);
                let shift = mod_inverse((q / pa) % pa, pa).expect("coprime cofactor");
                let prim = comp.primitive_part();
                let mut alpha0 = 0;
                let mut f = prim.modulus();
                while f > 1 {
                    f /= p;
                    alpha0 += 1;
                }
                let tau = tau(&prim);
                LocalGauss { p, alpha, pa, shift, prim, alpha0, tau }
            })
            .collect();
        Self { locals }
    }

    pub fn eval(&self, a: i64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for l in &self.locals {
            let m = ((a as i128).rem_euclid(l.pa as i128) as u128 * l.shift as u128 % l.pa as u128) as u64;
            let v = l.eval(m);
            if v == zero() {
                return zero();
            }
            acc *= v;
        }
        acc
    }
}

pub fn gauss_sum_formula(chi: &DirichletCharacter, a: i64) -> Complex64 {
    GaussFormula::new(chi).eval(a)
}

fn phi_pp(p: u64, k: u32) -> u64 {
    if k == 0 {
        1
    } else {
        p.pow(k - 1) * (p - 1)
    }
}

impl LocalGauss {
    fn eval(&self, m: u64) -> Complex64 {
        let (p, alpha) = (self.p, self.alpha);
        let mut alpha_m = 0;
        let mut mm = m;
        if m % self.pa == 0 {
            alpha_m = alpha;
        } else {
            while mm % p == 0 {
                mm /= p;
                alpha_m += 1;
            }
        }
        if self.alpha0 > alpha - alpha_m {
            return zero();
        }
        let k = alpha - self.alpha0 - alpha_m;
        let mobius = match k {
            0 => 1.0,
            1 => -1.0,
            _ => return zero(),
        };
        let cofactor = if alpha_m == alpha { 1 } else { mm };
        let value = self.prim.eval(cofactor as i64).conj() * self.prim.eval(p.pow(k) as i64);
        let ratio = phi_pp(p, alpha) as f64 / phi_pp(p, alpha - alpha_m) as f64;
        value * mobius * ratio * self.tau
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::{character_group, legendre_character};

    #[test]
    fn gauss_examples() {
        let chi0 = DirichletCharacter::principal(3).unwrap();
        assert!((gauss_sum(&chi0, 1) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let chi5 = legendre_character(5).unwrap();
        assert!((gauss_sum(&chi5, 1).norm() - 5f64.sqrt()).abs() < 1e-12);
        let triv = DirichletCharacter::principal(1).unwrap();
        assert!((gauss_sum(&triv, 7) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn formula_examples() {
        let chi9 = DirichletCharacter::principal(9).unwrap();
        assert_eq!(gauss_sum_formula(&chi9, 1), zero());
        assert!(gauss_sum(&chi9, 1).norm() < 1e-12);
        let chi7 = legendre_character(7).unwrap();
        for a in 1..7 {
            let expect = chi7.eval(a).conj() * tau(&chi7);
            assert!((gauss_sum_formula(&chi7, a) - expect).norm() < 1e-12);
        }
        for chi in character_group(15).unwrap() {
            assert!((gauss_sum_formula(&chi, 2) - gauss_sum(&chi, 2)).norm() < 1e-9);
        }
    }

    #[test]
    fn modified_examples() {
        let chi0 = DirichletCharacter::principal(3).unwrap();
        let c1 = modified_gauss_sum(&chi0, 1, 1).unwrap();
        assert!((c1 - e_frac(2, 3)).norm() < 1e-12);
        let c3 = modified_gauss_sum(&chi0, 1, 3).unwrap();
        assert!((c3 - e_frac(1, 3)).norm() < 1e-12);
        assert!(modified_gauss_sum(&chi0, 1, 2).is_err());
        let chi = legendre_character(7).unwrap();
        for a in 0..7 {
            let sum = modified_gauss_sum(&chi, a, 1).unwrap() + modified_gauss_sum(&chi, a, 7).unwrap();
            assert!((sum - gauss_sum(&chi, a)).norm() < 1e-12);
        }
        let direct = modified_gauss_sums_direct(&chi, 1).unwrap();
        let fast = modified_gauss_sums_fft(&chi, 1).unwrap();
        for (x, y) in direct.iter().zip(&fast) {
            assert!((x - y).norm() < 1e-9);
        }
    }
}

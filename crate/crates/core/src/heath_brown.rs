use crate::error::{Error, Result};
use crate::factor::binomial;
use crate::primes::PrimeTable;

/// Integer-valued arithmetic functions restricted to the divisors of a fixed `n`.
struct DivisorLattice {
    divs: Vec<u64>,
}

impl DivisorLattice {
    fn index(&self, d: u64) -> usize {
        self.divs.binary_search(&d).expect("divisor present")
    }

    fn convolve(&self, f: &[i64], g: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.divs.len()];
        for (i, &d) in self.divs.iter().enumerate() {
            let mut acc = 0;
            for (k, &e) in self.divs[..=i].iter().enumerate() {
                if d % e == 0 && f[k] != 0 {
                    acc += f[k] * g[self.index(d / e)];
                }
            }
            out[i] = acc;
        }
        out
    }
}

/// Right-hand side of Heath-Brown's identity at `X = n`.
///
/// Sums `-Σ_j (-1)^j C(J,j) Σ (log n_1) μ(n_{j+1})…μ(n_{2j})` over ordered
/// factorizations `n = n_1⋯n_{2j}` whose Möbius variables satisfy
/// `n_i^J < n`. The result equals `Λ(n)`.
///
/// The combinatorial part is carried in integers and `log n_1` is expanded
/// over primes, so the only rounding is in the final `Σ c_p log p`.
pub fn heath_brown_terms(n: u64, j_max: u32, table: &PrimeTable) -> Result<f64> {
    Ok(heath_brown_coefficients(n, j_max, table)?
        .into_iter()
        .map(|(p, c)| c as f64 * (p as f64).ln())
        .sum())
}

/// Integer coefficients `c_p` with `heath_brown_terms(n, J) = Σ c_p log p`.
pub fn heath_brown_coefficients(n: u64, j_max: u32, table: &PrimeTable) -> Result<Vec<(u64, i64)>> {
    if !(1..=7).contains(&j_max) {
        return Err(Error::Usage(format!("J must lie in [1, 7], got {j_max}")));
    }
    if n < 2 {
        return Err(Error::Range(format!("Heath-Brown identity needs n >= 2, got {n}")));
    }
    let f = table.factorize(n)?;
    let lat = DivisorLattice { divs: f.divisors() };
    let len = lat.divs.len();

    let one = vec![1i64; len];
    let mut delta = vec![0i64; len];
    delta[0] = 1;
    let mu_small: Vec<i64> = lat
        .divs
        .iter()
        .map(|&d| {
            let small = (d as u128)
                .checked_pow(j_max)
                .map(|dj| dj < n as u128)
                .unwrap_or(false);
            if small {
                table.factorize(d).map(|g| g.mu()).unwrap_or(0)
            } else {
                0
            }
        })
        .collect();

    // kernel(b) = -Σ_j (-1)^j C(J,j) (1^{*(j-1)} * μ_small^{*j})(b)
    let mut kernel = vec![0i64; len];
    let mut ones = delta;
    let mut mobius = mu_small.clone();
    for j in 1..=j_max {
        if j > 1 {
            ones = lat.convolve(&ones, &one);
            mobius = lat.convolve(&mobius, &mu_small);
        }
        let part = lat.convolve(&ones, &mobius);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let c = binomial(j_max as u64, j as u64) as i64;
        for (k, v) in kernel.iter_mut().zip(part) {
            *k -= sign * c * v;
        }
    }

    // Σ_{a | n} log(a) kernel(n/a), with log a = Σ v_p(a) log p.
    let mut coeffs = Vec::new();
    for &(p, _) in f.pairs() {
        let mut c = 0i64;
        for &a in &lat.divs {
            let mut v = 0i64;
            let mut x = a;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            if v != 0 {
                c += v * kernel[lat.index(n / a)];
            }
        }
        coeffs.push((p, c));
    }
    Ok(coeffs)
}

use crate::ntt::{convolve_exact_raw, exact_range};
use crate::sequence::{ArithSequence, SequenceKind, Values};
use goldtwin_core::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvMode {
    Float,
    Exact,
}

/// `(f*g)(m) = Σ_{n₁+n₂=m} f(n₁)g(n₂)` for `m ∈ [0, 2N]` (entries 0 and 1 vanish).
pub fn convolve(f: &ArithSequence, g: &ArithSequence, mode: ConvMode) -> Result<ArithSequence> {
    if f.n != g.n {
        return Err(Error::Usage(format!("length mismatch: {} vs {}", f.n, g.n)));
    }
    let values = match mode {
        ConvMode::Float => Values::Float(convolve_float(&f.as_f64(), &g.as_f64())),
        ConvMode::Exact => {
            let (a, b) = match (f.as_int(), g.as_int()) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Usage("exact mode needs integer sequences".into())),
            };
            let out_len = a.len() + b.len() - 1;
            if out_len.next_power_of_two() > 1 << 23 {
                return Err(Error::Range(format!(
                    "transform length {out_len} exceeds 2^23; split the sequences into blocks"
                )));
            }
            let l1 = |s: &[i64]| s.iter().map(|x| x.unsigned_abs() as u128).sum::<u128>();
            let sup = |s: &[i64]| s.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
            let bound = (l1(a) * sup(b)).min(l1(b) * sup(a));
            if bound >= exact_range() {
                return Err(Error::Range(format!(
                    "convolution values up to {bound} overflow the reconstruction range; split the inputs"
                )));
            }
            Values::Int(convolve_exact_raw(a, b))
        }
    };
    let len = match &values {
        Values::Float(v) => v.len(),
        Values::Int(v) => v.len(),
    };
    Ok(ArithSequence { n: len as u64 - 1, kind: SequenceKind::Custom, values })
}

/// Real linear convolution by a complex FFT of size `≥ |f| + |g| − 1`.
pub fn convolve_float(f: &[f64], g: &[f64]) -> Vec<f64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let out_len = f.len() + g.len() - 1;
    let size = out_len.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    // Pack f + i·g; the product spectrum is recovered from the conjugate symmetry.
    let mut z: Vec<Complex64> = (0..size)
        .map(|i| Complex64::new(f.get(i).copied().unwrap_or(0.0), g.get(i).copied().unwrap_or(0.0)))
        .collect();
    fwd.process(&mut z);
    let mut prod = vec![Complex64::new(0.0, 0.0); size];
    for k in 0..size {
        let a = z[k];
        let b = z[(size - k) % size].conj();
        // F = (a + b)/2, G = (a − b)/(2i)
        let ff = (a + b) * 0.5;
        let gg = (a - b) * Complex64::new(0.0, -0.5);
        prod[k] = ff * gg;
    }
    inv.process(&mut prod);
    let scale = 1.0 / size as f64;
    prod[..out_len].iter().map(|c| c.re * scale).collect()
}

/// Quadratic-time reference convolution.
pub fn convolve_direct(f: &[f64], g: &[f64]) -> Vec<f64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a != 0.0 {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
    }
    out
}

use crate::sequence::ArithSequence;
use goldtwin_core::{gcd, ArithContext, Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// `e(x) = exp(2πix)`, reducing `x` mod 1 first.
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x.rem_euclid(1.0))
}

/// `Σ_{n≤y} f(n) e(αn)` by direct summation.
pub fn exp_sum(f: &ArithSequence, alpha: f64, y: u64) -> Result<Complex64> {
    if y > f.n {
        return Err(Error::Range(format!("y={y} exceeds N={}", f.n)));
    }
    let a = alpha.rem_euclid(1.0);
    Ok((1..=y)
        .filter_map(|n| {
            let v = f.get(n);
            (v != 0.0).then(|| v * e(a * n as f64))
        })
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcWitness {
    pub b: u64,
    pub q: u64,
    pub distance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcClassification {
    pub alpha: f64,
    pub is_major: bool,
    pub witness: Option<ArcWitness>,
}

/// Major iff `|α − b/q| ≤ 1/Q` for some `q ≤ q_max`, `(b,q) = 1`; closed arcs,
/// smallest `q` reported.
pub fn classify_arc_with(alpha: f64, q_max: u64, q_width: f64) -> Result<ArcClassification> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Range(format!("alpha={alpha} outside [0,1)")));
    }
    let radius = 1.0 / q_width;
    for q in 1..=q_max.max(1) {
        let qf = q as f64;
        let base = (alpha * qf).floor() as u64;
        for b in [base, base + 1] {
            if b > q || gcd(b, q) != 1 {
                continue;
            }
            let distance = (alpha - b as f64 / qf).abs();
            if distance <= radius * (1.0 + 1e-12) {
                let witness = Some(ArcWitness { b, q, distance });
                return Ok(ArcClassification { alpha, is_major: true, witness });
            }
        }
    }
    Ok(ArcClassification { alpha, is_major: false, witness: None })
}

/// Arcs of width `1/Q` around `b/q`, `q ≤ P^{c0}`, `Q = N/P^{c0}`.
pub fn classify_arc(alpha: f64, n_range: u64, p_level: u64) -> Result<ArcClassification> {
    let ctx = ArithContext::new(n_range, p_level)?;
    classify_arc_with(alpha, ctx.max_denominator().floor() as u64, ctx.arc_width_inverse())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TSums {
    pub t: Complex64,
    pub t_tilde: Option<Complex64>,
}

/// `T(η) = Σ_{n≤N} e(ηn)` in closed form and `T̃(η) = −Σ_{n≤N} n^{β−1} e(ηn)`.
pub fn t_sums(eta: f64, n_range: u64, beta: Option<f64>) -> Result<TSums> {
    if eta.abs() > 0.5 {
        return Err(Error::Range(format!("|eta|={} exceeds 1/2", eta.abs())));
    }
    let n = n_range as f64;
    let t = if eta == 0.0 {
        Complex64::new(n, 0.0)
    } else {
        let w = e(eta);
        w * (e(eta * n) - 1.0) / (w - 1.0)
    };
    let t_tilde = beta.map(|b| -(1..=n_range).map(|k| (k as f64).powf(b - 1.0) * e(eta * k as f64)).sum::<Complex64>());
    Ok(TSums { t, t_tilde })
}

/// Direct `Σ_{n≤N} e(ηn)`.
pub fn t_direct(eta: f64, n_range: u64) -> Complex64 {
    (1..=n_range).map(|k| e(eta * k as f64)).sum()
}

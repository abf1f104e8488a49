use crate::functions::{weighted_margin, LinearSieveFunctions};
use goldtwin_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChenConstants {
    pub c_b1: f64,
    pub c_b2: f64,
    pub c_e3star: f64,
    pub err_b1: f64,
    pub err_b2: f64,
}

fn kernel(t1: f64, t2: f64) -> f64 {
    1.0 / (t1 * t2 * (1.0 - t1 - t2))
}

/// Bounds of `t₂` over the two regions, `None` when empty.
fn b1_inner(t1: f64, eps: f64) -> (f64, f64) {
    (1.0 / 3.0 - eps, ((1.0 - t1) / 2.0).min(0.9 - t1))
}

fn b2_inner(t1: f64, _eps: f64) -> (f64, f64) {
    (t1, ((1.0 - t1) / 2.0).min(0.9 - t1))
}

fn b1_outer(eps: f64) -> (f64, f64) {
    (0.1, 1.0 / 3.0 - eps)
}

fn b2_outer(eps: f64) -> (f64, f64) {
    (1.0 / 3.0 - eps, 1.0 / 3.0)
}

fn simpson_step(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson; returns the value and the accumulated error estimate.
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson_step(fa, flm, fm, a, m);
        let right = simpson_step(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return (left + right + delta / 15.0, delta.abs() / 15.0);
        }
        let (l, le) = rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1);
        let (r, re) = rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
        (l + r, le + re)
    }
    if b <= a {
        return (0.0, 0.0);
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson_step(fa, fm, fb, a, b);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

fn region_integral(outer: (f64, f64), inner: fn(f64, f64) -> (f64, f64), eps: f64, tol: f64) -> (f64, f64) {
    let inner_tol = tol * 1e-2;
    let f = |t1: f64| {
        let (lo, hi) = inner(t1, eps);
        adaptive(&|t2| kernel(t1, t2), lo, hi, inner_tol).0
    };
    let (v, e) = adaptive(&f, outer.0, outer.1, tol);
    (v, e + inner_tol * (outer.1 - outer.0))
}

/// The two region integrals of `dt₁dt₂ / (t₁t₂(1−t₁−t₂))` and `c_{E₃*} = c_{B₁}/2 + c_{B₂}`.
pub fn chen_constants(eps: f64) -> Result<ChenConstants> {
    if !(eps > 0.0 && eps < 0.01) {
        return Err(Error::Usage(format!("eps={eps} outside (0, 1/100)")));
    }
    let (c_b1, err_b1) = region_integral(b1_outer(eps), b1_inner, eps, 1e-10);
    let (c_b2, err_b2) = region_integral(b2_outer(eps), b2_inner, eps, 1e-12);
    Ok(ChenConstants { c_b1, c_b2, c_e3star: 0.5 * c_b1 + c_b2, err_b1, err_b2 })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChenMonteCarlo {
    pub b1: MonteCarloEstimate,
    pub b2: MonteCarloEstimate,
}

fn mc_region(outer: (f64, f64), inner: fn(f64, f64) -> (f64, f64), eps: f64, samples: u64, seed: u64) -> MonteCarloEstimate {
    // Bounding box in t₂.
    let (lo2, hi2) = {
        let grid = 64;
        (0..=grid)
            .map(|i| inner(outer.0 + (outer.1 - outer.0) * i as f64 / grid as f64, eps))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (l, h)| (a.min(l), b.max(h)))
    };
    let area = (outer.1 - outer.0) * (hi2 - lo2);
    const CHUNK: u64 = 1 << 16;
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = CHUNK.min(samples - c * CHUNK);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let t1 = rng.gen_range(outer.0..outer.1);
                let t2 = rng.gen_range(lo2..hi2);
                let (l, h) = inner(t1, eps);
                let v = if t2 >= l && t2 <= h { area * kernel(t1, t2) } else { 0.0 };
                s += v;
                s2 += v * v;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = partial.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let n = samples as f64;
    let mean = s / n;
    let var = (s2 / n - mean * mean).max(0.0);
    MonteCarloEstimate { mean, std_error: (var / n).sqrt() }
}

/// Independent Monte-Carlo estimates of the two region integrals.
pub fn chen_monte_carlo(eps: f64, samples: u64, seed: u64) -> Result<ChenMonteCarlo> {
    if !(eps > 0.0 && eps < 0.01) || samples < 2 {
        return Err(Error::Usage("need eps in (0, 1/100) and at least two samples".into()));
    }
    Ok(ChenMonteCarlo {
        b1: mc_region(b1_outer(eps), b1_inner, eps, samples, seed),
        b2: mc_region(b2_outer(eps), b2_inner, eps, samples, seed ^ 0x9e37_79b9_7f4a_7c15),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChenMargin {
    pub lower_term: f64,
    pub upper_at_4: f64,
    pub upper_at_5: f64,
    pub margin_at_4: f64,
    pub margin_at_5: f64,
}

/// `f(s) − ½∫₁^u F(s−t)/t dt − c_{E₃*}·F(s')` with `z = N^{1/15}`, `s = 7.5`,
/// `u = 5`, reported for `s' = 4` and `s' = 5`.
pub fn chen_margin(fns: &LinearSieveFunctions, consts: &ChenConstants) -> Result<ChenMargin> {
    let lower_term = weighted_margin(fns, 1.0 / 15.0, 1.0 / 3.0, 0.5)?;
    let upper_at_4 = fns.upper(4.0)?;
    let upper_at_5 = fns.upper(5.0)?;
    Ok(ChenMargin {
        lower_term,
        upper_at_4,
        upper_at_5,
        margin_at_4: lower_term - consts.c_e3star * upper_at_4,
        margin_at_5: lower_term - consts.c_e3star * upper_at_5,
    })
}

//! Verification sweeps behind `goldtwin verify`.
//!
//! Every sweep is deterministic given the seed; the `full` scale runs the
//! larger ranges used by the acceptance suite.

use goldtwin_characters::*;
use goldtwin_conv::*;
use goldtwin_core::{gcd, heath_brown_coefficients, Error, LambdaKind, PrimeTable, Result};
use goldtwin_progressions::*;
use goldtwin_series::*;
use goldtwin_sieve::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::HashMap;

pub const SUITES: [&str; 9] =
    ["characters", "series", "sieves", "sievefn", "convolution", "scan", "heath-brown", "bv", "main-term"];

#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub full: bool,
    pub seed: u64,
}

impl Scale {
    fn pick<T>(&self, quick: T, full: T) -> T {
        if self.full {
            full
        } else {
            quick
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(salt);
        r
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Self { name, pass, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "pass": self.pass, "detail": self.detail })
    }
}

pub fn run_suite(name: &str, scale: Scale) -> Result<Vec<Check>> {
    match name {
        "characters" => characters(scale),
        "series" => series(scale),
        "sieves" => sieves(scale),
        "sievefn" => sievefn(scale),
        "convolution" => convolution(scale),
        "scan" => scan(scale),
        "heath-brown" => heath_brown(scale),
        "bv" => bv(scale),
        "main-term" => main_term(scale),
        other => Err(Error::Usage(format!("unknown suite {other}; expected one of {} or all", SUITES.join(", ")))),
    }
}

fn odd_primes(limit: u64) -> Vec<u64> {
    (3..=limit).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn radical(q: u64) -> u64 {
    (2..=q).filter(|&p| q % p == 0 && (2..p).all(|d| p % d != 0)).product()
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn characters(scale: Scale) -> Result<Vec<Check>> {
    let mut out = Vec::new();

    let p_max = scale.pick(47, 97);
    let mut bad = 0;
    let mut count = 0;
    for p in odd_primes(p_max) {
        let c0 = DirichletCharacter::principal(p)?;
        let l = legendre_character(p)?;
        let cases: [(Vec<Complex64>, fn(u64, i64) -> i64); 5] = [
            (f_all_m(&c0, &c0, 1, 1)?, sigma_closed),
            (f_all_m(&c0, &l, 1, 1)?, sigma_prime_closed),
            (f_all_m(&l, &l, 1, 1)?, sigma_tilde_closed),
            (f_all_m(&c0, &c0, p, 1)?, f_p1_closed),
            (f_all_m(&c0, &c0, p, p)?, f_pp_closed),
        ];
        for (vals, closed) in &cases {
            for m in 0..p as i64 {
                count += 1;
                if round_integral(vals[m as usize]).ok() != Some(closed(p, m)) {
                    bad += 1;
                }
            }
        }
    }
    out.push(Check::new("closed-forms", bad == 0, format!("{count} values for odd p <= {p_max}, {bad} mismatches")));

    let q_max = scale.pick(60, 200);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for q in 2..=q_max {
        if radical(q) != q {
            continue;
        }
        let reals = real_characters(q)?;
        let js = divisors(q);
        for q1 in divisors(q).into_iter().filter(|&d| d > 1 && d < q && d < q / d) {
            let q2 = q / q1;
            for x in &reals {
                for y in &reals {
                    let (x1, x2, y1, y2) = (x.restrict(q1)?, x.restrict(q2)?, y.restrict(q1)?, y.restrict(q2)?);
                    for &j1 in &js {
                        for &j2 in &js {
                            let whole = f_all_m(x, y, j1, j2)?;
                            let a = f_all_m(&x1, &y1, gcd(j1, q1), gcd(j2, q1))?;
                            let b = f_all_m(&x2, &y2, gcd(j1, q2), gcd(j2, q2))?;
                            for m in 0..q as usize {
                                let d = (whole[m] - a[m % q1 as usize] * b[m % q2 as usize]).norm();
                                worst = worst.max(d / (q * q) as f64);
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    out.push(Check::new(
        "multiplicativity",
        worst < 1e-6,
        format!("{count} splits of squarefree q <= {q_max}, max error / q^2 = {worst:.3e}"),
    ));

    let mut worst: f64 = 0.0;
    let mut count = 0;
    for q in 2..=q_max {
        let chars = character_group(q)?;
        if !chars[0].group().components.iter().any(|c| c.alpha > 1) {
            continue;
        }
        let reals = real_characters(q)?;
        let js = divisors(radical(q));
        for x in &reals {
            for y in &reals {
                if !kernel_vanishes(x, y) {
                    continue;
                }
                for &j1 in &js {
                    for &j2 in &js {
                        for v in f_all_m(x, y, j1, j2)? {
                            worst = worst.max(v.norm());
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    out.push(Check::new("vanishing", worst < 1e-6, format!("{count} deficient pairs, max |F| = {worst:.3e}")));

    let q_max = scale.pick(80, 300);
    let mut worst: f64 = 0.0;
    for q in 1..=q_max {
        for chi in character_group(q)? {
            let sums = modified_gauss_sums_fft(&chi, 0)?;
            let formula = GaussFormula::new(&chi);
            for a in 0..q {
                worst = worst.max((formula.eval(a as i64) - sums[a as usize]).norm() / q as f64);
            }
        }
    }
    out.push(Check::new("gauss-formula", worst < 1e-8, format!("q <= {q_max}, max error / q = {worst:.3e}")));

    let pa_max = scale.pick(27, 125);
    let mut violations = 0;
    let mut count = 0;
    for q in 2..=pa_max {
        let chars = character_group(q)?;
        if chars[0].group().components.len() != 1 {
            continue;
        }
        let p = chars[0].group().components[0].p;
        let js = [1, p];
        let sums: Vec<Vec<Vec<Complex64>>> = chars
            .iter()
            .map(|c| js.iter().map(|&j| modified_gauss_sums_fft(c, j)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        for (i1, x) in chars.iter().enumerate() {
            for (i2, y) in chars.iter().enumerate() {
                for (k1, &j1) in js.iter().enumerate() {
                    for (k2, &j2) in js.iter().enumerate() {
                        let f = f_from_sums(q, &sums[i1][k1], &sums[i2][k2]);
                        for (m, v) in f.iter().enumerate() {
                            count += 1;
                            if v.norm() > local_kernel_bound(x, y, j1, j2, m as i64)? + 1e-6 {
                                violations += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    out.push(Check::new(
        "local-bounds",
        violations == 0,
        format!("{count} values for prime powers <= {pa_max}, {violations} violations"),
    ));
    Ok(out)
}

fn series(scale: Scale) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cutoff = scale.pick(10_000, 100_000);
    let ss = SingularSeries::new(cutoff)?;
    let mut rng = scale.rng(1);
    let draws = scale.pick(50, 200);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let m = 2 * rng.gen_range(1..=500_000u64);
        let a = ss.value(m)?.value;
        let b = singular_series_alt(m, cutoff)?;
        worst = worst.max((a - b).abs() / a.abs());
    }
    out.push(Check::new(
        "product-forms",
        worst < 1e-10,
        format!("{draws} even m at cutoff {cutoff}, max relative gap {worst:.3e}"),
    ));

    let mut low = 0;
    let mut tested = 0;
    for _ in 0..draws {
        let m = 6 * rng.gen_range(0..166_666u64) + 4;
        let v = ss.value(m)?;
        tested += 1;
        if v.value < 1.0 - v.tail_bound {
            low += 1;
        }
    }
    out.push(Check::new("lower-bound", low == 0, format!("{tested} m = 4 mod 6, {low} below 1 - tail")));

    let mut bad = 0;
    let mut count = 0;
    for p in odd_primes(97) {
        let l = legendre_character(p)?;
        let c0 = DirichletCharacter::principal(p)?;
        let st = round_integral(f_all_m(&l, &l, 1, 1)?[0])?;
        let s = round_integral(f_all_m(&c0, &c0, 1, 1)?[0])?;
        let d = ((p - 2) * (p - 2)) as i64;
        count += 1;
        if (1 + st).abs() != d + s {
            bad += 1;
        }
    }
    out.push(Check::new("real-character-identity", bad == 0, format!("{count} odd primes <= 97 at m = 0 mod p, {bad} mismatches")));
    Ok(out)
}

fn rough_table(set: &[u64], limit: u64) -> Vec<f64> {
    let mut out = vec![1.0; limit as usize + 1];
    for &p in set {
        for k in (p..=limit).step_by(p as usize) {
            out[k as usize] = 0.0;
        }
    }
    out
}

fn sandwich_failures(lower: &SieveWeights, upper: &SieveWeights, limit: u64) -> usize {
    let rho = rough_table(&lower.range, limit);
    let lo = lower.apply_range(limit);
    let up = upper.apply_range(limit);
    (1..=limit as usize).filter(|&n| !(lo[n] <= rho[n] && rho[n] <= up[n])).count()
}

/// Small-prime range of the exported beta sieve.
pub fn export_weights(beta: f64, s: f64, z: u64) -> Result<SieveWeights> {
    let table = PrimeTable::new(z.max(2))?;
    let range: Vec<u64> = table.primes_upto(z).iter().map(|&p| p as u64).collect();
    beta_sieve(beta, s * (z as f64).ln(), &range, SieveSign::Upper)
}

fn sieves(scale: Scale) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let limit = scale.pick(20_000, 100_000);
    let table = PrimeTable::new(limit.max(1000))?;
    let range: Vec<u64> = table.primes_upto(30).iter().map(|&p| p as u64).collect();
    let mut fails = 0;
    for (beta, s) in [(2.0, 3.0), (3.0, 4.0), (PRE_SIEVE_BETA, 3.0)] {
        let ld = s * 30f64.ln();
        let lo = beta_sieve(beta, ld, &range, SieveSign::Lower)?;
        let up = beta_sieve(beta, ld, &range, SieveSign::Upper)?;
        fails += sandwich_failures(&lo, &up, limit);
    }
    out.push(Check::new("beta-sandwich", fails == 0, format!("n <= {limit}, {fails} failures")));

    let mut fails = 0;
    for (d, z, p) in [(1e4, 100.0, 10.0), (1e5, 50.0, 3.0), (2e3, 30.0, 2.0)] {
        let lo = linear_sieve(d, z, p, SieveSign::Lower, &table)?;
        let up = linear_sieve(d, z, p, SieveSign::Upper, &table)?;
        fails += sandwich_failures(&lo, &up, limit);
    }
    out.push(Check::new("linear-sandwich", fails == 0, format!("n <= {limit}, {fails} failures")));

    let n_range: f64 = 1e10;
    let z = n_range.powf(0.1);
    let mut fails = 0;
    for p_level in [3u64, 5, 7] {
        let m = P3Minorant::new(n_range, 1e-3, p_level, &table)?;
        for n in 1..=limit {
            let f = table.factorize(n)?;
            if !f.primes().all(|q| q > p_level) {
                continue;
            }
            let target = f.primes().all(|q| q as f64 > z) && f.omega() <= 3;
            if m.eval(n, &table)? > if target { 1.0 } else { 0.0 } + 1e-12 {
                fails += 1;
            }
        }
    }
    out.push(Check::new("three-prime-minorant", fails == 0, format!("n <= {limit}, {fails} failures")));

    let pool = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    let mut rng = scale.rng(2);
    let draws = scale.pick(100, 500);
    let mut fails = 0;
    for _ in 0..draws {
        let k = rng.gen_range(1..=6);
        let mut ps = pool.to_vec();
        for i in 0..k {
            let j = rng.gen_range(i..ps.len());
            ps.swap(i, j);
        }
        ps.truncate(k);
        ps.sort_unstable();
        let mut terms = Vec::new();
        for mask in 0u64..(1 << k) {
            if rng.gen_bool(0.7) {
                let sel: Vec<u64> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| ps[i]).collect();
                terms.push(SieveTerm { d: sel.iter().product(), primes: sel, lambda: rng.gen_range(-2.0..2.0) });
            }
        }
        let w = SieveWeights::from_terms(terms, 10.0, ps.clone(), 2, SieveSign::Generic);
        let (mut j, mut e) = (1u64, 1u64);
        for &p in &ps {
            match rng.gen_range(0..3) {
                0 => j *= p,
                1 => e *= p,
                _ => {}
            }
        }
        let map: HashMap<u64, f64> = ps.iter().map(|&p| (p, rng.gen_range(0.01..0.9))).collect();
        let g = LocalDensity::new(move |p| map[&p]);
        if !divisor_sum_identity_check(&ps, &w, j, e, &g)?.pass {
            fails += 1;
        }
    }
    out.push(Check::new("divisor-sum-identity", fails == 0, format!("{draws} random draws, {fails} failures")));

    let sweep = scale.pick(2_000, 10_000);
    let mut fails = 0;
    for (beta, s) in [(2.0, 5.0), (3.0, 6.0)] {
        for sign in [SieveSign::Upper, SieveSign::Lower] {
            let theta = beta_sieve(beta, s * 30f64.ln(), &range, sign)?;
            for n in 1..=sweep {
                if !fundamental_lemma_bound(&theta, n, 30.0, beta)?.pass {
                    fails += 1;
                }
            }
        }
    }
    out.push(Check::new("fundamental-lemma", fails == 0, format!("n <= {sweep}, {fails} failures")));

    let mut rng = scale.rng(3);
    let tuples = scale.pick(2_000, 10_000);
    let mut fails = 0;
    for _ in 0..tuples {
        let a = rng.gen_range(0.0..3.0);
        let b = rng.gen_range(0.0..3.0);
        let a_minus = a - rng.gen_range(0.0..2.0);
        let a_plus = a + rng.gen_range(0.0..2.0);
        let b_minus: f64 = b - rng.gen_range(0.0..3.0);
        let b_plus = b_minus.max(0.0) + rng.gen_range(0.0..3.0);
        if vector_sieve_lower(a, b, a_plus, a_minus, b_plus, b_minus)? > a * b + 1e-12 {
            fails += 1;
        }
    }
    out.push(Check::new("vector-sieve", fails == 0, format!("{tuples} tuples, {fails} failures")));
    Ok(out)
}

fn sievefn(scale: Scale) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let h = scale.pick(1e-3, 5e-4);
    let fns = LinearSieveFunctions::solve(12.0, h)?;
    let f2 = fns.upper(2.0)?;
    let l2 = fns.lower(2.0)?;
    out.push(Check::new(
        "values-at-two",
        (f2 - EULER_GAMMA.exp()).abs() < 1e-6 && l2.abs() < 1e-6,
        format!("F(2) = {f2:.9}, f(2) = {l2:.3e}"),
    ));
    let (j4, j3) = fns.junction_defects();
    out.push(Check::new(
        "junctions",
        j4 <= 10.0 * h && j3 <= 10.0 * h,
        format!("defects {j4:.3e}, {j3:.3e} at h = {h}"),
    ));
    let margin = p3_margin(&fns)?;
    out.push(Check::new("three-prime-margin", margin > 0.0, format!("margin {margin:.6}")));
    let c = chen_constants(1e-3)?;
    out.push(Check::new(
        "switching-constants",
        c.c_e3star == 0.5 * c.c_b1 + c.c_b2,
        format!("{:.6} = {:.6} / 2 + {:.3e}", c.c_e3star, c.c_b1, c.c_b2),
    ));
    let samples = scale.pick(1_000_000, 10_000_000);
    let mc = chen_monte_carlo(1e-3, samples, scale.seed)?;
    let ok = (mc.b1.mean - c.c_b1).abs() <= 3.0 * mc.b1.std_error && (mc.b2.mean - c.c_b2).abs() <= 3.0 * mc.b2.std_error;
    out.push(Check::new(
        "monte-carlo",
        ok,
        format!("{samples} samples: {:.5} +- {:.1e}, {:.3e} +- {:.1e}", mc.b1.mean, mc.b1.std_error, mc.b2.mean, mc.b2.std_error),
    ));
    Ok(out)
}

fn convolution(scale: Scale) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let n = scale.pick(1024, 4096);
    let pairs = scale.pick(5, 50);
    let mut rng = scale.rng(4);
    let mut mismatches = 0;
    for _ in 0..pairs {
        let f: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();
        let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();
        let fast = convolve_exact_raw(&f, &g);
        let mut slow = vec![0i64; 2 * n - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                slow[i + j] += a * b;
            }
        }
        if fast[..slow.len()] != slow[..] {
            mismatches += 1;
        }
    }
    out.push(Check::new("exact-transform", mismatches == 0, format!("{pairs} pairs of length {n}, {mismatches} mismatches")));

    let table = PrimeTable::new(64)?;
    let l0 = build_sequence(SequenceKind::Weight(LambdaKind::Lambda0), 20, &table, FLOAT_LIMIT)?;
    let c = convolve(&l0, &l0, ConvMode::Float)?;
    let want = 2.0 * 3f64.ln() * 7f64.ln() + 5f64.ln().powi(2);
    let got = c.get(10);
    out.push(Check::new("prime-log-pairs", (got - want).abs() < 1e-9, format!("value at 10 = {got:.12}")));

    let len = scale.pick(1u64 << 16, 1u64 << 20);
    let table = PrimeTable::new(len + 2)?;
    let ind = build_sequence(SequenceKind::Indicator(LambdaKind::VonMangoldt), len, &table, INT_LIMIT)?;
    let exact = convolve(&ind, &ind, ConvMode::Exact)?;
    let float = convolve(&ind, &ind, ConvMode::Float)?;
    let dev = (0..=2 * len).map(|i| (exact.get(i) - float.get(i)).abs()).fold(0.0, f64::max);
    out.push(Check::new("float-vs-exact", dev <= 1e-3, format!("N = {len}, max deviation {dev:.3e}")));
    Ok(out)
}

fn scan(scale: Scale) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let n = scale.pick(100_000, 1_000_000);
    let mut params = ScanParams::plain(n);
    params.seed = scale.seed;
    let big = exceptional_scan(&params)?;
    let small = exceptional_scan(&ScanParams { n: n / 10, ..params.clone() })?;
    out.push(Check::new(
        "plain-exceptions",
        big.verified,
        format!("N = {n}: {} exceptional, re-verified: {}", big.exceptional.len(), big.verified),
    ));
    let prefix = big.exceptional.iter().copied().filter(|&m| m <= n / 10).collect::<Vec<_>>() == small.exceptional;
    out.push(Check::new("prefix-consistency", prefix, format!("N = {} vs N = {n}", n / 10)));
    out.push(Check::new(
        "prediction-band",
        big.fraction_in_band >= 0.95,
        format!("{:.3} of samples in [0.5, 2], fitted constant {:.4}", big.fraction_in_band, big.fitted_constant),
    ));

    let mut twin = ScanParams::almost_twin(n, Some(2), Some(3), 1.0 / 15.0, 1.0 / 10.0);
    twin.seed = scale.seed;
    let rep = exceptional_scan(&twin)?;
    out.push(Check::new(
        "almost-twin-exceptions",
        rep.verified,
        format!("N = {n}: exceptional {:?}, re-verified: {}", rep.exceptional, rep.verified),
    ));
    Ok(out)
}

fn heath_brown(scale: Scale) -> Result<Vec<Check>> {
    let limit = scale.pick(2_000, 10_000);
    let table = PrimeTable::new(limit)?;
    let mut fails = 0;
    for j in [2u32, 3] {
        for n in 2..=limit {
            let f = table.factorize(n)?;
            let want: Vec<(u64, i64)> = match f.pairs() {
                [(p, _)] => vec![(*p, 1)],
                _ => vec![],
            };
            let got: Vec<(u64, i64)> = heath_brown_coefficients(n, j, &table)?.into_iter().filter(|&(_, c)| c != 0).collect();
            if got != want {
                fails += 1;
            }
        }
    }
    Ok(vec![Check::new("identity", fails == 0, format!("n <= {limit}, J in {{2, 3}}, {fails} mismatches"))])
}

fn bv(scale: Scale) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let n = 10_000;
    let q_max = scale.pick(20, 50);
    let mut worst: f64 = 0.0;
    let mut zeros = true;
    for weight in [Weight::Lambda, Weight::Mu] {
        let ctx = BvContext::new(n, weight, q_max)?;
        for q in 1..=q_max {
            for p_level in [0, 1, 2, 3, 5, q / 2, q, q + 1] {
                for (a, v) in ctx.discrepancies(q, p_level)? {
                    let direct = bv_discrepancy_direct(ctx.values(), q, a as i64, p_level)?;
                    worst = worst.max((v - direct).abs());
                    if p_level >= q && v != 0.0 {
                        zeros = false;
                    }
                }
            }
        }
    }
    out.push(Check::new("table-vs-direct", worst < 1e-6, format!("N = {n}, q <= {q_max}, max gap {worst:.3e}")));
    out.push(Check::new("exact-zeros", zeros, "P >= q, including q = 1"));

    let (n, q) = scale.pick((100_000, 300), (1_000_000, 1_000));
    let ctx = BvContext::new(n, Weight::Lambda, 100)?;
    let prof = bv_profile(&ctx, q, &[1, 10, 100])?;
    let vanish = prof.rows.iter().filter(|r| r.p_level >= r.q).all(|r| r.discrepancy == 0.0);
    out.push(Check::new("profile", vanish, format!("N = {n}, Q = {q}, {} rows", prof.rows.len())));
    Ok(out)
}

fn main_term(scale: Scale) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let r = main_term_m(10, 1000, 10, None, AssemblyOrder::Direct)?;
    out.push(Check::new(
        "no-hypothesis",
        r.m_value == 1.0 && r.e_value == 1.0,
        format!("M = {}, E = {}", r.m_value, r.e_value),
    ));
    let mods = scale.pick(vec![3u64, 5, 8, 15], vec![3, 4, 5, 7, 8, 11, 12, 15, 20, 21, 24, 35, 105]);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for &r in &mods {
        let h = ExceptionalZeroHypothesis::new(r, 0.9)?;
        for m in (4..200).step_by(2) {
            let a = main_term_m(m, 1000, 100, Some(&h), AssemblyOrder::Direct);
            let b = main_term_m(m, 1000, 100, Some(&h), AssemblyOrder::Product);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    count += 1;
                    worst = worst.max((a.m_value - b.m_value).abs() / a.m_value.abs().max(1.0));
                }
                (Err(Error::Degenerate(_)), Err(Error::Degenerate(_))) => {}
                (a, b) => return Err(Error::Degenerate(format!("orders disagree on m={m}: {a:?} vs {b:?}"))),
            }
        }
    }
    out.push(Check::new("assembly-orders", worst < 1e-10, format!("{count} cases, max relative gap {worst:.3e}")));
    let mut bad = 0;
    for m in 2..=200u64 {
        let (j, i) = exceptional_sums(m, 1000, 1.0)?;
        if j != -((m - 1) as f64) || i != (m - 1) as f64 {
            bad += 1;
        }
    }
    out.push(Check::new("unit-exponent-sums", bad == 0, format!("m <= 200, {bad} mismatches")));
    Ok(out)
}

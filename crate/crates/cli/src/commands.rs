use crate::output::{num, Report, Table};
use crate::suites::{self, Scale, SUITES};
use clap::Args;
use goldtwin_characters::ExceptionalZeroHypothesis;
use goldtwin_conv::*;
use goldtwin_core::{Error, LambdaKind, Multiplicity, PrimeTable, Result, DEFAULT_EPS};
use goldtwin_progressions::{bv_profile, BvContext, Weight};
use goldtwin_series::*;
use goldtwin_sieve::*;
use serde_json::{json, Value};
use std::path::PathBuf;

pub struct Context {
    pub seed: u64,
    pub budget: u64,
    #[allow(dead_code)]
    pub out: Option<PathBuf>,
}

type Outcome = Result<(Report, bool)>;

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64)> {
    let bad = || Error::Usage(format!("{what} expects two comma-separated numbers, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Usage(format!("bad integer {t:?} in list {s:?}"))))
        .collect()
}

fn table(limit: u64, ctx: &Context) -> Result<PrimeTable> {
    PrimeTable::with_budget(limit, ctx.budget)
}

/// Count representations m = p1 + p2 and list the exceptional m.
#[derive(Args, Debug)]
#[command(after_help = "\
CSV columns: m,count,prediction,ratio (one row per sampled m).
JSON results: {n, class, class_size, exceptional, verified, thresholds,
  fitted_constant, fraction_in_band, samples: [{m, count, prediction, ratio}]}.
Without --k1/--k2/--rough the scan is the plain Goldbach count over even m;
otherwise m runs over 4 mod 6 and p + 2 is restricted.")]
pub struct ScanArgs {
    #[arg(long = "N", visible_alias = "n")]
    n: u64,
    /// Almost-prime order of p1 + 2.
    #[arg(long)]
    k1: Option<u32>,
    /// Almost-prime order of p2 + 2.
    #[arg(long)]
    k2: Option<u32>,
    /// Roughness exponents a1,a2: p_i + 2 has no prime factor up to N^a_i.
    #[arg(long)]
    rough: Option<String>,
    /// Integer transform instead of floating point.
    #[arg(long)]
    exact: bool,
    /// Count prime factors without multiplicity.
    #[arg(long)]
    distinct: bool,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Prime cutoff for the predicted series.
    #[arg(long, default_value_t = 10_000)]
    cutoff: u64,
}

pub fn scan(a: &ScanArgs, ctx: &Context) -> Outcome {
    let (a1, a2) = match &a.rough {
        Some(s) => parse_pair(s, "--rough")?,
        None => (0.0, 0.0),
    };
    let mut params = if a.k1.is_none() && a.k2.is_none() && a.rough.is_none() {
        ScanParams::plain(a.n)
    } else {
        ScanParams::almost_twin(a.n, a.k1, a.k2, a1, a2)
    };
    params.mode = if a.exact { ConvMode::Exact } else { ConvMode::Float };
    params.mult = if a.distinct { Multiplicity::Without } else { Multiplicity::With };
    params.samples = a.samples;
    params.seed = ctx.seed;
    params.series_cutoff = a.cutoff;
    if a.n > ctx.budget {
        return Err(Error::Config(format!("N={} exceeds the memory budget {}", a.n, ctx.budget)));
    }
    let rep = exceptional_scan(&params)?;
    let mut t = Table::new(&["m", "count", "prediction", "ratio"]);
    let mut samples = Vec::new();
    for s in &rep.samples {
        t.push(vec![s.m.to_string(), s.count.to_string(), s.prediction.to_string(), s.ratio.to_string()]);
        samples.push(json!({"m": s.m, "count": s.count, "prediction": num(s.prediction), "ratio": num(s.ratio)}));
    }
    let thresholds: Vec<Value> = rep
        .thresholds
        .iter()
        .map(|t| t.map_or(Value::Null, |(v, clamped)| json!({"value": num(v), "clamped": clamped})))
        .collect();
    let config = json!({
        "N": a.n, "k1": a.k1, "k2": a.k2, "rough": [num(a1), num(a2)], "exact": a.exact,
        "distinct": a.distinct, "samples": a.samples, "cutoff": a.cutoff, "seed": ctx.seed,
    });
    let results = json!({
        "n": a.n,
        "class": format!("{:?}", params.class),
        "class_size": rep.class_size,
        "exceptional": rep.exceptional,
        "verified": rep.verified,
        "thresholds": thresholds,
        "fitted_constant": num(rep.fitted_constant),
        "fraction_in_band": num(rep.fraction_in_band),
        "samples": samples,
    });
    Ok((Report { command: "scan", config, results, table: t }, true))
}

fn sequence_kind(name: &str) -> Result<LambdaKind> {
    Ok(match name {
        "lambda" => LambdaKind::VonMangoldt,
        "lambda0" => LambdaKind::Lambda0,
        "lambda2" => LambdaKind::lambda2(),
        "lambda3" => LambdaKind::lambda3(),
        "e3star" => LambdaKind::LambdaE3Star { eps: DEFAULT_EPS },
        _ => {
            return Err(Error::Usage(format!(
                "unknown sequence {name}; expected lambda, lambda0, lambda2, lambda3 or e3star"
            )))
        }
    })
}

/// Additive convolution of two prime-detecting sequences on [1, N].
#[derive(Args, Debug)]
#[command(after_help = "\
CSV columns: m,value for m = 0..=2N.
JSON results: {n, max, argmax, values}.
Sequences: lambda, lambda0, lambda2, lambda3, e3star.")]
pub struct ConvolveArgs {
    #[arg(long = "N", visible_alias = "n")]
    n: u64,
    #[arg(long, default_value = "lambda0")]
    f: String,
    /// Second sequence (defaults to the first).
    #[arg(long)]
    g: Option<String>,
    /// Use 0/1 support indicators instead of the weights.
    #[arg(long)]
    indicator: bool,
    /// Integer transform (requires --indicator).
    #[arg(long)]
    exact: bool,
}

pub fn convolve(a: &ConvolveArgs, ctx: &Context) -> Outcome {
    let g_name = a.g.clone().unwrap_or_else(|| a.f.clone());
    let table = table(a.n + 2, ctx)?;
    let build = |name: &str| -> Result<ArithSequence> {
        let k = sequence_kind(name)?;
        let kind = if a.indicator { SequenceKind::Indicator(k) } else { SequenceKind::Weight(k) };
        build_sequence(kind, a.n, &table, ctx.budget)
    };
    let f = build(&a.f)?;
    let g = build(&g_name)?;
    let mode = if a.exact { ConvMode::Exact } else { ConvMode::Float };
    let c = goldtwin_conv::convolve(&f, &g, mode)?;
    let vals: Vec<f64> = c.as_f64();
    let mut t = Table::new(&["m", "value"]);
    let mut values = Vec::with_capacity(vals.len());
    let (mut argmax, mut max) = (0usize, f64::NEG_INFINITY);
    for (m, &v) in vals.iter().enumerate() {
        let text = match c.as_int() {
            Some(ints) => ints[m].to_string(),
            None => v.to_string(),
        };
        t.push(vec![m.to_string(), text]);
        values.push(num(v));
        if v > max {
            max = v;
            argmax = m;
        }
    }
    let config = json!({"N": a.n, "f": a.f, "g": g_name, "indicator": a.indicator, "exact": a.exact});
    let results = json!({"n": a.n, "max": num(max), "argmax": argmax, "values": values});
    Ok((Report { command: "convolve", config, results, table: t }, true))
}

/// Singular series and, under a hypothetical exceptional zero, the main term.
#[derive(Args, Debug)]
#[command(after_help = "\
CSV columns: m,S,S_partial,M,E,tail_bound (one row).
JSON results: {m, S, S_partial, M, E, tail_bound}. S_partial is the series
over 2 and the primes of the modulus (null without --hyp); M and E are 1
without a hypothesis.")]
pub struct SseriesArgs {
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: u64,
    /// Exceptional-zero hypothesis as modulus,beta.
    #[arg(long)]
    hyp: Option<String>,
    #[arg(long = "N", default_value_t = 1_000_000)]
    n: u64,
    #[arg(long = "P", default_value_t = 100)]
    p: u64,
}

pub fn sseries(a: &SseriesArgs, _ctx: &Context) -> Outcome {
    let s = SingularSeries::new(a.cutoff)?.value(a.m)?;
    let (hyp, s_partial, m_val, e_val) = match &a.hyp {
        Some(text) => {
            let (r, beta) = parse_pair(text, "--hyp")?;
            if r < 1.0 || r.fract() != 0.0 {
                return Err(Error::Usage(format!("--hyp modulus must be a positive integer, got {r}")));
            }
            let h = ExceptionalZeroHypothesis::new(r as u64, beta)?;
            let mut ps = vec![2];
            ps.extend(h.odd_primes());
            let partial = partial_singular_series(a.m, &ps)?;
            let rep = main_term_m(a.m, a.n, a.p, Some(&h), AssemblyOrder::Product)?;
            (json!({"modulus": r as u64, "beta": num(beta)}), num(partial), rep.m_value, rep.e_value)
        }
        None => (Value::Null, Value::Null, 1.0, 1.0),
    };
    let fmt = |v: &Value| match v {
        Value::Null => String::new(),
        v => v.to_string(),
    };
    let mut t = Table::new(&["m", "S", "S_partial", "M", "E", "tail_bound"]);
    t.push(vec![
        a.m.to_string(),
        s.value.to_string(),
        fmt(&s_partial),
        m_val.to_string(),
        e_val.to_string(),
        s.tail_bound.to_string(),
    ]);
    let config = json!({"m": a.m, "cutoff": a.cutoff, "hyp": hyp, "N": a.n, "P": a.p});
    let results = json!({
        "m": a.m, "S": num(s.value), "S_partial": s_partial, "M": num(m_val), "E": num(e_val),
        "tail_bound": num(s.tail_bound),
    });
    Ok((Report { command: "sseries", config, results, table: t }, true))
}

/// Linear sieve functions, sieve margins and switching constants.
#[derive(Args, Debug)]
#[command(after_help = "\
CSV columns: s,f,F on the solver grid (s from 1 to smax).
JSON results: {F2, f2, F4, F5, f5, junction_defects, p3_margin,
  chen: {c_b1, c_b2, c_e3star, err_b1, err_b2, lower_term, margin_at_4,
  margin_at_5}, monte_carlo: null | {samples, b1: {mean, std_error},
  b2: {mean, std_error}}}.")]
pub struct SievefnArgs {
    #[arg(long, default_value_t = 12.0)]
    smax: f64,
    /// Grid step; 1/h must be an integer.
    #[arg(long, default_value_t = 1e-3)]
    h: f64,
    /// Width of the three-prime windows.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    /// Monte Carlo samples for the switching constants (0 skips).
    #[arg(long, default_value_t = 0)]
    mc_samples: u64,
}

pub fn sievefn(a: &SievefnArgs, ctx: &Context) -> Outcome {
    let fns = LinearSieveFunctions::solve(a.smax, a.h)?;
    let mut t = Table::new(&["s", "f", "F"]);
    for (s, f, big) in fns.table() {
        t.push(vec![s.to_string(), f.to_string(), big.to_string()]);
    }
    let consts = chen_constants(a.eps)?;
    let margin = chen_margin(&fns, &consts)?;
    let mc = if a.mc_samples > 0 {
        let r = chen_monte_carlo(a.eps, a.mc_samples, ctx.seed)?;
        json!({
            "samples": a.mc_samples,
            "b1": {"mean": num(r.b1.mean), "std_error": num(r.b1.std_error)},
            "b2": {"mean": num(r.b2.mean), "std_error": num(r.b2.std_error)},
        })
    } else {
        Value::Null
    };
    let (j4, j3) = fns.junction_defects();
    let config = json!({"smax": num(a.smax), "h": num(a.h), "eps": num(a.eps), "mc_samples": a.mc_samples, "seed": ctx.seed});
    let results = json!({
        "F2": num(fns.upper(2.0)?),
        "f2": num(fns.lower(2.0)?),
        "F4": num(fns.upper(4.0)?),
        "F5": num(fns.upper(5.0)?),
        "f5": num(fns.lower(5.0)?),
        "junction_defects": [num(j4), num(j3)],
        "p3_margin": num(p3_margin(&fns)?),
        "chen": {
            "c_b1": num(consts.c_b1), "c_b2": num(consts.c_b2), "c_e3star": num(consts.c_e3star),
            "err_b1": num(consts.err_b1), "err_b2": num(consts.err_b2),
            "lower_term": num(margin.lower_term),
            "margin_at_4": num(margin.margin_at_4), "margin_at_5": num(margin.margin_at_5),
        },
        "monte_carlo": mc,
    });
    Ok((Report { command: "sievefn", config, results, table: t }, true))
}

/// Character-corrected progression discrepancies up to modulus Q.
#[derive(Args, Debug)]
#[command(after_help = "\
CSV columns: P,q,a_max,discrepancy (one row per level and modulus).
JSON results: {n, q_max, weight, totals: [{P, total}], max_discrepancy}.
--profile-out writes the per-level totals as CSV with columns P,total.")]
pub struct BvArgs {
    #[arg(long = "N", visible_alias = "n")]
    n: u64,
    #[arg(long = "Q", visible_alias = "q")]
    q: u64,
    /// Comma-separated conductor cutoffs.
    #[arg(long = "P", visible_alias = "p", default_value = "1,10,100")]
    p: String,
    /// Sequence weight: lambda or mu.
    #[arg(long, default_value = "lambda")]
    weight: String,
    #[arg(long)]
    profile_out: Option<PathBuf>,
}

pub fn bv(a: &BvArgs, ctx: &Context) -> Outcome {
    let levels = parse_list(&a.p)?;
    let weight: Weight = a.weight.parse()?;
    if a.n > ctx.budget {
        return Err(Error::Config(format!("N={} exceeds the memory budget {}", a.n, ctx.budget)));
    }
    let p_max = levels.iter().copied().max().unwrap_or(0);
    let bv_ctx = BvContext::new(a.n, weight, p_max)?;
    let prof = bv_profile(&bv_ctx, a.q, &levels)?;
    let mut t = Table::new(&["P", "q", "a_max", "discrepancy"]);
    let mut max: f64 = 0.0;
    for r in &prof.rows {
        t.push(vec![r.p_level.to_string(), r.q.to_string(), r.a_max.to_string(), r.discrepancy.to_string()]);
        max = max.max(r.discrepancy);
    }
    if let Some(path) = &a.profile_out {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::Config(e.to_string()))?;
        w.write_record(["P", "total"]).map_err(|e| Error::Config(e.to_string()))?;
        for (p, total) in &prof.totals {
            w.write_record([p.to_string(), total.to_string()]).map_err(|e| Error::Config(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Config(e.to_string()))?;
    }
    let totals: Vec<Value> = prof.totals.iter().map(|(p, v)| json!({"P": p, "total": num(*v)})).collect();
    let config = json!({"N": a.n, "Q": a.q, "P": levels, "weight": a.weight});
    let results = json!({"n": a.n, "q_max": a.q, "weight": a.weight, "totals": totals, "max_discrepancy": num(max)});
    Ok((Report { command: "bv", config, results, table: t }, true))
}

/// Run verification sweeps; exits with status 1 if any check fails.
#[derive(Args, Debug)]
#[command(after_help = "\
Suites: characters, series, sieves, sievefn, convolution, scan, heath-brown,
bv, main-term, all.
CSV columns: suite,check,pass,detail.
JSON results: {pass, suites: [{name, pass, checks: [{name, pass, detail}]}]}.
--export-weights writes the upper beta sieve (beta 2, level z^3, primes up
to z = 30) as CSV with columns d,lambda_d.")]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Run the larger sweep ranges.
    #[arg(long)]
    full: bool,
    #[arg(long)]
    export_weights: Option<PathBuf>,
}

pub fn verify(a: &VerifyArgs, ctx: &Context) -> Outcome {
    let names: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let scale = Scale { full: a.full, seed: ctx.seed };
    let mut t = Table::new(&["suite", "check", "pass", "detail"]);
    let mut suites_json = Vec::new();
    let mut all_pass = true;
    for name in names {
        let checks = suites::run_suite(name, scale)?;
        let pass = checks.iter().all(|c| c.pass);
        all_pass &= pass;
        for c in &checks {
            t.push(vec![name.to_string(), c.name.to_string(), c.pass.to_string(), c.detail.clone()]);
        }
        let list: Vec<Value> = checks.iter().map(|c| c.to_json()).collect();
        suites_json.push(json!({"name": name, "pass": pass, "checks": list}));
    }
    if let Some(path) = &a.export_weights {
        let w = suites::export_weights(2.0, 3.0, 30)?;
        let mut out = csv::Writer::from_path(path).map_err(|e| Error::Config(e.to_string()))?;
        out.write_record(["d", "lambda_d"]).map_err(|e| Error::Config(e.to_string()))?;
        let mut terms: Vec<_> = w.terms().iter().map(|t| (t.d, t.lambda)).collect();
        terms.sort_by_key(|&(d, _)| d);
        for (d, l) in terms {
            out.write_record([d.to_string(), l.to_string()]).map_err(|e| Error::Config(e.to_string()))?;
        }
        out.flush().map_err(|e| Error::Config(e.to_string()))?;
    }
    let config = json!({"suite": a.suite, "full": a.full, "seed": ctx.seed});
    let results = json!({"pass": all_pass, "suites": suites_json});
    Ok((Report { command: "verify", config, results, table: t }, all_pass))
}

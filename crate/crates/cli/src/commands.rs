use std::fs;

use cotan::cotangent::{c0_naive, C0Table};
use cotan::fast_eval::{bench_c0, c0_asymptotic, c0_fast_traced, max_scan, naive_rounding_estimate};
use cotan::numtheory::arith::gcd;
use cotan::nyman_beurling::{d_squared, GramSystem, SystemKind};
use cotan::wilton::{abs_moment_check, distribution_f, moments, strip_moments, MomentEntry, MomentKind};
use cotan::{ReducedFraction, SumValue};
use rayon::prelude::*;

use crate::config::{C0Method, Command, DnKind, RunConfig};
use crate::table::{Cell, Table};
use crate::{accept, usage, Body, CliError};

type Run = Result<(Body, bool), CliError>;

pub fn dispatch(cfg: &RunConfig) -> Run {
    let seed = cfg.seed;
    match &cfg.command {
        Command::C0 { r, b, method } => Ok((Body::Rows(c0(*r, *b, *method)?), false)),
        Command::Ellipse { b, range } => Ok((Body::Rows(ellipse(*b, range.as_deref())?), false)),
        Command::Equidist { b, a0, a1, k_max, samples } => {
            Ok((Body::Rows(equidist(*b, *a0, *a1, *k_max, *samples, seed)?), false))
        }
        Command::Dn { n, kind, export } => {
            let (t, systems) = dn(*n, *kind)?;
            if let Some(dir) = export {
                fs::create_dir_all(dir)?;
                for s in &systems {
                    let tag = kind_label(s.kind);
                    fs::write(dir.join(format!("gram_{}.csv", s.n)), s.matrix_csv())?;
                    fs::write(dir.join(format!("system_{}_{tag}.json", s.n)), s.metadata_json())?;
                }
            }
            Ok((Body::Rows(t), false))
        }
        Command::Bench { b_list, r, reps } => Ok((Body::Rows(bench(b_list, *r, *reps)?), false)),
        Command::Max { b, c, a0, omega, d } => Ok((Body::Rows(max(*b, *c, *a0, *omega, *d)?), false)),
        Command::Moments { k_max, samples, abs } => Ok((Body::Rows(moment_table(*k_max, *samples, abs, seed)?), false)),
        Command::Cdf { z_min, z_max, points, samples } => {
            Ok((Body::Rows(cdf(*z_min, *z_max, *points, *samples, seed)?), false))
        }
        Command::Accept { suite } => {
            let manifest = accept::run_suite(*suite, seed)?;
            let failed = !manifest.passed;
            let value = serde_json::to_value(&manifest).expect("plain manifest");
            Ok((Body::Document { value, rows: manifest.check_table() }, failed))
        }
    }
}

fn kind_label(kind: SystemKind) -> &'static str {
    match kind {
        SystemKind::VnPolynomial => "vn",
        SystemKind::Optimal => "optimal",
    }
}

fn value_row(r: u64, b: u64, v: &SumValue, steps: Option<usize>) -> Vec<Cell> {
    vec![
        r.into(),
        b.into(),
        v.method.to_string().into(),
        v.value.into(),
        v.error_bound.into(),
        steps.map_or(Cell::Text(String::new()), Cell::from),
    ]
}

/// Largest number of expansion terms the asymptotic formula accepts at `r/b`.
fn asymptotic_terms(r: u64, b: u64) -> Option<usize> {
    (0..=8usize).rev().find(|&n| b / r >= 6 * (n as u64 / 2 + 1))
}

pub fn c0(r: u64, b: u64, method: C0Method) -> Result<Table, CliError> {
    if b < 2 || r == 0 || r > b {
        return Err(usage(format!("need b ≥ 2 and 1 ≤ r ≤ b, got r = {r}, b = {b}")));
    }
    let x = ReducedFraction::coprime(r, b)?;
    let naive = || -> Result<SumValue, CliError> {
        let mut v = c0_naive(x)?;
        v.error_bound = naive_rounding_estimate(b);
        Ok(v)
    };
    let mut t = Table::new(&["r", "b", "method", "value", "error_bound", "steps"]);
    match method {
        C0Method::Naive => t.push(value_row(r, b, &naive()?, None)),
        C0Method::Fast => {
            let f = c0_fast_traced(x)?;
            t.push(value_row(r, b, &f.value, Some(f.steps)));
        }
        C0Method::Asymptotic => {
            let n = asymptotic_terms(r, b)
                .ok_or_else(|| usage(format!("the expansion needs b ≥ 6r, got {r}/{b}")))?;
            t.push(value_row(r, b, &c0_asymptotic(b, n, r)?, None));
        }
        C0Method::All => {
            let mut vals = vec![naive()?];
            let f = c0_fast_traced(x)?;
            vals.push(f.value);
            if let Some(n) = asymptotic_terms(r, b) {
                vals.push(c0_asymptotic(b, n, r)?);
            }
            for v in &vals {
                let steps = (v.method == cotan::Method::Fast).then_some(f.steps);
                t.push(value_row(r, b, v, steps));
            }
            for i in 0..vals.len() {
                for j in i + 1..vals.len() {
                    let (a, c) = (&vals[i], &vals[j]);
                    t.push(vec![
                        r.into(),
                        b.into(),
                        format!("{}-{}", a.method, c.method).into(),
                        (a.value - c.value).abs().into(),
                        (a.error_bound + c.error_bound).into(),
                        Cell::Text(String::new()),
                    ]);
                }
            }
        }
    }
    Ok(t)
}

pub fn ellipse(b: u64, range: Option<&[f64]>) -> Result<Table, CliError> {
    if b < 3 {
        return Err(usage(format!("need b ≥ 3, got {b}")));
    }
    let (lo, hi) = match range {
        None => (1, b - 1),
        Some([a0, a1]) if 0.0 <= *a0 && a0 < a1 && *a1 <= 1.0 => {
            let bf = b as f64;
            ((a0 * bf).ceil().max(1.0) as u64, ((a1 * bf).floor() as u64).min(b - 1))
        }
        Some(_) => return Err(usage("--range needs 0 ≤ A0 < A1 ≤ 1")),
    };
    let table = C0Table::new(b);
    let rs: Vec<u64> = (lo..=hi).filter(|&r| gcd(r, b) == 1).collect();
    let vals: Vec<f64> = rs.par_iter().map(|&r| table.c0(r)).collect();
    let err = naive_rounding_estimate(b);
    let mut t = Table::new(&["r", "c0", "method", "error_bound"]);
    for (r, v) in rs.into_iter().zip(vals) {
        t.push(vec![r.into(), v.into(), "naive".into(), err.into()]);
    }
    Ok(t)
}

fn entry(table: &cotan::wilton::MomentTable, kind: MomentKind, k: u32) -> Result<MomentEntry, CliError> {
    table.get(kind, k as f64).copied().ok_or_else(|| usage(format!("moment {k} missing")))
}

pub fn equidist(b: u64, a0: f64, a1: f64, k_max: u32, samples: u64, seed: u64) -> Result<Table, CliError> {
    if !(0.5 < a0 && a0 < a1 && a1 < 1.0) {
        return Err(usage(format!("need 1/2 < A0 < A1 < 1, got {a0}, {a1}")));
    }
    if k_max == 0 {
        return Err(usage("k_max must be at least 1"));
    }
    let mc = moments(k_max, samples, seed)?;
    let h: Vec<f64> = (1..=k_max).map(|k| entry(&mc, MomentKind::H, k).map(|e| e.estimate)).collect::<Result<_, _>>()?;
    let strip = strip_moments(b, a0, a1, &h)?;
    let rounding = naive_rounding_estimate(b) / b as f64;
    let log_scale = (b as f64).ln();
    let mut t = Table::new(&["k", "quantity", "value", "reference", "ratio", "method", "error_bound"]);
    for row in &strip.rows {
        let hk = entry(&mc, MomentKind::H, row.k)?;
        let ek = entry(&mc, MomentKind::E, row.k)?;
        let m = 2 * row.k as i32;
        t.push(vec![
            row.k.into(),
            "even".into(),
            row.even.into(),
            row.even_reference.into(),
            row.even_ratio.into(),
            "naive_strip/mc_reference".into(),
            (hk.stderr * (a1 - a0)).into(),
        ]);
        t.push(vec![
            row.k.into(),
            "odd".into(),
            row.odd.into(),
            0.0.into(),
            row.odd_ratio.into(),
            "naive_strip".into(),
            ((m - 1) as f64 * rounding * log_scale.powi(m - 2)).into(),
        ]);
        t.push(vec![
            row.k.into(),
            "q_even".into(),
            row.q_even.into(),
            row.q_reference.into(),
            row.q_ratio.into(),
            "naive_strip/mc_reference".into(),
            (ek.stderr * (a1.powi(m + 1) - a0.powi(m + 1))).into(),
        ]);
    }
    Ok(t)
}

/// `4u·N·(1 + 2|a|ᵀ|ℓ| + |a|ᵀ|G||a|)`, a forward rounding bound for the
/// quadratic form.
fn form_rounding(s: &GramSystem) -> f64 {
    let a = s.coeffs.abs();
    let l = s.linear.abs();
    let g = s.g.abs();
    4.0 * f64::EPSILON * s.n as f64 * (1.0 + 2.0 * a.dot(&l) + a.dot(&(g * &a)))
}

pub fn dn(n: usize, kind: DnKind) -> Result<(Table, Vec<GramSystem>), CliError> {
    if n == 0 {
        return Err(usage("N must be at least 1"));
    }
    let kinds: &[SystemKind] = match kind {
        DnKind::Vn => &[SystemKind::VnPolynomial],
        DnKind::Optimal => &[SystemKind::Optimal],
        DnKind::Both => &[SystemKind::VnPolynomial, SystemKind::Optimal],
    };
    let mut t = Table::new(&["N", "kind", "d2", "method", "error_bound", "normal_residual"]);
    let mut systems = Vec::new();
    for &k in kinds {
        let (d2, s) = d_squared(n, k)?;
        let method = match k {
            SystemKind::VnPolynomial => "closed_form_gram",
            SystemKind::Optimal => "cholesky",
        };
        t.push(vec![
            n.into(),
            kind_label(k).into(),
            d2.into(),
            method.into(),
            form_rounding(&s).into(),
            s.normal_equation_residual().into(),
        ]);
        systems.push(s);
    }
    Ok((t, systems))
}

pub fn bench(b_list: &[u64], r: u64, reps: usize) -> Result<Table, CliError> {
    if reps == 0 {
        return Err(usage("--reps must be positive"));
    }
    let mut t = Table::new(&["b", "r", "method", "nanoseconds", "value", "error_bound", "steps"]);
    for &b in b_list {
        if b < 2 || r == 0 || r >= b {
            return Err(usage(format!("need b ≥ 2 and 1 ≤ r < b, got r = {r}, b = {b}")));
        }
        for rec in bench_c0(r, b, reps)? {
            t.push(vec![
                rec.b.into(),
                rec.r.into(),
                rec.method.to_string().into(),
                rec.nanoseconds.into(),
                rec.value.into(),
                rec.error_bound.into(),
                rec.steps.into(),
            ]);
        }
    }
    Ok(t)
}

pub fn max(b: u64, c: f64, a0: f64, omega: Option<f64>, d: f64) -> Result<Table, CliError> {
    let s = max_scan(b, c, a0, omega)?;
    let mut t = Table::new(&[
        "b",
        "C",
        "A0",
        "delta",
        "r_star",
        "M",
        "observed_D",
        "D",
        "margin",
        "strip_len",
        "confirmed",
        "n_count",
        "method",
        "error_bound",
    ]);
    t.push(vec![
        s.b.into(),
        s.c.into(),
        s.a0.into(),
        s.delta.into(),
        s.r_star.into(),
        s.m.into(),
        s.observed_d.into(),
        d.into(),
        s.margin(d).into(),
        s.strip_len.into(),
        s.confirmed.into(),
        s.n_count.map_or(Cell::Text(String::new()), Cell::from),
        "fast_screen+naive".into(),
        naive_rounding_estimate(b).into(),
    ]);
    Ok(t)
}

fn order_cell(order: f64) -> Cell {
    if order.fract() == 0.0 && order >= 0.0 {
        Cell::UInt(order as u64)
    } else {
        Cell::Real(order)
    }
}

pub fn moment_table(k_max: u32, samples: u64, abs: &[f64], seed: u64) -> Result<Table, CliError> {
    let mut entries = moments(k_max, samples, seed)?.entries;
    if !abs.is_empty() {
        entries.extend(abs_moment_check(abs, samples, seed)?.table.entries);
    }
    let mut t = Table::new(&["moment", "k", "estimate", "stderr", "n_samples", "seed", "method", "error_bound"]);
    for e in entries {
        let (label, method) = match e.kind {
            MomentKind::H => ("H", "stratified_mc"),
            MomentKind::E => ("E", "stratified_mc"),
            MomentKind::AbsRatio => ("abs_ratio", "importance_mc"),
        };
        t.push(vec![
            label.into(),
            order_cell(e.order),
            e.estimate.into(),
            e.stderr.into(),
            e.samples.into(),
            e.seed.into(),
            method.into(),
            (3.0 * e.stderr).into(),
        ]);
    }
    Ok(t)
}

pub fn cdf(z_min: f64, z_max: f64, points: usize, samples: u64, seed: u64) -> Result<Table, CliError> {
    if !(z_min < z_max) || points < 2 {
        return Err(usage("need z_min < z_max and at least 2 points"));
    }
    let step = (z_max - z_min) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| z_min + step * i as f64).collect();
    let f = distribution_f(&grid, samples, seed)?;
    let mut t = Table::new(&["z", "F", "lower", "upper", "n_samples", "seed", "method", "error_bound"]);
    for (z, v) in f.z.iter().zip(&f.f) {
        t.push(vec![
            (*z).into(),
            (*v).into(),
            (v - f.band).max(0.0).into(),
            (v + f.band).min(1.0).into(),
            f.samples.into(),
            f.seed.into(),
            "stratified_mc".into(),
            f.band.into(),
        ]);
    }
    Ok(t)
}

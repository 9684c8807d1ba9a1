use std::f64::consts::LN_2;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::g::{g_series, GMethod, GValue};
use crate::error::{invalid, Error, Result};
use crate::numtheory::fraction::ReducedFraction;
use crate::numtheory::gauss::{gauss_map_orbit, gauss_orbit_rational, gauss_orbit_surd, GaussStep, QuadraticSurd};
use crate::sampling::run_shards;

fn alternating(orbit: &[GaussStep], depth: usize) -> Result<(f64, f64)> {
    if let Some(k) = orbit.iter().take(depth + 1).position(GaussStep::is_terminal) {
        return Err(Error::OrbitTerminated { step: k });
    }
    let mut sum = 0.0;
    for (k, s) in orbit.iter().take(depth).enumerate() {
        sum += if k % 2 == 0 { s.gamma } else { -s.gamma };
    }
    let tail = orbit.get(depth).map_or(f64::INFINITY, |s| s.gamma.abs());
    Ok((sum, tail))
}

/// `𝒲(x) = Σ_{k<depth} (−1)^k γ_k(x)` from the floating-point Gauss orbit.
///
/// The reported bound is the first omitted term `γ_depth`.
pub fn wilton(x: f64, depth: usize) -> Result<GValue> {
    let orbit = gauss_map_orbit(x, depth + 1)?;
    let (value, tail) = alternating(&orbit, depth)?;
    Ok(GValue { x, rational: None, value, method: GMethod::Wilton, error_bound: tail })
}

/// [`wilton`] along the exact orbit of a quadratic surd.
pub fn wilton_surd(x: QuadraticSurd, depth: usize) -> Result<GValue> {
    let orbit = gauss_orbit_surd(x, depth + 1)?;
    let (value, tail) = alternating(&orbit, depth)?;
    Ok(GValue { x: x.value(), rational: None, value, method: GMethod::Wilton, error_bound: tail })
}

/// `(T^n f)(x) = β_{n−1}(x)·f(α_n(x))` with `T f(x) = x·f({1/x})`.
pub fn t_operator<F: Fn(f64) -> f64>(f: F, x: f64, n: usize) -> Result<f64> {
    let orbit = gauss_map_orbit(x, n + 1)?;
    if let Some(k) = orbit.iter().position(GaussStep::is_terminal) {
        return Err(Error::OrbitTerminated { step: k });
    }
    let beta_prev = if n == 0 { 1.0 } else { orbit[n - 1].beta };
    Ok(beta_prev * f(orbit[n].alpha))
}

/// `ℒ(x, n) = Σ_{k≤n} (−1)^k (T^k l)(x)` with `l(x) = log(1/x)`.
pub fn neumann_sum(x: f64, n: usize) -> Result<f64> {
    let orbit = gauss_map_orbit(x, n + 1)?;
    Ok(alternating(&orbit, n + 1)?.0)
}

/// Outcome of the convergence test on a quotient stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BtVerdict {
    Converges { partial_sum: f64, tail_bound: f64 },
    Diverges { partial_sum: f64, term_floor: f64 },
    Undecided { tail_bound: f64 },
}

/// Partial quotients `a₁, a₂, …` of `x ∈ (0, 1)`, each stored as `log a_k` so
/// that doubly exponential streams stay representable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientStream {
    pub log_quotients: Vec<f64>,
    /// True when the expansion ends here (a rational number).
    pub terminated: bool,
}

impl QuotientStream {
    pub fn from_quotients(q: &[u64], terminated: bool) -> Self {
        Self { log_quotients: q.iter().map(|&a| (a as f64).ln()).collect(), terminated }
    }

    /// `a₁ = 1`, `a_{m+1} = 2^{q_m}` with `q_m` the convergent denominators.
    /// Each term `log q_{m+1}/q_m` stays above `log 2`.
    pub fn doubly_exponential(len: usize) -> Self {
        let mut lq = vec![0.0];
        // log q_{m−1}, log q_m
        let (mut q_prev, mut log_q) = (0.0f64, 0.0f64);
        while lq.len() < len {
            let la = log_q.exp() * LN_2;
            lq.push(la);
            let step = la + ((q_prev - log_q).exp() * (-la).exp()).ln_1p();
            q_prev = log_q;
            log_q += step;
        }
        Self { log_quotients: lq, terminated: false }
    }

    pub fn from_fraction(x: ReducedFraction) -> Result<Self> {
        let cf = crate::numtheory::cf::continued_fraction(x);
        if cf.quotients[0] != 0 || cf.len() < 2 {
            return Err(Error::Domain { value: x.to_f64(), domain: "(0, 1)" });
        }
        Ok(Self::from_quotients(&cf.quotients[1..], true))
    }
}

const TAIL_TOL: f64 = 1e-8;

/// Examines `Σ_{m≥1} (−1)^m log(q_{m+1})/q_m` for the convergent denominators
/// `q_m` of the stream. The series converges exactly when `g(x)` does.
///
/// Logarithms are carried throughout: `log q_{m+1} = log q_m + log(a_{m+1} + q_{m−1}/q_m)`.
/// A finite expansion converges. A stream whose terms of one parity stay
/// above a positive floor over the final third diverges. Otherwise the tail is
/// bounded by a geometric extrapolation of the last terms when they decay;
/// failing that the verdict is undecided.
pub fn bt_convergence_test(stream: &QuotientStream) -> Result<BtVerdict> {
    let lq = &stream.log_quotients;
    if lq.len() < 3 {
        return Err(invalid("stream", "needs at least 3 quotients"));
    }
    // log q_m for m = 1..=len, with q₀ = 1
    let mut logs = Vec::with_capacity(lq.len());
    let (mut log_q, mut ratio) = (0.0f64, 0.0f64);
    for &la in lq {
        let step = la + (ratio * (-la).exp()).ln_1p();
        log_q += step;
        ratio = (-step).exp();
        logs.push(log_q);
    }
    let terms: Vec<f64> = logs.windows(2).map(|w| w[1] * (-w[0]).exp()).collect();
    let partial: f64 = terms.iter().enumerate().map(|(i, t)| if i % 2 == 0 { -t } else { *t }).sum();
    if stream.terminated {
        return Ok(BtVerdict::Converges { partial_sum: partial, tail_bound: 0.0 });
    }
    let n = terms.len();
    let window = &terms[2 * n / 3..];
    for parity in 0..2 {
        let floor = window.iter().skip(parity).step_by(2).fold(f64::INFINITY, |m, &t| m.min(t));
        if window.len() >= 4 && floor > 0.1 {
            return Ok(BtVerdict::Diverges { partial_sum: partial, term_floor: floor });
        }
    }
    let last = terms[n - 1];
    let rho = window.windows(2).map(|w| w[1] / w[0]).fold(0.0f64, f64::max);
    let tail = if rho < 1.0 { last * rho / (1.0 - rho) } else { f64::INFINITY };
    if tail < TAIL_TOL {
        Ok(BtVerdict::Converges { partial_sum: partial, tail_bound: tail })
    } else {
        Ok(BtVerdict::Undecided { tail_bound: tail })
    }
}

/// Norms `‖T^n l‖_{L²(m)}` under the Gauss measure `dm = dx/((1+x)log 2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    /// Index `n`, from 0.
    pub norms: Vec<f64>,
    /// `norms[n] / norms[n−1]`, from `n = 1`.
    pub ratios: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
}

/// Monte Carlo estimate of `‖T^n l‖₂` for `n ≤ n_max`.
///
/// Points are drawn from the Gauss measure as `x = 2^U − 1` and rounded to a
/// fraction with prime denominator `2^61 − 1`, whose exact orbit is followed.
/// `(T^n l)(x) = γ_n(x)`.
pub fn mmy_contraction(n_max: usize, samples: usize, seed: u64) -> Result<ContractionReport> {
    const Q: u64 = (1 << 61) - 1;
    const SHARDS: usize = 16;
    let per = samples.div_ceil(SHARDS);
    let parts = run_shards(seed, SHARDS, |_, rng| -> Result<(Vec<f64>, usize)> {
        let mut acc = vec![0.0; n_max + 1];
        let mut used = 0;
        for _ in 0..per {
            let u: f64 = rng.random();
            let x = (u * LN_2).exp_m1();
            let r = ((x * Q as f64) as u64).clamp(1, Q - 1);
            let orbit = gauss_orbit_rational(ReducedFraction::coprime(r, Q)?, n_max + 1)?;
            if orbit.len() <= n_max || orbit.iter().any(GaussStep::is_terminal) {
                continue;
            }
            for (k, s) in orbit.iter().enumerate() {
                acc[k] += s.gamma * s.gamma;
            }
            used += 1;
        }
        Ok((acc, used))
    });
    let mut total = vec![0.0; n_max + 1];
    let mut used = 0;
    for p in parts {
        let (acc, u) = p?;
        used += u;
        for (t, a) in total.iter_mut().zip(acc) {
            *t += a;
        }
    }
    if used == 0 {
        return Err(invalid("samples", "must be positive"));
    }
    let norms: Vec<f64> = total.iter().map(|t| (t / used as f64).sqrt()).collect();
    let ratios = norms.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(ContractionReport { norms, ratios, samples: used, seed })
}

/// Sample statistics of `g − 𝒲` at uniform random points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WiltonResidual {
    pub sup: f64,
    pub mean_abs: f64,
    /// Largest combined truncation bound of the two evaluations.
    pub max_bound: f64,
    pub samples: usize,
    pub skipped: usize,
    pub seed: u64,
}

/// `g_series(x, terms) − wilton(x, depth)` over `samples` uniform points.
/// Points whose floating orbit ends before `depth` are skipped.
pub fn wilton_residual(samples: usize, terms: u64, depth: usize, seed: u64) -> Result<WiltonResidual> {
    const SHARDS: usize = 16;
    let per = samples.div_ceil(SHARDS);
    let parts = run_shards(seed, SHARDS, |_, rng| -> Result<Vec<Option<(f64, f64)>>> {
        let mut out = Vec::with_capacity(per);
        for _ in 0..per {
            let x: f64 = rng.random();
            if x <= 0.0 {
                out.push(None);
                continue;
            }
            let w = match wilton(x, depth) {
                Ok(w) => w,
                Err(Error::OrbitTerminated { .. }) => {
                    out.push(None);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let g = g_series(x, terms)?;
            out.push(Some((g.value - w.value, g.error_bound + w.error_bound)));
        }
        Ok(out)
    });
    let (mut sup, mut sum, mut max_bound, mut used, mut skipped) = (0.0f64, 0.0, 0.0f64, 0usize, 0usize);
    for p in parts {
        for v in p? {
            match v {
                Some((d, b)) => {
                    sup = sup.max(d.abs());
                    sum += d.abs();
                    max_bound = max_bound.max(b);
                    used += 1;
                }
                None => skipped += 1,
            }
        }
    }
    if used == 0 {
        return Err(invalid("samples", "must be positive"));
    }
    Ok(WiltonResidual { sup, mean_abs: sum / used as f64, max_bound, samples: used, skipped, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixed_point(x: f64) -> f64 {
        (1.0 / x).ln() / (1.0 + x)
    }

    #[test]
    fn fixed_point_closed_forms() {
        for s in [QuadraticSurd::golden(), QuadraticSurd::silver()] {
            let x = s.value();
            let w = wilton_surd(s, 80).unwrap();
            assert!((w.value - fixed_point(x)).abs() < 1e-12);
            assert!(w.error_bound < 1e-12);
        }
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((fixed_point(golden) - 0.297405).abs() < 1e-6);
        assert!((fixed_point(2f64.sqrt() - 1.0) - 0.623225).abs() < 1e-6);
        let f = wilton(golden, 40).unwrap();
        // the floating orbit loses about one digit every five steps
        assert!((f.value - fixed_point(golden)).abs() < 1e-7);
    }

    #[test]
    fn residual_stays_bounded() {
        let a = wilton_residual(200, 50_000, 24, 1).unwrap();
        let b = wilton_residual(200, 50_000, 24, 2).unwrap();
        assert!(a.sup < 2.0 && b.sup < 2.0, "{a:?} {b:?}");
        assert!(a.mean_abs > 0.1 && a.skipped == 0);
    }

    #[test]
    fn partial_sums_bracket_the_limit() {
        let x = QuadraticSurd::golden();
        let limit = fixed_point(x.value());
        for d in 1..20 {
            let w = wilton_surd(x, d).unwrap();
            let above = d % 2 == 1;
            assert_eq!(w.value > limit, above);
            assert!((w.value - limit).abs() <= w.error_bound);
        }
    }

    #[test]
    fn operator_and_neumann_sums() {
        let x = 0.3183;
        let l = |t: f64| (1.0 / t).ln();
        assert!((neumann_sum(x, 0).unwrap() - l(x)).abs() < 1e-15);
        assert!((t_operator(l, x, 0).unwrap() - l(x)).abs() < 1e-15);
        let a1 = (1.0 / x) - (1.0 / x).floor();
        assert!((t_operator(l, x, 1).unwrap() - x * l(a1)).abs() < 1e-14);
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let target = fixed_point(golden);
        let mut prev = f64::INFINITY;
        for n in [2, 6, 10, 14] {
            let d = (neumann_sum(golden, n).unwrap() - target).abs();
            assert!(d < prev);
            prev = d;
        }
        assert!(matches!(t_operator(l, 0.25, 3), Err(Error::OrbitTerminated { .. })));
        assert!(wilton(0.5, 5).is_err());
    }

    #[test]
    fn convergence_verdicts() {
        let golden = QuotientStream::from_quotients(&[1; 80], false);
        assert!(matches!(bt_convergence_test(&golden).unwrap(), BtVerdict::Converges { .. }));
        let rat = QuotientStream::from_fraction(ReducedFraction::new(355, 1130).unwrap()).unwrap();
        assert!(matches!(bt_convergence_test(&rat).unwrap(), BtVerdict::Converges { .. }));
        let blow = QuotientStream::doubly_exponential(13);
        assert!(blow.log_quotients[5] > 1e3);
        assert!(matches!(bt_convergence_test(&blow).unwrap(), BtVerdict::Diverges { .. }));
        let short = QuotientStream::from_quotients(&[1, 2], false);
        assert!(bt_convergence_test(&short).is_err());
        let slow = QuotientStream::from_quotients(&[1; 6], false);
        assert!(matches!(bt_convergence_test(&slow).unwrap(), BtVerdict::Undecided { .. }));
    }

    #[test]
    fn contraction_is_faster_than_golden_rate() {
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let rep = mmy_contraction(12, 20_000, 9).unwrap();
        assert_eq!(rep.ratios.len(), 12);
        for (n, r) in rep.ratios.iter().enumerate() {
            assert!(*r <= golden * 1.1, "n={}: {r}", n + 1);
        }
        for n in 1..=12 {
            assert!(rep.norms[n] <= golden.powi(n as i32 - 1) * rep.norms[0] * 1.1);
        }
        assert_eq!(rep, mmy_contraction(12, 20_000, 9).unwrap());
    }
}

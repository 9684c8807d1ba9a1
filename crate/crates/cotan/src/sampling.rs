//! Deterministic sharded random streams and jackknife error estimates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Default shard count for Monte Carlo runs. The output depends on it, so it
/// is fixed rather than derived from the thread count.
pub const DEFAULT_SHARDS: usize = 64;

/// Independent stream `shard` of the master `seed`.
pub fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64 + 1);
    rng
}

/// Runs `f(shard, rng)` for every shard in parallel and returns the results in
/// shard order.
pub fn run_shards<T, F>(seed: u64, shards: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> T + Sync,
{
    (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = shard_rng(seed, s);
            f(s, &mut rng)
        })
        .collect()
}

/// Delete-one jackknife over groups for the statistic `stat` of pooled sums.
///
/// Each group contributes a vector of sums; `stat` maps pooled sums to the
/// estimate. Returns `(estimate, standard error)`.
pub fn jackknife<F>(groups: &[Vec<f64>], stat: F) -> (f64, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let g = groups.len();
    let width = groups.first().map_or(0, Vec::len);
    let mut total = vec![0.0; width];
    for grp in groups {
        for (t, v) in total.iter_mut().zip(grp) {
            *t += v;
        }
    }
    let full = stat(&total);
    if g < 2 {
        return (full, f64::INFINITY);
    }
    let leave: Vec<f64> = groups
        .iter()
        .map(|grp| {
            let rest: Vec<f64> = total.iter().zip(grp).map(|(t, v)| t - v).collect();
            stat(&rest)
        })
        .collect();
    let mean = leave.iter().sum::<f64>() / g as f64;
    let var = leave.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() * (g as f64 - 1.0) / g as f64;
    (full, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|s| shard_rng(42, s).random()).collect();
        let b: Vec<u64> = (0..4).map(|s| shard_rng(42, s).random()).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        assert_ne!(shard_rng(1, 0).random::<u64>(), shard_rng(2, 0).random::<u64>());
        let out = run_shards(7, 8, |s, rng| (s, rng.random::<u32>()));
        assert_eq!(out.iter().map(|p| p.0).collect::<Vec<_>>(), (0..8).collect::<Vec<_>>());
        assert_eq!(out, run_shards(7, 8, |s, rng| (s, rng.random::<u32>())));
    }

    #[test]
    fn jackknife_of_a_mean_matches_the_textbook_error() {
        let xs: Vec<f64> = (0..50).map(|i| ((i * 37) % 11) as f64).collect();
        let groups: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x, 1.0]).collect();
        let (m, se) = jackknife(&groups, |s| s[0] / s[1]);
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        assert!((m - mean).abs() < 1e-12);
        assert!((se - sd / n.sqrt()).abs() < 1e-12);
    }
}

//! Multiplicative functions, modular inverses and sieves.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `r` modulo `b`, in `[1, b)`.
pub fn mod_inverse(r: u64, b: u64) -> Result<u64> {
    if b < 2 {
        return Err(Error::DenominatorTooSmall { b, min: 2 });
    }
    let (mut old_r, mut cur_r) = (b as i128, (r % b) as i128);
    let (mut old_s, mut cur_s) = (0i128, 1i128);
    while cur_r != 0 {
        let q = old_r / cur_r;
        (old_r, cur_r) = (cur_r, old_r - q * cur_r);
        (old_s, cur_s) = (cur_s, old_s - q * cur_s);
    }
    if old_r != 1 {
        return Err(Error::NotCoprime { r, b });
    }
    Ok(old_s.rem_euclid(b as i128) as u64)
}

/// Prime factorisation by trial division, as `(p, e)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// `σ_α(n) = Σ_{d|n} d^α`.
pub fn sigma(n: u64, alpha: f64) -> f64 {
    factorize(n)
        .iter()
        .map(|&(p, e)| {
            let pa = (p as f64).powf(alpha);
            let mut s = 1.0;
            let mut term = 1.0;
            for _ in 0..e {
                term *= pa;
                s += term;
            }
            s
        })
        .product()
}

/// Exact `σ_k(n)` for a nonnegative integer exponent.
pub fn sigma_exact(n: u64, k: u32) -> u128 {
    factorize(n)
        .iter()
        .map(|&(p, e)| {
            let pk = (p as u128).pow(k);
            (0..=e).map(|i| pk.pow(i)).sum::<u128>()
        })
        .product()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arithmetical {
    pub mu: i8,
    pub phi: u64,
    pub sigma: f64,
}

/// `μ(n)`, `φ(n)` and `σ_α(n)` in one factorisation.
pub fn arithmetical(n: u64, alpha: f64) -> Result<Arithmetical> {
    if n == 0 {
        return Err(crate::error::invalid("n", "must be at least 1"));
    }
    Ok(Arithmetical { mu: mobius(n), phi: euler_phi(n), sigma: sigma(n, alpha) })
}

/// `d(n)` for `0 ≤ n ≤ limit` (index 0 unused).
pub fn divisor_count_sieve(limit: usize) -> Vec<u32> {
    let mut d = vec![0u32; limit + 1];
    for i in 1..=limit {
        for j in (i..=limit).step_by(i) {
            d[j] += 1;
        }
    }
    d
}

/// `σ_a(n)` in floating point for `0 ≤ n ≤ limit`.
pub fn sigma_sieve(limit: usize, a: f64) -> Vec<f64> {
    let mut s = vec![0.0; limit + 1];
    for i in 1..=limit {
        let ia = (i as f64).powf(a);
        for j in (i..=limit).step_by(i) {
            s[j] += ia;
        }
    }
    s
}

/// `μ(n)` for `0 ≤ n ≤ limit` by a linear sieve.
pub fn mobius_sieve(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    mu[0] = 0;
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// `μ(n)` for `lo ≤ n ≤ hi`, segmented.
pub fn mobius_range(lo: u64, hi: u64) -> Vec<i8> {
    assert!(lo >= 1 && hi >= lo);
    let len = (hi - lo + 1) as usize;
    let mut mu = vec![1i8; len];
    let mut rest: Vec<u64> = (lo..=hi).collect();
    let root = (hi as f64).sqrt() as u64 + 1;
    for p in primes_up_to(root as usize) {
        let p = p as u64;
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m <= hi {
            let i = (m - lo) as usize;
            if (m / p) % p == 0 {
                mu[i] = 0;
            } else {
                mu[i] = -mu[i];
            }
            rest[i] /= p;
            m += p;
        }
    }
    for i in 0..len {
        if mu[i] != 0 && rest[i] > 1 {
            mu[i] = -mu[i];
        }
    }
    mu
}

pub fn primes_up_to(limit: usize) -> Vec<usize> {
    if limit < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= limit {
        if sieve[i] {
            for j in (i * i..=limit).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i).collect()
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inverse_by_search(r: u64, b: u64) -> u64 {
        (1..b).find(|x| (r * x) % b == 1).unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(2, 3).unwrap(), 2);
        for b in 2..40 {
            assert_eq!(mod_inverse(1, b).unwrap(), 1);
        }
        assert_eq!(mod_inverse(2, 4), Err(Error::NotCoprime { r: 2, b: 4 }));
    }

    #[test]
    fn inverse_is_an_involution() {
        for b in 2..=500u64 {
            for r in 1..b {
                if gcd(r, b) != 1 {
                    continue;
                }
                let inv = mod_inverse(r, b).unwrap();
                assert_eq!(mod_inverse(inv, b).unwrap(), r);
                if b < 60 {
                    assert_eq!(inv, inverse_by_search(r, b));
                }
            }
        }
    }

    fn divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    #[test]
    fn arithmetical_examples() {
        let a = arithmetical(12, 1.0).unwrap();
        assert_eq!((a.mu, a.phi, a.sigma), (0, 4, 28.0));
        assert_eq!(sigma(12, 0.0), 6.0);
        let a = arithmetical(30, 1.0).unwrap();
        assert_eq!((a.mu, a.phi, a.sigma), (-1, 8, 72.0));
        let a = arithmetical(1, 2.5).unwrap();
        assert_eq!((a.mu, a.phi, a.sigma), (1, 1, 1.0));
    }

    #[test]
    fn agrees_with_divisor_enumeration() {
        for n in 1..300u64 {
            let ds = divisors(n);
            assert_eq!(sigma_exact(n, 0), ds.len() as u128);
            assert_eq!(sigma_exact(n, 2), ds.iter().map(|d| (d * d) as u128).sum::<u128>());
            let phi = (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), phi);
        }
    }

    #[test]
    fn sieves_match_pointwise() {
        let d = divisor_count_sieve(1000);
        let mu = mobius_sieve(1000);
        let s = sigma_sieve(1000, 1.0);
        for n in 1..=1000u64 {
            assert_eq!(d[n as usize] as u128, sigma_exact(n, 0));
            assert_eq!(mu[n as usize], mobius(n));
            assert_eq!(s[n as usize], sigma_exact(n, 1) as f64);
        }
        let seg = mobius_range(5000, 7000);
        for (i, &m) in seg.iter().enumerate() {
            assert_eq!(m, mobius(5000 + i as u64));
        }
    }

    #[test]
    fn primality() {
        let small = primes_up_to(2000);
        for n in 0..2000u64 {
            assert_eq!(is_prime(n), small.binary_search(&(n as usize)).is_ok());
        }
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime((1u64 << 61) + 1));
    }

    proptest! {
        #[test]
        fn sigma_is_multiplicative(m in 1u64..5000, n in 1u64..5000, k in 0u32..3) {
            prop_assume!(gcd(m, n) == 1);
            prop_assert_eq!(sigma_exact(m * n, k), sigma_exact(m, k) * sigma_exact(n, k));
        }

        #[test]
        fn inverse_property(b in 2u64..1_000_000_000_000, r in 1u64..1_000_000_000_000) {
            let r = r % b;
            prop_assume!(r > 0 && gcd(r, b) == 1);
            let inv = mod_inverse(r, b).unwrap();
            prop_assert!(inv >= 1 && inv < b);
            prop_assert_eq!(mul_mod(r, inv, b), 1);
        }
    }
}

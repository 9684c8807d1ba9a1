use serde::{Deserialize, Serialize};

use super::fraction::ReducedFraction;

/// Simple continued fraction `⟨a₀; a₁, …, a_n⟩` with its convergents `u_l/v_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub quotients: Vec<u64>,
    pub convergents: Vec<(u64, u64)>,
}

impl ContinuedFraction {
    /// Builds the convergents from a quotient list. Returns `None` on overflow.
    pub fn from_quotients(quotients: &[u64]) -> Option<Self> {
        let mut convergents = Vec::with_capacity(quotients.len());
        let (mut u2, mut v2) = (0u64, 1u64);
        let (mut u1, mut v1) = (1u64, 0u64);
        for &a in quotients {
            let u = a.checked_mul(u1)?.checked_add(u2)?;
            let v = a.checked_mul(v1)?.checked_add(v2)?;
            convergents.push((u, v));
            (u2, v2, u1, v1) = (u1, v1, u, v);
        }
        Some(Self { quotients: quotients.to_vec(), convergents })
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// The last convergent, as a fraction.
    pub fn value(&self) -> Option<ReducedFraction> {
        self.convergents.last().and_then(|&(u, v)| ReducedFraction::new(u, v).ok())
    }
}

/// Euclidean expansion of `r/b`.
pub fn continued_fraction(x: ReducedFraction) -> ContinuedFraction {
    let (mut num, mut den) = (x.r(), x.b());
    let mut quotients = Vec::new();
    loop {
        quotients.push(num / den);
        let rem = num % den;
        if rem == 0 {
            break;
        }
        (num, den) = (den, rem);
    }
    ContinuedFraction::from_quotients(&quotients).expect("convergents of a u64 fraction fit in u64")
}

/// Folds a quotient list back into `p/q`, exactly.
pub fn fold(quotients: &[u64]) -> (u128, u128) {
    let (mut p, mut q) = (1u128, 0u128);
    for &a in quotients.iter().rev() {
        (p, q) = (a as u128 * p + q, p);
    }
    (p, q)
}

/// Number of Euclidean steps needed for `r/b`.
pub fn euclid_length(r: u64, b: u64) -> usize {
    let (mut num, mut den) = (r, b);
    let mut n = 0;
    while den != 0 {
        (num, den) = (den, num % den);
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::arith::gcd;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn frac(r: u64, b: u64) -> ReducedFraction {
        ReducedFraction::new(r, b).unwrap()
    }

    #[test]
    fn examples() {
        let cf = continued_fraction(frac(5, 7));
        assert_eq!(cf.quotients, vec![0, 1, 2, 2]);
        assert_eq!(cf.convergents, vec![(0, 1), (1, 1), (2, 3), (5, 7)]);

        let cf = continued_fraction(frac(1, 9));
        assert_eq!(cf.quotients, vec![0, 9]);
        assert_eq!(cf.convergents, vec![(0, 1), (1, 9)]);

        let cf = continued_fraction(frac(17, 12));
        assert_eq!(cf.quotients, vec![1, 2, 2, 2]);
        assert_eq!(*cf.convergents.last().unwrap(), (17, 12));
        assert_eq!(cf.value(), Some(frac(17, 12)));
    }

    fn fibonacci(l: usize) -> u64 {
        let (mut a, mut b) = (0u64, 1u64);
        for _ in 0..l {
            (a, b) = (b, a + b);
        }
        a
    }

    fn check(r: u64, b: u64) {
        let x = frac(r, b);
        let cf = continued_fraction(x);
        assert_eq!(fold(&cf.quotients), (x.r() as u128, x.b() as u128));
        for (l, w) in cf.convergents.windows(2).enumerate() {
            assert!(w[1].1 > w[0].1 || l == 0);
        }
        for (l, &(u, v)) in cf.convergents.iter().enumerate() {
            assert_eq!(gcd(u, v), 1);
            assert!(v >= fibonacci(l));
            if l >= 2 {
                let a = cf.quotients[l];
                assert_eq!(v, a * cf.convergents[l - 1].1 + cf.convergents[l - 2].1);
            }
        }
    }

    #[test]
    fn reconstruction_on_random_fractions() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100_000 {
            let b = rng.random_range(1..=1_000_000u64);
            let r = rng.random_range(0..=2 * b);
            check(r, b);
        }
    }

    proptest! {
        #[test]
        fn reconstruction(r in 0u64..u64::MAX / 2, b in 1u64..(1u64 << 62)) {
            check(r, b);
        }
    }
}

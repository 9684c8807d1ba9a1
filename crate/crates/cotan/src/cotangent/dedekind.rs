use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

use super::{cot_pi_frac, SumValue};
use crate::error::{Error, Result};
use crate::numtheory::arith::{gcd, mul_mod};
use crate::numtheory::fraction::ReducedFraction;
use crate::summation::Neumaier;

/// `s(r/b)` as an exact rational from the sawtooth definition.
///
/// With `((μ/b)) = (2μ − b)/(2b)` for `b ∤ μ`, the sum is
/// `Σ (2μ − b)(2k_μ − b) / (4b²)` where `k_μ = μr mod b`.
pub fn dedekind_exact(r: u64, b: u64) -> Result<Ratio<i128>> {
    if b == 0 {
        return Err(Error::DenominatorTooSmall { b, min: 1 });
    }
    if gcd(r, b) != 1 {
        return Err(Error::NotCoprime { r, b });
    }
    if b > 1 << 30 {
        return Err(Error::TooLarge { value: b as u128, bound: 1 << 30 });
    }
    let bi = b as i128;
    let mut num: i128 = 0;
    for mu in 1..b {
        let k = mul_mod(mu, r, b) as i128;
        num += (2 * mu as i128 - bi) * (2 * k - bi);
    }
    Ok(Ratio::new(num, 4 * bi * bi))
}

pub fn dedekind_sawtooth(x: ReducedFraction) -> Result<SumValue> {
    let s = dedekind_exact(x.residue(), x.b())?;
    Ok(SumValue::naive(s.to_f64().unwrap_or(f64::NAN)))
}

/// `s(r/b) = (1/(4b))·Σ_{m=1}^{b−1} cot(πm/b)·cot(πmr/b)`.
pub fn dedekind_cotprod(x: ReducedFraction) -> Result<SumValue> {
    let (r, b) = (x.residue(), x.b());
    if b < 2 {
        return Ok(SumValue::naive(0.0));
    }
    // the summand is even under m → b − m
    let mut acc = Neumaier::new();
    for m in 1..=(b - 1) / 2 {
        acc.add(cot_pi_frac(m, b) * cot_pi_frac(mul_mod(m, r, b), b));
    }
    Ok(SumValue::naive(2.0 * acc.value() / (4.0 * b as f64)))
}

/// `|s(r/b) + s(b/r) − 1/(12rb) − (r/b + b/r − 3)/12|`, evaluated exactly.
pub fn dedekind_reciprocity_check(r: u64, b: u64) -> Result<f64> {
    if r == 0 || b == 0 {
        return Err(Error::DenominatorTooSmall { b: r.min(b), min: 1 });
    }
    let lhs = dedekind_exact(r % b, b)? + dedekind_exact(b % r, r)? - Ratio::new(1, 12 * r as i128 * b as i128);
    let rhs = (Ratio::new(r as i128, b as i128) + Ratio::new(b as i128, r as i128) - Ratio::from_integer(3))
        / Ratio::from_integer(12);
    Ok((lhs - rhs).abs().to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::fraction::coprime_residues;
    use rand::{Rng, SeedableRng};

    fn frac(r: u64, b: u64) -> ReducedFraction {
        ReducedFraction::coprime(r, b).unwrap()
    }

    fn sawtooth(x: f64) -> f64 {
        if x.fract() == 0.0 {
            0.0
        } else {
            x - x.floor() - 0.5
        }
    }

    #[test]
    fn examples() {
        assert_eq!(dedekind_exact(1, 3).unwrap(), Ratio::new(1, 18));
        assert_eq!(dedekind_exact(2, 3).unwrap(), Ratio::new(-1, 18));
        assert_eq!(dedekind_exact(0, 1).unwrap(), Ratio::from_integer(0));
        assert_eq!(dedekind_exact(5, 1).unwrap(), Ratio::from_integer(0));
        assert!((dedekind_cotprod(frac(1, 3)).unwrap().value - 1.0 / 18.0).abs() < 1e-16);
        let direct: f64 = (1..=7).map(|mu| sawtooth(mu as f64 * 3.0 / 7.0) * sawtooth(mu as f64 / 7.0)).sum();
        assert!((dedekind_sawtooth(frac(3, 7)).unwrap().value - direct).abs() < 1e-15);
    }

    #[test]
    fn both_forms_agree() {
        for b in 1..=200u64 {
            for r in coprime_residues(b).chain(std::iter::once(1)) {
                let a = dedekind_sawtooth(frac(r, b)).unwrap().value;
                let c = dedekind_cotprod(frac(r, b)).unwrap().value;
                assert!((a - c).abs() < 1e-12, "{r}/{b}: {a} vs {c}");
            }
        }
    }

    #[test]
    fn printed_sign_disagrees() {
        let c = dedekind_cotprod(frac(1, 3)).unwrap().value;
        let s = dedekind_sawtooth(frac(1, 3)).unwrap().value;
        assert!((-c - s).abs() > 0.1);
    }

    #[test]
    fn reciprocity() {
        assert_eq!(dedekind_reciprocity_check(2, 3).unwrap(), 0.0);
        assert_eq!(dedekind_reciprocity_check(1, 2).unwrap(), 0.0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut n = 0;
        while n < 500 {
            let r = rng.random_range(1..=1000u64);
            let b = rng.random_range(1..=1000u64);
            if gcd(r, b) != 1 {
                continue;
            }
            assert!(dedekind_reciprocity_check(r, b).unwrap() < 1e-9);
            n += 1;
        }
    }
}

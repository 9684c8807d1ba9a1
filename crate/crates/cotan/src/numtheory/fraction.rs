use serde::{Deserialize, Serialize};

use super::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};

/// Largest denominator accepted. Products of two residues then fit in `u128`
/// and numerators of convergents fit in `u64`.
pub const MAX_DENOMINATOR: u64 = 1 << 63;

/// A fraction `r/b` stored in lowest terms with `b ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedFraction {
    r: u64,
    b: u64,
}

impl ReducedFraction {
    /// Reduces `r/b` to lowest terms.
    pub fn new(r: u64, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::DenominatorTooSmall { b, min: 1 });
        }
        if b >= MAX_DENOMINATOR {
            return Err(Error::TooLarge { value: b as u128, bound: MAX_DENOMINATOR as u128 });
        }
        let g = gcd(r, b);
        Ok(Self { r: r / g, b: b / g })
    }

    /// Accepts `r/b` only if it is already in lowest terms.
    pub fn coprime(r: u64, b: u64) -> Result<Self> {
        let f = Self::new(r, b)?;
        if f.b != b {
            return Err(Error::NotCoprime { r, b });
        }
        Ok(f)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// The numerator reduced into `[0, b)`.
    pub fn residue(&self) -> u64 {
        self.r % self.b
    }

    /// `r̄`, the inverse of `r` modulo `b`, in `[1, b)`.
    pub fn inverse(&self) -> Result<u64> {
        mod_inverse(self.r, self.b)
    }

    /// `b/r` in lowest terms (the reciprocity partner).
    pub fn reciprocal(&self) -> Result<Self> {
        Self::new(self.b, self.r)
    }

    pub fn to_f64(&self) -> f64 {
        self.r as f64 / self.b as f64
    }

    pub(crate) fn require_denominator(&self, min: u64) -> Result<()> {
        if self.b < min {
            Err(Error::DenominatorTooSmall { b: self.b, min })
        } else {
            Ok(())
        }
    }
}

impl std::fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.r, self.b)
    }
}

/// All `r` in `[1, b)` coprime to `b`.
pub fn coprime_residues(b: u64) -> impl Iterator<Item = u64> {
    (1..b).filter(move |&r| gcd(r, b) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_reduces() {
        let f = ReducedFraction::new(6, 8).unwrap();
        assert_eq!((f.r(), f.b()), (3, 4));
        assert!(ReducedFraction::coprime(2, 4).is_err());
        assert!(ReducedFraction::new(1, 0).is_err());
        assert!(ReducedFraction::new(1, u64::MAX).is_err());
        assert_eq!(ReducedFraction::new(0, 7).unwrap(), ReducedFraction::new(0, 1).unwrap());
    }

    #[test]
    fn residues_count_phi() {
        assert_eq!(coprime_residues(1021).count(), 1020);
        assert_eq!(coprime_residues(1357).count(), 1276);
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default upper limit on the characteristic for dense cyclotomic values.
pub const DEFAULT_P_LIMIT: u32 = 101;

/// An exponent of a primitive `p`-th root of unity, in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharExponent(pub u32);

impl CharExponent {
    pub fn new(value: i64, p: u32) -> CharExponent {
        CharExponent(value.rem_euclid(p as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

/// An element of `Z[zeta_p]` written as `sum mult[i] zeta^i`.
///
/// The representation is not unique: adding a constant to every entry does
/// not change the value, since `1 + zeta + ... + zeta^{p-1} = 0`. Equality
/// accounts for that.
#[derive(Clone)]
pub struct CycloSum {
    mult: Vec<BigInt>,
}

impl fmt::Debug for CycloSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        match c.is_rational_integer() {
            Some(m) => write!(f, "CycloSum({m})"),
            None => write!(f, "CycloSum{:?}", c.mult),
        }
    }
}

impl PartialEq for CycloSum {
    fn eq(&self, other: &Self) -> bool {
        if self.p() != other.p() {
            return false;
        }
        let d0 = &self.mult[0] - &other.mult[0];
        self.mult
            .iter()
            .zip(&other.mult)
            .all(|(a, b)| a - b == d0)
    }
}

impl Eq for CycloSum {}

impl CycloSum {
    pub fn zero(p: u32) -> CycloSum {
        CycloSum {
            mult: vec![BigInt::zero(); p as usize],
        }
    }

    /// The rational integer `m`.
    pub fn integer(p: u32, m: impl Into<BigInt>) -> CycloSum {
        let mut s = CycloSum::zero(p);
        s.mult[0] = m.into();
        s
    }

    pub fn from_mults(mult: Vec<BigInt>) -> CycloSum {
        CycloSum { mult }
    }

    /// Builds a value from non-negative root counts, as produced by enumeration kernels.
    pub fn from_counts(counts: &[u64]) -> CycloSum {
        CycloSum {
            mult: counts.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn from_counts_u128(counts: &[u128]) -> CycloSum {
        CycloSum {
            mult: counts.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.mult.len() as u32
    }

    pub fn mults(&self) -> &[BigInt] {
        &self.mult
    }

    pub fn add(&self, other: &CycloSum) -> CycloSum {
        assert_eq!(self.p(), other.p(), "cyclotomic values over different p");
        CycloSum {
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &CycloSum) {
        assert_eq!(self.p(), other.p(), "cyclotomic values over different p");
        for (a, b) in self.mult.iter_mut().zip(&other.mult) {
            *a += b;
        }
    }

    pub fn add_root(&mut self, e: CharExponent) {
        self.mult[e.0 as usize] += 1;
    }

    /// Multiplication by `zeta^e`.
    pub fn rotate(&self, e: CharExponent) -> CycloSum {
        let p = self.mult.len();
        let mut mult = vec![BigInt::zero(); p];
        for (i, m) in self.mult.iter().enumerate() {
            mult[(i + e.0 as usize) % p] = m.clone();
        }
        CycloSum { mult }
    }

    pub fn scale(&self, k: &BigInt) -> CycloSum {
        CycloSum {
            mult: self.mult.iter().map(|m| m * k).collect(),
        }
    }

    /// Representative with smallest entry zero.
    pub fn canonical(&self) -> CycloSum {
        let min = self.mult.iter().min().cloned().unwrap_or_default();
        CycloSum {
            mult: self.mult.iter().map(|m| m - &min).collect(),
        }
    }

    /// `Some(m)` when the value is the rational integer `m`.
    pub fn is_rational_integer(&self) -> Option<BigInt> {
        let rest = &self.mult[1];
        if self.mult[1..].iter().all(|m| m == rest) {
            Some(&self.mult[0] - rest)
        } else {
            None
        }
    }

    /// `|value|` under `zeta -> exp(2 pi i / p)`, in double precision.
    ///
    /// The canonical representative is summed in `f64`; the relative error is
    /// of order `p * 2^-52` times the ratio of the largest multiplicity to the
    /// result, which is negligible against the `1e-9` tolerance used by callers
    /// unless the value nearly cancels (exact zero is detected exactly).
    pub fn magnitude(&self) -> f64 {
        if let Some(m) = self.is_rational_integer() {
            return m.abs().to_f64().unwrap_or(f64::INFINITY);
        }
        let c = self.canonical();
        let p = c.mult.len() as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (i, m) in c.mult.iter().enumerate() {
            let v = m.to_f64().unwrap_or(f64::INFINITY);
            let th = std::f64::consts::TAU * i as f64 / p;
            re += v * th.cos();
            im += v * th.sin();
        }
        re.hypot(im)
    }
}

/// Rejects characteristics above the dense-representation limit.
pub fn check_p_limit(p: u32, limit: u32) -> Result<()> {
    if p > limit {
        return Err(Error::BudgetExceeded {
            what: "cyclotomic representation".into(),
            needed: format!("p = {p}"),
            limit: format!("p <= {limit}"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_orbit_is_zero() {
        let s = CycloSum::from_counts(&[1, 1, 1, 1, 1]);
        assert_eq!(s, CycloSum::zero(5));
        assert_eq!(s.is_rational_integer(), Some(BigInt::zero()));
        assert_eq!(s.magnitude(), 0.0);
    }

    #[test]
    fn constant_shift_is_invisible() {
        let a = CycloSum::from_counts(&[2, 1, 1]);
        let b = CycloSum::from_counts(&[1, 0, 0]);
        assert_eq!(a, b);
        assert_eq!(a.canonical().mults(), b.mults());
    }

    #[test]
    fn integer_magnitude() {
        let s = CycloSum::integer(7, 3i64.pow(10));
        assert_eq!(s.is_rational_integer(), Some(BigInt::from(59049)));
        assert!((s.magnitude() - 59049.0).abs() / 59049.0 < 1e-12);
        let t = CycloSum::from_counts(&[5, 2, 2, 2, 2, 2, 2]);
        assert!((t.magnitude() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_root_has_unit_magnitude() {
        let s = CycloSum::from_counts(&[0, 1, 0]);
        assert!((s.magnitude() - 1.0).abs() < 1e-12);
        assert!(s.is_rational_integer().is_none());
        assert_eq!(s.rotate(CharExponent(2)), CycloSum::integer(3, 1));
    }
}

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A product of polynomial boxes: `n` coordinates per slot, slot `s` holding
/// polynomials with `|t| < q^{bounds[s]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSpec {
    n: usize,
    bounds: Vec<u32>,
}

impl BoxSpec {
    pub fn new(n: usize, bounds: Vec<u32>) -> Result<BoxSpec> {
        if n == 0 {
            return Err(Error::OutOfRange("box with zero coordinates".into()));
        }
        if bounds.iter().any(|&b| b == 0) {
            return Err(Error::OutOfRange("box bounds must be positive".into()));
        }
        Ok(BoxSpec { n, bounds })
    }

    /// The box of degree-`e` maps: slot `s` has `|t_s| < q^{s+1}`.
    pub fn morphism_box(n: usize, e: u32) -> Result<BoxSpec> {
        BoxSpec::new(n, (1..=e + 1).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    /// Number of free `F_q` coordinates, `n * sum(bounds)`.
    pub fn free_coords(&self) -> u64 {
        self.n as u64 * self.bounds.iter().map(|&b| b as u64).sum::<u64>()
    }

    pub fn cardinality(&self, q: u32) -> BigUint {
        let mut out = BigUint::one();
        for _ in 0..self.free_coords() {
            out *= q;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_is_big() {
        let b = BoxSpec::morphism_box(6, 3).unwrap();
        assert_eq!(b.free_coords(), 60);
        assert_eq!(b.cardinality(5), BigUint::from(5u32).pow(60));
        assert!(BoxSpec::new(2, vec![1, 0]).is_err());
    }
}

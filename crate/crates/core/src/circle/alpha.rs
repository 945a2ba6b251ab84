use num_bigint::BigUint;

use crate::budget::big_pow;
use crate::error::{precision, Error, Result};
use crate::ff_core::{Field, FqElem, LaurentNum, Poly};

/// `(alpha_0, ..., alpha_{de})`; component `j` is known at least down to `u^{-(j+1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTuple {
    components: Vec<LaurentNum>,
}

/// The grid point with the given index among the `q^depth` fractional parts
/// known down to `u^{-depth}`; digit `i` (coefficient of `u^{-1-i}`) is the
/// `i`-th base-`q` digit of `idx`.
pub fn grid_point(field: &Field, depth: usize, mut idx: u128) -> LaurentNum {
    let q = field.q() as u128;
    let digits: Vec<FqElem> = (0..depth)
        .map(|_| {
            let d = FqElem((idx % q) as u32);
            idx /= q;
            d
        })
        .collect();
    LaurentNum::from_fraction_digits(&digits)
}

/// `tr([u^{-1}] alpha P)` for a polynomial `P`, with `digits[k]` the
/// coefficient of `u^{-1-k}` in `alpha`.
pub(crate) fn phase_of_poly(field: &Field, digits: &[FqElem], p: &Poly) -> Result<u32> {
    if p.coeffs().len() > digits.len() {
        return Err(precision(format!(
            "phase of a degree {} polynomial needs {} digits, have {}",
            p.deg(),
            p.coeffs().len(),
            digits.len()
        )));
    }
    Ok(field.trace(field.dot(&digits[..p.coeffs().len()], p.coeffs())))
}

impl AlphaTuple {
    pub fn new(components: Vec<LaurentNum>) -> Result<AlphaTuple> {
        if components.is_empty() {
            return Err(Error::OutOfRange("empty alpha tuple".into()));
        }
        for (j, a) in components.iter().enumerate() {
            if a.floor().is_some_and(|fl| fl > -(j as i64 + 1)) {
                return Err(precision(format!(
                    "alpha_{j} must be known down to u^{}",
                    -(j as i64 + 1)
                )));
            }
        }
        Ok(AlphaTuple { components })
    }

    /// All components exactly zero.
    pub fn zero(num_forms: usize) -> AlphaTuple {
        AlphaTuple {
            components: vec![LaurentNum::zero(); num_forms],
        }
    }

    /// Number of points on the exact grid, `q^{sum_j (j+1)}`.
    pub fn grid_size(q: u32, num_forms: usize) -> BigUint {
        big_pow(q, (num_forms * (num_forms + 1) / 2) as u64)
    }

    /// Point `idx` of the exact grid; component `j` has `j + 1` digits.
    pub fn from_grid_index(field: &Field, num_forms: usize, mut idx: u128) -> AlphaTuple {
        let q = field.q() as u128;
        let components = (0..num_forms)
            .map(|j| {
                let size = q.pow(j as u32 + 1);
                let c = grid_point(field, j + 1, idx % size);
                idx /= size;
                c
            })
            .collect();
        AlphaTuple { components }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, j: usize) -> &LaurentNum {
        &self.components[j]
    }

    pub fn components(&self) -> &[LaurentNum] {
        &self.components
    }

    /// Replaces component `j`.
    pub fn with_component(&self, j: usize, a: LaurentNum) -> Result<AlphaTuple> {
        let mut c = self.components.clone();
        c[j] = a;
        AlphaTuple::new(c)
    }

    /// Digits `u^{-1}, ..., u^{-(j+1)}` of every component, concatenated.
    pub(crate) fn flat_digits(&self) -> Result<Vec<FqElem>> {
        let mut out = Vec::new();
        for (j, a) in self.components.iter().enumerate() {
            out.extend(a.fraction_digits(j + 1)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_enumeration() {
        let f = Field::prime(3).unwrap();
        assert_eq!(AlphaTuple::grid_size(3, 3), BigUint::from(729u32));
        let a = AlphaTuple::from_grid_index(&f, 3, 1 + 3 * 2);
        assert_eq!(a.component(0).coeff(-1).unwrap(), FqElem(1));
        assert_eq!(a.component(1).coeff(-1).unwrap(), FqElem(2));
        assert_eq!(a.component(1).floor(), Some(-2));
        let digits = a.flat_digits().unwrap();
        assert_eq!(digits.len(), 6);
    }

    #[test]
    fn precision_is_enforced() {
        let coarse = LaurentNum::zero_to(-1);
        assert!(AlphaTuple::new(vec![LaurentNum::zero(), coarse]).is_err());
    }

    #[test]
    fn phase() {
        let f = Field::prime(5).unwrap();
        let digits = [f.from_int(1), f.from_int(2)];
        // [u^{-1}] (u^{-1} + 2u^{-2})(3 + u) = 3 + 2
        let p = Poly::from_ints(&f, &[3, 1]);
        assert_eq!(phase_of_poly(&f, &digits, &p).unwrap(), 0);
        assert!(phase_of_poly(&f, &digits[..1], &p).is_err());
    }
}

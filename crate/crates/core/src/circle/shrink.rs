use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::check::Check;
use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::ff_core::linalg::rank;
use crate::ff_core::{Field, FqElem, LaurentNum};

/// `N` linear forms `L_i(t) = sum_j gamma_{ij} t_j` over `K_inf` with a
/// symmetric coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForms {
    field: Field,
    gamma: Vec<Vec<LaurentNum>>,
}

impl SymmetricForms {
    pub fn new(field: Field, gamma: Vec<Vec<LaurentNum>>) -> Result<SymmetricForms> {
        let size = gamma.len();
        if let Some(row) = gamma.iter().find(|r| r.len() != size) {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: row.len(),
            });
        }
        for i in 0..size {
            for j in 0..i {
                if gamma[i][j] != gamma[j][i] {
                    return Err(Error::ContractViolated(format!("gamma[{i}][{j}] != gamma[{j}][{i}]")));
                }
            }
        }
        Ok(SymmetricForms { field, gamma })
    }

    pub fn zero(field: Field, size: usize) -> SymmetricForms {
        SymmetricForms {
            field,
            gamma: vec![vec![LaurentNum::zero(); size]; size],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.gamma.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentNum {
        &self.gamma[i][j]
    }
}

/// `A`, `Z1`, `Z2` satisfying the side conditions of the shrinking inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShrinkParams {
    pub a: Rational64,
    pub z1: Rational64,
    pub z2: Rational64,
}

impl ShrinkParams {
    pub fn new(a: Rational64, z1: Rational64, z2: Rational64) -> Result<ShrinkParams> {
        let fail = |m: &str| Err(Error::ContractViolated(m.to_string()));
        if a < Rational64::zero() {
            return fail("A must be non-negative");
        }
        if z1 > Rational64::zero() || z2 > Rational64::zero() {
            return fail("Z1 and Z2 must be non-positive");
        }
        let d = a - z2;
        if !d.is_integer() || d < Rational64::from_integer(1) {
            return fail("A - Z2 must be a positive integer");
        }
        let gap = z2 - z1;
        if !gap.is_integer() || gap < Rational64::zero() {
            return fail("Z2 - Z1 must be a non-negative integer");
        }
        for z in [z1, z2] {
            if !(a + z).is_integer() || !(a - z).is_integer() {
                return fail("A + Z and A - Z must be integers");
            }
        }
        Ok(ShrinkParams { a, z1, z2 })
    }

    /// Digits of each `gamma_{ij}` that the counts depend on, `2A - 1`.
    pub fn precision(&self) -> usize {
        (self.a * 2 - 1).to_integer().max(0) as usize
    }
}

/// Exponent `A + Z` of the box and `-A + Z` of the norm condition.
fn exponents(a: Rational64, z: Rational64) -> (i64, i64) {
    ((a + z).to_integer(), (z - a).to_integer())
}

/// `#{t : |t_i| < q^{A+Z}, ||L_i(t)|| < q^{-A+Z} for all i}`, by enumeration;
/// the count is cross-checked against the kernel dimension of the digit map.
pub fn shrink_count(forms: &SymmetricForms, a: Rational64, z: Rational64, budget: &Budget) -> Result<BigUint> {
    let (b, s) = exponents(a, z);
    if b <= 0 {
        return Ok(BigUint::from(1u32));
    }
    let field = &forms.field;
    let size = forms.size();
    let b = b as usize;
    let depth = (b as i64 - s - 1) as usize;
    let digits: Vec<Vec<Vec<FqElem>>> = forms
        .gamma
        .iter()
        .map(|row| row.iter().map(|g| g.fraction_digits(depth)).collect())
        .collect::<Result<_>>()?;
    let conditions = (-s) as usize;
    let ncols = size * b;
    // row (i, m): [u^{-1-m}] L_i(t); column (j, k): coefficient of u^k in t_j
    let matrix: Vec<Vec<FqElem>> = (0..size)
        .flat_map(|i| (0..conditions).map(move |m| (i, m)))
        .map(|(i, m)| {
            (0..size)
                .flat_map(|j| (0..b).map(move |k| (j, k)))
                .map(|(j, k)| digits[i][j][m + k])
                .collect()
        })
        .collect();
    let total = big_pow(field.q(), ncols as u64);
    budget.check_box("shrinking lemma box", &total)?;
    let total = total.to_u64().ok_or_else(|| Error::OutOfRange("box too large".into()))?;
    let q = field.q() as u64;
    let hits: u64 = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let mut rest = idx;
            let t: Vec<FqElem> = (0..ncols)
                .map(|_| {
                    let c = FqElem((rest % q) as u32);
                    rest /= q;
                    c
                })
                .collect();
            matrix.iter().all(|row| field.dot(row, &t).is_zero())
        })
        .count() as u64;
    let by_rank = big_pow(field.q(), (ncols - rank(field, &matrix, ncols)) as u64);
    if by_rank != BigUint::from(hits) {
        return Err(Error::CrossCheck(format!(
            "enumerated {hits} points, kernel dimension gives {by_rank}"
        )));
    }
    Ok(by_rank)
}

/// `N_A(Z2) <= q^{N (Z2 - Z1)} N_A(Z1)`.
pub fn shrink_check(forms: &SymmetricForms, params: &ShrinkParams, budget: &Budget) -> Result<Check> {
    let big = shrink_count(forms, params.a, params.z2, budget)?;
    let small = shrink_count(forms, params.a, params.z1, budget)?;
    let gap = (params.z2 - params.z1).to_integer() as u64;
    let rhs = big_pow(forms.field.q(), forms.size() as u64 * gap) * small;
    Ok(Check::exact_le("shrinking", &big, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn parameter_contract() {
        assert!(ShrinkParams::new(r(2, 1), r(-1, 1), r(0, 1)).is_ok());
        assert!(ShrinkParams::new(r(3, 2), r(-3, 2), r(-1, 2)).is_ok());
        assert!(ShrinkParams::new(r(0, 1), r(0, 1), r(0, 1)).is_err());
        assert!(ShrinkParams::new(r(2, 1), r(0, 1), r(-1, 1)).is_err());
        assert!(ShrinkParams::new(r(3, 2), r(-1, 1), r(-1, 2)).is_err());
        assert!(ShrinkParams::new(r(2, 1), r(-1, 1), r(1, 1)).is_err());
    }

    #[test]
    fn zero_forms_fill_the_box() {
        let f = Field::prime(3).unwrap();
        let forms = SymmetricForms::zero(f, 2);
        let p = ShrinkParams::new(r(2, 1), r(-2, 1), r(0, 1)).unwrap();
        let big = shrink_count(&forms, p.a, p.z2, &Budget::default()).unwrap();
        assert_eq!(big, BigUint::from(81u32));
        let small = shrink_count(&forms, p.a, p.z1, &Budget::default()).unwrap();
        assert_eq!(small, BigUint::from(1u32));
        let c = shrink_check(&forms, &p, &Budget::default()).unwrap();
        assert!(c.pass);
        assert_eq!(c.rhs, "81");
    }

    #[test]
    fn equal_levels() {
        let f = Field::prime(5).unwrap();
        let g = LaurentNum::from_fraction_digits(&[f.from_int(1), f.from_int(3), f.from_int(2)]);
        let forms = SymmetricForms::new(f, vec![vec![g]]).unwrap();
        let p = ShrinkParams::new(r(2, 1), r(-1, 1), r(-1, 1)).unwrap();
        let c = shrink_check(&forms, &p, &Budget::default()).unwrap();
        assert!(c.pass);
        assert_eq!(c.lhs, c.rhs);
    }

    #[test]
    fn rejects_asymmetric_and_imprecise() {
        let f = Field::prime(3).unwrap();
        let a = LaurentNum::monomial(FqElem::ONE, -1);
        assert!(SymmetricForms::new(f.clone(), vec![vec![LaurentNum::zero(), a.clone()], vec![LaurentNum::zero(), LaurentNum::zero()]]).is_err());
        let coarse = LaurentNum::from_fraction_digits(&[FqElem::ONE]);
        let forms = SymmetricForms::new(f, vec![vec![coarse]]).unwrap();
        assert!(shrink_count(&forms, r(2, 1), r(0, 1), &Budget::default()).is_err());
    }
}

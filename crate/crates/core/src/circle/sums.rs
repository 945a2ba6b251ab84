use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::alpha::{grid_point, phase_of_poly, AlphaTuple};
use crate::budget::{big_pow, Budget};
use crate::characters::CycloSum;
use crate::counting::var_index;
use crate::error::{Error, Result};
use crate::ff_core::{BoxSpec, Field, FqElem};
use crate::forms::{FormSystem, MorphismCoeffs};

/// The values `[u^k] F_j(t)`, `0 <= k <= j`, for every `t` in the degree box,
/// from which `S(alpha)` and its partial sums are evaluated exactly.
#[derive(Clone, Debug)]
pub struct ExponentialSum {
    field: Field,
    n: usize,
    e: u32,
    num_forms: usize,
    values: Vec<Vec<FqElem>>,
    histogram: Vec<(Vec<FqElem>, u64)>,
}

impl ExponentialSum {
    /// Tabulates the forms over the whole box. Fails if some `F_j(t)` has
    /// degree above `j`, since the exact grids rely on that bound.
    pub fn new(sys: &FormSystem, budget: &Budget) -> Result<ExponentialSum> {
        let field = sys.field().clone();
        let n = sys.n();
        let e = sys.e();
        let size = BoxSpec::morphism_box(n, e)?.cardinality(field.q());
        budget.check_box("exponential sum box", &size)?;
        let size = size.to_u64().ok_or_else(|| Error::OutOfRange("box too large".into()))?;
        let num_forms = sys.num_forms();
        let values: Result<Vec<Vec<FqElem>>> = (0..size)
            .into_par_iter()
            .map(|idx| {
                let g = MorphismCoeffs::from_box_index(&field, n, e, idx as u128);
                let forms = sys.eval_all(&g)?;
                let mut flat = Vec::with_capacity(num_forms * (num_forms + 1) / 2);
                for (j, fj) in forms.iter().enumerate() {
                    if fj.coeffs().len() > j + 1 {
                        return Err(Error::ContractViolated(format!(
                            "F_{j} has degree {} > {j} at box point {idx}",
                            fj.deg()
                        )));
                    }
                    flat.extend((0..=j).map(|k| fj.coeff(k)));
                }
                Ok(flat)
            })
            .collect();
        let values = values?;
        let mut counts: BTreeMap<&[FqElem], u64> = BTreeMap::new();
        for v in &values {
            *counts.entry(v.as_slice()).or_default() += 1;
        }
        let histogram = counts.into_iter().map(|(k, c)| (k.to_vec(), c)).collect();
        Ok(ExponentialSum {
            field,
            n,
            e,
            num_forms,
            values,
            histogram,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_forms(&self) -> usize {
        self.num_forms
    }

    pub fn box_size(&self) -> usize {
        self.values.len()
    }

    /// Distinct value vectors; a measure of how much the histogram saves.
    pub fn distinct_values(&self) -> usize {
        self.histogram.len()
    }

    fn trace_counts(&self, digits: &[FqElem], counts: &mut [u64]) {
        for (v, c) in &self.histogram {
            counts[self.field.trace(self.field.dot(digits, v)) as usize] += c;
        }
    }

    /// `S(alpha)` from the flat digit vector of an alpha tuple.
    pub(crate) fn eval_digits(&self, digits: &[FqElem]) -> CycloSum {
        let mut counts = vec![0u64; self.field.p() as usize];
        self.trace_counts(digits, &mut counts);
        CycloSum::from_counts(&counts)
    }

    /// `S(alpha) = sum_t psi(sum_k alpha_k F_k(t))`.
    pub fn eval(&self, alpha: &AlphaTuple) -> Result<CycloSum> {
        self.check_len(alpha)?;
        Ok(self.eval_digits(&alpha.flat_digits()?))
    }

    fn check_len(&self, alpha: &AlphaTuple) -> Result<()> {
        if alpha.len() != self.num_forms {
            return Err(Error::DimensionMismatch {
                expected: self.num_forms,
                found: alpha.len(),
            });
        }
        Ok(())
    }

    /// Slot indices held fixed when piece `j` is isolated: all but `l - 1` and `l`
    /// (or all but `l` when `d | j`).
    pub fn outer_slots(&self, inner: &[usize]) -> Vec<usize> {
        (0..=self.e as usize).filter(|s| !inner.contains(s)).collect()
    }

    /// Key of box index `idx` after erasing the digits of the `inner` slots.
    fn outer_key(&self, idx: usize, inner: &[usize]) -> usize {
        let q = self.field.q() as usize;
        let mut key = idx;
        for &s in inner {
            let lo = q.pow(var_index(self.n, s, 0, 0) as u32);
            let width = q.pow((self.n * (s + 1)) as u32);
            let digit = (idx / lo) % width;
            key -= digit * lo;
        }
        key
    }

    /// The partial sums over the `inner` slots with the others fixed, one per
    /// outer assignment, in increasing order of the outer assignment's index.
    pub fn fiber_sums(&self, inner: &[usize], alpha: &AlphaTuple) -> Result<Vec<(usize, CycloSum)>> {
        self.check_len(alpha)?;
        let digits = alpha.flat_digits()?;
        let p = self.field.p() as usize;
        let mut by_key: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        for (idx, v) in self.values.iter().enumerate() {
            let tr = self.field.trace(self.field.dot(&digits, v)) as usize;
            by_key.entry(self.outer_key(idx, inner)).or_insert_with(|| vec![0; p])[tr] += 1;
        }
        Ok(by_key
            .into_iter()
            .map(|(k, c)| (k, CycloSum::from_counts(&c)))
            .collect())
    }

    /// `prod_j q^{-(j+1)} * sum over the exact alpha grid of S(alpha)`.
    pub fn integral(&self, budget: &Budget) -> Result<BigUint> {
        let q = self.field.q();
        let grid = AlphaTuple::grid_size(q, self.num_forms);
        budget.check_grid("integral grid times box", &(&grid * BigUint::from(self.histogram.len())))?;
        let grid_len = grid.to_u64().ok_or_else(|| Error::OutOfRange("grid too large".into()))?;
        let p = self.field.p() as usize;
        let totals = (0..grid_len)
            .into_par_iter()
            .fold(
                || vec![0u64; p],
                |mut acc, idx| {
                    let alpha = AlphaTuple::from_grid_index(&self.field, self.num_forms, idx as u128);
                    let digits = alpha.flat_digits().expect("grid points carry full precision");
                    self.trace_counts(&digits, &mut acc);
                    acc
                },
            )
            .reduce(
                || vec![0u64; p],
                |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            );
        let sum = CycloSum::from_counts(&totals)
            .is_rational_integer()
            .ok_or(Error::OrthogonalityViolated)?;
        let grid = BigInt::from(grid);
        if !(&sum % &grid).is_zero() || sum < BigInt::zero() {
            return Err(Error::OrthogonalityViolated);
        }
        (sum / grid).to_biguint().ok_or(Error::OrthogonalityViolated)
    }
}

/// `S(alpha)` for a form system over its degree box.
pub fn eval_s(sys: &FormSystem, alpha: &AlphaTuple, budget: &Budget) -> Result<CycloSum> {
    ExponentialSum::new(sys, budget)?.eval(alpha)
}

/// `N(e)` as the discretized integral of `S` over the exact grid.
pub fn exact_integral_n(sys: &FormSystem, budget: &Budget) -> Result<BigUint> {
    ExponentialSum::new(sys, budget)?.integral(budget)
}

/// `prod_j q^{-(j+1)} sum_{alpha_j} psi(alpha_j F_j(t))` at a single map, which
/// should be the indicator of `F_j(t) = 0` for all `j`.
pub fn point_orthogonality(sys: &FormSystem, g: &MorphismCoeffs) -> Result<BigRational> {
    let field = sys.field();
    let q = field.q();
    let p = field.p() as usize;
    let forms = sys.eval_all(g)?;
    let mut value = BigRational::from_integer(BigInt::from(1));
    for (j, fj) in forms.iter().enumerate() {
        let size = (q as u128).pow(j as u32 + 1);
        let mut counts = vec![0u64; p];
        for idx in 0..size {
            let a = grid_point(field, j + 1, idx);
            let digits = a.fraction_digits(j + 1)?;
            counts[phase_of_poly(field, &digits, fj)? as usize] += 1;
        }
        let s = CycloSum::from_counts(&counts)
            .is_rational_integer()
            .ok_or(Error::OrthogonalityViolated)?;
        value *= BigRational::new(s, BigInt::from(big_pow(q, j as u64 + 1)));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::LaurentNum;
    use crate::forms::Hypersurface;

    fn system(monos: &[(&[u32], i64)]) -> FormSystem {
        let f = Field::prime(3).unwrap();
        let m = monos.iter().map(|(e, c)| (e.to_vec(), f.from_int(*c))).collect();
        FormSystem::from_form(&Hypersurface::new(f, 2, 2, m).unwrap(), 1).unwrap()
    }

    #[test]
    fn integral_matches_counts() {
        let b = Budget::default();
        assert_eq!(exact_integral_n(&system(&[(&[2, 0], 1), (&[0, 2], 1)]), &b).unwrap(), BigUint::from(1u32));
        assert_eq!(exact_integral_n(&system(&[(&[1, 1], 1)]), &b).unwrap(), BigUint::from(53u32));
    }

    #[test]
    fn s_at_zero_is_box_size() {
        let sys = system(&[(&[1, 1], 1)]);
        let s = eval_s(&sys, &AlphaTuple::zero(3), &Budget::default()).unwrap();
        assert_eq!(s.is_rational_integer(), Some(BigInt::from(729)));
    }

    #[test]
    fn inner_slots_factor_out() {
        // only alpha_0 = u^{-1}: the slot t_1 contributes a free factor 81
        let sys = system(&[(&[2, 0], 1), (&[0, 2], 1)]);
        let f = sys.field().clone();
        let alpha = AlphaTuple::new(vec![
            LaurentNum::monomial(FqElem::ONE, -1),
            LaurentNum::zero(),
            LaurentNum::zero(),
        ])
        .unwrap();
        let s = eval_s(&sys, &alpha, &Budget::default()).unwrap();
        let mut direct = CycloSum::zero(3);
        for a in f.elements() {
            for b in f.elements() {
                let v = f.add(f.mul(a, a), f.mul(b, b));
                direct.add_root(crate::characters::CharExponent(f.trace(v)));
            }
        }
        assert_eq!(s, direct.scale(&BigInt::from(81)));
    }

    #[test]
    fn indicator_at_points() {
        let sys = system(&[(&[1, 1], 1)]);
        let f = sys.field().clone();
        for idx in [0u128, 1, 5, 100, 728] {
            let g = MorphismCoeffs::from_box_index(&f, 2, 1, idx);
            let expected = u32::from(sys.all_vanish(&g).unwrap());
            assert_eq!(point_orthogonality(&sys, &g).unwrap(), BigRational::from_integer(expected.into()));
        }
    }
}

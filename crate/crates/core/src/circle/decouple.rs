use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::alpha::{grid_point, AlphaTuple};
use super::bihom::{cross_check_e, ArcParams, BihomSum};
use super::check::Check;
use super::sums::ExponentialSum;
use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::ff_core::{Field, FqElem};
use crate::forms::{BidegreeForm, FormSystem};

/// One piece of the splitting: `G_j`, its boxes, the slots it isolates, and
/// `E_j` tabulated on all `q^{j+1}` values of `alpha_j` that matter.
#[derive(Clone, Debug)]
pub struct Piece {
    pub form: BidegreeForm,
    pub params: ArcParams,
    /// Slots summed inside `T_j`: `{l-1, l}`, or `{l}` when `d | j`.
    pub inner: Vec<usize>,
    pub e_zero: BigUint,
    e_values: Vec<BigUint>,
}

impl Piece {
    fn build(sys: &FormSystem, j: u32, budget: &Budget) -> Result<Piece> {
        let form = BidegreeForm::build(sys.tensor(), sys.e(), j)?;
        let params = ArcParams::for_piece(&form, 1)?;
        if params.precision() != j as usize + 1 {
            return Err(Error::ContractViolated(format!(
                "piece {j} needs {} digits, expected {}",
                params.precision(),
                j + 1
            )));
        }
        let sum = BihomSum::new(&form, &params, budget)?;
        let field = sys.field();
        let size = big_pow(field.q(), j as u64 + 1);
        budget.check_grid("E_j table", &(&size * sum.e_zero()))?;
        let size = size.to_u64().ok_or_else(|| Error::OutOfRange("grid too large".into()))?;
        let e_values: Result<Vec<BigUint>> = (0..size)
            .into_par_iter()
            .map(|idx| {
                let a = grid_point(field, j as usize + 1, idx as u128);
                let e = sum.eval(&a)?;
                cross_check_e(&form, &params, &a, &e, budget)
            })
            .collect();
        let inner = match form.x_slot() {
            Some(x) => vec![x, form.y_slot()],
            None => vec![form.y_slot()],
        };
        Ok(Piece {
            e_zero: sum.e_zero(),
            form,
            params,
            inner,
            e_values: e_values?,
        })
    }

    /// `E_j(alpha_j)`, from the first `j + 1` digits of `alpha_j`.
    pub fn e_value(&self, field: &Field, alpha_j: &crate::ff_core::LaurentNum) -> Result<&BigUint> {
        let digits = alpha_j.fraction_digits(self.params.precision())?;
        Ok(&self.e_values[digit_index(field, &digits)])
    }

    /// `|U_j|`: the box of the isolated slots, `prod_{s in I_j} q^{(s+1) n}`.
    pub fn inner_box(&self, field: &Field) -> BigUint {
        let n = self.form.n() as u64;
        big_pow(field.q(), self.inner.iter().map(|&s| (s as u64 + 1) * n).sum())
    }
}

fn digit_index(field: &Field, digits: &[FqElem]) -> usize {
    let q = field.q() as usize;
    digits.iter().rev().fold(0, |acc, d| acc * q + d.index() as usize)
}

fn ln_big(x: &BigUint) -> f64 {
    x.to_f64().map_or(f64::INFINITY, f64::ln)
}

/// Everything needed to test the Holder splitting of `|S(alpha)|` on one
/// form system: the tabulated sum and every piece.
#[derive(Clone, Debug)]
pub struct Decoupling {
    sum: ExponentialSum,
    pieces: Vec<Piece>,
    d: u32,
}

impl Decoupling {
    pub fn new(sys: &FormSystem, budget: &Budget) -> Result<Decoupling> {
        let sum = ExponentialSum::new(sys, budget)?;
        let pieces = (0..sys.num_forms() as u32)
            .map(|j| Piece::build(sys, j, budget))
            .collect::<Result<Vec<_>>>()?;
        Ok(Decoupling {
            sum,
            pieces,
            d: sys.d(),
        })
    }

    pub fn sum(&self) -> &ExponentialSum {
        &self.sum
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn power(&self) -> f64 {
        (1u64 << (self.d - 1)) as f64
    }

    /// `|S|^{2^{d-1}} <= E^{2^{d-1}} |U|^{2^{d-1}} prod_j |E_j(alpha_j)|^{1/(de+1)}`,
    /// with `E = prod_j E_j(0)^{-1/((de+1) 2^{d-1})}`.
    pub fn decouple_check(&self, alpha: &AlphaTuple) -> Result<Check> {
        let field = self.sum.field();
        let s = self.sum.eval(alpha)?;
        let pow = self.power();
        let lhs = pow * s.magnitude().ln();
        let pieces = self.pieces.len() as f64;
        let ln_box = (self.sum.box_size() as f64).ln();
        let mut rhs = pow * ln_box;
        for (j, piece) in self.pieces.iter().enumerate() {
            let e = piece.e_value(field, alpha.component(j))?;
            rhs += (ln_big(e) - ln_big(&piece.e_zero)) / pieces;
        }
        Ok(Check::log_le("decoupling", lhs, rhs))
    }

    /// `max |T_j|^{2^{d-1}} <= |U_j|^{2^{d-1}} E_j(0)^{-1} E_j(alpha_j)` over every
    /// assignment of the slots outside `I_j`, with the full phase of `alpha`.
    pub fn lemma_t_check(&self, j: usize, alpha: &AlphaTuple) -> Result<Check> {
        let piece = self
            .pieces
            .get(j)
            .ok_or_else(|| Error::OutOfRange(format!("no piece {j}")))?;
        let field = self.sum.field();
        let fibers = self.sum.fiber_sums(&piece.inner, alpha)?;
        let max = fibers
            .iter()
            .map(|(_, t)| t.magnitude())
            .fold(0.0f64, f64::max);
        let pow = self.power();
        let e = piece.e_value(field, alpha.component(j))?;
        let rhs = pow * ln_big(&piece.inner_box(field)) - ln_big(&piece.e_zero) + ln_big(e);
        Ok(Check::log_le(format!("T_{j} bound"), pow * max.ln(), rhs))
    }
}

/// Single-shot decoupling check for one `alpha`.
pub fn decouple_check(sys: &FormSystem, alpha: &AlphaTuple, budget: &Budget) -> Result<bool> {
    Ok(Decoupling::new(sys, budget)?.decouple_check(alpha)?.pass)
}

/// Single-shot bound on `T_j` for one `alpha`.
pub fn lemma_t_bound_check(sys: &FormSystem, j: usize, alpha: &AlphaTuple, budget: &Budget) -> Result<bool> {
    Ok(Decoupling::new(sys, budget)?.lemma_t_check(j, alpha)?.pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Hypersurface;

    fn system() -> FormSystem {
        let f = Field::prime(3).unwrap();
        let h = Hypersurface::new(f, 2, 2, vec![(vec![1, 1], FqElem::ONE)]).unwrap();
        FormSystem::from_form(&h, 1).unwrap()
    }

    #[test]
    fn equality_at_zero() {
        let dec = Decoupling::new(&system(), &Budget::default()).unwrap();
        let zero = AlphaTuple::zero(3);
        let c = dec.decouple_check(&zero).unwrap();
        assert!(c.pass);
        let (l, r): (f64, f64) = (c.lhs.parse().unwrap(), c.rhs.parse().unwrap());
        assert!((l - r).abs() <= 1e-9 * r);
        assert!((l - 729.0f64.powi(2)).abs() < 1e-6);
        for j in 0..3 {
            let c = dec.lemma_t_check(j, &zero).unwrap();
            let (l, r): (f64, f64) = (c.lhs.parse().unwrap(), c.rhs.parse().unwrap());
            assert!((l - r).abs() <= 1e-9 * r, "j={j} {c:?}");
        }
    }

    #[test]
    fn pieces_have_expected_shape() {
        let dec = Decoupling::new(&system(), &Budget::default()).unwrap();
        let inner: Vec<Vec<usize>> = dec.pieces().iter().map(|p| p.inner.clone()).collect();
        assert_eq!(inner, vec![vec![0], vec![0, 1], vec![1]]);
        let f = Field::prime(3).unwrap();
        assert_eq!(dec.pieces()[2].inner_box(&f), BigUint::from(81u32));
        assert_eq!(dec.pieces()[2].e_zero, BigUint::from(6561u32));
    }

    #[test]
    fn a_few_grid_points() {
        let sys = system();
        let dec = Decoupling::new(&sys, &Budget::default()).unwrap();
        for idx in [1u128, 17, 200, 728] {
            let a = AlphaTuple::from_grid_index(sys.field(), 3, idx);
            assert!(dec.decouple_check(&a).unwrap().pass);
            for j in 0..3 {
                assert!(dec.lemma_t_check(j, &a).unwrap().pass);
            }
        }
    }
}

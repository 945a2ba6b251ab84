use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check::Check;
use crate::budget::{big_pow, Budget};
use crate::characters::CycloSum;
use crate::counting::q_power;
use crate::error::{Error, Result};
use crate::ff_core::{Field, FqElem, LaurentNum, Poly};
use crate::forms::BidegreeForm;

/// Box and arc parameters for a bihomogeneous form of bidegree `(d1, d2)`:
/// `|x| < q^{P1}`, `|y| < q^{P2}`, and the major arc level `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcParams {
    pub d1: u32,
    pub d2: u32,
    pub p1: u32,
    pub p2: u32,
    pub j_level: u32,
}

impl ArcParams {
    pub fn new(d1: u32, d2: u32, p1: u32, p2: u32, j_level: u32) -> Result<ArcParams> {
        let bad = |m: &str| Err(Error::ContractViolated(m.to_string()));
        if d2 == 0 {
            return bad("d2 must be at least 1");
        }
        if p1 == 0 || p1 > p2 {
            return bad("box exponents need 1 <= P1 <= P2");
        }
        if d1 == 0 && p1 != p2 {
            return bad("P1 = P2 is required when d1 = 0");
        }
        if j_level == 0 {
            return bad("J must be at least 1");
        }
        Ok(ArcParams {
            d1,
            d2,
            p1,
            p2,
            j_level,
        })
    }

    /// The boxes attached to a piece of the splitting, at level `j_level`.
    pub fn for_piece(g: &BidegreeForm, j_level: u32) -> Result<ArcParams> {
        let (p1, p2) = g.box_exponents();
        ArcParams::new(g.d1(), g.d2(), p1, p2, j_level)
    }

    pub fn with_level(&self, j_level: u32) -> Result<ArcParams> {
        ArcParams::new(self.d1, self.d2, self.p1, self.p2, j_level)
    }

    pub fn d(&self) -> u32 {
        self.d1 + self.d2
    }

    pub fn q1(&self) -> i64 {
        self.j_level as i64 - self.p1 as i64
    }

    pub fn q2(&self) -> i64 {
        self.j_level as i64 - self.p2 as i64
    }

    /// `d1 P1 + d2 P2`.
    pub fn weight(&self) -> u32 {
        self.d1 * self.p1 + self.d2 * self.p2
    }

    /// Number of digits of `alpha` that determine `E(alpha)`, the counts
    /// and arc membership: `d1 P1 + d2 P2 - d + 1`.
    pub fn precision(&self) -> usize {
        (self.weight() - self.d() + 1) as usize
    }

    /// `log_q` of the arc radius times `|g|`: `-d1 P1 - d2 P2 + (d-1) J`.
    pub fn arc_radius_exponent(&self) -> i64 {
        -(self.weight() as i64) + (self.d() as i64 - 1) * self.j_level as i64
    }

    /// Largest admissible denominator degree, `(d-1)(J-1)`.
    pub fn denominator_degree(&self) -> u32 {
        (self.d() - 1) * (self.j_level - 1)
    }

    /// Smallest `J` with `2(d-1) J >= d1 P1 + d2 P2 + d - 1`.
    pub fn dirichlet_level(&self) -> u32 {
        let num = self.weight() + self.d() - 1;
        let den = 2 * (self.d() - 1);
        num.div_ceil(den).max(1)
    }

    fn check_form(&self, g: &BidegreeForm) -> Result<()> {
        if g.d1() != self.d1 || g.d2() != self.d2 {
            return Err(Error::ContractViolated(format!(
                "parameters have bidegree ({}, {}), form has ({}, {})",
                self.d1,
                self.d2,
                g.d1(),
                g.d2()
            )));
        }
        Ok(())
    }
}

/// The vector of `n` polynomials of degree `< bound` with the given index.
pub(crate) fn box_vector(field: &Field, n: usize, bound: u32, mut idx: u64) -> Vec<Poly> {
    let size = (field.q() as u64).pow(bound);
    (0..n)
        .map(|_| {
            let p = Poly::from_index(field, bound as usize, idx % size);
            idx /= size;
            p
        })
        .collect()
}

fn tuple_size(q: u32, n: usize, bounds: &[u32]) -> BigUint {
    big_pow(q, n as u64 * bounds.iter().map(|&b| b as u64).sum::<u64>())
}

fn box_tuple(field: &Field, n: usize, bounds: &[u32], mut idx: u64) -> Vec<Vec<Poly>> {
    bounds
        .iter()
        .map(|&b| {
            let size = (field.q() as u64).pow(b * n as u32);
            let v = box_vector(field, n, b, idx % size);
            idx /= size;
            v
        })
        .collect()
}

/// Precomputed data for `E(alpha) = sum psi(alpha Gamma_G(x; y))` over the
/// boxes of `params`: the linear forms in the last `y` slot, one per choice of
/// the other slots, merged when equal.
#[derive(Clone, Debug)]
pub struct BihomSum {
    field: Field,
    n: usize,
    params: ArcParams,
    width: usize,
    forms: Vec<(Vec<FqElem>, u64)>,
}

impl BihomSum {
    pub fn new(g: &BidegreeForm, params: &ArcParams, budget: &Budget) -> Result<BihomSum> {
        params.check_form(g)?;
        let field = g.tensor().field().clone();
        let n = g.n();
        budget.check_box("bihomogeneous box", &big_pow(field.q(), params.weight() as u64 * n as u64))?;
        let mut bounds = vec![params.p1; params.d1 as usize];
        bounds.extend(std::iter::repeat(params.p2).take(params.d2 as usize - 1));
        let count = tuple_size(field.q(), n, &bounds)
            .to_u64()
            .ok_or_else(|| Error::OutOfRange("box too large".into()))?;
        let width = params.precision() - params.p2 as usize + 1;
        let rows: Result<Vec<Vec<FqElem>>> = (0..count)
            .into_par_iter()
            .map(|idx| {
                let tuple = box_tuple(&field, n, &bounds, idx);
                let refs: Vec<&[Poly]> = tuple.iter().map(|v| v.as_slice()).collect();
                let mut flat = Vec::with_capacity(n * width);
                for l in g.last_slot_forms(&refs)? {
                    if l.coeffs().len() > width {
                        return Err(Error::ContractViolated("linear form exceeds its degree bound".into()));
                    }
                    flat.extend((0..width).map(|k| l.coeff(k)));
                }
                Ok(flat)
            })
            .collect();
        let mut merged: BTreeMap<Vec<FqElem>, u64> = BTreeMap::new();
        for r in rows? {
            *merged.entry(r).or_default() += 1;
        }
        Ok(BihomSum {
            field,
            n,
            params: *params,
            width,
            forms: merged.into_iter().collect(),
        })
    }

    pub fn params(&self) -> &ArcParams {
        &self.params
    }

    /// `E(0) = q^{(d1 P1 + d2 P2) n}`.
    pub fn e_zero(&self) -> BigUint {
        big_pow(self.field.q(), self.params.weight() as u64 * self.n as u64)
    }

    /// `E(alpha)` as an exact cyclotomic integer. The sum over the last `y`
    /// runs through a histogram of the phase values, one coordinate at a time.
    pub fn eval(&self, alpha: &LaurentNum) -> Result<CycloSum> {
        let digits = alpha.fraction_digits(self.params.precision())?;
        Ok(self.eval_digits(&digits))
    }

    pub(crate) fn eval_digits(&self, digits: &[FqElem]) -> CycloSum {
        let field = &self.field;
        let q = field.q() as usize;
        let p2 = self.params.p2 as usize;
        let mut counts = vec![0u128; field.p() as usize];
        for (l, mult) in &self.forms {
            let mut hist = vec![0u128; q];
            hist[0] = 1;
            for i in 0..self.n {
                let li = &l[i * self.width..(i + 1) * self.width];
                for m in 0..p2 {
                    let b = field.dot(li, &digits[m..m + self.width]);
                    let mut next = vec![0u128; q];
                    for (v, &h) in hist.iter().enumerate() {
                        if h == 0 {
                            continue;
                        }
                        for c in field.elements() {
                            let w = field.add(FqElem(v as u32), field.mul(c, b));
                            next[w.index() as usize] += h;
                        }
                    }
                    hist = next;
                }
            }
            for (v, h) in hist.into_iter().enumerate() {
                counts[field.trace(FqElem(v as u32)) as usize] += h * *mult as u128;
            }
        }
        CycloSum::from_counts_u128(&counts)
    }
}

/// `E(alpha)`, cross-checked against `q^{P2 n} N2^{(0)}`.
pub fn eval_e(g: &BidegreeForm, params: &ArcParams, alpha: &LaurentNum, budget: &Budget) -> Result<CycloSum> {
    let sum = BihomSum::new(g, params, budget)?;
    let e = sum.eval(alpha)?;
    cross_check_e(g, params, alpha, &e, budget)?;
    Ok(e)
}

/// Errors unless `e` is the rational integer `q^{P2 n} N2^{(0)}`; returns it.
pub fn cross_check_e(
    g: &BidegreeForm,
    params: &ArcParams,
    alpha: &LaurentNum,
    e: &CycloSum,
    budget: &Budget,
) -> Result<BigUint> {
    let n2 = n_counts(g, params, alpha, 0, NCountKind::N2, budget)?;
    let expected = big_pow(g.tensor().field().q(), params.p2 as u64 * g.n() as u64) * n2;
    match e.is_rational_integer() {
        Some(v) if v == BigInt::from(expected.clone()) => Ok(expected),
        other => Err(Error::CrossCheck(format!(
            "E(alpha) = {other:?} but q^(P2 n) N2 = {expected}"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NCountKind {
    N1,
    N2,
}

/// Exact `N2^{(t)}(Q2; alpha)` or `N1^{(t)}(Q; alpha)`, with `Q_i = J - P_i`.
pub fn n_counts(
    g: &BidegreeForm,
    params: &ArcParams,
    alpha: &LaurentNum,
    t: u32,
    which: NCountKind,
    budget: &Budget,
) -> Result<BigUint> {
    params.check_form(g)?;
    let (d1, d2) = (params.d1 as usize, params.d2 as usize);
    let t_us = t as usize;
    let level = params.j_level;
    let (bounds, threshold) = match which {
        NCountKind::N2 => {
            if t_us > d2 - 1 {
                return Err(Error::OutOfRange(format!("N2 needs t <= d2 - 1 = {}", d2 - 1)));
            }
            let mut b = vec![params.p1; d1];
            b.extend((0..d2 - 1).map(|k| if k < t_us { level } else { params.p2 }));
            (b, t as i64 * params.q2() - params.p2 as i64)
        }
        NCountKind::N1 => {
            if t_us > d1 {
                return Err(Error::OutOfRange(format!("N1 needs t <= d1 = {d1}")));
            }
            let mut b: Vec<u32> = (0..d1).map(|k| if k < t_us { level } else { params.p1 }).collect();
            b.extend(std::iter::repeat(level).take(d2 - 1));
            let s = t as i64 * params.q1() + (d2 as i64 - 1) * params.q2() - params.p2 as i64;
            (b, s)
        }
    };
    let field = g.tensor().field().clone();
    let n = g.n();
    let size = tuple_size(field.q(), n, &bounds);
    budget.check_box("N count box", &size)?;
    let size = size.to_u64().ok_or_else(|| Error::OutOfRange("box too large".into()))?;
    let frac = alpha.fractional_part();
    let e_vectors: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { Poly::one() } else { Poly::zero() }).collect())
        .collect();
    let hits: Result<u64> = (0..size)
        .into_par_iter()
        .map(|idx| {
            let tuple = box_tuple(&field, n, &bounds, idx);
            let xs: Vec<&[Poly]> = tuple[..d1].iter().map(|v| v.as_slice()).collect();
            for e_i in &e_vectors {
                let mut ys: Vec<&[Poly]> = tuple[d1..].iter().map(|v| v.as_slice()).collect();
                ys.push(e_i);
                let l = g.gamma_g(&xs, &ys)?;
                if !frac.mul_poly(&l, &field).norm_below(threshold)? {
                    return Ok(0);
                }
            }
            Ok(1)
        })
        .sum();
    Ok(BigUint::from(hits?))
}

/// `N2^{(0)} <= q^{-d1 Q1 n - (d2-1) Q2 n} N1^{(d1)}`.
pub fn count_chain_check(g: &BidegreeForm, params: &ArcParams, alpha: &LaurentNum, budget: &Budget) -> Result<Check> {
    let n2 = n_counts(g, params, alpha, 0, NCountKind::N2, budget)?;
    let n1 = n_counts(g, params, alpha, params.d1, NCountKind::N1, budget)?;
    let n = g.n() as i64;
    let exponent = -(params.d1 as i64) * params.q1() * n - (params.d2 as i64 - 1) * params.q2() * n;
    let rhs = q_power(g.tensor().field().q(), exponent) * BigRational::from_integer(n1.into());
    let lhs = BigRational::from_integer(n2.into());
    Ok(Check::exact_le("N2 vs shrunk N1", &lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{Hypersurface, SymTensor};

    fn piece(p: u32, n: usize, d: u32, monos: &[(&[u32], i64)], e: u32, j: u32) -> BidegreeForm {
        let f = Field::prime(p).unwrap();
        let m = monos.iter().map(|(x, c)| (x.to_vec(), f.from_int(*c))).collect();
        let h = Hypersurface::new(f, n, d, m).unwrap();
        BidegreeForm::build(&SymTensor::from_form(&h).unwrap(), e, j).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ArcParams::new(1, 1, 1, 2, 1).is_ok());
        assert!(ArcParams::new(1, 1, 2, 1, 1).is_err());
        assert!(ArcParams::new(0, 2, 1, 2, 1).is_err());
        assert!(ArcParams::new(1, 0, 1, 1, 1).is_err());
        assert!(ArcParams::new(1, 1, 1, 1, 0).is_err());
        let a = ArcParams::new(1, 1, 1, 2, 1).unwrap();
        assert_eq!((a.precision(), a.arc_radius_exponent(), a.denominator_degree()), (2, -2, 0));
        assert_eq!(a.dirichlet_level(), 2);
    }

    #[test]
    fn e_at_zero_is_box() {
        let g = piece(3, 2, 2, &[(&[2, 0], 1), (&[0, 2], 1)], 1, 1);
        let params = ArcParams::for_piece(&g, 1).unwrap();
        let e = eval_e(&g, &params, &LaurentNum::zero(), &Budget::default()).unwrap();
        assert_eq!(e.is_rational_integer(), Some(BigInt::from(729)));
    }

    #[test]
    fn e_of_xy_by_hand() {
        // f = x^2 and C0 = 2, so Gamma_G(x; y) = 2xy; P1 = P2 = 1
        let g = piece(3, 1, 2, &[(&[2], 1)], 1, 1);
        assert_eq!(g.c0(), FqElem(2));
        let f = Field::prime(3).unwrap();
        let params = ArcParams::new(1, 1, 1, 1, 1).unwrap();
        // precision is a single digit here, so alpha = u^{-2} acts as zero
        let alpha = LaurentNum::monomial(FqElem::ONE, -2);
        let e = eval_e(&g, &params, &alpha, &Budget::default()).unwrap();
        assert_eq!(e.is_rational_integer(), Some(BigInt::from(9)));
        let alpha = LaurentNum::monomial(FqElem::ONE, -1);
        let e = eval_e(&g, &params, &alpha, &Budget::default()).unwrap();
        let mut hand = CycloSum::zero(3);
        for x in f.elements() {
            for y in f.elements() {
                hand.add_root(crate::characters::CharExponent(f.trace(f.mul(f.from_int(2), f.mul(x, y)))));
            }
        }
        assert_eq!(e, hand);
        assert_eq!(e.is_rational_integer(), Some(BigInt::from(3)));
    }

    #[test]
    fn n2_is_independent_of_level() {
        let g = piece(5, 1, 3, &[(&[3], 1)], 1, 2);
        assert_eq!((g.d1(), g.d2()), (1, 2));
        let f = Field::prime(5).unwrap();
        let alpha = LaurentNum::from_fraction_digits(&[f.from_int(2), f.from_int(1), FqElem::ZERO, f.from_int(3)]);
        let b = Budget::default();
        let a1 = ArcParams::new(1, 2, 2, 2, 1).unwrap();
        let a2 = a1.with_level(2).unwrap();
        let v1 = n_counts(&g, &a1, &alpha, 0, NCountKind::N2, &b).unwrap();
        let v2 = n_counts(&g, &a2, &alpha, 0, NCountKind::N2, &b).unwrap();
        assert_eq!(v1, v2);
        assert!(count_chain_check(&g, &a1, &alpha, &b).unwrap().pass);
        let e = eval_e(&g, &a1, &alpha, &b).unwrap();
        assert!(e.is_rational_integer().unwrap() > BigInt::from(0));
    }

    #[test]
    fn counts_at_zero_fill_the_box() {
        let g = piece(5, 1, 3, &[(&[3], 1)], 1, 2);
        let a = ArcParams::new(1, 2, 2, 2, 1).unwrap();
        let b = Budget::default();
        let z = LaurentNum::zero();
        assert_eq!(n_counts(&g, &a, &z, 0, NCountKind::N2, &b).unwrap(), BigUint::from(625u32));
        // x in |x| < q^J = q, y' in |y| < q
        assert_eq!(n_counts(&g, &a, &z, 1, NCountKind::N1, &b).unwrap(), BigUint::from(25u32));
        assert!(n_counts(&g, &a, &z, 2, NCountKind::N1, &b).is_err());
    }
}

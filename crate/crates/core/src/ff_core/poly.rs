use std::cmp::Ordering;
use std::fmt;

use super::field::{Field, FqElem};
use crate::error::{Error, Result};

/// A degree or valuation exponent, with a distinct bottom element for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        matches!(self, Degree::NegInfinity)
    }

    /// `self < n`, with `-inf < n` for every integer.
    pub fn lt(self, n: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => d < n,
        }
    }

    pub fn le(self, n: i64) -> bool {
        self.lt(n.saturating_add(1))
    }

    /// Degree of a product.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense polynomial in `u` over `F_q`, coefficients low degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FqElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Poly {
        Poly::constant(FqElem::ONE)
    }

    /// `c * u^k`.
    pub fn monomial(c: FqElem, k: usize) -> Poly {
        let mut v = vec![FqElem::ZERO; k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from integers, reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Coefficient of `u^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n as i64 - 1),
        }
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    pub fn add(&self, other: &Poly, field: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(v)
    }

    pub fn neg(&self, field: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, field: &Field) -> Poly {
        self.add(&other.neg(field), field)
    }

    pub fn scale(&self, c: FqElem, field: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&x| field.mul(x, c)).collect())
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![FqElem::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    pub fn mul(&self, other: &Poly, field: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32, field: &Field) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, field))
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, x: FqElem, field: &Field) -> FqElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divrem(&self, b: &Poly, field: &Field) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        let lead_inv = field.inv(b.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![FqElem::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = r[top];
            if c.is_zero() {
                continue;
            }
            let f = field.mul(c, lead_inv);
            let shift = top - db;
            q[shift] = f;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                r[shift + i] = field.sub(r[shift + i], field.mul(f, bc));
            }
        }
        r.truncate(db);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, b: &Poly, field: &Field) -> Result<Poly> {
        Ok(self.divrem(b, field)?.1)
    }

    pub fn make_monic(&self, field: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv, field)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, field: &Field) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, field).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(field)
    }

    /// All polynomials of degree `< bound` (so `q^bound` of them), in index order.
    pub fn all_below(field: &Field, bound: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let total = q.pow(bound as u32);
        (0..total).map(move |idx| Poly::from_index(field, bound, idx))
    }

    /// The polynomial whose base-`q` digits (low first) are the coefficient indices of `idx`.
    pub fn from_index(field: &Field, bound: usize, mut idx: u64) -> Poly {
        let q = field.q() as u64;
        let mut v = Vec::with_capacity(bound);
        for _ in 0..bound {
            v.push(FqElem((idx % q) as u32));
            idx /= q;
        }
        Poly::from_coeffs(v)
    }

    /// Monic polynomials of exact degree `deg`.
    pub fn monic_of_degree(field: &Field, deg: usize) -> impl Iterator<Item = Poly> + '_ {
        Poly::all_below(field, deg).map(move |low| low.add(&Poly::monomial(FqElem::ONE, deg), field))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_sentinel_orders_below_integers() {
        assert!(Degree::NegInfinity < Degree::Finite(i64::MIN));
        assert!(Degree::NegInfinity.lt(-1_000_000));
        assert_eq!(Poly::zero().deg(), Degree::NegInfinity);
        assert_eq!(Degree::NegInfinity.plus(Degree::Finite(3)), Degree::NegInfinity);
    }

    #[test]
    fn product_over_f3() {
        let f = Field::prime(3).unwrap();
        let a = Poly::from_ints(&f, &[1, 1]);
        let b = Poly::from_ints(&f, &[2, 1]);
        assert_eq!(a.mul(&b, &f), Poly::from_ints(&f, &[2, 0, 1]));
    }

    #[test]
    fn gcd_over_f5() {
        let f = Field::prime(5).unwrap();
        let a = Poly::from_ints(&f, &[-1, 0, 1]);
        let b = Poly::from_ints(&f, &[-1, 1]);
        let g = a.gcd(&b, &f);
        assert_eq!(g, Poly::from_ints(&f, &[-1, 1]));
        assert!(g.is_monic());
    }

    #[test]
    fn divrem_contract() {
        let f = Field::prime(7).unwrap();
        let a = Poly::from_ints(&f, &[3, 0, 5, 1, 6]);
        let b = Poly::from_ints(&f, &[1, 2, 3]);
        let (q, r) = a.divrem(&b, &f).unwrap();
        assert!(r.deg() < b.deg());
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert_eq!(a.divrem(&Poly::zero(), &f), Err(Error::DivisionByZero));
    }

    #[test]
    fn eval_and_enumeration() {
        let f = Field::prime(3).unwrap();
        let p = Poly::from_ints(&f, &[1, 0, 1]);
        assert_eq!(p.eval(f.from_int(1), &f), f.from_int(2));
        assert_eq!(Poly::all_below(&f, 2).count(), 9);
        assert!(Poly::monic_of_degree(&f, 2).all(|g| g.is_monic() && g.deg() == Degree::Finite(2)));
    }
}

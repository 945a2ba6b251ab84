//! A minimal ring interface over `F_q` so that multilinear evaluation and
//! finite differencing can run on field elements, polynomials or Laurent
//! series alike.

use super::field::{Field, FqElem};
use super::laurent::LaurentNum;
use super::poly::Poly;

pub trait FqAlgebra: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn from_scalar(c: FqElem) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self, field: &Field) -> Self;
    fn neg(&self, field: &Field) -> Self;
    fn mul(&self, other: &Self, field: &Field) -> Self;
    fn scale(&self, c: FqElem, field: &Field) -> Self;

    fn sub(&self, other: &Self, field: &Field) -> Self {
        self.add(&other.neg(field), field)
    }
}

impl FqAlgebra for FqElem {
    fn zero() -> Self {
        FqElem::ZERO
    }
    fn from_scalar(c: FqElem) -> Self {
        c
    }
    fn is_zero(&self) -> bool {
        FqElem::is_zero(*self)
    }
    fn add(&self, other: &Self, field: &Field) -> Self {
        field.add(*self, *other)
    }
    fn neg(&self, field: &Field) -> Self {
        field.neg(*self)
    }
    fn mul(&self, other: &Self, field: &Field) -> Self {
        field.mul(*self, *other)
    }
    fn scale(&self, c: FqElem, field: &Field) -> Self {
        field.mul(*self, c)
    }
}

impl FqAlgebra for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn from_scalar(c: FqElem) -> Self {
        Poly::constant(c)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self, field: &Field) -> Self {
        Poly::add(self, other, field)
    }
    fn neg(&self, field: &Field) -> Self {
        Poly::neg(self, field)
    }
    fn mul(&self, other: &Self, field: &Field) -> Self {
        Poly::mul(self, other, field)
    }
    fn scale(&self, c: FqElem, field: &Field) -> Self {
        Poly::scale(self, c, field)
    }
}

impl FqAlgebra for LaurentNum {
    fn zero() -> Self {
        LaurentNum::zero()
    }
    fn from_scalar(c: FqElem) -> Self {
        LaurentNum::monomial(c, 0)
    }
    fn is_zero(&self) -> bool {
        self.is_exact() && self.is_zero_to_precision()
    }
    fn add(&self, other: &Self, field: &Field) -> Self {
        LaurentNum::add(self, other, field)
    }
    fn neg(&self, field: &Field) -> Self {
        LaurentNum::neg(self, field)
    }
    fn mul(&self, other: &Self, field: &Field) -> Self {
        LaurentNum::mul(self, other, field)
    }
    fn scale(&self, c: FqElem, field: &Field) -> Self {
        LaurentNum::scale(self, c, field)
    }
}

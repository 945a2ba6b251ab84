use std::fmt;

use super::field::{Field, FqElem};
use super::poly::{Degree, Poly};
use crate::error::{precision, Error, Result};

/// A truncated element of `F_q((1/u))`.
///
/// Coefficients are known exactly for every exponent `>= floor`; below the
/// floor nothing is known and queries fail. `floor = None` marks an exact
/// element (finitely many terms, nothing truncated).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentNum {
    /// Exponent of `coeffs[0]`.
    base: i64,
    /// Coefficients of `u^base, u^{base+1}, ...`; no trailing zeros.
    coeffs: Vec<FqElem>,
    floor: Option<i64>,
}

impl fmt::Debug for LaurentNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}u^{}", c, self.base + i as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        match self.floor {
            Some(fl) => write!(f, " + O(u^{})", fl - 1),
            None => Ok(()),
        }
    }
}

impl LaurentNum {
    fn normalize(mut base: i64, mut coeffs: Vec<FqElem>, floor: Option<i64>) -> LaurentNum {
        if let Some(fl) = floor {
            // drop anything below the floor, then pad down to it
            if base < fl {
                let cut = ((fl - base) as usize).min(coeffs.len());
                coeffs.drain(..cut);
                base = fl;
            }
            if base > fl {
                let pad = (base - fl) as usize;
                let mut v = vec![FqElem::ZERO; pad];
                v.extend(coeffs);
                coeffs = v;
                base = fl;
            }
        } else {
            let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
            coeffs.drain(..lead_zeros);
            base += lead_zeros as i64;
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            base = floor.unwrap_or(0);
        }
        LaurentNum {
            base,
            coeffs,
            floor,
        }
    }

    pub fn zero() -> LaurentNum {
        LaurentNum::normalize(0, Vec::new(), None)
    }

    /// Zero known only down to `floor`.
    pub fn zero_to(floor: i64) -> LaurentNum {
        LaurentNum::normalize(floor, Vec::new(), Some(floor))
    }

    /// `c * u^k`, exact.
    pub fn monomial(c: FqElem, k: i64) -> LaurentNum {
        LaurentNum::normalize(k, vec![c], None)
    }

    pub fn from_poly(p: &Poly) -> LaurentNum {
        LaurentNum::normalize(0, p.coeffs().to_vec(), None)
    }

    /// Coefficients for exponents `base, base+1, ...`.
    pub fn from_terms(base: i64, coeffs: Vec<FqElem>, floor: Option<i64>) -> LaurentNum {
        LaurentNum::normalize(base, coeffs, floor)
    }

    /// Element of the unit ball with `digits[i]` the coefficient of `u^{-1-i}`,
    /// known down to `u^{-digits.len()}`.
    pub fn from_fraction_digits(digits: &[FqElem]) -> LaurentNum {
        let mut v = digits.to_vec();
        v.reverse();
        let fl = -(digits.len() as i64);
        LaurentNum::normalize(fl, v, Some(fl))
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// True when every known coefficient is zero.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn floor_or_min(&self) -> i64 {
        self.floor.unwrap_or(i64::MIN)
    }

    fn top(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.base + self.coeffs.len() as i64 - 1)
        }
    }

    /// Coefficient of `u^e`.
    pub fn coeff(&self, e: i64) -> Result<FqElem> {
        if let Some(fl) = self.floor {
            if e < fl {
                return Err(precision(format!(
                    "coefficient of u^{e} requested, known only down to u^{fl}"
                )));
            }
        }
        if e < self.base {
            return Ok(FqElem::ZERO);
        }
        Ok(self
            .coeffs
            .get((e - self.base) as usize)
            .copied()
            .unwrap_or(FqElem::ZERO))
    }

    /// Exponent of the leading term; `-inf` for exact zero.
    pub fn ord(&self) -> Result<Degree> {
        match (self.top(), self.floor) {
            (Some(t), _) => Ok(Degree::Finite(t)),
            (None, None) => Ok(Degree::NegInfinity),
            (None, Some(fl)) => Err(precision(format!(
                "element vanishes down to u^{fl}; its order is unknown"
            ))),
        }
    }

    /// An upper bound for `ord`, exact whenever `ord` succeeds.
    pub fn ord_upper_bound(&self) -> Degree {
        match (self.top(), self.floor) {
            (Some(t), _) => Degree::Finite(t),
            (None, None) => Degree::NegInfinity,
            (None, Some(fl)) => Degree::Finite(fl - 1),
        }
    }

    /// `log_q |alpha|`.
    pub fn abs_exponent(&self) -> Result<Degree> {
        self.ord()
    }

    /// `|alpha| < q^t`.
    pub fn abs_below(&self, t: i64) -> Result<bool> {
        if let Some(top) = self.top() {
            return Ok(top < t);
        }
        match self.floor {
            Some(fl) if fl > t => Err(precision(format!(
                "|alpha| < q^{t} undecidable with floor {fl}"
            ))),
            _ => Ok(true),
        }
    }

    /// The part of `alpha` with exponents `<= -1`.
    pub fn fractional_part(&self) -> LaurentNum {
        if self.base >= 0 {
            return LaurentNum::normalize(0, Vec::new(), self.floor);
        }
        let keep = ((-self.base) as usize).min(self.coeffs.len());
        LaurentNum::normalize(self.base, self.coeffs[..keep].to_vec(), self.floor)
    }

    /// The polynomial part (exponents `>= 0`); needs the floor at or below 0.
    pub fn integer_part(&self) -> Result<Poly> {
        if self.floor_or_min() > 0 {
            return Err(precision("integer part needs all non-negative exponents"));
        }
        let top = match self.top() {
            Some(t) if t >= 0 => t,
            _ => return Ok(Poly::zero()),
        };
        let v = (0..=top).map(|e| self.coeff(e).unwrap()).collect();
        Ok(Poly::from_coeffs(v))
    }

    /// `log_q ||alpha||`, the exponent of the leading term of `{alpha}`.
    pub fn norm_exponent(&self) -> Result<Degree> {
        self.fractional_part().ord()
    }

    /// `||alpha|| < q^t`, i.e. the coefficients of `u^t..u^{-1}` all vanish.
    pub fn norm_below(&self, t: i64) -> Result<bool> {
        if t >= 0 {
            return Ok(true);
        }
        if self.floor_or_min() > t {
            return Err(precision(format!(
                "||alpha|| < q^{t} needs coefficients down to u^{t}"
            )));
        }
        for e in t..0 {
            if !self.coeff(e)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Raises the floor, discarding lower terms.
    pub fn truncate(&self, floor: i64) -> LaurentNum {
        let fl = floor.max(self.floor_or_min());
        LaurentNum::normalize(self.base, self.coeffs.clone(), Some(fl))
    }

    pub fn neg(&self, field: &Field) -> LaurentNum {
        let v = self.coeffs.iter().map(|&c| field.neg(c)).collect();
        LaurentNum::normalize(self.base, v, self.floor)
    }

    pub fn scale(&self, c: FqElem, field: &Field) -> LaurentNum {
        let v = self.coeffs.iter().map(|&x| field.mul(x, c)).collect();
        LaurentNum::normalize(self.base, v, self.floor)
    }

    pub fn add(&self, other: &LaurentNum, field: &Field) -> LaurentNum {
        let floor = match (self.floor, other.floor) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
        };
        let lo = self.base.min(other.base);
        let hi = match (self.top(), other.top()) {
            (None, None) => return LaurentNum::normalize(lo, Vec::new(), floor),
            (a, b) => a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN)),
        };
        let lo = floor.map_or(lo, |f| lo.max(f));
        if hi < lo {
            return LaurentNum::normalize(lo, Vec::new(), floor);
        }
        let get = |x: &LaurentNum, e: i64| -> FqElem {
            if e < x.base {
                FqElem::ZERO
            } else {
                x.coeffs.get((e - x.base) as usize).copied().unwrap_or(FqElem::ZERO)
            }
        };
        let v = (lo..=hi)
            .map(|e| field.add(get(self, e), get(other, e)))
            .collect();
        LaurentNum::normalize(lo, v, floor)
    }

    pub fn sub(&self, other: &LaurentNum, field: &Field) -> LaurentNum {
        self.add(&other.neg(field), field)
    }

    /// Product with the tightest floor provable from the operands' floors and orders.
    pub fn mul(&self, other: &LaurentNum, field: &Field) -> LaurentNum {
        let ua = self.ord_upper_bound();
        let ub = other.ord_upper_bound();
        if (ua.is_neg_infinity() && self.is_exact()) || (ub.is_neg_infinity() && other.is_exact()) {
            return LaurentNum::zero();
        }
        // alpha = A + a', |a'| < q^{fa}: the error terms of the product are
        // A b' + B a' + a' b', each of order below fa + ord(B) or fb + ord(A).
        let mut floor: Option<i64> = None;
        if let (Some(fa), Degree::Finite(ob)) = (self.floor, ub) {
            floor = Some(fa + ob);
        }
        if let (Some(fb), Degree::Finite(oa)) = (other.floor, ua) {
            floor = Some(floor.map_or(fb + oa, |f| f.max(fb + oa)));
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return LaurentNum::normalize(floor.unwrap_or(0), Vec::new(), floor);
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
        LaurentNum::normalize(self.base + other.base, out, floor)
    }

    pub fn mul_poly(&self, p: &Poly, field: &Field) -> LaurentNum {
        self.mul(&LaurentNum::from_poly(p), field)
    }

    /// Expands `a / g` in powers of `1/u`, exact for every exponent `>= floor`.
    pub fn poly_quotient_expand(a: &Poly, g: &Poly, floor: i64, field: &Field) -> Result<LaurentNum> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.deg().finite().unwrap();
        let top = match a.deg() {
            Degree::NegInfinity => return Ok(LaurentNum::zero_to(floor)),
            Degree::Finite(da) => da - dg,
        };
        if top < floor {
            return Ok(LaurentNum::zero_to(floor));
        }
        let lead_inv = field.inv(g.leading())?;
        // long division from the top: remainder kept as a sparse window of exponents
        let mut rem: std::collections::BTreeMap<i64, FqElem> = a
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i as i64, c))
            .collect();
        let len = (top - floor + 1) as usize;
        let mut out = vec![FqElem::ZERO; len];
        for k in (floor..=top).rev() {
            let c = rem.get(&(k + dg)).copied().unwrap_or(FqElem::ZERO);
            if c.is_zero() {
                continue;
            }
            let f = field.mul(c, lead_inv);
            out[(k - floor) as usize] = f;
            for (i, &gc) in g.coeffs().iter().enumerate() {
                if gc.is_zero() {
                    continue;
                }
                let e = k + i as i64;
                let cur = rem.get(&e).copied().unwrap_or(FqElem::ZERO);
                let nv = field.sub(cur, field.mul(f, gc));
                if nv.is_zero() {
                    rem.remove(&e);
                } else {
                    rem.insert(e, nv);
                }
            }
        }
        Ok(LaurentNum::normalize(floor, out, Some(floor)))
    }

    /// Known coefficients of the fractional part, `u^{-1}` first, down to `u^{-depth}`.
    pub fn fraction_digits(&self, depth: usize) -> Result<Vec<FqElem>> {
        (1..=depth as i64).map(|i| self.coeff(-i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn abs_of_polynomial() {
        let f = f3();
        let a = LaurentNum::from_poly(&Poly::from_ints(&f, &[1, 0, 0, 1]));
        assert_eq!(a.abs_exponent().unwrap(), Degree::Finite(3));
        assert_eq!(LaurentNum::zero().ord().unwrap(), Degree::NegInfinity);
    }

    #[test]
    fn geometric_series_expansion() {
        let f = f3();
        let a = Poly::one();
        let g = Poly::from_ints(&f, &[-1, 1]);
        let x = LaurentNum::poly_quotient_expand(&a, &g, -4, &f).unwrap();
        for e in -4..=-1 {
            assert_eq!(x.coeff(e).unwrap(), FqElem::ONE);
        }
        assert_eq!(x.coeff(0).unwrap(), FqElem::ZERO);
        assert!(x.coeff(-5).is_err());
        assert_eq!(x.norm_exponent().unwrap(), Degree::Finite(-1));
    }

    #[test]
    fn inexact_zero_has_no_order() {
        let z = LaurentNum::zero_to(-3);
        assert!(z.ord().is_err());
        assert!(z.norm_below(-3).unwrap());
        assert!(z.norm_below(-4).is_err());
    }

    #[test]
    fn multiplication_tracks_floor() {
        let f = f3();
        // (u^{-1} + O(u^{-3})) * u^2 is known down to u^{-1}
        let a = LaurentNum::from_terms(-1, vec![FqElem::ONE], Some(-2));
        let b = LaurentNum::monomial(FqElem::ONE, 2);
        let c = a.mul(&b, &f);
        assert_eq!(c.floor(), Some(0));
        assert_eq!(c.coeff(1).unwrap(), FqElem::ONE);
        assert!(c.coeff(-1).is_err());
    }

    #[test]
    fn fractional_part_idempotent() {
        let f = f3();
        let a = LaurentNum::from_terms(-3, Poly::from_ints(&f, &[1, 2, 0, 1, 1]).coeffs().to_vec(), Some(-3));
        let fr = a.fractional_part();
        assert_eq!(fr.fractional_part(), fr);
        assert!(fr.abs_below(0).unwrap());
        assert_eq!(fr.coeff(0).unwrap(), FqElem::ZERO);
        assert_eq!(fr.coeff(-1).unwrap(), FqElem::ZERO);
        assert_eq!(fr.coeff(-2).unwrap(), f.from_int(2));
    }
}

//! The additive character `psi(alpha) = e_q(a_{-1})` and exact character sums.

mod cyclo;
mod ortho;

pub use cyclo::{check_p_limit, CharExponent, CycloSum, DEFAULT_P_LIMIT};
pub use ortho::{orthogonality_check, OrthogonalityReport};

use crate::error::{precision, Result};
use crate::ff_core::{Field, FqElem, LaurentNum};

/// `x + x^p + ... + x^{p^{k-1}}`, an element of the prime subfield.
pub fn trace_map(field: &Field, x: FqElem) -> FqElem {
    field.from_int(field.trace(x) as i64)
}

/// The exponent `tr(a_{-1})` with `psi(alpha) = zeta_p^{tr(a_{-1})}`.
pub fn psi_eval(field: &Field, alpha: &LaurentNum) -> Result<CharExponent> {
    if alpha.floor().is_some_and(|f| f > -1) {
        return Err(precision("psi needs the coefficient of u^{-1}"));
    }
    Ok(CharExponent(field.trace(alpha.coeff(-1)?)))
}

/// `tr(sum a_i b_i)` as a character exponent.
pub(crate) fn psi_of_dot(field: &Field, a: &[FqElem], b: &[FqElem]) -> CharExponent {
    CharExponent(field.trace(field.dot(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_examples() {
        let f = Field::prime(3).unwrap();
        let a = LaurentNum::monomial(f.from_int(2), -1);
        assert_eq!(psi_eval(&f, &a).unwrap(), CharExponent(2));
        let b = LaurentNum::monomial(FqElem::ONE, 3);
        assert_eq!(psi_eval(&f, &b).unwrap(), CharExponent(0));
        let c = LaurentNum::monomial(FqElem::ONE, -2);
        assert_eq!(psi_eval(&f, &c).unwrap(), CharExponent(0));
        assert!(psi_eval(&f, &LaurentNum::zero_to(0)).is_err());
    }

    #[test]
    fn trace_in_prime_subfield() {
        let f = Field::extension(3, &[1, 0, 1]).unwrap();
        assert_eq!(trace_map(&f, FqElem::ONE), f.from_int(2));
        assert_eq!(trace_map(&f, FqElem::ZERO), FqElem::ZERO);
    }
}

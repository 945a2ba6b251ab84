use num_bigint::BigInt;

use super::cyclo::CycloSum;
use super::psi_of_dot;
use crate::budget::{big_pow, Budget};
use crate::error::{precision, Error, Result};
use crate::ff_core::{Degree, Field, FqElem, LaurentNum, Poly};

/// Both orthogonality laws evaluated for one `gamma`.
#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    /// `sum over |b| < q^N of psi(gamma b)`.
    pub lattice_sum: CycloSum,
    /// `q^N` if `||gamma|| < q^{-N}`, else 0.
    pub lattice_expected: BigInt,
    /// Sum of `psi(alpha gamma)` over one representative per cell of the
    /// ball `|alpha| < q^M`; cells have measure `q^cell_exponent`.
    pub grid_sum: CycloSum,
    pub cell_exponent: i64,
    /// Whether `|gamma| < q^{-M}`, in which case the integral is `q^M`
    /// (so `grid_sum = q^{M - cell_exponent}`); otherwise it is 0.
    pub integral_expected_is_full: bool,
}

/// Evaluates the finite character sum over `|b| < q^N` and the integral over
/// `|alpha| < q^M` of `psi(alpha gamma)`, discretized on cells on which the
/// integrand is constant, and checks both against their closed forms.
pub fn orthogonality_check(
    field: &Field,
    gamma: &LaurentNum,
    n: u32,
    m: i64,
    budget: &Budget,
) -> Result<OrthogonalityReport> {
    let p = field.p();
    let q = field.q();

    // lattice sum: psi(gamma b) = tr(sum_i b_i gamma_{-1-i})
    budget.check_box("lattice sum", &big_pow(q, n as u64))?;
    let digits = gamma.fraction_digits(n as usize)?;
    let mut counts = vec![0u64; p as usize];
    for b in Poly::all_below(field, n as usize) {
        let bc: Vec<FqElem> = (0..n as usize).map(|i| b.coeff(i)).collect();
        counts[psi_of_dot(field, &bc, &digits).value() as usize] += 1;
    }
    let lattice_sum = CycloSum::from_counts(&counts);
    let small = gamma.norm_below(-(n as i64))?;
    let lattice_expected = if small {
        BigInt::from(big_pow(q, n as u64))
    } else {
        BigInt::from(0)
    };

    // integral: alpha = sum_{k < M} a_k u^k; psi(alpha gamma) = tr(sum_k a_k gamma_{-1-k}),
    // and gamma_{-1-k} = 0 once -1-k > ord gamma, so only k >= cell are seen.
    let ub = gamma.ord_upper_bound();
    let cell = match ub {
        Degree::NegInfinity => m,
        Degree::Finite(o) => (-1 - o).min(m),
    };
    if let Some(fl) = gamma.floor() {
        if -m < fl && cell < m {
            return Err(precision(format!(
                "integral over |alpha| < q^{m} needs gamma down to u^{}",
                -m
            )));
        }
    }
    let width = (m - cell) as u64;
    budget.check_grid("orthogonality grid", &big_pow(q, width))?;
    // coefficient of u^{-1} in a_k u^k * gamma is gamma_{-1-k}
    let gdig: Vec<FqElem> = (cell..m)
        .map(|k| gamma.coeff(-1 - k))
        .collect::<Result<_>>()?;
    let mut gcounts = vec![0u64; p as usize];
    for a in Poly::all_below(field, width as usize) {
        let ac: Vec<FqElem> = (0..width as usize).map(|i| a.coeff(i)).collect();
        gcounts[psi_of_dot(field, &ac, &gdig).value() as usize] += 1;
    }
    let grid_sum = CycloSum::from_counts(&gcounts);
    let full = gamma.abs_below(-m)?;

    let report = OrthogonalityReport {
        lattice_sum,
        lattice_expected,
        grid_sum,
        cell_exponent: cell,
        integral_expected_is_full: full,
    };
    if report.lattice_sum != CycloSum::integer(p, report.lattice_expected.clone()) {
        return Err(Error::OrthogonalityViolated);
    }
    // integral = q^cell * grid_sum; expected q^M (so grid_sum = q^{M-cell}) or 0
    let want = if full {
        BigInt::from(big_pow(q, width))
    } else {
        BigInt::from(0)
    };
    if report.grid_sum != CycloSum::integer(p, want) {
        return Err(Error::OrthogonalityViolated);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_term_sum_vanishes() {
        let f = Field::prime(3).unwrap();
        let g = LaurentNum::monomial(FqElem::ONE, -1);
        let r = orthogonality_check(&f, &g, 1, 1, &Budget::default()).unwrap();
        assert_eq!(r.lattice_sum, CycloSum::zero(3));
    }

    #[test]
    fn zero_gamma_counts_everything() {
        let f = Field::prime(3).unwrap();
        let r = orthogonality_check(&f, &LaurentNum::zero(), 2, 2, &Budget::default()).unwrap();
        assert_eq!(r.lattice_sum.is_rational_integer(), Some(BigInt::from(9)));
        assert!(r.integral_expected_is_full);
    }
}

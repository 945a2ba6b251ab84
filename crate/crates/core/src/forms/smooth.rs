use num_bigint::BigUint;

use super::hypersurface::Hypersurface;
use crate::budget::{big_pow, Budget};
use crate::error::Result;
use crate::ff_core::{FqElem, MPoly};

/// Outcome of the bounded search for singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    /// No common zero of the gradient was found up to `m_max`.
    pub no_singular_point_found: bool,
    pub m_max: u32,
    /// Extension degree and coordinates (in that extension) of the first singular point.
    pub witness: Option<(u32, Vec<FqElem>)>,
    pub points_checked: BigUint,
}

/// Searches projective space over `F_{q^m}`, `m <= m_max`, for a common zero
/// of all partial derivatives. A clean result certifies nothing beyond the
/// searched fields.
pub fn smoothness_check(f: &Hypersurface, m_max: u32, budget: &Budget) -> Result<SmoothnessReport> {
    let n = f.n();
    let q = f.field().q();
    let total: BigUint = (1..=m_max).map(|m| big_pow(q, m as u64 * n as u64)).sum();
    budget.check_box("singular point search", &total)?;
    let gradient = f.gradient();
    let mut checked = BigUint::from(0u32);
    for m in 1..=m_max {
        let (big, emb) = f.field().extension_of_degree(m)?;
        let grad: Vec<MPoly> = gradient.iter().map(|g| g.map_coeffs(|c| emb.apply(c))).collect();
        if grad.iter().all(MPoly::is_zero) {
            return Ok(SmoothnessReport {
                no_singular_point_found: false,
                m_max,
                witness: Some((m, {
                    let mut v = vec![FqElem::ZERO; n];
                    v[0] = FqElem::ONE;
                    v
                })),
                points_checked: checked + 1u32,
            });
        }
        let bq = big.q();
        // projective points: the first nonzero coordinate is 1
        for lead in 0..n {
            let rest = n - lead - 1;
            let count = (bq as u64).pow(rest as u32);
            for idx in 0..count {
                let mut x = vec![FqElem::ZERO; n];
                x[lead] = FqElem::ONE;
                let mut k = idx;
                for c in x.iter_mut().skip(lead + 1) {
                    *c = big.from_index((k % bq as u64) as u32)?;
                    k /= bq as u64;
                }
                checked += 1u32;
                if grad.iter().all(|g| g.eval(&x, &big).is_zero()) {
                    return Ok(SmoothnessReport {
                        no_singular_point_found: false,
                        m_max,
                        witness: Some((m, x)),
                        points_checked: checked,
                    });
                }
            }
        }
    }
    Ok(SmoothnessReport {
        no_singular_point_found: true,
        m_max,
        witness: None,
        points_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::Field;

    fn diag(p: u32, n: usize, d: u32) -> Hypersurface {
        let f = Field::prime(p).unwrap();
        let monos = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = d;
                (e, FqElem::ONE)
            })
            .collect();
        Hypersurface::new(f, n, d, monos).unwrap()
    }

    #[test]
    fn diagonal_quadric_is_smooth() {
        let r = smoothness_check(&diag(3, 3, 2), 2, &Budget::default()).unwrap();
        assert!(r.no_singular_point_found);
    }

    #[test]
    fn fermat_with_p_dividing_d_is_singular() {
        let r = smoothness_check(&diag(3, 3, 3), 1, &Budget::default()).unwrap();
        assert!(!r.no_singular_point_found);
    }

    #[test]
    fn product_is_smooth() {
        let f = Field::prime(5).unwrap();
        let h = Hypersurface::new(f, 2, 2, vec![(vec![1, 1], FqElem::ONE)]).unwrap();
        assert!(smoothness_check(&h, 2, &Budget::default()).unwrap().no_singular_point_found);
    }

    #[test]
    fn reports_a_witness() {
        // the gradient of x^2 y is (2xy, x^2), zero at (0:1)
        let f = Field::prime(5).unwrap();
        let h = Hypersurface::new(f, 2, 3, vec![(vec![2, 1], FqElem::ONE)]).unwrap();
        let r = smoothness_check(&h, 1, &Budget::default()).unwrap();
        assert_eq!(r.witness.unwrap().1, vec![FqElem::ZERO, FqElem::ONE]);
    }
}

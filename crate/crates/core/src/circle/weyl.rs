use crate::error::{Error, Result};
use crate::ff_core::linalg::solve_affine;
use crate::ff_core::{Field, FqAlgebra, FqElem, MPoly};

/// `sum_{eps in {0,1}^t} (-1)^{|eps|} P(eps_1 z_1 + ... + eps_t z_t)`.
pub fn weyl_difference<A: FqAlgebra>(p: impl Fn(&[A]) -> A, points: &[Vec<A>], field: &Field) -> Result<A> {
    let Some(first) = points.first() else {
        return Err(Error::OutOfRange("differencing needs at least one point".into()));
    };
    let dim = first.len();
    if let Some(bad) = points.iter().find(|z| z.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let t = points.len();
    if t >= 64 {
        return Err(Error::OutOfRange("too many differencing points".into()));
    }
    let mut acc = A::zero();
    for mask in 0u64..(1u64 << t) {
        let mut arg = vec![A::zero(); dim];
        for (i, z) in points.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, zi) in arg.iter_mut().zip(z) {
                    *a = a.add(zi, field);
                }
            }
        }
        let v = p(&arg);
        acc = if mask.count_ones() % 2 == 0 {
            acc.add(&v, field)
        } else {
            acc.sub(&v, field)
        };
    }
    Ok(acc)
}

/// The degree-`k` homogeneous part of a black-box polynomial of degree at
/// most `deg`, evaluated at `z`, by interpolating `lambda -> P(lambda z)` at
/// `deg + 1` distinct nodes of `field`.
pub fn homogeneous_component(
    p: impl Fn(&[FqElem]) -> FqElem,
    z: &[FqElem],
    deg: u32,
    k: u32,
    field: &Field,
) -> Result<FqElem> {
    if k > deg {
        return Ok(FqElem::ZERO);
    }
    if (field.q() as u64) <= deg as u64 {
        return Err(Error::InvalidField(format!(
            "interpolating degree {deg} needs more than {} nodes",
            field.q()
        )));
    }
    let ncols = deg as usize + 1;
    let rows: Vec<Vec<FqElem>> = (0..=deg)
        .map(|i| {
            let lambda = FqElem(i);
            let mut row: Vec<FqElem> = (0..=deg).map(|e| field.pow(lambda, e as u64)).collect();
            let scaled: Vec<FqElem> = z.iter().map(|&x| field.mul(lambda, x)).collect();
            row.push(p(&scaled));
            row
        })
        .collect();
    let (sol, basis) = solve_affine(field, &rows, ncols)
        .ok_or_else(|| Error::ContractViolated("interpolation system is inconsistent".into()))?;
    debug_assert!(basis.is_empty());
    Ok(sol[k as usize])
}

/// Smallest extension of `field` with more than `deg` elements.
pub(crate) fn interpolation_field(field: &Field, deg: u32) -> Result<(Field, crate::ff_core::Embedding)> {
    let mut m = 1;
    while (field.q() as u64).pow(m) <= deg as u64 {
        m += 1;
    }
    field.extension_of_degree(m)
}

/// Checks `P_t(z, ..., z) = (-1)^t t! P^{[t]}(z)` for `t = deg P`, with the
/// top component found by interpolation rather than read off the monomials.
pub fn diagonal_identity_holds(poly: &MPoly, field: &Field, z: &[FqElem]) -> Result<bool> {
    let Some(t) = poly.total_degree() else {
        return Ok(true);
    };
    if t == 0 {
        return Ok(true);
    }
    let points = vec![z.to_vec(); t as usize];
    let lhs = weyl_difference(|x: &[FqElem]| poly.eval(x, field), &points, field)?;
    let (big, emb) = interpolation_field(field, t)?;
    let big_poly = poly.map_coeffs(|c| emb.apply(c));
    let zb: Vec<FqElem> = z.iter().map(|&x| emb.apply(x)).collect();
    let top = homogeneous_component(|x| big_poly.eval(x, &big), &zb, t, t, &big)?;
    let mut fact = big.one();
    for i in 1..=t {
        fact = big.mul(fact, big.from_int(i as i64));
    }
    let mut rhs = big.mul(fact, top);
    if t % 2 == 1 {
        rhs = big.neg(rhs);
    }
    Ok(emb.apply(lhs) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::Poly;

    #[test]
    fn square_differenced_twice() {
        let f = Field::prime(5).unwrap();
        let sq = |x: &[Poly]| x[0].mul(&x[0], &f);
        let y1 = Poly::from_ints(&f, &[1, 2]);
        let y2 = Poly::from_ints(&f, &[3, 0, 1]);
        let v = weyl_difference(sq, &[vec![y1.clone()], vec![y2.clone()]], &f).unwrap();
        assert_eq!(v, y1.mul(&y2, &f).scale(f.from_int(2), &f));
    }

    #[test]
    fn cubic_vanishes_after_four_steps() {
        let f = Field::prime(3).unwrap();
        let x = MPoly::var(0);
        let p = x.pow(3, &f).add(&x.mul(&MPoly::var(1), &f), &f);
        let pts: Vec<Vec<FqElem>> = (0..4).map(|i| vec![FqElem(i % 3), FqElem((i + 1) % 3)]).collect();
        let v = weyl_difference(|z: &[FqElem]| p.eval(z, &f), &pts, &f).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn interpolation_recovers_components() {
        let f = Field::prime(7).unwrap();
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let p = x.pow(2, &f).add(&y.scale(f.from_int(3), &f), &f).add(&MPoly::constant(f.one()), &f);
        let z = [f.from_int(2), f.from_int(5)];
        let c2 = homogeneous_component(|v| p.eval(v, &f), &z, 2, 2, &f).unwrap();
        assert_eq!(c2, f.from_int(4));
        let c1 = homogeneous_component(|v| p.eval(v, &f), &z, 2, 1, &f).unwrap();
        assert_eq!(c1, f.from_int(15));
    }

    #[test]
    fn diagonal_identity_small_field() {
        let f = Field::prime(3).unwrap();
        let x = MPoly::var(0);
        let p = x.pow(2, &f).mul(&MPoly::var(1), &f).add(&x, &f);
        assert!(diagonal_identity_holds(&p, &f, &[FqElem(1), FqElem(2)]).unwrap());
    }
}

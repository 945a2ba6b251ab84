use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::tensor::SymTensor;
use crate::error::{Error, Result};
use crate::ff_core::{FqAlgebra, FqElem};

/// The piece of `F_j` in which only the slots `t_{l-1}` and `t_l` appear:
/// `G_j(x; y) = C0 * Gamma_f(x, ..., x, y, ..., y)` with `x` in `d1` slots and `y` in `d2`.
#[derive(Clone, Debug)]
pub struct BidegreeForm {
    tensor: SymTensor,
    e: u32,
    j: u32,
    ell: u32,
    r: u32,
    c0: FqElem,
    /// Ordered slot-degree tuples in `{l-1, l}^d` summing to `j`.
    composition_count: u64,
}

/// Splits `j = (l - 1) d + r` with `1 <= r <= d`.
pub fn split_index(d: u32, j: u32) -> (u32, u32) {
    let ell = (j + d - 1) / d;
    let r = j + d - ell * d;
    (ell, r)
}

/// Whether the box exponents of the two slot groups add up as required:
/// the total `u`-degree budget of `G_j` on the box equals `j`.
pub fn exponent_identity(d: u32, j: u32) -> bool {
    let (ell, r) = split_index(d, j);
    let (d, ell, r, j) = (d as i64, ell as i64, r as i64, j as i64);
    let lhs = if r < d {
        -(d - r) * ell - r * (ell + 1) + d - 1
    } else {
        -d * (ell + 1) + d - 1
    };
    lhs == -j - 1
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut out = BigUint::from(1u32);
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Ordered tuples in `{lo, hi}^d`, entries within `[0, e]`, summing to `j`.
fn count_ordered(d: u32, e: u32, lo: i64, hi: i64, j: i64) -> u64 {
    let mut total = 0u64;
    for mask in 0u64..(1u64 << d) {
        let mut sum = 0i64;
        let mut ok = true;
        for b in 0..d {
            let s = if mask >> b & 1 == 1 { hi } else { lo };
            if s < 0 || s > e as i64 {
                ok = false;
                break;
            }
            sum += s;
        }
        if ok && sum == j {
            total += 1;
        }
    }
    total
}

impl BidegreeForm {
    pub fn build(tensor: &SymTensor, e: u32, j: u32) -> Result<BidegreeForm> {
        let d = tensor.d();
        if j > d * e {
            return Err(Error::OutOfRange(format!("j = {j} exceeds de = {}", d * e)));
        }
        let (ell, r) = split_index(d, j);
        let count = count_ordered(d, e, ell as i64 - 1, ell as i64, j as i64);
        let expected = binomial(d as u64, r as u64).to_u64().unwrap_or(u64::MAX);
        if count != expected {
            return Err(Error::ContractViolated(format!(
                "composition count {count} differs from binom({d},{r}) = {expected}"
            )));
        }
        let field = tensor.field();
        let c0 = field.from_int((count % field.p() as u64) as i64);
        if c0.is_zero() {
            return Err(Error::CharacteristicTooSmall { p: field.p(), d });
        }
        Ok(BidegreeForm {
            tensor: tensor.clone(),
            e,
            j,
            ell,
            r,
            c0,
            composition_count: count,
        })
    }

    pub fn tensor(&self) -> &SymTensor {
        &self.tensor
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn c0(&self) -> FqElem {
        self.c0
    }

    pub fn composition_count(&self) -> u64 {
        self.composition_count
    }

    pub fn d(&self) -> u32 {
        self.tensor.d()
    }

    pub fn n(&self) -> usize {
        self.tensor.n()
    }

    /// Number of `x` slots, `d - r`.
    pub fn d1(&self) -> u32 {
        self.d() - self.r
    }

    /// Number of `y` slots, `r`.
    pub fn d2(&self) -> u32 {
        self.r
    }

    /// Slot index feeding `x`, or `None` when `d1 = 0`.
    pub fn x_slot(&self) -> Option<usize> {
        (self.d1() > 0).then(|| self.ell as usize - 1)
    }

    /// Slot index feeding `y`.
    pub fn y_slot(&self) -> usize {
        self.ell as usize
    }

    /// Box exponents `(P1, P2)`: `|x| < q^{P1}`, `|y| < q^{P2}`.
    pub fn box_exponents(&self) -> (u32, u32) {
        let p2 = self.ell + 1;
        if self.d1() == 0 {
            (p2, p2)
        } else {
            (self.ell, p2)
        }
    }

    pub fn exponent_identity_holds(&self) -> bool {
        exponent_identity(self.d(), self.j)
    }

    /// `G_j(x; y)`.
    pub fn eval<A: FqAlgebra>(&self, x: &[A], y: &[A]) -> Result<A> {
        let d1 = self.d1() as usize;
        let mut slots: Vec<&[A]> = Vec::with_capacity(self.d() as usize);
        slots.extend(std::iter::repeat(x).take(d1));
        slots.extend(std::iter::repeat(y).take(self.r as usize));
        let g = self.tensor.gamma(&slots)?;
        Ok(g.scale(self.c0, self.tensor.field()))
    }

    /// The multilinear form `Gamma_G(x_1, ..., x_{d1}; y_1, ..., y_{d2})`
    /// whose diagonal is `G_j`.
    pub fn gamma_g<A: FqAlgebra>(&self, xs: &[&[A]], ys: &[&[A]]) -> Result<A> {
        if xs.len() != self.d1() as usize || ys.len() != self.d2() as usize {
            return Err(Error::DimensionMismatch {
                expected: self.d() as usize,
                found: xs.len() + ys.len(),
            });
        }
        let slots: Vec<&[A]> = xs.iter().chain(ys.iter()).copied().collect();
        let g = self.tensor.gamma(&slots)?;
        Ok(g.scale(self.c0, self.tensor.field()))
    }

    /// `(Gamma_G(slots..., e_i))_i`: every slot but the last `y` filled in.
    pub fn last_slot_forms<A: FqAlgebra>(&self, slots: &[&[A]]) -> Result<Vec<A>> {
        let d = self.d() as usize;
        let n = self.n();
        if slots.len() + 1 != d {
            return Err(Error::DimensionMismatch {
                expected: d - 1,
                found: slots.len(),
            });
        }
        if let Some(bad) = slots.iter().find(|s| s.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let field = self.tensor.field();
        let mut out = vec![A::zero(); n];
        'terms: for (idx, c) in self.tensor.ordered_entries() {
            let mut t = A::from_scalar(*c);
            for (l, &i) in idx[..d - 1].iter().enumerate() {
                let x = &slots[l][i];
                if x.is_zero() {
                    continue 'terms;
                }
                t = t.mul(x, field);
            }
            let last = idx[d - 1];
            out[last] = out[last].add(&t, field);
        }
        Ok(out.into_iter().map(|v| v.scale(self.c0, field)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::{Field, Poly};
    use crate::forms::{FormSystem, Hypersurface};

    fn quadric() -> (Field, Hypersurface) {
        let f = Field::prime(5).unwrap();
        let h = Hypersurface::new(
            f.clone(),
            2,
            2,
            vec![(vec![2, 0], FqElem::ONE), (vec![1, 1], f.from_int(3)), (vec![0, 2], f.from_int(2))],
        )
        .unwrap();
        (f, h)
    }

    #[test]
    fn splitting() {
        assert_eq!(split_index(2, 0), (0, 2));
        assert_eq!(split_index(2, 1), (1, 1));
        assert_eq!(split_index(2, 2), (1, 2));
        assert_eq!(split_index(3, 4), (2, 1));
        for d in 2..=4 {
            for e in 1..=3 {
                for j in 0..=d * e {
                    assert!(exponent_identity(d, j), "d={d} j={j}");
                }
            }
        }
    }

    #[test]
    fn zeroth_piece_is_f() {
        let (f, h) = quadric();
        let t = SymTensor::from_form(&h).unwrap();
        let g = BidegreeForm::build(&t, 1, 0).unwrap();
        assert_eq!((g.ell(), g.r(), g.d1()), (0, 2, 0));
        assert_eq!(g.c0(), FqElem::ONE);
        let x = [f.from_int(2), f.from_int(4)];
        assert_eq!(g.eval(&[], &x).unwrap(), h.eval_fq(&x));
    }

    #[test]
    fn middle_piece() {
        let (f, h) = quadric();
        let t = SymTensor::from_form(&h).unwrap();
        let g = BidegreeForm::build(&t, 1, 1).unwrap();
        assert_eq!((g.ell(), g.r(), g.d1(), g.d2()), (1, 1, 1, 1));
        assert_eq!(g.c0(), f.from_int(2));
        assert_eq!(g.box_exponents(), (1, 2));
        let sys = FormSystem::from_form(&h, 1).unwrap();
        let t0 = vec![Poly::from_ints(&f, &[1]), Poly::from_ints(&f, &[3])];
        let t1 = vec![Poly::from_ints(&f, &[4, 2]), Poly::from_ints(&f, &[1, 1])];
        let lhs = sys.eval_f(1, &[t0.clone(), t1.clone()]).unwrap();
        assert_eq!(lhs, g.eval(&t0, &t1).unwrap());
    }

    #[test]
    fn out_of_range() {
        let (_, h) = quadric();
        let t = SymTensor::from_form(&h).unwrap();
        assert!(BidegreeForm::build(&t, 1, 3).is_err());
    }
}

use super::hypersurface::Hypersurface;
use super::tensor::{multinomial, SymTensor};
use crate::error::{Error, Result};
use crate::ff_core::{Degree, Field, FqAlgebra, FqElem, Poly};

/// The coefficient polynomials of a degree-`e` map: `slots[s][i]` is the
/// coefficient `g_{i,s}` of `v^{e-s}` in the `i`-th coordinate, of degree at most `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCoeffs {
    slots: Vec<Vec<Poly>>,
}

impl MorphismCoeffs {
    pub fn new(n: usize, slots: Vec<Vec<Poly>>) -> Result<MorphismCoeffs> {
        if slots.is_empty() {
            return Err(Error::OutOfRange("a map needs at least one slot".into()));
        }
        for (s, slot) in slots.iter().enumerate() {
            if slot.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: slot.len(),
                });
            }
            if let Some(g) = slot.iter().find(|g| g.deg() > Degree::Finite(s as i64)) {
                return Err(Error::OutOfRange(format!(
                    "slot {s} entry of degree {} exceeds {s}",
                    g.deg()
                )));
            }
        }
        Ok(MorphismCoeffs { slots })
    }

    pub fn zero(n: usize, e: u32) -> MorphismCoeffs {
        MorphismCoeffs {
            slots: vec![vec![Poly::zero(); n]; e as usize + 1],
        }
    }

    /// The map at position `idx` of the box, coordinates ordered as in
    /// [`crate::counting::var_index`]: slot-major, then `u`-degree, then coordinate.
    pub fn from_box_index(field: &Field, n: usize, e: u32, mut idx: u128) -> MorphismCoeffs {
        let q = field.q() as u128;
        let mut slots = Vec::with_capacity(e as usize + 1);
        for s in 0..=e as usize {
            let mut coeffs = vec![vec![FqElem::ZERO; s + 1]; n];
            for m in 0..=s {
                for c in coeffs.iter_mut() {
                    c[m] = FqElem((idx % q) as u32);
                    idx /= q;
                }
            }
            slots.push(coeffs.into_iter().map(Poly::from_coeffs).collect());
        }
        MorphismCoeffs { slots }
    }

    pub fn e(&self) -> u32 {
        self.slots.len() as u32 - 1
    }

    pub fn n(&self) -> usize {
        self.slots[0].len()
    }

    pub fn slot(&self, s: usize) -> &[Poly] {
        &self.slots[s]
    }

    pub fn slots(&self) -> &[Vec<Poly>] {
        &self.slots
    }
}

/// The forms `F_0, ..., F_{de}` attached to a symmetric tensor and a degree `e`.
#[derive(Clone, Debug)]
pub struct FormSystem {
    tensor: SymTensor,
    e: u32,
    /// For each `j`, the sorted slot multisets summing to `j` with their ordering counts mod `p`.
    compositions: Vec<Vec<(Vec<usize>, FqElem)>>,
}

fn sorted_compositions(d: usize, e: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, e: usize, left: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots_left = d - cur.len();
        for s in min..=e.min(left) {
            // the remaining slots are all >= s
            if s * slots_left > left {
                break;
            }
            if e * slots_left < left {
                continue;
            }
            cur.push(s);
            rec(d, e, left - s, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, e, j, 0, &mut Vec::new(), &mut out);
    out
}

impl FormSystem {
    pub fn new(tensor: SymTensor, e: u32) -> Result<FormSystem> {
        if e == 0 {
            return Err(Error::OutOfRange("e must be at least 1".into()));
        }
        let d = tensor.d() as usize;
        let field = tensor.field().clone();
        let p = field.p() as u128;
        let compositions = (0..=d * e as usize)
            .map(|j| {
                sorted_compositions(d, e as usize, j)
                    .into_iter()
                    .map(|ms| {
                        let mut mults = vec![0u32; e as usize + 1];
                        for &s in &ms {
                            mults[s] += 1;
                        }
                        let w = field.from_int((multinomial(&mults) % p) as i64);
                        (ms, w)
                    })
                    .collect()
            })
            .collect();
        Ok(FormSystem {
            tensor,
            e,
            compositions,
        })
    }

    pub fn from_form(f: &Hypersurface, e: u32) -> Result<FormSystem> {
        FormSystem::new(SymTensor::from_form(f)?, e)
    }

    pub fn tensor(&self) -> &SymTensor {
        &self.tensor
    }

    pub fn field(&self) -> &Field {
        self.tensor.field()
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn d(&self) -> u32 {
        self.tensor.d()
    }

    pub fn n(&self) -> usize {
        self.tensor.n()
    }

    /// Number of forms, `de + 1`.
    pub fn num_forms(&self) -> usize {
        self.compositions.len()
    }

    /// Slot multisets contributing to `F_j`, with their weights.
    pub fn compositions(&self, j: usize) -> &[(Vec<usize>, FqElem)] {
        &self.compositions[j]
    }

    /// `F_j` at slot values `t[s]` (each a vector of length `n`).
    pub fn eval_f<A: FqAlgebra>(&self, j: usize, t: &[Vec<A>]) -> Result<A> {
        if j >= self.compositions.len() {
            return Err(Error::OutOfRange(format!("form index {j}")));
        }
        if t.len() != self.e as usize + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.e as usize + 1,
                found: t.len(),
            });
        }
        let field = self.field();
        let mut acc = A::zero();
        for (ms, w) in &self.compositions[j] {
            let slots: Vec<&[A]> = ms.iter().map(|&s| t[s].as_slice()).collect();
            let g = self.tensor.gamma(&slots)?;
            acc = acc.add(&g.scale(*w, field), field);
        }
        Ok(acc)
    }

    /// The part of `F_j` coming from compositions whose slots all lie in `allowed`.
    pub fn eval_f_restricted<A: FqAlgebra>(&self, j: usize, t: &[Vec<A>], allowed: &[usize]) -> Result<A> {
        if j >= self.compositions.len() {
            return Err(Error::OutOfRange(format!("form index {j}")));
        }
        let field = self.field();
        let mut acc = A::zero();
        for (ms, w) in &self.compositions[j] {
            if !ms.iter().all(|s| allowed.contains(s)) {
                continue;
            }
            let slots: Vec<&[A]> = ms.iter().map(|&s| t[s].as_slice()).collect();
            acc = acc.add(&self.tensor.gamma(&slots)?.scale(*w, field), field);
        }
        Ok(acc)
    }

    /// All of `F_0, ..., F_{de}` at a map.
    pub fn eval_all(&self, g: &MorphismCoeffs) -> Result<Vec<Poly>> {
        let t: Vec<Vec<Poly>> = g.slots().to_vec();
        (0..self.num_forms()).map(|j| self.eval_f(j, &t)).collect()
    }

    /// Whether every `F_j` vanishes, stopping at the first that does not.
    pub fn all_vanish(&self, g: &MorphismCoeffs) -> Result<bool> {
        let t: Vec<Vec<Poly>> = g.slots().to_vec();
        for j in 0..self.num_forms() {
            if !self.eval_f(j, &t)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `f(g)` as a polynomial in `v` with coefficients in `F_q[u]`, computed
/// directly from the monomials of `f` with `g_i = sum_s g_{i,s} v^{e-s}`.
/// Entry `k` is the coefficient of `v^k`.
pub fn expand_in_v(f: &Hypersurface, g: &MorphismCoeffs) -> Result<Vec<Poly>> {
    if g.n() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    let field = f.field();
    let e = g.e() as usize;
    let d = f.d() as usize;
    let coord = |i: usize| -> Vec<Poly> {
        let mut v = vec![Poly::zero(); e + 1];
        for s in 0..=e {
            v[e - s] = g.slot(s)[i].clone();
        }
        v
    };
    let mul = |a: &[Poly], b: &[Poly]| -> Vec<Poly> {
        let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y, field), field);
            }
        }
        out
    };
    let mut total = vec![Poly::zero(); d * e + 1];
    for (exps, &c) in f.monomials() {
        let mut term = vec![Poly::constant(c)];
        for (i, &k) in exps.iter().enumerate() {
            let gi = coord(i);
            for _ in 0..k {
                term = mul(&term, &gi);
            }
        }
        for (k, t) in term.into_iter().enumerate() {
            total[k] = total[k].add(&t, field);
        }
    }
    Ok(total)
}

/// Compares the `v`-expansion of `f(g)` with supplied values of `F_0..F_{de}`.
pub fn decomposition_matches(f: &Hypersurface, g: &MorphismCoeffs, forms: &[Poly]) -> Result<bool> {
    let expanded = expand_in_v(f, g)?;
    let de = expanded.len() - 1;
    if forms.len() != de + 1 {
        return Ok(false);
    }
    Ok((0..=de).all(|j| expanded[de - j] == forms[j]))
}

/// Checks `f(g) = sum_j v^{de-j} F_j(g)` exactly.
pub fn decomposition_check(f: &Hypersurface, g: &MorphismCoeffs) -> Result<bool> {
    let system = FormSystem::from_form(f, g.e())?;
    let forms = system.eval_all(g)?;
    decomposition_matches(f, g, &forms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_lists() {
        assert_eq!(sorted_compositions(2, 1, 1), vec![vec![0, 1]]);
        assert_eq!(sorted_compositions(3, 2, 3), vec![vec![0, 1, 2], vec![1, 1, 1]]);
        assert_eq!(sorted_compositions(2, 1, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn middle_form_is_twice_gamma() {
        let f = Field::prime(5).unwrap();
        let h = Hypersurface::new(f.clone(), 2, 2, vec![(vec![1, 1], FqElem::ONE), (vec![2, 0], f.from_int(2))]).unwrap();
        let sys = FormSystem::from_form(&h, 1).unwrap();
        let comps = sys.compositions(1);
        assert_eq!(comps, &[(vec![0, 1], f.from_int(2))]);
        let g = MorphismCoeffs::new(
            2,
            vec![
                vec![Poly::from_ints(&f, &[1]), Poly::from_ints(&f, &[3])],
                vec![Poly::from_ints(&f, &[2, 1]), Poly::from_ints(&f, &[0, 4])],
            ],
        )
        .unwrap();
        let fs = sys.eval_all(&g).unwrap();
        let gam = sys
            .tensor()
            .gamma(&[g.slot(0), g.slot(1)])
            .unwrap();
        assert_eq!(fs[1], gam.scale(f.from_int(2), &f));
        assert_eq!(fs[0], Poly::constant(h.eval_fq(&[f.from_int(1), f.from_int(3)])));
        assert!(decomposition_check(&h, &g).unwrap());
    }

    #[test]
    fn degree_bounds_enforced() {
        let f = Field::prime(3).unwrap();
        let bad = MorphismCoeffs::new(1, vec![vec![Poly::from_ints(&f, &[0, 1])], vec![Poly::zero()]]);
        assert!(bad.is_err());
    }
}

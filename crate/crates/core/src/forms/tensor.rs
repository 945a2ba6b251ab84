use std::collections::BTreeMap;

use super::hypersurface::Hypersurface;
use crate::error::{Error, Result};
use crate::ff_core::{Field, FqAlgebra, FqElem};

/// Number of distinct orderings of a multiset given by its multiplicities.
pub fn multinomial(mults: &[u32]) -> u128 {
    let mut out: u128 = 1;
    let mut total: u128 = 0;
    for &m in mults {
        for i in 1..=m as u128 {
            total += 1;
            out = out * total / i;
        }
    }
    out
}

/// The symmetric coefficient array `c_{i_1...i_d}` with
/// `f(x) = sum over all index tuples of c x_{i_1}...x_{i_d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    field: Field,
    n: usize,
    d: u32,
    /// Sorted index tuples (0-based) to their common value.
    entries: BTreeMap<Vec<usize>, FqElem>,
    /// Every ordered index tuple with a nonzero entry.
    ordered: Vec<(Vec<usize>, FqElem)>,
}

fn permutations_of_multiset(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = sorted.to_vec();
    // lexicographic next-permutation over a sorted start enumerates each arrangement once
    loop {
        out.push(cur.clone());
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

impl SymTensor {
    /// Symmetrizes `f`: a monomial's coefficient is spread evenly over the
    /// orderings of its index multiset, which needs `p > d`.
    pub fn from_form(f: &Hypersurface) -> Result<SymTensor> {
        let field = f.field().clone();
        if field.p() <= f.d() {
            return Err(Error::CharacteristicTooSmall {
                p: field.p(),
                d: f.d(),
            });
        }
        let mut entries = BTreeMap::new();
        for (exps, &c) in f.monomials() {
            let mut idx = Vec::with_capacity(f.d() as usize);
            for (i, &k) in exps.iter().enumerate() {
                idx.extend(std::iter::repeat(i).take(k as usize));
            }
            let count = multinomial(exps);
            let count = field.from_int((count % field.p() as u128) as i64);
            entries.insert(idx, field.div(c, count)?);
        }
        Ok(SymTensor::from_entries(field, f.n(), f.d(), entries))
    }

    fn from_entries(field: Field, n: usize, d: u32, entries: BTreeMap<Vec<usize>, FqElem>) -> SymTensor {
        let mut ordered = Vec::new();
        for (k, &c) in &entries {
            for perm in permutations_of_multiset(k) {
                ordered.push((perm, c));
            }
        }
        SymTensor {
            field,
            n,
            d,
            entries,
            ordered,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Entry at an arbitrary (not necessarily sorted) 0-based index tuple.
    pub fn entry(&self, idx: &[usize]) -> FqElem {
        let mut k = idx.to_vec();
        k.sort_unstable();
        self.entries.get(&k).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, FqElem> {
        &self.entries
    }

    pub fn ordered_entries(&self) -> &[(Vec<usize>, FqElem)] {
        &self.ordered
    }

    /// Rebuilds the form from the tensor.
    pub fn to_form(&self) -> Result<Hypersurface> {
        let monos = self
            .entries
            .iter()
            .map(|(k, &c)| {
                let mut exps = vec![0u32; self.n];
                for &i in k {
                    exps[i] += 1;
                }
                let count = multinomial(&exps) % self.field.p() as u128;
                (exps, self.field.mul(c, self.field.from_int(count as i64)))
            })
            .collect();
        Hypersurface::new(self.field.clone(), self.n, self.d, monos)
    }

    /// The multilinear form `sum c_{i_1..i_d} x_{1,i_1} ... x_{d,i_d}`.
    pub fn gamma<A: FqAlgebra>(&self, slots: &[&[A]]) -> Result<A> {
        if slots.len() != self.d as usize {
            return Err(Error::DimensionMismatch {
                expected: self.d as usize,
                found: slots.len(),
            });
        }
        if let Some(bad) = slots.iter().find(|s| s.len() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: bad.len(),
            });
        }
        Ok(self.gamma_unchecked(slots))
    }

    pub(crate) fn gamma_unchecked<A: FqAlgebra>(&self, slots: &[&[A]]) -> A {
        let field = &self.field;
        let mut acc = A::zero();
        'terms: for (idx, c) in &self.ordered {
            let mut t = A::from_scalar(*c);
            for (l, &i) in idx.iter().enumerate() {
                let x = &slots[l][i];
                if x.is_zero() {
                    continue 'terms;
                }
                t = t.mul(x, field);
            }
            acc = acc.add(&t, field);
        }
        acc
    }

    /// Scalar version of [`SymTensor::gamma`] for field-element slots.
    pub fn gamma_fq(&self, slots: &[&[FqElem]]) -> FqElem {
        let field = &self.field;
        let mut acc = FqElem::ZERO;
        for (idx, c) in &self.ordered {
            let mut t = *c;
            for (l, &i) in idx.iter().enumerate() {
                t = field.mul(t, slots[l][i]);
                if t.is_zero() {
                    break;
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halves_the_cross_term() {
        let f = Field::prime(5).unwrap();
        let h = Hypersurface::new(f.clone(), 2, 2, vec![(vec![1, 1], FqElem::ONE)]).unwrap();
        let t = SymTensor::from_form(&h).unwrap();
        assert_eq!(t.entry(&[0, 1]), f.from_int(3));
        assert_eq!(t.entry(&[1, 0]), f.from_int(3));
        let x = [FqElem::ONE, FqElem::ZERO];
        let y = [FqElem::ZERO, FqElem::ONE];
        assert_eq!(t.gamma_fq(&[&x, &y]), f.from_int(3));
        assert_eq!(t.to_form().unwrap(), h);
    }

    #[test]
    fn pure_power() {
        let f = Field::prime(7).unwrap();
        let h = Hypersurface::new(f.clone(), 2, 4, vec![(vec![4, 0], FqElem::ONE)]).unwrap();
        let t = SymTensor::from_form(&h).unwrap();
        assert_eq!(t.entry(&[0, 0, 0, 0]), FqElem::ONE);
    }

    #[test]
    fn small_characteristic_rejected() {
        let f = Field::prime(3).unwrap();
        let h = Hypersurface::new(f, 2, 3, vec![(vec![3, 0], FqElem::ONE)]).unwrap();
        assert_eq!(
            SymTensor::from_form(&h),
            Err(Error::CharacteristicTooSmall { p: 3, d: 3 })
        );
    }

    #[test]
    fn multiset_permutations() {
        assert_eq!(permutations_of_multiset(&[0, 0, 1]).len(), 3);
        assert_eq!(permutations_of_multiset(&[0, 1, 2]).len(), 6);
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(multinomial(&[1, 1, 1, 1]), 24);
    }
}

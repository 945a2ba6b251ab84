use std::collections::BTreeMap;

use super::algebra::FqAlgebra;
use super::field::{Field, FqElem};

/// Exponent vector with trailing zeros removed, so that the number of
/// variables never has to be fixed up front.
pub type Exps = Vec<u16>;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[u16], b: &[u16]) -> Exps {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

/// Sparse multivariate polynomial over `F_q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Exps, FqElem>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn constant(c: FqElem) -> MPoly {
        MPoly::term(c, Vec::new())
    }

    pub fn var(i: usize) -> MPoly {
        let mut e = vec![0u16; i + 1];
        e[i] = 1;
        MPoly::term(FqElem::ONE, e)
    }

    pub fn term(c: FqElem, exps: Exps) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exps), c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &FqElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u16]) -> FqElem {
        self.terms
            .get(&trim(exps.to_vec()))
            .copied()
            .unwrap_or(FqElem::ZERO)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// Largest variable index that occurs.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter(|e| !e.is_empty()).map(|e| e.len() - 1).max()
    }

    fn insert_add(&mut self, e: Exps, c: FqElem, field: &Field) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = field.add(*v, c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly, field: &Field) -> MPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.insert_add(e.clone(), c, field);
        }
        out
    }

    pub fn scale(&self, c: FqElem, field: &Field) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, &x)| (e.clone(), field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly, field: &Field) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                out.insert_add(add_exps(ea, eb), field.mul(ca, cb), field);
            }
        }
        out
    }

    /// Product, keeping only terms accepted by `keep`.
    pub fn mul_filtered(&self, other: &MPoly, field: &Field, keep: impl Fn(&[u16]) -> bool) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = add_exps(ea, eb);
                if keep(&e) {
                    out.insert_add(e, field.mul(ca, cb), field);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32, field: &Field) -> MPoly {
        let mut acc = MPoly::constant(FqElem::ONE);
        for _ in 0..k {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// Substitutes `values[i]` for variable `i` in any ring over `F_q`.
    pub fn eval<A: FqAlgebra>(&self, values: &[A], field: &Field) -> A {
        let mut acc = A::zero();
        for (e, &c) in &self.terms {
            let mut t = A::from_scalar(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&values[i], field);
                }
            }
            acc = acc.add(&t, field);
        }
        acc
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>() == k)
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
    }

    /// Coefficients embedded into a larger field.
    pub fn map_coeffs(&self, f: impl Fn(FqElem) -> FqElem) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl FqAlgebra for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn from_scalar(c: FqElem) -> Self {
        MPoly::constant(c)
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, other: &Self, field: &Field) -> Self {
        MPoly::add(self, other, field)
    }
    fn neg(&self, field: &Field) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), field.neg(c)))
                .collect(),
        }
    }
    fn mul(&self, other: &Self, field: &Field) -> Self {
        MPoly::mul(self, other, field)
    }
    fn scale(&self, c: FqElem, field: &Field) -> Self {
        MPoly::scale(self, c, field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_in_char_p() {
        let f = Field::prime(3).unwrap();
        let s = MPoly::var(0).add(&MPoly::var(1), &f);
        // (x + y)^3 = x^3 + y^3 in characteristic 3
        let cube = s.pow(3, &f);
        assert_eq!(cube.num_terms(), 2);
        assert_eq!(cube.coeff(&[3]), FqElem::ONE);
        assert_eq!(cube.coeff(&[0, 3]), FqElem::ONE);
    }

    #[test]
    fn evaluation() {
        let f = Field::prime(5).unwrap();
        let p = MPoly::var(0).mul(&MPoly::var(2), &f).add(&MPoly::constant(f.from_int(3)), &f);
        let v = [f.from_int(2), f.from_int(4), f.from_int(4)];
        assert_eq!(p.eval(&v, &f), f.from_int(1));
        assert_eq!(p.max_var(), Some(2));
        assert_eq!(p.total_degree(), Some(2));
    }
}

//! Seeded generators for randomized sweeps. The same seed always yields the
//! same sequence of objects.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle::{ShrinkParams, SymmetricForms};
use crate::error::Result;
use crate::ff_core::{Field, FqElem, LaurentNum, MPoly, Poly};
use crate::forms::{Hypersurface, MorphismCoeffs};

/// Every exponent vector of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.rng.gen_range(0..bound)
    }

    pub fn range(&mut self, lo: u32, hi_inclusive: u32) -> u32 {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    pub fn elem(&mut self, field: &Field) -> FqElem {
        FqElem(self.rng.gen_range(0..field.q()))
    }

    pub fn nonzero_elem(&mut self, field: &Field) -> FqElem {
        FqElem(self.rng.gen_range(1..field.q()))
    }

    pub fn point(&mut self, field: &Field, n: usize) -> Vec<FqElem> {
        (0..n).map(|_| self.elem(field)).collect()
    }

    /// A form with independent uniform coefficients, redrawn until nonzero.
    pub fn form(&mut self, field: &Field, n: usize, d: u32) -> Result<Hypersurface> {
        let monos = monomials(n, d);
        loop {
            let coeffs: Vec<(Vec<u32>, FqElem)> = monos.iter().map(|m| (m.clone(), self.elem(field))).collect();
            if coeffs.iter().any(|(_, c)| !c.is_zero()) {
                return Hypersurface::new(field.clone(), n, d, coeffs);
            }
        }
    }

    /// A uniform point of the degree-`e` box.
    pub fn morphism(&mut self, field: &Field, n: usize, e: u32) -> MorphismCoeffs {
        let mut idx: u128 = 0;
        let q = field.q() as u128;
        let vars = n * (e as usize + 1) * (e as usize + 2) / 2;
        for _ in 0..vars {
            idx = idx * q + self.rng.gen_range(0..q);
        }
        MorphismCoeffs::from_box_index(field, n, e, idx)
    }

    /// A polynomial in `nvars` variables of total degree exactly `deg`.
    pub fn mpoly(&mut self, field: &Field, nvars: usize, deg: u32) -> MPoly {
        let mut p = MPoly::zero();
        for k in 0..=deg {
            for m in monomials(nvars, k) {
                if k == deg || self.rng.gen_bool(0.5) {
                    let exps = m.iter().map(|&x| x as u16).collect();
                    p = p.add(&MPoly::term(self.elem(field), exps), field);
                }
            }
        }
        if p.total_degree() != Some(deg) {
            let top = monomials(nvars, deg)[0].iter().map(|&x| x as u16).collect();
            p = p.add(&MPoly::term(self.nonzero_elem(field), top), field);
        }
        p
    }

    pub fn poly_below(&mut self, field: &Field, bound: usize) -> Poly {
        Poly::from_coeffs((0..bound).map(|_| self.elem(field)).collect())
    }

    /// `depth` uniform digits below the point.
    pub fn fraction(&mut self, field: &Field, depth: usize) -> LaurentNum {
        LaurentNum::from_fraction_digits(&self.point(field, depth))
    }

    /// `depth` uniform digits followed by exact zeros, so the element is a
    /// rational `b / u^depth` known to infinite precision.
    pub fn exact_fraction(&mut self, field: &Field, depth: usize) -> LaurentNum {
        let mut digits = self.point(field, depth);
        digits.reverse();
        LaurentNum::from_terms(-(depth as i64), digits, None)
    }

    /// A `size x size` symmetric matrix of `depth`-digit fractions.
    pub fn symmetric_forms(&mut self, field: &Field, size: usize, depth: usize) -> Result<SymmetricForms> {
        let mut gamma = vec![vec![LaurentNum::zero(); size]; size];
        for i in 0..size {
            for j in i..size {
                let g = self.fraction(field, depth);
                gamma[i][j] = g.clone();
                gamma[j][i] = g;
            }
        }
        SymmetricForms::new(field.clone(), gamma)
    }

    /// Admissible `(A, Z1, Z2)` with both box exponents `A + Z` at most `max_exponent`.
    pub fn shrink_params(&mut self, max_exponent: i64) -> Result<ShrinkParams> {
        loop {
            let twice_a = self.rng.gen_range(1..=2 * max_exponent);
            let a = Rational64::new(twice_a, 2);
            // A - Z2 = k >= 1 and Z2 <= 0
            let k_min = a.ceil().to_integer().max(1);
            let k = self.rng.gen_range(k_min..=k_min + max_exponent);
            let z2 = a - k;
            let gap = self.rng.gen_range(0..=max_exponent);
            let z1 = z2 - gap;
            if (a + z2).to_integer() <= max_exponent {
                return ShrinkParams::new(a, z1, z2);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 2).len(), 3);
        assert_eq!(monomials(3, 3).len(), 10);
        assert!(monomials(3, 4).iter().all(|m| m.iter().sum::<u32>() == 4));
    }

    #[test]
    fn reproducible() {
        let f = Field::prime(5).unwrap();
        let (mut a, mut b) = (Sampler::new(7), Sampler::new(7));
        assert_eq!(a.form(&f, 3, 3).unwrap(), b.form(&f, 3, 3).unwrap());
        assert_eq!(a.mpoly(&f, 2, 4), b.mpoly(&f, 2, 4));
    }

    #[test]
    fn generated_objects_meet_their_contracts() {
        let f = Field::prime(3).unwrap();
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            assert_eq!(s.mpoly(&f, 3, 3).total_degree(), Some(3));
            let p = s.shrink_params(3).unwrap();
            assert!((p.a + p.z2).to_integer() <= 3);
            assert_eq!(s.morphism(&f, 2, 2).e(), 2);
        }
    }
}

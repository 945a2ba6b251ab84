use std::fmt;
use std::sync::Arc;

use super::fp_poly;
use crate::error::{Error, Result};

/// Largest field size for which extension tables are built.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 22;

/// An element of a finite field, stored as a canonical index in `[0, q)`.
///
/// For a prime field the index is the residue itself. For `F_{p^k}` it is
/// `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, the base-`p` digits being the
/// coefficients of the element in the basis `1, t, ..., t^{k-1}`. The
/// element carries no field handle; every operation goes through a [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct ExtTables {
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed primitive element g, i in [0, q-1).
    exp: Vec<u32>,
    /// log[x] for x != 0.
    log: Vec<u32>,
    /// tr(x) as a residue mod p.
    trace: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    ext: Option<ExtTables>,
}

/// A finite field `F_q`, `q = p^k`. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "F_{}", self.p()),
            Some(m) => write!(f, "F_{}^{} mod {:?}", self.p(), self.k(), m),
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p() == other.p() && self.k() == other.k() && self.modulus() == other.modulus())
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u32;
    while (i as u64) * (i as u64) <= p as u64 {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("characteristic {p} too large")));
        }
        Ok(Field(Arc::new(Inner {
            p,
            k: 1,
            q: p,
            ext: None,
        })))
    }

    /// `F_p[t]/(modulus)`; `modulus` is given low degree first and must be
    /// monic irreducible of degree at least 2.
    pub fn extension(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut m: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        fp_poly::trim(&mut m);
        if m.len() < 3 {
            return Err(Error::InvalidField("extension modulus must have degree >= 2".into()));
        }
        if *m.last().unwrap() != 1 {
            return Err(Error::InvalidField("extension modulus must be monic".into()));
        }
        if !fp_poly::is_irreducible(&m, p) {
            return Err(Error::InvalidField(format!("modulus {m:?} is reducible over F_{p}")));
        }
        let k = (m.len() - 1) as u32;
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_EXTENSION_ORDER);
        let q = q.ok_or_else(|| Error::InvalidField(format!("F_{p}^{k} is too large")))? as u32;
        let ext = build_tables(p, k, q, m);
        Ok(Field(Arc::new(Inner {
            p,
            k,
            q,
            ext: Some(ext),
        })))
    }

    /// `F_{p^k}` with the caller's modulus (required when `k > 1`).
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        match (k, modulus) {
            (0, _) => Err(Error::InvalidField("extension degree must be >= 1".into())),
            (1, None) => Field::prime(p),
            (1, Some(_)) => Err(Error::InvalidField("prime field takes no modulus".into())),
            (_, None) => Err(Error::InvalidField(format!("k = {k} requires a modulus"))),
            (_, Some(m)) => {
                let f = Field::extension(p, m)?;
                if f.k() != k {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {}, expected {k}",
                        f.k()
                    )));
                }
                Ok(f)
            }
        }
    }

    /// Lexicographically smallest monic irreducible of degree `k` over `F_p`.
    pub fn find_irreducible(p: u32, k: u32) -> Result<Vec<u32>> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let total = (p as u64)
            .checked_pow(k)
            .filter(|&t| t <= MAX_EXTENSION_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("F_{p}^{k} is too large")))?;
        for idx in 0..total {
            let mut m = digits(idx as u32, p, k);
            m.push(1);
            if fp_poly::is_irreducible(&m, p) {
                return Ok(m);
            }
        }
        Err(Error::InvalidField(format!("no irreducible of degree {k} over F_{p}")))
    }

    /// `F_{p^k}` with the canonical modulus from [`Field::find_irreducible`].
    pub fn with_degree(p: u32, k: u32) -> Result<Field> {
        if k == 1 {
            return Field::prime(p);
        }
        let m = Field::find_irreducible(p, k)?;
        Field::extension(p, &m)
    }

    /// The degree-`m` extension of this field together with the embedding.
    pub fn extension_of_degree(&self, m: u32) -> Result<(Field, Embedding)> {
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if m == 1 {
            return Ok((self.clone(), Embedding::identity(self)));
        }
        let big = Field::with_degree(self.p(), self.k() * m)?;
        let emb = self.embedding_into(&big)?;
        Ok((big, emb))
    }

    /// A field homomorphism into `big`, which must contain this field.
    pub fn embedding_into(&self, big: &Field) -> Result<Embedding> {
        if big.p() != self.p() || big.k() % self.k() != 0 {
            return Err(Error::InvalidField(format!("{self:?} does not embed in {big:?}")));
        }
        let image_of_t = match self.modulus() {
            None => None,
            Some(m) => {
                // a root of our modulus inside `big`
                let root = big.elements().find(|&x| {
                    let mut acc = FqElem::ZERO;
                    for &c in m.iter().rev() {
                        acc = big.add(big.mul(acc, x), big.from_int(c as i64));
                    }
                    acc.is_zero()
                });
                Some(root.ok_or_else(|| Error::InvalidField("modulus has no root".into()))?)
            }
        };
        let table = self
            .elements()
            .map(|x| match image_of_t {
                None => big.from_int(x.0 as i64),
                Some(beta) => {
                    let mut acc = FqElem::ZERO;
                    for &c in self.coeffs(x).iter().rev() {
                        acc = big.add(big.mul(acc, beta), big.from_int(c as i64));
                    }
                    acc
                }
            })
            .collect();
        Ok(Embedding { table })
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.ext.as_ref().map(|e| e.modulus.as_slice())
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Image of an integer under `Z -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_index(&self, idx: u32) -> Result<FqElem> {
        if idx < self.0.q {
            Ok(FqElem(idx))
        } else {
            Err(Error::OutOfRange(format!("field index {idx} for q = {}", self.0.q)))
        }
    }

    /// Element with the given coefficients in the basis `1, t, ..., t^{k-1}`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FqElem> {
        if coeffs.len() != self.0.k as usize {
            return Err(Error::DimensionMismatch {
                expected: self.0.k as usize,
                found: coeffs.len(),
            });
        }
        let p = self.0.p as i64;
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * self.0.p + c.rem_euclid(p) as u32;
        }
        Ok(FqElem(idx))
    }

    pub fn coeffs(&self, x: FqElem) -> Vec<u32> {
        digits(x.0, self.0.p, self.0.k)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + Clone {
        (0..self.0.q).map(FqElem)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return FqElem((s % p as u64) as u32);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FqElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        let p = self.0.p;
        if self.0.k == 1 {
            return FqElem((p - a.0) % p);
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FqElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        match &self.0.ext {
            None => FqElem(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32),
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    return FqElem::ZERO;
                }
                let n = self.0.q as u64 - 1;
                let l = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
                FqElem(t.exp[l as usize])
            }
        }
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.ext {
            None => FqElem(fp_poly::pow_mod(a.0, self.0.p as u64 - 2, self.0.p)),
            Some(t) => {
                let n = self.0.q - 1;
                let l = (n - t.log[a.0 as usize]) % n;
                FqElem(t.exp[l as usize])
            }
        })
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to `F_p`, as a residue in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: FqElem) -> u32 {
        match &self.0.ext {
            None => a.0,
            Some(t) => t.trace[a.0 as usize],
        }
    }

    /// Dot product `sum a_i b_i`.
    pub fn dot(&self, a: &[FqElem], b: &[FqElem]) -> FqElem {
        a.iter()
            .zip(b)
            .fold(FqElem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

fn digits(mut idx: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn build_tables(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> ExtTables {
    let order = q - 1;
    let mut exp = vec![0u32; order as usize];
    let mut log = vec![0u32; q as usize];
    // Search for a primitive element; the first generator found is fixed.
    'search: for cand in 2..q {
        let g = digits(cand, p, k);
        let mut cur = vec![1u32];
        for i in 0..order {
            let mut padded = cur.clone();
            padded.resize(k as usize, 0);
            let idx = undigits(&padded, p);
            if i > 0 && idx == 1 {
                continue 'search;
            }
            exp[i as usize] = idx;
            cur = fp_poly::mulmod(&cur, &g, &modulus, p);
        }
        break;
    }
    for (i, &x) in exp.iter().enumerate() {
        log[x as usize] = i as u32;
    }
    // tr(x) = x + x^p + ... + x^{p^{k-1}}; in log form x^{p^i} = g^{l p^i}.
    let mut trace = vec![0u32; q as usize];
    let add_digits = |a: u32, b: u32| -> u32 {
        let da = digits(a, p, k);
        let db = digits(b, p, k);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        undigits(&s, p)
    };
    for x in 1..q {
        let l = log[x as usize] as u64;
        let mut acc = 0u32;
        let mut pp = 1u64;
        for _ in 0..k {
            let e = (l * pp) % order as u64;
            acc = add_digits(acc, exp[e as usize]);
            pp = pp * p as u64 % order as u64;
        }
        // the trace lies in F_p: all higher digits vanish
        debug_assert!(acc < p);
        trace[x as usize] = acc;
    }
    ExtTables {
        modulus,
        exp,
        log,
        trace,
    }
}

/// An injective field homomorphism, tabulated on the source field.
#[derive(Clone, Debug)]
pub struct Embedding {
    table: Vec<FqElem>,
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        Embedding {
            table: field.elements().collect(),
        }
    }

    pub fn apply(&self, x: FqElem) -> FqElem {
        self.table[x.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Field {
        Field::extension(3, &[1, 0, 1]).unwrap()
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_int(5);
        let b = f.from_int(4);
        assert_eq!(f.add(a, b), f.from_int(2));
        assert_eq!(f.mul(a, b), f.from_int(6));
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.from_int(-1), f.from_int(6));
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Field::prime(9).is_err());
        assert!(Field::extension(5, &[1, 0, 1]).is_err());
        assert!(Field::new(3, 2, None).is_err());
    }

    #[test]
    fn extension_field_axioms() {
        let f = f9();
        assert_eq!(f.q(), 9);
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    let lhs = f.mul(a, f.add(b, c));
                    let rhs = f.add(f.mul(a, b), f.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // t^2 = -1
        let t = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(t, t), f.from_int(-1));
    }

    #[test]
    fn trace_values() {
        let f = f9();
        assert_eq!(f.trace(f.one()), 2);
        assert_eq!(f.trace(f.zero()), 0);
        let t = f.from_coeffs(&[0, 1]).unwrap();
        // t + t^3 = t - t = 0
        assert_eq!(f.trace(t), 0);
        let p = Field::prime(5).unwrap();
        for a in p.elements() {
            assert_eq!(p.trace(a), a.index());
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f = f9();
        let (big, emb) = f.extension_of_degree(2).unwrap();
        assert_eq!(big.q(), 81);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(emb.apply(f.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(f.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
            }
        }
    }
}

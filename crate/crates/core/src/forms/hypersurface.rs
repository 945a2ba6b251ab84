use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff_core::{Field, FqAlgebra, FqElem, MPoly};

/// A coefficient as written in a config file: an integer for prime fields,
/// or the coefficient list in the basis `1, t, ..., t^{k-1}` for extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Int(i64),
    Vector(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSpec {
    pub exps: Vec<u32>,
    pub c: CoeffSpec,
}

/// On-disk description of a hypersurface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceConfig {
    pub p: u32,
    #[serde(default = "default_k")]
    pub k: u32,
    pub n: usize,
    pub d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub monomials: Vec<MonomialSpec>,
}

fn default_k() -> u32 {
    1
}

impl HypersurfaceConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.p, self.k, self.modulus.as_deref())
    }

    pub fn build(&self) -> Result<Hypersurface> {
        let field = self.field()?;
        let mut monos = Vec::with_capacity(self.monomials.len());
        for m in &self.monomials {
            let c = match &m.c {
                CoeffSpec::Int(v) if field.k() == 1 => field.from_int(*v),
                CoeffSpec::Int(v) => {
                    let mut cs = vec![0i64; field.k() as usize];
                    cs[0] = *v;
                    field.from_coeffs(&cs)?
                }
                CoeffSpec::Vector(v) => field.from_coeffs(v)?,
            };
            monos.push((m.exps.clone(), c));
        }
        Hypersurface::new(field, self.n, self.d, monos)
    }
}

/// A homogeneous form of degree `d` in `n` variables over `F_q`, stored by monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    field: Field,
    n: usize,
    d: u32,
    monomials: BTreeMap<Vec<u32>, FqElem>,
}

impl Hypersurface {
    pub fn new(field: Field, n: usize, d: u32, monomials: Vec<(Vec<u32>, FqElem)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidHypersurface("no variables".into()));
        }
        if d == 0 {
            return Err(Error::InvalidHypersurface("degree must be positive".into()));
        }
        let mut map: BTreeMap<Vec<u32>, FqElem> = BTreeMap::new();
        for (exps, c) in monomials {
            if exps.len() != n {
                return Err(Error::InvalidHypersurface(format!(
                    "exponent vector {exps:?} has length {}, expected {n}",
                    exps.len()
                )));
            }
            let deg: u32 = exps.iter().sum();
            if deg != d {
                return Err(Error::InvalidHypersurface(format!(
                    "monomial {exps:?} has degree {deg}, expected {d}"
                )));
            }
            let slot = map.entry(exps).or_insert(FqElem::ZERO);
            *slot = field.add(*slot, c);
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::InvalidHypersurface("all coefficients vanish".into()));
        }
        Ok(Hypersurface {
            field,
            n,
            d,
            monomials: map,
        })
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

    pub fn monomials(&self) -> &BTreeMap<Vec<u32>, FqElem> {
        &self.monomials
    }

    pub fn to_config(&self) -> HypersurfaceConfig {
        let k = self.field.k();
        let monomials = self
            .monomials
            .iter()
            .map(|(e, &c)| MonomialSpec {
                exps: e.clone(),
                c: if k == 1 {
                    CoeffSpec::Int(c.index() as i64)
                } else {
                    CoeffSpec::Vector(self.field.coeffs(c).iter().map(|&x| x as i64).collect())
                },
            })
            .collect();
        HypersurfaceConfig {
            p: self.field.p(),
            k,
            n: self.n,
            d: self.d,
            modulus: self.field.modulus().map(|m| m.to_vec()),
            monomials,
        }
    }

    /// Evaluates at a point with coordinates in any ring over `F_q`.
    pub fn eval<A: FqAlgebra>(&self, x: &[A]) -> A {
        let field = &self.field;
        let mut acc = A::zero();
        for (e, &c) in &self.monomials {
            let mut t = A::from_scalar(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&x[i], field);
                }
            }
            acc = acc.add(&t, field);
        }
        acc
    }

    pub fn eval_fq(&self, x: &[FqElem]) -> FqElem {
        let field = &self.field;
        let mut acc = FqElem::ZERO;
        for (e, &c) in &self.monomials {
            let mut t = c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = field.mul(t, field.pow(x[i], k as u64));
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }

    pub fn to_mpoly(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (e, &c) in &self.monomials {
            let ex = e.iter().map(|&k| k as u16).collect();
            out = out.add(&MPoly::term(c, ex), &self.field);
        }
        out
    }

    /// Partial derivatives, each as a polynomial in the same variables.
    pub fn gradient(&self) -> Vec<MPoly> {
        let field = &self.field;
        (0..self.n)
            .map(|i| {
                let mut out = MPoly::zero();
                for (e, &c) in &self.monomials {
                    if e[i] == 0 {
                        continue;
                    }
                    let mut ex: Vec<u16> = e.iter().map(|&k| k as u16).collect();
                    ex[i] -= 1;
                    let coeff = field.mul(c, field.from_int(e[i] as i64));
                    out = out.add(&MPoly::term(coeff, ex), field);
                }
                out
            })
            .collect()
    }

    /// The form `f(x_{perm[0]}, ..., x_{perm[n-1]})`.
    pub fn permute(&self, perm: &[usize]) -> Result<Hypersurface> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let monos = self
            .monomials
            .iter()
            .map(|(e, &c)| {
                let mut ne = vec![0u32; self.n];
                for (i, &k) in e.iter().enumerate() {
                    ne[perm[i]] += k;
                }
                (ne, c)
            })
            .collect();
        Hypersurface::new(self.field.clone(), self.n, self.d, monos)
    }

    pub fn scale(&self, c: FqElem) -> Result<Hypersurface> {
        let monos = self
            .monomials
            .iter()
            .map(|(e, &x)| (e.clone(), self.field.mul(x, c)))
            .collect();
        Hypersurface::new(self.field.clone(), self.n, self.d, monos)
    }

    /// The same monomials reinterpreted over another field of characteristic `p`.
    pub fn with_field(&self, field: Field, map: impl Fn(FqElem) -> FqElem) -> Result<Hypersurface> {
        let monos = self.monomials.iter().map(|(e, &c)| (e.clone(), map(c))).collect();
        Hypersurface::new(field, self.n, self.d, monos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_config() {
        let s = r#"{"p":3,"k":1,"n":2,"d":2,"monomials":[{"exps":[2,0],"c":1},{"exps":[0,2],"c":1}]}"#;
        let cfg = HypersurfaceConfig::from_json(s).unwrap();
        let h = cfg.build().unwrap();
        assert_eq!(h.n(), 2);
        let f = h.field().clone();
        assert_eq!(h.eval_fq(&[f.from_int(1), f.from_int(1)]), f.from_int(2));
        assert_eq!(HypersurfaceConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap(), cfg);
    }

    #[test]
    fn extension_coefficients() {
        let s = r#"{"p":3,"k":2,"modulus":[1,0,1],"n":1,"d":2,"monomials":[{"exps":[2],"c":[0,1]}]}"#;
        let h = HypersurfaceConfig::from_json(s).unwrap().build().unwrap();
        assert_eq!(h.field().q(), 9);
    }

    #[test]
    fn rejects_malformed() {
        let f = Field::prime(5).unwrap();
        assert!(Hypersurface::new(f.clone(), 2, 2, vec![]).is_err());
        assert!(Hypersurface::new(f.clone(), 2, 2, vec![(vec![1, 0], FqElem::ONE)]).is_err());
        assert!(Hypersurface::new(f.clone(), 2, 2, vec![(vec![2, 0], f.from_int(5))]).is_err());
    }
}

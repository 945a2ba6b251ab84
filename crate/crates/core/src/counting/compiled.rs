use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::var_index;
use crate::budget::Budget;
use crate::error::Result;
use crate::ff_core::{Field, FqElem, MPoly};
use crate::forms::Hypersurface;

/// One coefficient condition `[u^k] F_j(t) = 0`, flattened for fast evaluation.
#[derive(Clone, Debug)]
pub(crate) struct Condition {
    /// `(coefficient, [(variable, exponent)])`.
    pub terms: Vec<(FqElem, Vec<(usize, u32)>)>,
    pub last_var: usize,
}

impl Condition {
    #[inline]
    pub fn eval(&self, field: &Field, vals: &[FqElem]) -> FqElem {
        let mut acc = FqElem::ZERO;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(v, k) in factors {
                let x = vals[v];
                if x.is_zero() {
                    t = FqElem::ZERO;
                    break;
                }
                for _ in 0..k {
                    t = field.mul(t, x);
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }
}

/// Every coordinate condition of the system `F_j(t) = 0`, grouped by the
/// last variable (in enumeration order) they depend on.
#[derive(Clone, Debug)]
pub(crate) struct CompiledSystem {
    pub field: Field,
    pub n: usize,
    pub e: usize,
    pub nvars: usize,
    pub by_last: Vec<Vec<Condition>>,
    /// A condition with no variables and a nonzero constant makes the system empty.
    pub inconsistent: bool,
    /// `free_from[v]`: no condition looks at variables `>= v`.
    pub free_from: Vec<bool>,
}

impl CompiledSystem {
    /// Expands `f(sum_{s,m} x_{s,m,i} u^m v^{e-s})` with `u` and `v` as the
    /// first two variables and sorts the result by `(v`-degree, `u`-degree`)`.
    pub fn build(f: &Hypersurface, e: u32, budget: &Budget) -> Result<CompiledSystem> {
        let field = f.field().clone();
        let n = f.n();
        let e = e as usize;
        let de = f.d() as usize * e;
        let nvars = var_index(n, e + 1, 0, 0);
        let coords: Vec<MPoly> = (0..n)
            .map(|i| {
                let mut g = MPoly::zero();
                for s in 0..=e {
                    for m in 0..=s {
                        let mut exps = vec![0u16; 2 + nvars];
                        exps[0] = m as u16;
                        exps[1] = (e - s) as u16;
                        exps[2 + var_index(n, s, m, i)] = 1;
                        g = g.add(&MPoly::term(FqElem::ONE, exps), &field);
                    }
                }
                g
            })
            .collect();
        let expanded = f.eval(&coords);
        budget.check_symbolic("compiled conditions", &BigUint::from(expanded.num_terms()))?;

        let mut grouped: BTreeMap<(usize, usize), Vec<(FqElem, Vec<(usize, u32)>)>> = BTreeMap::new();
        for (exps, &c) in expanded.terms() {
            let udeg = exps.first().copied().unwrap_or(0) as usize;
            let vdeg = exps.get(1).copied().unwrap_or(0) as usize;
            let factors: Vec<(usize, u32)> = exps
                .iter()
                .enumerate()
                .skip(2)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| (v - 2, k as u32))
                .collect();
            grouped.entry((de - vdeg, udeg)).or_default().push((c, factors));
        }

        let mut by_last = vec![Vec::new(); nvars];
        let mut inconsistent = false;
        for terms in grouped.into_values() {
            let last = terms
                .iter()
                .flat_map(|(_, fs)| fs.iter().map(|&(v, _)| v))
                .max();
            match last {
                Some(last_var) => by_last[last_var].push(Condition {
                    terms,
                    last_var,
                }),
                None => inconsistent |= terms.iter().any(|(c, _)| !c.is_zero()),
            }
        }
        let mut free_from = vec![true; nvars + 1];
        for v in (0..nvars).rev() {
            free_from[v] = free_from[v + 1] && by_last[v].is_empty();
        }
        Ok(CompiledSystem {
            field,
            n,
            e,
            nvars,
            by_last,
            inconsistent,
            free_from,
        })
    }

    pub fn conditions(&self) -> impl Iterator<Item = &Condition> {
        self.by_last.iter().flatten()
    }

    #[inline]
    pub fn passes_at(&self, level: usize, vals: &[FqElem]) -> bool {
        self.by_last[level].iter().all(|c| c.eval(&self.field, vals).is_zero())
    }

    /// Number of completions of `vals[..level]` satisfying every condition.
    pub fn count_from(&self, level: usize, vals: &mut [FqElem]) -> u128 {
        if self.free_from[level] {
            return (self.field.q() as u128).pow((self.nvars - level) as u32);
        }
        let mut total = 0;
        for x in 0..self.field.q() {
            vals[level] = FqElem(x);
            if self.passes_at(level, vals) {
                total += self.count_from(level + 1, vals);
            }
        }
        vals[level] = FqElem::ZERO;
        total
    }

    /// All assignments of the first `upto` variables passing the conditions that
    /// depend only on them.
    pub fn prefixes(&self, upto: usize) -> Vec<Vec<FqElem>> {
        fn rec(sys: &CompiledSystem, level: usize, upto: usize, vals: &mut Vec<FqElem>, out: &mut Vec<Vec<FqElem>>) {
            if level == upto {
                out.push(vals[..upto].to_vec());
                return;
            }
            for x in 0..sys.field.q() {
                vals[level] = FqElem(x);
                if sys.passes_at(level, vals) {
                    rec(sys, level + 1, upto, vals, out);
                }
            }
            vals[level] = FqElem::ZERO;
        }
        let mut out = Vec::new();
        let mut vals = vec![FqElem::ZERO; self.nvars];
        rec(self, 0, upto, &mut vals, &mut out);
        out
    }
}

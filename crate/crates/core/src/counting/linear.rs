use super::compiled::{CompiledSystem, Condition};
use super::var_index;
use crate::ff_core::linalg::solve_affine;
use crate::ff_core::FqElem;

/// Conditions touching the top slot, split by whether they are affine in it.
pub(crate) struct TopSlotSplit {
    pub lo: usize,
    pub linear: Vec<Condition>,
    pub other: Vec<Condition>,
}

impl TopSlotSplit {
    pub fn new(sys: &CompiledSystem) -> TopSlotSplit {
        let lo = var_index(sys.n, sys.e, 0, 0);
        let mut linear = Vec::new();
        let mut other = Vec::new();
        for c in sys.conditions().filter(|c| c.last_var >= lo) {
            let top_degree = |fs: &[(usize, u32)]| fs.iter().filter(|(v, _)| *v >= lo).map(|(_, k)| *k).sum::<u32>();
            if c.terms.iter().all(|(_, fs)| top_degree(fs) <= 1) {
                linear.push(c.clone());
            } else {
                other.push(c.clone());
            }
        }
        TopSlotSplit { lo, linear, other }
    }

    /// Completions of the lower slots `vals[..lo]`: solve the affine
    /// conditions, then test the rest on each solution.
    pub fn count_leaf(&self, sys: &CompiledSystem, vals: &mut [FqElem]) -> u128 {
        let field = &sys.field;
        let nz = sys.nvars - self.lo;
        let mut rows = Vec::with_capacity(self.linear.len());
        for c in &self.linear {
            let mut row = vec![FqElem::ZERO; nz + 1];
            for (coef, fs) in &c.terms {
                let mut t = *coef;
                let mut col = None;
                for &(v, k) in fs {
                    if v >= self.lo {
                        col = Some(v - self.lo);
                    } else {
                        for _ in 0..k {
                            t = field.mul(t, vals[v]);
                        }
                    }
                }
                match col {
                    Some(cidx) => row[cidx] = field.add(row[cidx], t),
                    None => row[nz] = field.sub(row[nz], t),
                }
            }
            rows.push(row);
        }
        let Some((particular, basis)) = solve_affine(field, &rows, nz) else {
            return 0;
        };
        let q = field.q();
        let total_solutions = (q as u128).pow(basis.len() as u32);
        let mut count = 0;
        let mut digits = vec![0u32; basis.len()];
        for _ in 0..total_solutions {
            let mut z = particular.clone();
            for (b, &c) in basis.iter().zip(&digits) {
                if c == 0 {
                    continue;
                }
                let c = FqElem(c);
                for (zi, bi) in z.iter_mut().zip(b) {
                    *zi = field.add(*zi, field.mul(c, *bi));
                }
            }
            vals[self.lo..].copy_from_slice(&z);
            if self.other.iter().all(|c| c.eval(field, vals).is_zero()) {
                count += 1;
            }
            for dgt in digits.iter_mut() {
                *dgt += 1;
                if *dgt < q {
                    break;
                }
                *dgt = 0;
            }
        }
        for v in vals[self.lo..].iter_mut() {
            *v = FqElem::ZERO;
        }
        count
    }

    /// Enumerates the middle slots depth-first, calling the solver at the leaves.
    pub fn count_from(&self, sys: &CompiledSystem, level: usize, vals: &mut [FqElem]) -> u128 {
        if level == self.lo {
            return self.count_leaf(sys, vals);
        }
        let mut total = 0;
        for x in 0..sys.field.q() {
            vals[level] = FqElem(x);
            if sys.passes_at(level, vals) {
                total += self.count_from(sys, level + 1, vals);
            }
        }
        vals[level] = FqElem::ZERO;
        total
    }
}

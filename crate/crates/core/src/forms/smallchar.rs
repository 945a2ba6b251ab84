use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ff_core::{is_prime, Field, FqElem, MPoly};

/// Result of expanding `F_{e+1}` for a Fermat form in small characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallCharReport {
    pub e: u32,
    pub p: u32,
    pub d: u32,
    pub n: usize,
    /// `F_{e+1}` is the zero polynomial over `Z/p`.
    pub f_next_vanishes: bool,
    /// Number of monomials surviving in `F_{e+1}`.
    pub surviving_terms: usize,
    /// `v_p(binom(d, e+1))`, counted as base-`p` carries.
    pub kummer_valuation: u32,
    /// Number of coefficient chains `binom(d, r_e) binom(d - r_e, r_{e-1}) ...`.
    pub chain_count: usize,
    /// Chains whose product vanishes mod `p`.
    pub vanishing_chains: usize,
    /// Every chain with `r_e + ... + r_2 >= 1` has a factor whose numerator runs through `d - 1`.
    pub chains_reach_d_minus_1: bool,
}

/// `d = (e+1)! p + 1`.
pub fn smallchar_degree(e: u32, p: u32) -> Result<u32> {
    let mut f: u64 = 1;
    for i in 2..=(e as u64 + 1) {
        f *= i;
    }
    u32::try_from(f * p as u64 + 1).map_err(|_| Error::OutOfRange("degree overflows".into()))
}

/// Number of carries when adding `a` and `b` in base `p`.
pub fn carries(mut a: u64, mut b: u64, p: u64) -> u32 {
    let mut carry = 0;
    let mut count = 0;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        count += carry as u32;
        a /= p;
        b /= p;
    }
    count
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut out = BigUint::from(1u32);
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Multiplicity vectors `(r_1, ..., r_e)` with `sum s r_s = target`.
fn weighted_partitions(e: u32, target: u32) -> Vec<Vec<u32>> {
    fn rec(s: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if s == 0 {
            if left == 0 {
                out.push(cur.iter().rev().copied().collect());
            }
            return;
        }
        for r in 0..=left / s {
            cur.push(r);
            rec(s - 1, left - r * s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    // cur is filled from r_e down to r_1, then reversed
    rec(e, target, &mut Vec::new(), &mut out);
    out
}

/// `[w^{e+1}] sum_i (sum_s g_{i,s} w^s)^d` over `Z/p`, as a polynomial in
/// the variables `g_{i,s}` (index `i (e+1) + s`).
fn fermat_next_form(field: &Field, d: u32, e: u32, n: usize, budget: &Budget) -> Result<MPoly> {
    let target = e as usize + 1;
    let mut total = MPoly::zero();
    for i in 0..n {
        let base: Vec<MPoly> = (0..=e as usize)
            .map(|s| MPoly::var(i * (e as usize + 1) + s))
            .chain(std::iter::once(MPoly::zero()))
            .take(target + 1)
            .collect();
        // truncated power series in w, degree <= e + 1
        let mut acc: Vec<MPoly> = vec![MPoly::zero(); target + 1];
        acc[0] = MPoly::constant(FqElem::ONE);
        for _ in 0..d {
            let mut next = vec![MPoly::zero(); target + 1];
            for (a, pa) in acc.iter().enumerate() {
                if pa.is_zero() {
                    continue;
                }
                for (b, pb) in base.iter().enumerate().take(target + 1 - a) {
                    if pb.is_zero() {
                        continue;
                    }
                    next[a + b] = next[a + b].add(&pa.mul(pb, field), field);
                }
            }
            let terms: usize = next.iter().map(MPoly::num_terms).sum();
            budget.check_symbolic("symbolic expansion", &BigUint::from(terms))?;
            acc = next;
        }
        total = total.add(&acc[target], field);
    }
    Ok(total)
}

/// The vanishing check for an arbitrary Fermat degree, used both for the
/// degrees `(e+1)! p + 1` and for control cases.
pub fn fermat_next_form_check(d: u32, p: u32, e: u32, n: usize, budget: &Budget) -> Result<SmallCharReport> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if e == 0 || d < 2 || n == 0 {
        return Err(Error::OutOfRange("need e >= 1, d >= 2, n >= 1".into()));
    }
    let field = Field::prime(p)?;
    let form = fermat_next_form(&field, d, e, n, budget)?;

    let partitions = weighted_partitions(e, e + 1);
    let mut vanishing = 0;
    let mut reach = true;
    for r in &partitions {
        // r[s-1] = r_s; the chain consumes r_e first
        let mut used: u64 = 0;
        let mut product = BigUint::from(1u32);
        let mut hits = false;
        for s in (1..=e as usize).rev() {
            let k = r[s - 1] as u64;
            if used + k > d as u64 {
                product = BigUint::zero();
                break;
            }
            product *= binomial(d as u64 - used, k);
            // numerator runs d - used down to d - used - k + 1
            if k > 0 && used <= 1 && used + k >= 2 {
                hits = true;
            }
            used += k;
        }
        if (&product % p).is_zero() {
            vanishing += 1;
        }
        let higher: u32 = r.iter().skip(1).sum();
        if higher >= 1 && !hits {
            reach = false;
        }
    }

    Ok(SmallCharReport {
        e,
        p,
        d,
        n,
        f_next_vanishes: form.is_zero(),
        surviving_terms: form.num_terms(),
        kummer_valuation: carries(e as u64 + 1, (d - e - 1) as u64, p as u64),
        chain_count: partitions.len(),
        vanishing_chains: vanishing,
        chains_reach_d_minus_1: reach,
    })
}

/// The Fermat form of degree `(e+1)! p + 1` in `n` variables.
pub fn fermat_smallchar_check(e: u32, p: u32, n: usize, budget: &Budget) -> Result<SmallCharReport> {
    let d = smallchar_degree(e, p)?;
    fermat_next_form_check(d, p, e, n, budget)
}

/// `binom(d, e+1) mod p`, read off from the carries.
pub fn leading_binomial_vanishes(report: &SmallCharReport) -> bool {
    report.kummer_valuation > 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(smallchar_degree(1, 2).unwrap(), 5);
        assert_eq!(smallchar_degree(1, 3).unwrap(), 7);
        assert_eq!(smallchar_degree(2, 2).unwrap(), 13);
    }

    #[test]
    fn kummer_matches_direct() {
        for p in [2u32, 3, 5, 7] {
            for n in 0..30u64 {
                for k in 0..=n {
                    let direct = (binomial(n, k) % p).is_zero();
                    assert_eq!(carries(k, n - k, p as u64) > 0, direct, "n={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn vanishes_for_e1_p2() {
        let r = fermat_smallchar_check(1, 2, 2, &Budget::default()).unwrap();
        assert_eq!(r.d, 5);
        assert!(r.f_next_vanishes);
        assert!(leading_binomial_vanishes(&r));
        assert_eq!(r.vanishing_chains, r.chain_count);
    }

    #[test]
    fn control_does_not_vanish() {
        let r = fermat_next_form_check(3, 5, 1, 2, &Budget::default()).unwrap();
        assert!(!r.f_next_vanishes);
        assert!(!leading_binomial_vanishes(&r));
    }

    #[test]
    fn partitions() {
        assert_eq!(weighted_partitions(1, 2), vec![vec![2]]);
        let mut p = weighted_partitions(2, 3);
        p.sort();
        assert_eq!(p, vec![vec![1, 1], vec![3, 0]]);
    }
}

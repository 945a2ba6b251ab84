//! Expected dimensions and the exact number `N(e)` of slot tuples in the
//! degree box on which every `F_j` vanishes.

mod compiled;
mod linear;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::ff_core::{BoxSpec, FqElem};
use crate::forms::{FormSystem, Hypersurface, MorphismCoeffs};
use compiled::CompiledSystem;
use linear::TopSlotSplit;

/// Position of the coefficient of `u^m` in coordinate `i` of slot `s` in the
/// flat enumeration order (slot-major, then `u`-degree, then coordinate).
pub fn var_index(n: usize, s: usize, m: usize, i: usize) -> usize {
    n * s * (s + 1) / 2 + m * n + i
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedDims {
    pub n: usize,
    pub d: u32,
    pub e: u32,
    pub mu: i64,
    pub muhat: i64,
    /// For `e = 1`: `(mu - 8, 3n - binom(d+2, 2) - 9)`.
    pub plane_excess: Option<(i64, i64)>,
}

pub fn expected_dims(n: usize, d: u32, e: u32) -> Result<ExpectedDims> {
    if n == 0 || d < 2 || e == 0 {
        return Err(Error::OutOfRange("need n >= 1, d >= 2, e >= 1".into()));
    }
    let (ni, di, ei) = (n as i64, d as i64, e as i64);
    let muhat = ni * binom2(ei + 2) - binom2(di * ei + 2);
    let mu = muhat - 1;
    let plane_excess = (e == 1).then(|| (mu - 8, 3 * ni - binom2(di + 2) - 9));
    Ok(ExpectedDims {
        n,
        d,
        e,
        mu,
        muhat,
        plane_excess,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Every tuple of the box, all forms evaluated.
    Naive,
    /// Zeros of `f` in the constant slot first, then the remaining slots depth-first.
    RootFirst,
    /// Quadrics only: the conditions affine in the top slot are solved exactly.
    LinearSolve,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Naive, Strategy::RootFirst, Strategy::LinearSolve];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Naive => "naive",
            Strategy::RootFirst => "root-first",
            Strategy::LinearSolve => "linear-solve",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "root-first" => Ok(Strategy::RootFirst),
            "linear-solve" | "linear" => Ok(Strategy::LinearSolve),
            other => Err(Error::Config(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub q: u32,
    pub e: u32,
    pub strategy: Strategy,
    pub count: BigUint,
    pub box_size: BigUint,
    pub muhat: i64,
    /// `N / q^{muhat}`, exact.
    pub ratio: BigRational,
}

impl CountResult {
    pub fn ratio_float(&self) -> f64 {
        self.ratio.to_f64().unwrap_or(f64::NAN)
    }
}

/// `q^k` as an exact rational, for any sign of `k`.
pub fn q_power(q: u32, k: i64) -> BigRational {
    let p = BigInt::from(big_pow(q, k.unsigned_abs()));
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CountOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub budget: Budget,
}

pub(crate) fn run_in_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

fn count_naive(f: &Hypersurface, e: u32, box_size: u128) -> Result<u128> {
    let sys = FormSystem::from_form(f, e)?;
    let field = f.field().clone();
    let n = f.n();
    let hits: Result<Vec<u128>> = (0..box_size)
        .into_par_iter()
        .map(|idx| {
            let g = MorphismCoeffs::from_box_index(&field, n, e, idx);
            Ok(u128::from(sys.all_vanish(&g)?))
        })
        .collect();
    Ok(hits?.into_iter().sum())
}

fn count_root_first(f: &Hypersurface, e: u32, budget: &Budget) -> Result<u128> {
    let sys = CompiledSystem::build(f, e, budget)?;
    if sys.inconsistent {
        return Ok(0);
    }
    let roots = sys.prefixes(f.n());
    Ok(roots
        .into_par_iter()
        .map(|root| {
            let mut vals = vec![FqElem::ZERO; sys.nvars];
            vals[..root.len()].copy_from_slice(&root);
            sys.count_from(root.len(), &mut vals)
        })
        .sum())
}

fn count_linear(f: &Hypersurface, e: u32, budget: &Budget) -> Result<u128> {
    if f.d() != 2 {
        return Err(Error::OutOfRange(format!(
            "the linear-solve strategy needs d = 2, got d = {}",
            f.d()
        )));
    }
    let sys = CompiledSystem::build(f, e, budget)?;
    if sys.inconsistent {
        return Ok(0);
    }
    let split = TopSlotSplit::new(&sys);
    let roots = sys.prefixes(f.n());
    Ok(roots
        .into_par_iter()
        .map(|root| {
            let mut vals = vec![FqElem::ZERO; sys.nvars];
            vals[..root.len()].copy_from_slice(&root);
            split.count_from(&sys, root.len(), &mut vals)
        })
        .sum())
}

/// Exact `N(e)` for `f`.
pub fn count_n(f: &Hypersurface, e: u32, strategy: Strategy, opts: &CountOptions) -> Result<CountResult> {
    let field = f.field();
    if field.p() <= f.d() {
        return Err(Error::CharacteristicTooSmall {
            p: field.p(),
            d: f.d(),
        });
    }
    let dims = expected_dims(f.n(), f.d(), e)?;
    let box_size = BoxSpec::morphism_box(f.n(), e)?.cardinality(field.q());
    opts.budget.check_box("degree box", &box_size)?;
    let small_box = box_size
        .to_u128()
        .ok_or_else(|| Error::OutOfRange("box does not fit in 128 bits".into()))?;
    let count = run_in_pool(opts.threads, || match strategy {
        Strategy::Naive => count_naive(f, e, small_box),
        Strategy::RootFirst => count_root_first(f, e, &opts.budget),
        Strategy::LinearSolve => count_linear(f, e, &opts.budget),
    })??;
    let count = BigUint::from(count);
    let ratio = BigRational::from_integer(BigInt::from(count.clone())) / q_power(field.q(), dims.muhat);
    Ok(CountResult {
        q: field.q(),
        e,
        strategy,
        count,
        box_size,
        muhat: dims.muhat,
        ratio,
    })
}

/// One row of the ratio table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRow {
    pub q: u32,
    pub count: BigUint,
    pub q_to_muhat: BigRational,
    pub ratio: BigRational,
}

/// `N(e) / q^{muhat}` for the same form shape over several fields; each entry of
/// `forms` carries its own field and coefficients.
pub fn ratio_report(forms: &[Hypersurface], e: u32, strategy: Strategy, opts: &CountOptions) -> Result<Vec<RatioRow>> {
    forms
        .iter()
        .map(|f| {
            let r = count_n(f, e, strategy, opts)?;
            Ok(RatioRow {
                q: r.q,
                count: r.count,
                q_to_muhat: q_power(r.q, r.muhat),
                ratio: r.ratio,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::Field;

    fn form(p: u32, n: usize, d: u32, monos: &[(&[u32], i64)]) -> Hypersurface {
        let f = Field::prime(p).unwrap();
        let m = monos.iter().map(|(e, c)| (e.to_vec(), f.from_int(*c))).collect();
        Hypersurface::new(f, n, d, m).unwrap()
    }

    #[test]
    fn dims() {
        let d = expected_dims(6, 2, 1).unwrap();
        assert_eq!((d.mu, d.muhat), (11, 12));
        let (lhs, rhs) = d.plane_excess.unwrap();
        assert_eq!(lhs, rhs);
        assert!(expected_dims(6, 2, 2).unwrap().plane_excess.is_none());
    }

    #[test]
    fn var_order() {
        assert_eq!(var_index(2, 0, 0, 1), 1);
        assert_eq!(var_index(2, 1, 0, 0), 2);
        assert_eq!(var_index(2, 1, 1, 1), 5);
        assert_eq!(var_index(2, 2, 0, 0), 6);
    }

    #[test]
    fn quadric_counts_agree() {
        let opts = CountOptions::default();
        let sum_sq = form(3, 2, 2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        let prod = form(3, 2, 2, &[(&[1, 1], 1)]);
        for s in Strategy::ALL {
            assert_eq!(count_n(&sum_sq, 1, s, &opts).unwrap().count, BigUint::from(1u32), "{s}");
            assert_eq!(count_n(&prod, 1, s, &opts).unwrap().count, BigUint::from(53u32), "{s}");
        }
        let r = count_n(&prod, 1, Strategy::RootFirst, &opts).unwrap();
        assert_eq!(r.muhat, 0);
        assert_eq!(r.ratio, BigRational::from_integer(53.into()));
    }

    #[test]
    fn strategies_agree_with_e2() {
        let f = form(5, 2, 2, &[(&[1, 1], 1), (&[2, 0], 2)]);
        let opts = CountOptions::default();
        let a = count_n(&f, 2, Strategy::RootFirst, &opts).unwrap().count;
        let b = count_n(&f, 2, Strategy::LinearSolve, &opts).unwrap().count;
        assert_eq!(a, b);
    }

    #[test]
    fn pure_power_has_only_zero() {
        let f = form(5, 1, 3, &[(&[3], 1)]);
        let r = count_n(&f, 1, Strategy::RootFirst, &CountOptions::default()).unwrap();
        assert_eq!(r.count, BigUint::from(1u32));
    }

    #[test]
    fn rejects_small_characteristic_and_linear_for_cubics() {
        let f = form(3, 2, 3, &[(&[3, 0], 1)]);
        assert!(count_n(&f, 1, Strategy::RootFirst, &CountOptions::default()).is_err());
        let g = form(5, 2, 3, &[(&[3, 0], 1)]);
        assert!(count_n(&g, 1, Strategy::LinearSolve, &CountOptions::default()).is_err());
    }
}

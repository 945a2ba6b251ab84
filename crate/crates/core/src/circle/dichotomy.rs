use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::alpha::grid_point;
use super::approx::{major_arc_test, MajorArcReport};
use super::bihom::{cross_check_e, ArcParams, BihomSum};
use super::check::Check;
use crate::budget::{big_pow, Budget};
use crate::counting::q_power;
use crate::error::{Error, Result};
use crate::ff_core::linalg::rank;
use crate::ff_core::{Field, FqElem, LaurentNum};
use crate::forms::BidegreeForm;

/// Which auxiliary variety the bidegree selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VStarCase {
    /// `d1 >= 1`, `d2 >= 2`: pairs `(x, y)` in `A^{2n}`.
    Mixed,
    /// `d2 = 1`: `x` alone in `A^n`.
    XOnly,
    /// `d1 = 0`: `y` alone in `A^n`.
    YOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub case: VStarCase,
    pub ambient_dim: usize,
    /// True on the rank-nullity path (`d = 2`), where no counting is done.
    pub exact: bool,
    /// `(m, #V*(F_{q^m}))` for each extension tried.
    pub counts: Vec<(u32, BigUint)>,
    /// `round(log_{q^m} count)` for each entry of `counts`.
    pub estimates: Vec<i64>,
    pub dim_estimate: i64,
    pub sigma: i64,
}

fn vstar_case(g: &BidegreeForm) -> VStarCase {
    if g.d1() == 0 {
        VStarCase::YOnly
    } else if g.d2() == 1 {
        VStarCase::XOnly
    } else {
        VStarCase::Mixed
    }
}

/// Vector of `F_Q^n` with the given index.
fn point(n: usize, qq: u64, mut idx: u64) -> Vec<FqElem> {
    (0..n)
        .map(|_| {
            let c = FqElem((idx % qq) as u32);
            idx /= qq;
            c
        })
        .collect()
}

/// Point counts of `V* = {Gamma(x^{d1}, y^{d2-1}, e_i) = 0 for all i}` over an extension.
struct VStarCounter {
    big: Field,
    n: usize,
    d1: usize,
    d: usize,
    entries: Vec<(Vec<usize>, FqElem)>,
}

impl VStarCounter {
    fn new(g: &BidegreeForm, m: u32) -> Result<VStarCounter> {
        let (big, emb) = g.tensor().field().extension_of_degree(m)?;
        let entries = g
            .tensor()
            .ordered_entries()
            .iter()
            .map(|(idx, c)| (idx.clone(), emb.apply(*c)))
            .collect();
        Ok(VStarCounter {
            big,
            n: g.n(),
            d1: g.d1() as usize,
            d: g.d() as usize,
            entries,
        })
    }

    /// `sum c * prod_l slot(l)[idx_l]` over the first `d-1` positions,
    /// accumulated into `out[idx_{d-1}]`; `skip` leaves one position open,
    /// accumulating into `out[(idx_skip, idx_{d-1})]` instead.
    fn contract(&self, x: &[FqElem], y: &[FqElem], skip: Option<usize>) -> Vec<FqElem> {
        let f = &self.big;
        let n = self.n;
        let mut out = vec![FqElem::ZERO; if skip.is_some() { n * n } else { n }];
        for (idx, c) in &self.entries {
            let mut t = *c;
            for (l, &i) in idx[..self.d - 1].iter().enumerate() {
                if Some(l) == skip {
                    continue;
                }
                let v = if l < self.d1 { x[i] } else { y[i] };
                t = f.mul(t, v);
                if t.is_zero() {
                    break;
                }
            }
            let pos = match skip {
                Some(s) => idx[self.d - 1] * n + idx[s],
                None => idx[self.d - 1],
            };
            out[pos] = f.add(out[pos], t);
        }
        out
    }

    fn count(&self, case: VStarCase, budget: &Budget) -> Result<BigUint> {
        let n = self.n;
        let qq = self.big.q() as u64;
        let d2 = self.d - self.d1;
        let kernel = |rows: Vec<FqElem>| -> BigUint {
            let m: Vec<Vec<FqElem>> = rows.chunks(n).map(|r| r.to_vec()).collect();
            big_pow(self.big.q(), (n - rank(&self.big, &m, n)) as u64)
        };
        let enumerate = |vars: usize| -> Result<u64> {
            let size = big_pow(self.big.q(), vars as u64);
            budget.check_box("V* enumeration", &size)?;
            size.to_u64().ok_or_else(|| Error::OutOfRange("V* enumeration too large".into()))
        };
        match case {
            VStarCase::Mixed if self.d1 == 1 || d2 == 2 => {
                // linear in x when d1 = 1, else linear in y: sum kernel sizes over the other group
                let skip = if self.d1 == 1 { 0 } else { self.d - 2 };
                let total = enumerate(n)?;
                let zero = vec![FqElem::ZERO; n];
                Ok((0..total)
                    .into_par_iter()
                    .map(|idx| {
                        let v = point(n, qq, idx);
                        let rows = if self.d1 == 1 {
                            self.contract(&zero, &v, Some(skip))
                        } else {
                            self.contract(&v, &zero, Some(skip))
                        };
                        kernel(rows)
                    })
                    .sum())
            }
            VStarCase::Mixed => {
                let total = enumerate(2 * n)?;
                let hits = (0..total)
                    .into_par_iter()
                    .filter(|&idx| {
                        let v = point(2 * n, qq, idx);
                        self.contract(&v[..n], &v[n..], None).iter().all(|c| c.is_zero())
                    })
                    .count();
                Ok(BigUint::from(hits))
            }
            VStarCase::XOnly | VStarCase::YOnly => {
                let total = enumerate(n)?;
                let hits = (0..total)
                    .into_par_iter()
                    .filter(|&idx| {
                        let v = point(n, qq, idx);
                        self.contract(&v, &v, None).iter().all(|c| c.is_zero())
                    })
                    .count();
                Ok(BigUint::from(hits))
            }
        }
    }
}

/// `sigma_G = (ambient dimension) - dim V*`. For `d = 2` the variety is a
/// kernel and its dimension is exact; otherwise it is read off the growth of
/// point counts over `F_{q^m}`, accepted once two consecutive `m` agree.
pub fn sigma_estimate(g: &BidegreeForm, m_max: u32, budget: &Budget) -> Result<SigmaReport> {
    let case = vstar_case(g);
    let n = g.n();
    let ambient_dim = if case == VStarCase::Mixed { 2 * n } else { n };
    if g.d() == 2 {
        let t = g.tensor();
        let rows: Vec<Vec<FqElem>> = (0..n).map(|i| (0..n).map(|k| t.entry(&[i, k])).collect()).collect();
        let r = rank(t.field(), &rows, n) as i64;
        return Ok(SigmaReport {
            case,
            ambient_dim,
            exact: true,
            counts: Vec::new(),
            estimates: Vec::new(),
            dim_estimate: n as i64 - r,
            sigma: r,
        });
    }
    let mut counts = Vec::new();
    let mut estimates: Vec<i64> = Vec::new();
    for m in 1..=m_max {
        let counter = VStarCounter::new(g, m)?;
        let c = counter.count(case, budget)?;
        let qq = counter.big.q() as f64;
        let est = (c.to_f64().unwrap_or(f64::INFINITY).ln() / qq.ln()).round() as i64;
        counts.push((m, c));
        estimates.push(est);
        if let [.., a, b] = estimates.as_slice() {
            if a == b {
                return Ok(SigmaReport {
                    case,
                    ambient_dim,
                    exact: false,
                    counts,
                    estimates: estimates.clone(),
                    dim_estimate: *b,
                    sigma: ambient_dim as i64 - b,
                });
            }
        }
    }
    Err(Error::Unstable)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dichotomy {
    BoundHolds,
    OnArc,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub outcome: Dichotomy,
    pub e_value: BigUint,
    /// `(d-1)^n E(0) q^{-sigma J}`.
    pub bound: BigRational,
    pub arc: MajorArcReport,
}

/// `E` on a fixed form and boxes, with `sigma_G`, for repeated dichotomy checks.
pub struct DichotomyContext {
    form: BidegreeForm,
    params: ArcParams,
    sum: BihomSum,
    sigma: i64,
}

impl DichotomyContext {
    pub fn new(g: &BidegreeForm, params: &ArcParams, sigma: i64, budget: &Budget) -> Result<DichotomyContext> {
        if params.j_level > params.p1 {
            return Err(Error::ContractViolated(format!(
                "the dichotomy needs 1 <= J <= P1, got J = {} and P1 = {}",
                params.j_level, params.p1
            )));
        }
        Ok(DichotomyContext {
            form: g.clone(),
            params: *params,
            sum: BihomSum::new(g, params, budget)?,
            sigma,
        })
    }

    /// Bound of the first alternative, `(d-1)^n E(0) q^{-sigma J}`.
    pub fn bound(&self) -> BigRational {
        let n = self.form.n() as u32;
        let d = BigInt::from(self.params.d() - 1).pow(n);
        let q = self.form.tensor().field().q();
        BigRational::from_integer(d * BigInt::from(self.sum.e_zero()))
            * q_power(q, -self.sigma * self.params.j_level as i64)
    }

    pub fn check(&self, alpha: &LaurentNum, budget: &Budget) -> Result<DichotomyReport> {
        let field = self.form.tensor().field();
        let e = self.sum.eval(alpha)?;
        let e_value = cross_check_e(&self.form, &self.params, alpha, &e, budget)?;
        let bound = self.bound();
        let first = BigRational::from_integer(e_value.clone().into()) <= bound;
        let arc = major_arc_test(field, alpha, &self.params, budget)?;
        let outcome = match (first, arc.member) {
            (true, true) => Dichotomy::Both,
            (true, false) => Dichotomy::BoundHolds,
            (false, true) => Dichotomy::OnArc,
            (false, false) => {
                return Err(Error::ContractViolated(format!(
                    "neither alternative holds: E = {e_value} exceeds {bound} off the major arcs"
                )))
            }
        };
        Ok(DichotomyReport {
            outcome,
            e_value,
            bound,
            arc,
        })
    }
}

/// One dichotomy check with `sigma_G` supplied by the caller.
pub fn dichotomy_check(
    g: &BidegreeForm,
    params: &ArcParams,
    alpha: &LaurentNum,
    sigma: i64,
    budget: &Budget,
) -> Result<DichotomyReport> {
    DichotomyContext::new(g, params, sigma, budget)?.check(alpha, budget)
}

/// Contribution of one shell `M(J+1) \ M(J)` to the discretized integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShellRow {
    pub level: u32,
    pub points: u64,
    pub integral: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShellReport {
    pub precision: usize,
    pub grid_points: u64,
    pub integral: f64,
    /// The part over `M(1)`.
    pub major_integral: f64,
    pub shells: Vec<ShellRow>,
    pub hypotheses_hold: bool,
    pub note: Option<String>,
    pub checks: Vec<Check>,
}

impl ShellReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// `int_T |E|^rho` on the exact grid of `d1 P1 + d2 P2 - d + 1` digits, split
/// into `M(1)` and the shells `M(J+1) \ M(J)`, with the per-shell and total
/// bounds checked when `sigma rho > 2(d-1)` and `2(d-1) P1 >= d1 P1 + d2 P2 + d - 1`.
pub fn arc_shell_integral(
    g: &BidegreeForm,
    params: &ArcParams,
    rho: Rational64,
    sigma: i64,
    budget: &Budget,
) -> Result<ShellReport> {
    if rho <= Rational64::zero() {
        return Err(Error::OutOfRange("rho must be positive".into()));
    }
    let field = g.tensor().field().clone();
    let q = field.q();
    let k = params.precision();
    let sum = BihomSum::new(g, params, budget)?;
    let grid = big_pow(q, k as u64);
    budget.check_grid("arc shell grid", &(&grid * sum.e_zero()))?;
    let grid_points = grid.to_u64().ok_or_else(|| Error::OutOfRange("grid too large".into()))?;
    let top = params.dirichlet_level();
    let levels = (1..=top).map(|j| params.with_level(j)).collect::<Result<Vec<_>>>()?;
    let rows: Vec<(u32, BigUint)> = (0..grid_points)
        .into_par_iter()
        .map(|idx| {
            let a = grid_point(&field, k, idx as u128);
            let e = sum.eval(&a)?;
            let e = cross_check_e(g, params, &a, &e, budget)?;
            for lv in &levels {
                if major_arc_test(&field, &a, lv, budget)?.member {
                    return Ok((lv.j_level, e));
                }
            }
            Err(Error::ContractViolated(format!(
                "grid point {idx} lies outside the major arcs at the Dirichlet level {top}"
            )))
        })
        .collect::<Result<_>>()?;
    let rho_f = *rho.numer() as f64 / *rho.denom() as f64;
    let weight = (q as f64).powi(-(k as i32));
    let mut shells: Vec<ShellRow> = (1..top)
        .map(|level| ShellRow {
            level,
            points: 0,
            integral: 0.0,
        })
        .collect();
    let (mut integral, mut major) = (0.0, 0.0);
    for (level, e) in &rows {
        let v = weight * e.to_f64().unwrap_or(f64::INFINITY).powf(rho_f);
        integral += v;
        if *level == 1 {
            major += v;
        } else {
            let s = &mut shells[*level as usize - 2];
            s.points += 1;
            s.integral += v;
        }
    }

    let d = params.d() as i64;
    let e0 = sum.e_zero().to_f64().unwrap_or(f64::INFINITY);
    let base = e0.powf(rho_f) * (q as f64).powi((-(params.weight() as i64) + d - 1) as i32);
    let mut checks = vec![
        Check::approx_le("M(1) trivial bound", major, base),
        Check::exact_eq("M(J) = T at the Dirichlet level", &rows.len(), &(grid_points as usize)),
    ];
    let sigma_rho = rho * Rational64::from_integer(sigma);
    let hypotheses_hold = sigma_rho > Rational64::from_integer(2 * (d - 1))
        && 2 * (d - 1) * params.p1 as i64 >= params.weight() as i64 + d - 1;
    let mut note = None;
    if hypotheses_hold {
        let delta = sigma as f64 * rho_f - 2.0 * (d - 1) as f64;
        let lead = ((d - 1) as f64).powf(g.n() as f64 * rho_f);
        for s in &shells {
            let j = s.level - 1;
            let bound = lead * base * (q as f64).powf(-delta * j as f64);
            checks.push(Check::approx_le(format!("I_{j} shell bound"), s.integral, bound));
        }
        let qd = (q as f64).powf(-delta);
        checks.push(Check::approx_le("mean value bound", integral, base * (1.0 + lead * qd / (1.0 - qd))));
    } else {
        note = Some("hypotheses not satisfied".to_string());
    }
    Ok(ShellReport {
        precision: k,
        grid_points,
        integral,
        major_integral: major,
        shells,
        hypotheses_hold,
        note,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{Hypersurface, SymTensor};

    fn piece(p: u32, n: usize, d: u32, monos: &[(Vec<u32>, i64)], e: u32, j: u32) -> BidegreeForm {
        let f = Field::prime(p).unwrap();
        let m = monos.iter().map(|(x, c)| (x.clone(), f.from_int(*c))).collect();
        let h = Hypersurface::new(f, n, d, m).unwrap();
        BidegreeForm::build(&SymTensor::from_form(&h).unwrap(), e, j).unwrap()
    }

    #[test]
    fn bilinear_sigma_is_rank() {
        let g = piece(3, 2, 2, &[(vec![2, 0], 1), (vec![0, 2], 1)], 1, 1);
        let r = sigma_estimate(&g, 1, &Budget::default()).unwrap();
        assert!(r.exact);
        assert_eq!((r.sigma, r.dim_estimate), (2, 0));
        let g = piece(3, 2, 2, &[(vec![2, 0], 1)], 1, 1);
        assert_eq!(sigma_estimate(&g, 1, &Budget::default()).unwrap().sigma, 1);
    }

    #[test]
    fn cubic_monomial_sigma() {
        let g = piece(5, 1, 3, &[(vec![3], 1)], 1, 2);
        let r = sigma_estimate(&g, 3, &Budget::default()).unwrap();
        assert_eq!(r.case, VStarCase::Mixed);
        assert_eq!(r.counts[0].1, BigUint::from(9u32));
        assert_eq!(r.sigma, 1);
    }

    #[test]
    fn unstable_with_one_extension() {
        let g = piece(5, 1, 3, &[(vec![3], 1)], 1, 2);
        assert!(matches!(sigma_estimate(&g, 1, &Budget::default()), Err(Error::Unstable)));
    }

    #[test]
    fn dichotomy_at_zero_is_on_arc() {
        let g = piece(3, 2, 2, &[(vec![2, 0], 1), (vec![0, 2], 1)], 1, 1);
        let params = ArcParams::for_piece(&g, 1).unwrap();
        let r = dichotomy_check(&g, &params, &LaurentNum::zero(), 2, &Budget::default()).unwrap();
        assert_eq!(r.outcome, Dichotomy::OnArc);
        let too_high = params.with_level(2).unwrap();
        assert!(dichotomy_check(&g, &too_high, &LaurentNum::zero(), 2, &Budget::default()).is_err());
    }

    #[test]
    fn shells_without_hypotheses() {
        let g = piece(3, 2, 2, &[(vec![2, 0], 1), (vec![0, 2], 1)], 1, 1);
        let params = ArcParams::for_piece(&g, 1).unwrap();
        let r = arc_shell_integral(&g, &params, Rational64::from_integer(4), 2, &Budget::default()).unwrap();
        assert!(!r.hypotheses_hold);
        assert_eq!(r.note.as_deref(), Some("hypotheses not satisfied"));
        assert!(r.all_pass(), "{:?}", r.checks);
    }

    #[test]
    fn shells_for_a_cubic_monomial() {
        let g = piece(5, 1, 3, &[(vec![3], 1)], 1, 2);
        let params = ArcParams::new(1, 2, 2, 2, 1).unwrap();
        let r = arc_shell_integral(&g, &params, Rational64::from_integer(5), 1, &Budget::default()).unwrap();
        assert!(r.hypotheses_hold);
        assert_eq!((r.precision, r.grid_points), (4, 625));
        assert_eq!(r.shells.len(), 1);
        assert_eq!(r.shells[0].points, 624);
        assert!(r.all_pass(), "{:?}", r.checks);
    }

    #[test]
    fn diagonal_cubic_sigma() {
        let g = piece(7, 2, 3, &[(vec![3, 0], 1), (vec![0, 3], 1)], 1, 2);
        let r = sigma_estimate(&g, 3, &Budget::default()).unwrap();
        // x_i y_i = 0: (2Q - 1)^2 points
        assert_eq!(r.counts[1].1, BigUint::from(97u32 * 97));
        assert_eq!(r.estimates, vec![3, 2, 2]);
        assert_eq!(r.sigma, 2);
    }
}

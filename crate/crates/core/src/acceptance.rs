//! The acceptance suite: eleven criteria, each run end to end on exact
//! arithmetic and reported as one pass/fail line with a JSON detail record.

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::circle::{
    best_denominator_exhaustive, rational_approx, shrink_check, sigma_estimate, ArcParams, Decoupling,
    DichotomyContext, Dichotomy,
};
use crate::circle::{diagonal_identity_holds, exact_integral_n, grid_point, point_orthogonality, weyl_difference, AlphaTuple};
use crate::counting::{count_n, CountOptions, Strategy};
use crate::error::{Error, Result};
use crate::ff_core::linalg::rank;
use crate::ff_core::{Degree, Field, FqElem, LaurentNum};
use crate::forms::{
    decomposition_check, fermat_next_form_check, fermat_smallchar_check, smoothness_check, BidegreeForm,
    FormSystem, Hypersurface, HypersurfaceConfig, MorphismCoeffs, SymTensor,
};
use crate::sample::Sampler;

/// Example configurations shipped with the workspace, by file name.
pub const CONFIGS: [(&str, &str); 7] = [
    ("quadric_q3.json", include_str!("../../../configs/quadric_q3.json")),
    ("product_q3.json", include_str!("../../../configs/product_q3.json")),
    ("quadric_f9.json", include_str!("../../../configs/quadric_f9.json")),
    ("diagonal_cubic_q7.json", include_str!("../../../configs/diagonal_cubic_q7.json")),
    ("cubic_line_q5.json", include_str!("../../../configs/cubic_line_q5.json")),
    ("hyperbolic_q3.json", include_str!("../../../configs/hyperbolic/hyperbolic_q3.json")),
    ("hyperbolic_q5.json", include_str!("../../../configs/hyperbolic/hyperbolic_q5.json")),
];

pub fn configured_form(name: &str) -> Result<Hypersurface> {
    let (_, text) = CONFIGS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Config(format!("no bundled config {name}")))?;
    HypersurfaceConfig::from_json(text)?.build()
}

/// `N(1)` by exhaustive search over `F_3^{2 x 3}`, fixed before the kernels were written.
pub const ORACLE_N_QUADRIC_Q3: u64 = 1;
pub const ORACLE_N_PRODUCT_Q3: u64 = 53;
/// `N(1)` for `x1 x2 + x3 x4` at `q = 3` and `q = 5`, same oracle.
pub const ORACLE_N_HYPERBOLIC: [(u32, u64); 2] = [(3, 5409), (5, 183025)];

pub const TITLES: [&str; 11] = [
    "exact integral identity",
    "decomposition identity",
    "per-point orthogonality",
    "Weyl differencing identities",
    "decoupling and T_j bounds",
    "shrinking lemma",
    "major/minor arc dichotomy",
    "rational approximation",
    "sigma_G",
    "small characteristic",
    "ratio trend",
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub budget: Budget,
    pub threads: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            budget: Budget::default(),
            threads: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub seconds: f64,
    pub detail: Value,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.2} s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds
        )
    }
}

/// Runs one criterion; errors become a failed outcome carrying the message.
pub fn run_criterion(id: u8, opts: &SuiteOptions) -> CriterionOutcome {
    let start = Instant::now();
    let result = match id {
        1 => integral_identity(opts),
        2 => decomposition(opts),
        3 => orthogonality(opts),
        4 => weyl(opts),
        5 => decoupling(opts),
        6 => shrinking(opts),
        7 => dichotomy(opts),
        8 => approximation(opts),
        9 => sigma(opts),
        10 => small_characteristic(opts),
        11 => ratio_trend(opts),
        _ => Err(Error::OutOfRange(format!("criterion {id}"))),
    };
    let (pass, detail) = match result {
        Ok(v) => v,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    CriterionOutcome {
        id,
        title: TITLES.get(id as usize - 1).copied().unwrap_or("unknown"),
        pass,
        seconds: start.elapsed().as_secs_f64(),
        detail,
    }
}

pub fn run_all(opts: &SuiteOptions) -> Vec<CriterionOutcome> {
    (1..=11).map(|id| run_criterion(id, opts)).collect()
}

type Outcome = Result<(bool, Value)>;

fn count_opts(opts: &SuiteOptions) -> CountOptions {
    CountOptions {
        threads: opts.threads,
        budget: opts.budget.clone(),
    }
}

fn integral_identity(opts: &SuiteOptions) -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for (name, expected) in [("quadric_q3.json", ORACLE_N_QUADRIC_Q3), ("product_q3.json", ORACLE_N_PRODUCT_Q3)] {
        let start = Instant::now();
        let f = configured_form(name)?;
        let count = count_n(&f, 1, Strategy::RootFirst, &count_opts(opts))?.count;
        let integral = exact_integral_n(&FormSystem::from_form(&f, 1)?, &opts.budget)?;
        let seconds = start.elapsed().as_secs_f64();
        let ok = count == integral && count == BigUint::from(expected) && seconds < 60.0;
        pass &= ok;
        rows.push(json!({
            "config": name,
            "N_count": count.to_string(),
            "N_integral": integral.to_string(),
            "expected": expected.to_string(),
            "within_time": seconds < 60.0,
            "pass": ok,
        }));
    }
    Ok((pass, json!({ "cases": rows })))
}

fn decomposition(opts: &SuiteOptions) -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(opts.seed);
    let mut failures = Vec::new();
    let mut configs = 0;
    for d in [2u32, 3] {
        for e in [1u32, 2] {
            for n in [2usize, 3] {
                for p in [5u32, 7] {
                    let field = Field::prime(p)?;
                    configs += 1;
                    for i in 0..100 {
                        let f = s.form(&field, n, d)?;
                        let g = s.morphism(&field, n, e);
                        if !decomposition_check(&f, &g)? {
                            failures.push(json!({ "d": d, "e": e, "n": n, "q": p, "sample": i }));
                        }
                    }
                }
            }
        }
    }
    let mut box_tuples = 0u32;
    for name in ["quadric_q3.json", "product_q3.json"] {
        let f = configured_form(name)?;
        for idx in 0..729u128 {
            box_tuples += 1;
            let g = MorphismCoeffs::from_box_index(f.field(), 2, 1, idx);
            if !decomposition_check(&f, &g)? {
                failures.push(json!({ "config": name, "box_index": idx.to_string() }));
            }
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    Ok((
        failures.is_empty() && seconds < 120.0,
        json!({ "random_configs": configs, "samples_per_config": 100, "box_tuples": box_tuples, "failures": failures }),
    ))
}

fn orthogonality(opts: &SuiteOptions) -> Outcome {
    let mut s = Sampler::new(opts.seed);
    let mut rows = Vec::new();
    let mut pass = true;
    for name in ["quadric_q3.json", "product_q3.json", "quadric_f9.json", "hyperbolic_q3.json", "diagonal_cubic_q7.json"] {
        let f = configured_form(name)?;
        let sys = FormSystem::from_form(&f, 1)?;
        let mut zeros = 0;
        let mut bad = 0;
        for i in 0..1000 {
            let g = if i == 0 {
                MorphismCoeffs::zero(f.n(), 1)
            } else {
                s.morphism(f.field(), f.n(), 1)
            };
            let value = point_orthogonality(&sys, &g)?;
            let vanish = sys.all_vanish(&g)?;
            zeros += usize::from(vanish);
            let expected = if vanish { BigRational::one() } else { BigRational::zero() };
            if value != expected {
                bad += 1;
            }
        }
        pass &= bad == 0;
        rows.push(json!({ "config": name, "points": 1000, "zeros": zeros, "mismatches": bad }));
    }
    Ok((pass, json!({ "cases": rows })))
}

fn weyl(opts: &SuiteOptions) -> Outcome {
    let mut s = Sampler::new(opts.seed);
    let mut annihilated = 0;
    let mut diagonal = Vec::new();
    let mut pass = true;
    for i in 0..100 {
        let field = Field::prime(if i % 2 == 0 { 5 } else { 7 })?;
        let deg = s.range(1, 4);
        let nvars = s.range(1, 3) as usize;
        let p = s.mpoly(&field, nvars, deg);
        let points: Vec<Vec<FqElem>> = (0..=deg).map(|_| s.point(&field, nvars)).collect();
        let v = weyl_difference(|x: &[FqElem]| p.eval(x, &field), &points, &field)?;
        if v.is_zero() {
            annihilated += 1;
        } else {
            pass = false;
        }
    }
    for deg in 1..=4u32 {
        let mut ok = 0;
        for i in 0..100 {
            let field = Field::prime(if i % 2 == 0 { 5 } else { 7 })?;
            let nvars = s.range(1, 3) as usize;
            let p = s.mpoly(&field, nvars, deg);
            let z = s.point(&field, nvars);
            if diagonal_identity_holds(&p, &field, &z)? {
                ok += 1;
            }
        }
        pass &= ok == 100;
        diagonal.push(json!({ "degree": deg, "holds": ok, "points": 100 }));
    }
    Ok((pass, json!({ "annihilated": annihilated, "polynomials": 100, "diagonal": diagonal })))
}

fn decoupling(opts: &SuiteOptions) -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for name in ["quadric_q3.json", "product_q3.json"] {
        let f = configured_form(name)?;
        let sys = FormSystem::from_form(&f, 1)?;
        let dec = Decoupling::new(&sys, &opts.budget)?;
        let size = AlphaTuple::grid_size(f.field().q(), sys.num_forms())
            .to_u128()
            .ok_or_else(|| Error::OutOfRange("grid".into()))?;
        let mut decouple_fail = 0u64;
        let mut t_fail = vec![0u64; sys.num_forms()];
        for idx in 0..size {
            let a = AlphaTuple::from_grid_index(f.field(), sys.num_forms(), idx);
            decouple_fail += u64::from(!dec.decouple_check(&a)?.pass);
            for (j, fails) in t_fail.iter_mut().enumerate() {
                *fails += u64::from(!dec.lemma_t_check(j, &a)?.pass);
            }
        }
        pass &= decouple_fail == 0 && t_fail.iter().all(|&c| c == 0);
        rows.push(json!({
            "config": name,
            "grid_points": size.to_string(),
            "decoupling_failures": decouple_fail,
            "t_bound_failures": t_fail,
        }));
    }
    Ok((pass, json!({ "tolerance": crate::circle::REL_TOL, "cases": rows })))
}

fn shrinking(opts: &SuiteOptions) -> Outcome {
    let mut s = Sampler::new(opts.seed);
    let mut rows = Vec::new();
    let mut pass = true;
    for p in [3u32, 5] {
        let field = Field::prime(p)?;
        let mut failures = Vec::new();
        for i in 0..100 {
            let params = s.shrink_params(3)?;
            let size = s.range(1, 2) as usize;
            let forms = s.symmetric_forms(&field, size, params.precision())?;
            let c = shrink_check(&forms, &params, &opts.budget)?;
            if !c.pass {
                failures.push(json!({ "sample": i, "lhs": c.lhs, "rhs": c.rhs }));
            }
        }
        pass &= failures.is_empty();
        rows.push(json!({ "q": p, "systems": 100, "failures": failures }));
    }
    Ok((pass, json!({ "max_box_exponent": 3, "cases": rows })))
}

fn dichotomy(opts: &SuiteOptions) -> Outcome {
    let mut rows = Vec::new();
    for name in ["quadric_q3.json", "product_q3.json"] {
        let f = configured_form(name)?;
        let g = BidegreeForm::build(&SymTensor::from_form(&f)?, 1, 1)?;
        let params = ArcParams::for_piece(&g, 1)?;
        let sigma = sigma_estimate(&g, 1, &opts.budget)?.sigma;
        let ctx = DichotomyContext::new(&g, &params, sigma, &opts.budget)?;
        let k = params.precision();
        let size = (f.field().q() as u128).pow(k as u32);
        let (mut bound, mut arc, mut both) = (0, 0, 0);
        for idx in 0..size {
            // a double failure surfaces as an error and fails the criterion
            match ctx.check(&grid_point(f.field(), k, idx), &opts.budget)?.outcome {
                Dichotomy::BoundHolds => bound += 1,
                Dichotomy::OnArc => arc += 1,
                Dichotomy::Both => both += 1,
            }
        }
        rows.push(json!({
            "config": name,
            "params": params,
            "sigma": sigma,
            "grid_points": size.to_string(),
            "bound_holds": bound,
            "on_arc": arc,
            "both": both,
        }));
    }
    Ok((true, json!({ "cases": rows })))
}

fn approximation(opts: &SuiteOptions) -> Outcome {
    let mut s = Sampler::new(opts.seed);
    let mut rows = Vec::new();
    let mut pass = true;
    for p in [3u32, 5] {
        let field = Field::prime(p)?;
        let mut failures = Vec::new();
        for i in 0..500 {
            let m = s.range(1, 4);
            let int = s.poly_below(&field, 3);
            let alpha = s.exact_fraction(&field, 2 * m as usize + 1).add(&LaurentNum::from_poly(&int), &field);
            let r = rational_approx(&field, &alpha, m)?;
            let (_, best) = best_denominator_exhaustive(&field, &alpha, m, &opts.budget)?;
            let coprime = r.a.gcd(&r.g, &field).deg() == Degree::Finite(0);
            let ok = r.g.is_monic()
                && r.g.deg().le(m as i64)
                && coprime
                && r.err_exact
                && r.err_exponent < Degree::Finite(-(m as i64))
                && r.err_exponent == best;
            if !ok {
                failures.push(json!({ "sample": i, "m": m, "err": r.err_exponent.to_string(), "best": best.to_string() }));
            }
        }
        pass &= failures.is_empty();
        rows.push(json!({ "q": p, "samples": 500, "failures": failures }));
    }
    Ok((pass, json!({ "max_m": 4, "cases": rows })))
}

/// `sum_{i,j} a_ij x_i x_j` from a symmetric matrix over an odd field.
fn quadratic_form(field: &Field, a: &[Vec<FqElem>]) -> Result<Hypersurface> {
    let n = a.len();
    let mut monos = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut exps = vec![0u32; n];
            exps[i] += 1;
            exps[j] += 1;
            let c = if i == j { a[i][j] } else { field.add(a[i][j], a[i][j]) };
            monos.push((exps, c));
        }
    }
    Hypersurface::new(field.clone(), n, 2, monos)
}

fn symmetric_of_rank(s: &mut Sampler, field: &Field, n: usize, target: usize) -> Vec<Vec<FqElem>> {
    loop {
        let mut a = vec![vec![FqElem::ZERO; n]; n];
        if target < n {
            // a random symmetric block on the first `target` coordinates, moved by a random change of basis
            let mut b = vec![vec![FqElem::ZERO; n]; n];
            for i in 0..target {
                for j in i..target {
                    let v = s.elem(field);
                    b[i][j] = v;
                    b[j][i] = v;
                }
            }
            let p: Vec<Vec<FqElem>> = (0..n).map(|_| s.point(field, n)).collect();
            if rank(field, &p, n) < n {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let mut acc = FqElem::ZERO;
                    for k in 0..n {
                        for l in 0..n {
                            acc = field.add(acc, field.mul(field.mul(p[k][i], b[k][l]), p[l][j]));
                        }
                    }
                    a[i][j] = acc;
                }
            }
        } else {
            for i in 0..n {
                for j in i..n {
                    let v = s.elem(field);
                    a[i][j] = v;
                    a[j][i] = v;
                }
            }
        }
        if rank(field, &a, n) == target && a.iter().flatten().any(|c| !c.is_zero()) {
            return a;
        }
    }
}

fn sigma(opts: &SuiteOptions) -> Outcome {
    let mut s = Sampler::new(opts.seed);
    let field = Field::prime(5)?;
    let mut pass = true;
    let mut bilinear = Vec::new();
    for n in 1..=4usize {
        for (target, expected) in [(n, n as i64), (n - 1, n as i64 - 1)] {
            if target == 0 {
                continue;
            }
            let a = symmetric_of_rank(&mut s, &field, n, target);
            let f = quadratic_form(&field, &a)?;
            let g = BidegreeForm::build(&SymTensor::from_form(&f)?, 1, 1)?;
            let r = sigma_estimate(&g, 1, &opts.budget)?;
            let ok = r.exact && r.sigma == expected;
            pass &= ok;
            bilinear.push(json!({ "n": n, "rank": target, "sigma": r.sigma, "expected": expected, "pass": ok }));
        }
    }
    let mut configured = Vec::new();
    for name in ["quadric_q3.json", "product_q3.json", "quadric_f9.json", "diagonal_cubic_q7.json", "hyperbolic_q3.json"] {
        let f = configured_form(name)?;
        let smooth = smoothness_check(&f, 2, &opts.budget)?.no_singular_point_found;
        if !smooth {
            configured.push(json!({ "config": name, "smooth": false }));
            continue;
        }
        let tensor = SymTensor::from_form(&f)?;
        for j in 1..=f.d() {
            let g = BidegreeForm::build(&tensor, 1, j)?;
            let r = sigma_estimate(&g, 3, &opts.budget)?;
            let holds = r.sigma >= f.n() as i64;
            if r.exact {
                pass &= holds;
            }
            configured.push(json!({
                "config": name,
                "piece": j,
                "case": r.case,
                "exact": r.exact,
                "estimates": r.estimates,
                "sigma": r.sigma,
                "sigma_at_least_n": holds,
                "asserted": r.exact,
            }));
        }
    }
    Ok((pass, json!({ "bilinear": bilinear, "configured": configured })))
}

fn small_characteristic(opts: &SuiteOptions) -> Outcome {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut pass = true;
    for (e, p) in [(1u32, 2u32), (1, 3), (1, 5), (2, 2)] {
        let r = fermat_smallchar_check(e, p, 2, &opts.budget)?;
        pass &= r.f_next_vanishes;
        rows.push(json!({ "e": e, "p": p, "d": r.d, "F_next_vanishes": r.f_next_vanishes }));
    }
    let control = fermat_next_form_check(3, 5, 1, 2, &opts.budget)?;
    pass &= !control.f_next_vanishes;
    let seconds = start.elapsed().as_secs_f64();
    pass &= seconds < 60.0;
    Ok((
        pass,
        json!({
            "cases": rows,
            "control": { "d": 3, "p": 5, "e": 1, "F_next_vanishes": control.f_next_vanishes, "surviving_terms": control.surviving_terms },
        }),
    ))
}

fn ratio_trend(opts: &SuiteOptions) -> Outcome {
    let mut rows = Vec::new();
    let mut distances = Vec::new();
    let mut sane = true;
    for (name, (q, expected)) in ["hyperbolic_q3.json", "hyperbolic_q5.json"].into_iter().zip(ORACLE_N_HYPERBOLIC) {
        let f = configured_form(name)?;
        let r = count_n(&f, 1, Strategy::RootFirst, &count_opts(opts))?;
        let positive = r.ratio.is_positive();
        let distance = (&r.ratio - BigRational::one()).abs();
        sane &= positive && r.count == BigUint::from(expected) && r.q == q;
        rows.push(json!({
            "q": r.q,
            "N": r.count.to_string(),
            "oracle_N": expected.to_string(),
            "muhat": r.muhat,
            "ratio": r.ratio.to_string(),
            "ratio_float": r.ratio_float(),
            "distance_from_one": distance.to_f64(),
        }));
        distances.push(distance);
    }
    let trend = distances[1] < distances[0];
    Ok((sane && trend, json!({ "rows": rows, "closer_at_larger_q": trend })))
}

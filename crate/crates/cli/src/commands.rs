use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use ffmoduli::acceptance::{run_criterion, SuiteOptions};
use ffmoduli::budget::big_pow;
use ffmoduli::circle::{
    arc_shell_integral, best_denominator_exhaustive, count_chain_check, diagonal_identity_holds, eval_e,
    exact_integral_n, grid_point, major_arc_exhaustive, major_arc_test, n_counts, rational_approx, shrink_check,
    sigma_estimate, weyl_difference, AlphaTuple, ArcParams, Decoupling, Dichotomy, DichotomyContext, NCountKind,
};
use ffmoduli::counting::{count_n, ratio_report, CountOptions};
use ffmoduli::ff_core::{Degree, Field, FqElem, LaurentNum, Poly};
use ffmoduli::forms::{
    decomposition_check, fermat_next_form_check, fermat_smallchar_check, smoothness_check, BidegreeForm,
    FormSystem, Hypersurface, HypersurfaceConfig, MorphismCoeffs, SymTensor,
};
use ffmoduli::sample::Sampler;
use ffmoduli::{Budget, Error};

use crate::artifact::{emit, Artifact};
use crate::{Cli, Command, PieceArgs, RunConfig};

/// Failed checks listed in full before the rest are only counted.
const LISTED_FAILURES: usize = 20;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::ContractViolated(_) | Error::CrossCheck(_) | Error::OrthogonalityViolated) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::CountN => "count-n",
        Command::CircleExact => "circle-exact",
        Command::VerifyDecomposition { .. } => "verify-decomposition",
        Command::WeylIdentities { .. } => "weyl-identities",
        Command::Decouple { .. } => "decouple",
        Command::LemmaTBound { .. } => "lemma-t-bound",
        Command::NCounts { .. } => "n-counts",
        Command::Shrink { .. } => "shrink",
        Command::Approx { .. } => "approx",
        Command::MajorArc { .. } => "major-arc",
        Command::Dichotomy { .. } => "dichotomy",
        Command::Sigma { .. } => "sigma",
        Command::MeanValue { .. } => "mean-value",
        Command::Smallchar { .. } => "smallchar",
        Command::RatioReport { .. } => "ratio-report",
        Command::Acceptance { .. } => "acceptance",
    }
}

pub fn dispatch(cli: &Cli) -> CliResult<ExitCode> {
    let run = &cli.run;
    if let Some(t) = run.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let budget = budget(run)?;
    let name = command_name(&cli.command);
    let result = run_command(&cli.command, run, &budget, name);
    let art = match result {
        Ok(art) => art,
        Err(err) if err.exit_code() == 1 => {
            // a violated contract is a failed assertion: report it in the artifact
            let mut art = Artifact::new(name, run.seed, json!({}));
            art.require(false, json!({ "error": err.to_string() }));
            art
        }
        Err(err) => return Err(err),
    };
    let pass = art.pass();
    if !pass {
        for f in art.failures().iter().take(LISTED_FAILURES) {
            eprintln!("failed: {f}");
        }
    }
    emit(&art.into_value(), run.out.as_deref())?;
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn budget(run: &RunConfig) -> CliResult<Budget> {
    let mut b = Budget::default();
    if let Some(v) = &run.budget_box {
        b.box_limit = v.clone();
    }
    if let Some(v) = &run.budget_grid {
        b.grid_limit = v.clone();
    }
    if b.box_limit.is_zero() || b.grid_limit.is_zero() {
        return Err(CliError::Usage("budgets must be positive".into()));
    }
    Ok(b.with_env_override()?)
}

fn load_form(run: &RunConfig) -> CliResult<Hypersurface> {
    let path = run
        .config
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs --config".into()))?;
    read_form(path)
}

fn read_form(path: &Path) -> CliResult<Hypersurface> {
    let text = std::fs::read_to_string(path)?;
    Ok(HypersurfaceConfig::from_json(&text)?.build()?)
}

fn base_params(run: &RunConfig, f: Option<&Hypersurface>) -> Value {
    let mut v = json!({
        "e": run.e,
        "strategy": run.strategy,
    });
    if let Some(path) = &run.config {
        v["config"] = json!(path.display().to_string());
    }
    if let Some(f) = f {
        v["q"] = json!(f.field().q());
        v["n"] = json!(f.n());
        v["d"] = json!(f.d());
    }
    v
}

fn count_options(run: &RunConfig, budget: &Budget) -> CountOptions {
    CountOptions {
        threads: run.threads,
        budget: budget.clone(),
    }
}

fn poly_json(p: &Poly) -> Value {
    json!(p.coeffs().iter().map(|c| c.index()).collect::<Vec<_>>())
}

fn digits(field: &Field, given: &[u32], depth: usize) -> CliResult<Vec<FqElem>> {
    let mut out = given
        .iter()
        .map(|&d| field.from_index(d))
        .collect::<ffmoduli::Result<Vec<_>>>()?;
    if out.len() < depth {
        out.resize(depth, FqElem::ZERO);
    }
    Ok(out)
}

fn piece_form(run: &RunConfig, f: &Hypersurface, j: u32) -> CliResult<BidegreeForm> {
    Ok(BidegreeForm::build(&SymTensor::from_form(f)?, run.e, j)?)
}

fn piece_params(g: &BidegreeForm, piece: &PieceArgs) -> CliResult<ArcParams> {
    let (p1, p2) = g.box_exponents();
    Ok(ArcParams::new(
        g.d1(),
        g.d2(),
        piece.p1.unwrap_or(p1),
        piece.p2.unwrap_or(p2),
        piece.level,
    )?)
}

fn record_failure(art: &mut Artifact, listed: &mut usize, check: Value) {
    if *listed < LISTED_FAILURES {
        art.require(false, check);
    }
    *listed += 1;
}

fn run_command(cmd: &Command, run: &RunConfig, budget: &Budget, name: &str) -> CliResult<Artifact> {
    match cmd {
        Command::CountN => {
            let f = load_form(run)?;
            let r = count_n(&f, run.e, run.strategy, &count_options(run, budget))?;
            let mut art = Artifact::new(name, run.seed, base_params(run, Some(&f)));
            art.set("q", r.q);
            art.set("e", r.e);
            art.set("N", r.count.to_string());
            art.set("muhat", r.muhat);
            art.set("ratio", r.ratio.to_string());
            art.set("ratio_float", r.ratio_float());
            art.set("box_size", r.box_size.to_string());
            Ok(art)
        }
        Command::CircleExact => {
            let f = load_form(run)?;
            let counted = count_n(&f, run.e, run.strategy, &count_options(run, budget))?.count;
            let integral = exact_integral_n(&FormSystem::from_form(&f, run.e)?, budget)?;
            let mut art = Artifact::new(name, run.seed, base_params(run, Some(&f)));
            let matched = counted == integral;
            art.set("N_count", counted.to_string());
            art.set("N_integral", integral.to_string());
            art.set("match", matched);
            art.require(matched, json!({ "check": "N_count == N_integral" }));
            Ok(art)
        }
        Command::VerifyDecomposition { samples, full } => {
            let f = load_form(run)?;
            let field = f.field().clone();
            let n = f.n();
            let mut art = Artifact::new(name, run.seed, base_params(run, Some(&f)));
            let mut listed = 0;
            let checked = if *full {
                let vars = n * (run.e as usize + 1) * (run.e as usize + 2) / 2;
                let size = big_pow(field.q(), vars as u64);
                budget.check_box("degree box", &size)?;
                let size = size.to_u128().ok_or_else(|| CliError::Usage("box too large".into()))?;
                for idx in 0..size {
                    let g = MorphismCoeffs::from_box_index(&field, n, run.e, idx);
                    if !decomposition_check(&f, &g)? {
                        record_failure(&mut art, &mut listed, json!({ "box_index": idx.to_string() }));
                    }
                }
                size
            } else {
                let mut s = Sampler::new(run.seed);
                for i in 0..*samples {
                    let g = s.morphism(&field, n, run.e);
                    if !decomposition_check(&f, &g)? {
                        record_failure(&mut art, &mut listed, json!({ "sample": i }));
                    }
                }
                *samples as u128
            };
            art.set("checked", checked.to_string());
            art.set("failed", listed);
            Ok(art)
        }
        Command::WeylIdentities {
            p,
            samples,
            max_degree,
            vars,
        } => {
            let field = Field::prime(*p)?;
            let mut s = Sampler::new(run.seed);
            let mut art = Artifact::new(
                name,
                run.seed,
                json!({ "q": p, "samples": samples, "max_degree": max_degree, "vars": vars }),
            );
            let mut rows = Vec::new();
            for deg in 0..=*max_degree {
                let (mut vanish, mut diagonal) = (0, 0);
                for _ in 0..*samples {
                    let poly = s.mpoly(&field, *vars, deg);
                    let points: Vec<Vec<FqElem>> = (0..=deg).map(|_| s.point(&field, *vars)).collect();
                    let v = weyl_difference(|x: &[FqElem]| poly.eval(x, &field), &points, &field)?;
                    vanish += usize::from(v.is_zero());
                    let z = s.point(&field, *vars);
                    diagonal += usize::from(diagonal_identity_holds(&poly, &field, &z)?);
                }
                art.require(vanish == *samples, json!({ "degree": deg, "check": "P_{deg+1} = 0", "held": vanish }));
                art.require(diagonal == *samples, json!({ "degree": deg, "check": "diagonal identity", "held": diagonal }));
                rows.push(json!({ "degree": deg, "vanishing": vanish, "diagonal": diagonal }));
            }
            art.set("degrees", rows);
            Ok(art)
        }
        Command::Decouple { samples } | Command::LemmaTBound { samples, .. } => {
            let only_t = matches!(cmd, Command::LemmaTBound { .. });
            let pieces: Option<usize> = match cmd {
                Command::LemmaTBound { j, .. } => *j,
                _ => None,
            };
            let f = load_form(run)?;
            let sys = FormSystem::from_form(&f, run.e)?;
            let dec = Decoupling::new(&sys, budget)?;
            let forms = sys.num_forms();
            let size = AlphaTuple::grid_size(f.field().q(), forms)
                .to_u128()
                .ok_or_else(|| CliError::Usage("grid too large".into()))?;
            let indices: Vec<u128> = if *samples == 0 {
                (0..size).collect()
            } else {
                let mut s = Sampler::new(run.seed);
                (0..*samples)
                    .map(|_| {
                        let hi = s.below(u64::MAX) as u128;
                        ((hi << 64) | s.below(u64::MAX) as u128) % size
                    })
                    .collect()
            };
            let js: Vec<usize> = match pieces {
                Some(j) if j < forms => vec![j],
                Some(j) => return Err(CliError::Usage(format!("no piece {j}; there are {forms}"))),
                None => (0..forms).collect(),
            };
            let mut params = base_params(run, Some(&f));
            params["grid_points"] = json!(size.to_string());
            params["sampled"] = json!(indices.len());
            let mut art = Artifact::new(name, run.seed, params);
            let mut listed = 0;
            let (mut decouple_fail, mut t_fail) = (0u64, vec![0u64; forms]);
            for idx in &indices {
                let a = AlphaTuple::from_grid_index(f.field(), forms, *idx);
                if !only_t {
                    let c = dec.decouple_check(&a)?;
                    if !c.pass {
                        decouple_fail += 1;
                        record_failure(&mut art, &mut listed, json!({ "alpha_index": idx.to_string(), "check": c }));
                    }
                }
                for &j in &js {
                    let c = dec.lemma_t_check(j, &a)?;
                    if !c.pass {
                        t_fail[j] += 1;
                        record_failure(&mut art, &mut listed, json!({ "alpha_index": idx.to_string(), "check": c }));
                    }
                }
            }
            if !only_t {
                art.set("decoupling_failures", decouple_fail);
            }
            art.set("t_bound_failures", t_fail);
            Ok(art)
        }
        Command::NCounts { piece, alpha } => {
            let f = load_form(run)?;
            let g = piece_form(run, &f, piece.j)?;
            let params = piece_params(&g, piece)?;
            let a = LaurentNum::from_fraction_digits(&digits(f.field(), alpha, params.precision())?);
            let e = eval_e(&g, &params, &a, budget)?
                .is_rational_integer()
                .ok_or_else(|| Error::CrossCheck("E is not a rational integer".into()))?;
            let n2: Vec<String> = (0..params.d2)
                .map(|t| n_counts(&g, &params, &a, t, NCountKind::N2, budget).map(|c| c.to_string()))
                .collect::<ffmoduli::Result<_>>()?;
            let n1: Vec<String> = (0..=params.d1)
                .map(|t| n_counts(&g, &params, &a, t, NCountKind::N1, budget).map(|c| c.to_string()))
                .collect::<ffmoduli::Result<_>>()?;
            let chain = count_chain_check(&g, &params, &a, budget)?;
            let mut p = base_params(run, Some(&f));
            p["piece"] = json!(params);
            p["j"] = json!(piece.j);
            let mut art = Artifact::new(name, run.seed, p);
            art.set("E", e.to_string());
            art.set("N2", n2);
            art.set("N1", n1);
            art.require(chain.pass, json!(chain));
            art.set("count_chain", chain);
            Ok(art)
        }
        Command::Shrink {
            p,
            samples,
            max_exponent,
            size,
        } => {
            let field = Field::prime(*p)?;
            let mut s = Sampler::new(run.seed);
            let mut art = Artifact::new(
                name,
                run.seed,
                json!({ "q": p, "samples": samples, "max_exponent": max_exponent, "max_size": size }),
            );
            let mut listed = 0;
            for i in 0..*samples {
                let params = s.shrink_params(*max_exponent)?;
                let n = s.range(1, (*size).max(1)) as usize;
                let forms = s.symmetric_forms(&field, n, params.precision())?;
                let c = shrink_check(&forms, &params, budget)?;
                if !c.pass {
                    record_failure(
                        &mut art,
                        &mut listed,
                        json!({ "sample": i, "A": params.a.to_string(), "Z1": params.z1.to_string(), "Z2": params.z2.to_string(), "check": c }),
                    );
                }
            }
            art.set("failed", listed);
            Ok(art)
        }
        Command::Approx { p, m, alpha, samples } => {
            let field = Field::prime(*p)?;
            let depth = 2 * *m as usize + 1;
            let mut art = Artifact::new(name, run.seed, json!({ "q": p, "m": m }));
            let check_one = |art: &mut Artifact, a: &LaurentNum| -> CliResult<Value> {
                let r = rational_approx(&field, a, *m)?;
                let (g_best, best) = best_denominator_exhaustive(&field, a, *m, budget)?;
                let coprime = r.a.gcd(&r.g, &field).deg() == Degree::Finite(0);
                let row = json!({
                    "a": poly_json(&r.a),
                    "g": poly_json(&r.g),
                    "err_exponent": r.err_exponent.to_string(),
                    "err_exact": r.err_exact,
                    "exhaustive_g": poly_json(&g_best),
                    "exhaustive_exponent": best.to_string(),
                });
                let ok = r.g.is_monic() && coprime && r.g.deg().le(*m as i64) && (!r.err_exact || r.err_exponent == best);
                art.require(ok, row.clone());
                Ok(row)
            };
            if alpha.is_empty() {
                let mut s = Sampler::new(run.seed);
                for _ in 0..*samples {
                    let a = s.exact_fraction(&field, depth);
                    check_one(&mut art, &a)?;
                }
                art.set("samples", samples);
            } else {
                let mut d = digits(&field, alpha, 0)?;
                d.reverse();
                let a = LaurentNum::from_terms(-(d.len() as i64), d, None);
                let row = check_one(&mut art, &a)?;
                art.set("approximation", row);
            }
            Ok(art)
        }
        Command::MajorArc { piece, alpha } => {
            let f = load_form(run)?;
            let g = piece_form(run, &f, piece.j)?;
            let params = piece_params(&g, piece)?;
            let a = LaurentNum::from_fraction_digits(&digits(f.field(), alpha, params.precision())?);
            let r = major_arc_test(f.field(), &a, &params, budget)?;
            let exhaustive = major_arc_exhaustive(f.field(), &a, &params, budget)?;
            let mut p = base_params(run, Some(&f));
            p["piece"] = json!(params);
            let mut art = Artifact::new(name, run.seed, p);
            art.set("member", r.member);
            art.set("via_fallback", r.via_fallback);
            art.set(
                "witness",
                r.witness.as_ref().map(|(a, g)| json!({ "a": poly_json(a), "g": poly_json(g) })),
            );
            art.set("exhaustive_member", exhaustive);
            art.require(exhaustive == r.member, json!({ "check": "search agrees with exhaustive membership" }));
            Ok(art)
        }
        Command::Dichotomy { piece, sigma } => {
            let f = load_form(run)?;
            let g = piece_form(run, &f, piece.j)?;
            let params = piece_params(&g, piece)?;
            let sigma = match sigma {
                Some(s) => *s,
                None => sigma_estimate(&g, 3, budget)?.sigma,
            };
            let ctx = DichotomyContext::new(&g, &params, sigma, budget)?;
            let k = params.precision();
            let size = big_pow(f.field().q(), k as u64);
            budget.check_grid("dichotomy grid", &size)?;
            let size = size.to_u128().ok_or_else(|| CliError::Usage("grid too large".into()))?;
            let (mut bound, mut arc, mut both) = (0u64, 0u64, 0u64);
            for idx in 0..size {
                match ctx.check(&grid_point(f.field(), k, idx), budget)?.outcome {
                    Dichotomy::BoundHolds => bound += 1,
                    Dichotomy::OnArc => arc += 1,
                    Dichotomy::Both => both += 1,
                }
            }
            let mut p = base_params(run, Some(&f));
            p["piece"] = json!(params);
            p["sigma"] = json!(sigma);
            let mut art = Artifact::new(name, run.seed, p);
            art.set("grid_points", size.to_string());
            art.set("bound", ctx.bound().to_string());
            art.set("bound_holds", bound);
            art.set("on_arc", arc);
            art.set("both", both);
            Ok(art)
        }
        Command::Sigma { j, m_max } => {
            let f = load_form(run)?;
            let smooth = smoothness_check(&f, 2, budget)?.no_singular_point_found;
            let tensor = SymTensor::from_form(&f)?;
            let js: Vec<u32> = match j {
                Some(j) => vec![*j],
                None => (1..=f.d() * run.e).collect(),
            };
            let mut p = base_params(run, Some(&f));
            p["m_max"] = json!(m_max);
            let mut art = Artifact::new(name, run.seed, p);
            let mut rows = Vec::new();
            for j in js {
                let g = BidegreeForm::build(&tensor, run.e, j)?;
                let r = sigma_estimate(&g, *m_max, budget)?;
                let at_least_n = r.sigma >= f.n() as i64;
                if r.exact && smooth {
                    art.require(at_least_n, json!({ "piece": j, "check": "sigma >= n", "sigma": r.sigma }));
                }
                rows.push(json!({
                    "piece": j,
                    "case": r.case,
                    "ambient_dim": r.ambient_dim,
                    "exact": r.exact,
                    "heuristic": !r.exact,
                    "counts": r.counts.iter().map(|(m, c)| json!({ "m": m, "count": c.to_string() })).collect::<Vec<_>>(),
                    "estimates": r.estimates,
                    "dim_estimate": r.dim_estimate,
                    "sigma": r.sigma,
                    "sigma_at_least_n": at_least_n,
                }));
            }
            art.set("smooth_up_to_m2", smooth);
            art.set("pieces", rows);
            Ok(art)
        }
        Command::MeanValue { piece, rho, sigma } => {
            let f = load_form(run)?;
            let g = piece_form(run, &f, piece.j)?;
            let params = piece_params(&g, piece)?;
            let sigma = match sigma {
                Some(s) => *s,
                None => sigma_estimate(&g, 3, budget)?.sigma,
            };
            let r = arc_shell_integral(&g, &params, *rho, sigma, budget)?;
            let mut p = base_params(run, Some(&f));
            p["piece"] = json!(params);
            p["rho"] = json!(rho.to_string());
            p["sigma"] = json!(sigma);
            let mut art = Artifact::new(name, run.seed, p);
            for c in &r.checks {
                art.require(c.pass, json!(c));
            }
            art.set("report", &r);
            Ok(art)
        }
        Command::Smallchar { p, n, d } => {
            let (r, asserted) = match d {
                Some(d) => (fermat_next_form_check(*d, *p, run.e, *n, budget)?, false),
                None => (fermat_smallchar_check(run.e, *p, *n, budget)?, true),
            };
            let mut art = Artifact::new(name, run.seed, json!({ "e": run.e, "p": p, "q": p, "n": n }));
            art.set("d", r.d);
            art.set("F_next_vanishes", r.f_next_vanishes);
            art.set("surviving_terms", r.surviving_terms);
            art.set("kummer_valuation", r.kummer_valuation);
            art.set("chain_count", r.chain_count);
            art.set("vanishing_chains", r.vanishing_chains);
            art.set("chains_reach_d_minus_1", r.chains_reach_d_minus_1);
            if asserted {
                art.require(r.f_next_vanishes, json!({ "check": "F_{e+1} vanishes", "d": r.d }));
            }
            Ok(art)
        }
        Command::RatioReport { dir } => {
            let mut paths: Vec<_> = std::fs::read_dir(dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            if paths.is_empty() {
                return Err(CliError::Usage(format!("no .json configs in {}", dir.display())));
            }
            let forms = paths.iter().map(|p| read_form(p)).collect::<CliResult<Vec<_>>>()?;
            let rows = ratio_report(&forms, run.e, run.strategy, &count_options(run, budget))?;
            let mut p = base_params(run, None);
            p["dir"] = json!(dir.display().to_string());
            p["configs"] = json!(paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>());
            p["q"] = json!(rows.iter().map(|r| r.q).collect::<Vec<_>>());
            let mut art = Artifact::new(name, run.seed, p);
            let table: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let dist = (&r.ratio - BigRational::one()).to_f64().map(f64::abs);
                    json!({
                        "q": r.q,
                        "N": r.count.to_string(),
                        "q_to_muhat": r.q_to_muhat.to_string(),
                        "ratio": r.ratio.to_string(),
                        "ratio_float": r.ratio.to_f64(),
                        "distance_from_one": dist,
                    })
                })
                .collect();
            art.set("rows", table);
            Ok(art)
        }
        Command::Acceptance { only } => {
            let opts = SuiteOptions {
                seed: run.seed,
                budget: budget.clone(),
                threads: run.threads,
            };
            let ids: Vec<u8> = if only.is_empty() { (1..=11).collect() } else { only.clone() };
            let mut art = Artifact::new(name, run.seed, json!({ "criteria": ids }));
            let mut rows = Vec::new();
            let mut timing = serde_json::Map::new();
            for id in ids {
                let o = run_criterion(id, &opts);
                eprintln!("{}", o.line());
                timing.insert(id.to_string(), json!(o.seconds));
                art.require(o.pass, json!({ "criterion": id, "title": o.title }));
                rows.push(json!({ "id": o.id, "title": o.title, "pass": o.pass, "detail": o.detail }));
            }
            art.set("results", rows);
            art.set("timing", timing);
            Ok(art)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_are_padded() {
        let f = Field::prime(3).unwrap();
        let d = digits(&f, &[1, 2], 4).unwrap();
        assert_eq!(d, vec![FqElem::ONE, f.from_int(2), FqElem::ZERO, FqElem::ZERO]);
        assert!(digits(&f, &[3], 1).is_err());
    }

    #[test]
    fn contract_errors_are_assertion_failures() {
        assert_eq!(CliError::Core(Error::ContractViolated("x".into())).exit_code(), 1);
        assert_eq!(CliError::Core(Error::Unstable).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}

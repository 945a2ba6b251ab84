use num_bigint::BigUint;

use super::bihom::ArcParams;
use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::ff_core::{Degree, Field, LaurentNum, Poly};

/// `a / g` with `g` monic and `gcd(a, g) = 1`, and `log_q |g alpha - a|`.
/// When `alpha` is only known to finite precision the exponent is an upper
/// bound, flagged by `err_exact = false`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalApprox {
    pub a: Poly,
    pub g: Poly,
    pub err_exponent: Degree,
    pub err_exact: bool,
}

/// The fractional part of `alpha` truncated to `depth` digits, as `b / u^depth`.
fn truncation(alpha: &LaurentNum, depth: usize) -> Result<(Poly, Poly)> {
    let mut digits = alpha.fraction_digits(depth)?;
    digits.reverse();
    Ok((Poly::from_coeffs(digits), Poly::monomial(crate::ff_core::FqElem::ONE, depth)))
}

/// Continued-fraction convergents `(p_k, g_k)` of `num / den`, `deg num < deg den`.
fn convergents(field: &Field, num: &Poly, den: &Poly) -> Result<Vec<(Poly, Poly)>> {
    let (mut p_prev, mut p) = (Poly::one(), Poly::zero());
    let (mut g_prev, mut g) = (Poly::zero(), Poly::one());
    let mut out = vec![(p.clone(), g.clone())];
    let (mut a, mut b) = (den.clone(), num.clone());
    while !b.is_zero() {
        let (quot, rem) = a.divrem(&b, field)?;
        let p_next = quot.mul(&p, field).add(&p_prev, field);
        let g_next = quot.mul(&g, field).add(&g_prev, field);
        p_prev = std::mem::replace(&mut p, p_next);
        g_prev = std::mem::replace(&mut g, g_next);
        out.push((p.clone(), g.clone()));
        a = b;
        b = rem;
    }
    Ok(out)
}

/// The convergent of the `depth`-digit truncation with the largest degree
/// `<= max_deg`, scaled so the denominator is monic.
fn best_convergent(field: &Field, alpha: &LaurentNum, depth: usize, max_deg: usize) -> Result<(Poly, Poly)> {
    let (b, den) = truncation(alpha, depth)?;
    let conv = convergents(field, &b, &den)?;
    let (p, g) = conv
        .into_iter()
        .take_while(|(_, g)| g.deg().le(max_deg as i64))
        .last()
        .expect("the zeroth convergent has denominator 1");
    let lead = field.inv(g.leading())?;
    Ok((p.scale(lead, field), g.scale(lead, field)))
}

fn residual(field: &Field, alpha: &LaurentNum, a: &Poly, g: &Poly) -> LaurentNum {
    alpha.mul_poly(g, field).sub(&LaurentNum::from_poly(a), field)
}

/// Dirichlet approximation: monic `g` with `|g| <= q^m` and `|g alpha - a| < q^{-m}`,
/// from the continued fraction of the `2m+1`-digit truncation of `alpha`.
pub fn rational_approx(field: &Field, alpha: &LaurentNum, m: u32) -> Result<RationalApprox> {
    let depth = 2 * m as usize + 1;
    let (p, g) = best_convergent(field, alpha, depth, m as usize)?;
    let a = p.add(&g.mul(&alpha.integer_part()?, field), field);
    let err = residual(field, alpha, &a, &g);
    if !err.abs_below(-(m as i64))? {
        return Err(Error::ContractViolated(format!(
            "convergent misses the Dirichlet bound at m = {m}"
        )));
    }
    let (err_exponent, err_exact) = match err.ord() {
        Ok(d) => (d, true),
        Err(_) => (err.ord_upper_bound(), false),
    };
    Ok(RationalApprox {
        a,
        g,
        err_exponent,
        err_exact,
    })
}

/// Exhaustive oracle on the `2m+1`-digit truncation: the smallest
/// `log_q ||g x||` over monic `g` of degree `<= m`, and the first `g` (by
/// degree) attaining it.
pub fn best_denominator_exhaustive(field: &Field, alpha: &LaurentNum, m: u32, budget: &Budget) -> Result<(Poly, Degree)> {
    let depth = 2 * m as usize + 1;
    let (b, den) = truncation(alpha, depth)?;
    budget.check_box("denominator search", &monic_count(field.q(), m))?;
    let mut best: Option<(Poly, Degree)> = None;
    for deg in 0..=m as usize {
        for g in Poly::monic_of_degree(field, deg) {
            let rem = g.mul(&b, field).rem(&den, field)?;
            let e = match rem.deg() {
                Degree::Finite(k) => Degree::Finite(k - depth as i64),
                Degree::NegInfinity => Degree::NegInfinity,
            };
            if best.as_ref().is_none_or(|(_, cur)| e < *cur) {
                best = Some((g, e));
            }
        }
    }
    Ok(best.expect("g = 1 is always tried"))
}

fn monic_count(q: u32, max_deg: u32) -> BigUint {
    (0..=max_deg as u64).map(|k| big_pow(q, k)).sum()
}

/// Whether `alpha` lies in the major arcs of level `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorArcReport {
    pub member: bool,
    /// `(a, g)` coprime with `g` monic, when a member.
    pub witness: Option<(Poly, Poly)>,
    /// Set when only the exhaustive search found the witness.
    pub via_fallback: bool,
}

fn coprime_witness(field: &Field, alpha: &LaurentNum, g: &Poly) -> Result<(Poly, Poly)> {
    let a = alpha.mul_poly(g, field).integer_part()?;
    let h = a.gcd(g, field);
    if h.is_zero() || h.deg() == Degree::Finite(0) {
        return Ok((a, g.clone()));
    }
    let (a2, _) = a.divrem(&h, field)?;
    let (g2, _) = g.divrem(&h, field)?;
    let lead = field.inv(g2.leading())?;
    Ok((a2.scale(lead, field), g2.scale(lead, field)))
}

/// Membership in the major arcs of level `J`: some coprime `(a, g)`, `g` monic
/// of degree `<= (d-1)(J-1)`, with `|g alpha - a| < q^{-d1 P1 - d2 P2 + (d-1) J}`.
/// The convergent of the truncation to `d1 P1 + d2 P2 - d + 1` digits is
/// tried first; an exhaustive search over denominators backs it up.
pub fn major_arc_test(field: &Field, alpha: &LaurentNum, params: &ArcParams, budget: &Budget) -> Result<MajorArcReport> {
    let radius = params.arc_radius_exponent();
    let frac = alpha.fractional_part();
    if radius >= 0 {
        return Ok(MajorArcReport {
            member: true,
            witness: Some((alpha.integer_part()?, Poly::one())),
            via_fallback: false,
        });
    }
    let max_deg = params.denominator_degree();
    let (_, g) = best_convergent(field, &frac, params.precision(), max_deg as usize)?;
    if frac.mul_poly(&g, field).norm_below(radius)? {
        return Ok(MajorArcReport {
            member: true,
            witness: Some(coprime_witness(field, alpha, &g)?),
            via_fallback: false,
        });
    }
    match search_denominators(field, &frac, max_deg, radius, budget)? {
        Some(g) => Ok(MajorArcReport {
            member: true,
            witness: Some(coprime_witness(field, alpha, &g)?),
            via_fallback: true,
        }),
        None => Ok(MajorArcReport {
            member: false,
            witness: None,
            via_fallback: false,
        }),
    }
}

fn search_denominators(field: &Field, frac: &LaurentNum, max_deg: u32, radius: i64, budget: &Budget) -> Result<Option<Poly>> {
    budget.check_box("denominator search", &monic_count(field.q(), max_deg))?;
    for deg in 0..=max_deg as usize {
        for g in Poly::monic_of_degree(field, deg) {
            if frac.mul_poly(&g, field).norm_below(radius)? {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// Membership decided by exhaustive search alone.
pub fn major_arc_exhaustive(field: &Field, alpha: &LaurentNum, params: &ArcParams, budget: &Budget) -> Result<bool> {
    let radius = params.arc_radius_exponent();
    if radius >= 0 {
        return Ok(true);
    }
    let frac = alpha.fractional_part();
    Ok(search_denominators(field, &frac, params.denominator_degree(), radius, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::FqElem;

    #[test]
    fn reciprocal_of_u() {
        let f = Field::prime(3).unwrap();
        let alpha = LaurentNum::monomial(FqElem::ONE, -1);
        let r = rational_approx(&f, &alpha, 2).unwrap();
        assert_eq!(r.g, Poly::from_ints(&f, &[0, 1]));
        assert_eq!(r.a, Poly::one());
        assert_eq!(r.err_exponent, Degree::NegInfinity);
        assert!(r.err_exact);
    }

    #[test]
    fn small_alpha_needs_no_denominator() {
        let f = Field::prime(5).unwrap();
        let alpha = LaurentNum::from_fraction_digits(&[FqElem::ZERO, FqElem::ZERO, FqElem::ZERO, FqElem::ONE, f.from_int(2)]);
        let r = rational_approx(&f, &alpha, 2).unwrap();
        assert_eq!((r.g.clone(), r.a.clone()), (Poly::one(), Poly::zero()));
        assert_eq!(r.err_exponent, Degree::Finite(-4));
    }

    #[test]
    fn integer_part_is_carried() {
        let f = Field::prime(3).unwrap();
        // u + 1/(u+1), exact through u^{-5}
        let tail = LaurentNum::poly_quotient_expand(&Poly::one(), &Poly::from_ints(&f, &[1, 1]), -5, &f).unwrap();
        let alpha = tail.add(&LaurentNum::monomial(FqElem::ONE, 1), &f);
        let r = rational_approx(&f, &alpha, 2).unwrap();
        assert_eq!(r.g, Poly::from_ints(&f, &[1, 1]));
        assert_eq!(r.a, Poly::from_ints(&f, &[1, 1, 1]));
        assert!(!r.err_exact);
    }

    #[test]
    fn precision_required() {
        let f = Field::prime(3).unwrap();
        let alpha = LaurentNum::from_fraction_digits(&[FqElem::ONE, FqElem::ONE]);
        assert!(rational_approx(&f, &alpha, 1).is_err());
    }

    #[test]
    fn arcs_at_zero_and_at_the_dirichlet_level() {
        let f = Field::prime(3).unwrap();
        let params = ArcParams::new(1, 1, 1, 2, 1).unwrap();
        let b = Budget::default();
        assert!(major_arc_test(&f, &LaurentNum::zero(), &params, &b).unwrap().member);
        let top = params.with_level(params.dirichlet_level()).unwrap();
        for idx in 0..9u128 {
            let a = super::super::alpha::grid_point(&f, 2, idx);
            let r = major_arc_test(&f, &a, &top, &b).unwrap();
            assert!(r.member && !r.via_fallback);
            let inner = major_arc_test(&f, &a, &params, &b).unwrap();
            assert_eq!(inner.member, idx == 0);
            assert_eq!(inner.member, major_arc_exhaustive(&f, &a, &params, &b).unwrap());
        }
    }
}

//! Randomized invariants across modules. Each case draws a seed and builds its
//! objects with [`Sampler`], so a shrunk failure reproduces from one integer.

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use crate::characters::psi_eval;
use crate::circle::{
    count_chain_check, eval_e, major_arc_exhaustive, major_arc_test, rational_approx, shrink_check, weyl_difference,
    ArcParams, BihomSum,
};
use crate::counting::{count_n, CountOptions, Strategy};
use crate::ff_core::{Degree, Field, FqElem, LaurentNum};
use crate::forms::{decomposition_check, BidegreeForm, FormSystem, SymTensor};
use crate::sample::Sampler;
use crate::Budget;

fn field(p: u32) -> Field {
    Field::prime(p).unwrap()
}

fn exact(s: &mut Sampler, f: &Field, top: i64, len: usize) -> LaurentNum {
    let digits = s.point(f, len);
    LaurentNum::from_terms(top - len as i64 + 1, digits, None)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn absolute_value_is_ultrametric(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let f = field(p);
        let mut s = Sampler::new(seed);
        let (top_a, top_b) = (s.range(0, 6) as i64 - 3, s.range(0, 6) as i64 - 3);
        let a = exact(&mut s, &f, top_a, 5);
        let b = exact(&mut s, &f, top_b, 5);
        let sum = a.add(&b, &f).abs_exponent().unwrap();
        let (ea, eb) = (a.abs_exponent().unwrap(), b.abs_exponent().unwrap());
        prop_assert!(sum <= ea.max(eb));
        if ea != eb {
            prop_assert_eq!(sum, ea.max(eb));
        }
        let prod = a.mul(&b, &f).abs_exponent().unwrap();
        prop_assert_eq!(prod, ea.plus(eb));
    }

    #[test]
    fn psi_is_additive(seed in any::<u64>(), p in prop::sample::select(vec![3u32, 5, 7])) {
        let f = field(p);
        let mut s = Sampler::new(seed);
        let a = exact(&mut s, &f, 2, 6);
        let b = exact(&mut s, &f, 2, 6);
        let lhs = psi_eval(&f, &a.add(&b, &f)).unwrap().value();
        let rhs = (psi_eval(&f, &a).unwrap().value() + psi_eval(&f, &b).unwrap().value()) % p;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetric_tensor_is_multilinear_and_diagonal(seed in any::<u64>(), d in 2u32..=4, n in 1usize..=3) {
        let f = field(7);
        let mut s = Sampler::new(seed);
        let form = s.form(&f, n, d).unwrap();
        let t = SymTensor::from_form(&form).unwrap();
        let x = s.point(&f, n);
        prop_assert_eq!(t.gamma_fq(&vec![x.as_slice(); d as usize]), form.eval_fq(&x));
        let (y, z) = (s.point(&f, n), s.point(&f, n));
        let c = s.elem(&f);
        let mix: Vec<FqElem> = y.iter().zip(&z).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
        let rest: Vec<Vec<FqElem>> = (1..d).map(|_| s.point(&f, n)).collect();
        let with = |first: &[FqElem]| {
            let mut slots: Vec<&[FqElem]> = vec![first];
            slots.extend(rest.iter().map(|r| r.as_slice()));
            t.gamma_fq(&slots)
        };
        prop_assert_eq!(with(&mix), f.add(with(&y), f.mul(c, with(&z))));
    }

    #[test]
    fn decomposition_and_slot_degrees(seed in any::<u64>(), d in 2u32..=3, e in 1u32..=2) {
        let f = field(5);
        let mut s = Sampler::new(seed);
        let form = s.form(&f, 2, d).unwrap();
        let g = s.morphism(&f, 2, e);
        prop_assert!(decomposition_check(&form, &g).unwrap());
        let sys = FormSystem::from_form(&form, e).unwrap();
        for (j, fj) in sys.eval_all(&g).unwrap().iter().enumerate() {
            prop_assert!(fj.deg().le(j as i64));
        }
    }

    #[test]
    fn dirichlet_contract(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5]), m in 0u32..=4) {
        let f = field(p);
        let mut s = Sampler::new(seed);
        let alpha = s.exact_fraction(&f, 2 * m as usize + 1);
        let r = rational_approx(&f, &alpha, m).unwrap();
        prop_assert!(r.g.is_monic() && r.g.deg().le(m as i64));
        prop_assert!(r.err_exponent < Degree::Finite(-(m as i64)));
        prop_assert!(r.a.gcd(&r.g, &f).deg() == Degree::Finite(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strategies_agree(seed in any::<u64>()) {
        let f = field(3);
        let mut s = Sampler::new(seed);
        let form = s.form(&f, 2, 2).unwrap();
        let opts = CountOptions::default();
        let counts: Vec<BigUint> = Strategy::ALL
            .iter()
            .map(|&st| count_n(&form, 1, st, &opts).unwrap().count)
            .collect();
        prop_assert!(counts.windows(2).all(|w| w[0] == w[1]), "{:?}", counts);
    }

    #[test]
    fn major_arc_search_agrees_with_exhaustive(seed in any::<u64>(), level in 1u32..=3) {
        let f = field(3);
        let mut s = Sampler::new(seed);
        let params = ArcParams::new(1, 2, 2, 2, level).unwrap();
        let alpha = s.fraction(&f, params.precision());
        let budget = Budget::default();
        let fast = major_arc_test(&f, &alpha, &params, &budget).unwrap();
        prop_assert_eq!(fast.member, major_arc_exhaustive(&f, &alpha, &params, &budget).unwrap());
        if let Some((a, g)) = fast.witness {
            prop_assert!(g.is_monic() && a.gcd(&g, &f).deg() == Degree::Finite(0));
        }
    }

    #[test]
    fn bihomogeneous_sum_bounds(seed in any::<u64>()) {
        let f = field(5);
        let mut s = Sampler::new(seed);
        let form = s.form(&f, 1, 3).unwrap();
        let g = BidegreeForm::build(&SymTensor::from_form(&form).unwrap(), 1, 2).unwrap();
        let params = ArcParams::for_piece(&g, 1).unwrap();
        let alpha = s.fraction(&f, params.precision());
        let budget = Budget::default();
        let e = eval_e(&g, &params, &alpha, &budget).unwrap().is_rational_integer().unwrap();
        let e_zero = BihomSum::new(&g, &params, &budget).unwrap().e_zero();
        prop_assert!(e >= BigInt::from(0));
        prop_assert!(e <= e_zero.into());
        prop_assert!(count_chain_check(&g, &params, &alpha, &budget).unwrap().pass);
    }

    #[test]
    fn shrinking_holds(seed in any::<u64>(), p in prop::sample::select(vec![3u32, 5])) {
        let f = field(p);
        let mut s = Sampler::new(seed);
        let params = s.shrink_params(2).unwrap();
        let forms = s.symmetric_forms(&f, 2, params.precision()).unwrap();
        prop_assert!(shrink_check(&forms, &params, &Budget::default()).unwrap().pass);
    }

    #[test]
    fn differencing_past_the_degree_vanishes(seed in any::<u64>(), deg in 0u32..=4) {
        let f = field(5);
        let mut s = Sampler::new(seed);
        let poly = s.mpoly(&f, 2, deg);
        let points: Vec<Vec<FqElem>> = (0..=deg).map(|_| s.point(&f, 2)).collect();
        let v = weyl_difference(|x: &[FqElem]| poly.eval(x, &f), &points, &f).unwrap();
        prop_assert!(v.is_zero());
    }
}

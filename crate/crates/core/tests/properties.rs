mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random;
use ultra::bounds::{aux_series_char0, bound_char0, cor_example_bound};
use ultra::classify::{compute_cf, is_special, q_identity_residual, validate_cf, Verdict};
use ultra::exact_fields::{Rat, RatFun, Scalar};
use ultra::laurent::{ExpansionBudget, FieldSpec, LaurentPoly, Series};
use ultra::newton::{newton_at, newton_polygon, zeros_on_sphere};
use ultra::torsion_oracle::{check_decomposition, decompose_pair};

fn slopes() -> Vec<BigRational> {
    [(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2), (2, 3)]
        .iter()
        .map(|&(a, b)| BigRational::new(a.into(), b.into()))
        .collect()
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

fn rat_with(p: u64) -> impl Strategy<Value = Rat> {
    (1i64..=12, any::<bool>(), 1i64..=6, -2i32..=2).prop_map(move |(a, neg, b, shift)| {
        let pp = (p as i64).pow(shift.unsigned_abs());
        let a = if neg { -a } else { a };
        if shift >= 0 {
            Rat::new(a * pp, b).unwrap()
        } else {
            Rat::new(a, b * pp).unwrap()
        }
    })
}

fn adic_with(p: u64, max_len: usize) -> impl Strategy<Value = LaurentPoly<Rat>> {
    prop::collection::btree_map(-4i64..=4, rat_with(p), 1..=max_len)
        .prop_map(move |terms| LaurentPoly::new(FieldSpec::p_adic(p, 1, 1).unwrap(), terms))
}

fn adic() -> impl Strategy<Value = LaurentPoly<Rat>> {
    prime().prop_flat_map(|p| adic_with(p, 4))
}

fn function() -> impl Strategy<Value = LaurentPoly<RatFun>> {
    (prime(), any::<u64>())
        .prop_map(|(p, seed)| random::function(&mut ChaCha8Rng::seed_from_u64(seed), p, 4, 4))
}

fn pair() -> impl Strategy<Value = (LaurentPoly<Rat>, LaurentPoly<Rat>, LaurentPoly<Rat>)> {
    prime().prop_flat_map(|p| (adic_with(p, 3), adic_with(p, 3), adic_with(p, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn valuation_is_multiplicative_and_ultrametric(
        (p, a, b) in prime().prop_flat_map(|p| (Just(p), rat_with(p), rat_with(p)))
    ) {
        prop_assert_eq!(a.mul(&b).valuation(p), a.valuation(p).plus(&b.valuation(p)));
        let sum = a.add(&b);
        let (va, vb) = (a.valuation(p), b.valuation(p));
        prop_assert!(sum.valuation(p) >= va.clone().min(vb.clone()));
        if va != vb {
            prop_assert_eq!(sum.valuation(p), va.min(vb));
        }
    }

    #[test]
    fn function_field_valuation_is_multiplicative(seed in any::<u64>(), p in prime()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random::ratfun(&mut rng, p), random::ratfun(&mut rng, p));
        prop_assert_eq!(a.mul(&b).valuation(p), a.valuation(p).plus(&b.valuation(p)));
        prop_assert!(a.add(&b).valuation(p) >= a.valuation(p).min(b.valuation(p)));
    }

    #[test]
    fn dominant_indices_add_under_products((f, g, _) in pair()) {
        let fg = f.mul(&g).unwrap();
        for s in slopes() {
            let (a, b, c) = (newton_at(&f, &s), newton_at(&g, &s), newton_at(&fg, &s));
            prop_assert_eq!(c.k_upper, a.k_upper + b.k_upper);
            prop_assert_eq!(c.k_lower, a.k_lower + b.k_lower);
            prop_assert_eq!(c.vmin, a.vmin.plus(&b.vmin));
        }
    }

    #[test]
    fn dominant_indices_add_over_function_fields(f in function(), seed in any::<u64>()) {
        let g = random::function(&mut ChaCha8Rng::seed_from_u64(seed), f.field().p(), 3, 4);
        let fg = f.mul(&g).unwrap();
        for s in slopes() {
            let (a, b, c) = (newton_at(&f, &s), newton_at(&g, &s), newton_at(&fg, &s));
            prop_assert_eq!(c.k_upper, a.k_upper + b.k_upper);
            prop_assert_eq!(c.k_lower, a.k_lower + b.k_lower);
        }
    }

    #[test]
    fn power_rule(f in adic(), m in 1u64..=4) {
        let fm = f.pow(m, &mut ExpansionBudget::default()).unwrap();
        let mi = m as i64;
        for s in slopes() {
            let (a, b) = (newton_at(&f, &s), newton_at(&fm, &s));
            prop_assert_eq!(b.k_upper, mi * a.k_upper);
            prop_assert_eq!(b.k_lower, mi * a.k_lower);
        }
    }

    #[test]
    fn segments_account_for_the_support_width(f in adic()) {
        let hull = newton_polygon(&f).unwrap();
        let segments = hull.segments();
        let total: i64 = segments.iter().map(|s| s.length).sum();
        prop_assert_eq!(total, f.max_exponent().unwrap() - f.min_exponent().unwrap());
        for seg in &segments {
            prop_assert_eq!(zeros_on_sphere(&f, &seg.s).unwrap(), seg.length);
        }
        for w in segments.windows(2) {
            prop_assert!(w[0].s > w[1].s);
        }
    }

    #[test]
    fn unit_scaling_preserves_newton_data_and_cf(f in adic(), pick in any::<prop::sample::Index>()) {
        let units = Rat::unit_samples(f.field().p());
        let g = f.scale(pick.get(&units));
        for s in slopes() {
            prop_assert_eq!(newton_at(&f, &s), newton_at(&g, &s));
        }
        let (a, b) = (compute_cf(&f).unwrap(), compute_cf(&g).unwrap());
        prop_assert_eq!((a.case_tag, a.c_f), (b.case_tag, b.c_f));
    }

    #[test]
    fn frobenius_matches_repeated_multiplication(f in function(), twice in any::<bool>()) {
        let p = f.field().p();
        let q = if twice { p * p } else { p };
        prop_assert_eq!(
            f.frobenius_pow(q).unwrap(),
            f.pow(q, &mut ExpansionBudget::default()).unwrap()
        );
    }

    #[test]
    fn substitution_composes(f in adic(), a in -3i64..=3, b in -3i64..=3) {
        prop_assume!(a != 0 && b != 0);
        prop_assert_eq!(
            f.substitute_power(a).unwrap().substitute_power(b).unwrap(),
            f.substitute_power(a * b).unwrap()
        );
        let s = BigRational::from_integer(0.into());
        let (d, e) = (newton_at(&f, &s), newton_at(&f.substitute_power(a).unwrap(), &s));
        if a > 0 {
            prop_assert_eq!((e.k_upper, e.k_lower), (a * d.k_upper, a * d.k_lower));
        } else {
            prop_assert_eq!((e.k_upper, e.k_lower), (a * d.k_lower, a * d.k_upper));
        }
    }

    #[test]
    fn ring_laws((f, g, h) in pair()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn speciality_is_stable_under_frobenius(f in function()) {
        let q = f.field().q();
        let fq = f.frobenius_pow(q).unwrap();
        prop_assert_eq!(is_special(&f).is_special(), is_special(&fq).is_special());
    }

    #[test]
    fn residual_vanishes_exactly_for_special_function_series(f in function()) {
        let q = f.field().q();
        let g = q_identity_residual(&f, q, &mut ExpansionBudget::default()).unwrap();
        prop_assert_eq!(g.is_zero(), is_special(&f).is_special());
    }

    #[test]
    fn shortcut_agrees_with_expansion(
        f in prime().prop_flat_map(|p| adic_with(p, 2)).prop_filter("vmin != 0", |f| {
            !newton_at(f, &BigRational::from_integer(0.into())).vmin.is_zero()
        }),
        k in 0u32..=1,
    ) {
        let p = f.field().p();
        let mut budget = ExpansionBudget::default();
        let (short, used) = aux_series_char0(&f, p, k, &mut budget).unwrap();
        prop_assert!(used);
        let pk = p.pow(k);
        let left = f.pow(p * pk, &mut budget).unwrap();
        let right = f.substitute_power(p as i64).unwrap().pow(pk, &mut budget).unwrap();
        let a = left.sub(&right).unwrap();
        let full = newton_at(&a, &BigRational::from_integer(0.into()));
        prop_assert_eq!(short.k_upper, BigInt::from(full.k_upper));
        prop_assert_eq!(short.k_lower, BigInt::from(full.k_lower));
        prop_assert_eq!(short.vmin, full.vmin);
    }

    #[test]
    fn validation_never_fails_on_non_special_input(
        f in adic(), g in function(), b in 1i64..=3, seed in any::<u64>()
    ) {
        if is_special(&f).verdict == Verdict::NotSpecial {
            let v = validate_cf(&f, 40, b, seed).unwrap();
            prop_assert!(v.passed, "{:?}", v.failures);
        }
        if !is_special(&g).is_special() {
            let v = validate_cf(&g, 40, b, seed).unwrap();
            prop_assert!(v.passed, "{:?}", v.failures);
        }
    }

    #[test]
    fn json_round_trip(f in adic(), g in function()) {
        let a = Series::Adic(f);
        prop_assert_eq!(Series::parse(&a.to_json_string()).unwrap(), a);
        let b = Series::Function(g);
        prop_assert_eq!(Series::parse(&b.to_json_string()).unwrap(), b);
    }

    #[test]
    fn decompositions_hold_for_large_orders(n in 1u64..=2_000_000, a1 in any::<i64>(), a2 in any::<i64>()) {
        let (a1, a2) = (a1.rem_euclid(n as i64), a2.rem_euclid(n as i64));
        prop_assume!(common::gcd(common::gcd(a1 as u64, a2 as u64), n) == 1);
        let d = decompose_pair(a1, a2, n).unwrap();
        prop_assert!(check_decomposition(a1, a2, &d));
        let n3 = (n as u128).pow(3);
        prop_assert!((d.e as u128).pow(4) <= n3);
        prop_assert!((d.k1.unsigned_abs() as u128 * d.e as u128).pow(4) <= n3);
        prop_assert!((d.k2.unsigned_abs() as u128 * d.e as u128).pow(4) <= n3);
    }
}

#[test]
fn closed_form_pipeline() {
    for p in [2u64, 3, 5] {
        for n in 1u64..=4 {
            let field = FieldSpec::p_adic(p, 1, 1).unwrap();
            let c = Rat::new(1, p as i64).unwrap();
            let f = LaurentPoly::new(field, [(n as i64, c.clone()), (0, c.neg())]);
            let r = bound_char0(&f, &mut ExpansionBudget::default()).unwrap();
            assert_eq!(r.cf_report.c_f, n);
            let expected = BigInt::from(p).pow(2 * r.k + 1) * n;
            assert_eq!(r.bound, Some(expected.clone()), "p={p} n={n}");
            assert!(expected <= cor_example_bound(p, 1, n), "p={p} n={n}");
        }
    }
}

#[test]
fn constant_coefficients_satisfy_the_q_identity() {
    for p in [2u64, 3] {
        let field = FieldSpec::function_field(p, 1).unwrap();
        let exps: Vec<i64> = (-3..=3).collect();
        let mut checked = 0;
        for mask in 1u32..(1 << exps.len()) {
            let support: Vec<i64> = exps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &n)| n)
                .collect();
            if support.len() > 3 {
                continue;
            }
            let mut coeffs = vec![1u64; support.len()];
            loop {
                let f = LaurentPoly::new(
                    field,
                    support
                        .iter()
                        .zip(&coeffs)
                        .map(|(&n, &c)| (n, RatFun::constant(p, c))),
                );
                let g = q_identity_residual(&f, p, &mut ExpansionBudget::default()).unwrap();
                assert!(g.is_zero(), "{f}");
                assert!(is_special(&f).is_special());
                checked += 1;
                let mut i = 0;
                while i < coeffs.len() && coeffs[i] == p - 1 {
                    coeffs[i] = 1;
                    i += 1;
                }
                if i == coeffs.len() {
                    break;
                }
                coeffs[i] += 1;
            }
        }
        assert!(checked > 0);
    }
}

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use hyperell_core::integrate::*;
use hyperell_core::morphisms::EllipticMorphism;
use hyperell_core::poly::{partial_fractions, RationalFunction};
use hyperell_core::text::{parse_element, parse_rational_function, parse_tower};
use hyperell_core::zeta::*;
use hyperell_core::*;

type Rf = RationalFunction<NfElem>;

fn sqrt2() -> Arc<NumberField> {
    parse_tower(&["a^2-2".to_string()]).unwrap()
}

fn poly(c: &[i64], k: &Arc<NumberField>) -> UniPoly<NfElem> {
    UniPoly::new(c.iter().map(|&v| k.from_int(v)).collect(), &k.zero())
}

fn elem(k: &Arc<NumberField>, u: i64, v: i64) -> NfElem {
    k.from_int(u).add(&k.theta().scale_int(v))
}

fn paper_setup() -> (HyperellipticCurve, Vec<EllipticMorphism>, Arc<NumberField>) {
    let k = sqrt2();
    let c = HyperellipticCurve::from_ints(&[1, 6, 9, -4, -10, 4]).unwrap();
    let rf = |s: &str| parse_rational_function(s, "x", &k).unwrap();
    let el = |s: &str| parse_element(s, &k).unwrap();
    let l = vec![
        EllipticMorphism::new(el("1/2"), rf("x^2/(2*x+1)"), rf("x/(a*(2*x+1)^2)")),
        EllipticMorphism::new(el("3/4"), rf("(x+1)^2/(4*x+2)"), rf("-(x+1)/(4*(2*x+1)^2)")),
    ];
    (c, l, k)
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..=max_deg + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norm_is_multiplicative(u1 in -9i64..9, v1 in -9i64..9, u2 in -9i64..9, v2 in -9i64..9) {
        let k = sqrt2();
        let x = elem(&k, u1, v1);
        let y = elem(&k, u2, v2);
        prop_assert_eq!(x.mul(&y).norm(), x.norm().mul(&y.norm()));
        if !y.is_zero() {
            prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x);
        }
    }

    #[test]
    fn partial_fractions_recombine(num in small_poly(2), roots in prop::collection::btree_set(-6i64..6, 1..4), c in 1i64..5) {
        let k = sqrt2();
        // distinct linear factors and one irreducible quadratic x² + c
        let mut den = poly(&[c, 0, 1], &k);
        for r in &roots {
            den = den.mul(&poly(&[-r, 1], &k));
        }
        let f = Rf::new(poly(&num, &k), den).unwrap();
        let pf = partial_fractions(&f).unwrap();
        prop_assert_eq!(pf.recombine().unwrap(), f);
    }

    #[test]
    fn curve_functions_obey_leibniz(a1 in small_poly(2), b1 in small_poly(2), a2 in small_poly(2), b2 in small_poly(1)) {
        let (c, _, k) = paper_setup();
        let s = k.embed_poly(c.s()).unwrap();
        let f = CurveFunction::new(Rf::from_poly(poly(&a1, &k)), Rf::from_poly(poly(&b1, &k)));
        let g = CurveFunction::new(Rf::from_poly(poly(&a2, &k)), Rf::from_poly(poly(&b2, &k)));
        let lhs = f.mul(&g, &s).derivative(&s);
        let rhs = f.derivative(&s).mul(&g, &s).add(&f.mul(&g.derivative(&s), &s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn log_derivative_ignores_constant_factors(a in small_poly(2), b in small_poly(1), u in 1i64..7, v in -3i64..3) {
        let (c, _, k) = paper_setup();
        let s = k.embed_poly(c.s()).unwrap();
        let r = CurveFunction::new(Rf::from_poly(poly(&a, &k)), Rf::from_poly(poly(&b, &k)));
        prop_assume!(!r.a.is_zero() && !r.b.is_zero());
        let lhs = log_ratio_derivative(&r.scale(&elem(&k, u, v)), &s).unwrap();
        prop_assert_eq!(lhs, log_ratio_derivative(&r, &s).unwrap());
    }

    #[test]
    fn relations_reduce_to_normal_form(e in 0u32..6, f in 0u32..6) {
        let (c, l, k) = paper_setup();
        let ed = elliptic_divisors(&c, &l).unwrap();
        let z = k.zero();
        let c1 = MultiPoly::var(4, 0, &z);
        let d1 = MultiPoly::var(4, 2, &z);
        let d2 = MultiPoly::var(4, 3, &z);
        let p = d1.pow(e).mul(&d2.pow(f)).add(&c1);
        let once = ed.reduce(&p);
        prop_assert_eq!(ed.reduce(&once), once.clone());
        prop_assert!(once.degree_in(2) <= 1 && once.degree_in(3) <= 1);
        for r in ed.relations() {
            prop_assert!(ed.reduce(&r).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hermite_contract_on_paper_curve(num in small_poly(3), r in -5i64..6, e in 1u32..4) {
        let (c, l, k) = paper_setup();
        let s = k.embed_poly(c.s()).unwrap();
        let q = poly(&[-r, 1], &k).pow(e as u64);
        prop_assume!(!poly(&num, &k).is_zero());
        prop_assume!(!s.eval(&k.from_int(r)).is_zero());
        let i = HyperellipticIntegrand::new(poly(&num, &k), q, c.clone()).unwrap();
        let (h, j) = hermite_reduce(&i, &l).unwrap();
        let total = differentiate(&h).unwrap().add(&j.to_curve_function().unwrap());
        prop_assert_eq!(total, i.to_curve_function().unwrap());
        let jq = j.q();
        prop_assert!(jq.gcd(&jq.derivative()).unwrap().deg() == 0);
        prop_assert!(jq.gcd(&h.base.embed_poly(c.s()).unwrap()).unwrap().deg() == 0);
    }

    #[test]
    fn genus_one_pipeline_passes_oracle(kappa in prop::sample::select(vec![(2i64, 1i64), (3, 1), (1, 2)]), num in small_poly(2), r in 3i64..9, e in 1u32..3) {
        let q = NumberField::rationals();
        let k0 = q.from_int(kappa.0).div(&q.from_int(kappa.1)).unwrap();
        let s = poly(&[0, 1], &q).mul(&poly(&[-1, 1], &q)).mul(&UniPoly::new(vec![k0.neg(), q.one()], &q.zero()));
        let c = HyperellipticCurve::new(s).unwrap();
        let m = EllipticMorphism::new(k0, RationalFunction::x(&q.zero()), Rf::one(&q.zero()));
        prop_assume!(!poly(&num, &q).is_zero());
        let i = HyperellipticIntegrand::new(poly(&num, &q), poly(&[-r, 1], &q).pow(e as u64), c).unwrap();
        let out = hyperelliptic_to_elliptic(&i, &[m]).unwrap();
        let back = EllipticExpression::from_json(&out.to_json()).unwrap();
        prop_assert_eq!(differentiate(&back).unwrap(), differentiate(&out).unwrap());
    }

    #[test]
    fn psi_satisfies_weil_conditions(coeffs in prop::collection::vec(-3i64..=3, 5), p in prop::sample::select(vec![3u64, 5, 7, 11])) {
        let mut s = coeffs.clone();
        s.push(1);
        let c = match HyperellipticCurve::from_ints(&s) { Ok(c) => c, Err(_) => return Ok(()) };
        prop_assume!(is_good_prime(&c, p).unwrap());
        let psi = zeta_psi(&c, p, DEFAULT_COUNT_BUDGET).unwrap();
        prop_assert!(psi.satisfies_functional_equation());
        prop_assert!(psi.roots_have_expected_modulus(1e-6));
        let n = counts_from_psi(&psi, 2).unwrap();
        for (kk, nk) in n.iter().enumerate() {
            prop_assert_eq!(nk, &BigInt::from(count_points(&c, p, kk + 1).unwrap()));
        }
    }
}

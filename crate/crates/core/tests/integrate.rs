use std::sync::Arc;

use hyperell_core::integrate::*;
use hyperell_core::morphisms::{verify_morphism, EllipticMorphism};
use hyperell_core::poly::RationalFunction;
use hyperell_core::solve::{normal_form, SolveOptions};
use hyperell_core::text::{parse_element, parse_poly, parse_rational_function, parse_tower};
use hyperell_core::zeta::HyperellipticCurve;
use hyperell_core::*;

fn tower(defs: &[&str]) -> Arc<NumberField> {
    let defs: Vec<String> = defs.iter().map(|s| s.to_string()).collect();
    parse_tower(&defs).unwrap()
}

fn curve(s: &str) -> HyperellipticCurve {
    let q = NumberField::rationals();
    HyperellipticCurve::new(parse_poly(s, "x", &q).unwrap()).unwrap()
}

fn paper_curve() -> HyperellipticCurve {
    curve("4*x^5-10*x^4-4*x^3+9*x^2+6*x+1")
}

fn paper_morphisms(k: &Arc<NumberField>) -> Vec<EllipticMorphism> {
    let rf = |s: &str| parse_rational_function(s, "x", k).unwrap();
    let el = |s: &str| parse_element(s, k).unwrap();
    vec![
        EllipticMorphism::new(el("1/2"), rf("x^2/(2*x+1)"), rf("x/(a*(2*x+1)^2)")),
        EllipticMorphism::new(el("3/4"), rf("(x+1)^2/(4*x+2)"), rf("-(x+1)/(4*(2*x+1)^2)")),
    ]
}

fn integrand(
    num: &str,
    den: &str,
    c: &HyperellipticCurve,
    k: &Arc<NumberField>,
) -> HyperellipticIntegrand {
    HyperellipticIntegrand::new(
        parse_poly(num, "x", k).unwrap(),
        parse_poly(den, "x", k).unwrap(),
        c.clone(),
    )
    .unwrap()
}

fn second_kind(e: &EllipticExpression, morphism: usize) -> Option<NfElem> {
    e.terms().find_map(|t| match t {
        EllipticTerm::SecondKind { coeff, morphism: m } if *m == morphism => Some(coeff.clone()),
        _ => None,
    })
}

#[test]
fn paper_morphisms_are_valid() {
    let k = tower(&["a^2-2"]);
    let c = paper_curve();
    for m in paper_morphisms(&k) {
        assert!(verify_morphism(&c, &m));
    }
}

#[test]
fn hermite_matches_printed_second_kind_part() {
    let k = tower(&["a^2-2"]);
    let c = paper_curve();
    let l = paper_morphisms(&k);
    let i = integrand("1", "(6*x-17)^2", &c, &k);
    let (h, j) = hermite_reduce(&i, &l).unwrap();
    let el = |s: &str| parse_element(s, &h.base).unwrap();
    assert_eq!(second_kind(&h, 0).unwrap(), el("207*a/331240"));
    assert_eq!(second_kind(&h, 1).unwrap(), el("-153/165620"));

    let s = h.base.embed_poly(c.s()).unwrap();
    let printed = parse_rational_function(
        "(-216*x^4+648*x^3-108*x^2-432*x-108)/(49686*x-140777)",
        "x",
        &h.base,
    )
    .unwrap()
    .div(&RationalFunction::from_poly(s))
    .unwrap();
    assert_eq!(h.algebraic, CurveFunction::odd(printed));

    // the remainder has a single simple pole at 17/6
    let x0 = parse_poly("x-17/6", "x", j.field()).unwrap();
    assert_eq!(j.q(), &x0);
}

#[test]
fn printed_divisor_has_single_pole() {
    // Π(F₁, 3) + Π(F₂, 9/4) − ln((R)/(R̄)) with R = (4x²−11x−6)√30 + 3y
    let k = tower(&["a^2-2", "b^2-15"]);
    let c = paper_curve();
    let l = paper_morphisms(&k);
    let el = |s: &str| parse_element(s, &k).unwrap();
    let r = CurveFunction::new(
        parse_rational_function("(4*x^2-11*x-6)*a*b", "x", &k).unwrap(),
        parse_rational_function("3", "x", &k).unwrap(),
    );
    let s = k.embed_poly(c.s()).unwrap();
    let mut poles = Vec::new();
    for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let terms = vec![
            EllipticTerm::ThirdKind {
                coeff: el("1"),
                morphism: 0,
                c: el("3"),
                d: el("b").scale_int(s1),
            },
            EllipticTerm::ThirdKind {
                coeff: el("1"),
                morphism: 1,
                c: el("9/4"),
                d: el("3/8*a*b").scale_int(s2),
            },
            EllipticTerm::LogTerm {
                coeff: el("-1"),
                r: r.clone(),
            },
        ];
        let mut e = EllipticExpression::zero(&c, &k, &l);
        e.groups.push(TermGroup {
            field: k.clone(),
            root: None,
            terms,
        });
        let d = differentiate(&e).unwrap();
        assert!(d.a.is_zero());
        poles.push(d.b.mul_poly(&s).den().deg());
    }
    // exactly one branch choice collapses the two poles of Π to the single pole x = 17/6
    assert_eq!(poles.iter().filter(|&&p| p == 1).count(), 1, "{poles:?}");
}

fn mp(n: usize, k: &Arc<NumberField>, terms: &[(&str, [u32; 4])]) -> MultiPoly<NfElem> {
    let mut p = MultiPoly::zero(n, &k.zero());
    for (c, e) in terms {
        p.add_term(e.to_vec(), parse_element(c, k).unwrap());
    }
    p
}

#[test]
fn symbolic_denominator_matches_printed_family() {
    let k = tower(&["a^2-2"]);
    let c = paper_curve();
    let l = paper_morphisms(&k);
    let ed = elliptic_divisors(&c, &l).unwrap();
    assert_eq!(ed.nparams(), 4);
    assert_eq!(ed.param_names(), ["c1", "c2", "d1", "d2"]);
    let f = &ed.field;

    // variables: c1, c2, d1, d2
    let e2 = mp(
        4,
        f,
        &[
            ("4*a", [0, 0, 1, 1]),
            ("2", [2, 1, 0, 0]),
            ("4", [1, 2, 0, 0]),
            ("-10", [1, 1, 0, 0]),
            ("3", [1, 0, 0, 0]),
            ("1", [0, 1, 0, 0]),
        ],
    );
    let e1 = mp(
        4,
        f,
        &[
            ("4*a", [0, 0, 1, 1]),
            ("4", [2, 1, 0, 0]),
            ("-6", [2, 0, 0, 0]),
            ("4", [1, 1, 0, 0]),
            ("-4", [0, 2, 0, 0]),
            ("2", [0, 1, 0, 0]),
        ],
    );
    let e0 = mp(
        4,
        f,
        &[
            ("2", [2, 1, 0, 0]),
            ("-3", [2, 0, 0, 0]),
            ("2", [1, 1, 0, 0]),
            ("-2", [0, 2, 0, 0]),
            ("1", [0, 1, 0, 0]),
        ],
    );
    let printed = vec![e0.clone(), e1.clone(), e2.clone()];
    assert_eq!(ed.denominator.len(), 3);
    assert!(proportional_mod(&ed, &ed.denominator, &printed));

    let mut wrong = printed.clone();
    wrong[1] = e1.add(&mp(4, f, &[("1", [0, 0, 0, 0])]));
    assert!(!proportional_mod(&ed, &ed.denominator, &wrong));

    // the single-pole locus divides the norm of the leading coefficient
    let locus = mp(
        4,
        f,
        &[
            ("2", [2, 1, 0, 0]),
            ("-4", [1, 2, 0, 0]),
            ("4", [1, 1, 0, 0]),
            ("-3", [1, 0, 0, 0]),
            ("1", [0, 1, 0, 0]),
        ],
    );
    let lead = ed.denominator[2].clone();
    let d1 = MultiPoly::var(4, 2, &f.zero());
    let conj = lead.substitute_poly(2, &d1.neg());
    let norm = ed.reduce(&lead.mul(&conj));
    assert!(!norm.is_zero());
    assert!(normal_form(&norm, &[locus.clone()], MonomialOrder::Lex).is_zero());
    let other = locus.add(&mp(4, f, &[("1", [1, 0, 0, 0])]));
    assert!(!normal_form(&norm, &[other], MonomialOrder::Lex).is_zero());
}

fn genus_one() -> (HyperellipticCurve, Vec<EllipticMorphism>) {
    let q = NumberField::rationals();
    let c = curve("x^3-3*x^2+2*x");
    let rf = |s: &str| parse_rational_function(s, "x", &q).unwrap();
    let m = EllipticMorphism::new(q.from_int(2), rf("x"), rf("1"));
    assert!(verify_morphism(&c, &m));
    (c, vec![m])
}

#[test]
fn genus_one_second_kind_is_exact() {
    let (c, l) = genus_one();
    let q = NumberField::rationals();
    let e = hyperelliptic_to_elliptic(&integrand("x", "1", &c, &q), &l).unwrap();
    assert!(e.algebraic.is_zero());
    let terms: Vec<_> = e.terms().collect();
    assert_eq!(terms.len(), 1);
    assert!(matches!(
        terms[0],
        EllipticTerm::SecondKind { morphism: 0, .. }
    ));
    assert!(terms[0].coeff().is_one());
}

#[test]
fn genus_one_third_kind_at_the_pole() {
    let (c, l) = genus_one();
    let q = NumberField::rationals();
    let e = hyperelliptic_to_elliptic(&integrand("1", "x-3", &c, &q), &l).unwrap();
    let three = q.from_int(3);
    assert!(e.terms().any(|t| matches!(t,
        EllipticTerm::ThirdKind { c, .. } if c.as_rational() == three.as_rational())));
}

#[test]
fn zero_residue_needs_no_divisor() {
    let (c, l) = genus_one();
    let q = NumberField::rationals();
    let red = reduce_divisor(&c, &l, &q.from_int(5), &q.zero(), &SolveOptions::default()).unwrap();
    assert!(red.terms.is_empty());
}

#[test]
fn genus_one_divisor_family() {
    let (c, l) = genus_one();
    let ed = elliptic_divisors(&c, &l).unwrap();
    assert_eq!(ed.m, 2);
    assert_eq!(ed.basis.len(), 2);
    // one generic pole of degree 1
    assert_eq!(ed.denominator.len(), 2);

    let k = tower(&["t^2-6"]);
    let cc = k.from_int(3);
    let dd = parse_element("t", &k).unwrap();
    let (_r, jd) = ed.specialize(&[cc], &[dd]).unwrap();
    let s = k.embed_poly(c.s()).unwrap();
    let h = jd.b.mul_poly(&s);
    assert!(h.den().deg() <= 1);
}

#[test]
fn quadratic_pole_uses_root_sum() {
    let (c, l) = genus_one();
    let q = NumberField::rationals();
    let e = hyperelliptic_to_elliptic(&integrand("1", "x^2-7", &c, &q), &l).unwrap();
    assert!(e.groups.iter().any(|g| g.root.is_some()));
    let json = e.to_json();
    let back = EllipticExpression::from_json(&json).unwrap();
    assert_eq!(differentiate(&back).unwrap(), differentiate(&e).unwrap());
}

#[test]
fn holomorphic_integrand_is_first_kind() {
    let q = NumberField::rationals();
    let c = curve("x^3-3*x^2+2*x");
    let (_, l) = genus_one();
    let e = hyperelliptic_to_elliptic(&integrand("3", "1", &c, &q), &l).unwrap();
    assert!(e.is_pure_first_kind());
}

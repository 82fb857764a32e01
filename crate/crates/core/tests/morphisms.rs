use std::sync::Arc;

use hyperell_core::morphisms::*;
use hyperell_core::text::{parse_element, parse_rational_function, parse_tower};
use hyperell_core::zeta::HyperellipticCurve;
use hyperell_core::*;

fn tower(defs: &[&str]) -> Arc<NumberField> {
    let defs: Vec<String> = defs.iter().map(|s| s.to_string()).collect();
    parse_tower(&defs).unwrap()
}

#[test]
fn j_invariant_of_legendre_form() {
    let q = NumberField::rationals();
    for k in [-1, 2] {
        assert_eq!(j_invariant(&q.from_int(k)), q.from_int(1728));
    }
    assert_eq!(
        j_invariant(&parse_element("1/2", &q).unwrap()),
        q.from_int(1728)
    );
    // κ = 3 ± 2√2 is 2-isogenous to κ = −1 and lands on j = 8000 (CM by √−2)
    let k = tower(&["s^2-2"]);
    for e in ["3+2*s", "3-2*s"] {
        let j = j_invariant(&parse_element(e, &k).unwrap());
        assert_eq!(j, k.from_int(8000));
    }
}

#[test]
fn genus_one_search_finds_the_identity_shape() {
    let c = HyperellipticCurve::from_ints(&[0, 2, -3, 1]).unwrap();
    let found = elliptic_factors(&c, 1, None).unwrap();
    assert_eq!(found.len(), 1);
    assert!(verify_morphism(&c, &found[0]));
    assert_eq!(found[0].degree(), 1);
}

#[test]
fn paper_curve_has_two_factors() {
    let c = HyperellipticCurve::from_ints(&[1, 6, 9, -4, -10, 4]).unwrap();
    let found = elliptic_factors(&c, 2, None).unwrap();
    assert_eq!(found.len(), 2);
    for m in &found {
        assert!(verify_morphism(&c, m));
    }
    assert_eq!(independence_rank(&found).unwrap(), 2);
}

#[test]
fn rank_zero_curve_stops_immediately() {
    let c = HyperellipticCurve::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    assert!(elliptic_factors(&c, 2, None).unwrap().is_empty());
}

#[test]
fn verification_rejects_a_wrong_kappa() {
    let k = tower(&["a^2-2"]);
    let c = HyperellipticCurve::from_ints(&[1, 6, 9, -4, -10, 4]).unwrap();
    let rf = |s: &str| parse_rational_function(s, "x", &k).unwrap();
    let good = EllipticMorphism::new(
        parse_element("1/2", &k).unwrap(),
        rf("x^2/(2*x+1)"),
        rf("x/(a*(2*x+1)^2)"),
    );
    assert!(verify_morphism(&c, &good));
    let bad = EllipticMorphism::new(
        parse_element("1/3", &k).unwrap(),
        rf("x^2/(2*x+1)"),
        rf("x/(a*(2*x+1)^2)"),
    );
    assert!(!verify_morphism(&c, &bad));
}

#[test]
fn independence_sees_duplicates() {
    let k = tower(&["a^2-2"]);
    let rf = |s: &str| parse_rational_function(s, "x", &k).unwrap();
    let m = EllipticMorphism::new(
        parse_element("1/2", &k).unwrap(),
        rf("x^2/(2*x+1)"),
        rf("x/(a*(2*x+1)^2)"),
    );
    assert_eq!(independence_rank(&[m.clone(), m.clone()]).unwrap(), 1);
    assert_eq!(independence_rank(&[]).unwrap(), 0);
}

#[test]
fn morphism_json_round_trip() {
    let k = tower(&["a^2-2"]);
    let rf = |s: &str| parse_rational_function(s, "x", &k).unwrap();
    let m = EllipticMorphism::new(
        parse_element("3/4", &k).unwrap(),
        rf("(x+1)^2/(4*x+2)"),
        rf("-(x+1)/(4*(2*x+1)^2)"),
    );
    let back = EllipticMorphism::from_json(&m.to_json()).unwrap();
    assert_eq!(back.kappa, m.kappa);
    assert_eq!(back.f, m.f);
    assert_eq!(back.g, m.g);
}

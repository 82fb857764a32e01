//! Benchmark inputs shared by the criterion benches.

use std::sync::Arc;

use hyperell_core::integrate::HyperellipticIntegrand;
use hyperell_core::morphisms::EllipticMorphism;
use hyperell_core::text::{parse_element, parse_poly, parse_rational_function, parse_tower};
use hyperell_core::zeta::HyperellipticCurve;
use hyperell_core::NumberField;

pub fn genus_two_curve() -> HyperellipticCurve {
    HyperellipticCurve::from_ints(&[1, 6, 9, -4, -10, 4]).unwrap()
}

pub fn sqrt2() -> Arc<NumberField> {
    parse_tower(&["a^2-2".to_string()]).unwrap()
}

/// Two independent degree-2 morphisms of the genus-2 curve, over Q(√2).
pub fn genus_two_morphisms() -> Vec<EllipticMorphism> {
    let k = sqrt2();
    let rf = |s: &str| parse_rational_function(s, "x", &k).unwrap();
    let el = |s: &str| parse_element(s, &k).unwrap();
    vec![
        EllipticMorphism::new(el("1/2"), rf("x^2/(2*x+1)"), rf("x/(a*(2*x+1)^2)")),
        EllipticMorphism::new(el("3/4"), rf("(x+1)^2/(4*x+2)"), rf("-(x+1)/(4*(2*x+1)^2)")),
    ]
}

pub fn genus_two_integrand(den: &str) -> HyperellipticIntegrand {
    let k = sqrt2();
    HyperellipticIntegrand::new(
        parse_poly("1", "x", &k).unwrap(),
        parse_poly(den, "x", &k).unwrap(),
        genus_two_curve(),
    )
    .unwrap()
}

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::search::PartitionSpec;
use crate::arith::{Field, NfElem, NumberField};
use crate::error::{Error, Result};
use crate::poly::{RationalFunction, UniPoly};
use crate::text::{
    element_from_json, element_to_json, field_from_json, field_to_json, rf_from_json, rf_to_json,
};
use crate::zeta::HyperellipticCurve;

/// A map (x, y) ↦ (F(x), y·G(x)) onto z(z−1)(z−κ) = w², i.e. S·G² = F(F−1)(F−κ).
/// The sign of G fixes the branch, so `epsilon` is always +1.
#[derive(Clone)]
pub struct EllipticMorphism {
    pub kappa: NfElem,
    pub f: RationalFunction<NfElem>,
    pub g: RationalFunction<NfElem>,
    pub epsilon: i8,
    pub spec: Option<PartitionSpec>,
}

impl EllipticMorphism {
    pub fn new(kappa: NfElem, f: RationalFunction<NfElem>, g: RationalFunction<NfElem>) -> Self {
        EllipticMorphism {
            kappa,
            f,
            g,
            epsilon: 1,
            spec: None,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.kappa.field()
    }

    /// j = 256(κ²−κ+1)³ / (κ²(κ−1)²).
    pub fn j_invariant(&self) -> NfElem {
        j_invariant(&self.kappa)
    }

    /// F′/G when it is a polynomial.
    pub fn differential(&self) -> Option<UniPoly<NfElem>> {
        let q = self.f.derivative().div(&self.g).ok()?;
        q.is_polynomial().then(|| q.num().clone())
    }

    /// The same morphism with coefficients in an extension field.
    pub fn embed(&self, field: &Arc<NumberField>) -> Result<Self> {
        let z = field.zero();
        Ok(EllipticMorphism {
            kappa: field.embed(&self.kappa)?,
            f: self.f.try_map(&z, |c| field.embed(c))?,
            g: self.g.try_map(&z, |c| field.embed(c))?,
            epsilon: self.epsilon,
            spec: self.spec.clone(),
        })
    }

    /// Largest numerator/denominator degree of F and G.
    pub fn degree(&self) -> usize {
        [self.f.num(), self.f.den(), self.g.num(), self.g.den()]
            .iter()
            .map(|p| p.deg().max(0) as usize)
            .max()
            .unwrap()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": field_to_json(self.field()),
            "kappa": element_to_json(&self.kappa),
            "F": rf_to_json(&self.f, "x"),
            "G": rf_to_json(&self.g, "x"),
            "epsilon": self.epsilon,
            "j": element_to_json(&self.j_invariant()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = match v.get("field") {
            Some(f) => field_from_json(f)?,
            None => field_from_json(&v["kappa"]["tower"])?,
        };
        let kappa = element_from_json(&v["kappa"], &field)?;
        let f = rf_from_json(&v["F"], "x", &field)?;
        let g = rf_from_json(&v["G"], "x", &field)?;
        let epsilon = v.get("epsilon").and_then(|e| e.as_i64()).unwrap_or(1);
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::Parse("epsilon must be 1 or -1".into()));
        }
        let g = if epsilon == -1 { g.neg() } else { g };
        Ok(EllipticMorphism::new(kappa, f, g))
    }
}

impl fmt::Display for EllipticMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[kappa = {}, F = {}, G = {}]",
            self.kappa, self.f, self.g
        )
    }
}

impl fmt::Debug for EllipticMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EllipticMorphism{self}")
    }
}

pub fn j_invariant(kappa: &NfElem) -> NfElem {
    let one = kappa.one();
    let t = kappa.mul(kappa).sub(kappa).add(&one);
    let num = t.pow(3).scale_int(256);
    let km1 = kappa.sub(&one);
    let den = kappa.mul(kappa).mul(&km1).mul(&km1);
    num.div(&den).expect("kappa is not 0 or 1")
}

/// Checks S·G² = F(F−1)(F−κ) exactly, κ ∉ {0, 1}, F nonconstant and F′/G a
/// polynomial of degree at most g − 1.
pub fn verify_morphism(c: &HyperellipticCurve, m: &EllipticMorphism) -> bool {
    verify_inner(c, m).unwrap_or(false)
}

fn verify_inner(c: &HyperellipticCurve, m: &EllipticMorphism) -> Result<bool> {
    let field = m.field().clone();
    if !field.contains_field(c.field()) {
        return Ok(false);
    }
    let k = &m.kappa;
    if k.is_zero() || k.is_one() || m.f.is_constant() || m.g.is_zero() {
        return Ok(false);
    }
    let z = field.zero();
    let f = m.f.try_map(&z, |x| field.embed(x))?;
    let g = m.g.try_map(&z, |x| field.embed(x))?;
    let s = RationalFunction::from_poly(field.embed_poly(c.s())?);
    let one = RationalFunction::one(&z);
    let lhs = s.mul(&g.mul(&g));
    let rhs = f
        .mul(&f.sub(&one))
        .mul(&f.sub(&RationalFunction::constant(k.clone())));
    if lhs != rhs {
        return Ok(false);
    }
    let q = f.derivative().div(&g)?;
    Ok(q.is_polynomial() && q.num().deg() <= c.genus() as isize - 1)
}

/// Rank over the coefficient field of the coefficient vectors of the F′/G.
pub fn independence_rank(list: &[EllipticMorphism]) -> Result<usize> {
    if list.is_empty() {
        return Ok(0);
    }
    let field = common_field(list).ok_or(Error::DomainMismatch)?;
    let mut rows = vec![];
    for m in list {
        let m = m.embed(&field)?;
        let d = m
            .differential()
            .ok_or_else(|| Error::Invalid(format!("F'/G is not a polynomial for {m}")))?;
        rows.push(d.coeffs().to_vec());
    }
    Ok(rank(rows, &field.zero()))
}

/// The largest field of the list, or None when the fields do not lie on one chain.
pub fn common_field(list: &[EllipticMorphism]) -> Option<Arc<NumberField>> {
    let top = list
        .iter()
        .map(|m| m.field().clone())
        .max_by_key(|f| (f.depth(), f.degree()))?;
    list.iter()
        .all(|m| top.contains_field(m.field()))
        .then_some(top)
}

/// Row rank by Gaussian elimination.
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>, zero: &F) -> usize {
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in rows.iter_mut() {
        r.resize(width, zero.zero());
    }
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<F> = rows[rank].iter().map(|v| v.mul(&inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::text::{parse_rational_function, parse_tower};

    fn paper_curve() -> HyperellipticCurve {
        HyperellipticCurve::from_ints(&[1, 6, 9, -4, -10, 4]).unwrap()
    }

    #[test]
    fn identity_on_genus_one() {
        let c = HyperellipticCurve::from_ints(&[0, 2, -3, 1]).unwrap();
        let q = NumberField::rationals();
        let m = EllipticMorphism::new(
            q.from_int(2),
            RationalFunction::x(&q.zero()),
            RationalFunction::one(&q.zero()),
        );
        assert!(verify_morphism(&c, &m));
        assert_eq!(m.differential().unwrap(), UniPoly::one(&q.zero()));
        let bad =
            EllipticMorphism::new(m.kappa.clone(), m.f.clone(), RationalFunction::x(&q.zero()));
        assert!(!verify_morphism(&c, &bad));
    }

    #[test]
    fn paper_pair_is_valid_and_independent() {
        let c = paper_curve();
        let k = parse_tower(&["a^2-2".into()]).unwrap();
        let rf = |s: &str| parse_rational_function(s, "x", &k).unwrap();
        let half = k.from_rational(&Rational::new(1, 2).unwrap());
        let m1 = EllipticMorphism::new(half, rf("x^2/(2x+1)"), rf("x/(a*(2x+1)^2)"));
        let q = NumberField::rationals();
        let rq = |s: &str| parse_rational_function(s, "x", &q).unwrap();
        let m2 = EllipticMorphism::new(
            q.from_rational(&Rational::new(3, 4).unwrap()),
            rq("(x+1)^2/(4x+2)"),
            rq("-(x+1)/(4(2x+1)^2)"),
        );
        assert!(verify_morphism(&c, &m1));
        assert!(verify_morphism(&c, &m2));
        assert_eq!(m1.differential().unwrap().deg(), 1);
        assert_eq!(independence_rank(&[m1.clone(), m2.clone()]).unwrap(), 2);
        assert_eq!(independence_rank(&[m1.clone(), m1.clone()]).unwrap(), 1);
        let tampered = EllipticMorphism::new(m1.kappa.clone(), m1.f.clone(), m1.g.mul(&rf("x")));
        assert!(!verify_morphism(&c, &tampered));
    }

    #[test]
    fn j_invariant_relation() {
        let q = NumberField::rationals();
        let k = q.from_rational(&Rational::new(3, 4).unwrap());
        let j = j_invariant(&k);
        let one = q.one();
        let lhs = j.mul(&k.mul(&k)).mul(&k.sub(&one).mul(&k.sub(&one)));
        let rhs = k.mul(&k).sub(&k).add(&one).pow(3).scale_int(256);
        assert_eq!(lhs, rhs);
        // κ = −1 is the j = 1728 curve
        assert_eq!(j_invariant(&q.from_int(-1)), q.from_int(1728));
    }

    #[test]
    fn json_round_trip() {
        let k = parse_tower(&["a^2-2".into()]).unwrap();
        let rf = |s: &str| parse_rational_function(s, "x", &k).unwrap();
        let m = EllipticMorphism::new(
            k.from_rational(&Rational::new(1, 2).unwrap()),
            rf("x^2/(2x+1)"),
            rf("x/(a*(2x+1)^2)"),
        );
        let back = EllipticMorphism::from_json(&m.to_json()).unwrap();
        assert_eq!(back.f, m.f);
        assert_eq!(back.g, m.g);
        assert!(verify_morphism(&paper_curve(), &back));
    }
}

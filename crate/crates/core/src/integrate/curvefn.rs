//! Functions a(x) + b(x)·y on the curve y² = S(x), and integrands P/(Q√S).

use std::fmt;
use std::sync::Arc;

use crate::arith::{Field, NfElem, NumberField};
use crate::error::{Error, Result};
use crate::poly::{RationalFunction, UniPoly};
use crate::zeta::{normalize_curve, HyperellipticCurve};

type Rf = RationalFunction<NfElem>;

/// a + b·y in K(x)[y]/(y² − S).
#[derive(Clone, Debug, PartialEq)]
pub struct CurveFunction {
    pub a: Rf,
    pub b: Rf,
}

impl CurveFunction {
    pub fn new(a: Rf, b: Rf) -> Self {
        CurveFunction { a, b }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        let z = field.zero();
        CurveFunction {
            a: Rf::zero(&z),
            b: Rf::zero(&z),
        }
    }

    /// b·y.
    pub fn odd(b: Rf) -> Self {
        let z = b.ctx().zero();
        CurveFunction { a: Rf::zero(&z), b }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.a.ctx().field()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        CurveFunction {
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        CurveFunction {
            a: self.a.sub(&rhs.a),
            b: self.b.sub(&rhs.b),
        }
    }

    pub fn neg(&self) -> Self {
        CurveFunction {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    pub fn scale(&self, c: &NfElem) -> Self {
        CurveFunction {
            a: self.a.scale(c),
            b: self.b.scale(c),
        }
    }

    pub fn mul(&self, rhs: &Self, s: &UniPoly<NfElem>) -> Self {
        let s = Rf::from_poly(s.clone());
        CurveFunction {
            a: self.a.mul(&rhs.a).add(&self.b.mul(&rhs.b).mul(&s)),
            b: self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a)),
        }
    }

    /// a − b·y.
    pub fn conjugate(&self) -> Self {
        CurveFunction {
            a: self.a.clone(),
            b: self.b.neg(),
        }
    }

    /// a² − b²S.
    pub fn norm(&self, s: &UniPoly<NfElem>) -> Rf {
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul_poly(s))
    }

    /// d/dx, using y′ = S′y/(2S).
    pub fn derivative(&self, s: &UniPoly<NfElem>) -> Self {
        let sr = Rf::from_poly(s.clone());
        let ds = Rf::from_poly(s.derivative());
        let two = sr.ctx().from_int(2);
        let yb = self.b.mul(&ds).div(&sr.scale(&two)).expect("S is nonzero");
        CurveFunction {
            a: self.a.derivative(),
            b: self.b.derivative().add(&yb),
        }
    }

    pub fn embed(&self, field: &Arc<NumberField>) -> Result<Self> {
        let z = field.zero();
        Ok(CurveFunction {
            a: self.a.try_map(&z, |c| field.embed(c))?,
            b: self.b.try_map(&z, |c| field.embed(c))?,
        })
    }

    pub fn try_map_coeffs(
        &self,
        f: impl Fn(&NfElem) -> Result<NfElem>,
        field: &Arc<NumberField>,
    ) -> Result<Self> {
        let z = field.zero();
        Ok(CurveFunction {
            a: self.a.try_map(&z, &f)?,
            b: self.b.try_map(&z, &f)?,
        })
    }

    /// Text with y written as `y`.
    pub fn fmt_y(&self) -> String {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => self.a.fmt_var("x"),
            (true, false) => format!("({})*y", self.b.fmt_var("x")),
            (false, false) => format!("{} + ({})*y", self.a.fmt_var("x"), self.b.fmt_var("x")),
        }
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_y())
    }
}

/// d/dx ln(R(x, y)/R(x, −y)), which is odd in y.
pub fn log_ratio_derivative(r: &CurveFunction, s: &UniPoly<NfElem>) -> Result<CurveFunction> {
    let (a, b) = (&r.a, &r.b);
    let sr = Rf::from_poly(s.clone());
    let ds = Rf::from_poly(s.derivative());
    let two = sr.ctx().from_int(2);
    let n = r.norm(s);
    if n.is_zero() {
        return Err(Error::Invalid("log argument has zero norm".into()));
    }
    // (2S(AB′ − A′B) + ABS′) / (S·N)
    let w = a.mul(&b.derivative()).sub(&a.derivative().mul(b));
    let top = sr.scale(&two).mul(&w).add(&a.mul(b).mul(&ds));
    Ok(CurveFunction::odd(top.div(&sr.mul(&n))?))
}

/// P/(Q√S) dx on a curve.
#[derive(Clone, Debug)]
pub struct HyperellipticIntegrand {
    /// P/Q in lowest terms.
    pub f: Rf,
    pub curve: HyperellipticCurve,
}

impl HyperellipticIntegrand {
    pub fn new(p: UniPoly<NfElem>, q: UniPoly<NfElem>, curve: HyperellipticCurve) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let f = Rf::new(p, q)?;
        Self::from_rational(f, curve)
    }

    pub fn from_rational(f: Rf, curve: HyperellipticCurve) -> Result<Self> {
        if !f.ctx().field().contains_field(curve.field()) {
            return Err(Error::DomainMismatch);
        }
        Ok(HyperellipticIntegrand { f, curve })
    }

    /// f(x)·dx/√raw(x) rewritten on the odd monic model of y² = raw(x).
    pub fn normalized(f: &Rf, raw: &UniPoly<NfElem>) -> Result<Self> {
        let field = f.ctx().field().clone();
        let curve = normalize_curve(&field.embed_poly(raw)?)?;
        let g = curve.record().pull_back(f);
        Self::from_rational(g, curve)
    }

    pub fn p(&self) -> &UniPoly<NfElem> {
        self.f.num()
    }

    pub fn q(&self) -> &UniPoly<NfElem> {
        self.f.den()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.f.ctx().field()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    /// The integrand as the curve function (P/(QS))·y.
    pub fn to_curve_function(&self) -> Result<CurveFunction> {
        let s = self.field().embed_poly(self.curve.s())?;
        Ok(CurveFunction::odd(self.f.div(&Rf::from_poly(s))?))
    }

    /// Reads P/Q back from an odd curve function.
    pub fn from_curve_function(g: &CurveFunction, curve: &HyperellipticCurve) -> Result<Self> {
        if !g.a.is_zero() {
            return Err(Error::Invalid("curve function has an even part".into()));
        }
        let s = g.field().embed_poly(curve.s())?;
        Self::from_rational(g.b.mul_poly(&s), curve.clone())
    }
}

impl fmt::Display for HyperellipticIntegrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sqrt = format!("sqrt({})", self.curve.s().fmt_var("x"));
        if self.q().is_one() {
            write!(f, "({})/{sqrt}", self.p().fmt_var("x"))
        } else {
            write!(
                f,
                "({})/(({}) * {sqrt})",
                self.p().fmt_var("x"),
                self.q().fmt_var("x")
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_rational_function;

    fn setup() -> (Arc<NumberField>, UniPoly<NfElem>) {
        let q = NumberField::rationals();
        let s = UniPoly::from_ints(&[0, 2, -3, 1], &q.zero());
        (q, s)
    }

    #[test]
    fn y_squared_is_s() {
        let (q, s) = setup();
        let y = CurveFunction::odd(Rf::one(&q.zero()));
        let y2 = y.mul(&y, &s);
        assert_eq!(y2.a, Rf::from_poly(s.clone()));
        assert!(y2.b.is_zero());
        // (y²)′ = S′ computed through the y-rule
        let d = y.mul(&y.derivative(&s), &s).scale(&q.from_int(2));
        assert_eq!(d.a, Rf::from_poly(s.derivative()));
    }

    #[test]
    fn log_derivative_matches_quotient_rule() {
        let (q, s) = setup();
        let rf = |t: &str| parse_rational_function(t, "x", &q).unwrap();
        let r = CurveFunction::new(rf("x^2+3"), rf("2"));
        let d = log_ratio_derivative(&r, &s).unwrap();
        // R′/R − R̄′/R̄ written with the norm
        let n = Rf::from_poly(s.clone());
        let rbar = r.conjugate();
        let lhs = r
            .derivative(&s)
            .mul(&rbar, &s)
            .sub(&rbar.derivative(&s).mul(&r, &s));
        let norm = r.norm(&s);
        let expect = CurveFunction::new(lhs.a.div(&norm).unwrap(), lhs.b.div(&norm).unwrap());
        assert_eq!(d, expect);
        assert!(!n.is_zero());
    }
}

//! Hyperelliptic curves y² = S(x) and their odd-degree models.

use std::fmt;
use std::sync::Arc;

use crate::arith::{Field, NfElem, NumberField, Rational};
use crate::error::{Error, Result};
use crate::poly::{factor_nf, RationalFunction, UniPoly};

/// The change of variables from a model (u, w) back to the raw curve (x, y):
/// x = (a·u + b)/(c·u + d) and y = ρ(u)·w.
#[derive(Clone, Debug)]
pub struct NormalizationRecord {
    pub raw: UniPoly<NfElem>,
    pub mobius: [NfElem; 4],
    pub rho: RationalFunction<NfElem>,
}

impl NormalizationRecord {
    pub fn identity(s: &UniPoly<NfElem>) -> Self {
        let z = s.ctx();
        NormalizationRecord {
            raw: s.clone(),
            mobius: [z.one(), z.zero(), z.zero(), z.one()],
            rho: RationalFunction::one(z),
        }
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = &self.mobius;
        a.is_one()
            && b.is_zero()
            && c.is_zero()
            && d.is_one()
            && self.rho.is_constant()
            && self.rho.num().coeff(0).is_one()
    }

    fn mobius_rf(m: &[NfElem; 4]) -> RationalFunction<NfElem> {
        let z = m[0].zero();
        let num = UniPoly::new(vec![m[1].clone(), m[0].clone()], &z);
        let den = UniPoly::new(vec![m[3].clone(), m[2].clone()], &z);
        RationalFunction::new(num, den).expect("invertible map")
    }

    /// x as a function of u.
    pub fn x_of_u(&self) -> RationalFunction<NfElem> {
        Self::mobius_rf(&self.mobius)
    }

    /// u as a function of x.
    pub fn u_of_x(&self) -> RationalFunction<NfElem> {
        let [a, b, c, d] = &self.mobius;
        Self::mobius_rf(&[d.clone(), b.neg(), c.neg(), a.clone()])
    }

    /// The factor dx/y = factor(u)·du/w.
    pub fn integrand_factor(&self) -> RationalFunction<NfElem> {
        self.x_of_u()
            .derivative()
            .div(&self.rho)
            .expect("nonzero scaling")
    }

    /// R(x)·dx/y rewritten as R̂(u)·du/w.
    pub fn pull_back(&self, r: &RationalFunction<NfElem>) -> RationalFunction<NfElem> {
        r.compose(&self.x_of_u()).mul(&self.integrand_factor())
    }

    /// A function of u rewritten in x.
    pub fn push_forward(&self, f: &RationalFunction<NfElem>) -> RationalFunction<NfElem> {
        f.compose(&self.u_of_x())
    }

    /// w = y · (this factor, as a function of x).
    pub fn w_over_y(&self) -> RationalFunction<NfElem> {
        self.push_forward(&self.rho).inv().expect("nonzero scaling")
    }
}

/// y² = S(x) with S squarefree of odd degree ≥ 3.
#[derive(Clone)]
pub struct HyperellipticCurve {
    s: UniPoly<NfElem>,
    record: NormalizationRecord,
}

impl HyperellipticCurve {
    /// Accepts an odd-degree squarefree S as is (leading coefficient arbitrary).
    pub fn new(s: UniPoly<NfElem>) -> Result<Self> {
        check_squarefree(&s)?;
        if s.deg() % 2 == 0 {
            return Err(Error::Invalid(format!(
                "{} has even degree; normalize it first",
                s.fmt_var("x")
            )));
        }
        let record = NormalizationRecord::identity(&s);
        Ok(HyperellipticCurve { s, record })
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Result<Self> {
        let q = NumberField::rationals();
        let s = UniPoly::new(
            coeffs.iter().map(|c| q.from_rational(c)).collect(),
            &q.zero(),
        );
        Self::new(s)
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        let q = NumberField::rationals();
        Self::new(UniPoly::from_ints(coeffs, &q.zero()))
    }

    pub fn s(&self) -> &UniPoly<NfElem> {
        &self.s
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.s.ctx().field()
    }

    pub fn degree(&self) -> usize {
        self.s.deg() as usize
    }

    pub fn genus(&self) -> usize {
        (self.degree() - 1) / 2
    }

    pub fn record(&self) -> &NormalizationRecord {
        &self.record
    }

    /// Coefficients of S when they are all rational.
    pub fn rational_coeffs(&self) -> Result<Vec<Rational>> {
        self.s
            .coeffs()
            .iter()
            .map(|c| {
                c.as_rational()
                    .ok_or_else(|| Error::Invalid("curve is not defined over Q".into()))
            })
            .collect()
    }

    pub fn discriminant(&self) -> NfElem {
        self.s.discriminant()
    }
}

impl fmt::Display for HyperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.s.fmt_var("x"))
    }
}

impl fmt::Debug for HyperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HyperellipticCurve({self})")
    }
}

fn check_squarefree(s: &UniPoly<NfElem>) -> Result<()> {
    if s.deg() < 3 {
        return Err(Error::Invalid(format!(
            "curve polynomial must have degree at least 3, got {}",
            s.fmt_var("x")
        )));
    }
    if s.gcd(&s.derivative())?.deg() > 0 {
        return Err(Error::Invalid(format!(
            "{} is not squarefree",
            s.fmt_var("x")
        )));
    }
    Ok(())
}

/// Brings y² = S(x) to a monic odd-degree model. An even-degree S has a root r
/// in the coefficient field sent to infinity by x = r + 1/t; the result is then
/// made monic by x = u/c, y = w·c^{-(d-1)/2}.
pub fn normalize_curve(s_raw: &UniPoly<NfElem>) -> Result<HyperellipticCurve> {
    check_squarefree(s_raw)?;
    let z = s_raw.ctx().clone();
    let n = s_raw.deg() as u64;
    // x = (a u + b)/(c u + d), y = rho(u) w; built up as we go
    let mut mobius = [z.one(), z.zero(), z.zero(), z.one()];
    let mut rho = RationalFunction::one(&z);
    let mut s = s_raw.clone();
    if n % 2 == 0 {
        let factors = factor_nf(s_raw)?;
        let Some((lin, _)) = factors.iter().find(|(f, _)| f.deg() == 1) else {
            let smallest = factors
                .iter()
                .min_by_key(|(f, _)| f.deg())
                .map(|(f, _)| f.fmt_var("x"))
                .unwrap_or_default();
            return Err(Error::Invalid(format!(
                "even-degree curve has no root in the coefficient field; adjoin a root of {smallest}"
            )));
        };
        let r = lin.coeff(0).neg();
        let shifted = s_raw.compose(&UniPoly::new(vec![r.clone(), z.one()], &z));
        let mut v = shifted.coeffs().to_vec();
        v.resize(n as usize + 1, z.zero());
        v.reverse();
        s = UniPoly::new(v, &z);
        // x = r + 1/t = (r t + 1)/t, y = w t^{-n/2}
        mobius = [r, z.one(), z.one(), z.zero()];
        rho = RationalFunction::new(
            UniPoly::one(&z),
            UniPoly::monomial(z.one(), (n / 2) as usize),
        )?;
    }
    let c = s.lc();
    if !c.is_one() {
        let d = s.deg() as u64;
        // S(u/c) * c^(d-1)
        let cinv = c.inv()?;
        let mut pw = c.pow(d - 1);
        let mut v = vec![];
        for coeff in s.coeffs() {
            v.push(coeff.mul(&pw));
            pw = pw.mul(&cinv);
        }
        s = UniPoly::new(v, &z);
        // compose previous map with t = u/c
        let [a, b, cc, dd] = mobius;
        mobius = [a, b.mul(&c), cc, dd.mul(&c)];
        let t_of_u = RationalFunction::from_poly(UniPoly::monomial(cinv.clone(), 1));
        rho = rho.compose(&t_of_u).scale(&cinv.pow((d - 1) / 2));
    }
    let record = NormalizationRecord {
        raw: s_raw.clone(),
        mobius,
        rho,
    };
    Ok(HyperellipticCurve { s, record })
}

//! Partial fractions over irreducible denominators, with numerators written
//! as polynomials in a formal root.

use std::sync::Arc;

use super::{factor_nf, RationalFunction, UniPoly};
use crate::arith::{Field, NfElem, NumberField};
use crate::error::Result;

/// Σ_{P(α)=0} T(α) / (x − α)^multiplicity.
#[derive(Clone, Debug)]
pub struct PartialFractionTerm {
    /// Monic irreducible over the coefficient field.
    pub p: UniPoly<NfElem>,
    pub multiplicity: usize,
    /// T as a polynomial in α, reduced modulo P.
    pub numerator: UniPoly<NfElem>,
    /// K(α); equal to the coefficient field when P is linear.
    pub root_field: Arc<NumberField>,
}

impl PartialFractionTerm {
    /// The formal root α in `root_field`.
    pub fn alpha(&self) -> NfElem {
        if self.p.deg() == 1 {
            self.p.coeff(0).neg()
        } else {
            self.root_field.top_generator()
        }
    }

    /// T(α) as an element of `root_field`.
    pub fn value_at_root(&self) -> NfElem {
        let l = &self.root_field;
        let a = self.alpha();
        let t = self
            .numerator
            .map(&l.zero(), |c| l.embed(c).expect("base element"));
        t.eval(&a)
    }

    /// The term as a rational function over the coefficient field.
    pub fn to_rational_function(&self) -> Result<RationalFunction<NfElem>> {
        let k = self.p.ctx().field().clone();
        let j = self.multiplicity as u64;
        if self.p.deg() == 1 {
            let t = self.numerator.coeff(0);
            return RationalFunction::new(UniPoly::constant(t), self.p.pow(j));
        }
        let l = &self.root_field;
        let p_l = l.embed_poly(&self.p)?;
        let cof = p_l.exact_div(&UniPoly::linear_root(&self.alpha()))?.pow(j);
        let num = cof.scale(&self.value_at_root());
        let traced: Vec<NfElem> = num
            .coeffs()
            .iter()
            .map(|c| l.relative_trace(c))
            .collect::<Result<_>>()?;
        RationalFunction::new(UniPoly::new(traced, &k.zero()), self.p.pow(j))
    }
}

#[derive(Clone, Debug)]
pub struct PartialFractionForm {
    pub polynomial_part: UniPoly<NfElem>,
    pub terms: Vec<PartialFractionTerm>,
}

impl PartialFractionForm {
    pub fn recombine(&self) -> Result<RationalFunction<NfElem>> {
        let mut acc = RationalFunction::from_poly(self.polynomial_part.clone());
        for t in &self.terms {
            acc = acc.add(&t.to_rational_function()?);
        }
        Ok(acc)
    }
}

/// Taylor expansion of p at `a` truncated mod u^n: coefficients of u^0..u^{n-1}.
fn taylor(p: &UniPoly<NfElem>, a: &NfElem, n: usize) -> Vec<NfElem> {
    let shifted = p.compose(&UniPoly::new(vec![a.clone(), a.one()], &a.zero()));
    (0..n).map(|i| shifted.coeff(i)).collect()
}

fn series_mul(a: &[NfElem], b: &[NfElem], n: usize) -> Vec<NfElem> {
    let z = a[0].zero();
    let mut out = vec![z; n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

fn series_inv(a: &[NfElem], n: usize) -> Result<Vec<NfElem>> {
    let inv0 = a[0].inv()?;
    let mut out = vec![inv0.clone()];
    for k in 1..n {
        let mut s = a[0].zero();
        for i in 1..=k {
            s = s.add(&a[i].mul(&out[k - i]));
        }
        out.push(s.neg().mul(&inv0));
    }
    Ok(out)
}

pub fn partial_fractions(f: &RationalFunction<NfElem>) -> Result<PartialFractionForm> {
    let k = f.ctx().field().clone();
    let (q, r) = f.num().divrem(f.den())?;
    let mut terms = vec![];
    for (p, e) in factor_nf(f.den())? {
        let rest = f.den().exact_div(&p.pow(e as u64))?;
        let (root_field, alpha) = if p.deg() == 1 {
            (k.clone(), p.coeff(0).neg())
        } else {
            let l = k.adjoin_irreducible(&p, "alpha")?;
            let a = l.top_generator();
            (l, a)
        };
        let l = &root_field;
        let emb = |u: &UniPoly<NfElem>| l.embed_poly(u);
        let p_l = emb(&p)?;
        let cof = p_l
            .exact_div(&UniPoly::linear_root(&alpha))?
            .pow(e as u64)
            .mul(&emb(&rest)?);
        let num_series = taylor(&emb(&r)?, &alpha, e);
        let den_series = taylor(&cof, &alpha, e);
        let h = series_mul(&num_series, &series_inv(&den_series, e)?, e);
        for j in 1..=e {
            let t = &h[e - j];
            if t.is_zero() {
                continue;
            }
            let numerator = if p.deg() == 1 {
                UniPoly::constant(t.clone())
            } else {
                UniPoly::new(l.relative_coords(t)?, &k.zero())
            };
            terms.push(PartialFractionTerm {
                p: p.clone(),
                multiplicity: j,
                numerator,
                root_field: root_field.clone(),
            });
        }
    }
    Ok(PartialFractionForm {
        polynomial_part: q,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn kp(k: &Arc<NumberField>, v: &[i64]) -> UniPoly<NfElem> {
        UniPoly::from_ints(v, &k.zero())
    }

    #[test]
    fn one_over_x2_minus_1() {
        let q = NumberField::rationals();
        let f = RationalFunction::new(kp(&q, &[1]), kp(&q, &[-1, 0, 1])).unwrap();
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(pf.terms.len(), 2);
        let half = q.from_rational(&Rational::new(1, 2).unwrap());
        let at_one = pf.terms.iter().find(|t| t.alpha() == q.one()).unwrap();
        assert_eq!(at_one.numerator, UniPoly::constant(half.clone()));
        let at_minus_one = pf
            .terms
            .iter()
            .find(|t| t.alpha() == q.from_int(-1))
            .unwrap();
        assert_eq!(at_minus_one.numerator, UniPoly::constant(half.neg()));
        assert_eq!(pf.recombine().unwrap(), f);
    }

    #[test]
    fn residue_in_formal_root() {
        // x/(x^2-2) = sum over a^2=2 of (1/2)/(x - a)
        let q = NumberField::rationals();
        let f = RationalFunction::new(kp(&q, &[0, 1]), kp(&q, &[-2, 0, 1])).unwrap();
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(pf.terms.len(), 1);
        let half = q.from_rational(&Rational::new(1, 2).unwrap());
        assert_eq!(pf.terms[0].numerator, UniPoly::constant(half));
        assert_eq!(pf.recombine().unwrap(), f);
    }

    #[test]
    fn double_pole() {
        // (x+1)/x^2 = 1/x + 1/x^2
        let q = NumberField::rationals();
        let f = RationalFunction::new(kp(&q, &[1, 1]), kp(&q, &[0, 0, 1])).unwrap();
        let pf = partial_fractions(&f).unwrap();
        let mults: Vec<usize> = pf.terms.iter().map(|t| t.multiplicity).collect();
        assert_eq!(mults, vec![1, 2]);
        assert!(pf
            .terms
            .iter()
            .all(|t| t.numerator == UniPoly::constant(q.one())));
        assert_eq!(pf.recombine().unwrap(), f);
    }

    #[test]
    fn repeated_irreducible_quadratic() {
        let q = NumberField::rationals();
        let den = kp(&q, &[1, 0, 1]).pow(2).mul(&kp(&q, &[3, 1]));
        let f = RationalFunction::new(kp(&q, &[5, -1, 0, 2, 7]), den).unwrap();
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(pf.recombine().unwrap(), f);
    }
}

//! Factorization over number fields by Trager's norm method.

use super::factor_ff::sort_factors;
use super::factor_q::factor_q;
use super::UniPoly;
use crate::arith::numfield::norm_poly;
use crate::arith::NfElem;
use crate::error::{Error, Result};

/// Monic irreducible factors over the coefficient field, with multiplicities.
pub fn factor_nf(f: &UniPoly<NfElem>) -> Result<Vec<(UniPoly<NfElem>, usize)>> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let k = f.ctx().field().clone();
    let kz = k.zero();
    if k.degree() == 1 {
        let fq = f.map(&crate::arith::Rational::zero_q(), |c| c.coords()[0].clone());
        let mut out: Vec<(UniPoly<NfElem>, usize)> = factor_q(&fq)?
            .into_iter()
            .map(|(g, m)| (g.map(&kz, |c| k.from_rational(c)), m))
            .collect();
        sort_factors(&mut out);
        return Ok(out);
    }
    let mut out = vec![];
    for (g, mult) in f.squarefree_decomposition()? {
        for h in factor_squarefree(&g)? {
            out.push((h, mult));
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

fn factor_squarefree(g: &UniPoly<NfElem>) -> Result<Vec<UniPoly<NfElem>>> {
    if g.deg() <= 1 {
        return Ok(vec![g.monic()]);
    }
    let k = g.ctx().field().clone();
    let kz = k.zero();
    let theta = k.theta();
    for s in 0..64i64 {
        let shift = UniPoly::new(vec![theta.scale_int(-s), k.one()], &kz);
        let gs = g.compose(&shift);
        let n = norm_poly(&gs);
        if n.gcd(&n.derivative())?.deg() > 0 {
            continue;
        }
        let facs = factor_q(&n)?;
        if facs.len() == 1 {
            return Ok(vec![g.monic()]);
        }
        let back = UniPoly::new(vec![theta.scale_int(s), k.one()], &kz);
        let mut out = vec![];
        for (h, _) in facs {
            let hk = h.map(&kz, |c| k.from_rational(c));
            let d = gs.gcd(&hk)?;
            if d.deg() > 0 {
                out.push(d.compose(&back).monic());
            }
        }
        return Ok(out);
    }
    Err(Error::Resource(
        "no squarefree norm found with shift below 64".into(),
    ))
}

pub fn is_irreducible_nf(f: &UniPoly<NfElem>) -> Result<bool> {
    if f.deg() < 1 {
        return Ok(false);
    }
    let fac = factor_nf(f)?;
    Ok(fac.len() == 1 && fac[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{NumberField, Rational};

    #[test]
    fn x4_plus_1_over_q_sqrt2() {
        let k = NumberField::simple(&UniPoly::from_ints(&[-2, 0, 1], &Rational::zero_q()), "a")
            .unwrap();
        let f = UniPoly::from_ints(&[1, 0, 0, 0, 1], &k.zero());
        let fac = factor_nf(&f).unwrap();
        assert_eq!(fac.len(), 2);
        let a = k.top_generator();
        // x^4 + 1 = (x^2 - a x + 1)(x^2 + a x + 1)
        let expect = UniPoly::new(vec![k.one(), a.clone(), k.one()], &k.zero());
        assert!(fac.iter().any(|(g, _)| *g == expect));
        let prod = fac[0].0.mul(&fac[1].0);
        assert_eq!(prod, f);
    }

    #[test]
    fn x2_minus_3_stays_irreducible_over_q_sqrt2() {
        let k = NumberField::simple(&UniPoly::from_ints(&[-2, 0, 1], &Rational::zero_q()), "a")
            .unwrap();
        let f = UniPoly::from_ints(&[-3, 0, 1], &k.zero());
        assert!(is_irreducible_nf(&f).unwrap());
        let g = UniPoly::from_ints(&[-8, 0, 1], &k.zero());
        assert_eq!(factor_nf(&g).unwrap().len(), 2);
    }
}

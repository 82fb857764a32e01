//! Removal of multiple poles using second-kind elliptic integrals and an
//! algebraic part B/(Q̂√S).

use std::sync::Arc;

use super::curvefn::HyperellipticIntegrand;
use super::expr::{EllipticExpression, EllipticTerm, TermGroup};
use crate::arith::{Field, NfElem, NumberField};
use crate::error::{Error, Result, Stage};
use crate::integrate::CurveFunction;
use crate::morphisms::EllipticMorphism;
use crate::poly::{RationalFunction, UniPoly};

type Rf = RationalFunction<NfElem>;

/// Particular solution of M·u = rhs (free unknowns set to zero), or None.
pub fn solve_linear<F: Field>(
    mut rows: Vec<Vec<F>>,
    mut rhs: Vec<F>,
    ncols: usize,
    zero: &F,
) -> Option<Vec<F>> {
    let mut pivots = vec![];
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        rhs[r] = rhs[r].mul(&inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let v = rows[i][j].sub(&f.mul(&rows[r][j]));
                    rows[i][j] = v;
                }
                rhs[i] = rhs[i].sub(&f.mul(&rhs[r]));
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut sol = vec![zero.zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rhs[i].clone();
    }
    Some(sol)
}

/// The largest of the given fields, which must form a chain.
pub fn working_field<'a>(
    fields: impl IntoIterator<Item = &'a Arc<NumberField>>,
) -> Result<Arc<NumberField>> {
    let fields: Vec<&Arc<NumberField>> = fields.into_iter().collect();
    let top = fields
        .iter()
        .max_by_key(|f| (f.depth(), f.degree()))
        .expect("at least one field");
    if fields.iter().all(|f| top.contains_field(f)) {
        Ok((*top).clone())
    } else {
        Err(Error::DomainMismatch)
    }
}

fn lcm(a: &UniPoly<NfElem>, b: &UniPoly<NfElem>) -> Result<UniPoly<NfElem>> {
    Ok(a.mul(b).exact_div(&a.gcd(b)?)?.monic())
}

/// The linear system of the ansatz Σ a_i F_iF_i′/G_i + √S(B/(Q̂√S))′ − P/Q.
struct HermiteSystem {
    base: Arc<NumberField>,
    s: UniPoly<NfElem>,
    q_hat: UniPoly<NfElem>,
    /// x-coefficient forms of each unknown's contribution: a_1..a_n then b_0..b_ℓ.
    basis: Vec<Rf>,
    n_a: usize,
    rows: Vec<Vec<NfElem>>,
    rhs: Vec<NfElem>,
}

fn build_system(i: &HyperellipticIntegrand, l: &[EllipticMorphism]) -> Result<(HermiteSystem, Rf)> {
    let curve = &i.curve;
    let base = working_field(std::iter::once(i.field()).chain(l.iter().map(|m| m.field())))?;
    let z = base.zero();
    let ms: Vec<EllipticMorphism> = l.iter().map(|m| m.embed(&base)).collect::<Result<_>>()?;
    let s = base.embed_poly(curve.s())?;
    let f = i.f.try_map(&z, |c| base.embed(c))?;
    let mut q_tilde = f.den().clone();
    for m in &ms {
        q_tilde = lcm(&q_tilde, m.f.den())?;
    }
    let mut q_hat = UniPoly::one(&z);
    for (p, e) in q_tilde.squarefree_decomposition()? {
        q_hat = q_hat.mul(&p.pow(e as u64 - 1));
    }
    let q_hat = q_hat.monic();
    // B/(Q̂√S) must reach the order at infinity of the integrand and of every E-term
    let mut e_terms = vec![];
    for m in &ms {
        e_terms.push(m.f.mul(&m.f.derivative()).div(&m.g)?);
    }
    let growth = e_terms
        .iter()
        .chain([&f])
        .filter_map(|h| h.degree())
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let ell = q_hat.deg() as usize + 1 + growth;

    let sr = Rf::from_poly(s.clone());
    let ds = Rf::from_poly(s.derivative());
    let two = base.from_int(2);
    let mut basis = e_terms;
    for k in 0..=ell {
        let w = Rf::new(UniPoly::monomial(base.one(), k), q_hat.clone())?;
        basis.push(w.derivative().sub(&w.mul(&ds).div(&sr.scale(&two))?));
    }
    let n_a = ms.len();

    // N/D with D the common denominator: J̃ must have a squarefree denominator
    // prime to S and a polynomial part of degree < g.
    let mut d = f.den().clone();
    for b in &basis {
        d = lcm(&d, b.den())?;
    }
    let sqf = d.squarefree_part()?.monic();
    let d0 = sqf.exact_div(&sqf.gcd(&s)?)?;
    let d1 = d.exact_div(&d0)?;
    let g = curve.genus();
    let equations = |h: &Rf| -> Result<Vec<NfElem>> {
        let n = h.num().mul(&d.exact_div(h.den())?);
        let (q1, r1) = n.divrem(&d1)?;
        let (q2, _) = q1.divrem(&d0)?;
        let mut eq: Vec<NfElem> = (0..d1.deg() as usize).map(|k| r1.coeff(k)).collect();
        eq.extend((g..=(q2.deg().max(0) as usize).max(g)).map(|k| q2.coeff(k)));
        Ok(eq)
    };
    let cols: Vec<Vec<NfElem>> = basis.iter().map(&equations).collect::<Result<_>>()?;
    let target = equations(&f)?;
    let neq = cols
        .iter()
        .map(|c| c.len())
        .chain([target.len()])
        .max()
        .unwrap_or(0);
    let at = |v: &Vec<NfElem>, k: usize| v.get(k).cloned().unwrap_or_else(|| z.zero());
    let rows: Vec<Vec<NfElem>> = (0..neq)
        .map(|k| cols.iter().map(|c| at(c, k)).collect())
        .collect();
    let rhs: Vec<NfElem> = (0..neq).map(|k| at(&target, k)).collect();
    Ok((
        HermiteSystem {
            base,
            s,
            q_hat,
            basis,
            n_a,
            rows,
            rhs,
        },
        f,
    ))
}

/// Rank of the second-kind columns of the reduction system.
pub fn second_kind_rank(i: &HyperellipticIntegrand, l: &[EllipticMorphism]) -> Result<usize> {
    let (sys, _) = build_system(i, l)?;
    let cols: Vec<Vec<NfElem>> = (0..sys.n_a)
        .map(|j| sys.rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    Ok(crate::morphisms::rank(cols, &sys.base.zero()))
}

/// (H, J) with H′ + J equal to the integrand, J having only simple poles,
/// none at roots of S or at infinity. H holds second-kind terms and the
/// algebraic part B/(Q̂√S).
pub fn hermite_reduce(
    i: &HyperellipticIntegrand,
    l: &[EllipticMorphism],
) -> Result<(EllipticExpression, HyperellipticIntegrand)> {
    let (sys, f) = build_system(i, l)?;
    let z = sys.base.zero();
    let ncols = sys.basis.len();
    let sol = solve_linear(sys.rows.clone(), sys.rhs.clone(), ncols, &z).ok_or_else(|| {
        Error::NotDecomposable {
            stage: Stage::Hermite,
            reason: "no combination of second-kind integrals removes the multiple poles".into(),
        }
    })?;
    let mut residual = f.clone();
    for (u, b) in sol.iter().zip(&sys.basis) {
        residual = residual.sub(&b.scale(u));
    }
    check_simple_poles(&residual, &sys.s, i.curve.genus())?;
    let bpoly = UniPoly::new(sol[sys.n_a..].to_vec(), &z);
    let alg = Rf::new(bpoly, sys.q_hat.mul(&sys.s))?;
    let mut h = EllipticExpression::zero(&i.curve, &sys.base, l);
    h.algebraic = CurveFunction::odd(alg);
    let terms: Vec<EllipticTerm> = (0..sys.n_a)
        .filter(|&k| !sol[k].is_zero())
        .map(|k| EllipticTerm::SecondKind {
            coeff: sol[k].clone(),
            morphism: k,
        })
        .collect();
    if !terms.is_empty() {
        h.groups.push(TermGroup {
            field: sys.base.clone(),
            root: None,
            terms,
        });
    }
    Ok((
        h,
        HyperellipticIntegrand::from_rational(residual, i.curve.clone())?,
    ))
}

/// Squarefree denominator prime to S and polynomial part of degree < g.
pub fn check_simple_poles(f: &Rf, s: &UniPoly<NfElem>, genus: usize) -> Result<()> {
    let den = f.den();
    let ok_den = den.gcd(&den.derivative())?.is_constant() && den.gcd(s)?.is_constant();
    let (q, _) = f.num().divrem(den)?;
    if ok_den && q.deg() < genus as isize {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "reduced integrand {f} still has multiple poles, poles on S = 0 or at infinity"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::differentiate;
    use crate::text::parse_rational_function;
    use crate::zeta::HyperellipticCurve;

    #[test]
    fn second_kind_form_is_absorbed() {
        let c = HyperellipticCurve::from_ints(&[0, 2, -3, 1]).unwrap();
        let q = NumberField::rationals();
        let m = EllipticMorphism::new(q.from_int(2), Rf::x(&q.zero()), Rf::one(&q.zero()));
        let i = HyperellipticIntegrand::from_rational(Rf::x(&q.zero()), c).unwrap();
        let (h, j) = hermite_reduce(&i, &[m]).unwrap();
        assert!(j.is_zero());
        let terms: Vec<_> = h.terms().collect();
        assert_eq!(terms.len(), 1);
        assert!(matches!(
            terms[0],
            EllipticTerm::SecondKind { morphism: 0, .. }
        ));
        assert!(terms[0].coeff().is_one());
        assert!(h.algebraic.is_zero());
    }

    #[test]
    fn squarefree_denominator_passes_through() {
        let c = HyperellipticCurve::from_ints(&[0, 2, -3, 1]).unwrap();
        let q = NumberField::rationals();
        let m = EllipticMorphism::new(q.from_int(2), Rf::x(&q.zero()), Rf::one(&q.zero()));
        let f = parse_rational_function("1/((x-5)*(x+7))", "x", &q).unwrap();
        let i = HyperellipticIntegrand::from_rational(f.clone(), c).unwrap();
        let (h, j) = hermite_reduce(&i, &[m]).unwrap();
        assert_eq!(j.f, f);
        assert!(h.algebraic.is_zero() && h.groups.is_empty());
    }

    #[test]
    fn double_pole_on_genus_one() {
        let c = HyperellipticCurve::from_ints(&[0, 2, -3, 1]).unwrap();
        let q = NumberField::rationals();
        let m = EllipticMorphism::new(q.from_int(2), Rf::x(&q.zero()), Rf::one(&q.zero()));
        let f = parse_rational_function("(x^2+1)/(x-5)^2", "x", &q).unwrap();
        let i = HyperellipticIntegrand::from_rational(f, c.clone()).unwrap();
        let (h, j) = hermite_reduce(&i, &[m]).unwrap();
        check_simple_poles(&j.f, c.s(), 1).unwrap();
        let dh = differentiate(&h).unwrap();
        assert_eq!(
            dh.add(&j.to_curve_function().unwrap()),
            i.to_curve_function().unwrap()
        );
    }

    #[test]
    fn linear_solver() {
        let q = NumberField::rationals();
        let r = |v: &[i64]| v.iter().map(|&x| q.from_int(x)).collect::<Vec<_>>();
        let sol = solve_linear(vec![r(&[1, 1]), r(&[1, -1])], r(&[3, 1]), 2, &q.zero()).unwrap();
        assert_eq!(sol, r(&[2, 1]));
        assert!(solve_linear(vec![r(&[1, 1]), r(&[2, 2])], r(&[1, 3]), 2, &q.zero()).is_none());
    }
}

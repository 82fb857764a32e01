//! Buchberger's algorithm with the sugar selection strategy and both
//! Buchberger criteria.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly};

/// Terms sorted by decreasing monomial under a fixed order.
#[derive(Clone, Debug)]
struct SPoly<F: Field> {
    terms: Vec<(Monomial, F)>,
    sugar: u32,
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_div(b: &[u32], a: &[u32]) -> Monomial {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl<F: Field> SPoly<F> {
    fn from_multi(p: &MultiPoly<F>, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, F)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let sugar = terms.iter().map(|(m, _)| mono_deg(m)).max().unwrap_or(0);
        SPoly { terms, sugar }
    }

    fn to_multi(&self, nvars: usize, ctx: &F) -> MultiPoly<F> {
        MultiPoly::from_terms(nvars, ctx, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &F {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        for t in self.terms.iter_mut() {
            t.1 = t.1.mul(&inv);
        }
    }

    /// self - c * m * other
    fn sub_mul(&self, c: &F, m: &[u32], other: &Self, order: MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let scaled: Vec<(Monomial, F)> = other
            .terms
            .iter()
            .map(|(mm, cc)| (mono_mul(mm, m), cc.mul(c)))
            .collect();
        while i < self.terms.len() || j < scaled.len() {
            if j == scaled.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            if i == self.terms.len() {
                out.push((scaled[j].0.clone(), scaled[j].1.neg()));
                j += 1;
                continue;
            }
            match order.cmp(&self.terms[i].0, &scaled[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((scaled[j].0.clone(), scaled[j].1.neg()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = self.terms[i].1.sub(&scaled[j].1);
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let sugar = self.sugar.max(other.sugar + mono_deg(m));
        SPoly { terms: out, sugar }
    }
}

/// Full reduction of `f` by `basis` (every term, not just the leading one).
fn reduce<F: Field>(f: &SPoly<F>, basis: &[SPoly<F>], order: MonomialOrder) -> SPoly<F> {
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, F)> = vec![];
    while !rest.is_zero() {
        let lm = rest.lm().clone();
        let divisor = basis.iter().find(|g| mono_divides(g.lm(), &lm));
        match divisor {
            Some(g) => {
                let c = rest.lc().div(g.lc()).expect("nonzero leading coefficient");
                let m = mono_div(&lm, g.lm());
                rest = rest.sub_mul(&c, &m, g, order);
            }
            None => {
                let t = rest.terms.remove(0);
                done.push(t);
            }
        }
    }
    SPoly {
        terms: done,
        sugar: rest.sugar.max(f.sugar),
    }
}

fn s_poly<F: Field>(a: &SPoly<F>, b: &SPoly<F>, order: MonomialOrder) -> SPoly<F> {
    let l = mono_lcm(a.lm(), b.lm());
    let ma = mono_div(&l, a.lm());
    let mb = mono_div(&l, b.lm());
    // (l/lm a) a / lc a - (l/lm b) b / lc b
    let zero = SPoly {
        terms: vec![],
        sugar: 0,
    };
    let ca = a.lc().inv().expect("nonzero");
    let cb = b.lc().inv().expect("nonzero");
    let part = zero.sub_mul(&ca.neg(), &ma, a, order);
    part.sub_mul(&cb, &mb, b, order)
}

/// Limits for a Gröbner computation.
#[derive(Clone, Copy, Debug)]
pub struct GroebnerBudget {
    pub max_pairs: usize,
    pub max_basis: usize,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_pairs: 200_000,
            max_basis: 5_000,
        }
    }
}

/// Reduced Gröbner basis, monic, sorted by increasing leading monomial.
pub fn groebner<F: Field>(
    gens: &[MultiPoly<F>],
    order: MonomialOrder,
) -> Result<Vec<MultiPoly<F>>> {
    groebner_with_budget(gens, order, GroebnerBudget::default())
}

pub fn groebner_with_budget<F: Field>(
    gens: &[MultiPoly<F>],
    order: MonomialOrder,
    budget: GroebnerBudget,
) -> Result<Vec<MultiPoly<F>>> {
    let nonzero: Vec<&MultiPoly<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("ideal without generators".into()));
    };
    let nvars = first.nvars();
    let ctx = first.ctx().clone();
    if nonzero.is_empty() {
        return Ok(vec![]);
    }
    let mut basis: Vec<SPoly<F>> = vec![];
    let mut pairs: BTreeSet<(u32, Vec<u32>, usize, usize)> = BTreeSet::new();
    // pairs keyed by (sugar, lcm degree pattern, i, j); the lcm itself is recomputed on use
    let add = |basis: &mut Vec<SPoly<F>>,
               pairs: &mut BTreeSet<(u32, Vec<u32>, usize, usize)>,
               mut p: SPoly<F>| {
        p.make_monic();
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let l = mono_lcm(b.lm(), p.lm());
            let sugar = (b.sugar + mono_deg(&mono_div(&l, b.lm())))
                .max(p.sugar + mono_deg(&mono_div(&l, p.lm())));
            pairs.insert((sugar, grade_key(&l, order), i, k));
        }
        basis.push(p);
    };
    let mut initial: Vec<SPoly<F>> = nonzero
        .iter()
        .map(|g| SPoly::from_multi(g, order))
        .collect();
    initial.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in initial {
        let r = reduce(&g, &basis, order);
        if !r.is_zero() {
            if mono_deg(r.lm()) == 0 {
                return Ok(vec![MultiPoly::constant(nvars, ctx.one())]);
            }
            add(&mut basis, &mut pairs, r);
        }
    }
    let mut processed = 0usize;
    while let Some(key) = pairs.iter().next().cloned() {
        pairs.remove(&key);
        let (_, _, i, j) = key;
        processed += 1;
        if processed > budget.max_pairs || basis.len() > budget.max_basis {
            return Err(Error::Resource(format!(
                "Gröbner basis computation exceeded its budget ({} pairs, {} basis elements)",
                budget.max_pairs, budget.max_basis
            )));
        }
        let (a, b) = (&basis[i], &basis[j]);
        let l = mono_lcm(a.lm(), b.lm());
        // product criterion
        if mono_mul(a.lm(), b.lm()) == l {
            continue;
        }
        // chain criterion, in the form that is safe under equal lcms
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && mono_divides(basis[k].lm(), &l)
                && mono_lcm(a.lm(), basis[k].lm()) != l
                && mono_lcm(b.lm(), basis[k].lm()) != l
        });
        if chain {
            continue;
        }
        let s = s_poly(a, b, order);
        let r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        if mono_deg(r.lm()) == 0 {
            return Ok(vec![MultiPoly::constant(nvars, ctx.one())]);
        }
        add(&mut basis, &mut pairs, r);
    }
    // minimalize and interreduce
    let mut minimal: Vec<SPoly<F>> = vec![];
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, h)| k != i && mono_divides(h.lm(), g.lm()) && (h.lm() != g.lm() || k < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = vec![];
    for i in 0..minimal.len() {
        let others: Vec<SPoly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = SPoly {
            terms: vec![minimal[i].terms[0].clone()],
            sugar: 0,
        };
        let tail = SPoly {
            terms: minimal[i].terms[1..].to_vec(),
            sugar: 0,
        };
        let mut r = reduce(&tail, &others, order);
        r.terms.insert(0, lead.terms[0].clone());
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced.iter().map(|g| g.to_multi(nvars, &ctx)).collect())
}

fn grade_key(l: &[u32], order: MonomialOrder) -> Vec<u32> {
    match order {
        MonomialOrder::Lex => l.to_vec(),
        MonomialOrder::GrevLex => {
            let mut v = vec![mono_deg(l)];
            v.extend(l.iter().rev().map(|e| u32::MAX - e));
            v
        }
    }
}

/// Remainder of `f` on division by `basis`.
pub fn normal_form<F: Field>(
    f: &MultiPoly<F>,
    basis: &[MultiPoly<F>],
    order: MonomialOrder,
) -> MultiPoly<F> {
    let b: Vec<SPoly<F>> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SPoly::from_multi(g, order))
        .collect();
    reduce(&SPoly::from_multi(f, order), &b, order).to_multi(f.nvars(), f.ctx())
}

/// True when every variable has a pure power among the leading monomials.
pub fn is_zero_dimensional<F: Field>(gb: &[MultiPoly<F>], order: MonomialOrder) -> bool {
    let Some(first) = gb.first() else {
        return false;
    };
    let n = first.nvars();
    let lms: Vec<Monomial> = gb
        .iter()
        .filter_map(|g| g.leading_term(order).map(|(m, _)| m.clone()))
        .collect();
    if lms.iter().any(|m| mono_deg(m) == 0) {
        return true;
    }
    (0..n).all(|v| {
        lms.iter()
            .any(|m| m[v] > 0 && m.iter().enumerate().all(|(k, &e)| k == v || e == 0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn vars(n: usize) -> Vec<MultiPoly<Rational>> {
        (0..n)
            .map(|i| MultiPoly::var(n, i, &Rational::zero_q()))
            .collect()
    }

    fn c(v: i64, n: usize) -> MultiPoly<Rational> {
        MultiPoly::constant(n, Rational::from(v))
    }

    #[test]
    fn linear_system() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let gb = groebner(&[x.add(y), x.sub(y)], MonomialOrder::Lex).unwrap();
        assert_eq!(gb, vec![y.clone(), x.clone()]);
    }

    #[test]
    fn redundant_generator() {
        let v = vars(1);
        let x = &v[0];
        let gb = groebner(
            &[x.pow(2).sub(&c(1, 1)), x.sub(&c(1, 1))],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        assert_eq!(gb, vec![x.sub(&c(1, 1))]);
    }

    #[test]
    fn inconsistent_system() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let gb = groebner(&[x.mul(y).sub(&c(1, 2)), x.pow(2)], MonomialOrder::Lex).unwrap();
        assert_eq!(gb, vec![c(1, 2)]);
    }

    #[test]
    fn zero_dimensionality() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let o = MonomialOrder::Lex;
        assert!(is_zero_dimensional(
            &groebner(&[x.pow(2), y.pow(3)], o).unwrap(),
            o
        ));
        assert!(!is_zero_dimensional(&groebner(&[x.mul(y)], o).unwrap(), o));
        assert!(!is_zero_dimensional(&groebner(&[x.sub(y)], o).unwrap(), o));
    }

    #[test]
    fn members_reduce_to_zero() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let gens = vec![
            x.pow(2).add(y).add(z).sub(&c(1, 3)),
            x.add(&y.pow(2)).add(z).sub(&c(1, 3)),
            x.add(y).add(&z.pow(2)).sub(&c(1, 3)),
        ];
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            let gb = groebner(&gens, order).unwrap();
            for g in &gens {
                assert!(normal_form(g, &gb, order).is_zero());
            }
            assert!(is_zero_dimensional(&gb, order));
        }
    }
}

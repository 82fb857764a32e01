//! Polynomials in x whose coefficients are polynomials in the unknowns,
//! stored low degree first.

use crate::arith::{Field, NfElem};
use crate::poly::{MultiPoly, UniPoly};

pub type XPoly = Vec<MultiPoly<NfElem>>;

pub fn trim(mut a: XPoly) -> XPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn add(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.len().max(b.len());
    let z = a
        .first()
        .or(b.first())
        .map(|c| MultiPoly::zero(c.nvars(), c.ctx()));
    let Some(z) = z else { return vec![] };
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub fn neg(a: &XPoly) -> XPoly {
    a.iter().map(|c| c.neg()).collect()
}

pub fn sub(a: &XPoly, b: &XPoly) -> XPoly {
    add(a, &neg(b))
}

pub fn mul(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let z = MultiPoly::zero(a[0].nvars(), a[0].ctx());
    let mut out = vec![z; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

pub fn scale(a: &XPoly, c: &MultiPoly<NfElem>) -> XPoly {
    trim(a.iter().map(|x| x.mul(c)).collect())
}

pub fn constant(p: &UniPoly<NfElem>, nvars: usize) -> XPoly {
    trim(
        p.coeffs()
            .iter()
            .map(|c| MultiPoly::constant(nvars, c.clone()))
            .collect(),
    )
}

/// Pseudo-remainder of `a` by `w`: lc(w)^k·a = q·w + r with deg r < deg w.
pub fn prem(a: &XPoly, w: &XPoly) -> XPoly {
    let w = trim(w.clone());
    let e = w.len() - 1;
    let lc = w[e].clone();
    let mut r = trim(a.clone());
    while r.len() > e {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - e;
        let mut sub_term: XPoly = vec![MultiPoly::zero(top.nvars(), top.ctx()); shift];
        sub_term.extend(w.iter().map(|c| c.mul(&top)));
        let scaled = scale(&r, &lc);
        let mut next = sub(&scaled, &sub_term);
        // the leading coefficient cancels exactly
        next.truncate(r.len() - 1);
        r = trim(next);
    }
    r
}

/// Pseudo-division returning (q, r) with lc(w)^k·a = q·w + r.
pub fn pdivrem(a: &XPoly, w: &XPoly) -> (XPoly, XPoly, u32) {
    let w = trim(w.clone());
    let e = w.len() - 1;
    let lc = w[e].clone();
    let mut r = trim(a.clone());
    let mut q: XPoly = vec![];
    let mut k = 0;
    while r.len() > e {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - e;
        q = scale(&q, &lc);
        let mut mono: XPoly = vec![MultiPoly::zero(top.nvars(), top.ctx()); shift];
        mono.push(top.clone());
        q = add(&q, &mono);
        let sub_term = mul(&mono, &w);
        let mut next = sub(&scale(&r, &lc), &sub_term);
        next.truncate(r.len() - 1);
        r = trim(next);
        k += 1;
    }
    (q, r, k)
}

/// Value at a constant point x = v.
pub fn eval_at(a: &XPoly, v: &NfElem, nvars: usize) -> MultiPoly<NfElem> {
    let mut acc: Option<MultiPoly<NfElem>> = None;
    for c in a.iter().rev() {
        acc = Some(match acc {
            None => c.clone(),
            Some(s) => s.scale(v).add(c),
        });
    }
    acc.unwrap_or_else(|| MultiPoly::zero(nvars, &v.zero()))
}

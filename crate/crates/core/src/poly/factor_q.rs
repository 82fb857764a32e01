//! Factorization over Q by the Zassenhaus method: factor modulo a good
//! prime, Hensel-lift, recombine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor_ff::factor_ff;
use super::UniPoly;
use crate::arith::{is_prime, Fp, Rational};
use crate::error::{Error, Result};

type QPoly = UniPoly<Rational>;
type ZPoly = Vec<BigInt>;

/// Monic irreducible factors over Q with multiplicities, sorted by degree then coefficients.
pub fn factor_q(f: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let mut out = vec![];
    for (part, mult) in f.squarefree_decomposition()? {
        for g in factor_squarefree_z(&primitive_z(&part)) {
            out.push((to_q(&g).monic(), mult));
        }
    }
    sort_q(&mut out);
    Ok(out)
}

pub fn is_irreducible_q(f: &QPoly) -> Result<bool> {
    if f.deg() < 1 {
        return Ok(false);
    }
    let fac = factor_q(f)?;
    Ok(fac.len() == 1 && fac[0].1 == 1)
}

fn sort_q(v: &mut [(QPoly, usize)]) {
    v.sort_by(|a, b| {
        a.0.deg().cmp(&b.0.deg()).then_with(|| {
            let ka: Vec<&Rational> = a.0.coeffs().iter().rev().collect();
            let kb: Vec<&Rational> = b.0.coeffs().iter().rev().collect();
            ka.cmp(&kb)
        })
    });
}

/// Clears denominators and content; leading coefficient positive.
pub fn primitive_z(f: &QPoly) -> ZPoly {
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.denom());
    }
    let mut v: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return v;
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    for c in v.iter_mut() {
        *c = &*c / &g;
    }
    v
}

fn to_q(f: &ZPoly) -> QPoly {
    QPoly::new(
        f.iter().map(|c| Rational::from_int(c.clone())).collect(),
        &Rational::zero_q(),
    )
}

fn to_fp(f: &ZPoly, p: u64) -> UniPoly<Fp> {
    let pb = BigInt::from(p);
    let z = Fp::new_unchecked(0, p);
    UniPoly::new(
        f.iter()
            .map(|c| Fp::new_unchecked(c.mod_floor(&pb).to_u64().unwrap(), p))
            .collect(),
        &z,
    )
}

fn from_fp(f: &UniPoly<Fp>) -> ZPoly {
    f.coeffs().iter().map(|c| BigInt::from(c.value())).collect()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

fn zsymmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    let mut v: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zadd_scaled(a: &ZPoly, b: &ZPoly, s: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x + y * s
        })
        .collect()
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    zadd_scaled(a, b, &BigInt::from(-1))
}

fn primitive_part(a: &ZPoly) -> ZPoly {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    let mut v: ZPoly = a.iter().map(|c| c / &g).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

/// Factors a primitive squarefree integer polynomial.
pub(crate) fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() as isize - 1;
    if n <= 1 {
        return if n == 1 { vec![f.clone()] } else { vec![] };
    }
    let lc = f.last().unwrap().clone();
    // pick the good prime with the fewest modular factors among the first few
    let mut best: Option<(u64, Vec<UniPoly<Fp>>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p += 1;
        if !is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if fp
            .gcd(&fp.derivative())
            .map(|g| g.deg() > 0)
            .unwrap_or(true)
        {
            continue;
        }
        tried += 1;
        let fac: Vec<UniPoly<Fp>> = factor_ff(&fp).into_iter().map(|(g, _)| g).collect();
        if fac.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().map_or(true, |(_, b)| fac.len() < b.len()) {
            best = Some((p, fac));
        }
    }
    let (p, modular) = best.unwrap();
    // Mignotte-style bound on factor coefficients, times |lc| and a factor 2 for signs.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << (n as usize)) * lc.abs() * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f, lifted, &modulus)
}

/// Lifts f ≡ lc(f) · Π g_i (mod p) to a factorization modulo p^k; returns monic lifts.
fn hensel_lift(f: &ZPoly, factors: &[UniPoly<Fp>], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc_inv = f.last().unwrap().modinv(&pk).expect("lc coprime to p");
        return vec![zmod(&f.iter().map(|c| c * &lc_inv).collect(), &pk)];
    }
    let g0 = factors[0].clone();
    let mut h0 = UniPoly::constant(to_fp(&vec![f.last().unwrap().clone()], p).coeff(0));
    for g in &factors[1..] {
        h0 = h0.mul(g);
    }
    let (one, s, t) = g0.ext_gcd(&h0).expect("nonzero");
    debug_assert!(one.is_one());
    let mut g = from_fp(&g0);
    let mut h = from_fp(&h0);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&g, &h));
        let e: ZPoly = diff.iter().map(|c| c / &m).collect();
        let e = to_fp(&e, p);
        if !e.is_zero() {
            let (q, r) = t.mul(&e).divrem(&g0).expect("nonzero");
            let dh = s.mul(&e).add(&q.mul(&h0));
            g = zadd_scaled(&g, &from_fp(&r), &m);
            h = zadd_scaled(&h, &from_fp(&dh), &m);
        }
        m *= &pb;
    }
    let mut out = vec![zmod(&g, &pk)];
    out.extend(hensel_lift(&zmod(&h, &pk), &factors[1..], p, k));
    out
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = vec![];
    let mut f = f.clone();
    let mut remaining = lifted;
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let lc = f.last().unwrap().clone();
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let mut g = vec![lc.clone()];
            for &i in &idx {
                g = zmod(&zmul(&g, &remaining[i]), modulus);
            }
            let g = zsymmetric(&g, modulus);
            let ok_const =
                !g.is_empty() && !g[0].is_zero() && (&lc * &f[0]) % &g[0] == BigInt::zero()
                    || (!g.is_empty() && g[0].is_zero() && f[0].is_zero());
            if ok_const {
                let cand = primitive_part(&g);
                let (q, rem) = to_q(&f).divrem(&to_q(&cand)).expect("nonzero");
                if rem.is_zero() {
                    out.push(cand);
                    f = primitive_z(&q);
                    let keep: Vec<ZPoly> = remaining
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !idx.contains(i))
                        .map(|(_, v)| v.clone())
                        .collect();
                    remaining = keep;
                    continue 'outer;
                }
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

/// Factors a polynomial over Q and sorts the factors; wrapper used by callers
/// that need integer-primitive factors.
pub fn factor_z(f: &QPoly) -> Result<Vec<(ZPoly, usize)>> {
    let fac = factor_q(f)?;
    Ok(fac.into_iter().map(|(g, m)| (primitive_z(&g), m)).collect())
}

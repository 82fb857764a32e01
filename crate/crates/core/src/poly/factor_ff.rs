//! Factorization over finite fields: squarefree, distinct-degree and
//! equal-degree (Cantor–Zassenhaus) splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::arith::{Field, FiniteField};

const SEED: u64 = 0x5eed_0f_f1e1d;

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_ff<F: FiniteField>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let mut out = vec![];
    if f.deg() < 1 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (part, mult) in squarefree_ff(&f.monic()) {
        for (g, d) in distinct_degree(&part) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    sort_factors(&mut out);
    out
}

pub(crate) fn sort_factors<F: Field>(v: &mut [(UniPoly<F>, usize)]) {
    v.sort_by(|a, b| {
        a.0.deg().cmp(&b.0.deg()).then_with(|| {
            let ka: Vec<String> =
                a.0.coeffs()
                    .iter()
                    .rev()
                    .map(|c| format!("{:>24}", c.to_string()))
                    .collect();
            let kb: Vec<String> =
                b.0.coeffs()
                    .iter()
                    .rev()
                    .map(|c| format!("{:>24}", c.to_string()))
                    .collect();
            ka.cmp(&kb)
        })
    });
}

/// Squarefree decomposition in characteristic p, monic input.
pub fn squarefree_ff<F: FiniteField>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let z = f.ctx().clone();
    let p = z.characteristic() as usize;
    let mut out = vec![];
    let mut i = 1;
    let d = f.derivative();
    let mut c = f.gcd(&d).expect("nonzero");
    let mut w = f.exact_div(&c).expect("gcd divides");
    while w.deg() > 0 {
        let y = w.gcd(&c).expect("nonzero");
        let fac = w.exact_div(&y).expect("gcd divides");
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
        i += 1;
    }
    if c.deg() > 0 {
        // c is a p-th power
        let root = pth_root_poly(&c, p);
        for (g, m) in squarefree_ff(&root) {
            out.push((g, m * p));
        }
    }
    merge(out)
}

fn merge<F: Field>(v: Vec<(UniPoly<F>, usize)>) -> Vec<(UniPoly<F>, usize)> {
    let mut out: Vec<(UniPoly<F>, usize)> = vec![];
    for (g, m) in v {
        if let Some(e) = out.iter_mut().find(|(h, _)| h == &g) {
            e.1 += m;
        } else {
            out.push((g, m));
        }
    }
    out
}

fn pth_root_poly<F: FiniteField>(c: &UniPoly<F>, p: usize) -> UniPoly<F> {
    let z = c.ctx();
    let coeffs: Vec<F> = c.coeffs().iter().step_by(p).map(|a| a.pth_root()).collect();
    UniPoly::new(coeffs, z)
}

/// Groups a squarefree monic polynomial's factors by degree: (product, degree).
pub fn distinct_degree<F: FiniteField>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let z = f.ctx().clone();
    let q = z.order();
    let mut out = vec![];
    let mut rest = f.clone();
    let x = UniPoly::x(&z);
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d as isize + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x)).expect("nonzero");
        if g.deg() > 0 {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let dr = rest.deg() as usize;
        out.push((rest, dr));
    }
    out
}

fn random_poly<F: FiniteField>(z: &F, deg: usize, rng: &mut ChaCha8Rng) -> UniPoly<F> {
    let q = z.order();
    let coeffs: Vec<F> = (0..=deg)
        .map(|_| z.element(rng.gen::<u128>() % q))
        .collect();
    UniPoly::new(coeffs, z)
}

/// Splits a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree<F: FiniteField>(
    f: &UniPoly<F>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<UniPoly<F>> {
    let n = f.deg() as usize;
    if n == d {
        return vec![f.clone()];
    }
    let z = f.ctx().clone();
    let q = z.order();
    loop {
        let a = random_poly(&z, n - 1, rng);
        if a.deg() < 1 {
            continue;
        }
        let b = if q % 2 == 1 {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.pow_mod(q, f);
                acc = acc.mul_mod(&t, f);
            }
            acc.pow_mod((q - 1) / 2, f).sub(&UniPoly::one(&z))
        } else {
            // absolute trace map to F_2: a + a^2 + ... + a^(2^(kd-1))
            let k = q.trailing_zeros() as usize;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k * d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        };
        if b.is_zero() {
            continue;
        }
        let g = f.gcd(&b).expect("nonzero");
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Irreducibility test over a finite field.
pub fn is_irreducible_ff<F: FiniteField>(f: &UniPoly<F>) -> bool {
    if f.deg() < 1 {
        return false;
    }
    let fac = factor_ff(f);
    fac.len() == 1 && fac[0].1 == 1
}

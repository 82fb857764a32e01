//! Point counting on y² = S(x) over F_{p^k} by enumeration against a table
//! of square classes.

use rayon::prelude::*;

use super::curve::HyperellipticCurve;
use crate::arith::ext::gfp;
use crate::arith::is_prime;
use crate::arith::prime::mul_mod;
use crate::error::{Error, Result};

/// Default cap on the size of the field enumerated by one count.
pub const DEFAULT_COUNT_BUDGET: u128 = 1_000_000_000;

const MAX_K: usize = 40;

/// Reduction data of a curve at a good prime.
#[derive(Clone, Debug)]
pub struct ReducedCurve {
    pub p: u64,
    /// Coefficients of S mod p, low to high.
    pub s: Vec<u64>,
}

/// Whether p is a prime of good reduction for the (rational) curve.
pub fn is_good_prime(c: &HyperellipticCurve, p: u64) -> Result<bool> {
    Ok(reduce_mod(c, p).is_ok())
}

/// S mod p, or `BadReduction(p)` when p = 2, p divides a denominator, the
/// leading coefficient or the discriminant.
pub fn reduce_mod(c: &HyperellipticCurve, p: u64) -> Result<ReducedCurve> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let coeffs = c.rational_coeffs()?;
    if p == 2 {
        return Err(Error::BadReduction(p));
    }
    let mut s = vec![];
    for q in &coeffs {
        s.push(q.mod_p(p).map_err(|_| Error::BadReduction(p))?);
    }
    if s.last() == Some(&0) {
        return Err(Error::BadReduction(p));
    }
    let disc = c.discriminant().as_rational().expect("rational curve");
    if disc.mod_p(p).map_err(|_| Error::BadReduction(p))? == 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(ReducedCurve { p, s })
}

/// Number of points of y² = S(x) over F_{p^k}, including the single point at
/// infinity of the odd-degree model.
pub fn count_points(c: &HyperellipticCurve, p: u64, k: usize) -> Result<u64> {
    count_points_with_budget(c, p, k, DEFAULT_COUNT_BUDGET)
}

pub fn count_points_with_budget(
    c: &HyperellipticCurve,
    p: u64,
    k: usize,
    budget: u128,
) -> Result<u64> {
    let r = reduce_mod(c, p)?;
    count_reduced(&r, k, budget)
}

/// Field size p^k, or None when it overflows.
fn field_size(p: u64, k: usize) -> Option<u128> {
    (p as u128).checked_pow(k as u32)
}

pub fn count_reduced(r: &ReducedCurve, k: usize, budget: u128) -> Result<u64> {
    if k == 0 {
        return Err(Error::Invalid("extension degree must be positive".into()));
    }
    let size = field_size(r.p, k).filter(|&q| q <= budget).ok_or_else(|| {
        Error::Resource(format!(
            "counting over F_{}^{} exceeds the enumeration budget of {budget}",
            r.p, k
        ))
    })?;
    if k > 1 && r.p >= 1 << 31 {
        return Err(Error::Resource(format!(
            "prime {} too large for extension counting",
            r.p
        )));
    }
    if k == 1 {
        Ok(count_prime_field(r, size as u64) + 1)
    } else {
        if k > MAX_K {
            return Err(Error::Resource(format!("extension degree {k} too large")));
        }
        Ok(count_ext_field(r, k, size as u64) + 1)
    }
}

/// Number of y with y² = v, for every v in 0..p.
fn root_counts_prime(p: u64) -> Vec<u8> {
    let mut t = vec![0u8; p as usize];
    t[0] = 1;
    for y in 1..=(p - 1) / 2 {
        t[mul_mod(y, y, p) as usize] = 2;
    }
    t
}

fn count_prime_field(r: &ReducedCurve, p: u64) -> u64 {
    let table = root_counts_prime(p);
    (0..p as usize)
        .into_par_iter()
        .with_min_len(4096)
        .map(|x| {
            let x = x as u64;
            let mut acc = 0u64;
            for &c in r.s.iter().rev() {
                acc = (mul_mod(acc, x, p) + c) % p;
            }
            table[acc as usize] as u64
        })
        .sum()
}

/// Arithmetic in F_p[t]/(m) on fixed-size digit arrays, where elements are
/// indexed by Σ c_i p^i.
struct Kernel {
    p: u64,
    k: usize,
    /// m_0..m_{k-1}, negated mod p (t^k = Σ neg_m_i t^i).
    neg_m: Vec<u64>,
}

impl Kernel {
    fn decode(&self, mut idx: u64, out: &mut [u64; MAX_K]) {
        for d in out.iter_mut().take(self.k) {
            *d = idx % self.p;
            idx /= self.p;
        }
    }

    fn encode(&self, a: &[u64; MAX_K]) -> usize {
        let mut idx = 0u64;
        for i in (0..self.k).rev() {
            idx = idx * self.p + a[i];
        }
        idx as usize
    }

    fn mul(&self, a: &[u64; MAX_K], b: &[u64; MAX_K], out: &mut [u64; MAX_K]) {
        let (p, k) = (self.p, self.k);
        let mut t = [0u64; 2 * MAX_K];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] = (t[i + j] + a[i] * b[j]) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                t[i - k + j] = (t[i - k + j] + c * self.neg_m[j]) % p;
            }
        }
        out[..k].copy_from_slice(&t[..k]);
    }
}

fn count_ext_field(r: &ReducedCurve, k: usize, size: u64) -> u64 {
    let p = r.p;
    let m = gfp::smallest_irreducible(k, p);
    let kern = Kernel {
        p,
        k,
        neg_m: m[..k].iter().map(|&c| (p - c) % p).collect(),
    };
    let mut table = vec![0u8; size as usize];
    table[0] = 1;
    // every nonzero square is hit exactly twice
    let squares: Vec<usize> = (1..size as usize)
        .into_par_iter()
        .with_min_len(4096)
        .map(|y| {
            let y = y as u64;
            let mut a = [0u64; MAX_K];
            let mut sq = [0u64; MAX_K];
            kern.decode(y, &mut a);
            kern.mul(&a, &a, &mut sq);
            kern.encode(&sq)
        })
        .collect();
    for s in squares {
        table[s] = table[s].saturating_add(1);
    }
    (0..size as usize)
        .into_par_iter()
        .with_min_len(4096)
        .map(|xi| {
            let xi = xi as u64;
            let mut x = [0u64; MAX_K];
            kern.decode(xi, &mut x);
            let mut acc = [0u64; MAX_K];
            let mut tmp = [0u64; MAX_K];
            for &c in r.s.iter().rev() {
                kern.mul(&acc, &x, &mut tmp);
                tmp[0] = (tmp[0] + c) % p;
                acc = tmp;
            }
            table[kern.encode(&acc)] as u64
        })
        .sum()
}

/// The modulus used for F_{p^k}, low to high.
pub fn field_modulus(p: u64, k: usize) -> Vec<u64> {
    gfp::smallest_irreducible(k, p)
}

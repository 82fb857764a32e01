use std::fmt;
use std::sync::Arc;

use super::field::{Field, FiniteField};
use super::prime::{inv_mod, is_prime, mul_mod};
use crate::error::{Error, Result};

/// Dense polynomials over F_p as `Vec<u64>` (low to high, no trailing zeros).
pub mod gfp {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(&mut r);
        r
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (vec![], r);
        }
        let lc_inv = inv_mod(*b.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), lc_inv, p);
            q[shift] = c;
            for (j, &y) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mul_mod(c, y, p)) % p;
            }
            trim(&mut r);
        }
        (q, r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => vec![],
            Some(&lc) => {
                let inv = inv_mod(lc, p);
                a.iter().map(|&c| mul_mod(c, inv, p)).collect()
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    pub fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1 % p];
        trim(&mut acc);
        acc = rem(&acc, m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            e >>= 1;
            if e > 0 {
                b = rem(&mul(&b, &b, p), m, p);
            }
        }
        acc
    }

    fn prime_divisors(mut n: usize) -> Vec<usize> {
        let mut out = vec![];
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                out.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// x^(p^e) mod f by repeated p-th powering.
    fn frob_iter(f: &[u64], e: usize, p: u64) -> Vec<u64> {
        let mut x = rem(&[0, 1], f, p);
        for _ in 0..e {
            x = powmod(&x, p as u128, f, p);
        }
        x
    }

    /// Rabin's irreducibility test for a monic `f`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let xk = frob_iter(f, k, p);
        if !sub(&xk, &[0, 1], p).is_empty() {
            return false;
        }
        for q in prime_divisors(k) {
            let xq = frob_iter(f, k / q, p);
            let d = sub(&xq, &[0, 1], p);
            if gcd(&d, f, p).len() != 1 {
                return false;
            }
        }
        true
    }

    /// First monic irreducible polynomial of degree k, scanning the
    /// non-leading coefficients as base-p digits (constant term least
    /// significant) in increasing order.
    pub fn smallest_irreducible(k: usize, p: u64) -> Vec<u64> {
        let total = (p as u128).pow(k as u32);
        for idx in 0..total {
            let mut f = Vec::with_capacity(k + 1);
            let mut t = idx;
            for _ in 0..k {
                f.push((t % p as u128) as u64);
                t /= p as u128;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

/// The field F_{p^k} = F_p[t]/(modulus).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtField {
    p: u64,
    modulus: Vec<u64>,
}

impl ExtField {
    /// Uses the smallest irreducible modulus of degree k (see `gfp::smallest_irreducible`).
    pub fn new(p: u64, k: usize) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        Ok(Arc::new(ExtField {
            p,
            modulus: gfp::smallest_irreducible(k, p),
        }))
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if m.last() != Some(&1) || !gfp::is_irreducible(&m, p) {
            return Err(Error::Reducible(format!("{m:?} mod {p}")));
        }
        Ok(Arc::new(ExtField { p, modulus: m }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }

    pub fn elem(self: &Arc<Self>, coords: &[u64]) -> Fq {
        let mut c: Vec<u64> = coords.iter().map(|v| v % self.p).collect();
        gfp::trim(&mut c);
        let c = gfp::rem(&c, &self.modulus, self.p);
        Fq {
            field: self.clone(),
            coords: c,
        }
    }

    pub fn from_u64(self: &Arc<Self>, v: u64) -> Fq {
        self.elem(&[v % self.p])
    }

    pub fn generator(self: &Arc<Self>) -> Fq {
        self.elem(&[0, 1])
    }
}

/// Element of F_{p^k}; coordinates are the remainder modulo the modulus.
#[derive(Clone)]
pub struct Fq {
    field: Arc<ExtField>,
    coords: Vec<u64>,
}

impl Fq {
    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    /// Coordinates padded to length k.
    pub fn coords(&self) -> Vec<u64> {
        let mut c = self.coords.clone();
        c.resize(self.field.degree(), 0);
        c
    }

    /// Quadratic character: 1 for nonzero squares, -1 for non-squares, 0 at 0.
    pub fn quadratic_character(&self) -> i32 {
        if self.coords.is_empty() {
            return 0;
        }
        if self.field.p == 2 {
            return 1;
        }
        let e = (self.field.size() - 1) / 2;
        let r = gfp::powmod(&self.coords, e, &self.field.modulus, self.field.p);
        if r == vec![1] {
            1
        } else {
            -1
        }
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && *self.field == *other.field
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in GF({}^{})",
            self,
            self.field.p,
            self.field.degree()
        )
    }
}

impl Field for Fq {
    fn zero(&self) -> Self {
        Fq {
            field: self.field.clone(),
            coords: vec![],
        }
    }
    fn one(&self) -> Self {
        Fq {
            field: self.field.clone(),
            coords: vec![1],
        }
    }
    fn from_int(&self, n: i64) -> Self {
        let v = n.rem_euclid(self.field.p as i64) as u64;
        self.field.elem(&[v])
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let p = self.field.p;
        let n = self.coords.len().max(rhs.coords.len());
        let mut c: Vec<u64> = (0..n)
            .map(|i| {
                (self.coords.get(i).copied().unwrap_or(0) + rhs.coords.get(i).copied().unwrap_or(0))
                    % p
            })
            .collect();
        gfp::trim(&mut c);
        Fq {
            field: self.field.clone(),
            coords: c,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fq {
            field: self.field.clone(),
            coords: gfp::sub(&self.coords, &rhs.coords, self.field.p),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let p = self.field.p;
        let prod = gfp::mul(&self.coords, &rhs.coords, p);
        Fq {
            field: self.field.clone(),
            coords: gfp::rem(&prod, &self.field.modulus, p),
        }
    }
    fn neg(&self) -> Self {
        self.zero().sub(self)
    }
    fn inv(&self) -> Result<Self> {
        if self.coords.is_empty() {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2)
        let e = self.field.size() - 2;
        let c = gfp::powmod(&self.coords, e, &self.field.modulus, self.field.p);
        Ok(Fq {
            field: self.field.clone(),
            coords: c,
        })
    }
    fn characteristic(&self) -> u64 {
        self.field.p
    }
    fn same_domain(&self, other: &Self) -> bool {
        *self.field == *other.field
    }
}

impl FiniteField for Fq {
    fn order(&self) -> u128 {
        self.field.size()
    }
    fn element(&self, i: u128) -> Self {
        let p = self.field.p as u128;
        let mut t = i;
        let coords: Vec<u64> = (0..self.field.degree())
            .map(|_| {
                let d = (t % p) as u64;
                t /= p;
                d
            })
            .collect();
        self.field.elem(&coords)
    }
    fn pth_root(&self) -> Self {
        // Frobenius has order k, so its inverse is x -> x^(p^(k-1)).
        let k = self.field.degree() as u32;
        let e = (self.field.p as u128).pow(k - 1);
        let c = gfp::powmod(&self.coords, e, &self.field.modulus, self.field.p);
        Fq {
            field: self.field.clone(),
            coords: c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_quadratic_modulus_mod_3() {
        // x^2+1 is the first irreducible: x^2, x^2+1 (index 0 reducible, index 1 irreducible).
        assert_eq!(gfp::smallest_irreducible(2, 3), vec![1, 0, 1]);
        assert_eq!(gfp::smallest_irreducible(2, 2), vec![1, 1, 1]);
    }

    #[test]
    fn every_nonzero_element_inverts() {
        let f = ExtField::new(3, 3).unwrap();
        let one = f.from_u64(1);
        for i in 1..27 {
            let a = one.element(i);
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn squares_are_half_the_units() {
        let f = ExtField::new(5, 2).unwrap();
        let z = f.from_u64(0);
        let count = (1..25)
            .filter(|&i| z.element(i).quadratic_character() == 1)
            .count();
        assert_eq!(count, 12);
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = ExtField::new(7, 3).unwrap();
        let z = f.from_u64(0);
        for i in [5u128, 100, 300] {
            let a = z.element(i);
            assert_eq!(a.pth_root().pow(7), a);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(ExtField::with_modulus(5, vec![1, 0, 1]).is_err()); // x^2+1 = (x-2)(x+2) mod 5
        assert!(ExtField::with_modulus(5, vec![2, 0, 1]).is_ok());
    }
}

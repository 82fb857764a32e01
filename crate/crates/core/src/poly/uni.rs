use std::fmt;

use crate::arith::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients low to high.
///
/// The zero polynomial has an empty coefficient vector. `zero` is a zero of
/// the coefficient field, kept so that context-carrying fields can build
/// constants even when the polynomial itself is zero.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>, ctx: &F) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            coeffs,
            zero: ctx.zero(),
        }
    }

    pub fn zero(ctx: &F) -> Self {
        UniPoly {
            coeffs: vec![],
            zero: ctx.zero(),
        }
    }

    pub fn one(ctx: &F) -> Self {
        Self::constant(ctx.one())
    }

    pub fn constant(c: F) -> Self {
        let z = c.zero();
        Self::new(vec![c], &z)
    }

    /// The polynomial `x`.
    pub fn x(ctx: &F) -> Self {
        Self::new(vec![ctx.zero(), ctx.one()], ctx)
    }

    pub fn monomial(c: F, n: usize) -> Self {
        let z = c.zero();
        let mut v = vec![z.clone(); n];
        v.push(c);
        Self::new(v, &z)
    }

    /// x - a
    pub fn linear_root(a: &F) -> Self {
        Self::new(vec![a.neg(), a.one()], a)
    }

    pub fn from_ints(ints: &[i64], ctx: &F) -> Self {
        Self::new(ints.iter().map(|&n| ctx.from_int(n)).collect(), ctx)
    }

    pub fn ctx(&self) -> &F {
        &self.zero
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn lc(&self) -> F {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(v, &self.zero)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(v, &self.zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect(), &self.zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v, &self.zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.zero)
    }

    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); n];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, &self.zero)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.zero);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self)> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.coeffs.clone();
        let db = rhs.coeffs.len();
        if r.len() < db {
            return Ok((Self::zero(&self.zero), self.clone()));
        }
        let lc_inv = rhs.lc().inv()?;
        let mut q = vec![self.zero.clone(); r.len() - db + 1];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + db - 1];
            if top.is_zero() {
                continue;
            }
            let c = top.mul(&lc_inv);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                r[shift + j] = r[shift + j].sub(&c.mul(b));
            }
            q[shift] = c;
        }
        r.truncate(db - 1);
        Ok((Self::new(q, &self.zero), Self::new(r, &self.zero)))
    }

    pub fn rem(&self, rhs: &Self) -> Self {
        self.divrem(rhs).expect("division by zero polynomial").1
    }

    /// Quotient when the division is known to be exact.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.divrem(rhs)?;
        if !r.is_zero() {
            return Err(Error::Invalid("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; errors when both inputs are zero.
    pub fn gcd(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() && rhs.is_zero() {
            return Err(Error::Invalid("gcd of two zero polynomials".into()));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns (g, s, t) with s*self + t*rhs = g, g monic.
    pub fn ext_gcd(&self, rhs: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && rhs.is_zero() {
            return Err(Error::Invalid("gcd of two zero polynomials".into()));
        }
        let z = &self.zero;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::one(z), Self::zero(z));
        let (mut t0, mut t1) = (Self::zero(z), Self::one(z));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = r0.lc().inv()?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Inverse of self modulo m.
    pub fn inv_mod(&self, m: &Self) -> Result<Self> {
        let (g, s, _) = self.ext_gcd(m)?;
        if g.deg() != 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(s.rem(m))
    }

    pub fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        self.mul(rhs).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.zero).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.zero.from_int(i as i64)))
            .collect();
        Self::new(v, &self.zero)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// self(g(x))
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.zero);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// x^n * self(1/x) for n = deg.
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v, &self.zero)
    }

    pub fn map<G: Field>(&self, ctx: &G, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), ctx)
    }

    pub fn try_map<G: Field>(&self, ctx: &G, f: impl Fn(&F) -> Result<G>) -> Result<UniPoly<G>> {
        Ok(UniPoly::new(
            self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?,
            ctx,
        ))
    }

    /// Resultant over a field by the Euclidean remainder sequence.
    pub fn resultant(&self, rhs: &Self) -> F {
        let z = &self.zero;
        if self.is_zero() || rhs.is_zero() {
            return z.zero();
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut acc = z.one();
        loop {
            let (da, db) = (a.deg() as u64, b.deg() as u64);
            if db == 0 {
                return acc.mul(&b.lc().pow(da));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return z.zero();
            }
            let dr = r.deg() as u64;
            if (da * db) % 2 == 1 {
                acc = acc.neg();
            }
            acc = acc.mul(&b.lc().pow(da - dr));
            a = b;
            b = r;
        }
    }

    /// (-1)^(n(n-1)/2) Res(a, a') / lc(a).
    pub fn discriminant(&self) -> F {
        let n = self.deg();
        if n < 1 {
            return self.zero.zero();
        }
        let n = n as u64;
        let r = self.resultant(&self.derivative());
        let r = r.div(&self.lc()).expect("nonzero leading coefficient");
        if (n * (n - 1) / 2) % 2 == 1 {
            r.neg()
        } else {
            r
        }
    }

    /// Product of the distinct irreducible factors (char 0 or squarefree-friendly input).
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("squarefree part of zero".into()));
        }
        if self.deg() == 0 {
            return Ok(Self::one(&self.zero));
        }
        let d = self.derivative();
        if d.is_zero() {
            return Err(Error::Invalid(
                "derivative vanishes; use the finite-field routine".into(),
            ));
        }
        let g = self.gcd(&d)?;
        Ok(self.exact_div(&g)?.monic())
    }

    /// Yun's algorithm: returns (a_i, i) with self = lc * prod a_i^i, a_i monic,
    /// squarefree and pairwise coprime. Characteristic zero only.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::Invalid("squarefree decomposition of zero".into()));
        }
        let f = self.monic();
        let mut out = vec![];
        if f.deg() == 0 {
            return Ok(out);
        }
        let d = f.derivative();
        let mut a = f.gcd(&d)?;
        let mut b = f.exact_div(&a)?;
        let mut c = d.exact_div(&a)?;
        let mut dd = c.sub(&b.derivative());
        let mut i = 1;
        while b.deg() > 0 {
            a = b.gcd(&dd)?;
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            c = dd.exact_div(&a)?;
            dd = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }
}

impl<F: Field> UniPoly<F> {
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let simple = !cs.contains(['+', ' ']) && !cs[1..].contains('-');
            let (neg, body) = if simple && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs.clone())
            };
            let wrapped = if simple {
                body.clone()
            } else {
                format!("({body})")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&wrapped);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{wrapped}*{mono}"));
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

use std::fmt;

use super::UniPoly;
use crate::arith::Field;
use crate::error::{Error, Result};

/// Reduced fraction num/den with monic denominator.
#[derive(Clone, PartialEq)]
pub struct RationalFunction<F: Field> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(den.ctx()));
        }
        let g = num.gcd(&den)?;
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lc = den.lc().inv()?;
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        let den = UniPoly::one(p.ctx());
        RationalFunction { num: p, den }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn zero(ctx: &F) -> Self {
        RationalFunction {
            num: UniPoly::zero(ctx),
            den: UniPoly::one(ctx),
        }
    }

    pub fn one(ctx: &F) -> Self {
        Self::from_poly(UniPoly::one(ctx))
    }

    pub fn x(ctx: &F) -> Self {
        Self::from_poly(UniPoly::x(ctx))
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn ctx(&self) -> &F {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == 0
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.deg() <= 0
    }

    /// deg num - deg den (the order of the pole at infinity); None for zero.
    pub fn degree(&self) -> Option<isize> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.deg() - self.den.deg())
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone()).expect("nonzero");
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
        .expect("nonzero")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero")
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &UniPoly<F>) -> Self {
        Self::new(self.num.mul(p), self.den.clone()).expect("nonzero")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: u64) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den)).expect("nonzero")
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// self(g(x)) for a rational function g.
    pub fn compose(&self, g: &Self) -> Self {
        let n = self.num.deg().max(self.den.deg()).max(0) as u64;
        // homogenize: p(g) = sum c_i gn^i gd^(n-i) / gd^n
        let hom = |p: &UniPoly<F>| {
            let mut acc = UniPoly::zero(self.ctx());
            for (i, c) in p.coeffs().iter().enumerate() {
                let t = g.num.pow(i as u64).mul(&g.den.pow(n - i as u64)).scale(c);
                acc = acc.add(&t);
            }
            acc
        };
        Self::new(hom(&self.num), hom(&self.den)).expect("nonzero")
    }

    pub fn map<G: Field>(&self, ctx: &G, f: impl Fn(&F) -> G) -> RationalFunction<G> {
        RationalFunction::new(self.num.map(ctx, &f), self.den.map(ctx, &f)).expect("nonzero")
    }

    pub fn try_map<G: Field>(
        &self,
        ctx: &G,
        f: impl Fn(&F) -> Result<G>,
    ) -> Result<RationalFunction<G>> {
        RationalFunction::new(self.num.try_map(ctx, &f)?, self.den.try_map(ctx, &f)?)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_polynomial() {
            return self.num.fmt_var(var);
        }
        let wrap = |p: &UniPoly<F>| {
            let s = p.fmt_var(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

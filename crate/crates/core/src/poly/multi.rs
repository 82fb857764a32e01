use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::UniPoly;
use crate::arith::Field;

pub type Monomial = Vec<u32>;

/// Monomial orders; variable 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for i in (0..a.len()).rev() {
                        if a[i] != b[i] {
                            return b[i].cmp(&a[i]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// Sparse multivariate polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
    zero: F,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize, ctx: &F) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
            zero: ctx.zero(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars, &c);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize, ctx: &F) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars, ctx);
        p.add_term(e, ctx.one());
        p
    }

    pub fn from_terms(
        nvars: usize,
        ctx: &F,
        terms: impl IntoIterator<Item = (Monomial, F)>,
    ) -> Self {
        let mut p = Self::zero(nvars, ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `i`.
    pub fn from_univariate(nvars: usize, i: usize, u: &UniPoly<F>) -> Self {
        let mut p = Self::zero(nvars, u.ctx());
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ctx(&self) -> &F {
        &self.zero
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> F {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, &self.zero);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, self.zero.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = self.zero.clone();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = t.mul(&x.pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `value` for variable `i`; the variable slot stays (with exponent 0).
    pub fn substitute(&self, i: usize, value: &F) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[i];
            m2[i] = 0;
            out.add_term(m2, c.mul(&value.pow(e as u64)));
        }
        out
    }

    /// Substitutes a polynomial for variable `i`.
    pub fn substitute_poly(&self, i: usize, value: &Self) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        let mut powers: Vec<Self> = vec![Self::constant(self.nvars, self.zero.one())];
        for (m, c) in &self.terms {
            let e = m[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut m2 = m.clone();
            m2[i] = 0;
            let mono = Self::from_terms(self.nvars, &self.zero, [(m2, c.clone())]);
            out = out.add(&mono.mul(&powers[e]));
        }
        out
    }

    /// Views the polynomial as univariate in variable `i` when no other variable occurs.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly<F>> {
        let mut coeffs = vec![self.zero.clone(); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            coeffs[m[i] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs, &self.zero))
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn map<G: Field>(&self, ctx: &G, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut out = MultiPoly::zero(self.nvars, ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Coefficients of `var` powers, each a polynomial in the remaining variables.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.nvars, &self.zero); d + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[var] as usize;
            m2[var] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            let cs = c.to_string();
            let compound = cs.contains(['+', ' ']) || cs[1..].contains('-');
            let (neg, body) = if !compound && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs.clone())
            };
            let body = if compound { format!("({body})") } else { body };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", body, mono.join("*")));
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    #[test]
    fn grevlex_orders_by_degree_then_reverse_lex() {
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 2, 0]), Ordering::Less);
        // x*z < y^2 in grevlex (x > y > z)
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(
            MonomialOrder::Lex.cmp(&[1, 0, 1], &[0, 2, 0]),
            Ordering::Greater
        );
    }

    #[test]
    fn product_and_substitution() {
        let z = Rational::zero_q();
        let x = MultiPoly::var(2, 0, &z);
        let y = MultiPoly::var(2, 1, &z);
        let p = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        assert_eq!(p.num_terms(), 2);
        let q = p.substitute(1, &Rational::from(3));
        assert_eq!(
            q.to_univariate(0).unwrap(),
            UniPoly::from_ints(&[-9, 0, 1], &z)
        );
        assert_eq!(
            p.eval(&[Rational::from(2), Rational::from(1)]),
            Rational::from(3)
        );
    }
}

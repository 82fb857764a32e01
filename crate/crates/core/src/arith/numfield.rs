//! Number fields Q(θ) with a record of how they were built.
//!
//! Every field is stored as a simple extension Q[t]/(m(t)) with m monic and
//! irreducible over Q. A field obtained by adjoining a root α of an
//! irreducible polynomial over a parent field K keeps a [`Layer`] linking it
//! back to K: the image of K's generator, the image of α, and the shift s with
//! θ = α + s·θ_K. That chain is the tower; [`NumberFieldTower`] is the
//! user-facing view of it.

use std::fmt;
use std::sync::{Arc, OnceLock};

use super::field::{CharZero, Field};
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, UniPoly};

pub type QPoly = UniPoly<Rational>;

/// Relation between an extension and the field it was built from.
#[derive(Clone)]
pub struct Layer {
    pub parent: Arc<NumberField>,
    pub symbol: String,
    /// Monic irreducible polynomial of the new generator over the parent.
    pub rel_minpoly: UniPoly<NfElem>,
    /// Coordinates of the new generator α in this field.
    pub root: Vec<Rational>,
    /// Coordinates of the parent's primitive generator in this field.
    pub parent_gen: Vec<Rational>,
    /// θ = α + shift · θ_parent.
    pub shift: i64,
}

pub struct NumberField {
    minpoly: Vec<Rational>,
    layer: Option<Layer>,
    generator_forms: OnceLock<Vec<MultiPoly<Rational>>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NumberField(deg {}, {})",
            self.degree(),
            self.minpoly_q().fmt_var("t")
        )
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.minpoly == other.minpoly
    }
}

impl NumberField {
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            minpoly: vec![Rational::zero_q(), Rational::one_q()],
            layer: None,
            generator_forms: OnceLock::new(),
        })
    }

    /// Simple extension Q[t]/(m); `m` must be irreducible over Q.
    pub fn simple(m: &QPoly, symbol: &str) -> Result<Arc<Self>> {
        let q = NumberField::rationals();
        let m_k = m.map(&q.zero(), |c| q.from_rational(c));
        q.adjoin(&m_k, symbol)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1 && self.layer.is_none()
    }

    pub fn minpoly_q(&self) -> QPoly {
        QPoly::new(self.minpoly.clone(), &Rational::zero_q())
    }

    pub fn layer(&self) -> Option<&Layer> {
        self.layer.as_ref()
    }

    pub fn parent(&self) -> Option<&Arc<NumberField>> {
        self.layer.as_ref().map(|l| &l.parent)
    }

    /// Tower depth: number of layers above Q.
    pub fn depth(&self) -> usize {
        self.layer.as_ref().map_or(0, |l| l.parent.depth() + 1)
    }

    pub fn symbols(&self) -> Vec<String> {
        let mut out = self.parent().map(|p| p.symbols()).unwrap_or_default();
        if let Some(l) = &self.layer {
            out.push(l.symbol.clone());
        }
        out
    }

    pub fn zero(self: &Arc<Self>) -> NfElem {
        NfElem {
            field: self.clone(),
            c: vec![Rational::zero_q(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> NfElem {
        self.from_rational(&Rational::one_q())
    }

    pub fn from_rational(self: &Arc<Self>, r: &Rational) -> NfElem {
        let mut c = vec![Rational::zero_q(); self.degree()];
        c[0] = r.clone();
        NfElem {
            field: self.clone(),
            c,
        }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> NfElem {
        self.from_rational(&Rational::from(n))
    }

    pub fn from_coords(self: &Arc<Self>, coords: &[Rational]) -> NfElem {
        NfElem {
            field: self.clone(),
            c: reduce_mod(coords.to_vec(), &self.minpoly),
        }
    }

    /// The primitive generator θ.
    pub fn theta(self: &Arc<Self>) -> NfElem {
        self.from_coords(&[Rational::zero_q(), Rational::one_q()])
    }

    /// The generator adjoined by the top layer (θ itself for simple fields over Q).
    pub fn top_generator(self: &Arc<Self>) -> NfElem {
        match &self.layer {
            Some(l) => self.from_coords(&l.root),
            None => self.theta(),
        }
    }

    /// Whether `other` is this field or an ancestor of it.
    pub fn contains_field(&self, other: &NumberField) -> bool {
        if self == other && self.depth() == other.depth() {
            return true;
        }
        match &self.layer {
            Some(l) => l.parent.contains_field(other),
            None => other.is_rationals(),
        }
    }

    /// Maps an element of this field or of one of its ancestors into this field.
    pub fn embed(self: &Arc<Self>, e: &NfElem) -> Result<NfElem> {
        if *e.field == **self && e.field.depth() == self.depth() {
            return Ok(NfElem {
                field: self.clone(),
                c: e.c.clone(),
            });
        }
        if e.field.is_rationals() {
            return Ok(self.from_rational(&e.c[0]));
        }
        let l = self.layer.as_ref().ok_or(Error::DomainMismatch)?;
        let in_parent = l.parent.embed(e)?;
        let g = self.from_coords(&l.parent_gen);
        let mut acc = self.zero();
        for c in in_parent.c.iter().rev() {
            acc = acc.mul(&g).add(&self.from_rational(c));
        }
        Ok(acc)
    }

    pub fn embed_poly(self: &Arc<Self>, p: &UniPoly<NfElem>) -> Result<UniPoly<NfElem>> {
        p.try_map(&self.zero(), |c| self.embed(c))
    }

    /// Adjoins a root of the irreducible polynomial `m` over this field.
    pub fn adjoin(self: &Arc<Self>, m: &UniPoly<NfElem>, symbol: &str) -> Result<Arc<Self>> {
        if m.deg() < 1 {
            return Err(Error::Invalid("cannot adjoin a root of a constant".into()));
        }
        let m = self.embed_poly(m)?.monic();
        if m.deg() > 1 {
            let f = crate::poly::factor_nf(&m)?;
            if f.len() != 1 || f[0].1 != 1 {
                return Err(Error::Reducible(m.to_string()));
            }
        }
        self.adjoin_irreducible(&m, symbol)
    }

    /// As [`adjoin`](Self::adjoin) without the irreducibility check.
    pub fn adjoin_irreducible(
        self: &Arc<Self>,
        m: &UniPoly<NfElem>,
        symbol: &str,
    ) -> Result<Arc<Self>> {
        let m = m.monic();
        let qz = Rational::zero_q();
        if self.degree() == 1 {
            let mq = m.map(&qz, |c| c.c[0].clone());
            let minpoly = mq.coeffs().to_vec();
            let root = reduce_mod(vec![Rational::zero_q(), Rational::one_q()], &minpoly);
            let mut parent_gen = vec![Rational::zero_q(); minpoly.len() - 1];
            parent_gen[0] = self.theta().c[0].clone();
            return Ok(Arc::new(NumberField {
                minpoly,
                layer: Some(Layer {
                    parent: self.clone(),
                    symbol: symbol.to_string(),
                    rel_minpoly: m.clone(),
                    root,
                    parent_gen,
                    shift: 0,
                }),
                generator_forms: OnceLock::new(),
            }));
        }
        let theta = self.theta();
        for s in 0..64i64 {
            // n(x) = Norm_{K/Q} m(x - s θ)
            let shifted = m.compose(&UniPoly::new(
                vec![theta.scale_int(-s), self.one()],
                &self.zero(),
            ));
            let norm = norm_poly(&shifted);
            if norm.deg() < 1 || norm.gcd(&norm.derivative())?.deg() > 0 {
                continue;
            }
            let big = Arc::new(NumberField {
                minpoly: norm.monic().coeffs().to_vec(),
                layer: None,
                generator_forms: OnceLock::new(),
            });
            // θ_K is the common root of minpoly_K(t) and m(γ - s t) over the big field.
            let gamma = big.theta();
            let t_poly = self.minpoly_q().map(&big.zero(), |c| big.from_rational(c));
            let lin = UniPoly::new(
                vec![gamma.clone(), big.from_rational(&Rational::from(-s))],
                &big.zero(),
            );
            let mut composed = UniPoly::zero(&big.zero());
            for c in m.coeffs().iter().rev() {
                let c_big = big.from_poly_in_t(c, &UniPoly::x(&big.zero()));
                composed = composed.mul(&lin).add(&c_big);
            }
            let g = t_poly.gcd(&composed)?;
            if g.deg() != 1 {
                continue;
            }
            let theta_k = g.coeff(0).neg();
            let alpha = gamma.sub(&theta_k.scale_int(s));
            let field = Arc::new(NumberField {
                minpoly: big.minpoly.clone(),
                layer: Some(Layer {
                    parent: self.clone(),
                    symbol: symbol.to_string(),
                    rel_minpoly: m.clone(),
                    root: alpha.c.clone(),
                    parent_gen: theta_k.c.clone(),
                    shift: s,
                }),
                generator_forms: OnceLock::new(),
            });
            return Ok(field);
        }
        Err(Error::Resource(
            "no primitive element found with shift below 64".into(),
        ))
    }

    /// Evaluates an element of `K` (a polynomial in θ_K) at a polynomial `t` over this field.
    fn from_poly_in_t(self: &Arc<Self>, e: &NfElem, t: &UniPoly<NfElem>) -> UniPoly<NfElem> {
        let mut acc = UniPoly::zero(&self.zero());
        for c in e.c.iter().rev() {
            acc = acc.mul(t).add(&UniPoly::constant(self.from_rational(c)));
        }
        acc
    }

    /// Each layer generator expressed as polynomial forms of θ^i, i < degree,
    /// in the tower generators (index 0 = bottom layer).
    fn theta_power_forms(&self) -> &Vec<MultiPoly<Rational>> {
        self.generator_forms.get_or_init(|| {
            let n = self.depth();
            let theta_form = self.theta_form(n);
            let mut out = vec![MultiPoly::constant(n, Rational::one_q())];
            for _ in 1..self.degree() {
                let next = self.reduce_form(&out.last().unwrap().mul(&theta_form));
                out.push(next);
            }
            out
        })
    }

    /// θ written in the tower generators, with `nvars` total variables.
    fn theta_form(&self, nvars: usize) -> MultiPoly<Rational> {
        let qz = Rational::zero_q();
        match &self.layer {
            None => MultiPoly::zero(nvars, &qz),
            Some(l) => {
                let idx = self.depth() - 1;
                let alpha = MultiPoly::var(nvars, idx, &qz);
                if l.shift == 0 {
                    return alpha;
                }
                alpha.add(&l.parent.theta_form(nvars).scale(&Rational::from(l.shift)))
            }
        }
    }

    /// Reduces a polynomial in the tower generators modulo each layer's relation.
    pub fn reduce_form(&self, p: &MultiPoly<Rational>) -> MultiPoly<Rational> {
        let n = p.nvars();
        let mut cur = p.clone();
        let mut chain: Vec<&NumberField> = vec![];
        let mut f = self;
        while let Some(l) = &f.layer {
            chain.push(f);
            f = &l.parent;
        }
        // chain[0] is the top layer.
        for field in chain {
            let l = field.layer.as_ref().unwrap();
            let idx = field.depth() - 1;
            let d = l.rel_minpoly.deg() as u32;
            // relation: α^d = -Σ_{j<d} c_j α^j with c_j forms in lower generators
            let lower: Vec<MultiPoly<Rational>> = l
                .rel_minpoly
                .coeffs()
                .iter()
                .take(d as usize)
                .map(|c| l.parent.to_form_n(c, n).neg())
                .collect();
            loop {
                let hit = cur
                    .terms()
                    .find(|(m, _)| m[idx] >= d)
                    .map(|(m, c)| (m.clone(), c.clone()));
                let Some((m, c)) = hit else { break };
                let mut rest = m.clone();
                rest[idx] -= d;
                let mono = MultiPoly::from_terms(n, &Rational::zero_q(), [(m.clone(), c.clone())]);
                let mut replacement = MultiPoly::zero(n, &Rational::zero_q());
                for (j, cj) in lower.iter().enumerate() {
                    let mut e = rest.clone();
                    e[idx] += j as u32;
                    let t = MultiPoly::from_terms(n, &Rational::zero_q(), [(e, c.clone())]);
                    replacement = replacement.add(&t.mul(cj));
                }
                cur = cur.sub(&mono).add(&replacement);
            }
        }
        cur
    }

    fn to_form_n(&self, e: &NfElem, nvars: usize) -> MultiPoly<Rational> {
        let forms = self.theta_power_forms();
        let mut acc = MultiPoly::zero(nvars, &Rational::zero_q());
        for (c, f) in e.c.iter().zip(forms) {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&widen(f, nvars).scale(c));
        }
        acc
    }

    /// Element as a reduced polynomial in the tower generators.
    pub fn to_form(&self, e: &NfElem) -> MultiPoly<Rational> {
        self.to_form_n(e, self.depth())
    }

    /// Evaluates a polynomial in the tower generators.
    pub fn from_form(self: &Arc<Self>, p: &MultiPoly<Rational>) -> NfElem {
        let gens = self.tower_generators();
        p.map(&self.zero(), |c| self.from_rational(c)).eval(&gens)
    }

    /// Images in this field of every layer generator, bottom first.
    pub fn tower_generators(self: &Arc<Self>) -> Vec<NfElem> {
        match &self.layer {
            None => vec![],
            Some(l) => {
                let mut out: Vec<NfElem> = l
                    .parent
                    .tower_generators()
                    .iter()
                    .map(|g| self.embed(g).expect("ancestor element"))
                    .collect();
                out.push(self.from_coords(&l.root));
                out
            }
        }
    }

    /// Relative coordinates over the parent: e = Σ r_i α^i with r_i in the parent.
    pub fn relative_coords(self: &Arc<Self>, e: &NfElem) -> Result<Vec<NfElem>> {
        let l = self
            .layer
            .as_ref()
            .ok_or(Error::Invalid("field has no parent".into()))?;
        let k = &l.parent;
        let m = &l.rel_minpoly;
        let kz = k.zero();
        // θ = α + s θ_K in K[α]/(m)
        let theta_rel = UniPoly::new(vec![k.theta().scale_int(l.shift), k.one()], &kz).rem(m);
        let mut acc = UniPoly::zero(&kz);
        let mut pw = UniPoly::one(&kz);
        for c in &e.c {
            if !c.is_zero() {
                acc = acc.add(&pw.scale(&k.from_rational(c)));
            }
            pw = pw.mul_mod(&theta_rel, m);
        }
        let d = m.deg() as usize;
        Ok((0..d).map(|i| acc.coeff(i)).collect())
    }

    /// Trace from this field down to its parent.
    pub fn relative_trace(self: &Arc<Self>, e: &NfElem) -> Result<NfElem> {
        let l = self
            .layer
            .as_ref()
            .ok_or(Error::Invalid("field has no parent".into()))?;
        let coords = self.relative_coords(e)?;
        let sums = power_sums(&l.rel_minpoly, coords.len());
        let mut acc = l.parent.zero();
        for (c, s) in coords.iter().zip(&sums) {
            acc = acc.add(&c.mul(s));
        }
        Ok(acc)
    }

    /// Norm from this field down to its parent: the determinant of
    /// multiplication by `e` on the basis 1, α, …, α^{r−1}.
    pub fn relative_norm(self: &Arc<Self>, e: &NfElem) -> Result<NfElem> {
        let l = self
            .layer
            .as_ref()
            .ok_or(Error::Invalid("field has no parent".into()))?;
        let alpha = self.from_coords(&l.root);
        let mut rows = vec![];
        let mut pw = e.clone();
        for _ in 0..l.rel_minpoly.deg() {
            rows.push(self.relative_coords(&pw)?);
            pw = pw.mul(&alpha);
        }
        Ok(determinant(rows, &l.parent.zero()))
    }

    /// Projects an element lying in the parent field down to it.
    pub fn project_to_parent(self: &Arc<Self>, e: &NfElem) -> Result<NfElem> {
        let coords = self.relative_coords(e)?;
        if coords.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(Error::Invalid(
                "element does not lie in the parent field".into(),
            ));
        }
        Ok(coords[0].clone())
    }
}

fn widen(p: &MultiPoly<Rational>, nvars: usize) -> MultiPoly<Rational> {
    if p.nvars() == nvars {
        return p.clone();
    }
    MultiPoly::from_terms(
        nvars,
        &Rational::zero_q(),
        p.terms().map(|(m, c)| {
            let mut e = m.clone();
            e.resize(nvars, 0);
            (e, c.clone())
        }),
    )
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>, zero: &F) -> F {
    let n = m.len();
    let mut det = zero.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return zero.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].inv().expect("nonzero pivot");
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].mul(&inv);
            for j in col..n {
                let v = m[i][j].sub(&f.mul(&m[col][j]));
                m[i][j] = v;
            }
        }
    }
    det
}

/// Newton power sums p_1.. of the roots of monic m, returned as [n, p_1, ..., p_{k-1}].
pub fn power_sums<F: Field>(m: &UniPoly<F>, k: usize) -> Vec<F> {
    let d = m.deg() as usize;
    let z = m.ctx();
    // m = x^d + e1' x^{d-1} + ... ; with c_i = coefficient of x^{d-i}
    let c: Vec<F> = (0..=d).map(|i| m.coeff(d - i)).collect();
    let mut p = vec![z.from_int(d as i64)];
    for n in 1..k {
        let mut s = z.zero();
        for i in 1..n.min(d + 1) {
            s = s.add(&c[i].mul(&p[n - i]));
        }
        if n <= d {
            s = s.add(&c[n].mul(&z.from_int(n as i64)));
        }
        p.push(s.neg());
    }
    p
}

fn reduce_mod(mut v: Vec<Rational>, minpoly: &[Rational]) -> Vec<Rational> {
    let d = minpoly.len() - 1;
    while v.len() > d {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - d;
        for j in 0..d {
            if !minpoly[j].is_zero() {
                v[shift + j] = v[shift + j].sub(&top.mul(&minpoly[j]));
            }
        }
    }
    v.resize(d, Rational::zero_q());
    v
}

/// Norm from K down to Q of a polynomial with coefficients in K,
/// by evaluation at deg+1 integer points and interpolation.
pub fn norm_poly(p: &UniPoly<NfElem>) -> QPoly {
    let qz = Rational::zero_q();
    if p.is_zero() {
        return QPoly::zero(&qz);
    }
    let field = p.ctx().field().clone();
    let n = p.deg() as usize * field.degree();
    let xs: Vec<Rational> = (0..=n as i64).map(Rational::from).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| p.eval(&field.from_rational(x)).norm())
        .collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation through (xs[i], ys[i]).
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UniPoly<F> {
    let z = xs[0].zero();
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = coef[i].sub(&coef[i - 1]);
            let den = xs[i].sub(&xs[i - j]);
            coef[i] = num.div(&den).expect("distinct nodes");
        }
    }
    let mut acc = UniPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = acc
            .mul(&UniPoly::linear_root(&xs[i]))
            .add(&UniPoly::constant(coef[i].clone()));
    }
    UniPoly::new(acc.into_coeffs(), &z)
}

/// Element of a number field, stored in the power basis of θ.
#[derive(Clone)]
pub struct NfElem {
    field: Arc<NumberField>,
    c: Vec<Rational>,
}

pub type NumberFieldElement = NfElem;

impl NfElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.c
    }

    pub fn as_poly(&self) -> QPoly {
        QPoly::new(self.c.clone(), &Rational::zero_q())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.c.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn scale_int(&self, s: i64) -> NfElem {
        let r = Rational::from(s);
        NfElem {
            field: self.field.clone(),
            c: self.c.iter().map(|c| c.mul(&r)).collect(),
        }
    }

    pub fn scale_q(&self, r: &Rational) -> NfElem {
        NfElem {
            field: self.field.clone(),
            c: self.c.iter().map(|c| c.mul(r)).collect(),
        }
    }

    /// Norm down to Q.
    pub fn norm(&self) -> Rational {
        self.field.minpoly_q().resultant(&self.as_poly())
    }

    /// Minimal polynomial over Q.
    pub fn minpoly(&self) -> Result<QPoly> {
        let charpoly = self.charpoly();
        let facs = crate::poly::factor_q(&charpoly)?;
        for (f, _) in facs {
            let fk = f.map(&self.field.zero(), |c| self.field.from_rational(c));
            if fk.eval(self).is_zero() {
                return Ok(f);
            }
        }
        Err(Error::Invalid(
            "characteristic polynomial has no vanishing factor".into(),
        ))
    }

    /// Characteristic polynomial over Q of multiplication by self.
    pub fn charpoly(&self) -> QPoly {
        let qz = Rational::zero_q();
        let n = self.field.degree();
        let xs: Vec<Rational> = (0..=n as i64).map(Rational::from).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| self.field.from_rational(x).sub(self).norm())
            .collect();
        let p = interpolate(&xs, &ys);
        QPoly::new(p.into_coeffs(), &qz)
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
            && (self.field == other.field || self.c.iter().skip(1).all(|c| c.is_zero()))
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        if self.field.layer.is_none() {
            return write!(f, "{}", self.as_poly().fmt_var("t"));
        }
        let names = self.field.symbols();
        write!(f, "{}", self.field.to_form(self).fmt_with(&names))
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for NfElem {
    fn zero(&self) -> Self {
        self.field.zero()
    }
    fn one(&self) -> Self {
        self.field.one()
    }
    fn from_int(&self, n: i64) -> Self {
        self.field.from_rational(&Rational::from(n))
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }
    fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c.iter().skip(1).all(|c| c.is_zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_domain(rhs));
        NfElem {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a.add(b)).collect(),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_domain(rhs));
        NfElem {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a.sub(b)).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.same_domain(rhs));
        let n = self.c.len();
        if n == 1 {
            return NfElem {
                field: self.field.clone(),
                c: vec![self.c[0].mul(&rhs.c[0])],
            };
        }
        let mut prod = vec![Rational::zero_q(); 2 * n - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        NfElem {
            field: self.field.clone(),
            c: reduce_mod(prod, &self.field.minpoly),
        }
    }
    fn neg(&self) -> Self {
        NfElem {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a.neg()).collect(),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() == 1 {
            return Ok(NfElem {
                field: self.field.clone(),
                c: vec![self.c[0].inv()?],
            });
        }
        let s = self.as_poly().inv_mod(&self.field.minpoly_q())?;
        Ok(self.field.from_coords(s.coeffs()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn same_domain(&self, other: &Self) -> bool {
        self.field == other.field
    }
}

impl CharZero for NfElem {
    fn from_rational(&self, r: &Rational) -> Self {
        self.field.from_rational(r)
    }
}

/// User-facing view of a tower Q(α₁, …, α_r).
#[derive(Clone, Debug)]
pub struct NumberFieldTower {
    field: Arc<NumberField>,
}

/// Maps between a tower and its simple model.
pub struct PrimitiveElement {
    pub simple: Arc<NumberField>,
    tower: Arc<NumberField>,
}

impl PrimitiveElement {
    /// Tower generators' polynomial form → element of the simple field.
    pub fn forward(&self, form: &MultiPoly<Rational>) -> NfElem {
        let e = self.tower.from_form(form);
        self.simple.from_coords(e.coords())
    }

    /// Simple-field element → reduced polynomial form in the tower generators.
    pub fn backward(&self, e: &NfElem) -> MultiPoly<Rational> {
        let in_tower = self.tower.from_coords(e.coords());
        self.tower.to_form(&in_tower)
    }
}

impl NumberFieldTower {
    pub fn rationals() -> Self {
        NumberFieldTower {
            field: NumberField::rationals(),
        }
    }

    pub fn from_field(field: Arc<NumberField>) -> Self {
        NumberFieldTower { field }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn symbols(&self) -> Vec<String> {
        self.field.symbols()
    }

    /// Generators bottom first, with their relative minimal polynomials.
    pub fn generators(&self) -> Vec<(String, UniPoly<NfElem>)> {
        let mut out = vec![];
        let mut f = &self.field;
        while let Some(l) = &f.layer {
            out.push((l.symbol.clone(), l.rel_minpoly.clone()));
            f = &l.parent;
        }
        out.reverse();
        out
    }

    pub fn adjoin_root(&self, m: &UniPoly<NfElem>, symbol: &str) -> Result<Self> {
        Ok(NumberFieldTower {
            field: self.field.adjoin(m, symbol)?,
        })
    }

    pub fn generator(&self, i: usize) -> NfElem {
        self.field.tower_generators()[i].clone()
    }

    pub fn primitive_element(&self) -> PrimitiveElement {
        let simple = Arc::new(NumberField {
            minpoly: self.field.minpoly.clone(),
            layer: None,
            generator_forms: OnceLock::new(),
        });
        PrimitiveElement {
            simple,
            tower: self.field.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(v: &[i64]) -> QPoly {
        QPoly::from_ints(v, &Rational::zero_q())
    }

    fn sqrt2() -> Arc<NumberField> {
        NumberField::simple(&qp(&[-2, 0, 1]), "a").unwrap()
    }

    #[test]
    fn difference_of_squares_in_q_sqrt2() {
        let k = sqrt2();
        let a = k.top_generator();
        let one = k.one();
        assert_eq!(one.add(&a).mul(&one.sub(&a)), k.from_int(-1));
    }

    #[test]
    fn nested_square_root_has_fourth_power_two() {
        let k = sqrt2();
        let a = k.top_generator();
        let m = UniPoly::new(vec![a.neg(), k.zero(), k.one()], &k.zero());
        let l = k.adjoin(&m, "b").unwrap();
        assert_eq!(l.degree(), 4);
        let b = l.top_generator();
        assert_eq!(b.pow(4), l.from_int(2));
        assert_eq!(l.symbols(), vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn reducible_adjunction_rejected() {
        let q = NumberField::rationals();
        let m = qp(&[-1, 0, 1]).map(&q.zero(), |c| q.from_rational(c));
        assert!(matches!(q.adjoin(&m, "a"), Err(Error::Reducible(_))));
    }

    #[test]
    fn primitive_element_of_sqrt2_sqrt3() {
        let k = sqrt2();
        let m = qp(&[-3, 0, 1]).map(&k.zero(), |c| k.from_rational(c));
        let l = k.adjoin(&m, "b").unwrap();
        let gens = l.tower_generators();
        let c = gens[0].add(&gens[1]);
        // oracle: Res_a(a^2 - 2, (c - a)^2 - 3) = c^4 - 10c^2 + 1
        assert_eq!(c.minpoly().unwrap(), qp(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn tower_round_trip() {
        let k = sqrt2();
        let m = qp(&[-3, 0, 1]).map(&k.zero(), |c| k.from_rational(c));
        let tower = NumberFieldTower::from_field(k.adjoin(&m, "b").unwrap());
        let pe = tower.primitive_element();
        let gens = tower.field().tower_generators();
        let e = tower
            .field()
            .one()
            .add(&gens[0])
            .mul(&gens[1])
            .add(&gens[1].pow(3));
        let form = tower.field().to_form(&e);
        let simple = pe.forward(&form);
        assert_eq!(pe.backward(&simple), form);
    }

    #[test]
    fn inverse_in_degree_four() {
        let k = sqrt2();
        let m = qp(&[-3, 0, 1]).map(&k.zero(), |c| k.from_rational(c));
        let l = k.adjoin(&m, "b").unwrap();
        let x = l.theta().add(&l.from_int(3)).pow(3);
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn embedding_and_relative_trace() {
        let k = sqrt2();
        let m = qp(&[-3, 0, 1]).map(&k.zero(), |c| k.from_rational(c));
        let l = k.adjoin(&m, "b").unwrap();
        let a_in_l = l.embed(&k.top_generator()).unwrap();
        assert_eq!(a_in_l.pow(2), l.from_int(2));
        let b = l.top_generator();
        // Tr_{L/K}(a + b) = 2a
        let t = l.relative_trace(&a_in_l.add(&b)).unwrap();
        assert_eq!(t, k.top_generator().scale_int(2));
        assert_eq!(l.project_to_parent(&a_in_l).unwrap(), k.top_generator());
        assert!(l.project_to_parent(&b).is_err());
    }
}

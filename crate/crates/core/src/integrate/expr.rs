//! Answers in terms of elliptic integrals, and their exact derivative.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use super::curvefn::{log_ratio_derivative, CurveFunction};
use crate::arith::numfield::interpolate;
use crate::arith::{Field, NfElem, NumberField};
use crate::error::{Error, Result};
use crate::morphisms::{verify_morphism, EllipticMorphism};
use crate::poly::{RationalFunction, UniPoly};
use crate::text::{
    element_to_json, field_definitions, field_from_json, parse_element, parse_poly, rf_from_json,
    rf_to_json,
};
use crate::zeta::HyperellipticCurve;

type Rf = RationalFunction<NfElem>;

pub const SCHEMA_VERSION: u64 = 1;

/// One elliptic or logarithmic term; `morphism` indexes the expression's list.
#[derive(Clone, Debug)]
pub enum EllipticTerm {
    /// coeff · F(F_i(x) | κ_i)
    FirstKind { coeff: NfElem, morphism: usize },
    /// coeff · E(F_i(x) | κ_i)
    SecondKind { coeff: NfElem, morphism: usize },
    /// coeff · Π(F_i(x), c | κ_i) with d² = c(c − 1)(c − κ_i)
    ThirdKind {
        coeff: NfElem,
        morphism: usize,
        c: NfElem,
        d: NfElem,
    },
    /// coeff · ln(R(x, y)/R(x, −y))
    LogTerm { coeff: NfElem, r: CurveFunction },
}

impl EllipticTerm {
    pub fn coeff(&self) -> &NfElem {
        match self {
            EllipticTerm::FirstKind { coeff, .. }
            | EllipticTerm::SecondKind { coeff, .. }
            | EllipticTerm::ThirdKind { coeff, .. }
            | EllipticTerm::LogTerm { coeff, .. } => coeff,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            EllipticTerm::FirstKind { .. } => "FirstKind",
            EllipticTerm::SecondKind { .. } => "SecondKind",
            EllipticTerm::ThirdKind { .. } => "ThirdKind",
            EllipticTerm::LogTerm { .. } => "LogTerm",
        }
    }

    pub fn morphism(&self) -> Option<usize> {
        match self {
            EllipticTerm::FirstKind { morphism, .. }
            | EllipticTerm::SecondKind { morphism, .. }
            | EllipticTerm::ThirdKind { morphism, .. } => Some(*morphism),
            EllipticTerm::LogTerm { .. } => None,
        }
    }
}

/// Binds the formal root α of an irreducible P over the base field; the group
/// stands for the sum of its terms over all roots of P.
#[derive(Clone, Debug)]
pub struct RootSum {
    pub poly: UniPoly<NfElem>,
    pub alpha: NfElem,
}

/// Terms sharing one coefficient field.
#[derive(Clone, Debug)]
pub struct TermGroup {
    pub field: Arc<NumberField>,
    pub root: Option<RootSum>,
    pub terms: Vec<EllipticTerm>,
}

#[derive(Clone, Debug)]
pub struct EllipticExpression {
    pub curve: HyperellipticCurve,
    /// Field of the algebraic part; every group field extends it.
    pub base: Arc<NumberField>,
    pub morphisms: Vec<EllipticMorphism>,
    pub algebraic: CurveFunction,
    pub groups: Vec<TermGroup>,
}

impl EllipticExpression {
    pub fn zero(
        curve: &HyperellipticCurve,
        base: &Arc<NumberField>,
        morphisms: &[EllipticMorphism],
    ) -> Self {
        EllipticExpression {
            curve: curve.clone(),
            base: base.clone(),
            morphisms: morphisms.to_vec(),
            algebraic: CurveFunction::zero(base),
            groups: vec![],
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &EllipticTerm> {
        self.groups.iter().flat_map(|g| g.terms.iter())
    }

    /// True when nothing but first-kind terms (and no algebraic part) remain.
    pub fn is_pure_first_kind(&self) -> bool {
        self.algebraic.is_zero()
            && self
                .terms()
                .all(|t| matches!(t, EllipticTerm::FirstKind { .. }))
    }

    /// Drops terms with zero coefficient, logarithms of constants and empty groups.
    pub fn prune(&mut self) {
        for g in &mut self.groups {
            g.terms.retain(|t| match t {
                EllipticTerm::LogTerm { coeff, r } => {
                    !coeff.is_zero() && !r.a.is_zero() && !r.b.is_zero()
                }
                t => !t.coeff().is_zero(),
            });
        }
        self.groups.retain(|g| !g.terms.is_empty());
    }

    /// Appends the groups of `other`, which must use the same curve, base and morphisms.
    pub fn absorb(&mut self, other: EllipticExpression) {
        self.algebraic = self.algebraic.add(&other.algebraic);
        self.groups.extend(other.groups);
    }
}

/// Exact derivative as an element of K(x)[y]/(y² − S) over the base field.
pub fn differentiate(e: &EllipticExpression) -> Result<CurveFunction> {
    for (i, m) in e.morphisms.iter().enumerate() {
        if !verify_morphism(&e.curve, m) {
            return Err(Error::Invalid(format!(
                "morphism {i} does not satisfy S*G^2 = F(F-1)(F-kappa)"
            )));
        }
    }
    let s = e.base.embed_poly(e.curve.s())?;
    let mut acc = e.algebraic.embed(&e.base)?.derivative(&s);
    for g in &e.groups {
        acc = acc.add(&group_derivative(e, g)?);
    }
    Ok(acc)
}

fn group_derivative(e: &EllipticExpression, g: &TermGroup) -> Result<CurveFunction> {
    let field = &g.field;
    let s = field.embed_poly(e.curve.s())?;
    let ms: Vec<EllipticMorphism> = e
        .morphisms
        .iter()
        .map(|m| m.embed(field))
        .collect::<Result<_>>()?;
    let mut acc = CurveFunction::zero(field);
    for t in &g.terms {
        acc = acc.add(&term_derivative(t, &ms, &s)?);
    }
    match &g.root {
        None => descend_cf(&acc, &e.base),
        Some(_) => {
            let k1 = layer_above(field, &e.base)?;
            trace_cf(&descend_cf(&acc, &k1)?)
        }
    }
}

/// Derivative of one term; morphisms and S are over the term's field.
pub fn term_derivative(
    t: &EllipticTerm,
    ms: &[EllipticMorphism],
    s: &UniPoly<NfElem>,
) -> Result<CurveFunction> {
    let sr = Rf::from_poly(s.clone());
    let get = |i: usize| {
        ms.get(i)
            .ok_or_else(|| Error::Invalid(format!("no morphism with index {i}")))
    };
    let field = s.ctx().field().clone();
    let coeff = field.embed(t.coeff())?;
    let h = match t {
        EllipticTerm::FirstKind { morphism, .. } => {
            let m = get(*morphism)?;
            m.f.derivative().div(&m.g)?
        }
        EllipticTerm::SecondKind { morphism, .. } => {
            let m = get(*morphism)?;
            m.f.mul(&m.f.derivative()).div(&m.g)?
        }
        EllipticTerm::ThirdKind { morphism, c, d, .. } => {
            let m = get(*morphism)?;
            let (c, d) = (field.embed(c)?, field.embed(d)?);
            let one = field.one();
            let cubic = c.mul(&c.sub(&one)).mul(&c.sub(&m.kappa));
            if d.is_zero() || d.mul(&d) != cubic {
                return Err(Error::Invalid(format!(
                    "third-kind parameter ({c}, {d}) is not a point with d != 0"
                )));
            }
            let c = Rf::constant(c);
            m.f.derivative().scale(&d).div(&m.f.sub(&c).mul(&m.g))?
        }
        EllipticTerm::LogTerm { r, .. } => {
            return Ok(log_ratio_derivative(&r.embed(&field)?, s)?.scale(&coeff));
        }
    };
    Ok(CurveFunction::odd(h.scale(&coeff).div(&sr)?))
}

/// Moves an element of an extension down to `target`, failing if it does not lie there.
pub fn descend(e: &NfElem, target: &Arc<NumberField>) -> Result<NfElem> {
    let mut e = e.clone();
    while e.field().depth() > target.depth() {
        let f = e.field().clone();
        e = f.project_to_parent(&e)?;
    }
    target.embed(&e)
}

pub fn descend_cf(c: &CurveFunction, target: &Arc<NumberField>) -> Result<CurveFunction> {
    c.try_map_coeffs(|e| descend(e, target), target)
}

/// The field of the chain through `field` sitting one layer above `base`.
fn layer_above(field: &Arc<NumberField>, base: &Arc<NumberField>) -> Result<Arc<NumberField>> {
    let mut f = field.clone();
    while f.depth() > base.depth() + 1 {
        f = f.parent().expect("depth above base").clone();
    }
    match f.parent() {
        Some(p) if f.depth() == base.depth() + 1 && **p == **base => Ok(f),
        _ => Err(Error::Invalid(
            "root-sum field does not extend the base field".into(),
        )),
    }
}

/// Σ over conjugates of a function over K(α), as a function over K.
pub fn trace_rf(f: &Rf) -> Result<Rf> {
    let k1 = f.ctx().field().clone();
    let k0 = k1
        .parent()
        .ok_or_else(|| Error::Invalid("field has no parent".into()))?
        .clone();
    if f.is_zero() {
        return Ok(Rf::zero(&k0.zero()));
    }
    let n = k1.degree() / k0.degree();
    let (num, den) = (f.num(), f.den());
    let dd = den.deg() as usize;
    let need = (n * dd).max(num.deg() as usize + (n - 1) * dd) + 1;
    let (mut xs, mut norms, mut tops) = (vec![], vec![], vec![]);
    let mut x = 0i64;
    while xs.len() < need {
        let xv = k1.from_int(x);
        let dv = den.eval(&xv);
        if !dv.is_zero() {
            let nm = k1.relative_norm(&dv)?;
            let tr = k1.relative_trace(&num.eval(&xv).div(&dv)?)?;
            xs.push(k0.from_int(x));
            tops.push(tr.mul(&nm));
            norms.push(nm);
        }
        x += 1;
    }
    Rf::new(interpolate(&xs, &tops), interpolate(&xs, &norms))
}

fn trace_cf(c: &CurveFunction) -> Result<CurveFunction> {
    Ok(CurveFunction::new(trace_rf(&c.a)?, trace_rf(&c.b)?))
}

// ---- text ----

fn paren(s: String) -> String {
    if s.contains([' ', '+', '-', '*', '/']) {
        format!("({s})")
    } else {
        s
    }
}

/// b·√S written as a quotient with the square root in the denominator when S divides den(b).
fn fmt_odd(b: &Rf, s: &UniPoly<NfElem>, sqrt: &str) -> String {
    let (q, r) = b.den().divrem(s).expect("S is nonzero");
    if r.is_zero() {
        let den = if q.is_one() {
            sqrt.to_string()
        } else {
            format!("{}*{}", paren(q.fmt_var("x")), sqrt)
        };
        format!("{}/({})", paren(b.num().fmt_var("x")), den)
    } else if b.is_constant() && b.num().coeff(0).is_one() {
        sqrt.to_string()
    } else if b.is_constant() && b.num().coeff(0).neg().is_one() {
        format!("-{sqrt}")
    } else {
        format!("{}*{}", paren(b.fmt_var("x")), sqrt)
    }
}

fn fmt_curve_function(c: &CurveFunction, s: &UniPoly<NfElem>, sqrt: &str) -> String {
    match (c.a.is_zero(), c.b.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => c.a.fmt_var("x"),
        (true, false) => fmt_odd(&c.b, s, sqrt),
        (false, false) => {
            let odd = fmt_odd(&c.b, s, sqrt);
            match odd.strip_prefix('-') {
                Some(rest) => format!("{} - {}", c.a.fmt_var("x"), rest),
                None => format!("{} + {}", c.a.fmt_var("x"), odd),
            }
        }
    }
}

fn fmt_term(t: &EllipticTerm, ms: &[EllipticMorphism], s: &UniPoly<NfElem>, sqrt: &str) -> String {
    let c = paren(t.coeff().to_string());
    let f = |i: usize| ms[i].f.fmt_var("x");
    let k = |i: usize| ms[i].kappa.to_string();
    match t {
        EllipticTerm::FirstKind { morphism: i, .. } => format!("{c}*F({} | {})", f(*i), k(*i)),
        EllipticTerm::SecondKind { morphism: i, .. } => format!("{c}*E({} | {})", f(*i), k(*i)),
        EllipticTerm::ThirdKind {
            morphism: i,
            c: p,
            d,
            ..
        } => {
            format!("{c}*Pi({}, {} | {}) [d = {}]", f(*i), p, k(*i), d)
        }
        EllipticTerm::LogTerm { r, .. } => {
            let sf = s.ctx().field().embed_poly(s).expect("same field");
            let plus = fmt_curve_function(r, &sf, sqrt);
            let minus = fmt_curve_function(&r.conjugate(), &sf, sqrt);
            format!("{c}*ln(({plus})/({minus}))")
        }
    }
}

impl EllipticExpression {
    /// Human-readable form: F, E, Pi and ln terms, y written as sqrt(S).
    pub fn to_text(&self) -> String {
        let sqrt = format!("sqrt({})", self.curve.s().fmt_var("x"));
        let mut out = String::new();
        let s = self
            .base
            .embed_poly(self.curve.s())
            .expect("base contains the curve field");
        let mut global: Vec<String> = vec![];
        for d in field_definitions(&self.base).into_iter().chain(
            self.morphisms
                .iter()
                .flat_map(|m| field_definitions(m.field())),
        ) {
            if !global.contains(&d) {
                global.push(d);
            }
        }
        let where_clause = |defs: &[String]| {
            defs.iter()
                .map(|d| format!("{d} = 0"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut parts = vec![];
        if !self.algebraic.is_zero() {
            parts.push(fmt_curve_function(&self.algebraic, &s, &sqrt));
        }
        for g in &self.groups {
            let gs = g
                .field
                .embed_poly(self.curve.s())
                .expect("group field contains the curve field");
            let body: Vec<String> = g
                .terms
                .iter()
                .map(|t| fmt_term(t, &self.morphisms, &gs, &sqrt))
                .collect();
            let body = body.join("\n  + ");
            let extra: Vec<String> = field_definitions(&g.field)
                .into_iter()
                .filter(|d| !global.contains(d))
                .collect();
            let local = if extra.is_empty() {
                String::new()
            } else {
                format!("\n  where {}", where_clause(&extra))
            };
            match &g.root {
                None => parts.push(format!("{body}{local}")),
                Some(r) => {
                    let a = r.alpha.to_string();
                    parts.push(format!(
                        "sum({a} : {} = 0) [\n  {body}{local}\n]",
                        r.poly.fmt_var(&a)
                    ));
                }
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        out.push_str(&parts.join("\n+ "));
        if !global.is_empty() {
            let _ = write!(out, "\nwhere {}", where_clause(&global));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let cf =
            |c: &CurveFunction| json!({ "a": rf_to_json(&c.a, "x"), "b": rf_to_json(&c.b, "x") });
        let groups: Vec<Value> = self
            .groups
            .iter()
            .map(|g| {
                let terms: Vec<Value> = g
                    .terms
                    .iter()
                    .map(|t| {
                        let mut v = json!({ "kind": t.kind(), "coeff": t.coeff().to_string() });
                        if let Some(i) = t.morphism() {
                            v["morphism"] = json!(i);
                        }
                        match t {
                            EllipticTerm::ThirdKind { c, d, .. } => {
                                v["c"] = json!(c.to_string());
                                v["d"] = json!(d.to_string());
                            }
                            EllipticTerm::LogTerm { r, .. } => v["R"] = cf(r),
                            _ => {}
                        }
                        v
                    })
                    .collect();
                let root = match &g.root {
                    Some(r) => json!({ "poly": r.poly.fmt_var("x"), "alpha": element_to_json(&r.alpha)["repr"] }),
                    None => Value::Null,
                };
                json!({ "field": field_definitions(&g.field), "root": root, "terms": terms })
            })
            .collect();
        json!({
            "schemaVersion": SCHEMA_VERSION,
            "curve": { "field": field_definitions(self.curve.field()), "S": self.curve.s().fmt_var("x") },
            "field": field_definitions(&self.base),
            "morphisms": self.morphisms.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
            "algebraic": cf(&self.algebraic),
            "groups": groups,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("schemaVersion").and_then(|x| x.as_u64()) {
            Some(SCHEMA_VERSION) => {}
            other => return Err(Error::Parse(format!("unsupported schemaVersion {other:?}"))),
        }
        let str_of = |v: &Value, what: &str| -> Result<String> {
            v.as_str()
                .map(String::from)
                .ok_or_else(|| Error::Parse(format!("'{what}' must be a string")))
        };
        let cfield = field_from_json(&v["curve"]["field"])?;
        let s = parse_poly(&str_of(&v["curve"]["S"], "curve.S")?, "x", &cfield)?;
        let curve = HyperellipticCurve::new(s)?;
        let base = field_from_json(&v["field"])?;
        let morphisms = v["morphisms"]
            .as_array()
            .ok_or_else(|| Error::Parse("'morphisms' must be a list".into()))?
            .iter()
            .map(EllipticMorphism::from_json)
            .collect::<Result<Vec<_>>>()?;
        let cf = |c: &Value, field: &Arc<NumberField>| -> Result<CurveFunction> {
            Ok(CurveFunction::new(
                rf_from_json(&c["a"], "x", field)?,
                rf_from_json(&c["b"], "x", field)?,
            ))
        };
        let algebraic = cf(&v["algebraic"], &base)?;
        let mut groups = vec![];
        for g in v["groups"]
            .as_array()
            .ok_or_else(|| Error::Parse("'groups' must be a list".into()))?
        {
            let field = field_from_json(&g["field"])?;
            if !field.contains_field(&base) {
                return Err(Error::Parse(
                    "group field does not extend the base field".into(),
                ));
            }
            let root = if g["root"].is_null() {
                None
            } else {
                let poly = parse_poly(&str_of(&g["root"]["poly"], "root.poly")?, "x", &base)?;
                let alpha = parse_element(&str_of(&g["root"]["alpha"], "root.alpha")?, &field)?;
                Some(RootSum { poly, alpha })
            };
            let mut terms = vec![];
            for t in g["terms"]
                .as_array()
                .ok_or_else(|| Error::Parse("'terms' must be a list".into()))?
            {
                let coeff = parse_element(&str_of(&t["coeff"], "coeff")?, &field)?;
                let morphism = || -> Result<usize> {
                    let i = t["morphism"]
                        .as_u64()
                        .ok_or_else(|| Error::Parse("term needs a morphism index".into()))?;
                    if i as usize >= morphisms.len() {
                        return Err(Error::Parse(format!("morphism index {i} out of range")));
                    }
                    Ok(i as usize)
                };
                let term = match t["kind"].as_str() {
                    Some("FirstKind") => EllipticTerm::FirstKind {
                        coeff,
                        morphism: morphism()?,
                    },
                    Some("SecondKind") => EllipticTerm::SecondKind {
                        coeff,
                        morphism: morphism()?,
                    },
                    Some("ThirdKind") => EllipticTerm::ThirdKind {
                        coeff,
                        morphism: morphism()?,
                        c: parse_element(&str_of(&t["c"], "c")?, &field)?,
                        d: parse_element(&str_of(&t["d"], "d")?, &field)?,
                    },
                    Some("LogTerm") => EllipticTerm::LogTerm {
                        coeff,
                        r: cf(&t["R"], &field)?,
                    },
                    other => return Err(Error::Parse(format!("unknown term kind {other:?}"))),
                };
                terms.push(term);
            }
            groups.push(TermGroup { field, root, terms });
        }
        Ok(EllipticExpression {
            curve,
            base,
            morphisms,
            algebraic,
            groups,
        })
    }
}

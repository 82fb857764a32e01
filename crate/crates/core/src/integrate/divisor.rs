//! Sums of third-kind integrals plus a logarithm with a prescribed single pole.
//!
//! For morphisms F_k and parameters (c_k, d_k) on the elliptic curves, a
//! function R = A + B·y is chosen that vanishes on the points where
//! F_k = c_k and y·G_k = d_k. Then Σ Π(F_k, c_k | κ_k) − ln(R/R̄) only has
//! poles at the remaining zeros of R.

use std::sync::Arc;

use super::curvefn::{log_ratio_derivative, CurveFunction};
use super::expr::{term_derivative, EllipticTerm};
use super::hermite::solve_linear;
use super::xpoly::{self, XPoly};
use crate::arith::{Field, NfElem, NumberField};
use crate::error::{Error, Result, Stage};
use crate::morphisms::{independence_rank, EllipticMorphism};
use crate::poly::{MonomialOrder, MultiPoly, RationalFunction, UniPoly};
use crate::solve::{normal_form, solve_in_field, SolveOptions};
use crate::zeta::HyperellipticCurve;

type Rf = RationalFunction<NfElem>;

/// A monomial of the Riemann–Roch basis: x^p, or y·x^p when `odd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisMonomial {
    pub odd: bool,
    pub power: usize,
}

impl BasisMonomial {
    pub fn pole_order(&self, genus: usize) -> usize {
        if self.odd {
            2 * genus + 1 + 2 * self.power
        } else {
            2 * self.power
        }
    }
}

/// Basis of L(m·∞) sorted by pole order.
pub fn riemann_roch_basis(m: usize, genus: usize) -> Vec<BasisMonomial> {
    let mut out: Vec<BasisMonomial> = (0..=m / 2)
        .map(|p| BasisMonomial {
            odd: false,
            power: p,
        })
        .collect();
    let mut p = 0;
    while 2 * genus + 1 + 2 * p <= m {
        out.push(BasisMonomial {
            odd: true,
            power: p,
        });
        p += 1;
    }
    out.sort_by_key(|b| b.pole_order(genus));
    out
}

/// Σ max(deg num F, deg den F) over the morphisms.
pub fn total_degree(ms: &[EllipticMorphism]) -> usize {
    ms.iter()
        .map(|m| m.f.num().deg().max(m.f.den().deg()).max(0) as usize)
        .sum()
}

/// The first `genus` independent morphisms of the list (or all of them when fewer).
fn select_morphisms(ms: &[EllipticMorphism], genus: usize) -> Result<Vec<usize>> {
    let mut chosen: Vec<usize> = vec![];
    for i in 0..ms.len() {
        if chosen.len() == genus {
            break;
        }
        let mut trial: Vec<EllipticMorphism> = chosen.iter().map(|&j| ms[j].clone()).collect();
        trial.push(ms[i].clone());
        if independence_rank(&trial)? == trial.len() {
            chosen.push(i);
        }
    }
    Ok(chosen)
}

/// Variables c_k, d_k and the reduction d_k² → c_k(c_k−1)(c_k−κ_k).
#[derive(Clone, Debug)]
struct Params {
    nvars: usize,
    d: Vec<usize>,
    cubics: Vec<MultiPoly<NfElem>>,
}

impl Params {
    fn new(nvars: usize, c: Vec<usize>, d: Vec<usize>, kappas: &[NfElem]) -> Self {
        let cubics = c
            .iter()
            .zip(kappas)
            .map(|(&ci, k)| {
                let z = k.field().zero();
                let cubic = UniPoly::new(
                    vec![z.zero(), k.clone(), k.add(&z.one()).neg(), z.one()],
                    &z,
                );
                MultiPoly::from_univariate(nvars, ci, &cubic)
            })
            .collect();
        Params { nvars, d, cubics }
    }

    fn relations(&self) -> Vec<MultiPoly<NfElem>> {
        let z = self.cubics[0].ctx().clone();
        self.d
            .iter()
            .zip(&self.cubics)
            .map(|(&di, cubic)| MultiPoly::var(self.nvars, di, &z).pow(2).sub(cubic))
            .collect()
    }

    fn reduce(&self, p: &MultiPoly<NfElem>) -> MultiPoly<NfElem> {
        let z = p.ctx().clone();
        let mut out = MultiPoly::zero(self.nvars, &z);
        for (mono, coef) in p.terms() {
            let mut m = mono.clone();
            let mut factor = MultiPoly::constant(self.nvars, coef.clone());
            for (k, &di) in self.d.iter().enumerate() {
                let e = m[di];
                if e >= 2 {
                    m[di] = e % 2;
                    factor = factor.mul(&self.cubics[k].pow(e / 2));
                }
            }
            out = out.add(&factor.mul(&MultiPoly::from_terms(self.nvars, &z, [(m, z.one())])));
        }
        out
    }

    fn reduce_x(&self, p: &XPoly) -> XPoly {
        xpoly::trim(p.iter().map(|c| self.reduce(c)).collect())
    }
}

/// num(F) − c·den(F), A·Gn + d·B·Gd contributions, for one morphism.
struct MorphismData {
    w: XPoly,
    gn: XPoly,
    gd: XPoly,
}

fn morphism_data(m: &EllipticMorphism, nvars: usize, c: usize) -> MorphismData {
    let z = m.field().zero();
    let cv = MultiPoly::var(nvars, c, &z);
    let un = xpoly::constant(m.f.num(), nvars);
    let vd = xpoly::constant(m.f.den(), nvars);
    MorphismData {
        w: xpoly::sub(&un, &xpoly::scale(&vd, &cv)),
        gn: xpoly::constant(m.g.num(), nvars),
        gd: xpoly::constant(m.g.den(), nvars),
    }
}

/// x^p or d·x^p·Gd/Gn shifted onto the common denominator Gn: the numerator
/// of a basis monomial evaluated at y = d/G.
fn monomial_numerator(b: &BasisMonomial, md: &MorphismData, d: &MultiPoly<NfElem>) -> XPoly {
    let z = d.ctx();
    let mut xp: XPoly = vec![MultiPoly::zero(d.nvars(), z); b.power];
    xp.push(MultiPoly::constant(d.nvars(), z.one()));
    if b.odd {
        xpoly::scale(&xpoly::mul(&xp, &md.gd), d)
    } else {
        xpoly::mul(&xp, &md.gn)
    }
}

fn padded(mut v: XPoly, len: usize, nvars: usize, z: &NfElem) -> XPoly {
    v.resize(len, MultiPoly::zero(nvars, z));
    v
}

/// Builds A and B from basis monomials and their coefficients.
fn assemble(basis: &[BasisMonomial], coeffs: &[MultiPoly<NfElem>]) -> (XPoly, XPoly) {
    let (mut a, mut b): (XPoly, XPoly) = (vec![], vec![]);
    for (bm, c) in basis.iter().zip(coeffs) {
        let target = if bm.odd { &mut b } else { &mut a };
        if target.len() <= bm.power {
            target.resize(bm.power + 1, MultiPoly::zero(c.nvars(), c.ctx()));
        }
        target[bm.power] = target[bm.power].add(c);
    }
    (xpoly::trim(a), xpoly::trim(b))
}

/// R = A + B·y over K[c, d]/(relations) vanishing on the points F_k = c_k,
/// y·G_k = d_k, with R ∈ L(m·∞) for m = g + Σ deg F_k. Variable k is c_k and
/// variable n + k is d_k.
#[derive(Clone, Debug)]
pub struct EllipticDivisors {
    pub curve: HyperellipticCurve,
    pub morphisms: Vec<EllipticMorphism>,
    pub field: Arc<NumberField>,
    pub m: usize,
    pub basis: Vec<BasisMonomial>,
    /// Coefficient of each basis monomial (maximal minors of the vanishing system).
    pub coeffs: Vec<MultiPoly<NfElem>>,
    /// N(R)/Π(num F_k − c_k den F_k), up to a factor in K[c, d]; its roots are
    /// the abscissas of the poles of the derivative.
    pub denominator: Vec<MultiPoly<NfElem>>,
    params: Params,
}

impl EllipticDivisors {
    pub fn nparams(&self) -> usize {
        self.params.nvars
    }

    pub fn param_names(&self) -> Vec<String> {
        let n = self.morphisms.len();
        (1..=n)
            .map(|k| format!("c{k}"))
            .chain((1..=n).map(|k| format!("d{k}")))
            .collect()
    }

    pub fn relations(&self) -> Vec<MultiPoly<NfElem>> {
        self.params.relations()
    }

    /// Normal form modulo d_k² = c_k(c_k−1)(c_k−κ_k).
    pub fn reduce(&self, p: &MultiPoly<NfElem>) -> MultiPoly<NfElem> {
        self.params.reduce(p)
    }

    /// A and B as polynomials in x over K[c, d].
    pub fn a_b(&self) -> (Vec<MultiPoly<NfElem>>, Vec<MultiPoly<NfElem>>) {
        assemble(&self.basis, &self.coeffs)
    }

    /// R and Σ Π(F_k, c_k | κ_k) − ln(R/R̄) differentiated, at concrete parameters.
    pub fn specialize(&self, c: &[NfElem], d: &[NfElem]) -> Result<(CurveFunction, CurveFunction)> {
        let n = self.morphisms.len();
        if c.len() != n || d.len() != n {
            return Err(Error::Invalid(format!("expected {n} parameter pairs")));
        }
        let field = super::hermite::working_field(
            c.iter().chain(d).map(|e| e.field()).chain([&self.field]),
        )?;
        let mut point = vec![field.zero(); 2 * n];
        for k in 0..n {
            point[k] = field.embed(&c[k])?;
            point[n + k] = field.embed(&d[k])?;
        }
        let (a, b) = self.a_b();
        let ev = |p: &XPoly| -> Result<Rf> {
            let cs: Vec<NfElem> = p
                .iter()
                .map(|q| Ok(q.try_map_coeffs(&field)?.eval(&point)))
                .collect::<Result<_>>()?;
            Ok(Rf::from_poly(UniPoly::new(cs, &field.zero())))
        };
        let r = CurveFunction::new(ev(&a)?, ev(&b)?);
        let ms: Vec<EllipticMorphism> = self
            .morphisms
            .iter()
            .map(|m| m.embed(&field))
            .collect::<Result<_>>()?;
        let s = field.embed_poly(self.curve.s())?;
        let mut acc = log_ratio_derivative(&r, &s)?.neg();
        for k in 0..n {
            let t = EllipticTerm::ThirdKind {
                coeff: field.one(),
                morphism: k,
                c: point[k].clone(),
                d: point[n + k].clone(),
            };
            acc = acc.add(&term_derivative(&t, &ms, &s)?);
        }
        Ok((r, acc))
    }
}

/// Symbolic R over the parameter ring, by Cramer's rule on the vanishing system.
pub fn elliptic_divisors(
    curve: &HyperellipticCurve,
    l: &[EllipticMorphism],
) -> Result<EllipticDivisors> {
    if l.is_empty() {
        return Err(Error::Invalid("no morphisms".into()));
    }
    let field = super::hermite::working_field(l.iter().map(|m| m.field()).chain([curve.field()]))?;
    let ms: Vec<EllipticMorphism> = l.iter().map(|m| m.embed(&field)).collect::<Result<_>>()?;
    let g = curve.genus();
    let n = ms.len();
    let nvars = 2 * n;
    let z = field.zero();
    let kappas: Vec<NfElem> = ms.iter().map(|m| m.kappa.clone()).collect();
    let params = Params::new(nvars, (0..n).collect(), (n..2 * n).collect(), &kappas);
    let m = g + total_degree(&ms);
    let basis = riemann_roch_basis(m, g);

    // rows: coefficients of the pseudo-remainders, scaled uniformly per morphism
    let mut rows: Vec<Vec<MultiPoly<NfElem>>> = vec![];
    for (k, mor) in ms.iter().enumerate() {
        let md = morphism_data(mor, nvars, k);
        let dv = MultiPoly::var(nvars, n + k, &z);
        let nums: Vec<XPoly> = basis
            .iter()
            .map(|b| monomial_numerator(b, &md, &dv))
            .collect();
        let e = md.w.len() - 1;
        let total = nums
            .iter()
            .map(|p| (p.len() as isize) - e as isize)
            .max()
            .unwrap_or(0)
            .max(0) as u32;
        let lc = md.w[e].clone();
        let cols: Vec<XPoly> = nums
            .iter()
            .map(|p| {
                let (_, r, steps) = xpoly::pdivrem(p, &md.w);
                let r = xpoly::scale(&r, &lc.pow(total - steps));
                padded(params.reduce_x(&r), e, nvars, &z)
            })
            .collect();
        for i in 0..e {
            rows.push(cols.iter().map(|c| c[i].clone()).collect());
        }
    }
    let ncols = basis.len();
    if rows.len() + 1 != ncols {
        return Err(Error::Invalid(format!(
            "vanishing system has {} conditions for {} coefficients",
            rows.len(),
            ncols
        )));
    }
    let mut coeffs = vec![];
    for j in 0..ncols {
        let sub: Vec<Vec<MultiPoly<NfElem>>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let det = minor_det(&sub, &params, nvars, &z);
        coeffs.push(if (ncols - 1 - j) % 2 == 0 {
            det
        } else {
            det.neg()
        });
    }
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::Invalid(
            "vanishing system is singular for generic parameters".into(),
        ));
    }
    let (a, b) = assemble(&basis, &coeffs);
    let s = xpoly::constant(&field.embed_poly(curve.s())?, nvars);
    let norm = params.reduce_x(&xpoly::sub(
        &xpoly::mul(&a, &a),
        &xpoly::mul(&xpoly::mul(&b, &b), &s),
    ));
    let mut den = norm;
    for (k, mor) in ms.iter().enumerate() {
        let md = morphism_data(mor, nvars, k);
        let (q, r, _) = xpoly::pdivrem(&den, &md.w);
        if !params.reduce_x(&r).is_empty() {
            return Err(Error::Invalid(
                "norm of R is not divisible by num(F) - c den(F)".into(),
            ));
        }
        den = params.reduce_x(&q);
    }
    Ok(EllipticDivisors {
        curve: curve.clone(),
        morphisms: ms,
        field,
        m,
        basis,
        coeffs,
        denominator: den,
        params,
    })
}

/// Determinant by expansion over column subsets, reducing modulo the relations.
fn minor_det(
    m: &[Vec<MultiPoly<NfElem>>],
    params: &Params,
    nvars: usize,
    z: &NfElem,
) -> MultiPoly<NfElem> {
    let n = m.len();
    if n == 0 {
        return MultiPoly::constant(nvars, z.one());
    }
    // dets[mask] = det of rows 0..popcount(mask) restricted to columns in mask
    let mut dets: Vec<Option<MultiPoly<NfElem>>> = vec![None; 1 << n];
    dets[0] = Some(MultiPoly::constant(nvars, z.one()));
    let mut masks: Vec<usize> = (1..(1usize << n)).collect();
    masks.sort_by_key(|x| x.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = MultiPoly::zero(nvars, z);
        let mut idx = 0;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = dets[mask & !(1 << j)].as_ref().unwrap();
            if !m[row][j].is_zero() && !sub.is_zero() {
                let t = m[row][j].mul(sub);
                // sign of moving column j (position idx) to the last place
                let cnt = mask.count_ones() as usize;
                acc = if (cnt - 1 - idx) % 2 == 0 {
                    acc.add(&t)
                } else {
                    acc.sub(&t)
                };
            }
            idx += 1;
        }
        dets[mask] = Some(params.reduce(&acc));
    }
    dets[(1 << n) - 1].take().unwrap()
}

/// Terms whose derivative is T/((x−α)·√S).
#[derive(Clone, Debug)]
pub struct DivisorReduction {
    pub field: Arc<NumberField>,
    pub terms: Vec<EllipticTerm>,
}

/// Finds (c_k, d_k), R and first-kind coefficients a_j with
/// a₀(Σ Π(F_k, c_k | κ_k) − ln(R/R̄))′ + Σ a_j F_j′/(G_j√S) = T/((x−α)√S).
/// R is taken in L((m′+1)·∞), m′ = Σ deg F_k, vanishing on the points above
/// F_k = c_k and at one point above x = α; the field grows as the solutions require.
pub fn reduce_divisor(
    curve: &HyperellipticCurve,
    l: &[EllipticMorphism],
    alpha: &NfElem,
    t: &NfElem,
    opts: &SolveOptions,
) -> Result<DivisorReduction> {
    let k1 = alpha.field().clone();
    let t = k1.embed(t)?;
    if t.is_zero() {
        return Ok(DivisorReduction {
            field: k1,
            terms: vec![],
        });
    }
    let g = curve.genus();
    let chosen = select_morphisms(l, g)?;
    if chosen.is_empty() {
        return Err(not_decomposable(
            "no morphisms to build third-kind integrals from",
        ));
    }
    let ms: Vec<EllipticMorphism> = chosen
        .iter()
        .map(|&i| l[i].embed(&k1))
        .collect::<Result<_>>()?;
    let mp = total_degree(&ms);
    let basis = riemann_roch_basis(mp + 1, g);
    if basis.last().map(|b| b.pole_order(g)) != Some(mp + 1) {
        return Err(not_decomposable(
            "no function with the required pole order at infinity",
        ));
    }
    let system = divisor_system(curve, &ms, &basis, alpha)?;
    let mut gens = system.clone();
    loop {
        let (sols, pending) = solve_in_field(&gens, opts)?;
        for sol in &sols {
            if let Some(r) = try_solution(
                curve,
                l,
                &chosen,
                &basis,
                alpha,
                &t,
                &sol.field,
                &sol.values,
            )? {
                return Ok(r);
            }
        }
        let Some(ext) = pending else { break };
        gens = system
            .iter()
            .map(|p| p.try_map_coeffs(&ext))
            .collect::<Result<_>>()?;
    }
    Err(not_decomposable(
        "no parameters (c, d) give a single pole at the target",
    ))
}

fn not_decomposable(reason: &str) -> Error {
    Error::NotDecomposable {
        stage: Stage::DivisorReduction,
        reason: reason.into(),
    }
}

/// Variables: ε, the free coefficients of R, d_1..d_n, c_1..c_n.
fn divisor_system(
    curve: &HyperellipticCurve,
    ms: &[EllipticMorphism],
    basis: &[BasisMonomial],
    alpha: &NfElem,
) -> Result<Vec<MultiPoly<NfElem>>> {
    let k1 = alpha.field().clone();
    let z = k1.zero();
    let n = ms.len();
    let nr = basis.len() - 1;
    let nvars = 1 + nr + 2 * n;
    let dvar = |k: usize| 1 + nr + k;
    let cvar = |k: usize| 1 + nr + n + k;
    let kappas: Vec<NfElem> = ms.iter().map(|m| m.kappa.clone()).collect();
    let params = Params::new(
        nvars,
        (0..n).map(cvar).collect(),
        (0..n).map(dvar).collect(),
        &kappas,
    );
    let mut coeffs: Vec<MultiPoly<NfElem>> =
        (0..nr).map(|i| MultiPoly::var(nvars, 1 + i, &z)).collect();
    coeffs.push(MultiPoly::constant(nvars, z.one()));
    let (a, b) = assemble(basis, &coeffs);

    let mut gens = vec![];
    let mut guard = MultiPoly::var(nvars, 0, &z);
    for (k, mor) in ms.iter().enumerate() {
        let md = morphism_data(mor, nvars, cvar(k));
        let dv = MultiPoly::var(nvars, dvar(k), &z);
        let num = xpoly::add(
            &xpoly::mul(&a, &md.gn),
            &xpoly::scale(&xpoly::mul(&b, &md.gd), &dv),
        );
        let r = params.reduce_x(&xpoly::prem(&num, &md.w));
        gens.extend(r.into_iter().filter(|p| !p.is_zero()));
        guard = guard.mul(&dv).mul(md.w.last().unwrap());
    }
    let s = xpoly::constant(&k1.embed_poly(curve.s())?, nvars);
    let norm = xpoly::sub(&xpoly::mul(&a, &a), &xpoly::mul(&xpoly::mul(&b, &b), &s));
    gens.push(xpoly::eval_at(&norm, alpha, nvars));
    gens.extend(params.relations());
    gens.push(guard.sub(&MultiPoly::constant(nvars, z.one())));
    Ok(gens)
}

#[allow(clippy::too_many_arguments)]
fn try_solution(
    curve: &HyperellipticCurve,
    l: &[EllipticMorphism],
    chosen: &[usize],
    basis: &[BasisMonomial],
    alpha: &NfElem,
    t: &NfElem,
    field: &Arc<NumberField>,
    values: &[NfElem],
) -> Result<Option<DivisorReduction>> {
    let n = chosen.len();
    let nr = basis.len() - 1;
    let z = field.zero();
    let mut coeffs: Vec<MultiPoly<NfElem>> = (0..nr)
        .map(|i| MultiPoly::constant(0, values[1 + i].clone()))
        .collect();
    coeffs.push(MultiPoly::constant(0, z.one()));
    let (a, b) = assemble(basis, &coeffs);
    let to_rf =
        |p: &XPoly| Rf::from_poly(UniPoly::new(p.iter().map(|c| c.coeff(&[])).collect(), &z));
    let r = CurveFunction::new(to_rf(&a), to_rf(&b));

    let all: Vec<EllipticMorphism> = l.iter().map(|m| m.embed(field)).collect::<Result<_>>()?;
    let s = field.embed_poly(curve.s())?;
    let alpha = field.embed(alpha)?;
    let mut third = vec![];
    let mut jd = log_ratio_derivative(&r, &s)?.neg();
    for (k, &idx) in chosen.iter().enumerate() {
        let c = values[1 + nr + n + k].clone();
        let d = values[1 + nr + k].clone();
        let term = EllipticTerm::ThirdKind {
            coeff: field.one(),
            morphism: idx,
            c: c.clone(),
            d: d.clone(),
        };
        jd = jd.add(&term_derivative(&term, &all, &s)?);
        third.push((idx, c, d));
    }
    if !jd.a.is_zero() {
        return Ok(None);
    }
    let h = jd.b.mul_poly(&s);
    if *h.den() != UniPoly::linear_root(&alpha) {
        return Ok(None);
    }
    let rho = h.num().eval(&alpha);
    if rho.is_zero() {
        return Ok(None);
    }
    let p = h
        .num()
        .sub(&UniPoly::constant(rho.clone()))
        .exact_div(h.den())?;
    let a0 = field.embed(t)?.div(&rho)?;
    let target = p.scale(&a0.neg());
    let Some(first) = first_kind_coefficients(&all, &target)? else {
        return Ok(None);
    };
    let mut terms: Vec<EllipticTerm> = third
        .into_iter()
        .map(|(morphism, c, d)| EllipticTerm::ThirdKind {
            coeff: a0.clone(),
            morphism,
            c,
            d,
        })
        .collect();
    terms.push(EllipticTerm::LogTerm { coeff: a0.neg(), r });
    terms.extend(
        first
            .into_iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(morphism, coeff)| EllipticTerm::FirstKind { coeff, morphism }),
    );
    Ok(Some(DivisorReduction {
        field: field.clone(),
        terms,
    }))
}

/// a with Σ a_j F_j′/G_j = target, or None when the target is not spanned.
pub fn first_kind_coefficients(
    ms: &[EllipticMorphism],
    target: &UniPoly<NfElem>,
) -> Result<Option<Vec<NfElem>>> {
    let z = target.ctx().clone();
    if target.is_zero() {
        return Ok(Some(vec![z.zero(); ms.len()]));
    }
    let mut cols = vec![];
    for (i, m) in ms.iter().enumerate() {
        let w = m
            .differential()
            .ok_or_else(|| Error::Invalid(format!("F'/G of morphism {i} is not a polynomial")))?;
        cols.push(target.ctx().field().embed_poly(&w)?);
    }
    let neq = cols
        .iter()
        .map(|c| c.deg() + 1)
        .chain([target.deg() + 1])
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let rows: Vec<Vec<NfElem>> = (0..neq)
        .map(|k| cols.iter().map(|c| c.coeff(k)).collect())
        .collect();
    let rhs: Vec<NfElem> = (0..neq).map(|k| target.coeff(k)).collect();
    Ok(solve_linear(rows, rhs, ms.len(), &z))
}

/// True when every coefficient pair of `a` and `b` is proportional modulo the relations.
pub fn proportional_mod(
    d: &EllipticDivisors,
    a: &[MultiPoly<NfElem>],
    b: &[MultiPoly<NfElem>],
) -> bool {
    let len = a.len().max(b.len());
    let zero = MultiPoly::zero(d.nparams(), &d.field.zero());
    let get = |v: &[MultiPoly<NfElem>], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
    let rels = d.relations();
    for i in 0..len {
        for j in i + 1..len {
            let cross = get(a, i).mul(&get(b, j)).sub(&get(a, j).mul(&get(b, i)));
            if !normal_form(&d.reduce(&cross), &rels, MonomialOrder::Lex).is_zero() {
                return false;
            }
        }
    }
    true
}

//! Search for elliptic morphisms: for each way of distributing the roots of S
//! among the zeros of U, V, U − V and U − κV, solve for F = U/V.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::morphism::{common_field, independence_rank, EllipticMorphism};
use crate::arith::{Field, NfElem, NumberField};
use crate::error::{Error, Result};
use crate::poly::{splitting_field, MultiPoly, RationalFunction, UniPoly};
use crate::solve::{solve_in_field, SolutionPoint, SolveOptions};
use crate::zeta::{best_rank_bound, odd_primes_up_to, HyperellipticCurve, DEFAULT_COUNT_BUDGET};

/// Root i of S goes to U (label 0), V (1), U − V (2) or U − κV (3); A and B
/// have degrees d1 and d2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    pub labels: Vec<u8>,
    pub d1: usize,
    pub d2: usize,
}

impl PartitionSpec {
    pub fn part(&self, label: u8) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&i| self.labels[i] == label)
            .collect()
    }

    fn count(&self, label: u8) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// deg U = 2·d1 + #R1.
    pub fn n1(&self) -> usize {
        2 * self.d1 + self.count(0)
    }

    /// deg V = 2·d2 + #R2.
    pub fn n2(&self) -> usize {
        2 * self.d2 + self.count(1)
    }

    /// Degrees of C and D, or None when no morphism can have this shape.
    ///
    /// S has odd degree, so F(F−1)(F−κ) has a zero or pole of odd order at
    /// infinity. With n1 ≠ n2 that needs n1 − n2 odd, and then U − V and U − κV
    /// have degree max(n1, n2). With n1 = n2, F(∞) is 1 or κ and exactly one
    /// of U − V, U − κV drops by an odd amount.
    pub fn cd_degrees(&self) -> Option<(usize, usize)> {
        let (n1, n2) = (self.n1(), self.n2());
        let m = n1.max(n2);
        if m == 0 {
            return None;
        }
        let (r3, r4) = (self.count(2), self.count(3));
        if r3 > m || r4 > m {
            return None;
        }
        let (c3, c4) = (m - r3, m - r4);
        if n1 != n2 {
            if (n1 + n2) % 2 == 0 || c3 % 2 == 1 || c4 % 2 == 1 {
                return None;
            }
            return Some((c3 / 2, c4 / 2));
        }
        if (c3 % 2 == 1) == (c4 % 2 == 1) {
            return None;
        }
        Some((c3 / 2, c4 / 2))
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |l: u8| {
            let v: Vec<String> = self.part(l).iter().map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", v.join(","))
        };
        write!(
            f,
            "R=({}, {}, {}, {}) d=({}, {})",
            show(0),
            show(1),
            show(2),
            show(3),
            self.d1,
            self.d2
        )
    }
}

/// All 4^n label vectors, in base-4 counting order (root 1 least significant).
pub fn assignments(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..4usize.pow(n as u32)).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let l = (idx % 4) as u8;
                idx /= 4;
                l
            })
            .collect()
    })
}

/// Every admissible (partition, d1, d2) with deg U, deg V ≤ m, ordered by
/// deg U + deg V.
pub fn enumerate_partitions(deg_s: usize, m: usize) -> Vec<PartitionSpec> {
    let mut out = vec![];
    for labels in assignments(deg_s) {
        let r1 = labels.iter().filter(|&&l| l == 0).count();
        let r2 = labels.iter().filter(|&&l| l == 1).count();
        if r1 > m || r2 > m {
            continue;
        }
        for d1 in 0..=(m - r1) / 2 {
            for d2 in 0..=(m - r2) / 2 {
                let spec = PartitionSpec {
                    labels: labels.clone(),
                    d1,
                    d2,
                };
                if spec.cd_degrees().is_some() {
                    out.push(spec);
                }
            }
        }
    }
    out.sort_by_key(|s| s.n1() + s.n2());
    out
}

/// Positions of the unknowns. Lex order with κ last, so the eliminant is in κ.
#[derive(Clone, Debug)]
pub struct VarLayout {
    pub nvars: usize,
    pub eps: usize,
    pub c: usize,
    pub nc: usize,
    pub d: usize,
    pub nd: usize,
    pub b: usize,
    pub a: usize,
    pub s: usize,
    pub kappa: usize,
}

impl VarLayout {
    fn new(spec: &PartitionSpec) -> Self {
        let (dc, dd) = spec.cd_degrees().expect("admissible spec");
        let eps = 0;
        let c = 1;
        let nc = dc + 1;
        let d = c + nc;
        let nd = dd + 1;
        let b = d + nd;
        let a = b + spec.d2;
        let s = a + spec.d1;
        let kappa = s + 1;
        VarLayout {
            nvars: kappa + 1,
            eps,
            c,
            nc,
            d,
            nd,
            b,
            a,
            s,
            kappa,
        }
    }
}

/// Generators of the ideal of a partition: coefficients in x of
/// lc·s²·Ã²·Π₁ − B²Π₂ − C²Π₃ and lc·s²·Ã²·Π₁ − κB²Π₂ − D²Π₄, and
/// s·κ(κ−1)·Res(Ã, B)·ε + 1. Here μ = lc·s², so that G = s·Ã·C·D/(B³Π₂²).
#[derive(Clone, Debug)]
pub struct Ideal {
    pub gens: Vec<MultiPoly<NfElem>>,
    pub layout: VarLayout,
}

type XPoly = Vec<MultiPoly<NfElem>>;

fn xmul(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let z = MultiPoly::zero(a[0].nvars(), a[0].ctx());
    let mut out = vec![z; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn xsub(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.len().max(b.len());
    let z = MultiPoly::zero(
        a.first().or(b.first()).unwrap().nvars(),
        a.first().or(b.first()).unwrap().ctx(),
    );
    (0..n)
        .map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z)))
        .collect()
}

fn xconst(p: &UniPoly<NfElem>, nvars: usize) -> XPoly {
    p.coeffs()
        .iter()
        .map(|c| MultiPoly::constant(nvars, c.clone()))
        .collect()
}

fn xscale(a: &XPoly, c: &MultiPoly<NfElem>) -> XPoly {
    a.iter().map(|x| x.mul(c)).collect()
}

/// Generic polynomial with unknown coefficients at `start..start+n`, plus a
/// leading 1 when `monic`.
fn generic(z: &NfElem, nvars: usize, start: usize, n: usize, monic: bool) -> XPoly {
    let mut v: XPoly = (0..n)
        .map(|i| MultiPoly::var(nvars, start + i, z))
        .collect();
    if monic {
        v.push(MultiPoly::constant(nvars, z.one()));
    }
    v
}

fn det(m: &[Vec<MultiPoly<NfElem>>]) -> MultiPoly<NfElem> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(m[0][0].nvars(), m[0][0].ctx());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<NfElem>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Sylvester resultant of two polynomials in x with symbolic coefficients.
fn xresultant(a: &XPoly, b: &XPoly) -> MultiPoly<NfElem> {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let one = MultiPoly::constant(a[0].nvars(), a[0].ctx().one());
    if da == 0 || db == 0 {
        return one;
    }
    let n = da + db;
    let z = MultiPoly::zero(a[0].nvars(), a[0].ctx());
    let mut m = vec![vec![z; n]; n];
    for i in 0..db {
        for (k, c) in a.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..da {
        for (k, c) in b.iter().rev().enumerate() {
            m[db + i][i + k] = c.clone();
        }
    }
    det(&m)
}

fn root_product(roots: &[NfElem], idx: &[usize], z: &NfElem) -> UniPoly<NfElem> {
    idx.iter().fold(UniPoly::one(z), |acc, &i| {
        acc.mul(&UniPoly::linear_root(&roots[i]))
    })
}

pub fn build_ideal(spec: &PartitionSpec, roots: &[NfElem], lc: &NfElem) -> Ideal {
    let lay = VarLayout::new(spec);
    let n = lay.nvars;
    let z = roots[0].zero();
    let v = |i: usize| MultiPoly::var(n, i, &z);
    let a = generic(&z, n, lay.a, spec.d1, true);
    let b = generic(&z, n, lay.b, spec.d2, true);
    let c = generic(&z, n, lay.c, lay.nc, false);
    let d = generic(&z, n, lay.d, lay.nd, false);
    let p = |l: u8| xconst(&root_product(roots, &spec.part(l), &z), n);
    let mu = v(lay.s).mul(&v(lay.s)).scale(lc);
    let u = xscale(&xmul(&xmul(&a, &a), &p(0)), &mu);
    let vv = xmul(&xmul(&b, &b), &p(1));
    let e1 = xsub(&xsub(&u, &vv), &xmul(&xmul(&c, &c), &p(2)));
    let e2 = xsub(
        &xsub(&u, &xscale(&vv, &v(lay.kappa))),
        &xmul(&xmul(&d, &d), &p(3)),
    );
    let mut gens: Vec<MultiPoly<NfElem>> =
        e1.into_iter().chain(e2).filter(|g| !g.is_zero()).collect();
    let kk = v(lay.kappa);
    let km1 = kk.sub(&MultiPoly::constant(n, z.one()));
    let rab = v(lay.s)
        .mul(&kk)
        .mul(&km1)
        .mul(&xresultant(&a, &b))
        .mul(&v(lay.eps))
        .add(&MultiPoly::constant(n, z.one()));
    gens.push(rab);
    Ideal { gens, layout: lay }
}

fn uni_from(values: &[NfElem], start: usize, n: usize, monic: bool) -> UniPoly<NfElem> {
    let z = values[0].zero();
    let mut v: Vec<NfElem> = values[start..start + n].to_vec();
    if monic {
        v.push(z.one());
    }
    UniPoly::new(v, &z)
}

/// (κ, F, G) from a solution of the ideal.
pub fn morphism_from_solution(
    spec: &PartitionSpec,
    lay: &VarLayout,
    roots: &[NfElem],
    lc: &NfElem,
    sol: &SolutionPoint,
) -> Result<EllipticMorphism> {
    let field = &sol.field;
    let vals = &sol.values;
    let z = field.zero();
    let roots: Vec<NfElem> = roots
        .iter()
        .map(|r| field.embed(r))
        .collect::<Result<_>>()?;
    let lc = field.embed(lc)?;
    let a = uni_from(vals, lay.a, spec.d1, true);
    let b = uni_from(vals, lay.b, spec.d2, true);
    let c = uni_from(vals, lay.c, lay.nc, false);
    let d = uni_from(vals, lay.d, lay.nd, false);
    let s = vals[lay.s].clone();
    let kappa = vals[lay.kappa].clone();
    let p1 = root_product(&roots, &spec.part(0), &z);
    let p2 = root_product(&roots, &spec.part(1), &z);
    let u = a.mul(&a).mul(&p1).scale(&lc.mul(&s).mul(&s));
    let v = b.mul(&b).mul(&p2);
    let f = RationalFunction::new(u, v)?;
    let g = RationalFunction::new(a.mul(&c).mul(&d).scale(&s), b.pow(3).mul(&p2.mul(&p2)))?;
    let mut m = EllipticMorphism::new(kappa, f, g);
    m.spec = Some(spec.clone());
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub solve: SolveOptions,
    /// Stop once this many independent morphisms are known; Some(0) skips the search.
    pub rank_hint: Option<usize>,
    /// Jobs solved concurrently per round.
    pub batch: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            solve: SolveOptions::default(),
            rank_hint: None,
            batch: 64,
        }
    }
}

/// Minimum rank bound over good primes 3 ≤ p ≤ 31, when the curve is over Q.
pub fn default_rank_hint(c: &HyperellipticCurve) -> Option<usize> {
    if c.rational_coeffs().is_err() {
        return None;
    }
    best_rank_bound(c, &odd_primes_up_to(31), DEFAULT_COUNT_BUDGET)
        .ok()
        .flatten()
        .and_then(|b| b.value)
}

/// A maximal list of independent morphisms with deg U, deg V ≤ m, using the
/// default rank hint.
pub fn elliptic_factors(
    c: &HyperellipticCurve,
    m: usize,
    rank_hint: Option<usize>,
) -> Result<Vec<EllipticMorphism>> {
    let opts = SearchOptions {
        rank_hint: rank_hint.or_else(|| default_rank_hint(c)),
        ..Default::default()
    };
    elliptic_factors_with(c, m, &opts)
}

pub fn elliptic_factors_with(
    c: &HyperellipticCurve,
    m: usize,
    opts: &SearchOptions,
) -> Result<Vec<EllipticMorphism>> {
    if m < 1 {
        return Err(Error::Invalid("degree bound must be at least 1".into()));
    }
    let target = opts.rank_hint.unwrap_or(c.genus()).min(c.genus());
    if target == 0 {
        return Ok(vec![]);
    }
    let prefix = fresh_prefix(c.field(), "r");
    let (tower, roots) = splitting_field(c.s(), &prefix, opts.solve.tower_budget)?;
    let lc = tower.field().embed(&c.s().lc())?;
    let jobs = enumerate_partitions(c.degree(), m);
    let mut found: Vec<EllipticMorphism> = vec![];
    let mut first_err: Option<Error> = None;
    // one batch per value of deg U + deg V (split at `opts.batch`), so cheap
    // shapes are ranked together and never wait on an expensive one
    let mut start = 0;
    while start < jobs.len() {
        let level = jobs[start].n1() + jobs[start].n2();
        let end = jobs[start..]
            .iter()
            .position(|s| s.n1() + s.n2() != level)
            .map_or(jobs.len(), |k| start + k)
            .min(start + opts.batch.max(1));
        let batch = &jobs[start..end];
        start = end;
        // each job follows its own tower until it has a solution
        let results: Vec<Result<ChainResult>> = batch
            .par_iter()
            .map(|spec| run_chain(spec, tower.field(), &roots, &lc, opts, true))
            .collect();
        // candidates over the smallest fields and of the simplest shape first
        let mut cands: Vec<((usize, usize, usize), EllipticMorphism, &PartitionSpec)> = vec![];
        let mut redo: Vec<&PartitionSpec> = vec![];
        for (spec, r) in batch.iter().zip(results) {
            let (field, ideal, sols, pending) = match r {
                Ok(v) => v,
                Err(e @ Error::Resource(_)) => {
                    first_err.get_or_insert(e);
                    continue;
                }
                Err(e) => return Err(e),
            };
            if sols.is_empty() {
                continue;
            }
            if pending.is_some() {
                redo.push(spec);
                continue;
            }
            let (r, l) = embed_all(&roots, &lc, &field)?;
            for sol in &sols {
                let mph = morphism_from_solution(spec, &ideal.layout, &r, &l, sol)?;
                cands.push((
                    (
                        field.degree(),
                        mph.f.num().deg().max(0) as usize + mph.f.den().deg().max(0) as usize,
                        terms(&mph),
                    ),
                    mph,
                    spec,
                ));
            }
        }
        cands.sort_by_key(|c| c.0);
        for (_, mph, spec) in cands {
            let mut trial = found.clone();
            trial.push(mph.clone());
            if common_field(&trial).is_none() {
                if !redo.iter().any(|s| std::ptr::eq(*s, spec)) {
                    redo.push(spec);
                }
                continue;
            }
            if independence_rank(&trial)? == trial.len() {
                found.push(mph);
                if found.len() >= target {
                    return Ok(found);
                }
            }
        }
        for spec in redo {
            // redo the job over the field of the morphisms found so far, following
            // its whole tower so conjugate solutions are seen too
            let start = common_field(&found).unwrap_or_else(|| tower.field().clone());
            let (field, ideal, sols, _) = match run_chain(spec, &start, &roots, &lc, opts, false) {
                Ok(v) => v,
                Err(e @ Error::Resource(_)) => {
                    first_err.get_or_insert(e);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let here = embed_all(&roots, &lc, &field)?;
            if absorb(&mut found, spec, &ideal, &here.0, &here.1, &sols, target)? {
                return Ok(found);
            }
        }
    }
    match first_err {
        Some(e) if found.len() < target => Err(e),
        _ => Ok(found),
    }
}

/// Nonzero coefficients of F and G.
fn terms(m: &EllipticMorphism) -> usize {
    [m.f.num(), m.f.den(), m.g.num(), m.g.den()]
        .iter()
        .map(|p| p.coeffs().iter().filter(|c| !c.is_zero()).count())
        .sum()
}

type ChainResult = (
    Arc<NumberField>,
    Ideal,
    Vec<SolutionPoint>,
    Option<Arc<NumberField>>,
);

fn embed_all(
    roots: &[NfElem],
    lc: &NfElem,
    field: &Arc<NumberField>,
) -> Result<(Vec<NfElem>, NfElem)> {
    Ok((
        roots
            .iter()
            .map(|r| field.embed(r))
            .collect::<Result<_>>()?,
        field.embed(lc)?,
    ))
}

/// Solves the job over `field`, then over each pending extension in turn. With
/// `first` it stops at the first level that has solutions.
fn run_chain(
    spec: &PartitionSpec,
    field: &Arc<NumberField>,
    roots: &[NfElem],
    lc: &NfElem,
    opts: &SearchOptions,
    first: bool,
) -> Result<ChainResult> {
    let mut field = field.clone();
    loop {
        let (r, l) = embed_all(roots, lc, &field)?;
        let (ideal, sols, pending) = run_job(spec, &r, &l, opts)?;
        match pending {
            Some(ext) if !(first && !sols.is_empty()) => field = ext,
            pending => return Ok((field, ideal, sols, pending)),
        }
    }
}

type JobResult = (Ideal, Vec<SolutionPoint>, Option<Arc<NumberField>>);

fn run_job(
    spec: &PartitionSpec,
    roots: &[NfElem],
    lc: &NfElem,
    opts: &SearchOptions,
) -> Result<JobResult> {
    let ideal = build_ideal(spec, roots, lc);
    let (sols, pending) = solve_in_field(&ideal.gens, &opts.solve).map_err(|e| match e {
        Error::Resource(msg) => Error::Resource(format!("{msg} (partition {spec})")),
        other => other,
    })?;
    Ok((ideal, sols, pending))
}

/// Adds the independent morphisms among `sols`; true once `target` is reached.
fn absorb(
    found: &mut Vec<EllipticMorphism>,
    spec: &PartitionSpec,
    ideal: &Ideal,
    roots: &[NfElem],
    lc: &NfElem,
    sols: &[SolutionPoint],
    target: usize,
) -> Result<bool> {
    for sol in sols {
        let mph = morphism_from_solution(spec, &ideal.layout, roots, lc, sol)?;
        let mut trial = found.clone();
        trial.push(mph.clone());
        if independence_rank(&trial)? == trial.len() {
            found.push(mph);
            if found.len() >= target {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn fresh_prefix(field: &NumberField, base: &str) -> String {
    let used = field.symbols();
    let mut p = base.to_string();
    while used.iter().any(|s| s.starts_with(&p)) {
        p.push('_');
    }
    p
}

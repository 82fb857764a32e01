//! All solutions of a zero-dimensional system, with the coefficient field
//! extended as needed.

use std::sync::Arc;

use super::groebner::{groebner_with_budget, GroebnerBudget};
use crate::arith::{Field, NfElem, NumberField};
use crate::error::{Error, Result};
use crate::poly::{factor_nf, MonomialOrder, MultiPoly, UniPoly};

/// A common zero of the input system; `values[i]` is the value of variable i.
#[derive(Clone, Debug)]
pub struct SolutionPoint {
    pub field: Arc<NumberField>,
    pub values: Vec<NfElem>,
}

impl SolutionPoint {
    /// Evaluates a polynomial over a subfield at this point.
    pub fn eval(&self, p: &MultiPoly<NfElem>) -> Result<NfElem> {
        let q = p.try_map_coeffs(&self.field)?;
        Ok(q.eval(&self.values))
    }
}

/// Options for [`solve_zero_dim`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Upper bound on the absolute degree of any field built.
    pub tower_budget: usize,
    /// Prefix for generator symbols of new extensions.
    pub symbol_prefix: String,
    pub groebner: GroebnerBudget,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tower_budget: 64,
            symbol_prefix: "g".into(),
            groebner: GroebnerBudget::default(),
        }
    }
}

impl MultiPoly<NfElem> {
    /// Moves coefficients into an extension of their field.
    pub fn try_map_coeffs(&self, field: &Arc<NumberField>) -> Result<MultiPoly<NfElem>> {
        let z = field.zero();
        let mut out = MultiPoly::zero(self.nvars(), &z);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), field.embed(c)?);
        }
        Ok(out)
    }
}

/// Solves the system over the algebraic closure of the coefficient field.
/// Every solution is listed (conjugates included), each over an extension
/// of the input field built only as far as that solution needs.
pub fn solve_zero_dim(
    gens: &[MultiPoly<NfElem>],
    opts: &SolveOptions,
) -> Result<Vec<SolutionPoint>> {
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("empty system".into()));
    };
    let field = first.ctx().field().clone();
    let n = first.nvars();
    let mut state = State {
        opts,
        counter: 0,
        pending: None,
        all: true,
    };
    let mut out = vec![];
    solve_rec(gens, n, &field, &mut state, &mut out)?;
    Ok(out)
}

/// Solutions with every coordinate in the coefficient field, plus the first
/// extension of that field needed by some other solution (if any). Re-solving
/// over the returned extension eventually yields every solution in one field.
pub fn solve_in_field(
    gens: &[MultiPoly<NfElem>],
    opts: &SolveOptions,
) -> Result<(Vec<SolutionPoint>, Option<Arc<NumberField>>)> {
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("empty system".into()));
    };
    let field = first.ctx().field().clone();
    let n = first.nvars();
    let mut state = State {
        opts,
        counter: 0,
        pending: None,
        all: false,
    };
    let mut out = vec![];
    solve_rec(gens, n, &field, &mut state, &mut out)?;
    Ok((out, state.pending))
}

struct State<'a> {
    opts: &'a SolveOptions,
    counter: usize,
    pending: Option<Arc<NumberField>>,
    all: bool,
}

impl State<'_> {
    fn extend(
        &mut self,
        field: &Arc<NumberField>,
        f: &UniPoly<NfElem>,
    ) -> Result<Arc<NumberField>> {
        let new_degree = field.degree() * f.deg() as usize;
        if new_degree > self.opts.tower_budget {
            return Err(Error::Resource(format!(
                "tower-degree budget {} exceeded by minimal polynomial {}",
                self.opts.tower_budget, f
            )));
        }
        self.counter += 1;
        let name = format!(
            "{}{}",
            self.opts.symbol_prefix,
            fresh_index(field, &self.opts.symbol_prefix, self.counter)
        );
        field.adjoin_irreducible(f, &name)
    }

    /// Every root of the irreducible `f`, each in the first field of a chain that contains it.
    fn all_roots(
        &mut self,
        field: &Arc<NumberField>,
        f: &UniPoly<NfElem>,
    ) -> Result<Vec<(Arc<NumberField>, NfElem)>> {
        if f.deg() == 1 {
            return Ok(vec![(field.clone(), f.coeff(0).neg())]);
        }
        let l = self.extend(field, f)?;
        let mut out = vec![];
        for (h, _) in factor_nf(&l.embed_poly(f)?)? {
            out.extend(self.all_roots(&l, &h)?);
        }
        Ok(out)
    }
}

fn solve_rec(
    gens: &[MultiPoly<NfElem>],
    remaining: usize,
    field: &Arc<NumberField>,
    state: &mut State,
    out: &mut Vec<SolutionPoint>,
) -> Result<()> {
    let order = MonomialOrder::Lex;
    let gens: Vec<MultiPoly<NfElem>> = gens
        .iter()
        .map(|g| g.try_map_coeffs(field))
        .collect::<Result<_>>()?;
    if remaining == 0 {
        if gens.iter().all(|g| g.is_zero()) {
            out.push(SolutionPoint {
                field: field.clone(),
                values: vec![],
            });
        }
        return Ok(());
    }
    let gb = groebner_with_budget(&gens, order, state.opts.groebner)?;
    if gb.is_empty() {
        return Err(Error::Resource(
            "system is positive-dimensional (no equations left)".into(),
        ));
    }
    if gb.len() == 1 && gb[0].is_constant() {
        return Ok(());
    }
    if !is_zero_dimensional_in(&gb, remaining, order) {
        return Err(Error::Resource(
            "system is positive-dimensional; decomposition is not supported".into(),
        ));
    }
    let v = remaining - 1;
    let elim = gb
        .iter()
        .filter(|g| g.support_vars().iter().all(|&k| k == v))
        .min_by_key(|g| g.degree_in(v))
        .ok_or_else(|| Error::Resource("no eliminant found".into()))?;
    let u = elim.to_univariate(v).expect("univariate");
    let sq = u.squarefree_part()?;
    for (f, _) in factor_nf(&sq)? {
        let roots = if f.deg() == 1 {
            vec![(field.clone(), f.coeff(0).neg())]
        } else if state.all {
            state.all_roots(field, &f)?
        } else {
            if state.pending.is_none() {
                let l = state.extend(field, &f)?;
                state.pending = Some(l);
            }
            continue;
        };
        for (ext, root) in roots {
            let sub: Vec<MultiPoly<NfElem>> = gb
                .iter()
                .map(|g| g.try_map_coeffs(&ext).map(|h| h.substitute(v, &root)))
                .collect::<Result<_>>()?;
            let mut partial = vec![];
            solve_rec(&sub, v, &ext, state, &mut partial)?;
            for mut p in partial {
                let r = p.field.embed(&root)?;
                p.values.push(r);
                out.push(p);
            }
        }
    }
    Ok(())
}

/// Picks a generator index not already used as a symbol in the tower.
fn fresh_index(field: &NumberField, prefix: &str, mut k: usize) -> usize {
    let used = field.symbols();
    while used.contains(&format!("{prefix}{k}")) {
        k += 1;
    }
    k
}

fn is_zero_dimensional_in(gb: &[MultiPoly<NfElem>], live: usize, order: MonomialOrder) -> bool {
    if gb
        .iter()
        .any(|g| g.support_vars().iter().any(|&k| k >= live))
    {
        return false;
    }
    let lms: Vec<Vec<u32>> = gb
        .iter()
        .filter_map(|g| g.leading_term(order).map(|(m, _)| m.clone()))
        .collect();
    (0..live).all(|v| {
        lms.iter()
            .any(|m| m[v] > 0 && m.iter().enumerate().all(|(k, &e)| k == v || e == 0))
    })
}

/// Univariate view helper used by callers that post-process eliminants.
pub fn eliminant(gb: &[MultiPoly<NfElem>], v: usize) -> Option<UniPoly<NfElem>> {
    gb.iter()
        .filter(|g| g.support_vars().iter().all(|&k| k == v))
        .find_map(|g| g.to_univariate(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn vars(k: &Arc<NumberField>, n: usize) -> Vec<MultiPoly<NfElem>> {
        (0..n).map(|i| MultiPoly::var(n, i, &k.zero())).collect()
    }

    fn c(k: &Arc<NumberField>, v: i64, n: usize) -> MultiPoly<NfElem> {
        MultiPoly::constant(n, k.from_int(v))
    }

    fn check(gens: &[MultiPoly<NfElem>], sols: &[SolutionPoint]) {
        for s in sols {
            for g in gens {
                assert!(s.eval(g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn square_root_of_two() {
        let q = NumberField::rationals();
        let v = vars(&q, 1);
        let gens = vec![v[0].pow(2).sub(&c(&q, 2, 1))];
        let sols = solve_zero_dim(&gens, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        assert_eq!(sols[0].field.degree(), 2);
        check(&gens, &sols);
    }

    #[test]
    fn rational_points() {
        let q = NumberField::rationals();
        let v = vars(&q, 2);
        let gens = vec![v[0].pow(2).sub(&c(&q, 1, 2)), v[1].sub(&v[0])];
        let sols = solve_zero_dim(&gens, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(sols.iter().all(|s| s.values[0] == s.values[1]));
        check(&gens, &sols);
    }

    #[test]
    fn circle_meets_diagonal() {
        let q = NumberField::rationals();
        let v = vars(&q, 2);
        let gens = vec![
            v[0].pow(2).add(&v[1].pow(2)).sub(&c(&q, 1, 2)),
            v[1].sub(&v[0]),
        ];
        let sols = solve_zero_dim(&gens, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            let x = &s.values[0];
            assert_eq!(
                x.mul(x),
                s.field.from_rational(&Rational::new(1, 2).unwrap())
            );
        }
        check(&gens, &sols);
    }

    #[test]
    fn positive_dimensional_rejected() {
        let q = NumberField::rationals();
        let v = vars(&q, 2);
        let gens = vec![v[0].mul(&v[1])];
        assert!(matches!(
            solve_zero_dim(&gens, &SolveOptions::default()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn triangular_with_nested_extension() {
        // x^2 = y, y^2 = 2
        let q = NumberField::rationals();
        let v = vars(&q, 2);
        let gens = vec![v[0].pow(2).sub(&v[1]), v[1].pow(2).sub(&c(&q, 2, 2))];
        let sols = solve_zero_dim(&gens, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 4);
        check(&gens, &sols);
        let (rational, ext) = solve_in_field(&gens, &SolveOptions::default()).unwrap();
        assert!(rational.is_empty());
        assert_eq!(ext.unwrap().degree(), 2);
    }
}

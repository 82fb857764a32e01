//! The full reduction: Hermite step, one divisor reduction per simple pole,
//! first-kind integrals for the holomorphic rest, then the derivative check.

use rayon::prelude::*;

use super::curvefn::HyperellipticIntegrand;
use super::divisor::{first_kind_coefficients, reduce_divisor};
use super::expr::{differentiate, EllipticExpression, EllipticTerm, RootSum, TermGroup};
use super::hermite::hermite_reduce;
use crate::arith::Field;
use crate::error::{Error, Result, Stage};
use crate::morphisms::EllipticMorphism;
use crate::poly::partial_fractions;
use crate::solve::SolveOptions;

#[derive(Clone, Debug, Default)]
pub struct IntegrateOptions {
    pub solve: SolveOptions,
}

pub fn hyperelliptic_to_elliptic(
    i: &HyperellipticIntegrand,
    l: &[EllipticMorphism],
) -> Result<EllipticExpression> {
    hyperelliptic_to_elliptic_with(i, l, &IntegrateOptions::default())
}

/// An antiderivative in terms of the morphisms in `l`, checked by differentiation.
pub fn hyperelliptic_to_elliptic_with(
    i: &HyperellipticIntegrand,
    l: &[EllipticMorphism],
    opts: &IntegrateOptions,
) -> Result<EllipticExpression> {
    let (mut out, j) = hermite_reduce(i, l)?;
    let base = out.base.clone();
    let pf = partial_fractions(&j.f)?;

    if !pf.polynomial_part.is_zero() {
        let ms: Vec<EllipticMorphism> = l.iter().map(|m| m.embed(&base)).collect::<Result<_>>()?;
        let a = first_kind_coefficients(&ms, &pf.polynomial_part)?.ok_or_else(|| {
            Error::NotDecomposable {
                stage: Stage::DivisorReduction,
                reason: "holomorphic part is not spanned by the first-kind differentials".into(),
            }
        })?;
        let terms = a
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(morphism, coeff)| EllipticTerm::FirstKind { coeff, morphism })
            .collect();
        out.groups.push(TermGroup {
            field: base.clone(),
            root: None,
            terms,
        });
    }

    let groups: Vec<TermGroup> = pf
        .terms
        .par_iter()
        .map(|term| {
            let alpha = term.alpha();
            let t = term.value_at_root();
            let red = reduce_divisor(&i.curve, l, &alpha, &t, &opts.solve)?;
            let root = (term.p.deg() >= 2).then(|| RootSum {
                poly: term.p.clone(),
                alpha: alpha.clone(),
            });
            Ok(TermGroup {
                field: red.field,
                root,
                terms: red.terms,
            })
        })
        .collect::<Result<_>>()?;
    out.groups.extend(groups);
    out.prune();

    let d = differentiate(&out)?;
    let expect = HyperellipticIntegrand::from_rational(
        i.f.try_map(&base.zero(), |c| base.embed(c))?,
        i.curve.clone(),
    )?
    .to_curve_function()?;
    if d != expect {
        return Err(Error::Invalid(
            "derivative of the result does not match the integrand".into(),
        ));
    }
    Ok(out)
}

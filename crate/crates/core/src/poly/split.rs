use super::{factor_nf, UniPoly};
use crate::arith::{Field, NfElem, NumberFieldTower};
use crate::error::{Error, Result};

/// Smallest extension of the coefficient tower over which `s` splits, with its roots.
///
/// New generators are named `{prefix}1`, `{prefix}2`, ...; `budget` caps the
/// absolute degree of the resulting field.
pub fn splitting_field(
    s: &UniPoly<NfElem>,
    prefix: &str,
    budget: usize,
) -> Result<(NumberFieldTower, Vec<NfElem>)> {
    if s.deg() < 1 {
        return Err(Error::Invalid("splitting field of a constant".into()));
    }
    let mut tower = NumberFieldTower::from_field(s.ctx().field().clone());
    let mut count = 0;
    loop {
        let f = tower.field().clone();
        let sf = f.embed_poly(s)?;
        let factors = factor_nf(&sf)?;
        if let Some((g, _)) = factors.iter().find(|(g, _)| g.deg() > 1) {
            let new_degree = f.degree() * g.deg() as usize;
            if new_degree > budget {
                return Err(Error::Resource(format!(
                    "splitting field exceeds tower-degree budget {budget} (adjoining a root of {g})"
                )));
            }
            count += 1;
            let field = f.adjoin_irreducible(g, &format!("{prefix}{count}"))?;
            tower = NumberFieldTower::from_field(field);
            continue;
        }
        let mut roots = vec![];
        for (g, m) in factors {
            for _ in 0..m {
                roots.push(g.coeff(0).neg());
            }
        }
        return Ok((tower, roots));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;

    fn product_of_roots(roots: &[NfElem]) -> UniPoly<NfElem> {
        let z = roots[0].zero();
        let mut acc = UniPoly::one(&z);
        for r in roots {
            acc = acc.mul(&UniPoly::linear_root(r));
        }
        acc
    }

    #[test]
    fn cube_root_of_two_needs_degree_six() {
        let q = NumberField::rationals();
        let s = UniPoly::from_ints(&[-2, 0, 0, 1], &q.zero());
        let (tower, roots) = splitting_field(&s, "r", 64).unwrap();
        assert_eq!(tower.degree(), 6);
        assert_eq!(roots.len(), 3);
        let f = tower.field();
        assert_eq!(product_of_roots(&roots), f.embed_poly(&s).unwrap());
    }

    #[test]
    fn cyclotomic_cubic() {
        let q = NumberField::rationals();
        let s = UniPoly::from_ints(&[-1, 0, 0, 1], &q.zero());
        let (tower, roots) = splitting_field(&s, "w", 64).unwrap();
        assert_eq!(tower.degree(), 2);
        assert!(roots.iter().any(|r| r.is_one()));
    }

    #[test]
    fn budget_enforced() {
        let q = NumberField::rationals();
        let s = UniPoly::from_ints(&[-2, 0, 0, 1], &q.zero());
        assert!(matches!(
            splitting_field(&s, "r", 4),
            Err(Error::Resource(_))
        ));
    }
}

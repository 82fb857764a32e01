//! Upper bounds on the number of elliptic factors of a Jacobian from the
//! factorization of Ψ_{p^k} over Q.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::count::{count_reduced, field_modulus, reduce_mod, DEFAULT_COUNT_BUDGET};
use super::curve::HyperellipticCurve;
use super::psi::{psi_from_counts, psi_power, ZetaPsi};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::factor_q;

/// Rank bound at one prime: `value` is None when p has bad reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct RankBound {
    pub p: u64,
    pub value: Option<usize>,
    /// k ↦ (degree-2 factors) + (degree-1 factors)/2 of Ψ_{p^k}.
    pub per_k: BTreeMap<u32, Rational>,
}

impl RankBound {
    pub fn unbounded(p: u64) -> Self {
        RankBound {
            p,
            value: None,
            per_k: BTreeMap::new(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.value.is_some()
    }

    pub fn to_json(&self) -> Value {
        let per_k: serde_json::Map<String, Value> = self
            .per_k
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
            .collect();
        json!({
            "p": self.p,
            "value": match self.value { Some(v) => json!(v), None => json!("UNBOUNDED") },
            "perK": per_k,
        })
    }
}

impl fmt::Display for RankBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("UNBOUNDED"),
        }
    }
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// All k with φ(k) ≤ 2g, found by scanning up to 2·(2g)².
pub fn admissible_exponents(g: usize) -> Vec<u32> {
    let limit = 2 * (2 * g as u64).pow(2);
    (1..=limit.max(2))
        .filter(|&k| totient(k) <= 2 * g as u64)
        .map(|k| k as u32)
        .collect()
}

/// Ψ_p of the curve from N_1..N_g counted over F_p, ..., F_{p^g}.
pub fn zeta_psi(c: &HyperellipticCurve, p: u64, budget: u128) -> Result<ZetaPsi> {
    let r = reduce_mod(c, p)?;
    let g = c.genus();
    let counts = (1..=g)
        .into_par_iter()
        .map(|i| count_reduced(&r, i, budget))
        .collect::<Result<Vec<u64>>>()?;
    let mut psi = psi_from_counts(&counts, p, 1)?;
    psi.modulus_polynomials = (1..=g).map(|i| field_modulus(p, i)).collect();
    Ok(psi)
}

/// Number of degree-2 factors plus half the number of degree-1 factors of Ψ over Q.
pub fn small_factor_count(psi: &ZetaPsi) -> Result<Rational> {
    let mut twice = 0usize;
    for (f, m) in factor_q(&psi.to_poly())? {
        match f.deg() {
            1 => twice += m,
            2 => twice += 2 * m,
            _ => {}
        }
    }
    Rational::new(twice as i64, 2)
}

pub fn rank_bound(c: &HyperellipticCurve, p: u64) -> Result<RankBound> {
    rank_bound_with_budget(c, p, DEFAULT_COUNT_BUDGET)
}

/// UNBOUNDED at bad primes; otherwise the maximum over admissible k of the
/// small-factor count of Ψ_{p^k}.
pub fn rank_bound_with_budget(c: &HyperellipticCurve, p: u64, budget: u128) -> Result<RankBound> {
    let psi = match zeta_psi(c, p, budget) {
        Err(Error::BadReduction(_)) => return Ok(RankBound::unbounded(p)),
        other => other?,
    };
    rank_bound_from_psi(&psi)
}

pub fn rank_bound_from_psi(psi: &ZetaPsi) -> Result<RankBound> {
    let g = psi.genus();
    let ks = admissible_exponents(g);
    let per_k: BTreeMap<u32, Rational> = ks
        .par_iter()
        .map(|&k| Ok((k, small_factor_count(&psi_power(psi, k)?)?)))
        .collect::<Result<_>>()?;
    let mut best = 0usize;
    for (k, v) in &per_k {
        if !v.is_integer() {
            return Err(Error::NonIntegral(format!("factor count {v} at k = {k}")));
        }
        let n: usize = v.numer().try_into().expect("small count");
        best = best.max(n);
    }
    debug_assert!(best <= g);
    Ok(RankBound {
        p: psi.p,
        value: Some(best),
        per_k,
    })
}

/// The smallest bound over the given primes, with the prime that attains it.
pub fn best_rank_bound(
    c: &HyperellipticCurve,
    primes: &[u64],
    budget: u128,
) -> Result<Option<RankBound>> {
    let mut best: Option<RankBound> = None;
    for &p in primes {
        let b = rank_bound_with_budget(c, p, budget)?;
        if let Some(v) = b.value {
            if best.as_ref().and_then(|x| x.value).is_none_or(|w| v < w) {
                best = Some(b);
            }
        }
    }
    Ok(best)
}

/// Primes 3 ≤ p ≤ limit.
pub fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    (3..=limit)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;
    use crate::zeta::normalize_curve;
    use crate::{NfElem, UniPoly};

    fn x_n_minus_1(n: usize) -> HyperellipticCurve {
        let q = NumberField::rationals();
        let mut v = vec![0i64; n + 1];
        v[0] = -1;
        v[n] = 1;
        normalize_curve(&UniPoly::<NfElem>::from_ints(&v, &q.zero())).unwrap()
    }

    #[test]
    fn totients() {
        let v: Vec<u64> = (1..=12).map(totient).collect();
        assert_eq!(v, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        assert_eq!(admissible_exponents(1), vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn quintic_at_eleven() {
        assert_eq!(rank_bound(&x_n_minus_1(5), 11).unwrap().value, Some(0));
    }

    #[test]
    fn bad_prime_is_unbounded() {
        assert_eq!(rank_bound(&x_n_minus_1(5), 5).unwrap().value, None);
    }
}

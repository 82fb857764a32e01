//! The numerator Ψ_{q}(T) of the zeta function of a curve over F_q.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::numfield::interpolate;
use crate::arith::{Field, Rational};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

type QPoly = UniPoly<Rational>;

/// Ψ_{p^k}(T) = a_0 + a_1 T + ... + a_{2g} T^{2g}, with the data it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaPsi {
    pub p: u64,
    pub k: u32,
    pub coefficients: Vec<BigInt>,
    /// N_1..N_g over F_{p^k}, F_{p^{2k}}, ... when counted directly; empty when derived.
    pub counts: Vec<u64>,
    /// Moduli of the extension fields used for counting (low to high).
    pub modulus_polynomials: Vec<Vec<u64>>,
}

impl ZetaPsi {
    pub fn genus(&self) -> usize {
        (self.coefficients.len() - 1) / 2
    }

    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.k)
    }

    pub fn to_poly(&self) -> QPoly {
        UniPoly::new(
            self.coefficients
                .iter()
                .map(|c| Rational::from(c.clone()))
                .collect(),
            &Rational::zero_q(),
        )
    }

    /// a_{2g-i} = q^{g-i} a_i for all i.
    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus();
        let q = self.q();
        (0..=g)
            .all(|i| self.coefficients[2 * g - i] == &self.coefficients[i] * q.pow((g - i) as u32))
    }

    /// Every complex root has |r|² = 1/q (equivalently the reciprocal roots
    /// have modulus √q), to relative tolerance `tol`.
    pub fn roots_have_expected_modulus(&self, tol: f64) -> bool {
        // substitute T = s/√q so the roots move to the unit circle
        let g2 = self.coefficients.len() - 1;
        let p = self.p as f64;
        let mut b = vec![];
        for (i, a) in self.coefficients.iter().enumerate() {
            let e = self.k as usize * i;
            let scaled = Rational::new(a.clone(), BigInt::from(self.p).pow((e / 2) as u32))
                .expect("nonzero");
            let mut v = scaled.to_f64();
            if e % 2 == 1 {
                v /= p.sqrt();
            }
            b.push(v);
        }
        match polynomial_roots(&b) {
            Some(roots) => roots.len() == g2 && roots.iter().all(|r| (r.norm() - 1.0).abs() < tol),
            None => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "k": self.k,
            "coefficients": self.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "counts": self.counts,
            "modulusPolynomials": self.modulus_polynomials,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("zeta JSON: missing or invalid '{what}'"));
        let p = v["p"].as_u64().ok_or_else(|| bad("p"))?;
        let k = v["k"].as_u64().ok_or_else(|| bad("k"))? as u32;
        let coefficients = v["coefficients"]
            .as_array()
            .ok_or_else(|| bad("coefficients"))?
            .iter()
            .map(|c| match c {
                Value::String(s) => s.parse::<BigInt>().map_err(|_| bad("coefficients")),
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad("coefficients")),
                _ => Err(bad("coefficients")),
            })
            .collect::<Result<Vec<_>>>()?;
        let counts = v["counts"]
            .as_array()
            .ok_or_else(|| bad("counts"))?
            .iter()
            .map(|c| c.as_u64().ok_or_else(|| bad("counts")))
            .collect::<Result<Vec<_>>>()?;
        let modulus_polynomials = v["modulusPolynomials"]
            .as_array()
            .ok_or_else(|| bad("modulusPolynomials"))?
            .iter()
            .map(|m| {
                m.as_array()
                    .ok_or_else(|| bad("modulusPolynomials"))?
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(|| bad("modulusPolynomials")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if coefficients.len() % 2 == 0 {
            return Err(bad("coefficients"));
        }
        Ok(ZetaPsi {
            p,
            k,
            coefficients,
            counts,
            modulus_polynomials,
        })
    }
}

/// Ψ over F_q with q = p^k from the counts N_1..N_g over F_{q^i}:
/// (1−T)(1−qT)·exp(Σ N_i T^i / i) truncated at degree g, then completed by
/// the functional equation.
pub fn psi_from_counts(counts: &[u64], p: u64, k: u32) -> Result<ZetaPsi> {
    let g = counts.len();
    if g == 0 {
        return Err(Error::Invalid(
            "at least one point count is required".into(),
        ));
    }
    let q = BigInt::from(p).pow(k);
    // n e_n = Σ_{i=1}^n N_i e_{n-i}
    let mut e = vec![Rational::one_q()];
    for n in 1..=g {
        let mut s = Rational::zero_q();
        for i in 1..=n {
            s = s.add(&Rational::from(BigInt::from(counts[i - 1])).mul(&e[n - i]));
        }
        e.push(s.mul(&Rational::new(1, n as i64)?));
    }
    let qr = Rational::from(q.clone());
    let factor = [Rational::one_q(), Rational::one_q().add(&qr).neg(), qr];
    let mut a = vec![];
    for n in 0..=g {
        let mut s = Rational::zero_q();
        for (j, f) in factor.iter().enumerate() {
            if j <= n {
                s = s.add(&f.mul(&e[n - j]));
            }
        }
        if !s.is_integer() {
            return Err(Error::NonIntegral(format!(
                "coefficient a_{n} = {s} of the zeta numerator"
            )));
        }
        a.push(s.numer().clone());
    }
    for i in (0..g).rev() {
        a.push(&a[i] * q.pow((g - i) as u32));
    }
    Ok(ZetaPsi {
        p,
        k,
        coefficients: a,
        counts: counts.to_vec(),
        modulus_polynomials: vec![],
    })
}

/// Ψ_{p^{jk}} from Ψ_{p^k}: the polynomial whose roots are the j-th powers of
/// the roots of Ψ, computed as Res_z(Ψ(z), T − z^j) and scaled to constant term 1.
pub fn psi_power(psi: &ZetaPsi, j: u32) -> Result<ZetaPsi> {
    if j == 0 {
        return Err(Error::Invalid("power must be positive".into()));
    }
    if j == 1 {
        return Ok(psi.clone());
    }
    let a = psi.to_poly();
    let d = a.deg() as i64;
    let zq = Rational::zero_q();
    let xs: Vec<Rational> = (0..=d).map(Rational::from).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|t| {
            let b = UniPoly::new(vec![t.clone()], &zq)
                .sub(&UniPoly::monomial(Rational::one_q(), j as usize));
            a.resultant(&b)
        })
        .collect();
    let r = interpolate(&xs, &ys);
    let c0 = r.coeff(0);
    if c0.is_zero() {
        return Err(Error::Invalid("zeta numerator has a zero root".into()));
    }
    let r = r.scale(&c0.inv()?);
    let mut coefficients = vec![];
    for c in r.coeffs() {
        if !c.is_integer() {
            return Err(Error::NonIntegral(format!(
                "coefficient {c} of the powered zeta numerator"
            )));
        }
        coefficients.push(c.numer().clone());
    }
    coefficients.resize(a.coeffs().len(), BigInt::zero());
    Ok(ZetaPsi {
        p: psi.p,
        k: psi.k * j,
        coefficients,
        counts: vec![],
        modulus_polynomials: vec![],
    })
}

/// Expands log of Ψ/((1−T)(1−qT)) and returns the implied N_1..N_n.
pub fn counts_from_psi(psi: &ZetaPsi, n: usize) -> Result<Vec<BigInt>> {
    // N_m = q^m + 1 − Σ α_i^m where Ψ(T) = Π(1 − α_i T); power sums by Newton
    let c = &psi.coefficients;
    let q = psi.q();
    let mut s: Vec<BigInt> = vec![BigInt::zero()];
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..m {
            let a = c.get(m - i).cloned().unwrap_or_default();
            acc += &a * &s[i];
        }
        let am = c.get(m).cloned().unwrap_or_default();
        s.push(-(acc + BigInt::from(m) * am));
    }
    Ok((1..=n).map(|m| q.pow(m as u32) + 1 - &s[m]).collect())
}

/// Roots of Σ b_i z^i by Durand–Kerner iteration; None when it does not converge.
fn polynomial_roots(b: &[f64]) -> Option<Vec<Complex64>> {
    let n = b.len() - 1;
    let lc = *b.last()?;
    if lc == 0.0 || n == 0 {
        return None;
    }
    let monic: Vec<f64> = b.iter().map(|c| c / lc).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            return Some(roots);
        }
    }
    // clustered (repeated) roots converge slowly; accept if residuals are small
    let ok = roots.iter().all(|&r| eval(r).norm() < 1e-9);
    ok.then_some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn elliptic_from_one_count() {
        let psi = psi_from_counts(&[8], 5, 1).unwrap();
        assert_eq!(psi.coefficients, ints(&[1, 2, 5]));
        let flat = psi_from_counts(&[6], 5, 1).unwrap();
        assert_eq!(flat.coefficients, ints(&[1, 0, 5]));
        assert!(psi.satisfies_functional_equation());
        assert!(psi.roots_have_expected_modulus(1e-6));
    }

    #[test]
    fn square_of_roots() {
        let psi = psi_from_counts(&[8], 5, 1).unwrap();
        let sq = psi_power(&psi, 2).unwrap();
        assert_eq!(sq.coefficients, ints(&[1, 6, 25]));
        assert_eq!(sq.k, 2);
        assert_eq!(psi_power(&psi, 1).unwrap(), psi);
    }

    #[test]
    fn counts_round_trip() {
        let psi = psi_from_counts(&[8], 5, 1).unwrap();
        let n = counts_from_psi(&psi, 3).unwrap();
        assert_eq!(n[0], BigInt::from(8));
        // over F_25 the count is 25 + 1 − (α² + ᾱ²) with α + ᾱ = −2, αᾱ = 5
        assert_eq!(n[1], BigInt::from(25 + 1 - (4 - 10)));
    }

    #[test]
    fn non_integral_counts_are_rejected() {
        // N_1 = 12, N_2 = 7 over F_3 cannot come from a genus 2 curve
        assert!(matches!(
            psi_from_counts(&[12, 7], 3, 1),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let psi = psi_from_counts(&[8], 5, 1).unwrap();
        let back = ZetaPsi::from_json(&psi.to_json()).unwrap();
        assert_eq!(back, psi);
    }
}

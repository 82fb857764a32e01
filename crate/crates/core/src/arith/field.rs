use std::fmt::{Debug, Display};

use crate::error::{Error, Result};

/// A field element that carries enough context to build other elements of
/// the same field (zero, one, integers).
///
/// All four coefficient domains implement this: `Rational`, `Fp`, `Fq` and
/// `NfElem`. Binary operations panic on mixed domains; the `try_*` variants
/// report `Error::DomainMismatch` instead.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn from_int(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// 0 for characteristic-zero fields.
    fn characteristic(&self) -> u64;
    fn same_domain(&self, other: &Self) -> bool;

    fn is_one(&self) -> bool {
        self.sub(&self.one()).is_zero()
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.add(rhs))
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.sub(rhs))
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.mul(rhs))
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        self.div(rhs)
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.same_domain(rhs) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }
}

/// Fields containing Q.
pub trait CharZero: Field {
    fn from_rational(&self, r: &super::Rational) -> Self;
}

/// Finite fields F_q.
pub trait FiniteField: Field {
    /// Field size q.
    fn order(&self) -> u128;
    /// Element indexed by `0 <= i < q`; enumeration order is fixed.
    fn element(&self, i: u128) -> Self;
    /// Inverse of the Frobenius x -> x^p.
    fn pth_root(&self) -> Self;
}

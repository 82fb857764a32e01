use std::fmt;

use super::field::{Field, FiniteField};
use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo p via Fermat; `a` must be nonzero mod prime p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Miller-Rabin with the fixed bases that are deterministic below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    /// `p` must be prime; checked with a Miller-Rabin screen.
    pub fn new(value: u64, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if p > 1 << 61 {
            return Err(Error::Invalid(format!("prime {p} exceeds 2^61")));
        }
        Ok(Fp {
            value: value % p,
            p,
        })
    }

    /// Skips the primality screen; for hot loops with a checked modulus.
    #[inline]
    pub fn new_unchecked(value: u64, p: u64) -> Self {
        Fp {
            value: value % p,
            p,
        }
    }

    pub fn from_i64(n: i64, p: u64) -> Self {
        let v = n.rem_euclid(p as i64) as u64;
        Fp { value: v, p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Legendre symbol as -1, 0, 1.
    pub fn legendre(&self) -> i32 {
        if self.value == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if pow_mod(self.value, (self.p - 1) / 2, self.p) == 1 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Field for Fp {
    fn zero(&self) -> Self {
        Fp {
            value: 0,
            p: self.p,
        }
    }
    fn one(&self) -> Self {
        Fp {
            value: 1 % self.p,
            p: self.p,
        }
    }
    fn from_int(&self, n: i64) -> Self {
        Fp::from_i64(n, self.p)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        Fp {
            value: v,
            p: self.p,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            value: mul_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.p - self.value
            },
            p: self.p,
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Fp {
            value: inv_mod(self.value, self.p),
            p: self.p,
        })
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn same_domain(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl FiniteField for Fp {
    fn order(&self) -> u128 {
        self.p as u128
    }
    fn element(&self, i: u128) -> Self {
        Fp {
            value: (i % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn pth_root(&self) -> Self {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two_mod_five() {
        let two = Fp::new(2, 5).unwrap();
        assert_eq!(two.inv().unwrap().value(), 3);
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = Fp::new(1, 5).unwrap();
        let b = Fp::new(1, 7).unwrap();
        assert_eq!(a.try_add(&b), Err(Error::DomainMismatch));
    }

    #[test]
    fn primality_screen() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3215031751));
        assert!(Fp::new(1, 9).is_err());
    }

    #[test]
    fn legendre_symbols() {
        let sq: Vec<i32> = (0..7).map(|v| Fp::new(v, 7).unwrap().legendre()).collect();
        assert_eq!(sq, vec![0, 1, 1, -1, 1, -1, -1]);
    }
}

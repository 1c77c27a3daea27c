//! Exact ground fields.
//!
//! Computations are parameterized by a field *context* rather than by a
//! scalar type alone, because the prime field's modulus is only known at
//! run time. Every arithmetic operation goes through the context.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rationals,
    Prime(u32),
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A field context. Elements are plain values; all arithmetic is exact.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero: callers only invert pivots.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator vanishes mod p.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// The prime field of order `p`, `p < 2^31`, with word-sized arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }

    fn reduce_bigint(&self, v: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        let mut r = v % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u32().expect("residue fits in u32")
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p as u64 - 2)
    }
    fn from_i64(&self, v: i64) -> u32 {
        let p = self.p as i64;
        (((v % p) + p) % p) as u32
    }
    fn from_rational(&self, q: &BigRational) -> Result<u32> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return Err(Error::InvalidField(format!(
                "denominator of {q} vanishes modulo {}",
                self.p
            )));
        }
        let num = self.reduce_bigint(q.numer());
        Ok(self.mul(&num, &self.inv(&den)))
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// Deterministic trial division; moduli are below 2^31 so this is cheap.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Shorthand for building rationals in tables and tests.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new((1 << 31) + 11).is_err());
    }

    #[test]
    fn rational_images_mod_p() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_rational(&q(1, 2)).unwrap(), 4);
        assert_eq!(f.from_rational(&q(-3, 1)).unwrap(), 4);
        assert!(f.from_rational(&q(1, 14)).is_err());
    }

    proptest! {
        #[test]
        fn fp_arithmetic_is_exact(a in 0u32..32003, b in 1u32..32003) {
            let f = PrimeField::new(32003).unwrap();
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &f.inv(&b)), a);
        }

        #[test]
        fn rational_arithmetic_is_exact(an in -50i64..50, ad in 1i64..20, bn in 1i64..50, bd in 1i64..20) {
            let f = Rationals;
            let (a, b) = (q(an, ad), q(bn, bd));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &f.inv(&b)), a);
        }
    }
}

//! Coefficient domains.
//!
//! The minimal-polynomial recursion never divides, so it runs over any
//! commutative integral domain. Two instances are provided: the prime field
//! `F_p` and the integers. Only the field exposes multiplicative inverses.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative integral domain with explicit element operations.
///
/// Elements do not carry their domain; every operation goes through the
/// domain value so that `F_p` can be chosen at runtime.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    /// `p` for `F_p`, 0 for the integers.
    fn characteristic(&self) -> u64;
    fn is_field(&self) -> bool;
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. `None` for zero, and for every non-unit of a
    /// domain that is not a field.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Image of an integer under the canonical map `Z -> D`.
    fn from_i64(&self, v: i64) -> Self::Elem;

    /// Canonical text form of an element (`[0, p)` for `F_p`).
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Strict parse: values outside the canonical range are rejected.
    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The prime field `F_p`, `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// All field elements `0, 1, ..., p-1`.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl Ring for Fp {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn is_field(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
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

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // a^(p-2) by Fermat
        let m = self.p as u64;
        let mut base = *a as u64 % m;
        let mut exp = m - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(acc as u32)
    }

    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }

    fn format_elem(&self, a: &u32) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<u32> {
        let t = text.trim();
        let v: u64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("'{t}' is not a non-negative integer")))?;
        if v >= self.p as u64 {
            return Err(Error::Range {
                value: t.to_string(),
                p: self.p,
            });
        }
        Ok(v as u32)
    }
}

/// The integers, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn characteristic(&self) -> u64 {
        0
    }

    fn is_field(&self) -> bool {
        false
    }

    fn name(&self) -> String {
        "Z".to_string()
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        // only the units ±1
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }

    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<BigInt> {
        let t = text.trim();
        t.parse()
            .map_err(|_| Error::Parse(format!("'{t}' is not an integer")))
    }
}

impl Integers {
    /// Reduces an integer into `F_p`.
    pub fn reduce_into(&self, a: &BigInt, field: &Fp) -> u32 {
        let m = BigInt::from(field.modulus());
        let r = ((a % &m) + &m) % &m;
        r.to_u32().expect("residue fits in u32")
    }
}

/// Deterministic trial division; `n < 2^31` keeps this cheap.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
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

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_primes() {
        assert_eq!(Fp::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Fp::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Fp::new(0), Err(Error::NotPrime(0)));
        assert!(Fp::new(1 << 31).is_err());
        assert!(Fp::new(2_147_483_647).is_ok());
    }

    #[test]
    fn negation_mod_three() {
        let f = Fp::new(3).unwrap();
        assert_eq!(f.neg(&1), 2);
        assert_eq!(f.neg(&0), 0);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for p in [2u64, 3, 5, 7, 13, 101] {
            let f = Fp::new(p).unwrap();
            assert_eq!(f.inv(&0), None);
            for a in 1..f.modulus() {
                let b = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &b), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn integer_units_only() {
        let z = Integers;
        assert_eq!(z.inv(&BigInt::from(-1)), Some(BigInt::from(-1)));
        assert_eq!(z.inv(&BigInt::from(2)), None);
        assert_eq!(z.reduce_into(&BigInt::from(-1), &Fp::new(5).unwrap()), 4);
    }

    #[test]
    fn strict_parse() {
        let f = Fp::new(2).unwrap();
        assert_eq!(f.parse_elem("1"), Ok(1));
        assert!(matches!(f.parse_elem("2"), Err(Error::Range { .. })));
        assert!(matches!(f.parse_elem("-1"), Err(Error::Parse(_))));
        assert!(matches!(f.parse_elem("a"), Err(Error::Parse(_))));
    }

    fn check_axioms<R: Ring>(r: &R, a: R::Elem, b: R::Elem, c: R::Elem) {
        assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
        assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        assert_eq!(r.add(&a, &b), r.add(&b, &a));
        assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        assert_eq!(
            r.mul(&a, &r.add(&b, &c)),
            r.add(&r.mul(&a, &b), &r.mul(&a, &c))
        );
        assert_eq!(r.add(&a, &r.zero()), a);
        assert_eq!(r.mul(&a, &r.one()), a);
        assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
        assert_eq!(r.sub(&a, &b), r.add(&a, &r.neg(&b)));
    }

    proptest! {
        #[test]
        fn field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 65_521, 2_147_483_647]),
                        a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let f = Fp::new(p).unwrap();
            check_axioms(&f, f.reduce(a), f.reduce(b), f.reduce(c));
        }

        #[test]
        fn integer_axioms(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let z = Integers;
            check_axioms(&z, z.from_i64(a), z.from_i64(b), z.from_i64(c));
        }
    }
}

//! Packed-bit polynomials over F_2.
//!
//! Bit `i` of the word vector is the coefficient of `x^i`. Addition is XOR
//! and multiplication is word-parallel shift-and-XOR.

use std::fmt;

use super::poly::Poly;
use super::ring::{Fp, Ring};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    // no trailing zero words
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut p = Gf2Poly::zero();
        p.set_bit(k, true);
        p
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut p = Gf2Poly {
            words: vec![0; bits.len().div_ceil(64)],
        };
        for (i, &b) in bits.iter().enumerate() {
            if b {
                p.words[i / 64] |= 1 << (i % 64);
            }
        }
        p.trim();
        p
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Gf2Poly { words };
        p.trim();
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_bit(&mut self, i: usize, value: bool) {
        if i / 64 >= self.words.len() {
            if !value {
                return;
            }
            self.words.resize(i / 64 + 1, 0);
        }
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
            self.trim();
        }
    }

    /// `self ^= other * x^shift`
    pub fn xor_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        if bs == 0 {
            for (i, w) in other.words.iter().enumerate() {
                self.words[i + ws] ^= w;
            }
        } else {
            for (i, w) in other.words.iter().enumerate() {
                self.words[i + ws] ^= w << bs;
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.trim();
    }

    pub fn shift(&self, k: usize) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        out.xor_shifted(self, k);
        out
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut out = self.clone();
        out.xor_shifted(other, 0);
        out
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let (small, big) = if self.words.len() <= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Gf2Poly {
            words: vec![0; small.words.len() + big.words.len() + 1],
        };
        for (wi, &w) in small.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let shift = wi * 64 + b;
                let ws = shift / 64;
                let bs = shift % 64;
                for (i, &v) in big.words.iter().enumerate() {
                    out.words[i + ws] ^= v << bs;
                    if bs != 0 {
                        out.words[i + ws + 1] ^= v >> (64 - bs);
                    }
                }
            }
        }
        out.trim();
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> (Gf2Poly, Gf2Poly) {
        let dd = divisor.deg().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Gf2Poly::zero();
        while let Some(rd) = rem.deg() {
            if rd < dd {
                break;
            }
            quot.set_bit(rd - dd, true);
            rem.xor_shifted(divisor, rd - dd);
        }
        (quot, rem)
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut u, mut v) = (self.clone(), other.clone());
        while !v.is_zero() {
            let (_, r) = u.div_rem(&v);
            u = v;
            v = r;
        }
        u
    }

    pub fn to_poly(&self) -> Poly<Fp> {
        let f2 = Fp::new(2).expect("2 is prime");
        let n = self.deg().map_or(0, |d| d + 1);
        Poly::new(f2, (0..n).map(|i| self.bit(i) as u32).collect())
    }

    /// Converts a polynomial over any characteristic-2 field element
    /// encoding (0 / nonzero) into packed form.
    pub fn from_poly<R: Ring>(p: &Poly<R>) -> Gf2Poly {
        let r = p.ring();
        let bits: Vec<bool> = p.coeffs().iter().map(|c| !r.is_zero(c)).collect();
        Gf2Poly::from_bits(&bits)
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(), f)
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

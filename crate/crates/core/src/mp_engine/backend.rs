//! Polynomial representations the engine can run on.
//!
//! The recursion needs only a handful of primitives: scalar ring
//! operations, the discrepancy of the current minimal polynomial against
//! the terms consumed so far, and the two-term update `a x^i p - b x^k q`.

use std::fmt;

use crate::coeff_poly::{Gf2Poly, Poly, Ring};

pub trait Backend: Clone + fmt::Debug + Send + Sync {
    type Scalar: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Poly: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Terms: Clone + fmt::Debug + Send + Sync;

    fn is_field(&self) -> bool;
    fn zero(&self) -> Self::Scalar;
    fn one(&self) -> Self::Scalar;
    fn is_zero(&self, a: &Self::Scalar) -> bool;
    fn neg(&self, a: &Self::Scalar) -> Self::Scalar;
    fn mul(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    fn inv(&self, a: &Self::Scalar) -> Option<Self::Scalar>;

    fn constant(&self, c: &Self::Scalar) -> Self::Poly;
    fn degree(&self, p: &Self::Poly) -> Option<usize>;
    fn scale(&self, p: &Self::Poly, c: &Self::Scalar) -> Self::Poly;
    fn leading(&self, p: &Self::Poly) -> Option<Self::Scalar>;

    /// `a * x^i * p - b * x^k * q`
    fn combine(
        &self,
        a: &Self::Scalar,
        i: usize,
        p: &Self::Poly,
        b: &Self::Scalar,
        k: usize,
        q: &Self::Poly,
    ) -> Self::Poly;

    fn new_terms(&self) -> Self::Terms;
    fn push_term(&self, terms: &mut Self::Terms, s: &Self::Scalar);
    /// Discrepancy of `mu` at the most recently pushed term. Requires
    /// `deg mu < terms.len()`.
    fn discrepancy(&self, mu: &Self::Poly, terms: &Self::Terms) -> Self::Scalar;
}

/// Dense coefficient vectors over any [`Ring`].
#[derive(Clone, Debug)]
pub struct Dense<R: Ring> {
    pub ring: R,
}

impl<R: Ring> Dense<R> {
    pub fn new(ring: R) -> Self {
        Dense { ring }
    }
}

impl<R: Ring> Backend for Dense<R> {
    type Scalar = R::Elem;
    type Poly = Poly<R>;
    type Terms = Vec<R::Elem>;

    fn is_field(&self) -> bool {
        self.ring.is_field()
    }

    fn zero(&self) -> R::Elem {
        self.ring.zero()
    }

    fn one(&self) -> R::Elem {
        self.ring.one()
    }

    fn is_zero(&self, a: &R::Elem) -> bool {
        self.ring.is_zero(a)
    }

    fn neg(&self, a: &R::Elem) -> R::Elem {
        self.ring.neg(a)
    }

    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ring.mul(a, b)
    }

    fn inv(&self, a: &R::Elem) -> Option<R::Elem> {
        self.ring.inv(a)
    }

    fn constant(&self, c: &R::Elem) -> Poly<R> {
        Poly::constant(self.ring.clone(), c.clone())
    }

    fn degree(&self, p: &Poly<R>) -> Option<usize> {
        p.deg()
    }

    fn scale(&self, p: &Poly<R>, c: &R::Elem) -> Poly<R> {
        p.scale(c)
    }

    fn leading(&self, p: &Poly<R>) -> Option<R::Elem> {
        p.leading().cloned()
    }

    fn combine(
        &self,
        a: &R::Elem,
        i: usize,
        p: &Poly<R>,
        b: &R::Elem,
        k: usize,
        q: &Poly<R>,
    ) -> Poly<R> {
        p.combine(a, i, q, b, k)
    }

    fn new_terms(&self) -> Vec<R::Elem> {
        Vec::new()
    }

    fn push_term(&self, terms: &mut Vec<R::Elem>, s: &R::Elem) {
        terms.push(s.clone());
    }

    fn discrepancy(&self, mu: &Poly<R>, terms: &Vec<R::Elem>) -> R::Elem {
        let r = &self.ring;
        let j = terms.len();
        let Some(d) = mu.deg() else {
            return r.zero();
        };
        debug_assert!(d < j);
        // sum_k mu_k s_(j-d+k); s_i lives at terms[i-1]
        let window = &terms[j - d - 1..j];
        mu.coeffs()
            .iter()
            .zip(window)
            .fold(r.zero(), |acc, (m, s)| r.add(&acc, &r.mul(m, s)))
    }
}

/// Packed sequence bits; bit `i - 1` holds `s_i`.
#[derive(Clone, Debug, Default)]
pub struct BitTerms {
    words: Vec<u64>,
    len: usize,
}

impl BitTerms {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// 64 bits starting at bit position `pos`; bits past the end read as 0.
    fn word_at(&self, pos: usize) -> u64 {
        let w = pos / 64;
        let b = pos % 64;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if b == 0 {
            lo
        } else {
            let hi = self.words.get(w + 1).copied().unwrap_or(0);
            (lo >> b) | (hi << (64 - b))
        }
    }
}

/// Packed-bit backend for F_2.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gf2;

impl Backend for Gf2 {
    type Scalar = bool;
    type Poly = Gf2Poly;
    type Terms = BitTerms;

    fn is_field(&self) -> bool {
        true
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }

    fn neg(&self, a: &bool) -> bool {
        *a
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn inv(&self, a: &bool) -> Option<bool> {
        a.then_some(true)
    }

    fn constant(&self, c: &bool) -> Gf2Poly {
        if *c {
            Gf2Poly::one()
        } else {
            Gf2Poly::zero()
        }
    }

    fn degree(&self, p: &Gf2Poly) -> Option<usize> {
        p.deg()
    }

    fn scale(&self, p: &Gf2Poly, c: &bool) -> Gf2Poly {
        if *c {
            p.clone()
        } else {
            Gf2Poly::zero()
        }
    }

    fn leading(&self, p: &Gf2Poly) -> Option<bool> {
        p.deg().map(|_| true)
    }

    fn combine(&self, a: &bool, i: usize, p: &Gf2Poly, b: &bool, k: usize, q: &Gf2Poly) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        if *a {
            out.xor_shifted(p, i);
        }
        if *b {
            out.xor_shifted(q, k);
        }
        out
    }

    fn new_terms(&self) -> BitTerms {
        BitTerms::default()
    }

    fn push_term(&self, terms: &mut BitTerms, s: &bool) {
        let i = terms.len;
        if i / 64 >= terms.words.len() {
            terms.words.push(0);
        }
        if *s {
            terms.words[i / 64] |= 1 << (i % 64);
        }
        terms.len += 1;
    }

    fn discrepancy(&self, mu: &Gf2Poly, terms: &BitTerms) -> bool {
        let j = terms.len;
        let Some(d) = mu.deg() else {
            return false;
        };
        debug_assert!(d < j);
        // mu_k pairs with s_(j-d+k), which sits at bit j-d-1+k
        let start = j - d - 1;
        let acc = mu
            .words()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (w, m)| acc ^ (m & terms.word_at(start + 64 * w)));
        acc.count_ones() % 2 == 1
    }
}

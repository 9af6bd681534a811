//! Finite sequences and the two functionals that pair a polynomial `f` with
//! the generating element `s_1 x^-1 + ... + s_n x^-n` of a sequence.
//!
//! No Laurent series type is materialized; every coefficient of `f * s`
//! is an indexed convolution over the stored terms.

use std::fmt;
use std::sync::Arc;

use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// An immutable finite sequence `s_1, ..., s_n` (1-indexed).
///
/// Prefix views share the underlying storage.
#[derive(Clone)]
pub struct Seq<R: Ring> {
    ring: R,
    terms: Arc<[R::Elem]>,
    len: usize,
}

impl<R: Ring> Seq<R> {
    pub fn new(ring: R, terms: Vec<R::Elem>) -> Self {
        let len = terms.len();
        Seq {
            ring,
            terms: terms.into(),
            len,
        }
    }

    pub fn from_i64s(ring: R, terms: &[i64]) -> Self {
        let t = terms.iter().map(|&v| ring.from_i64(v)).collect();
        Seq::new(ring, t)
    }

    pub fn empty(ring: R) -> Self {
        Seq::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn terms(&self) -> &[R::Elem] {
        &self.terms[..self.len]
    }

    /// `s_i` for `1 <= i <= n`.
    pub fn term(&self, i: usize) -> Result<&R::Elem> {
        if i == 0 || i > self.len {
            return Err(Error::Index {
                index: i,
                len: self.len,
            });
        }
        Ok(&self.terms[i - 1])
    }

    /// `s_i`, or `None` when `i` lies outside `1..=n`.
    pub fn get(&self, i: i64) -> Option<&R::Elem> {
        if i < 1 || i as usize > self.len {
            None
        } else {
            Some(&self.terms[i as usize - 1])
        }
    }

    /// The prefix `s^(i)`.
    pub fn prefix(&self, i: usize) -> Result<Self> {
        if i > self.len {
            return Err(Error::Index {
                index: i,
                len: self.len,
            });
        }
        Ok(Seq {
            ring: self.ring.clone(),
            terms: Arc::clone(&self.terms),
            len: i,
        })
    }

    pub fn is_all_zero(&self) -> bool {
        self.terms().iter().all(|t| self.ring.is_zero(t))
    }

    fn check_ring(&self, f: &Poly<R>) -> Result<()> {
        if f.ring() != &self.ring {
            return Err(Error::DomainMismatch {
                left: f.ring().name(),
                right: self.ring.name(),
            });
        }
        Ok(())
    }

    /// Coefficient of `x^m` in `f * s`, for any integer `m`.
    fn product_coeff(&self, f: &Poly<R>, m: i64) -> R::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for (k, fk) in f.coeffs().iter().enumerate() {
            // x^k * s_i x^-i lands on x^(k - i)
            if let Some(si) = self.get(k as i64 - m) {
                acc = r.add(&acc, &r.mul(fk, si));
            }
        }
        acc
    }
}

impl<R: Ring> PartialEq for Seq<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms() == other.terms()
    }
}

impl<R: Ring> Eq for Seq<R> {}

impl<R: Ring> fmt::Debug for Seq<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seq[{}]{:?}", self.ring.name(), self.terms())
    }
}

impl<R: Ring> fmt::Display for Seq<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|t| self.ring.format_elem(t))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// The nonnegative-power part of `f * s`. Its degree is below `deg f`.
pub fn polynomial_part<R: Ring>(f: &Poly<R>, s: &Seq<R>) -> Result<Poly<R>> {
    s.check_ring(f)?;
    let Some(d) = f.deg() else {
        return Ok(Poly::zero(s.ring.clone()));
    };
    let c = (0..d).map(|j| s.product_coeff(f, j as i64)).collect();
    Ok(Poly::new(s.ring.clone(), c))
}

/// The discrepancy of `f` at position `n + 1`: the coefficient of
/// `x^(d - n - 1)` in `f * s`, i.e. `sum_k f_k s_(n+1-d+k)`.
///
/// Terms with a non-positive index are treated as absent, which makes the
/// functional total in `deg f`. The zero polynomial has zero discrepancy.
pub fn discrepancy<R: Ring>(f: &Poly<R>, s: &Seq<R>, n: usize) -> Result<R::Elem> {
    s.check_ring(f)?;
    if n + 1 > s.len {
        return Err(Error::Index {
            index: n + 1,
            len: s.len,
        });
    }
    let Some(d) = f.deg() else {
        return Ok(s.ring.zero());
    };
    Ok(s.product_coeff(f, d as i64 - n as i64 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::ring::Fp;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn polynomial_part_examples() {
        let s = Seq::from_i64s(f2(), &[1]);
        assert_eq!(
            polynomial_part(&Poly::x(f2()), &s).unwrap(),
            Poly::one(f2())
        );
        let s = Seq::from_i64s(f2(), &[1, 0, 1, 1]);
        assert!(polynomial_part(&Poly::one(f2()), &s).unwrap().is_zero());
        let f = Poly::parse(f2(), "x^2+x+1").unwrap();
        let s = Seq::from_i64s(f2(), &[1, 1, 0, 1]);
        assert_eq!(polynomial_part(&f, &s).unwrap(), Poly::x(f2()));
    }

    #[test]
    fn discrepancy_examples() {
        let f5 = Fp::new(5).unwrap();
        let s = Seq::from_i64s(f5, &[3, 4, 2]);
        for n in 0..3 {
            assert_eq!(
                discrepancy(&Poly::one(f5), &s, n).unwrap(),
                *s.term(n + 1).unwrap()
            );
        }
        let f = Poly::parse(f2(), "x^2+x+1").unwrap();
        let s = Seq::from_i64s(f2(), &[1, 1, 0, 1]);
        assert_eq!(discrepancy(&f, &s, 3).unwrap(), 0);
        let s = Seq::from_i64s(f2(), &[1, 1, 0, 1, 0]);
        assert_eq!(discrepancy(&f, &s, 4).unwrap(), 1);
        assert!(matches!(
            discrepancy(&f, &s, 5),
            Err(Error::Index { index: 6, len: 5 })
        ));
    }

    #[test]
    fn prefixes_share_terms() {
        let s = Seq::from_i64s(f2(), &[1, 1, 0, 1]);
        let p = s.prefix(2).unwrap();
        assert_eq!(p.terms(), &[1, 1]);
        assert_eq!(p.get(3), None);
        assert!(s.prefix(5).is_err());
        assert!(s.term(0).is_err());
    }

    /// Full Laurent product `f * s` by schoolbook convolution, keyed by
    /// exponent.
    fn laurent_product(f: &Poly<Fp>, s: &Seq<Fp>) -> BTreeMap<i64, u32> {
        let r = f.ring();
        let mut out = BTreeMap::new();
        for (k, fk) in f.coeffs().iter().enumerate() {
            for (i, si) in s.terms().iter().enumerate() {
                let e = k as i64 - (i as i64 + 1);
                let slot = out.entry(e).or_insert(0);
                *slot = r.add(slot, &r.mul(fk, si));
            }
        }
        out
    }

    fn arb_case() -> impl Strategy<Value = (Poly<Fp>, Seq<Fp>)> {
        prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|p| {
            let field = Fp::new(p).unwrap();
            (
                prop::collection::vec(0..p as u32, 1..12),
                prop::collection::vec(0..p as u32, 1..=32),
            )
                .prop_map(move |(f, s)| (Poly::new(field, f), Seq::new(field, s)))
        })
    }

    proptest! {
        #[test]
        fn laurent_product_splits((f, s) in arb_case()) {
            prop_assume!(!f.is_zero());
            let full = laurent_product(&f, &s);
            let part = polynomial_part(&f, &s).unwrap();
            for (&e, &c) in full.range(0..) {
                prop_assert_eq!(part.coeff(e as usize), c);
            }
            prop_assert!(part.degree() < f.degree());
            let d = f.deg().unwrap() as i64;
            for n in 0..s.len() {
                let want = full.get(&(d - n as i64 - 1)).copied().unwrap_or(0);
                prop_assert_eq!(discrepancy(&f, &s, n).unwrap(), want);
            }
        }
    }
}

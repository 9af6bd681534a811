use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::Ring;
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial with ascending coefficients.
///
/// The highest stored coefficient is always nonzero; the zero polynomial
/// stores no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> Poly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring, coeffs }
    }

    pub fn zero(ring: R) -> Self {
        Poly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: R) -> Self {
        let c = ring.one();
        Poly::constant(ring, c)
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Poly::new(ring, vec![c])
    }

    /// `c * x^k`
    pub fn monomial(ring: R, c: R::Elem, k: usize) -> Self {
        if ring.is_zero(&c) {
            return Poly::zero(ring);
        }
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = c;
        Poly { ring, coeffs }
    }

    pub fn x(ring: R) -> Self {
        let one = ring.one();
        Poly::monomial(ring, one, 1)
    }

    /// Builds a polynomial from small integers, ascending.
    pub fn from_i64s(ring: R, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| ring.from_i64(v)).collect();
        Poly::new(ring, c)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an `Option`, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::DomainMismatch {
                left: self.ring.name(),
                right: other.ring.name(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let r = &self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => r.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(r.clone(), c)
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let r = &self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => r.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => r.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(r.clone(), c)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        let r = &self.ring;
        let mut c = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = r.add(&c[i + j], &r.mul(a, b));
            }
        }
        Poly::new(r.clone(), c)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = &self.ring;
        if r.is_zero(c) {
            return Poly::zero(r.clone());
        }
        Poly::new(r.clone(), self.coeffs.iter().map(|a| r.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![self.ring.zero(); k];
        c.extend_from_slice(&self.coeffs);
        Poly {
            ring: self.ring.clone(),
            coeffs: c,
        }
    }

    /// `a * x^i * self - b * x^k * other`, the single update shape used by
    /// the minimal-polynomial recursion.
    pub fn combine(&self, a: &R::Elem, i: usize, other: &Self, b: &R::Elem, k: usize) -> Self {
        let r = &self.ring;
        let len = (self.coeffs.len() + i).max(other.coeffs.len() + k);
        let mut c = vec![r.zero(); len];
        if !r.is_zero(a) {
            for (t, v) in self.coeffs.iter().enumerate() {
                c[t + i] = r.mul(a, v);
            }
        }
        if !r.is_zero(b) {
            for (t, v) in other.coeffs.iter().enumerate() {
                c[t + k] = r.sub(&c[t + k], &r.mul(b, v));
            }
        }
        Poly::new(r.clone(), c)
    }

    /// `x^deg * f(1/x)`.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "the zero polynomial has no reciprocal".into(),
            ));
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Poly::new(self.ring.clone(), c))
    }

    fn require_field(&self) -> Result<()> {
        if !self.ring.is_field() {
            return Err(Error::UnsupportedDomain {
                required: "a field",
                actual: self.ring.name(),
            });
        }
        Ok(())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Result<Self> {
        self.require_field()?;
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => {
                let inv = self.ring.inv(l).expect("nonzero field element");
                Ok(self.scale(&inv))
            }
        }
    }

    /// Euclidean division over a field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same(divisor)?;
        self.require_field()?;
        let r = &self.ring;
        let Some(dd) = divisor.deg() else {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        };
        let lead_inv = r.inv(divisor.leading().unwrap()).expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(r.clone()), self.clone()));
        }
        let mut quot = vec![r.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if r.is_zero(&rem[i]) {
                continue;
            }
            let q = r.mul(&rem[i], &lead_inv);
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = r.sub(&rem[idx], &r.mul(&q, dc));
            }
            quot[i - dd] = q;
        }
        Ok((Poly::new(r.clone(), quot), Poly::new(r.clone(), rem)))
    }

    /// Parses the polynomial text format, e.g. `x^3+x^2+1` or `2x+1`.
    pub fn parse(ring: R, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if t == "0" {
            return Ok(Poly::zero(ring));
        }
        let mut acc = Poly::zero(ring.clone());
        for term in t.split('+') {
            let term = term.trim();
            let (coeff, deg) = match term.find('x') {
                None => (ring.parse_elem(term)?, 0),
                Some(pos) => {
                    let c = match &term[..pos] {
                        "" => ring.one(),
                        "-" => ring.neg(&ring.one()),
                        s => ring.parse_elem(s)?,
                    };
                    let d = match &term[pos + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in '{term}'")))?,
                    };
                    (c, d)
                }
            };
            acc = acc.add_unchecked(&Poly::monomial(ring.clone(), coeff, deg));
        }
        Ok(acc)
    }
}

/// Monic gcd over a field.
pub fn poly_gcd<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<Poly<R>> {
    a.check_same(b)?;
    a.require_field()?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
    }
    let (mut u, mut v) = (a.clone(), b.clone());
    while !v.is_zero() {
        let (_, r) = u.div_rem(&v)?;
        u = v;
        v = r;
    }
    u.monic()
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let r = &self.ring;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if r.is_zero(c) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let coeff = if k > 0 && r.is_one(c) {
                String::new()
            } else if k > 0 && *c == r.neg(&r.one()) && r.characteristic() == 0 {
                "-".to_string()
            } else {
                r.format_elem(c)
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ring.name(), self)
    }
}

// The operator forms panic on mixed domains; use the `checked_*` methods
// when operands come from untrusted sources.

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;

    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        self.checked_add(rhs).expect("domain mismatch")
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;

    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        self.checked_sub(rhs).expect("domain mismatch")
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        self.checked_mul(rhs).expect("domain mismatch")
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Poly<R> {
        let r = &self.ring;
        Poly::new(r.clone(), self.coeffs.iter().map(|c| r.neg(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::ring::{Fp, Integers};
    use proptest::prelude::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    fn p2(text: &str) -> Poly<Fp> {
        Poly::parse(f2(), text).unwrap()
    }

    #[test]
    fn frobenius_square_in_char_two() {
        let a = p2("x+1");
        assert_eq!(&a * &a, p2("x^2+1"));
    }

    #[test]
    fn gamma_two_from_recurrence() {
        let x = Poly::x(f2());
        let g1 = Poly::one(f2());
        let g0 = Poly::zero(f2());
        assert_eq!(&(&x * &g1) + &g0, x);
    }

    #[test]
    fn zero_has_negative_infinite_degree() {
        let z = Poly::zero(f2());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert_eq!(z.degree() + Degree::Finite(3), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn mixed_domains_rejected() {
        let a = Poly::one(f2());
        let b = Poly::one(Fp::new(3).unwrap());
        assert!(matches!(a.checked_add(&b), Err(Error::DomainMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p2("x^3+x^2+1").reciprocal().unwrap(), p2("x^3+x+1"));
        assert_eq!(p2("1").reciprocal().unwrap(), p2("1"));
        assert_eq!(p2("x").reciprocal().unwrap(), p2("1"));
        assert!(Poly::zero(f2()).reciprocal().is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p2("x^3+x^2+1"), &p2("x^2+x+1")).unwrap(), p2("1"));
        assert_eq!(poly_gcd(&p2("x^2+1"), &p2("x+1")).unwrap(), p2("x+1"));
        let f3 = Fp::new(3).unwrap();
        let f = Poly::parse(f3, "2x^2+1").unwrap();
        assert_eq!(
            poly_gcd(&f, &Poly::zero(f3)).unwrap(),
            f.monic().unwrap()
        );
        let zi = Poly::one(Integers);
        assert!(matches!(
            poly_gcd(&zi, &zi),
            Err(Error::UnsupportedDomain { .. })
        ));
        assert!(poly_gcd(&Poly::zero(f2()), &Poly::zero(f2())).is_err());
    }

    #[test]
    fn text_format() {
        assert_eq!(p2("x^3+x^2+1").to_string(), "x^3+x^2+1");
        let f5 = Fp::new(5).unwrap();
        let p = Poly::from_i64s(f5, &[4, 0, 3, 1]);
        assert_eq!(p.to_string(), "x^3+3x^2+4");
        assert_eq!(Poly::parse(f5, "x^3+3x^2+4").unwrap(), p);
        assert!(Poly::parse(f5, "5x").is_err());
        assert!(Poly::parse(f5, "x^").is_err());
        let z = Poly::from_i64s(Integers, &[2, -1, -3]);
        assert_eq!(z.to_string(), "-3x^2+-x+2");
        assert_eq!(Poly::parse(Integers, "-3x^2+-x+2").unwrap(), z);
    }

    #[test]
    fn division() {
        let f7 = Fp::new(7).unwrap();
        let a = Poly::from_i64s(f7, &[1, 2, 3, 4, 5]);
        let b = Poly::from_i64s(f7, &[3, 0, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    fn arb_poly(p: u64, max_len: usize) -> impl Strategy<Value = Poly<Fp>> {
        let f = Fp::new(p).unwrap();
        prop::collection::vec(0..p as u32, 0..max_len).prop_map(move |c| Poly::new(f, c))
    }

    proptest! {
        #[test]
        fn add_zero_is_identity(a in arb_poly(5, 20)) {
            prop_assert_eq!(&a + &Poly::zero(*a.ring()), a);
        }

        #[test]
        fn degree_is_additive(a in arb_poly(3, 20), b in arb_poly(3, 20)) {
            let prod = &a * &b;
            prop_assert_eq!(prod.degree(), a.degree() + b.degree());
            prop_assert!((&a + &b).degree() <= a.degree().max(b.degree()));
        }

        #[test]
        fn reciprocal_involution(a in arb_poly(5, 20)) {
            prop_assume!(!a.is_zero() && a.coeffs()[0] != 0);
            prop_assert_eq!(a.reciprocal().unwrap().reciprocal().unwrap(), a);
        }

        #[test]
        fn text_round_trip(a in arb_poly(7, 12)) {
            prop_assert_eq!(Poly::parse(*a.ring(), &a.to_string()).unwrap(), a);
        }

        #[test]
        fn combine_matches_primitives(a in arb_poly(5, 10), b in arb_poly(5, 10),
                                      ca in 0u32..5, cb in 0u32..5, i in 0usize..4, k in 0usize..4) {
            let lhs = a.combine(&ca, i, &b, &cb, k);
            let rhs = &a.scale(&ca).shift(i) - &b.scale(&cb).shift(k);
            prop_assert_eq!(lhs, rhs);
        }
    }
}

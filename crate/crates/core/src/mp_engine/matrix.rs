use std::fmt;

use crate::coeff_poly::{Poly, Ring};
use crate::error::{Error, Result};

/// A 2x2 matrix over `D[x]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<R: Ring> {
    pub rows: [[Poly<R>; 2]; 2],
}

impl<R: Ring> PolyMatrix<R> {
    pub fn new(a: Poly<R>, b: Poly<R>, c: Poly<R>, d: Poly<R>) -> Self {
        PolyMatrix {
            rows: [[a, b], [c, d]],
        }
    }

    pub fn identity(ring: R) -> Self {
        PolyMatrix::new(
            Poly::one(ring.clone()),
            Poly::zero(ring.clone()),
            Poly::zero(ring.clone()),
            Poly::one(ring),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<R> {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.rows;
        let b = &other.rows;
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        PolyMatrix::new(cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1))
    }

    pub fn mul_vec(&self, v: &[Poly<R>; 2]) -> [Poly<R>; 2] {
        let a = &self.rows;
        [
            &(&a[0][0] * &v[0]) + &(&a[0][1] * &v[1]),
            &(&a[1][0] * &v[0]) + &(&a[1][1] * &v[1]),
        ]
    }

    pub fn det(&self) -> Poly<R> {
        let a = &self.rows;
        &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
    }

    /// `[[d, -b], [-c, a]]`
    pub fn adjugate(&self) -> Self {
        let a = &self.rows;
        PolyMatrix::new(a[1][1].clone(), -&a[0][1], -&a[1][0], a[0][0].clone())
    }

    /// Inverse for a matrix whose determinant is a unit constant.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        let unit = match det.deg() {
            Some(0) => det.ring().inv(&det.coeffs()[0]),
            _ => None,
        };
        let Some(inv) = unit else {
            return Err(Error::InvalidArgument(format!(
                "determinant {det} is not a unit"
            )));
        };
        let adj = self.adjugate();
        let [[a, b], [c, d]] = &adj.rows;
        Ok(PolyMatrix::new(
            a.scale(&inv),
            b.scale(&inv),
            c.scale(&inv),
            d.scale(&inv),
        ))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = PolyMatrix::identity(self.rows[0][0].ring().clone());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl<R: Ring> fmt::Display for PolyMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rows;
        write!(f, "[[{},{}],[{},{}]]", r[0][0], r[0][1], r[1][0], r[1][1])
    }
}

impl<R: Ring> fmt::Debug for PolyMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

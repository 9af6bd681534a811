//! Certificates and the exhaustive oracle that check the engine from the
//! outside.

use super::lfsr::annihilates;
use super::run::DenseState;
use crate::coeff_poly::{poly_gcd, Fp, Poly, Ring, Seq};
use crate::error::{Error, Result};

/// Largest `q^(d+1)` the enumeration is allowed to walk.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Smallest `d` such that some nonzero polynomial of degree `d` annihilates
/// `s`, with a monic witness. Enumerates candidates degree by degree.
pub fn brute_force_minpoly(s: &Seq<Fp>) -> Result<(usize, Poly<Fp>)> {
    let field = *s.ring();
    let q = field.modulus() as u128;
    for d in 0..=s.len() {
        let budget = q.checked_pow(d as u32 + 1).unwrap_or(u128::MAX);
        if budget > BRUTE_FORCE_LIMIT {
            return Err(Error::Resource(format!(
                "enumerating degree {d} over F_{q} needs {q}^{} candidates",
                d + 1
            )));
        }
        // odometer over the lower d coefficients of a monic degree-d polynomial
        let mut lower = vec![0u32; d];
        loop {
            let mut coeffs = lower.clone();
            coeffs.push(1);
            let f = Poly::new(field, coeffs);
            if annihilates(&f, s) {
                return Ok((d, f));
            }
            let mut i = 0;
            while i < d {
                lower[i] += 1;
                if lower[i] < field.modulus() {
                    break;
                }
                lower[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    unreachable!("x^n annihilates every sequence of length n")
}

/// `det M^(j) = mu [mu'] - [mu] mu'`.
pub fn state_det<R: Ring>(state: &DenseState<R>) -> Poly<R> {
    let (mu, mu_b) = state.mu();
    let (prev, prev_b) = state.mu_prev();
    &(mu * prev_b) - &(mu_b * prev)
}

/// The Bezout certificate: `mu [mu'] - [mu] mu' = -nabla`, and over a field
/// `gcd(mu, [mu]) = gcd(mu, mu') = 1`.
pub fn bezout_check<R: Ring>(state: &DenseState<R>) -> bool {
    let ring = state.backend().ring.clone();
    let minus_nabla = Poly::constant(ring.clone(), ring.neg(state.nabla()));
    if state_det(state) != minus_nabla {
        return false;
    }
    if !ring.is_field() {
        return true;
    }
    let (mu, mu_b) = state.mu();
    let one = Poly::one(ring);
    let coprime = |a: &Poly<R>, b: &Poly<R>| poly_gcd(a, b).is_ok_and(|g| g == one);
    coprime(mu, mu_b) && coprime(mu, &state.mu_prev().0)
}

/// `{ mu + c mu' : c in F_q }`. For odd-length prefixes with a perfect
/// profile every member is a minimal polynomial.
pub fn mp_alternatives(state: &DenseState<Fp>) -> Vec<Poly<Fp>> {
    let field = state.backend().ring;
    let (mu, _) = state.mu();
    let (prev, _) = state.mu_prev();
    field
        .elements()
        .map(|c| mu + &prev.scale(&c))
        .collect()
}

//! Coefficient domains, dense and packed polynomials, finite sequences, and
//! the polynomial-part and discrepancy functionals.

mod gf2;
mod poly;
mod ring;
mod seq;

pub use gf2::Gf2Poly;
pub use poly::{poly_gcd, Degree, Poly};
pub use ring::{is_prime, Fp, Integers, Ring};
pub use seq::{discrepancy, polynomial_part, Seq};

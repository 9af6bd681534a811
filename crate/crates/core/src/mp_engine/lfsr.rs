use super::run::DenseState;
use crate::coeff_poly::{Poly, Ring, Seq};
use crate::error::{Error, Result};

/// Whether `f` annihilates `s`: `f = 0`, or
/// `f_0 s_(j-d) + ... + f_d s_j = 0` for `d + 1 <= j <= n`.
pub fn annihilates<R: Ring>(f: &Poly<R>, s: &Seq<R>) -> bool {
    let Some(d) = f.deg() else {
        return true;
    };
    let r = s.ring();
    let terms = s.terms();
    (d + 1..=s.len()).all(|j| {
        let window = &terms[j - d - 1..j];
        let acc = f
            .coeffs()
            .iter()
            .zip(window)
            .fold(r.zero(), |acc, (c, t)| r.add(&acc, &r.mul(c, t)));
        r.is_zero(&acc)
    })
}

/// Feedback polynomial (the reciprocal of `mu`) together with the register
/// length `LC`.
///
/// The register length is returned separately because the reciprocal drops
/// degree whenever `mu(0) = 0`.
pub fn feedback_polynomial<R: Ring>(state: &DenseState<R>) -> (Poly<R>, usize) {
    let mu = &state.mu().0;
    let fb = mu.reciprocal().expect("minimal polynomial is nonzero");
    (fb, state.lc())
}

/// Runs the register with taps `feedback` and initial fill `fill`:
/// `s_j = -g_0^-1 (g_1 s_(j-1) + ... + g_L s_(j-L))` with `L = |fill|`.
pub fn lfsr_generate<R: Ring>(feedback: &Poly<R>, fill: &Seq<R>, length: usize) -> Result<Seq<R>> {
    let r = fill.ring();
    let l = fill.len();
    if length < l {
        return Err(Error::InvalidArgument(format!(
            "requested length {length} is shorter than the fill ({l})"
        )));
    }
    if feedback.ring() != r {
        return Err(Error::DomainMismatch {
            left: feedback.ring().name(),
            right: r.name(),
        });
    }
    if feedback.deg().is_some_and(|d| d > l) {
        return Err(Error::InvalidArgument(format!(
            "feedback degree {} exceeds register length {l}",
            feedback.degree()
        )));
    }
    let g0_inv = r.inv(&feedback.coeff(0)).ok_or_else(|| {
        Error::InvalidArgument("feedback constant term must be invertible".into())
    })?;
    let minus_g0_inv = r.neg(&g0_inv);
    let mut out: Vec<R::Elem> = fill.terms().to_vec();
    for j in l..length {
        let mut acc = r.zero();
        for i in 1..=l {
            let g = feedback.coeff(i);
            if !r.is_zero(&g) {
                acc = r.add(&acc, &r.mul(&g, &out[j - i]));
            }
        }
        out.push(r.mul(&minus_g0_inv, &acc));
    }
    Ok(Seq::new(r.clone(), out))
}

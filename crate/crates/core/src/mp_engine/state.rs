use super::backend::Backend;
use crate::error::{Error, Result};

/// One consumed term.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord<S> {
    /// 1-based position of the term.
    pub j: usize,
    pub delta: S,
    /// Exponent before the step, `e_(j-1)`.
    pub e_prev: i64,
    /// Linear complexity after the step.
    pub lc: usize,
    /// The discrepancy was nonzero and `e_(j-1) > 0`, so the complexity grew.
    pub jumped: bool,
    /// The index `j'` after this step.
    pub prev_index: i64,
}

impl<S> StepRecord<S> {
    /// Exponent after the step, `e_j = j + 1 - 2 LC_j`.
    pub fn e(&self) -> i64 {
        self.j as i64 + 1 - 2 * self.lc as i64
    }
}

/// Knobs that change how the state evolves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepOptions {
    /// Divide each new pair by the multiplier of the current pair (field
    /// only). Results agree with the division-free form up to a scalar.
    pub normalize: bool,
    /// Keep a per-step log. Streaming callers turn this off.
    pub keep_log: bool,
}

/// The live state of the incremental minimal-polynomial recursion.
///
/// Rows of the MP matrix are kept as pairs `(mu, [mu])` and
/// `(mu', [mu'])`.
#[derive(Clone, Debug)]
pub struct MpState<B: Backend> {
    backend: B,
    options: StepOptions,
    j: usize,
    mu: (B::Poly, B::Poly),
    mu_prev: (B::Poly, B::Poly),
    e: i64,
    delta_prime: B::Scalar,
    nabla: B::Scalar,
    p_shift: usize,
    prev_index: i64,
    lc: usize,
    terms: B::Terms,
    log: Vec<StepRecord<B::Scalar>>,
}

impl<B: Backend> MpState<B> {
    /// `M^(0) = [[1, 0], [epsilon, -1]]`, `e_0 = 1`, `Delta_0 = 1`.
    pub fn new(backend: B, epsilon: B::Scalar, options: StepOptions) -> Result<Self> {
        if options.normalize && !backend.is_field() {
            return Err(Error::UnsupportedDomain {
                required: "a field for per-step normalization",
                actual: format!("{backend:?}"),
            });
        }
        let one = backend.one();
        let zero = backend.zero();
        let minus_one = backend.neg(&one);
        Ok(MpState {
            mu: (backend.constant(&one), backend.constant(&zero)),
            mu_prev: (backend.constant(&epsilon), backend.constant(&minus_one)),
            e: 1,
            delta_prime: one.clone(),
            nabla: one,
            // p(0) = 0 - 0' = 1
            p_shift: 1,
            prev_index: -1,
            lc: 0,
            j: 0,
            terms: backend.new_terms(),
            log: Vec::new(),
            backend,
            options,
        })
    }

    /// Consumes `s_(j+1)`.
    pub fn step(&mut self, s: &B::Scalar) {
        let b = &self.backend;
        b.push_term(&mut self.terms, s);
        self.j += 1;
        let delta = b.discrepancy(&self.mu.0, &self.terms);
        let e_prev = self.e;
        let mut jumped = false;

        if b.is_zero(&delta) {
            self.e += 1;
            self.p_shift += 1;
        } else {
            let (a, c) = if self.options.normalize {
                let inv = b.inv(&self.delta_prime).expect("nonzero in a field");
                (b.one(), b.mul(&delta, &inv))
            } else {
                (self.delta_prime.clone(), delta.clone())
            };
            if e_prev <= 0 {
                let k = (-e_prev) as usize;
                self.mu = (
                    b.combine(&a, 0, &self.mu.0, &c, k, &self.mu_prev.0),
                    b.combine(&a, 0, &self.mu.1, &c, k, &self.mu_prev.1),
                );
                // |U| = Delta', which normalization divides out
                if !self.options.normalize {
                    self.nabla = b.mul(&self.nabla, &self.delta_prime);
                }
                self.e += 1;
                self.p_shift += 1;
            } else {
                let k = e_prev as usize;
                let new = (
                    b.combine(&a, k, &self.mu.0, &c, 0, &self.mu_prev.0),
                    b.combine(&a, k, &self.mu.1, &c, 0, &self.mu_prev.1),
                );
                self.mu_prev = std::mem::replace(&mut self.mu, new);
                // |U| = Delta, or Delta / Delta' when normalized
                self.nabla = b.mul(&self.nabla, &c);
                self.delta_prime = delta.clone();
                self.e = 1 - e_prev;
                self.p_shift = 1;
                self.prev_index = self.j as i64 - 1;
                jumped = true;
            }
        }
        self.lc = b.degree(&self.mu.0).expect("minimal polynomial is nonzero");
        debug_assert_eq!(self.e, self.j as i64 + 1 - 2 * self.lc as i64);

        if self.options.keep_log {
            self.log.push(StepRecord {
                j: self.j,
                delta,
                e_prev,
                lc: self.lc,
                jumped,
                prev_index: self.prev_index,
            });
        }
    }

    /// Functional form of [`MpState::step`].
    pub fn stepped(mut self, s: &B::Scalar) -> Self {
        self.step(s);
        self
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn options(&self) -> StepOptions {
        self.options
    }

    /// Number of terms consumed.
    pub fn j(&self) -> usize {
        self.j
    }

    /// `(mu, [mu])`
    pub fn mu(&self) -> &(B::Poly, B::Poly) {
        &self.mu
    }

    /// `(mu', [mu'])`
    pub fn mu_prev(&self) -> &(B::Poly, B::Poly) {
        &self.mu_prev
    }

    /// Exponent `e_j`.
    pub fn e(&self) -> i64 {
        self.e
    }

    /// Discrepancy recorded at the most recent jump (`Delta_0 = 1` initially).
    pub fn delta_prime(&self) -> &B::Scalar {
        &self.delta_prime
    }

    /// Product of the update determinants; `det M^(j) = -nabla`.
    pub fn nabla(&self) -> &B::Scalar {
        &self.nabla
    }

    /// `p(j) = j - j'`, the shift applied to the reciprocal of `mu'` at the
    /// next nonzero discrepancy.
    pub fn p_shift(&self) -> usize {
        self.p_shift
    }

    /// `j'`, the length of the prefix whose minimal polynomial is `mu'`.
    pub fn prev_index(&self) -> i64 {
        self.prev_index
    }

    pub fn lc(&self) -> usize {
        self.lc
    }

    pub fn log(&self) -> &[StepRecord<B::Scalar>] {
        &self.log
    }

    pub fn terms(&self) -> &B::Terms {
        &self.terms
    }
}

use super::backend::{Dense, Gf2};
use super::matrix::PolyMatrix;
use super::state::{MpState, StepOptions, StepRecord};
use crate::coeff_poly::{Gf2Poly, Poly, Ring, Seq};
use crate::error::{Error, Result};

pub type DenseState<R> = MpState<Dense<R>>;
pub type Gf2State = MpState<Gf2>;

/// Which polynomial representation [`mp_run`] uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BackendChoice {
    /// Packed bits for F_2, dense otherwise.
    #[default]
    Auto,
    Dense,
}

/// Run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct MpConfig<R: Ring> {
    ring: R,
    epsilon: R::Elem,
    monic_output: bool,
    normalize_steps: bool,
    keep_log: bool,
    backend: BackendChoice,
}

impl<R: Ring> MpConfig<R> {
    /// `epsilon = 0`, no normalization, full log.
    pub fn new(ring: R) -> Self {
        MpConfig {
            epsilon: ring.zero(),
            ring,
            monic_output: false,
            normalize_steps: false,
            keep_log: true,
            backend: BackendChoice::Auto,
        }
    }

    pub fn with_epsilon(mut self, epsilon: R::Elem) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_monic_output(mut self, on: bool) -> Result<Self> {
        if on && !self.ring.is_field() {
            return Err(Error::UnsupportedDomain {
                required: "a field for monic output",
                actual: self.ring.name(),
            });
        }
        self.monic_output = on;
        Ok(self)
    }

    pub fn with_step_normalization(mut self, on: bool) -> Result<Self> {
        if on && !self.ring.is_field() {
            return Err(Error::UnsupportedDomain {
                required: "a field for per-step normalization",
                actual: self.ring.name(),
            });
        }
        self.normalize_steps = on;
        Ok(self)
    }

    /// Streaming mode keeps only the state, no per-step log.
    pub fn with_log(mut self, keep: bool) -> Self {
        self.keep_log = keep;
        self
    }

    pub fn with_backend(mut self, backend: BackendChoice) -> Self {
        self.backend = backend;
        self
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn epsilon(&self) -> &R::Elem {
        &self.epsilon
    }

    pub fn monic_output(&self) -> bool {
        self.monic_output
    }

    fn step_options(&self) -> StepOptions {
        StepOptions {
            normalize: self.normalize_steps,
            keep_log: self.keep_log,
        }
    }

    fn use_packed(&self) -> bool {
        self.backend == BackendChoice::Auto
            && self.ring.is_field()
            && self.ring.characteristic() == 2
    }
}

/// Everything a run produces.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileReport<R: Ring> {
    pub ring: R,
    pub epsilon: R::Elem,
    /// `LC_1, ..., LC_n`
    pub lc: Vec<usize>,
    /// `Delta_1, ..., Delta_n`
    pub deltas: Vec<R::Elem>,
    /// `e_0, ..., e_n`
    pub exponents: Vec<i64>,
    /// Positions `j` with `Delta_j != 0` and `e_(j-1) > 0`.
    pub jumps: Vec<usize>,
    pub final_matrix: PolyMatrix<R>,
    /// `mu^(n)`, monic when requested.
    pub minpoly: Poly<R>,
    pub nabla: R::Elem,
}

impl<R: Ring> ProfileReport<R> {
    pub fn n(&self) -> usize {
        self.lc.len()
    }

    /// `LC_n`, 0 for the empty sequence.
    pub fn linear_complexity(&self) -> usize {
        self.lc.last().copied().unwrap_or(0)
    }
}

/// Initial state for the dense engine.
pub fn mp_init<R: Ring>(config: &MpConfig<R>) -> DenseState<R> {
    MpState::new(
        Dense::new(config.ring.clone()),
        config.epsilon.clone(),
        config.step_options(),
    )
    .expect("options validated by MpConfig")
}

pub fn mp_step<R: Ring>(state: DenseState<R>, s: &R::Elem) -> DenseState<R> {
    state.stepped(s)
}

/// The MP matrix of a dense state.
pub fn state_matrix<R: Ring>(state: &DenseState<R>) -> PolyMatrix<R> {
    let (m, mb) = state.mu().clone();
    let (p, pb) = state.mu_prev().clone();
    PolyMatrix::new(m, mb, p, pb)
}

fn to_bool<R: Ring>(ring: &R, a: &R::Elem) -> bool {
    !ring.is_zero(a)
}

fn lift_poly<R: Ring>(ring: &R, p: &Gf2Poly) -> Poly<R> {
    let n = p.deg().map_or(0, |d| d + 1);
    let c = (0..n)
        .map(|i| if p.bit(i) { ring.one() } else { ring.zero() })
        .collect();
    Poly::new(ring.clone(), c)
}

fn lift_scalar<R: Ring>(ring: &R, b: bool) -> R::Elem {
    if b {
        ring.one()
    } else {
        ring.zero()
    }
}

/// The MP matrix of a packed state, lifted to dense polynomials over `ring`
/// (which must be F_2).
pub fn gf2_state_matrix<R: Ring>(ring: &R, state: &Gf2State) -> PolyMatrix<R> {
    let (m, mb) = state.mu();
    let (p, pb) = state.mu_prev();
    PolyMatrix::new(
        lift_poly(ring, m),
        lift_poly(ring, mb),
        lift_poly(ring, p),
        lift_poly(ring, pb),
    )
}

/// Packed engine over the terms of a binary sequence.
pub fn gf2_run<R: Ring>(s: &Seq<R>, epsilon: bool, keep_log: bool) -> Gf2State {
    let ring = s.ring();
    let options = StepOptions {
        normalize: false,
        keep_log,
    };
    let mut state = MpState::new(Gf2, epsilon, options).expect("F_2 is a field");
    for t in s.terms() {
        state.step(&to_bool(ring, t));
    }
    state
}

fn build_report<R: Ring, S: Clone>(
    config: &MpConfig<R>,
    log: &[StepRecord<S>],
    lift: impl Fn(&S) -> R::Elem,
    final_matrix: PolyMatrix<R>,
    nabla: R::Elem,
) -> ProfileReport<R> {
    let ring = &config.ring;
    let mut exponents = Vec::with_capacity(log.len() + 1);
    exponents.push(1);
    exponents.extend(log.iter().map(StepRecord::e));
    let minpoly = if config.monic_output {
        final_matrix.get(0, 0).monic().expect("validated field")
    } else {
        final_matrix.get(0, 0).clone()
    };
    ProfileReport {
        ring: ring.clone(),
        epsilon: config.epsilon.clone(),
        lc: log.iter().map(|r| r.lc).collect(),
        deltas: log.iter().map(|r| lift(&r.delta)).collect(),
        exponents,
        jumps: log.iter().filter(|r| r.jumped).map(|r| r.j).collect(),
        final_matrix,
        minpoly,
        nabla,
    }
}

/// Runs the recursion over all of `s`.
///
/// Binary input over F_2 goes through the packed backend unless the config
/// pins the dense one. Monic normalization, when requested, is applied to
/// the reported minimal polynomial only; `final_matrix` is the raw
/// division-free matrix.
pub fn mp_run<R: Ring>(s: &Seq<R>, config: &MpConfig<R>) -> (PolyMatrix<R>, ProfileReport<R>) {
    let ring = &config.ring;
    let config = &config.clone().with_log(true);
    if config.use_packed() {
        let state = gf2_run(s, to_bool(ring, &config.epsilon), true);
        let matrix = gf2_state_matrix(ring, &state);
        let nabla = lift_scalar(ring, *state.nabla());
        let report = build_report(config, state.log(), |b| lift_scalar(ring, *b), matrix.clone(), nabla);
        (matrix, report)
    } else {
        let mut state = mp_init(config);
        for t in s.terms() {
            state.step(t);
        }
        let matrix = state_matrix(&state);
        let report = build_report(config, state.log(), Clone::clone, matrix.clone(), state.nabla().clone());
        (matrix, report)
    }
}

/// Streaming run: returns the final state only.
pub fn mp_run_streaming<R: Ring>(s: &Seq<R>, config: &MpConfig<R>) -> DenseState<R> {
    let mut state = mp_init(&config.clone().with_log(false));
    for t in s.terms() {
        state.step(t);
    }
    state
}

/// `M^(0), M^(1), ..., M^(n)`.
pub fn mp_trace<R: Ring>(s: &Seq<R>, config: &MpConfig<R>) -> Vec<PolyMatrix<R>> {
    let ring = &config.ring;
    let mut out = Vec::with_capacity(s.len() + 1);
    if config.use_packed() {
        let mut state = MpState::new(Gf2, to_bool(ring, &config.epsilon), StepOptions::default())
            .expect("F_2 is a field");
        out.push(gf2_state_matrix(ring, &state));
        for t in s.terms() {
            state.step(&to_bool(ring, t));
            out.push(gf2_state_matrix(ring, &state));
        }
    } else {
        let mut state = mp_init(&config.clone().with_log(false));
        out.push(state_matrix(&state));
        for t in s.terms() {
            state.step(t);
            out.push(state_matrix(&state));
        }
    }
    out
}

/// `U = [[Delta' x^max(e,0), -Delta x^-min(e,0)], [theta(e), 1 - theta(e)]]`.
///
/// Its determinant is `Delta` when `e > 0` and `Delta'` otherwise.
pub fn updating_matrix<R: Ring>(
    ring: &R,
    delta: &R::Elem,
    delta_prime: &R::Elem,
    e: i64,
) -> Result<PolyMatrix<R>> {
    if ring.is_zero(delta) {
        return Err(Error::InvalidArgument(
            "no updating matrix for a zero discrepancy".into(),
        ));
    }
    let theta = e > 0;
    let neg_delta = ring.neg(delta);
    Ok(PolyMatrix::new(
        Poly::monomial(ring.clone(), delta_prime.clone(), e.max(0) as usize),
        Poly::monomial(ring.clone(), neg_delta, (-e.min(0)) as usize),
        Poly::constant(ring.clone(), lift_scalar(ring, theta)),
        Poly::constant(ring.clone(), lift_scalar(ring, !theta)),
    ))
}

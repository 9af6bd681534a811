//! Profile-level analyses: perfect profiles and their equivalent
//! characterisations, Wang-Massey stability, height, continued fractions,
//! LC sums, and counting of perfect-profile sequences.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::coeff_poly::{is_prime, Fp, Poly, Ring, Seq};
use crate::error::{Error, Result};
use crate::mp_engine::{
    mp_init, mp_run, BackendChoice, DenseState, MpConfig, ProfileReport,
};

/// Enumeration refuses to walk more than this many sequences.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

fn report(s: &Seq<Fp>) -> ProfileReport<Fp> {
    mp_run(s, &MpConfig::new(*s.ring())).1
}

fn perfect_lc(j: usize) -> usize {
    j.div_ceil(2)
}

fn require_binary(s: &Seq<Fp>) -> Result<()> {
    if s.ring().modulus() != 2 {
        return Err(Error::UnsupportedDomain {
            required: "F_2",
            actual: s.ring().name(),
        });
    }
    Ok(())
}

/// `LC_j = floor((j+1)/2)` for every `1 <= j <= n`.
pub fn is_plcp(s: &Seq<Fp>) -> bool {
    profile_is_perfect(&report(s).lc)
}

fn profile_is_perfect(lc: &[usize]) -> bool {
    lc.iter().enumerate().all(|(i, &l)| l == perfect_lc(i + 1))
}

/// Positions where each condition fails. Empty lists mean the condition holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFailures {
    pub lc: Vec<usize>,
    pub parity: Vec<usize>,
    pub exponent: Vec<usize>,
    pub odd_delta: Vec<usize>,
    pub index: Vec<usize>,
    pub recursion: Vec<usize>,
}

/// The six equivalent characterisations of a perfect profile, each
/// evaluated on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlcpWitness {
    /// `LC_j = floor((j+1)/2)`
    pub holds_lc: bool,
    /// `LC_1 = 1` and `LC_j - LC_(j-1)` is 0 for even `j`, 1 for odd `j`
    pub holds_parity: bool,
    /// `e_j` is 1 for even `j`, 0 for odd `j`
    pub holds_exponent: bool,
    /// `Delta_j != 0` for odd `j`
    pub holds_odd_delta: bool,
    /// `(j-1)' = j-2` for even `j`, `j-3` for odd `j`, `2 <= j <= n+1`
    pub holds_index: bool,
    /// the two-term recursions reproduce the engine's `(mu, [mu])`
    pub holds_recursion: bool,
    pub details: WitnessFailures,
}

impl PlcpWitness {
    pub fn all(&self) -> [bool; 6] {
        [
            self.holds_lc,
            self.holds_parity,
            self.holds_exponent,
            self.holds_odd_delta,
            self.holds_index,
            self.holds_recursion,
        ]
    }

    /// Whether the six conditions agree.
    pub fn consistent(&self) -> bool {
        let a = self.all();
        a.iter().all(|&b| b == a[0])
    }
}

type Pair = (Poly<Fp>, Poly<Fp>);

fn lin(a: u32, p: &Pair, shift: usize, b: u32, q: &Pair) -> Pair {
    (
        p.0.combine(&a, shift, &q.0, &b, 0),
        p.1.combine(&a, shift, &q.1, &b, 0),
    )
}

/// Rebuilds `(mu, [mu])` for every prefix from the two-term recursions
/// alone, taking each discrepancy from the rebuilt polynomials. Returns the
/// positions where the rebuilt pair differs from `engine[j]`.
fn recursion_failures(s: &Seq<Fp>, epsilon: u32, engine: &[Pair]) -> Vec<usize> {
    let field = *s.ring();
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let disc = |mu: &Poly<Fp>, j: usize| -> u32 {
        let d = mu.deg().unwrap_or(0);
        if d >= j {
            return 0;
        }
        (0..=d).fold(0, |acc, k| field.add(&acc, &field.mul(&mu.coeff(k), &s.terms()[j - d + k - 1])))
    };
    let mut rebuilt: Vec<Pair> = vec![(Poly::one(field), Poly::zero(field))];
    let mut deltas = vec![1u32];
    // first step from (1, 0) and (epsilon, -1)
    let d1 = s.terms()[0];
    rebuilt.push((
        Poly::new(field, vec![field.neg(&field.mul(&d1, &epsilon)), 1]),
        Poly::constant(field, d1),
    ));
    deltas.push(d1);
    for j in 2..=n {
        let dj = disc(&rebuilt[j - 1].0, j);
        let next = if j % 2 == 0 {
            if dj == 0 {
                rebuilt[j - 1].clone()
            } else {
                lin(deltas[j - 1], &rebuilt[j - 1], 0, dj, &rebuilt[j - 2])
            }
        } else {
            lin(deltas[j - 2], &rebuilt[j - 1], 1, dj, &rebuilt[j - 3])
        };
        rebuilt.push(next);
        deltas.push(dj);
    }
    (1..=n).filter(|&j| rebuilt[j] != engine[j]).collect()
}

/// Evaluates the six characterisations of a perfect profile independently.
pub fn plcp_witnesses(s: &Seq<Fp>) -> PlcpWitness {
    plcp_witnesses_with_epsilon(s, 0)
}

pub fn plcp_witnesses_with_epsilon(s: &Seq<Fp>, epsilon: u32) -> PlcpWitness {
    let field = *s.ring();
    let n = s.len();
    let cfg = MpConfig::new(field).with_epsilon(epsilon);
    let mut st = mp_init(&cfg.clone().with_backend(BackendChoice::Dense));
    let mut pairs = vec![st.mu().clone()];
    for t in s.terms() {
        st.step(t);
        pairs.push(st.mu().clone());
    }
    let log = st.log();
    let lc = |j: usize| if j == 0 { 0 } else { log[j - 1].lc };

    let mut d = WitnessFailures::default();
    for j in 1..=n {
        if lc(j) != perfect_lc(j) {
            d.lc.push(j);
        }
        let parity_ok = if j == 1 {
            lc(1) == 1
        } else {
            lc(j) as i64 - lc(j - 1) as i64 == (j % 2) as i64
        };
        if !parity_ok {
            d.parity.push(j);
        }
        if log[j - 1].e() != (j % 2 == 0) as i64 {
            d.exponent.push(j);
        }
        if j % 2 == 1 && log[j - 1].delta == 0 {
            d.odd_delta.push(j);
        }
    }
    // (j-1)' after j-1 terms; for j = n+1 that is the final index
    let prev_index = |i: usize| if i == 0 { -1 } else { log[i - 1].prev_index };
    for j in 2..=n + 1 {
        let want = if j % 2 == 0 { j as i64 - 2 } else { j as i64 - 3 };
        if prev_index(j - 1) != want {
            d.index.push(j);
        }
    }
    d.recursion = recursion_failures(s, epsilon, &pairs);

    PlcpWitness {
        holds_lc: d.lc.is_empty(),
        holds_parity: d.parity.is_empty(),
        holds_exponent: d.exponent.is_empty(),
        holds_odd_delta: d.odd_delta.is_empty(),
        holds_index: d.index.is_empty(),
        holds_recursion: d.recursion.is_empty(),
        details: d,
    }
}

/// Wang-Massey stability: `s_1 = 1` and `s_(j+1) = s_j + s_(j/2)` for even
/// `j` wherever `s_(j+1)` exists. The empty sequence is stable.
pub fn is_stable(s: &Seq<Fp>) -> Result<bool> {
    require_binary(s)?;
    let t = s.terms();
    if t.is_empty() {
        return Ok(true);
    }
    if t[0] != 1 {
        return Ok(false);
    }
    let at = |i: usize| t[i - 1];
    Ok((2..s.len()).step_by(2).all(|j| at(j + 1) == at(j) ^ at(j / 2)))
}

/// Coefficients `t_0..t_n` of `x^0, x^-1, ..., x^-n` in
/// `s_bar^2 + (x+1) s_bar + 1`, where `s_bar = sum s_i x^-i` and terms past
/// `s_n` are taken as 0.
pub fn t_transform(s: &Seq<Fp>) -> Result<Vec<u32>> {
    require_binary(s)?;
    let n = s.len();
    let at = |i: usize| if (1..=n).contains(&i) { s.terms()[i - 1] } else { 0 };
    Ok((0..=n)
        .map(|j| {
            let square = if j % 2 == 0 { at(j / 2) } else { 0 };
            square ^ at(j + 1) ^ at(j) ^ (j == 0) as u32
        })
        .collect())
}

/// Whether the even-index coefficients of [`t_transform`] vanish.
pub fn t_even_vanish(s: &Seq<Fp>) -> Result<bool> {
    let n = s.len();
    let t = t_transform(s)?;
    // t_n involves the unknown s_(n+1)
    Ok(t.iter().enumerate().all(|(j, &v)| j % 2 == 1 || j == n || v == 0))
}

/// `sigma^(j) = (x+1) mu [mu] + mu^2 + [mu]^2` for `mu = mu^(j)` with
/// `epsilon = 0`.
pub fn sigma_poly(s: &Seq<Fp>, j: usize) -> Result<Poly<Fp>> {
    require_binary(s)?;
    let prefix = s.prefix(j)?;
    let st = prefix
        .terms()
        .iter()
        .fold(mp_init(&MpConfig::new(*s.ring()).with_log(false)), |st, t| st.stepped(t));
    Ok(sigma_of(&st))
}

fn sigma_of(st: &DenseState<Fp>) -> Poly<Fp> {
    let (mu, nu) = st.mu();
    let field = *mu.ring();
    let x1 = Poly::new(field, vec![1, 1]);
    &(&(&(&x1 * mu) * nu) + &(mu * mu)) + &(nu * nu)
}

/// `sigma^(0), ..., sigma^(n)` in one pass.
pub fn sigma_sequence(s: &Seq<Fp>) -> Result<Vec<Poly<Fp>>> {
    require_binary(s)?;
    let mut st = mp_init(&MpConfig::new(*s.ring()).with_log(false));
    let mut out = vec![sigma_of(&st)];
    for t in s.terms() {
        st.step(t);
        out.push(sigma_of(&st));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightReport {
    pub height: i64,
    /// First `j` attaining the height (0 for the empty sequence).
    pub argmax_j: usize,
    /// `e_0, ..., e_n`
    pub exponents: Vec<i64>,
}

/// `max e_j` over `0 <= j <= n` with `e_0 = 1`. Only `n = 1`, `s_1 != 0` needs
/// `e_0`: there `e_1 = 0`.
pub fn height(s: &Seq<Fp>) -> HeightReport {
    height_of(&report(s).exponents)
}

pub fn height_of(exponents: &[i64]) -> HeightReport {
    // e_0 = 1 keeps the height at least 1 when n = 1 and s_1 != 0
    let (argmax_j, height) = exponents
        .iter()
        .enumerate()
        .skip(1)
        .fold((0, 1), |(bj, bh), (j, &e)| if e > bh || (bj == 0 && e == bh) { (j, e) } else { (bj, bh) });
    HeightReport {
        height,
        argmax_j,
        exponents: exponents.to_vec(),
    }
}

/// Partial quotients of `N / x^n` with `N = sum s_i x^(n-i)`, by Euclid's
/// algorithm on `(x^n, N)`.
pub fn cf_partial_quotients(s: &Seq<Fp>) -> Result<Vec<Poly<Fp>>> {
    if s.is_all_zero() {
        return Err(Error::InvalidArgument(
            "the zero sequence has no continued fraction".into(),
        ));
    }
    let field = *s.ring();
    let n = s.len();
    let mut a = Poly::monomial(field, 1, n);
    let mut b = Poly::new(field, s.terms().iter().rev().copied().collect());
    let mut out = Vec::new();
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b)?;
        out.push(q);
        a = b;
        b = r;
    }
    Ok(out)
}

/// Largest `e_(j-1)` over the positions `j` where the complexity jumps.
pub fn max_jump_exponent(report: &ProfileReport<Fp>) -> Option<i64> {
    report.jumps.iter().map(|&j| report.exponents[j - 1]).max()
}

/// Jump sizes `e_(j-1)` in order.
pub fn jump_sizes(report: &ProfileReport<Fp>) -> Vec<i64> {
    report.jumps.iter().map(|&j| report.exponents[j - 1]).collect()
}

/// What the continued fraction of a prefix says about its profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfProfile {
    pub quotient_degrees: Vec<usize>,
    /// Number of interior quotients: the least `m` with
    /// `deg Q_m + deg Q_(m+1) > n`, where `Q_i` are the convergent
    /// denominators. `Q_m` is then a minimal polynomial of the prefix and the
    /// later quotients only describe the truncation.
    pub interior: usize,
    /// `deg Q_m`
    pub lc: usize,
    /// `max(deg A_1, ..., deg A_m, n + 1 - 2 deg Q_m)`
    pub height: i64,
}

/// Reads linear complexity and height off the partial quotients alone.
pub fn cf_profile(s: &Seq<Fp>) -> Result<CfProfile> {
    let degs: Vec<usize> = cf_partial_quotients(s)?
        .iter()
        .map(|q| q.deg().expect("quotients are nonzero"))
        .collect();
    let n = s.len();
    // cumulative degrees of the denominators; past the end the next one is
    // unbounded
    let mut d = 0usize;
    let mut m = 0usize;
    loop {
        match degs.get(m) {
            Some(&a) if 2 * d + a <= n => {
                d += a;
                m += 1;
            }
            _ => break,
        }
    }
    let pending = n as i64 + 1 - 2 * d as i64;
    let height = degs[..m].iter().map(|&a| a as i64).fold(pending, i64::max);
    Ok(CfProfile {
        quotient_degrees: degs,
        interior: m,
        lc: d,
        height,
    })
}

/// Whether the interior quotient degrees are exactly the jump sizes of the
/// profile, and the linear complexity and height agree.
pub fn cf_agrees(s: &Seq<Fp>) -> Result<bool> {
    let cf = cf_profile(s)?;
    let rep = report(s);
    let jumps: Vec<i64> = jump_sizes(&rep);
    let interior: Vec<i64> = cf.quotient_degrees[..cf.interior].iter().map(|&a| a as i64).collect();
    Ok(interior == jumps
        && cf.lc == rep.linear_complexity()
        && cf.height == height_of(&rep.exponents).height)
}

/// `(sum LC_i, floor((n+1)^2 / 4))`
pub fn lc_sum(s: &Seq<Fp>) -> (u64, u64) {
    lc_sum_of(&report(s).lc)
}

pub fn lc_sum_of(lc: &[usize]) -> (u64, u64) {
    let n = lc.len() as u64;
    (lc.iter().map(|&l| l as u64).sum(), (n + 1) * (n + 1) / 4)
}

/// The three equivalent conditions: perfect profile; `LC_i <= floor((i+1)/2)`
/// with a maximal sum; `LC_i >= floor((i+1)/2)`.
pub fn char_equivalence(s: &Seq<Fp>) -> (bool, bool, bool) {
    char_equivalence_of(&report(s).lc)
}

pub fn char_equivalence_of(lc: &[usize]) -> (bool, bool, bool) {
    let (sum, bound) = lc_sum_of(lc);
    let perfect = profile_is_perfect(lc);
    let below = lc.iter().enumerate().all(|(i, &l)| l <= perfect_lc(i + 1)) && sum == bound;
    let above = lc.iter().enumerate().all(|(i, &l)| l >= perfect_lc(i + 1));
    (perfect, below, above)
}

/// `(q-1)^ceil(n/2) q^floor(n/2)`
pub fn plcp_count(q: u64, n: usize) -> Result<BigUint> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let q = BigUint::from(q);
    let odd = n.div_ceil(2) as u32;
    let even = (n / 2) as u32;
    Ok((&q - 1u32).pow(odd) * q.pow(even))
}

/// Walks all of `F_q^n` and yields the sequences with a perfect profile.
pub struct PlcpEnumerator {
    field: Fp,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for PlcpEnumerator {
    type Item = Seq<Fp>;

    fn next(&mut self) -> Option<Seq<Fp>> {
        let q = self.field.modulus();
        while !self.done {
            let current = self.digits.clone();
            // odometer, last coordinate fastest
            let mut i = current.len();
            loop {
                if i == 0 {
                    self.done = true;
                    break;
                }
                i -= 1;
                self.digits[i] += 1;
                if self.digits[i] < q {
                    break;
                }
                self.digits[i] = 0;
            }
            if prefix_perfect(self.field, &current) {
                return Some(Seq::new(self.field, current));
            }
        }
        None
    }
}

/// Runs the engine and stops at the first profile violation.
fn prefix_perfect(field: Fp, terms: &[u32]) -> bool {
    let mut st = mp_init(&MpConfig::new(field).with_log(false));
    terms.iter().enumerate().all(|(i, t)| {
        st.step(t);
        st.lc() == perfect_lc(i + 1)
    })
}

pub fn enumerate_plcp(q: u64, n: usize) -> Result<PlcpEnumerator> {
    let field = Fp::new(q)?;
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_LIMIT {
        return Err(Error::Resource(format!(
            "{q}^{n} sequences exceed the enumeration limit {ENUMERATION_LIMIT}"
        )));
    }
    Ok(PlcpEnumerator {
        field,
        digits: vec![0; n],
        done: false,
    })
}

/// The unique sequence whose run produces exactly `deltas`.
///
/// At step `j` the discrepancy is `mu_d s_j + (terms already fixed)`, so
/// `s_j` is solved for by dividing by the leading coefficient of `mu`.
pub fn deltas_to_sequence(deltas: &[u32], config: &MpConfig<Fp>) -> Result<Seq<Fp>> {
    let field = *config.ring();
    for &d in deltas {
        field.parse_elem(&d.to_string())?;
    }
    let mut st = mp_init(&config.clone().with_backend(BackendChoice::Dense).with_log(false));
    let mut terms: Vec<u32> = Vec::with_capacity(deltas.len());
    for (idx, &want) in deltas.iter().enumerate() {
        let j = idx + 1;
        let mu = &st.mu().0;
        let d = mu.deg().expect("minimal polynomial is nonzero");
        let lead_inv = field.inv(&mu.coeff(d)).expect("nonzero in a field");
        let rest = (0..d).fold(0, |acc, k| {
            field.add(&acc, &field.mul(&mu.coeff(k), &terms[j - d + k - 1]))
        });
        let s_j = field.mul(&lead_inv, &field.sub(&want, &rest));
        terms.push(s_j);
        st.step(&s_j);
    }
    Ok(Seq::new(field, terms))
}

/// Machine-readable summary of the analyses of one sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub plcp: bool,
    pub witnesses: PlcpWitness,
    /// Only defined over F_2.
    pub stable: Option<bool>,
    pub height: i64,
    pub lc_sum: u64,
    pub lc_sum_bound: u64,
    pub char_equivalence: [bool; 3],
}

pub fn analyze(s: &Seq<Fp>) -> AnalysisReport {
    let rep = report(s);
    let (lc_sum, lc_sum_bound) = lc_sum_of(&rep.lc);
    let (a, b, c) = char_equivalence_of(&rep.lc);
    AnalysisReport {
        plcp: profile_is_perfect(&rep.lc),
        witnesses: plcp_witnesses(s),
        stable: is_stable(s).ok(),
        height: height_of(&rep.exponents).height,
        lc_sum,
        lc_sum_bound,
        char_equivalence: [a, b, c],
    }
}

/// `sum_{i=k+1}^{k+2l} floor((i+1)/2)` by direct summation.
pub fn perfect_block_sum(k: i64, l: i64) -> i64 {
    (k + 1..=k + 2 * l).map(|i| (i + 1).div_euclid(2)).sum()
}

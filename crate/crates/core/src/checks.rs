//! Named verification suites shared by the command line and the test
//! targets. Random cases draw from per-case ChaCha streams, so a suite's
//! verdict and counterexample do not depend on thread scheduling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff_poly::{Fp, Seq};
use crate::error::{Error, Result};
use crate::mp_engine::{
    annihilates, bezout_check, brute_force_minpoly, mp_init, mp_run, BackendChoice, MpConfig,
};
use crate::rueppel::{
    gamma_pair_rules, gamma_power_of_two, gamma_single_rules, lemma_r0_check, rueppel_closed_form_sweep,
    rueppel_matrix_sweep, rueppel_profile_sweep, GammaTable,
};
use crate::seq_analysis::{
    cf_agrees, char_equivalence, enumerate_plcp, height, is_plcp, is_stable, lc_sum,
    perfect_block_sum, plcp_count, plcp_witnesses, t_even_vanish, ENUMERATION_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Oracle,
    Bezout,
    Plcp,
    PlcpCount,
    WangMassey,
    Rueppel,
    Height,
    Lcsum,
    Cf,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Oracle,
        Suite::Bezout,
        Suite::Plcp,
        Suite::PlcpCount,
        Suite::WangMassey,
        Suite::Rueppel,
        Suite::Height,
        Suite::Lcsum,
        Suite::Cf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Bezout => "bezout",
            Suite::Plcp => "plcp",
            Suite::PlcpCount => "plcp-count",
            Suite::WangMassey => "wang-massey",
            Suite::Rueppel => "rueppel",
            Suite::Height => "height",
            Suite::Lcsum => "lcsum",
            Suite::Cf => "cf",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::InvalidArgument(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyParams {
    pub field: u64,
    pub trials: usize,
    pub max_n: usize,
    pub seed: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            field: 2,
            trials: 1000,
            max_n: 12,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub cases: u64,
    /// First failing case in case order.
    pub counterexample: Option<String>,
}

/// Per-case random stream.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

pub fn random_seq(rng: &mut ChaCha8Rng, field: Fp, n: usize) -> Seq<Fp> {
    let q = field.modulus();
    Seq::new(field, (0..n).map(|_| rng.gen_range(0..q)).collect())
}

/// All of `F_q^n` in lexicographic order, as the `index`-th sequence.
pub fn nth_sequence(field: Fp, n: usize, mut index: u64) -> Seq<Fp> {
    let q = field.modulus() as u64;
    let mut terms = vec![0u32; n];
    for slot in terms.iter_mut().rev() {
        *slot = (index % q) as u32;
        index /= q;
    }
    Seq::new(field, terms)
}

fn exhaustive_total(q: u64, lengths: impl Iterator<Item = usize>) -> Result<u64> {
    let mut total: u128 = 0;
    for n in lengths {
        total += (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > ENUMERATION_LIMIT {
            return Err(Error::Resource(format!(
                "exhaustive sweep over F_{q} exceeds {ENUMERATION_LIMIT} sequences"
            )));
        }
    }
    Ok(total as u64)
}

/// Runs `check` on cases `0..count` in parallel; the verdict is the first
/// failure by case index. Errors abort the suite.
fn sweep<F>(suite: Suite, count: u64, check: F) -> Result<VerifyOutcome>
where
    F: Fn(u64) -> Result<Option<String>> + Sync,
{
    let failures: Vec<(u64, String)> = (0..count)
        .into_par_iter()
        .map(|i| check(i).map(|r| r.map(|msg| (i, msg))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let first = failures.into_iter().min_by_key(|(i, _)| *i);
    Ok(VerifyOutcome {
        suite,
        passed: first.is_none(),
        cases: count,
        counterexample: first.map(|(_, m)| m),
    })
}

/// Exhaustive sequences of every length in `lengths`, flattened into one
/// case index space.
fn exhaustive_cases(field: Fp, lengths: &[usize]) -> Result<(u64, impl Fn(u64) -> Seq<Fp> + Sync + '_)> {
    let q = field.modulus() as u64;
    let total = exhaustive_total(q, lengths.iter().copied())?;
    let lookup = move |mut i: u64| {
        for &n in lengths {
            let size = q.pow(n as u32);
            if i < size {
                return nth_sequence(field, n, i);
            }
            i -= size;
        }
        unreachable!("case index beyond the sweep")
    };
    Ok((total, lookup))
}

fn fail_if(bad: bool, what: impl FnOnce() -> String) -> Option<String> {
    bad.then(what)
}

fn oracle_case(s: &Seq<Fp>) -> Result<Option<String>> {
    let (_, rep) = mp_run(s, &MpConfig::new(*s.ring()));
    let (d, _) = brute_force_minpoly(s)?;
    Ok(fail_if(
        rep.linear_complexity() != d || !annihilates(&rep.minpoly, s),
        || format!("s=({s}): engine LC {} vs brute force {d}", rep.linear_complexity()),
    ))
}

fn run_oracle(p: &VerifyParams, field: Fp) -> Result<VerifyOutcome> {
    if field.modulus() == 2 {
        let lengths: Vec<usize> = (0..=p.max_n).collect();
        let (total, lookup) = exhaustive_cases(field, &lengths)?;
        return sweep(Suite::Oracle, total, |i| oracle_case(&lookup(i)));
    }
    sweep(Suite::Oracle, p.trials as u64, |i| {
        let mut rng = case_rng(p.seed, i);
        let n = rng.gen_range(0..=p.max_n);
        oracle_case(&random_seq(&mut rng, field, n))
    })
}

fn run_bezout(p: &VerifyParams, field: Fp) -> Result<VerifyOutcome> {
    sweep(Suite::Bezout, p.trials as u64, |i| {
        let mut rng = case_rng(p.seed, i);
        let n = rng.gen_range(1..=p.max_n.max(1));
        let s = random_seq(&mut rng, field, n);
        let eps = rng.gen_range(0..field.modulus());
        let cfg = MpConfig::new(field)
            .with_epsilon(eps)
            .with_backend(BackendChoice::Dense)
            .with_log(false);
        let mut st = mp_init(&cfg);
        for (j, t) in s.terms().iter().enumerate() {
            st.step(t);
            if !bezout_check(&st) {
                return Ok(Some(format!("s=({s}) eps={eps}: fails after {} terms", j + 1)));
            }
        }
        Ok(None)
    })
}

fn plcp_case(s: &Seq<Fp>) -> Option<String> {
    let w = plcp_witnesses(s);
    fail_if(!w.consistent() || w.holds_lc != is_plcp(s), || {
        format!("s=({s}): witnesses {:?}", w.all())
    })
}

fn run_plcp(p: &VerifyParams, field: Fp) -> Result<VerifyOutcome> {
    let lengths: Vec<usize> = (0..=p.max_n).collect();
    let exhaustive = exhaustive_cases(field, &lengths);
    match exhaustive {
        Ok((total, lookup)) => sweep(Suite::Plcp, total, |i| Ok(plcp_case(&lookup(i)))),
        Err(_) => sweep(Suite::Plcp, p.trials as u64, |i| {
            let mut rng = case_rng(p.seed, i);
            let n = rng.gen_range(0..=p.max_n);
            Ok(plcp_case(&random_seq(&mut rng, field, n)))
        }),
    }
}

fn run_plcp_count(p: &VerifyParams, field: Fp) -> Result<VerifyOutcome> {
    let q = field.modulus() as u64;
    exhaustive_total(q, 1..=p.max_n)?;
    sweep(Suite::PlcpCount, p.max_n as u64, |i| {
        let n = i as usize + 1;
        let found = enumerate_plcp(q, n)?.count();
        let want = plcp_count(q, n)?;
        Ok(fail_if(num_bigint::BigUint::from(found) != want, || {
            format!("q={q} n={n}: enumerated {found}, formula {want}")
        }))
    })
}

fn run_wang_massey(p: &VerifyParams) -> Result<VerifyOutcome> {
    let field = Fp::new(2)?;
    let lengths: Vec<usize> = (1..=p.max_n).step_by(2).collect();
    let (total, lookup) = exhaustive_cases(field, &lengths)?;
    sweep(Suite::WangMassey, total, |i| {
        let s = lookup(i);
        let (a, b, c) = (is_plcp(&s), is_stable(&s)?, t_even_vanish(&s)?);
        Ok(fail_if(a != b || b != c, || {
            format!("s=({s}): plcp={a} stable={b} t-criterion={c}")
        }))
    })
}

fn run_rueppel(p: &VerifyParams) -> Result<VerifyOutcome> {
    let n = p.max_n.max(3);
    let mut cases = 0u64;
    let fail = |cases: u64, msg: String| {
        Ok(VerifyOutcome {
            suite: Suite::Rueppel,
            passed: false,
            cases,
            counterexample: Some(msg),
        })
    };
    if let Err(k) = rueppel_profile_sweep(n) {
        return fail(cases, format!("profile breaks at n={k}"));
    }
    cases += n as u64;
    if let Err(k) = rueppel_matrix_sweep(n) {
        return fail(cases, format!("matrix pattern breaks at n={k}"));
    }
    cases += n as u64;
    if let Err(k) = rueppel_closed_form_sweep(n) {
        return fail(cases, format!("closed form breaks at n={k}"));
    }
    cases += n as u64;
    let mut k = 1;
    while (1usize << k) <= n && k <= 10 {
        if !lemma_r0_check(k)? {
            return fail(cases, format!("lemma_r0_check fails at k={k}"));
        }
        cases += 1;
        k += 1;
    }
    let mut table = GammaTable::with_len(n);
    if let Some(k) = (0..=n).into_par_iter().find_first(|&k| !gamma_single_rules(&table, k)) {
        return fail(cases, format!("gamma fails its degree/gcd rules at k={k}"));
    }
    cases += n as u64 + 1;
    let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|m| (0..=m.min(n - m)).map(move |j| (m, j))).collect();
    if let Some((m, j)) = pairs.par_iter().copied().find_first(|&(m, j)| !gamma_pair_rules(&table, m, j)) {
        return fail(cases, format!("gamma addition rule fails at ({m},{j})"));
    }
    cases += pairs.len() as u64;
    let mut k = 0;
    while (1usize << k) <= n {
        if !gamma_power_of_two(&mut table, k) {
            return fail(cases, format!("power-of-two gamma fails at k={k}"));
        }
        cases += 1;
        k += 1;
    }
    Ok(VerifyOutcome {
        suite: Suite::Rueppel,
        passed: true,
        cases,
        counterexample: None,
    })
}

fn run_height(p: &VerifyParams, field: Fp) -> Result<VerifyOutcome> {
    sweep(Suite::Height, p.trials as u64, |i| {
        let mut rng = case_rng(p.seed, i);
        let n = rng.gen_range(1..=p.max_n.max(1));
        let s = random_seq(&mut rng, field, n);
        let h = height(&s);
        let mut running = 1;
        for (j, &e) in h.exponents.iter().enumerate().skip(1) {
            running = running.max(e);
            if e < 1 - running {
                return Ok(Some(format!("s=({s}): e_{j}={e} below 1-hgt")));
            }
        }
        Ok(fail_if((h.height == 1) != is_plcp(&s), || {
            format!("s=({s}): height {} but plcp={}", h.height, is_plcp(&s))
        }))
    })
}

fn run_lcsum(p: &VerifyParams, field: Fp) -> Result<VerifyOutcome> {
    for k in -1..=20 {
        for l in 1..=20 {
            if perfect_block_sum(k, l) != l * l + (k + 1) * l {
                return Ok(VerifyOutcome {
                    suite: Suite::Lcsum,
                    passed: false,
                    cases: 0,
                    counterexample: Some(format!("block sum k={k} l={l}")),
                });
            }
        }
    }
    sweep(Suite::Lcsum, p.trials as u64, |i| {
        let mut rng = case_rng(p.seed, i);
        let n = rng.gen_range(0..=p.max_n);
        let s = random_seq(&mut rng, field, n);
        let (sum, bound) = lc_sum(&s);
        let (a, b, c) = char_equivalence(&s);
        Ok(fail_if(sum > bound || a != b || b != c, || {
            format!("s=({s}): sum {sum} bound {bound} char ({a},{b},{c})")
        }))
    })
}

fn run_cf(p: &VerifyParams, field: Fp) -> Result<VerifyOutcome> {
    sweep(Suite::Cf, p.trials as u64, |i| {
        let mut rng = case_rng(p.seed, i);
        let mut s = random_seq(&mut rng, field, p.max_n.max(1));
        if s.is_all_zero() {
            let mut t = s.terms().to_vec();
            t[0] = 1;
            s = Seq::new(field, t);
        }
        Ok(fail_if(!cf_agrees(&s)?, || format!("s=({s})")))
    })
}

pub fn run_suite(suite: Suite, params: &VerifyParams) -> Result<VerifyOutcome> {
    let field = Fp::new(params.field)?;
    match suite {
        Suite::Oracle => run_oracle(params, field),
        Suite::Bezout => run_bezout(params, field),
        Suite::Plcp => run_plcp(params, field),
        Suite::PlcpCount => run_plcp_count(params, field),
        Suite::WangMassey => run_wang_massey(params),
        Suite::Rueppel => run_rueppel(params),
        Suite::Height => run_height(params, field),
        Suite::Lcsum => run_lcsum(params, field),
        Suite::Cf => run_cf(params, field),
    }
}

//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use lcprof::render::profile_table;
use lcprof_core::coeff_poly::{poly_gcd, Fp, Poly, Ring, Seq};
use lcprof_core::mp_engine::{
    annihilates, brute_force_minpoly, mp_init, mp_run, mp_trace, state_matrix, BackendChoice,
    MpConfig, PolyMatrix, ProfileReport,
};
use lcprof_core::rueppel::{
    gamma_pair_rules, gamma_power_of_two, gamma_single_rules, lemma_r0_check,
    rueppel_closed_form_sweep, rueppel_matrix_sweep, rueppel_profile_sweep, rueppel_terms,
    GammaTable,
};
use lcprof_core::seq_analysis::{
    cf_agrees, cf_partial_quotients, char_equivalence, enumerate_plcp, height, is_plcp, is_stable,
    max_jump_exponent, perfect_block_sum, plcp_count, t_even_vanish,
};

const R6: [i64; 6] = [1, 1, 0, 1, 0, 0];

const TABLE_R6: &str = "\
j  Delta_j  e_{j-1}  mu^(j)     mu'^(j)
0  1                 1          0
1  1        0        x          1
2  1        1        x+1        1
3  1        0        x^2+x+1    x+1
4  0        1        x^2+x+1    x+1
5  1        0        x^3+x^2+1  x^2+x+1
6  0        1        x^3+x^2+1  x^2+x+1
";

type Verdict = Result<String, String>;

/// Sequences from criteria 3-8 whose profile sum was compared with
/// `floor((n+1)^2/4)`, and the first one above it.
static LC_SUM_CHECKED: AtomicU64 = AtomicU64::new(0);
static LC_SUM_VIOLATION: Mutex<Option<String>> = Mutex::new(None);

fn record_lc_sum(s: &Seq<Fp>, lc: &[usize]) {
    let n = lc.len() as u64;
    let sum: u64 = lc.iter().map(|&l| l as u64).sum();
    LC_SUM_CHECKED.fetch_add(1, Ordering::Relaxed);
    if sum > (n + 1) * (n + 1) / 4 {
        LC_SUM_VIOLATION.lock().unwrap().get_or_insert_with(|| format!("({s}) sums to {sum}"));
    }
}

fn f(p: u64) -> Fp {
    Fp::new(p).unwrap()
}

fn all_sequences(field: Fp, n: usize) -> impl Iterator<Item = Seq<Fp>> {
    let q = field.modulus() as u64;
    (0..q.pow(n as u32)).map(move |mut i| {
        let mut t = vec![0u32; n];
        for slot in t.iter_mut() {
            *slot = (i % q) as u32;
            i /= q;
        }
        Seq::new(field, t)
    })
}

fn random_seq(rng: &mut ChaCha8Rng, field: Fp, n: usize) -> Seq<Fp> {
    let q = field.modulus();
    Seq::new(field, (0..n).map(|_| rng.gen_range(0..q)).collect())
}

fn run(s: &Seq<Fp>) -> ProfileReport<Fp> {
    mp_run(s, &MpConfig::new(*s.ring())).1
}

fn perfect(lc: &[usize]) -> bool {
    lc.iter().enumerate().all(|(i, &l)| l == (i + 2) / 2)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Median of `reps` timings.
fn median_time(reps: usize, mut f: impl FnMut()) -> Duration {
    let mut t: Vec<Duration> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .collect();
    t.sort();
    t[reps / 2]
}

fn profile_table_exact() -> Verdict {
    let field = f(2);
    let s = Seq::from_i64s(field, &R6);
    let config = MpConfig::new(field);
    let mut text = String::new();
    let t = median_time(11, || {
        let (_, report) = mp_run(&s, &config);
        text = profile_table(&s, &report, &config);
    });
    ensure(text == TABLE_R6, || format!("table differs:\n{text}"))?;
    let out = Command::new(env!("CARGO_BIN_EXE_lcprof"))
        .args(["profile", "--field", "2", "--seq", "1,1,0,1,0,0"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success() && out.stdout == TABLE_R6.as_bytes(), || {
        format!("binary printed:\n{}", String::from_utf8_lossy(&out.stdout))
    })?;
    ensure(t < Duration::from_millis(1), || format!("took {t:?}"))?;
    Ok(format!("table exact, {t:?} in process"))
}

fn example_matrices() -> Verdict {
    let field = f(2);
    let s = Seq::from_i64s(field, &R6);
    let p = |t: &str| Poly::parse(field, t).unwrap();
    let m = |a, b, c, d| PolyMatrix::new(p(a), p(b), p(c), p(d));
    let want = [
        (1, m("x", "1", "1", "0")),
        (2, m("x+1", "1", "1", "0")),
        (3, m("x^2+x+1", "x", "x+1", "1")),
        (4, m("x^2+x+1", "x", "x+1", "1")),
    ];
    let mut trace = Vec::new();
    let t = median_time(11, || trace = mp_trace(&s, &MpConfig::new(field)));
    for (j, w) in &want {
        ensure(&trace[*j] == w, || format!("M^({j}) = {:?}", trace[*j]))?;
    }
    ensure(t < Duration::from_millis(1), || format!("took {t:?}"))?;
    Ok(format!("M^(1..4) exact, {t:?}"))
}

fn oracle_case(s: &Seq<Fp>) -> Result<(), String> {
    let rep = run(s);
    let (d, _) = brute_force_minpoly(s).map_err(|e| e.to_string())?;
    record_lc_sum(s, &rep.lc);
    ensure(rep.linear_complexity() == d && annihilates(&rep.minpoly, s), || {
        format!("({s}): LC {} vs minimal degree {d}", rep.linear_complexity())
    })
}

fn oracle_equivalence() -> Verdict {
    let binary: Vec<Seq<Fp>> = (0..=10).flat_map(|n| all_sequences(f(2), n)).collect();
    binary.par_iter().try_for_each(oracle_case)?;
    let mut random = Vec::new();
    for (p, seed) in [(3, 31), (5, 51)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..500 {
            let n = rng.gen_range(0..=8);
            random.push(random_seq(&mut rng, f(p), n));
        }
    }
    random.par_iter().try_for_each(oracle_case)?;
    Ok(format!("{} binary + {} random over F_3/F_5", binary.len(), random.len()))
}

fn bezout_case(field: Fp, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=64);
    let s = random_seq(&mut rng, field, n);
    let eps = rng.gen_range(0..field.modulus());
    let mut st = mp_init(&MpConfig::new(field).with_epsilon(eps).with_log(false));
    let one = Poly::one(field);
    let mut lc = Vec::with_capacity(n);
    for (j, t) in s.terms().iter().enumerate() {
        st.step(t);
        lc.push(st.lc());
        let m = state_matrix(&st);
        let minus_nabla = Poly::constant(field, field.neg(st.nabla()));
        let gcd_ok = |a: &Poly<Fp>, b: &Poly<Fp>| poly_gcd(a, b).map(|g| g == one).unwrap_or(false);
        ensure(
            m.det() == minus_nabla && gcd_ok(m.get(0, 0), m.get(0, 1)) && gcd_ok(m.get(0, 0), m.get(1, 0)),
            || format!("({s}) eps={eps} fails at j={}", j + 1),
        )?;
    }
    record_lc_sum(&s, &lc);
    Ok(())
}

fn bezout_ledger() -> Verdict {
    let fields = [f(2), f(3), f(5)];
    (0..10_000u64)
        .into_par_iter()
        .try_for_each(|i| bezout_case(fields[(i % 3) as usize], 0xb0 + i))?;
    Ok("10^4 runs, n <= 64, every step".into())
}

fn plcp_counting() -> Verdict {
    let cases: Vec<(u64, usize)> = (1..=14).map(|n| (2, n)).chain((1..=8).map(|n| (3, n))).collect();
    cases.par_iter().try_for_each(|&(q, n)| {
        let enumerated = enumerate_plcp(q, n).map_err(|e| e.to_string())?.count() as u128;
        let direct = all_sequences(f(q), n)
            .filter(|s| {
                let rep = run(s);
                record_lc_sum(s, &rep.lc);
                perfect(&rep.lc)
            })
            .count() as u128;
        let formula = (q as u128 - 1).pow(n.div_ceil(2) as u32) * (q as u128).pow(n as u32 / 2);
        let lib = plcp_count(q, n).map_err(|e| e.to_string())?;
        ensure(
            enumerated == formula && direct == formula && lib == BigUint::from(formula),
            || format!("q={q} n={n}: enumerated {enumerated}, direct {direct}, formula {formula}, library {lib}"),
        )
    })?;
    Ok(format!("{} (q, n) pairs", cases.len()))
}

fn wang_massey() -> Verdict {
    let seqs: Vec<Seq<Fp>> = (1..=15).step_by(2).flat_map(|n| all_sequences(f(2), n)).collect();
    seqs.par_iter().try_for_each(|s| {
        let rep = run(s);
        record_lc_sum(s, &rep.lc);
        let plcp = perfect(&rep.lc);
        let stable = is_stable(s).map_err(|e| e.to_string())?;
        let t = t_even_vanish(s).map_err(|e| e.to_string())?;
        ensure(plcp == stable && stable == t && plcp == is_plcp(s), || {
            format!("({s}): plcp={plcp} stable={stable} t={t}")
        })
    })?;
    Ok(format!("{} sequences of odd length <= 15", seqs.len()))
}

fn rueppel() -> Verdict {
    let r = rueppel_terms(4096);
    let positions_ok = r.terms().iter().enumerate().all(|(i, &t)| (t == 1) == (i + 1).is_power_of_two());
    ensure(positions_ok, || "r has ones away from powers of two".into())?;
    let rep = run(&r);
    record_lc_sum(&r, &rep.lc);
    ensure(perfect(&rep.lc), || "LC_n(r) is not floor((n+1)/2)".into())?;
    rueppel_profile_sweep(4096).map_err(|n| format!("profile sweep fails at n={n}"))?;
    rueppel_matrix_sweep(512).map_err(|n| format!("matrix pattern fails at n={n}"))?;
    rueppel_closed_form_sweep(1025).map_err(|n| format!("closed form fails at n={n}"))?;
    for k in 1..=10 {
        ensure(lemma_r0_check(k).map_err(|e| e.to_string())?, || format!("lemma_r0_check({k})"))?;
    }
    let table = GammaTable::with_len(1024);
    if let Some(k) = (0..=1024).into_par_iter().find_first(|&k| !gamma_single_rules(&table, k)) {
        return Err(format!("gamma rules fail at k={k}"));
    }
    let pairs: Vec<(usize, usize)> = (0..=1024usize)
        .flat_map(|m| (0..=m.min(1024 - m)).map(move |n| (m, n)))
        .collect();
    if let Some((m, n)) = pairs.par_iter().copied().find_first(|&(m, n)| !gamma_pair_rules(&table, m, n)) {
        return Err(format!("gamma addition fails at ({m},{n})"));
    }
    let mut table = table;
    for k in 0..=10 {
        ensure(gamma_power_of_two(&mut table, k), || format!("gamma^(2^{k})"))?;
    }
    Ok(format!("LC to 4096, matrices to 512, closed form to 1025, {} gamma pairs", pairs.len()))
}

fn height_checks() -> Verdict {
    // every prefix of r from one run
    let r = rueppel_terms(4096);
    let rep = run(&r);
    let mut running = 1;
    for (n, &e) in rep.exponents.iter().enumerate().skip(1) {
        running = running.max(e);
        ensure(running == 1, || format!("hgt(r^({n})) = {running}"))?;
    }
    let seqs: Vec<Seq<Fp>> = (1..=14).flat_map(|n| all_sequences(f(2), n)).collect();
    seqs.par_iter().try_for_each(|s| {
        let rep = run(s);
        record_lc_sum(s, &rep.lc);
        let h = height(s).height;
        ensure((h == 1) == perfect(&rep.lc), || format!("({s}): height {h}"))
    })?;
    let fields = [f(2), f(3), f(5)];
    (0..1000u64).into_par_iter().try_for_each(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x4e + i);
        let n = rng.gen_range(1..=64);
        let s = random_seq(&mut rng, fields[(i % 3) as usize], n);
        let rep = run(&s);
        record_lc_sum(&s, &rep.lc);
        let h = height(&s).height;
        ensure(rep.exponents[1..].iter().all(|&e| h >= e && e >= 1 - h), || {
            format!("({s}): exponents outside [1-{h}, {h}]")
        })
    })?;
    let mut literal = Vec::new();
    for (p, seed) in [(2u64, 2u64), (3, 3)] {
        let field = f(p);
        let mut rng = ChaCha8Rng::seed_from_u64(0xcf00 + seed);
        let mut held = 0;
        for _ in 0..200 {
            let mut s = random_seq(&mut rng, field, 64);
            if s.terms()[0] == 0 {
                let mut t = s.terms().to_vec();
                t[0] = rng.gen_range(1..field.modulus());
                s = Seq::new(field, t);
            }
            let rep = run(&s);
            record_lc_sum(&s, &rep.lc);
            ensure(cf_agrees(&s).map_err(|e| e.to_string())?, || format!("continued fraction disagrees on ({s})"))?;
            let q = cf_partial_quotients(&s).map_err(|e| e.to_string())?;
            let all_but_last = q[..q.len() - 1].iter().filter_map(|a| a.deg()).max().map(|d| d as i64);
            held += usize::from(all_but_last == max_jump_exponent(&rep));
        }
        literal.push(format!("F_{p} {held}/200"));
    }
    Ok(format!(
        "r to 4096, {} exhaustive, 1000 bounds, 400 continued fractions (max over all but the last quotient matched: {})",
        seqs.len(),
        literal.join(", ")
    ))
}

fn lc_sum_checks() -> Verdict {
    let checked = LC_SUM_CHECKED.load(Ordering::Relaxed);
    if let Some(v) = LC_SUM_VIOLATION.lock().unwrap().clone() {
        return Err(format!("bound exceeded: {v}"));
    }
    ensure(checked > 100_000, || format!("only {checked} sequences reached the bound check"))?;
    let seqs: Vec<Seq<Fp>> = (0..=12).flat_map(|n| all_sequences(f(2), n)).collect();
    seqs.par_iter().try_for_each(|s| {
        let (a, b, c) = char_equivalence(s);
        ensure(a == b && b == c && a == perfect(&run(s).lc), || format!("({s}): {a} {b} {c}"))
    })?;
    for k in -1..=20i64 {
        for l in 1..=20i64 {
            let direct: i64 = (k + 1..=k + 2 * l).map(|i| (i + 1).div_euclid(2)).sum();
            ensure(perfect_block_sum(k, l) == direct && direct == l * l + (k + 1) * l, || {
                format!("block sum k={k} l={l}")
            })?;
        }
    }
    for (terms, sum, lc) in [(&[1, 1, 1][..], 3, 1), (&[1, 1, 1, 0], 6, 3)] {
        let rep = run(&Seq::from_i64s(f(2), terms));
        let got: usize = rep.lc.iter().sum();
        ensure(got == sum && rep.linear_complexity() == lc, || format!("{terms:?}: sum {got}"))?;
    }
    Ok(format!("{checked} sequences under the bound, {} exhaustive", seqs.len()))
}

fn performance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfa57);
    let s2 = random_seq(&mut rng, f(2), 1 << 15);
    let start = Instant::now();
    let (_, rep) = mp_run(&s2, &MpConfig::new(f(2)).with_log(false));
    let packed = start.elapsed();
    ensure(rep.n() == 1 << 15, || "short run".into())?;
    let fp = f(65521);
    let sp = random_seq(&mut rng, fp, 4096);
    let start = Instant::now();
    let (_, rep) = mp_run(&sp, &MpConfig::new(fp).with_backend(BackendChoice::Dense).with_log(false));
    let generic = start.elapsed();
    ensure(annihilates(&rep.minpoly, &sp), || "F_p run is wrong".into())?;
    ensure(packed < Duration::from_secs(5) && generic < Duration::from_secs(10), || {
        format!("F_2 2^15: {packed:?}, F_65521 4096: {generic:?}")
    })?;
    Ok(format!("F_2 n=2^15 packed {packed:?}, F_65521 n=4096 generic {generic:?}"))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Verdict); 10] = [
        (1, "profile table", 1, profile_table_exact),
        (2, "example matrices", 1, example_matrices),
        (3, "oracle equivalence", 60, oracle_equivalence),
        (4, "determinant and coprimality ledger", 60, bezout_ledger),
        (5, "perfect-profile counting", 120, plcp_counting),
        (6, "stability equivalences", 120, wang_massey),
        (7, "Rueppel closed forms", 60, rueppel),
        (8, "height", 60, height_checks),
        (9, "profile sums", 60, lc_sum_checks),
        (10, "performance", 15, performance),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let verdict = check();
        let took = start.elapsed();
        let verdict = verdict.and_then(|msg| {
            if took > Duration::from_secs(budget) {
                Err(format!("{msg}; exceeded {budget} s"))
            } else {
                Ok(msg)
            }
        });
        match verdict {
            Ok(msg) => println!("PASS criterion {id} ({name}): {msg} [{:.2} s]", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}): {msg} [{:.2} s]", took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! `lcprof`: linear-complexity profiles and structural checks from the
//! command line.
//!
//! Exit codes: 0 success, 2 input error, 3 verification failure, 4 resource
//! guard tripped.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use lcprof_core::checks::{run_suite, Suite, VerifyParams};
use lcprof_core::coeff_poly::{Fp, Ring, Seq};
use lcprof_core::mp_engine::{annihilates, mp_run, MpConfig, ProfileJson};
use lcprof_core::rueppel::{expected_matrix, gamma, rueppel_mp, rueppel_terms, GammaTable};
use lcprof_core::seq_analysis::{
    analyze, char_equivalence, enumerate_plcp, height, is_plcp, is_stable, lc_sum, plcp_count,
};
use lcprof::{input, render};
use lcprof_core::Error;

/// Longest sequence accepted by the per-sequence commands.
const DEFAULT_MAX_N: usize = 1 << 20;
/// Largest index accepted by `rueppel` and `gamma`.
const MAX_INDEX: usize = 1 << 16;

#[derive(Parser)]
#[command(name = "lcprof", version, about = "Minimal polynomials and linear-complexity profiles over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SeqArgs {
    /// Prime field size
    #[arg(long, default_value_t = 2)]
    field: u64,
    #[arg(long, default_value = "0")]
    epsilon: String,
    /// Inline sequence, comma or space separated
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    seq: Option<String>,
    /// File with one sequence per line
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Reject sequences longer than this
    #[arg(long = "max-n", default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Step-by-step table of the recursion
    Profile(SeqArgs),
    /// Linear complexity and monic minimal polynomial
    Minpoly(SeqArgs),
    /// Perfect-profile test with its six equivalent witnesses
    PlcpCheck(SeqArgs),
    /// Closed-form count of perfect-profile sequences in F_q^n
    PlcpCount {
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Lists every perfect-profile sequence in F_q^n
    PlcpEnum {
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Binary stability test
    Stable(SeqArgs),
    /// Height and the exponent where it is reached
    Height(SeqArgs),
    /// Sum of the profile against its bound
    Lcsum(SeqArgs),
    /// Profile and closed forms for the Rueppel prefix of length n
    Rueppel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// The polynomial gamma^(n)
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Runs a named verification suite
    Verify {
        #[arg(value_name = "SUITE")]
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        suite: Option<String>,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Verify(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(_) => Failure::Resource(e.to_string()),
            Error::Parse(_)
            | Error::Range { .. }
            | Error::NotPrime(_)
            | Error::InvalidArgument(_)
            | Error::Index { .. }
            | Error::UnsupportedDomain { .. } => Failure::Input(e.to_string()),
            other => Failure::Verify(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Verify(format!("write failed: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Input {
    field: Fp,
    epsilon: u32,
    seqs: Vec<Seq<Fp>>,
}

impl SeqArgs {
    fn load(&self) -> std::result::Result<Input, Failure> {
        let field = Fp::new(self.field)?;
        let epsilon = field.parse_elem(&self.epsilon)?;
        let seqs = match (&self.seq, &self.input) {
            (Some(text), None) => vec![input::parse_sequence(text, field)?],
            (None, Some(path)) => input::read_sequences(path, field)?,
            _ => return Err(Failure::Input("give exactly one of --seq or --in".into())),
        };
        if let Some(s) = seqs.iter().find(|s| s.len() > self.max_n) {
            return Err(Failure::Resource(format!(
                "sequence of length {} exceeds --max-n {}",
                s.len(),
                self.max_n
            )));
        }
        Ok(Input { field, epsilon, seqs })
    }
}

fn emit_json<T: Serialize, W: Write + ?Sized>(out: &mut W, value: &T) -> Outcome {
    let text = serde_json::to_string(value).map_err(|e| Failure::Verify(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Text blocks for several sequences are separated by a blank line.
fn each<F>(args: &SeqArgs, out: &mut impl Write, mut f: F) -> Outcome
where
    F: FnMut(&Input, &Seq<Fp>, &mut dyn Write) -> Outcome,
{
    let input = args.load()?;
    for (i, s) in input.seqs.iter().enumerate() {
        if i > 0 && !args.json {
            writeln!(out)?;
        }
        f(&input, s, out)?;
    }
    Ok(())
}

fn profile(args: &SeqArgs, out: &mut impl Write) -> Outcome {
    let json = args.json;
    each(args, out, |input, s, out| {
        let config = MpConfig::new(input.field).with_epsilon(input.epsilon);
        let (_, report) = mp_run(s, &config);
        if !annihilates(&report.minpoly, s) {
            return Err(Failure::Verify(format!("minimal polynomial does not annihilate ({s})")));
        }
        if json {
            let text = serde_json::to_string(&ProfileJson::from_report(&report))
                .map_err(|e| Failure::Verify(e.to_string()))?;
            writeln!(out, "{text}")?;
        } else {
            write!(out, "{}", render::profile_table(s, &report, &config))?;
        }
        Ok(())
    })
}

fn minpoly(args: &SeqArgs, out: &mut impl Write) -> Outcome {
    let json = args.json;
    each(args, out, |input, s, out| {
        let config = MpConfig::new(input.field)
            .with_epsilon(input.epsilon)
            .with_monic_output(true)?;
        let (_, report) = mp_run(s, &config);
        if !annihilates(&report.minpoly, s) {
            return Err(Failure::Verify(format!("minimal polynomial does not annihilate ({s})")));
        }
        let lc = report.linear_complexity();
        if json {
            let v = json!({ "lc": lc, "minpoly": report.minpoly.coeffs() });
            writeln!(out, "{v}")?;
        } else {
            writeln!(out, "lc: {lc}")?;
            writeln!(out, "minpoly: {}", report.minpoly)?;
        }
        Ok(())
    })
}

fn plcp_check(args: &SeqArgs, out: &mut impl Write) -> Outcome {
    let json = args.json;
    each(args, out, |input, s, out| {
        let w = lcprof_core::seq_analysis::plcp_witnesses_with_epsilon(s, input.epsilon);
        if !w.consistent() || w.holds_lc != is_plcp(s) {
            return Err(Failure::Verify(format!("witnesses disagree on ({s}): {:?}", w.all())));
        }
        if json {
            return emit_json(out, &analyze(s));
        }
        let names = ["lc", "parity", "exponent", "odd-delta", "index", "recursion"];
        writeln!(out, "plcp: {}", w.holds_lc)?;
        for (name, ok) in names.iter().zip(w.all()) {
            writeln!(out, "  {name}: {ok}")?;
        }
        Ok(())
    })
}

fn stable(args: &SeqArgs, out: &mut impl Write) -> Outcome {
    let json = args.json;
    each(args, out, |_, s, out| {
        let st = is_stable(s)?;
        if json {
            return emit_json(out, &analyze(s));
        }
        writeln!(out, "stable: {st}")?;
        if s.len() % 2 == 1 {
            let t = lcprof_core::seq_analysis::t_even_vanish(s)?;
            writeln!(out, "plcp: {}", is_plcp(s))?;
            writeln!(out, "even t-coefficients vanish: {t}")?;
        }
        Ok(())
    })
}

fn height_cmd(args: &SeqArgs, out: &mut impl Write) -> Outcome {
    let json = args.json;
    each(args, out, |_, s, out| {
        if json {
            return emit_json(out, &analyze(s));
        }
        let h = height(s);
        writeln!(out, "height: {}", h.height)?;
        writeln!(out, "argmax_j: {}", h.argmax_j)?;
        Ok(())
    })
}

fn lcsum(args: &SeqArgs, out: &mut impl Write) -> Outcome {
    let json = args.json;
    each(args, out, |_, s, out| {
        if json {
            return emit_json(out, &analyze(s));
        }
        let (sum, bound) = lc_sum(s);
        let (a, b, c) = char_equivalence(s);
        writeln!(out, "lc_sum: {sum}")?;
        writeln!(out, "bound: {bound}")?;
        writeln!(out, "char_equivalence: {a} {b} {c}")?;
        Ok(())
    })
}

fn plcp_count_cmd(field: u64, n: usize, json: bool, out: &mut impl Write) -> Outcome {
    let count = plcp_count(field, n)?;
    if json {
        emit_json(out, &json!({ "field": field, "n": n, "count": count.to_string() }))
    } else {
        writeln!(out, "{count}")?;
        Ok(())
    }
}

fn plcp_enum(field: u64, n: usize, json: bool, out: &mut impl Write) -> Outcome {
    for s in enumerate_plcp(field, n)? {
        if json {
            emit_json(out, &s.terms())?;
        } else {
            writeln!(out, "{s}")?;
        }
    }
    Ok(())
}

fn check_index(n: usize) -> Outcome {
    if n > MAX_INDEX {
        return Err(Failure::Resource(format!("--n {n} exceeds {MAX_INDEX}")));
    }
    Ok(())
}

fn rueppel(n: usize, json: bool, out: &mut impl Write) -> Outcome {
    check_index(n)?;
    let field = Fp::new(2)?;
    let r = rueppel_terms(n);
    let (m, report) = mp_run(&r, &MpConfig::new(field));
    let lc = report.linear_complexity();
    if lc != n.div_ceil(2) {
        return Err(Failure::Verify(format!("LC_{n} = {lc}, expected {}", n.div_ceil(2))));
    }
    let closed = if n >= 3 && n % 2 == 1 {
        let (mu, mu_b) = rueppel_mp(n)?;
        if &mu != m.get(0, 0) || &mu_b != m.get(0, 1) {
            return Err(Failure::Verify(format!("closed form disagrees with the run at n={n}")));
        }
        Some((mu, mu_b))
    } else {
        None
    };
    if n >= 2 {
        let want = expected_matrix(&mut GammaTable::new(), n)?;
        let got = [[m.get(0, 0), m.get(0, 1)], [m.get(1, 0), m.get(1, 1)]];
        let same = (0..2).all(|i| (0..2).all(|k| want[i][k].to_poly() == *got[i][k]));
        if !same {
            return Err(Failure::Verify(format!("matrix pattern breaks at n={n}")));
        }
    }
    let matrix = [
        [m.get(0, 0).to_string(), m.get(0, 1).to_string()],
        [m.get(1, 0).to_string(), m.get(1, 1).to_string()],
    ];
    if json {
        return emit_json(
            out,
            &json!({
                "n": n,
                "lc": lc,
                "mu": m.get(0, 0).to_string(),
                "mu_bracket": m.get(0, 1).to_string(),
                "matrix": matrix,
                "closed_form": closed.is_some(),
            }),
        );
    }
    writeln!(out, "sequence: {r}")?;
    writeln!(out, "lc: {lc}")?;
    writeln!(out, "mu: {}", m.get(0, 0))?;
    writeln!(out, "[mu]: {}", m.get(0, 1))?;
    writeln!(out, "matrix: [[{}, {}], [{}, {}]]", matrix[0][0], matrix[0][1], matrix[1][0], matrix[1][1])?;
    if closed.is_some() {
        writeln!(out, "closed form: agrees")?;
    }
    Ok(())
}

fn gamma_cmd(n: usize, json: bool, out: &mut impl Write) -> Outcome {
    check_index(n)?;
    let g = gamma(n);
    if json {
        emit_json(out, &json!({ "n": n, "gamma": g.to_string(), "coeffs": g.coeffs() }))
    } else {
        writeln!(out, "{g}")?;
        Ok(())
    }
}

fn verify(name: Option<String>, params: VerifyParams, json: bool, out: &mut impl Write) -> Outcome {
    let name = name.ok_or_else(|| Failure::Input("verify needs a suite name".into()))?;
    let suite: Suite = name.parse()?;
    let outcome = run_suite(suite, &params)?;
    if json {
        emit_json(out, &outcome)?;
    } else {
        let verdict = if outcome.passed { "pass" } else { "FAIL" };
        writeln!(out, "{suite}: {verdict} ({} cases)", outcome.cases)?;
        if let Some(c) = &outcome.counterexample {
            writeln!(out, "counterexample: {c}")?;
        }
    }
    if outcome.passed {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "suite {suite} failed: {}",
            outcome.counterexample.unwrap_or_default()
        )))
    }
}

fn configure_threads() -> Outcome {
    let Ok(v) = std::env::var("LCPROF_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("LCPROF_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Resource(e.to_string()))
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Profile(a) => profile(&a, &mut out),
        Command::Minpoly(a) => minpoly(&a, &mut out),
        Command::PlcpCheck(a) => plcp_check(&a, &mut out),
        Command::PlcpCount { field, n, json } => plcp_count_cmd(field, n, json, &mut out),
        Command::PlcpEnum { field, n, json } => plcp_enum(field, n, json, &mut out),
        Command::Stable(a) => stable(&a, &mut out),
        Command::Height(a) => height_cmd(&a, &mut out),
        Command::Lcsum(a) => lcsum(&a, &mut out),
        Command::Rueppel { n, json } => rueppel(n, json, &mut out),
        Command::Gamma { n, json } => gamma_cmd(n, json, &mut out),
        Command::Verify { name, suite, field, trials, max_n, json } => {
            let params = VerifyParams { field, trials, max_n, ..VerifyParams::default() };
            verify(name.or(suite), params, json, &mut out)
        }
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
    }
}

//! Command-line front end.
//!
//! Every subcommand prints either plain text or, with `--json`, a stable
//! envelope `{command, elapsed_ms, parameters, result, status}`. JSON keys
//! are lexicographic (serde_json's map is a BTreeMap) and integers wider
//! than 15 significant digits are emitted as decimal strings so lossy
//! consumers cannot corrupt them. Exit codes: 0 ok/verified, 1
//! counterexample found, 2 usage or runtime error, 3 incomplete run.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::arith::FactorConfig;
use crate::curves::{integral_points_bounded, push_point, quartic_to_weierstrass, QuarticCurve, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::harness::{self, HarnessConfig, Status, VerificationReport};
use crate::pell::{PellEquation, Recurrence2};
use crate::powerful;

#[derive(Parser)]
#[command(
    name = "squareful",
    version,
    about = "Powerful numbers, Pell equations, and an exhaustive verifier for consecutive powerful triples"
)]
struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for partitionable verifications (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Iteration budget per rho round during factorization.
    #[arg(long, global = true)]
    rho_budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Powerful-number predicates, enumeration, runs, and Pell pairs.
    Powerful {
        #[command(subcommand)]
        cmd: PowerfulCmd,
    },
    /// Pell equations and second-order recurrences.
    Pell {
        #[command(subcommand)]
        cmd: PellCmd,
    },
    /// Curve transforms and bounded integral-point search.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Case-analysis trace for a single candidate x >= 2.
    Trace { x: BigUint },
}

#[derive(Subcommand)]
enum PowerfulCmd {
    /// Test whether n is powerful and print its a^2 b^3 decomposition.
    Check { n: BigUint },
    /// List the powerful numbers up to --limit, ascending.
    List {
        #[arg(long)]
        limit: BigUint,
    },
    /// Maximal runs of consecutive powerful numbers up to --limit.
    Runs {
        #[arg(long)]
        limit: BigUint,
        #[arg(long, default_value_t = 2)]
        min_length: u64,
    },
    /// The first --count consecutive powerful pairs (2y^2, x^2) from
    /// x^2 - 2y^2 = 1.
    Pairs {
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum PellCmd {
    /// Solve x^2 - D y^2 = N (N defaults to 1): fundamental unit, class
    /// representatives, and the first --count solutions.
    Solve {
        d: BigUint,
        #[arg(long = "n", allow_hyphen_values = true, default_value = "1")]
        n: BigInt,
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// Terms of the recurrence a_k = c a_(k-1) - d a_(k-2) with seeds
    /// a_1 = s1, a_2 = s2; optionally test membership of --contains.
    Seq {
        #[arg(long, allow_hyphen_values = true, default_value = "4")]
        c: BigInt,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        d: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        s1: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        s2: BigInt,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, allow_hyphen_values = true)]
        contains: Option<BigInt>,
    },
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Integral points with |X| <= --bound on Y^2 = X^3 + A X^2 + B X + C.
    Points {
        #[arg(long = "A", allow_hyphen_values = true)]
        a2: BigInt,
        #[arg(long = "B", allow_hyphen_values = true)]
        a4: BigInt,
        #[arg(long = "C", allow_hyphen_values = true)]
        a6: BigInt,
        #[arg(long)]
        bound: BigUint,
    },
    /// Weierstrass model of the quartic y^2 = a x^4 + c x^2 + e; with --x
    /// and --y, also push that quartic point through the transform.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        c: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        e: BigInt,
        #[arg(long, allow_hyphen_values = true, requires = "y")]
        x: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true, requires = "x")]
        y: Option<BigInt>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Search [2, max] for x with both x^3 - 1 = p^3 y^2 and
    /// x^3 + 1 = q^3 z^2.
    Theorem {
        #[arg(long, default_value_t = 10_000)]
        max: u64,
    },
    /// Search [1, max] for x with 64 x^6 - 1 = p^3 q^3 y^2.
    Corollary {
        #[arg(long, default_value_t = 1_000)]
        max: u64,
    },
    /// Square gaps and exact 3-valuations of x^2 +- x + 1 over [1, max].
    Lemmas {
        #[arg(long, default_value_t = 1_000_000)]
        max: u64,
    },
    /// The gcd identities behind the case analysis over [1, max].
    Gcds {
        #[arg(long, default_value_t = 1_000_000)]
        max: u64,
    },
    /// Recurrence identities and the u_k = (3 h_l -+ 1)/2 collisions up to
    /// index --kmax.
    Collision {
        #[arg(long, default_value_t = 200)]
        kmax: u64,
    },
    /// Scan the powerful numbers up to --limit for runs of length >= 3.
    Triples {
        #[arg(long, default_value = "1000000")]
        limit: BigUint,
    },
    /// Every suite at its default bound; exit status aggregates the worst.
    All,
}

/// Parses argv, runs the command, writes text or JSON to `out`, and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };

    let mut factor = FactorConfig::default();
    if let Some(budget) = cli.rho_budget {
        factor.rho_budget = budget;
    }
    let cfg = HarnessConfig {
        factor,
        retry_scale: None,
    };

    let started = Instant::now();
    let outcome = match cli.threads {
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: cannot build thread pool: {e}");
                    return 2;
                }
            };
            pool.install(|| dispatch(&cli.command, &cfg))
        }
        None => dispatch(&cli.command, &cfg),
    };
    let elapsed_ms = started.elapsed().as_millis() as u64;

    match outcome {
        Ok(output) => {
            if cli.json {
                let envelope = json!({
                    "command": output.command,
                    "parameters": Value::Object(output.parameters),
                    "result": output.result,
                    "status": status_str(output.status),
                    "elapsed_ms": elapsed_ms,
                });
                let _ = writeln!(out, "{envelope}");
            } else {
                let _ = writeln!(out, "{}", output.text.trim_end());
            }
            match output.status {
                Status::Verified => 0,
                Status::Counterexample => 1,
                Status::Incomplete => 3,
            }
        }
        Err(e) => {
            if cli.json {
                let envelope = json!({
                    "command": command_name(&cli.command),
                    "parameters": {},
                    "result": { "error": e.to_string() },
                    "status": "error",
                    "elapsed_ms": elapsed_ms,
                });
                let _ = writeln!(out, "{envelope}");
            }
            eprintln!("error: {e}");
            2
        }
    }
}

struct CommandOutput {
    command: String,
    parameters: Map<String, Value>,
    result: Value,
    text: String,
    status: Status,
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Verified => "ok",
        Status::Counterexample => "counterexample",
        Status::Incomplete => "incomplete",
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Powerful { cmd } => match cmd {
            PowerfulCmd::Check { .. } => "powerful check",
            PowerfulCmd::List { .. } => "powerful list",
            PowerfulCmd::Runs { .. } => "powerful runs",
            PowerfulCmd::Pairs { .. } => "powerful pairs",
        },
        Command::Pell { cmd } => match cmd {
            PellCmd::Solve { .. } => "pell solve",
            PellCmd::Seq { .. } => "pell seq",
        },
        Command::Curve { cmd } => match cmd {
            CurveCmd::Points { .. } => "curve points",
            CurveCmd::Transform { .. } => "curve transform",
        },
        Command::Verify { cmd } => match cmd {
            VerifyCmd::Theorem { .. } => "verify theorem",
            VerifyCmd::Corollary { .. } => "verify corollary",
            VerifyCmd::Lemmas { .. } => "verify lemmas",
            VerifyCmd::Gcds { .. } => "verify gcds",
            VerifyCmd::Collision { .. } => "verify collision",
            VerifyCmd::Triples { .. } => "verify triples",
            VerifyCmd::All => "verify all",
        },
        Command::Trace { .. } => "trace",
    }
}

/// Integers up to 15 significant digits stay JSON numbers; anything wider
/// becomes a decimal string.
fn jnum(n: &BigUint) -> Value {
    let s = n.to_string();
    if s.len() <= 15 {
        json!(n.to_u64().unwrap())
    } else {
        json!(s)
    }
}

fn jnum_i(n: &BigInt) -> Value {
    if n.magnitude().to_string().len() <= 15 {
        json!(n.to_i64().unwrap())
    } else {
        json!(n.to_string())
    }
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "suite": r.suite,
        "range": { "lo": jnum(&r.lo), "hi": jnum(&r.hi) },
        "examined": r.examined,
        "counterexamples": r.counterexamples,
        "incomplete": r.incomplete.iter().map(jnum).collect::<Vec<_>>(),
        "tallies": r.tallies,
        "observations": r.observations.iter()
            .map(|(label, value)| json!({ "label": label, "value": jnum(value) }))
            .collect::<Vec<_>>(),
        "notes": r.notes,
        "status": status_str(r.status()),
        "elapsed_ms": r.elapsed.as_millis() as u64,
    })
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("suite: {}\n", r.suite));
    s.push_str(&format!("range: [{}, {}]\n", r.lo, r.hi));
    s.push_str(&format!("examined: {}\n", r.examined));
    if !r.tallies.is_empty() {
        let t: Vec<String> = r.tallies.iter().map(|(k, v)| format!("{k}={v}")).collect();
        s.push_str(&format!("tallies: {}\n", t.join(" ")));
    }
    for (label, value) in &r.observations {
        s.push_str(&format!("{label}: {value}\n"));
    }
    for note in &r.notes {
        s.push_str(&format!("note: {note}\n"));
    }
    if r.counterexamples.is_empty() {
        s.push_str("counterexamples: none\n");
    } else {
        s.push_str("counterexamples:\n");
        for c in &r.counterexamples {
            s.push_str(&format!("  {c}\n"));
        }
    }
    if !r.incomplete.is_empty() {
        let xs: Vec<String> = r.incomplete.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("incomplete: {}\n", xs.join(" ")));
    }
    s.push_str(&format!(
        "status: {} ({} ms)\n",
        match r.status() {
            Status::Verified => "verified",
            Status::Counterexample => "COUNTEREXAMPLE",
            Status::Incomplete => "incomplete",
        },
        r.elapsed.as_millis()
    ));
    s
}

fn from_report(command: &str, parameters: Map<String, Value>, r: VerificationReport) -> CommandOutput {
    CommandOutput {
        command: command.to_string(),
        parameters,
        result: report_json(&r),
        text: report_text(&r),
        status: r.status(),
    }
}

fn params(entries: &[(&str, Value)]) -> Map<String, Value> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn dispatch(command: &Command, cfg: &HarnessConfig) -> Result<CommandOutput> {
    match command {
        Command::Powerful { cmd } => run_powerful(cmd, cfg),
        Command::Pell { cmd } => run_pell(cmd),
        Command::Curve { cmd } => run_curve(cmd),
        Command::Verify { cmd } => run_verify(cmd, cfg),
        Command::Trace { x } => run_trace(x, cfg),
    }
}

fn run_powerful(cmd: &PowerfulCmd, cfg: &HarnessConfig) -> Result<CommandOutput> {
    match cmd {
        PowerfulCmd::Check { n } => {
            if n.is_zero() {
                return Err(Error::InvalidArgument("n must be at least 1".into()));
            }
            let parameters = params(&[("n", jnum(n))]);
            match powerful::powerful_decomposition_with(n, &cfg.factor) {
                Ok(form) => Ok(CommandOutput {
                    command: "powerful check".into(),
                    parameters,
                    result: json!({
                        "powerful": true,
                        "a": jnum(&form.a),
                        "b": jnum(&form.b),
                        "n": jnum(n),
                    }),
                    text: format!("powerful: a={} b={}", form.a, form.b),
                    status: Status::Verified,
                }),
                Err(Error::NotPowerful(_)) => Ok(CommandOutput {
                    command: "powerful check".into(),
                    parameters,
                    result: json!({ "powerful": false, "n": jnum(n) }),
                    text: "not powerful".into(),
                    status: Status::Verified,
                }),
                Err(e) => Err(e),
            }
        }
        PowerfulCmd::List { limit } => {
            if limit.is_zero() {
                return Err(Error::InvalidArgument("limit must be at least 1".into()));
            }
            let values: Vec<BigUint> = powerful::enumerate_powerful(limit).collect();
            let text = values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(CommandOutput {
                command: "powerful list".into(),
                parameters: params(&[("limit", jnum(limit))]),
                result: json!({
                    "count": values.len(),
                    "values": values.iter().map(jnum).collect::<Vec<_>>(),
                }),
                text,
                status: Status::Verified,
            })
        }
        PowerfulCmd::Runs { limit, min_length } => {
            if *min_length < 2 {
                return Err(Error::InvalidArgument("--min-length must be at least 2".into()));
            }
            if *limit < BigUint::from(2u32) {
                return Err(Error::InvalidArgument("--limit must be at least 2".into()));
            }
            let runs = powerful::find_consecutive_runs(limit, *min_length)?;
            let text = if runs.is_empty() {
                "no runs".to_string()
            } else {
                runs.iter()
                    .map(|r| format!("start={} length={}", r.start, r.length))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(CommandOutput {
                command: "powerful runs".into(),
                parameters: params(&[
                    ("limit", jnum(limit)),
                    ("min_length", json!(min_length)),
                ]),
                result: json!({
                    "runs": runs.iter()
                        .map(|r| json!({ "start": jnum(&r.start), "length": r.length }))
                        .collect::<Vec<_>>(),
                }),
                text,
                status: Status::Verified,
            })
        }
        PowerfulCmd::Pairs { count } => {
            if *count == 0 {
                return Err(Error::InvalidArgument("--count must be at least 1".into()));
            }
            let pairs = powerful::pairs_from_pell(*count);
            let text = pairs
                .iter()
                .map(|(m, m1)| format!("({m}, {m1})"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(CommandOutput {
                command: "powerful pairs".into(),
                parameters: params(&[("count", json!(count))]),
                result: json!({
                    "pairs": pairs.iter()
                        .map(|(m, m1)| json!([jnum(m), jnum(m1)]))
                        .collect::<Vec<_>>(),
                }),
                text,
                status: Status::Verified,
            })
        }
    }
}

fn run_pell(cmd: &PellCmd) -> Result<CommandOutput> {
    match cmd {
        PellCmd::Solve { d, n, count } => {
            let eq = PellEquation::new(d, n)?;
            let (x1, y1) = eq.fundamental_unit();
            let base = eq.base_solutions();
            let stream: Vec<_> = eq.solutions().take(*count).collect();

            let mut text = format!("fundamental unit: ({x1}, {y1})\n");
            if base.is_empty() {
                text.push_str("no solutions\n");
            } else {
                let reps: Vec<String> = base.iter().map(|s| format!("({}, {})", s.x, s.y)).collect();
                text.push_str(&format!("base solutions: {}\n", reps.join(" ")));
                for s in &stream {
                    text.push_str(&format!("{}: ({}, {})\n", s.index, s.x, s.y));
                }
            }
            Ok(CommandOutput {
                command: "pell solve".into(),
                parameters: params(&[
                    ("d", jnum(d)),
                    ("n", jnum_i(n)),
                    ("count", json!(count)),
                ]),
                result: json!({
                    "fundamental_unit": { "x": jnum(x1), "y": jnum(y1) },
                    "base_solutions": base.iter()
                        .map(|s| json!({ "x": jnum(&s.x), "y": jnum(&s.y) }))
                        .collect::<Vec<_>>(),
                    "solutions": stream.iter()
                        .map(|s| json!({ "x": jnum(&s.x), "y": jnum(&s.y), "index": s.index }))
                        .collect::<Vec<_>>(),
                }),
                text,
                status: Status::Verified,
            })
        }
        PellCmd::Seq {
            c,
            d,
            s1,
            s2,
            count,
            contains,
        } => {
            let rec = Recurrence2::new(c.clone(), d.clone(), s1.clone(), s2.clone());
            let terms: Vec<BigInt> = rec.iter().take(*count).collect();
            let membership = match contains {
                Some(v) => Some((v.clone(), rec.contains(v)?)),
                None => None,
            };
            let mut text = terms
                .iter()
                .enumerate()
                .map(|(i, t)| format!("a_{} = {}", i + 1, t))
                .collect::<Vec<_>>()
                .join("\n");
            if let Some((v, hit)) = &membership {
                text.push_str(&match hit {
                    Some(k) => format!("\ncontains {v} at index {k}"),
                    None => format!("\n{v} is not a term"),
                });
            }
            Ok(CommandOutput {
                command: "pell seq".into(),
                parameters: params(&[
                    ("c", jnum_i(c)),
                    ("d", jnum_i(d)),
                    ("s1", jnum_i(s1)),
                    ("s2", jnum_i(s2)),
                    ("count", json!(count)),
                ]),
                result: json!({
                    "terms": terms.iter().map(jnum_i).collect::<Vec<_>>(),
                    "contains": membership.map(|(v, hit)| json!({
                        "value": jnum_i(&v),
                        "index": hit,
                    })),
                }),
                text,
                status: Status::Verified,
            })
        }
    }
}

fn run_curve(cmd: &CurveCmd) -> Result<CommandOutput> {
    match cmd {
        CurveCmd::Points { a2, a4, a6, bound } => {
            let curve = WeierstrassCurve::new(a2.clone(), a4.clone(), a6.clone());
            let points = integral_points_bounded(&curve, bound);
            let text = if points.is_empty() {
                "no integral points".to_string()
            } else {
                points
                    .iter()
                    .map(|p| format!("({}, {})", p.x, p.y))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(CommandOutput {
                command: "curve points".into(),
                parameters: params(&[
                    ("A", jnum_i(a2)),
                    ("B", jnum_i(a4)),
                    ("C", jnum_i(a6)),
                    ("bound", jnum(bound)),
                ]),
                result: json!({
                    "count": points.len(),
                    "points": points.iter()
                        .map(|p| json!([jnum_i(&p.x), jnum_i(&p.y)]))
                        .collect::<Vec<_>>(),
                }),
                text,
                status: Status::Verified,
            })
        }
        CurveCmd::Transform { a, c, e, x, y } => {
            if a.is_zero() {
                return Err(Error::InvalidArgument("--a must be nonzero".into()));
            }
            let quartic = QuarticCurve::new(a.clone(), c.clone(), e.clone());
            let curve = quartic_to_weierstrass(&quartic);
            let mut text = format!(
                "Y^2 = X^3 + ({})X^2 + ({})X + ({})",
                curve.a2, curve.a4, curve.a6
            );
            let pushed = match (x, y) {
                (Some(x), Some(y)) => {
                    let p = push_point(&quartic, x, y)?;
                    text.push_str(&format!("\npoint: ({}, {})", p.x, p.y));
                    Some(p)
                }
                _ => None,
            };
            Ok(CommandOutput {
                command: "curve transform".into(),
                parameters: params(&[
                    ("a", jnum_i(a)),
                    ("c", jnum_i(c)),
                    ("e", jnum_i(e)),
                ]),
                result: json!({
                    "curve": { "A": jnum_i(&curve.a2), "B": jnum_i(&curve.a4), "C": jnum_i(&curve.a6) },
                    "point": pushed.map(|p| json!([jnum_i(&p.x), jnum_i(&p.y)])),
                }),
                text,
                status: Status::Verified,
            })
        }
    }
}

fn run_verify(cmd: &VerifyCmd, cfg: &HarnessConfig) -> Result<CommandOutput> {
    match cmd {
        VerifyCmd::Theorem { max } => {
            if *max < 2 {
                return Err(Error::InvalidArgument("--max must be at least 2".into()));
            }
            eprintln!("verifying the cube-form triple search on [2, {max}] ...");
            let r = harness::verify_theorem(*max, cfg);
            Ok(from_report("verify theorem", params(&[("max", json!(max))]), r))
        }
        VerifyCmd::Corollary { max } => {
            eprintln!("verifying 64x^6 - 1 != p^3 q^3 y^2 on [1, {max}] ...");
            let r = harness::verify_corollary(*max, cfg);
            Ok(from_report("verify corollary", params(&[("max", json!(max))]), r))
        }
        VerifyCmd::Lemmas { max } => {
            let r = harness::check_lemma_suite(*max);
            Ok(from_report("verify lemmas", params(&[("max", json!(max))]), r))
        }
        VerifyCmd::Gcds { max } => {
            let r = harness::check_gcd_identities(*max);
            Ok(from_report("verify gcds", params(&[("max", json!(max))]), r))
        }
        VerifyCmd::Collision { kmax } => {
            let r = harness::check_sequence_collision(*kmax);
            Ok(from_report("verify collision", params(&[("kmax", json!(kmax))]), r))
        }
        VerifyCmd::Triples { limit } => {
            eprintln!("scanning powerful numbers up to {limit} for runs ...");
            let r = harness::find_triples_scan(limit);
            Ok(from_report("verify triples", params(&[("limit", jnum(limit))]), r))
        }
        VerifyCmd::All => {
            let million = BigUint::from(1_000_000u32);
            let suites = vec![
                harness::check_lemma_suite(1_000_000),
                harness::check_gcd_identities(1_000_000),
                harness::verify_theorem(10_000, cfg),
                harness::verify_corollary(1_000, cfg),
                harness::check_sequence_collision(200),
                harness::find_triples_scan(&million),
                harness::check_curve_registry(&million),
            ];
            let status = suites
                .iter()
                .map(|r| r.status())
                .max()
                .unwrap_or(Status::Verified);
            let text = suites
                .iter()
                .map(report_text)
                .collect::<Vec<_>>()
                .join("\n");
            let mut by_suite = Map::new();
            for r in &suites {
                by_suite.insert(r.suite.clone(), report_json(r));
            }
            Ok(CommandOutput {
                command: "verify all".into(),
                parameters: Map::new(),
                result: json!({ "suites": Value::Object(by_suite) }),
                text,
                status,
            })
        }
    }
}

fn run_trace(x: &BigUint, cfg: &HarnessConfig) -> Result<CommandOutput> {
    if *x < BigUint::from(2u32) {
        return Err(Error::InvalidArgument("trace requires x >= 2".into()));
    }
    let t = harness::trace_case(x, cfg)?;
    let verdict = match &t.verdict {
        harness::Verdict::HypothesisFails => "hypothesis fails".to_string(),
        harness::Verdict::ContradictionReached(id) => format!("contradiction: {id}"),
    };
    let mut text = format!("x = {} (residue {} mod 3)\n", t.x, t.residue);
    for p in &t.predicates {
        text.push_str(&format!(
            "  [{}] {}: {}\n",
            if p.holds { "true " } else { "false" },
            p.name,
            p.instance
        ));
    }
    text.push_str(&format!("verdict: {verdict}\n{}", t.detail));
    Ok(CommandOutput {
        command: "trace".into(),
        parameters: params(&[("x", jnum(x))]),
        result: json!({
            "x": jnum(&t.x),
            "residue": t.residue,
            "predicates": t.predicates.iter()
                .map(|p| json!({ "name": p.name, "instance": p.instance, "holds": p.holds }))
                .collect::<Vec<_>>(),
            "verdict": verdict,
            "detail": t.detail,
        }),
        text,
        status: Status::Verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(args.iter().map(|s| s.to_string()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn check_72_matches_expected_line() {
        let (code, out) = run_capture(&["squareful", "powerful", "check", "72"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "powerful: a=3 b=2");
    }

    #[test]
    fn check_7_is_not_powerful() {
        let (code, out) = run_capture(&["squareful", "powerful", "check", "7"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "not powerful");
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        let (code, _) = run_capture(&["squareful", "nonsense"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn zero_input_is_usage_error() {
        let (code, _) = run_capture(&["squareful", "powerful", "check", "0"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn malformed_integer_is_usage_error() {
        let (code, _) = run_capture(&["squareful", "powerful", "check", "10^10"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn json_envelope_has_sorted_keys_and_round_trips() {
        let (code, out) = run_capture(&["squareful", "--json", "powerful", "list", "--limit", "72"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), out.trim());
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(v["status"], "ok");
        assert_eq!(v["result"]["count"], 12);
    }

    #[test]
    fn wide_integers_serialize_as_strings() {
        let (code, out) = run_capture(&[
            "squareful",
            "--json",
            "powerful",
            "pairs",
            "--count",
            "12",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let pairs = v["result"]["pairs"].as_array().unwrap();
        // Late pairs exceed 15 digits and must be strings.
        assert!(pairs.last().unwrap()[0].is_string());
        assert!(pairs[0][0].is_number());
    }

    #[test]
    fn pell_solve_text_shows_fundamental() {
        let (code, out) = run_capture(&["squareful", "pell", "solve", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("fundamental unit: (2, 1)"), "{out}");
        assert!(out.contains("2: (7, 4)"), "{out}");
    }

    #[test]
    fn trace_exits_zero() {
        let (code, out) = run_capture(&["squareful", "trace", "6"]);
        assert_eq!(code, 0);
        assert!(out.contains("hypothesis fails"), "{out}");
    }
}

//! Command-line front end: every command produces one JSON object per result
//! line, with big numbers as decimal strings.

use std::cmp::Ordering;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use quartic_thue::gap::{chain_replay, idol_check};
use quartic_thue::pade::{determinant_check, explicit_table, ledger_check, remainder_order_check};
use quartic_thue::pell::{v7_v11_square_scan, PellContext};
use quartic_thue::quartic::{exclusion_check, root_bounds};
use quartic_thue::solver::{family_range, family_solve, solve, Limits, DEFAULT_K_MAX, DEFAULT_X_MAX};
use quartic_thue::Error;

#[derive(Debug, Parser)]
#[command(name = "quartic-thue", version, about = "Solve and verify aX^4 - bY^2 = 1")]
pub struct Cli {
    /// Worker threads for range commands (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Pretty-print each JSON object.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write results to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All positive solutions of aX^4 - bY^2 = 1 within the limits.
    Solve {
        a: BigInt,
        b: BigInt,
        #[arg(long, default_value_t = DEFAULT_X_MAX)]
        x_max: u64,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
    },
    /// Solutions of (t+1)X^4 - tY^2 = 1 for one t or a range.
    Family(FamilyArgs),
    /// Padé approximant checks.
    Pade(PadeArgs),
    /// Replay of the gap-principle induction.
    Gap {
        #[arg(long)]
        t: BigInt,
        #[arg(long, default_value_t = 10)]
        r_max: u32,
    },
    /// Certified brackets for the real roots of P(x, 1).
    Roots {
        #[arg(long)]
        t: BigInt,
    },
    /// Odd and even power sequences with their norm identities.
    Sequences {
        #[arg(long)]
        t: BigInt,
        #[arg(long, default_value_t = 10)]
        k_max: u32,
    },
    /// Squares among V_7 and V_11 over a range of t.
    #[command(name = "scan-v7v11")]
    ScanV7V11 {
        #[arg(long)]
        t_from: u64,
        #[arg(long)]
        t_to: u64,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, conflicts_with_all = ["t_from", "t_to"])]
    pub t: Option<BigInt>,
    #[arg(long, requires = "t_to")]
    pub t_from: Option<u64>,
    #[arg(long, requires = "t_from")]
    pub t_to: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: u32,
    #[arg(long, default_value_t = DEFAULT_X_MAX)]
    pub x_max: u64,
}

#[derive(Debug, Args)]
pub struct PadeArgs {
    /// Remainder order and leading coefficient for r ≤ r-max.
    #[arg(long)]
    pub verify_order: bool,
    /// The five printed integer tables.
    #[arg(long)]
    pub tables: bool,
    /// The nine bilinear identities.
    #[arg(long)]
    pub ledger: bool,
    /// Determinant monomials for r ≤ r-max.
    #[arg(long)]
    pub det: bool,
    #[arg(long)]
    pub r_max: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    Undecided,
    ConjectureViolation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed | Status::Undecided => 2,
            Status::ConjectureViolation => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub status: Status,
    pub runtime_ms: u64,
}

/// Outcome of one invocation: the result lines and the process exit code.
#[derive(Debug)]
pub struct Execution {
    pub results: Vec<CommandResult>,
    pub exit_code: i32,
}

/// A failure that is not a result line: bad flags or violated preconditions.
#[derive(Debug)]
pub struct UsageError(pub String);

fn status_of(e: &Error) -> Status {
    match e {
        Error::Undecided { .. } => Status::Undecided,
        Error::ConjectureViolation { .. } => Status::ConjectureViolation,
        _ => Status::VerificationFailed,
    }
}

fn s<T: ToString>(x: T) -> Value {
    Value::String(x.to_string())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payloads serialize")
}

struct Recorder {
    results: Vec<CommandResult>,
}

impl Recorder {
    fn push(&mut self, command: &str, input: Value, started: Instant, outcome: Result<(Value, Status), Error>) -> Result<(), UsageError> {
        let (result, status) = match outcome {
            Ok(x) => x,
            Err(Error::Precondition(msg)) => return Err(UsageError(msg)),
            Err(e) => (json!({ "error": e.to_string() }), status_of(&e)),
        };
        self.results.push(CommandResult {
            command: command.to_string(),
            input,
            result,
            status,
            runtime_ms: started.elapsed().as_millis() as u64,
        });
        Ok(())
    }
}

fn ok_if(v: Value, cond: bool) -> (Value, Status) {
    (v, if cond { Status::Ok } else { Status::VerificationFailed })
}

fn sign_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "-",
        Ordering::Equal => "0",
        Ordering::Greater => "+",
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Execution, UsageError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(UsageError("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| UsageError(e.to_string()))?;
    let mut rec = Recorder { results: Vec::new() };
    pool.install(|| dispatch(&cli.command, &mut rec))?;
    let exit_code = rec.results.iter().map(|r| r.status.exit_code()).max().unwrap_or(0);
    Ok(Execution {
        results: rec.results,
        exit_code,
    })
}

fn dispatch(command: &Command, rec: &mut Recorder) -> Result<(), UsageError> {
    let started = Instant::now();
    match command {
        Command::Solve { a, b, x_max, k_max } => {
            let input = json!({ "a": s(a), "b": s(b), "x_max": x_max, "k_max": k_max });
            let limits = Limits { k_max: *k_max, x_max: *x_max };
            let out = solve(a, b, limits).map(|r| (to_value(&r), Status::Ok));
            rec.push("solve", input, started, out)
        }
        Command::Family(args) => family(args, rec),
        Command::Pade(args) => pade(args, rec),
        Command::Gap { t, r_max } => {
            let input = json!({ "t": s(t), "r_max": r_max });
            let out = chain_replay(t, *r_max).and_then(|rep| {
                let idol = (1..=5).map(idol_check).collect::<Result<Vec<_>, _>>()?;
                let ok = rep.all_certified && idol[0].refuted_for_all_t;
                Ok(ok_if(json!({ "chain": to_value(&rep), "idol": to_value(&idol) }), ok))
            });
            rec.push("gap", input, started, out)
        }
        Command::Roots { t } => {
            let input = json!({ "t": s(t) });
            let out = root_bounds(t).and_then(|rb| {
                let excl = exclusion_check(t)?;
                let brackets: Vec<Value> = rb
                    .brackets
                    .iter()
                    .map(|b| {
                        json!({
                            "index": b.index,
                            "lo": s(&b.lo),
                            "hi": s(&b.hi),
                            "lo_approx": b.lo.to_f64(),
                            "hi_approx": b.hi.to_f64(),
                            "width": s(&b.width),
                            "sign_lo": sign_str(b.sign_lo),
                            "sign_hi": sign_str(b.sign_hi),
                            "sign_change": b.sign_changes(),
                        })
                    })
                    .collect();
                let ok = rb.brackets.iter().all(|b| b.sign_changes()) && excl.iter().all(|e| e.holds);
                Ok(ok_if(json!({ "brackets": brackets, "exclusion": to_value(&excl) }), ok))
            });
            rec.push("roots", input, started, out)
        }
        Command::Sequences { t, k_max } => {
            let input = json!({ "t": s(t), "k_max": k_max });
            let out = PellContext::new(t.clone()).map(|ctx| {
                let odd: Vec<Value> = ctx
                    .odd_powers()
                    .take(*k_max as usize + 1)
                    .map(|p| json!({ "k": p.k, "V": s(&p.v), "W": s(&p.w), "norm": s(ctx.odd_norm(&p)) }))
                    .collect();
                let even: Vec<Value> = ctx
                    .even_powers()
                    .take(*k_max as usize + 1)
                    .map(|p| json!({ "k": p.k, "T": s(&p.t_k), "U": s(&p.u_k), "norm": s(ctx.even_norm(&p)) }))
                    .collect();
                let ok = odd.iter().chain(&even).all(|v| v["norm"] == "1");
                ok_if(json!({ "odd": odd, "even": even }), ok)
            });
            rec.push("sequences", input, started, out)
        }
        Command::ScanV7V11 { t_from, t_to } => {
            let input = json!({ "t_from": t_from, "t_to": t_to });
            let out = v7_v11_square_scan(*t_from, *t_to).map(|hits| {
                // only t = 1 (V_7 = 13²) is a square below the threshold too
                let ok = hits.iter().all(|h| h.t <= 204);
                ok_if(json!({ "hits": to_value(&hits), "count": hits.len() }), ok)
            });
            rec.push("scan-v7v11", input, started, out)
        }
    }
}

fn family_payload(t: &str, sols: &[quartic_thue::solver::SolutionRecord]) -> Value {
    json!({ "t": t, "count": sols.len(), "solutions": to_value(&sols) })
}

fn family(args: &FamilyArgs, rec: &mut Recorder) -> Result<(), UsageError> {
    let started = Instant::now();
    match (&args.t, args.t_from, args.t_to) {
        (Some(t), _, _) => {
            let input = json!({ "t": s(t), "k_max": args.k_max, "x_max": args.x_max });
            let out = family_solve(t, args.k_max, args.x_max).map(|v| (family_payload(&t.to_string(), &v), Status::Ok));
            rec.push("family", input, started, out)
        }
        (None, Some(lo), Some(hi)) => {
            if lo == 0 || lo > hi {
                return Err(UsageError(format!("need 1 ≤ t-from ≤ t-to, got {lo}..{hi}")));
            }
            for (t, out) in family_range(lo, hi, args.k_max, args.x_max) {
                let input = json!({ "t": s(t), "k_max": args.k_max, "x_max": args.x_max });
                let out = out.map(|v| (family_payload(&t.to_string(), &v), Status::Ok));
                rec.push("family", input, started, out)?;
            }
            Ok(())
        }
        _ => Err(UsageError("family needs --t or both --t-from and --t-to".into())),
    }
}

fn pade(args: &PadeArgs, rec: &mut Recorder) -> Result<(), UsageError> {
    let all = !(args.verify_order || args.tables || args.ledger || args.det);
    if args.verify_order || all {
        let started = Instant::now();
        let r_max = args.r_max.unwrap_or(10);
        let input = json!({ "check": "verify_order", "r_max": r_max });
        let out = (1..=r_max)
            .flat_map(|r| (0..=1).map(move |g| (r, g)))
            .map(|(r, g)| remainder_order_check(r, g))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| (json!({ "checks": to_value(&v), "count": v.len() }), Status::Ok));
        rec.push("pade", input, started, out)?;
    }
    if args.tables || all {
        let started = Instant::now();
        let out = (1..=5)
            .map(|r| explicit_table(r).map(|t| json!({ "r": r, "scale": s(&t.scale), "verified": true })))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| (json!({ "tables": v }), Status::Ok));
        rec.push("pade", json!({ "check": "tables" }), started, out)?;
    }
    if args.ledger || all {
        let started = Instant::now();
        let out = ledger_check().map(|entries| {
            let flagged: Vec<u32> = entries.iter().filter(|e| !e.exact_match).map(|e| e.id).collect();
            let ok = entries.iter().all(|e| e.exact_match || e.constant_match);
            ok_if(json!({ "identities": to_value(&entries), "exponent_discrepancies": flagged }), ok)
        });
        rec.push("pade", json!({ "check": "ledger" }), started, out)?;
    }
    if args.det || all {
        let started = Instant::now();
        let r_max = args.r_max.unwrap_or(8);
        let input = json!({ "check": "det", "r_max": r_max });
        let out = (1..=r_max)
            .flat_map(|r| (0..=1).map(move |h| (r, h)))
            .map(|(r, h)| determinant_check(r, h))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| (json!({ "determinants": to_value(&v) }), Status::Ok));
        rec.push("pade", input, started, out)?;
    }
    Ok(())
}

/// Serializes results as JSON lines.
pub fn render(results: &[CommandResult], pretty: bool) -> String {
    let mut out = String::new();
    for r in results {
        let line = if pretty {
            serde_json::to_string_pretty(r)
        } else {
            serde_json::to_string(r)
        };
        out.push_str(&line.expect("results serialize"));
        out.push('\n');
    }
    out
}

/// Parses `args` (including the program name) and runs them.
pub fn execute<I, T>(args: I) -> Result<Execution, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| UsageError(e.to_string()))?;
    run(&cli)
}

//! `lucas` — exact evaluation of generalized Fibonacci/Lucas sequences,
//! closed-form sums of products, identity sweeps, reference cross-checks and
//! a closed-form-vs-naive benchmark.
//!
//! Exit codes: 0 success, 1 verification or equality failure, 2 usage,
//! 3 domain error, 4 network failure.

mod oeis;

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use lucas_core::sums::{
    sum_corollary1, sum_naive, sum_theorem1, SumKind, SumPair, SumQuery,
};
use lucas_core::sweep::{all_identity_ids, run_catalog, SweepGrid};
use lucas_core::identities::IdentityId;
use lucas_core::{eval_pair, validate_params, Preset, SequenceParams};

const EXIT_OK: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_DOMAIN: i32 = 3;
const EXIT_NETWORK: i32 = 4;

#[derive(Debug)]
enum CliError {
    Domain(lucas_core::Error),
    Alarm(String),
    Usage(String),
    Network(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Alarm(_) => EXIT_FAIL,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Network(_) => EXIT_NETWORK,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(err) => write!(f, "{err}"),
            CliError::Alarm(msg) | CliError::Usage(msg) | CliError::Network(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<lucas_core::Error> for CliError {
    fn from(err: lucas_core::Error) -> Self {
        match err {
            // A failed exactness assertion is a correctness alarm, not a
            // caller mistake.
            lucas_core::Error::InexactDivision { .. } => CliError::Alarm(err.to_string()),
            other => CliError::Domain(other),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "lucas",
    version,
    about = "Exact generalized Fibonacci/Lucas arithmetic: evaluation, closed-form sums, identity audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate U_n and V_n at an index or an inclusive index range.
    Eval(EvalArgs),
    /// Evaluate a sum of products S_n/A_n with the closed form.
    Sum(SumArgs),
    /// Sweep identities from the catalog over a parameter/variable grid.
    Verify(VerifyArgs),
    /// Time the closed-form sum against the naive loop on identical queries.
    Bench(BenchArgs),
    /// Cross-check computed terms against bundled or fetched b-files.
    Oeis(OeisArgs),
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Named parameter pair: fibonacci (1,-1), pell (2,-1), jacobsthal (1,-2).
    #[arg(long, value_parser = parse_preset, conflicts_with_all = ["p", "q"])]
    preset: Option<Preset>,

    /// Recurrence coefficient p (requires -q).
    #[arg(short, long, allow_negative_numbers = true, requires = "q")]
    p: Option<i64>,

    /// Recurrence coefficient q (requires -p).
    #[arg(short, long, allow_negative_numbers = true, requires = "p")]
    q: Option<i64>,
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse()
}

impl ParamArgs {
    fn resolve(&self) -> Result<SequenceParams, CliError> {
        match (self.preset, self.p, self.q) {
            (Some(preset), None, None) => Ok(preset.params()),
            (None, Some(p), Some(q)) => Ok(validate_params(p, q)?),
            _ => Err(CliError::Usage(
                "specify parameters as either --preset NAME or -p INT -q INT".to_string(),
            )),
        }
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,

    /// Index, or inclusive range like -5..5.
    #[arg(short = 'n', long = "index", value_parser = parse_index_spec, allow_hyphen_values = true)]
    index: IndexSpec,
}

#[derive(Debug, Clone, Copy)]
struct IndexSpec {
    from: i64,
    to: i64,
}

fn parse_index_spec(s: &str) -> Result<IndexSpec, String> {
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let from: i64 = lo.trim().parse().map_err(|_| format!("bad range start '{lo}'"))?;
        let to: i64 = hi.trim().parse().map_err(|_| format!("bad range end '{hi}'"))?;
        if to < from {
            return Err(format!("empty index range {from}..{to}"));
        }
        Ok(IndexSpec { from, to })
    } else {
        let n: i64 = s.trim().parse().map_err(|_| format!("bad index '{s}'"))?;
        Ok(IndexSpec { from: n, to: n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "A", alias = "a")]
    A,
}

impl From<KindArg> for SumKind {
    fn from(kind: KindArg) -> SumKind {
        match kind {
            KindArg::S => SumKind::S,
            KindArg::A => SumKind::A,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairArg {
    #[value(name = "UU", alias = "uu")]
    UU,
    #[value(name = "VV", alias = "vv")]
    VV,
    #[value(name = "UV", alias = "uv")]
    UV,
}

impl From<PairArg> for SumPair {
    fn from(pair: PairArg) -> SumPair {
        match pair {
            PairArg::UU => SumPair::UU,
            PairArg::VV => SumPair::VV,
            PairArg::UV => SumPair::UV,
        }
    }
}

#[derive(Args, Debug)]
struct SumArgs {
    #[command(flatten)]
    params: ParamArgs,

    /// S for the plain sum, A for the alternating sum.
    #[arg(long, value_enum)]
    kind: KindArg,

    /// Component pair the products range over.
    #[arg(long, value_enum)]
    pair: PairArg,

    #[arg(short, long, allow_negative_numbers = true)]
    r: i64,

    #[arg(short, long, allow_negative_numbers = true)]
    s: i64,

    /// Upper summation bound (the sum has n + 1 terms).
    #[arg(short, long)]
    n: u64,

    /// Also run the naive and derived-form paths and require agreement.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity id from the catalog (see README for the list).
    #[arg(long, conflicts_with = "all")]
    id: Option<String>,

    /// Sweep every cataloged identity.
    #[arg(long)]
    all: bool,

    /// Named grid; only "default" is defined.
    #[arg(long, default_value = "default")]
    grid: String,

    /// Restrict parameters to explicit pairs "p,q" (repeatable).
    #[arg(long = "pq", value_parser = parse_pq)]
    pq: Vec<(i64, i64)>,

    /// Override the index-variable range, e.g. "-4..4".
    #[arg(long, value_parser = parse_index_spec, allow_hyphen_values = true)]
    index_range: Option<IndexSpec>,

    /// Override the count-variable range, e.g. "0..20".
    #[arg(long, value_parser = parse_index_spec, allow_hyphen_values = true)]
    count_range: Option<IndexSpec>,
}

fn parse_pq(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"p,q\", got '{s}'"))?;
    let p: i64 = p.trim().parse().map_err(|_| format!("bad p in '{s}'"))?;
    let q: i64 = q.trim().parse().map_err(|_| format!("bad q in '{s}'"))?;
    Ok((p, q))
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    params: ParamArgs,

    /// Upper summation bounds to time (repeatable).
    #[arg(short, long, default_values_t = [1_000u64, 10_000, 100_000])]
    n: Vec<u64>,

    #[arg(long, value_enum, default_value = "S")]
    kind: KindArg,

    #[arg(long, value_enum, default_value = "UU")]
    pair: PairArg,

    #[arg(short, long, default_value_t = 0, allow_negative_numbers = true)]
    r: i64,

    #[arg(short, long, default_value_t = 0, allow_negative_numbers = true)]
    s: i64,
}

#[derive(Args, Debug)]
struct OeisArgs {
    /// A-number, e.g. A001906.
    #[arg(long, conflicts_with = "all")]
    id: Option<String>,

    /// Check every cataloged A-number.
    #[arg(long)]
    all: bool,

    /// How many leading terms to compare.
    #[arg(long, default_value_t = 15)]
    terms: usize,

    /// Fetch b-files over HTTP instead of using the bundled fixtures.
    #[arg(long)]
    online: bool,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args, cli.format),
        Command::Sum(args) => cmd_sum(args, cli.format),
        Command::Verify(args) => cmd_verify(args, cli.format),
        Command::Bench(args) => cmd_bench(args, cli.format),
        Command::Oeis(args) => cmd_oeis(args, cli.format),
    }
}

fn params_json(params: &SequenceParams) -> serde_json::Value {
    json!({ "p": params.p(), "q": params.q(), "delta": params.delta() })
}

fn cmd_eval(args: &EvalArgs, format: Format) -> Result<i32, CliError> {
    let params = args.params.resolve()?;
    let mut points = Vec::new();
    for n in args.index.from..=args.index.to {
        points.push(eval_pair(&params, n)?);
    }

    let mut out = String::new();
    match format {
        Format::Plain => {
            for pt in &points {
                writeln!(out, "n={} U={} V={}", pt.index, pt.u, pt.v).unwrap();
            }
        }
        Format::Tsv => {
            for pt in &points {
                writeln!(out, "{}\t{}\t{}", pt.index, pt.u, pt.v).unwrap();
            }
        }
        Format::Json => {
            let values: Vec<_> = points
                .iter()
                .map(|pt| json!({ "n": pt.index, "u": pt.u.to_string(), "v": pt.v.to_string() }))
                .collect();
            let doc = json!({
                "command": "eval",
                "params": params_json(&params),
                "query": { "from": args.index.from, "to": args.index.to },
                "values": values,
            });
            writeln!(out, "{doc}").unwrap();
        }
    }
    print!("{out}");
    Ok(EXIT_OK)
}

/// Test-only hook: offsets the closed-form value before the `--check`
/// comparison so the disagreement path can be exercised end to end. Compiled
/// out of release builds.
fn check_fault_offset() -> i64 {
    #[cfg(debug_assertions)]
    {
        if let Ok(text) = std::env::var("LUCAS_CHECK_FAULT") {
            return text.parse().unwrap_or(0);
        }
    }
    0
}

fn cmd_sum(args: &SumArgs, format: Format) -> Result<i32, CliError> {
    let params = args.params.resolve()?;
    let query = SumQuery::new(args.kind.into(), args.pair.into(), args.r, args.s, args.n);
    let mut closed = sum_theorem1(&params, &query)?;
    closed.value += check_fault_offset();

    let query_json = json!({
        "kind": format!("{:?}", query.kind),
        "pair": format!("{:?}", query.pair),
        "r": query.r,
        "s": query.s,
        "n": query.n,
    });

    let mut out = String::new();
    let mut exit = EXIT_OK;
    if args.check {
        let naive = sum_naive(&params, &query)?;
        let corollary = sum_corollary1(&params, &query)?;
        let agree = naive.value == closed.value && naive.value == corollary.value;
        let paths = [
            ("naive", &naive.value),
            ("theorem1", &closed.value),
            ("corollary1", &corollary.value),
        ];
        match format {
            Format::Plain => {
                for (name, value) in paths {
                    writeln!(out, "path {name} = {value}").unwrap();
                }
                writeln!(
                    out,
                    "{}",
                    if agree { "all paths agree" } else { "PATH DISAGREEMENT" }
                )
                .unwrap();
            }
            Format::Tsv => {
                for (name, value) in paths {
                    writeln!(out, "{name}\t{value}").unwrap();
                }
                writeln!(out, "agree\t{agree}").unwrap();
            }
            Format::Json => {
                let doc = json!({
                    "command": "sum",
                    "params": params_json(&params),
                    "query": query_json,
                    "value": closed.value.to_string(),
                    "path": closed.path.name(),
                    "check": {
                        "paths": paths
                            .iter()
                            .map(|(name, value)| json!({ "path": name, "value": value.to_string() }))
                            .collect::<Vec<_>>(),
                        "agree": agree,
                    },
                });
                writeln!(out, "{doc}").unwrap();
            }
        }
        if !agree {
            exit = EXIT_FAIL;
        }
    } else {
        match format {
            Format::Plain => {
                writeln!(
                    out,
                    "{:?}({:?}) r={} s={} n={} = {} [{}]",
                    query.kind,
                    query.pair,
                    query.r,
                    query.s,
                    query.n,
                    closed.value,
                    closed.path.name()
                )
                .unwrap();
            }
            Format::Tsv => {
                writeln!(
                    out,
                    "{:?}\t{:?}\t{}\t{}\t{}\t{}\t{}",
                    query.kind,
                    query.pair,
                    query.r,
                    query.s,
                    query.n,
                    closed.value,
                    closed.path.name()
                )
                .unwrap();
            }
            Format::Json => {
                let doc = json!({
                    "command": "sum",
                    "params": params_json(&params),
                    "query": query_json,
                    "value": closed.value.to_string(),
                    "path": closed.path.name(),
                });
                writeln!(out, "{doc}").unwrap();
            }
        }
    }
    print!("{out}");
    Ok(exit)
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<i32, CliError> {
    if args.grid != "default" {
        return Err(CliError::Usage(format!(
            "unknown grid '{}' (only \"default\" is defined)",
            args.grid
        )));
    }
    let mut grid = SweepGrid::default_grid();
    if !args.pq.is_empty() {
        let mut params = Vec::new();
        for (p, q) in &args.pq {
            let pair = validate_params(*p, *q)?;
            if !pair.unit_q() {
                // The standing assumption behind every sum form and most of
                // the catalog; a sweep over such parameters would skip all
                // of its grid points.
                return Err(CliError::Domain(lucas_core::Error::SumRequiresUnitQ {
                    q: *q,
                }));
            }
            params.push(pair);
        }
        grid.params = params;
    }
    if let Some(range) = args.index_range {
        grid.index_range = (range.from, range.to);
    }
    if let Some(range) = args.count_range {
        grid.count_range = (range.from, range.to);
    }

    let ids: Vec<IdentityId> = if args.all {
        all_identity_ids()
    } else {
        let raw = args.id.as_deref().ok_or_else(|| {
            CliError::Usage("specify an identity with --id or sweep everything with --all".into())
        })?;
        let id = IdentityId::from_str_id(raw)
            .ok_or_else(|| CliError::Usage(format!("unknown identity id '{raw}'")))?;
        vec![id]
    };

    let run = run_catalog(&ids, &grid)?;

    let mut out = String::new();
    match format {
        Format::Plain => {
            for report in &run.reports {
                writeln!(
                    out,
                    "{} [{}] {} checked={} skipped={} counterexamples={}",
                    report.identity,
                    report.status,
                    match report.verified() {
                        true => "verified-on-grid",
                        false => "falsified",
                    },
                    report.cases_checked,
                    report.cases_skipped,
                    report.counterexamples.len()
                )
                .unwrap();
                for ce in report.counterexamples.iter().take(3) {
                    let binding: Vec<String> =
                        ce.binding.iter().map(|(name, val)| format!("{name}={val}")).collect();
                    writeln!(
                        out,
                        "  counterexample p={} q={} {}: lhs={} rhs={}",
                        ce.params.p,
                        ce.params.q,
                        binding.join(" "),
                        ce.lhs,
                        ce.rhs
                    )
                    .unwrap();
                }
            }
            if let Some(alarm) = &run.alarm {
                writeln!(out, "{alarm}").unwrap();
            }
        }
        Format::Tsv => {
            for report in &run.reports {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    report.identity,
                    report.status,
                    match report.verified() {
                        true => "verified-on-grid",
                        false => "falsified",
                    },
                    report.cases_checked,
                    report.cases_skipped,
                    report.counterexamples.len()
                )
                .unwrap();
            }
        }
        Format::Json => {
            let doc = json!({
                "command": "verify",
                "reports": run.reports,
                "alarm": run.alarm.as_ref().map(|alarm| alarm.report.identity.clone()),
            });
            writeln!(out, "{doc}").unwrap();
        }
    }
    print!("{out}");
    Ok(if run.clean() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_bench(args: &BenchArgs, format: Format) -> Result<i32, CliError> {
    let params = args.params.resolve()?;
    let mut rows = Vec::new();
    let mut all_equal = true;
    for &n in &args.n {
        let query = SumQuery::new(args.kind.into(), args.pair.into(), args.r, args.s, n);
        let start = Instant::now();
        let naive = sum_naive(&params, &query)?;
        let naive_ns = start.elapsed().as_nanos();
        let start = Instant::now();
        let closed = sum_theorem1(&params, &query)?;
        let closed_ns = start.elapsed().as_nanos();
        let equal = naive.value == closed.value;
        all_equal &= equal;
        let ratio = naive_ns as f64 / closed_ns.max(1) as f64;
        let digits = closed.value.to_string().len();
        rows.push((n, naive_ns, closed_ns, ratio, equal, digits));
    }

    let mut out = String::new();
    match format {
        Format::Plain => {
            for (n, naive_ns, closed_ns, ratio, equal, digits) in &rows {
                writeln!(
                    out,
                    "n={n} naive_ns={naive_ns} closed_ns={closed_ns} ratio={ratio:.2} equal={equal} digits={digits}"
                )
                .unwrap();
            }
        }
        Format::Tsv => {
            for (n, naive_ns, closed_ns, ratio, equal, digits) in &rows {
                writeln!(out, "{n}\t{naive_ns}\t{closed_ns}\t{ratio:.2}\t{equal}\t{digits}").unwrap();
            }
        }
        Format::Json => {
            let results: Vec<_> = rows
                .iter()
                .map(|(n, naive_ns, closed_ns, ratio, equal, digits)| {
                    json!({
                        "n": n,
                        "naive_ns": *naive_ns as u64,
                        "closed_ns": *closed_ns as u64,
                        "ratio": ratio,
                        "equal": equal,
                        "digits": digits,
                    })
                })
                .collect();
            let doc = json!({
                "command": "bench",
                "params": params_json(&params),
                "query": {
                    "kind": format!("{:?}", SumKind::from(args.kind)),
                    "pair": format!("{:?}", SumPair::from(args.pair)),
                    "r": args.r,
                    "s": args.s,
                },
                "results": results,
            });
            writeln!(out, "{doc}").unwrap();
        }
    }
    print!("{out}");
    Ok(if all_equal { EXIT_OK } else { EXIT_FAIL })
}

fn fetch_online(entry: &oeis::OeisEntry) -> Result<Vec<BigInt>, CliError> {
    let digits = &entry.id[1..];
    let url = format!("https://oeis.org/{}/b{}.txt", entry.id, digits);
    let mut response = ureq::get(&url)
        .call()
        .map_err(|err| CliError::Network(format!("fetching {url}: {err}")))?;
    if response.status() != 200 {
        return Err(CliError::Network(format!(
            "fetching {url}: HTTP {}",
            response.status()
        )));
    }
    let body = response
        .body_mut()
        .read_to_string()
        .map_err(|err| CliError::Network(format!("reading {url}: {err}")))?;
    oeis::parse_b_file(&body).map_err(|err| CliError::Network(format!("parsing {url}: {err}")))
}

fn cmd_oeis(args: &OeisArgs, format: Format) -> Result<i32, CliError> {
    let entries: Vec<&oeis::OeisEntry> = if args.all {
        oeis::CATALOG.iter().collect()
    } else {
        let raw = args.id.as_deref().ok_or_else(|| {
            CliError::Usage("specify a sequence with --id or check everything with --all".into())
        })?;
        let entry = oeis::lookup(raw)
            .ok_or_else(|| CliError::Usage(format!("unknown sequence id '{raw}'")))?;
        vec![entry]
    };

    let mut reports = Vec::new();
    for entry in entries {
        let reference = if args.online {
            fetch_online(entry)?
        } else {
            let text = oeis::fixture(entry.id).expect("every cataloged id has a fixture");
            oeis::parse_b_file(text).map_err(CliError::Alarm)?
        };
        if reference.len() < args.terms {
            return Err(CliError::Usage(format!(
                "{}: reference provides {} terms, --terms asked for {}",
                entry.id,
                reference.len(),
                args.terms
            )));
        }
        let mismatch = oeis::compare(entry, &reference, args.terms).map_err(CliError::Alarm)?;
        reports.push((entry, mismatch));
    }

    let mut out = String::new();
    let mut all_match = true;
    for (entry, mismatch) in &reports {
        all_match &= mismatch.is_none();
        match format {
            Format::Plain => match mismatch {
                None => {
                    writeln!(out, "{} match terms={} ({})", entry.id, args.terms, entry.describe)
                        .unwrap()
                }
                Some(m) => writeln!(
                    out,
                    "{} MISMATCH at term {}: local={} reference={}",
                    entry.id, m.position, m.local, m.reference
                )
                .unwrap(),
            },
            Format::Tsv => match mismatch {
                None => writeln!(out, "{}\tmatch\t{}", entry.id, args.terms).unwrap(),
                Some(m) => {
                    writeln!(out, "{}\tmismatch\t{}\t{}\t{}", entry.id, m.position, m.local, m.reference)
                        .unwrap()
                }
            },
            Format::Json => {}
        }
    }
    if format == Format::Json {
        let doc = json!({
            "command": "oeis",
            "mode": if args.online { "online" } else { "offline" },
            "terms": args.terms,
            "reports": reports
                .iter()
                .map(|(entry, mismatch)| {
                    json!({
                        "id": entry.id,
                        "sequence": entry.describe,
                        "matched": mismatch.is_none(),
                        "first_mismatch": mismatch.as_ref().map(|m| {
                            json!({
                                "position": m.position,
                                "local": m.local.to_string(),
                                "reference": m.reference.to_string(),
                            })
                        }),
                    })
                })
                .collect::<Vec<_>>(),
        });
        writeln!(out, "{doc}").unwrap();
    }
    print!("{out}");
    Ok(if all_match { EXIT_OK } else { EXIT_FAIL })
}

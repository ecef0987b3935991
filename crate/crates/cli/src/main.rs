//! Command-line front end: certified evaluation, tabulation, bound
//! inspection, gap reports, claim verification and raw Sturm queries.
//!
//! Exit codes: 0 success (all claims proved), 1 verification failure,
//! 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use mills::bounds;
use mills::convergents::convergent_eval;
use mills::asymptotic::jn_eval;
use mills::oracle;
use mills::polynomial::parse_polynomial_text;
use mills::rational::{parse_rational, to_decimal_string, Rational};
use mills::sturm::{count_roots, is_positive_on, isolate_roots, SturmPoint};
use mills::verifier::{self, Certificate, Verdict};
use mills::Enclosure;
use num_traits::Signed;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mills",
    version,
    about = "Certified evaluation and computer-assisted proofs for the Mills ratio",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate f(x) or a derivative as a guaranteed enclosure
    Eval(EvalArgs),
    /// Tabulate f and selected bounds over a list or range of points
    Table(TableArgs),
    /// Inspect the bounds catalog
    Bounds {
        #[command(subcommand)]
        command: BoundsCommand,
    },
    /// Verify inequality claims as Sturm-backed certificates
    Verify(VerifyArgs),
    /// Raw Sturm queries on polynomials with rational coefficients
    Sturm(SturmArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Args)]
struct EvalArgs {
    /// Evaluation point (rational or finite decimal, parsed exactly)
    x: String,
    /// Target enclosure width, e.g. 1e-12
    #[arg(long, default_value = "1e-9")]
    width: String,
    /// Derivative order n for f^(n)(x)
    #[arg(long, default_value_t = 0)]
    derivative: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Decimal digits shown in human output
    #[arg(long, default_value_t = 15)]
    digits: u32,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated evaluation points
    #[arg(long, value_delimiter = ',')]
    xs: Vec<String>,
    /// Range a:b:n (n points from a to b inclusive)
    #[arg(long)]
    range: Option<String>,
    /// Bound selectors: catalog ids, QnPn convergents (e.g. Q3P3), or Jn
    #[arg(long, value_delimiter = ',')]
    bounds: Vec<String>,
    /// Enclosure width for f
    #[arg(long, default_value = "1e-9")]
    width: String,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[arg(long, default_value_t = 12)]
    digits: u32,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// List every catalog entry
    List {
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Evaluate one bound (and f) on points; CSV columns:
    /// x, bound_lo, bound_hi, f_lo, f_hi
    Eval {
        /// Catalog id, e.g. W_{2,1} or w21
        id: String,
        #[arg(long, value_delimiter = ',')]
        xs: Vec<String>,
        #[arg(long)]
        range: Option<String>,
        /// Bracket precision in decimal digits
        #[arg(long, env = "MILLS_DEFAULT_PRECISION", default_value_t = 12)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
    /// Measure the supremum gap between an upper and a lower bound
    Gap {
        upper: String,
        lower: String,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        /// Width of the refined argmax bracket
        #[arg(long, default_value = "1e-3")]
        tol: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim ids to verify
    claims: Vec<String>,
    /// Verify the whole built-in registry
    #[arg(long)]
    all: bool,
    /// Verify claims from a JSON claim file
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Worker threads for independent claims
    #[arg(long, default_value_t = 4)]
    jobs: usize,
}

#[derive(Args)]
struct SturmArgs {
    /// Polynomial: `c_k x^k + ... + c_0` text, or a JSON array of rational
    /// strings indexed by degree
    #[arg(long)]
    poly: String,
    /// Interval a:b; `inf`/`-inf` allowed; defaults to the whole line
    #[arg(long, default_value = "-inf:inf")]
    interval: String,
    /// Query to run
    #[arg(value_enum)]
    action: SturmAction,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum SturmAction {
    /// Count distinct real roots in the open interval
    Count,
    /// Isolate every real root in disjoint rational intervals
    Isolate,
    /// Certify strict positivity on the interval
    Positive,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Table(args) => cmd_table(args),
        Command::Bounds { command } => cmd_bounds(command),
        Command::Verify(args) => cmd_verify(args),
        Command::Sturm(args) => cmd_sturm(args),
    }
}

fn parse_point(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, String> {
    let x = parse_point(&args.x)?;
    if x.is_negative() {
        return Err(format!("f is defined on [0, inf); got x = {}", args.x));
    }
    let width = parse_point(&args.width)?;
    let query = mills::MillsQuery::derivative(args.derivative, x.clone(), width);
    let enc = oracle::mills_query(&query).map_err(|e| e.to_string())?;
    match args.format {
        Format::Json => {
            let payload = serde_json::json!({
                "x": x.to_string(),
                "derivative": args.derivative,
                "lo": enc.lo().to_string(),
                "hi": enc.hi().to_string(),
                "lo_decimal": to_decimal_string(enc.lo(), args.digits),
                "hi_decimal": to_decimal_string(enc.hi(), args.digits),
            });
            println!("{payload}");
        }
        _ => {
            let label = if args.derivative == 0 {
                format!("f({})", args.x)
            } else {
                format!("f^({})({})", args.derivative, args.x)
            };
            println!("{label} in {}", enc.display_decimal(args.digits));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// A column selector for `table`: a catalog entry, a convergent `QnPn`,
/// or a tail truncation `Jn`.
enum Selector {
    Catalog(bounds::BoundSpec),
    Convergent(usize),
    Tail(usize),
}

impl Selector {
    fn parse(token: &str) -> Result<(String, Selector), String> {
        let t = token.trim();
        if let Some(rest) = t.strip_prefix('J') {
            if let Ok(n) = rest.parse::<usize>() {
                if n >= 1 {
                    return Ok((t.to_string(), Selector::Tail(n)));
                }
            }
        }
        if let Some(rest) = t.strip_prefix('Q') {
            if let Some((a, b)) = rest.split_once('P') {
                if let (Ok(n), Ok(m)) = (a.parse::<usize>(), b.parse::<usize>()) {
                    if n == m {
                        return Ok((t.to_string(), Selector::Convergent(n)));
                    }
                    return Err(format!("convergent selector `{t}` must use matching indices"));
                }
            }
        }
        let spec = bounds::lookup(t).map_err(|e| e.to_string())?;
        Ok((spec.id.to_string(), Selector::Catalog(spec)))
    }

    fn eval(&self, x: &Rational, precision: u32) -> Result<Enclosure, String> {
        match self {
            Selector::Catalog(spec) => {
                bounds::eval_bound_spec(spec, x, precision).map_err(|e| e.to_string())
            }
            Selector::Convergent(n) => {
                let v = convergent_eval(*n, x).map_err(|e| e.to_string())?;
                Ok(Enclosure::point(v))
            }
            Selector::Tail(n) => {
                let v = jn_eval(*n, x).map_err(|e| e.to_string())?;
                Ok(Enclosure::point(v))
            }
        }
    }
}

fn parse_points(xs: &[String], range: &Option<String>) -> Result<Vec<Rational>, String> {
    let mut points = Vec::new();
    for x in xs {
        points.push(parse_point(x)?);
    }
    if let Some(range) = range {
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range `{range}` must be a:b:n"));
        }
        let a = parse_point(parts[0])?;
        let b = parse_point(parts[1])?;
        let n: usize = parts[2].parse().map_err(|_| format!("bad count in `{range}`"))?;
        if n < 2 || b <= a {
            return Err(format!("range `{range}` must have b > a and n >= 2"));
        }
        let step = (&b - &a) / Rational::from_integer(((n - 1) as i64).into());
        for i in 0..n {
            points.push(&a + &step * Rational::from_integer((i as i64).into()));
        }
    }
    if points.is_empty() {
        return Err("no evaluation points: pass --xs or --range".into());
    }
    Ok(points)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, String> {
    let points = parse_points(&args.xs, &args.range)?;
    let width = parse_point(&args.width)?;
    let mut selectors = Vec::new();
    for token in &args.bounds {
        selectors.push(Selector::parse(token)?);
    }
    let precision = 12;
    let mut header = vec!["x".to_string(), "f_lo".into(), "f_hi".into()];
    for (name, _) in &selectors {
        header.push(format!("{name}_lo"));
        header.push(format!("{name}_hi"));
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut decimal_rows: Vec<Vec<String>> = Vec::new();
    for x in &points {
        if x.is_negative() {
            return Err(format!("negative point {x}"));
        }
        let f = oracle::mills_enclosure(x, &width).map_err(|e| e.to_string())?;
        let mut row = vec![x.to_string(), f.lo().to_string(), f.hi().to_string()];
        let mut drow = vec![
            to_decimal_string(x, args.digits.min(6)),
            to_decimal_string(f.lo(), args.digits),
            to_decimal_string(f.hi(), args.digits),
        ];
        for (_, sel) in &selectors {
            let e = sel.eval(x, precision)?;
            row.push(e.lo().to_string());
            row.push(e.hi().to_string());
            drow.push(to_decimal_string(e.lo(), args.digits));
            drow.push(to_decimal_string(e.hi(), args.digits));
        }
        rows.push(row);
        decimal_rows.push(drow);
    }
    emit_table(&header, &rows, &decimal_rows, args.format);
    Ok(ExitCode::SUCCESS)
}

fn emit_table(header: &[String], rows: &[Vec<String>], decimal_rows: &[Vec<String>], format: Format) {
    match format {
        Format::Csv => {
            println!("{}", header.join(","));
            for row in rows {
                println!("{}", row.join(","));
            }
        }
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let map: serde_json::Map<String, serde_json::Value> = header
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                        .collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            println!("{}", serde_json::Value::Array(objects));
        }
        Format::Human => {
            let widths: Vec<usize> = header
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    decimal_rows
                        .iter()
                        .map(|r| r[i].len())
                        .chain([h.len()])
                        .max()
                        .unwrap_or(8)
                })
                .collect();
            let fmt_row = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            println!("{}", fmt_row(header));
            for row in decimal_rows {
                println!("{}", fmt_row(row));
            }
        }
    }
}

fn cmd_bounds(command: BoundsCommand) -> Result<ExitCode, String> {
    match command {
        BoundsCommand::List { format } => {
            let infos: Vec<_> = bounds::catalog().iter().map(|b| b.info()).collect();
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&infos).map_err(|e| e.to_string())?
                ),
                _ => {
                    println!(
                        "{:<18} {:<18} {:<8} {:<10} {:<12} formula",
                        "id", "family", "side", "target", "coincidence"
                    );
                    for info in infos {
                        println!(
                            "{:<18} {:<18} {:<8} {:<10} {:<12} {}",
                            info.id,
                            format!("{:?}", info.family),
                            format!("{:?}", info.side),
                            format!("{:?}", info.target),
                            info.coincidence
                                .map(|(i, j)| format!("({i}, {j})"))
                                .unwrap_or_else(|| "-".into()),
                            info.formula
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        BoundsCommand::Eval { id, xs, range, precision, format, digits } => {
            let spec = bounds::lookup(&id).map_err(|e| e.to_string())?;
            let points = parse_points(&xs, &range)?;
            let width = mills::rational::ten_pow_neg(precision);
            let header: Vec<String> = ["x", "bound_lo", "bound_hi", "f_lo", "f_hi"]
                .into_iter()
                .map(String::from)
                .collect();
            let mut rows = Vec::new();
            let mut drows = Vec::new();
            for x in &points {
                let b = bounds::eval_bound_spec(&spec, x, precision).map_err(|e| e.to_string())?;
                let f = match spec.target {
                    bounds::Target::Mills => oracle::mills_enclosure(x, &width),
                    bounds::Target::QFunction => oracle::q_function(x, &width),
                }
                .map_err(|e| e.to_string())?;
                rows.push(vec![
                    x.to_string(),
                    b.lo().to_string(),
                    b.hi().to_string(),
                    f.lo().to_string(),
                    f.hi().to_string(),
                ]);
                drows.push(vec![
                    to_decimal_string(x, 6),
                    to_decimal_string(b.lo(), digits),
                    to_decimal_string(b.hi(), digits),
                    to_decimal_string(f.lo(), digits),
                    to_decimal_string(f.hi(), digits),
                ]);
            }
            emit_table(&header, &rows, &drows, format);
            Ok(ExitCode::SUCCESS)
        }
        BoundsCommand::Gap { upper, lower, grid, tol, format } => {
            let tol = parse_point(&tol)?;
            let report = bounds::gap(&upper, &lower, grid, &tol).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                ),
                _ => {
                    println!(
                        "sup({} - {}) <= {} (grid {} + refinement; certified: {})",
                        report.upper_id,
                        report.lower_id,
                        report.sup_gap_decimal,
                        report.grid,
                        report.certified
                    );
                    println!(
                        "argmax in [{:.6}, {:.6}]",
                        report.argmax_interval_decimal.0, report.argmax_interval_decimal.1
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let claims: Vec<verifier::Claim> = if args.all {
        verifier::builtin_claims()
    } else if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        verifier::parse_claim_file(&text).map_err(|e| e.to_string())?
    } else if !args.claims.is_empty() {
        let mut selected = Vec::new();
        for id in &args.claims {
            selected.push(verifier::claim_by_id(id).map_err(|e| e.to_string())?);
        }
        selected
    } else {
        return Err("pass claim ids, --all, or --file claims.json".into());
    };

    let certificates = verify_parallel(claims, args.jobs.max(1))?;
    let mut all_proved = true;
    match args.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&certificates).map_err(|e| e.to_string())?
            );
            all_proved = certificates.iter().all(|c| c.verdict == Verdict::Proved);
        }
        _ => {
            for cert in &certificates {
                println!("{:?}  {}", cert.verdict, cert.claim_id);
                for sub in &cert.subcertificates {
                    let roots = sub
                        .nearest_external_root
                        .as_ref()
                        .map(|(a, b)| format!("; nearest external root in ({a}, {b})"))
                        .unwrap_or_default();
                    println!(
                        "    [{}, {}] via {}: {:?}{}",
                        sub.interval.0, sub.interval.1, sub.envelope, sub.verdict, roots
                    );
                }
                if let Some(note) = &cert.note {
                    println!("    note: {note}");
                }
                if cert.verdict != Verdict::Proved {
                    all_proved = false;
                }
            }
            let n = certificates.len();
            println!(
                "{}/{} claims proved",
                certificates.iter().filter(|c| c.verdict == Verdict::Proved).count(),
                n
            );
        }
    }
    Ok(if all_proved { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Verifies claims across a bounded pool; output is ordered by claim id.
fn verify_parallel(
    claims: Vec<verifier::Claim>,
    jobs: usize,
) -> Result<Vec<Certificate>, String> {
    let mut indexed: Vec<(usize, verifier::Claim)> = claims.into_iter().enumerate().collect();
    indexed.sort_by(|a, b| a.1.id.cmp(&b.1.id));
    let work = std::sync::Mutex::new(indexed.into_iter());
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let next = { work.lock().unwrap().next() };
                let Some((_, claim)) = next else { break };
                let outcome = verifier::certify(&claim).map_err(|e| e.to_string());
                results.lock().unwrap().push(outcome);
            });
        }
    });
    let mut certificates = results
        .into_inner()
        .unwrap()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    certificates.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    Ok(certificates)
}

fn parse_endpoint(s: &str) -> Result<SturmPoint, String> {
    match s.trim() {
        "inf" | "+inf" | "oo" => Ok(SturmPoint::PosInf),
        "-inf" | "-oo" => Ok(SturmPoint::NegInf),
        other => Ok(SturmPoint::Finite(parse_point(other)?)),
    }
}

fn cmd_sturm(args: SturmArgs) -> Result<ExitCode, String> {
    let trimmed = args.poly.trim();
    let poly = if trimmed.starts_with('[') {
        let coeffs: Vec<String> =
            serde_json::from_str(trimmed).map_err(|e| format!("bad JSON coefficients: {e}"))?;
        let mut parsed = Vec::new();
        for c in &coeffs {
            parsed.push(parse_point(c)?);
        }
        mills::Polynomial::new(parsed)
    } else {
        parse_polynomial_text(trimmed)?
    };
    if poly.is_zero() {
        return Err("zero polynomial".into());
    }
    let (a, b) = args
        .interval
        .split_once(':')
        .ok_or_else(|| format!("interval `{}` must be a:b", args.interval))?;
    let lo = parse_endpoint(a)?;
    let hi = parse_endpoint(b)?;
    match args.action {
        SturmAction::Count => {
            let n = count_roots(&poly, &lo, &hi).map_err(|e| e.to_string())?;
            match args.format {
                Format::Json => println!("{}", serde_json::json!({ "roots": n })),
                _ => println!("{n} distinct real roots in ({lo}, {hi})"),
            }
        }
        SturmAction::Isolate => {
            let intervals = isolate_roots(&poly, &lo, &hi).map_err(|e| e.to_string())?;
            match args.format {
                Format::Json => {
                    let payload: Vec<_> = intervals
                        .iter()
                        .map(|(a, b)| serde_json::json!([a.to_string(), b.to_string()]))
                        .collect();
                    println!("{}", serde_json::Value::Array(payload));
                }
                _ => {
                    if intervals.is_empty() {
                        println!("no real roots in ({lo}, {hi})");
                    }
                    for (a, b) in &intervals {
                        if a == b {
                            println!("root at {a}");
                        } else {
                            println!(
                                "root in [{a}, {b}]  ~ [{}, {}]",
                                to_decimal_string(a, 6),
                                to_decimal_string(b, 6)
                            );
                        }
                    }
                }
            }
        }
        SturmAction::Positive => {
            let positive = is_positive_on(&poly, &lo, &hi).map_err(|e| e.to_string())?;
            match args.format {
                Format::Json => println!("{}", serde_json::json!({ "positive": positive })),
                _ => println!(
                    "{} on ({lo}, {hi})",
                    if positive { "positive" } else { "not certified positive" }
                ),
            }
            if !positive {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

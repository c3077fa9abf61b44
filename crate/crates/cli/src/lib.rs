//! The `motivic` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
//! ceiling. Wall time goes to stderr so stdout stays byte-deterministic.

pub mod expr;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use motivic_core::classes::{realize_euler_series, realize_weight_series};
use motivic_core::dtgen::{
    macmahon_guess, refined_macmahon, unified_formula, weight_partition_function, z_c3_product,
    z_c3_recursion, z_x_exp, z_x_power,
};
use motivic_core::partitions::{count_dpartitions_upto, refined_sum};
use motivic_core::verify::{run_suite, Suite};
use motivic_core::{
    BettiVector, Error, HalfInt, IntSeries, MotSeries, MotWeight, WeightPoly, WeightSeries,
};

pub use expr::parse_class;

pub const THREADS_ENV: &str = "MOTIVIC_THREADS";

#[derive(Parser, Debug)]
#[command(name = "motivic", version, about = "Virtual motives of Hilbert schemes of points")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for enumeration (default: $MOTIVIC_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Product,
    Recursion,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Realize {
    Motivic,
    Weight,
    Euler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Flagship,
    Plethysm,
    Feitfine,
    Refined,
    Guess,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition function of C^3.
    Zc3 {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Product)]
        route: RouteArg,
    },
    /// Partition function of a threefold.
    Zx(ZxArgs),
    /// Partition function of a d-dimensional variety.
    Unified {
        #[arg(long)]
        dim: i64,
        #[arg(long)]
        class: String,
        #[arg(long)]
        order: usize,
    },
    /// Refined MacMahon function.
    Macmahon {
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long)]
        order: usize,
        /// Also sum the refined statistics over enumerated plane partitions.
        #[arg(long)]
        oracle: bool,
    },
    /// MacMahon's guess for d-dimensional partitions.
    Guess {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        order: usize,
        /// Compare against brute-force enumeration.
        #[arg(long)]
        compare: bool,
    },
    /// Brute-force enumeration of d-dimensional partitions.
    #[command(subcommand)]
    Partitions(PartitionsCommand),
    /// Run an identity suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Args, Debug)]
struct ZxArgs {
    /// Class of the threefold as an expression in L.
    #[arg(long, conflicts_with = "betti", required_unless_present = "betti")]
    class: Option<String>,
    /// Betti numbers b0,..,b6; only the weight realization is available.
    #[arg(long)]
    betti: Option<String>,
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum)]
    realize: Option<Realize>,
}

#[derive(Subcommand, Debug)]
enum PartitionsCommand {
    /// Number of partitions of every size up to n.
    Count {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        n: usize,
    },
    /// Refined statistics sum over plane partitions of size up to n.
    Refined {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
}

/// A failed run with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceCeiling(_) => 3,
            Error::InvalidArgument(_) | Error::Parse(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// What a subcommand produced: a document per output format and whether
/// every check it ran passed.
struct Output {
    json: Value,
    csv: String,
    text: String,
    ok: bool,
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let threads = match cli.threads.map(Ok).or_else(threads_from_env) {
        Some(Ok(k)) => Some(k),
        Some(Err(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        None => None,
    };
    let pool = match threads {
        Some(0) => {
            let _ = writeln!(err, "error: thread count must be positive");
            return 2;
        }
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };

    let start = Instant::now();
    let result = pool.install(|| execute(&cli.command));
    let elapsed = start.elapsed();
    let code = match result {
        Ok(o) => {
            let body = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&o.json).expect("json")),
                Format::Csv => o.csv,
                Format::Text => o.text,
            };
            let _ = out.write_all(body.as_bytes());
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    };
    let _ = writeln!(err, "wall time: {:.3}s", elapsed.as_secs_f64());
    code
}

fn threads_from_env() -> Option<std::result::Result<usize, String>> {
    let v = std::env::var(THREADS_ENV).ok()?;
    Some(
        v.trim()
            .parse()
            .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {v:?}")),
    )
}

fn parse_delta(s: &str) -> Result<HalfInt, Failure> {
    s.parse::<HalfInt>().map_err(Failure::from)
}

fn execute(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Zc3 { order, route } => zc3(*order, *route),
        Command::Zx(args) => zx(args),
        Command::Unified { dim, class, order } => {
            let x = parse_class(class)?;
            let z = unified_formula(*dim, &x, *order)?;
            Ok(motivic_output(&z.series, json!({ "dim": dim, "class": x.to_l_string() }), true))
        }
        Command::Macmahon { delta, order, oracle } => macmahon(parse_delta(delta)?, *order, *oracle),
        Command::Guess { dim, order, compare } => guess(*dim, *order, *compare),
        Command::Partitions(PartitionsCommand::Count { dim, n }) => {
            let counts = count_dpartitions_upto(*dim, *n)?;
            Ok(count_output(&counts, json!({ "dim": dim })))
        }
        Command::Partitions(PartitionsCommand::Refined { n, delta }) => {
            let delta = parse_delta(delta)?;
            let s = refined_sum(*n, delta)?;
            Ok(weight_output(&s, json!({ "delta": delta.to_string(), "route": "enumeration" }), true))
        }
        Command::Verify { suite, order } => verify(*suite, *order),
    }
}

fn zc3(order: usize, route: RouteArg) -> Result<Output, Failure> {
    let (series, extra) = match route {
        RouteArg::Product => (z_c3_product(order).series, json!({ "route": "product" })),
        RouteArg::Recursion => (z_c3_recursion(order)?.series, json!({ "route": "recursion" })),
        RouteArg::Both => {
            let p = z_c3_product(order).series;
            let r = z_c3_recursion(order)?.series;
            let agree = p == r;
            let mut extra = json!({ "route": "both", "routes_agree": agree });
            if let Some(n) = p.first_mismatch(&r) {
                extra["first_failure_degree"] = json!(n);
            }
            return Ok(Output { ok: agree, ..motivic_output(&p, extra, agree) });
        }
    };
    Ok(motivic_output(&series, extra, true))
}

fn zx(args: &ZxArgs) -> Result<Output, Failure> {
    if let Some(b) = &args.betti {
        if matches!(args.realize, Some(Realize::Motivic) | Some(Realize::Euler)) {
            return Err(usage("--betti input supports only --realize weight"));
        }
        let b: BettiVector = b.parse()?;
        let w = weight_partition_function(&b, args.order);
        return Ok(weight_output(
            &w,
            json!({ "betti": b.as_array(), "route": "weight_product" }),
            true,
        ));
    }
    let class = args.class.as_deref().expect("clap requires --class or --betti");
    let x = parse_class(class)?;
    let z = z_x_exp(&x, args.order);
    let power = z_x_power(&x, args.order)?;
    let agree = z.series == power.series;
    let extra = json!({ "class": x.to_l_string(), "routes_agree": agree });
    let o = match args.realize.unwrap_or(Realize::Motivic) {
        Realize::Motivic => motivic_output(&z.series, extra, agree),
        Realize::Weight => weight_output(&realize_weight_series(&z.series), extra, agree),
        Realize::Euler => integer_output(&realize_euler_series(&z.series), extra, agree),
    };
    Ok(o)
}

fn macmahon(delta: HalfInt, order: usize, oracle: bool) -> Result<Output, Failure> {
    let product = refined_macmahon(delta, order);
    let mut extra = json!({ "delta": delta.to_string(), "route": "product" });
    if !oracle {
        return Ok(weight_output(&product, extra, true));
    }
    let sum = refined_sum(order, delta)?;
    let agree = product == sum;
    extra["routes_agree"] = json!(agree);
    extra["enumeration"] = weight_series_json(&sum);
    let mut o = weight_output(&product, extra, agree);
    o.text.push_str("enumeration:\n");
    o.text.push_str(&weight_series_text(&sum));
    o.text.push_str(&format!("routes_agree: {agree}\n"));
    Ok(o)
}

fn guess(dim: u32, order: usize, compare: bool) -> Result<Output, Failure> {
    let g = macmahon_guess(dim, order)?;
    if !compare {
        return Ok(integer_output(&g, json!({ "dim": dim }), true));
    }
    let counts = count_dpartitions_upto(dim, order)?;
    let mismatch = (0..=order).find(|&n| g.coeff(n) != &counts[n]);
    let mut json_rows = Vec::new();
    let mut csv = String::from("n,guess,enumeration\n");
    let mut text = String::new();
    for (n, c) in counts.iter().enumerate() {
        json_rows.push(json!({ "n": n, "guess": g.coeff(n).to_string(), "enumeration": c.to_string() }));
        csv.push_str(&format!("{n},{},{c}\n", g.coeff(n)));
        let mark = if g.coeff(n) == c { "" } else { "  <- differs" };
        text.push_str(&format!("n = {n}: guess {}, enumeration {c}{mark}\n", g.coeff(n)));
    }
    match mismatch {
        Some(n) => text.push_str(&format!("first mismatch at n = {n}\n")),
        None => text.push_str(&format!("guess agrees with enumeration through n = {order}\n")),
    }
    Ok(Output {
        json: json!({ "dim": dim, "order": order, "rows": json_rows, "first_mismatch": mismatch }),
        csv,
        text,
        ok: true,
    })
}

fn verify(suite: SuiteArg, order: usize) -> Result<Output, Failure> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Flagship => Suite::Flagship,
        SuiteArg::Plethysm => Suite::Plethysm,
        SuiteArg::Feitfine => Suite::FeitFine,
        SuiteArg::Refined => Suite::Refined,
        SuiteArg::Guess => Suite::Guess,
    };
    let report = run_suite(suite, order);
    let mut csv = String::from("identity,order,status,first_failure_degree\n");
    let mut text = String::new();
    for c in &report.identities {
        let degree = c.first_failure_degree.map(|d| d.to_string()).unwrap_or_default();
        csv.push_str(&format!("{},{},{},{degree}\n", c.name, c.order, c.status()));
        text.push_str(&format!("{} {} (order {})", c.status(), c.name, c.order));
        if let Some(d) = c.first_failure_degree {
            text.push_str(&format!(", first failure at t^{d}"));
        }
        if let Some(n) = &c.note {
            text.push_str(&format!(": {n}"));
        }
        text.push('\n');
    }
    Ok(Output { json: report.to_json(), csv, text, ok: report.all_pass() })
}

fn merge(mut extra: Value, key: &str, v: Value) -> Value {
    extra[key] = v;
    extra
}

fn motivic_output(s: &MotSeries, extra: Value, ok: bool) -> Output {
    let mut csv = String::from("n,l_half_exponent,coefficient\n");
    let mut text = String::new();
    for (n, c) in s.coeffs().iter().enumerate() {
        // c u^e = c (-1)^e L^(e/2)
        for (e, a) in c.flip_sign().terms().rev() {
            csv.push_str(&format!("{n},{e},{a}\n"));
        }
        text.push_str(&format!("t^{n}: {}\n", c.to_l_string()));
    }
    let json = merge(
        merge(extra, "series", s.to_json_with(MotWeight::to_json)),
        "text",
        json!(s.coeffs().iter().map(MotWeight::to_l_string).collect::<Vec<_>>()),
    );
    Output { json, csv, text, ok }
}

fn weight_series_json(s: &WeightSeries) -> Value {
    s.to_json_with(WeightPoly::to_json)
}

fn weight_series_text(s: &WeightSeries) -> String {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| format!("t^{n}: {c}\n"))
        .collect()
}

fn weight_output(s: &WeightSeries, extra: Value, ok: bool) -> Output {
    let mut csv = String::from("n,q_half_exponent,coefficient\n");
    for (n, c) in s.coeffs().iter().enumerate() {
        for (e, a) in c.inner().terms().rev() {
            csv.push_str(&format!("{n},{e},{a}\n"));
        }
    }
    Output {
        json: merge(extra, "series", weight_series_json(s)),
        csv,
        text: weight_series_text(s),
        ok,
    }
}

fn integer_output(s: &IntSeries, extra: Value, ok: bool) -> Output {
    let mut csv = String::from("n,coefficient\n");
    let mut text = String::new();
    for (n, c) in s.coeffs().iter().enumerate() {
        csv.push_str(&format!("{n},{c}\n"));
        text.push_str(&format!("t^{n}: {c}\n"));
    }
    Output {
        json: merge(extra, "series", s.to_json_with(|c| json!(c.to_string()))),
        csv,
        text,
        ok,
    }
}

fn count_output(counts: &[BigInt], extra: Value) -> Output {
    let mut csv = String::from("n,count\n");
    let mut text = String::new();
    for (n, c) in counts.iter().enumerate() {
        csv.push_str(&format!("{n},{c}\n"));
        text.push_str(&format!("n = {n}: {c}\n"));
    }
    let rows: Vec<Value> = counts.iter().map(|c| json!(c.to_string())).collect();
    Output { json: merge(extra, "counts", json!(rows)), csv, text, ok: true }
}

//! `logseries` command-line front end.
//!
//! Every subcommand parses its flags, calls one library entry point and
//! formats the result. [`run`] returns the process exit code: 0 on success,
//! 1 when a computation fails, 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use logseries::altseries::{self, AlternatingSolution};
use logseries::betaproof::{self, LogBranch};
use logseries::binsplit;
use logseries::exactnum::{elementary, parse_rational, BigRational, FixedReal};
use logseries::relsearch::{self, LatticeStrategy};
use logseries::seriesdef::{self, Family, Motive};
use logseries::wzcert;
use logseries::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "logseries", version, about = "Fast hypergeometric series for logarithms")]
struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a catalog series to a number of decimal digits.
    Compute(ComputeArgs),
    /// Print the series catalog as JSON.
    Catalog(CatalogArgs),
    /// Binary splitting costs of catalog series.
    Cost(CostArgs),
    /// Search a ρ lattice for new series of a logarithm.
    Search(SearchArgs),
    /// Check WZ certificates and sum the series they produce.
    WzVerify(WzArgs),
    /// Prove d=2 rows by Beta integral quadrature and closed forms.
    Prove(ProveArgs),
    /// Solve for alternating series of log p.
    Alternating(AltArgs),
    /// Evaluate a parametric family member.
    Family(FamilyArgs),
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Constant to compute: log(P). Picks the cheapest catalog series.
    #[arg(long, value_parser = parse_rational_arg, required_unless_present = "series")]
    p: Option<BigRational>,
    /// Catalog label of the series to evaluate.
    #[arg(long)]
    series: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    digits: u64,
    /// Second catalog series that must agree on every digit.
    #[arg(long)]
    verify: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// Only this entry.
    #[arg(long)]
    series: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CostSelect {
    #[arg(long)]
    all: bool,
    #[arg(long)]
    series: Option<String>,
}

#[derive(Args, Debug)]
struct CostArgs {
    #[command(flatten)]
    select: CostSelect,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Target constant log(P).
    #[arg(long, value_parser = parse_rational_arg, default_value = "2")]
    p: BigRational,
    /// Motive parameters as `num;den`, each a comma list of rationals.
    #[arg(long, default_value = "1,1/2;1/6,5/6")]
    motive: String,
    /// Primes of the ρ lattice (default: those dividing the motive denominators).
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Exponent box `emin:emax`, shared by all primes.
    #[arg(long, default_value = "-8:0", allow_hyphen_values = true)]
    grid: String,
    /// Working precision in decimal digits (default: 256 bits per lindep entry).
    #[arg(long)]
    digits: Option<u64>,
    /// Only keep ρ whose binary splitting cost is below this.
    #[arg(long)]
    cost_bound: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WzArgs {
    /// Certificate name (default: all).
    #[arg(long)]
    series: Option<String>,
    /// Grid side: checks n, k in 0..GRID.
    #[arg(long, default_value_t = 21, value_parser = clap::value_parser!(u64).range(1..))]
    grid: u64,
    /// Precision of the summed series.
    #[arg(long, default_value_t = 160)]
    bits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ProveMethod {
    Integral,
    ClosedForm,
    Both,
}

#[derive(Args, Debug)]
struct ProveArgs {
    /// Row of the d=2 table (default: every row).
    #[arg(long)]
    p: Option<i64>,
    #[arg(long, value_enum, default_value_t = ProveMethod::Both)]
    method: ProveMethod,
    #[arg(long, default_value_t = 40)]
    digits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct AltSelect {
    #[arg(long)]
    p: Option<i64>,
    /// Range `lo:hi` of p to scan.
    #[arg(long)]
    scan: Option<String>,
    /// Locate the p where the alternating series stops converging.
    #[arg(long)]
    limit: bool,
}

#[derive(Args, Debug)]
struct AltArgs {
    #[command(flatten)]
    select: AltSelect,
    #[arg(long, default_value_t = altseries::DEFAULT_BITS)]
    bits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// level1, level2, d4 or d6.
    #[arg(long, value_parser = parse_family)]
    series: Family,
    /// Integer or fraction such as 5/2.
    #[arg(long, value_parser = parse_rational_arg)]
    p: BigRational,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 60)]
    digits: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family `{s}` (expected level1, level2, d4 or d6)"))
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("`{s}` is not a range lo:hi"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_motive(s: &str, rho: BigRational) -> Result<Motive, Failure> {
    let bad = || Failure::Usage(format!("`{s}` is not a motive num;den"));
    let (num, den) = s.split_once(';').ok_or_else(bad)?;
    let list = |t: &str| t.split(',').map(|x| parse_rational(x).ok_or_else(bad)).collect::<Result<Vec<_>, _>>();
    Ok(Motive::new(list(num)?, list(den)?, rho)?)
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownLabel(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes its output to `--out` or `stdout`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(stdout, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_USAGE;
        }
        // fails only if a pool already exists, e.g. on a second call in-process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(cli.command) {
        Ok((text, out)) => match emit(&text, out, stdout) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_FAILURE
            }
        },
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            EXIT_FAILURE
        }
    }
}

fn emit(text: &str, out: Option<PathBuf>, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

type Output = Result<(String, Option<PathBuf>), Failure>;

fn dispatch(cmd: Command) -> Output {
    match cmd {
        Command::Compute(a) => compute(a),
        Command::Catalog(a) => catalog(a),
        Command::Cost(a) => cost(a),
        Command::Search(a) => search(a),
        Command::WzVerify(a) => wz_verify(a),
        Command::Prove(a) => prove(a),
        Command::Alternating(a) => alternating(a),
        Command::Family(a) => family(a),
    }
}

fn compute(a: ComputeArgs) -> Output {
    let spec = match (&a.series, &a.p) {
        (Some(label), _) => seriesdef::catalog_get(label)?,
        (None, Some(p)) => seriesdef::fastest_for(p)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    if let (Some(p), Some(q)) = (&a.p, &spec.log_of) {
        if p != q {
            return Err(Failure::Usage(format!("{} computes log({q}), not log({p})", spec.label)));
        }
    }
    let result = match &a.verify {
        Some(v) => binsplit::evaluate_verified(&spec, &seriesdef::catalog_get(v)?, a.digits)?,
        None => binsplit::evaluate(&spec, a.digits)?,
    };
    let mut text = result.to_file_format();
    if let Some(v) = &result.verified_against {
        let _ = writeln!(text, "# verified against {v}");
    }
    Ok((text, a.out))
}

fn catalog(a: CatalogArgs) -> Output {
    let text = match &a.series {
        None => seriesdef::catalog_json(),
        Some(label) => {
            seriesdef::catalog_get(label)?;
            let entry = seriesdef::catalog_entries().into_iter().find(|e| &e.label == label).expect("label checked");
            serde_json::to_string_pretty(&entry).expect("serializable")
        }
    };
    Ok((text + "\n", a.out))
}

fn cost(a: CostArgs) -> Output {
    let mut entries = seriesdef::catalog_entries();
    if let Some(label) = &a.select.series {
        seriesdef::catalog_get(label)?;
        entries.retain(|e| &e.label == label);
    }
    let mut text = format!("{:<14} {:>2} {:>16} {:>22}\n", "series", "d", "rho", "cost");
    for e in entries {
        let flag = if e.conjectured { "  (conjectured)" } else { "" };
        let _ = writeln!(text, "{:<14} {:>2} {:>16} {:>22}{flag}", e.label, e.d, e.rho, e.cost);
    }
    Ok((text, a.out))
}

fn search(a: SearchArgs) -> Output {
    let (emin, emax) = parse_range(&a.grid)?;
    let (emin, emax) = (
        i32::try_from(emin).map_err(|_| Failure::Usage("exponent out of range".into()))?,
        i32::try_from(emax).map_err(|_| Failure::Usage("exponent out of range".into()))?,
    );
    let motive = parse_motive(&a.motive, BigRational::new(1.into(), 2.into()))?;
    let mut strat = LatticeStrategy::from_motive(&motive, emin, emax);
    if !a.primes.is_empty() {
        strat.primes = a.primes.iter().map(|&p| (p, emin, emax)).collect();
    }
    strat.cost_bound = a.cost_bound;
    strat.working_digits = a.digits;
    let weight = 1;
    let dim = motive.degree() + 1 - weight + 1;
    let bits = relsearch::working_bits(&strat, dim).max(256) + 64;
    if a.p <= BigRational::from_integer(0.into()) {
        return Err(Failure::Usage("--p must be positive".into()));
    }
    let target = elementary::ln(&FixedReal::from_rational(&a.p, bits + 32)).with_bits(bits);
    let outcome = relsearch::search(&motive, &target, weight as u32, &strat)?;
    let args = format!("p={} grid={} primes={:?}", a.p, a.grid, strat.primes.iter().map(|t| t.0).collect::<Vec<_>>());
    let constant = format!("log({})", a.p);
    let mut text = String::new();
    for c in &outcome.candidates {
        text.push_str(&relsearch::report_block(&args, &constant, &motive, c));
    }
    let _ = writeln!(
        text,
        "# examined {} rho values, {} relations, {} rejected, {} skipped",
        outcome.examined,
        outcome.candidates.len(),
        outcome.rejected,
        outcome.skipped
    );
    Ok((text, a.out))
}

fn wz_verify(a: WzArgs) -> Output {
    let certs = match &a.series {
        Some(name) => vec![wzcert::certificate(name)?],
        None => wzcert::certificates(),
    };
    let mut text = String::new();
    let mut failed = Vec::new();
    for cert in &certs {
        let rep = wzcert::certificate_telescoping_check(cert, a.grid - 1, a.grid - 1);
        let sum = wzcert::gst_series_auto(cert, a.bits + 16)?;
        let value = wzcert::recovered_log(cert, &sum);
        let expected = elementary::ln(&FixedReal::from_rational(&cert.log_argument(), a.bits + 16));
        let digits = betaproof::agreeing_decimals(&value, &expected);
        let _ = writeln!(
            text,
            "{:<10} telescoping {} ({} points, {} failures, {} poles)  sum {} terms = {} ({} digits of log {})",
            cert.name,
            if rep.passed() { "ok" } else { "FAILED" },
            rep.checked,
            rep.failures.len(),
            rep.poles.len(),
            sum.terms,
            value.to_decimal(30),
            digits,
            cert.log_argument()
        );
        if !rep.passed() {
            failed.push(cert.name.clone());
        }
    }
    if !failed.is_empty() {
        return Err(Failure::Compute(format!("{text}telescoping failed for {}", failed.join(", "))));
    }
    Ok((text, a.out))
}

fn prove(a: ProveArgs) -> Output {
    let rows = match a.p {
        Some(p) => vec![seriesdef::table_one_row(p).ok_or_else(|| Failure::Usage(format!("no d=2 row for p = {p}")))?],
        None => seriesdef::table_one(),
    };
    let bits = (f64::from(a.digits + 10) / std::f64::consts::LOG10_2).ceil() as u32;
    let mut text = String::new();
    let mut ok = true;
    for row in &rows {
        if a.method != ProveMethod::ClosedForm {
            let pair = betaproof::build_integrand(row)?;
            let rep = betaproof::integral_check(&pair, row.p, a.digits)?;
            ok &= rep.passed();
            let _ = writeln!(text, "p = {:<3} u = {}", row.p, pair.u);
            let _ = writeln!(text, "        v = {}", pair.v);
            let _ = writeln!(
                text,
                "        integral = {} ({} digits, {} levels) {}",
                rep.value.to_decimal(a.digits as usize),
                rep.agreeing_digits,
                rep.levels,
                if rep.passed() { "ok" } else { "FAILED" }
            );
        }
        if a.method != ProveMethod::Integral {
            let v = betaproof::closed_form_log(row, bits, LogBranch::SplitDifference)?;
            let expected = elementary::ln(&FixedReal::from_int(row.p, bits));
            let digits = betaproof::agreeing_decimals(&v, &expected);
            let pass = digits >= a.digits;
            ok &= pass;
            let kind = if row.rho.numer() < &0.into() { "complex z" } else { "real z" };
            let _ = writeln!(
                text,
                "p = {:<3} closed form ({kind}, split log) = {} ({digits} digits) {}",
                row.p,
                v.to_decimal(a.digits as usize),
                if pass { "ok" } else { "FAILED" }
            );
        }
    }
    if !ok {
        return Err(Failure::Compute(format!("{text}proof check failed")));
    }
    Ok((text, a.out))
}

fn alt_row(s: &AlternatingSolution) -> String {
    format!(
        "{:>4} {:>14} {:>14} {:>22} {:>5} {:>10} {:>10} {:>10}\n",
        s.p,
        s.r.to_decimal(10),
        s.phi.to_decimal(10),
        s.rho.to_string(),
        s.m.map_or("?".to_string(), |m| m.to_string()),
        s.a,
        s.b,
        s.c
    )
}

fn alternating(a: AltArgs) -> Output {
    let header = format!("{:>4} {:>14} {:>14} {:>22} {:>5} {:>10} {:>10} {:>10}\n", "p", "r", "phi", "rho", "m", "a", "b", "c");
    let text = if a.select.limit {
        let (r, phi, p) = altseries::convergence_limit(a.bits)?;
        format!("limit r = {} phi = {} p = {}\n", r.to_decimal(10), phi.to_decimal(10), p.to_decimal(10))
    } else if let Some(p) = a.select.p {
        match altseries::solve_alternating(p, a.bits)? {
            Some(s) => header + &alt_row(&s),
            None => format!("p = {p}: no rational rho\n"),
        }
    } else {
        let (lo, hi) = parse_range(a.select.scan.as_deref().expect("group requires one"))?;
        let hits = altseries::scan_range(lo, hi, a.bits)?;
        let mut t = header;
        for s in &hits {
            t.push_str(&alt_row(s));
        }
        let _ = writeln!(t, "# {} hits in [{lo}, {hi}]", hits.len());
        t
    };
    Ok((text, a.out))
}

fn family(a: FamilyArgs) -> Output {
    let spec = a.series.build(&a.p)?;
    let result = binsplit::evaluate(&spec, a.digits)?;
    Ok((result.to_file_format(), a.out))
}

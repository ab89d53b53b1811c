//! Command line front end.
//!
//! Exit codes: 0 exists (or success), 1 none (or a failed `verify`),
//! 2 inconclusive or runtime failure, 64 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use digitmult_core::gf2::{deg2, minimal_littlewood_degree};
use digitmult_core::intpoly::strip_cyclotomic;
use digitmult_core::oracle::brute_force_multiples;
use digitmult_core::roots::{classify_salem, isolate_roots, START_PRECISION};
use digitmult_core::search::{count_minimal_multiples_with, find_multiple_with, verify_witness_with, CountOutcome};
use digitmult_core::survey::{Family, FamilySpec, Target, Verdict};
use digitmult_core::{DigitSet, Error, IntPolynomial, SearchConfig, SearchMode, SearchOutcome, Witness};

use crate::census::{run_census, CensusOptions};
use crate::files::{roots_csv, witness_arg, write_witness, SIDECAR_MIN_DEGREE};

pub const EXIT_EXISTS: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "digitmult", version, about = "Multiples of integer polynomials with coefficients in a digit set")]
struct Cli {
    /// Print wall-clock timings to stderr.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether POLY divides a polynomial with digits in the set.
    Multiple {
        poly: String,
        #[command(flatten)]
        search: SearchFlags,
        /// Find a multiple of least degree.
        #[arg(long)]
        minimal: bool,
        /// Write the witness here instead of printing it.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// deg2 of POLY and the least possible Littlewood multiple degree.
    Deg2 { poly: String },
    /// Census over a polynomial family, written as JSON lines.
    Survey {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        degree_min: u32,
        #[arg(long)]
        degree_max: u32,
        /// littlewood or newman.
        #[arg(long)]
        target: String,
        #[arg(long)]
        out: PathBuf,
        /// Keep one of each reciprocal pair.
        #[arg(long)]
        dedup_reciprocal: bool,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        threads: Option<usize>,
        /// Per-polynomial time limit in seconds, 0 for none.
        #[arg(long, env = "DIGITMULT_TIMEOUT_SECS", default_value_t = 600)]
        timeout_secs: u64,
        #[command(flatten)]
        caps: CapFlags,
    },
    /// Cyclotomic factors and Salem type of the rest.
    Classify { poly: String },
    /// Certified root disks as CSV.
    Roots {
        poly: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = START_PRECISION)]
        precision: u32,
    },
    /// Number of multiples of least degree.
    CountMinimal {
        poly: String,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Check a witness by exact division. WITNESS may be `@file`.
    Verify {
        poly: String,
        witness: String,
        /// Defaults to newman for words of zeros and ones with a zero,
        /// littlewood otherwise.
        #[arg(long)]
        digits: Option<String>,
        /// Allowed leading digits, comma separated.
        #[arg(long)]
        leading: Option<String>,
    },
    #[command(hide = true)]
    Oracle {
        poly: String,
        #[arg(long, default_value = "littlewood")]
        digits: String,
        #[arg(long)]
        max_degree: u64,
        #[arg(long)]
        leading: Option<String>,
    },
}

#[derive(Debug, Args)]
struct CapFlags {
    #[arg(long, env = "DIGITMULT_MAX_VERTICES", default_value_t = 50_000_000)]
    max_vertices: u64,
    #[arg(long, env = "DIGITMULT_MAX_DEPTH", default_value_t = 200_000)]
    max_depth: u64,
    #[arg(long, default_value_t = 0.95)]
    delta_start: f64,
    #[arg(long, default_value_t = 0.05)]
    delta_step: f64,
}

#[derive(Debug, Args)]
struct SearchFlags {
    /// littlewood, newman, or custom=a,b,...
    #[arg(long, default_value = "littlewood")]
    digits: String,
    /// Allowed leading digits, comma separated.
    #[arg(long)]
    leading: Option<String>,
    /// Forbid a zero last digit; defaults to true exactly when 0 is a digit.
    #[arg(long)]
    nonzero_final: Option<bool>,
    /// Give up after this many seconds, 0 for never.
    #[arg(long, env = "DIGITMULT_TIMEOUT_SECS", default_value_t = 0)]
    timeout_secs: u64,
    #[command(flatten)]
    caps: CapFlags,
}

struct Usage(String);

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidDigits(_)
            | Error::NonMonicModulus
            | Error::ZeroConstantTerm
            | Error::EvenConstantTerm
            | Error::ZeroDivisor => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn poly(s: &str) -> Result<IntPolynomial, Usage> {
    s.parse().map_err(|e| Usage(format!("polynomial {s:?}: {e}")))
}

fn digits(s: &str) -> Result<DigitSet, Usage> {
    s.parse().map_err(|e| Usage(format!("digit set {s:?}: {e}")))
}

fn digit_list(s: &str) -> Result<Vec<i64>, Usage> {
    s.split(',').map(|t| t.trim().parse().map_err(|_| Usage(format!("bad digit {t:?}")))).collect()
}

impl CapFlags {
    fn config(&self, mode: SearchMode) -> SearchConfig {
        SearchConfig {
            delta_start: self.delta_start,
            delta_step: self.delta_step,
            max_vertices: self.max_vertices,
            max_depth: self.max_depth,
            mode,
            ..SearchConfig::default()
        }
    }
}

impl SearchFlags {
    fn config(&self, mode: SearchMode) -> Result<SearchConfig, Usage> {
        let mut cfg = self.caps.config(mode);
        cfg.leading_digits = self.leading.as_deref().map(digit_list).transpose()?;
        cfg.require_nonzero_final_digit = self.nonzero_final;
        Ok(cfg)
    }

    fn interrupt(&self) -> impl FnMut() -> bool {
        let start = Instant::now();
        let limit = (self.timeout_secs > 0).then(|| Duration::from_secs(self.timeout_secs));
        move || limit.is_some_and(|t| start.elapsed() >= t)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to standard output, diagnostics to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let mut out = String::new();
    let result = dispatch(cli.command, &mut out);
    print!("{out}");
    let _ = io::stdout().flush();
    if cli.timings {
        eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    }
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            EXIT_INCONCLUSIVE
        }
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32, Failure> {
    match cmd {
        Command::Multiple { poly: p, search, minimal, witness_out } => {
            let p = poly(&p)?;
            let d = digits(&search.digits)?;
            let mode = if minimal { SearchMode::MinimalDegree } else { SearchMode::AnyMultiple };
            let cfg = search.config(mode)?;
            let res = find_multiple_with(&p, &d, &cfg, &mut search.interrupt())?;
            report_search(out, &p, &d, &res, witness_out)
        }
        Command::Deg2 { poly: p } => {
            let p = poly(&p)?;
            writeln!(out, "deg2: {}", deg2(&p)?).ok();
            writeln!(out, "minimal_littlewood_degree: {}", minimal_littlewood_degree(&p)?).ok();
            Ok(0)
        }
        Command::Survey { family, degree_min, degree_max, target, out: path, dedup_reciprocal, threads, timeout_secs, caps } => {
            let family: Family = family.parse().map_err(|e| Usage(format!("{e}")))?;
            let target: Target = target.parse().map_err(|e| Usage(format!("{e}")))?;
            let spec = FamilySpec::new(family, degree_min, degree_max).map_err(|e| Usage(e.to_string()))?.dedup(dedup_reciprocal);
            let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let opts = CensusOptions {
                spec,
                target,
                cfg: caps.config(SearchMode::AnyMultiple),
                threads,
                timeout: (timeout_secs > 0).then(|| Duration::from_secs(timeout_secs)),
                out: path,
            };
            let report = run_census(&opts)?;
            writeln!(out, "{}", report.summary).ok();
            let open = report.summary.count(Verdict::Inconclusive);
            Ok(if open > 0 { EXIT_INCONCLUSIVE } else { 0 })
        }
        Command::Classify { poly: p } => {
            let p = poly(&p)?;
            let split = strip_cyclotomic(&p, false);
            let factors: Vec<String> = split
                .cyclotomic_factors
                .iter()
                .map(|&(n, m)| if m == 1 { format!("Phi_{n}") } else { format!("Phi_{n}^{m}") })
                .collect();
            let rest = &split.noncyclotomic_part;
            writeln!(out, "cyclotomic_factors: {}", if factors.is_empty() { "none".into() } else { factors.join(" ") }).ok();
            writeln!(out, "noncyclotomic_part: {rest}").ok();
            writeln!(out, "kind: {}", if rest.is_unit() { "cyclotomic_product" } else { "noncyclotomic" }).ok();
            writeln!(out, "salem: {}", classify_salem(rest)?.as_str()).ok();
            Ok(0)
        }
        Command::Roots { poly: p, out: path, precision } => {
            let p = poly(&p)?;
            let csv = roots_csv(&isolate_roots(&p, precision)?.resolve());
            match path {
                Some(path) => std::fs::write(path, csv)?,
                None => out.push_str(&csv),
            }
            Ok(0)
        }
        Command::CountMinimal { poly: p, search } => {
            let p = poly(&p)?;
            let d = digits(&search.digits)?;
            let cfg = search.config(SearchMode::CountMinimal)?;
            report_count(out, &d, count_minimal_multiples_with(&p, &d, &cfg, &mut search.interrupt())?)
        }
        Command::Verify { poly: p, witness, digits: ds, leading } => {
            let p = poly(&p)?;
            let w = witness_arg(&witness).map_err(|e| Usage(e.to_string()))?;
            let d = match ds {
                Some(s) => digits(&s)?,
                None if w.digits_msb_first.contains(&0) && !w.digits_msb_first.iter().any(|&x| x < 0) => DigitSet::newman(),
                None => DigitSet::littlewood(),
            };
            let lead = match leading {
                Some(s) => digit_list(&s)?,
                None => d.digits().iter().copied().filter(|&x| x != 0).collect(),
            };
            let ok = verify_witness_with(&p, &w, &d, &lead);
            writeln!(out, "{}", if ok { "valid" } else { "invalid" }).ok();
            Ok(if ok { 0 } else { 1 })
        }
        Command::Oracle { poly: p, digits: ds, max_degree, leading } => {
            let p = poly(&p)?;
            let d = digits(&ds)?;
            let lead = match leading {
                Some(s) => digit_list(&s)?,
                None => d.default_leading(),
            };
            let r = brute_force_multiples(&p, &d, max_degree, &lead, d.contains(0))?;
            for (deg, w) in &r.found {
                writeln!(out, "{deg} {}", Witness::new(w.clone()).encode(&d)).ok();
            }
            writeln!(out, "hits: {}", r.found.len()).ok();
            writeln!(out, "words: {}", r.leaves).ok();
            Ok(if r.found.is_empty() { EXIT_NONE } else { 0 })
        }
    }
}

fn witness_line(out: &mut String, w: &Witness, d: &DigitSet, path: Option<PathBuf>) -> Result<(), Failure> {
    let path = path.or_else(|| (w.degree() >= SIDECAR_MIN_DEGREE).then(|| PathBuf::from(format!("witness-{}.txt", w.degree()))));
    match path {
        Some(path) => {
            write_witness(&path, w, d)?;
            writeln!(out, "witness_file: {}", path.display()).ok();
        }
        None => {
            writeln!(out, "witness: {}", w.encode(d)).ok();
        }
    }
    Ok(())
}

fn report_search(
    out: &mut String,
    p: &IntPolynomial,
    d: &DigitSet,
    res: &SearchOutcome,
    witness_out: Option<PathBuf>,
) -> Result<i32, Failure> {
    let s = res.stats();
    writeln!(out, "verdict: {}", res.verdict_str()).ok();
    let code = match res {
        SearchOutcome::Exists(w, _) => {
            writeln!(out, "degree: {}", w.degree()).ok();
            witness_line(out, w, d, witness_out)?;
            EXIT_EXISTS
        }
        SearchOutcome::None(cert, _) => {
            let ok = cert.replay(p)?;
            writeln!(out, "certificate_vertices: {}", cert.vertex_count()).ok();
            writeln!(out, "certificate_replay: {}", if ok { "ok" } else { "failed" }).ok();
            if ok {
                EXIT_NONE
            } else {
                EXIT_INCONCLUSIVE
            }
        }
        SearchOutcome::Inconclusive(r, _) => {
            writeln!(out, "reason: {}", r.as_str()).ok();
            EXIT_INCONCLUSIVE
        }
    };
    writeln!(out, "vertices: {}", s.vertices).ok();
    writeln!(out, "vertices_total: {}", s.vertices_total).ok();
    writeln!(out, "final_delta: {}", fmt_delta(s.final_delta)).ok();
    writeln!(out, "excluded_roots: {}", s.excluded_roots).ok();
    writeln!(out, "reversed: {}", s.reciprocal).ok();
    Ok(code)
}

fn fmt_delta(x: f64) -> String {
    format!("{:.2}", x)
}

fn report_count(out: &mut String, d: &DigitSet, res: CountOutcome) -> Result<i32, Failure> {
    let examples = |out: &mut String, ws: &[Witness]| {
        for w in ws {
            let s = w.encode(d);
            if w.degree() < 64 {
                writeln!(out, "example: {s}").ok();
            } else {
                writeln!(out, "example: {}...{} ({} digits)", &s[..16], &s[s.len() - 16..], s.len()).ok();
            }
        }
    };
    match res {
        CountOutcome::Counted { degree, count, examples: ws, stats } => {
            writeln!(out, "degree: {degree}").ok();
            writeln!(out, "count: {count}").ok();
            writeln!(out, "exact: true").ok();
            writeln!(out, "vertices: {}", stats.vertices).ok();
            examples(out, &ws);
            Ok(0)
        }
        CountOutcome::LowerBound { degree, count, examples: ws, delta, reason, stats } => {
            writeln!(out, "degree: {degree}").ok();
            writeln!(out, "count: {count}").ok();
            writeln!(out, "exact: false").ok();
            writeln!(out, "counted_at_delta: {}", fmt_delta(delta)).ok();
            writeln!(out, "exact_count_stopped_by: {}", reason.as_str()).ok();
            writeln!(out, "vertices: {}", stats.vertices).ok();
            examples(out, &ws);
            Ok(0)
        }
        CountOutcome::NoMultiple(cert, _) => {
            writeln!(out, "verdict: none").ok();
            writeln!(out, "certificate_vertices: {}", cert.vertex_count()).ok();
            Ok(EXIT_NONE)
        }
        CountOutcome::Inconclusive(r, _) => {
            writeln!(out, "verdict: inconclusive").ok();
            writeln!(out, "reason: {}", r.as_str()).ok();
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

//! Command-line front end. `run` parses arguments, executes one verb and
//! returns the process exit code:
//!
//! * 0: success
//! * 1: `verify` found a record that does not reproduce
//! * 2: usage or validation error
//! * 3: I/O error

mod config;

use std::ffi::OsString;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tempfile::NamedTempFile;

use z4codes::algebra::{divisor_lattice, factor_xn1_z2, lift_factors};
use z4codes::catalog::{
    classify, parse_records, BklcTable, CatalogError, Classification, CodeDatabase, CodeRecord, Construction,
    Query,
};
use z4codes::codes::{is_gray_linear, standard_form, Z4Matrix};
use z4codes::distance::{min_lee, min_lee_with, EngineOptions, Method, Outcome};
use z4codes::search::{asr_search, code_from_record, cyclic_search, AsrParams, SearchError, SearchOptions, SeedKind};

pub use config::{FileConfig, FlagOverrides, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Io(String),
    /// Number of records that failed verification.
    Mismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) | CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Mismatch(k) => write!(f, "{k} record(s) failed verification"),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        if e.is_io() {
            CliError::Io(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Sink(io) => CliError::Io(io.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Parser, Debug)]
#[command(name = "z4codes", version, about = "Search, measure and catalog linear codes over Z4")]
struct Cli {
    /// TOML configuration file; flags take precedence over its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Require explicit seeds for randomized verbs.
    #[arg(long, global = true)]
    ci: bool,
    /// Suppress progress lines on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Default)]
struct PolicyArgs {
    /// Lengths up to this are measured without a time limit.
    #[arg(long, global = true)]
    length_cutoff: Option<usize>,
    /// Longer codes are attempted only when log2 of the smaller enumeration side is at most this.
    #[arg(long, global = true)]
    complexity_cutoff: Option<u32>,
    /// Per-code time limit in seconds beyond the length cutoff.
    #[arg(long, global = true)]
    time_limit: Option<u64>,
    /// Largest number of words a single distance computation may enumerate.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Factor x^n - 1 over Z2 and list the Hensel lifts and divisors.
    Factor {
        #[arg(long)]
        n: usize,
    },
    /// Measure every non-degenerate cyclic code for a range of odd lengths.
    CyclicSearch {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        free_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ASR search for one-generator quasi-cyclic codes.
    QcSearch {
        /// Block size; odd, at most 127.
        #[arg(long)]
        m: usize,
        /// Number of blocks.
        #[arg(long = "l")]
        ell: usize,
        #[arg(long, value_enum)]
        seeds: SeedArg,
        /// Random multiplier tuples drawn per seed.
        #[arg(long)]
        trials: usize,
        /// Base seed; each seed polynomial draws from its own stream.
        #[arg(long)]
        rng_seed: Option<u64>,
        /// Walk every multiplier tuple (small m only).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum Lee distance of a code given by a generator matrix file.
    Distance {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
    },
    /// Attach classifications to records using a best-known-code table.
    Classify {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        bklc: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maintain the code database.
    Db {
        #[command(subcommand)]
        action: DbAction,
    },
    /// Rebuild codes from their provenance and compare with the records.
    Verify {
        #[arg(long, conflicts_with = "records", required_unless_present = "records")]
        record: Option<String>,
        #[arg(long)]
        records: Option<PathBuf>,
        #[arg(long)]
        bklc: Option<PathBuf>,
        /// Check type and Gray linearity only; do not recompute distances.
        #[arg(long)]
        structural_only: bool,
    },
}

#[derive(Subcommand, Debug)]
enum DbAction {
    Merge {
        #[arg(long)]
        db: Option<PathBuf>,
        #[arg(long)]
        records: PathBuf,
    },
    Query {
        #[arg(long)]
        db: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k1: Option<usize>,
        #[arg(long)]
        k2: Option<usize>,
        #[arg(long)]
        construction: Option<String>,
        #[arg(long)]
        classification: Option<String>,
    },
    Export {
        #[arg(long)]
        db: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SeedArg {
    Free,
    Nonfree,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EngineArg {
    Direct,
    Dual,
    Auto,
}

/// Parses `args` (including the program name) and runs the verb.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("z4codes: {e}");
            e.exit_code()
        }
    }
}

struct Ctx {
    cfg: RunConfig,
    progress: bool,
}

impl Ctx {
    fn search_options(&self) -> SearchOptions {
        SearchOptions { policy: self.cfg.policy, progress: self.progress }
    }

    fn path(&self, flag: Option<PathBuf>, from_cfg: &Option<PathBuf>, what: &str) -> Result<PathBuf, CliError> {
        flag.or_else(|| from_cfg.clone())
            .ok_or_else(|| CliError::Usage(format!("no {what} path given on the command line or in the config")))
    }

    fn bklc(&self, flag: Option<PathBuf>) -> Result<Option<BklcTable>, CliError> {
        match flag.or_else(|| self.cfg.bklc.clone()) {
            Some(p) => Ok(Some(BklcTable::load(&p)?)),
            None => Ok(None),
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let rng_flag = match &cli.verb {
        Verb::QcSearch { rng_seed, .. } => *rng_seed,
        _ => None,
    };
    let flags = FlagOverrides {
        workers: cli.workers,
        rng_seed: rng_flag,
        ci: cli.ci,
        length_cutoff: cli.policy.length_cutoff,
        complexity_cutoff: cli.policy.complexity_cutoff,
        time_limit_secs: cli.policy.time_limit,
        budget: cli.policy.budget,
    };
    let cfg = RunConfig::resolve(file, &flags)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start {} workers: {e}", cfg.workers)))?;
    let ctx = Ctx { cfg, progress: !cli.quiet };
    pool.install(|| dispatch(&ctx, cli.verb, rng_flag))
}

fn dispatch(ctx: &Ctx, verb: Verb, rng_flag: Option<u64>) -> Result<(), CliError> {
    match verb {
        Verb::Factor { n } => factor(n),
        Verb::CyclicSearch { n_min, n_max, free_only, out } => {
            if n_min > n_max || n_min == 0 {
                return Err(CliError::Usage(format!("bad length range {n_min}..={n_max}")));
            }
            if n_max > z4codes::algebra::MAX_LENGTH {
                return Err(CliError::Usage(format!("lengths above {} are not supported", z4codes::algebra::MAX_LENGTH)));
            }
            let lengths: Vec<usize> = (n_min..=n_max).filter(|n| n % 2 == 1).collect();
            let out = ctx.path(out, &ctx.cfg.out, "output")?;
            let opts = ctx.search_options();
            let summary = write_atomically(&out, |w| {
                cyclic_search(&lengths, free_only, &opts, |r| writeln!(w, "{}", r.to_line()))
            })?;
            if ctx.progress {
                eprintln!("cyclic-search: {} records, {} exact", summary.emitted, summary.exact);
            }
            Ok(())
        }
        Verb::QcSearch { m, ell, seeds, trials, rng_seed: _, exhaustive, out } => {
            let rng_seed = match ctx.cfg.rng_seed.or(rng_flag) {
                Some(s) => s,
                None if ctx.cfg.ci => {
                    return Err(CliError::Usage("qc-search needs an explicit --rng-seed in CI mode".into()))
                }
                None => {
                    let s = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos() as u64);
                    eprintln!("qc-search: no --rng-seed given, using {s}");
                    s
                }
            };
            let params = AsrParams {
                m,
                ell,
                seed_kind: match seeds {
                    SeedArg::Free => SeedKind::Free,
                    SeedArg::Nonfree => SeedKind::NonFree,
                },
                trials,
                rng_seed,
                exhaustive,
            };
            let out = ctx.path(out, &ctx.cfg.out, "output")?;
            let opts = ctx.search_options();
            let summary = write_atomically(&out, |w| asr_search(&params, &opts, |r| writeln!(w, "{}", r.to_line())))?;
            if ctx.progress {
                eprintln!("qc-search: {} records, {} exact", summary.emitted, summary.exact);
            }
            Ok(())
        }
        Verb::Distance { code, engine } => distance(ctx, &code, engine),
        Verb::Classify { records, bklc, out } => {
            let table = ctx.bklc(bklc)?.ok_or_else(|| CliError::Usage("classify needs --bklc".into()))?;
            let mut recs = read_records(&records)?;
            let mut missing = 0usize;
            for r in recs.iter_mut() {
                r.classification = match classify(r, &table) {
                    Ok(c) => Some(c),
                    Err(CatalogError::NotExact(_)) => None,
                    Err(CatalogError::MissingBklc { .. }) => {
                        missing += 1;
                        None
                    }
                    Err(e) => return Err(e.into()),
                };
            }
            let out = ctx.path(out, &ctx.cfg.out, "output")?;
            write_atomically(&out, |w| -> Result<(), SearchError> {
                for r in &recs {
                    writeln!(w, "{}", r.to_line())?;
                }
                Ok(())
            })?;
            if ctx.progress {
                eprintln!("classify: {} records, {missing} without a table entry", recs.len());
            }
            Ok(())
        }
        Verb::Db { action } => db(ctx, action),
        Verb::Verify { record, records, bklc, structural_only } => {
            let recs = match (record, records) {
                (Some(line), _) => vec![CodeRecord::from_line(line.trim_end_matches('\n'), 1)?],
                (None, Some(path)) => read_records(&path)?,
                (None, None) => return Err(CliError::Usage("verify needs --record or --records".into())),
            };
            let table = ctx.bklc(bklc)?;
            let failed = recs
                .iter()
                .filter(|r| !verify_one(r, table.as_ref(), &ctx.cfg, structural_only))
                .count();
            println!("verify: {} passed, {failed} failed", recs.len() - failed);
            if failed > 0 {
                Err(CliError::Mismatch(failed))
            } else {
                Ok(())
            }
        }
    }
}

fn factor(n: usize) -> Result<(), CliError> {
    let fz = factor_xn1_z2(n).map_err(|e| CliError::Validation(e.to_string()))?;
    let lifts = lift_factors(&fz).map_err(|e| CliError::Validation(e.to_string()))?;
    println!("n={n} r={}", fz.r());
    for (i, (f2, f4)) in fz.factors().iter().zip(&lifts).enumerate() {
        println!("factor {}: z2={f2} z4={f4} degree={}", i + 1, f2.degree().unwrap_or(0));
    }
    let lattice = divisor_lattice(&fz).map_err(|e| CliError::Validation(e.to_string()))?;
    println!("divisors: {}", lattice.len());
    for (mask, d) in lattice.enumerate() {
        println!("divisor {mask}: {d}");
    }
    Ok(())
}

fn distance(ctx: &Ctx, path: &Path, engine: EngineArg) -> Result<(), CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let matrix = Z4Matrix::parse(&text).map_err(|e| CliError::Validation(e.to_string()))?;
    let code = standard_form(&matrix);
    if code.is_zero() {
        return Err(CliError::Validation("the generator matrix spans the zero code".into()));
    }
    let result = match engine {
        EngineArg::Auto => min_lee(&code, &ctx.cfg.policy),
        EngineArg::Direct | EngineArg::Dual => {
            let method = if engine == EngineArg::Direct { Method::Direct } else { Method::DualMacWilliams };
            let opts = EngineOptions { budget: ctx.cfg.policy.budget, time_limit: Some(ctx.cfg.policy.time_limit) };
            min_lee_with(&code, method, &opts).map_err(|e| CliError::Validation(e.to_string()))?
        }
    };
    println!(
        "n={} k1={} k2={} d={} method={} gray_linear={}",
        code.n(),
        code.k1(),
        code.k2(),
        outcome_str(result.outcome),
        result.method,
        is_gray_linear(&code)
    );
    if ctx.progress {
        eprintln!("distance: {:.3?}", result.elapsed);
    }
    Ok(())
}

fn db(ctx: &Ctx, action: DbAction) -> Result<(), CliError> {
    match action {
        DbAction::Merge { db, records } => {
            let path = ctx.path(db, &ctx.cfg.db, "database")?;
            let mut database = CodeDatabase::load(&path)?;
            let incoming = read_records(&records)?;
            let report = database.merge(incoming);
            database.save(&path)?;
            println!("merge: {}", report.summary());
            for note in &report.notes {
                eprintln!("note: {note}");
            }
            Ok(())
        }
        DbAction::Query { db, n, k1, k2, construction, classification } => {
            let path = ctx.path(db, &ctx.cfg.db, "database")?;
            let database = CodeDatabase::load(&path)?;
            let construction = construction
                .map(|s| s.parse::<Construction>())
                .transpose()
                .map_err(CliError::Usage)?;
            let classification = classification
                .map(|s| s.parse::<Classification>())
                .transpose()
                .map_err(CliError::Usage)?;
            let hits = database.query(&Query { n, k1, k2, construction, classification });
            for r in &hits {
                println!("{}", r.to_line());
            }
            if hits.is_empty() && ctx.progress {
                eprintln!("query: no matching record");
            }
            Ok(())
        }
        DbAction::Export { db, out } => {
            let path = ctx.path(db, &ctx.cfg.db, "database")?;
            let database = CodeDatabase::load(&path)?;
            match out {
                Some(out) => write_atomically(&out, |w| -> Result<(), SearchError> {
                    w.write_all(database.export().as_bytes())?;
                    Ok(())
                }),
                None => {
                    print!("{}", database.export());
                    Ok(())
                }
            }
        }
    }
}

fn outcome_str(o: Outcome) -> String {
    match o {
        Outcome::Exact(d) => d.to_string(),
        Outcome::TimedOut => "timed-out".into(),
        Outcome::Skipped => "skipped".into(),
    }
}

/// Rebuilds one record and prints a PASS/FAIL line. The distance is
/// recomputed with the full time limit regardless of length.
fn verify_one(rec: &CodeRecord, table: Option<&BklcTable>, cfg: &RunConfig, structural_only: bool) -> bool {
    let label = format!("[{},{},{},{}] {}", rec.n, rec.k1, rec.k2, outcome_str(rec.d), rec.construction.as_str());
    let mut problems = Vec::new();
    let code = match code_from_record(rec) {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL {label}: cannot rebuild: {e}");
            return false;
        }
    };
    if (code.k1(), code.k2()) != (rec.k1, rec.k2) {
        problems.push(format!("type rebuilt as 4^{} 2^{}", code.k1(), code.k2()));
    }
    let linear = is_gray_linear(&code);
    if linear != rec.gray_linear {
        problems.push(format!("gray_linear recomputed as {linear}"));
    }
    let mut detail = format!("gray_linear={linear}");
    if !structural_only {
        let policy = z4codes::distance::DistancePolicy { length_cutoff: usize::MAX, ..cfg.policy };
        let result = min_lee(&code, &policy);
        detail.push_str(&format!(" d={} method={}", outcome_str(result.outcome), result.method));
        match (result.outcome, rec.d) {
            (Outcome::Exact(got), Outcome::Exact(want)) if got != want => {
                problems.push(format!("d recomputed as {got}"))
            }
            (Outcome::Exact(_), _) => {}
            (other, _) => problems.push(format!("distance not recomputed ({})", outcome_str(other))),
        }
        if let (Some(want), Some(table)) = (rec.classification, table) {
            let mut fresh = rec.clone();
            fresh.d = result.outcome;
            fresh.gray_linear = linear;
            match classify(&fresh, table) {
                Ok(got) if got == want => detail.push_str(&format!(" class={got}")),
                Ok(got) => problems.push(format!("classification recomputed as {got}")),
                Err(e) => problems.push(format!("cannot classify: {e}")),
            }
        }
    }
    if problems.is_empty() {
        println!("PASS {label}: {detail}");
        true
    } else {
        println!("FAIL {label}: {}", problems.join("; "));
        false
    }
}

fn read_records(path: &Path) -> Result<Vec<CodeRecord>, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Ok(parse_records(&text)?)
}

/// Streams output into a temporary file next to `path` and renames it into
/// place once `body` succeeds.
fn write_atomically<T, E>(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<&mut NamedTempFile>) -> Result<T, E>,
) -> Result<T, CliError>
where
    CliError: From<E>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io_err(path))?;
    let value = {
        let mut w = BufWriter::new(&mut tmp);
        let value = body(&mut w)?;
        w.flush().map_err(io_err(path))?;
        value
    };
    tmp.persist(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(value)
}

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ringcodes::circulant::{BorderSpec, CirculantSpec};
use ringcodes::harness::search::{self, SearchSpec, Target};
use ringcodes::harness::tables::{self, Status};
use ringcodes::harness::{format_code, load_code, parse_code, Code, Construction, ExtensionMethod, RecordFilter, Store};
use ringcodes::qr::QrVariant;
use ringcodes::ring::RingElement;
use ringcodes::weights::{
    self, extract_params, CountStrategy, EnumMode, EnumOptions, EnumeratorForm, EnumeratorParams, MinDistanceMethod,
    MinDistanceOptions, WeightProfile,
};
use ringcodes::Exec;

#[derive(Parser)]
#[command(name = "ringcodes", version, about = "Self-dual codes over F2 + uF2 + u^2F2 and their binary Gray images")]
struct Cli {
    /// Worker threads (default: RINGCODES_THREADS, else all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Run single-threaded code paths
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    R,
    Gray,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Auto,
    Walk,
    Infosets,
}

#[derive(Subcommand)]
enum Command {
    /// Quadratic residue codes
    Qr {
        #[arg(long)]
        p: usize,
        /// q1 | q2 | q1p | q2p | extended | extended2 | sqr | bsqr
        #[arg(long, default_value = "q1")]
        variant: String,
        #[arg(long, value_enum, default_value = "r")]
        emit: Emit,
    },
    /// Quadratic double circulant codes [I | Q_p(r,s,t)], optionally bordered
    Qdc {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: RingElement,
        #[arg(long)]
        s: RingElement,
        #[arg(long)]
        t: RingElement,
        /// lambda,beta,gamma
        #[arg(long)]
        border: Option<String>,
        #[arg(long, value_enum, default_value = "r")]
        emit: Emit,
    },
    /// Extend a self-dual code by two coordinates
    Extend {
        #[arg(long)]
        method: ExtensionMethod,
        /// Code file, construction descriptor, or - for stdin
        #[arg(long)]
        input: String,
        /// Hex for a binary input, element list for an R input
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "1")]
        c: RingElement,
        #[arg(long, value_enum, default_value = "r")]
        emit: Emit,
    },
    /// Minimum distance of the binary image
    Mindist {
        /// Code file, construction descriptor, or - for stdin
        code: String,
        #[arg(long, default_value = "auto")]
        method: MinDistanceMethod,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Weight distribution as JSON {n, k, complete, counts}
    Wenum {
        /// Code file, construction descriptor, or - for stdin
        code: String,
        /// Count only weights up to W
        #[arg(long)]
        upto: Option<usize>,
        /// Also solve for the parameters of this form
        #[arg(long)]
        form: Option<EnumeratorForm>,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: Strategy,
    },
    /// Rebuild the published tables and check every cell
    Verify {
        /// 1..8 or all
        #[arg(long, default_value = "all")]
        table: String,
        /// Include long-running rows
        #[arg(long)]
        deep: bool,
        /// Import verified rows with enumerator parameters into this store
        #[arg(long)]
        store: Option<PathBuf>,
        /// One JSON report per row
        #[arg(long)]
        json: bool,
    },
    /// Seeded random search over extension vectors
    Search {
        #[arg(long)]
        base: Construction,
        #[arg(long)]
        method: ExtensionMethod,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// n,k,d: keep codes of length n, dimension k and distance >= d
        #[arg(long)]
        target: Option<Target>,
        #[arg(long)]
        store: Option<PathBuf>,
        /// Keep codes with equal parameters if their generators differ
        #[arg(long)]
        keep_duplicates: bool,
    },
    /// Query a store
    Query {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        form: Option<EnumeratorForm>,
        #[arg(long)]
        alpha: Option<i64>,
        #[arg(long)]
        beta: Option<i64>,
        #[arg(long)]
        gamma: Option<i64>,
    },
}

fn init_threads(flag: Option<usize>) -> Result<()> {
    let from_env = match std::env::var("RINGCODES_THREADS") {
        Ok(v) => Some(v.trim().parse::<usize>().with_context(|| format!("RINGCODES_THREADS={v}"))?),
        Err(_) => None,
    };
    if let Some(n) = flag.or(from_env).filter(|&n| n > 0) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// Runs `f`, logging `counter` every few seconds while it runs.
fn with_progress<T>(what: &str, total: Option<u64>, f: impl FnOnce(&AtomicU64) -> T) -> T {
    let counter = AtomicU64::new(0);
    let done = AtomicBool::new(false);
    let start = Instant::now();
    std::thread::scope(|s| {
        s.spawn(|| {
            let mut last = Instant::now();
            while !done.load(Ordering::Relaxed) {
                std::thread::sleep(Duration::from_millis(100));
                if last.elapsed() >= Duration::from_secs(5) {
                    last = Instant::now();
                    let c = counter.load(Ordering::Relaxed);
                    match total {
                        Some(t) if t > 0 => {
                            log::info!("{what}: {c}/{t} ({:.1}%), {:.0}s", 100.0 * c as f64 / t as f64, start.elapsed().as_secs_f64())
                        }
                        _ => log::info!("{what}: {c}, {:.0}s", start.elapsed().as_secs_f64()),
                    }
                }
            }
        });
        let out = f(&counter);
        done.store(true, Ordering::Relaxed);
        out
    })
}

#[derive(Serialize)]
struct WenumOutput<'a> {
    #[serde(flatten)]
    profile: &'a WeightProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<EnumeratorParams>,
}

/// A code file, a construction descriptor, or `-` for standard input.
fn read_code(arg: &str) -> Result<Code> {
    if arg == "-" {
        let text = std::io::read_to_string(std::io::stdin())?;
        return Ok(parse_code(&text)?);
    }
    Ok(load_code(arg)?)
}

fn emit(code: Code, how: Emit) -> String {
    match how {
        Emit::R => format_code(&code),
        Emit::Gray => format_code(&Code::Binary(code.binary())),
    }
}

fn parse_border(s: &str) -> Result<BorderSpec> {
    let parts: Vec<RingElement> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_, _>>()?;
    match parts[..] {
        [l, b, g] => Ok(BorderSpec::new(l, b, g)),
        _ => bail!("--border expects lambda,beta,gamma"),
    }
}

fn print_row(r: &tables::RowReport) {
    println!("{} table {} {} [{}] {:.2}s", r.status.label(), r.table, r.label, r.construction, r.seconds);
    if let Some(e) = &r.error {
        println!("  error: {e}");
    }
    for c in &r.cells {
        println!("  {:<5} {:<9} expected {:<32} found {}", c.status.label(), c.check, c.expected, c.found);
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Qr { p, variant, emit: how } => {
            let c = if variant.eq_ignore_ascii_case("bsqr") {
                Construction::Bsqr { p }
            } else {
                Construction::Qr { p, variant: QrVariant::parse(&variant)? }
            };
            print!("{}", emit(c.build()?, how));
        }
        Command::Qdc { p, r, s, t, border, emit: how } => {
            let spec = CirculantSpec::new(p, r, s, t);
            let c = match border {
                Some(b) => Construction::Bordered(spec, parse_border(&b)?),
                None => Construction::Qdc(spec),
            };
            print!("{}", emit(c.build()?, how));
        }
        Command::Extend { method, input, x, c, emit: how } => {
            let base = read_code(&input)?;
            let code = match &base {
                Code::Binary(g) => {
                    let len = if method == ExtensionMethod::Idext { g.nrows() } else { g.ncols() };
                    let xv = ringcodes::extend::decode_hex_x(&x, len)?;
                    if c != RingElement::ONE {
                        bail!("binary extensions use c = 1");
                    }
                    match method {
                        ExtensionMethod::Ext => Code::Binary(ringcodes::extend::extend_ext_binary(g, &xv)?),
                        ExtensionMethod::Idext => Code::Binary(ringcodes::extend::extend_idext_binary(g, &xv)?),
                    }
                }
                Code::R(g) => {
                    let xv = ringcodes::ring::parse_element_list(&x)?;
                    match method {
                        ExtensionMethod::Ext => Code::R(ringcodes::extend::extend_ext_r(g, &xv, c)?),
                        ExtensionMethod::Idext => Code::R(ringcodes::extend::extend_idext_r(g, &xv, c)?),
                    }
                }
            };
            print!("{}", emit(code, how));
        }
        Command::Mindist { code, method, seed } => {
            let b = read_code(&code)?.binary();
            let opts = MinDistanceOptions { exec, seed };
            let start = Instant::now();
            let d = weights::min_distance_with(&b, method, &opts)?;
            let out = serde_json::json!({
                "n": b.ncols(), "k": b.nrows(), "d": d, "method": method.to_string(),
                "seconds": start.elapsed().as_secs_f64(),
            });
            println!("{out}");
        }
        Command::Wenum { code, upto, form, strategy } => {
            let b = read_code(&code)?.binary();
            let mode = upto.map_or(EnumMode::Full, EnumMode::UpTo);
            let strategy = match strategy {
                Strategy::Auto => CountStrategy::Auto,
                Strategy::Walk => CountStrategy::Walk,
                Strategy::Infosets => CountStrategy::InfoSets,
            };
            let k = b.rank() as u32;
            let total = (k < 64).then(|| 1u64 << k);
            let profile = with_progress("codewords", total, |counter| {
                let opts = EnumOptions { exec, strategy, progress: Some(counter) };
                weights::weight_enumerator_with(&b, mode, &opts)
            })?;
            let params = form.map(|f| extract_params(&profile, f)).transpose()?;
            println!("{}", serde_json::to_string(&WenumOutput { profile: &profile, params })?);
        }
        Command::Verify { table, deep, store, json } => {
            let mut rows = if table.eq_ignore_ascii_case("all") {
                tables::all_rows()
            } else {
                tables::table_rows(table.parse().with_context(|| format!("--table {table}"))?)?
            };
            if table.eq_ignore_ascii_case("all") || table == "5" {
                rows.push(tables::worked_example());
            }
            let reports = tables::verify_rows(&rows, deep, exec);
            for r in &reports {
                if json {
                    println!("{}", serde_json::to_string(r)?);
                } else {
                    print_row(r);
                }
            }
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            let fails = count(Status::Fail);
            eprintln!(
                "{} rows: {} pass, {} known mismatch, {} skipped, {} fail",
                reports.len(),
                count(Status::Pass),
                count(Status::Known),
                count(Status::Skipped),
                fails
            );
            if let Some(path) = store {
                let written = Store::new(&path).append_new(tables::records_from_reports(&reports), false)?;
                eprintln!("stored {} new records in {}", written.len(), path.display());
            }
            if fails > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Search { base, method, trials, seed, target, store, keep_duplicates } => {
            let spec = SearchSpec { method, base, trials, seed, target, keep_duplicates };
            let outcome = with_progress("trials", Some(trials), |counter| search::run_search(&spec, exec, Some(counter)))?;
            let records = match &store {
                Some(path) => Store::new(path).append_new(outcome.records, keep_duplicates)?,
                None => outcome.records,
            };
            for r in &records {
                println!("{}", serde_json::to_string(r)?);
            }
            eprintln!(
                "{} trials, {} valid, {} on target, {} new{}",
                outcome.trials,
                outcome.valid,
                outcome.hits,
                records.len(),
                store.map(|p| format!(" (stored in {})", p.display())).unwrap_or_default()
            );
        }
        Command::Query { store, id, n, k, d, form, alpha, beta, gamma } => {
            let filter = RecordFilter { id, n, k, d, form, alpha, beta, gamma };
            for r in Store::new(&store).query(&filter)? {
                println!("{}", serde_json::to_string(&r)?);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).format_timestamp(None).init();
    let cli = Cli::parse();
    if let Err(e) = init_threads(cli.threads) {
        eprintln!("error: {e:#}");
        return ExitCode::FAILURE;
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use cppforge_cli::count::{count_cpp, Method};
use cppforge_cli::report::{build_field, out_format, parse_modulus, write_csv, write_json, CppReport, FieldInfo, OutFormat, VERSION};
use cppforge_cli::verify::{verify, VerifyParams};
use cppforge_cli::walsh::{Exponent, Points};
use cppforge_cli::{conjecture, walsh, HarnessError, Result};
use cppforge_core::families::{FamilyId, GPreset};
use cppforge_core::Backend;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cppforge", version, about = "Complete permutation polynomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build F_{p^n} and print its modulus and backend.
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Modulus coefficients c0,c1,... in ascending order.
        #[arg(long = "mod")]
        modulus: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count the a making a^{-1} x^d a CPP over F_{p^{rk}}.
    CountCpp(CountArgs),
    /// Check every coefficient a family produces.
    Verify(VerifyArgs),
    /// Run a conjecture check for a range of k.
    Conjecture {
        #[arg(long)]
        id: u8,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
        /// Sample this many coefficients instead of scanning the whole field.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Walsh values of Tr(x^d) for a Niho exponent d over F_{p^{2k}}.
    Walsh(WalshArgs),
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value = "ha")]
    method: Method,
    /// Include the found coefficients in the report.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Leave `seconds` empty so reports are byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    family: FamilyId,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    t: Option<u128>,
    #[arg(long)]
    preset: Option<GPreset>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("exponent").required(true).args(["s", "d"])))]
#[command(group(clap::ArgGroup::new("points").required(true).args(["a", "all"])))]
struct WalshArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: Option<u128>,
    #[arg(long)]
    d: Option<u128>,
    /// Base-p encoding of a.
    #[arg(long)]
    a: Option<u128>,
    #[arg(long)]
    all: bool,
    /// Skip the direct character-sum cross-check.
    #[arg(long)]
    no_check: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn json_only<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    let Some(path) = out else { return Ok(()) };
    match out_format(path)? {
        OutFormat::Json => write_json(path, value),
        OutFormat::Csv => Err(HarnessError::Usage("this command writes .json reports only".into())),
    }
}

/// Returns whether everything checked passed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Field { p, n, modulus, out } => {
            let modulus = modulus.map(|m| parse_modulus(&m, n)).transpose()?;
            let (field, src) = build_field(p, n, modulus.as_deref())?;
            #[derive(Serialize)]
            struct FieldReport {
                field: FieldInfo,
                order: String,
                backend: Backend,
                generator: Option<u128>,
                version: &'static str,
            }
            let rep = FieldReport {
                field: FieldInfo::new(&field, src),
                order: field.order().to_string(),
                backend: field.backend(),
                generator: field.generator().map(|g| g.encoding()),
                version: VERSION,
            };
            println!("F_{p}^{n}  order {}", rep.order);
            println!("modulus   {:?} ({:?})", rep.field.modulus, src);
            println!("backend   {:?}", rep.backend);
            if let Some(g) = rep.generator {
                println!("generator {g}");
            }
            json_only(out.as_deref(), &rep)?;
            Ok(true)
        }
        Command::CountCpp(args) => run_count(args),
        Command::Verify(args) => {
            let params = VerifyParams { p: args.p, k: args.k, r: args.r, i: args.i, t: args.t, preset: args.preset };
            let rep = verify(args.family, &params)?;
            println!("{:<40} {:>24}  result", "instance", "a");
            for inst in &rep.instances {
                let status = if inst.passed { "pass" } else { "FAIL" };
                let note = inst.note.as_deref().map(|n| format!("  [{n}]")).unwrap_or_default();
                println!("{:<40} {:>24}  {status}{note}", inst.label, inst.a);
            }
            println!("{}: {} tested, {} failed", rep.family, rep.tested, rep.failures);
            json_only(args.out.as_deref(), &rep)?;
            Ok(rep.passed())
        }
        Command::Conjecture { id, p, r, kmin, kmax, budget, out } => {
            let rep = conjecture::run(id, p, r, kmin, kmax, budget)?;
            for run in &rep.runs {
                let detail = match &run.detail {
                    conjecture::RunDetail::Search(s) => {
                        format!("{} witnesses in {} scanned", s.witnesses.len(), s.scanned)
                    }
                    conjecture::RunDetail::Check(c) => format!(
                        "{} coefficients, {} failures, {} reformulated failures",
                        c.checked,
                        c.failures.len(),
                        c.reformulated_failures.len()
                    ),
                };
                println!("conjecture {id} p={p} r={} k={}: {} ({detail})", rep.r, run.k, if run.passed { "pass" } else { "FAIL" });
            }
            json_only(out.as_deref(), &rep)?;
            Ok(rep.passed())
        }
        Command::Walsh(args) => {
            let exponent = match (args.s, args.d) {
                (Some(s), _) => Exponent::S(s),
                (None, Some(d)) => Exponent::D(d),
                (None, None) => unreachable!("clap requires one of --s/--d"),
            };
            let points = args.a.map_or(Points::All, Points::One);
            let rep = walsh::run(args.p, args.k, exponent, points, !args.no_check)?;
            println!("s = {}, d = {}", rep.s, rep.d);
            println!("{:>12} {:>6} {:>14} {:>5}  note", "a", "N(a)", "W(a)", "in V");
            for row in &rep.rows {
                let mut notes = Vec::new();
                if row.out_of_scope {
                    notes.push("outside lemma scope".to_string());
                }
                match row.agrees {
                    Some(true) => notes.push("direct agrees".to_string()),
                    Some(false) => notes.push(format!("DIRECT DISAGREES: {}", row.direct.as_deref().unwrap_or("?"))),
                    None => {}
                }
                let note = notes.join(", ");
                println!("{:>12} {:>6} {:>14} {:>5}  {note}", row.a, row.n_a, row.value, row.in_v);
            }
            json_only(args.out.as_deref(), &rep)?;
            Ok(rep.all_agree())
        }
    }
}

fn run_count(args: CountArgs) -> Result<bool> {
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| HarnessError::Usage(format!("cannot size worker pool: {e}")))?;
    }
    let format = args.out.as_deref().map(out_format).transpose()?;
    let n = args.r * args.k;
    let (field, src) = build_field(args.p, n, None)?;
    let start = Instant::now();
    let progress = Arc::new(AtomicU64::new(0));
    let done = Arc::new(AtomicBool::new(false));
    let reporter = std::io::stderr().is_terminal().then(|| {
        let (progress, done) = (Arc::clone(&progress), Arc::clone(&done));
        let passes = if args.method == Method::Both { 2 } else { 1 };
        let total = (field.order() - 1) * passes;
        thread::spawn(move || {
            let tick = Duration::from_millis(100);
            let mut waited = Duration::ZERO;
            while !done.load(Ordering::Relaxed) {
                thread::sleep(tick);
                waited += tick;
                if waited >= Duration::from_secs(2) {
                    waited = Duration::ZERO;
                    eprintln!("scanned {} / {total}", progress.load(Ordering::Relaxed));
                }
            }
        })
    });
    let outcome = count_cpp(&field, args.r, args.k, args.method, &progress);
    done.store(true, Ordering::Relaxed);
    if let Some(h) = reporter {
        let _ = h.join();
    }
    let outcome = outcome?;
    let seconds = start.elapsed().as_secs_f64();
    let report = CppReport {
        field: FieldInfo::new(&field, src),
        d: outcome.d.to_string(),
        method: args.method,
        count: outcome.count(),
        conditions: outcome.conditions(),
        elements: args.list.then(|| outcome.hits.iter().map(|(a, _)| a.encoding()).collect()),
        seconds: (!args.no_timing).then_some(seconds),
        version: VERSION,
    };
    println!("F_{}^{}  d = {}  method = {}", args.p, n, report.d, report.method);
    println!("{:<24} {:>10}", "condition", "count");
    for (tag, c) in &report.conditions {
        println!("{tag:<24} {c:>10}");
    }
    println!("{:<24} {:>10}", "total", report.count);
    if !args.no_timing {
        println!("{seconds:.3} s");
    }
    match (format, args.out.as_deref()) {
        (Some(OutFormat::Json), Some(path)) => write_json(path, &report)?,
        (Some(OutFormat::Csv), Some(path)) => write_csv(path, &outcome.csv_rows())?,
        _ => {}
    }
    Ok(true)
}

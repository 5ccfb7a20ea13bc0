use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ext_vanishing::hilbert::lcm_degrees;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::pipeline::{analyze_config, ext_dimensions, resolve};
use crate::report::{ReportDocument, VerdictKind};

#[derive(Debug, Parser)]
#[command(name = "extvan", version, about = "Ext dimension sequences and their eventual vanishing pattern")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print `n,dim` rows of Ext^n(M, N) for 0 <= n <= n_max as CSV.
    Ext {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full pipeline and write a JSON report plus a text summary.
    ///
    /// With `--config DIR` every `*.json` in DIR is analyzed and one report
    /// per config is written into the `--out` directory.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        guard: Option<usize>,
        /// Worker threads for a batch directory.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the Betti numbers of the resolution of M as CSV and check it.
    Resolve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least common multiple of generator degrees.
    Lcm { degrees: Vec<usize> },
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Ext { config, out } => cmd_ext(&config, out.as_deref(), stdout),
        Command::Analyze {
            config,
            out,
            seed,
            guard,
            jobs,
        } => {
            if config.is_dir() {
                cmd_analyze_batch(&config, out.as_deref(), seed, guard, jobs, stdout)
            } else {
                cmd_analyze(&config, out.as_deref(), seed, guard, stdout, stderr)
            }
        }
        Command::Resolve { config, out } => cmd_resolve(&config, out.as_deref(), stdout, stderr),
        Command::Lcm { degrees } => cmd_lcm(&degrees, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(io_err(path)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn csv_text(header: [&str; 2], rows: impl Iterator<Item = (u64, u64)>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Failed(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for (n, v) in rows {
        w.write_record([n.to_string(), v.to_string()]).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failed(e.to_string()))
}

pub fn cmd_ext(config: &Path, out: Option<&Path>, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = RunConfig::load(config)?;
    let dims = ext_dimensions(&cfg)?;
    emit(out, &csv_text(["n", "dim"], dims.iter())?, stdout)?;
    Ok(0)
}

pub fn cmd_resolve(
    config: &Path,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let cfg = RunConfig::load(config)?;
    let summary = resolve(&cfg)?;
    let rows = summary.betti.iter().enumerate().map(|(n, b)| (n as u64, *b as u64));
    emit(out, &csv_text(["n", "betti"], rows)?, stdout)?;
    let flag = |ok: bool| if ok { "ok" } else { "FAILED" };
    let minimality = match summary.minimality_checked {
        Some(ok) => flag(ok),
        None => "not minimal (algebra is not local)",
    };
    let _ = writeln!(
        stderr,
        "d o d = 0: {}; exactness: {}; minimality: {minimality}",
        flag(summary.complex),
        flag(summary.exact)
    );
    if !summary.complex || !summary.exact || summary.minimality_checked == Some(false) {
        return Err(CliError::Failed("resolution invariants do not hold".into()));
    }
    Ok(0)
}

pub fn cmd_lcm(degrees: &[usize], stdout: &mut dyn Write) -> Result<i32, CliError> {
    if degrees.is_empty() {
        return Err(CliError::Usage("lcm needs at least one degree".into()));
    }
    let l = lcm_degrees(degrees).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(stdout, "{l}").map_err(|e| CliError::Io(format!("stdout: {e}")))?;
    Ok(0)
}

fn load_with_overrides(config: &Path, seed: Option<u64>, guard: Option<usize>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(config)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(g) = guard {
        cfg.guard = g;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Loads, runs and renders one config; the summary carries the timing.
pub fn analyze_file(
    config: &Path,
    seed: Option<u64>,
    guard: Option<usize>,
) -> Result<(ReportDocument, String), CliError> {
    let started = Instant::now();
    let cfg = load_with_overrides(config, seed, guard)?;
    let doc = analyze_config(&cfg)?;
    let mut summary = doc.summary();
    summary.push_str(&format!("elapsed: {:.3} s\n", started.elapsed().as_secs_f64()));
    Ok((doc, summary))
}

fn cmd_analyze(
    config: &Path,
    out: Option<&Path>,
    seed: Option<u64>,
    guard: Option<usize>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let (doc, summary) = analyze_file(config, seed, guard)?;
    match out {
        Some(path) => {
            std::fs::write(path, doc.to_json()).map_err(io_err(path))?;
            stdout
                .write_all(summary.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
        }
        None => {
            stdout
                .write_all(doc.to_json().as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
            let _ = stderr.write_all(summary.as_bytes());
        }
    }
    Ok(0)
}

fn one_line(doc: &ReportDocument) -> String {
    let v = &doc.verdict;
    let verdict = match v.verdict {
        VerdictKind::EventuallyZero => format!("eventually zero from n = {}", v.m0),
        VerdictKind::PeriodicNonvanishing => format!(
            "nonvanishing, d = {}, residues {:?}, m0 = {}",
            v.period, v.nonvanishing_residues, v.m0
        ),
    };
    let holdout = match doc.verification.failed_at {
        None => "holdout pass".to_string(),
        Some(p) => format!("holdout FAIL at {p}"),
    };
    format!("{verdict}; {holdout}")
}

fn cmd_analyze_batch(
    dir: &Path,
    out: Option<&Path>,
    seed: Option<u64>,
    guard: Option<usize>,
    jobs: usize,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let out = out.ok_or_else(|| CliError::Usage("a batch directory needs --out DIR for the reports".into()))?;
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    std::fs::create_dir_all(out).map_err(io_err(out))?;
    let mut configs: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    configs.sort();
    if configs.is_empty() {
        return Err(CliError::Usage(format!("no *.json configs in {}", dir.display())));
    }

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(i32, String)>>> = Mutex::new(vec![None; configs.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(configs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = configs.get(i) else { break };
                let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let line = analyze_file(path, seed, guard).and_then(|(doc, _)| {
                    let target = out.join(format!("{}.report.json", path.file_stem().unwrap_or_default().to_string_lossy()));
                    std::fs::write(&target, doc.to_json()).map_err(io_err(&target))?;
                    Ok(one_line(&doc))
                });
                let entry = match line {
                    Ok(l) => (0, format!("{name}: {l}")),
                    Err(e) => (e.exit_code(), format!("{name}: error: {e}")),
                };
                results.lock().expect("no worker panicked")[i] = Some(entry);
            });
        }
    });
    let mut code = 0;
    for (c, line) in results.into_inner().expect("no worker panicked").into_iter().flatten() {
        code = code.max(c);
        writeln!(stdout, "{line}").map_err(|e| CliError::Io(format!("stdout: {e}")))?;
    }
    Ok(code)
}

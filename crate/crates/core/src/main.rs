//! Command-line harness: verification suites, catalog listing, and dumps.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ydouble::suite::{self, dump::DumpFormat, Backend, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "ydouble",
    about = "Verification engine for the centrally extended Yangian double of sl2 at level one"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write the report.
    Verify {
        /// JSON configuration file; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        backend: Option<String>,
        /// Energy ceiling of the truncated module.
        #[arg(long)]
        emax: Option<u32>,
        /// Symmetric mode window bound: modes run over [-K, K].
        #[arg(long)]
        modes: Option<i64>,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Report output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Check ids to run (defaults to every check of the backend).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// Write an inspection dump.
    Dump {
        /// One of: basis, matrix:rbar, series:e, series:f, series:h+,
        /// series:h-, pairing-table.
        kind: String,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        emax: Option<u32>,
        /// Series window, inclusive.
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every check id with its backend and descriptive anchor.
    Catalog,
}

fn load_config(path: &Option<PathBuf>) -> Result<SuiteConfig, String> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {}", p.display(), e))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {}", p.display(), e))
        }
        None => Ok(SuiteConfig {
            backend: Backend::Exact,
            cutoffs: Default::default(),
            numeric: Some(Default::default()),
            checks: vec![],
            jobs: None,
            seed: 0,
            trials: 100,
        }),
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            config,
            backend,
            emax,
            modes,
            tolerance,
            out,
            jobs,
            seed,
            checks,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(b) = backend {
                cfg.backend = match b.as_str() {
                    "exact" => Backend::Exact,
                    "numeric" => Backend::Numeric,
                    other => return Err(format!("unknown backend {:?}", other)),
                };
                if cfg.backend == Backend::Numeric && cfg.numeric.is_none() {
                    cfg.numeric = Some(Default::default());
                }
            }
            if let Some(e) = emax {
                cfg.cutoffs.e_max = e;
            }
            if let Some(k) = modes {
                cfg.cutoffs.k_lo = -k;
                cfg.cutoffs.k_hi = k;
                cfg.cutoffs.u_lo = -k - 2;
                cfg.cutoffs.u_hi = k + 2;
                cfg.cutoffs.h_depth = 2 * k + 2;
            }
            if let Some(t) = tolerance {
                let n = cfg.numeric.get_or_insert_with(Default::default);
                n.tolerance = t;
            }
            if let Some(j) = jobs {
                cfg.jobs = Some(j);
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(c) = checks {
                cfg.checks = c;
            }
            if cfg.checks.is_empty() {
                cfg.checks = suite::catalog()
                    .into_iter()
                    .filter(|c| c.backend == cfg.backend)
                    .map(|c| c.id)
                    .collect();
            }
            match suite::run_suite(&cfg) {
                Ok(report) => {
                    let text = report.to_json();
                    match out {
                        Some(p) => std::fs::write(&p, &text)
                            .map_err(|e| format!("{}: {}", p.display(), e))?,
                        None => println!("{}", text),
                    }
                    for c in &report.checks {
                        eprintln!("{:<22} {}", c.id, c.status);
                    }
                    Ok(if report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
                Err(e) => {
                    eprintln!("configuration error: {}", e);
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Dump {
            kind,
            format,
            emax,
            lo,
            hi,
            out,
        } => {
            let fmt = match format.as_str() {
                "json" => DumpFormat::Json,
                "csv" => DumpFormat::Csv,
                other => return Err(format!("unknown format {:?}", other)),
            };
            let mut cc = suite::CutoffsConfig::default();
            if let Some(e) = emax {
                cc.e_max = e;
            }
            let text = suite::dump::dump(&kind, &cc.cutoffs(), (lo, hi), fmt)
                .map_err(|e| e.to_string())?;
            match out {
                Some(p) => {
                    std::fs::write(&p, &text).map_err(|e| format!("{}: {}", p.display(), e))?
                }
                None => println!("{}", text),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog => {
            for c in suite::catalog() {
                println!(
                    "{:<22} [{}]  {}",
                    c.id,
                    match c.backend {
                        Backend::Exact => "exact",
                        Backend::Numeric => "numeric",
                    },
                    c.anchor
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

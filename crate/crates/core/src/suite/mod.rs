//! Batch harness: configuration, suite orchestration, deterministic
//! reporting, and data dumps.

pub mod checks;
pub mod dump;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::Cutoffs;
use crate::yangian::Residual;

/// Arithmetic backend of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutoffsConfig {
    pub e_max: u32,
    pub m_bound: i64,
    pub u_lo: i64,
    pub u_hi: i64,
    pub margin: u32,
    pub k_lo: i64,
    pub k_hi: i64,
    pub h_depth: i64,
    pub gamma_degree: u32,
}

impl Default for CutoffsConfig {
    fn default() -> Self {
        CutoffsConfig {
            e_max: 3,
            m_bound: 4,
            u_lo: -5,
            u_hi: 2,
            margin: 2,
            k_lo: -2,
            k_hi: 2,
            h_depth: 5,
            gamma_degree: 2,
        }
    }
}

impl CutoffsConfig {
    pub fn cutoffs(&self) -> Cutoffs {
        Cutoffs::new(self.e_max, self.m_bound, self.u_lo, self.u_hi, self.margin)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericConfig {
    pub hbar: f64,
    pub z: f64,
    pub u_samples: Vec<f64>,
    /// Base point of the second evaluation slot for the reconstruction.
    pub y_base: f64,
    /// Spectral differences for the reconstruction samples.
    pub u_diffs: Vec<f64>,
    pub n_product: usize,
    pub intertwiner_depths: Vec<u32>,
    pub tolerance: f64,
    pub pole_eps: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            hbar: 1.0,
            z: 0.3,
            u_samples: vec![4.0, 6.0, 10.0],
            y_base: -10.0,
            u_diffs: vec![0.7, 1.3, 2.6],
            n_product: 10_000,
            intertwiner_depths: vec![25, 50, 100, 200],
            tolerance: 1e-6,
            pole_eps: 1e-8,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub backend: Backend,
    #[serde(default)]
    pub cutoffs: CutoffsConfig,
    #[serde(default)]
    pub numeric: Option<NumericConfig>,
    pub checks: Vec<String>,
    #[serde(default)]
    pub jobs: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Random trials for the sampled identity checks.
    #[serde(default = "default_trials")]
    pub trials: u32,
}

fn default_trials() -> u32 {
    100
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let known = catalog();
        for id in &self.checks {
            if !known.iter().any(|c| &c.id == id) {
                return Err(Error::UnknownCheck(id.clone()));
            }
        }
        if self.backend == Backend::Numeric && self.numeric.is_none() {
            return Err(Error::Config(
                "numeric backend requires the numeric parameter block".into(),
            ));
        }
        if self.cutoffs.k_lo > self.cutoffs.k_hi {
            return Err(Error::Config("mode window is empty".into()));
        }
        Ok(())
    }

    pub fn numeric(&self) -> NumericConfig {
        self.numeric.clone().unwrap_or_default()
    }
}

/// Check metadata: stable id, backend, and a descriptive anchor naming the
/// verified structure.
#[derive(Clone, Debug, Serialize)]
pub struct CheckInfo {
    pub id: String,
    pub backend: Backend,
    pub anchor: String,
}

pub fn catalog() -> Vec<CheckInfo> {
    let exact = |id: &str, anchor: &str| CheckInfo {
        id: id.into(),
        backend: Backend::Exact,
        anchor: anchor.into(),
    };
    let numeric = |id: &str, anchor: &str| CheckInfo {
        id: id.into(),
        backend: Backend::Numeric,
        anchor: anchor.into(),
    };
    vec![
        exact("heis", "boson mode brackets and charge-weight bookkeeping"),
        exact("phi-consistency", "currents from boson factors against the direct normal-ordered form"),
        exact("ee", "exchange of two raising currents"),
        exact("ff", "exchange of two lowering currents"),
        exact("h+e", "annihilation-side Cartan current against the raising current"),
        exact("h-e", "creation-side Cartan current against the raising current"),
        exact("h+f", "annihilation-side Cartan current against the lowering current (central shift active)"),
        exact("h-f", "creation-side Cartan current against the lowering current"),
        exact("h+h-", "the two Cartan currents against each other (central shift active)"),
        exact("h+h+", "annihilation-side Cartan currents commute"),
        exact("h-h-", "creation-side Cartan currents commute"),
        exact("ef-delta", "delta-function commutator of the raising and lowering currents"),
        exact("d-cov", "mode covariance under the spectral-shift automorphism"),
        exact("shift-aut", "shift conjugation formulas and bracket preservation"),
        exact("eval-modes", "defining mode relations on the evaluation module"),
        exact("ybe-pure+", "braided three-site exchange, plus orientation"),
        exact("ybe-pure-", "braided three-site exchange, reflected orientation"),
        exact("ybe-mixed", "mixed-orientation exchange with unitarity"),
        exact("ybe-sampled", "three-site exchange at seeded rational sample points"),
        exact("coproduct-hom", "coproduct is an algebra map on a tensor pair"),
        exact("coproduct-intertwine", "R-matrix intertwines the coproduct with its opposite"),
        exact("pairing", "Hopf pairing table, kernels, and axiom spot checks"),
        numeric("rho-anchor", "Gamma scalar factor anchors and asymptotics"),
        numeric("ur-reconstruct", "universal R-matrix factors against the scaled rational R-matrix"),
        numeric("phi-eq-h+", "intertwiner exchange with the annihilation-side Cartan current"),
        numeric("phi-eq-h-", "intertwiner exchange with the creation-side Cartan current"),
        numeric("phi-eq-e", "intertwiner commutes with the raising current"),
    ]
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub status: String,
    /// Exact checks report "0" on pass; numeric checks report the measured
    /// maximum as a decimal string.
    pub max_residual: String,
    pub trusted_entries: u64,
    pub truncation_events: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    /// Structured data for convergence-controlled checks: one table of
    /// (depth, energy ceiling, residual) rows per equation per sample.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub backend: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status == "pass" || c.status == "skipped")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub(crate) fn record_from_residual(
    r: &Residual,
    params: BTreeMap<String, String>,
) -> CheckRecord {
    let status = if r.pass() { "pass" } else { "fail" };
    let max_residual = match r.max_numeric {
        Some(v) if !r.failures.is_empty() || v > 0.0 => format!("{:e}", v),
        _ => {
            if r.failures.is_empty() {
                "0".into()
            } else {
                "nonzero".into()
            }
        }
    };
    CheckRecord {
        id: r.id.clone(),
        params,
        status: status.into(),
        max_residual,
        trusted_entries: r.comparisons,
        truncation_events: r.flagged,
        failures: r.failures.iter().take(5).cloned().collect(),
        details: None,
    }
}

/// Runs the requested checks and assembles the deterministic report.
/// Wall-clock timings are written to stderr only, so reports are
/// byte-identical across runs with the same configuration and seed.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let records: Result<Vec<CheckRecord>> = pool.install(|| {
        config
            .checks
            .iter()
            .map(|id| {
                let t0 = std::time::Instant::now();
                let rec = checks::run_check(id, config)?;
                eprintln!(
                    "check {:<22} {:>8} ms  [{}]",
                    id,
                    t0.elapsed().as_millis(),
                    rec.status
                );
                Ok(rec)
            })
            .collect()
    });
    let mut records = records?;
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(Report {
        schema: 1,
        backend: match config.backend {
            Backend::Exact => "exact".into(),
            Backend::Numeric => "numeric".into(),
        },
        seed: config.seed,
        checks: records,
    })
}

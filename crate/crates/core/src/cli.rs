//! Command-line front end. Channels come from a JSON config file, identity
//! suites and bound sweeps run in batch, and results land as CSV files
//! written atomically, plus a text summary on stdout and a gnuplot script
//! for the sweep figure.
//!
//! Exit codes are a stable contract: 0 all checks pass, 1 an identity or
//! ordering property failed, 2 usage or config error.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::bounds::{figure1_sweep, BoundsCurve};
use crate::channel::AdditiveNoiseChannel;
use crate::distributions::Distribution;
use crate::identities::{apply_tolerance, run_verifier, verifier_names, IdentityReport};
use crate::{Error, Result};

/// Distribution description as it appears in config files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistSpec {
    Gaussian { mu: f64, var: f64 },
    Exponential,
    Gamma { alpha: f64, beta: f64 },
    StudentT { nu: f64 },
    TruncatedGaussian { mu: f64, var: f64, lo: f64, hi: f64 },
}

impl DistSpec {
    pub fn build(&self) -> Result<Distribution> {
        match *self {
            DistSpec::Gaussian { mu, var } => Distribution::gaussian(mu, var),
            DistSpec::Exponential => Ok(Distribution::exponential_unit()),
            DistSpec::Gamma { alpha, beta } => Distribution::gamma_dist(alpha, beta),
            DistSpec::StudentT { nu } => Distribution::student_t(nu),
            DistSpec::TruncatedGaussian { mu, var, lo, hi } => {
                Distribution::truncated_gaussian(mu, var, lo, hi)
            }
        }
    }

    fn is_gaussian(&self) -> bool {
        matches!(self, DistSpec::Gaussian { .. })
    }
}

/// Verifier selection: the literal string `"all"` or an explicit name list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VerifierSelection {
    Keyword(String),
    List(Vec<String>),
}

impl Default for VerifierSelection {
    fn default() -> Self {
        VerifierSelection::Keyword("all".into())
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from(".")
}

fn default_mc_n() -> usize {
    1_000_000
}

/// A batch run: the channel family, noise scales, which verifiers to run,
/// optional per-verifier tolerance overrides, and output/sampling settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub prior: DistSpec,
    pub noise: DistSpec,
    pub a_values: Vec<f64>,
    #[serde(default)]
    pub identities: VerifierSelection,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_mc_n")]
    pub mc_n: usize,
}

impl RunConfig {
    pub fn load(path: &Path) -> std::result::Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.a_values.is_empty() {
            return Err("a_values is empty".into());
        }
        for &a in &self.a_values {
            if !a.is_finite() || a <= 0.0 {
                return Err(format!("a must be positive, got {a}"));
            }
        }
        if let VerifierSelection::Keyword(word) = &self.identities {
            if word != "all" {
                return Err(format!(
                    "identities must be \"all\" or a list of names, got {word:?}"
                ));
            }
        }
        let known = verifier_names();
        let listed: &[String] = match &self.identities {
            VerifierSelection::List(names) => names,
            VerifierSelection::Keyword(_) => &[],
        };
        for name in listed.iter().chain(self.tolerances.keys()) {
            if !known.contains(&name.as_str()) {
                return Err(format!("unknown verifier name {name:?}"));
            }
        }
        if self.mc_n == 0 {
            return Err("mc_n must be positive".into());
        }
        Ok(())
    }

    fn selected_verifiers(&self) -> Vec<String> {
        match &self.identities {
            VerifierSelection::Keyword(_) => {
                verifier_names().iter().map(|s| s.to_string()).collect()
            }
            VerifierSelection::List(names) => names.clone(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "infolab",
    version,
    about = "Identity checks and estimation bounds for additive noise channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity verifiers from a JSON config; writes identities.csv.
    Verify { config: PathBuf },
    /// Compare MMSE against its lower bounds; writes bounds.csv.
    Bounds { config: PathBuf },
    /// Sweep the bound comparison over SNR; writes figure1.csv and figure1.plt.
    Figure1 {
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Monte Carlo seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of SNR grid points between -10 and +30 dB.
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
}

/// Entry point behind `main`; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return 2;
    }
    match cli.command {
        Command::Verify { config } => cmd_verify(&config),
        Command::Bounds { config } => cmd_bounds(&config),
        Command::Figure1 { out, seed, points } => cmd_figure1(&out, seed, points),
    }
}

/// Applies `INFOLAB_THREADS` to the global worker pool; 0 or unset keeps
/// the library default. Numerical results do not depend on the setting.
fn init_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var("INFOLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("INFOLAB_THREADS must be a nonnegative integer, got {raw:?}"))?;
    if n == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

// Errors that mean "this identity does not apply here", as opposed to a
// numerical breakdown inside an applicable one.
fn is_skip(err: &Error) -> bool {
    matches!(
        err,
        Error::PreconditionViolated(_)
            | Error::AssumptionViolated(_)
            | Error::Unsupported(_)
            | Error::InvalidParameter(_)
            | Error::UndefinedMoment(_)
    )
}

enum Row {
    Ran(IdentityReport),
    Skipped {
        name: String,
        desc: String,
        a: f64,
        note: String,
    },
}

impl Row {
    fn status(&self) -> &'static str {
        match self {
            Row::Ran(r) if r.pass => "PASS",
            Row::Ran(_) => "FAIL",
            Row::Skipped { .. } => "SKIPPED",
        }
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn identities_csv(rows: &[Row]) -> std::result::Result<String, String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record([
        "identity_name",
        "channel_desc",
        "a",
        "lhs",
        "rhs",
        "abs_residual",
        "rel_residual",
        "tolerance",
        "status",
        "notes",
    ])
    .map_err(|e| e.to_string())?;
    for row in rows {
        let record = match row {
            Row::Ran(r) => [
                r.identity_name.clone(),
                r.channel_desc.clone(),
                fmt(r.a),
                fmt(r.lhs),
                fmt(r.rhs),
                fmt(r.abs_residual),
                fmt(r.rel_residual),
                fmt(r.tolerance),
                row.status().to_string(),
                r.notes.clone(),
            ],
            Row::Skipped { name, desc, a, note } => [
                name.clone(),
                desc.clone(),
                fmt(*a),
                "NaN".into(),
                "NaN".into(),
                "NaN".into(),
                "NaN".into(),
                "NaN".into(),
                "SKIPPED".into(),
                note.clone(),
            ],
        };
        wtr.write_record(&record).map_err(|e| e.to_string())?;
    }
    String::from_utf8(wtr.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn cmd_verify(config_path: &Path) -> i32 {
    let cfg = match RunConfig::load(config_path) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let (prior, noise) = match cfg.prior.build().and_then(|p| Ok((p, cfg.noise.build()?))) {
        Ok(pair) => pair,
        Err(err) => {
            eprintln!("error: {err}");
            return 2;
        }
    };
    let verifiers = cfg.selected_verifiers();

    let mut rows = Vec::new();
    for &a in &cfg.a_values {
        let desc = format!(
            "prior={}, noise={}, a={a}",
            prior.describe(),
            noise.describe()
        );
        let skip_all = |note: String, rows: &mut Vec<Row>| {
            for name in &verifiers {
                rows.push(Row::Skipped {
                    name: name.clone(),
                    desc: desc.clone(),
                    a,
                    note: note.clone(),
                });
            }
        };
        let ch = match AdditiveNoiseChannel::new(prior.clone(), noise.clone(), a) {
            Ok(ch) => ch,
            Err(err) if is_skip(&err) => {
                skip_all(err.to_string(), &mut rows);
                continue;
            }
            Err(err) => {
                eprintln!("error: channel at a={a}: {err}");
                return 1;
            }
        };
        for name in &verifiers {
            let row = match run_verifier(name, &ch) {
                Ok(report) => {
                    let report = match cfg.tolerances.get(name) {
                        Some(&tol) => apply_tolerance(report, tol),
                        None => report,
                    };
                    Row::Ran(report)
                }
                Err(err) if is_skip(&err) => Row::Skipped {
                    name: name.clone(),
                    desc: desc.clone(),
                    a,
                    note: err.to_string(),
                },
                Err(err) => {
                    eprintln!("error: {name} at a={a}: {err}");
                    return 1;
                }
            };
            rows.push(row);
        }
    }

    let csv = match identities_csv(&rows) {
        Ok(csv) => csv,
        Err(msg) => {
            eprintln!("error: cannot render identities.csv: {msg}");
            return 1;
        }
    };
    let out = cfg.output_dir.join("identities.csv");
    if let Err(err) = write_atomic(&out, &csv) {
        eprintln!("error: cannot write {}: {err}", out.display());
        return 1;
    }

    let mut pass = 0usize;
    let mut fail = 0usize;
    let mut skipped = 0usize;
    for row in &rows {
        match row {
            Row::Ran(r) => {
                if r.pass {
                    pass += 1;
                } else {
                    fail += 1;
                }
                println!(
                    "{:7} {:32} a={:<6} residual {:.3e} (tol {:.1e})",
                    row.status(),
                    r.identity_name,
                    r.a,
                    r.abs_residual,
                    r.tolerance
                );
            }
            Row::Skipped { name, a, note, .. } => {
                skipped += 1;
                println!("{:7} {:32} a={:<6} {note}", "SKIPPED", name, a);
            }
        }
    }
    println!(
        "verify: {pass} pass, {fail} fail, {skipped} skipped -> {}",
        out.display()
    );
    if fail == 0 {
        0
    } else {
        1
    }
}

// Noise scales from the config, reparameterized as an increasing SNR grid.
fn snr_grid(cfg: &RunConfig, prior: &Distribution, noise: &Distribution)
    -> Result<Vec<f64>>
{
    let var_x = prior.variance()?;
    let var_w = noise.variance()?;
    let mut grid: Vec<f64> = cfg
        .a_values
        .iter()
        .map(|&a| 10.0 * (var_x / (a * var_w)).log10())
        .collect();
    grid.sort_by(f64::total_cmp);
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "a_values must be distinct".into(),
        ));
    }
    Ok(grid)
}

fn cmd_bounds(config_path: &Path) -> i32 {
    let cfg = match RunConfig::load(config_path) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    if !cfg.noise.is_gaussian() {
        eprintln!("error: the bounds command requires gaussian noise");
        return 2;
    }
    let built = cfg
        .prior
        .build()
        .and_then(|p| Ok((p, cfg.noise.build()?)))
        .and_then(|(p, n)| Ok((snr_grid(&cfg, &p, &n)?, p, n)));
    let (grid, prior, noise) = match built {
        Ok(t) => t,
        Err(err) => {
            eprintln!("error: {err}");
            return 2;
        }
    };

    let curve = match figure1_sweep(&prior, &noise, &grid, cfg.mc_n, cfg.seed) {
        Ok(curve) => curve,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let out = cfg.output_dir.join("bounds.csv");
    if let Err(err) = write_atomic(&out, &curve.to_csv()) {
        eprintln!("error: cannot write {}: {err}", out.display());
        return 1;
    }
    print_ordering(&curve);
    println!(
        "bounds: ordering {} at {} points -> {}",
        if curve.ordering_ok() { "holds" } else { "FAILED" },
        curve.rows.len(),
        out.display()
    );
    if cfg.prior.is_gaussian() {
        let spread = curve
            .rows
            .iter()
            .map(|r| (r.mmse - r.bcrlb).abs().max((r.mmse - r.new_lb).abs()))
            .fold(0.0f64, f64::max);
        println!("gaussian prior: all three bounds coincide, max spread {spread:.3e}");
    }
    if curve.ordering_ok() {
        0
    } else {
        1
    }
}

fn print_ordering(curve: &BoundsCurve) {
    for r in &curve.rows {
        println!(
            "{:6} snr {:>6.1} dB  a {:<10.4e} mmse {:.6e} >= new_lb {:.6e} >= bcrlb {:.6e}",
            if r.ordered() { "OK" } else { "VIOLATED" },
            r.snr_db,
            r.a,
            r.mmse,
            r.new_lb,
            r.bcrlb
        );
    }
}

const FIGURE1_SNR_LO: f64 = -10.0;
const FIGURE1_SNR_HI: f64 = 30.0;

fn gnuplot_script() -> String {
    // Column headers sit on the first non-comment line; gnuplot consumes
    // them via `autotitle columnhead` so the data rows start cleanly.
    let mut s = String::new();
    s.push_str("set datafile separator comma\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set key left bottom\n");
    s.push_str("set logscale y\n");
    s.push_str("set xlabel 'SNR (dB)'\n");
    s.push_str("set ylabel 'mean square error'\n");
    s.push_str("set title 'MMSE against its lower bounds'\n");
    s.push_str("plot 'figure1.csv' using 1:3 with linespoints title 'MMSE', \\\n");
    s.push_str("     '' using 1:4 with linespoints title 'BCRLB', \\\n");
    s.push_str("     '' using 1:5 with linespoints title 'entropy-power bound'\n");
    s
}

fn cmd_figure1(out_dir: &Path, seed: u64, points: usize) -> i32 {
    if points < 2 {
        eprintln!("error: --points must be at least 2, got {points}");
        return 2;
    }
    let step = (FIGURE1_SNR_HI - FIGURE1_SNR_LO) / (points - 1) as f64;
    let grid: Vec<f64> = (0..points)
        .map(|i| FIGURE1_SNR_LO + step * i as f64)
        .collect();
    let prior = Distribution::student_t(3.0).expect("standard heavy-tailed prior");
    let noise = Distribution::gaussian(0.0, 1.0).expect("standard gaussian noise");

    let curve = match figure1_sweep(&prior, &noise, &grid, default_mc_n(), seed) {
        Ok(curve) => curve,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };

    let csv_path = out_dir.join("figure1.csv");
    let plt_path = out_dir.join("figure1.plt");
    if let Err(err) = write_atomic(&csv_path, &curve.to_csv())
        .and_then(|()| write_atomic(&plt_path, &gnuplot_script()))
    {
        eprintln!("error: cannot write outputs: {err}");
        return 1;
    }

    print_ordering(&curve);
    let ordering = curve.ordering_ok();

    // The entropy-power bound should beat the Cramér-Rao bound most where
    // the noise dominates: the gap at the low end must exceed every gap in
    // the high-SNR region (>= +20 dB when the grid reaches it, else the
    // last point).
    let gap = |r: &crate::bounds::BoundsRow| r.new_lb - r.bcrlb;
    let low_gap = gap(&curve.rows[0]);
    let high_gaps: Vec<f64> = {
        let tail: Vec<f64> = curve
            .rows
            .iter()
            .filter(|r| r.snr_db >= 20.0 - 1e-9)
            .map(|r| gap(r))
            .collect();
        if tail.is_empty() {
            vec![gap(curve.rows.last().expect("nonempty grid"))]
        } else {
            tail
        }
    };
    let gap_shrinks = high_gaps.iter().all(|&g| low_gap > g);
    println!(
        "figure1: {} points, seed {seed} -> {}, {}",
        curve.rows.len(),
        csv_path.display(),
        plt_path.display()
    );
    println!(
        "low-SNR gap {:.6e} {} high-SNR gap {:.6e}",
        low_gap,
        if gap_shrinks { ">" } else { "NOT >" },
        high_gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    );
    if ordering && gap_shrinks {
        0
    } else {
        1
    }
}

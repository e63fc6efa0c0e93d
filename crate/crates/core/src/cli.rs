//! Command-line runner: configuration, suite dispatch and report files.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::spaces::{SpaceKind, C64};
use crate::suites::{self, CaseSpec, Scalar, VerificationReport};
use crate::tolerance::Tolerances;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const OUT_DIR_ENV: &str = "WANDERING_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteSelector {
    ScalarInequality,
    #[value(name = "theorem-2-1")]
    #[serde(rename = "theorem-2-1")]
    SingleShift,
    #[value(name = "theorem-2-3")]
    #[serde(rename = "theorem-2-3")]
    JointWandering,
    #[value(name = "theorem-2-5")]
    #[serde(rename = "theorem-2-5")]
    Converse,
    #[value(name = "beurling-1d")]
    #[serde(rename = "beurling-1d")]
    Beurling1d,
    NegativeExamples,
    All,
}

impl SuiteSelector {
    const EVERY: [SuiteSelector; 6] = [
        SuiteSelector::ScalarInequality,
        SuiteSelector::SingleShift,
        SuiteSelector::JointWandering,
        SuiteSelector::Converse,
        SuiteSelector::Beurling1d,
        SuiteSelector::NegativeExamples,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Hardy,
    Bergman,
    Dirichlet,
}

impl From<SpaceArg> for SpaceKind {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Hardy => SpaceKind::Hardy,
            SpaceArg::Bergman => SpaceKind::Bergman,
            SpaceArg::Dirichlet => SpaceKind::Dirichlet,
        }
    }
}

/// Verify wandering subspaces of shift tuples on truncated Hardy, Bergman
/// and Dirichlet spaces over the polydisc.
#[derive(Debug, Parser)]
#[command(name = "wandering", version)]
pub struct Args {
    /// TOML run configuration; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Suite to run (repeatable); defaults to all
    #[arg(long = "suite", value_enum)]
    pub suites: Vec<SuiteSelector>,
    #[arg(long, value_enum)]
    pub space: Option<SpaceArg>,
    /// Number of variables
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree caps, one per variable (a single value is repeated)
    #[arg(long, value_delimiter = ',')]
    pub caps: Option<Vec<usize>>,
    /// One-based variable subset
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<usize>>,
    /// Ascending real coefficients of θ for the one-variable suite
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub theta: Option<Vec<f64>>,
    /// Random trials of the scalar inequality
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Set the residual, angle and PSD tolerances at once
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    /// Report formats (repeatable or comma separated)
    #[arg(long, value_enum, value_delimiter = ',')]
    pub format: Vec<Format>,
}

/// Run configuration as read from TOML. Missing caps and α are derived from
/// `n` during resolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub suites: Vec<SuiteSelector>,
    pub space: SpaceKind,
    pub n: usize,
    pub caps: Option<Vec<usize>>,
    pub alpha: Option<Vec<usize>>,
    pub margin: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub trials: usize,
    pub theta: Vec<Scalar>,
    /// Cap for the one-variable suite.
    pub beurling_cap: usize,
    /// Explicit cases for the joint and converse suites; when empty the
    /// full space and a tensor-product subspace of the run geometry are used.
    pub cases: Vec<CaseSpec>,
    pub out_dir: Option<PathBuf>,
    pub formats: Vec<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: vec![SuiteSelector::All],
            space: SpaceKind::Bergman,
            n: 2,
            caps: None,
            alpha: None,
            margin: 2,
            seed: 42,
            tolerances: Tolerances::default(),
            trials: 100_000,
            theta: vec![Scalar::Real(0.0), Scalar::Real(0.0), Scalar::Real(1.0)],
            beurling_cap: 10,
            cases: Vec::new(),
            out_dir: None,
            formats: vec![Format::Json],
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("{0}")]
    Run(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
            CliError::Run(Error::Config(_) | Error::Argument(_) | Error::Range(_) | Error::Shape(_)) => EXIT_CONFIG,
            CliError::Run(_) => EXIT_VERIFICATION,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Applies command-line overrides on top of this configuration.
    pub fn apply(&mut self, args: &Args) {
        if !args.suites.is_empty() {
            self.suites = args.suites.clone();
        }
        if let Some(space) = args.space {
            self.space = space.into();
        }
        if let Some(n) = args.n {
            if n != self.n {
                self.alpha = self.alpha.take().filter(|_| args.alpha.is_some());
                self.caps = self.caps.take().filter(|_| args.caps.is_some());
            }
            self.n = n;
        }
        if let Some(caps) = &args.caps {
            self.caps = Some(caps.clone());
        }
        if let Some(alpha) = &args.alpha {
            self.alpha = Some(alpha.clone());
        }
        if let Some(theta) = &args.theta {
            self.theta = theta.iter().map(|&x| Scalar::Real(x)).collect();
        }
        if let Some(trials) = args.trials {
            self.trials = trials;
        }
        if let Some(seed) = args.seed {
            self.seed = seed;
        }
        if let Some(tol) = args.tolerance {
            self.tolerances = Tolerances { rank: self.tolerances.rank, ..Tolerances::uniform(tol) };
        }
        if let Some(dir) = &args.out_dir {
            self.out_dir = Some(dir.clone());
        }
        if !args.format.is_empty() {
            self.formats = args.format.clone();
        }
    }

    /// Fills derived fields and validates everything a run needs.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        if self.n == 0 {
            return Err(CliError::Config("n must be at least 1".into()));
        }
        let caps = match self.caps.take() {
            Some(c) if c.len() == 1 && self.n > 1 => vec![c[0]; self.n],
            Some(c) => c,
            None => vec![10; self.n],
        };
        if caps.len() != self.n {
            return Err(CliError::Config(format!("{} caps given for n = {}", caps.len(), self.n)));
        }
        self.caps = Some(caps);
        self.alpha = Some(self.alpha.take().unwrap_or_else(|| (1..=self.n).collect()));
        if self.suites.is_empty() {
            return Err(CliError::Config("no suite selected".into()));
        }
        if self.suites.contains(&SuiteSelector::All) {
            self.suites = SuiteSelector::EVERY.to_vec();
        } else {
            let mut seen = Vec::new();
            self.suites.retain(|s| {
                let fresh = !seen.contains(s);
                seen.push(*s);
                fresh
            });
        }
        if self.formats.is_empty() {
            self.formats = vec![Format::Json];
        }
        if self.trials == 0 {
            return Err(CliError::Config("trials must be at least 1".into()));
        }
        if self.theta.iter().all(|c| c.value().norm() == 0.0) {
            return Err(CliError::Config("theta must be a non-zero polynomial".into()));
        }
        self.base_case().validate().map_err(config_error)?;
        for case in &self.cases {
            case.validate().map_err(config_error)?;
        }
        Ok(self)
    }

    fn caps(&self) -> Vec<usize> {
        self.caps.clone().unwrap_or_else(|| vec![10; self.n])
    }

    /// The case every suite derives its geometry from.
    pub fn base_case(&self) -> CaseSpec {
        CaseSpec {
            label: format!("full {} d={:?}", self.space, self.caps()),
            space: self.space.clone(),
            n: self.n,
            caps: self.caps(),
            alpha: self.alpha.clone().unwrap_or_else(|| (1..=self.n).collect()),
            margin: self.margin,
            tolerances: self.tolerances,
            seed: self.seed,
            ..CaseSpec::default()
        }
    }

    fn joint_cases(&self) -> Vec<CaseSpec> {
        if !self.cases.is_empty() {
            return self.cases.clone();
        }
        let base = self.base_case();
        suites::default_tensor_cases(&self.space, &base.caps)
            .into_iter()
            .map(|c| CaseSpec { alpha: base.alpha.clone(), margin: base.margin, tolerances: base.tolerances, seed: base.seed, ..c })
            .collect()
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("wandering-reports"))
    }
}

fn config_error(e: Error) -> CliError {
    match e {
        Error::Config(msg) => CliError::Config(msg),
        other => CliError::Config(other.to_string()),
    }
}

/// Loads the TOML file (if any), applies flags and resolves.
pub fn parse_config(args: &Args) -> Result<RunConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            RunConfig::from_toml(&text)?
        }
        None => RunConfig::default(),
    };
    config.apply(args);
    config.resolve()
}

pub fn run_suite(config: &RunConfig, which: SuiteSelector) -> Result<VerificationReport, Error> {
    let base = config.base_case();
    let tol = &config.tolerances;
    match which {
        SuiteSelector::ScalarInequality => suites::scalar_inequality_suite(config.trials, config.seed, tol),
        SuiteSelector::SingleShift => suites::run_single_shift(&config.space, &base.caps, tol),
        SuiteSelector::JointWandering => suites::run_joint_wandering(&config.joint_cases()),
        SuiteSelector::Converse => {
            let cases = config.joint_cases();
            if base.n < 2 {
                return Err(Error::Config("the converse suite needs n >= 2".into()));
            }
            suites::run_converse(&cases)
        }
        SuiteSelector::Beurling1d => {
            let theta: Vec<C64> = config.theta.iter().map(|c| c.value()).collect();
            suites::run_beurling_1d(&config.space, &theta, config.beurling_cap, tol)
        }
        SuiteSelector::NegativeExamples => {
            let caps = if base.n >= 2 { base.caps.clone() } else { vec![base.caps[0]; 2] };
            suites::run_negative_examples(&SpaceKind::Hardy, &caps, tol)
        }
        SuiteSelector::All => unreachable!("expanded during resolution"),
    }
}

#[derive(Serialize)]
struct Timestamp {
    generated_at_unix: f64,
    wall_time_seconds: std::collections::BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    tool_version: &'static str,
    config: &'a RunConfig,
    suites: &'a [VerificationReport],
    overall_pass: bool,
    timestamp: Timestamp,
}

/// JSON with every float written in scientific notation with 17
/// significant digits.
pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    struct Sci;
    impl serde_json::ser::Formatter for Sci {
        fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
            write!(w, "{value:.16e}")
        }
    }
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sci);
    value.serialize(&mut ser).expect("reports always serialize");
    out.push(b'\n');
    out
}

fn csv_float(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

pub fn to_csv(reports: &[VerificationReport]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["suite", "space", "n", "d", "alpha", "residual", "angle", "min_eig", "pass"]).map_err(err)?;
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
    for r in reports {
        for c in &r.cases {
            w.write_record([
                r.suite.clone(),
                c.space.clone().unwrap_or_default(),
                c.n.map(|n| n.to_string()).unwrap_or_default(),
                join(&c.caps),
                join(&c.alpha),
                csv_float(c.residual),
                csv_float(c.angle),
                csv_float(c.min_eig),
                c.pass.to_string(),
            ])
            .map_err(err)?;
        }
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn summary_line(r: &VerificationReport) -> String {
    let passed = r.cases.iter().filter(|c| c.pass).count();
    format!(
        "{:<18} {}  cases {passed}/{}  max residual {:.2e}  max angle {:.2e}  {:.2}s",
        r.suite,
        if r.pass { "PASS" } else { "FAIL" },
        r.cases.len(),
        r.max_residual(),
        r.max_angle(),
        r.wall_time.as_secs_f64()
    )
}

fn format_coefficients(v: &serde_json::Value) -> String {
    let mut pairs = v.as_array().cloned().unwrap_or_default();
    while pairs.len() > 1 && pairs.last().is_some_and(|p| p[0].as_f64() == Some(0.0) && p[1].as_f64() == Some(0.0)) {
        pairs.pop();
    }
    let all_real = pairs.iter().all(|p| p[1].as_f64() == Some(0.0));
    let items: Vec<String> = pairs
        .iter()
        .map(|p| {
            let (re, im) = (p[0].as_f64().unwrap_or(f64::NAN), p[1].as_f64().unwrap_or(f64::NAN));
            if all_real {
                format!("{re}")
            } else {
                format!("{re}{im:+}i")
            }
        })
        .collect();
    format!("[{}]", items.join(","))
}

/// Runs a resolved configuration, writes the reports and returns the
/// exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let dir = config.out_dir();
    fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;

    let mut reports = Vec::new();
    for &which in &config.suites {
        let report = run_suite(config, which)?;
        let _ = writeln!(out, "{}", summary_line(&report));
        if which == SuiteSelector::Beurling1d {
            for case in &report.cases {
                if let Some(basis) = case.artifacts.get("wandering_basis").and_then(|b| b.as_array()) {
                    for v in basis {
                        let _ = writeln!(out, "  W basis: {}", format_coefficients(v));
                    }
                }
            }
        }
        reports.push(report);
    }
    let overall_pass = reports.iter().all(|r| r.pass);

    let file = ReportFile {
        tool_version: env!("CARGO_PKG_VERSION"),
        config,
        suites: &reports,
        overall_pass,
        timestamp: Timestamp {
            generated_at_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0),
            wall_time_seconds: reports.iter().map(|r| (r.suite.clone(), r.wall_time.as_secs_f64())).collect(),
        },
    };
    for format in &config.formats {
        let (name, bytes) = match format {
            Format::Json => ("report.json", to_json(&file)),
            Format::Csv => ("report.csv", to_csv(&reports)?),
        };
        let path = dir.join(name);
        fs::write(&path, bytes).map_err(|e| io_err(&path, e))?;
    }
    let _ = writeln!(out, "overall {}", if overall_pass { "PASS" } else { "FAIL" });
    Ok(if overall_pass { EXIT_PASS } else { EXIT_VERIFICATION })
}

/// Entry point shared by the binary and the tests.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_CONFIG;
            }
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
    };
    match parse_config(&args).and_then(|c| run(&c, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

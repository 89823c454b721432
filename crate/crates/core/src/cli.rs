//! Command-line front end: `expand`, `verify` and `oracle`.
//!
//! Options come from flags and from an optional JSON config file
//! (`--config`); flags win. Exit codes: 0 success or equal, 1 mismatch,
//! 2 usage or configuration error, 3 budget or precision error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::coloring::{ColoringSetup, Form};
use crate::error::Error;
use crate::oracle::{budget_from_env, MatrixOverGF, Oracle, DEFAULT_BUDGET};
use crate::series::{json::parse_rational, Mode, Ring, SeriesJson, VariableSpec, DEFAULT_T_CAP, DEFAULT_WIDTH};
use crate::variety::VarietySpec;
use crate::verify::{verify_many, Report, VerifyParams, CATALOG};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Expand a coloring zeta function.
    Expand,
    /// Check identities from the catalog (or `--identity all`).
    Verify,
    /// Run a brute-force count over a finite field.
    Oracle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Plain,
}

/// Every option of a job. All fields are optional so that a config file and
/// the command line can each supply part of it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[arg(skip)]
    pub command: Option<Command>,
    /// standard | partition | centralizer | commuting
    #[arg(long, global = true)]
    pub setup: Option<String>,
    /// point | ga | gm | poly:c0,c1,...
    #[arg(long, global = true)]
    pub variety: Option<String>,
    /// first | second | third | direct
    #[arg(long, global = true)]
    pub form: Option<String>,
    /// Catalog identity name, or `all`.
    #[arg(long, global = true)]
    pub identity: Option<String>,
    /// gl-classes | mn-classes | unipotent | commuting | commuting-glmn | centralizer
    #[arg(long, global = true)]
    pub count: Option<String>,
    /// `symbolic` or a number.
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// Matrix size for `oracle`.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Largest matrix size for oracle-backed identities.
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    /// Largest power of T kept.
    #[arg(long, global = true)]
    pub tmax: Option<usize>,
    /// Number of q-exponents kept in new expansions.
    #[arg(long, global = true)]
    pub qwindow: Option<i64>,
    /// Row-major entries for `oracle --count centralizer`, comma separated.
    #[arg(long, global = true)]
    pub matrix: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest number of matrices one count may enumerate.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl JobConfig {
    /// Fill every unset field from `base`.
    pub fn or(self, base: JobConfig) -> JobConfig {
        JobConfig {
            command: self.command.or(base.command),
            setup: self.setup.or(base.setup),
            variety: self.variety.or(base.variety),
            form: self.form.or(base.form),
            identity: self.identity.or(base.identity),
            count: self.count.or(base.count),
            q: self.q.or(base.q),
            n: self.n.or(base.n),
            nmax: self.nmax.or(base.nmax),
            tmax: self.tmax.or(base.tmax),
            qwindow: self.qwindow.or(base.qwindow),
            matrix: self.matrix.or(base.matrix),
            format: self.format.or(base.format),
            budget: self.budget.or(base.budget),
            out: self.out.or(base.out),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "coloring-zeta", version, about = "Coloring zeta functions over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// JSON file with job options; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    job: JobConfig,
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } | Error::Precision(_) => EXIT_BUDGET,
        Error::Inconsistent(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Incompatible(_) => "incompatible",
        Error::NotInvertible(_) => "not_invertible",
        Error::Precision(_) => "precision",
        Error::Invalid(_) => "invalid",
        Error::NonIntegral(_) => "non_integral",
        Error::Inconsistent(_) => "inconsistent",
        Error::Budget { .. } => "budget",
        Error::Mode(_) => "mode",
    }
}

fn failure(e: &Error) -> Outcome {
    let j = ErrorJson { error: error_kind(e), message: e.to_string() };
    Outcome { code: exit_code(e), stdout: String::new(), stderr: serde_json::to_string(&j).unwrap() + "\n" }
}

/// Parse arguments (including the program name) and run the job.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut job = cli.job;
    job.command = cli.command;
    if let Some(path) = &cli.config {
        match load_config(path) {
            Ok(base) => job = job.or(base),
            Err(e) => return failure(&e),
        }
    }
    run_job(&job)
}

pub fn load_config(path: &std::path::Path) -> crate::Result<JobConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("bad config {}: {e}", path.display())))
}

/// Run a fully merged job.
pub fn run_job(job: &JobConfig) -> Outcome {
    let result = match job.command {
        Some(Command::Expand) => expand(job),
        Some(Command::Verify) => verify(job),
        Some(Command::Oracle) => oracle(job),
        None => Err(Error::Invalid("no command: use expand, verify or oracle".into())),
    };
    let (code, text) = match result {
        Ok(x) => x,
        Err(e) => return failure(&e),
    };
    match &job.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => failure(&Error::Invalid(format!("cannot write {}: {e}", path.display()))),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn mode_of(job: &JobConfig) -> crate::Result<Mode> {
    match job.q.as_deref() {
        None | Some("symbolic") => Ok(Mode::Symbolic),
        Some(s) => Ok(Mode::Numeric(parse_rational(s)?)),
    }
}

fn positive<T: PartialOrd + Default + Copy>(v: Option<T>, default: T, name: &str) -> crate::Result<T> {
    let v = v.unwrap_or(default);
    if v <= T::default() {
        return Err(Error::Invalid(format!("--{name} must be positive")));
    }
    Ok(v)
}

fn budget(job: &JobConfig) -> crate::Result<u128> {
    let b = job.budget.unwrap_or(DEFAULT_BUDGET);
    Ok(match budget_from_env()? {
        Some(cap) => b.min(cap),
        None => b,
    })
}

fn required<'a>(v: &'a Option<String>, name: &str) -> crate::Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Invalid(format!("--{name} is required")))
}

#[derive(Serialize)]
struct ExpandJson {
    setup: String,
    variety: String,
    form: Form,
    series: SeriesJson,
}

fn expand(job: &JobConfig) -> crate::Result<(i32, String)> {
    let setup = ColoringSetup::from_name(required(&job.setup, "setup")?)?;
    let variety: VarietySpec = job.variety.as_deref().unwrap_or("point").parse()?;
    let form: Form = job.form.as_deref().unwrap_or("first").parse()?;
    let mode = mode_of(job)?;
    let vars = if mode == Mode::Symbolic { VariableSpec::q() } else { VariableSpec::bare() };
    let t_cap = positive(job.tmax, DEFAULT_T_CAP, "tmax")?;
    let width = positive(job.qwindow, DEFAULT_WIDTH, "qwindow")?;
    let ring = Ring::new(vars, mode, t_cap, width)?;
    let series = form.compute(&setup, &variety, &ring)?;
    let text = match job.format.unwrap_or_default() {
        Format::Json => {
            let j = ExpandJson {
                setup: setup.name().into(),
                variety: variety.to_string(),
                form,
                series: series.to_json(),
            };
            serde_json::to_string_pretty(&j).unwrap() + "\n"
        }
        Format::Plain => series.format() + "\n",
    };
    Ok((EXIT_OK, text))
}

fn verify(job: &JobConfig) -> crate::Result<(i32, String)> {
    let identity = job.identity.as_deref().unwrap_or("all");
    let ids: Vec<&str> = if identity == "all" { CATALOG.to_vec() } else { vec![identity] };
    let params = VerifyParams {
        mode: mode_of(job)?,
        t_max: positive(job.tmax, 5, "tmax")?,
        q_window: positive(job.qwindow, DEFAULT_WIDTH, "qwindow")?,
        n_max: positive(job.nmax, 3, "nmax")?,
        setup: job.setup.clone(),
        variety: job.variety.as_deref().map(str::parse).transpose()?,
        budget: budget(job)?,
    };
    let reports: Vec<Report> = verify_many(&ids, &params).into_iter().collect::<crate::Result<_>>()?;
    let code = if reports.iter().all(Report::is_equal) { EXIT_OK } else { EXIT_MISMATCH };
    let text = match job.format.unwrap_or_default() {
        Format::Json if reports.len() == 1 => reports[0].to_json() + "\n",
        Format::Json => serde_json::to_string_pretty(&reports).unwrap() + "\n",
        Format::Plain => reports
            .iter()
            .map(|r| format!("{}: {}\n", r.identity, if r.is_equal() { "equal" } else { "mismatch" }))
            .collect(),
    };
    Ok((code, text))
}

#[derive(Serialize)]
struct CountJson {
    count: String,
    n: usize,
    q: u64,
    kind: String,
    elapsed_ms: u128,
}

fn oracle(job: &JobConfig) -> crate::Result<(i32, String)> {
    let kind = required(&job.count, "count")?;
    let q_text = required(&job.q, "q")?;
    let q: u64 = q_text.parse().map_err(|_| Error::Invalid(format!("--q {q_text} is not a field size")))?;
    let o = Oracle::of_order(q)?.with_budget(budget(job)?);
    let start = Instant::now();
    let (n, count) = if kind == "centralizer" {
        let entries: Vec<u8> = required(&job.matrix, "matrix")?
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::Invalid(format!("bad matrix entry {s:?}"))))
            .collect::<crate::Result<_>>()?;
        let n = (entries.len() as f64).sqrt() as usize;
        let a = MatrixOverGF::new(n, entries, o.field())?;
        (n, o.centralizer_order_gl(&a)?)
    } else {
        let n = positive(job.n, 1, "n")?;
        let count = match kind {
            "gl-classes" => o.count_classes_gl(n)?,
            "mn-classes" => o.count_classes_mn(n)?,
            "unipotent" => o.count_unipotent(n)?,
            "commuting" => o.gamma(n)?,
            "commuting-glmn" => o.gamma_prime(n)?,
            other => return Err(Error::Invalid(format!("unknown count {other:?}"))),
        };
        (n, count)
    };
    let elapsed_ms = start.elapsed().as_millis();
    let text = match job.format.unwrap_or_default() {
        Format::Json => {
            let j = CountJson { count: count.to_string(), n, q, kind: kind.into(), elapsed_ms };
            serde_json::to_string_pretty(&j).unwrap() + "\n"
        }
        Format::Plain => format!("{count}\n"),
    };
    Ok((EXIT_OK, text))
}

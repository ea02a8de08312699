//! The `periodica` command line.
//!
//! Exit codes: 0 on success or a positive verdict, 1 on a negative verdict,
//! 2 on malformed input or a failed computation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use periodica_core::semifield::DEFAULT_MAX_TERMS;
use periodica_core::Permutation;

use crate::input::{parse_matrix, parse_nu, parse_sequence, NuChoice, Resolved, SeedSource, Slices};
use crate::ops::{self, canonical, Kind, MethodChoice, Tracking};
use crate::session::{SessionStore, DEFAULT_TOLERANCE, DEFAULT_TRIALS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "periodica", version, about = "Periodicities of cluster-algebra mutations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    /// Catalog entry name.
    #[arg(long, group = "seed")]
    pub catalog: Option<String>,
    /// Exchange matrix as JSON rows, e.g. `[[0,1],[-1,0]]`.
    #[arg(long, group = "seed", allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// JSON file `{"n": .., "arrows": [[from, to, multiplicity], ..]}` with 1-based vertices.
    #[arg(long, group = "seed")]
    pub quiver: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Sequence in the mini-language, e.g. `(1,2)^5` or `(1,3|2)^6`.
    #[arg(long)]
    pub sequence: Option<String>,
    /// Label of a catalog claim supplying the sequence and relabeling.
    #[arg(long, conflicts_with = "sequence")]
    pub claim: Option<String>,
    /// Relabeling: `id`, `auto`, a catalog name such as `omega`, or 1-based images.
    #[arg(long)]
    pub nu: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate the principal seed along a sequence and print the final state.
    Mutate {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        sequence: String,
        /// `off`, `exact` or `truncated:D`.
        #[arg(long, default_value = "exact", value_parser = parse_tracking)]
        tracking: Tracking,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
    /// Decide whether a sequence is a period of the seed.
    CheckPeriod {
        #[command(flatten)]
        period: PeriodArgs,
        #[arg(long, value_enum, default_value = "tropical")]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
    /// Search for short seed periods.
    FindPeriod {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long)]
        identity_only: bool,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, default_value_t = 100_000)]
        max_states: usize,
    },
    /// Generate the Y-system of a slice decomposition.
    GenYsystem {
        #[command(flatten)]
        period: PeriodArgs,
    },
    /// Generate the T-system of a slice decomposition.
    GenTsystem {
        #[command(flatten)]
        period: PeriodArgs,
        /// Include the coefficient factors.
        #[arg(long)]
        coefficients: bool,
    },
    /// Verify the dilogarithm identities of a seed period numerically.
    VerifyDilog {
        #[command(flatten)]
        period: PeriodArgs,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Built-in quivers and their periods.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: String,
        /// Session directory; defaults to `PERIODICA_DATA`.
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Tropical,
    Symbolic,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

fn parse_tracking(s: &str) -> Result<Tracking, String> {
    match s {
        "off" => Ok(Tracking::Off),
        "exact" => Ok(Tracking::Exact),
        _ => s
            .strip_prefix("truncated:")
            .and_then(|d| d.parse().ok())
            .map(Tracking::Truncated)
            .ok_or_else(|| format!("expected off, exact or truncated:D, got `{s}`")),
    }
}

impl SeedArgs {
    fn resolve(&self) -> Result<Resolved> {
        let source = match (&self.catalog, &self.matrix, &self.quiver) {
            (Some(c), _, _) => SeedSource::Catalog(c.clone()),
            (_, Some(m), _) => SeedSource::Matrix(parse_matrix(m)?),
            (_, _, Some(path)) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let q: crate::session::QuiverInput =
                    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                SeedSource::Quiver { n: q.n, arrows: q.arrows }
            }
            _ => bail!("give one of --catalog, --matrix or --quiver"),
        };
        source.resolve()
    }
}

impl PeriodArgs {
    /// Slices and relabeling choice, from `--sequence`/`--nu` or a catalog claim.
    fn resolve(&self, res: &Resolved) -> Result<(Slices, NuChoice)> {
        let n = res.matrix.n();
        let entry = res.entry.as_ref();
        if let Some(s) = &self.sequence {
            let nu = parse_nu(self.nu.as_deref().unwrap_or("id"), n, entry)?;
            return Ok((parse_sequence(s, n, entry)?, nu));
        }
        let e = entry.ok_or_else(|| anyhow!("--sequence is required without --catalog"))?;
        let c = ops::catalog_claim(e, self.claim.as_deref())?;
        let nu = parse_nu(self.nu.as_deref().unwrap_or(&c.nu), n, entry)?;
        Ok((Slices(c.slices.clone()), nu))
    }

    fn fixed(&self, res: &Resolved) -> Result<(Slices, Permutation)> {
        match self.resolve(res)? {
            (s, NuChoice::Fixed(p)) => Ok((s, p)),
            (s, NuChoice::Auto) => {
                let v = ops::check_period(res, &s.flat(), &NuChoice::Auto, MethodChoice::Tropical, DEFAULT_MAX_TERMS)?;
                let images = v.nu.ok_or_else(|| anyhow!("the sequence does not determine a relabeling"))?;
                Ok((s, Permutation::from_images(images.iter().map(|k| k - 1).collect())?))
            }
        }
    }
}

fn allow(format: Option<Format>, allowed: &[Format]) -> Result<Format> {
    let f = format.unwrap_or(Format::Json);
    if !allowed.contains(&f) {
        let name = f.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
        bail!("--format {name} is not available for this command");
    }
    Ok(f)
}

/// Run one command; returns the exit code.
fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let fmt = cli.format;
    match cli.command {
        Command::Mutate { seed, sequence, tracking, max_terms } => {
            allow(fmt, &[Format::Json])?;
            let res = seed.resolve()?;
            let seq = parse_sequence(&sequence, res.matrix.n(), res.entry.as_ref())?.flat();
            write!(out, "{}", canonical(&ops::mutate(&res, &seq, tracking, max_terms)?))?;
            Ok(0)
        }
        Command::CheckPeriod { period, method, max_terms } => {
            allow(fmt, &[Format::Json])?;
            let res = period.seed.resolve()?;
            let (slices, nu) = period.resolve(&res)?;
            let method = match method {
                MethodArg::Tropical => MethodChoice::Tropical,
                MethodArg::Symbolic => MethodChoice::Symbolic,
            };
            let v = ops::check_period(&res, &slices.flat(), &nu, method, max_terms)?;
            write!(out, "{}", canonical(&v))?;
            Ok(if v.seed_periodic == Some(true) { 0 } else { 1 })
        }
        Command::FindPeriod { seed, max_len, identity_only, limit, max_states } => {
            allow(fmt, &[Format::Json])?;
            let res = seed.resolve()?;
            let found = ops::find_periods(&res, max_len, identity_only, limit, max_states)?;
            write!(out, "{}", canonical(&found))?;
            Ok(if found.is_empty() { 1 } else { 0 })
        }
        Command::GenYsystem { period } => system(&period, Kind::Y, false, fmt, out),
        Command::GenTsystem { period, coefficients } => system(&period, Kind::T, coefficients, fmt, out),
        Command::VerifyDilog { period, trials, rng_seed, tolerance } => {
            allow(fmt, &[Format::Json])?;
            let res = period.seed.resolve()?;
            let (slices, nu) = period.fixed(&res)?;
            let d = ops::verify_dilog(&res, &slices, &nu, trials, rng_seed, tolerance)?;
            write!(out, "{}", canonical(&d))?;
            Ok(if d.passed { 0 } else { 1 })
        }
        Command::Catalog { action: CatalogAction::List } => {
            allow(fmt, &[Format::Json])?;
            write!(out, "{}", canonical(&ops::catalog_list()))?;
            Ok(0)
        }
        Command::Catalog { action: CatalogAction::Show { name } } => {
            match allow(fmt, &[Format::Json, Format::Dot])? {
                Format::Dot => write!(out, "{}", ops::catalog_dot(&name)?)?,
                _ => write!(out, "{}", canonical(&ops::catalog_show(&name)?))?,
            }
            Ok(0)
        }
        Command::Serve { bind, data } => {
            let store = match data {
                Some(d) => SessionStore::open(d)?,
                None => SessionStore::from_env()?,
            };
            tokio::runtime::Runtime::new()?.block_on(crate::server::serve(&bind, store))?;
            Ok(0)
        }
    }
}

fn system(period: &PeriodArgs, kind: Kind, coefficients: bool, fmt: Option<Format>, out: &mut dyn Write) -> Result<i32> {
    let f = allow(fmt, &[Format::Json, Format::Latex])?;
    let res = period.seed.resolve()?;
    let (slices, nu) = period.fixed(&res)?;
    let sys = ops::ty_system(&res, &slices, &nu, kind, coefficients)?;
    match f {
        Format::Latex => write!(out, "{}", ops::ty_latex(&sys))?,
        _ => write!(out, "{}", canonical(&sys))?,
    }
    Ok(0)
}

/// Parse `args` (including the program name) and run, writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

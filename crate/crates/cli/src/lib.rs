//! Command-line frontend for `pinsurf-core`.
//!
//! [`run`] does all the work and returns the exit code together with the
//! text destined for stdout and stderr, so tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 a genuine verification failure, 2 a parse error
//! or illegal value, 3 a size limit.

pub mod record;
mod render;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pinsurf_core::census::{
    pin_census_closed_form, pin_census_enumerated, pin_census_recursive, spin_census_of, Census,
    Provenance, CENSUS_LIMIT,
};
use pinsurf_core::enhancement::enumerate_enhancements;
use pinsurf_core::orbits::orbit_partition_by;
use pinsurf_core::refinement::{enumerate_refinements, spin_census_closed_form};
use pinsurf_core::{
    verify, Enhancement, Error, GroupLimits, GroupMethod, OrbitPartition, Refinement, Surface,
    SurfaceKind,
};

pub use record::{CensusRow, OrbitRow, OutputRecord, Payload, Verdict};

#[derive(Debug, Parser)]
#[command(name = "pinsurf", version, about = "Spin and pin structures on closed surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Args)]
pub struct Limits {
    /// Largest dimension for enumerating homology classes.
    #[arg(long, global = true, default_value_t = 20)]
    pub max_dim: usize,

    /// Largest dimension for enumerating every structure in a census.
    #[arg(long, global = true, default_value_t = CENSUS_LIMIT)]
    pub max_census_dim: usize,

    /// Largest dimension for brute-forcing the isometry group.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_brute_dim: usize,

    /// Largest dimension for generated isometry groups.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_generated_dim: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count structures by invariant value.
    Census {
        #[arg(short, long)]
        surface: SurfaceKind,
        #[arg(short, long, value_enum)]
        theory: TheoryArg,
        /// Add closed-form and recursion columns.
        #[arg(long)]
        compare: bool,
    },
    /// Evaluate the invariant of one structure.
    Invariant {
        #[arg(short, long)]
        surface: SurfaceKind,
        /// Spin refinement values on the basis.
        #[arg(short = 'q', value_delimiter = ',', required_unless_present = "enhancement", conflicts_with = "enhancement")]
        refinement: Option<Vec<u8>>,
        /// Pin- enhancement values on the basis.
        #[arg(short = 'e', value_delimiter = ',')]
        enhancement: Option<Vec<u8>>,
    },
    /// Partition structures into isometry orbits.
    Orbits {
        #[arg(short, long)]
        surface: SurfaceKind,
        #[arg(short, long, value_enum)]
        theory: TheoryArg,
        /// Defaults to brute when the dimension allows it.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Run a named property suite, or `all`.
    Verify { suite: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    Spin,
    #[value(name = "pin-")]
    PinMinus,
}

impl TheoryArg {
    fn name(self) -> &'static str {
        match self {
            TheoryArg::Spin => "spin",
            TheoryArg::PinMinus => "pin-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Generated,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn size(dim: usize, limit: usize) -> Self {
        Self {
            code: 3,
            message: Error::SizeLimit { dim, limit }.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::SizeLimit { .. } | Error::GroupTooLarge { .. } => 3,
            Error::CensusMismatch { .. } => 1,
            _ => 2,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            let code = err.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match execute(&cli, echo) {
        Ok((code, record)) => {
            let text = match cli.format {
                Format::Table => render::table(&record),
                Format::Csv => render::csv(&record),
                Format::Json => render::json(&record),
            };
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(err) => Outcome {
                        code: 2,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {err}\n", path.display()),
                    },
                },
                None => Outcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(failure) => Outcome {
            code: failure.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", failure.message),
        },
    }
}

/// Parses JSON output back into a record.
pub fn parse_record(json: &str) -> serde_json::Result<OutputRecord> {
    serde_json::from_str(json)
}

fn execute(cli: &Cli, echo: String) -> Result<(i32, OutputRecord), Failure> {
    let limits = &cli.limits;
    match &cli.command {
        Command::Census {
            surface,
            theory,
            compare,
        } => census(*surface, *theory, *compare, limits).map(|(payload, flags)| {
            (0, OutputRecord { command: echo, surface: Some(*surface), payload, flags })
        }),
        Command::Invariant {
            surface,
            refinement,
            enhancement,
        } => invariant(*surface, refinement.as_deref(), enhancement.as_deref(), limits).map(
            |payload| (0, OutputRecord { command: echo, surface: Some(*surface), payload, flags: Vec::new() }),
        ),
        Command::Orbits {
            surface,
            theory,
            method,
        } => orbits(*surface, *theory, *method, limits).map(|payload| {
            let code = match &payload {
                Payload::Orbits { verdict: Verdict::Fail, .. } => 1,
                _ => 0,
            };
            (code, OutputRecord { command: echo, surface: Some(*surface), payload, flags: Vec::new() })
        }),
        Command::Verify { suite } => {
            let report = verify::run(suite).ok_or_else(|| {
                let names: Vec<&str> = verify::suite_names().collect();
                Failure::usage(format!("unknown suite '{suite}' (expected all or one of: {})", names.join(", ")))
            })?;
            let code = if report.passed() { 0 } else { 1 };
            let disputes = report.disputes();
            let mut flags = Vec::new();
            if !disputes.is_empty() {
                flags.push("DISPUTED".to_string());
            }
            flags.extend(disputes.iter().map(|d| format!("dispute: {d}")));
            let payload = Payload::Verify { report };
            Ok((code, OutputRecord { command: echo, surface: None, payload, flags }))
        }
    }
}

fn census(
    kind: SurfaceKind,
    theory: TheoryArg,
    compare: bool,
    limits: &Limits,
) -> Result<(Payload, Vec<String>), Failure> {
    if kind.dim() > limits.max_census_dim {
        return Err(Failure::size(kind.dim(), limits.max_census_dim));
    }
    let surface = Surface::new(kind)?;
    let mut flags = Vec::new();
    let (modulus, rows) = match theory {
        TheoryArg::Spin => {
            let enumerated = spin_census_of(&surface)?;
            let rows = if compare {
                let SurfaceKind::Orientable(g) = kind else {
                    return Err(Error::NotOrientable.into());
                };
                // Genus 0 carries one structure and has no printed formula.
                let closed = if g == 0 { None } else { Some(spin_census_closed_form(g)?) };
                (0..2)
                    .map(|value| {
                        let count = enumerated.get(value);
                        let printed = closed.as_ref().map(|c| c.get(value));
                        CensusRow {
                            value,
                            count,
                            printed,
                            corrected: None,
                            recursion: None,
                            status: printed.map(|p| status(p == count)),
                        }
                    })
                    .collect()
            } else {
                plain_rows(&enumerated)
            };
            (2, rows)
        }
        TheoryArg::PinMinus => {
            let rows = if compare {
                let closed = pin_census_closed_form(&surface)?;
                let recursion = match kind {
                    SurfaceKind::Nonorientable(k) => Some(pin_census_recursive(k)?),
                    SurfaceKind::Orientable(_) => None,
                };
                if closed.is_disputed() {
                    flags.push("DISPUTED".to_string());
                }
                flags.extend(closed.disputes.iter().map(|d| format!("dispute: {d}")));
                closed
                    .entries
                    .iter()
                    .map(|e| CensusRow {
                        value: e.value,
                        count: e.enumerated,
                        printed: Some(e.printed),
                        corrected: e.corrected.map(|(c, _)| c),
                        recursion: recursion.as_ref().map(|r| r.get(e.value)),
                        status: Some(e.status),
                    })
                    .collect()
            } else {
                plain_rows(&pin_census_enumerated(&surface)?)
            };
            (8, rows)
        }
    };
    Ok((
        Payload::Census {
            theory: theory.name().to_string(),
            modulus,
            rows,
        },
        flags,
    ))
}

fn status(agrees: bool) -> Provenance {
    if agrees {
        Provenance::Confirmed
    } else {
        Provenance::Disputed
    }
}

fn plain_rows(census: &Census) -> Vec<CensusRow> {
    census
        .iter()
        .map(|(value, count)| CensusRow {
            value,
            count,
            printed: None,
            corrected: None,
            recursion: None,
            status: None,
        })
        .collect()
}

fn invariant(
    kind: SurfaceKind,
    refinement: Option<&[u8]>,
    enhancement: Option<&[u8]>,
    limits: &Limits,
) -> Result<Payload, Failure> {
    if kind.dim() > limits.max_dim {
        return Err(Failure::size(kind.dim(), limits.max_dim));
    }
    let surface = Surface::new(kind)?;
    let form = Arc::clone(surface.form());
    match (refinement, enhancement) {
        (Some(values), None) => {
            if !kind.is_orientable() {
                return Err(Error::NotOrientable.into());
            }
            let q = Refinement::new(form, values)?;
            Ok(Payload::Invariant {
                theory: TheoryArg::Spin.name().to_string(),
                name: "arf".to_string(),
                value: q.arf_majority()?,
                values: q.values(),
                histogram: None,
            })
        }
        (None, Some(values)) => {
            let e = Enhancement::new(form, values)?;
            let histogram = e.histogram()?;
            Ok(Payload::Invariant {
                theory: TheoryArg::PinMinus.name().to_string(),
                name: "beta".to_string(),
                value: e.brown_gauss()?.value(),
                values: e.values(),
                histogram: Some(histogram.counts),
            })
        }
        _ => Err(Failure::usage("exactly one of -q and -e is required")),
    }
}

fn orbits(
    kind: SurfaceKind,
    theory: TheoryArg,
    method: Option<MethodArg>,
    limits: &Limits,
) -> Result<Payload, Failure> {
    let group_limits = GroupLimits {
        brute_dim: limits.max_brute_dim,
        generated_dim: limits.max_generated_dim,
        ..GroupLimits::default()
    };
    let method = match method {
        Some(MethodArg::Brute) => GroupMethod::Brute,
        Some(MethodArg::Generated) => GroupMethod::Generated,
        None if kind.dim() <= limits.max_brute_dim => GroupMethod::Brute,
        None => GroupMethod::Generated,
    };
    let cap = match method {
        GroupMethod::Brute => limits.max_brute_dim,
        GroupMethod::Generated => limits.max_generated_dim,
    };
    if kind.dim() > cap {
        return Err(Failure::size(kind.dim(), cap));
    }
    let surface = Surface::new(kind)?;
    let form = surface.form();
    let (orbits, verdict) = match theory {
        TheoryArg::Spin => {
            if !kind.is_orientable() {
                return Err(Error::NotOrientable.into());
            }
            let structures = enumerate_refinements(form)?;
            let labels = structures
                .iter()
                .map(Refinement::arf_majority)
                .collect::<pinsurf_core::Result<Vec<u8>>>()?;
            let keys: Vec<u64> = structures.iter().map(Refinement::bits).collect();
            let partition = orbit_partition_by(form, method, &group_limits, &structures)?;
            summarize(&partition, &labels, &keys)
        }
        TheoryArg::PinMinus => {
            let structures = enumerate_enhancements(form)?;
            let labels = structures
                .iter()
                .map(|e| e.brown_gauss().map(|b| b.value()))
                .collect::<pinsurf_core::Result<Vec<u8>>>()?;
            let keys: Vec<u64> = structures.iter().map(Enhancement::choice).collect();
            let partition = orbit_partition_by(form, method, &group_limits, &structures)?;
            summarize(&partition, &labels, &keys)
        }
    };
    Ok(Payload::Orbits {
        theory: theory.name().to_string(),
        method: match method {
            GroupMethod::Brute => "brute",
            GroupMethod::Generated => "generated",
        }
        .to_string(),
        orbits,
        verdict,
    })
}

fn summarize(partition: &OrbitPartition, labels: &[u8], keys: &[u64]) -> (Vec<OrbitRow>, Verdict) {
    let rows = partition
        .orbits
        .iter()
        .map(|orbit| OrbitRow {
            size: orbit.len(),
            invariant: labels[orbit[0]],
            members: orbit.iter().map(|&i| keys[i]).collect(),
        })
        .collect();
    let level_sets = OrbitPartition::level_sets(labels);
    let verdict = if !partition.refines(&level_sets) {
        Verdict::Fail
    } else if partition.len() == level_sets.len() {
        Verdict::Pass
    } else {
        Verdict::Deficient
    };
    (rows, verdict)
}

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};

use devissage_core::corpus::DEFAULT_PROBES;
use devissage_core::cover::{equivalence_report, CoverError};
use devissage_core::devissage::{
    assemble_curve, assemble_direct, assemble_recursive, discreteness, free_rank, validate_config, AssemblyResult,
    Configuration, DevissageError, Verdict,
};
use devissage_core::group::{fingerprint, PermGroupTarget};

use crate::error::CliError;
use crate::report::{
    AssemblyReport, ConfigSummary, DiscretenessReport, EquivalenceRowDoc, EquivalenceTable, FastPathReport, RunReport,
};
use crate::schema::parse_config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Direct,
    Recursive,
    Both,
}

/// Assemble a presentation of the fundamental group of a glued
/// configuration and optionally check it against enumerated covers.
#[derive(Clone, Debug, Parser)]
#[command(name = "devissage", version)]
pub struct Flags {
    /// Configuration file (JSON).
    pub config: PathBuf,
    /// Largest cover degree compared by --verify.
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// Compare connected covers with transitive actions degree by degree.
    #[arg(long)]
    pub verify: bool,
    /// Assembly method; defaults to both when there are two or more
    /// singular nodes, direct otherwise.
    #[arg(long, value_enum)]
    pub method: Option<MethodChoice>,
    /// Comma-separated probe groups (Z/n, S_n, D_n).
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PROBES.map(String::from))]
    pub probes: Vec<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// JSON object mapping node ids to "discrete", "not-discrete" or "unknown".
    #[arg(long)]
    pub discreteness: Option<PathBuf>,
    /// Include wall-clock time per phase in the report.
    #[arg(long)]
    pub timings: bool,
}

impl Flags {
    /// Flags with every option at its default.
    pub fn for_config(path: impl Into<PathBuf>) -> Self {
        Flags::parse_from([Path::new("devissage"), path.into().as_path()])
    }
}

fn semantic(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn devissage_error(e: DevissageError) -> CliError {
    semantic(e)
}

fn cover_error(e: CoverError) -> CliError {
    semantic(e)
}

fn read_verdicts(path: &Path) -> Result<BTreeMap<String, Verdict>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let raw: BTreeMap<String, String> =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    raw.into_iter()
        .map(|(id, v)| {
            let verdict = v
                .parse()
                .map_err(|_| CliError::Parse(format!("{}: unknown verdict `{v}` for `{id}`", path.display())))?;
            Ok((id, verdict))
        })
        .collect()
}

struct Clock {
    enabled: bool,
    phases: BTreeMap<String, f64>,
}

impl Clock {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            *self.phases.entry(phase.to_string()).or_default() += start.elapsed().as_secs_f64() * 1e3;
        }
        out
    }
}

/// Parses the configuration named in `flags` and runs the pipeline.
pub fn run_file(flags: &Flags) -> Result<RunReport, CliError> {
    let c = parse_config(&flags.config)?;
    run(&c, flags)
}

/// Validates, assembles with the requested methods, fingerprints each
/// result, and optionally verifies against covers and folds discreteness
/// verdicts. Disagreements are recorded in the report, not returned as
/// errors; see [`RunReport::pass`].
pub fn run(c: &Configuration, flags: &Flags) -> Result<RunReport, CliError> {
    let mut clock = Clock {
        enabled: flags.timings,
        phases: BTreeMap::new(),
    };
    let probes = flags
        .probes
        .iter()
        .map(|p| PermGroupTarget::parse(p).map_err(|e| CliError::Parse(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let verdicts = flags.discreteness.as_deref().map(read_verdicts).transpose()?;

    clock
        .time("validate", || validate_config(c))
        .map_err(|issues| devissage_error(DevissageError::Invalid(issues)))?;
    let rank = free_rank(c).map_err(devissage_error)?;

    let method = flags.method.unwrap_or(if c.singulars.len() >= 2 {
        MethodChoice::Both
    } else {
        MethodChoice::Direct
    });
    let mut results: Vec<AssemblyResult> = Vec::new();
    if matches!(method, MethodChoice::Direct | MethodChoice::Both) {
        results.push(clock.time("assemble-direct", || assemble_direct(c)).map_err(devissage_error)?);
    }
    if matches!(method, MethodChoice::Recursive | MethodChoice::Both) {
        results.push(clock.time("assemble-recursive", || assemble_recursive(c)).map_err(devissage_error)?);
    }

    let fast_path = if c.is_all_trivial() {
        let curve = clock.time("assemble-curve", || assemble_curve(c)).map_err(devissage_error)?;
        Some(FastPathReport {
            method: curve.method.name().to_string(),
            rank: curve.presentation.rank(),
        })
    } else {
        None
    };

    let mut assemblies = Vec::with_capacity(results.len());
    for r in &results {
        let fp = clock
            .time("fingerprint", || fingerprint(&r.presentation, &probes))
            .map_err(semantic)?;
        assemblies.push(AssemblyReport::new(r, &fp));
    }

    let equivalence = if flags.verify {
        Some(clock.time("verify", || equivalence_table(c, &results, flags.max_degree))?)
    } else {
        None
    };

    let mut discreteness_reports = BTreeMap::new();
    if let Some(supplied) = &verdicts {
        for r in &results {
            let v = clock
                .time("discreteness", || discreteness(c, r, supplied))
                .map_err(devissage_error)?;
            discreteness_reports.insert(r.method.name().to_string(), DiscretenessReport::from(&v));
        }
    }

    Ok(RunReport {
        config: ConfigSummary {
            components: c.components.iter().map(|n| n.id.clone()).collect(),
            singulars: c.singulars.iter().map(|n| n.id.clone()).collect(),
            edges: c.edges.iter().map(|e| e.id.clone()).collect(),
            all_trivial: c.is_all_trivial(),
        },
        rank,
        assemblies,
        fast_path,
        equivalence,
        discreteness: discreteness_reports,
        timings: flags.timings.then_some(clock.phases),
    })
}

fn equivalence_table(c: &Configuration, results: &[AssemblyResult], d_max: usize) -> Result<EquivalenceTable, CliError> {
    let mut rows: Vec<EquivalenceRowDoc> = Vec::with_capacity(d_max);
    for r in results {
        let report = equivalence_report(c, r, d_max).map_err(cover_error)?;
        for (i, row) in report.rows.iter().enumerate() {
            if rows.len() <= i {
                rows.push(EquivalenceRowDoc {
                    degree: row.degree,
                    covers: row.covers,
                    transitive_reps: BTreeMap::new(),
                    pass: true,
                });
            }
            let doc = &mut rows[i];
            doc.transitive_reps
                .insert(r.method.name().to_string(), row.transitive_reps);
            doc.pass &= row.pass();
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(EquivalenceTable {
        max_degree: d_max,
        rows,
        pass,
    })
}

/// [`CliError::Mismatch`] when a requested check failed.
pub fn check(report: &RunReport) -> Result<(), CliError> {
    if !report.fingerprints_agree() {
        return Err(CliError::Mismatch("assembly methods give different fingerprints".into()));
    }
    if let Some(table) = &report.equivalence {
        if let Some(row) = table.rows.iter().find(|r| !r.pass) {
            return Err(CliError::Mismatch(format!(
                "degree {}: {} covers but transitive actions {:?}",
                row.degree, row.covers, row.transitive_reps
            )));
        }
    }
    Ok(())
}

//! Command implementations behind the `otlab` binary.
//!
//! Each command returns the text to print on stdout, or a [`CliError`]
//! carrying the process exit code: 1 for a failed verification, 2 for
//! usage and parse errors, 3 for domain errors.

use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::json;

use crate::error::Error;
use crate::json::{measure_from_json, measure_to_json, FormatError, PlanFile};
use crate::measure::FinitePointMeasure;
use crate::metrics::Metric;
use crate::sampling::{master_rng, random_measure};
use crate::space::{SpaceDescriptor, SpaceKind};
use crate::transport::{optimal_plan, wasserstein};
use crate::verify::run_suite;

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    /// Text for stdout, if any (the report of a failed verification).
    pub output: Option<String>,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
            output: None,
        }
    }

    /// `{"error": kind, "message": ...}` for stderr.
    pub fn to_json(&self) -> String {
        json!({ "error": self.kind, "message": self.message }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NegativeWeight { .. } => "negative_weight",
        Error::SumOutOfTolerance { .. } => "sum_out_of_tolerance",
        Error::PointNotInSpace { .. } => "point_not_in_space",
        Error::ImageNotInSpace { .. } => "image_not_in_space",
        Error::DiscreteSpaceUnsupported => "discrete_space_unsupported",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::InvalidP(_) => "invalid_p",
        Error::InfeasibleWeights { .. } => "infeasible_weights",
        Error::IterationLimit(_) => "iteration_limit",
        Error::TooLarge { .. } => "too_large",
        Error::WrongSpace { .. } => "wrong_space",
        Error::SpaceMismatch { .. } => "space_mismatch",
        Error::SupportTooLarge { .. } => "support_too_large",
        Error::NotBijective(_) => "not_bijective",
        Error::ImageNotDirac { .. } => "image_not_dirac",
        Error::DegenerateSample(_) => "degenerate_sample",
        Error::InvalidSpace(_) => "invalid_space",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NegativeWeight { .. }
            | Error::SumOutOfTolerance { .. }
            | Error::PointNotInSpace { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidP(_)
            | Error::InvalidSpace(_)
            | Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        CliError {
            code,
            kind: error_kind(&e),
            message: e.to_string(),
            output: None,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(inner) => inner.into(),
            other => CliError {
                code: EXIT_USAGE,
                kind: "parse",
                message: other.to_string(),
                output: None,
            },
        }
    }
}

pub fn read_measure(path: &Path) -> Result<FinitePointMeasure, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    measure_from_json(&text).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn same_space(a: &FinitePointMeasure, b: &FinitePointMeasure) -> Result<(), CliError> {
    if a.space() == b.space() {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            left: a.space().to_string(),
            right: b.space().to_string(),
        }
        .into())
    }
}

/// `dist`: prints `{"metric": m, "p": p, "value": v}`; `p` only for `wp`.
pub fn cmd_dist(metric: &str, p: f64, file_a: &Path, file_b: &Path) -> Result<String, CliError> {
    let metric = Metric::from_name(metric, p)?;
    let (a, b) = (read_measure(file_a)?, read_measure(file_b)?);
    same_space(&a, &b)?;
    if !metric.supports(a.space().kind) {
        return Err(Error::WrongSpace {
            expected: "real line".into(),
            actual: a.space().to_string(),
        }
        .into());
    }
    let value = metric.distance(&a, &b)?;
    let out = match metric {
        Metric::Wasserstein { p } => json!({ "metric": "wp", "p": p, "value": value }),
        m => json!({ "metric": m.short_name(), "value": value }),
    };
    Ok(out.to_string())
}

/// `transport`: prints the plan JSON and writes it to `emit` if given.
pub fn cmd_transport(file_a: &Path, file_b: &Path, p: f64, emit: Option<&Path>) -> Result<String, CliError> {
    let (a, b) = (read_measure(file_a)?, read_measure(file_b)?);
    same_space(&a, &b)?;
    let result = optimal_plan(a.space(), &a, &b, p)?;
    let mut plan = PlanFile::from_result(&result, p);
    plan.wp = wasserstein(a.space(), &a, &b, p)?;
    let text = serde_json::to_string_pretty(&plan).expect("plan serialises");
    if let Some(path) = emit {
        write_file(path, &text)?;
    }
    Ok(text)
}

/// Parses a space name and dimension; `dim` defaults to 1 on the line.
pub fn parse_space(kind: &str, dim: Option<usize>) -> Result<SpaceDescriptor, CliError> {
    let kind = match kind {
        "line" => SpaceKind::Line,
        "euclidean" => SpaceKind::Euclidean,
        "sphere" => SpaceKind::Sphere,
        "discrete" => SpaceKind::Discrete,
        other => return Err(CliError::usage(format!("unknown space {other:?}"))),
    };
    let dim = match (kind, dim) {
        (_, Some(d)) => d,
        (SpaceKind::Line, None) => 1,
        _ => return Err(CliError::usage("--dim is required for this space")),
    };
    Ok(SpaceDescriptor { kind, dim }.validated()?)
}

/// `gen`: a seeded random measure with exactly `atoms` atoms. The output
/// depends only on the arguments.
pub fn cmd_gen(
    space: &str,
    dim: Option<usize>,
    atoms: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let space = parse_space(space, dim)?;
    let m = random_measure(&space, atoms, &mut master_rng(seed))?;
    let text = measure_to_json(&m);
    if let Some(path) = out {
        write_file(path, &text)?;
    }
    Ok(text)
}

/// `verify`: runs one suite. A failing suite returns exit code 1 with the
/// report as output.
pub fn cmd_verify(suite: &str, seed: u64, trials: usize) -> Result<String, CliError> {
    let report = run_suite(suite, seed, trials)?;
    let text = report.to_json();
    if report.pass {
        Ok(text)
    } else {
        Err(CliError {
            code: EXIT_FAIL,
            kind: "verification_failed",
            message: format!("suite {suite} failed"),
            output: Some(text),
        })
    }
}

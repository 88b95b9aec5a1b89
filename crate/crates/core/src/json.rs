//! JSON file formats: measures, transport plans.
//!
//! Measure: `{"space": {"kind": "line"|"euclidean"|"sphere"|"discrete",
//! "dim": n}, "atoms": [[...], ...] or [int, ...], "weights": [...]}`.
//! On the line a bare number is accepted as an atom; `dim` may be omitted
//! for the line.

use ndarray::Array2;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::error::Error;
use crate::measure::{Coupling, FinitePointMeasure};
use crate::space::{Point, SpaceDescriptor, SpaceKind};
use crate::transport::TransportResult;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid atom {atom}: {reason}")]
    Atom { atom: String, reason: String },
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub kind: SpaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MeasureFile {
    space: SpaceFile,
    atoms: Vec<Value>,
    weights: Vec<f64>,
}

#[derive(Serialize)]
struct MeasureOut<'a> {
    space: SpaceFile,
    atoms: &'a [Point],
    weights: &'a [f64],
}

fn parse_space(s: &SpaceFile) -> Result<SpaceDescriptor, Error> {
    let dim = match (s.kind, s.dim) {
        (SpaceKind::Line, None) => 1,
        (_, Some(d)) => d,
        (kind, None) => return Err(Error::InvalidSpace(format!("{kind:?} space needs a dim"))),
    };
    SpaceDescriptor { kind: s.kind, dim }.validated()
}

fn parse_atom(space: &SpaceDescriptor, v: &Value) -> Result<Point, FormatError> {
    let bad = |reason: &str| FormatError::Atom {
        atom: v.to_string(),
        reason: reason.into(),
    };
    match (space.kind, v) {
        (SpaceKind::Discrete, Value::Number(n)) => n
            .as_u64()
            .map(|l| Point::Label(l as usize))
            .ok_or_else(|| bad("labels are nonnegative integers")),
        (SpaceKind::Discrete, _) => Err(bad("labels are nonnegative integers")),
        (SpaceKind::Line, Value::Number(n)) => n.as_f64().map(Point::scalar).ok_or_else(|| bad("not a number")),
        (_, Value::Array(items)) => items
            .iter()
            .map(|x| x.as_f64().ok_or_else(|| bad("coordinates must be numbers")))
            .collect::<Result<Vec<_>, _>>()
            .map(Point::Coords),
        _ => Err(bad("expected a coordinate array")),
    }
}

/// Parses and canonicalises a measure.
pub fn measure_from_json(text: &str) -> Result<FinitePointMeasure, FormatError> {
    let file: MeasureFile = serde_json::from_str(text)?;
    let space = parse_space(&file.space)?;
    let atoms = file
        .atoms
        .iter()
        .map(|a| parse_atom(&space, a))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FinitePointMeasure::new(space, atoms, file.weights)?)
}

/// Pretty-printed measure JSON; floats use shortest round-trip formatting.
pub fn measure_to_json(m: &FinitePointMeasure) -> String {
    let out = MeasureOut {
        space: SpaceFile {
            kind: m.space().kind,
            dim: Some(m.space().dim),
        },
        atoms: m.atoms(),
        weights: m.weights(),
    };
    serde_json::to_string_pretty(&out).expect("measure serialises")
}

/// Transport plan output: optimal cost `W_p^p`, `W_p`, the plan and the
/// dual potentials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanFile {
    pub cost: f64,
    pub wp: f64,
    pub p: f64,
    pub plan: Vec<Vec<f64>>,
    pub dual_u: Vec<f64>,
    pub dual_v: Vec<f64>,
}

impl PlanFile {
    pub fn from_result(result: &TransportResult, p: f64) -> Self {
        PlanFile {
            cost: result.cost,
            wp: result.cost.max(0.0).powf(1.0 / p),
            p,
            plan: result.plan.mass().rows().into_iter().map(|r| r.to_vec()).collect(),
            dual_u: result.dual_u.clone(),
            dual_v: result.dual_v.clone(),
        }
    }

    /// Re-validates the stored plan against the given marginals.
    pub fn to_coupling(&self, source: &[f64], target: &[f64]) -> Result<Coupling, Error> {
        let rows = self.plan.len();
        let cols = self.plan.first().map_or(0, Vec::len);
        if self.plan.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: "rectangular plan".into(),
                actual: "ragged rows".into(),
            });
        }
        let mass = Array2::from_shape_fn((rows, cols), |(i, j)| self.plan[i][j]);
        Coupling::new(mass, source.to_vec(), target.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_space_kind() {
        let m =
            measure_from_json(r#"{"space": {"kind": "line"}, "atoms": [0.0, [1.0]], "weights": [0.5, 0.5]}"#).unwrap();
        assert_eq!(m.atoms(), &[Point::scalar(0.0), Point::scalar(1.0)]);
        let m =
            measure_from_json(r#"{"space": {"kind": "discrete", "dim": 8}, "atoms": [3, 1], "weights": [0.25, 0.75]}"#)
                .unwrap();
        assert_eq!(m.atoms(), &[Point::Label(1), Point::Label(3)]);
        let m = measure_from_json(r#"{"space": {"kind": "sphere", "dim": 2}, "atoms": [[0.5, 0.0]], "weights": [1]}"#)
            .unwrap();
        assert!(m.is_dirac());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(measure_from_json("{"), Err(FormatError::Syntax(_))));
        assert!(matches!(
            measure_from_json(r#"{"space": {"kind": "discrete", "dim": 3}, "atoms": [0.5], "weights": [1]}"#),
            Err(FormatError::Atom { .. })
        ));
        assert!(matches!(
            measure_from_json(r#"{"space": {"kind": "line"}, "atoms": [0, 1], "weights": [0.5, 0.4]}"#),
            Err(FormatError::Invalid(Error::SumOutOfTolerance { .. }))
        ));
        assert!(matches!(
            measure_from_json(r#"{"space": {"kind": "euclidean"}, "atoms": [[0, 1]], "weights": [1]}"#),
            Err(FormatError::Invalid(Error::InvalidSpace(_)))
        ));
    }

    #[test]
    fn output_reparses_to_the_same_measure() {
        let m = measure_from_json(
            r#"{"space": {"kind": "euclidean", "dim": 2}, "atoms": [[0.1, 0.2], [-3, 4e-3]], "weights": [0.3, 0.7]}"#,
        )
        .unwrap();
        assert_eq!(measure_from_json(&measure_to_json(&m)).unwrap(), m);
    }
}

//! `U(S) = {y : ρ(y, s) = 1 for all s ∈ S}` inside a finite universe of
//! measures. The Dirac characterisation `U(U({μ})) = {μ}` holds over all of
//! `P(ℝ)`; inside a finite universe it is only a proxy.

use ndarray::Array2;

use crate::error::Result;
use crate::measure::FinitePointMeasure;
use crate::metrics::Metric;

/// `ρ(y, s)` counts as 1 within this tolerance.
pub const BIDUAL_TOL: f64 = 1e-9;

/// Members of `universe` at distance 1 from every member of `subset`
/// (indices into `universe`). An empty `subset` selects everything.
pub fn bidual_set(universe: &[FinitePointMeasure], metric: Metric, subset: &[usize]) -> Result<Vec<usize>> {
    Ok(FiniteUniverse::new(universe.to_vec(), metric)?.unit_set(subset))
}

/// A finite universe with its distance table precomputed.
#[derive(Debug, Clone)]
pub struct FiniteUniverse {
    measures: Vec<FinitePointMeasure>,
    metric: Metric,
    dist: Array2<f64>,
}

impl FiniteUniverse {
    pub fn new(measures: Vec<FinitePointMeasure>, metric: Metric) -> Result<Self> {
        let n = measures.len();
        let mut dist = Array2::zeros((n, n));
        for i in 0..n {
            for j in i + 1..n {
                let d = metric.distance(&measures[i], &measures[j])?;
                dist[[i, j]] = d;
                dist[[j, i]] = d;
            }
        }
        Ok(FiniteUniverse { measures, metric, dist })
    }

    pub fn measures(&self) -> &[FinitePointMeasure] {
        &self.measures
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[[i, j]]
    }

    /// `U(subset)`.
    pub fn unit_set(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.measures.len())
            .filter(|&y| subset.iter().all(|&s| (self.dist[[y, s]] - 1.0).abs() <= BIDUAL_TOL))
            .collect()
    }

    /// `U(U({index}))`.
    pub fn bidual_of(&self, index: usize) -> Vec<usize> {
        self.unit_set(&self.unit_set(&[index]))
    }

    /// Whether `U(U({index})) = {index}`.
    pub fn is_fixed_point(&self, index: usize) -> bool {
        self.bidual_of(index) == [index]
    }
}

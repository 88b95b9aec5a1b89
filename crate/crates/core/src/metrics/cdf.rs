use crate::error::Result;
use crate::measure::FinitePointMeasure;

/// Right-continuous step distribution function `F(t) = μ((−∞, t])` of a
/// measure on the line.
#[derive(Debug, Clone, PartialEq)]
pub struct StepCdf {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepCdf {
    /// Strictly increasing atom positions.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `values[k] = F(breakpoints[k])`; the last value is exactly 1.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `F(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        let k = self.breakpoints.partition_point(|&b| b <= t);
        if k == 0 {
            0.0
        } else {
            self.values[k - 1]
        }
    }

    /// The left limit `F(t−) = μ((−∞, t))`.
    pub fn eval_left(&self, t: f64) -> f64 {
        let k = self.breakpoints.partition_point(|&b| b < t);
        if k == 0 {
            0.0
        } else {
            self.values[k - 1]
        }
    }
}

/// Distribution function of a measure on the line.
pub fn cdf_of(m: &FinitePointMeasure) -> Result<StepCdf> {
    let breakpoints = m.real_atoms()?;
    let mut acc = 0.0;
    let mut values: Vec<f64> = m
        .weights()
        .iter()
        .map(|w| {
            acc += w;
            acc
        })
        .collect();
    if let Some(last) = values.last_mut() {
        *last = 1.0;
    }
    Ok(StepCdf { breakpoints, values })
}

/// Sorted union of the atoms of two line measures.
pub(crate) fn merged_breakpoints(f: &StepCdf, g: &StepCdf) -> Vec<f64> {
    let mut z: Vec<f64> = f.breakpoints.iter().chain(&g.breakpoints).copied().collect();
    z.sort_by(f64::total_cmp);
    z.dedup();
    z
}

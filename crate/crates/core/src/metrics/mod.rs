//! Total variation, Kolmogorov–Smirnov, Kuiper, Lévy, Lévy–Prokhorov and
//! the distribution-function form of `W_1`, evaluated exactly over finite
//! critical sets.

mod cdf;
mod prokhorov;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use cdf::{cdf_of, StepCdf};
pub use prokhorov::{levy_prokhorov_distance, LP_MAX_SUPPORT};

use crate::error::{Error, Result};
use crate::measure::FinitePointMeasure;
use crate::space::SpaceKind;
use crate::transport::wasserstein;
use cdf::merged_breakpoints;

/// Absolute accuracy of the Lévy bisection.
pub const LEVY_TOL: f64 = 1e-10;

fn line_cdfs(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Result<(StepCdf, StepCdf)> {
    Ok((cdf_of(mu)?, cdf_of(nu)?))
}

/// `sup_B |μ(B) − ν(B)|`, attained at `B = {atoms where μ outweighs ν}`.
pub fn tv_distance(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Result<f64> {
    if mu.space() != nu.space() {
        return Err(Error::SpaceMismatch {
            left: mu.space().to_string(),
            right: nu.space().to_string(),
        });
    }
    Ok(mu
        .iter()
        .map(|(x, w)| (w - nu.mass_at(x)).max(0.0))
        .sum::<f64>()
        .min(1.0))
}

/// `sup_t |F_μ(t) − F_ν(t)|`, attained at an atom of either measure.
pub fn ks_distance(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Result<f64> {
    let (f, g) = line_cdfs(mu, nu)?;
    Ok(merged_breakpoints(&f, &g)
        .into_iter()
        .map(|z| (f.eval(z) - g.eval(z)).abs())
        .fold(0.0, f64::max))
}

/// `sup_I |μ(I) − ν(I)|` over non-degenerate intervals.
///
/// With `Δ = F_μ − F_ν`, every `μ(I) − ν(I)` is a difference of two values of
/// `Δ` taken as right values or left limits at the endpoints, and `Δ(±∞) = 0`.
/// The supremum is therefore `sup Δ − inf Δ` over those values.
pub fn kuiper_distance(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Result<f64> {
    let (f, g) = line_cdfs(mu, nu)?;
    let (mut hi, mut lo) = (0.0_f64, 0.0_f64);
    for z in merged_breakpoints(&f, &g) {
        for d in [f.eval(z) - g.eval(z), f.eval_left(z) - g.eval_left(z)] {
            hi = hi.max(d);
            lo = lo.min(d);
        }
    }
    Ok(hi - lo)
}

/// `∫ |F_μ − F_ν|`, summed exactly over consecutive merged breakpoints.
pub fn w1_cdf(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Result<f64> {
    let (f, g) = line_cdfs(mu, nu)?;
    let z = merged_breakpoints(&f, &g);
    Ok(z.windows(2)
        .map(|w| (f.eval(w[0]) - g.eval(w[0])).abs() * (w[1] - w[0]))
        .sum())
}

/// Whether `F(t−ε) − ε ≤ G(t) ≤ F(t+ε) + ε` holds for every `t`.
///
/// Both sides are right-continuous step functions of `t`, so each inequality
/// only needs checking where one of its sides jumps: at the atoms of `ν` and
/// at the atoms of `μ` shifted by `±ε`. At a shifted atom the `F` value is
/// taken at the atom itself.
fn levy_feasible(f: &StepCdf, g: &StepCdf, eps: f64) -> bool {
    let lower_ok = f.breakpoints().iter().all(|&x| f.eval(x) - eps <= g.eval(x + eps))
        && g.breakpoints().iter().all(|&y| f.eval(y - eps) - eps <= g.eval(y));
    let upper_ok = g.breakpoints().iter().all(|&y| g.eval(y) <= f.eval(y + eps) + eps)
        && f.breakpoints().iter().all(|&x| g.eval(x - eps) <= f.eval(x) + eps);
    lower_ok && upper_ok
}

/// `inf{ε > 0 : F_μ(t−ε) − ε ≤ F_ν(t) ≤ F_μ(t+ε) + ε ∀t}` by bisection on
/// `[0, 1]` to [`LEVY_TOL`]. Returns an upper bracket of the infimum.
pub fn levy_distance(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Result<f64> {
    let (f, g) = line_cdfs(mu, nu)?;
    if levy_feasible(&f, &g, 0.0) {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > LEVY_TOL {
        let mid = 0.5 * (lo + hi);
        if levy_feasible(&f, &g, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// A named distance between measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "metric", rename_all = "snake_case")]
pub enum Metric {
    Wasserstein { p: f64 },
    TotalVariation,
    KolmogorovSmirnov,
    Kuiper,
    Levy,
    LevyProkhorov,
}

impl Metric {
    pub fn distance(&self, mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Result<f64> {
        match *self {
            Metric::Wasserstein { p } => wasserstein(mu.space(), mu, nu, p),
            Metric::TotalVariation => tv_distance(mu, nu),
            Metric::KolmogorovSmirnov => ks_distance(mu, nu),
            Metric::Kuiper => kuiper_distance(mu, nu),
            Metric::Levy => levy_distance(mu, nu),
            Metric::LevyProkhorov => levy_prokhorov_distance(mu.space(), mu, nu),
        }
    }

    /// Short name as used on the command line.
    pub fn short_name(&self) -> &'static str {
        match self {
            Metric::Wasserstein { .. } => "wp",
            Metric::TotalVariation => "tv",
            Metric::KolmogorovSmirnov => "ks",
            Metric::Kuiper => "kuiper",
            Metric::Levy => "levy",
            Metric::LevyProkhorov => "lp",
        }
    }

    /// Whether the metric is defined through distribution functions.
    pub fn line_only(&self) -> bool {
        matches!(self, Metric::KolmogorovSmirnov | Metric::Kuiper | Metric::Levy)
    }

    pub fn supports(&self, kind: SpaceKind) -> bool {
        !self.line_only() || kind == SpaceKind::Line
    }

    /// Parses a short name; `p` is used only by `wp`.
    pub fn from_name(name: &str, p: f64) -> Result<Metric> {
        Ok(match name {
            "wp" => Metric::Wasserstein { p },
            other => other.parse()?,
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    /// `wp` parses with `p = 1`.
    fn from_str(s: &str) -> Result<Metric> {
        match s {
            "wp" => Ok(Metric::Wasserstein { p: 1.0 }),
            "tv" => Ok(Metric::TotalVariation),
            "ks" => Ok(Metric::KolmogorovSmirnov),
            "kuiper" => Ok(Metric::Kuiper),
            "levy" => Ok(Metric::Levy),
            "lp" => Ok(Metric::LevyProkhorov),
            other => Err(Error::InvalidArgument(format!("unknown metric {other:?}"))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Wasserstein { p } => write!(f, "W_{p}"),
            other => write!(f, "{}", other.short_name()),
        }
    }
}

//! Constructors for measure-space isometries, and numerical checks of the
//! Dirac characterisation on spheres and of the Dirac-image property of
//! Wasserstein isometries.

mod bidual;
mod point_map;
mod sphere;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use bidual::{bidual_set, FiniteUniverse, BIDUAL_TOL};
pub use point_map::{extract_point_map, PointMapReport};
pub use sphere::{
    analytic_sup_bound, dirac_sup_profile, probe_grid, verify_dirac_characterization, DiracReport, SupProfile,
};

use crate::error::{Error, Result};
use crate::isometry::{IsometryMap, MonotoneMap};
use crate::measure::FinitePointMeasure;
use crate::metrics::Metric;
use crate::space::{Point, SpaceDescriptor, SpaceKind};

/// Which construction a [`MeasureTransform`] came from, with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransformKind {
    Pushforward { map: String },
    Kloeckner { q: Vec<Vec<f64>> },
    KsIncreasing { map: String },
    KsDecreasing { map: String },
    LevyTranslation { c: f64 },
    LevyReflection { c: f64 },
    KuiperHomeo { map: String },
    LpAffine { map: String },
    Custom { name: String },
}

type Evaluator = Arc<dyn Fn(&FinitePointMeasure) -> Result<FinitePointMeasure> + Send + Sync>;

/// A map `φ` from measures to measures on the same space.
#[derive(Clone)]
pub struct MeasureTransform {
    kind: TransformKind,
    eval: Evaluator,
}

impl fmt::Debug for MeasureTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeasureTransform").field("kind", &self.kind).finish()
    }
}

impl MeasureTransform {
    /// Wraps an arbitrary evaluator, e.g. a candidate that is not an isometry.
    pub fn from_fn<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&FinitePointMeasure) -> Result<FinitePointMeasure> + Send + Sync + 'static,
    {
        MeasureTransform {
            kind: TransformKind::Custom { name: name.into() },
            eval: Arc::new(f),
        }
    }

    pub fn kind(&self) -> &TransformKind {
        &self.kind
    }

    pub fn apply(&self, mu: &FinitePointMeasure) -> Result<FinitePointMeasure> {
        let out = (self.eval)(mu)?;
        if out.space() != mu.space() {
            return Err(Error::SpaceMismatch {
                left: mu.space().to_string(),
                right: out.space().to_string(),
            });
        }
        Ok(out)
    }

    /// `|ρ(φμ, φν) − ρ(μ, ν)|`.
    pub fn distortion(&self, metric: Metric, mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Result<f64> {
        let before = metric.distance(mu, nu)?;
        let after = metric.distance(&self.apply(mu)?, &self.apply(nu)?)?;
        Ok((after - before).abs())
    }
}

fn require_line(m: &FinitePointMeasure) -> Result<()> {
    if m.space().kind == SpaceKind::Line {
        Ok(())
    } else {
        Err(Error::WrongSpace {
            expected: SpaceDescriptor::line().to_string(),
            actual: m.space().to_string(),
        })
    }
}

fn push_real<F: Fn(f64) -> f64>(m: &FinitePointMeasure, f: F) -> Result<FinitePointMeasure> {
    require_line(m)?;
    m.push_forward(*m.space(), |x| Ok(Point::scalar(f(x.as_real().expect("line atom")))))
}

/// `ψ ↦ ψ_#`: the push-forward by an isometry of the underlying space.
pub fn lift_isometry(psi: IsometryMap) -> MeasureTransform {
    MeasureTransform {
        kind: TransformKind::Pushforward { map: psi.describe() },
        eval: Arc::new(move |mu| mu.push_forward_by(&psi)),
    }
}

/// The Dirac-fixing `W_2` isometry of `ℝⁿ` built from an orthogonal `Q`:
/// recentre `μ` at the origin, apply `Q`, translate back to `c_μ`.
pub fn kloeckner_isometry(q: IsometryMap) -> Result<MeasureTransform> {
    let IsometryMap::Orthogonal { q } = q else {
        return Err(Error::InvalidArgument(format!(
            "expected an orthogonal map, got {}",
            q.describe()
        )));
    };
    let kind = TransformKind::Kloeckner {
        q: q.rows().into_iter().map(|r| r.to_vec()).collect(),
    };
    let eval = move |mu: &FinitePointMeasure| -> Result<FinitePointMeasure> {
        let space = *mu.space();
        match space.kind {
            SpaceKind::Discrete => return Err(Error::DiscreteSpaceUnsupported),
            SpaceKind::Sphere => {
                return Err(Error::WrongSpace {
                    expected: "euclidean space".into(),
                    actual: space.to_string(),
                })
            }
            SpaceKind::Line | SpaceKind::Euclidean => {}
        }
        if space.dim != q.nrows() {
            return Err(Error::DimensionMismatch {
                expected: format!("measures on R^{}", q.nrows()),
                actual: space.to_string(),
            });
        }
        let c = mu.center_of_mass()?;
        mu.push_forward(space, |x| {
            let x = x.coords().expect("euclidean atom");
            let centred: Vec<f64> = x.iter().zip(&c).map(|(a, b)| a - b).collect();
            let image = (0..c.len())
                .map(|i| c[i] + (0..c.len()).map(|j| q[[i, j]] * centred[j]).sum::<f64>())
                .collect();
            Ok(Point::Coords(image))
        })
    };
    Ok(MeasureTransform {
        kind,
        eval: Arc::new(eval),
    })
}

/// Kolmogorov–Smirnov isometry `φ = (ψ⁻¹)_#`. With `ψ` increasing this is
/// `F_{φμ}(t) = F_μ(ψ(t))`; with `ψ` decreasing it is
/// `F_{φμ}(t) = 1 − F_μ(ψ(t)−)`.
pub fn ks_isometry(psi: MonotoneMap, increasing: bool) -> Result<MeasureTransform> {
    if psi.is_increasing() != increasing {
        return Err(Error::NotBijective(format!(
            "{} is not strictly {}",
            psi.name(),
            if increasing { "increasing" } else { "decreasing" }
        )));
    }
    let kind = if increasing {
        TransformKind::KsIncreasing {
            map: psi.name().to_string(),
        }
    } else {
        TransformKind::KsDecreasing {
            map: psi.name().to_string(),
        }
    };
    Ok(MeasureTransform {
        kind,
        eval: Arc::new(move |mu| push_real(mu, |x| psi.eval_inverse(x))),
    })
}

/// Lévy isometry: push-forward by `x ↦ x − c` (so `F_{φμ}(t) = F_μ(t + c)`),
/// or with `reflect` by `x ↦ c − x` (so `F_{φμ}(t) = 1 − F_μ((c − t)−)`).
pub fn levy_isometry(c: f64, reflect: bool) -> MeasureTransform {
    if reflect {
        MeasureTransform {
            kind: TransformKind::LevyReflection { c },
            eval: Arc::new(move |mu| push_real(mu, |x| c - x)),
        }
    } else {
        MeasureTransform {
            kind: TransformKind::LevyTranslation { c },
            eval: Arc::new(move |mu| push_real(mu, |x| x - c)),
        }
    }
}

/// Kuiper isometry `φ = g_#` for a homeomorphism `g` of the line.
pub fn kuiper_isometry(g: MonotoneMap) -> MeasureTransform {
    MeasureTransform {
        kind: TransformKind::KuiperHomeo {
            map: g.name().to_string(),
        },
        eval: Arc::new(move |mu| push_real(mu, |x| g.eval(x))),
    }
}

/// Lévy–Prokhorov isometry `φ = ψ_#` for an affine isometry `ψ`.
pub fn lp_isometry(psi: IsometryMap) -> Result<MeasureTransform> {
    match psi {
        IsometryMap::Affine { .. } | IsometryMap::Orthogonal { .. } => Ok(MeasureTransform {
            kind: TransformKind::LpAffine { map: psi.describe() },
            eval: Arc::new(move |mu| mu.push_forward_by(&psi)),
        }),
        other => Err(Error::InvalidArgument(format!(
            "expected an affine isometry, got {}",
            other.describe()
        ))),
    }
}

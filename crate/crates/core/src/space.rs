//! The underlying metric spaces: the real line, Euclidean `n`-space, the
//! radius-½ sphere in `ℝⁿ` with the chordal metric, and finite label sets
//! carrying the 0/1 metric.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Radius of the sphere `S^{n-1} = {x : ‖x‖ = ½}`. Its diameter is 1.
pub const SPHERE_RADIUS: f64 = 0.5;

/// Tolerance on `|‖x‖ − ½|` for sphere membership.
pub const SPHERE_MEMBERSHIP_TOL: f64 = 1e-12;

/// Standard-normal samples shorter than this are rejected.
pub const DEGENERATE_NORM: f64 = 1e-8;

const MAX_RESAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Line,
    Euclidean,
    Sphere,
    Discrete,
}

/// A concrete metric space. `dim` is 1 for the line, the ambient dimension
/// for Euclidean space and the sphere, and the number of labels for a
/// discrete space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    pub dim: usize,
}

/// A point of a [`SpaceDescriptor`]: coordinates for the continuous spaces,
/// a label index for discrete ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Label(usize),
    Coords(Vec<f64>),
}

impl Point {
    pub fn scalar(x: f64) -> Self {
        Point::Coords(vec![x])
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Point::Coords(c) => Some(c),
            Point::Label(_) => None,
        }
    }

    pub fn label(&self) -> Option<usize> {
        match self {
            Point::Label(l) => Some(*l),
            Point::Coords(_) => None,
        }
    }

    /// First coordinate; the value of a point on the line.
    pub fn as_real(&self) -> Option<f64> {
        self.coords().and_then(|c| c.first().copied())
    }

    /// Lexicographic order by coordinates, labels by index, labels first.
    pub fn canonical_cmp(&self, other: &Point) -> Ordering {
        match (self, other) {
            (Point::Label(a), Point::Label(b)) => a.cmp(b),
            (Point::Label(_), Point::Coords(_)) => Ordering::Less,
            (Point::Coords(_), Point::Label(_)) => Ordering::Greater,
            (Point::Coords(a), Point::Coords(b)) => {
                for (x, y) in a.iter().zip(b) {
                    match x.total_cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Label(l) => write!(f, "#{l}"),
            Point::Coords(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl SpaceDescriptor {
    pub fn line() -> Self {
        SpaceDescriptor {
            kind: SpaceKind::Line,
            dim: 1,
        }
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        SpaceDescriptor {
            kind: SpaceKind::Euclidean,
            dim,
        }
        .validated()
    }

    pub fn sphere(ambient_dim: usize) -> Result<Self> {
        SpaceDescriptor {
            kind: SpaceKind::Sphere,
            dim: ambient_dim,
        }
        .validated()
    }

    pub fn discrete(labels: usize) -> Result<Self> {
        SpaceDescriptor {
            kind: SpaceKind::Discrete,
            dim: labels,
        }
        .validated()
    }

    /// Checks `dim ≥ 1`, `dim = 1` for the line and `dim ≥ 2` for the sphere.
    pub fn validated(self) -> Result<Self> {
        match self.kind {
            _ if self.dim == 0 => Err(Error::InvalidSpace(format!("{self}: dim must be >= 1"))),
            SpaceKind::Line if self.dim != 1 => Err(Error::InvalidSpace(format!("{self}: the line has dim 1"))),
            SpaceKind::Sphere if self.dim < 2 => Err(Error::InvalidSpace(format!(
                "{self}: the sphere needs ambient dim >= 2"
            ))),
            _ => Ok(self),
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.kind == SpaceKind::Discrete
    }

    /// Number of coordinates of a point, `None` for discrete spaces.
    pub fn coordinate_dim(&self) -> Option<usize> {
        match self.kind {
            SpaceKind::Discrete => None,
            _ => Some(self.dim),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.membership_defect(x).is_some_and(|d| d <= SPHERE_MEMBERSHIP_TOL)
    }

    /// `None` if the point has the wrong shape; otherwise the distance from the
    /// space (always 0 except on the sphere, where it is `|‖x‖ − ½|`).
    pub(crate) fn membership_defect(&self, x: &Point) -> Option<f64> {
        match (self.kind, x) {
            (SpaceKind::Discrete, Point::Label(l)) => (*l < self.dim).then_some(0.0),
            (SpaceKind::Discrete, Point::Coords(_)) | (_, Point::Label(_)) => None,
            (kind, Point::Coords(c)) => {
                if c.len() != self.dim || c.iter().any(|v| !v.is_finite()) {
                    return None;
                }
                match kind {
                    SpaceKind::Sphere => Some((norm(c) - SPHERE_RADIUS).abs()),
                    _ => Some(0.0),
                }
            }
        }
    }

    pub fn check(&self, x: &Point) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::PointNotInSpace {
                point: x.to_string(),
                space: self.to_string(),
            })
        }
    }

    /// Distance between two members of this space.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.metric(x, y))
    }

    /// Distance without membership checks. Points of mismatched shape are
    /// treated as distinct labels.
    pub(crate) fn metric(&self, x: &Point, y: &Point) -> f64 {
        match (x, y) {
            (Point::Coords(a), Point::Coords(b)) => euclidean(a, b),
            (Point::Label(a), Point::Label(b)) if a == b => 0.0,
            _ => 1.0,
        }
    }

    /// Draws a point: standard-normal coordinates on the line and in
    /// Euclidean space, a normalised standard-normal vector scaled to radius
    /// ½ on the sphere, a uniform label on discrete spaces.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point> {
        match self.kind {
            SpaceKind::Discrete => Ok(Point::Label(rng.random_range(0..self.dim))),
            SpaceKind::Line | SpaceKind::Euclidean => Ok(Point::Coords(standard_normal_vec(self.dim, rng))),
            SpaceKind::Sphere => {
                let mut last = 0.0;
                for _ in 0..MAX_RESAMPLES {
                    let v = standard_normal_vec(self.dim, rng);
                    let n = norm(&v);
                    if n >= DEGENERATE_NORM {
                        return Ok(Point::Coords(v.iter().map(|x| x * SPHERE_RADIUS / n).collect()));
                    }
                    last = n;
                }
                Err(Error::DegenerateSample(last))
            }
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::Line => write!(f, "real line"),
            SpaceKind::Euclidean => write!(f, "euclidean space R^{}", self.dim),
            SpaceKind::Sphere => write!(f, "radius-1/2 sphere in R^{}", self.dim),
            SpaceKind::Discrete => write!(f, "discrete space with {} labels", self.dim),
        }
    }
}

pub(crate) fn standard_normal_vec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// The antipodal point `−x` of a sphere point.
pub fn antipode(space: &SpaceDescriptor, x: &Point) -> Result<Point> {
    if space.kind != SpaceKind::Sphere {
        return Err(Error::WrongSpace {
            expected: "sphere".into(),
            actual: space.to_string(),
        });
    }
    space.check(x)?;
    let c = x.coords().expect("checked sphere point");
    Ok(Point::Coords(c.iter().map(|v| -v).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn antipodes_are_at_distance_one() {
        let s = SpaceDescriptor::sphere(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = s.random_point(&mut rng).unwrap();
            let y = antipode(&s, &x).unwrap();
            assert!((s.distance(&x, &y).unwrap() - 1.0).abs() <= 1e-15);
            assert_eq!(antipode(&s, &y).unwrap(), x);
        }
        let x = Point::Coords(vec![0.5, 0.0, 0.0]);
        assert_eq!(antipode(&s, &x).unwrap(), Point::Coords(vec![-0.5, 0.0, 0.0]));
    }

    #[test]
    fn discrete_metric_is_zero_one() {
        let s = SpaceDescriptor::discrete(5).unwrap();
        assert_eq!(s.distance(&Point::Label(2), &Point::Label(4)).unwrap(), 1.0);
        assert_eq!(s.distance(&Point::Label(3), &Point::Label(3)).unwrap(), 0.0);
        assert!(matches!(
            s.distance(&Point::Label(5), &Point::Label(0)),
            Err(Error::PointNotInSpace { .. })
        ));
    }

    #[test]
    fn sphere_membership_is_checked() {
        let s = SpaceDescriptor::sphere(2).unwrap();
        assert!(s.contains(&Point::Coords(vec![0.0, 0.5])));
        assert!(!s.contains(&Point::Coords(vec![0.0, 1.0])));
        assert!(!s.contains(&Point::Coords(vec![0.5])));
        assert!(antipode(&SpaceDescriptor::line(), &Point::scalar(1.0)).is_err());
    }

    #[test]
    fn descriptors_validate() {
        assert!(SpaceDescriptor::sphere(1).is_err());
        assert!(SpaceDescriptor::euclidean(0).is_err());
        assert!(SpaceDescriptor::discrete(0).is_err());
        assert!(SpaceDescriptor {
            kind: SpaceKind::Line,
            dim: 2
        }
        .validated()
        .is_err());
    }

    #[test]
    fn random_points_are_deterministic_and_in_space() {
        for s in [
            SpaceDescriptor::line(),
            SpaceDescriptor::euclidean(3).unwrap(),
            SpaceDescriptor::sphere(4).unwrap(),
            SpaceDescriptor::discrete(7).unwrap(),
        ] {
            let a = s.random_point(&mut ChaCha8Rng::seed_from_u64(5)).unwrap();
            let b = s.random_point(&mut ChaCha8Rng::seed_from_u64(5)).unwrap();
            assert_eq!(a, b);
            assert!(s.contains(&a));
        }
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let a = Point::Coords(vec![0.0, 2.0]);
        let b = Point::Coords(vec![0.0, 3.0]);
        let c = Point::Coords(vec![1.0, -9.0]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(c.canonical_cmp(&b), Ordering::Greater);
        assert_eq!(Point::Label(1).canonical_cmp(&Point::Label(0)), Ordering::Greater);
    }
}

//! Point isometries of the underlying spaces, and strictly monotone real
//! bijections used by the distribution-function isometries.

use std::fmt;
use std::sync::Arc;

use ndarray::{Array1, Array2};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::space::{norm, standard_normal_vec, Point, SpaceDescriptor, SpaceKind, DEGENERATE_NORM, SPHERE_RADIUS};

/// Maximum entry of `QᵀQ − I` accepted for an orthogonal matrix.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Tolerance on `|‖Qx‖ − ½|` for images of sphere points.
pub const SPHERE_IMAGE_TOL: f64 = 1e-10;

const BIJECTION_TOL: f64 = 1e-10;

const PROBE_POINTS: [f64; 13] = [
    -40.0, -10.0, -3.0, -1.0, -0.5, -0.125, 0.0, 0.1, 0.75, 1.0, 2.5, 9.0, 40.0,
];

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A strictly monotone continuous bijection of `ℝ`, carried together with
/// its inverse so preimages of atoms are exact.
#[derive(Clone)]
pub struct MonotoneMap {
    name: String,
    forward: RealFn,
    inverse: RealFn,
    increasing: bool,
}

impl MonotoneMap {
    /// Validates the pair on a fixed probe grid: both compositions must be
    /// the identity within `1e-10` (relative), and the forward map must be
    /// strictly monotone in the direction of `increasing`.
    pub fn new<F, G>(name: impl Into<String>, forward: F, inverse: G, increasing: bool) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let map = MonotoneMap {
            name: name.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
            increasing,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        let mut prev: Option<f64> = None;
        for &t in &PROBE_POINTS {
            let y = self.eval(t);
            let scale = t.abs().max(1.0);
            if !y.is_finite() || (self.eval_inverse(y) - t).abs() > BIJECTION_TOL * scale {
                return Err(Error::NotBijective(format!(
                    "{}: inverse(forward({t})) = {}",
                    self.name,
                    self.eval_inverse(y)
                )));
            }
            if (self.eval(self.eval_inverse(t)) - t).abs() > BIJECTION_TOL * scale {
                return Err(Error::NotBijective(format!(
                    "{}: forward(inverse({t})) = {}",
                    self.name,
                    self.eval(self.eval_inverse(t))
                )));
            }
            if let Some(p) = prev {
                let ok = if self.increasing { y > p } else { y < p };
                if !ok {
                    return Err(Error::NotBijective(format!(
                        "{}: not strictly {} near {t}",
                        self.name,
                        if self.increasing { "increasing" } else { "decreasing" }
                    )));
                }
            }
            prev = Some(y);
        }
        Ok(())
    }

    pub fn identity() -> Self {
        Self::affine(1.0, 0.0).expect("identity is a bijection")
    }

    /// `t ↦ slope·t + offset`, `slope ≠ 0`.
    pub fn affine(slope: f64, offset: f64) -> Result<Self> {
        if slope == 0.0 || !slope.is_finite() || !offset.is_finite() {
            return Err(Error::NotBijective(format!("affine map with slope {slope}")));
        }
        Self::new(
            format!("t -> {slope}*t + {offset}"),
            move |t| slope * t + offset,
            move |t| (t - offset) / slope,
            slope > 0.0,
        )
    }

    /// `t ↦ t³`, a homeomorphism that is not affine.
    pub fn cube() -> Self {
        Self::new("t -> t^3", |t| t * t * t, f64::cbrt, true).expect("cube is a bijection")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.forward)(t)
    }

    pub fn eval_inverse(&self, t: f64) -> f64 {
        (self.inverse)(t)
    }

    pub fn inverse(&self) -> MonotoneMap {
        MonotoneMap {
            name: format!("inverse of {}", self.name),
            forward: Arc::clone(&self.inverse),
            inverse: Arc::clone(&self.forward),
            increasing: self.increasing,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonotoneMap) -> MonotoneMap {
        let (f, g) = (Arc::clone(&self.forward), Arc::clone(&inner.forward));
        let (fi, gi) = (Arc::clone(&self.inverse), Arc::clone(&inner.inverse));
        MonotoneMap {
            name: format!("({}) o ({})", self.name, inner.name),
            forward: Arc::new(move |t| f(g(t))),
            inverse: Arc::new(move |t| gi(fi(t))),
            increasing: self.increasing == inner.increasing,
        }
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneMap")
            .field("name", &self.name)
            .field("increasing", &self.increasing)
            .finish()
    }
}

/// An isometry (or, for `MonotoneReal`, a homeomorphism) of an underlying
/// space.
#[derive(Debug, Clone)]
pub enum IsometryMap {
    /// `x ↦ Qx + b` with `Q` orthogonal.
    Affine {
        q: Array2<f64>,
        b: Array1<f64>,
    },
    /// `x ↦ Qx`; the only variant that maps the sphere to itself.
    Orthogonal {
        q: Array2<f64>,
    },
    /// Label `i ↦ perm[i]` on a discrete space.
    LabelPermutation(Vec<usize>),
    MonotoneReal(MonotoneMap),
}

/// `max |QᵀQ − I|`.
pub fn orthogonality_defect(q: &Array2<f64>) -> f64 {
    let n = q.nrows();
    let gram = q.t().dot(q);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[[i, j]] - target).abs());
        }
    }
    worst
}

fn check_orthogonal(q: &Array2<f64>) -> Result<()> {
    if q.nrows() != q.ncols() || q.nrows() == 0 {
        return Err(Error::DimensionMismatch {
            expected: "a non-empty square matrix".into(),
            actual: format!("{}x{}", q.nrows(), q.ncols()),
        });
    }
    let defect = orthogonality_defect(q);
    if defect > ORTHOGONALITY_TOL {
        return Err(Error::InvalidArgument(format!(
            "matrix is not orthogonal (max |Q^T Q - I| = {defect:e})"
        )));
    }
    Ok(())
}

impl IsometryMap {
    pub fn affine(q: Array2<f64>, b: Array1<f64>) -> Result<Self> {
        check_orthogonal(&q)?;
        if b.len() != q.nrows() {
            return Err(Error::DimensionMismatch {
                expected: format!("translation of length {}", q.nrows()),
                actual: format!("length {}", b.len()),
            });
        }
        Ok(IsometryMap::Affine { q, b })
    }

    pub fn orthogonal(q: Array2<f64>) -> Result<Self> {
        check_orthogonal(&q)?;
        Ok(IsometryMap::Orthogonal { q })
    }

    pub fn label_permutation(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotBijective(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(IsometryMap::LabelPermutation(perm))
    }

    /// Counter-clockwise rotation of the plane by `angle` radians.
    pub fn rotation_2d(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        IsometryMap::Orthogonal {
            q: ndarray::array![[c, -s], [s, c]],
        }
    }

    /// Identity map of the given space.
    pub fn identity(space: &SpaceDescriptor) -> Self {
        match space.kind {
            SpaceKind::Discrete => IsometryMap::LabelPermutation((0..space.dim).collect()),
            _ => IsometryMap::Orthogonal {
                q: Array2::eye(space.dim),
            },
        }
    }

    /// Whether this map sends `space` to itself.
    pub fn acts_on(&self, space: &SpaceDescriptor) -> bool {
        match (self, space.kind) {
            (IsometryMap::Orthogonal { q }, SpaceKind::Line | SpaceKind::Euclidean | SpaceKind::Sphere)
            | (IsometryMap::Affine { q, .. }, SpaceKind::Line | SpaceKind::Euclidean) => q.nrows() == space.dim,
            (IsometryMap::LabelPermutation(p), SpaceKind::Discrete) => p.len() == space.dim,
            (IsometryMap::MonotoneReal(_), SpaceKind::Line) => true,
            _ => false,
        }
    }

    /// Maps a point of `space`. Images of sphere points are checked against
    /// radius ½ within `1e-10` and then projected onto the sphere.
    pub fn apply(&self, space: &SpaceDescriptor, x: &Point) -> Result<Point> {
        space.check(x)?;
        let not_in_space = |p: &Point| Error::ImageNotInSpace {
            point: p.to_string(),
            space: space.to_string(),
        };
        if !self.acts_on(space) {
            return Err(Error::DimensionMismatch {
                expected: format!("a map acting on the {space}"),
                actual: self.describe(),
            });
        }
        let image = match (self, x) {
            (IsometryMap::LabelPermutation(p), Point::Label(l)) => Point::Label(p[*l]),
            (IsometryMap::MonotoneReal(m), Point::Coords(c)) => Point::Coords(vec![m.eval(c[0])]),
            (IsometryMap::Orthogonal { q }, Point::Coords(c)) => {
                Point::Coords(q.dot(&Array1::from(c.clone())).to_vec())
            }
            (IsometryMap::Affine { q, b }, Point::Coords(c)) => {
                Point::Coords((q.dot(&Array1::from(c.clone())) + b).to_vec())
            }
            _ => return Err(not_in_space(x)),
        };
        if space.kind == SpaceKind::Sphere {
            let c = image.coords().expect("sphere image has coordinates");
            let n = norm(c);
            if (n - SPHERE_RADIUS).abs() > SPHERE_IMAGE_TOL {
                return Err(not_in_space(&image));
            }
            return Ok(Point::Coords(c.iter().map(|v| v * SPHERE_RADIUS / n).collect()));
        }
        if !space.contains(&image) {
            return Err(not_in_space(&image));
        }
        Ok(image)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &IsometryMap) -> Result<IsometryMap> {
        use IsometryMap::*;
        let parts = |m: &IsometryMap| match m {
            Affine { q, b } => Some((q.clone(), Some(b.clone()))),
            Orthogonal { q } => Some((q.clone(), None)),
            _ => None,
        };
        match (self, inner) {
            (LabelPermutation(p), LabelPermutation(r)) if p.len() == r.len() => {
                Ok(LabelPermutation(r.iter().map(|&i| p[i]).collect()))
            }
            (MonotoneReal(f), MonotoneReal(g)) => Ok(MonotoneReal(f.compose(g))),
            _ => match (parts(self), parts(inner)) {
                (Some((q1, b1)), Some((q2, b2))) if q1.nrows() == q2.nrows() => {
                    let q = q1.dot(&q2);
                    match (b1, b2) {
                        (None, None) => Ok(Orthogonal { q }),
                        (b1, b2) => {
                            let n = q.nrows();
                            let b2 = b2.unwrap_or_else(|| Array1::zeros(n));
                            let b1 = b1.unwrap_or_else(|| Array1::zeros(n));
                            Ok(Affine { b: q1.dot(&b2) + b1, q })
                        }
                    }
                }
                _ => Err(Error::DimensionMismatch {
                    expected: self.describe(),
                    actual: inner.describe(),
                }),
            },
        }
    }

    /// The inverse map.
    pub fn inverse(&self) -> IsometryMap {
        match self {
            IsometryMap::Orthogonal { q } => IsometryMap::Orthogonal { q: q.t().to_owned() },
            IsometryMap::Affine { q, b } => {
                let qt = q.t().to_owned();
                let b = -qt.dot(b);
                IsometryMap::Affine { q: qt, b }
            }
            IsometryMap::LabelPermutation(p) => {
                let mut inv = vec![0; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    inv[j] = i;
                }
                IsometryMap::LabelPermutation(inv)
            }
            IsometryMap::MonotoneReal(m) => IsometryMap::MonotoneReal(m.inverse()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            IsometryMap::Affine { q, .. } => format!("affine isometry of R^{}", q.nrows()),
            IsometryMap::Orthogonal { q } => format!("orthogonal map of R^{}", q.nrows()),
            IsometryMap::LabelPermutation(p) => format!("permutation of {} labels", p.len()),
            IsometryMap::MonotoneReal(m) => format!("monotone map {}", m.name()),
        }
    }
}

/// Orthonormalises a standard-normal `n×n` matrix column by column
/// (Gram–Schmidt, so the implied triangular factor has positive diagonal).
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<IsometryMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("orthogonal matrix of size 0".into()));
    }
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = standard_normal_vec(n, rng);
        // Two passes keep the columns orthogonal to working precision.
        for _ in 0..2 {
            for c in &cols {
                let dot: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(a, b)| *a -= dot * b);
            }
        }
        let len = norm(&v);
        if len < DEGENERATE_NORM {
            continue;
        }
        cols.push(v.into_iter().map(|a| a / len).collect());
    }
    let q = Array2::from_shape_fn((n, n), |(i, j)| cols[j][i]);
    IsometryMap::orthogonal(q)
}

/// A random isometry of `space`: an affine map with random orthogonal part
/// and standard-normal translation on the line and in Euclidean space, an
/// orthogonal map on the sphere, a uniform permutation on a discrete space.
pub fn random_isometry<R: Rng + ?Sized>(space: &SpaceDescriptor, rng: &mut R) -> Result<IsometryMap> {
    match space.kind {
        SpaceKind::Discrete => {
            let mut perm: Vec<usize> = (0..space.dim).collect();
            perm.shuffle(rng);
            IsometryMap::label_permutation(perm)
        }
        SpaceKind::Sphere => random_orthogonal(space.dim, rng),
        SpaceKind::Line | SpaceKind::Euclidean => {
            let q = match random_orthogonal(space.dim, rng)? {
                IsometryMap::Orthogonal { q } => q,
                _ => unreachable!(),
            };
            let b = Array1::from(standard_normal_vec(space.dim, rng));
            IsometryMap::affine(q, b)
        }
    }
}

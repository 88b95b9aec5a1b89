//! Finitely supported probability measures and couplings between them.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::isometry::IsometryMap;
use crate::space::{Point, SpaceDescriptor, SpaceKind};

/// Atoms closer than this are merged during canonicalisation.
pub const MERGE_TOL: f64 = 1e-12;

/// Raw input weights must sum to 1 within this tolerance.
pub const INPUT_SUM_TOL: f64 = 1e-9;

/// Coupling marginals must match the measure weights within this tolerance.
pub const MARGINAL_TOL: f64 = 1e-10;

/// A probability measure with finitely many atoms on a [`SpaceDescriptor`].
///
/// Always held in canonical form: strictly positive weights summing to 1,
/// pairwise distinct atoms (more than [`MERGE_TOL`] apart), atoms sorted
/// lexicographically, every atom a member of the space.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePointMeasure {
    space: SpaceDescriptor,
    atoms: Vec<Point>,
    weights: Vec<f64>,
}

/// Builds the canonical form of `Σ weights[i]·δ_{atoms[i]}`: zero weights are
/// dropped, atoms within [`MERGE_TOL`] are merged (weights added, first atom
/// kept), atoms are sorted and the weights divided by their sum. Weights
/// whose sum is already 1 up to summation rounding are left as they are,
/// which makes canonicalisation idempotent bit for bit.
pub fn canonicalize(space: SpaceDescriptor, atoms: Vec<Point>, weights: Vec<f64>) -> Result<FinitePointMeasure> {
    let space = space.validated()?;
    if atoms.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} weights", atoms.len()),
            actual: format!("{} weights", weights.len()),
        });
    }
    for (index, &w) in weights.iter().enumerate() {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::NegativeWeight { index, weight: w });
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > INPUT_SUM_TOL {
        return Err(Error::SumOutOfTolerance {
            sum,
            tolerance: INPUT_SUM_TOL,
        });
    }
    for x in &atoms {
        space.check(x)?;
    }

    let mut merged: Vec<(Point, f64)> = Vec::with_capacity(atoms.len());
    for (x, w) in atoms.into_iter().zip(weights) {
        if w == 0.0 {
            continue;
        }
        match merged.iter_mut().find(|(y, _)| space.metric(&x, y) <= MERGE_TOL) {
            Some((_, acc)) => *acc += w,
            None => merged.push((x, w)),
        }
    }
    merged.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));

    let total: f64 = merged.iter().map(|(_, w)| w).sum();
    let rounding = 4.0 * merged.len() as f64 * f64::EPSILON;
    let scale = if (total - 1.0).abs() <= rounding { 1.0 } else { total };
    let (atoms, weights) = merged.into_iter().map(|(x, w)| (x, w / scale)).unzip();
    Ok(FinitePointMeasure { space, atoms, weights })
}

impl FinitePointMeasure {
    /// Alias for [`canonicalize`].
    pub fn new(space: SpaceDescriptor, atoms: Vec<Point>, weights: Vec<f64>) -> Result<Self> {
        canonicalize(space, atoms, weights)
    }

    pub fn dirac(space: SpaceDescriptor, x: Point) -> Result<Self> {
        canonicalize(space, vec![x], vec![1.0])
    }

    /// Equal weights on the given atoms (coincident atoms merge).
    pub fn uniform(space: SpaceDescriptor, atoms: Vec<Point>) -> Result<Self> {
        let n = atoms.len();
        if n == 0 {
            return Err(Error::SumOutOfTolerance {
                sum: 0.0,
                tolerance: INPUT_SUM_TOL,
            });
        }
        canonicalize(space, atoms, vec![1.0 / n as f64; n])
    }

    /// Measure on the line from `(position, weight)` pairs.
    pub fn on_line(pairs: &[(f64, f64)]) -> Result<Self> {
        canonicalize(
            SpaceDescriptor::line(),
            pairs.iter().map(|&(x, _)| Point::scalar(x)).collect(),
            pairs.iter().map(|&(_, w)| w).collect(),
        )
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn atoms(&self) -> &[Point] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, f64)> {
        self.atoms.iter().zip(self.weights.iter().copied())
    }

    /// Re-runs canonicalisation. A no-op on values of this type.
    pub fn canonicalize(&self) -> Result<Self> {
        canonicalize(self.space, self.atoms.clone(), self.weights.clone())
    }

    pub fn is_dirac(&self) -> bool {
        self.atoms.len() == 1
    }

    /// Atom positions of a measure on the line.
    pub fn real_atoms(&self) -> Result<Vec<f64>> {
        if self.space.kind != SpaceKind::Line {
            return Err(Error::WrongSpace {
                expected: SpaceDescriptor::line().to_string(),
                actual: self.space.to_string(),
            });
        }
        Ok(self.atoms.iter().map(|x| x.as_real().expect("line atom")).collect())
    }

    /// Mass of the atom at `x` (0 if `x` is not within [`MERGE_TOL`] of an atom).
    pub fn mass_at(&self, x: &Point) -> f64 {
        self.iter()
            .find(|(y, _)| self.space.metric(x, y) <= MERGE_TOL)
            .map_or(0.0, |(_, w)| w)
    }

    /// The image measure `ψ_#μ` for an arbitrary point map into `target`.
    /// Atoms whose images coincide have their weights merged.
    pub fn push_forward<F>(&self, target: SpaceDescriptor, f: F) -> Result<Self>
    where
        F: Fn(&Point) -> Result<Point>,
    {
        let mut images = Vec::with_capacity(self.atoms.len());
        for x in &self.atoms {
            let y = f(x)?;
            if !target.contains(&y) {
                return Err(Error::ImageNotInSpace {
                    point: y.to_string(),
                    space: target.to_string(),
                });
            }
            images.push(y);
        }
        canonicalize(target, images, self.weights.clone())
    }

    /// `ψ_#μ` for an isometry of this measure's space.
    pub fn push_forward_by(&self, psi: &IsometryMap) -> Result<Self> {
        let space = self.space;
        self.push_forward(space, |x| psi.apply(&space, x))
    }

    /// `∫ x dμ(x)`. For sphere measures this is a point of the ambient space.
    pub fn center_of_mass(&self) -> Result<Vec<f64>> {
        let dim = self.space.coordinate_dim().ok_or(Error::DiscreteSpaceUnsupported)?;
        let mut c = vec![0.0; dim];
        for (x, w) in self.iter() {
            for (ci, xi) in c.iter_mut().zip(x.coords().expect("continuous atom")) {
                *ci += w * xi;
            }
        }
        Ok(c)
    }

    /// Same support and weights up to `tol`, regardless of atom order.
    pub fn approx_eq(&self, other: &FinitePointMeasure, tol: f64) -> bool {
        if self.space != other.space || self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        self.iter().all(|(x, w)| {
            let hit = other
                .iter()
                .enumerate()
                .position(|(j, (y, v))| !used[j] && self.space.metric(x, y) <= tol && (w - v).abs() <= tol);
            hit.map(|j| used[j] = true).is_some()
        })
    }
}

/// A transport plan: a nonnegative matrix whose row sums are the source
/// weights and whose column sums are the target weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    mass: Array2<f64>,
    source: Vec<f64>,
    target: Vec<f64>,
}

impl Coupling {
    /// Validates nonnegativity and both marginals (within [`MARGINAL_TOL`]).
    pub fn new(mass: Array2<f64>, source: Vec<f64>, target: Vec<f64>) -> Result<Self> {
        if mass.dim() != (source.len(), target.len()) {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", source.len(), target.len()),
                actual: format!("{}x{}", mass.nrows(), mass.ncols()),
            });
        }
        if let Some(((i, j), &v)) = mass.indexed_iter().find(|(_, v)| v.is_nan() || **v < 0.0) {
            return Err(Error::InvalidArgument(format!("negative plan entry {v} at ({i}, {j})")));
        }
        let coupling = Coupling { mass, source, target };
        let defect = coupling.marginal_defect();
        if defect > MARGINAL_TOL {
            return Err(Error::InvalidArgument(format!("plan marginals off by {defect:e}")));
        }
        Ok(coupling)
    }

    pub fn rows(&self) -> usize {
        self.mass.nrows()
    }

    pub fn cols(&self) -> usize {
        self.mass.ncols()
    }

    pub fn mass(&self) -> &Array2<f64> {
        &self.mass
    }

    pub fn source_weights(&self) -> &[f64] {
        &self.source
    }

    pub fn target_weights(&self) -> &[f64] {
        &self.target
    }

    /// Largest absolute deviation of a row or column sum from its marginal.
    pub fn marginal_defect(&self) -> f64 {
        let rows = self
            .mass
            .rows()
            .into_iter()
            .zip(&self.source)
            .map(|(r, w)| (r.sum() - w).abs());
        let cols = self
            .mass
            .columns()
            .into_iter()
            .zip(&self.target)
            .map(|(c, w)| (c.sum() - w).abs());
        rows.chain(cols).fold(0.0, f64::max)
    }

    /// `Σ cost[i][j]·mass[i][j]`.
    pub fn cost(&self, cost: &Array2<f64>) -> Result<f64> {
        coupling_cost(self, cost)
    }
}

/// The product coupling `μ ⊗ ν`, `mass[i][j] = w_μ(i)·w_ν(j)`.
pub fn product_coupling(mu: &FinitePointMeasure, nu: &FinitePointMeasure) -> Coupling {
    let mass = Array2::from_shape_fn((mu.len(), nu.len()), |(i, j)| mu.weights[i] * nu.weights[j]);
    Coupling {
        mass,
        source: mu.weights.clone(),
        target: nu.weights.clone(),
    }
}

/// `Σ_{i,j} cost[i][j]·mass[i][j]`.
pub fn coupling_cost(coupling: &Coupling, cost: &Array2<f64>) -> Result<f64> {
    if coupling.mass.dim() != cost.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", coupling.rows(), coupling.cols()),
            actual: format!("{}x{}", cost.nrows(), cost.ncols()),
        });
    }
    Ok(coupling.mass.iter().zip(cost.iter()).map(|(m, c)| m * c).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn line(pairs: &[(f64, f64)]) -> FinitePointMeasure {
        FinitePointMeasure::on_line(pairs).unwrap()
    }

    #[test]
    fn coincident_atoms_merge() {
        let m = line(&[(0.0, 0.3), (1e-15, 0.2), (1.0, 0.5)]);
        assert_eq!(m.atoms(), &[Point::scalar(0.0), Point::scalar(1.0)]);
        assert_eq!(m.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn dirac_is_unchanged() {
        let d = FinitePointMeasure::dirac(SpaceDescriptor::line(), Point::scalar(2.5)).unwrap();
        assert_eq!(d.atoms(), &[Point::scalar(2.5)]);
        assert_eq!(d.weights(), &[1.0]);
        assert!(d.is_dirac());
        assert_eq!(d.canonicalize().unwrap(), d);
    }

    #[test]
    fn zero_weights_are_dropped() {
        let m = line(&[(0.0, 0.5), (1.0, 0.5), (2.0, 0.0)]);
        assert_eq!(m.len(), 2);
        assert_eq!(m.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn repeated_atom_becomes_dirac() {
        assert!(!line(&[(0.0, 0.5), (1.0, 0.5)]).is_dirac());
        assert!(line(&[(4.0, 0.5), (4.0, 0.5)]).is_dirac());
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            FinitePointMeasure::on_line(&[(0.0, -0.1), (1.0, 1.1)]),
            Err(Error::NegativeWeight { index: 0, .. })
        ));
        assert!(matches!(
            FinitePointMeasure::on_line(&[(0.0, 0.5), (1.0, 0.4)]),
            Err(Error::SumOutOfTolerance { .. })
        ));
        let s = SpaceDescriptor::sphere(2).unwrap();
        assert!(matches!(
            FinitePointMeasure::dirac(s, Point::Coords(vec![1.0, 0.0])),
            Err(Error::PointNotInSpace { .. })
        ));
    }

    #[test]
    fn input_within_tolerance_is_renormalised_exactly() {
        let m = line(&[(0.0, 0.5 + 4e-10), (1.0, 0.5)]);
        assert_eq!(m.weights().iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn push_forward_relocates_and_merges() {
        let m = line(&[(0.0, 0.5), (1.0, 0.5)]);
        let neg = m
            .push_forward(SpaceDescriptor::line(), |x| Ok(Point::scalar(-x.as_real().unwrap())))
            .unwrap();
        assert!(neg.approx_eq(&line(&[(0.0, 0.5), (-1.0, 0.5)]), 0.0));
        let collapsed = m
            .push_forward(SpaceDescriptor::line(), |_| Ok(Point::scalar(0.0)))
            .unwrap();
        assert_eq!(collapsed, line(&[(0.0, 1.0)]));
        let bad = m.push_forward(SpaceDescriptor::sphere(2).unwrap(), |_| {
            Ok(Point::Coords(vec![2.0, 0.0]))
        });
        assert!(matches!(bad, Err(Error::ImageNotInSpace { .. })));
    }

    #[test]
    fn product_coupling_is_outer_product() {
        let mu = line(&[(0.0, 0.5), (1.0, 0.5)]);
        let nu = line(&[(0.0, 1.0 / 3.0), (1.0, 2.0 / 3.0)]);
        let pi = product_coupling(&mu, &nu);
        let expected = array![[1.0 / 6.0, 1.0 / 3.0], [1.0 / 6.0, 1.0 / 3.0]];
        for (a, b) in pi.mass().iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-16);
        }
        assert!(pi.marginal_defect() <= 1e-14);

        let d = line(&[(3.0, 1.0)]);
        assert_eq!(product_coupling(&d, &d).mass(), &array![[1.0]]);
        assert_eq!(product_coupling(&mu, &d).mass(), &array![[0.5], [0.5]]);
    }

    #[test]
    fn coupling_costs() {
        let mu = line(&[(0.0, 0.5), (1.0, 0.5)]);
        let pi = product_coupling(&mu, &mu);
        assert_eq!(pi.cost(&array![[0.0, 1.0], [1.0, 0.0]]).unwrap(), 0.5);
        let diag = Coupling::new(array![[0.5, 0.0], [0.0, 0.5]], vec![0.5, 0.5], vec![0.5, 0.5]).unwrap();
        assert_eq!(diag.cost(&array![[0.0, 7.0], [3.0, 0.0]]).unwrap(), 0.0);
        let one = Coupling::new(array![[1.0]], vec![1.0], vec![1.0]).unwrap();
        assert_eq!(one.cost(&array![[2.5]]).unwrap(), 2.5);
        assert!(matches!(
            one.cost(&array![[1.0, 2.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Coupling::new(array![[0.6, 0.0], [0.0, 0.4]], vec![0.5, 0.5], vec![0.5, 0.5]).is_err());
    }

    #[test]
    fn center_of_mass() {
        assert_eq!(line(&[(0.0, 0.5), (1.0, 0.5)]).center_of_mass().unwrap(), vec![0.5]);
        let s = SpaceDescriptor::sphere(2).unwrap();
        let m = FinitePointMeasure::uniform(s, vec![Point::Coords(vec![0.5, 0.0]), Point::Coords(vec![-0.5, 0.0])])
            .unwrap();
        assert_eq!(m.center_of_mass().unwrap(), vec![0.0, 0.0]);
        let d = FinitePointMeasure::dirac(SpaceDescriptor::discrete(3).unwrap(), Point::Label(1)).unwrap();
        assert_eq!(d.center_of_mass(), Err(Error::DiscreteSpaceUnsupported));
    }
}

use serde::Serialize;

use super::MeasureTransform;
use crate::error::{Error, Result};
use crate::measure::FinitePointMeasure;
use crate::space::{Point, SpaceDescriptor};

/// The point map `T` read off from `φ(δ_x) = δ_{T(x)}` on a sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointMapReport {
    pub sample: Vec<Point>,
    pub images: Vec<Point>,
    /// `max |d(T(x), T(y)) − d(x, y)|` over sample pairs.
    pub isometry_defect: f64,
}

/// Applies `φ` to the Dirac mass at each sample point. Fails with
/// [`Error::ImageNotDirac`] as soon as an image has more than one atom.
pub fn extract_point_map(phi: &MeasureTransform, space: &SpaceDescriptor, sample: &[Point]) -> Result<PointMapReport> {
    let mut images = Vec::with_capacity(sample.len());
    for x in sample {
        let image = phi.apply(&FinitePointMeasure::dirac(*space, x.clone())?)?;
        if !image.is_dirac() {
            return Err(Error::ImageNotDirac {
                point: x.to_string(),
                atoms: image.len(),
            });
        }
        images.push(image.atoms()[0].clone());
    }
    let mut defect: f64 = 0.0;
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            let before = space.metric(&sample[i], &sample[j]);
            let after = space.metric(&images[i], &images[j]);
            defect = defect.max((after - before).abs());
        }
    }
    Ok(PointMapReport {
        sample: sample.to_vec(),
        images,
        isometry_defect: defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{random_orthogonal, IsometryMap};
    use crate::lab::lift_isometry;
    use crate::sampling::trial_rng;

    fn sample(space: &SpaceDescriptor, n: usize, seed: u64) -> Vec<Point> {
        let mut rng = trial_rng(seed, 0);
        (0..n).map(|_| space.random_point(&mut rng).unwrap()).collect()
    }

    #[test]
    fn orthogonal_lift_is_recovered() {
        let s = SpaceDescriptor::sphere(3).unwrap();
        let q = random_orthogonal(3, &mut trial_rng(8, 1)).unwrap();
        let xs = sample(&s, 30, 8);
        let r = extract_point_map(&lift_isometry(q.clone()), &s, &xs).unwrap();
        assert!(r.isometry_defect <= 1e-9);
        for (x, tx) in xs.iter().zip(&r.images) {
            assert!(s.metric(&q.apply(&s, x).unwrap(), tx) <= 1e-10);
        }
    }

    #[test]
    fn identity_has_no_defect() {
        let s = SpaceDescriptor::sphere(3).unwrap();
        let xs = sample(&s, 10, 9);
        let r = extract_point_map(&lift_isometry(IsometryMap::identity(&s)), &s, &xs).unwrap();
        for (x, tx) in xs.iter().zip(&r.images) {
            assert!(s.metric(x, tx) <= 1e-15);
        }
        assert!(r.isometry_defect <= 1e-15);
    }

    #[test]
    fn collapse_is_flagged() {
        let s = SpaceDescriptor::sphere(3).unwrap();
        let xs = sample(&s, 12, 10);
        let x0 = xs[0].clone();
        let collapse =
            MeasureTransform::from_fn("collapse", move |m| FinitePointMeasure::dirac(*m.space(), x0.clone()));
        let r = extract_point_map(&collapse, &s, &xs).unwrap();
        let max_pair = (0..xs.len())
            .flat_map(|i| (i + 1..xs.len()).map(move |j| (i, j)))
            .map(|(i, j)| s.metric(&xs[i], &xs[j]))
            .fold(0.0, f64::max);
        assert_eq!(r.isometry_defect, max_pair);

        let smear = MeasureTransform::from_fn("smear", |m| {
            let x = m.atoms()[0].clone();
            let y = crate::space::antipode(m.space(), &x)?;
            FinitePointMeasure::uniform(*m.space(), vec![x, y])
        });
        assert!(matches!(
            extract_point_map(&smear, &s, &xs),
            Err(Error::ImageNotDirac { atoms: 2, .. })
        ));
    }
}

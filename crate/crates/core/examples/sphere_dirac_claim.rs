//! On the radius-½ sphere, a measure is a Dirac mass exactly when some
//! other measure is at Wasserstein distance 1 from it.

use otlab::lab::{analytic_sup_bound, verify_dirac_characterization};
use otlab::sampling::{random_measure, trial_rng};
use otlab::{FinitePointMeasure, SpaceDescriptor};

fn main() -> otlab::Result<()> {
    let sphere = SpaceDescriptor::sphere(3)?;
    let mut rng = trial_rng(4, 0);

    let dirac = FinitePointMeasure::dirac(sphere, sphere.random_point(&mut rng)?)?;
    let r = verify_dirac_characterization(&sphere, &dirac, 2.0, 200, &mut rng)?;
    println!("Dirac: W_2 to the antipode = {:?}", r.witness_distance);

    for atoms in [2, 3, 5] {
        let mu = random_measure(&sphere, atoms, &mut rng)?;
        for p in [1.0, 2.0, 3.0] {
            let r = verify_dirac_characterization(&sphere, &mu, p, 200, &mut rng)?;
            println!(
                "{atoms} atoms, p = {p}: largest W_p over {} opponents = {:.6}, bound on W_p^p = {:.6} (pass: {})",
                r.opponents, r.worst_wp, r.analytic_bound, r.pass
            );
            assert_eq!(r.analytic_bound, analytic_sup_bound(&mu, p));
        }
    }
    Ok(())
}

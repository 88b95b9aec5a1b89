//! `U(S)` collects the measures at distance 1 from all of `S`. Under the
//! Kolmogorov–Smirnov metric, Dirac masses are the fixed points of
//! `μ ↦ U(U({μ}))` over all of `P(ℝ)`. A finite universe is only a proxy:
//! a non-Dirac member can look fixed too, for instance when the universe
//! holds no Dirac mass inside the hull of its support.

use otlab::lab::FiniteUniverse;
use otlab::sampling::trial_rng;
use otlab::verify::{bidual_universe, BIDUAL_PROBE};
use otlab::Metric;

fn main() -> otlab::Result<()> {
    let universe = FiniteUniverse::new(bidual_universe(&mut trial_rng(6, 0))?, Metric::KolmogorovSmirnov)?;
    for (i, m) in universe.measures().iter().enumerate() {
        let kind = if m.is_dirac() { "dirac" } else { "mixed" };
        println!(
            "{i:>2} {kind} {:?} fixed point: {}",
            m.real_atoms()?,
            universe.is_fixed_point(i)
        );
    }
    println!("U(U({{0}})) = {:?}", universe.bidual_of(0));
    println!("U(U({{{BIDUAL_PROBE}}})) = {:?}", universe.bidual_of(BIDUAL_PROBE));
    Ok(())
}

//! Exact optimal transport and probability metrics for finitely supported
//! measures, with constructors for measure-space isometries and checks of
//! their Dirac-mass behaviour.
//!
//! The main entry points are [`wasserstein`] and [`solve_transport`] (an
//! exact network simplex with dual certificates), the distances in
//! [`metrics`], and the isometry constructors in [`lab`]. Seeded
//! verification suites live in [`verify`].

pub mod cli;
pub mod error;
pub mod isometry;
pub mod json;
pub mod lab;
pub mod measure;
pub mod metrics;
pub mod sampling;
pub mod space;
pub mod transport;
pub mod verify;

pub use error::{Error, Result};
pub use isometry::{random_isometry, random_orthogonal, IsometryMap, MonotoneMap};
pub use measure::{canonicalize, coupling_cost, product_coupling, Coupling, FinitePointMeasure};
pub use metrics::{
    cdf_of, ks_distance, kuiper_distance, levy_distance, levy_prokhorov_distance, tv_distance, w1_cdf, Metric, StepCdf,
};
pub use space::{antipode, Point, SpaceDescriptor, SpaceKind};
pub use transport::{cost_matrix, oracle_transport, solve_transport, wasserstein, TransportResult};

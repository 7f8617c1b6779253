//! Exact certification toolkit for the surface `Q(a1, a2, a3) = 0` inside the
//! cube `(0, 1/2)^3`, together with a simulator for the normalized Ricci flow
//! system whose degenerate equilibria that surface describes.

pub mod census;
pub mod error;
pub mod flow;
pub mod poly;
pub mod positivity;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod sampling;
pub mod surface;
pub mod union_find;
pub mod verify;

pub use census::{cube_census, locate_component, segment_root_count, ComponentLabeling, GridSpec};
pub use error::{Error, Result};
pub use flow::{
    degeneracy_scan, find_equilibrium, integrate, jacobian_spectrum, vector_field, MetricState, ScanResult, Spectrum,
    Termination, TrajectoryRecord, WallachParams,
};
pub use poly::{Ring, UniPoly};
pub use positivity::{certify_f_nonvanishing, CertOutcome, Certificate};
pub use rational::{parse_rational, rat, Rational};
pub use resultant::{discriminant, resultant};
pub use roots::{
    isolate_roots, multiplicity_of_root, refine_root, square_free_part, sturm_count, EndpointPolicy, IsolatingInterval,
    SturmChain,
};
pub use sampling::{omega_connectivity, sample_omega, Connectivity, OmegaSampleGraph};
pub use surface::{build_p, classify_region, count_unit_roots, eval_q, CubePoint, RayParams, RegionK};
pub use verify::{run_suite, Check, Suite, SuiteReport, Verdict};

/// Version string used to key cached results.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hash of this crate's sources at build time. Changes whenever the code
/// that produces cached results changes.
pub const SOURCE_HASH: &str = env!("OMEGA_CORE_SOURCE_HASH");

//! The orthoset `P(H)` of rays of a Hermitian space, and finite checks of
//! its axioms and of adjointness for maps between such orthosets. Universal
//! statements are tested over seeded [`ProbeSet`]s.

mod checks;
mod fastperp;
mod probes;
mod ray;
mod raymap;

pub use checks::{
    check_axioms, continuity_witness, dacey_witness, frechet_check, frechet_separator,
    is_dacey_witness, is_linearity_witness, linearity_witness, ray_map_rank, verify_adjoint_pair,
};
pub use probes::{random_vector, ProbeSet, ProbeSpec, PROBE_BOUND};
pub use ray::{perp_closure, ray_of, ray_perp, Ray};
pub use raymap::{OracleFn, RayAction, RayMap};

pub(crate) use fastperp::PerpTable;

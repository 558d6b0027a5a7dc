//! Finite-dimensional Hermitian spaces over the supported *-sfields and the
//! maps between them.

mod map;
mod partial;
mod space;
mod subspace;
mod vector;

pub use map::SemilinearMap;
pub use partial::{generalized_inverse, make_partial_isometry, PartialIsometryDescriptor, SubspaceMap};
pub use space::HermitianSpace;
pub use subspace::{raw_subspace_from_json, Projector, Subspace};
pub use vector::Vector;

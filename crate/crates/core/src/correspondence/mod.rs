//! From semilinear maps to ray maps and back: inducing, Piziak's scalar,
//! scalar transport, coordinatization of ray maps of rank at least 3 and
//! the factorization of partial orthometries.

mod coordinatize;
mod induce;
mod partial;
mod transport;

pub use coordinatize::{
    coordinatize, fix_subspace_normalize, wigner_reconstruct, CoordinatizationResult, WignerResult,
};
pub use induce::{induce, piziak_lambda, scalar_ratio};
pub use partial::{
    decompose_partial_orthometry, partial_wigner, PartialOrthometryDecomposition,
    PartialWignerResult, SubHermitian,
};
pub use transport::{
    check_tau, transport_linear, transport_partial, transport_unitary, transported_involution,
    TransportResult,
};

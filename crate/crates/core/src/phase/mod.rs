//! The phase model: bosonic sites `0..=M`, the algebraic Bethe ansatz and
//! the scalar product with its boundary correlators.

mod correlator;
mod fock;
mod limit;
mod rtt;
mod scalar;

pub use correlator::{
    boundary_correlator, insertion_state, recursion_sides, skew_conj_state, skew_state, verify_recursion, Correlator,
    Evaluation, Recursion,
};
pub use fock::{
    apply_b_string, apply_c_string, apply_local_l, build_conj_state, build_state, monodromy_apply, pairing, spectral,
    Corner, FockState, StateVector,
};
pub use limit::{limit_correspondence, limit_sides, restricted_context, restricted_scalar_product_check, LimitKind};
pub use rtt::verify_rtt;
pub use scalar::{n_point_admissible, scalar_product, single_det_form, vandermonde_squares, ScalarMethod, SingleDet};

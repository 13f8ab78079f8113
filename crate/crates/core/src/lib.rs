//! Exact algebra for the finite two-dimensional Toda hierarchy and the
//! phase model.
//!
//! Everything here works over the rationals with no floating point. The
//! modules build on each other bottom-up:
//!
//! * [`algebra`]: rationals, Laurent polynomials, determinants.
//! * [`combinatorics`]: partitions, tableaux, boxed plane partitions and
//!   non-crossing lattice paths, with the bijections between them.
//! * [`symfunc`]: `h_k`, `p_k`, one-row character polynomials, Schur
//!   polynomials and the Miwa substitution.
//! * [`toda`]: tau-functions, wave-matrices and their identities.
//! * [`phase`]: Fock space, the monodromy matrix, state vectors, scalar
//!   products and boundary correlators.
//! * [`suite`]: batteries of checks with deterministic reports.
//!
//! ```
//! use phase_toda::prelude::*;
//!
//! let x = MultiPoly::var("x");
//! let y = MultiPoly::var("y");
//! let lhs = &(&x + &y) * &(&x - &y);
//! assert_eq!(lhs.to_string(), "x^2 - y^2");
//! ```

pub mod algebra;
pub mod combinatorics;
mod error;
pub mod phase;
pub mod suite;
pub mod symfunc;
pub mod toda;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::algebra::{MultiPoly, Rational, RingMatrix, Var};
    pub use crate::combinatorics::{Partition, SkewShape};
    pub use crate::{Error, Result};
}

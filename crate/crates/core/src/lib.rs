//! Numerical-semigroup invariants and the stabilization point `s_m` of the
//! Feng-Rao order bound.
//!
//! The crate computes `nu(s_i)` and `s_m` by brute force, predicts `s_m` from
//! closed-form results phrased in the invariants `e, c, d, c', d', l, s~, t`,
//! and checks the two against each other over exhaustive populations.

pub mod families;
pub mod harness;
pub mod invariants;
pub mod nu;
pub mod predict;
pub mod relations;
pub mod semigroup;

pub use invariants::{Flags, InvariantRecord};
pub use nu::{EtaDecomposition, NuTable};
pub use predict::{Prediction, PredictionKind};
pub use semigroup::{Semigroup, SemigroupError, SemigroupSpec};

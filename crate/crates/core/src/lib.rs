//! Weyl representations of the canonical commutation relations over finite
//! abelian groups, generalized coherent states, Husimi functions and the
//! Wehrl entropy.
//!
//! A group `G = Z_{n_1} × … × Z_{n_k}` acts on `ℂ^|G|` through the Weyl
//! operators `(W(g,λ)f)(h) = λ(h) f(h − g)`. For any unit fiducial `φ` the
//! vectors `|z⟩ = W(z)φ`, `z ∈ G × Ĝ`, weighted by `1/|G|`, resolve the
//! identity. When `φ` is the normalized indicator of a subgroup `H`, the
//! frame splits into `|G|` orthonormal cosets of `K = H × A(Ĝ, H)` and the
//! Wehrl entropy is bounded below by 0 with equality exactly on coherent
//! states.

pub mod cli;
pub mod error;
pub(crate) mod fourier;
pub mod frame;
pub mod group;
pub mod husimi;
pub mod io;
pub mod minimizer;
pub mod phase;
pub mod random;
pub mod state;
pub mod verify;
pub mod weyl;

pub use error::{Result, WehrlError};
pub use frame::CoherentFrame;
pub use group::{
    Character, GroupDescriptor, GroupElement, PhaseSpacePoint, PhaseSubgroup, Subgroup,
};
pub use husimi::{EntropyReport, HusimiTable, LogBase};
pub use minimizer::{MinimizerConfig, MinimizerResult};
pub use phase::Phase;
pub use state::{DensityMatrix, StateVector, Subsystem};

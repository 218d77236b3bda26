//! Weak saturation of tensor products of cliques.
//!
//! The crate evaluates the closed forms for colored and uncolored weak
//! saturation numbers of `K[S;n]` against pattern families `K[S;R]`,
//! runs bootstrap percolation and brute-force minimum-saturation
//! oracles, builds the two extremal constructions together with their
//! addition orders, and certifies lower bounds exactly through the rank
//! of a subspace of the exterior algebra over the rationals.
//!
//! Module map:
//!
//! * [`model`]: vertex universes, edge masks, hosts and colored copies.
//! * [`formula`]: closed forms, inclusion–exclusion and the
//!   colored-to-uncolored reduction.
//! * [`percolation`]: closures, trace verification, brute-force oracles.
//! * [`construct`]: the minimum-`r` and maximum-`s` constructions.
//! * [`exterior`]: exact exterior algebra and colorful generic bases.
//! * [`linalg`]: fraction-free rank and determinants.
//! * [`certificate`]: the rank certificate and its report.
//! * [`grid`]: parameter grids for sweeps.
//! * [`cli`]: the command-line front end.

pub mod model;
pub mod formula;
pub mod percolation;
pub mod construct;
pub mod exterior;
pub mod linalg;
pub mod certificate;
pub mod grid;
pub mod cli;
mod serde_util;

pub use model::{EdgeMask, ParamFamily, ParamVec, VecFamily};

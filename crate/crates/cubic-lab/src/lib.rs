//! Exact Dirichlet-character workbench.
//!
//! The crate builds unit groups `(Z/qZ)*` with discrete-log tables, evaluates
//! Dirichlet characters as exact roots of unity, and layers analytic machinery
//! on top: character-sum maxima and their truncated Fourier expansions,
//! pretentious-distance twist fitting, Dirichlet L-values at `1 + it`, seeded
//! random completely multiplicative models, and a set of brute-force oracles
//! that every closed-form identity is checked against.
//!
//! Floating point enters only at analytic sums; character values, atom
//! probabilities and vanishing checks are carried as exact rational angles.
//!
//! Start with [`characters::enumerate_cubic_primitive`] and the `examples/`
//! directory; each example exercises one subsystem end to end.

pub mod characters;
pub mod charsum;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod lfunctions;
pub mod oracles;
pub mod output;
pub mod pretentious;
pub mod random_model;
pub mod sieve;

pub use characters::{CharValue, DirichletCharacter, Parity, ResidueGroup};
pub use charsum::{CharSumProfile, GridMax, Side, Weight};
pub use error::{Error, Result};

/// The constant `3*sqrt(3)/(2*pi)` governing extremal growth of odd-order
/// character sums.
pub const BETA: f64 = 0.8269933431326881;

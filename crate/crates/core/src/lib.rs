//! Exact and asymptotic enumeration of G₂ invariant tensors and the
//! constrained triangulations they are built from.
//!
//! The crate is organised by capability:
//!
//! - [`series`]: exact truncated power series, Lagrange inversion and its
//!   inverse, the tree functional equation `B(x) = A(x B(x))`.
//! - [`generator`]: tree generators `A` given as coefficient lists, rational
//!   functions or built-in closed forms.
//! - [`ball`]: arbitrary-precision reals with a certified error radius.
//! - [`walk`]: the sequence `b_n` from the character-theory coefficient
//!   formula, a Weyl-chamber walk count and a contour quadrature.
//! - [`hyper`]: gamma, digamma, `2F1` and the hypergeometric closed form of
//!   `B`, plus certified constants.
//! - [`sing`]: singular expansions of `B`, `ψ` and `A`, the rational `κ_i`
//!   and asymptotic evaluators.
//! - [`criterion`]: the Meir–Moon analyzer and sharpness classifier.
//! - [`cli`]: table and report emission used by the `g2trees` binary.

pub mod ball;
pub mod cli;
pub mod criterion;
pub mod error;
pub mod generator;
pub mod hyper;
pub mod series;
pub mod sing;
pub mod walk;

pub use ball::PrecReal;
pub use error::{Error, Result};
pub use series::ExactSeries;

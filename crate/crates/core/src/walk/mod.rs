//! The invariant-dimension sequence `b_n = dim Inv_{G₂}(V(λ₁)^{⊗n})`.
//!
//! Three independent routes are provided:
//!
//! - [`bn_exact`]: the coefficient of `x^n y^n` in the Laurent polynomial
//!   `W·M^n`, by iterated exact multiplication on a pruned grid.
//! - [`b_sequence`] and [`bn_scaled`]: a walk count in the dominant Weyl
//!   chamber, exact or divided by `7` at every step.
//! - [`saddle_quadrature`]: the Cauchy integral over the torus, evaluated with
//!   a periodic trapezoid rule.

mod chamber;
mod laurent;
mod quadrature;

pub use chamber::{b_sequence, bn_scaled, bn_scaled_table, scaled_grid, ScaledGrid};
pub use laurent::{bn_exact, bn_exact_with_limit, LaurentGrid, DEFAULT_EXACT_LIMIT, M_TERMS, W_TERMS};
pub use quadrature::{saddle_quadrature, trapezoid, Quadrature};

//! Singular expansions at the dominant singularities of `B`, `ψ` and `A`,
//! and the asymptotic formulas for `b_n` and `a_n` derived from them.

pub mod expand;
pub mod kappa;
pub mod psi;
pub mod sym;

pub use expand::{expand_fg, SingExpansionB, MAX_ORDER};
pub use kappa::{asym_bn, asym_bn_scaled, kappa};
pub use psi::{asym_an, bootstrap_psi, sing_a, AExpansion, PsiExpansion};
pub use sym::SymRational;

//! Special functions at rational parameters: gamma, digamma and the Gauss
//! hypergeometric function, plus the closed form of the walk generating
//! function built from them.

pub mod gamma;
pub mod hyp2f1;

pub use gamma::{bernoulli, digamma_prec, digamma_rational, gamma_prec, gamma_rational};
pub use hyp2f1::{connection, direct_series, gauss_at_one, hyp2f1, hyp2f1_prec, ConnectionParts};
pub mod closed_form;

pub use closed_form::{eval_b, BEvaluator, Route};
pub use hyp2f1::ConnectionConstants;
pub mod constants;

pub use constants::{constants, constants_with, ConstantRecord};

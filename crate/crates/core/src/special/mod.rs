//! Gamma-family primitives and the arithmetic-geometric mean elliptic integrals.
//!
//! Everything here is a pure function of its arguments. The AGM routines are
//! deliberately independent of the hypergeometric series so they can serve as
//! an oracle for it.

mod elliptic;
mod gamma;

pub use elliptic::{agm, agm_elliptic_e, agm_elliptic_k};
pub use gamma::{beta, digamma, gamma, gamma_ratio, ln_gamma, rgamma, GammaArg, POLE_GUARD};

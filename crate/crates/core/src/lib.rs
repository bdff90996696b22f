//! Gauss hypergeometric evaluation and numerical certification of sharp
//! comparison inequalities between zero-balanced-type ₂F₁ functions of the
//! form F(a−1, b; a+b; 1−x^c) and F(a−1−δ, b+δ; a+b; 1−x^d).
//!
//! * [`special`]: gamma, beta, digamma and AGM elliptic integrals.
//! * [`hyp2f1`]: F(a,b;c;x) on [0,1) with connection formulas near 1.
//! * [`theory`]: derived parameters, the sharp threshold δ₁, the bound
//!   constants C₁…C₈ and the auxiliary functions used by the proofs.
//! * [`verify`]: grid-based checks of every monotonicity claim, inequality
//!   and lemma, and a deterministic (optionally parallel) suite runner.

pub mod error;
pub mod hyp2f1;
pub mod special;
pub mod sum;
pub mod theory;
pub mod verify;

pub use error::{Error, Result};
pub use hyp2f1::{HypParams, SeriesConfig};

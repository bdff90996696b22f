//! Closed-form quantities: derived parameters, admissibility, the sharp
//! threshold δ₁, envelope constants and the auxiliary functions of the proof.

mod bounds;
mod lemmas;
mod params;

pub use bounds::{c1, c2, c3, c4, c5, c6, c7, c8, delta1, threshold, ThresholdForm};
pub use lemmas::{
    a_const, a_const_printed, f1, f2, f3, f4, f4_prime, f4_variant, f4_variant_prime, f5, g, g1, g1_left, g_stationary,
    g_x_max, lemma_quadratic, q, q1, q_difference_factor, q_sequence,
};
pub(crate) use lemmas::g_unchecked;
pub use params::{
    condition_case, condition_case_ab, derive_params, ConditionCase, DerivedParams, ExponentPair,
    ParamPair,
};

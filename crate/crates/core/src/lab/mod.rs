//! Numerical experiments around the structure of `Aut(G2)`.
//!
//! The pieces mirror how one shows that an automorphism fixing the origin is
//! a rotation: normalize by a rotation, look at the commutator
//! `G = F^{-1} ∘ R_{1/tau} ∘ F ∘ R_tau` at the origin, bound the growth of
//! its iterates, then read off the weighted homogeneous form `(s, p + C s^2)`
//! and check `C` on the royal variety.

mod candidate;
mod commutator;
mod pipeline;

pub use candidate::{CandidateMap, DEFAULT_DEGREE_CAP};
pub use commutator::{
    cauchy_bound_check, commutator_jacobian, commutator_report, iterate_commutator, BoundCheck,
    CommutatorReport, SCHWARZ_BOUND,
};
pub use pipeline::{
    cartan_residual, certify, force_c_zero, force_c_zero_on, normalize_at_origin, orbit_sample,
    rotation_commutation_residual, weighted_form_extract, Certificate, Normalization, WeightedForm,
};

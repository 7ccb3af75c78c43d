//! The symmetrized bidisc `G2 = {(l1 + l2, l1 * l2) : |l1|, |l2| < 1}`, its
//! automorphism group, and a set of numerical experiments around the
//! structure of that group.
//!
//! * [`moebius`]: automorphisms of the unit disc in canonical `(tau, a)` form.
//! * [`geometry`]: the symmetrization map, stable root extraction and
//!   membership tests for the disc, `G2` and the royal variety.
//! * [`group`]: automorphisms of `G2` lifted from disc automorphisms.
//! * [`lab`]: polynomial candidate maps, commutator Jacobians and the
//!   normalization pipeline that reduces any group element to the identity.
//! * [`cli`]: the command line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod group;
pub mod json;
pub mod lab;
pub mod moebius;
pub mod sampling;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use geometry::{
    desymmetrize, in_disc, in_g2, in_sigma2, royal_param, symmetrize, MembershipVerdict, Region,
    RootPair, SymPoint, DEFAULT_TOL,
};
pub use group::{G2Automorphism, Jacobian2, JacobianMode};
pub use lab::{CandidateMap, CommutatorReport};
pub use moebius::DiscAutomorphism;

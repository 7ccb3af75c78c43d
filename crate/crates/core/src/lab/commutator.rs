use num_complex::Complex64;
use serde::Serialize;

use super::candidate::CandidateMap;
use crate::error::{Error, Result};
use crate::group::Jacobian2;
use crate::json;
use crate::moebius::TAU_TOL;

/// Explicit constant in `|n b (tau - 1)| <= const`.
///
/// `p -> S(0, p)` maps the unit disc into `{|S| < 2}` and vanishes at zero
/// (every `(0, p)` with `|p| < 1` has roots of modulus `|p|^(1/2)`), so by
/// the Schwarz lemma `|dS/dp (0, 0)| <= 2`. The same holds for every iterate
/// of the commutator, which is again a self-map of `G2` fixing the origin.
pub const SCHWARZ_BOUND: f64 = 2.0;

/// Below this `|b| |tau - 1|` counts as no growth at all.
const GROWTH_FLOOR: f64 = 1e-12;

const NORMALIZATION_TOL: f64 = 1e-8;
const SINGULAR_TOL: f64 = 1e-12;

fn unit(tau: Complex64) -> Result<Complex64> {
    let n = tau.norm();
    if !n.is_finite() || (n - 1.0).abs() > TAU_TOL {
        return Err(Error::ParameterOutOfDomain(format!(
            "|tau| = {n} is not within {TAU_TOL:e} of 1"
        )));
    }
    Ok(tau / n)
}

/// Origin Jacobian of `G = F^{-1} ∘ R_{1/tau} ∘ F ∘ R_tau` given `J = F'(0, 0)`,
/// by the chain rule: `J^{-1} diag(1/tau, 1/tau^2) J diag(tau, tau^2)`.
pub fn commutator_jacobian(jac: &Jacobian2, tau: Complex64) -> Result<Jacobian2> {
    let tau = unit(tau)?;
    let det = jac.det().norm();
    if !(det > SINGULAR_TOL) {
        return Err(Error::SingularJacobian(det));
    }
    if (jac.m11 - 1.0).norm() > NORMALIZATION_TOL || jac.m21.norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(format!(
            "expected [[1, b], [0, d]], got m11 = {}, m21 = {}",
            jac.m11, jac.m21
        )));
    }
    let inv = jac.inverse().ok_or(Error::SingularJacobian(det))?;
    let tau_inv = tau.inv();
    let back = Jacobian2::diag(tau_inv, tau_inv * tau_inv);
    let fwd = Jacobian2::diag(tau, tau * tau);
    Ok(inv.mul(&back).mul(jac).mul(&fwd))
}

/// Origin Jacobian of the `n`-th iterate of the commutator.
pub fn iterate_commutator(jac: &Jacobian2, tau: Complex64, n: u64) -> Result<Jacobian2> {
    if n == 0 {
        return Err(Error::PreconditionUnmet(
            "iterate count must be positive".into(),
        ));
    }
    Ok(commutator_jacobian(jac, tau)?.pow(n))
}

/// Outcome of comparing `n |b| |tau - 1|` against [`SCHWARZ_BOUND`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    /// Smallest `n` with `n |b| |tau - 1| > bound`; `None` when there is no growth.
    pub n_star: Option<u64>,
    pub bound: f64,
}

pub fn cauchy_bound_check(b: Complex64, tau: Complex64) -> BoundCheck {
    let growth = b.norm() * (tau - 1.0).norm();
    let bound = SCHWARZ_BOUND;
    if !(growth > GROWTH_FLOOR) {
        return BoundCheck {
            n_star: None,
            bound,
        };
    }
    let guess = (bound / growth).floor();
    let mut n = if guess >= u64::MAX as f64 {
        u64::MAX
    } else {
        guess as u64 + 1
    };
    // Correct for rounding in the division.
    while n > 1 && (n - 1) as f64 * growth > bound {
        n -= 1;
    }
    while n < u64::MAX && !(n as f64 * growth > bound) {
        n += 1;
    }
    BoundCheck {
        n_star: Some(n),
        bound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutatorReport {
    #[serde(with = "json::complex")]
    pub tau: Complex64,
    #[serde(with = "json::complex")]
    pub b: Complex64,
    #[serde(rename = "jacobian_of_G")]
    pub jacobian_of_g: Jacobian2,
    pub n_star: Option<u64>,
    pub bound: f64,
}

/// Runs the commutator experiment on a normalized candidate
/// (origin Jacobian `[[1, b], [0, d]]`).
pub fn commutator_report(candidate: &CandidateMap, tau: Complex64) -> Result<CommutatorReport> {
    let tau = unit(tau)?;
    let jac = candidate.origin_jacobian();
    let jacobian_of_g = commutator_jacobian(&jac, tau)?;
    let check = cauchy_bound_check(jac.m12, tau);
    Ok(CommutatorReport {
        tau,
        b: jac.m12,
        jacobian_of_g,
        n_star: check.n_star,
        bound: check.bound,
    })
}

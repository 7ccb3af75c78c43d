//! Automorphisms of the unit disc.
//!
//! Every holomorphic automorphism of the unit disc can be written uniquely as
//!
//! ```text
//! h(l) = tau * (l - a) / (1 - conj(a) * l),   |tau| = 1, |a| < 1
//! ```
//!
//! so `(tau, a)` is used as the canonical representation. Composition goes
//! through the projective matrix `[[tau, -tau a], [-conj(a), 1]]` and is
//! renormalized back to canonical form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;

/// `|a|` must stay below `1 - A_MARGIN`.
pub const A_MARGIN: f64 = 1e-12;
/// Allowed deviation of `|tau|` from one before renormalization.
pub const TAU_TOL: f64 = 1e-6;
/// Denominators below this magnitude are treated as the pole.
pub const POLE_TOL: f64 = 1e-14;

/// `l -> tau (l - a) / (1 - conj(a) l)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDisc")]
pub struct DiscAutomorphism {
    #[serde(with = "json::complex")]
    tau: Complex64,
    #[serde(with = "json::complex")]
    a: Complex64,
}

#[derive(Deserialize)]
struct RawDisc {
    #[serde(with = "json::complex")]
    tau: Complex64,
    #[serde(with = "json::complex")]
    a: Complex64,
}

impl TryFrom<RawDisc> for DiscAutomorphism {
    type Error = Error;

    fn try_from(raw: RawDisc) -> Result<Self> {
        DiscAutomorphism::new(raw.tau, raw.a)
    }
}

impl Default for DiscAutomorphism {
    fn default() -> Self {
        Self::identity()
    }
}

impl DiscAutomorphism {
    /// Builds `tau (l - a) / (1 - conj(a) l)`, renormalizing `tau` to unit modulus.
    pub fn new(tau: Complex64, a: Complex64) -> Result<Self> {
        if !(tau.is_finite() && a.is_finite()) {
            return Err(Error::ParameterOutOfDomain(format!(
                "non-finite parameters tau = {tau}, a = {a}"
            )));
        }
        let tau_norm = tau.norm();
        if (tau_norm - 1.0).abs() > TAU_TOL {
            return Err(Error::ParameterOutOfDomain(format!(
                "|tau| = {tau_norm} is not within {TAU_TOL:e} of 1"
            )));
        }
        let a_norm = a.norm();
        if a_norm >= 1.0 - A_MARGIN {
            return Err(Error::ParameterOutOfDomain(format!(
                "|a| = {a_norm} is not inside the unit disc"
            )));
        }
        Ok(Self {
            tau: tau / tau_norm,
            a,
        })
    }

    pub fn identity() -> Self {
        Self {
            tau: Complex64::new(1.0, 0.0),
            a: Complex64::new(0.0, 0.0),
        }
    }

    /// The rotation `l -> tau l`.
    pub fn rotation(tau: Complex64) -> Result<Self> {
        Self::new(tau, Complex64::new(0.0, 0.0))
    }

    /// The Blaschke factor `(l - a) / (1 - conj(a) l)`, sending `a` to zero.
    pub fn blaschke(a: Complex64) -> Result<Self> {
        Self::new(Complex64::new(1.0, 0.0), a)
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// The zero of the map, `h^{-1}(0)`.
    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn is_rotation(&self, tol: f64) -> bool {
        self.a.norm() <= tol
    }

    pub fn apply(&self, lambda: Complex64) -> Result<Complex64> {
        let den = Complex64::new(1.0, 0.0) - self.a.conj() * lambda;
        let den_norm = den.norm();
        if !(den_norm > POLE_TOL) {
            return Err(Error::PoleEncountered(den_norm));
        }
        Ok(self.tau * (lambda - self.a) / den)
    }

    /// Projective matrix representative `[[tau, -tau a], [-conj(a), 1]]`.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let one = Complex64::new(1.0, 0.0);
        [[self.tau, -self.tau * self.a], [-self.a.conj(), one]]
    }

    /// Canonical form of the Möbius map with matrix `[[A, B], [C, D]]`.
    ///
    /// Only valid for matrices representing a disc automorphism, for which
    /// `|D| > |C|` and in particular `D != 0`.
    fn from_matrix(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let [[a11, _], [a21, a22]] = m;
        let tau = a11 / a22;
        let a = -(a21 / a22).conj();
        Self::new(tau, a)
    }

    /// `self ∘ other`, i.e. `l -> self(other(l))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::from_matrix(mat_mul(self.matrix(), other.matrix()))
    }

    /// The inverse map `(conj(tau), -tau a)`.
    pub fn invert(&self) -> Self {
        Self {
            tau: self.tau.conj(),
            a: -self.tau * self.a,
        }
    }

    /// Parameter-wise comparison. Canonical forms are unique, so this agrees
    /// with pointwise comparison on the disc up to a comparable tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.tau - other.tau).norm() <= tol && (self.a - other.a).norm() <= tol
    }
}

pub(crate) fn mat_mul(x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

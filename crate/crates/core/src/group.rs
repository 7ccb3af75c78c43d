//! Automorphisms of the symmetrized bidisc.
//!
//! A disc automorphism `h` acts on `G2` by acting on both roots:
//! `H_h(pi(l1, l2)) = pi(h(l1), h(l2))`. Every automorphism of `G2` is of
//! this form, so [`G2Automorphism`] is just a wrapper around the disc map.
//!
//! Two evaluation routes are provided. [`G2Automorphism::apply`] uses the
//! closed rational form in `(s, p)` coordinates; for `h = tau * h_a`
//!
//! ```text
//! D = 1 - conj(a) s + conj(a)^2 p              = (1 - conj(a) l1)(1 - conj(a) l2)
//! S = tau   ((1 + |a|^2) s - 2 conj(a) p - 2a) / D
//! P = tau^2 (p - a s + a^2) / D
//! ```
//!
//! [`G2Automorphism::apply_via_roots`] goes through root extraction and is
//! kept as the definitional cross-check.

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{desymmetrize, royal_param, symmetrize, SymPoint};
use crate::json::ComplexRecord;
use crate::moebius::{mat_mul, DiscAutomorphism, POLE_TOL};

/// Default central-difference step for [`G2Automorphism::jacobian_at`].
pub const FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct G2Automorphism {
    h: DiscAutomorphism,
}

/// How [`G2Automorphism::jacobian_at_with`] differentiates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JacobianMode {
    /// Central differences in `s` and `p` with the given real step.
    FiniteDifference(f64),
    /// Derivative of the closed rational form.
    Analytic,
}

impl Default for JacobianMode {
    fn default() -> Self {
        JacobianMode::FiniteDifference(FD_STEP)
    }
}

impl G2Automorphism {
    pub fn lift(h: DiscAutomorphism) -> Self {
        Self { h }
    }

    pub fn identity() -> Self {
        Self::lift(DiscAutomorphism::identity())
    }

    /// `R_tau(s, p) = (tau s, tau^2 p)`.
    pub fn rotation(tau: Complex64) -> Result<Self> {
        DiscAutomorphism::rotation(tau).map(Self::lift)
    }

    /// The automorphism `H_{h_a}` sending the royal point `(2a, a^2)` to the
    /// origin.
    pub fn transport_to_origin(pt: SymPoint, tol: f64) -> Result<Self> {
        let a = royal_param(pt, tol)?;
        DiscAutomorphism::blaschke(a).map(Self::lift)
    }

    pub fn disc(&self) -> &DiscAutomorphism {
        &self.h
    }

    /// Closed rational form. Defined wherever the denominator is
    /// nondegenerate, including slightly outside `G2`.
    pub fn apply(&self, pt: SymPoint) -> Result<SymPoint> {
        let (tau, a) = (self.h.tau(), self.h.a());
        let tau2 = tau * tau;
        if a == Complex64::new(0.0, 0.0) {
            return Ok(SymPoint::new(tau * pt.s, tau2 * pt.p));
        }
        let ac = a.conj();
        let den = Complex64::new(1.0, 0.0) - ac * pt.s + ac * ac * pt.p;
        let den_norm = den.norm();
        if !(den_norm >= POLE_TOL) {
            return Err(Error::DenominatorDegenerate(den_norm));
        }
        let s_num = (1.0 + a.norm_sqr()) * pt.s - 2.0 * ac * pt.p - 2.0 * a;
        let p_num = pt.p - a * pt.s + a * a;
        Ok(SymPoint::new(tau * s_num / den, tau2 * p_num / den))
    }

    /// Extract roots, move each by `h`, symmetrize.
    pub fn apply_via_roots(&self, pt: SymPoint) -> Result<SymPoint> {
        let roots = desymmetrize(pt);
        Ok(symmetrize(
            self.h.apply(roots.first())?,
            self.h.apply(roots.second())?,
        ))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.h.compose(&other.h).map(Self::lift)
    }

    pub fn invert(&self) -> Self {
        Self::lift(self.h.invert())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.h.approx_eq(&other.h, tol)
    }

    /// `H(0, 0) = (2c, c^2)` with `c = h(0) = -tau a`.
    pub fn image_of_origin(&self) -> SymPoint {
        let c = -self.h.tau() * self.h.a();
        symmetrize(c, c)
    }

    /// Complex Jacobian by central finite differences with step [`FD_STEP`].
    pub fn jacobian_at(&self, pt: SymPoint) -> Result<Jacobian2> {
        self.jacobian_at_with(pt, JacobianMode::default())
    }

    pub fn jacobian_at_with(&self, pt: SymPoint, mode: JacobianMode) -> Result<Jacobian2> {
        match mode {
            JacobianMode::FiniteDifference(step) => jacobian_fd(|q| self.apply(q), pt, step),
            JacobianMode::Analytic => self.jacobian_analytic(pt),
        }
    }

    fn jacobian_analytic(&self, pt: SymPoint) -> Result<Jacobian2> {
        let (tau, a) = (self.h.tau(), self.h.a());
        let tau2 = tau * tau;
        let ac = a.conj();
        let one = Complex64::new(1.0, 0.0);
        let den = one - ac * pt.s + ac * ac * pt.p;
        let den_norm = den.norm();
        if !(den_norm >= POLE_TOL) {
            return Err(Error::DenominatorDegenerate(den_norm));
        }
        let s_num = (1.0 + a.norm_sqr()) * pt.s - 2.0 * ac * pt.p - 2.0 * a;
        let p_num = pt.p - a * pt.s + a * a;
        // Quotient rule with dD/ds = -conj(a), dD/dp = conj(a)^2.
        let (dd_ds, dd_dp) = (-ac, ac * ac);
        let den2 = den * den;
        let m11 = tau * ((1.0 + a.norm_sqr()) * den - s_num * dd_ds) / den2;
        let m12 = tau * (-2.0 * ac * den - s_num * dd_dp) / den2;
        let m21 = tau2 * (-a * den - p_num * dd_ds) / den2;
        let m22 = tau2 * (den - p_num * dd_dp) / den2;
        Ok(Jacobian2::new(m11, m12, m21, m22))
    }
}

/// Central-difference Jacobian of a holomorphic map `C^2 -> C^2`.
///
/// Holomorphy makes the real-direction difference quotient equal to the
/// complex derivative.
pub fn jacobian_fd<F>(f: F, pt: SymPoint, step: f64) -> Result<Jacobian2>
where
    F: Fn(SymPoint) -> Result<SymPoint>,
{
    let h = Complex64::new(step, 0.0);
    let ds = {
        let fwd = f(SymPoint::new(pt.s + h, pt.p))?;
        let bwd = f(SymPoint::new(pt.s - h, pt.p))?;
        (
            (fwd.s - bwd.s) / (2.0 * step),
            (fwd.p - bwd.p) / (2.0 * step),
        )
    };
    let dp = {
        let fwd = f(SymPoint::new(pt.s, pt.p + h))?;
        let bwd = f(SymPoint::new(pt.s, pt.p - h))?;
        (
            (fwd.s - bwd.s) / (2.0 * step),
            (fwd.p - bwd.p) / (2.0 * step),
        )
    };
    Ok(Jacobian2::new(ds.0, dp.0, ds.1, dp.1))
}

/// A complex 2x2 matrix; rows are the outputs `(S, P)`, columns the inputs
/// `(s, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Jacobian2 {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::new(one, zero, zero, one)
    }

    pub fn diag(x: Complex64, y: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::new(x, zero, zero, y)
    }

    /// `[[1, x], [0, 1]]`
    pub fn unipotent(x: Complex64) -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::new(one, x, zero, one)
    }

    fn rows(&self) -> [[Complex64; 2]; 2] {
        [[self.m11, self.m12], [self.m21, self.m22]]
    }

    fn from_rows(m: [[Complex64; 2]; 2]) -> Self {
        Self::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_rows(mat_mul(self.rows(), other.rows()))
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(Self::new(
            self.m22 / det,
            -self.m12 / det,
            -self.m21 / det,
            self.m11 / det,
        ))
    }

    /// `self^n` by repeated squaring; `n = 0` gives the identity.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.m11 - other.m11,
            self.m12 - other.m12,
            self.m21 - other.m21,
            self.m22 - other.m22,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}

impl Serialize for Jacobian2 {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.rows().map(|r| r.map(ComplexRecord::from));
        let mut seq = ser.serialize_seq(Some(2))?;
        for row in &rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Jacobian2 {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[ComplexRecord; 2]; 2]>::deserialize(de)?;
        Ok(Self::from_rows(rows.map(|r| r.map(Complex64::from))))
    }
}

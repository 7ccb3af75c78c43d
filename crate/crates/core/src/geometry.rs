//! The symmetrization map `pi(l1, l2) = (l1 + l2, l1 l2)`, its inverse, and
//! membership queries for the disc, the symmetrized bidisc and the royal
//! variety `{(2l, l^2)}`.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;

pub const DEFAULT_TOL: f64 = 1e-9;

/// A point `(s, p)` of `C^2`; `s` is the sum and `p` the product coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SymPoint {
    #[serde(with = "json::complex")]
    pub s: Complex64,
    #[serde(with = "json::complex")]
    pub p: Complex64,
}

impl SymPoint {
    pub fn new(s: Complex64, p: Complex64) -> Self {
        Self { s, p }
    }

    pub fn origin() -> Self {
        Self::default()
    }

    /// `max(|s|, |p|)`
    pub fn norm_inf(&self) -> f64 {
        self.s.norm().max(self.p.norm())
    }

    pub fn dist_inf(&self, other: &Self) -> f64 {
        (self.s - other.s).norm().max((self.p - other.p).norm())
    }

    /// Discriminant `s^2 - 4p`; vanishes exactly on the image of the diagonal.
    pub fn discriminant(&self) -> Complex64 {
        self.s * self.s - 4.0 * self.p
    }
}

/// Unordered root pair stored lexicographically by `(re, im)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    first: Complex64,
    second: Complex64,
}

fn lex(x: &Complex64, y: &Complex64) -> Ordering {
    x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
}

impl RootPair {
    pub fn new(x: Complex64, y: Complex64) -> Self {
        if lex(&x, &y) == Ordering::Greater {
            Self {
                first: y,
                second: x,
            }
        } else {
            Self {
                first: x,
                second: y,
            }
        }
    }

    pub fn first(&self) -> Complex64 {
        self.first
    }

    pub fn second(&self) -> Complex64 {
        self.second
    }

    pub fn max_modulus(&self) -> f64 {
        self.first.norm().max(self.second.norm())
    }

    /// Distance between unordered pairs: the better of the two matchings.
    pub fn distance(&self, other: &Self) -> f64 {
        let straight = (self.first - other.first)
            .norm()
            .max((self.second - other.second).norm());
        let crossed = (self.first - other.second)
            .norm()
            .max((self.second - other.first).norm());
        straight.min(crossed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Interior,
    Boundary,
    Exterior,
}

/// Tri-state membership with the signed margin `1 - max |root|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub region: Region,
    pub margin: f64,
}

impl MembershipVerdict {
    fn from_margin(margin: f64, tol: f64) -> Self {
        let region = if margin > tol {
            Region::Interior
        } else if margin < -tol {
            Region::Exterior
        } else {
            Region::Boundary
        };
        Self { region, margin }
    }

    pub fn is_interior(&self) -> bool {
        self.region == Region::Interior
    }
}

pub fn symmetrize(lambda1: Complex64, lambda2: Complex64) -> SymPoint {
    SymPoint::new(lambda1 + lambda2, lambda1 * lambda2)
}

/// Roots of `z^2 - s z + p` without cancellation.
///
/// The square root branch is chosen so that `q = (s + d) / 2` is the root of
/// larger modulus; the other root is `p / q`.
pub fn desymmetrize(pt: SymPoint) -> RootPair {
    let SymPoint { s, p } = pt;
    let mut d = pt.discriminant().sqrt();
    if (s - d).norm() > (s + d).norm() {
        d = -d;
    }
    let q = (s + d) * 0.5;
    if q == Complex64::new(0.0, 0.0) {
        // |s + d| >= |s - d| and both vanish only if s = d = 0, hence p = 0.
        return RootPair::new(q, q);
    }
    RootPair::new(q, p / q)
}

pub fn in_disc(lambda: Complex64, tol: f64) -> MembershipVerdict {
    MembershipVerdict::from_margin(1.0 - lambda.norm(), tol)
}

pub fn in_g2(pt: SymPoint, tol: f64) -> MembershipVerdict {
    MembershipVerdict::from_margin(1.0 - desymmetrize(pt).max_modulus(), tol)
}

/// Whether `pt` lies on the royal variety, with the residual `|s^2 - 4p|`.
pub fn in_sigma2(pt: SymPoint, tol: f64) -> (bool, f64) {
    let residual = pt.discriminant().norm();
    (residual <= tol && pt.s.norm() / 2.0 < 1.0 + tol, residual)
}

/// The parameter `l` of a royal point `(2l, l^2)`.
pub fn royal_param(pt: SymPoint, tol: f64) -> Result<Complex64> {
    let (royal, residual) = in_sigma2(pt, tol);
    if !royal {
        return Err(Error::NotOnRoyalVariety(residual));
    }
    Ok(pt.s / 2.0)
}

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SymPoint;
use crate::group::Jacobian2;
use crate::json;

/// Weighted degree cap `j + 2k <= 4`.
pub const DEFAULT_DEGREE_CAP: u32 = 4;

/// Constant terms below this are treated as zero when sampling a map.
const ORIGIN_TOL: f64 = 1e-12;

/// Nodes per circle for Cauchy-integral coefficient extraction.
const CAUCHY_NODES: usize = 32;
/// Polyradius of the sampling torus.
const CAUCHY_RADIUS: f64 = 0.5;

/// Polynomial map `F = (S, P)` fixing the origin, with monomials `s^j p^k`
/// of weighted degree `j + 2k <= degree_cap`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCandidate", into = "RawCandidate")]
pub struct CandidateMap {
    degree_cap: u32,
    terms: BTreeMap<(u32, u32), (Complex64, Complex64)>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    j: u32,
    k: u32,
    #[serde(rename = "S", with = "json::complex")]
    s: Complex64,
    #[serde(rename = "P", with = "json::complex")]
    p: Complex64,
}

#[derive(Serialize, Deserialize)]
struct RawCandidate {
    degree_cap: u32,
    terms: Vec<RawTerm>,
}

impl TryFrom<RawCandidate> for CandidateMap {
    type Error = Error;

    fn try_from(raw: RawCandidate) -> Result<Self> {
        let mut map = CandidateMap::new(raw.degree_cap);
        for t in raw.terms {
            if map.terms.contains_key(&(t.j, t.k)) {
                return Err(Error::InvalidCandidate(format!(
                    "duplicate monomial ({}, {})",
                    t.j, t.k
                )));
            }
            map.add_term(t.j, t.k, t.s, t.p)?;
        }
        Ok(map)
    }
}

impl From<CandidateMap> for RawCandidate {
    fn from(map: CandidateMap) -> Self {
        RawCandidate {
            degree_cap: map.degree_cap,
            terms: map
                .terms
                .iter()
                .map(|(&(j, k), &(s, p))| RawTerm { j, k, s, p })
                .collect(),
        }
    }
}

impl CandidateMap {
    /// The zero map with the given weighted degree cap.
    pub fn new(degree_cap: u32) -> Self {
        Self {
            degree_cap,
            terms: BTreeMap::new(),
        }
    }

    /// `(s, p)`
    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        let mut map = Self::new(DEFAULT_DEGREE_CAP);
        map.terms.insert((1, 0), (one, zero));
        map.terms.insert((0, 1), (zero, one));
        map
    }

    /// `(alpha s, d p + c s^2)`
    pub fn weighted(alpha: Complex64, d: Complex64, c: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let mut map = Self::new(DEFAULT_DEGREE_CAP);
        map.terms.insert((1, 0), (alpha, zero));
        map.terms.insert((0, 1), (zero, d));
        map.terms.insert((2, 0), (zero, c));
        map
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Adds `(s_coef, p_coef) s^j p^k` to the map.
    pub fn add_term(&mut self, j: u32, k: u32, s_coef: Complex64, p_coef: Complex64) -> Result<()> {
        if j + 2 * k > self.degree_cap {
            return Err(Error::InvalidCandidate(format!(
                "monomial ({j}, {k}) exceeds weighted degree cap {}",
                self.degree_cap
            )));
        }
        if (j, k) == (0, 0) && (s_coef.norm() > 0.0 || p_coef.norm() > 0.0) {
            return Err(Error::InvalidCandidate(
                "nonzero constant term: the map must fix the origin".into(),
            ));
        }
        if (j, k) == (0, 0) {
            return Ok(());
        }
        let entry = self
            .terms
            .entry((j, k))
            .or_insert((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
        entry.0 += s_coef;
        entry.1 += p_coef;
        Ok(())
    }

    pub fn with_term(
        mut self,
        j: u32,
        k: u32,
        s_coef: Complex64,
        p_coef: Complex64,
    ) -> Result<Self> {
        self.add_term(j, k, s_coef, p_coef)?;
        Ok(self)
    }

    /// Coefficients of `s^j p^k` in `(S, P)`; zero if absent.
    pub fn coefficient(&self, j: u32, k: u32) -> (Complex64, Complex64) {
        self.terms
            .get(&(j, k))
            .copied()
            .unwrap_or((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), (Complex64, Complex64))> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn evaluate(&self, pt: SymPoint) -> SymPoint {
        let mut out = SymPoint::origin();
        for (&(j, k), &(cs, cp)) in &self.terms {
            let mono = pt.s.powu(j) * pt.p.powu(k);
            out.s += cs * mono;
            out.p += cp * mono;
        }
        out
    }

    /// Jacobian at the origin: the linear coefficients.
    pub fn origin_jacobian(&self) -> Jacobian2 {
        let (s_s, p_s) = self.coefficient(1, 0);
        let (s_p, p_p) = self.coefficient(0, 1);
        Jacobian2::new(s_s, s_p, p_s, p_p)
    }

    /// `R_{1/alpha} ∘ F = (S / alpha, P / alpha^2)`.
    pub fn rotated(&self, alpha: Complex64) -> Self {
        let inv = alpha.inv();
        let inv2 = inv * inv;
        Self {
            degree_cap: self.degree_cap,
            terms: self
                .terms
                .iter()
                .map(|(&e, &(cs, cp))| (e, (cs * inv, cp * inv2)))
                .collect(),
        }
    }

    /// Divides out the rotation read off the first column of the origin
    /// Jacobian, so that it becomes `[[1, b], [0, d]]`.
    pub fn normalized(&self) -> Result<(Complex64, Self)> {
        let jac = self.origin_jacobian();
        if jac.m21.norm() > 1e-8 {
            return Err(Error::NotNormalized(format!(
                "origin Jacobian entry m21 = {} does not vanish",
                jac.m21
            )));
        }
        let alpha = jac.m11;
        if (alpha.norm() - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized(format!(
                "origin Jacobian entry m11 = {alpha} is not unimodular"
            )));
        }
        let alpha = alpha / alpha.norm();
        Ok((alpha, self.rotated(alpha)))
    }

    /// Taylor coefficients of a holomorphic map fixing the origin, truncated
    /// to the weighted degree cap.
    ///
    /// Coefficients come from discrete Cauchy integrals over the torus
    /// `|s| = |p| = 0.5`, so `f` must be holomorphic on a neighbourhood of the
    /// closed polydisc of that radius.
    pub fn from_holomorphic<F>(f: F, degree_cap: u32) -> Result<Self>
    where
        F: Fn(SymPoint) -> Result<SymPoint>,
    {
        let n = CAUCHY_NODES;
        let roots: Vec<Complex64> = (0..n)
            .map(|m| Complex64::from_polar(1.0, TAU * m as f64 / n as f64))
            .collect();
        let mut samples = Vec::with_capacity(n * n);
        for ws in &roots {
            for wp in &roots {
                samples.push(f(SymPoint::new(ws * CAUCHY_RADIUS, wp * CAUCHY_RADIUS))?);
            }
        }
        let coefficient = |j: u32, k: u32| {
            let mut acc = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for (ms, ws) in roots.iter().enumerate() {
                for (mp, wp) in roots.iter().enumerate() {
                    let kernel = (ws.powu(j) * wp.powu(k)).conj();
                    let v = samples[ms * n + mp];
                    acc.0 += v.s * kernel;
                    acc.1 += v.p * kernel;
                }
            }
            let scale = 1.0
                / ((n * n) as f64 * CAUCHY_RADIUS.powi(j as i32) * CAUCHY_RADIUS.powi(k as i32));
            (acc.0 * scale, acc.1 * scale)
        };

        let (c0s, c0p) = coefficient(0, 0);
        if c0s.norm().max(c0p.norm()) > ORIGIN_TOL {
            return Err(Error::InvalidCandidate(format!(
                "map does not fix the origin (constant term ({c0s}, {c0p}))"
            )));
        }
        let mut map = Self::new(degree_cap);
        for k in 0..=degree_cap / 2 {
            for j in 0..=degree_cap - 2 * k {
                if (j, k) != (0, 0) {
                    let (cs, cp) = coefficient(j, k);
                    map.terms.insert((j, k), (cs, cp));
                }
            }
        }
        Ok(map)
    }
}

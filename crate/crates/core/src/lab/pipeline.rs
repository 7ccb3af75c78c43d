use num_complex::Complex64;
use serde::Serialize;

use super::candidate::{CandidateMap, DEFAULT_DEGREE_CAP};
use crate::error::{Component, Error, Result, Violation};
use crate::geometry::{in_g2, symmetrize, SymPoint, DEFAULT_TOL};
use crate::group::{G2Automorphism, Jacobian2};
use crate::json;
use crate::sampling::{random_g2_automorphism, random_g2_point, random_in_disc, rng, sub_seed};

/// Largest `|a|` of the random group elements used by [`orbit_sample`].
const ORBIT_RADIUS: f64 = 0.95;
/// Root radius of sampled interior points.
const SAMPLE_RADIUS: f64 = 0.95;
/// Royal points `(2l, l^2)` used by [`force_c_zero`] have `|l| <= 0.9`.
const ROYAL_RADIUS: f64 = 0.9;
const ROYAL_SAMPLES: usize = 64;
const ROYAL_SEED: u64 = 0x5eed;

/// Max over seeded interior points of
/// `|(tau S, tau^2 P)(s, p) - F(tau s, tau^2 p)|_inf`.
pub fn rotation_commutation_residual(
    candidate: &CandidateMap,
    tau: Complex64,
    samples: usize,
    seed: u64,
) -> f64 {
    let mut rng = rng(seed);
    let tau2 = tau * tau;
    (0..samples.max(1))
        .map(|_| {
            let q = random_g2_point(&mut rng, SAMPLE_RADIUS);
            let v = candidate.evaluate(q);
            let rotated = candidate.evaluate(SymPoint::new(tau * q.s, tau2 * q.p));
            SymPoint::new(tau * v.s, tau2 * v.p).dist_inf(&rotated)
        })
        .fold(0.0, f64::max)
}

/// Coefficients of a map of the form `(alpha s, d p + C s^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedForm {
    #[serde(with = "json::complex")]
    pub alpha: Complex64,
    #[serde(with = "json::complex")]
    pub d: Complex64,
    #[serde(rename = "C", with = "json::complex")]
    pub c: Complex64,
}

/// Reads `(alpha, d, C)` off a candidate whose only non-negligible monomials
/// are `s` in `S` and `p`, `s^2` in `P`.
pub fn weighted_form_extract(candidate: &CandidateMap, tol: f64) -> Result<WeightedForm> {
    let mut violations = Vec::new();
    for ((j, k), (cs, cp)) in candidate.terms() {
        if (j, k) != (1, 0) && cs.norm() > tol {
            violations.push(Violation {
                component: Component::S,
                j,
                k,
            });
        }
        if (j, k) != (0, 1) && (j, k) != (2, 0) && cp.norm() > tol {
            violations.push(Violation {
                component: Component::P,
                j,
                k,
            });
        }
    }
    if !violations.is_empty() {
        violations.sort();
        return Err(Error::NotWeightedHomogeneous(violations));
    }
    Ok(WeightedForm {
        alpha: candidate.coefficient(1, 0).0,
        d: candidate.coefficient(0, 1).1,
        c: candidate.coefficient(2, 0).1,
    })
}

/// Checks that a candidate `(s, p + C s^2)` fixes the royal variety, on the
/// default seeded sample of royal points.
///
/// Returns whether the largest deviation is within `tol`, and the deviation
/// itself, which is `4 |C| max |l|^2`.
pub fn force_c_zero(candidate: &CandidateMap, tol: f64) -> Result<(bool, f64)> {
    let mut rng = rng(ROYAL_SEED);
    let lambdas: Vec<Complex64> = (0..ROYAL_SAMPLES)
        .map(|_| random_in_disc(&mut rng, ROYAL_RADIUS))
        .collect();
    force_c_zero_on(candidate, tol, &lambdas)
}

pub fn force_c_zero_on(
    candidate: &CandidateMap,
    tol: f64,
    lambdas: &[Complex64],
) -> Result<(bool, f64)> {
    let form = weighted_form_extract(candidate, tol)
        .map_err(|e| Error::PreconditionUnmet(format!("extraction failed: {e}")))?;
    if (form.alpha - 1.0).norm() > tol || (form.d - 1.0).norm() > tol {
        return Err(Error::PreconditionUnmet(format!(
            "expected alpha = d = 1, got alpha = {}, d = {}",
            form.alpha, form.d
        )));
    }
    let residual = lambdas
        .iter()
        .map(|&l| {
            let royal = symmetrize(l, l);
            candidate.evaluate(royal).dist_inf(&royal)
        })
        .fold(0.0, f64::max);
    Ok((residual <= tol, residual))
}

/// Images of `pt` under `count` seeded random group elements.
///
/// Element `i` is drawn from its own stream seeded by `sub_seed(seed, i)`,
/// so the result does not depend on how the work is split.
pub fn orbit_sample(pt: SymPoint, count: usize, seed: u64) -> Result<Vec<SymPoint>> {
    let verdict = in_g2(pt, DEFAULT_TOL);
    if !verdict.is_interior() {
        return Err(Error::PreconditionUnmet(format!(
            "orbit base point must be interior (margin {})",
            verdict.margin
        )));
    }
    (0..count as u64)
        .map(|i| {
            let mut rng = rng(sub_seed(seed, i));
            random_g2_automorphism(&mut rng, ORBIT_RADIUS).apply(pt)
        })
        .collect()
}

/// Result of reducing a group element to one fixing the origin with
/// identity linear part in the `s` direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    /// Royal transport sending `H(0, 0)` to the origin.
    pub transport: G2Automorphism,
    /// Rotation factor read from the origin Jacobian of `transport ∘ H`.
    pub alpha: Complex64,
    /// `R_{1/alpha} ∘ transport ∘ H`.
    pub normalized: G2Automorphism,
}

/// Factors `H = transport^{-1} ∘ R_alpha ∘ normalized`.
///
/// The royal point `H(0, 0)` is measured by applying `H`, and `alpha` by a
/// finite-difference Jacobian, so the result carries measurement error
/// rather than being read off the parameters of `H`.
pub fn normalize_at_origin(h: &G2Automorphism, tol: f64) -> Result<Normalization> {
    let image = h.apply(SymPoint::origin())?;
    let transport = G2Automorphism::transport_to_origin(image, tol)?;
    let fixed = transport.compose(h)?;
    let jac = fixed.jacobian_at(SymPoint::origin())?;
    if jac.m21.norm() > 1e-6 {
        return Err(Error::NotNormalized(format!(
            "origin Jacobian entry m21 = {} does not vanish",
            jac.m21
        )));
    }
    let alpha = jac.m11 / jac.m11.norm();
    let normalized = G2Automorphism::rotation(alpha.conj())?.compose(&fixed)?;
    Ok(Normalization {
        transport,
        alpha,
        normalized,
    })
}

/// End-to-end reduction of a group element: normalize at the origin, expand
/// the result into a polynomial candidate and extract its weighted form.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub normalization: Normalization,
    pub candidate: CandidateMap,
    pub form: WeightedForm,
    /// Commutator experiment on the normalized candidate with `tau = -1`.
    pub n_star: Option<u64>,
}

pub fn certify(h: &G2Automorphism, tol: f64) -> Result<Certificate> {
    let normalization = normalize_at_origin(h, tol)?;
    let n = normalization.normalized;
    let candidate = CandidateMap::from_holomorphic(|q| n.apply(q), DEFAULT_DEGREE_CAP)?;
    let report = super::commutator_report(&candidate, Complex64::new(-1.0, 0.0))?;
    let form = weighted_form_extract(&candidate, tol)?;
    Ok(Certificate {
        normalization,
        candidate,
        form,
        n_star: report.n_star,
    })
}

/// Max displacement over seeded interior points of a group element whose
/// origin Jacobian is the identity. Group elements with this property are
/// the identity, so the residual measures how far `h` is from it; it is a
/// diagnostic only.
pub fn cartan_residual(h: &G2Automorphism, samples: usize, seed: u64) -> Result<f64> {
    let origin = SymPoint::origin();
    let moved = h.apply(origin)?.norm_inf();
    let jac = h.jacobian_at(origin)?;
    if moved > 1e-8 || !jac.approx_eq(&Jacobian2::identity(), 1e-6) {
        return Err(Error::PreconditionUnmet(format!(
            "expected an origin-fixing map with identity Jacobian (moved {moved:e})"
        )));
    }
    let mut rng = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let q = random_g2_point(&mut rng, SAMPLE_RADIUS);
        worst = worst.max(h.apply(q)?.dist_inf(&q));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::in_sigma2;
    use crate::group::JacobianMode;
    use crate::lab::cauchy_bound_check;
    use crate::moebius::DiscAutomorphism;
    use crate::sampling::{random_disc_automorphism, unit_complex};
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn commutation_residual_examples() {
        let tau = c(0.6, 0.8);
        assert!(rotation_commutation_residual(&CandidateMap::identity(), tau, 100, 1) <= 1e-15);
        let mut r = rng(51);
        for _ in 0..20 {
            let tau = unit_complex(&mut r);
            let f = CandidateMap::weighted(c(1.0, 0.0), c(1.0, 0.0), random_in_disc(&mut r, 3.0));
            assert!(rotation_commutation_residual(&f, tau, 100, 2) <= 1e-10);
        }
        let f = CandidateMap::identity()
            .with_term(2, 0, c(1.0, 0.0), c(0.0, 0.0))
            .unwrap();
        assert!(rotation_commutation_residual(&f, c(-1.0, 0.0), 1, 3) > 0.0);
    }

    #[test]
    fn extraction_examples() {
        let form = weighted_form_extract(&CandidateMap::identity(), 1e-12).unwrap();
        assert_eq!(
            (form.alpha, form.d, form.c),
            (c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
        );

        let f = CandidateMap::identity()
            .with_term(2, 0, c(0.0, 0.0), c(3.0, 0.0))
            .unwrap();
        let form = weighted_form_extract(&f, 1e-12).unwrap();
        assert_eq!(
            (form.alpha, form.d, form.c),
            (c(1.0, 0.0), c(1.0, 0.0), c(3.0, 0.0))
        );

        let f = CandidateMap::identity()
            .with_term(0, 1, c(1.0, 0.0), c(0.0, 0.0))
            .unwrap();
        assert_eq!(
            weighted_form_extract(&f, 1e-12),
            Err(Error::NotWeightedHomogeneous(vec![Violation {
                component: Component::S,
                j: 0,
                k: 1
            }]))
        );
    }

    #[test]
    fn commutation_iff_weighted() {
        // A generic rotation: tau^m != 1 for m <= 3 so no other monomial of
        // weighted degree <= 4 can commute with it.
        let tau = Complex64::from_polar(1.0, 1.0);
        let mut r = rng(52);
        let monomials: Vec<(u32, u32)> =
            vec![(2, 0), (0, 1), (1, 1), (3, 0), (4, 0), (0, 2), (2, 1)];
        for i in 0..100 {
            let mut f = CandidateMap::weighted(
                unit_complex(&mut r),
                random_in_disc(&mut r, 1.5),
                random_in_disc(&mut r, 1.5),
            );
            if i % 2 == 1 {
                let (j, k) = monomials[r.gen_range(0..monomials.len())];
                let mag = 0.05 + r.gen::<f64>();
                let coef = Complex64::from_polar(mag, r.gen_range(0.0..std::f64::consts::TAU));
                // (2,0) and (0,1) are legal in P but not in S.
                if r.gen_bool(0.5) || matches!((j, k), (2, 0) | (0, 1)) {
                    f.add_term(j, k, coef, c(0.0, 0.0)).unwrap();
                } else {
                    f.add_term(j, k, c(0.0, 0.0), coef).unwrap();
                }
            }
            let commutes = rotation_commutation_residual(&f, tau, 50, i) <= 1e-10;
            let weighted = weighted_form_extract(&f, 1e-12).is_ok();
            assert_eq!(commutes, weighted, "candidate {i}: {f:?}");
            assert_eq!(weighted, i % 2 == 0);
        }
    }

    #[test]
    fn force_c_zero_examples() {
        let (ok, res) = force_c_zero(&CandidateMap::identity(), 1e-10).unwrap();
        assert!(ok && res <= 1e-12);

        let f = CandidateMap::weighted(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        let (ok, res) = force_c_zero_on(&f, 1e-10, &[c(0.5, 0.0)]).unwrap();
        assert!(!ok);
        assert!((res - 1.0).abs() < 1e-15);

        let f = CandidateMap::weighted(c(1.0, 0.0), c(1.0, 0.0), c(1e-15, 0.0));
        assert!(force_c_zero(&f, 1e-10).unwrap().0);

        let f = CandidateMap::weighted(c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            force_c_zero(&f, 1e-10),
            Err(Error::PreconditionUnmet(_))
        ));
        let f = CandidateMap::identity()
            .with_term(1, 1, c(1.0, 0.0), c(0.0, 0.0))
            .unwrap();
        assert!(matches!(
            force_c_zero(&f, 1e-10),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn force_c_zero_residual_is_analytic() {
        let mut r = rng(53);
        let lambdas: Vec<Complex64> = (0..16).map(|_| random_in_disc(&mut r, 0.9)).collect();
        let max_sq = lambdas.iter().map(|l| l.norm_sqr()).fold(0.0, f64::max);
        for _ in 0..50 {
            let cc = random_in_disc(&mut r, 1.0);
            let f = CandidateMap::weighted(c(1.0, 0.0), c(1.0, 0.0), cc);
            let (_, res) = force_c_zero_on(&f, 1e-10, &lambdas).unwrap();
            assert!((res - 4.0 * cc.norm() * max_sq).abs() <= 1e-14);
        }
    }

    #[test]
    fn orbit_examples() {
        let orbit = orbit_sample(SymPoint::origin(), 100, 7).unwrap();
        assert_eq!(orbit.len(), 100);
        assert!(orbit.iter().all(|q| in_sigma2(*q, 1e-10).1 <= 1e-10));

        let base = SymPoint::new(c(0.5, 0.0), c(0.0, 0.0));
        let orbit = orbit_sample(base, 100, 7).unwrap();
        let min = orbit
            .iter()
            .map(|q| in_sigma2(*q, 1e-10).1)
            .fold(f64::INFINITY, f64::min);
        assert!(min > 0.0);

        assert!(orbit_sample(base, 0, 7).unwrap().is_empty());
        assert!(orbit_sample(SymPoint::new(c(3.0, 0.0), c(0.0, 0.0)), 3, 7).is_err());
    }

    #[test]
    fn orbit_prefix_is_stable() {
        let base = SymPoint::new(c(0.1, 0.2), c(0.05, 0.0));
        let long = orbit_sample(base, 50, 99).unwrap();
        let short = orbit_sample(base, 20, 99).unwrap();
        assert_eq!(&long[..20], &short[..]);
    }

    #[test]
    fn schwarz_premises() {
        let mut r = rng(54);
        // (0, p) lies in G2 for |p| < 1: its roots have modulus |p|^(1/2).
        for _ in 0..1000 {
            let p = random_in_disc(&mut r, 0.999);
            let roots = crate::geometry::desymmetrize(SymPoint::new(c(0.0, 0.0), p));
            for z in [roots.first(), roots.second()] {
                assert!((z.norm() - p.norm().sqrt()).abs() <= 1e-12);
            }
            assert!(in_g2(SymPoint::new(c(0.0, 0.0), p), 0.0).margin > 0.0);
        }
        // |S| < 2 on G2, checked on images under group elements.
        for _ in 0..1000 {
            let h = crate::sampling::random_g2_automorphism(&mut r, 0.99);
            let q = random_g2_point(&mut r, 0.999);
            assert!(h.apply(q).unwrap().s.norm() < 2.0);
        }
    }

    #[test]
    fn group_elements_have_no_shear() {
        let mut r = rng(55);
        for _ in 0..200 {
            let h = G2Automorphism::lift(random_disc_automorphism(&mut r, 0.9));
            let n = normalize_at_origin(&h, 1e-9).unwrap();
            let jac = n.normalized.jacobian_at(SymPoint::origin()).unwrap();
            assert!(jac.m12.norm() <= 1e-8);
            let exact = n
                .normalized
                .jacobian_at_with(SymPoint::origin(), JacobianMode::Analytic)
                .unwrap();
            assert_eq!(
                cauchy_bound_check(exact.m12, unit_complex(&mut r)).n_star,
                None
            );
        }
    }

    #[test]
    fn certify_group_elements() {
        let mut r = rng(56);
        for _ in 0..20 {
            let h = G2Automorphism::lift(random_disc_automorphism(&mut r, 0.95));
            let cert = certify(&h, 1e-8).unwrap();
            assert!((cert.form.alpha - 1.0).norm() <= 1e-8);
            assert!((cert.form.d - 1.0).norm() <= 1e-8);
            assert!(cert.form.c.norm() <= 1e-8);
            assert_eq!(cert.n_star, None);
            // Reassemble: H = T^{-1} ∘ R_alpha ∘ N.
            let n = &cert.normalization;
            let rebuilt = n
                .transport
                .invert()
                .compose(&G2Automorphism::rotation(n.alpha).unwrap())
                .unwrap()
                .compose(&n.normalized)
                .unwrap();
            assert!(rebuilt.approx_eq(&h, 1e-8));
        }
    }

    #[test]
    fn cartan_residual_on_group() {
        let mut r = rng(57);
        let h = G2Automorphism::lift(random_disc_automorphism(&mut r, 0.9));
        let n = normalize_at_origin(&h, 1e-9).unwrap().normalized;
        assert!(cartan_residual(&n, 200, 1).unwrap() <= 1e-8);
        let moved = G2Automorphism::lift(DiscAutomorphism::blaschke(c(0.2, 0.0)).unwrap());
        assert!(cartan_residual(&moved, 10, 1).is_err());
        let rot = G2Automorphism::rotation(c(0.0, 1.0)).unwrap();
        assert!(cartan_residual(&rot, 10, 1).is_err());
    }
}

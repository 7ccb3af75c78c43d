use bidisc::geometry::{desymmetrize, in_g2, in_sigma2, symmetrize, RootPair};
use bidisc::group::G2Automorphism;
use bidisc::lab::{commutator_jacobian, rotation_commutation_residual, CandidateMap};
use bidisc::moebius::DiscAutomorphism;
use bidisc::{Complex64, Jacobian2};
use proptest::prelude::*;

fn in_disc(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn unit() -> impl Strategy<Value = Complex64> {
    (0.0..std::f64::consts::TAU).prop_map(|t| Complex64::from_polar(1.0, t))
}

fn disc_automorphism() -> impl Strategy<Value = DiscAutomorphism> {
    (unit(), in_disc(0.95)).prop_map(|(tau, a)| DiscAutomorphism::new(tau, a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn root_pair_round_trip(l1 in in_disc(1.0), l2 in in_disc(1.0)) {
        let roots = desymmetrize(symmetrize(l1, l2));
        let sep = (l1 - l2).norm();
        // Root sensitivity blows up like 1/separation near the diagonal.
        prop_assume!(sep > 1e-6);
        prop_assert!(roots.distance(&RootPair::new(l1, l2)) <= 1e-9);
    }

    #[test]
    fn g2_interior_points_stay_bounded(l1 in in_disc(1.0), l2 in in_disc(1.0)) {
        let pt = symmetrize(l1, l2);
        if in_g2(pt, 1e-9).is_interior() {
            prop_assert!(pt.s.norm() < 2.0 && pt.p.norm() < 1.0);
        }
    }

    #[test]
    fn lift_preserves_royal_variety(h in disc_automorphism(), l in in_disc(0.99)) {
        let img = G2Automorphism::lift(h).apply(symmetrize(l, l)).unwrap();
        prop_assert!(in_sigma2(img, 1e-10).1 <= 1e-10);
    }

    #[test]
    fn closed_form_matches_root_route(h in disc_automorphism(), l1 in in_disc(0.999), l2 in in_disc(0.999)) {
        let hh = G2Automorphism::lift(h);
        let pt = symmetrize(l1, l2);
        prop_assert!(hh.apply(pt).unwrap().dist_inf(&hh.apply_via_roots(pt).unwrap()) <= 1e-10);
    }

    #[test]
    fn composition_is_associative(f in disc_automorphism(), g in disc_automorphism(), h in disc_automorphism()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, 1e-10));
    }

    #[test]
    fn commutator_is_unipotent(b in in_disc(5.0), d in in_disc(3.0), tau in unit()) {
        prop_assume!(d.norm() > 1e-3);
        let j = Jacobian2::new(Complex64::new(1.0, 0.0), b, Complex64::new(0.0, 0.0), d);
        let g = commutator_jacobian(&j, tau).unwrap();
        prop_assert!(g.approx_eq(&Jacobian2::unipotent(b * (tau - 1.0)), 1e-12 * (1.0 + b.norm() / d.norm())));
    }

    #[test]
    fn weighted_forms_commute_with_rotations(c in in_disc(5.0), tau in unit(), seed in any::<u64>()) {
        let f = CandidateMap::weighted(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), c);
        prop_assert!(rotation_commutation_residual(&f, tau, 20, seed) <= 1e-10);
    }
}

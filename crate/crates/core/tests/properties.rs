use hodiff_core::diffeq::{verify_pieri, PieriDatum, Perturbation};
use hodiff_core::jacobi::{verify_eigen_poly, JacobiCache};
use hodiff_core::rankone::recurrence_rr_exact;
use hodiff_core::rational::{q, Q};
use hodiff_core::rootsys::{Family, Multiplicities, RootDatum};
use hodiff_core::weylalg::{apply_l, orbit_sum};
use hodiff_core::whittaker::{coeff_vbar, homogeneity_identity};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (1i64..40, 1i64..13).prop_map(|(p, d)| q(p, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dominant_representative_is_in_orbit(c in proptest::collection::vec(-3i64..4, 3)) {
        let d = RootDatum::new(Family::A, 3).unwrap();
        let w = d.from_fundamental(&c).unwrap();
        let (dom, word) = d.dominant_representative(&w).unwrap();
        prop_assert!(d.is_dominant(&dom));
        prop_assert_eq!(word.apply(&d, &w), dom.clone());
        prop_assert!(d.weyl_orbit(&w).unwrap().contains(&dom));
        prop_assert_eq!(d.inner_q(&d.coords_q(&w), &d.coords_q(&w)), d.inner_q(&d.coords_q(&dom), &d.coords_q(&dom)));
    }

    #[test]
    fn pieri_a2_random_parameters(a in 0i64..3, b in 0i64..3, g in rational(), which in 0usize..2) {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let m = Multiplicities::uniform(&d, g).unwrap();
        let mut cache = JacobiCache::new(m);
        let omega = d.fundamental_weights()[which].clone();
        let pd = PieriDatum::new(&d, &omega, Perturbation::None).unwrap();
        let lambda = d.from_fundamental(&[a, b]).unwrap();
        let r = verify_pieri(&d, &mut cache, &pd, &lambda).unwrap();
        prop_assert!(r.passed());
    }

    #[test]
    fn jacobi_b2_eigen(a in 0i64..3, b in 0i64..3, g1 in rational(), g2 in rational()) {
        let d = RootDatum::new(Family::B, 2).unwrap();
        let m = Multiplicities::new(&d, vec![g1, g2]).unwrap();
        let mut cache = JacobiCache::new(m);
        let lambda = d.from_fundamental(&[a, b]).unwrap();
        let p = cache.get(&d, &lambda).unwrap().clone();
        prop_assert!(verify_eigen_poly(&d, &p).unwrap().passed());
        prop_assert_eq!(p.to_exp_poly(&d).value_at_zero(), Q::from_integer(1.into()));
    }

    #[test]
    fn operator_preserves_invariance(a in 0i64..3, b in 0i64..3, g1 in rational(), g2 in rational()) {
        let d = RootDatum::new(Family::G, 2).unwrap();
        let m = Multiplicities::new(&d, vec![g1, g2]).unwrap();
        let p = orbit_sum(&d, &d.from_fundamental(&[a, b]).unwrap()).unwrap();
        prop_assert!(apply_l(&d, &m, &p).unwrap().is_w_invariant(&d));
    }

    #[test]
    fn homogeneity_random_g(g in proptest::collection::vec(rational(), 2)) {
        for (f, n) in [(Family::B, 2), (Family::C, 3), (Family::G, 2)] {
            let d = RootDatum::new(f, n).unwrap();
            let m = Multiplicities::new(&d, g[..d.n_root_orbits()].to_vec()).unwrap();
            for i in d.small_fundamental_indices() {
                let omega = d.fundamental_weights()[i].clone();
                for mu in d.dominant_weights_below(&omega).unwrap() {
                    let (l, r) = homogeneity_identity(&d, &m, &omega, &mu).unwrap();
                    prop_assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn recurrence_exact_random(g1 in rational(), g2 in rational(), s in rational(), l in 0u32..6) {
        let (lhs, rhs) = recurrence_rr_exact(&g1, &g2, l, &s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn simply_laced_confluent_coefficients_are_rational(z1 in rational(), z2 in rational()) {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let simple = d.simple_roots().to_vec();
        let mut xi = vec![Q::from_integer(0.into()); d.dim()];
        // xi = z1 * omega_1 + z2 * omega_2, so <xi, alpha_i^vee> = z_i
        for (z, f) in [z1.clone(), z2].iter().zip(d.fundamental_weights()) {
            for (x, c) in xi.iter_mut().zip(d.coords_q(f)) {
                *x += z * c;
            }
        }
        prop_assert_eq!(d.pairing_q(&xi, simple[0]), z1.clone());
        let omega = d.fundamental_weights()[0].clone();
        for nu in d.weyl_orbit(&omega).unwrap() {
            prop_assert!(coeff_vbar(&d, &nu, &xi).unwrap().is_rational());
        }
    }
}

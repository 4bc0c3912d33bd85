use hodiff_core::rootsys::{Family, RootDatum};
use hodiff_core::whittaker::{verify_confluence, LimitFamily};
use proptest::prelude::*;

fn point(d: &RootDatum, c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; d.dim()];
    for (ci, w) in c.iter().zip(d.fundamental_weights()) {
        for (o, x) in out.iter_mut().zip(d.coords_f64(w)) {
            *o += ci * x;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // For A_2 and omega = 2 omega_1 the order e^{-t/2} coefficients of the
    // three V rows add up to 12 whatever xi is, so one of them stays above
    // 4 e^{-15} at t = 30.
    #[test]
    fn a2_twice_fundamental_has_a_floor(c1 in -2.5f64..2.5, c2 in -2.5f64..2.5) {
        let d = RootDatum::new(Family::A, 2).unwrap();
        let z = [c1, c2, c1 + c2];
        prop_assume!(z.iter().all(|&v| v.abs() > 0.05 && (1.0 - v.abs()).abs() > 0.05));
        let omega = d.from_fundamental(&[2, 0]).unwrap();
        let xi = point(&d, &[c1, c2]);
        let r = verify_confluence(&d, &omega, &xi, &[0.0; 3], &[10.0, 20.0, 30.0]).unwrap();
        let orbit = d.weyl_orbit(&omega).unwrap();
        let worst = r
            .rows
            .iter()
            .filter(|row| row.family == LimitFamily::V && orbit.contains(&row.nu))
            .map(|row| row.final_deviation())
            .fold(0.0, f64::max);
        prop_assert!(worst >= 0.99 * 4.0 * (-15.0f64).exp(), "worst {worst}");
    }
}

#[test]
fn fundamental_weights_meet_the_target() {
    for (f, n) in [(Family::A, 1), (Family::A, 2), (Family::B, 2)] {
        let d = RootDatum::new(f, n).unwrap();
        let xi = point(&d, &vec![1.0 / 80.0; n]);
        let x = point(&d, &vec![0.1; n]);
        for omega in d.fundamental_weights() {
            let r = verify_confluence(&d, omega, &xi, &x, &[10.0, 20.0, 30.0]).unwrap();
            assert!(r.passed(1e-6), "{f}{n}: worst {}", r.worst());
        }
    }
}

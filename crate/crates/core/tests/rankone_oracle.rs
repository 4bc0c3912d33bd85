use hodiff_core::rankone::{gauss_2f1_jacobi, verify_de, HypergeometricParams};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

const DIGITS: u32 = 60;

fn scale() -> BigInt {
    BigInt::from(10).pow(DIGITS)
}

/// `e^{p/q}` in fixed point.
fn exp_fixed(p: i64, q: i64) -> BigInt {
    let s = scale();
    let mut term = s.clone();
    let mut sum = s.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term = term * p / (q * k);
        sum += &term;
        k += 1;
    }
    sum
}

/// `2F1(a, b; c; z)` with rational `a, b, c` as `(num, den)` pairs and fixed-point `z`.
fn hyp_fixed(a: (i64, i64), b: (i64, i64), c: (i64, i64), z: &BigInt) -> BigInt {
    let s = scale();
    let mut term = s.clone();
    let mut sum = s.clone();
    let mut k = 0i64;
    loop {
        // (a+k)(b+k)/((c+k)(k+1)) with common denominators cleared
        let an = a.0 + k * a.1;
        let bn = b.0 + k * b.1;
        let cn = c.0 + k * c.1;
        let num = BigInt::from(an) * bn * c.1;
        let den = BigInt::from(cn) * (k + 1) * a.1 * b.1;
        term = term * num * z / (den * &s);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    sum
}

fn to_f64(x: &BigInt) -> f64 {
    let s = BigInt::from(10).pow(DIGITS - 18);
    (x / s).to_f64().unwrap() * 1e-18
}

#[test]
fn jacobi_function_against_extended_precision_series() {
    // (g1, g2, xi, x) = (1/2, 1/3, 9/10, 11/10): a = -19/60, b = 89/60, c = 4/3
    let s = scale();
    let e = exp_fixed(11, 20);
    let einv = &s * &s / &e;
    let sinh = (&e - &einv) / BigInt::from(2);
    let z = -(&sinh * &sinh / &s);
    let oracle = hyp_fixed((-19, 60), (89, 60), (4, 3), &z);
    let value = gauss_2f1_jacobi(&HypergeometricParams::new(0.5, 1.0 / 3.0, 0.9, 1.1)).unwrap();
    let expected = to_f64(&oracle);
    assert!(
        (value - expected).abs() <= 1e-12 * expected.abs(),
        "{value} vs {expected}"
    );
}

#[test]
fn oracle_self_check_exp() {
    let s = scale();
    let e1 = exp_fixed(1, 1);
    let digits = "271828182845904523536028747135266249775724709369995";
    let truncated = &e1 / BigInt::from(10).pow(DIGITS - 50);
    assert_eq!(truncated.to_string(), digits);
    assert!(e1 > s);
    let unit = hyp_fixed((0, 1), (1, 1), (1, 1), &s);
    assert_eq!(unit, s);
}

#[test]
fn pfaff_matches_oracle_far_from_origin() {
    // x = 3 is outside the unit disk of the plain series; compare with a
    // high-precision Pfaff evaluation built from the same fixed-point series.
    let s = scale();
    let e = exp_fixed(3, 2);
    let einv = &s * &s / &e;
    let sinh = (&e - &einv) / BigInt::from(2);
    let sh2 = &sinh * &sinh / &s;
    // w = z / (z - 1) = sh2 / (1 + sh2)
    let w = &sh2 * &s / (&s + &sh2);
    // (1 - z)^{-a} = cosh^2(x/2)^{19/60}, a = -19/60
    let c2 = &s + &sh2;
    let series = hyp_fixed((-19, 60), (4 * 20 - 89, 60), (4, 3), &w);
    let pow = libm::pow(to_f64(&c2), 19.0 / 60.0);
    let expected = pow * to_f64(&series);
    let value = gauss_2f1_jacobi(&HypergeometricParams::new(0.5, 1.0 / 3.0, 0.9, 3.0)).unwrap();
    assert!((value - expected).abs() <= 1e-12 * expected.abs(), "{value} vs {expected}");
}

#[test]
fn difference_equation_grid() {
    for (g1, g2) in [(0.5, 1.0 / 3.0), (1.25, 0.75)] {
        for xi in [0.31, 0.77, 1.4, 2.2, 3.05] {
            for x in [0.2, 0.6, 1.1, 2.0, 3.5] {
                let r = verify_de(&HypergeometricParams::new(g1, g2, xi, x)).unwrap();
                assert!(r.residual <= 1e-9, "{g1} {g2} {xi} {x}: {r:?}");
            }
        }
    }
}

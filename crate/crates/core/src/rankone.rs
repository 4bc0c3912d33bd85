//! Rank one: the Jacobi function as a Gauss hypergeometric series, its
//! difference equation in the spectral variable and the three-term
//! recurrence of the Jacobi polynomials it interpolates.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::weylalg::ExpPoly;

const MAX_TERMS: usize = 200_000;
/// Below this `|z|` the direct series is also summed and cross-checked.
pub const DIRECT_RADIUS: f64 = 0.8;
pub const AGREEMENT_TOL: f64 = 1e-11;

/// `(g1, g2, xi, x)` for the rank-one Jacobi function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypergeometricParams {
    pub g1: f64,
    pub g2: f64,
    pub xi: f64,
    pub x: f64,
}

impl HypergeometricParams {
    pub fn new(g1: f64, g2: f64, xi: f64, x: f64) -> HypergeometricParams {
        HypergeometricParams { g1, g2, xi, x }
    }

    /// `(a, b, c)` with `a = -xi + g1/2 + g2`, `b = xi + g1/2 + g2`, `c = 1/2 + g1 + g2`.
    pub fn abc(&self) -> (f64, f64, f64) {
        let s = 0.5 * self.g1 + self.g2;
        (-self.xi + s, self.xi + s, 0.5 + self.g1 + self.g2)
    }

    /// `z = -sinh^2(x/2)`.
    pub fn z(&self) -> f64 {
        let s = libm::sinh(0.5 * self.x);
        -s * s
    }

    pub fn with_xi(&self, xi: f64) -> HypergeometricParams {
        HypergeometricParams { xi, ..*self }
    }
}

fn check_c(c: f64) -> Result<()> {
    if c <= 0.0 && (c - libm::round(c)).abs() < 1e-14 {
        return Err(Error::Numeric(format!("c = {c} is a nonpositive integer")));
    }
    Ok(())
}

/// Direct Gauss series `2F1(a, b; c; z)` for `|z| < 1`.
pub fn gauss_2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_c(c)?;
    if z.abs() >= 1.0 {
        return Err(Error::Numeric(format!("|z| = {} outside the unit disk", z.abs())));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= 1e-17 * sum.abs() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Numeric(format!(
        "2F1 series did not converge in {MAX_TERMS} terms at z = {z}"
    )))
}

/// `2F1(a, b; c; z)` for `z <= 0` via Pfaff: `(1 - z)^{-a} 2F1(a, c - b; c; z / (z - 1))`.
pub fn gauss_2f1_pfaff(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z > 0.0 {
        return Err(Error::Numeric("Pfaff branch needs z <= 0".into()));
    }
    let w = z / (z - 1.0);
    Ok(libm::pow(1.0 - z, -a) * gauss_2f1_series(a, c - b, c, w)?)
}

/// The Jacobi function `F_xi(x)`. Uses the Pfaff form throughout and, when
/// `|z| < 0.8`, also the direct series, requiring agreement to `1e-11`.
pub fn gauss_2f1_jacobi(p: &HypergeometricParams) -> Result<f64> {
    let (a, b, c) = p.abc();
    let z = p.z();
    let pf = gauss_2f1_pfaff(a, b, c, z)?;
    if z.abs() < DIRECT_RADIUS {
        let direct = gauss_2f1_series(a, b, c, z)?;
        if (direct - pf).abs() > AGREEMENT_TOL * pf.abs().max(1.0) {
            return Err(Error::Numeric(format!(
                "direct {direct} and Pfaff {pf} disagree at x = {}",
                p.x
            )));
        }
    }
    Ok(pf)
}

/// `V(xi) = (xi + g1/2 + g2)(1 + 2 xi + g1) / (xi (1 + 2 xi))`.
pub fn de_coefficient(g1: f64, g2: f64, xi: f64) -> Result<f64> {
    let den = xi * (1.0 + 2.0 * xi);
    if den == 0.0 {
        return Err(Error::PoleAtSpectralPoint(format!("xi = {xi}")));
    }
    Ok((xi + 0.5 * g1 + g2) * (1.0 + 2.0 * xi + g1) / den)
}

/// Exact `(V(xi), V(-xi))`.
pub fn de_coefficients_exact(g1: &Q, g2: &Q, xi: &Q) -> Result<(Q, Q)> {
    let one = Q::one();
    let two = rational::qi(2);
    let v = |x: &Q| -> Result<Q> {
        let den = x * (&one + &two * x);
        if den.is_zero() {
            return Err(Error::PoleAtSpectralPoint(format!("xi = {xi}")));
        }
        Ok((x + g1 / &two + g2) * (&one + &two * x + g1) / den)
    };
    Ok((v(xi)?, v(&-xi.clone())?))
}

/// Residual of the rank-one difference equation at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeResidual {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / max(1, |rhs|)`.
    pub residual: f64,
}

/// `V(xi)(F_{xi+1} - F_xi) + V(-xi)(F_{xi-1} - F_xi)` against `4 sinh^2(x/2) F_xi`.
pub fn verify_de(p: &HypergeometricParams) -> Result<DeResidual> {
    let vp = de_coefficient(p.g1, p.g2, p.xi)?;
    let vm = de_coefficient(p.g1, p.g2, -p.xi)?;
    let f0 = gauss_2f1_jacobi(p)?;
    let fp = gauss_2f1_jacobi(&p.with_xi(p.xi + 1.0))?;
    let fm = gauss_2f1_jacobi(&p.with_xi(p.xi - 1.0))?;
    let lhs = vp * (fp - f0) + vm * (fm - f0);
    let rhs = -4.0 * p.z() * f0;
    Ok(DeResidual {
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / rhs.abs().max(1.0),
    })
}

/// Coefficients of `(P_{l+1} - P_l)` and `(P_{l-1} - P_l)` in the recurrence.
pub fn rr_coefficients(g1: &Q, g2: &Q, l: u32) -> (Q, Q) {
    let lq = rational::qi(l as i64);
    let one = Q::one();
    let two = rational::qi(2);
    let half = rational::q(1, 2);
    let s = &two * &lq + g1 + &two * g2;
    let up = (&lq + g1 + &two * g2) * (&half + &lq + g1 + g2) / (&s * (&one + &s));
    let down = &lq * (-&half + &lq + g2) / (&s * (&s - &one));
    (up, down)
}

/// Coefficients in `s = sinh^2(x/2)` of `P_l = 2F1(-l, l + g1 + 2 g2; 1/2 + g1 + g2; -s)`.
pub fn jacobi_p_in_s(g1: &Q, g2: &Q, l: u32) -> Vec<Q> {
    let b = rational::qi(l as i64) + g1 + rational::qi(2) * g2;
    let c = rational::q(1, 2) + g1 + g2;
    let mut out = Vec::with_capacity(l as usize + 1);
    let mut term = Q::one();
    out.push(term.clone());
    for k in 0..l as i64 {
        let kq = rational::qi(k);
        // (-l + k)(b + k) / ((c + k)(k + 1)) times (-1) from -s
        term = term * (rational::qi(k - l as i64)) * (&b + &kq) / ((&c + &kq) * rational::qi(k + 1))
            * rational::qi(-1);
        out.push(term.clone());
    }
    out
}

pub fn eval_poly(coeffs: &[Q], s: &Q) -> Q {
    coeffs
        .iter()
        .rev()
        .fold(Q::zero(), |acc, c| acc * s + c)
}

pub fn eval_poly_f64(coeffs: &[Q], s: f64) -> f64 {
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * s + rational::to_f64(c))
}

/// Both sides of the three-term recurrence at level `l`, exactly, at rational `s`.
pub fn recurrence_rr_exact(g1: &Q, g2: &Q, l: u32, s: &Q) -> (Q, Q) {
    let p = |k: u32| eval_poly(&jacobi_p_in_s(g1, g2, k), s);
    let pl = p(l);
    let (up, down) = rr_coefficients(g1, g2, l);
    let lhs = s * &pl;
    let mut rhs = up * (p(l + 1) - &pl);
    if l > 0 {
        rhs += down * (p(l - 1) - &pl);
    }
    (lhs, rhs)
}

/// Both sides of the three-term recurrence at a real point `x`.
pub fn recurrence_rr(g1: &Q, g2: &Q, l: u32, x: f64) -> (f64, f64) {
    let sh = libm::sinh(0.5 * x);
    let s = sh * sh;
    let p = |k: u32| eval_poly_f64(&jacobi_p_in_s(g1, g2, k), s);
    let pl = p(l);
    let (up, down) = rr_coefficients(g1, g2, l);
    let mut rhs = rational::to_f64(&up) * (p(l + 1) - pl);
    if l > 0 {
        rhs += rational::to_f64(&down) * (p(l - 1) - pl);
    }
    (s * pl, rhs)
}

/// Rewrites an even Laurent polynomial in one variable, `sum c_k e^{k x}`
/// with `c_k = c_{-k}`, as a polynomial in `s = sinh^2(x/2)` using
/// `e^x + e^{-x} = 2 + 4 s`.
pub fn even_laurent_in_s(p: &ExpPoly) -> Result<Vec<Q>> {
    let mut coeffs: Vec<(i64, Q)> = Vec::new();
    for (w, c) in p.terms() {
        let nums = w.numerators();
        if nums.len() != 1 {
            return Err(Error::InvalidWeight("expected a rank-one exponent".into()));
        }
        let k = nums[0];
        if p.coeff(&crate::rootsys::Weight::from_numerators(vec![-k])) != *c {
            return Err(Error::NotInvariant);
        }
        if k >= 0 {
            coeffs.push((k, c.clone()));
        }
    }
    let max_k = coeffs.iter().map(|(k, _)| *k).max().unwrap_or(0) as usize;
    // ch[k] = e^{kx} + e^{-kx} as a polynomial in s
    let u = vec![rational::qi(2), rational::qi(4)];
    let mut ch: Vec<Vec<Q>> = vec![vec![rational::qi(2)], u.clone()];
    for k in 2..=max_k {
        let mut next = vec![Q::zero(); k + 1];
        for (i, a) in ch[k - 1].iter().enumerate() {
            for (j, b) in u.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        for (i, a) in ch[k - 2].iter().enumerate() {
            next[i] -= a;
        }
        ch.push(next);
    }
    let mut out = vec![Q::zero(); max_k + 1];
    for (k, c) in coeffs {
        if k == 0 {
            out[0] += c;
        } else {
            for (i, a) in ch[k as usize].iter().enumerate() {
                out[i] += &c * a;
            }
        }
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin_is_one() {
        let p = HypergeometricParams::new(0.5, 1.0 / 3.0, 0.77, 0.0);
        assert_eq!(gauss_2f1_jacobi(&p).unwrap(), 1.0);
    }

    #[test]
    fn terminating_case_is_constant() {
        for x in [0.3, 1.7, 4.0] {
            let p = HypergeometricParams::new(0.5, 1.0 / 3.0, 0.25 + 1.0 / 3.0, x);
            assert!((gauss_2f1_jacobi(&p).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn pfaff_and_direct_agree() {
        for x in [0.1, 0.5, 1.0, 1.4, 1.6] {
            let p = HypergeometricParams::new(0.5, 1.0 / 3.0, 1.2, x);
            let (a, b, c) = p.abc();
            let z = p.z();
            assert!(z.abs() < DIRECT_RADIUS);
            let d = gauss_2f1_series(a, b, c, z).unwrap();
            let f = gauss_2f1_pfaff(a, b, c, z).unwrap();
            assert!((d - f).abs() <= AGREEMENT_TOL * f.abs().max(1.0));
        }
    }

    #[test]
    fn nonpositive_integer_c_rejected() {
        assert!(gauss_2f1_series(1.0, 1.0, -2.0, 0.1).is_err());
    }

    #[test]
    fn de_at_sample_point() {
        let p = HypergeometricParams::new(0.5, 1.0 / 3.0, 0.77, 0.6);
        assert!(verify_de(&p).unwrap().residual < 1e-9);
        let origin = verify_de(&HypergeometricParams::new(0.5, 1.0 / 3.0, 0.77, 0.0)).unwrap();
        assert!(origin.lhs.abs() < 1e-15 && origin.rhs == 0.0);
        assert!(verify_de(&p.with_xi(0.5)).is_err());
    }

    #[test]
    fn rr_exact_at_quarter() {
        let (g1, g2) = (rational::q(1, 2), rational::q(1, 3));
        let s = rational::q(1, 4);
        for l in 0..=6 {
            let (lhs, rhs) = recurrence_rr_exact(&g1, &g2, l, &s);
            assert_eq!(lhs, rhs, "l = {l}");
        }
        let (lhs, rhs) = recurrence_rr(&g1, &g2, 3, 1.3);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn rr_coefficients_are_de_coefficients_over_four() {
        let (g1, g2) = (rational::q(5, 11), rational::q(9, 4));
        for l in 0..=6u32 {
            let xi = &g1 / rational::qi(2) + &g2 + rational::qi(l as i64);
            let (vp, vm) = de_coefficients_exact(&g1, &g2, &xi).unwrap();
            let (up, down) = rr_coefficients(&g1, &g2, l);
            assert_eq!(vp / rational::qi(4), up);
            assert_eq!(vm / rational::qi(4), down);
        }
    }

    #[test]
    fn jacobi_p_matches_series() {
        let (g1, g2) = (rational::q(1, 2), rational::q(1, 3));
        let l = 4;
        let x = 1.3;
        let xi = 0.25 + 1.0 / 3.0 + l as f64;
        let f = gauss_2f1_jacobi(&HypergeometricParams::new(0.5, 1.0 / 3.0, xi, x)).unwrap();
        let sh = libm::sinh(0.5 * x);
        let p = eval_poly_f64(&jacobi_p_in_s(&g1, &g2, l), sh * sh);
        assert!((f - p).abs() < 1e-11 * p.abs().max(1.0));
    }

    #[test]
    fn even_laurent_conversion() {
        use crate::rootsys::Weight;
        // e^{2x} + e^{-2x} = (2 + 4s)^2 - 2 = 2 + 16 s + 16 s^2
        let mut p = ExpPoly::zero();
        p.add_term(Weight::from_numerators(vec![2]), Q::one());
        p.add_term(Weight::from_numerators(vec![-2]), Q::one());
        assert_eq!(
            even_laurent_in_s(&p).unwrap(),
            vec![rational::qi(2), rational::qi(16), rational::qi(16)]
        );
        let mut odd = ExpPoly::zero();
        odd.add_term(Weight::from_numerators(vec![1]), Q::one());
        assert!(even_laurent_in_s(&odd).is_err());
    }
}

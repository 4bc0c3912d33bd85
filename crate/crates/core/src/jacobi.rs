//! Heckman-Opdam Jacobi polynomials via the triangular recursion coming from
//! the eigenvalue equation, with Opdam's leading coefficient and an exact
//! eigencheck as independent cross-checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::rootsys::{Multiplicities, RootDatum, Weight};
use crate::weylalg::{self, ExpPoly};

/// `P_lambda = sum_{mu <= lambda} c_mu m_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiPolynomial {
    lambda: Weight,
    mults: Multiplicities,
    /// Coefficients with `c_lambda = 1`.
    monic: BTreeMap<Weight, Q>,
    /// `sum_mu c_mu |W mu|` in the monic normalization, i.e. `P(0)`.
    value_at_zero: Q,
}

impl JacobiPolynomial {
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn mults(&self) -> &Multiplicities {
        &self.mults
    }

    /// Coefficients normalized so that `P_lambda(0) = 1`.
    pub fn coeffs(&self) -> BTreeMap<Weight, Q> {
        self.monic
            .iter()
            .map(|(w, c)| (w.clone(), c / &self.value_at_zero))
            .collect()
    }

    /// Coefficients with leading coefficient 1.
    pub fn monic_coeffs(&self) -> &BTreeMap<Weight, Q> {
        &self.monic
    }

    /// `c_{lambda,lambda}` in the `P(0) = 1` normalization.
    pub fn leading_coefficient(&self) -> Q {
        self.value_at_zero.recip()
    }

    /// Full Laurent expansion in the `P(0) = 1` normalization.
    pub fn to_exp_poly(&self, datum: &RootDatum) -> ExpPoly {
        let c = self.coeffs();
        weylalg::from_orbit_coeffs(datum, c.iter())
    }

    /// Normalized coefficients on dominant weights, i.e. the dominant part
    /// of [`Self::to_exp_poly`].
    pub fn dominant_coeffs(&self) -> BTreeMap<Weight, Q> {
        self.coeffs()
    }
}

/// Builds `P_lambda` by descending recursion on dominant weights below `lambda`.
pub fn jacobi_polynomial(
    datum: &RootDatum,
    mults: &Multiplicities,
    lambda: &Weight,
) -> Result<JacobiPolynomial> {
    let below = datum.dominant_weights_below(lambda)?;
    let rho = datum.rho(mults);
    let two_rho_lambda: Vec<Q> = rho
        .iter()
        .zip(datum.coords_q(lambda))
        .map(|(r, l)| r * rational::qi(2) + l)
        .collect();
    let lambda_norm = datum.inner(lambda, lambda);
    let positive: Vec<usize> = datum.positive_roots().collect();

    let mut monic: BTreeMap<Weight, Q> = BTreeMap::new();
    monic.insert(lambda.clone(), Q::one());
    for mu in below.iter().skip(1) {
        let mut rhs = Q::zero();
        for &a in &positive {
            let alpha = datum.root(a);
            let mut acc = Q::zero();
            let mut j = 1;
            loop {
                let nu = mu.add_scaled(j, alpha);
                if datum.inner(&nu, &nu) > lambda_norm {
                    break;
                }
                let dom = datum.dominant_only(&nu);
                if let Some(c) = monic.get(&dom) {
                    acc += c * rational::from_r64(&datum.inner(&nu, alpha));
                }
                j += 1;
            }
            if !acc.is_zero() {
                rhs += acc * mults.get(datum, a);
            }
        }
        // E(rho + lambda) - E(rho + mu) = <lambda + mu + 2 rho, lambda - mu>
        let sum: Vec<Q> = two_rho_lambda
            .iter()
            .zip(datum.coords_q(mu))
            .map(|(a, b)| a + b)
            .collect();
        let diff = datum.coords_q(&(lambda - mu));
        let denom = datum.inner_q(&sum, &diff);
        if denom.is_zero() {
            return Err(Error::Internal(format!(
                "vanishing recursion denominator at mu = {}",
                datum.describe(mu)
            )));
        }
        let c = rhs * rational::qi(2) / denom;
        if !c.is_zero() {
            monic.insert(mu.clone(), c);
        }
    }
    let value_at_zero = monic.iter().fold(Q::zero(), |acc, (mu, c)| {
        acc + c * rational::qi(datum.orbit_size(mu) as i64)
    });
    if value_at_zero.is_zero() {
        return Err(Error::Internal("P_lambda(0) vanishes".into()));
    }
    Ok(JacobiPolynomial {
        lambda: lambda.clone(),
        mults: mults.clone(),
        monic,
        value_at_zero,
    })
}

/// Opdam's closed product for `c_{lambda,lambda}` in the `P(0) = 1`
/// normalization, with `g_{alpha/2} = 0` when `alpha/2` is not a root.
pub fn opdam_leading_coefficient(
    datum: &RootDatum,
    mults: &Multiplicities,
    lambda: &Weight,
) -> Result<Q> {
    datum.check_weight(lambda)?;
    if !datum.is_dominant(lambda) {
        return Err(Error::NotDominant(datum.describe(lambda)));
    }
    let rho = datum.rho(mults);
    let half = rational::q(1, 2);
    let mut out = Q::one();
    for a in datum.positive_roots() {
        let k = datum.pairing(lambda, a);
        if k == 0 {
            continue;
        }
        let g = mults.get(datum, a);
        let g_half = datum
            .half_root(a)
            .map(|h| mults.get(datum, h) * &half)
            .unwrap_or_else(Q::zero);
        let base = datum.pairing_q(&rho, a) + g_half;
        for j in 0..k {
            let num = &base + rational::qi(j);
            let den = &num + g;
            if den.is_zero() {
                return Err(Error::Internal("vanishing factor in leading coefficient".into()));
            }
            out *= num / den;
        }
    }
    Ok(out)
}

/// Outcome of `L P_lambda = E(rho_g + lambda) P_lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub lambda: Weight,
    pub eigenvalue: Q,
    pub n_terms: usize,
    /// `L P - E P`; empty on success.
    pub residual: ExpPoly,
}

impl EigenReport {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn verify_eigen_poly(datum: &RootDatum, p: &JacobiPolynomial) -> Result<EigenReport> {
    let full = p.to_exp_poly(datum);
    let lp = weylalg::apply_l(datum, p.mults(), &full)?;
    let xi = datum.shifted(p.mults(), p.lambda());
    let e = weylalg::eigenvalue_e(datum, p.mults(), &xi);
    let residual = lp.sub(&full.scale(&e));
    Ok(EigenReport {
        lambda: p.lambda().clone(),
        eigenvalue: e,
        n_terms: full.len(),
        residual,
    })
}

pub fn verify_eigen(
    datum: &RootDatum,
    mults: &Multiplicities,
    lambda: &Weight,
) -> Result<EigenReport> {
    let p = jacobi_polynomial(datum, mults, lambda)?;
    verify_eigen_poly(datum, &p)
}

/// Memo of Jacobi polynomials for one datum and one multiplicity sample.
#[derive(Clone, Debug)]
pub struct JacobiCache {
    mults: Multiplicities,
    polys: BTreeMap<Weight, JacobiPolynomial>,
}

impl JacobiCache {
    pub fn new(mults: Multiplicities) -> JacobiCache {
        JacobiCache {
            mults,
            polys: BTreeMap::new(),
        }
    }

    pub fn mults(&self) -> &Multiplicities {
        &self.mults
    }

    pub fn get(&mut self, datum: &RootDatum, lambda: &Weight) -> Result<&JacobiPolynomial> {
        if !self.polys.contains_key(lambda) {
            let p = jacobi_polynomial(datum, &self.mults, lambda)?;
            self.polys.insert(lambda.clone(), p);
        }
        Ok(&self.polys[lambda])
    }

    /// All polynomials built so far, in canonical order.
    pub fn polynomials(&self) -> impl Iterator<Item = &JacobiPolynomial> {
        self.polys.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::rootsys::Family;
    use proptest::prelude::*;

    fn dat(f: Family, n: usize) -> RootDatum {
        RootDatum::new(f, n).unwrap()
    }

    #[test]
    fn trivial_weight_gives_constant() {
        let a2 = dat(Family::A, 2);
        let m = Multiplicities::uniform(&a2, rational::q(3, 7)).unwrap();
        let p = jacobi_polynomial(&a2, &m, &Weight::zero(3)).unwrap();
        assert_eq!(p.to_exp_poly(&a2), ExpPoly::constant(3, Q::one()));
        assert_eq!(opdam_leading_coefficient(&a2, &m, &Weight::zero(3)).unwrap(), Q::one());
    }

    #[test]
    fn small_leading_coefficients() {
        let a1 = dat(Family::A, 1);
        let m = Multiplicities::uniform(&a1, rational::q(1, 2)).unwrap();
        let w = a1.fundamental_weights()[0].clone();
        let p = jacobi_polynomial(&a1, &m, &w).unwrap();
        assert_eq!(p.leading_coefficient(), rational::q(1, 2));
        let a2 = dat(Family::A, 2);
        let m = Multiplicities::uniform(&a2, rational::q(3, 7)).unwrap();
        let p = jacobi_polynomial(&a2, &m, &a2.fundamental_weights()[0]).unwrap();
        assert_eq!(p.leading_coefficient(), rational::q(1, 3));
    }

    #[test]
    fn bc1_leading_coefficient_closed_form() {
        // (1 + g1 + 2 g2) / (2 + 4 g1 + 4 g2) for lambda = e_1
        let bc1 = dat(Family::BC, 1);
        let (g1, g2) = (rational::q(5, 11), rational::q(9, 4));
        let m = Multiplicities::new(&bc1, vec![g1.clone(), g2.clone()]).unwrap();
        let lam = bc1.fundamental_weights()[0].clone();
        let expect = (Q::one() + &g1 + &g2 * rational::qi(2))
            / (rational::qi(2) + &g1 * rational::qi(4) + &g2 * rational::qi(4));
        assert_eq!(opdam_leading_coefficient(&bc1, &m, &lam).unwrap(), expect);
        let p = jacobi_polynomial(&bc1, &m, &lam).unwrap();
        assert_eq!(p.leading_coefficient(), expect);
    }

    #[test]
    fn eigencheck_examples() {
        let a2 = dat(Family::A, 2);
        let m = Multiplicities::uniform(&a2, rational::q(3, 7)).unwrap();
        let f = a2.fundamental_weights().to_vec();
        assert!(verify_eigen(&a2, &m, &(&f[0] + &f[1])).unwrap().passed());
        let b2 = dat(Family::B, 2);
        let m = Multiplicities::new(&b2, vec![rational::q(5, 11), rational::q(9, 4)]).unwrap();
        let lam = b2.fundamental_weights()[0].scaled(2);
        assert!(verify_eigen(&b2, &m, &lam).unwrap().passed());
        assert!(verify_eigen(&b2, &m, &Weight::zero(2)).unwrap().passed());
    }

    #[test]
    fn wrong_eigenvalue_is_detected() {
        let a2 = dat(Family::A, 2);
        let m = Multiplicities::uniform(&a2, rational::q(3, 7)).unwrap();
        let other = Multiplicities::uniform(&a2, rational::q(5, 7)).unwrap();
        let lam = a2.fundamental_weights()[0].scaled(2);
        let p = jacobi_polynomial(&a2, &other, &lam).unwrap();
        let full = p.to_exp_poly(&a2);
        let lp = weylalg::apply_l(&a2, &m, &full).unwrap();
        let e = weylalg::eigenvalue_e(&a2, &m, &a2.shifted(&m, &lam));
        assert!(!lp.sub(&full.scale(&e)).is_zero());
    }

    #[test]
    fn rejects_non_dominant() {
        let a1 = dat(Family::A, 1);
        let m = Multiplicities::uniform(&a1, Q::one()).unwrap();
        let w = -&a1.fundamental_weights()[0];
        assert!(matches!(jacobi_polynomial(&a1, &m, &w), Err(Error::NotDominant(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn normalization_invariance_and_leading_term(
            a in 0i64..3, b in 0i64..2, p in 1i64..12, q in 1i64..12, r in 1i64..12, s in 1i64..12,
        ) {
            let c3 = dat(Family::C, 2);
            let m = Multiplicities::new(&c3, vec![rational::q(p, q), rational::q(r, s)]).unwrap();
            let lam = c3.from_fundamental(&[a, b]).unwrap();
            let poly = jacobi_polynomial(&c3, &m, &lam).unwrap();
            let full = poly.to_exp_poly(&c3);
            prop_assert_eq!(full.value_at_zero(), Q::one());
            prop_assert!(full.is_w_invariant(&c3));
            prop_assert_eq!(poly.leading_coefficient(), opdam_leading_coefficient(&c3, &m, &lam).unwrap());
            for mu in poly.monic_coeffs().keys() {
                prop_assert!(c3.dominance_leq(mu, &lam).unwrap());
            }
        }
    }
}

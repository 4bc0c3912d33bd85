//! Laurent polynomials on the weight lattice and the hypergeometric
//! operator `L` acting on them.

use alloc::collections::BTreeMap;
use alloc::format;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::rootsys::{Multiplicities, RootDatum, Weight};

/// Finite sum `sum_nu c_nu e^nu` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpPoly {
    terms: BTreeMap<Weight, Q>,
}

impl ExpPoly {
    pub fn zero() -> ExpPoly {
        ExpPoly::default()
    }

    pub fn constant(dim: usize, c: Q) -> ExpPoly {
        ExpPoly::monomial(Weight::zero(dim), c)
    }

    pub fn monomial(w: Weight, c: Q) -> ExpPoly {
        let mut p = ExpPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Weight) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, w: Weight, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, k: &Q, other: &ExpPoly) {
        if k.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scale(&self, k: &Q) -> ExpPoly {
        if k.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u + v, a * b);
            }
        }
        out
    }

    /// Value at `x = 0`: the sum of all coefficients.
    pub fn value_at_zero(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    /// Floating-point evaluation at `x` given in actual coordinates.
    pub fn eval_f64(&self, datum: &RootDatum, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(w, c)| rational::to_f64(c) * libm::exp(datum.inner_weight_f64(w, x)))
            .sum()
    }

    /// The image under a Weyl group element given as a map on weights.
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    pub fn is_w_invariant(&self, datum: &RootDatum) -> bool {
        self.terms.iter().all(|(w, c)| {
            (0..datum.rank()).all(|i| {
                let t = datum.simple_reflection(w, i);
                self.terms.get(&t) == Some(c)
            })
        })
    }

    /// Coefficients on dominant weights (determines a W-invariant element).
    pub fn dominant_part(&self, datum: &RootDatum) -> BTreeMap<Weight, Q> {
        self.terms
            .iter()
            .filter(|(w, _)| datum.is_dominant(w))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }
}

/// Orbit sum `m_mu = sum_{nu in W mu} e^nu`.
pub fn orbit_sum(datum: &RootDatum, mu: &Weight) -> Result<ExpPoly> {
    datum.check_weight(mu)?;
    if !datum.is_dominant(mu) {
        return Err(Error::NotDominant(datum.describe(mu)));
    }
    Ok(orbit_sum_unchecked(datum, mu))
}

pub(crate) fn orbit_sum_unchecked(datum: &RootDatum, mu: &Weight) -> ExpPoly {
    ExpPoly {
        terms: datum
            .orbit_unchecked(mu)
            .into_iter()
            .map(|w| (w, Q::one()))
            .collect(),
    }
}

/// W-invariant polynomial from its dominant coefficients.
pub fn from_orbit_coeffs<'a>(
    datum: &RootDatum,
    coeffs: impl IntoIterator<Item = (&'a Weight, &'a Q)>,
) -> ExpPoly {
    let mut out = ExpPoly::zero();
    for (mu, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        for w in datum.orbit_unchecked(mu) {
            out.add_term(w, c.clone());
        }
    }
    out
}

/// `E(xi) = <xi, xi> - <rho_g, rho_g>`.
pub fn eigenvalue_e(datum: &RootDatum, mults: &Multiplicities, xi: &[Q]) -> Q {
    let rho = datum.rho(mults);
    datum.inner_q(xi, xi) - datum.inner_q(&rho, &rho)
}

/// Divides `f` by `1 - e^{-alpha}` along alpha-strings; errors if the
/// remainder is nonzero.
fn divide_by_one_minus(datum: &RootDatum, root: usize, f: &ExpPoly) -> Result<ExpPoly> {
    let alpha = datum.root(root);
    // string base (pairing 0 or 1 with alpha^vee) -> position -> coefficient
    let mut strings: BTreeMap<Weight, BTreeMap<i64, Q>> = BTreeMap::new();
    for (w, c) in f.terms() {
        let k = datum.pairing(w, root).div_euclid(2);
        let base = w.add_scaled(-k, alpha);
        strings.entry(base).or_default().insert(k, c.clone());
    }
    let mut out = ExpPoly::zero();
    for (base, string) in strings {
        let lo = *string.keys().next().unwrap();
        let hi = *string.keys().next_back().unwrap();
        let mut acc = Q::zero();
        for j in (lo + 1..=hi).rev() {
            if let Some(c) = string.get(&j) {
                acc += c;
            }
            out.add_term(base.add_scaled(j, alpha), acc.clone());
        }
        acc += &string[&lo];
        if !acc.is_zero() {
            return Err(Error::Internal(format!(
                "nonzero remainder {acc} dividing by 1 - e^(-alpha)"
            )));
        }
    }
    Ok(out)
}

/// `L p` for a W-invariant `p`, computed exactly.
pub fn apply_l(datum: &RootDatum, mults: &Multiplicities, p: &ExpPoly) -> Result<ExpPoly> {
    if !p.is_w_invariant(datum) {
        return Err(Error::NotInvariant);
    }
    let mut out = ExpPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(w.clone(), c * rational::from_r64(&datum.inner(w, w)));
    }
    for a in datum.positive_roots() {
        let alpha = datum.root(a);
        let mut q = ExpPoly::zero();
        for (w, c) in p.terms() {
            let d = c * rational::from_r64(&datum.inner(w, alpha));
            q.add_term(w - alpha, d.clone());
            q.add_term(w.clone(), d);
        }
        let h = divide_by_one_minus(datum, a, &q)?;
        out.add_scaled(mults.get(datum, a), &h);
    }
    Ok(out)
}

/// `E_omega = sum_{mu dominant, mu <= omega} |W_mu(omega)| m_mu` for small `omega`.
pub fn expansion_e_omega(datum: &RootDatum, omega: &Weight) -> Result<ExpPoly> {
    if !datum.is_small(omega)? {
        return Err(Error::NotSmall(datum.describe(omega)));
    }
    let mut out = ExpPoly::zero();
    for mu in datum.dominant_below_unchecked(omega) {
        let k = stabilizer_orbit_size(datum, &mu, omega);
        for w in datum.orbit_unchecked(&mu) {
            out.add_term(w, rational::qi(k as i64));
        }
    }
    Ok(out)
}

/// `|W_mu(omega)|`.
pub(crate) fn stabilizer_orbit_size(datum: &RootDatum, mu: &Weight, omega: &Weight) -> usize {
    datum.stabilizer_orbit(mu, omega).len()
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
    fn orbit_sum_examples() {
        let a1 = dat(Family::A, 1);
        let w = a1.fundamental_weights()[0].clone();
        let m = orbit_sum(&a1, &w).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.value_at_zero(), rational::qi(2));
        let zero = orbit_sum(&a1, &Weight::zero(2)).unwrap();
        assert_eq!(zero, ExpPoly::constant(2, Q::one()));
        let a2 = dat(Family::A, 2);
        assert_eq!(orbit_sum(&a2, &a2.fundamental_weights()[0]).unwrap().len(), 3);
        assert!(orbit_sum(&a1, &-&w).is_err());
    }

    #[test]
    fn constants_are_annihilated() {
        let b2 = dat(Family::B, 2);
        let m = Multiplicities::new(&b2, vec![rational::q(3, 7), rational::q(5, 11)]).unwrap();
        let one = ExpPoly::constant(2, Q::one());
        assert!(apply_l(&b2, &m, &one).unwrap().is_zero());
    }

    #[test]
    fn a1_orbit_sum_by_hand() {
        // L(e^w + e^-w) with <w,w> = 1/2, <w,a> = 1:
        // 1/2 (e^w + e^-w) + g (e^w - e^-w)(1 + e^-a)/(1 - e^-a), and
        // (e^w - e^-w)/(1 - e^-a) = e^w since e^-w = e^{w - a}.
        let a1 = dat(Family::A, 1);
        let g = rational::q(3, 7);
        let m = Multiplicities::uniform(&a1, g.clone()).unwrap();
        let w = a1.fundamental_weights()[0].clone();
        let p = orbit_sum(&a1, &w).unwrap();
        let lp = apply_l(&a1, &m, &p).unwrap();
        let half = rational::q(1, 2);
        let mut expect = p.scale(&half);
        expect.add_term(w.clone(), g.clone());
        expect.add_term(-&w, g.clone());
        assert_eq!(lp, expect);
    }

    #[test]
    fn non_invariant_rejected() {
        let a1 = dat(Family::A, 1);
        let m = Multiplicities::uniform(&a1, Q::one()).unwrap();
        let p = ExpPoly::monomial(a1.fundamental_weights()[0].clone(), Q::one());
        assert_eq!(apply_l(&a1, &m, &p), Err(Error::NotInvariant));
    }

    #[test]
    fn l_preserves_invariance_and_triangularity() {
        let g2 = dat(Family::G, 2);
        let m = Multiplicities::new(&g2, vec![rational::q(3, 7), rational::q(9, 4)]).unwrap();
        let f = g2.fundamental_weights().to_vec();
        let lam = &f[0] + &f[1];
        let mut p = orbit_sum(&g2, &lam).unwrap();
        p.add_scaled(&rational::q(2, 5), &orbit_sum(&g2, &f[0]).unwrap());
        let lp = apply_l(&g2, &m, &p).unwrap();
        assert!(lp.is_w_invariant(&g2));
        for mu in lp.dominant_part(&g2).keys() {
            assert!(g2.dominance_leq(mu, &lam).unwrap());
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let a1 = dat(Family::A, 1);
        let m = Multiplicities::uniform(&a1, Q::one()).unwrap();
        let rho = a1.rho(&m);
        assert!(eigenvalue_e(&a1, &m, &rho).is_zero());
        let w = a1.fundamental_weights()[0].clone();
        let xi = a1.shifted(&m, &w);
        assert_eq!(eigenvalue_e(&a1, &m, &xi), rational::q(3, 2));
    }

    #[test]
    fn e_omega_special_cases() {
        let a2 = dat(Family::A, 2);
        let f = a2.fundamental_weights().to_vec();
        assert_eq!(
            expansion_e_omega(&a2, &f[0]).unwrap(),
            orbit_sum(&a2, &f[0]).unwrap()
        );
        let theta = &f[0] + &f[1];
        let m = orbit_sum(&a2, &theta).unwrap();
        let expect = m.add(&ExpPoly::constant(3, m.value_at_zero()));
        assert_eq!(expansion_e_omega(&a2, &theta).unwrap(), expect);
        assert_eq!(
            expansion_e_omega(&a2, &Weight::zero(3)).unwrap(),
            ExpPoly::constant(3, Q::one())
        );
        let big = f[0].scaled(3);
        assert!(matches!(expansion_e_omega(&a2, &big), Err(Error::NotSmall(_))));
    }

    #[test]
    fn e_omega_value_at_zero() {
        let c3 = dat(Family::C, 3);
        for omega in c3.fundamental_weights() {
            let e = expansion_e_omega(&c3, omega).unwrap();
            assert!(e.is_w_invariant(&c3));
            let expect: usize = c3
                .dominant_weights_below(omega)
                .unwrap()
                .iter()
                .map(|mu| stabilizer_orbit_size(&c3, mu, omega) * c3.orbit_size(mu))
                .sum();
            assert_eq!(e.value_at_zero(), rational::qi(expect as i64));
        }
    }

    fn small_poly(datum: &RootDatum, coeffs: &[(i64, i64, i64)]) -> ExpPoly {
        let mut p = ExpPoly::zero();
        for &(a, b, c) in coeffs {
            let w = datum.from_fundamental(&[a, b]).unwrap();
            p.add_term(w, rational::qi(c));
        }
        p
    }

    proptest! {
        #[test]
        fn product_matches_evaluation(
            u in proptest::collection::vec((-2i64..3, -2i64..3, -5i64..6), 1..5),
            v in proptest::collection::vec((-2i64..3, -2i64..3, -5i64..6), 1..5),
            x in proptest::collection::vec(-1.0f64..1.0, 2),
        ) {
            let b2 = dat(Family::B, 2);
            let p = small_poly(&b2, &u);
            let q = small_poly(&b2, &v);
            let pq = p.mul(&q).eval_f64(&b2, &x);
            let direct = p.eval_f64(&b2, &x) * q.eval_f64(&b2, &x);
            prop_assert!((pq - direct).abs() <= 1e-12 * (1.0 + direct.abs()));
        }

        #[test]
        fn l_output_is_invariant(a in 0i64..3, b in 0i64..3, c in 1i64..5) {
            let a2 = dat(Family::A, 2);
            let m = Multiplicities::uniform(&a2, rational::q(c, 3)).unwrap();
            let lam = a2.from_fundamental(&[a, b]).unwrap();
            let p = orbit_sum(&a2, &lam).unwrap();
            prop_assert!(apply_l(&a2, &m, &p).unwrap().is_w_invariant(&a2));
        }
    }
}

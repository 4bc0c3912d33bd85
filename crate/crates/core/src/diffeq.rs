//! Coefficients of the spectral difference equation for small weights and
//! its exact verification on the discrete spectrum `rho_g + P^+`, where it
//! becomes a Pieri formula for Jacobi polynomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jacobi::JacobiCache;
use crate::rational::{self, Q};
use crate::rootsys::{Multiplicities, RootDatum, Weight};
use crate::weylalg::{self, ExpPoly};

/// Deliberate corruption of one coefficient formula, used as a negative
/// control for the verification suites.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Perturbation {
    #[default]
    None,
    /// Use `+g` instead of `-g` in the pairing-2 factor of `U`.
    FlipUSign,
    /// Omit the pairing-2 product in `V`.
    DropVPairingTwo,
}

impl Perturbation {
    pub fn parse(s: &str) -> Option<Perturbation> {
        match s {
            "none" => Some(Perturbation::None),
            "flip-u-sign" => Some(Perturbation::FlipUSign),
            "drop-v-pairing-two" => Some(Perturbation::DropVPairingTwo),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Perturbation::None => "none",
            Perturbation::FlipUSign => "flip-u-sign",
            Perturbation::DropVPairingTwo => "drop-v-pairing-two",
        }
    }
}

/// One rational factor `(shift + z + sign g_alpha) / (shift + z)` with
/// `z = <xi, alpha^vee>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factor {
    pub root: usize,
    pub shift: i64,
    pub sign: i64,
}

impl Factor {
    fn eval(&self, mults: &Multiplicities, datum: &RootDatum, z: &[Q]) -> Result<Q> {
        let den = rational::qi(self.shift) + &z[self.root];
        if den.is_zero() {
            return Err(pole(datum, self.root, self.shift));
        }
        let num = &den + mults.get(datum, self.root) * rational::qi(self.sign);
        Ok(num / den)
    }

    /// Affine forms `(numerator, denominator)` in the pairing `z`, rendered
    /// for listings.
    pub fn render(&self, datum: &RootDatum) -> (String, String) {
        let z = format!("<xi,a{}>", self.root);
        let g = format!("g{}", datum.root_orbit(self.root));
        let sgn = if self.sign > 0 { "+" } else { "-" };
        if self.shift == 0 {
            (format!("{z} {sgn} {g}"), z)
        } else {
            (
                format!("{} + {z} {sgn} {g}", self.shift),
                format!("{} + {z}", self.shift),
            )
        }
    }
}

pub(crate) fn pole(datum: &RootDatum, root: usize, shift: i64) -> Error {
    Error::PoleAtSpectralPoint(format!(
        "{} + <xi, alpha^vee> = 0 for alpha = {:?}",
        shift,
        datum.coords(datum.root(root))
    ))
}

/// Pairings `<xi, alpha^vee>` for every root, indexed like `datum.roots()`.
pub fn root_pairings(datum: &RootDatum, xi: &[Q]) -> Vec<Q> {
    (0..datum.roots().len()).map(|a| datum.pairing_q(xi, a)).collect()
}

/// Factor list of `V_nu`.
pub fn v_factors(datum: &RootDatum, nu: &Weight, perturb: Perturbation) -> Vec<Factor> {
    let mut out = Vec::new();
    for a in 0..datum.roots().len() {
        let k = datum.pairing(nu, a);
        if k > 0 {
            out.push(Factor { root: a, shift: 0, sign: 1 });
        }
        if k == 2 && perturb != Perturbation::DropVPairingTwo {
            out.push(Factor { root: a, shift: 1, sign: 1 });
        }
    }
    out
}

/// Factor list of `U_{nu,eta}` (products over the stabilizer roots of `nu`).
pub fn u_factors(datum: &RootDatum, nu: &Weight, eta: &Weight, perturb: Perturbation) -> Vec<Factor> {
    let sign = if perturb == Perturbation::FlipUSign { 1 } else { -1 };
    let mut out = Vec::new();
    for a in datum.stabilizer_roots(nu) {
        let k = datum.pairing(eta, a);
        if k > 0 {
            out.push(Factor { root: a, shift: 0, sign: 1 });
        }
        if k == 2 {
            out.push(Factor { root: a, shift: 1, sign });
        }
    }
    out
}

pub fn eval_factors(
    datum: &RootDatum,
    mults: &Multiplicities,
    factors: &[Factor],
    z: &[Q],
) -> Result<Q> {
    let mut out = Q::one();
    for f in factors {
        out *= f.eval(mults, datum, z)?;
    }
    Ok(out)
}

/// `V_nu(xi)`.
pub fn coeff_v(datum: &RootDatum, mults: &Multiplicities, nu: &Weight, xi: &[Q]) -> Result<Q> {
    datum.check_weight(nu)?;
    let z = root_pairings(datum, xi);
    eval_factors(datum, mults, &v_factors(datum, nu, Perturbation::None), &z)
}

/// `U_{nu,eta}(xi)`.
pub fn coeff_u(
    datum: &RootDatum,
    mults: &Multiplicities,
    nu: &Weight,
    eta: &Weight,
    xi: &[Q],
) -> Result<Q> {
    datum.check_weight(nu)?;
    datum.check_weight(eta)?;
    let z = root_pairings(datum, xi);
    eval_factors(datum, mults, &u_factors(datum, nu, eta, Perturbation::None), &z)
}

/// One summand `(nu, eta)` of the difference equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub nu: Weight,
    pub eta: Weight,
    pub v: Vec<Factor>,
    pub u: Vec<Factor>,
}

/// The index set of the double sum for a small weight `omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriDatum {
    pub omega: Weight,
    pub terms: Vec<Term>,
}

impl PieriDatum {
    pub fn new(datum: &RootDatum, omega: &Weight, perturb: Perturbation) -> Result<PieriDatum> {
        if !datum.family().is_reduced() {
            return Err(Error::InvalidType {
                family: String::from(datum.family().name()),
                rank: datum.rank(),
            });
        }
        if !datum.is_small(omega)? {
            return Err(Error::NotSmall(datum.describe(omega)));
        }
        let mut terms = Vec::new();
        for nu in datum.saturated_set(omega)? {
            let (_, word) = datum.dominant_unchecked(&nu);
            let seed = word.apply_inverse(datum, omega);
            let v = v_factors(datum, &nu, perturb);
            for eta in datum.stabilizer_orbit(&nu, &seed) {
                let u = u_factors(datum, &nu, &eta, perturb);
                terms.push(Term {
                    nu: nu.clone(),
                    eta,
                    v: v.clone(),
                    u,
                });
            }
        }
        Ok(PieriDatum {
            omega: omega.clone(),
            terms,
        })
    }

    /// Number of distinct shifts `nu`.
    pub fn n_shifts(&self) -> usize {
        let mut nus: Vec<&Weight> = self.terms.iter().map(|t| &t.nu).collect();
        nus.dedup();
        nus.len()
    }

    /// `sum_eta U_{nu,eta}(xi) V_nu(xi)` for each `nu`, in canonical order.
    pub fn coefficients(
        &self,
        datum: &RootDatum,
        mults: &Multiplicities,
        xi: &[Q],
    ) -> Result<BTreeMap<Weight, Q>> {
        let z = root_pairings(datum, xi);
        let mut out: BTreeMap<Weight, Q> = BTreeMap::new();
        for t in &self.terms {
            let c = eval_factors(datum, mults, &t.v, &z)? * eval_factors(datum, mults, &t.u, &z)?;
            *out.entry(t.nu.clone()).or_insert_with(Q::zero) += c;
        }
        Ok(out)
    }
}

/// A surviving term `(nu, coefficient at rho_g + lambda)` of the Pieri formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriTerm {
    pub nu: Weight,
    pub coeff: Q,
}

/// Terms of the Pieri formula for `E_omega P_lambda`. Shifts with
/// `lambda + nu` not dominant are checked to carry an exactly vanishing
/// coefficient; those that do not are returned in the second list.
pub fn pieri_terms(
    datum: &RootDatum,
    mults: &Multiplicities,
    pd: &PieriDatum,
    lambda: &Weight,
) -> Result<(Vec<PieriTerm>, Vec<PieriTerm>)> {
    datum.check_weight(lambda)?;
    if !datum.is_dominant(lambda) {
        return Err(Error::NotDominant(datum.describe(lambda)));
    }
    let xi = datum.shifted(mults, lambda);
    let coeffs = pd.coefficients(datum, mults, &xi)?;
    let mut kept = Vec::new();
    let mut bad = Vec::new();
    for (nu, coeff) in coeffs {
        if datum.is_dominant(&(lambda + &nu)) {
            kept.push(PieriTerm { nu, coeff });
        } else if !coeff.is_zero() {
            bad.push(PieriTerm { nu, coeff });
        }
    }
    Ok((kept, bad))
}

/// Outcome of one exact Pieri check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriReport {
    pub omega: Weight,
    pub lambda: Weight,
    pub n_terms: usize,
    /// Excluded shifts whose coefficient failed to vanish.
    pub nonvanishing: Vec<PieriTerm>,
    /// `E_omega P_lambda - sum coeff P_{lambda+nu}`; empty on success.
    pub residual: ExpPoly,
}

impl PieriReport {
    pub fn passed(&self) -> bool {
        self.nonvanishing.is_empty() && self.residual.is_zero()
    }
}

/// Exact check of `E_omega P_lambda = sum_nu (sum_eta U V)(rho_g + lambda) P_{lambda + nu}`.
pub fn verify_pieri(
    datum: &RootDatum,
    cache: &mut JacobiCache,
    pd: &PieriDatum,
    lambda: &Weight,
) -> Result<PieriReport> {
    let mults = cache.mults().clone();
    let (kept, nonvanishing) = pieri_terms(datum, &mults, pd, lambda)?;
    let e = weylalg::expansion_e_omega(datum, &pd.omega)?;
    let p = cache.get(datum, lambda)?.to_exp_poly(datum);
    let mut residual = e.mul(&p);
    for t in &kept {
        let q = cache.get(datum, &(lambda + &t.nu))?.to_exp_poly(datum);
        residual.add_scaled(&-t.coeff.clone(), &q);
    }
    Ok(PieriReport {
        omega: pd.omega.clone(),
        lambda: lambda.clone(),
        n_terms: pd.terms.len(),
        nonvanishing,
        residual,
    })
}

/// `1/2 sum_{nu in W omega} (V_nu(xi) + U_{0,nu}(xi))`.
pub fn quasi_minuscule_sum(
    datum: &RootDatum,
    mults: &Multiplicities,
    omega: &Weight,
    xi: &[Q],
) -> Result<Q> {
    let zero = Weight::zero(datum.dim());
    let mut acc = Q::zero();
    for nu in datum.weyl_orbit(omega)? {
        acc += coeff_v(datum, mults, &nu, xi)?;
        acc += coeff_u(datum, mults, &zero, &nu, xi)?;
    }
    Ok(acc / rational::qi(2))
}

/// Structural and numerical collapse of the general coefficient list to the
/// minuscule / quasi-minuscule forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationReport {
    pub kind: &'static str,
    pub structure_ok: bool,
    pub e_omega_ok: bool,
    /// `1/2 sum (V + U_0)` and `m_omega(0)` (quasi-minuscule only).
    pub identity: Option<(Q, Q)>,
}

impl SpecializationReport {
    pub fn passed(&self) -> bool {
        self.structure_ok && self.e_omega_ok && self.identity.as_ref().is_none_or(|(a, b)| a == b)
    }
}

pub fn specialization_consistency(
    datum: &RootDatum,
    mults: &Multiplicities,
    omega: &Weight,
    xi: &[Q],
) -> Result<SpecializationReport> {
    let pd = PieriDatum::new(datum, omega, Perturbation::None)?;
    let orbit = datum.weyl_orbit(omega)?;
    let m = weylalg::orbit_sum(datum, omega)?;
    let e = weylalg::expansion_e_omega(datum, omega)?;
    let zero = Weight::zero(datum.dim());
    let per_orbit_ok = |t: &Term| t.eta == t.nu && t.u.is_empty();
    if datum.is_minuscule(omega)? {
        let nus: Vec<Weight> = pd.terms.iter().map(|t| t.nu.clone()).collect();
        let structure_ok = nus == orbit && pd.terms.iter().all(per_orbit_ok);
        return Ok(SpecializationReport {
            kind: "minuscule",
            structure_ok,
            e_omega_ok: e == m,
            identity: None,
        });
    }
    if datum.is_quasi_minuscule(omega)? {
        let (zero_terms, orbit_terms): (Vec<&Term>, Vec<&Term>) =
            pd.terms.iter().partition(|t| t.nu == zero);
        let etas: Vec<Weight> = zero_terms.iter().map(|t| t.eta.clone()).collect();
        let nus: Vec<Weight> = orbit_terms.iter().map(|t| t.nu.clone()).collect();
        let structure_ok = etas == orbit
            && nus == orbit
            && orbit_terms.iter().all(|t| per_orbit_ok(t))
            && zero_terms.iter().all(|t| t.v.is_empty());
        let m0 = m.value_at_zero();
        let expect_e = m.add(&ExpPoly::constant(datum.dim(), m0.clone()));
        let lhs = quasi_minuscule_sum(datum, mults, omega, xi)?;
        return Ok(SpecializationReport {
            kind: "quasi-minuscule",
            structure_ok,
            e_omega_ok: e == expect_e,
            identity: Some((lhs, m0)),
        });
    }
    Err(Error::InvalidWeight(format!(
        "{} is neither minuscule nor quasi-minuscule",
        datum.describe(omega)
    )))
}

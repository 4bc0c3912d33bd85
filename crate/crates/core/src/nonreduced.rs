//! The spectral difference equations for the nonreduced system `BC_n` in
//! orthonormal coordinates, verified through the hyperoctahedral Pieri
//! formula for the Jacobi polynomials of the `BC_n` datum.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jacobi::JacobiCache;
use crate::rational::{self, Q};
use crate::rootsys::{Family, Multiplicities, RootDatum, Weight};
use crate::weylalg::ExpPoly;

/// The three multiplicities `(g, g1, g2)` of `e_j +- e_k`, `e_j`, `2 e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcParams {
    pub g: Q,
    pub g1: Q,
    pub g2: Q,
}

impl BcParams {
    pub fn new(g: Q, g1: Q, g2: Q) -> BcParams {
        BcParams { g, g1, g2 }
    }

    /// The per-orbit multiplicities on a `BC_n` datum (for `n = 1` the
    /// value `g` is unused).
    pub fn multiplicities(&self, datum: &RootDatum) -> Result<Multiplicities> {
        if datum.family() != Family::BC {
            return Err(Error::InvalidType {
                family: datum.family().name().into(),
                rank: datum.rank(),
            });
        }
        let values = if datum.rank() == 1 {
            vec![self.g1.clone(), self.g2.clone()]
        } else {
            vec![self.g.clone(), self.g1.clone(), self.g2.clone()]
        };
        Multiplicities::new(datum, values)
    }

    /// `rho_j = (n - j) g + g1/2 + g2`.
    pub fn rho(&self, n: usize) -> Vec<Q> {
        (1..=n)
            .map(|j| rational::qi((n - j) as i64) * &self.g + &self.g1 / rational::qi(2) + &self.g2)
            .collect()
    }
}

/// `J` with signs: `e_{eps J} = sum_{j in J} eps_j e_j` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignedSubset {
    entries: Vec<(usize, i64)>,
}

impl SignedSubset {
    pub fn new(mut entries: Vec<(usize, i64)>) -> Result<SignedSubset> {
        entries.sort();
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidWeight("repeated index in signed subset".into()));
        }
        if entries.iter().any(|&(_, s)| s != 1 && s != -1) {
            return Err(Error::InvalidWeight("signs must be +1 or -1".into()));
        }
        Ok(SignedSubset { entries })
    }

    pub fn entries(&self) -> &[(usize, i64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut v = vec![0i64; n];
        for &(j, s) in &self.entries {
            v[j] = s;
        }
        Weight::from_numerators(v)
    }

    /// All signed subsets of the given index set with exactly `size` elements.
    pub fn all(indices: &[usize], size: usize) -> Vec<SignedSubset> {
        let mut out = Vec::new();
        for subset in subsets(indices, size) {
            for mask in 0..(1u32 << size) {
                let entries = subset
                    .iter()
                    .enumerate()
                    .map(|(b, &j)| (j, if mask >> b & 1 == 1 { -1 } else { 1 }))
                    .collect();
                out.push(SignedSubset { entries });
            }
        }
        out
    }
}

fn subsets(indices: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if indices.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in indices.iter().enumerate() {
        for mut rest in subsets(&indices[i + 1..], size - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn ratio(num: Q, den: Q, what: &str) -> Result<Q> {
    if den.is_zero() {
        return Err(Error::PoleAtSpectralPoint(format!("{what} vanishes")));
    }
    Ok(num / den)
}

/// The common product shape of `V_{eps J}` and the summands of `U_{K,p}`:
/// singleton factors on `set`, cross factors against `others`, and pair
/// factors within `set` whose shifted numerator carries `pair_sign * g`.
fn signed_product(
    params: &BcParams,
    set: &SignedSubset,
    others: &[usize],
    xi: &[Q],
    pair_sign: i64,
) -> Result<Q> {
    let one = Q::one();
    let two = rational::qi(2);
    let shift = &params.g1 / &two + &params.g2;
    let g = &params.g;
    let mut out = Q::one();
    for (a, &(j, ej)) in set.entries.iter().enumerate() {
        let x = &xi[j] * rational::qi(ej);
        let num = (&x + &shift) * (&one + &two * &x + &params.g1);
        let den = &x * (&one + &two * &x);
        out *= ratio(num, den, "eps_j xi_j (1 + 2 eps_j xi_j)")?;
        for &k in others {
            for s in [1i64, -1] {
                let d = &x + &xi[k] * rational::qi(s);
                out *= ratio(&d + g, d, "eps_j xi_j +- xi_k")?;
            }
        }
        for &(jp, ejp) in &set.entries[a + 1..] {
            let d = &x + &xi[jp] * rational::qi(ejp);
            out *= ratio(&d + g, d.clone(), "eps_j xi_j + eps_j' xi_j'")?;
            let d1 = &one + &d;
            out *= ratio(&d1 + g * rational::qi(pair_sign), d1, "1 + eps_j xi_j + eps_j' xi_j'")?;
        }
    }
    Ok(out)
}

/// `V_{eps J}(xi)`.
pub fn coeff_v_signed(params: &BcParams, set: &SignedSubset, xi: &[Q]) -> Result<Q> {
    let n = xi.len();
    if set.entries.iter().any(|&(j, _)| j >= n) {
        return Err(Error::InvalidWeight("index out of range".into()));
    }
    let inside = set.indices();
    let others: Vec<usize> = (0..n).filter(|k| !inside.contains(k)).collect();
    signed_product(params, set, &others, xi, 1)
}

/// `U_{K,p}(xi)` for `K` a set of 0-based indices.
pub fn coeff_u_kp(params: &BcParams, k: &[usize], p: usize, xi: &[Q]) -> Result<Q> {
    if p > k.len() {
        return Err(Error::InvalidWeight(format!("p = {p} exceeds |K| = {}", k.len())));
    }
    let mut acc = Q::zero();
    for set in SignedSubset::all(k, p) {
        let inside = set.indices();
        let rest: Vec<usize> = k.iter().copied().filter(|i| !inside.contains(i)).collect();
        acc += signed_product(params, &set, &rest, xi, -1)?;
    }
    if p % 2 == 1 {
        acc = -acc;
    }
    Ok(acc)
}

/// `V_j(xi)` written out for `ell = 1` (independent of [`coeff_v_signed`]).
pub fn coeff_v_j(params: &BcParams, j: usize, xi: &[Q]) -> Result<Q> {
    let one = Q::one();
    let two = rational::qi(2);
    let x = &xi[j];
    let mut out = ratio(
        (x + &params.g1 / &two + &params.g2) * (&one + &two * x + &params.g1),
        x * (&one + &two * x),
        "xi_j (1 + 2 xi_j)",
    )?;
    for (k, y) in xi.iter().enumerate() {
        if k == j {
            continue;
        }
        out *= ratio(x + y + &params.g, x + y, "xi_j + xi_k")?;
        out *= ratio(x - y + &params.g, x - y, "xi_j - xi_k")?;
    }
    Ok(out)
}

/// `E_ell = sum_{|J| = ell} prod_{j in J} (e^{x_j} - 2 + e^{-x_j})`.
pub fn expansion_e_ell(n: usize, ell: usize) -> Result<ExpPoly> {
    if ell < 1 || ell > n {
        return Err(Error::InvalidWeight(format!("ell = {ell} outside 1..={n}")));
    }
    let all: Vec<usize> = (0..n).collect();
    let mut out = ExpPoly::zero();
    for j_set in subsets(&all, ell) {
        let mut term = ExpPoly::constant(n, Q::one());
        for j in j_set {
            let mut f = ExpPoly::constant(n, rational::qi(-2));
            let mut e = vec![0i64; n];
            e[j] = 1;
            f.add_term(Weight::from_numerators(e.clone()), Q::one());
            e[j] = -1;
            f.add_term(Weight::from_numerators(e), Q::one());
            term = term.mul(&f);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Surviving term of the `BC_n` Pieri formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcTerm {
    pub shift: SignedSubset,
    pub coeff: Q,
}

/// Outcome of one exact `BC_n` Pieri check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcPieriReport {
    pub n: usize,
    pub ell: usize,
    pub lambda: Weight,
    pub n_terms: usize,
    /// Excluded shifts (non-partition `lambda + e_{eps J}`) with nonzero coefficient.
    pub nonvanishing: Vec<BcTerm>,
    pub residual: ExpPoly,
}

impl BcPieriReport {
    pub fn passed(&self) -> bool {
        self.nonvanishing.is_empty() && self.residual.is_zero()
    }
}

fn is_partition(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1]) && v.last().is_none_or(|&x| x >= 0)
}

/// All terms `(eps J, U_{J^c, ell - |J|} V_{eps J})` at spectral point `xi`.
pub fn bc_terms(params: &BcParams, ell: usize, xi: &[Q]) -> Result<Vec<BcTerm>> {
    let n = xi.len();
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for size in 0..=ell {
        for set in SignedSubset::all(&all, size) {
            let inside = set.indices();
            let rest: Vec<usize> = all.iter().copied().filter(|k| !inside.contains(k)).collect();
            let v = coeff_v_signed(params, &set, xi)?;
            let coeff = if v.is_zero() {
                v
            } else {
                v * coeff_u_kp(params, &rest, ell - size, xi)?
            };
            out.push(BcTerm { shift: set, coeff });
        }
    }
    Ok(out)
}

/// Exact check of `E_ell P_lambda = sum U V P_{lambda + e_{eps J}}` on the
/// `BC_n` datum held by `cache`.
pub fn verify_pieri_bc(
    datum: &RootDatum,
    cache: &mut JacobiCache,
    params: &BcParams,
    ell: usize,
    lambda: &Weight,
) -> Result<BcPieriReport> {
    let n = datum.rank();
    if datum.family() != Family::BC {
        return Err(Error::InvalidType {
            family: datum.family().name().into(),
            rank: n,
        });
    }
    if !is_partition(lambda.numerators()) {
        return Err(Error::NotDominant(format!("{:?}", lambda.numerators())));
    }
    if params.multiplicities(datum)? != *cache.mults() {
        return Err(Error::InvalidMultiplicities("cache built for other parameters".into()));
    }
    let xi: Vec<Q> = params
        .rho(n)
        .into_iter()
        .zip(lambda.numerators())
        .map(|(r, &l)| r + rational::qi(l))
        .collect();
    let terms = bc_terms(params, ell, &xi)?;
    let n_terms = terms.len();
    let e = expansion_e_ell(n, ell)?;
    let mut residual = e.mul(&cache.get(datum, lambda)?.to_exp_poly(datum));
    let mut nonvanishing = Vec::new();
    for t in terms {
        let target = lambda + &t.shift.weight(n);
        if !is_partition(target.numerators()) {
            if !t.coeff.is_zero() {
                nonvanishing.push(t);
            }
            continue;
        }
        let q = cache.get(datum, &target)?.to_exp_poly(datum);
        residual.add_scaled(&-t.coeff.clone(), &q);
    }
    Ok(BcPieriReport {
        n,
        ell,
        lambda: lambda.clone(),
        n_terms,
        nonvanishing,
        residual,
    })
}

/// The `ell = 1` rewriting: the `xi`-only coefficient `U_{[n],1}` equals
/// `-sum_j (V_j(xi) + V_j(-xi))`, and `V_{+-{j}} = V_j(+-xi)`.
pub fn ell_one_consistency(params: &BcParams, xi: &[Q]) -> Result<bool> {
    let n = xi.len();
    let neg: Vec<Q> = xi.iter().map(|x| -x.clone()).collect();
    let mut sum = Q::zero();
    for j in 0..n {
        let plus = coeff_v_j(params, j, xi)?;
        let minus = coeff_v_j(params, j, &neg)?;
        if coeff_v_signed(params, &SignedSubset::new(vec![(j, 1)])?, xi)? != plus
            || coeff_v_signed(params, &SignedSubset::new(vec![(j, -1)])?, xi)? != minus
        {
            return Ok(false);
        }
        let rest: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        if coeff_u_kp(params, &rest, 0, xi)? != Q::one() {
            return Ok(false);
        }
        sum += plus + minus;
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(coeff_u_kp(params, &all, 1, xi)? == -sum)
}

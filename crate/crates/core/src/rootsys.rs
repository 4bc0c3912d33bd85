//! Realized irreducible root systems and the combinatorics of their Weyl
//! groups.
//!
//! Classical families (and `BC_n`) live in the orthonormal basis
//! `e_1..e_n` (`A_n` in the sum-zero hyperplane of `R^{n+1}`). The
//! exceptional families are realized in the basis of simple roots with the
//! Gram matrix normalized so that long roots have squared length 2.
//!
//! A [`Weight`] stores integer numerators over the datum's lattice
//! denominator, so every coordinate is an exact rational and all Weyl group
//! arithmetic stays in machine integers.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, R64};
use crate::rational::{self, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "BC" => Family::BC,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        }
    }

    pub fn is_reduced(self) -> bool {
        self != Family::BC
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lattice vector: integer numerators over [`RootDatum::denom`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn zero(dim: usize) -> Weight {
        Weight(vec![0; dim])
    }

    pub fn numerators(&self) -> &[i64] {
        &self.0
    }

    pub fn from_numerators(v: Vec<i64>) -> Weight {
        Weight(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&x| x * k).collect())
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: i64, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(&a, &b)| a + k * b).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Linear functional on numerator vectors: `f(w) = (num . w) / den`.
#[derive(Clone, Debug)]
struct Covector {
    num: Vec<i64>,
    den: i64,
}

impl Covector {
    fn from_rational(v: &[R64]) -> Covector {
        let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let num = v.iter().map(|x| (x * den).to_integer()).collect();
        Covector { num, den }
    }

    fn raw(&self, w: &Weight) -> i64 {
        self.num.iter().zip(&w.0).map(|(a, b)| a * b).sum()
    }

    fn eval(&self, w: &Weight) -> R64 {
        R64::new(self.raw(w), self.den)
    }

    fn eval_int(&self, w: &Weight) -> Option<i64> {
        let r = self.raw(w);
        if r % self.den == 0 {
            Some(r / self.den)
        } else {
            None
        }
    }
}

/// Word `s_{w[0]} s_{w[1]} ... s_{w[k-1]}` in the simple reflections; the
/// rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, datum: &RootDatum, w: &Weight) -> Weight {
        self.0
            .iter()
            .rev()
            .fold(w.clone(), |acc, &i| datum.simple_reflection(&acc, i))
    }

    pub fn apply_inverse(&self, datum: &RootDatum, w: &Weight) -> Weight {
        self.0
            .iter()
            .fold(w.clone(), |acc, &i| datum.simple_reflection(&acc, i))
    }
}

/// A realized irreducible crystallographic root system.
#[derive(Clone, Debug)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    dim: usize,
    denom: i64,
    /// Inner product on actual coordinates.
    gram: Vec<Vec<R64>>,
    /// Gram matrix rescaled to act on numerators (divided by `denom^2`).
    gram_num: Vec<Vec<R64>>,
    roots: Vec<Weight>,
    root_index: BTreeMap<Weight, usize>,
    positive: Vec<bool>,
    simple: Vec<usize>,
    fundamental: Vec<Weight>,
    lattice_coroots: Vec<Covector>,
    coroots: Vec<Covector>,
    simple_coords: Vec<Covector>,
    norm2: Vec<R64>,
    orbit: Vec<usize>,
    n_orbits: usize,
}

struct Realization {
    dim: usize,
    gram: Vec<Vec<R64>>,
    simple: Vec<Vec<R64>>,
    extra_seeds: Vec<Vec<R64>>,
    lattice_simple: Vec<Vec<R64>>,
}

fn unit(dim: usize, i: usize) -> Vec<R64> {
    let mut v = vec![R64::zero(); dim];
    v[i] = R64::one();
    v
}

fn lin(terms: &[(i64, usize)], dim: usize) -> Vec<R64> {
    let mut v = vec![R64::zero(); dim];
    for &(c, i) in terms {
        v[i] += R64::from(c);
    }
    v
}

fn identity(dim: usize) -> Vec<Vec<R64>> {
    (0..dim).map(|i| unit(dim, i)).collect()
}

fn simply_laced_gram(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<R64>> {
    let mut g = vec![vec![R64::zero(); rank]; rank];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = R64::from(2);
    }
    for &(a, b) in edges {
        g[a - 1][b - 1] = R64::from(-1);
        g[b - 1][a - 1] = R64::from(-1);
    }
    g
}

fn realization(family: Family, n: usize) -> Result<Realization> {
    let invalid = || Error::InvalidType {
        family: family.name().to_string(),
        rank: n,
    };
    let chain = |dim: usize, upto: usize| -> Vec<Vec<R64>> {
        (0..upto).map(|i| lin(&[(1, i), (-1, i + 1)], dim)).collect()
    };
    let r = match family {
        Family::A => {
            if n < 1 {
                return Err(invalid());
            }
            Realization {
                dim: n + 1,
                gram: identity(n + 1),
                simple: chain(n + 1, n),
                extra_seeds: vec![],
                lattice_simple: chain(n + 1, n),
            }
        }
        Family::B | Family::C | Family::D | Family::BC => {
            let min = match family {
                Family::B | Family::C => 2,
                Family::D => 3,
                _ => 1,
            };
            if n < min {
                return Err(invalid());
            }
            let mut simple = chain(n, n - 1);
            let last = match family {
                Family::B | Family::BC => lin(&[(1, n - 1)], n),
                Family::C => lin(&[(2, n - 1)], n),
                _ => lin(&[(1, n - 2), (1, n - 1)], n),
            };
            simple.push(last);
            let (extra_seeds, lattice_simple) = if family == Family::BC {
                let mut ls = chain(n, n - 1);
                ls.push(lin(&[(2, n - 1)], n));
                (vec![lin(&[(2, n - 1)], n)], ls)
            } else {
                (vec![], simple.clone())
            };
            Realization {
                dim: n,
                gram: identity(n),
                simple,
                extra_seeds,
                lattice_simple,
            }
        }
        Family::E | Family::F | Family::G => {
            let gram = match (family, n) {
                (Family::E, 6) => simply_laced_gram(6, &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]),
                (Family::E, 7) => {
                    simply_laced_gram(7, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)])
                }
                (Family::E, 8) => simply_laced_gram(
                    8,
                    &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
                ),
                (Family::F, 4) => {
                    let h = R64::new(1, 2);
                    let z = R64::zero();
                    let i = |k: i64| R64::from(k);
                    vec![
                        vec![i(2), i(-1), z, z],
                        vec![i(-1), i(2), i(-1), z],
                        vec![z, i(-1), i(1), -h],
                        vec![z, z, -h, i(1)],
                    ]
                }
                (Family::G, 2) => vec![
                    vec![R64::new(2, 3), R64::from(-1)],
                    vec![R64::from(-1), R64::from(2)],
                ],
                _ => return Err(invalid()),
            };
            Realization {
                dim: n,
                gram,
                simple: identity(n),
                extra_seeds: vec![],
                lattice_simple: identity(n),
            }
        }
    };
    Ok(r)
}

fn quad(gram: &[Vec<R64>], u: &[R64], v: &[R64]) -> R64 {
    linalg::dot(u, &linalg::mat_vec(gram, v))
}

impl RootDatum {
    /// Builds the root system of the given type.
    pub fn new(family: Family, rank: usize) -> Result<RootDatum> {
        let real = realization(family, rank)?;
        let dim = real.dim;
        let gram = real.gram;

        // Fundamental weights: dual to the coroots of the lattice simple system.
        let ls = &real.lattice_simple;
        let gs: Vec<Vec<R64>> = ls
            .iter()
            .map(|a| ls.iter().map(|b| quad(&gram, a, b)).collect())
            .collect();
        let gs_inv = linalg::inverse(&gs).ok_or_else(|| Error::Internal("singular Gram".into()))?;
        let fundamental_r: Vec<Vec<R64>> = (0..rank)
            .map(|i| {
                let half = gs[i][i] / R64::from(2);
                let mut w = vec![R64::zero(); dim];
                for (k, a) in ls.iter().enumerate() {
                    let c = half * gs_inv[i][k];
                    for (x, y) in w.iter_mut().zip(a) {
                        *x += c * *y;
                    }
                }
                w
            })
            .collect();

        let denom = real
            .simple
            .iter()
            .chain(&real.extra_seeds)
            .chain(&fundamental_r)
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let to_num = |v: &[R64]| -> Weight {
            Weight(v.iter().map(|x| (x * denom).to_integer()).collect())
        };
        let d2 = R64::from(denom * denom);
        let gram_num: Vec<Vec<R64>> = gram
            .iter()
            .map(|row| row.iter().map(|x| x / d2).collect())
            .collect();

        let coroot_of = |a: &Weight| -> Covector {
            let av: Vec<R64> = a.0.iter().map(|&x| R64::from(x)).collect();
            let ga = linalg::mat_vec(&gram_num, &av);
            let n2 = linalg::dot(&av, &ga);
            let cv: Vec<R64> = ga.iter().map(|x| x * R64::from(2) / n2).collect();
            Covector::from_rational(&cv)
        };

        let simple_w: Vec<Weight> = real.simple.iter().map(|v| to_num(v)).collect();
        let simple_cov: Vec<Covector> = simple_w.iter().map(coroot_of).collect();
        let reflect_simple = |w: &Weight, i: usize| -> Weight {
            let k = simple_cov[i].eval_int(w).unwrap_or(0);
            w.add_scaled(-k, &simple_w[i])
        };

        // Roots: closure of the seeds under simple reflections.
        let seeds: Vec<Weight> = simple_w
            .iter()
            .cloned()
            .chain(real.extra_seeds.iter().map(|v| to_num(v)))
            .collect();
        let mut orbit_of_root: BTreeMap<Weight, usize> = BTreeMap::new();
        let mut n_orbits = 0;
        for s in &seeds {
            if orbit_of_root.contains_key(s) {
                continue;
            }
            let mut queue = VecDeque::from([s.clone()]);
            orbit_of_root.insert(s.clone(), n_orbits);
            while let Some(r) = queue.pop_front() {
                for i in 0..rank {
                    let t = reflect_simple(&r, i);
                    if !orbit_of_root.contains_key(&t) {
                        orbit_of_root.insert(t.clone(), n_orbits);
                        queue.push_back(t);
                    }
                }
            }
            n_orbits += 1;
        }
        let roots: Vec<Weight> = orbit_of_root.keys().cloned().collect();
        let orbit: Vec<usize> = orbit_of_root.values().copied().collect();
        let root_index: BTreeMap<Weight, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let coroots: Vec<Covector> = roots.iter().map(coroot_of).collect();
        let norm2: Vec<R64> = roots
            .iter()
            .map(|r| {
                let v: Vec<R64> = r.0.iter().map(|&x| R64::from(x)).collect();
                quad(&gram_num, &v, &v)
            })
            .collect();

        // Simple-root coordinates: c_i(b) = sum_k N_ik <b, alpha_k>, N = G_S^{-1}.
        let sv: Vec<Vec<R64>> = simple_w
            .iter()
            .map(|w| w.0.iter().map(|&x| R64::from(x)).collect())
            .collect();
        let gss: Vec<Vec<R64>> = sv
            .iter()
            .map(|a| sv.iter().map(|b| quad(&gram_num, a, b)).collect())
            .collect();
        let n_inv =
            linalg::inverse(&gss).ok_or_else(|| Error::Internal("singular Cartan".into()))?;
        let simple_coords: Vec<Covector> = (0..rank)
            .map(|i| {
                let mut cov = vec![R64::zero(); dim];
                for (k, a) in sv.iter().enumerate() {
                    let ga = linalg::mat_vec(&gram_num, a);
                    for (x, y) in cov.iter_mut().zip(&ga) {
                        *x += n_inv[i][k] * *y;
                    }
                }
                Covector::from_rational(&cov)
            })
            .collect();
        let positive: Vec<bool> = roots
            .iter()
            .map(|r| {
                simple_coords
                    .iter()
                    .fold(R64::zero(), |acc, c| acc + c.eval(r))
                    .is_positive()
            })
            .collect();
        let simple: Vec<usize> = simple_w.iter().map(|w| root_index[w]).collect();
        let lattice_coroots: Vec<Covector> =
            real.lattice_simple.iter().map(|v| coroot_of(&to_num(v))).collect();
        let fundamental = fundamental_r.iter().map(|v| to_num(v)).collect();

        Ok(RootDatum {
            family,
            rank,
            dim,
            denom,
            gram,
            gram_num,
            roots,
            root_index,
            positive,
            simple,
            fundamental,
            lattice_coroots,
            coroots,
            simple_coords,
            norm2,
            orbit,
            n_orbits,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the realization space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common denominator of all weight coordinates.
    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn gram(&self) -> &[Vec<num_rational::Ratio<i64>>] {
        &self.gram
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family.name(), self.rank)
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Weight {
        &self.roots[i]
    }

    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.root_index.get(w).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(move |&i| self.positive[i])
    }

    /// Indices of the simple roots, in Bourbaki order.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental
    }

    /// Orbit label of a root; multiplicities are stored per orbit.
    pub fn root_orbit(&self, i: usize) -> usize {
        self.orbit[i]
    }

    pub fn n_root_orbits(&self) -> usize {
        self.n_orbits
    }

    /// `<alpha, alpha>` for the root with index `i`.
    pub fn root_norm2(&self, i: usize) -> num_rational::Ratio<i64> {
        self.norm2[i]
    }

    /// `<w, alpha_i^vee>`, integral for lattice weights.
    pub fn pairing(&self, w: &Weight, root: usize) -> i64 {
        let c = &self.coroots[root];
        let r = c.raw(w);
        debug_assert!(r % c.den == 0, "non-integral coroot pairing");
        r / c.den
    }

    /// `<xi, alpha^vee>` for a spectral point in actual coordinates.
    pub fn pairing_q(&self, xi: &[Q], root: usize) -> Q {
        let c = &self.coroots[root];
        let s = xi
            .iter()
            .zip(&c.num)
            .fold(Q::zero(), |acc, (x, &n)| acc + x * rational::qi(n));
        s * rational::q(self.denom, c.den)
    }

    pub fn pairing_f64(&self, xi: &[f64], root: usize) -> f64 {
        let c = &self.coroots[root];
        let s: f64 = xi.iter().zip(&c.num).map(|(x, &n)| x * n as f64).sum();
        s * self.denom as f64 / c.den as f64
    }

    pub fn inner(&self, u: &Weight, v: &Weight) -> num_rational::Ratio<i64> {
        let mut acc = R64::zero();
        for (i, &a) in u.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.0.iter().enumerate() {
                if b != 0 && !self.gram_num[i][j].is_zero() {
                    acc += self.gram_num[i][j] * (a * b);
                }
            }
        }
        acc
    }

    pub fn inner_q(&self, u: &[Q], v: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                if !self.gram[i][j].is_zero() {
                    acc += a * b * rational::from_r64(&self.gram[i][j]);
                }
            }
        }
        acc
    }

    pub fn inner_f64(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                let g = self.gram[i][j];
                if !g.is_zero() {
                    acc += a * b * (*g.numer() as f64 / *g.denom() as f64);
                }
            }
        }
        acc
    }

    /// `<w, v>` where `w` is a lattice weight and `v` is in actual coordinates.
    pub fn inner_weight_f64(&self, w: &Weight, v: &[f64]) -> f64 {
        let wf = self.coords_f64(w);
        self.inner_f64(&wf, v)
    }

    pub fn coords(&self, w: &Weight) -> Vec<num_rational::Ratio<i64>> {
        w.0.iter().map(|&x| R64::new(x, self.denom)).collect()
    }

    pub fn coords_q(&self, w: &Weight) -> Vec<Q> {
        w.0.iter().map(|&x| rational::q(x, self.denom)).collect()
    }

    pub fn coords_f64(&self, w: &Weight) -> Vec<f64> {
        w.0.iter().map(|&x| x as f64 / self.denom as f64).collect()
    }

    /// Converts exact coordinates into a lattice weight, checking membership
    /// in the weight lattice.
    pub fn weight_from_coords(&self, coords: &[Q]) -> Result<Weight> {
        if coords.len() != self.dim {
            return Err(Error::InvalidWeight(format!(
                "expected {} coordinates, got {}",
                self.dim,
                coords.len()
            )));
        }
        let mut num = Vec::with_capacity(self.dim);
        for c in coords {
            let scaled = c * rational::qi(self.denom);
            if !scaled.is_integer() {
                return Err(Error::InvalidWeight(format!("coordinate {c} off the lattice")));
            }
            let v: i64 = num_traits::ToPrimitive::to_i64(&scaled.to_integer())
                .ok_or_else(|| Error::InvalidWeight("coordinate overflow".into()))?;
            num.push(v);
        }
        let w = Weight(num);
        self.check_weight(&w)?;
        Ok(w)
    }

    /// Weight with the given coordinates in the basis of fundamental weights.
    pub fn from_fundamental(&self, coeffs: &[i64]) -> Result<Weight> {
        if coeffs.len() != self.rank {
            return Err(Error::InvalidWeight(format!(
                "expected {} fundamental coordinates, got {}",
                self.rank,
                coeffs.len()
            )));
        }
        let mut w = Weight::zero(self.dim);
        for (c, f) in coeffs.iter().zip(&self.fundamental) {
            w = w.add_scaled(*c, f);
        }
        Ok(w)
    }

    /// Coordinates in the basis of fundamental weights.
    pub fn fundamental_coords(&self, w: &Weight) -> Vec<i64> {
        self.lattice_coroots
            .iter()
            .map(|c| c.eval_int(w).unwrap_or(0))
            .collect()
    }

    /// Membership in the weight lattice `P`.
    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.0.len() != self.dim {
            return Err(Error::InvalidWeight(format!(
                "expected {} coordinates, got {}",
                self.dim,
                w.0.len()
            )));
        }
        for c in &self.lattice_coroots {
            if c.eval_int(w).is_none() {
                return Err(Error::InvalidWeight("non-integral coroot pairing".into()));
            }
        }
        let mut back = vec![R64::zero(); self.dim];
        for (i, c) in self.simple_coords.iter().enumerate() {
            let coef = c.eval(w);
            for (x, &y) in back.iter_mut().zip(&self.roots[self.simple[i]].0) {
                *x += coef * y;
            }
        }
        if back.iter().zip(&w.0).any(|(a, &b)| *a != R64::from(b)) {
            return Err(Error::InvalidWeight("not in the span of the roots".into()));
        }
        Ok(())
    }

    /// Whether `w` lies in the root lattice `Q`.
    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.simple_coords.iter().all(|c| c.eval(w).is_integer())
    }

    /// Coefficients of `w` in the basis of simple roots.
    pub fn simple_root_coords(&self, w: &Weight) -> Vec<num_rational::Ratio<i64>> {
        self.simple_coords.iter().map(|c| c.eval(w)).collect()
    }

    /// Simple-root height (sum of simple-root coordinates).
    pub fn height(&self, w: &Weight) -> num_rational::Ratio<i64> {
        self.simple_coords
            .iter()
            .fold(R64::zero(), |acc, c| acc + c.eval(w))
    }

    pub fn reflect(&self, w: &Weight, root: usize) -> Weight {
        let k = self.pairing(w, root);
        w.add_scaled(-k, &self.roots[root])
    }

    pub fn simple_reflection(&self, w: &Weight, i: usize) -> Weight {
        self.reflect(w, self.simple[i])
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.simple.iter().all(|&s| self.pairing(w, s) >= 0)
    }

    fn require_weight(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)
    }

    fn require_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !self.is_dominant(w) {
            return Err(Error::NotDominant(self.describe(w)));
        }
        Ok(())
    }

    /// Human-readable fundamental-weight coordinates.
    pub fn describe(&self, w: &Weight) -> String {
        let c = self.fundamental_coords(w);
        let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// The full Weyl orbit, sorted lexicographically on coordinates.
    pub fn weyl_orbit(&self, w: &Weight) -> Result<Vec<Weight>> {
        self.require_weight(w)?;
        Ok(self.orbit_unchecked(w).into_iter().collect())
    }

    pub(crate) fn orbit_unchecked(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        seen.insert(w.clone());
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                let t = self.simple_reflection(&v, i);
                if !seen.contains(&t) {
                    seen.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// `|W w|` without materializing the orbit ordering.
    pub fn orbit_size(&self, w: &Weight) -> usize {
        self.orbit_unchecked(w).len()
    }

    /// Dominant representative `w_nu(nu)` and the shortest `w_nu`, obtained
    /// by reflecting at simple roots with negative pairing.
    pub fn dominant_representative(&self, w: &Weight) -> Result<(Weight, WeylWord)> {
        self.require_weight(w)?;
        Ok(self.dominant_unchecked(w))
    }

    pub(crate) fn dominant_unchecked(&self, w: &Weight) -> (Weight, WeylWord) {
        let mut cur = w.clone();
        let mut applied = Vec::new();
        'outer: loop {
            for (i, &s) in self.simple.iter().enumerate() {
                if self.pairing(&cur, s) < 0 {
                    cur = self.reflect(&cur, s);
                    applied.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        applied.reverse();
        (cur, WeylWord(applied))
    }

    pub(crate) fn dominant_only(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        'outer: loop {
            for &s in &self.simple {
                if self.pairing(&cur, s) < 0 {
                    cur = self.reflect(&cur, s);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Roots orthogonal to `w` (the root subsystem `R_nu`).
    pub fn stabilizer_roots(&self, w: &Weight) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.pairing(w, i) == 0)
            .collect()
    }

    /// Orbit of `eta` under the stabilizer `W_nu`, sorted.
    pub fn stabilizer_orbit(&self, nu: &Weight, eta: &Weight) -> Vec<Weight> {
        let gens: Vec<usize> = self
            .stabilizer_roots(nu)
            .into_iter()
            .filter(|&i| self.positive[i])
            .collect();
        let mut seen = BTreeSet::new();
        seen.insert(eta.clone());
        let mut queue = VecDeque::from([eta.clone()]);
        while let Some(v) = queue.pop_front() {
            for &r in &gens {
                let t = self.reflect(&v, r);
                if !seen.contains(&t) {
                    seen.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Stabilizer data: `(R_nu, generators of W_nu)` where the generators
    /// are the positive roots of `R_nu` (reflections).
    pub fn stabilizer_data(&self, nu: &Weight) -> Result<(Vec<usize>, Vec<usize>)> {
        self.require_weight(nu)?;
        let r = self.stabilizer_roots(nu);
        let gens = r.iter().copied().filter(|&i| self.positive[i]).collect();
        Ok((r, gens))
    }

    /// `mu <= lambda` in the dominance order (`lambda - mu` in `Q^+`).
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> Result<bool> {
        self.require_dominant(mu)?;
        self.require_dominant(lambda)?;
        Ok(self.leq_unchecked(mu, lambda))
    }

    pub(crate) fn leq_unchecked(&self, mu: &Weight, lambda: &Weight) -> bool {
        let d = lambda - mu;
        self.simple_coords.iter().all(|c| {
            let v = c.eval(&d);
            v.is_integer() && !v.is_negative()
        })
    }

    /// Dominant weights `mu <= lambda`, sorted by decreasing height and then
    /// lexicographically. Enumerated by descent along positive roots
    /// through dominant weights, which reaches every dominant `mu <= lambda`.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        self.require_dominant(lambda)?;
        Ok(self.dominant_below_unchecked(lambda))
    }

    pub(crate) fn dominant_below_unchecked(&self, lambda: &Weight) -> Vec<Weight> {
        let pos: Vec<usize> = self.positive_roots().collect();
        let mut seen = BTreeSet::new();
        seen.insert(lambda.clone());
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(v) = queue.pop_front() {
            for &r in &pos {
                let t = &v - &self.roots[r];
                if self.is_dominant(&t) && !seen.contains(&t) {
                    seen.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort_by(|a, b| self.height(b).cmp(&self.height(a)).then_with(|| a.cmp(b)));
        out
    }

    /// Saturated set `P(omega)`: union of the orbits of dominant weights
    /// below `omega`, sorted.
    pub fn saturated_set(&self, omega: &Weight) -> Result<Vec<Weight>> {
        self.require_dominant(omega)?;
        let mut set = BTreeSet::new();
        for mu in self.dominant_below_unchecked(omega) {
            set.extend(self.orbit_unchecked(&mu));
        }
        Ok(set.into_iter().collect())
    }

    fn max_positive_pairing(&self, w: &Weight) -> i64 {
        self.positive_roots()
            .map(|i| self.pairing(w, i))
            .max()
            .unwrap_or(0)
    }

    /// `<omega, alpha^vee> <= 2` for all positive roots.
    pub fn is_small(&self, omega: &Weight) -> Result<bool> {
        self.require_dominant(omega)?;
        Ok(self.max_positive_pairing(omega) <= 2)
    }

    pub fn is_minuscule(&self, omega: &Weight) -> Result<bool> {
        self.require_dominant(omega)?;
        Ok(self.max_positive_pairing(omega) <= 1)
    }

    /// `omega` is a positive root and pairs at most 1 with all other
    /// positive coroots.
    pub fn is_quasi_minuscule(&self, omega: &Weight) -> Result<bool> {
        self.require_dominant(omega)?;
        let Some(idx) = self.root_index(omega) else {
            return Ok(false);
        };
        if !self.positive[idx] {
            return Ok(false);
        }
        Ok(self
            .positive_roots()
            .filter(|&i| i != idx)
            .all(|i| self.pairing(omega, i) <= 1))
    }

    /// Indices `i` (0-based) of the small fundamental weights.
    pub fn small_fundamental_indices(&self) -> Vec<usize> {
        (0..self.rank)
            .filter(|&i| self.max_positive_pairing(&self.fundamental[i]) <= 2)
            .collect()
    }

    /// `|W|`, computed as the orbit size of the regular weight `sum omega_i`.
    pub fn weyl_group_order(&self) -> usize {
        let rho = self
            .fundamental
            .iter()
            .fold(Weight::zero(self.dim), |acc, f| &acc + f);
        self.orbit_size(&rho)
    }

    /// `rho_g = 1/2 sum_{alpha > 0} g_alpha alpha` in actual coordinates.
    pub fn rho(&self, mults: &Multiplicities) -> Vec<Q> {
        let mut acc = vec![Q::zero(); self.dim];
        for i in self.positive_roots() {
            let g = mults.get(self, i);
            for (x, &c) in acc.iter_mut().zip(&self.roots[i].0) {
                *x += g * rational::q(c, 2 * self.denom);
            }
        }
        acc
    }

    /// `rho^vee = 1/2 sum_{alpha > 0} alpha^vee` in actual coordinates.
    pub fn rho_vee(&self) -> Vec<Q> {
        let mut acc = vec![Q::zero(); self.dim];
        for i in self.positive_roots() {
            let scale = rational::from_r64(&self.norm2[i]).recip();
            for (x, &c) in acc.iter_mut().zip(&self.roots[i].0) {
                *x += &scale * rational::q(c, self.denom);
            }
        }
        acc
    }

    /// Spectral point `rho_g + lambda` in actual coordinates.
    pub fn shifted(&self, mults: &Multiplicities, lambda: &Weight) -> Vec<Q> {
        self.rho(mults)
            .into_iter()
            .zip(self.coords_q(lambda))
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Index of the root `alpha / 2`, if it is a root.
    pub fn half_root(&self, i: usize) -> Option<usize> {
        let r = &self.roots[i].0;
        if r.iter().any(|x| x % 2 != 0) {
            return None;
        }
        self.root_index(&Weight(r.iter().map(|x| x / 2).collect()))
    }
}

/// Positive multiplicity parameters, one per Weyl orbit of roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities {
    values: Vec<Q>,
}

impl Multiplicities {
    pub fn new(datum: &RootDatum, values: Vec<Q>) -> Result<Multiplicities> {
        if values.len() != datum.n_root_orbits() {
            return Err(Error::InvalidMultiplicities(format!(
                "{} has {} root orbits, got {} values",
                datum.label(),
                datum.n_root_orbits(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return Err(Error::InvalidMultiplicities(format!("{v} is not positive")));
        }
        Ok(Multiplicities { values })
    }

    pub fn uniform(datum: &RootDatum, g: Q) -> Result<Multiplicities> {
        Multiplicities::new(datum, vec![g; datum.n_root_orbits()])
    }

    /// All-zero assignment; only meaningful for `rho` bookkeeping.
    pub fn zero(datum: &RootDatum) -> Multiplicities {
        Multiplicities {
            values: vec![Q::zero(); datum.n_root_orbits()],
        }
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn get<'a>(&'a self, datum: &RootDatum, root: usize) -> &'a Q {
        &self.values[datum.root_orbit(root)]
    }
}

//! The desk-scale verification campaign, one function per acceptance item.

use hodiff_core::diffeq::{self, PieriDatum, Perturbation};
use hodiff_core::jacobi::{opdam_leading_coefficient, verify_eigen_poly, JacobiCache};
use hodiff_core::nonreduced::{self, BcParams, SignedSubset};
use hodiff_core::rankone::{self, HypergeometricParams};
use hodiff_core::rational::{self, q, Q};
use hodiff_core::rootsys::{Family, Multiplicities, RootDatum, Weight};
use hodiff_core::weylalg::ExpPoly;
use hodiff_core::whittaker::{self, ConfluenceReport, TodaConfig};
use hodiff_core::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::sample;
use crate::systems::{self, describe, system_name};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

impl CaseResult {
    fn new(case: String, passed: bool, detail: impl Into<String>) -> CaseResult {
        CaseResult {
            case,
            passed,
            detail: detail.into(),
        }
    }

    fn error(case: String, e: &Error) -> CaseResult {
        CaseResult::new(case, false, format!("error: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub n_cases: usize,
    pub n_pass: usize,
    pub n_fail: usize,
    pub failures: Vec<CaseResult>,
    pub notes: Vec<String>,
}

impl Outcome {
    fn from_cases(id: u32, title: &str, cases: Vec<CaseResult>, notes: Vec<String>) -> Outcome {
        let n_cases = cases.len();
        let failures: Vec<CaseResult> = cases.into_iter().filter(|c| !c.passed).collect();
        Outcome {
            id,
            title: title.into(),
            passed: n_cases > 0 && failures.is_empty(),
            n_cases,
            n_pass: n_cases - failures.len(),
            n_fail: failures.len(),
            failures,
            notes,
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "criterion {:>2} {} {}: {}/{} cases",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.n_pass,
            self.n_cases
        );
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first failure {} ({})", f.case, f.detail));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeskConfig {
    pub seed: u64,
    /// Multiplicity samples per system.
    pub samples: usize,
    /// Simple-root height bound for the Pieri suite.
    pub height: Q,
    /// Relative tolerance of the confluence check at the last `t`.
    pub confluence_tol: f64,
}

impl Default for DeskConfig {
    fn default() -> DeskConfig {
        DeskConfig {
            seed: 0,
            samples: 3,
            height: rational::qi(4),
            confluence_tol: 1e-6,
        }
    }
}

/// A datum with the Jacobi polynomials built for one multiplicity sample.
pub type PolySet = Vec<(RootDatum, JacobiCache)>;

pub const PIERI_SYSTEMS: [(Family, usize); 7] = [
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::B, 2),
    (Family::C, 3),
    (Family::D, 4),
    (Family::G, 2),
];

fn render_values(v: &[Q]) -> String {
    let s: Vec<String> = v.iter().map(rational::render).collect();
    format!("[{}]", s.join(","))
}

fn residual_detail(residual: &ExpPoly, nonvanishing: usize) -> String {
    format!(
        "residual with {} terms, {} excluded shifts with nonzero coefficient",
        residual.len(),
        nonvanishing
    )
}

fn pieri_job(
    datum: &RootDatum,
    omegas: &[Weight],
    k: usize,
    cfg: &DeskConfig,
    perturb: Perturbation,
    stop_early: bool,
) -> (Vec<CaseResult>, Option<(RootDatum, JacobiCache)>) {
    let name = system_name(datum);
    let lambdas = match systems::dominant_up_to_height(datum, &cfg.height) {
        Ok(l) => l,
        Err(e) => return (vec![CaseResult::error(name, &e)], None),
    };
    let run = |values: &[Q]| -> Result<(Vec<CaseResult>, JacobiCache)> {
        let mults = Multiplicities::new(datum, values.to_vec())?;
        let mut cache = JacobiCache::new(mults);
        let mut cases = Vec::new();
        for omega in omegas {
            let pd = PieriDatum::new(datum, omega, perturb)?;
            for lambda in &lambdas {
                let case = format!(
                    "{name} g={} omega={} lambda={}",
                    render_values(values),
                    describe(datum, omega),
                    describe(datum, lambda)
                );
                let r = match diffeq::verify_pieri(datum, &mut cache, &pd, lambda) {
                    Ok(r) => r,
                    Err(e @ Error::PoleAtSpectralPoint(_)) => return Err(e),
                    Err(e) => {
                        cases.push(CaseResult::error(case, &e));
                        if stop_early {
                            return Ok((cases, cache));
                        }
                        continue;
                    }
                };
                let passed = r.passed();
                let detail = if passed {
                    format!("{} terms", r.n_terms)
                } else {
                    residual_detail(&r.residual, r.nonvanishing.len())
                };
                cases.push(CaseResult::new(case, passed, detail));
                if stop_early && !passed {
                    return Ok((cases, cache));
                }
            }
        }
        Ok((cases, cache))
    };
    match sample::with_retry(datum.n_root_orbits(), cfg.seed, k, run) {
        Ok((cases, cache)) => (cases, Some((datum.clone(), cache))),
        Err(e) => (vec![CaseResult::error(format!("{name} sample {k}"), &e)], None),
    }
}

/// Pieri checks over `(datum, omegas)` pairs, one job per multiplicity sample.
fn pieri_run(
    cfg: &DeskConfig,
    targets: &[(RootDatum, Vec<Weight>)],
    perturb: Perturbation,
    stop_early: bool,
) -> (Vec<CaseResult>, PolySet) {
    let jobs: Vec<(usize, usize)> = (0..targets.len())
        .flat_map(|i| (0..cfg.samples).map(move |k| (i, k)))
        .collect();
    let results: Vec<_> = jobs
        .into_par_iter()
        .map(|(i, k)| pieri_job(&targets[i].0, &targets[i].1, k, cfg, perturb, stop_early))
        .collect();
    let mut cases = Vec::new();
    let mut polys = Vec::new();
    for (c, p) in results {
        cases.extend(c);
        polys.extend(p);
    }
    (cases, polys)
}

fn desk_targets() -> Result<Vec<(RootDatum, Vec<Weight>)>> {
    PIERI_SYSTEMS
        .iter()
        .map(|&(f, n)| {
            let d = RootDatum::new(f, n)?;
            let w = systems::small_fundamental_weights(&d);
            Ok((d, w))
        })
        .collect()
}

fn pieri_outcome(cfg: &DeskConfig, perturb: Perturbation, stop_early: bool) -> (Outcome, PolySet) {
    let (cases, polys) = match desk_targets() {
        Ok(t) => pieri_run(cfg, &t, perturb, stop_early),
        Err(e) => (vec![CaseResult::error("desk systems".into(), &e)], Vec::new()),
    };
    let n_polys: usize = polys.iter().map(|(_, c)| c.polynomials().count()).sum();
    let mut notes = vec![format!("{n_polys} Jacobi polynomials built")];
    if perturb != Perturbation::None {
        notes.push(format!("coefficient perturbation {}", perturb.name()));
    }
    (Outcome::from_cases(1, "exact Pieri suite", cases, notes), polys)
}

/// Exact Pieri equality over the small fundamental weights of the desk systems.
pub fn criterion_1(cfg: &DeskConfig) -> (Outcome, PolySet) {
    pieri_outcome(cfg, Perturbation::None, false)
}

/// The Pieri suite with a deliberately wrong coefficient formula.
pub fn criterion_1_perturbed(cfg: &DeskConfig, perturb: Perturbation) -> Outcome {
    pieri_outcome(cfg, perturb, false).0
}

/// Pieri, eigen and leading-coefficient checks on user-chosen systems.
pub fn custom_campaign(
    cfg: &DeskConfig,
    data: &[RootDatum],
    omegas: &[Vec<Weight>],
    perturb: Perturbation,
) -> Result<Vec<Outcome>> {
    for (d, ws) in data.iter().zip(omegas) {
        for w in ws {
            if !d.is_small(w)? {
                return Err(Error::NotSmall(d.describe(w)));
            }
        }
    }
    let targets: Vec<(RootDatum, Vec<Weight>)> =
        data.iter().cloned().zip(omegas.iter().cloned()).collect();
    let (cases, polys) = pieri_run(cfg, &targets, perturb, false);
    let pieri = Outcome::from_cases(1, "exact Pieri suite", cases, Vec::new());
    let eigen = Outcome::from_cases(2, "eigencheck", eigen_cases(&polys), Vec::new());
    let leading = criterion_3(&polys, &Vec::new());
    Ok(vec![pieri, eigen, leading])
}

fn bc_weight(part: &[i64]) -> Weight {
    Weight::from_numerators(part.to_vec())
}

fn bc_params(seed: u64, k: usize) -> BcParams {
    let v = sample::orbit_values(3, seed, k);
    BcParams::new(v[0].clone(), v[1].clone(), v[2].clone())
}

/// Jacobi polynomials of `BC_1` and `BC_2` for partitions with `lambda_1 <= 3`.
pub fn bc_polys(cfg: &DeskConfig) -> (Vec<CaseResult>, PolySet) {
    let mut cases = Vec::new();
    let mut out = Vec::new();
    for n in 1..=2 {
        let datum = match RootDatum::new(Family::BC, n) {
            Ok(d) => d,
            Err(e) => {
                cases.push(CaseResult::error(format!("BC{n}"), &e));
                continue;
            }
        };
        for k in 0..cfg.samples {
            let params = bc_params(cfg.seed, k);
            let mults = match params.multiplicities(&datum) {
                Ok(m) => m,
                Err(e) => {
                    cases.push(CaseResult::error(format!("BC{n} sample {k}"), &e));
                    continue;
                }
            };
            let mut cache = JacobiCache::new(mults);
            for part in systems::partitions(n, 3) {
                if let Err(e) = cache.get(&datum, &bc_weight(&part)) {
                    cases.push(CaseResult::error(format!("BC{n} sample {k} lambda={part:?}"), &e));
                }
            }
            out.push((datum.clone(), cache));
        }
    }
    (cases, out)
}

fn poly_case(datum: &RootDatum, cache: &JacobiCache, lambda: &Weight) -> String {
    format!(
        "{} g={} lambda={}",
        system_name(datum),
        render_values(cache.mults().values()),
        describe(datum, lambda)
    )
}

fn eigen_cases(polys: &PolySet) -> Vec<CaseResult> {
    let checked: Vec<Vec<CaseResult>> = polys
        .par_iter()
        .map(|(datum, cache)| {
            cache
                .polynomials()
                .map(|p| {
                    let case = poly_case(datum, cache, p.lambda());
                    match verify_eigen_poly(datum, p) {
                        Ok(r) => CaseResult::new(
                            case,
                            r.passed(),
                            format!("eigenvalue {}, residual terms {}", r.eigenvalue, r.residual.len()),
                        ),
                        Err(e) => CaseResult::error(case, &e),
                    }
                })
                .collect()
        })
        .collect();
    checked.into_iter().flatten().collect()
}

/// `L P_lambda = E(rho_g + lambda) P_lambda` with zero residual.
pub fn criterion_2(cfg: &DeskConfig, polys: &PolySet) -> (Outcome, PolySet) {
    let (mut cases, bc) = bc_polys(cfg);
    cases.extend(eigen_cases(polys));
    cases.extend(eigen_cases(&bc));
    (Outcome::from_cases(2, "eigencheck", cases, Vec::new()), bc)
}

/// Recursion leading coefficient against the closed product.
pub fn criterion_3(polys: &PolySet, bc: &PolySet) -> Outcome {
    let mut cases = Vec::new();
    for (datum, cache) in polys.iter().chain(bc.iter()) {
        for p in cache.polynomials() {
            let case = poly_case(datum, cache, p.lambda());
            match opdam_leading_coefficient(datum, p.mults(), p.lambda()) {
                Ok(c) => {
                    let got = p.leading_coefficient();
                    let passed = got == c;
                    cases.push(CaseResult::new(case, passed, format!("{got} vs {c}")));
                }
                Err(e) => cases.push(CaseResult::error(case, &e)),
            }
        }
    }
    Outcome::from_cases(3, "Opdam leading coefficient", cases, Vec::new())
}

/// Number of small fundamental weights, from pairing bounds alone.
pub fn criterion_4() -> Outcome {
    let mut expected: Vec<(Family, usize, usize)> = Vec::new();
    for n in 1..=8 {
        expected.push((Family::A, n, n));
    }
    for n in 2..=8 {
        expected.push((Family::B, n, n));
        expected.push((Family::C, n, n));
    }
    for n in 3..=8 {
        expected.push((Family::D, n, n));
    }
    expected.extend([
        (Family::E, 6, 5),
        (Family::E, 7, 4),
        (Family::E, 8, 2),
        (Family::F, 4, 2),
        (Family::G, 2, 1),
    ]);
    let cases = expected
        .into_iter()
        .map(|(f, n, want)| {
            let case = format!("{f}{n}");
            match RootDatum::new(f, n) {
                Ok(d) => {
                    let got = d.small_fundamental_indices().len();
                    CaseResult::new(case, got == want, format!("{got} small of {n}, expected {want}"))
                }
                Err(e) => CaseResult::error(case, &e),
            }
        })
        .collect();
    Outcome::from_cases(4, "small-weight census", cases, Vec::new())
}

/// Rational spectral points where `f` is pole-free.
fn pole_free_points<T>(
    dim: usize,
    seed: u64,
    count: usize,
    mut f: impl FnMut(&[Q]) -> Result<T>,
) -> Vec<(Vec<Q>, Result<T>)> {
    let mut out = Vec::new();
    let mut index = 0u64;
    while out.len() < count && index < 64 * count as u64 {
        let xi = sample::rational_point(dim, seed, index);
        index += 1;
        match f(&xi) {
            Err(Error::PoleAtSpectralPoint(_)) => continue,
            r => out.push((xi, r)),
        }
    }
    out
}

fn rank_one_coefficient_cases(params: &BcParams, seed: u64) -> Vec<CaseResult> {
    let mut cases = Vec::new();
    let sample = render_values(&[params.g1.clone(), params.g2.clone()]);
    let checks = pole_free_points(1, seed, 5, |xi| {
        let (vp, vm) = rankone::de_coefficients_exact(&params.g1, &params.g2, &xi[0])?;
        let plus = nonreduced::coeff_v_signed(params, &SignedSubset::new(vec![(0, 1)])?, xi)?;
        let minus = nonreduced::coeff_v_signed(params, &SignedSubset::new(vec![(0, -1)])?, xi)?;
        let u = nonreduced::coeff_u_kp(params, &[0], 1, xi)?;
        Ok(plus == vp && minus == vm && u == -(vp + vm))
    });
    for (xi, r) in checks {
        let case = format!("BC1 (g1,g2)={sample} xi={}", render_values(&xi));
        cases.push(match r {
            Ok(ok) => CaseResult::new(case, ok, "V_{+-1} and U_{[1],1} against the rank-one coefficients"),
            Err(e) => CaseResult::error(case, &e),
        });
    }
    let two = pole_free_points(2, seed.wrapping_add(1), 5, |xi| {
        nonreduced::ell_one_consistency(params, xi)
    });
    for (xi, r) in two {
        let case = format!("BC2 ell=1 rewriting xi={}", render_values(&xi));
        cases.push(match r {
            Ok(ok) => CaseResult::new(case, ok, "U_{[n],1} = -sum_j (V_j(xi) + V_j(-xi))"),
            Err(e) => CaseResult::error(case, &e),
        });
    }
    cases
}

/// `BC_1` / `BC_2` Pieri equality and the rank-one coefficient match.
pub fn criterion_5(cfg: &DeskConfig) -> Outcome {
    let mut cases = Vec::new();
    let e11 = nonreduced::expansion_e_ell(1, 1);
    let expect = {
        let mut p = ExpPoly::zero();
        p.add_term(Weight::from_numerators(vec![1]), Q::from_integer(1.into()));
        p.add_term(Weight::from_numerators(vec![0]), rational::qi(-2));
        p.add_term(Weight::from_numerators(vec![-1]), Q::from_integer(1.into()));
        p
    };
    cases.push(match e11 {
        Ok(e) => CaseResult::new("BC1 E_1".into(), e == expect, "e^{x} - 2 + e^{-x}"),
        Err(e) => CaseResult::error("BC1 E_1".into(), &e),
    });
    let jobs: Vec<(usize, usize, usize)> = [(1, 1), (2, 1), (2, 2)]
        .iter()
        .flat_map(|&(n, l)| (0..cfg.samples).map(move |k| (n, l, k)))
        .collect();
    let results: Vec<Vec<CaseResult>> = jobs
        .into_par_iter()
        .map(|(n, ell, k)| {
            let params = bc_params(cfg.seed, k);
            let name = format!(
                "BC{n} ell={ell} (g,g1,g2)={}",
                render_values(&[params.g.clone(), params.g1.clone(), params.g2.clone()])
            );
            let datum = match RootDatum::new(Family::BC, n) {
                Ok(d) => d,
                Err(e) => return vec![CaseResult::error(name, &e)],
            };
            let mults = match params.multiplicities(&datum) {
                Ok(m) => m,
                Err(e) => return vec![CaseResult::error(name, &e)],
            };
            let mut cache = JacobiCache::new(mults);
            systems::partitions(n, 3)
                .into_iter()
                .map(|part| {
                    let case = format!("{name} lambda={part:?}");
                    match nonreduced::verify_pieri_bc(&datum, &mut cache, &params, ell, &bc_weight(&part)) {
                        Ok(r) => {
                            let passed = r.passed();
                            let detail = if passed {
                                format!("{} terms", r.n_terms)
                            } else {
                                residual_detail(&r.residual, r.nonvanishing.len())
                            };
                            CaseResult::new(case, passed, detail)
                        }
                        Err(e) => CaseResult::error(case, &e),
                    }
                })
                .collect()
        })
        .collect();
    cases.extend(results.into_iter().flatten());
    for k in 0..cfg.samples {
        cases.extend(rank_one_coefficient_cases(&bc_params(cfg.seed, k), cfg.seed + k as u64));
    }
    Outcome::from_cases(5, "nonreduced suite", cases, Vec::new())
}

/// Parameter pairs `(g1, g2)` of the rank-one sweep.
pub const RANK_ONE_PARAMS: [((i64, i64), (i64, i64)); 2] = [((1, 2), (1, 3)), ((9, 4), (3, 7))];
pub const DE_XI: [f64; 5] = [0.31, 0.77, 1.4, 2.2, 3.05];
pub const DE_X: [f64; 5] = [0.2, 0.6, 1.1, 2.0, 3.5];
pub const DE_TOL: f64 = 1e-9;

/// Rows of the rank-one sweep for one parameter pair.
pub fn rank_one_cases(g1: &Q, g2: &Q, xis: &[f64], xs: &[f64], tol: f64) -> Vec<CaseResult> {
    let mut cases = Vec::new();
    let (g1f, g2f) = (rational::to_f64(g1), rational::to_f64(g2));
    let tag = render_values(&[g1.clone(), g2.clone()]);
    for &xi in xis {
        for &x in xs {
            let case = format!("de (g1,g2)={tag} xi={xi} x={x}");
            cases.push(match rankone::verify_de(&HypergeometricParams::new(g1f, g2f, xi, x)) {
                Ok(r) => CaseResult::new(case, r.residual <= tol, format!("residual {:.3e}", r.residual)),
                Err(e) => CaseResult::error(case, &e),
            });
        }
    }
    for l in 0..=6u32 {
        for s in [q(1, 4), q(2, 3), q(5, 1)] {
            let (lhs, rhs) = rankone::recurrence_rr_exact(g1, g2, l, &s);
            cases.push(CaseResult::new(
                format!("rr (g1,g2)={tag} l={l} s={s}"),
                lhs == rhs,
                format!("{lhs} vs {rhs}"),
            ));
        }
    }
    match bc1_cross_check(g1, g2) {
        Ok(rows) => cases.extend(rows),
        Err(e) => cases.push(CaseResult::error(format!("BC1 cross-check (g1,g2)={tag}"), &e)),
    }
    cases
}

fn bc1_cross_check(g1: &Q, g2: &Q) -> Result<Vec<CaseResult>> {
    let datum = RootDatum::new(Family::BC, 1)?;
    let mults = Multiplicities::new(&datum, vec![g1.clone(), g2.clone()])?;
    let mut cache = JacobiCache::new(mults);
    let tag = render_values(&[g1.clone(), g2.clone()]);
    let mut out = Vec::new();
    for l in 0..=6u32 {
        let p = cache.get(&datum, &Weight::from_numerators(vec![l as i64]))?;
        let in_s = rankone::even_laurent_in_s(&p.to_exp_poly(&datum))?;
        let expect = rankone::jacobi_p_in_s(g1, g2, l);
        out.push(CaseResult::new(
            format!("BC1 cross-check (g1,g2)={tag} l={l}"),
            in_s == expect,
            format!("{} coefficients in s", expect.len()),
        ));
    }
    Ok(out)
}

/// Rank-one difference equation, recurrence and `BC_1` cross-check.
pub fn criterion_6() -> Outcome {
    let cases = RANK_ONE_PARAMS
        .iter()
        .flat_map(|&((a, b), (c, d))| rank_one_cases(&q(a, b), &q(c, d), &DE_XI, &DE_X, DE_TOL))
        .collect();
    Outcome::from_cases(6, "rank-one numeric suite", cases, Vec::new())
}

/// `1/2 sum (V_nu + U_{0,nu}) = m_omega(0)` for quasi-minuscule small weights.
pub fn criterion_7(cfg: &DeskConfig) -> Outcome {
    let mut cases = Vec::new();
    for (f, n) in PIERI_SYSTEMS {
        let datum = match RootDatum::new(f, n) {
            Ok(d) => d,
            Err(e) => {
                cases.push(CaseResult::error(format!("{f}{n}"), &e));
                continue;
            }
        };
        let qm: Vec<Weight> = match systems::small_weights(&datum) {
            Ok(ws) => ws
                .into_iter()
                .filter(|w| datum.is_quasi_minuscule(w).unwrap_or(false))
                .collect(),
            Err(e) => {
                cases.push(CaseResult::error(system_name(&datum), &e));
                continue;
            }
        };
        for omega in &qm {
            for k in 0..cfg.samples {
                let values = sample::orbit_values(datum.n_root_orbits(), cfg.seed, k);
                let mults = match Multiplicities::new(&datum, values.clone()) {
                    Ok(m) => m,
                    Err(e) => {
                        cases.push(CaseResult::error(system_name(&datum), &e));
                        continue;
                    }
                };
                let points = pole_free_points(datum.dim(), cfg.seed + k as u64, 5, |xi| {
                    diffeq::specialization_consistency(&datum, &mults, omega, xi)
                });
                for (xi, r) in points {
                    let case = format!(
                        "{} g={} omega={} xi={}",
                        system_name(&datum),
                        render_values(&values),
                        describe(&datum, omega),
                        render_values(&xi)
                    );
                    cases.push(match r {
                        Ok(rep) => {
                            let detail = match &rep.identity {
                                Some((a, b)) => format!("{a} vs m(0) = {b}"),
                                None => rep.kind.to_string(),
                            };
                            CaseResult::new(case, rep.passed() && rep.identity.is_some(), detail)
                        }
                        Err(e) => CaseResult::error(case, &e),
                    });
                }
            }
        }
    }
    Outcome::from_cases(7, "quasi-minuscule identity", cases, Vec::new())
}

pub const CONFLUENCE_SYSTEMS: [(Family, usize); 3] = [(Family::A, 1), (Family::A, 2), (Family::B, 2)];
pub const CONFLUENCE_T: [f64; 3] = [10.0, 20.0, 30.0];
/// `<xi, alpha_i^vee>` on every simple root in the confluence check.
pub const CONFLUENCE_XI: f64 = 1.0 / 80.0;
pub const CONFLUENCE_X: f64 = 0.1;

pub fn confluence_report(datum: &RootDatum, omega: &Weight) -> Result<ConfluenceReport> {
    let r = datum.rank();
    let xi = systems::from_simple_pairings(datum, &vec![CONFLUENCE_XI; r]);
    let x = systems::from_simple_pairings(datum, &vec![CONFLUENCE_X; r]);
    whittaker::verify_confluence(datum, omega, &xi, &x, &CONFLUENCE_T)
}

/// Scaled hypergeometric data against the confluent limits.
pub fn criterion_8(cfg: &DeskConfig) -> Outcome {
    let mut jobs = Vec::new();
    for (f, n) in CONFLUENCE_SYSTEMS {
        match RootDatum::new(f, n).and_then(|d| Ok((systems::small_weights(&d)?, d))) {
            Ok((ws, d)) => jobs.extend(ws.into_iter().map(|w| (d.clone(), w))),
            Err(e) => return Outcome::from_cases(8, "Whittaker confluence", vec![CaseResult::error(format!("{f}{n}"), &e)], Vec::new()),
        }
    }
    let tol = cfg.confluence_tol;
    let cases = jobs
        .into_par_iter()
        .map(|(d, w)| {
            let case = format!("{} omega={}", system_name(&d), describe(&d, &w));
            match confluence_report(&d, &w) {
                Ok(r) => {
                    let worst = r
                        .rows
                        .iter()
                        .max_by(|a, b| a.final_deviation().total_cmp(&b.final_deviation()));
                    let detail = match worst {
                        Some(row) => format!(
                            "{} rows, worst {:.3e} at {}{}",
                            r.rows.len(),
                            row.final_deviation(),
                            whittaker::row_label(&d, row),
                            if r.rows.iter().all(|x| x.monotone()) { "" } else { ", non-monotone row" }
                        ),
                        None => "no rows".into(),
                    };
                    CaseResult::new(case, r.passed(tol), detail)
                }
                Err(e) => CaseResult::error(case, &e),
            }
        })
        .collect();
    Outcome::from_cases(8, "Whittaker confluence", cases, Vec::new())
}

pub const HOMOGENEITY_SYSTEMS: [(Family, usize); 6] = [
    (Family::A, 2),
    (Family::A, 3),
    (Family::B, 2),
    (Family::C, 3),
    (Family::D, 4),
    (Family::G, 2),
];

/// Growth-rate identity for every small `omega` and dominant `mu < omega`.
pub fn criterion_9(cfg: &DeskConfig) -> Outcome {
    let mut cases = Vec::new();
    for (f, n) in HOMOGENEITY_SYSTEMS {
        let run = || -> Result<Vec<CaseResult>> {
            let d = RootDatum::new(f, n)?;
            let mut out = Vec::new();
            for omega in systems::small_weights(&d)? {
                for mu in d.dominant_weights_below(&omega)? {
                    if mu == omega {
                        continue;
                    }
                    for k in 0..cfg.samples {
                        let values = sample::orbit_values(d.n_root_orbits(), cfg.seed, k);
                        let m = Multiplicities::new(&d, values.clone())?;
                        let (l, r) = whittaker::homogeneity_identity(&d, &m, &omega, &mu)?;
                        out.push(CaseResult::new(
                            format!(
                                "{} g={} omega={} mu={}",
                                system_name(&d),
                                render_values(&values),
                                describe(&d, &omega),
                                describe(&d, &mu)
                            ),
                            l == r,
                            format!("{l} vs {r}"),
                        ));
                    }
                }
            }
            Ok(out)
        };
        match run() {
            Ok(c) => cases.extend(c),
            Err(e) => cases.push(CaseResult::error(format!("{f}{n}"), &e)),
        }
    }
    Outcome::from_cases(9, "growth-rate identity", cases, Vec::new())
}

pub const TODA_P: f64 = 1.3;
pub const TODA_U_ASYM: f64 = 24.0;

pub fn toda_grid() -> Vec<f64> {
    (-16..=16).map(|i| i as f64 / 8.0).collect()
}

pub fn toda_cases(p: f64, config: TodaConfig) -> Vec<CaseResult> {
    match whittaker::rank_one_whittaker_check(p, &toda_grid(), TODA_U_ASYM, config) {
        Ok(r) => vec![
            CaseResult::new(format!("A1 p={p} difference equation"), r.residual <= 1e-6, format!("{:.3e}", r.residual)),
            CaseResult::new(format!("A1 p={p} W-invariance"), r.w_invariance <= 1e-6, format!("{:.3e}", r.w_invariance)),
            CaseResult::new(
                format!("A1 p={p} asymptotics at u={}", r.u_asym),
                r.asymptotic <= 1e-4,
                format!("{:.3e}", r.asymptotic),
            ),
        ],
        Err(e) => vec![CaseResult::error(format!("A1 p={p}"), &e)],
    }
}

/// Rank-one Whittaker function from the Toda ODE.
pub fn criterion_10() -> Outcome {
    let config = TodaConfig::default();
    let notes = vec![format!(
        "ODE: RK4 from u={} with h={}, matched at u={}",
        config.u_left, config.h, config.u_match
    )];
    Outcome::from_cases(10, "rank-one Whittaker check", toda_cases(TODA_P, config), notes)
}

/// Each coefficient perturbation must break the Pieri suite with a genuine mismatch.
pub fn criterion_11(cfg: &DeskConfig) -> Outcome {
    let cases = [Perturbation::FlipUSign, Perturbation::DropVPairingTwo]
        .into_iter()
        .map(|p| {
            let (cases, _) = match desk_targets() {
                Ok(t) => pieri_run(cfg, &t, p, true),
                Err(e) => (vec![CaseResult::error("desk systems".into(), &e)], Vec::new()),
            };
            let mismatch = cases
                .iter()
                .find(|c| !c.passed && !c.detail.starts_with("error"));
            let case = format!("perturbation {}", p.name());
            match mismatch {
                Some(c) => CaseResult::new(case, true, format!("detected at {}", c.case)),
                None => CaseResult::new(case, false, "Pieri suite still passes"),
            }
        })
        .collect();
    Outcome::from_cases(11, "negative controls", cases, Vec::new())
}

/// All eleven items in order.
pub fn run_desk(cfg: &DeskConfig) -> Vec<Outcome> {
    let (c1, polys) = criterion_1(cfg);
    let (c2, bc) = criterion_2(cfg, &polys);
    let c3 = criterion_3(&polys, &bc);
    vec![
        c1,
        c2,
        c3,
        criterion_4(),
        criterion_5(cfg),
        criterion_6(),
        criterion_7(cfg),
        criterion_8(cfg),
        criterion_9(cfg),
        criterion_10(),
        criterion_11(cfg),
    ]
}

//! Command-line definitions and their JSON-producing handlers.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodiff_core::diffeq::{Perturbation, PieriDatum};
use hodiff_core::jacobi;
use hodiff_core::rational::{self, Q};
use hodiff_core::rootsys::{Multiplicities, RootDatum, Weight};
use hodiff_core::whittaker::{self, TodaConfig};
use serde_json::{json, Value};

use crate::criteria::{self, CaseResult, DeskConfig, Outcome};
use crate::error::{CliError, CliResult};
use crate::systems::{self, describe, system_name};

pub const SCHEMA: &str = "hodiff/1";

#[derive(Debug, Parser)]
#[command(name = "hodiff", version, about = "Exact and numerical checks of hypergeometric difference equations on root systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one Jacobi polynomial and check its eigenvalue equation.
    Jacobi(JacobiArgs),
    /// Run a verification campaign.
    Verify(VerifyArgs),
    /// List the terms and factor lists of the difference equation.
    Coeffs(CoeffsArgs),
    /// Rank-one difference equation, recurrence and BC_1 cross-check.
    SweepRankOne(SweepArgs),
    /// Confluent (Toda) limits of the coefficients.
    WhittakerLimits(WhittakerArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Root system family: A, B, C, D, E, F, G or BC.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Args)]
pub struct JacobiArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Highest weight in fundamental-weight coordinates, e.g. "1,0".
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Multiplicities as "p/q", one value or one per root orbit.
    #[arg(long)]
    pub g: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Campaign {
    Desk,
    Custom,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Campaign::Desk)]
    pub campaign: Campaign,
    /// Families of a custom campaign, comma separated.
    #[arg(long)]
    pub family: Option<String>,
    /// Ranks matching --family, comma separated.
    #[arg(long)]
    pub rank: Option<String>,
    /// Restrict a custom campaign to this small weight (fundamental coordinates).
    #[arg(long)]
    pub omega: Option<String>,
    /// Simple-root height bound on lambda.
    #[arg(long, default_value = "4")]
    pub height: String,
    /// Multiplicity samples per system.
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance of the confluence check.
    #[arg(long, default_value = "1e-6")]
    pub tol: String,
    /// Test hook: perturb one coefficient formula.
    #[arg(long, hide = true)]
    pub perturb: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Small weight in fundamental coordinates; all small fundamental weights if omitted.
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// "g1,g2" pairs separated by ";"; the two default pairs if omitted.
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long, default_value = "1e-9")]
    pub tol: String,
}

#[derive(Debug, Args)]
pub struct WhittakerArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Small weight in fundamental coordinates; all small weights if omitted.
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long, default_value = "1e-6")]
    pub tol: String,
    /// Values of t, comma separated.
    #[arg(long, default_value = "10,20,30")]
    pub t: String,
    /// Rank one only: spectral pairing p of the Toda ODE check.
    #[arg(long, allow_hyphen_values = true, default_value_t = criteria::TODA_P)]
    pub p: f64,
    /// Rank one only: left end of the ODE integration.
    #[arg(long, allow_hyphen_values = true, default_value_t = TodaConfig::default().u_left)]
    pub ode_left: f64,
    /// Rank one only: RK4 step as a power of two, h = 2^-k.
    #[arg(long, default_value_t = 10)]
    pub ode_step_log2: u32,
    /// Rank one only: matching point against the large-u expansion.
    #[arg(long, allow_hyphen_values = true, default_value_t = TodaConfig::default().u_match)]
    pub ode_match: f64,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn parse_f64(s: &str, what: &str) -> CliResult<f64> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(invalid(format!("{what}: cannot parse {s:?}"))),
    }
}

fn parse_ints(s: &str, what: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| invalid(format!("{what}: cannot parse {s:?}"))))
        .collect()
}

fn parse_rationals(s: &str) -> CliResult<Vec<Q>> {
    Ok(s.split(',').map(rational::parse).collect::<Result<Vec<_>, _>>()?)
}

fn weight_arg(datum: &RootDatum, s: &str, what: &str) -> CliResult<Weight> {
    Ok(datum.from_fundamental(&parse_ints(s, what)?)?)
}

fn multiplicities(datum: &RootDatum, g: &str) -> CliResult<Multiplicities> {
    let values = parse_rationals(g)?;
    let values = if values.len() == 1 {
        vec![values[0].clone(); datum.n_root_orbits()]
    } else {
        values
    };
    Ok(Multiplicities::new(datum, values)?)
}

fn system(args: &SystemArgs) -> CliResult<RootDatum> {
    Ok(systems::datum(&args.family, args.rank)?)
}

fn weight_json(datum: &RootDatum, w: &Weight) -> Value {
    json!(datum.fundamental_coords(w))
}

fn render_all(v: &[Q]) -> Vec<String> {
    v.iter().map(rational::render).collect()
}

/// Result of one command: the JSON document and whether every check passed.
pub struct Report {
    pub value: Value,
    pub passed: bool,
}

/// What a process run produces: exit code, stdout and stderr text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn emit(cli: &Cli, value: &Value) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run_in_pool(cli: &Cli) -> CliResult<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if cli.jobs > 0 {
        builder = builder.num_threads(cli.jobs);
    }
    let pool = builder.build().map_err(|e| invalid(e.to_string()))?;
    pool.install(|| run(cli))
}

/// Parses `args` (program name first), runs the command and renders its
/// output. Exit codes: 0 pass, 1 fail, 2 invalid input.
pub fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return Execution {
                code: if e.use_stderr() { 2 } else { 0 },
                stdout: if e.use_stderr() { String::new() } else { e.to_string() },
                stderr: if e.use_stderr() { e.to_string() } else { String::new() },
            }
        }
    };
    let result = run_in_pool(&cli).and_then(|r| Ok((emit(&cli, &r.value)?, r.passed)));
    match result {
        Ok((stdout, passed)) => Execution {
            code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Execution {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("hodiff: {e}\n"),
        },
    }
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Jacobi(a) => cmd_jacobi(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Coeffs(a) => cmd_coeffs(a),
        Command::SweepRankOne(a) => cmd_sweep(a),
        Command::WhittakerLimits(a) => cmd_whittaker(a),
    }
}

pub fn cmd_jacobi(a: &JacobiArgs) -> CliResult<Report> {
    let datum = system(&a.system)?;
    let mults = multiplicities(&datum, &a.g)?;
    let lambda = weight_arg(&datum, &a.lambda, "--lambda")?;
    let p = jacobi::jacobi_polynomial(&datum, &mults, &lambda)?;
    let eigen = jacobi::verify_eigen_poly(&datum, &p)?;
    let opdam = jacobi::opdam_leading_coefficient(&datum, &mults, &lambda)?;
    let leading = p.leading_coefficient();
    let coefficients: Vec<Value> = p
        .dominant_coeffs()
        .iter()
        .rev()
        .map(|(w, c)| json!({"weight": weight_json(&datum, w), "coeff": rational::render(c)}))
        .collect();
    let passed = eigen.passed() && leading == opdam;
    Ok(Report {
        value: json!({
            "schema": SCHEMA,
            "command": "jacobi",
            "system": system_name(&datum),
            "lambda": weight_json(&datum, &lambda),
            "g": render_all(mults.values()),
            "coefficients": coefficients,
            "value_at_zero": rational::render(&p.to_exp_poly(&datum).value_at_zero()),
            "leading_coefficient": rational::render(&leading),
            "opdam_leading_coefficient": rational::render(&opdam),
            "eigencheck": {
                "eigenvalue": rational::render(&eigen.eigenvalue),
                "n_terms": eigen.n_terms,
                "residual_terms": eigen.residual.len(),
                "passed": eigen.passed(),
            },
            "passed": passed,
        }),
        passed,
    })
}

fn summary(campaign: &str, seed: u64, outcomes: &[Outcome]) -> Report {
    let n_cases: usize = outcomes.iter().map(|o| o.n_cases).sum();
    let n_fail: usize = outcomes.iter().map(|o| o.n_fail).sum();
    let failures: Vec<Value> = outcomes
        .iter()
        .flat_map(|o| {
            o.failures
                .iter()
                .map(move |f| json!({"criterion": o.id, "case": f.case, "detail": f.detail}))
        })
        .collect();
    let passed = outcomes.iter().all(|o| o.passed);
    Report {
        value: json!({
            "schema": SCHEMA,
            "command": "verify",
            "campaign": campaign,
            "seed": seed,
            "n_cases": n_cases,
            "n_pass": n_cases - n_fail,
            "n_fail": n_fail,
            "failures": failures,
            "criteria": outcomes
                .iter()
                .map(|o| json!({
                    "id": o.id,
                    "title": o.title,
                    "passed": o.passed,
                    "n_cases": o.n_cases,
                    "n_fail": o.n_fail,
                    "notes": o.notes,
                }))
                .collect::<Vec<_>>(),
            "passed": passed,
        }),
        passed,
    }
}

fn perturbation(a: &VerifyArgs) -> CliResult<Perturbation> {
    match &a.perturb {
        None => Ok(Perturbation::None),
        Some(s) => Perturbation::parse(s).ok_or_else(|| invalid(format!("unknown perturbation {s:?}"))),
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> CliResult<Report> {
    let perturb = perturbation(a)?;
    let tol = parse_f64(&a.tol, "--tol")?;
    let height = rational::parse(&a.height)?;
    if a.samples == 0 {
        return Err(invalid("empty campaign: --samples 0"));
    }
    match (a.campaign, &a.family) {
        (Campaign::Desk, None) => {
            let cfg = DeskConfig {
                seed: a.seed,
                samples: a.samples,
                height,
                confluence_tol: tol,
            };
            let outcomes = if perturb == Perturbation::None {
                criteria::run_desk(&cfg)
            } else {
                vec![criteria::criterion_1_perturbed(&cfg, perturb)]
            };
            Ok(summary("desk", a.seed, &outcomes))
        }
        (Campaign::Desk, Some(_)) => Err(invalid("--family selects a custom campaign; pass --campaign custom")),
        (Campaign::Custom, fam) => {
            let families: Vec<String> = fam
                .as_deref()
                .map(|s| s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect())
                .unwrap_or_default();
            let ranks: Vec<i64> = match &a.rank {
                Some(r) => parse_ints(r, "--rank")?,
                None => Vec::new(),
            };
            if families.is_empty() {
                return Err(invalid("empty campaign: no systems given"));
            }
            if families.len() != ranks.len() {
                return Err(invalid("--family and --rank lists differ in length"));
            }
            let mut data = Vec::new();
            for (f, &r) in families.iter().zip(&ranks) {
                let r = usize::try_from(r).map_err(|_| invalid(format!("negative rank {r}")))?;
                data.push(systems::datum(f, r)?);
            }
            let mut omegas = Vec::new();
            for d in &data {
                omegas.push(match &a.omega {
                    Some(s) => vec![weight_arg(d, s, "--omega")?],
                    None => systems::small_fundamental_weights(d),
                });
            }
            let cfg = DeskConfig {
                seed: a.seed,
                samples: a.samples,
                height,
                confluence_tol: tol,
            };
            let outcomes = criteria::custom_campaign(&cfg, &data, &omegas, perturb)?;
            if outcomes.iter().all(|o| o.n_cases == 0) {
                return Err(invalid("empty campaign: no cases generated"));
            }
            Ok(summary("custom", a.seed, &outcomes))
        }
    }
}

pub fn cmd_coeffs(a: &CoeffsArgs) -> CliResult<Report> {
    let datum = system(&a.system)?;
    let omegas = match &a.omega {
        Some(s) => vec![weight_arg(&datum, s, "--omega")?],
        None => systems::small_fundamental_weights(&datum),
    };
    let mut listings = Vec::new();
    let mut latex = String::new();
    for omega in &omegas {
        let pd = PieriDatum::new(&datum, omega, Perturbation::None)?;
        let mut v_nus: Vec<&Weight> = pd.terms.iter().filter(|t| !t.v.is_empty()).map(|t| &t.nu).collect();
        v_nus.dedup();
        let n_u = pd.terms.iter().filter(|t| !t.u.is_empty()).count();
        let mut roots = std::collections::BTreeSet::new();
        let terms: Vec<Value> = pd
            .terms
            .iter()
            .map(|t| {
                let f = |fs: &[hodiff_core::diffeq::Factor]| -> Vec<Value> {
                    fs.iter()
                        .map(|x| {
                            let (n, d) = x.render(&datum);
                            json!({"num": n, "den": d})
                        })
                        .collect()
                };
                roots.extend(t.v.iter().chain(&t.u).map(|x| x.root));
                json!({
                    "nu": weight_json(&datum, &t.nu),
                    "eta": weight_json(&datum, &t.eta),
                    "v": f(&t.v),
                    "u": f(&t.u),
                })
            })
            .collect();
        let root_table: Vec<Value> = roots
            .iter()
            .map(|&r| {
                let c: Vec<String> = datum
                    .simple_root_coords(datum.root(r))
                    .iter()
                    .map(|x| x.to_string())
                    .collect();
                json!({"index": r, "simple_coords": c, "orbit": datum.root_orbit(r)})
            })
            .collect();
        latex.push_str(&latex_listing(&datum, omega, &pd));
        listings.push(json!({
            "omega": weight_json(&datum, omega),
            "n_terms": pd.terms.len(),
            "n_shifts": pd.n_shifts(),
            "n_v_terms": v_nus.len(),
            "n_u_terms": n_u,
            "roots": root_table,
            "terms": terms,
        }));
    }
    let mut value = json!({
        "schema": SCHEMA,
        "command": "coeffs",
        "system": system_name(&datum),
        "listings": listings,
    });
    if a.format == Format::Latex {
        value["latex"] = Value::String(latex);
    }
    Ok(Report { value, passed: true })
}

fn latex_listing(datum: &RootDatum, omega: &Weight, pd: &PieriDatum) -> String {
    let frac = |fs: &[hodiff_core::diffeq::Factor]| -> String {
        if fs.is_empty() {
            return "1".into();
        }
        fs.iter()
            .map(|x| {
                let (n, d) = x.render(datum);
                format!("\\frac{{{}}}{{{}}}", tex(&n), tex(&d))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = format!("% {} omega = {}\n", system_name(datum), describe(datum, omega));
    for t in &pd.terms {
        s.push_str(&format!(
            "V_{{{}}} = {}, \\quad U_{{{},{}}} = {} \\\\\n",
            describe(datum, &t.nu),
            frac(&t.v),
            describe(datum, &t.nu),
            describe(datum, &t.eta),
            frac(&t.u)
        ));
    }
    s
}

fn tex(s: &str) -> String {
    s.replace("<xi,a", "\\langle\\xi,\\alpha_{")
        .replace('>', "}^\\vee\\rangle")
        .replace('g', "g_")
}

pub fn cmd_sweep(a: &SweepArgs) -> CliResult<Report> {
    let tol = parse_f64(&a.tol, "--tol")?;
    let pairs: Vec<(Q, Q)> = match &a.g {
        None => criteria::RANK_ONE_PARAMS
            .iter()
            .map(|&((p, q), (r, s))| (rational::q(p, q), rational::q(r, s)))
            .collect(),
        Some(s) => s
            .split(';')
            .map(|pair| {
                let v = parse_rationals(pair)?;
                match v.as_slice() {
                    [g1, g2] => Ok((g1.clone(), g2.clone())),
                    _ => Err(invalid(format!("--g expects \"g1,g2\" pairs, got {pair:?}"))),
                }
            })
            .collect::<CliResult<_>>()?,
    };
    if pairs.is_empty() {
        return Err(invalid("no parameter pairs"));
    }
    for (g1, g2) in &pairs {
        if g1 <= &Q::from_integer(0.into()) || g2 <= &Q::from_integer(0.into()) {
            return Err(invalid("rank-one multiplicities must be positive"));
        }
    }
    let cases: Vec<CaseResult> = pairs
        .iter()
        .flat_map(|(g1, g2)| criteria::rank_one_cases(g1, g2, &criteria::DE_XI, &criteria::DE_X, tol))
        .collect();
    let passed = cases.iter().all(|c| c.passed);
    Ok(Report {
        value: json!({
            "schema": SCHEMA,
            "command": "sweep-rank-one",
            "n_cases": cases.len(),
            "n_fail": cases.iter().filter(|c| !c.passed).count(),
            "cases": cases,
            "passed": passed,
        }),
        passed,
    })
}

pub fn cmd_whittaker(a: &WhittakerArgs) -> CliResult<Report> {
    let datum = system(&a.system)?;
    let tol = parse_f64(&a.tol, "--tol")?;
    let ts: Vec<f64> = a
        .t
        .split(',')
        .map(|s| parse_f64(s, "--t"))
        .collect::<CliResult<_>>()?;
    if ts.is_empty() || ts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("--t must be increasing"));
    }
    let omegas = match &a.omega {
        Some(s) => vec![weight_arg(&datum, s, "--omega")?],
        None => systems::small_weights(&datum)?,
    };
    let r = datum.rank();
    let xi = systems::from_simple_pairings(&datum, &vec![criteria::CONFLUENCE_XI; r]);
    let x = systems::from_simple_pairings(&datum, &vec![criteria::CONFLUENCE_X; r]);
    let mut passed = true;
    let mut reports = Vec::new();
    for omega in &omegas {
        let rep = whittaker::verify_confluence(&datum, omega, &xi, &x, &ts)?;
        passed &= rep.passed(tol);
        let rows: Vec<Value> = rep
            .rows
            .iter()
            .flat_map(|row| {
                let term = whittaker::row_label(&datum, row);
                let family = row.family.name();
                let exponent = rational::render(&row.exponent);
                row.deviations.iter().map(move |&(t, d)| {
                    json!({"family": family, "term": term, "exponent": exponent, "t": t, "deviation": d})
                })
            })
            .collect();
        reports.push(json!({
            "omega": weight_json(&datum, omega),
            "passed": rep.passed(tol),
            "worst": rep.worst(),
            "rows": rows,
        }));
    }
    let mut value = json!({
        "schema": SCHEMA,
        "command": "whittaker-limits",
        "system": system_name(&datum),
        "tol": tol,
        "xi_simple_pairing": criteria::CONFLUENCE_XI,
        "limits": reports,
    });
    if datum.family() == hodiff_core::Family::A && r == 1 {
        let config = TodaConfig {
            u_left: a.ode_left,
            h: 1.0 / f64::from(1u32 << a.ode_step_log2.min(20)),
            u_match: a.ode_match,
            ..TodaConfig::default()
        };
        let cases = criteria::toda_cases(a.p, config);
        passed &= cases.iter().all(|c| c.passed);
        value["toda"] = json!({
            "p": a.p,
            "u_left": config.u_left,
            "h": config.h,
            "u_match": config.u_match,
            "cases": cases,
        });
    }
    value["passed"] = Value::Bool(passed);
    Ok(Report { value, passed })
}

#[cfg(test)]
mod tests {
    use serde_json::Value;

    use super::execute;

    fn hodiff(args: &[&str]) -> (i32, String) {
        let run = execute(std::iter::once("hodiff").chain(args.iter().copied()));
        (run.code, run.stdout)
    }

    fn json(s: &str) -> Value {
        serde_json::from_str(s).expect("valid json")
    }

    #[test]
    fn jacobi_rank_one_example() {
        let (code, out) = hodiff(&["jacobi", "--family", "A", "--rank", "1", "--lambda", "1", "--g", "1/2"]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["schema"], "hodiff/1");
        assert_eq!(v["coefficients"][0]["weight"][0], 1);
        assert_eq!(v["coefficients"][0]["coeff"], "1/2");
        assert_eq!(v["value_at_zero"], "1");
        assert_eq!(v["eigencheck"]["passed"], true);
    }

    #[test]
    fn jacobi_zero_weight_is_constant() {
        let (code, out) = hodiff(&["jacobi", "--family", "A", "--rank", "2", "--lambda", "0,0", "--g", "3/7"]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["coefficients"].as_array().unwrap().len(), 1);
        assert_eq!(v["coefficients"][0]["coeff"], "1");
    }

    #[test]
    fn invalid_inputs_exit_two() {
        let base = ["jacobi", "--family", "A", "--rank", "1", "--lambda", "1", "--g"];
        assert_eq!(hodiff(&[&base[..], &["1/0"]].concat()).0, 2);
        assert_eq!(hodiff(&["jacobi", "--family", "Q", "--rank", "1", "--lambda", "1", "--g", "1"]).0, 2);
        assert_eq!(hodiff(&["jacobi", "--family", "A", "--rank", "2", "--lambda", "-1,0", "--g", "1"]).0, 2);
        assert_eq!(hodiff(&["verify", "--campaign", "custom"]).0, 2);
        assert_eq!(hodiff(&["verify", "--campaign", "custom", "--family", "A", "--rank", "2", "--omega", "3,0"]).0, 2);
        assert_eq!(hodiff(&["nonsense"]).0, 2);
    }

    #[test]
    fn coefficient_listings() {
        let (code, out) = hodiff(&["coeffs", "--family", "A", "--rank", "1"]);
        assert_eq!(code, 0);
        assert_eq!(json(&out)["listings"][0]["n_terms"], 2);

        let (_, out) = hodiff(&["coeffs", "--family", "A", "--rank", "2", "--omega", "1,1"]);
        let l = &json(&out)["listings"][0];
        assert_eq!(l["n_v_terms"], 6);
        assert_eq!(l["n_u_terms"], 6);

        let first = hodiff(&["coeffs", "--family", "G", "--rank", "2", "--format", "latex"]);
        let second = hodiff(&["coeffs", "--family", "G", "--rank", "2", "--format", "latex"]);
        assert_eq!(first, second);
        assert!(json(&first.1)["latex"].as_str().unwrap().contains("\\frac"));
    }

    #[test]
    fn custom_campaign_passes_and_is_reproducible() {
        let args = ["verify", "--campaign", "custom", "--family", "A,B", "--rank", "2,2", "--seed", "7", "--samples", "4"];
        let (code, out) = hodiff(&args);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["n_fail"], 0);
        assert!(v["n_cases"].as_u64().unwrap() > 0);
        let (_, again) = hodiff(&[&args[..], &["--jobs", "1"]].concat());
        assert_eq!(out, again);
    }

    #[test]
    fn perturbation_hook_names_failing_case() {
        for p in ["flip-u-sign", "drop-v-pairing-two"] {
            let (code, out) = hodiff(&[
                "verify", "--campaign", "custom", "--family", "B", "--rank", "2", "--perturb", p,
            ]);
            assert_eq!(code, 1, "{p}");
            let v = json(&out);
            assert!(v["failures"][0]["case"].as_str().unwrap().starts_with("B2"));
        }
    }

    #[test]
    fn rank_one_sweep() {
        let (code, out) = hodiff(&["sweep-rank-one", "--g", "1/2,1/3"]);
        assert_eq!(code, 0);
        assert_eq!(json(&out)["n_fail"], 0);
        assert_eq!(hodiff(&["sweep-rank-one", "--g", "1/2"]).0, 2);
    }

    #[test]
    fn whittaker_limits_rank_one() {
        let (code, out) = hodiff(&["whittaker-limits", "--family", "A", "--rank", "1"]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["toda"]["cases"].as_array().unwrap().len(), 3);
        let rows = v["limits"][0]["rows"].as_array().unwrap();
        assert!(rows.iter().all(|r| r["deviation"].as_f64().unwrap() < 1e-2));
    }

    #[test]
    fn out_flag_writes_file() {
        let dir = std::env::temp_dir().join(format!("hodiff-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("report.json");
        let (code, out) = hodiff(&["coeffs", "--family", "A", "--rank", "1", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
        let v = json(&std::fs::read_to_string(&path).unwrap());
        assert_eq!(v["command"], "coeffs");
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn desk_summary_shape() {
        let (code, out) = hodiff(&["verify"]);
        let v = json(&out);
        assert_eq!(v["criteria"].as_array().unwrap().len(), 11);
        assert_eq!(code == 0, v["passed"] == true);
        let n_fail: u64 = v["criteria"].as_array().unwrap().iter().map(|c| c["n_fail"].as_u64().unwrap()).sum();
        assert_eq!(v["n_fail"].as_u64().unwrap(), n_fail);
    }
}

//! One function per subcommand. Each returns the process exit code:
//! 0 success/pass, 1 certificate or verification failure, 2 usage error,
//! 3 construction error.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use linecut::exactmath::{parse_rational, rat, rat_i, rational_from_f64, to_f64};
use linecut::extremal::{build_profile, scalar_target};
use linecut::regularity::{
    epsilon0_search, verify_regularity, Epsilon0Bracket, RegularityReport, ScanOutcome,
};
use linecut::stability::{
    certify_margin_polynomial, certify_slope_instability, margin_numerator_poly, slope_report,
};
use linecut::toric::{abreu_scalar_fd, hessian, MomentPoint, PotentialModel};
use linecut::{Error, Poly, Rational};

use crate::out::{csv_document, emit, f64_str, json_document, rat_str};
use crate::{CliError, Format};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CONSTRUCTION: u8 = 3;

/// Exit code carried by a library error.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::VanishingDenominator { .. } => EXIT_CONSTRUCTION,
        Error::Domain(_) | Error::DimensionMismatch { .. } | Error::ParseRational(_) => EXIT_USAGE,
        Error::IdentityViolation(_) | Error::Numeric(_) => EXIT_FAIL,
    }
}

fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rat_str).collect()
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CliError::usage(format!("cannot build worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

// ---------------------------------------------------------------- slope ----

#[derive(Serialize)]
struct SlopeRow {
    n: usize,
    eps: String,
    seshadri: String,
    mu: String,
    mu_seshadri: String,
    margin: String,
    eps_f64: f64,
    mu_f64: f64,
    mu_seshadri_f64: f64,
    margin_f64: f64,
}

#[derive(Serialize)]
struct SlopeDoc {
    schema: u32,
    command: &'static str,
    rows: Vec<SlopeRow>,
}

pub fn cmd_slope(
    n: usize,
    eps: Option<String>,
    eps_grid: Option<usize>,
    format: Format,
    out: Option<PathBuf>,
    jobs: Option<usize>,
) -> Result<u8, CliError> {
    let mut grid: Vec<Rational> = Vec::new();
    if let Some(s) = eps {
        grid.push(parse_rational(&s)?);
    }
    if let Some(k) = eps_grid {
        if k == 0 {
            return Err(CliError::usage("--eps-grid must be positive"));
        }
        // k interior points i/(k+1); the endpoints 0 and 1 are excluded
        for i in 1..=k {
            grid.push(rat(i as i64, k as i64 + 1));
        }
    }
    if grid.is_empty() {
        return Err(CliError::usage("slope needs --eps and/or --eps-grid"));
    }
    grid.sort();
    grid.dedup();

    let reports = with_jobs(jobs, || {
        grid.par_iter()
            .map(|e| slope_report(n, e))
            .collect::<Vec<_>>()
    })?;
    let mut rows = Vec::with_capacity(reports.len());
    for r in reports {
        let r = r?;
        rows.push(SlopeRow {
            n: r.n,
            eps: rat_str(&r.eps),
            seshadri: rat_str(&r.seshadri),
            mu: rat_str(&r.mu),
            mu_seshadri: rat_str(&r.mu_seshadri),
            margin: rat_str(&r.margin),
            eps_f64: to_f64(&r.eps),
            mu_f64: to_f64(&r.mu),
            mu_seshadri_f64: to_f64(&r.mu_seshadri),
            margin_f64: to_f64(&r.margin),
        });
    }

    let content = match format {
        Format::Csv => csv_document(
            &[
                "n",
                "eps",
                "seshadri",
                "mu",
                "mu_seshadri",
                "margin",
                "eps_f64",
                "mu_f64",
                "mu_seshadri_f64",
                "margin_f64",
            ],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.eps.clone(),
                        r.seshadri.clone(),
                        r.mu.clone(),
                        r.mu_seshadri.clone(),
                        r.margin.clone(),
                        f64_str(r.eps_f64),
                        f64_str(r.mu_f64),
                        f64_str(r.mu_seshadri_f64),
                        f64_str(r.margin_f64),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_document(&SlopeDoc {
            schema: 1,
            command: "slope",
            rows,
        }),
    };
    emit(out.as_deref(), &content)?;
    Ok(EXIT_PASS)
}

// ------------------------------------------------- instability-certify ----

#[derive(Serialize)]
struct CertificateDoc {
    n: usize,
    valid: bool,
    sign: &'static str,
    factored_form_checked: bool,
    margin_numerator: Vec<String>,
}

#[derive(Serialize)]
struct CertifyDoc {
    schema: u32,
    command: &'static str,
    all_valid: bool,
    certificates: Vec<CertificateDoc>,
}

/// Parses `"4"` or an inclusive range `"3..8"`.
pub fn parse_n_range(range: &str) -> Result<Vec<usize>, CliError> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::usage(format!("invalid dimension {s:?}")))
    };
    if let Some((a, b)) = range.split_once("..") {
        let lo = parse_one(a)?;
        let hi = parse_one(b.trim_start_matches('='))?;
        if lo > hi {
            return Err(CliError::usage(format!("empty dimension range {range:?}")));
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![parse_one(range)?])
    }
}

pub fn cmd_instability_certify(
    n_range: &str,
    out: Option<PathBuf>,
    tamper: bool,
) -> Result<u8, CliError> {
    let mut certificates = Vec::new();
    for n in parse_n_range(n_range)? {
        let cert = if tamper {
            // negative-control hook: offset the polynomial and re-validate
            let poly = &margin_numerator_poly(n) + &Poly::one();
            certify_margin_polynomial(n, poly)
        } else {
            certify_slope_instability(n)?
        };
        certificates.push(CertificateDoc {
            n,
            valid: cert.is_valid(),
            sign: cert.sign.as_str(),
            factored_form_checked: cert.factored_form_checked,
            margin_numerator: poly_strings(&cert.margin_numerator),
        });
    }
    let all_valid = certificates.iter().all(|c| c.valid);
    let doc = CertifyDoc {
        schema: 1,
        command: "instability-certify",
        all_valid,
        certificates,
    };
    emit(out.as_deref(), &json_document(&doc))?;
    Ok(if all_valid { EXIT_PASS } else { EXIT_FAIL })
}

// ------------------------------------------------------------- extremal ----

#[derive(Serialize)]
struct RatFuncDoc {
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Serialize)]
struct ExtremalDoc {
    schema: u32,
    command: &'static str,
    n: usize,
    eps: String,
    alpha: String,
    beta: String,
    gamma: String,
    delta: String,
    alpha_f64: f64,
    beta_f64: f64,
    gamma_f64: f64,
    delta_f64: f64,
    p: Vec<String>,
    q: Vec<String>,
    hpp: RatFuncDoc,
    a: RatFuncDoc,
}

pub fn cmd_extremal(n: usize, eps: &str, out: Option<PathBuf>) -> Result<u8, CliError> {
    let eps = parse_rational(eps)?;
    let profile = build_profile(n, &eps)?;
    let c = &profile.constants;
    let doc = ExtremalDoc {
        schema: 1,
        command: "extremal",
        n,
        eps: rat_str(&eps),
        alpha: rat_str(&c.alpha),
        beta: rat_str(&c.beta),
        gamma: rat_str(&c.gamma),
        delta: rat_str(&c.delta),
        alpha_f64: to_f64(&c.alpha),
        beta_f64: to_f64(&c.beta),
        gamma_f64: to_f64(&c.gamma),
        delta_f64: to_f64(&c.delta),
        p: poly_strings(&profile.p),
        q: poly_strings(&profile.q),
        hpp: RatFuncDoc {
            num: poly_strings(profile.hpp.num()),
            den: poly_strings(profile.hpp.den()),
        },
        a: RatFuncDoc {
            num: poly_strings(profile.a.num()),
            den: poly_strings(profile.a.den()),
        },
    };
    emit(out.as_deref(), &json_document(&doc))?;
    Ok(EXIT_PASS)
}

// --------------------------------------------------------------- verify ----

#[derive(Serialize)]
struct CheckDoc {
    pass: bool,
    witness: String,
}

#[derive(Serialize)]
struct ChecksDoc {
    order3_at_one: CheckDoc,
    q_at_one: CheckDoc,
    q_at_eps: CheckDoc,
    residue_one: CheckDoc,
    q_positive: CheckDoc,
    hessian_pd: CheckDoc,
    det_form: CheckDoc,
}

#[derive(Serialize)]
struct VerifyDoc {
    schema: u32,
    command: &'static str,
    n: usize,
    eps: String,
    checks: ChecksDoc,
    first_failed: Option<&'static str>,
    overall: bool,
}

fn report_doc(r: &RegularityReport) -> VerifyDoc {
    let check = |c: &linecut::regularity::Check| CheckDoc {
        pass: c.pass,
        witness: c.witness.clone(),
    };
    VerifyDoc {
        schema: 1,
        command: "verify",
        n: r.n,
        eps: rat_str(&r.eps),
        checks: ChecksDoc {
            order3_at_one: check(&r.order3_at_one),
            q_at_one: check(&r.q_at_one),
            q_at_eps: check(&r.q_at_eps),
            residue_one: check(&r.residue_one),
            q_positive: check(&r.q_positive),
            hessian_pd: check(&r.hessian_pd),
            det_form: check(&r.det_form),
        },
        first_failed: r.first_failed(),
        overall: r.overall,
    }
}

pub fn cmd_verify(n: usize, eps: &str, out: Option<PathBuf>) -> Result<u8, CliError> {
    let eps = parse_rational(eps)?;
    let report = verify_regularity(n, &eps)?;
    emit(out.as_deref(), &json_document(&report_doc(&report)))?;
    Ok(if report.overall { EXIT_PASS } else { EXIT_FAIL })
}

// ------------------------------------------------------------- epsilon0 ----

#[derive(Serialize)]
struct AnomalyDoc {
    eps: String,
    report: VerifyDoc,
}

#[derive(Serialize)]
struct CountsDoc {
    pass: usize,
    fail: usize,
    construction_error: usize,
}

#[derive(Serialize)]
struct Epsilon0Doc {
    schema: u32,
    command: &'static str,
    n: usize,
    resolution: String,
    refine: u32,
    verdict: String,
    last_pass: Option<String>,
    first_fail: Option<String>,
    bracket_width: Option<String>,
    counts: CountsDoc,
    anomalies: Vec<AnomalyDoc>,
}

fn bracket_doc(b: &Epsilon0Bracket, resolution: &Rational, refine: u32) -> Epsilon0Doc {
    let verdict = match (&b.last_pass, &b.first_fail) {
        (_, None) => "all-pass".to_string(),
        (Some(_), Some(_)) => "bracket".to_string(),
        (None, Some(_)) => "no-pass".to_string(),
    };
    let width = match (&b.last_pass, &b.first_fail) {
        (Some(lo), Some(hi)) => Some(rat_str(&(hi - lo))),
        _ => None,
    };
    let mut counts = CountsDoc {
        pass: 0,
        fail: 0,
        construction_error: 0,
    };
    for rec in &b.records {
        match rec.outcome {
            ScanOutcome::Pass(_) => counts.pass += 1,
            ScanOutcome::Fail(_) => counts.fail += 1,
            ScanOutcome::ConstructionError(_) => counts.construction_error += 1,
        }
    }
    Epsilon0Doc {
        schema: 1,
        command: "epsilon0",
        n: b.n,
        resolution: rat_str(resolution),
        refine,
        verdict,
        last_pass: b.last_pass.as_ref().map(rat_str),
        first_fail: b.first_fail.as_ref().map(rat_str),
        bracket_width: width,
        counts,
        anomalies: b
            .anomalies
            .iter()
            .map(|(eps, report)| AnomalyDoc {
                eps: rat_str(eps),
                report: report_doc(report),
            })
            .collect(),
    }
}

pub fn cmd_epsilon0(
    n: usize,
    resolution: &str,
    refine: u32,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    out_csv: Option<PathBuf>,
) -> Result<u8, CliError> {
    let resolution = parse_rational(resolution)?;
    let bracket = with_jobs(jobs, || epsilon0_search(n, &resolution, refine))??;

    let rows: Vec<Vec<String>> = bracket
        .records
        .iter()
        .map(|rec| {
            let first_failed = match &rec.outcome {
                ScanOutcome::Fail(report) => report.first_failed().unwrap_or(""),
                _ => "",
            };
            vec![
                rat_str(&rec.eps),
                f64_str(to_f64(&rec.eps)),
                rec.outcome.label().to_string(),
                first_failed.to_string(),
            ]
        })
        .collect();
    let csv = csv_document(&["eps", "eps_f64", "outcome", "first_failed"], &rows);
    if let Some(p) = out_csv {
        emit(Some(&p), &csv)?;
    }

    let doc = bracket_doc(&bracket, &resolution, refine);
    emit(out.as_deref(), &json_document(&doc))?;
    Ok(EXIT_PASS)
}

// --------------------------------------------------------------- sample ----

#[derive(Serialize)]
struct SampleStatus {
    schema: u32,
    command: &'static str,
    rows: usize,
    out: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn sample_grid(n: usize, eps: f64, per_axis: usize, margin: f64) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (0..per_axis)
        .map(|k| margin + k as f64 * (1.0 - 2.0 * margin) / (per_axis - 1) as f64)
        .collect();
    let mut out = Vec::new();
    for mut code in 0..per_axis.pow(n as u32) {
        let mut x = Vec::with_capacity(n);
        for _ in 0..n {
            x.push(axis[code % per_axis]);
            code /= per_axis;
        }
        let r: f64 = x.iter().sum();
        let rho: f64 = x[..n - 1].iter().sum();
        if 1.0 - r >= margin && (eps == 0.0 || rho - eps >= margin) {
            out.push(x);
        }
    }
    out
}

pub fn cmd_sample(
    n: usize,
    eps_arg: &str,
    grid: usize,
    step: f64,
    out: Option<PathBuf>,
) -> Result<u8, CliError> {
    if grid < 2 {
        return Err(CliError::usage("--grid must be at least 2"));
    }
    if step.is_nan() || step <= 0.0 {
        return Err(CliError::usage("--step must be positive"));
    }
    // exact commands take eps as p/q; sample alone also accepts a float,
    // converted losslessly to its dyadic rational with a warning
    let (eps, warning) = match parse_rational(eps_arg) {
        Ok(e) => (e, None),
        Err(_) => {
            let v: f64 = eps_arg
                .parse()
                .map_err(|_| CliError::usage(format!("invalid eps {eps_arg:?}")))?;
            let e = rational_from_f64(v)?;
            (
                e.clone(),
                Some(format!(
                    "float eps converted to the exact dyadic rational {}; exact pipelines \
                     prefer --eps p/q",
                    rat_str(&e)
                )),
            )
        }
    };

    let model = if eps == rat_i(0) {
        PotentialModel::Guillemin { n }
    } else {
        PotentialModel::Extremal(build_profile(n, &eps)?)
    };
    let eps_f = to_f64(&eps);
    let margin = 0.05;

    let mut header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    header.extend(
        [
            "rho",
            "hpp",
            "S_fd",
            "S_target",
            "min_eig",
            "det_closed",
            "det_numeric",
        ]
        .map(String::from),
    );
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();

    let mut rows = Vec::new();
    for x in sample_grid(n, eps_f, grid, margin) {
        let point = MomentPoint::new(x.clone());
        let rho = point.rho();
        let r = point.r();
        let hpp = model.hpp_at(rho);
        let s_fd = abreu_scalar_fd(&model, &point, step)?;
        let s_target = match model.profile() {
            Some(profile) => to_f64(&scalar_target(profile, &rational_from_f64(rho)?)),
            None => (n * (n + 1)) as f64,
        };
        let h = hessian(&model, &point)?;
        let min_eig = h
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let det_numeric = h.determinant();
        let det_closed = (1.0 + rho * (1.0 - rho) * hpp)
            / (2.0f64.powi(n as i32) * x.iter().product::<f64>() * (1.0 - r));
        let mut row: Vec<String> = x.iter().map(|&v| f64_str(v)).collect();
        row.extend([
            f64_str(rho),
            f64_str(hpp),
            f64_str(s_fd),
            f64_str(s_target),
            f64_str(min_eig),
            f64_str(det_closed),
            f64_str(det_numeric),
        ]);
        rows.push(row);
    }
    let csv = csv_document(&header_refs, &rows);

    match out {
        Some(path) => {
            emit(Some(&path), &csv)?;
            let status = SampleStatus {
                schema: 1,
                command: "sample",
                rows: rows.len(),
                out: path.display().to_string(),
                warning,
            };
            emit(None, &json_document(&status))?;
        }
        None => {
            if let Some(w) = &warning {
                eprintln!("warning: {w}");
            }
            emit(None, &csv)?;
        }
    }
    Ok(EXIT_PASS)
}

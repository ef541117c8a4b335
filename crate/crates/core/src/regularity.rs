//! Per-parameter certification that the extremal profile defines a genuine
//! symplectic potential: boundary behavior at both singular facets,
//! positivity of `Q` on the cut interval, positive-definiteness of the
//! Hessian, and the determinant closed form. On top of the per-parameter
//! checks sits a grid-plus-bisection search for the largest certifiable cut
//! depth.
//!
//! Checks (i)-(v) run in exact rational arithmetic. Checks (vi) and (vii)
//! combine the exact rank-one-update criterion with floating-point sampling
//! as an independent cross-check.

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{certify_sign, rat, rat_i, IntervalSign, Poly, RatFunc, Rational};
use crate::extremal::{build_profile, ExtremalProfile};
use crate::toric::{hessian_from_hpp, polytope_for};

/// Outcome of a single regularity hypothesis, with a witness string that
/// explains a failure (or records the certified quantity on success).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub pass: bool,
    pub witness: String,
}

impl Check {
    fn pass(witness: impl Into<String>) -> Self {
        Check {
            pass: true,
            witness: witness.into(),
        }
    }

    fn fail(witness: impl Into<String>) -> Self {
        Check {
            pass: false,
            witness: witness.into(),
        }
    }
}

/// Pass/fail ledger for the seven regularity hypotheses at one `(n, eps)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub n: usize,
    pub eps: Rational,
    /// (i) numerator of `h''` vanishes to order three at `rho = 1`.
    pub order3_at_one: Check,
    /// (ii) `Q(1) = Q'(1) = 0` and `Q''(1) = 2`.
    pub q_at_one: Check,
    /// (iii) `Q(eps) = 0` and `Q'(eps) = eps^{n-2} (1-eps)`.
    pub q_at_eps: Check,
    /// (iv) the pole of `h''` at the cut has residue exactly one, computed
    /// two independent ways.
    pub residue_one: Check,
    /// (v) Sturm certificate: `Q > 0` on the open interval `(eps, 1)`.
    pub q_positive: Check,
    /// (vi) Hessian positive-definiteness: exact rank-one-update criterion
    /// (machine-verified identity) plus eigenvalue sampling.
    pub hessian_pd: Check,
    /// (vii) determinant closed form against the numeric determinant.
    pub det_form: Check,
    pub overall: bool,
}

impl RegularityReport {
    pub fn checks(&self) -> [(&'static str, &Check); 7] {
        [
            ("order3_at_one", &self.order3_at_one),
            ("q_at_one", &self.q_at_one),
            ("q_at_eps", &self.q_at_eps),
            ("residue_one", &self.residue_one),
            ("q_positive", &self.q_positive),
            ("hessian_pd", &self.hessian_pd),
            ("det_form", &self.det_form),
        ]
    }

    /// Name of the first failing check, in the fixed (i)-(vii) order.
    pub fn first_failed(&self) -> Option<&'static str> {
        self.checks()
            .into_iter()
            .find(|(_, c)| !c.pass)
            .map(|(name, _)| name)
    }
}

fn check_order3_at_one(profile: &ExtremalProfile) -> Check {
    let num = profile.hpp_numerator_raw();
    let one = rat_i(1);
    let v0 = num.eval(&one);
    let v1 = num.derivative().eval(&one);
    let v2 = num.derivative().derivative().eval(&one);
    if v0.is_zero() && v1.is_zero() && v2.is_zero() {
        Check::pass("numerator vanishes to order >= 3 at rho = 1")
    } else {
        Check::fail(format!(
            "numerator jets at rho=1: ({v0}, {v1}, {v2}), expected (0, 0, 0)"
        ))
    }
}

fn check_q_at_one(profile: &ExtremalProfile) -> Check {
    let one = rat_i(1);
    let q0 = profile.q.eval(&one);
    let q1 = profile.q.derivative().eval(&one);
    let q2 = profile.q.derivative().derivative().eval(&one);
    if q0.is_zero() && q1.is_zero() && q2 == rat_i(2) {
        Check::pass("Q(1) = Q'(1) = 0, Q''(1) = 2")
    } else {
        Check::fail(format!(
            "Q jets at rho=1: ({q0}, {q1}, {q2}), expected (0, 0, 2)"
        ))
    }
}

fn check_q_at_eps(profile: &ExtremalProfile) -> Check {
    let q0 = profile.q.eval(&profile.eps);
    let q1 = profile.q.derivative().eval(&profile.eps);
    let expected = profile.eps.pow(profile.n as i32 - 2) * (Rational::one() - &profile.eps);
    if q0.is_zero() && q1 == expected {
        Check::pass(format!("Q(eps) = 0, Q'(eps) = {expected}"))
    } else {
        Check::fail(format!(
            "Q(eps) = {q0}, Q'(eps) = {q1}, expected (0, {expected})"
        ))
    }
}

fn check_residue_one(profile: &ExtremalProfile) -> Check {
    let num = profile.hpp_numerator_raw();
    if num.is_zero() {
        // degenerate profile: h'' is identically zero, no pole to normalize
        return Check::pass("h'' identically zero, no pole at the cut");
    }
    let eps = &profile.eps;
    let q1 = profile.q.derivative().eval(eps);
    if q1.is_zero() || eps.is_zero() {
        return Check::fail(format!("residue undefined: Q'(eps) = {q1} at eps = {eps}"));
    }
    let direct = num.eval(eps) / ((Rational::one() - eps) * eps * &q1);

    // independent route through the Taylor shift of the unreduced fraction
    let den = profile.hpp_denominator_raw();
    let den_shifted = den.taylor_shift(eps);
    let num_shifted = num.taylor_shift(eps);
    if !den_shifted.coeff(0).is_zero() || den_shifted.coeff(1).is_zero() {
        return Check::fail(format!(
            "denominator is not a simple zero at the cut: jets ({}, {})",
            den_shifted.coeff(0),
            den_shifted.coeff(1)
        ));
    }
    let laurent = num_shifted.coeff(0) / den_shifted.coeff(1);

    if direct == rat_i(1) && laurent == rat_i(1) {
        Check::pass("residue at the cut = 1 (direct and Laurent routes)")
    } else {
        Check::fail(format!(
            "residue routes gave {direct} and {laurent}, expected 1"
        ))
    }
}

fn check_q_positive(profile: &ExtremalProfile) -> Check {
    let one = rat_i(1);
    if profile.eps >= one {
        return Check::fail("empty certification interval".to_string());
    }
    let outcome = certify_sign(&profile.q, &profile.eps, &one);
    match outcome {
        IntervalSign::StrictlyPositive => Check::pass(format!(
            "Sturm: 0 roots inside ({}, 1), midpoint sign +",
            profile.eps
        )),
        other => {
            let inside = crate::exactmath::sturm_root_count(&profile.q, &profile.eps, &one)
                - usize::from(profile.q.eval(&one).is_zero());
            Check::fail(format!(
                "certify_sign(Q) = {}, {inside} root(s) strictly inside ({}, 1)",
                other.as_str(),
                profile.eps
            ))
        }
    }
}

/// Deterministic interior grid: per-axis values spread over [margin, 1-margin],
/// filtered so every facet function clears `margin`.
fn interior_grid(n: usize, eps: &Rational, per_axis: usize, margin: f64) -> Vec<Vec<f64>> {
    let polytope = polytope_for(n, eps).expect("grid over a valid polytope");
    let axis: Vec<f64> = (0..per_axis)
        .map(|k| margin + k as f64 * (1.0 - 2.0 * margin) / (per_axis.max(2) - 1) as f64)
        .collect();
    let mut points = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let x: Vec<f64> = idx.iter().map(|&i| axis[i]).collect();
        if polytope.is_interior(&x, margin) {
            points.push(x);
        }
        // odometer increment
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < per_axis {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == n {
                return points;
            }
        }
    }
}

/// Smallest eigenvalue of the potential Hessian on an interior grid with
/// facet margin `1e-3`. Points whose Hessian fails to be finite are
/// reported with a NaN eigenvalue rather than skipped silently.
pub fn min_eigenvalue_sample(
    n: usize,
    eps: &Rational,
    grid_points_per_axis: usize,
) -> Result<Vec<(Vec<f64>, f64)>> {
    if grid_points_per_axis < 2 {
        return Err(Error::Domain(format!(
            "grid needs >= 2 points per axis, got {grid_points_per_axis}"
        )));
    }
    let profile = build_profile(n, eps)?;
    Ok(min_eigenvalue_sample_for(
        &profile,
        grid_points_per_axis,
        1e-3,
    ))
}

fn min_eig(m: &DMatrix<f64>) -> f64 {
    if m.iter().any(|v| !v.is_finite()) {
        return f64::NAN;
    }
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

fn min_eigenvalue_sample_for(
    profile: &ExtremalProfile,
    per_axis: usize,
    margin: f64,
) -> Vec<(Vec<f64>, f64)> {
    interior_grid(profile.n, &profile.eps, per_axis, margin)
        .into_iter()
        .map(|x| {
            let rho: f64 = x[..profile.n - 1].iter().sum();
            let h = hessian_from_hpp(&x, profile.hpp_at(rho));
            let lambda = min_eig(&h);
            (x, lambda)
        })
        .collect()
}

/// Interior sample points aligned with the profile direction: `rho` sweeps
/// the cut interval, the first block carries `rho` in an even and a skewed
/// split, and the last coordinate sweeps what remains. Nonempty for every
/// constructible `eps`, unlike a fixed box grid.
fn profile_sample_points(profile: &ExtremalProfile) -> Vec<Vec<f64>> {
    let n = profile.n;
    let eps = crate::exactmath::to_f64(&profile.eps);
    let pad = 0.02 * (1.0 - eps);
    let mut points = Vec::new();
    for i in 0..6 {
        let rho = eps + pad + (1.0 - eps - 2.0 * pad) * i as f64 / 5.0;
        for j in 0..3 {
            let room = 1.0 - rho;
            let xn = room * (0.1 + 0.8 * j as f64 / 2.0);
            // even split of rho over the first block
            let mut even = vec![rho / (n - 1) as f64; n - 1];
            even.push(xn);
            points.push(even);
            // skewed split, breaking the permutation symmetry
            let mut skew = vec![rho / (3 * (n - 2)) as f64; n - 1];
            skew[0] = 2.0 * rho / 3.0;
            skew.push(xn);
            points.push(skew);
        }
    }
    points
}

/// (vi): the rank-one-update identity `1 + rho(1-rho) h'' = rho^{n-1}(1-rho)^2 / Q`
/// is machine-verified, so positive-definiteness reduces exactly to `Q > 0`;
/// eigenvalue sampling then cross-checks the reduction pointwise.
fn check_hessian_pd(profile: &ExtremalProfile, q_positive: bool) -> Check {
    let t = &Poly::monomial(1) * &Poly::from_i64(&[1, -1]);
    let lhs = &RatFunc::one() + &(&RatFunc::from_poly(t) * &profile.hpp);
    let rhs = RatFunc::new(
        &Poly::monomial(profile.n - 1) * &Poly::from_i64(&[1, -1]).pow(2),
        profile.q.clone(),
    );
    if lhs != rhs {
        return Check::fail("rank-one-update identity failed symbolic verification".to_string());
    }

    let samples = profile_sample_points(profile);
    let mut min_lambda = f64::INFINITY;
    for x in &samples {
        let rho: f64 = x[..profile.n - 1].iter().sum();
        let lambda = min_eig(&hessian_from_hpp(x, profile.hpp_at(rho)));
        if lambda.is_nan() {
            return Check::fail(format!("non-finite Hessian at sample point {x:?}"));
        }
        let criterion = 1.0 + rho * (1.0 - rho) * profile.hpp_at(rho);
        if (criterion > 0.0) != (lambda > 0.0) {
            return Check::fail(format!(
                "eigenvalue sampling disagrees with the Q-criterion at {x:?}: \
                 min eig {lambda}, criterion {criterion}"
            ));
        }
        min_lambda = min_lambda.min(lambda);
    }
    if !q_positive {
        return Check::fail(format!(
            "Q-criterion fails, so the Hessian is not positive definite across \
             the cut interval (sampled min eig {min_lambda:.6e})"
        ));
    }
    if min_lambda <= 0.0 {
        return Check::fail(format!(
            "sampled minimum eigenvalue {min_lambda:.6e} is not positive"
        ));
    }
    Check::pass(format!(
        "identity verified; min sampled eigenvalue {min_lambda:.6e} over {} points",
        samples.len()
    ))
}

/// (vii): numeric determinant against the closed form
/// `2^{-n} (prod x_i^{-1}) (1-r)^{-1} (1 + rho(1-rho) h'')`, relative 1e-8.
fn check_det_form(profile: &ExtremalProfile) -> Check {
    let mut worst = 0.0f64;
    for x in profile_sample_points(profile) {
        let rho: f64 = x[..profile.n - 1].iter().sum();
        let r: f64 = x.iter().sum();
        let h = hessian_from_hpp(&x, profile.hpp_at(rho));
        if h.iter().any(|v| !v.is_finite()) {
            return Check::fail(format!("non-finite Hessian at sample point {x:?}"));
        }
        let numeric = h.determinant();
        let closed = (1.0 + rho * (1.0 - rho) * profile.hpp_at(rho))
            / (2.0f64.powi(profile.n as i32) * x.iter().product::<f64>() * (1.0 - r));
        let rel = (numeric - closed).abs() / closed.abs().max(f64::MIN_POSITIVE);
        if !rel.is_finite() || rel > 1e-8 {
            return Check::fail(format!(
                "determinant mismatch at {x:?}: numeric {numeric:.12e} vs closed {closed:.12e}"
            ));
        }
        worst = worst.max(rel);
    }
    Check::pass(format!("worst relative determinant error {worst:.3e}"))
}

/// Runs all seven regularity hypotheses at `(n, eps)`. Construction failures
/// (vanishing closed-form denominators) propagate as errors; check failures
/// are report states.
pub fn verify_regularity(n: usize, eps: &Rational) -> Result<RegularityReport> {
    let profile = build_profile(n, eps)?;
    Ok(verify_profile(&profile))
}

/// Runs the seven hypotheses against an explicit datum, canonical or not.
pub fn verify_profile(profile: &ExtremalProfile) -> RegularityReport {
    let order3_at_one = check_order3_at_one(profile);
    let q_at_one = check_q_at_one(profile);
    let q_at_eps = check_q_at_eps(profile);
    let residue_one = check_residue_one(profile);
    let q_positive = check_q_positive(profile);
    let hessian_pd = check_hessian_pd(profile, q_positive.pass);
    let det_form = check_det_form(profile);
    let overall = [
        &order3_at_one,
        &q_at_one,
        &q_at_eps,
        &residue_one,
        &q_positive,
        &hessian_pd,
        &det_form,
    ]
    .iter()
    .all(|c| c.pass);
    RegularityReport {
        n: profile.n,
        eps: profile.eps.clone(),
        order3_at_one,
        q_at_one,
        q_at_eps,
        residue_one,
        q_positive,
        hessian_pd,
        det_form,
        overall,
    }
}

/// One scanned cut depth: certified, failed (with the full report), or not
/// constructible at all. The two failure channels stay distinct.
#[derive(Debug, Clone)]
pub enum ScanOutcome {
    Pass(RegularityReport),
    Fail(RegularityReport),
    ConstructionError(String),
}

impl ScanOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, ScanOutcome::Pass(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            ScanOutcome::Pass(_) => "pass",
            ScanOutcome::Fail(_) => "fail",
            ScanOutcome::ConstructionError(_) => "construction-error",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanRecord {
    pub eps: Rational,
    pub outcome: ScanOutcome,
}

/// Result of the cut-depth search: the largest prefix-certified depth, the
/// first non-certified depth, and any non-monotone pattern above it.
#[derive(Debug, Clone)]
pub struct Epsilon0Bracket {
    pub n: usize,
    pub last_pass: Option<Rational>,
    pub first_fail: Option<Rational>,
    /// Depths beyond `first_fail` that nevertheless certify, each with its
    /// full report; pass/fail need not be monotone and is never assumed so.
    pub anomalies: Vec<(Rational, RegularityReport)>,
    /// Every evaluated depth in ascending order.
    pub records: Vec<ScanRecord>,
}

fn scan_one(n: usize, eps: &Rational) -> ScanOutcome {
    match verify_regularity(n, eps) {
        Ok(report) if report.overall => ScanOutcome::Pass(report),
        Ok(report) => ScanOutcome::Fail(report),
        Err(e) => ScanOutcome::ConstructionError(e.to_string()),
    }
}

/// Scans `eps` over `{resolution/2} ∪ {k * resolution}` inside (0, 1) —
/// the half-resolution anchor probes the small-eps regime the construction
/// must certify — then bisects `refine` times between the last certified
/// prefix depth and the first non-certified depth.
pub fn epsilon0_search(n: usize, resolution: &Rational, refine: u32) -> Result<Epsilon0Bracket> {
    if !resolution.is_positive() || *resolution > rat(1, 10) {
        return Err(Error::Domain(format!(
            "resolution must lie in (0, 1/10], got {resolution}"
        )));
    }
    let mut grid = vec![resolution / rat_i(2)];
    let mut k = 1i64;
    loop {
        let eps = resolution * rat_i(k);
        if eps >= rat_i(1) {
            break;
        }
        grid.push(eps);
        k += 1;
    }

    let mut records: Vec<ScanRecord> = grid
        .par_iter()
        .map(|eps| ScanRecord {
            eps: eps.clone(),
            outcome: scan_one(n, eps),
        })
        .collect();
    records.sort_by(|a, b| a.eps.cmp(&b.eps));

    let mut last_pass: Option<Rational> = None;
    let mut first_fail: Option<Rational> = None;
    for rec in &records {
        if rec.outcome.is_pass() && first_fail.is_none() {
            last_pass = Some(rec.eps.clone());
        } else if first_fail.is_none() {
            first_fail = Some(rec.eps.clone());
        }
    }

    // anomalies: certified depths above the first failure
    let mut anomalies = Vec::new();
    if let Some(ff) = &first_fail {
        for rec in &records {
            if rec.eps > *ff {
                if let ScanOutcome::Pass(report) = &rec.outcome {
                    anomalies.push((rec.eps.clone(), report.clone()));
                }
            }
        }
    }

    if let (Some(mut lo), Some(mut hi)) = (last_pass.clone(), first_fail.clone()) {
        for _ in 0..refine {
            let mid = (&lo + &hi) / rat_i(2);
            let outcome = scan_one(n, &mid);
            let pass = outcome.is_pass();
            records.push(ScanRecord {
                eps: mid.clone(),
                outcome,
            });
            if pass {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        last_pass = Some(lo);
        first_fail = Some(hi);
        records.sort_by(|a, b| a.eps.cmp(&b.eps));
    }

    Ok(Epsilon0Bracket {
        n,
        last_pass,
        first_fail,
        anomalies,
        records,
    })
}

//! The explicit extremal-metric datum: four integration constants, the
//! quadratic part `P`, the degree-(n+2) polynomial `Q`, the profile second
//! derivative `h''`, and the ODE solution `A`, all as exact rational data.
//!
//! The construction pins the constants so that the numerator of `h''`
//! vanishes to order three at `rho = 1` (removable singularity at the outer
//! facet) and `Q(eps) = 0` with `Q'(eps) = eps^{n-2}(1-eps)` (simple pole of
//! residue one at the cut facet). Floating point is forbidden here: the
//! downstream regularity certificates need these vanishing conditions to
//! hold exactly, not to machine epsilon.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{rat, rat_i, to_f64, Poly, RatFunc, Rational};

/// The four integration constants of the profile ODE.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalConstants {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

/// The complete extremal-metric datum at a fixed `(n, eps)`.
#[derive(Debug, Clone)]
pub struct ExtremalProfile {
    pub n: usize,
    pub eps: Rational,
    pub constants: ExtremalConstants,
    /// Quadratic part `P(rho)`.
    pub p: Poly,
    /// `Q(rho) = rho^{n-1} - rho^n - rho^n P - alpha - beta rho`.
    pub q: Poly,
    /// `h''` as a reduced rational function; built from numerator
    /// `rho^{n+1} - rho^n + rho^n P + alpha + beta rho` over
    /// `(1-rho) rho Q`.
    pub hpp: RatFunc,
    /// The ODE solution `A = (rho^n P + alpha + beta rho) / ((1-rho) rho^n)`.
    pub a: RatFunc,
}

fn check_domain(n: usize, eps: &Rational) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension must be >= 3, got {n}")));
    }
    if eps.is_negative() || *eps >= Rational::one() {
        return Err(Error::Domain(format!("eps = {eps} outside [0, 1)")));
    }
    Ok(())
}

fn epow(eps: &Rational, k: usize) -> Rational {
    eps.pow(k as i32)
}

/// Solves for the constants in the order delta -> gamma -> beta -> alpha.
///
/// `eps = 0` is allowed and produces the degenerate Fubini-Study datum
/// `(0, 0, 0, -n(n+1))`. Vanishing of either closed-form denominator is
/// reported, not extrapolated.
pub fn compute_constants(n: usize, eps: &Rational) -> Result<ExtremalConstants> {
    check_domain(n, eps)?;
    let ni = n as i64;
    let one = Rational::one();

    // shared denominator -n e^{n+2} + (n+2) e^{n+1} + n - (n+2) e
    let d1 = rat_i(-ni) * epow(eps, n + 2) + rat_i(ni + 2) * epow(eps, n + 1) + rat_i(ni)
        - rat_i(ni + 2) * eps;
    if d1.is_zero() {
        return Err(Error::VanishingDenominator {
            context: "gamma denominator",
            eps: eps.to_string(),
        });
    }
    let u = rat_i(-ni) * epow(eps, n + 1) + rat_i(ni + 1) * epow(eps, n) - &one;
    let w = (epow(eps, n + 1) - &one) / rat_i(ni * (ni + 1))
        + (eps - epow(eps, n)) / rat_i(ni * (ni - 1));
    let v =
        -&one + rat(ni + 1, ni - 1) * eps - epow(eps, n - 1) + rat(ni - 3, ni - 1) * epow(eps, n);

    let bracket = &u * rat_i(ni + 2) / &d1 * &w
        + (rat_i(-(ni - 1)) * epow(eps, n) + rat_i(ni) * epow(eps, n - 1) - &one)
            / rat_i(ni * (ni - 1));
    if bracket.is_zero() {
        return Err(Error::VanishingDenominator {
            context: "delta coefficient bracket",
            eps: eps.to_string(),
        });
    }

    let delta_num = epow(eps, n - 2) * (&one - eps) - &u * rat_i(ni + 2) * &v / &d1
        + rat(ni * (ni - 3), ni - 1) * epow(eps, n - 1)
        - rat_i(ni - 1) * epow(eps, n - 2)
        + rat(ni + 1, ni - 1);
    let delta = delta_num / bracket;
    let gamma = rat_i(ni * (ni + 1) * (ni + 2)) * (&w * &delta + &v) / &d1;
    let beta = rat(ni + 1, ni - 1) + &delta / rat_i(ni * (ni - 1)) + &gamma / rat_i(ni * (ni + 1));
    let alpha = -&one - &delta / rat_i(ni * (ni + 1)) - &gamma / rat_i((ni + 1) * (ni + 2));

    Ok(ExtremalConstants {
        alpha,
        beta,
        gamma,
        delta,
    })
}

/// `P(rho) = -(2n+delta)/(n(n-1)) + (delta-gamma) rho/(n(n+1)) + gamma rho^2/((n+1)(n+2))`.
pub fn build_p(n: usize, c: &ExtremalConstants) -> Poly {
    let ni = n as i64;
    Poly::new(vec![
        -(rat_i(2 * ni) + &c.delta) / rat_i(ni * (ni - 1)),
        (&c.delta - &c.gamma) / rat_i(ni * (ni + 1)),
        &c.gamma / rat_i((ni + 1) * (ni + 2)),
    ])
}

/// `Q(rho) = rho^{n-1} - rho^n - rho^n P(rho) - alpha - beta rho`.
pub fn build_q(n: usize, c: &ExtremalConstants) -> Poly {
    let p = build_p(n, c);
    let base = &Poly::monomial(n - 1) - &Poly::monomial(n);
    let affine = Poly::new(vec![c.alpha.clone(), c.beta.clone()]);
    &(&base - &(&Poly::monomial(n) * &p)) - &affine
}

fn hpp_numerator(n: usize, p: &Poly, c: &ExtremalConstants) -> Poly {
    let base = &Poly::monomial(n + 1) - &Poly::monomial(n);
    let affine = Poly::new(vec![c.alpha.clone(), c.beta.clone()]);
    &(&base + &(&Poly::monomial(n) * p)) + &affine
}

impl ExtremalProfile {
    /// Numerator of `h''` before reduction:
    /// `rho^{n+1} - rho^n + rho^n P + alpha + beta rho`.
    pub fn hpp_numerator_raw(&self) -> Poly {
        hpp_numerator(self.n, &self.p, &self.constants)
    }

    /// Denominator of `h''` before reduction: `(1-rho) rho Q`.
    pub fn hpp_denominator_raw(&self) -> Poly {
        &(&Poly::from_i64(&[1, -1]) * &Poly::monomial(1)) * &self.q
    }

    /// `h''` at a floating-point `rho`, via the reduced rational function.
    pub fn hpp_at(&self, rho: f64) -> f64 {
        self.hpp.eval_f64(rho)
    }
}

/// Assembles the full datum at `(n, eps)`.
pub fn build_profile(n: usize, eps: &Rational) -> Result<ExtremalProfile> {
    let constants = compute_constants(n, eps)?;
    let p = build_p(n, &constants);
    let q = build_q(n, &constants);
    let num = hpp_numerator(n, &p, &constants);
    let den = &(&Poly::from_i64(&[1, -1]) * &Poly::monomial(1)) * &q;
    let hpp = RatFunc::new(num, den);
    let a_num = &(&Poly::monomial(n) * &p)
        + &Poly::new(vec![constants.alpha.clone(), constants.beta.clone()]);
    let a_den = &Poly::from_i64(&[1, -1]) * &Poly::monomial(n);
    let a = RatFunc::new(a_num, a_den);
    Ok(ExtremalProfile {
        n,
        eps: eps.clone(),
        constants,
        p,
        q,
        hpp,
        a,
    })
}

/// Substitutes the stored `A`, `gamma`, `delta` into the second-order ODE
///
/// `rho^2 A'' + 2(n - rho/(1-rho)) rho A' + (n(n-1) - 2n rho/(1-rho)) A
///  + 2n/(1-rho) + gamma rho + delta`
///
/// and returns the residual. Identically zero for every constructed profile;
/// a nonzero residual flags a tampered or inconsistent datum.
pub fn ode_residual(profile: &ExtremalProfile) -> RatFunc {
    let ni = profile.n as i64;
    let a = &profile.a;
    let a1 = a.derivative();
    let a2 = a1.derivative();
    let one_minus = RatFunc::from_poly(Poly::from_i64(&[1, -1]));
    let rho = RatFunc::from_poly(Poly::monomial(1));
    let rho2 = RatFunc::from_poly(Poly::monomial(2));

    // 2 rho (n - rho/(1-rho)) = 2 rho (n - (n+1) rho) / (1-rho)
    let coef1 = &(&rho * &RatFunc::from_poly(Poly::new(vec![rat_i(2 * ni), rat_i(-2 * (ni + 1))])))
        / &one_minus;
    // n(n-1) - 2n rho/(1-rho) = (n(n-1) - n(n+1) rho) / (1-rho)
    let coef0 = &RatFunc::from_poly(Poly::new(vec![rat_i(ni * (ni - 1)), rat_i(-ni * (ni + 1))]))
        / &one_minus;
    let source = &RatFunc::from_poly(Poly::constant(rat_i(2 * ni))) / &one_minus;
    let affine = RatFunc::from_poly(Poly::new(vec![
        profile.constants.delta.clone(),
        profile.constants.gamma.clone(),
    ]));

    let mut res = &rho2 * &a2;
    res = &res + &(&coef1 * &a1);
    res = &res + &(&coef0 * a);
    res = &res + &source;
    &res + &affine
}

/// The affine scalar-curvature target `-gamma rho - delta`.
pub fn scalar_target(profile: &ExtremalProfile, rho: &Rational) -> Rational {
    -&profile.constants.gamma * rho - &profile.constants.delta
}

const GAUSS15: [(f64, f64); 15] = [
    (-0.9879925180204854, 0.030753241996118647),
    (-0.937273392400706, 0.07036604748810807),
    (-0.8482065834104272, 0.10715922046717177),
    (-0.7244177313601701, 0.1395706779261539),
    (-0.5709721726085388, 0.16626920581699378),
    (-0.3941513470775634, 0.18616100001556188),
    (-0.20119409399743451, 0.19843148532711125),
    (0.0, 0.2025782419255609),
    (0.20119409399743451, 0.19843148532711125),
    (0.3941513470775634, 0.18616100001556188),
    (0.5709721726085388, 0.16626920581699378),
    (0.7244177313601701, 0.1395706779261539),
    (0.8482065834104272, 0.10715922046717177),
    (0.937273392400706, 0.07036604748810807),
    (0.9879925180204854, 0.030753241996118647),
];

fn gauss_panels(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * width;
        let half = 0.5 * width;
        let mut acc = 0.0;
        for (node, weight) in GAUSS15 {
            acc += weight * f(mid + half * node);
        }
        total += half * acc;
    }
    total
}

/// `h(rho) = (rho - eps) log(rho - eps) + R(rho)` where `R'' = h'' - 1/(rho-eps)`
/// is smooth across the cut facet and is integrated twice by quadrature.
///
/// Gauge: `h(rho0) = 0` and `h'(rho0) = log(rho0 - eps) + 1` at the polytope
/// midpoint `rho0 = (1+eps)/2`; equivalently `R'(rho0) = 0` and
/// `R(rho0) = -(rho0-eps) log(rho0-eps)`, so the double integral collapses to
/// `R(rho) = R(rho0) + int_{rho0}^{rho} (rho - t) R''(t) dt`.
pub fn evaluate_h(profile: &ExtremalProfile, rho: f64, tol: f64) -> Result<f64> {
    let eps = to_f64(&profile.eps);
    if !(rho > eps && rho < 1.0) {
        return Err(Error::Domain(format!(
            "rho = {rho} outside (eps, 1) = ({eps}, 1)"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tol = {tol} must be positive")));
    }
    let rho0 = 0.5 * (1.0 + eps);
    let gauge = (rho0 - eps) * (rho0 - eps).ln();
    let integrand = |t: f64| (rho - t) * (profile.hpp.eval_f64(t) - 1.0 / (t - eps));
    let mut panels = 1usize;
    let mut prev = gauss_panels(integrand, rho0, rho, panels);
    while panels <= 256 {
        panels *= 2;
        let cur = gauss_panels(integrand, rho0, rho, panels);
        if (cur - prev).abs() < 0.5 * tol && cur.is_finite() {
            return Ok((rho - eps) * (rho - eps).ln() - gauge + cur);
        }
        prev = cur;
    }
    Err(Error::Numeric(format!(
        "profile quadrature did not converge at rho = {rho}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn limit_constants(n: usize) -> ExtremalConstants {
        // the eps -> 0 degenerate datum
        ExtremalConstants {
            alpha: rat_i(0),
            beta: rat_i(0),
            gamma: rat_i(0),
            delta: rat_i(-(n as i64) * (n as i64 + 1)),
        }
    }

    #[test]
    fn constants_at_zero_are_the_fubini_study_limit() {
        for n in 3..=8 {
            let c = compute_constants(n, &rat_i(0)).unwrap();
            assert_eq!(c, limit_constants(n));
        }
    }

    #[test]
    fn delta_exact_at_one_hundredth() {
        // frozen from an independent symbolic computation
        let c = compute_constants(3, &rat(1, 100)).unwrap();
        assert_eq!(c.delta, rat(-123_600, 10_603));
        // the constants approach their limits at rate eps^{n-2}, which at
        // n=3 is eps, not eps^2; pin that rate
        let gap = c.delta + rat_i(12);
        assert_eq!(gap, rat(3_636, 10_603));
        assert!(gap.abs() <= rat_i(40) * rat(1, 100));
    }

    #[test]
    fn constants_match_their_defining_boundary_relations() {
        // alpha and beta exist to kill the numerator at rho = 1 to second
        // order: alpha = 1 + (n-1) P(1) + P'(1) and beta = -alpha - P(1)
        for n in [3usize, 4, 7] {
            for eps in [rat(1, 10), rat(1, 100)] {
                let c = compute_constants(n, &eps).unwrap();
                let p = build_p(n, &c);
                let p1 = p.eval(&rat_i(1));
                let dp1 = p.derivative().eval(&rat_i(1));
                assert_eq!(c.alpha, Rational::one() + rat_i(n as i64 - 1) * &p1 + dp1);
                assert_eq!(c.beta, -&c.alpha - p1);
            }
        }
    }

    #[test]
    fn p_at_limit_constants() {
        let c = limit_constants(3);
        let p = build_p(3, &c);
        assert_eq!(p, Poly::from_i64(&[1, -1]));
        assert_eq!(p.eval(&rat_i(1)), rat_i(0));
    }

    #[test]
    fn p_with_all_zero_constants_is_constant() {
        let c = ExtremalConstants {
            alpha: rat_i(0),
            beta: rat_i(0),
            gamma: rat_i(0),
            delta: rat_i(0),
        };
        for n in 3..=6usize {
            let p = build_p(n, &c);
            assert_eq!(p, Poly::constant(rat(-2, n as i64 - 1)));
        }
    }

    #[test]
    fn q_at_limit_constants_is_boundary_square() {
        for n in 3..=6usize {
            let q = build_q(n, &limit_constants(n));
            let expected = &Poly::monomial(n - 1) * &Poly::from_i64(&[1, -1]).pow(2);
            assert_eq!(q, expected);
        }
    }

    #[test]
    fn q_boundary_conditions() {
        let eps = rat(1, 100);
        for n in [3usize, 4, 5] {
            let profile = build_profile(n, &eps).unwrap();
            let q = &profile.q;
            assert_eq!(q.degree(), Some(n + 2));
            assert_eq!(q.eval(&rat_i(1)), rat_i(0));
            assert_eq!(q.derivative().eval(&rat_i(1)), rat_i(0));
            assert_eq!(q.derivative().derivative().eval(&rat_i(1)), rat_i(2));
            assert_eq!(q.eval(&eps), rat_i(0));
            let expected_slope = epow(&eps, n - 2) * (Rational::one() - &eps);
            assert_eq!(q.derivative().eval(&eps), expected_slope);
        }
    }

    #[test]
    fn taylor_shift_at_eps_exposes_the_boundary_data() {
        let eps = rat(1, 100);
        let profile = build_profile(3, &eps).unwrap();
        let shifted = profile.q.taylor_shift(&eps);
        assert_eq!(shifted.coeff(0), rat_i(0));
        assert_eq!(shifted.coeff(1), rat(1, 100) * rat(99, 100));
    }

    #[test]
    fn degenerate_profile_has_zero_hpp() {
        let profile = build_profile(3, &rat_i(0)).unwrap();
        assert!(profile.hpp.is_zero());
        assert_eq!(profile.a, RatFunc::one());
    }

    #[test]
    fn hpp_numerator_at_eps() {
        // numerator(eps) = eps^{n-1} (1-eps)^2, forced by Q(eps) = 0
        for n in [3usize, 5] {
            let eps = rat(1, 100);
            let profile = build_profile(n, &eps).unwrap();
            let num = profile.hpp_numerator_raw();
            let expected = epow(&eps, n - 1) * (Rational::one() - &eps).pow(2);
            assert_eq!(num.eval(&eps), expected);
        }
    }

    #[test]
    fn residue_at_eps_is_one() {
        for n in [3usize, 4, 5] {
            let eps = rat(1, 100);
            let profile = build_profile(n, &eps).unwrap();
            let num = profile.hpp_numerator_raw();
            let q1 = profile.q.derivative().eval(&eps);
            let residue = num.eval(&eps) / ((Rational::one() - &eps) * &eps * q1);
            assert_eq!(residue, rat_i(1));
        }
    }

    #[test]
    fn numerator_vanishes_to_order_three_at_one() {
        let eps = rat(1, 100);
        for n in 3..=6 {
            let profile = build_profile(n, &eps).unwrap();
            let num = profile.hpp_numerator_raw();
            assert_eq!(num.eval(&rat_i(1)), rat_i(0));
            assert_eq!(num.derivative().eval(&rat_i(1)), rat_i(0));
            assert_eq!(num.derivative().derivative().eval(&rat_i(1)), rat_i(0));
        }
    }

    #[test]
    fn second_derivative_identity_at_one_holds_for_any_constants() {
        // 2n + n(n-1) P(1) + 2n P'(1) + P''(1) = 0 for arbitrary gamma, delta
        for (g, d) in [(3i64, 7i64), (-5, 2), (11, -13)] {
            let c = ExtremalConstants {
                alpha: rat_i(0),
                beta: rat_i(0),
                gamma: rat_i(g),
                delta: rat_i(d),
            };
            for n in 3..=6usize {
                let ni = n as i64;
                let p = build_p(n, &c);
                let value = rat_i(2 * ni)
                    + rat_i(ni * (ni - 1)) * p.eval(&rat_i(1))
                    + rat_i(2 * ni) * p.derivative().eval(&rat_i(1))
                    + p.derivative().derivative().eval(&rat_i(1));
                assert_eq!(value, rat_i(0));
            }
        }
    }

    #[test]
    fn rank_one_update_identity() {
        // 1 + rho(1-rho) h'' = rho^{n-1} (1-rho)^2 / Q as rational functions
        for n in [3usize, 4, 6] {
            for eps in [rat(1, 10), rat(1, 100)] {
                let profile = build_profile(n, &eps).unwrap();
                let lhs = &RatFunc::one()
                    + &(&RatFunc::from_poly(&Poly::monomial(1) * &Poly::from_i64(&[1, -1]))
                        * &profile.hpp);
                let rhs = RatFunc::new(
                    &Poly::monomial(n - 1) * &Poly::from_i64(&[1, -1]).pow(2),
                    profile.q.clone(),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ode_residual_vanishes() {
        for n in 3..=8 {
            for eps in [rat(1, 10), rat(1, 100), rat(1, 1000)] {
                let profile = build_profile(n, &eps).unwrap();
                assert!(
                    ode_residual(&profile).is_zero(),
                    "nonzero residual at n={n}, eps={eps}"
                );
            }
        }
    }

    #[test]
    fn tampered_delta_is_detected_by_the_residual() {
        let mut profile = build_profile(3, &rat(1, 100)).unwrap();
        profile.constants.delta += rat_i(1);
        let res = ode_residual(&profile);
        assert_eq!(res, RatFunc::one());
    }

    #[test]
    fn alpha_shift_stays_in_the_ode_kernel_but_breaks_regularity() {
        // rho^{-n}/(1-rho) solves the homogeneous equation, so rebuilding the
        // datum with alpha+1 still satisfies the ODE; what breaks instead is
        // the order-three vanishing at rho = 1.
        let eps = rat(1, 100);
        let base = build_profile(3, &eps).unwrap();
        let mut constants = base.constants.clone();
        constants.alpha += rat_i(1);
        let p = build_p(3, &constants);
        let q = build_q(3, &constants);
        let a_num = &(&Poly::monomial(3) * &p)
            + &Poly::new(vec![constants.alpha.clone(), constants.beta.clone()]);
        let a_den = &Poly::from_i64(&[1, -1]) * &Poly::monomial(3);
        let shifted = ExtremalProfile {
            n: 3,
            eps: eps.clone(),
            constants,
            p,
            q,
            hpp: base.hpp.clone(),
            a: RatFunc::new(a_num, a_den),
        };
        assert!(ode_residual(&shifted).is_zero());
        let num = shifted.hpp_numerator_raw();
        assert_ne!(num.eval(&rat_i(1)), rat_i(0));
    }

    #[test]
    fn scalar_target_values() {
        let degenerate = build_profile(3, &rat_i(0)).unwrap();
        for k in 0..=4 {
            assert_eq!(scalar_target(&degenerate, &rat(k, 4)), rat_i(12));
        }
        let profile = build_profile(3, &rat(1, 100)).unwrap();
        let eps = rat(1, 100);
        let diff = scalar_target(&profile, &eps) - scalar_target(&profile, &rat_i(1));
        assert_eq!(diff, &profile.constants.gamma * (Rational::one() - &eps));
    }

    #[test]
    fn evaluate_h_gauge_and_self_consistency() {
        let profile = build_profile(3, &rat(1, 100)).unwrap();
        let tol = 1e-6;
        let rho0 = 0.5 * (1.0 + 0.01);
        assert!(evaluate_h(&profile, rho0, tol).unwrap().abs() < tol);
        // second central difference reproduces h'' within 10*tol
        let step = 1e-4;
        for rho in [0.2, 0.35, 0.5, 0.65, 0.8] {
            let hm = evaluate_h(&profile, rho - step, tol).unwrap();
            let h0 = evaluate_h(&profile, rho, tol).unwrap();
            let hp = evaluate_h(&profile, rho + step, tol).unwrap();
            let second = (hp - 2.0 * h0 + hm) / (step * step);
            assert!(
                (second - profile.hpp_at(rho)).abs() < 10.0 * tol,
                "self-consistency failed at rho={rho}"
            );
        }
    }

    #[test]
    fn evaluate_h_degenerate_profile_is_affine() {
        let profile = build_profile(3, &rat_i(0)).unwrap();
        let tol = 1e-9;
        assert!(evaluate_h(&profile, 0.5, tol).unwrap().abs() < tol);
        let step = 1e-3;
        for rho in [0.3, 0.5, 0.7] {
            let hm = evaluate_h(&profile, rho - step, tol).unwrap();
            let h0 = evaluate_h(&profile, rho, tol).unwrap();
            let hp = evaluate_h(&profile, rho + step, tol).unwrap();
            assert!(((hp - 2.0 * h0 + hm) / (step * step)).abs() < 1e-5);
        }
    }

    #[test]
    fn evaluate_h_near_cut_extends_continuously() {
        // h(rho) - (rho - eps) log(rho - eps) stays bounded as rho -> eps
        let profile = build_profile(3, &rat(1, 100)).unwrap();
        let eps = 0.01;
        let tol = 1e-8;
        let mut values = vec![];
        for rho in [eps + 1e-2, eps + 1e-3, eps + 1e-4] {
            let h = evaluate_h(&profile, rho, tol).unwrap();
            values.push(h - (rho - eps) * (rho - eps).ln());
        }
        let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - values.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread < 0.2, "smooth part drifted: {values:?}");
    }

    #[test]
    fn evaluate_h_domain_errors() {
        let profile = build_profile(3, &rat(1, 100)).unwrap();
        assert!(matches!(
            evaluate_h(&profile, 0.005, 1e-8),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            evaluate_h(&profile, 1.0, 1e-8),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            evaluate_h(&profile, 0.5, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn closed_form_denominators_never_vanish_on_the_open_interval() {
        // certifies that the constructibility guard is vacuous for n <= 10:
        // both closed-form denominators are root-free on (0,1)
        use crate::exactmath::{certify_sign, IntervalSign};
        for n in 3..=10usize {
            let ni = n as i64;
            let d1 = Poly::new({
                let mut c = vec![Rational::zero(); n + 3];
                c[0] = rat_i(ni);
                c[1] = rat_i(-(ni + 2));
                c[n + 1] = rat_i(ni + 2);
                c[n + 2] = rat_i(-ni);
                c
            });
            assert_eq!(
                certify_sign(&d1, &rat_i(0), &rat_i(1)),
                IntervalSign::StrictlyPositive,
                "gamma denominator vanishes inside (0,1) at n={n}"
            );
            // bracket numerator: u(n+2) w n(n-1) - F_n d1, a polynomial in eps
            let u = Poly::new({
                let mut c = vec![Rational::zero(); n + 2];
                c[0] = rat_i(-1);
                c[n] = rat_i(ni + 1);
                c[n + 1] = rat_i(-ni);
                c
            });
            let w_num = {
                // n(n-1)(e^{n+1}-1) + n(n+1)(e - e^n), so that w = w_num / (n^2(n+1)(n-1))
                let mut c = vec![Rational::zero(); n + 2];
                c[0] = rat_i(-ni * (ni - 1));
                c[1] = rat_i(ni * (ni + 1));
                c[n] = rat_i(-ni * (ni + 1));
                c[n + 1] = rat_i(ni * (ni - 1));
                Poly::new(c)
            };
            let fn_neg = -&crate::stability::f_poly(n);
            // bracket * (n^2 (n+1)(n-1) d1) = u (n+2) w_num - n(n+1) F_n d1
            let bracket_num = &(&u * &w_num).scale(&rat_i(ni + 2))
                + &(&fn_neg * &d1).scale(&rat_i(ni * (ni + 1)));
            assert_eq!(
                certify_sign(&bracket_num, &rat_i(0), &rat_i(1)),
                IntervalSign::StrictlyNegative,
                "delta bracket vanishes inside (0,1) at n={n}"
            );
        }
    }

    #[test]
    fn domain_checks() {
        assert!(matches!(
            compute_constants(2, &rat(1, 10)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            compute_constants(3, &rat_i(1)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            compute_constants(3, &rat(-1, 10)),
            Err(Error::Domain(_))
        ));
    }
}

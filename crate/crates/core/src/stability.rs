//! Slope, quotient slope, and a machine certificate that every polarization
//! on the blowup is slope unstable.
//!
//! The slope of the polarization `L = x - eps*y` is `(n/2) Num1/Den1` and the
//! quotient slope of the exceptional divisor at its Seshadri constant is
//! `(n/2) Num2/Den2`, with closed forms recorded below. Instability is the
//! strict positivity of `(1-eps)(Num2 Den1 - Num1 Den2)` on (0, 1), which the
//! certificate proves by a single Sturm sign certification of a polynomial in
//! `eps`, after exactly matching that polynomial against its factored form in
//! the family `F_m = 1 - m eps^{m-1} + (m-1) eps^m`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{certify_sign, rat, rat_i, IntervalSign, Poly, Rational};
use crate::intersection::{seshadri_of_exceptional, BlowupRing, DivisorClass};

/// Everything a per-polarization row needs: both slopes, their gap, and the
/// Seshadri constant. `margin < 0` is the unstable case.
#[derive(Debug, Clone)]
pub struct SlopeReport {
    pub n: usize,
    pub eps: Rational,
    pub mu: Rational,
    pub mu_seshadri: Rational,
    /// `mu_seshadri - mu`; negative exactly when the polarization is slope
    /// unstable with respect to the exceptional divisor.
    pub margin: Rational,
    pub seshadri: Rational,
}

/// Machine proof object for slope instability at a fixed dimension.
#[derive(Debug, Clone)]
pub struct InstabilityCertificate {
    pub n: usize,
    /// `(1-eps)^2 (Num2 Den1 - Num1 Den2)` as a polynomial in `eps`.
    pub margin_numerator: Poly,
    /// Sturm sign certification of that polynomial on (0, 1).
    pub sign: IntervalSign,
    /// Exact polynomial equality against `(1-eps)` times the factored form.
    pub factored_form_checked: bool,
}

impl InstabilityCertificate {
    pub fn is_valid(&self) -> bool {
        self.factored_form_checked && self.sign == IntervalSign::StrictlyPositive
    }
}

fn check_domain(n: usize, eps: &Rational) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension must be >= 3, got {n}")));
    }
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::Domain(format!("eps = {eps} outside (0, 1)")));
    }
    Ok(())
}

fn epow(eps: &Rational, k: usize) -> Rational {
    eps.pow(k as i32)
}

/// `F_m = 1 - m eps^{m-1} + (m-1) eps^m`, defined for `m >= 2`.
pub fn f_m(m: usize, eps: &Rational) -> Result<Rational> {
    if m < 2 {
        return Err(Error::Domain(format!("F_m needs m >= 2, got {m}")));
    }
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::Domain(format!("eps = {eps} outside (0, 1)")));
    }
    Ok(Rational::one() - rat_i(m as i64) * epow(eps, m - 1) + rat_i(m as i64 - 1) * epow(eps, m))
}

/// `F_m` as a polynomial in `eps`.
pub fn f_poly(m: usize) -> Poly {
    assert!(m >= 2);
    &(&Poly::one() - &Poly::term(rat_i(m as i64), m - 1)) + &Poly::term(rat_i(m as i64 - 1), m)
}

/// Slope numerator `(n+1)(1 - eps^{n-1}) - (n-1)(n-2) eps^{n-2} (1-eps)`.
pub fn num1_poly(n: usize) -> Poly {
    let n = n as i64;
    let one_minus = Poly::from_i64(&[1, -1]);
    let a = &Poly::constant(rat_i(n + 1)) * &(&Poly::one() - &Poly::monomial(n as usize - 1));
    let b = &Poly::term(rat_i((n - 1) * (n - 2)), n as usize - 2) * &one_minus;
    &a - &b
}

/// Slope denominator `1 - n eps^{n-1} + (n-1) eps^n`; equals `F_n`.
pub fn den1_poly(n: usize) -> Poly {
    f_poly(n)
}

/// `(1-eps) * Num2`, expanded termwise from the displayed closed form so it
/// stays an independent route from the `F_m` identities.
pub fn scaled_num2_poly(n: usize) -> Poly {
    let ni = n as i64;
    let one_minus = Poly::from_i64(&[1, -1]);
    let t1 = &Poly::term(rat_i(ni - 1), n - 2) * &one_minus.pow(2);
    let t2 = &Poly::constant(rat_i(ni - 1)) * &(&Poly::one() - &Poly::monomial(n - 1));
    let t3 = &Poly::term(rat_i((ni - 1) * (ni - 1)), n - 2) * &one_minus;
    let t4 = &Poly::constant(rat_i(ni - 3)) * &(&Poly::one() - &Poly::monomial(n));
    let t5 = &Poly::term(rat_i(ni * (ni - 3)), n - 1) * &one_minus;
    &(&(&(&t1 - &t2) + &t3) + &t4) - &t5
}

/// `(1-eps) * Den2`, expanded termwise from the displayed closed form.
pub fn scaled_den2_poly(n: usize) -> Poly {
    let ni = n as i64;
    let one_minus = Poly::from_i64(&[1, -1]);
    let t1 = &Poly::one() - &Poly::monomial(n);
    let t2 = &Poly::term(rat_i(ni), n - 1) * &one_minus;
    let t3 = (&Poly::one() - &Poly::monomial(n + 1)).scale(&rat(ni - 1, ni + 1));
    let t4 = &Poly::term(rat_i(ni - 1), n) * &one_minus;
    &(&(&(-&t1) + &t2) + &t3) - &t4
}

/// `(1-eps)^2 (Num2 Den1 - Num1 Den2)` as a polynomial in `eps`.
pub fn margin_numerator_poly(n: usize) -> Poly {
    let one_minus = Poly::from_i64(&[1, -1]);
    let lhs = &(&one_minus * &scaled_num2_poly(n)) * &den1_poly(n);
    let rhs = &(&num1_poly(n) * &one_minus) * &scaled_den2_poly(n);
    &lhs - &rhs
}

/// `(1-eps)` times the factored form
/// `(n-1) eps^{n-2} (1-eps) [ n(1-eps)^2 F_n + ((n+1)eps - (n-2))(F_n - (n-1)/(n+1) F_{n+1}) ]`.
pub fn factored_margin_numerator_poly(n: usize) -> Poly {
    let ni = n as i64;
    let one_minus = Poly::from_i64(&[1, -1]);
    let fn_ = f_poly(n);
    let fn1 = f_poly(n + 1);
    let inner_a = &(&Poly::constant(rat_i(ni)) * &one_minus.pow(2)) * &fn_;
    let lin = Poly::new(vec![rat_i(-(ni - 2)), rat_i(ni + 1)]);
    let inner_b = &lin * &(&fn_ - &fn1.scale(&rat(ni - 1, ni + 1)));
    let bracket = &inner_a + &inner_b;
    let prefix = &Poly::term(rat_i(ni - 1), n - 2) * &one_minus.pow(2);
    &prefix * &bracket
}

/// Slope `mu = (n/2) Num1/Den1` via the closed forms.
pub fn slope(n: usize, eps: &Rational) -> Result<Rational> {
    check_domain(n, eps)?;
    let num1 = num1_poly(n).eval(eps);
    let den1 = den1_poly(n).eval(eps);
    Ok(rat(n as i64, 2) * num1 / den1)
}

/// Slope computed independently through the intersection ring:
/// `-n (K . L^{n-1}) / (2 L^n)`.
pub fn slope_via_ring(n: usize, eps: &Rational) -> Result<Rational> {
    check_domain(n, eps)?;
    let ring = BlowupRing::new(n)?;
    let l = DivisorClass::polarization(eps);
    let mut kl = vec![ring.canonical_class()];
    kl.extend(std::iter::repeat_n(l.clone(), n - 1));
    let top = ring.intersect(&kl)?;
    let vol = ring.intersect(&vec![l; n])?;
    Ok(rat_i(-(n as i64)) * top / (rat_i(2) * vol))
}

/// Quotient slope of the exceptional divisor at parameter `c`, evaluated
/// through the intersection ring. Requires `0 < c <= 1 - eps` (the Seshadri
/// constant).
pub fn quotient_slope(n: usize, eps: &Rational, c: &Rational) -> Result<Rational> {
    check_domain(n, eps)?;
    let sesh = seshadri_of_exceptional(eps)?;
    if !c.is_positive() || *c > sesh {
        return Err(Error::Domain(format!(
            "c = {c} outside (0, {sesh}] (Seshadri bound)"
        )));
    }
    let ring = BlowupRing::new(n)?;
    let l = DivisorClass::polarization(eps);
    let e = DivisorClass::exceptional();
    let k = ring.canonical_class();
    let k_plus_e = DivisorClass::new(k.a.clone(), &k.b + Rational::one());

    let product =
        |l_count: usize, e_count: usize, extra: Option<&DivisorClass>| -> Result<Rational> {
            let mut classes = Vec::with_capacity(n);
            classes.extend(std::iter::repeat_n(l.clone(), l_count));
            classes.extend(std::iter::repeat_n(e.clone(), e_count));
            if let Some(d) = extra {
                classes.push(d.clone());
            }
            ring.intersect(&classes)
        };

    let lead = product(n - 1, 1, None)?;
    let mut num_sum = Rational::zero();
    for j in 1..n {
        let coeff = binomial(n - 1, j) * (-c).pow(j as i32) / rat_i(j as i64 + 1);
        num_sum += coeff * product(n - 1 - j, j, Some(&k_plus_e))?;
    }
    let mut den_sum = Rational::zero();
    for j in 1..=n {
        let coeff = binomial(n, j) * (-c).pow(j as i32) / rat_i(j as i64 + 1);
        den_sum += coeff * product(n - j, j, None)?;
    }
    if den_sum.is_zero() {
        return Err(Error::Numeric(format!(
            "quotient slope denominator vanished at c = {c}"
        )));
    }
    Ok(rat_i(n as i64) * (lead - num_sum) / (rat_i(2) * den_sum))
}

/// Quotient slope at the Seshadri constant via the displayed closed forms
/// for `Num2` and `Den2`.
pub fn quotient_slope_at_seshadri(n: usize, eps: &Rational) -> Result<Rational> {
    check_domain(n, eps)?;
    let (num2, den2) = num2_den2(n, eps);
    Ok(rat(n as i64, 2) * num2 / den2)
}

/// `(Num2, Den2)` evaluated exactly; the terms keep the displayed `1/(1-eps)`
/// divisions rather than going through the scaled polynomials.
pub fn num2_den2(n: usize, eps: &Rational) -> (Rational, Rational) {
    let ni = n as i64;
    let one = Rational::one();
    let omx = &one - eps;
    let den2 = -(&one - epow(eps, n)) / &omx
        + rat_i(ni) * epow(eps, n - 1)
        + rat(ni - 1, ni + 1) * (&one - epow(eps, n + 1)) / &omx
        - rat_i(ni - 1) * epow(eps, n);
    let num2 = rat_i(ni - 1) * epow(eps, n - 2) * &omx
        - rat_i(ni - 1) * (&one - epow(eps, n - 1)) / &omx
        + rat_i((ni - 1) * (ni - 1)) * epow(eps, n - 2)
        + rat_i(ni - 3) * (&one - epow(eps, n)) / &omx
        - rat_i(ni * (ni - 3)) * epow(eps, n - 1);
    (num2, den2)
}

/// The instability margin `(1-eps)(Num2 Den1 - Num1 Den2)`, computed both as
/// the raw product of the closed forms and through the factored `F_m` form.
/// The two routes must agree exactly.
pub fn instability_margin(n: usize, eps: &Rational) -> Result<Rational> {
    check_domain(n, eps)?;
    let (num2, den2) = num2_den2(n, eps);
    let num1 = num1_poly(n).eval(eps);
    let den1 = den1_poly(n).eval(eps);
    let raw = (Rational::one() - eps) * (num2 * den1 - num1 * den2);

    let ni = n as i64;
    let omx = Rational::one() - eps;
    let fn_ = f_m(n, eps)?;
    let fn1 = f_m(n + 1, eps)?;
    let bracket = rat_i(ni) * omx.pow(2) * &fn_
        + (rat_i(ni + 1) * eps - rat_i(ni - 2)) * (&fn_ - rat(ni - 1, ni + 1) * fn1);
    let factored = rat_i(ni - 1) * epow(eps, n - 2) * omx * bracket;

    if raw != factored {
        return Err(Error::IdentityViolation(format!(
            "margin routes disagree at n={n}, eps={eps}: raw {raw} vs factored {factored}"
        )));
    }
    Ok(raw)
}

/// One row of the slope table.
pub fn slope_report(n: usize, eps: &Rational) -> Result<SlopeReport> {
    let mu = slope(n, eps)?;
    let mu_seshadri = quotient_slope_at_seshadri(n, eps)?;
    let seshadri = seshadri_of_exceptional(eps)?;
    let margin = &mu_seshadri - &mu;
    Ok(SlopeReport {
        n,
        eps: eps.clone(),
        mu,
        mu_seshadri,
        margin,
        seshadri,
    })
}

/// Validates an explicit margin-numerator polynomial: exact equality against
/// the factored form, then a Sturm sign certification on (0, 1).
pub fn certify_margin_polynomial(n: usize, margin_numerator: Poly) -> InstabilityCertificate {
    let factored_form_checked = margin_numerator == factored_margin_numerator_poly(n);
    let sign = certify_sign(&margin_numerator, &rat_i(0), &rat_i(1));
    InstabilityCertificate {
        n,
        margin_numerator,
        sign,
        factored_form_checked,
    }
}

/// Machine proof of slope instability at dimension `n`: builds the margin
/// numerator polynomial and certifies it strictly positive on (0, 1) with a
/// single global Sturm check; no case split in `eps` is needed.
pub fn certify_slope_instability(n: usize) -> Result<InstabilityCertificate> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension must be >= 3, got {n}")));
    }
    Ok(certify_margin_polynomial(n, margin_numerator_poly(n)))
}

/// Exact binomial coefficient as a rational.
pub fn binomial(n: usize, k: usize) -> Rational {
    Rational::from_integer(num_integer::binomial(
        num_bigint::BigInt::from(n),
        num_bigint::BigInt::from(k),
    ))
}

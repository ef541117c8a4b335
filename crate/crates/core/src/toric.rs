//! The moment-polytope model: the simplex with one edge cut at depth `eps`,
//! canonical boundary potentials, closed-form Hessians and inverse Hessians
//! of the symplectic potential, and finite-difference evaluation of the
//! scalar-curvature formula `S = -1/2 sum d^2 s^{ij} / dx_i dx_j`.
//!
//! Momentum coordinates only; angle coordinates never enter any formula.

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{rat_i, to_f64, Poly, RatFunc, Rational};
use crate::extremal::ExtremalProfile;

/// A facet `l(x) = <x, normal> - offset >= 0` with a primitive integer
/// inward normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: Rational,
}

impl Facet {
    pub fn value(&self, x: &[f64]) -> f64 {
        let dot: f64 = self
            .normal
            .iter()
            .zip(x)
            .map(|(nu, xi)| *nu as f64 * xi)
            .sum();
        dot - to_f64(&self.offset)
    }
}

/// A polytope given by facet inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    facets: Vec<Facet>,
}

impl Polytope {
    /// Panics if any normal is zero or non-primitive.
    pub fn new(facets: Vec<Facet>) -> Self {
        for f in &facets {
            let g = f
                .normal
                .iter()
                .fold(0i64, |acc, v| num_integer::gcd(acc, v.abs()));
            assert!(g == 1, "facet normal {:?} is not primitive", f.normal);
        }
        Polytope { facets }
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// All facet values at least `margin`.
    pub fn is_interior(&self, x: &[f64], margin: f64) -> bool {
        self.facets.iter().all(|f| f.value(x) >= margin)
    }
}

/// The moment polytope at cut depth `eps`: the standard simplex for
/// `eps = 0` (n+1 facets), and for `eps > 0` additionally the cut facet
/// `x_1 + ... + x_{n-1} >= eps` (n+2 facets).
pub fn polytope_for(n: usize, eps: &Rational) -> Result<Polytope> {
    if n < 3 {
        return Err(Error::Domain(format!("dimension must be >= 3, got {n}")));
    }
    if eps.is_negative() || *eps >= Rational::one() {
        return Err(Error::Domain(format!("eps = {eps} outside [0, 1)")));
    }
    let mut facets = Vec::with_capacity(n + 2);
    for i in 0..n {
        let mut normal = vec![0i64; n];
        normal[i] = 1;
        facets.push(Facet {
            normal,
            offset: Rational::zero(),
        });
    }
    facets.push(Facet {
        normal: vec![-1; n],
        offset: rat_i(-1),
    });
    if eps.is_positive() {
        let mut normal = vec![1i64; n];
        normal[n - 1] = 0;
        facets.push(Facet {
            normal,
            offset: eps.clone(),
        });
    }
    Ok(Polytope::new(facets))
}

/// A point in momentum coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentPoint {
    pub x: Vec<f64>,
}

impl MomentPoint {
    pub fn new(x: Vec<f64>) -> Self {
        MomentPoint { x }
    }

    /// `r = x_1 + ... + x_n`.
    pub fn r(&self) -> f64 {
        self.x.iter().sum()
    }

    /// `rho = x_1 + ... + x_{n-1}`.
    pub fn rho(&self) -> f64 {
        self.x[..self.x.len() - 1].iter().sum()
    }
}

/// The symplectic-potential model: either the canonical simplex potential
/// alone, or the simplex potential plus the extremal profile `h(rho)`.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum PotentialModel {
    /// `h == 0` on the standard simplex (any dimension >= 1; `n = 1` is the
    /// interval used to pin the curvature convention).
    Guillemin { n: usize },
    /// The cut polytope carrying an extremal profile.
    Extremal(ExtremalProfile),
}

impl PotentialModel {
    pub fn n(&self) -> usize {
        match self {
            PotentialModel::Guillemin { n } => *n,
            PotentialModel::Extremal(p) => p.n,
        }
    }

    pub fn eps(&self) -> Rational {
        match self {
            PotentialModel::Guillemin { .. } => Rational::zero(),
            PotentialModel::Extremal(p) => p.eps.clone(),
        }
    }

    /// `h''(rho)`; identically zero for the plain simplex model.
    pub fn hpp_at(&self, rho: f64) -> f64 {
        match self {
            PotentialModel::Guillemin { .. } => 0.0,
            PotentialModel::Extremal(p) => p.hpp_at(rho),
        }
    }

    /// The ODE solution `A(rho)` as a rational function; the constant one
    /// for the plain simplex (`h'' = 0`).
    pub fn a_ratfunc(&self) -> RatFunc {
        match self {
            PotentialModel::Guillemin { .. } => RatFunc::one(),
            PotentialModel::Extremal(p) => p.a.clone(),
        }
    }

    pub fn profile(&self) -> Option<&ExtremalProfile> {
        match self {
            PotentialModel::Guillemin { .. } => None,
            PotentialModel::Extremal(p) => Some(p),
        }
    }

    fn check_interior(&self, x: &[f64]) -> Result<()> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::Domain(format!(
                "point has {} coordinates, model has {n}",
                x.len()
            )));
        }
        let r: f64 = x.iter().sum();
        let rho: f64 = x[..n - 1].iter().sum();
        let eps = to_f64(&self.eps());
        if x.iter().any(|&v| v <= 0.0) || r >= 1.0 || (eps > 0.0 && rho <= eps) {
            return Err(Error::Domain(format!("point {x:?} is not interior")));
        }
        Ok(())
    }
}

/// The canonical boundary potential `1/2 sum_i l_i(x) log l_i(x)`.
pub fn guillemin_potential(polytope: &Polytope, point: &MomentPoint) -> Result<f64> {
    let mut total = 0.0;
    for facet in polytope.facets() {
        let l = facet.value(&point.x);
        if l <= 0.0 {
            return Err(Error::Domain(format!(
                "point {:?} is not strictly interior (facet value {l})",
                point.x
            )));
        }
        total += l * l.ln();
    }
    Ok(0.5 * total)
}

/// The full symplectic potential
/// `1/2 (sum x_i log x_i + (1-r) log(1-r) + h(rho))`, with `h` integrated
/// numerically to absolute tolerance `tol` for the extremal model.
pub fn symplectic_potential(model: &PotentialModel, point: &MomentPoint, tol: f64) -> Result<f64> {
    model.check_interior(&point.x)?;
    let r = point.r();
    let mut total: f64 = point.x.iter().map(|&v| v * v.ln()).sum();
    total += (1.0 - r) * (1.0 - r).ln();
    if let PotentialModel::Extremal(profile) = model {
        total += crate::extremal::evaluate_h(profile, point.rho(), tol)?;
    }
    Ok(0.5 * total)
}

/// Hessian of the symplectic potential assembled from a raw `h''` value:
/// `1/2 (delta_ij / x_i + 1/(1-r)) + (hpp/2)` on the leading
/// `(n-1) x (n-1)` block.
pub fn hessian_from_hpp(x: &[f64], hpp: f64) -> DMatrix<f64> {
    let n = x.len();
    let r: f64 = x.iter().sum();
    let c = 1.0 / (1.0 - r);
    DMatrix::from_fn(n, n, |i, j| {
        let mut v = 0.5 * c;
        if i == j {
            v += 0.5 / x[i];
        }
        if i < n - 1 && j < n - 1 {
            v += 0.5 * hpp;
        }
        v
    })
}

/// Closed-form Hessian of the model's symplectic potential.
pub fn hessian(model: &PotentialModel, point: &MomentPoint) -> Result<DMatrix<f64>> {
    model.check_interior(&point.x)?;
    Ok(hessian_from_hpp(&point.x, model.hpp_at(point.rho())))
}

/// Closed-form inverse Hessian. With `A = (1 + (1-rho) h'') / (1 + rho(1-rho) h'')`:
///
/// * `2 (x_i delta_ij - x_i x_j A)` for `i, j < n`,
/// * `-2 x_i x_n (1 - rho A) / (1 - rho)` for `i < n, j = n`,
/// * `(2 x_n / (1-rho)) (1 - rho - x_n + x_n rho (1 - rho A)/(1 - rho))` for `i = j = n`.
pub fn inverse_hessian(model: &PotentialModel, point: &MomentPoint) -> Result<DMatrix<f64>> {
    model.check_interior(&point.x)?;
    let rho = point.rho();
    let hpp = model.hpp_at(rho);
    inverse_hessian_from_hpp(&point.x, rho, hpp)
}

fn inverse_hessian_from_hpp(x: &[f64], rho: f64, hpp: f64) -> Result<DMatrix<f64>> {
    let n = x.len();
    let denom = 1.0 + rho * (1.0 - rho) * hpp;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::Numeric(format!(
            "inverse Hessian singular: 1 + rho(1-rho) h'' = {denom} at rho = {rho}"
        )));
    }
    let a = (1.0 + (1.0 - rho) * hpp) / denom;
    // (1 - rho A)/(1 - rho) collapses to 1/(1 + rho(1-rho)h'')
    let s = (1.0 - rho * a) / (1.0 - rho);
    Ok(DMatrix::from_fn(n, n, |i, j| {
        if i < n - 1 && j < n - 1 {
            2.0 * (if i == j { x[i] } else { 0.0 } - x[i] * x[j] * a)
        } else if i == n - 1 && j == n - 1 {
            2.0 * x[n - 1] / (1.0 - rho) * (1.0 - rho - x[n - 1] + x[n - 1] * rho * s)
        } else {
            let xi = x[i.min(j)];
            -2.0 * xi * x[n - 1] * s
        }
    }))
}

/// Scalar curvature by central second differences of the closed-form
/// inverse-Hessian entries: `-1/2 sum_{i,j} d^2 s^{ij} / dx_i dx_j`.
///
/// The stencil must stay interior: every facet value of the model's
/// polytope must exceed `2 * step` at the base point.
pub fn abreu_scalar_fd(model: &PotentialModel, point: &MomentPoint, step: f64) -> Result<f64> {
    model.check_interior(&point.x)?;
    if step.is_nan() || step <= 0.0 {
        return Err(Error::Domain(format!("step = {step} must be positive")));
    }
    let n = model.n();
    let eps = to_f64(&model.eps());
    let r = point.r();
    let rho = point.rho();
    let clearance = point
        .x
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        .min(1.0 - r)
        .min(if eps > 0.0 { rho - eps } else { f64::INFINITY });
    if clearance <= 2.0 * step {
        return Err(Error::Domain(format!(
            "stencil leaves the interior: clearance {clearance} <= 2*step"
        )));
    }

    let entry = |x: &[f64], i: usize, j: usize| -> Result<f64> {
        let rho: f64 = x[..n - 1].iter().sum();
        let m = inverse_hessian_from_hpp(x, rho, model.hpp_at(rho))?;
        Ok(m[(i, j)])
    };

    let mut total = 0.0;
    for i in 0..n {
        let mut xp = point.x.clone();
        let mut xm = point.x.clone();
        xp[i] += step;
        xm[i] -= step;
        total +=
            (entry(&xp, i, i)? - 2.0 * entry(&point.x, i, i)? + entry(&xm, i, i)?) / (step * step);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut xpp = point.x.clone();
            let mut xpm = point.x.clone();
            let mut xmp = point.x.clone();
            let mut xmm = point.x.clone();
            xpp[i] += step;
            xpp[j] += step;
            xpm[i] += step;
            xpm[j] -= step;
            xmp[i] -= step;
            xmp[j] += step;
            xmm[i] -= step;
            xmm[j] -= step;
            let mixed = (entry(&xpp, i, j)? - entry(&xpm, i, j)? - entry(&xmp, i, j)?
                + entry(&xmm, i, j)?)
                / (4.0 * step * step);
            total += 2.0 * mixed; // symmetric entry appears at (i,j) and (j,i)
        }
    }
    Ok(-0.5 * total)
}

/// Exact scalar curvature along the profile direction, by rational-function
/// calculus on `A`:
/// `rho^2 A'' + 2 (n - rho/(1-rho)) rho A' + (n(n-1) - 2n rho/(1-rho)) A + 2n/(1-rho)`.
pub fn closed_form_scalar(model: &PotentialModel, rho: &Rational) -> Result<Rational> {
    let eps = model.eps();
    if *rho <= eps || *rho >= Rational::one() {
        return Err(Error::Domain(format!("rho = {rho} outside ({eps}, 1)")));
    }
    let ni = model.n() as i64;
    let a = model.a_ratfunc();
    let a1 = a.derivative();
    let a2 = a1.derivative();
    let one_minus = RatFunc::from_poly(Poly::from_i64(&[1, -1]));
    let rho2 = RatFunc::from_poly(Poly::monomial(2));
    let coef1 = &(&RatFunc::from_poly(Poly::new(vec![rat_i(2 * ni), rat_i(-2 * (ni + 1))]))
        * &RatFunc::from_poly(Poly::monomial(1)))
        / &one_minus;
    let coef0 = &RatFunc::from_poly(Poly::new(vec![rat_i(ni * (ni - 1)), rat_i(-ni * (ni + 1))]))
        / &one_minus;
    let source = &RatFunc::from_poly(Poly::constant(rat_i(2 * ni))) / &one_minus;
    let mut expr = &rho2 * &a2;
    expr = &expr + &(&coef1 * &a1);
    expr = &expr + &(&coef0 * &a);
    expr = &expr + &source;
    expr.eval(rho)
        .ok_or_else(|| Error::Numeric(format!("scalar curvature singular at rho = {rho}")))
}

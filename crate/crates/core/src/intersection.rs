//! The rank-two intersection ring of the blowup of projective n-space along
//! a line, in the basis `x` (hyperplane pullback) and `y` (exceptional
//! divisor class).
//!
//! Products of n divisor classes reduce by four rules: `x^n = 1`,
//! `x y^{n-1} = (-1)^{n-2}`, `y^n = (-1)^{n-2} (n-1)`, and all mixed
//! monomials `x^j y^{n-j}` with `2 <= j <= n-1` vanish.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{rat_i, Rational};

/// Ring parameters; `n >= 3` keeps the blowup nontrivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlowupRing {
    n: usize,
}

/// An element `a*x + b*y` of the rational Picard group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub a: Rational,
    pub b: Rational,
}

impl DivisorClass {
    pub fn new(a: Rational, b: Rational) -> Self {
        DivisorClass { a, b }
    }

    /// `x`, the pullback of the hyperplane class.
    pub fn hyperplane() -> Self {
        DivisorClass::new(Rational::one(), Rational::zero())
    }

    /// `y`, the class of the exceptional divisor.
    pub fn exceptional() -> Self {
        DivisorClass::new(Rational::zero(), Rational::one())
    }

    /// The polarization `x - eps*y`.
    pub fn polarization(eps: &Rational) -> Self {
        DivisorClass::new(Rational::one(), -eps)
    }

    /// Ample if and only if `a > b > 0`.
    pub fn is_ample(&self) -> bool {
        self.a > self.b && self.b.is_positive()
    }
}

impl BlowupRing {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("dimension must be >= 3, got {n}")));
        }
        Ok(BlowupRing { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonical class `-(n+1) x + (n-2) y`.
    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(rat_i(-(self.n as i64 + 1)), rat_i(self.n as i64 - 2))
    }

    /// Exact intersection number of `n` divisor classes.
    ///
    /// Expands the multilinear product by collecting the coefficient of each
    /// monomial `x^j y^{n-j}` (one O(n^2) pass, no 2^n enumeration) and then
    /// applies the reduction rules.
    pub fn intersect(&self, classes: &[DivisorClass]) -> Result<Rational> {
        if classes.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: classes.len(),
            });
        }
        // coeff[j] = sum over all ways of drawing `a` from j factors and `b`
        // from the rest
        let mut coeff = vec![Rational::zero(); self.n + 1];
        coeff[0] = Rational::one();
        for (k, cl) in classes.iter().enumerate() {
            for j in (0..=k).rev() {
                let xa = &coeff[j] * &cl.a;
                coeff[j] = &coeff[j] * &cl.b;
                coeff[j + 1] += xa;
            }
            // after the loop coeff[0..=k+1] are the elementary products so far
        }
        let sign = if self.n.is_multiple_of(2) {
            rat_i(1)
        } else {
            rat_i(-1)
        }; // (-1)^(n-2)
        let mut total = coeff[self.n].clone(); // x^n = 1
        total += &coeff[1] * &sign; // x y^{n-1}
        total += &coeff[0] * &sign * rat_i(self.n as i64 - 1); // y^n
        Ok(total)
    }
}

/// Seshadri constant of the exceptional divisor with respect to the
/// polarization `x - eps*y`: equals `1 - eps` for `eps` in (0, 1).
pub fn seshadri_of_exceptional(eps: &Rational) -> Result<Rational> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::Domain(format!("eps = {eps} outside (0, 1)")));
    }
    Ok(Rational::one() - eps)
}

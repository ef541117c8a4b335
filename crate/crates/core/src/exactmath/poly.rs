//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// A dense univariate polynomial, coefficients stored degree-ascending with
/// trailing zeros stripped. The zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Poly { coeffs }
    }

    /// `c * t^k`.
    pub fn term(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Convenience for integer-coefficient tests: `&[a0, a1, ...]`.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| super::rat_i(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exact value at `t` by Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Floating-point Horner evaluation of the same coefficients.
    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + super::to_f64(c);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * super::rat_i(k as i64))
            .collect();
        Poly::new(coeffs)
    }

    /// Coefficients of `q(u) = p(u + c)`, so `q.coeff(k)` is the k-th Taylor
    /// coefficient of `p` at `c`. Repeated synthetic division by `(t - c)`.
    pub fn taylor_shift(&self, c: &Rational) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut work = self.coeffs.clone();
        let n = work.len();
        let mut out = vec![Rational::zero(); n];
        for coeff in out.iter_mut().take(n) {
            // divide `work` by (t - c); the remainder is the next Taylor coefficient
            for k in (0..work.len().saturating_sub(1)).rev() {
                let carry = &work[k + 1] * c;
                work[k] += carry;
            }
            *coeff = work.remove(0);
            if work.is_empty() {
                break;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    ///
    /// Panics if `d` is the zero polynomial.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dlead = d
            .leading_coeff()
            .expect("division by the zero polynomial")
            .clone();
        let ddeg = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg && !rem.is_empty() {
            let rdeg = rem.len() - 1;
            let factor = rem.last().unwrap() / &dlead;
            if !factor.is_zero() {
                quot[rdeg - ddeg] = factor.clone();
                for k in 0..=ddeg {
                    let t = &factor * &d.coeffs[k];
                    rem[rdeg - ddeg + k] -= t;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Divides out the leading coefficient; the zero polynomial stays zero.
    pub fn into_monic(self) -> Poly {
        match self.leading_coeff() {
            None => self,
            Some(lead) => {
                let inv = Rational::one() / lead;
                self.scale(&inv)
            }
        }
    }

    /// The square-free part `p / gcd(p, p')`; roots are preserved but
    /// multiplicities collapse to one.
    pub fn square_free_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.into_monic()
    }

    /// Sign of the exact value at `t`: −1, 0, or 1.
    pub fn sign_at(&self, t: &Rational) -> i8 {
        let v = self.eval(t);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_i};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        // 1 - 3t^2 + 2t^3 at 1/2
        let p = Poly::from_i64(&[1, 0, -3, 2]);
        assert_eq!(p.eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(Poly::zero().eval(&rat(7, 3)), rat_i(0));
        // t^2 - 3t + 2 has a root at 1
        let q = Poly::from_i64(&[2, -3, 1]);
        assert_eq!(q.eval(&rat_i(1)), rat_i(0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Poly::monomial(3).derivative(), Poly::from_i64(&[0, 0, 3]));
        assert_eq!(Poly::constant(rat_i(5)).derivative(), Poly::zero());
    }

    #[test]
    fn taylor_shift_square() {
        // (u+1)^2 = 1 + 2u + u^2
        let p = Poly::monomial(2);
        assert_eq!(p.taylor_shift(&rat_i(1)), Poly::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = Poly::from_i64(&[3, -2, 0, 5, 1]);
        let d = Poly::from_i64(&[1, 1, 2]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn square_free_part_collapses_multiplicity() {
        // (t-1)^2 (t+2) -> (t-1)(t+2), up to monic normalization
        let p = &Poly::from_i64(&[-1, 1]).pow(2) * &Poly::from_i64(&[2, 1]);
        let sf = p.square_free_part();
        assert_eq!(
            sf,
            (&Poly::from_i64(&[-1, 1]) * &Poly::from_i64(&[2, 1])).into_monic()
        );
    }

    proptest! {
        #[test]
        fn shift_then_eval_matches_eval(
            coeffs in proptest::collection::vec(-10i64..=10, 0..7),
            cn in -8i64..=8, td in 1i64..=6, tn in -12i64..=12,
        ) {
            let p = Poly::from_i64(&coeffs);
            let c = rat_i(cn);
            let t = rat(tn, td);
            let shifted = p.taylor_shift(&c);
            prop_assert_eq!(shifted.eval(&(&t - &c)), p.eval(&t));
        }

        #[test]
        fn derivative_is_linear_and_leibniz(
            a in proptest::collection::vec(-10i64..=10, 0..6),
            b in proptest::collection::vec(-10i64..=10, 0..6),
        ) {
            let p = Poly::from_i64(&a);
            let q = Poly::from_i64(&b);
            prop_assert_eq!((&p + &q).derivative(), &p.derivative() + &q.derivative());
            let prod_rule = &(&p.derivative() * &q) + &(&p * &q.derivative());
            prop_assert_eq!((&p * &q).derivative(), prod_rule);
        }
    }
}

//! Arbitrary-precision rational scalars and certified univariate polynomial
//! algebra. Every exact check in the crate bottoms out here.

mod poly;
mod ratfunc;
mod sturm;

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use sturm::{certify_sign, sturm_root_count, IntervalSign, SturmChain};

use crate::error::{Error, Result};
use num_bigint::BigInt;

/// The scalar of all exact computation: an arbitrary-precision rational,
/// always reduced to lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as an exact rational.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::ParseRational(s.to_string()))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den == BigInt::from(0) {
                return Err(Error::ParseRational(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Lossless conversion of a finite `f64` into a rational.
pub fn rational_from_f64(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| Error::Numeric(format!("non-finite float {v}")))
}

/// Nearest `f64` to a rational; good enough for sampling and reports.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

//! Sturm sequences and interval sign certification.

use num_traits::Zero;

use super::{Poly, Rational};

/// Canonical Sturm sequence of the square-free part of a polynomial.
///
/// The first entry is the square-free part, each successor the negated
/// Euclidean remainder of the previous pair, and the last entry a nonzero
/// constant.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<Poly>,
}

impl SturmChain {
    /// Panics on the zero polynomial.
    pub fn new(p: &Poly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let sf = p.square_free_part();
        let mut polys = vec![sf.clone()];
        if sf.degree() == Some(0) {
            return SturmChain { polys };
        }
        polys.push(sf.derivative());
        loop {
            let k = polys.len();
            let (_, r) = polys[k - 2].div_rem(&polys[k - 1]);
            if r.is_zero() {
                break;
            }
            polys.push(-&r);
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Number of sign variations of the chain at `t`, zeros skipped.
    pub fn sign_variations_at(&self, t: &Rational) -> usize {
        let mut last: i8 = 0;
        let mut variations = 0;
        for p in &self.polys {
            let s = p.sign_at(t);
            if s != 0 {
                if last != 0 && s != last {
                    variations += 1;
                }
                last = s;
            }
        }
        variations
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
///
/// Panics if `lo >= hi` or if `p` is identically zero. Multiplicities do not
/// matter: the chain is built on the square-free part.
pub fn sturm_root_count(p: &Poly, lo: &Rational, hi: &Rational) -> usize {
    assert!(lo < hi, "sturm_root_count needs lo < hi");
    assert!(!p.is_zero(), "root count of the zero polynomial");
    let chain = SturmChain::new(p);
    let va = chain.sign_variations_at(lo);
    let vb = chain.sign_variations_at(hi);
    va.saturating_sub(vb)
}

/// Certified sign of a polynomial on an open interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalSign {
    /// `p(t) > 0` for every `t` in the open interval; the endpoints are
    /// allowed to be roots.
    StrictlyPositive,
    /// `p(t) < 0` for every `t` in the open interval; the endpoints are
    /// allowed to be roots.
    StrictlyNegative,
    /// `p` has at least one root strictly inside the interval (the zero
    /// polynomial counts).
    HasRootInside,
}

impl IntervalSign {
    pub fn as_str(&self) -> &'static str {
        match self {
            IntervalSign::StrictlyPositive => "strictly-positive",
            IntervalSign::StrictlyNegative => "strictly-negative",
            IntervalSign::HasRootInside => "has-root-inside",
        }
    }
}

/// Classifies the sign of `p` on the open interval `(lo, hi)`: counts roots
/// strictly inside (the count over `(lo, hi]` adjusted for a root at `hi`),
/// and if there are none returns the sign at the midpoint.
///
/// Panics if `lo >= hi`.
pub fn certify_sign(p: &Poly, lo: &Rational, hi: &Rational) -> IntervalSign {
    assert!(lo < hi, "certify_sign needs lo < hi");
    if p.is_zero() {
        return IntervalSign::HasRootInside;
    }
    let mut inside = sturm_root_count(p, lo, hi);
    if p.eval(hi).is_zero() {
        inside -= 1;
    }
    if inside > 0 {
        return IntervalSign::HasRootInside;
    }
    let mid = (lo + hi) / super::rat_i(2);
    match p.sign_at(&mid) {
        1 => IntervalSign::StrictlyPositive,
        -1 => IntervalSign::StrictlyNegative,
        _ => unreachable!("midpoint root contradicts a zero interior count"),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_i};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts_roots_in_half_open_interval() {
        // roots 1 and 2; (0, 3/2] contains only 1
        let p = Poly::from_i64(&[2, -3, 1]);
        assert_eq!(sturm_root_count(&p, &rat_i(0), &rat(3, 2)), 1);
        assert_eq!(sturm_root_count(&p, &rat_i(0), &rat_i(3)), 2);
        // half-open: a root at hi is counted, a root at lo is not
        assert_eq!(sturm_root_count(&p, &rat_i(0), &rat_i(1)), 1);
        assert_eq!(sturm_root_count(&p, &rat_i(1), &rat_i(2)), 1);
        assert_eq!(sturm_root_count(&p, &rat_i(1), &rat(3, 2)), 0);
    }

    #[test]
    fn no_real_roots() {
        let p = Poly::from_i64(&[1, 0, 1]); // t^2 + 1
        assert_eq!(sturm_root_count(&p, &rat_i(-10), &rat_i(10)), 0);
    }

    #[test]
    fn repeated_boundary_roots_do_not_corrupt_counts() {
        // rho^2 (1-rho)^2 for n=3: only roots are 0 and 1
        let p = &Poly::monomial(2) * &Poly::from_i64(&[1, -1]).pow(2);
        assert_eq!(sturm_root_count(&p, &rat_i(0), &rat(1, 2)), 0);
        assert_eq!(
            certify_sign(&p, &rat_i(0), &rat_i(1)),
            IntervalSign::StrictlyPositive
        );
    }

    #[test]
    fn detects_interior_sign_change() {
        // -(t-1/2)^2 + 1/100 changes sign at 1/2 +- 1/10
        let shift = Poly::new(vec![rat(-1, 2), rat_i(1)]);
        let p = &Poly::constant(rat(1, 100)) - &shift.pow(2);
        assert_eq!(
            certify_sign(&p, &rat_i(0), &rat_i(1)),
            IntervalSign::HasRootInside
        );
    }

    #[test]
    fn negative_constant_interval() {
        let p = Poly::from_i64(&[-3]);
        assert_eq!(
            certify_sign(&p, &rat_i(0), &rat_i(1)),
            IntervalSign::StrictlyNegative
        );
        assert_eq!(sturm_root_count(&p, &rat_i(0), &rat_i(1)), 0);
    }

    #[test]
    fn zero_polynomial_has_root_inside() {
        assert_eq!(
            certify_sign(&Poly::zero(), &rat_i(0), &rat_i(1)),
            IntervalSign::HasRootInside
        );
    }

    // Exact oracle: build a polynomial from a known root multiset, then the
    // Sturm count must match the number of distinct constructed roots in the
    // interval.
    proptest! {
        #[test]
        fn agrees_with_constructed_roots(
            roots in proptest::collection::btree_set((-6i64..=6, 1i64..=4), 0..4),
            mults in proptest::collection::vec(1u32..=3, 4),
            irreducible in proptest::bool::ANY,
            lo_n in -8i64..=0, hi_n in 1i64..=8,
        ) {
            let mut p = Poly::one();
            let mut distinct = std::collections::BTreeSet::new();
            for (k, (num, den)) in roots.iter().enumerate() {
                let r = rat(*num, *den);
                if !distinct.insert(r.clone()) {
                    continue;
                }
                let factor = Poly::new(vec![-&r, rat_i(1)]);
                p = &p * &factor.pow(mults[k % mults.len()]);
            }
            if irreducible {
                p = &p * &Poly::from_i64(&[1, 0, 1]);
            }
            let lo = rat(lo_n, 3);
            let hi = rat(hi_n, 3);
            prop_assume!(lo < hi);
            let expected = distinct.iter().filter(|r| **r > lo && **r <= hi).count();
            prop_assert_eq!(sturm_root_count(&p, &lo, &hi), expected);
        }

        // Grid oracle: scan the square-free part over an ever finer
        // rational grid until the sign-change count stabilizes against the
        // Sturm count. Termination is guaranteed because distinct roots have
        // positive separation.
        #[test]
        fn agrees_with_dense_grid_scan(
            coeffs in proptest::collection::vec(-10i64..=10, 1..9),
        ) {
            let p = Poly::from_i64(&coeffs);
            prop_assume!(!p.is_zero());
            let lo = rat_i(-12);
            let hi = rat_i(12);
            let sturm = sturm_root_count(&p, &lo, &hi);
            let sf = p.square_free_part();
            let mut cells = 64usize;
            let mut brute = 0;
            for _ in 0..8 {
                brute = 0;
                let step = (&hi - &lo) / rat_i(cells as i64);
                let mut prev_sign = sf.sign_at(&lo);
                for k in 1..=cells {
                    let t = &lo + &step * rat_i(k as i64);
                    let s = sf.sign_at(&t);
                    if s == 0 {
                        brute += 1; // grid point is a root; (lo, hi] counts it
                        prev_sign = 0;
                    } else {
                        if prev_sign != 0 && s != prev_sign {
                            brute += 1;
                        }
                        prev_sign = s;
                    }
                }
                if brute == sturm {
                    break;
                }
                cells *= 4;
            }
            prop_assert_eq!(brute, sturm);
        }
    }
}

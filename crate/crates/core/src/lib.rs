//! Exact-arithmetic toolkit for the blowup of projective space along a line.
//!
//! Everything here works on two models of the same manifold: the rank-two
//! intersection ring spanned by the hyperplane pullback and the exceptional
//! divisor, and the moment polytope obtained from the standard simplex by
//! cutting one edge at depth `eps`. On top of those models the crate
//! provides
//!
//! * certified slope computations and a machine proof, via Sturm sequences,
//!   that every polarization is slope unstable ([`stability`]);
//! * the explicit extremal-metric datum (four constants, two polynomials,
//!   and the profile second derivative) together with an exact residual
//!   check of the underlying second-order ODE ([`extremal`]);
//! * per-parameter regularity certification of the symplectic potential and
//!   a bisection search for the largest certifiable cut depth
//!   ([`regularity`]);
//! * closed-form Hessians, inverse Hessians and finite-difference scalar
//!   curvature on the polytope ([`toric`]).
//!
//! All certification paths run in exact rational arithmetic ([`exactmath`]);
//! floating point appears only in cross-checks and sampling.

pub mod error;
pub mod exactmath;
pub mod extremal;
pub mod intersection;
pub mod regularity;
pub mod stability;
pub mod toric;

pub use error::{Error, Result};
pub use exactmath::{Poly, RatFunc, Rational};

//! Certified construction and hyperbolicity testing of Jensen, Appell, and
//! delta-Appell polynomials attached to functions with well-separated real
//! zeros.
//!
//! Everything numeric runs on midpoint-radius ball arithmetic ([`BigReal`]):
//! results carry rigorous error radii, and every yes/no answer exposed by the
//! crate (a polynomial *is* hyperbolic, two zeros *are* separated by at least
//! `delta`) is a theorem about the stored intervals, not a floating-point
//! guess. Questions the current precision cannot settle come back as
//! `Undetermined` rather than a wrong answer.

pub mod curves;
pub mod error;
pub mod harness;
pub mod jensen;
pub mod poly;
pub mod real;
pub mod roots;
pub mod specfun;

pub use error::{Error, Result};
pub use poly::{ExpPolynomial, IntervalPolynomial};
pub use real::{BigReal, Ctx, Sign};
pub use roots::{
    certify_hyperbolic, certify_hyperbolic_with, isolate_real_roots, refine_root, Cluster,
    HyperbolicityReport, IsolatedRoot, RootDomain, RootIsolation, Verdict,
};

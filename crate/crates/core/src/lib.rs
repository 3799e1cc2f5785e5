//! Numerical evaluation of integral identities over `ln ζ`.
//!
//! Both sides of each identity are evaluated independently: the vertical-line
//! integral by adaptive quadrature over Euler–Maclaurin values of ζ, and the
//! right-hand side from closed forms, the pole of ζ, and per-zero contributions
//! summed over a table of zero ordinates. The difference is reported as a
//! residual alongside a truncation-tail estimate.
//!
//! Modules:
//! - [`zeta`]: ζ(s), ζ(s)(s−1) and branch-tracked logarithms.
//! - [`quadrature`]: adaptive Gauss–Kronrod / tanh-sinh integration.
//! - [`zeros`]: zero-ordinate tables and their binary cache.
//! - [`identities`]: per-zero terms and the identity evaluators.
//! - [`report`]: run configuration, orchestration and CSV/JSON output.

// Domain checks are written `!(x > 0.0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod identities;
pub mod quadrature;
pub mod report;
pub mod zeros;
pub mod zeta;

/// Complex number in binary64.
pub type Complex = num_complex::Complex64;

pub use identities::{CaseSpec, IdentityError, ResidualReport, TermBreakdown, Theorem};
pub use quadrature::{Integrator, QuadratureError, QuadratureResult, SingularityHint};
pub use zeros::{HypotheticalZero, ZeroCatalog, ZeroOrdinate};
pub use zeta::{TrackedLog, ZetaError, ZetaParams};

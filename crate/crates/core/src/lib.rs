//! Exact toolkit for deciding, synthesizing and numerically verifying
//! dynamically balanced planar four-bar mechanisms.
//!
//! The backbone is a toric division algorithm for Laurent polynomials in two
//! variables over the Gaussian rationals: a quotient-remainder decomposition
//! controlled by Newton polygons whose remainder vanishes exactly when the
//! divisor divides the dividend in the Laurent ring. Balance questions reduce
//! to divisibility of the momentum determinant by the factors of the closure
//! curve, so every verdict is an exact certificate rather than a numeric
//! residual. A floating-point simulator cross-checks certificates by tracing
//! trajectories and measuring momentum drift.

pub mod balance;
pub mod coeff;
pub mod division;
pub mod error;
pub mod io;
pub mod laurent;
pub mod mechanism;
pub mod polygon;
pub mod sim;

pub use balance::{
    check_balance, classify_case, classify_case_approx, closed_form_residuals, mode_factors,
    synthesize_case_iia, synthesize_case_iva, BalanceReport, KinematicCase, ModeComponent,
    ModeVerdict, Residual, ResidualKind, SynthesisChoices,
};
pub use coeff::{Coeff, GaussianRational, APPROX_ZERO_TOL};
pub use division::{is_divisible, support_max, toric_divide, DirectionFunctional, QuotientRemainder};
pub use error::{Error, Result};
pub use laurent::{Exponent, LaurentPoly};
pub use mechanism::{
    derive, dynamic_determinant, geometric_constraint, momentum_form, static_constraint,
    velocity_coefficients, DerivedParams, DesignParams, MomentumForm, Poly,
};
pub use polygon::NewtonPolygon;
pub use sim::{
    solve_closure, trajectory, velocity_ratio, verify_balanced, Branch, Configuration,
    NumericParams, RateProfile, Sample, VerifySummary,
};

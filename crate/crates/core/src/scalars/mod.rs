//! Exact arithmetic substrate: rationals, Gaussian rationals and Laurent
//! polynomials on a one- or two-dimensional torus.

mod gaussian;
mod laurent;
pub mod rational;

pub use gaussian::GaussianRational;
pub use laurent::{ExpVec, LaurentPoly};
pub use rational::{
    gamma_quot, gamma_ratio, parse_rational, rat, rat_int, rational_string, Rational,
};

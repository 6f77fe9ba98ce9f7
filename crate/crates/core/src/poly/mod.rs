//! Dense polynomial arithmetic, resultants and rational functions.

mod bi;
mod ratfun;
pub mod resultant;
mod uni;

pub use bi::{BiPoly, HomPoly, Var, TRIM_REL};
pub use ratfun::{approx_gcd, common_roots, content, euclid_div, real_poly_from_roots, RatFun, CANCEL_TOL};
pub use resultant::{pencil_resultant, resultant};
pub use uni::UniPoly;

//! Approximate parametrization of epsilon-rational plane curves, with
//! Hausdorff-type distance bounds between the input curve and its
//! parametrization.

pub mod epsgeo;
pub mod error;
pub mod familygen;
pub mod hausdorff;
pub mod io;
pub mod paramalg;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod rootfind;
pub mod scalar;

pub use error::{Error, Result};
pub use poly::{BiPoly, HomPoly, RatFun, UniPoly, Var};
pub use scalar::Scalar;

//! Exact power-series expansion of the Weierstrass sigma function for the
//! general curve `y^2 + (mu1 x + mu3) y = x^3 + mu2 x^2 + mu4 x + mu6`, with
//! symbolic coefficients, together with the derived functions wp and wp',
//! the n-plication polynomials and checks of the integrality statements.

pub mod cli;
pub mod curve;
pub mod error;
pub mod nplication;
pub mod ring;
pub mod series;
pub mod sigma;

pub use error::{Error, Result};

//! Exact rationals and the weighted polynomial ring Q[mu1, mu2, mu3, mu4, mu6].
//!
//! The grading is wt(mu_j) = j. Index 5 is absent on purpose: the general
//! Weierstrass model has no mu5.

mod mupoly;
mod rat;

pub(crate) use mupoly::ZERO_POLY;
pub use mupoly::{Accumulator, Integrality, IntegralityClass, Monomial, MuPoly, Weight, MU_INDICES};
pub use rat::{int, parse_rat, rat, rat_from_bigint, Rat};

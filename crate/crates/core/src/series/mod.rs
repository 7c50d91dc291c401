//! Truncated Laurent series in one variable and truncated power series in two,
//! both over Q[mu], with explicit precision tracking.

mod bseries;
mod lseries;
mod render;

use std::fmt;

pub use bseries::BSeries;
pub(crate) use lseries::term_text;
pub use lseries::LSeries;

use crate::error::Result;
use crate::ring::{IntegralityClass, Monomial};

/// Name of a series variable. Arithmetic between different names is refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    U,
    V,
    T1,
    T2,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::U => "u",
            Var::V => "v",
            Var::T1 => "t1",
            Var::T2 => "t2",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        Some(match s {
            "t" => Var::T,
            "u" => Var::U,
            "v" => Var::V,
            "t1" => Var::T1,
            "t2" => Var::T2,
            _ => return None,
        })
    }

    pub fn latex(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::U => "u",
            Var::V => "v",
            Var::T1 => "t_1",
            Var::T2 => "t_2",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classification of the Hurwitz coefficients `n! c_n` of a power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzReport {
    /// Class of `n! c_n` for `n = 0..=prec`.
    pub classes: Vec<IntegralityClass>,
    /// Meet of all entries of `classes`.
    pub overall: IntegralityClass,
    /// First index whose Hurwitz coefficient is not in Z[mu], with a witness monomial.
    pub first_non_integral: Option<(usize, Monomial)>,
    /// First index that is not even in Z[mu1/2, mu2, mu3, mu4, mu6].
    pub first_neither: Option<(usize, Monomial)>,
}

impl HurwitzReport {
    pub fn of(a: &LSeries) -> Result<Self> {
        let coeffs = a.hurwitz_coeffs()?;
        let mut classes = Vec::with_capacity(coeffs.len());
        let mut first_non_integral = None;
        let mut first_neither = None;
        for (n, c) in coeffs.iter().enumerate() {
            let integ = c.integrality();
            if integ.class < IntegralityClass::ZMu && first_non_integral.is_none() {
                first_non_integral = integ.witness.map(|w| (n, w));
            }
            if integ.class == IntegralityClass::Neither && first_neither.is_none() {
                first_neither = integ.witness.map(|w| (n, w));
            }
            classes.push(integ.class);
        }
        let overall = classes.iter().copied().min().unwrap_or(IntegralityClass::ZMu);
        Ok(HurwitzReport { classes, overall, first_non_integral, first_neither })
    }
}

impl fmt::Display for HurwitzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "overall: {}", self.overall)?;
        if let Some((n, w)) = &self.first_non_integral {
            write!(f, "; first coefficient outside Z[mu]: n={n}, monomial {w}")?;
        }
        if let Some((n, w)) = &self.first_neither {
            write!(f, "; first coefficient outside Z[mu1/2,...]: n={n}, monomial {w}")?;
        }
        Ok(())
    }
}

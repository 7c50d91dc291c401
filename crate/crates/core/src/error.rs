use thiserror::Error;

use crate::series::Var;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined weight: zero polynomial")]
    UndefinedWeight,
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(Var, Var),
    #[error("leading coefficient {0} is not a unit")]
    NonUnit(String),
    #[error("inner series must have positive valuation, got {0:?}")]
    InnerValuation(Option<i64>),
    #[error("reversion needs a series of the form t + O(t^2): {0}")]
    Revert(String),
    #[error("cannot integrate a t^-1 term")]
    LogTerm,
    #[error("exp needs zero constant term and no principal part")]
    ExpDomain,
    #[error("log needs constant term 1 and no principal part")]
    LogDomain,
    #[error("square root needs constant term 1 and no principal part")]
    SqrtDomain,
    #[error("series has a principal part")]
    PrincipalPart,
    #[error("inexact division: {0}")]
    NotDivisible(String),
    #[error("insufficient precision: need {needed}, have {have}")]
    Precision { needed: i64, have: i64 },
    #[error("integrality violation: {0}")]
    Integrality(String),
    #[error("weight violation: {0}")]
    Weight(String),
    #[error("identity failed: {0}")]
    Identity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("point is not on the curve")]
    NotOnCurve,
}

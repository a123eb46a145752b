//! Exact verification: identities, limits, orthogonality and the operator search.

use serde::Serialize;

use crate::exact::{serde_rat, Rational};

pub mod identities;
pub mod limits;
pub mod modp;
pub mod operator;
pub mod orthogonality;

/// One exact comparison. `params` is a short free-form description of the instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: String,
    #[serde(with = "serde_rat")]
    pub lhs: Rational,
    #[serde(with = "serde_rat")]
    pub rhs: Rational,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(id: impl Into<String>, params: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        let pass = lhs == rhs;
        IdentityReport { id: id.into(), params: params.into(), lhs, rhs, pass }
    }
}

pub fn all_pass(reports: &[IdentityReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

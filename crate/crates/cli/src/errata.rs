//! Registry of identities whose stated form is known not to hold.

use qcube_core::{IdentityKind, IdentityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownErratum {
    pub identity: IdentityKind,
    pub note: &'static str,
}

pub const KNOWN_ERRATA: &[KnownErratum] = &[KnownErratum {
    identity: IdentityKind::EvenweightPrinted,
    note: "left side carries an extra factor 2^(n-1); evenweight_corrected is the verified form",
}];

pub fn lookup(identity: IdentityKind) -> Option<&'static KnownErratum> {
    KNOWN_ERRATA.iter().find(|e| e.identity == identity)
}

/// Outcome of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    KnownErratum,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::KnownErratum => "known_erratum",
            Status::Error => "error",
        }
    }
}

pub fn classify(report: &IdentityReport) -> Status {
    if report.equal {
        Status::Pass
    } else if lookup(report.identity).is_some() {
        Status::KnownErratum
    } else {
        Status::Fail
    }
}

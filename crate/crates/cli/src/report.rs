use serde::Serialize;
use serde_json::Value;

use kwverify::Error;

/// Bumped whenever a field of [`VerificationReport`] changes meaning.
pub const SCHEMA_VERSION: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// A check ran to completion and produced a falsifying witness.
    Fail,
    /// The parameters are outside the check's domain.
    Inapplicable,
    /// A bounded search was exhausted without a decision.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Requested worker count; 0 lets the runtime choose.
    pub threads: usize,
    pub timing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub version: &'static str,
    pub config: Config,
}

/// How a core error is reported. `None` means the error can only come from
/// a bug, never from valid input.
pub fn classify(e: &Error) -> Option<Status> {
    match e {
        Error::Verification(_) | Error::CrossCheck(_) => Some(Status::Fail),
        Error::Undecided(_)
        | Error::FactorizationIncomplete(_)
        | Error::RootSearchTooLarge(_)
        | Error::FactorBaseTooSmall(_) => Some(Status::Undecided),
        Error::ZeroConductor
        | Error::NotCoprime(..)
        | Error::NotPrime(_)
        | Error::NotOddPrime(_)
        | Error::CompositeConductor(_)
        | Error::NotDivisor(..)
        | Error::NonCanonicalModulus(..)
        | Error::Invalid(_)
        | Error::Precondition(_) => Some(Status::Inapplicable),
        Error::FieldMismatch(..) | Error::DivisionByZero | Error::ZeroElement => None,
    }
}

use alloc::string::String;

use crate::arith::Var;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroDenominator,
    #[error("non-simple pole")]
    NonSimplePole,
    #[error("not divisible by Vandermonde")]
    NotAlternating,
    #[error("class is not symmetric in P1..Pn")]
    NotSymmetric,
    #[error("pairing not polynomial")]
    PairingNotPolynomial,
    #[error("pairing is not an integer: {0}")]
    NonIntegerPairing(String),
    #[error("not connected by a 1-dimensional orbit")]
    NotAdjacent,
    #[error("degree multiplicity m0 must be positive")]
    NonPositiveCover,
    #[error("negative degree")]
    NegativeDegree,
    #[error("incompatible series kind: {0}")]
    IncompatibleKind(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("factor vanishes identically in a denominator")]
    ZeroFactor,
    #[error("variable {0} has no assigned value")]
    Unassigned(Var),
    #[error("choose Λ as perfect m0-th powers")]
    IrrationalRoot,
    #[error("symmetrized sum is not divisible by the Vandermonde product")]
    VandermondeCancellation,
    #[error("level {l} outside the window {lo} < l < {hi}")]
    LevelOutOfRange { l: i32, lo: i32, hi: i32 },
    #[error("|q| too close to 1")]
    QTooClose,
    #[error("nonconvergent lattice sum")]
    Nonconvergent,
    #[error("shift A hits pole")]
    ShiftHitsPole,
    #[error("zero coordinate")]
    ZeroCoordinate,
    #[error("axis {0} out of range")]
    AxisOutOfRange(usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

use thiserror::Error;

use crate::bits::BitStr;
use crate::ratio::Ratio;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set is not prefix-free: {shorter} is a proper prefix of {longer}")]
    NotPrefixFree { shorter: BitStr, longer: BitStr },

    #[error("operation requires a nonempty bit string")]
    EmptyString,

    #[error("value {value} is not a probability in [0, 1]")]
    NotProbability { value: Ratio },

    #[error("invalid ratio: {0}")]
    InvalidRatio(String),

    #[error("subadditivity violated at {at}: {parent} < {left} + {right}")]
    NotSubadditive {
        at: BitStr,
        parent: Box<Ratio>,
        left: Box<Ratio>,
        right: Box<Ratio>,
    },

    #[error("table keys are not closed under prefixes: {missing} is missing")]
    NotPrefixClosed { missing: BitStr },

    #[error("mixture weights sum to {sum}, which exceeds 1")]
    WeightSumExceeded { sum: Ratio },

    #[error("{op} requires a predictor that is {capability}")]
    MissingCapability {
        op: &'static str,
        capability: &'static str,
    },

    #[error("no exact rational value available at {0}")]
    NotRational(BitStr),

    #[error("{what}: budget of {limit} exhausted")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("{value} is not dyadic (needs a finite radix-2 expansion)")]
    NotDyadic { value: Ratio },

    #[error("staged values decrease at {at} between stages {stage} and {next}")]
    DecreasingStage { at: BitStr, stage: u64, next: u64 },

    #[error("zero probability at {0}")]
    ZeroProbability(BitStr),

    #[error("nonvanishing predictor required, found zero at {0}")]
    Vanishing(BitStr),

    #[error("conditional bound undefined: denominator vanishes at {0}")]
    BoundUndefined(BitStr),

    #[error("martingale value must be positive, found zero at {0}")]
    NonPositiveMartingale(BitStr),

    #[error("martingale is unfair at {at}")]
    UnfairMartingale { at: BitStr },

    #[error("invalid calibration window [{r}, {s}]: need 1/2 < r <= s < 1")]
    InvalidWindow { r: Ratio, s: Ratio },

    #[error("level bounds violate numerosity below {at}")]
    NumerosityViolated { at: BitStr },

    #[error("invalid growth function: {0}")]
    InvalidGrowth(String),

    #[error("invalid weight function: {0}")]
    InvalidWeight(String),

    #[error("process is not monotone: f({shorter}) = {out_shorter} is not a prefix of f({longer}) = {out_longer}")]
    NotMonotone {
        shorter: BitStr,
        out_shorter: BitStr,
        longer: BitStr,
        out_longer: BitStr,
    },

    #[error("duplicate process input {0}")]
    DuplicateInput(BitStr),

    #[error("process is not declared endless")]
    NotEndless,

    #[error("interval allocation failed for {target}: {reason}")]
    Allocation { target: BitStr, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

use thiserror::Error;

/// Errors produced by the analysis library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count {0} outside supported range 1..={max}", max = crate::MAX_VARS)]
    VarCount(usize),

    #[error("hex truth table for n={n} needs {expected} digits, got {found}")]
    HexLength {
        n: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid hex digit {digit:?} at position {position}")]
    HexDigit { digit: char, position: usize },

    #[error("nonzero padding bits in hex truth table for n={0}")]
    HexPadding(usize),

    #[error("input index {index} out of range for n={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("variable x{index} out of range for n={n}")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("point value {0} is not in {{-1, 1}}")]
    NotSign(i64),

    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },

    #[error("restriction fixes {fixed} of {n} variables; must leave at least one free")]
    RestrictAll { fixed: usize, n: usize },

    #[error("variable x{0} fixed more than once")]
    DuplicateVariable(usize),

    #[error("influence forms disagree for {what}: flip count gives {flip}, Fourier sum gives {fourier}")]
    InconsistentInfluence {
        what: String,
        flip: String,
        fourier: String,
    },

    #[error("threshold problem too large: n={n}, {features} features (limits n<={max_n}, features<={max_features})")]
    ThresholdTooLarge {
        n: usize,
        features: usize,
        max_n: usize,
        max_features: usize,
    },

    #[error("parameter {name} = {value} out of range: {reason}")]
    Parameter {
        name: &'static str,
        value: String,
        reason: String,
    },

    #[error("map is not a permutation of 0..{0}")]
    NotPermutation(usize),

    #[error("base function is not bent")]
    NotBent,

    #[error("n={n} exceeds the {what} guard of {max}{hint}")]
    Guard {
        what: &'static str,
        n: usize,
        max: usize,
        hint: &'static str,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("circuit structure: {0}")]
    Circuit(String),

    #[error("I/O: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

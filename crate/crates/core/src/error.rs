use alloc::string::String;

/// Errors raised by the library. Indices carried in variants are 0-based;
/// the `Display` output reports them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("exponent vectors must have at least one entry")]
    EmptyVector,

    #[error("(g, n) = ({g}, {n}) is unstable: 2g - 2 + n must be positive")]
    Unstable { g: u32, n: usize },

    #[error("transfer needs two distinct indices, got {} twice", .index + 1)]
    SameIndex { index: usize },

    #[error("index {} is out of range for a vector of length {len}", .index + 1)]
    IndexOutOfRange { index: usize, len: usize },

    #[error("entry {} is zero, nothing to transfer", .index + 1)]
    EmptySource { index: usize },

    #[error("expected total degree {expected}, found {found}")]
    DegreeMismatch { expected: u64, found: u64 },

    #[error("vector has {found} entries, the space has {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("closed genus-zero formula needs at least three points, got {n}")]
    TooFewPoints { n: usize },

    #[error("entry {} is {found}, expected {expected}", .index + 1)]
    UnexpectedEntry {
        index: usize,
        expected: u32,
        found: u32,
    },

    #[error("genus must be positive")]
    ZeroGenus,

    #[error("dimension {dimension} exceeds the recursion limit {limit}")]
    DepthLimit { dimension: u64, limit: u32 },

    #[error("space has {required} vectors, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("sequence entry {index} is not strictly positive")]
    NonPositive { index: usize },

    #[error("oracle `{name}` failed: {reason}")]
    Oracle { name: String, reason: String },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

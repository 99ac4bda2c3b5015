use thiserror::Error;

/// Rule a rejected move violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IllegalMove {
    #[error("heap index {index} out of range for {len} heaps")]
    NoSuchHeap { index: usize, len: usize },
    #[error("amount must be at least 1")]
    ZeroAmount,
    #[error("r < {modulus} violated: amount {amount} is not below the modulus")]
    AmountNotBelowModulus { amount: u64, modulus: u64 },
    #[error("r < h violated: amount {amount} does not leave a positive heap from {heap}")]
    AmountNotBelowHeap { amount: u64, heap: u64 },
    #[error("resulting heap {heap} is not coprime to {modulus}")]
    ResultNotCoprime { heap: u64, modulus: u64 },
    #[error("consolidation is not permitted here under the {policy} policy")]
    ConsolidationNotPermitted { policy: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("{a} has no inverse modulo {modulus}")]
    NotInvertible { a: u64, modulus: u64 },
    #[error("every residue modulo {0} is already taken")]
    SetSaturated(u64),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("a position needs at least one heap")]
    EmptyHeaps,
    #[error("heap values must be positive, got {0}")]
    NonPositiveHeap(i64),
    #[error("heap {heap} not coprime to {modulus}")]
    HeapNotCoprime { heap: u64, modulus: u64 },
    #[error("illegal move: {0}")]
    IllegalMove(#[from] IllegalMove),
    #[error("heap product overflows the native integer range")]
    ProductOverflow,
    #[error("heap {heap} is not larger than the modulus {modulus}")]
    HeapTooSmall { heap: u64, modulus: u64 },
    #[error("moduli differ: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{factor} does not divide the modulus {modulus}")]
    FactorMismatch { factor: u64, modulus: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not monic of the requested degree")]
    NotMonic,
    #[error("coefficient {coeff} is not a residue modulo {p}")]
    CoefficientOutOfRange { coeff: u64, p: u64 },
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("field order {p}^{n} does not fit a machine word")]
    FieldTooLarge { p: u64, n: u32 },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("heap {heap} is not a canonical element of a field of order {order}")]
    NotCanonical { heap: u64, order: u64 },
    #[error("search budget of {0} positions exceeded")]
    SearchBudgetExceeded(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

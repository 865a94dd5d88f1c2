use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("elimination block {block} invalid for {arity} variables")]
    BadEliminationBlock { block: usize, arity: usize },
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at offset {position}")]
    UnknownVariable { position: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("an ideal needs at least one nonzero generator")]
    Empty,
    #[error("ideal power must be at least 1")]
    ZeroPower,
    #[error("quotient is not of finite length")]
    InfiniteLength,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("semigroup generators must be distinct nonzero vectors")]
    BadGenerators,
    #[error("ideal generator {0:?} is not in the semigroup")]
    NotInSemigroup(Vec<u32>),
    #[error("ideal needs at least one generator")]
    EmptyIdeal,
    #[error("complement of the ideal is not finite within the search bound (ideal not primary to the maximal ideal)")]
    NotCofinite,
    #[error("closure gap not finite within the search bound")]
    NotFinite,
    #[error("closure gap is only available in dimension 2 with two distinct extreme rays")]
    UnsupportedGap,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("ideal is not primary to the maximal ideal at the origin: {0}")]
    NotPrimary(String),
    #[error("length sequence has not stabilized (have {have} values, need {need}); raise nmax")]
    NotStabilized { have: usize, need: usize },
    #[error("length sequence does not grow like a polynomial of degree {0}")]
    DegreeMismatch(usize),
    #[error("q:m contains a unit (q equals the maximal ideal or e0(m) = 1); no colon invariants")]
    DegenerateColon,
    #[error("parameter ideal has {gens} generators but dimension {dim} was declared")]
    DimensionMismatch { gens: usize, dim: usize },
    #[error("cohomology inference needs a dimension 2 report, got {0}")]
    NotDim2(usize),
    #[error("ring mode and ideal representation do not match")]
    ModeMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error("Cohen-Macaulay type r is required for this check; add `type r = <n>` to the spec")]
    MissingType,
    #[error("check needs dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
}

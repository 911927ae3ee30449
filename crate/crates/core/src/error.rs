use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group closure exceeds the order cap {cap}")]
    ClosureExceedsCap { cap: usize },
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("{what}: order {order} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("p-group catalogue for p = {p} is only complete up to order {complete_to}, requested {requested}")]
    CatalogueIncomplete {
        p: u64,
        complete_to: usize,
        requested: usize,
    },
    #[error("field characteristic {char} divides {n}")]
    CharDividesOrder { char: u64, n: usize },
    #[error("essential algebra vanishes: {0}")]
    VanishingEssentialAlgebra(String),
    #[error("element is not a generator of the cyclic group")]
    NotAGenerator,
    #[error("element does not lie in the extension-compatible normalizer")]
    NotInGHat,
    #[error("representation was built for a different pair: {0}")]
    WrongPairForW(String),
    #[error("modular oracle: group order {order} exceeds cap {cap}")]
    OracleCapExceeded { order: usize, cap: usize },
    #[error("no field of order p^m <= 2^20 splits the exponent (p = {p}, p'-exponent {exponent})")]
    FieldTableExhausted { p: u64, exponent: usize },
    #[error("irreducibility certificate failure: {0}")]
    CertificateFailure(String),
    #[error("Brauer character table is singular")]
    SingularBrauerTable,
    #[error("Cartan matrix entry is not an integer: {0}")]
    NonIntegralCartan(String),
    #[error("denominator divisible by p in reduction: {0}")]
    DenominatorDivisibleByP(String),
    #[error("matrices violate the group relations: {0}")]
    RelationCheckFailed(String),
    #[error("consistency check failed: {0}")]
    InvariantViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

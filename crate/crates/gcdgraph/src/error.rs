use thiserror::Error;

/// All failure modes surfaced by this crate. Every variant is a domain error:
/// panics are reserved for internal invariant violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_p: {0}")]
    ReducibleModulus(String),
    #[error("field size {q} exceeds the supported bound 2^16")]
    FieldTooLarge { q: u128 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element index {0} is outside the field")]
    ElementOutOfRange(u64),
    #[error("degree constraint violated: {0}")]
    DegreeMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("divisor count exceeds the bound 2^20")]
    TooManyDivisors,
    #[error("{g} does not divide {f}")]
    NotADivisor { g: String, f: String },
    #[error("divisor set must contain only proper divisors: {0} is not proper")]
    NonProper(String),
    #[error("cyclotomic operands have different character parameters")]
    PrimeMismatch,
    #[error("cyclotomic integer is not rational")]
    NotRational,
    #[error("connection set is not closed under negation")]
    NonSymmetricConnection,
    #[error("connection set contains the identity")]
    IdentityInConnection,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("integer overflow in {0}")]
    Overflow(String),
    #[error("hypotheses not satisfied: {0}")]
    HypothesesViolated(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("target clique number {clique} exceeds the residue bound {bound}")]
    CliqueBoundViolated { bound: u128, clique: u64 },
    #[error("moment identity fails at k = {k}")]
    MomentMismatch { k: u32 },
    #[error("decomposition criterion fails: {0}")]
    CriterionFails(String),
    #[error("independent recomputation disagrees: {0}")]
    OracleMismatch(String),
    #[error("malformed graph: {0}")]
    BadGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code, used by the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ReducibleModulus(_) => "reducible_modulus",
            Error::FieldTooLarge { .. } => "field_too_large",
            Error::FieldMismatch => "field_mismatch",
            Error::ElementOutOfRange(_) => "element_out_of_range",
            Error::DegreeMismatch(_) => "degree_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::BothZero => "gcd_both_zero",
            Error::TooManyDivisors => "too_many_divisors",
            Error::NotADivisor { .. } => "not_a_divisor",
            Error::NonProper(_) => "non_proper_divisor",
            Error::PrimeMismatch => "prime_mismatch",
            Error::NotRational => "not_rational",
            Error::NonSymmetricConnection => "non_symmetric_connection",
            Error::IdentityInConnection => "identity_in_connection",
            Error::TooLarge(_) => "too_large",
            Error::Overflow(_) => "overflow",
            Error::HypothesesViolated(_) => "hypotheses_violated",
            Error::SearchExhausted(_) => "search_exhausted",
            Error::CliqueBoundViolated { .. } => "clique_bound_violated",
            Error::MomentMismatch { .. } => "moment_mismatch",
            Error::CriterionFails(_) => "criterion_fails",
            Error::OracleMismatch(_) => "oracle_mismatch",
            Error::BadGraph(_) => "bad_graph",
            Error::Parse(_) => "parse_error",
        }
    }
}

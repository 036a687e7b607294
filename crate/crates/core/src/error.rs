use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("element index {index} out of range for a lattice of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("lattice has {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("not a poset: `{0}` and `{1}` are mutually below each other")]
    NotAPoset(String, String),
    #[error("not a lattice: `{x}` and `{y}` have no unique {bound}")]
    NotALattice { x: String, y: String, bound: &'static str },
    #[error("no global bottom or top element")]
    NoBoundedness,
    #[error("bad parameters for `{kind}`: {reason}")]
    BadParams { kind: String, reason: String },
    #[error("relation ({0}, {1}) does not refine the lattice order")]
    RefinementViolation(usize, usize),
    #[error("({0}, {1}) is not a relation of the lattice")]
    NotARelation(usize, usize),
    #[error("structures live on different lattices")]
    CarrierMismatch,
    #[error("enumeration exceeded the limit of {0} structures")]
    EnumerationLimitExceeded(usize),
    #[error("lattice is not modular")]
    NotModular,
    #[error("({0}, {1}) is not a covering relation")]
    NotACoverSubset(usize, usize),
    #[error("cover set violates the saturated-cover conditions")]
    NotASaturatedCover,
    #[error("transfer system is not saturated")]
    NotSaturated,
    #[error("no saturated transfer system has the given cover set")]
    NoMatchingSystem,
    #[error("relation is not a transfer system: {0}")]
    NotATransferSystem(String),
    #[error("pair is not a factorization system: {0}")]
    NotAFactorizationSystem(String),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("relation ({0}, {1}) does not factor uniquely")]
    NonUniqueFactorization(usize, usize),
    #[error("candidate set for element {0} has no minimum")]
    MinNotUnique(usize),
    #[error("candidate set for element {0} has no maximum")]
    MaxNotUnique(usize),
    #[error("map is not monotone: {0} <= {1} but images are not ordered")]
    NotMonotone(usize, usize),
    #[error("map is not idempotent at element {0}")]
    NotIdempotent(usize),
    #[error("table has length {got}, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("operator has an empty fiber")]
    EmptyFiber,
    #[error("element set is not a submonoid")]
    NotASubmonoid,
    #[error("factorization system is not reflective")]
    NotReflective,
    #[error("factorization system is not coreflective")]
    NotCoreflective,
    #[error("poly-Bernoulli indices must be at least 1, got ({0}, {1})")]
    BadIndex(usize, usize),
    #[error("count mismatch for {what}: {left} vs {right}")]
    CountMismatch { what: String, left: String, right: String },
    #[error("invalid input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable snake_case identifier for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateLabel(..) => "duplicate_label",
            Error::UnknownLabel(..) => "unknown_label",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::TooLarge { .. } => "too_large",
            Error::NotAPoset(..) => "not_a_poset",
            Error::NotALattice { .. } => "not_a_lattice",
            Error::NoBoundedness => "no_boundedness",
            Error::BadParams { .. } => "bad_params",
            Error::RefinementViolation(..) => "refinement_violation",
            Error::NotARelation(..) => "not_a_relation",
            Error::CarrierMismatch => "carrier_mismatch",
            Error::EnumerationLimitExceeded(..) => "enumeration_limit_exceeded",
            Error::NotModular => "not_modular",
            Error::NotACoverSubset(..) => "not_a_cover_subset",
            Error::NotASaturatedCover => "not_a_saturated_cover",
            Error::NotSaturated => "not_saturated",
            Error::NoMatchingSystem => "no_matching_system",
            Error::NotATransferSystem(..) => "not_a_transfer_system",
            Error::NotAFactorizationSystem(..) => "not_a_factorization_system",
            Error::NotComparable(..) => "not_comparable",
            Error::NonUniqueFactorization(..) => "non_unique_factorization",
            Error::MinNotUnique(..) => "min_not_unique",
            Error::MaxNotUnique(..) => "max_not_unique",
            Error::NotMonotone(..) => "not_monotone",
            Error::NotIdempotent(..) => "not_idempotent",
            Error::TableLength { .. } => "table_length",
            Error::EmptyFiber => "empty_fiber",
            Error::NotASubmonoid => "not_a_submonoid",
            Error::NotReflective => "not_reflective",
            Error::NotCoreflective => "not_coreflective",
            Error::BadIndex(..) => "bad_index",
            Error::CountMismatch { .. } => "count_mismatch",
            Error::Parse(..) => "parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

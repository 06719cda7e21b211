use thiserror::Error;

use crate::field::FieldError;
use crate::parser::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("operands live in different variable contexts")]
    ContextMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("image of {var} has nonzero constant term {constant}; the map is not local")]
    NotLocal { var: String, constant: String },
    #[error("not well defined (global membership): image of quotient generator {generator} reduces to {remainder}; the map may still be well defined after localization")]
    NotWellDefined { generator: String, remainder: String },
    #[error("ideal is not of finite length: {0}")]
    NotFiniteLength(String),
    #[error("ideal is not m-primary")]
    NotMPrimary,
    #[error("ideal is not monomial: {0}")]
    NotMonomial(String),
    #[error("map is not a monomial map: image of {0} is not a single term")]
    NotMonomialMap(String),
    #[error("exponent matrix is singular; the monomial map is not finite")]
    SingularExponentMatrix,
    #[error("monomial map is not finite: its maximal-ideal image is not m-primary")]
    NotFiniteMap,
    #[error("operation requires a polynomial ring (zero quotient ideal)")]
    RequiresPolynomialRing,
    #[error("minimal prime {0} is not invariant under the map")]
    InvarianceFailure(String),
    #[error("Krull dimension unknown; declare `dim` in the ring section")]
    MissingDimension,
    #[error("declared dimension {declared} disagrees with computed dimension {computed}")]
    DimensionMismatch { declared: usize, computed: usize },
    #[error("Hilbert-Samuel fit did not stabilize: {0}")]
    Unstabilized(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable snake_case name used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Field(_) => "field",
            Error::Parse(_) => "parse",
            Error::Schema(_) => "schema",
            Error::InvalidContext(_) => "invalid_context",
            Error::ContextMismatch => "context_mismatch",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::NotLocal { .. } => "not_local",
            Error::NotWellDefined { .. } => "not_well_defined",
            Error::NotFiniteLength(_) => "not_finite_length",
            Error::NotMPrimary => "not_m_primary",
            Error::NotMonomial(_) => "not_monomial",
            Error::NotMonomialMap(_) => "not_monomial_map",
            Error::SingularExponentMatrix => "singular_exponent_matrix",
            Error::NotFiniteMap => "not_finite_map",
            Error::RequiresPolynomialRing => "requires_polynomial_ring",
            Error::InvarianceFailure(_) => "invariance_failure",
            Error::MissingDimension => "missing_dimension",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Unstabilized(_) => "unstabilized",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

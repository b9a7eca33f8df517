use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall in two groups: genuine errors (bad input, exhausted search
/// budgets, unsupported fields) and mathematical obstructions, which are
/// legitimate answers. [`Error::is_obstruction`] tells them apart; the CLI maps
/// obstructions to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization bound exceeded: cofactor {cofactor} left unfactored")]
    FactorBoundExceeded { cofactor: String },
    #[error("degree {degree} exceeds the configured budget {bound}")]
    DegreeBudgetExceeded { degree: usize, bound: usize },
    #[error("continued fraction period exceeded the budget {bound}")]
    PeriodBudgetExceeded { bound: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("zero element has no valuation")]
    ZeroElement,
    #[error("element is not a unit at {place}")]
    NotAUnit { place: String },
    #[error("Picard group is nontrivial: {0}")]
    PicNontrivial(String),
    #[error("no generator found for ideal {ideal} within the search bound")]
    GeneratorSearchFailed { ideal: String },
    #[error("place {place} ramifies in the extension")]
    RamifiedExtension { place: String },
    #[error("algebra is ramified at {places:?}")]
    RamifiedInput { places: Vec<String> },
    #[error("local invariants do not sum to zero (sum = {sum})")]
    InvariantSumNonzero { sum: String },
    #[error("residue characteristic 2 is not supported")]
    EvenResidueChar,
    #[error("entry {entry} is not a unit at {place}")]
    NonUnitCoefficient { entry: String, place: String },
    #[error("reduced norm search failed at {place} (index {index}, budget {budget})")]
    NormSearchFailed { place: String, index: usize, budget: u64 },
    #[error("residue class is nontrivial at {place}")]
    RamifiedAtPlace { place: String },
    #[error("place {place} has degree {degree} > 1")]
    UnsupportedPlaceDegree { place: String, degree: usize },
    #[error("adele component at {place} is singular")]
    SingularComponent { place: String },
    #[error("Steinitz class of {ideal} is not principal")]
    NonPrincipalClass { ideal: String },
    #[error("invalid cocycle: {0}")]
    CocycleInvalid(String),
    #[error("cocycle condition u*sigma(u) = 1 fails")]
    CocycleConditionFails,
    #[error("descent obstruction: ideal class of {ideal}")]
    Obstruction { ideal: String },
    #[error("Galois ring conditions fail: {0}")]
    ConditionsFail(String),
    #[error("no stored splitting for {0}")]
    SplittingNotStored(String),
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// True for answers that are mathematically meaningful obstructions rather
    /// than failures of the computation.
    pub fn is_obstruction(&self) -> bool {
        matches!(
            self,
            Error::NonPrincipalClass { .. }
                | Error::RamifiedAtPlace { .. }
                | Error::Obstruction { .. }
                | Error::RamifiedInput { .. }
                | Error::PicNontrivial(_)
        )
    }

    /// Stable identifier used in JSON reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FactorBoundExceeded { .. } => "FactorBoundExceeded",
            Error::DegreeBudgetExceeded { .. } => "DegreeBudgetExceeded",
            Error::PeriodBudgetExceeded { .. } => "PeriodBudgetExceeded",
            Error::Unsupported(_) => "Unsupported",
            Error::ZeroElement => "ZeroElement",
            Error::NotAUnit { .. } => "NotAUnit",
            Error::PicNontrivial(_) => "PicNontrivial",
            Error::GeneratorSearchFailed { .. } => "GeneratorSearchFailed",
            Error::RamifiedExtension { .. } => "RamifiedExtension",
            Error::RamifiedInput { .. } => "RamifiedInput",
            Error::InvariantSumNonzero { .. } => "InvariantSumNonzero",
            Error::EvenResidueChar => "EvenResidueChar",
            Error::NonUnitCoefficient { .. } => "NonUnitCoefficient",
            Error::NormSearchFailed { .. } => "NormSearchFailed",
            Error::RamifiedAtPlace { .. } => "RamifiedAtPlace",
            Error::UnsupportedPlaceDegree { .. } => "UnsupportedPlaceDegree",
            Error::SingularComponent { .. } => "SingularComponent",
            Error::NonPrincipalClass { .. } => "NonPrincipalClass",
            Error::CocycleInvalid(_) => "CocycleInvalid",
            Error::CocycleConditionFails => "CocycleConditionFails",
            Error::Obstruction { .. } => "Obstruction",
            Error::ConditionsFail(_) => "ConditionsFail",
            Error::SplittingNotStored(_) => "SplittingNotStored",
            Error::ParseError { .. } => "ParseError",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the calculus.
///
/// Variants fall into two families: malformed input (bad probabilities,
/// unknown labels, mismatched alphabets) and mathematical degeneracy (a
/// quantity the formulas divide by is zero). [`Error::is_degeneracy`]
/// tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one label")]
    EmptyAlphabet,
    #[error("duplicate label `{0}` in alphabet")]
    DuplicateLabel(String),
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("probabilities sum to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("negative probability mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("value {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("prior probability must be positive")]
    ZeroPrior,
    #[error("distributions are defined over different alphabets")]
    AlphabetMismatch,
    #[error("q puts mass on `{label}` where p has none")]
    AbsoluteContinuityViolated { label: String },
    #[error("selection row has zero mass under the prior")]
    ZeroSelectionMass,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` has no numeric position")]
    NonNumericLabel(String),
    #[error("truth function cannot be evaluated at a real point")]
    NotRealValued,
    #[error("standard deviation must be positive and finite, got {0}")]
    InvalidStddev(f64),
    #[error("logical probability is zero under this prior")]
    ZeroLogicalProbability,
    #[error("degree of belief {0} is outside [-1, 1]")]
    BeliefOutOfRange(f64),
    #[error("rates are degenerate: {0}")]
    DegenerateRates(&'static str),
    #[error("contingency table has an empty hypothesis row")]
    EmptyRow,
    #[error("contingency table has an empty evidence column")]
    EmptyColumn,
    #[error("count {0} must be finite and non-negative")]
    InvalidCount(f64),
    #[error("increments need at least one positive example (n11 > 0)")]
    ZeroPositiveExamples,
    #[error("sensitivity must be positive")]
    ZeroSensitivity,
    #[error("prediction denominator is zero")]
    ZeroDenominator,
    #[error("expected {expected} hypotheses, found {found}")]
    IndexMismatch { expected: usize, found: usize },
    #[error("no sample matches the condition subset")]
    EmptyConditionSubset,
    #[error("selecting-rule row {0} is identically zero")]
    ZeroRow(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),
    #[error("grid too coarse: standard deviation {d} is below two cells")]
    GridTooCoarse { d: f64 },
    #[error("invalid model: {0}")]
    InvalidModel(&'static str),
}

impl Error {
    /// True for errors caused by a zero in a formula rather than malformed input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::ZeroPrior
                | Error::ZeroSelectionMass
                | Error::ZeroLogicalProbability
                | Error::DegenerateRates(_)
                | Error::EmptyRow
                | Error::EmptyColumn
                | Error::ZeroPositiveExamples
                | Error::ZeroSensitivity
                | Error::ZeroDenominator
                | Error::EmptyConditionSubset
                | Error::ZeroRow(_)
                | Error::DegenerateInput(_)
                | Error::DegenerateGeometry(_)
                | Error::GridTooCoarse { .. }
                | Error::AbsoluteContinuityViolated { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

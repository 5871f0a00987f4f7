//! Semantic information and degree-of-confirmation calculus.
//!
//! Logarithms are base 2 throughout, so every information value is in bits.
//! A predicate is read two ways: through its truth function (a membership
//! value per evidence label, used to compute logical probability and
//! semantic information) and through the statistical probability of the
//! evidence given that the predicate was selected. Degrees of confirmation
//! measure how far the truth function of a hypothesis should be trusted.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod casebook;
pub mod confirmation;
pub mod distributions;
pub mod error;
pub mod estimation;
pub mod semantic_info;
pub mod truth_functions;

pub use confirmation::{
    doc_denial_from_rates, doc_from_rates, doc_from_test, doc_h1_from_table, doc_h2_from_table,
    predicted_probability, raven_increments, Confirmation, ContingencyTable, DocCase, DocResult, RateSpec,
    RavenIncrements, Stance, TestDoc,
};
pub use distributions::{
    bayes_invert, kl_divergence, pointwise_info, selection_probability, Alphabet, Distribution,
    NORMALIZATION_TOLERANCE,
};
pub use error::{Error, Result};
pub use estimation::{
    empirical_conditional, estimate_hypotheses, gps_cep_doc, gps_cep_doc_exact, gps_fit, gps_objective,
    optimal_truth_function, optimal_truth_function_from_sampling, optimize_belief, CepDoc, Channel, GpsFit,
    GpsModel, HypothesisEstimate, RingGrid, SampleSet,
};
pub use semantic_info::{
    average_semantic_info, gkl_decomposition, pointwise_semantic_info, semantic_mutual_info, GklDecomposition,
};
pub use truth_functions::{
    belief_adjust, logical_probability, negate, semantic_bayes, Belief, ParseTruthFunctionError, TruthFunction,
};

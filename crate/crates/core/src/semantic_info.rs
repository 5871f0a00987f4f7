//! Pointwise, average and mutual semantic information.
//!
//! The pointwise measure is `log2(T(A_j|e_i) / T(A_j))`: large when the
//! predicate is improbable a priori yet true of the evidence, negative
//! infinity when it is flatly false. Averaging it over a sampling
//! distribution yields a generalized KL information whose ceiling is the
//! ordinary KL information of the sampling distribution against the prior.

use crate::distributions::{kl_divergence, Distribution};
use crate::error::{Error, Result};
use crate::estimation::Channel;
use crate::truth_functions::{dot, TruthFunction};

/// Logical probabilities below this are treated as zero unless the truth
/// function is identically zero (the contradiction).
pub const MIN_LOGICAL_PROBABILITY: f64 = 1e-12;

/// Logical probability, or `None` for a contradiction.
pub(crate) fn checked_logical_probability(prior: &[f64], truth: &[f64]) -> Result<Option<f64>> {
    let lp = dot(prior, truth);
    if lp == 0.0 && truth.iter().all(|&t| t == 0.0) {
        return Ok(None);
    }
    if !(lp >= MIN_LOGICAL_PROBABILITY) {
        return Err(Error::ZeroLogicalProbability);
    }
    Ok(Some(lp))
}

/// Average semantic information over raw vectors. Shared by every caller
/// that already holds truth values, so the optimizers avoid re-evaluating
/// truth functions.
pub(crate) fn average_info_raw(prior: &[f64], truth: &[f64], sampling: &[f64]) -> Result<f64> {
    let Some(lp) = checked_logical_probability(prior, truth)? else {
        return Ok(0.0);
    };
    let mut total = 0.0;
    for (&q, &t) in sampling.iter().zip(truth) {
        if q == 0.0 {
            continue;
        }
        if t == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        total += q * (t / lp).log2();
    }
    Ok(total)
}

/// `I(e; h_j) = log2(T(A_j|e) / T(A_j))`; zero for a contradiction.
pub fn pointwise_semantic_info(tf: &TruthFunction, prior: &Distribution, label: &str) -> Result<f64> {
    let alphabet = prior.alphabet();
    let index = alphabet.index_of(label)?;
    let truth = tf.values_on(alphabet)?;
    let Some(lp) = checked_logical_probability(prior.probs(), &truth)? else {
        return Ok(0.0);
    };
    let t = truth[index];
    if t == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok((t / lp).log2())
}

/// Average semantic information `sum_i P(e_i|h_j) log2(T(A_j|e_i) / T(A_j))`.
///
/// Negative infinity whenever the sampling distribution puts mass on
/// evidence the predicate calls false.
pub fn average_semantic_info(
    tf: &TruthFunction,
    prior: &Distribution,
    sampling: &Distribution,
) -> Result<f64> {
    prior.alphabet().ensure_same(sampling.alphabet())?;
    let truth = tf.values_on(prior.alphabet())?;
    average_info_raw(prior.probs(), &truth, sampling.probs())
}

/// Average semantic information split into the KL information of the
/// sampling distribution and the divergence of the prediction from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GklDecomposition {
    /// `KL(sampling || prior)`, the ceiling.
    pub kl_info: f64,
    /// `KL(sampling || semantic_bayes(prior, tf))`; may be `+inf`.
    pub penalty: f64,
}

impl GklDecomposition {
    pub fn total(&self) -> f64 {
        self.kl_info - self.penalty
    }
}

pub fn gkl_decomposition(
    tf: &TruthFunction,
    prior: &Distribution,
    sampling: &Distribution,
) -> Result<GklDecomposition> {
    prior.alphabet().ensure_same(sampling.alphabet())?;
    let kl_info = kl_divergence(sampling, prior)?;
    let truth = tf.values_on(prior.alphabet())?;
    let Some(lp) = checked_logical_probability(prior.probs(), &truth)? else {
        // A contradiction carries no information either way.
        return Ok(GklDecomposition {
            kl_info,
            penalty: kl_info,
        });
    };
    let mut penalty = 0.0;
    for ((&q, &p), &t) in sampling.probs().iter().zip(prior.probs()).zip(&truth) {
        if q == 0.0 {
            continue;
        }
        let predicted = p * t / lp;
        if predicted == 0.0 {
            penalty = f64::INFINITY;
            break;
        }
        penalty += q * (q / predicted).log2();
    }
    Ok(GklDecomposition {
        kl_info,
        penalty: penalty.max(0.0),
    })
}

/// Semantic mutual information of a channel read through one truth function
/// per hypothesis: `sum_j P(h_j) I(E; h_j)`.
pub fn semantic_mutual_info(
    channel: &Channel,
    prior: &Distribution,
    tfs: &[TruthFunction],
) -> Result<f64> {
    prior.alphabet().ensure_same(channel.alphabet())?;
    if tfs.len() != channel.hypothesis_count() {
        return Err(Error::IndexMismatch {
            expected: channel.hypothesis_count(),
            found: tfs.len(),
        });
    }
    let mut total = 0.0;
    for (j, tf) in tfs.iter().enumerate() {
        let truth = tf.values_on(prior.alphabet())?;
        total += channel_term(prior.probs(), channel.row(j), &truth)?;
    }
    Ok(total)
}

/// `P(h_j) I(E; h_j)` for one channel row, computed from the joint
/// `P(e_i) P(h_j|e_i)` so rows that never fire contribute zero.
pub(crate) fn channel_term(prior: &[f64], row: &[f64], truth: &[f64]) -> Result<f64> {
    let Some(lp) = checked_logical_probability(prior, truth)? else {
        return Ok(0.0);
    };
    let mut total = 0.0;
    for ((&p, &r), &t) in prior.iter().zip(row).zip(truth) {
        let joint = p * r;
        if joint == 0.0 {
            continue;
        }
        if t == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        total += joint * (t / lp).log2();
    }
    Ok(total)
}

//! Finite discrete distributions and the classical information primitives.
//!
//! All information quantities are in bits. Negative infinity is an ordinary
//! return value: it is how a falsified prediction shows up, not an error.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default tolerance on `|sum - 1|` accepted when building a distribution.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Ordered set of distinct evidence labels. Position in the list is the index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    labels: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// The two-letter alphabet `[e1, e0]` used by universal hypotheses:
    /// `e1` is a positive example, `e0` a counterexample.
    pub fn binary() -> Self {
        Self {
            labels: vec!["e1".to_string(), "e0".to_string()].into(),
        }
    }

    /// Labels `0, 1, ..., n-1`.
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Numeric position associated with a label; the label text is the value.
    pub fn position(&self, index: usize) -> Result<f64> {
        let label = &self.labels[index];
        label
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::NonNumericLabel(label.clone()))
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// Probability distribution over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    alphabet: Alphabet,
    probs: Vec<f64>,
}

/// Checks that `probs` is a probability vector: finite, non-negative and
/// summing to one within `tolerance`.
pub fn validate(probs: &[f64], tolerance: f64) -> Result<()> {
    let mut sum = 0.0;
    for (index, &value) in probs.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite(value));
        }
        if value < 0.0 {
            return Err(Error::NegativeMass { index, value });
        }
        sum += value;
    }
    if (sum - 1.0).abs() > tolerance {
        return Err(Error::NotNormalized { sum });
    }
    Ok(())
}

impl Distribution {
    /// Builds a distribution, renormalizing inputs that are within the
    /// default tolerance of summing to one.
    pub fn new(alphabet: Alphabet, probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(alphabet, probs, NORMALIZATION_TOLERANCE)
    }

    pub fn with_tolerance(alphabet: Alphabet, mut probs: Vec<f64>, tolerance: f64) -> Result<Self> {
        if probs.len() != alphabet.len() {
            return Err(Error::LengthMismatch {
                expected: alphabet.len(),
                found: probs.len(),
            });
        }
        validate(&probs, tolerance)?;
        let sum: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= sum;
        }
        Ok(Self { alphabet, probs })
    }

    /// `P(e1) = p1`, `P(e0) = 1 - p1` over [`Alphabet::binary`].
    pub fn binary(p1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p1) {
            return Err(Error::InvalidProbability(p1));
        }
        Self::new(Alphabet::binary(), vec![p1, 1.0 - p1])
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Self {
            alphabet,
            probs: vec![1.0 / n as f64; n],
        }
    }

    /// Relative frequencies from non-negative weights.
    pub fn from_weights(alphabet: Alphabet, weights: &[f64]) -> Result<Self> {
        if weights.len() != alphabet.len() {
            return Err(Error::LengthMismatch {
                expected: alphabet.len(),
                found: weights.len(),
            });
        }
        let mut total = 0.0;
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFinite(w));
            }
            if w < 0.0 {
                return Err(Error::NegativeMass { index, value: w });
            }
            total += w;
        }
        if total <= 0.0 {
            return Err(Error::NotNormalized { sum: 0.0 });
        }
        Ok(Self {
            alphabet,
            probs: weights.iter().map(|w| w / total).collect(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, label: &str) -> Result<f64> {
        Ok(self.probs[self.alphabet.index_of(label)?])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Re-checks the invariants with the default tolerance.
    pub fn validate(&self) -> Result<()> {
        validate(&self.probs, NORMALIZATION_TOLERANCE)
    }

    pub(crate) fn from_parts_unchecked(alphabet: Alphabet, probs: Vec<f64>) -> Self {
        debug_assert_eq!(alphabet.len(), probs.len());
        Self { alphabet, probs }
    }
}

/// Relative information `log2(posterior / prior)` in bits.
///
/// A zero posterior gives negative infinity.
pub fn pointwise_info(posterior_prob: f64, prior_prob: f64) -> Result<f64> {
    if !(prior_prob > 0.0) {
        return Err(Error::ZeroPrior);
    }
    if !posterior_prob.is_finite() {
        return Err(Error::NonFinite(posterior_prob));
    }
    if posterior_prob < 0.0 {
        return Err(Error::InvalidProbability(posterior_prob));
    }
    if posterior_prob == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok((posterior_prob / prior_prob).log2())
}

/// Kullback-Leibler divergence `KL(q || p)` in bits, with `0 log(0/p) = 0`.
pub fn kl_divergence(q: &Distribution, p: &Distribution) -> Result<f64> {
    q.alphabet.ensure_same(&p.alphabet)?;
    let mut total = 0.0;
    for (i, (&qi, &pi)) in q.probs.iter().zip(&p.probs).enumerate() {
        if qi == 0.0 {
            continue;
        }
        if pi == 0.0 {
            return Err(Error::AbsoluteContinuityViolated {
                label: q.alphabet.label(i).to_string(),
            });
        }
        total += qi * (qi / pi).log2();
    }
    // Rounding can leave a tiny negative residue when q == p.
    Ok(total.max(0.0))
}

/// `sum_i P(e_i) P(h|e_i)`: how often the selecting rule fires under the prior.
pub fn selection_probability(prior: &Distribution, channel_row: &[f64]) -> Result<f64> {
    if channel_row.len() != prior.len() {
        return Err(Error::LengthMismatch {
            expected: prior.len(),
            found: channel_row.len(),
        });
    }
    let mut mass = 0.0;
    for (&p, &r) in prior.probs.iter().zip(channel_row) {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidProbability(r));
        }
        mass += p * r;
    }
    Ok(mass)
}

/// Bayes inversion: builds `P(E|h)` from the prior `P(E)` and the selecting
/// rule `P(h|E)`.
pub fn bayes_invert(prior: &Distribution, channel_row: &[f64]) -> Result<Distribution> {
    let mass = selection_probability(prior, channel_row)?;
    if !(mass > 0.0) {
        return Err(Error::ZeroSelectionMass);
    }
    let probs = prior
        .probs
        .iter()
        .zip(channel_row)
        .map(|(p, r)| p * r / mass)
        .collect();
    Ok(Distribution::from_parts_unchecked(prior.alphabet.clone(), probs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&[0.8, 0.2], NORMALIZATION_TOLERANCE).is_ok());
        assert!(validate(&[1.0], NORMALIZATION_TOLERANCE).is_ok());
        assert!(matches!(
            validate(&[0.6, 0.6], NORMALIZATION_TOLERANCE),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            validate(&[1.2, -0.2], NORMALIZATION_TOLERANCE),
            Err(Error::NegativeMass { index: 1, .. })
        ));
    }

    #[test]
    fn construction_renormalizes_within_tolerance() {
        let d = Distribution::new(Alphabet::binary(), vec![0.8 + 4e-10, 0.2]).unwrap();
        assert_eq!(d.probs().iter().sum::<f64>(), 1.0);
        assert!(Distribution::new(Alphabet::binary(), vec![0.8 + 1e-6, 0.2]).is_err());
        assert!(Distribution::with_tolerance(Alphabet::binary(), vec![0.8 + 1e-6, 0.2], 1e-5).is_ok());
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert_eq!(Alphabet::new(["a", "b", "a"]), Err(Error::DuplicateLabel("a".into())));
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn pointwise_info_examples() {
        assert_eq!(pointwise_info(0.8, 0.8).unwrap(), 0.0);
        assert!(close(pointwise_info(0.786, 0.004).unwrap(), 7.62, 0.01));
        assert_eq!(pointwise_info(0.0, 0.5).unwrap(), f64::NEG_INFINITY);
        assert_eq!(pointwise_info(0.3, 0.0), Err(Error::ZeroPrior));
    }

    #[test]
    fn kl_examples() {
        let p = Distribution::binary(0.8).unwrap();
        let q = Distribution::binary(0.99).unwrap();
        assert!(close(kl_divergence(&q, &p).unwrap(), 0.2611, 1e-3));
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
        let p = Distribution::binary(0.99).unwrap();
        let q = Distribution::binary(0.95).unwrap();
        assert!(close(kl_divergence(&q, &p).unwrap(), 0.060, 1e-3));
    }

    #[test]
    fn kl_errors() {
        let p = Distribution::binary(1.0).unwrap();
        let q = Distribution::binary(0.5).unwrap();
        assert!(matches!(
            kl_divergence(&q, &p),
            Err(Error::AbsoluteContinuityViolated { label }) if label == "e0"
        ));
        let other = Distribution::uniform(Alphabet::new(["x", "y"]).unwrap());
        assert_eq!(kl_divergence(&q, &other), Err(Error::AlphabetMismatch));
        // zero mass in q is fine even where p is zero
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn bayes_invert_examples() {
        let prior = Distribution::binary(0.004).unwrap();
        let post = bayes_invert(&prior, &[0.917, 0.001]).unwrap();
        assert!(close(post.probs()[0], 0.786, 0.001));
        assert!(close(post.probs()[1], 0.214, 0.001));

        let prior = Distribution::new(Alphabet::indexed(3).unwrap(), vec![0.2, 0.3, 0.5]).unwrap();
        let post = bayes_invert(&prior, &[0.4, 0.4, 0.4]).unwrap();
        for (a, b) in post.probs().iter().zip(prior.probs()) {
            assert!(close(*a, *b, 1e-15));
        }

        let prior = Distribution::binary(0.5).unwrap();
        assert_eq!(bayes_invert(&prior, &[1.0, 0.0]).unwrap().probs(), &[1.0, 0.0]);
        assert_eq!(bayes_invert(&prior, &[0.0, 0.0]), Err(Error::ZeroSelectionMass));
        assert_eq!(bayes_invert(&prior, &[1.5, 0.0]), Err(Error::InvalidProbability(1.5)));
    }

    #[test]
    fn numeric_positions() {
        let a = Alphabet::new(["18", "20.5", "old"]).unwrap();
        assert_eq!(a.position(1).unwrap(), 20.5);
        assert_eq!(a.position(2), Err(Error::NonNumericLabel("old".into())));
    }
}

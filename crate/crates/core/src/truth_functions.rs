//! Fuzzy truth functions: the conditional logical probability `T(A_j|E)`.
//!
//! A truth function maps each piece of evidence to a truth value in `[0, 1]`.
//! Averaging it over the evidence prior gives the logical probability of the
//! predicate; combining the two gives the semantic Bayes prediction.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::distributions::{Alphabet, Distribution};
use crate::error::{Error, Result};

/// Degree of belief `b` in `[-1, 1]`.
///
/// Positive values mix the hypothesis with the tautology; negative values
/// mix it with its own negation structure. `1 - |b|` is the degree of
/// disbelief.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Belief(f64);

impl Belief {
    pub fn new(b: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&b) {
            return Err(Error::BeliefOutOfRange(b));
        }
        Ok(Self(b))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Degree of disbelief `b' = 1 - |b|`.
    pub fn disbelief(self) -> f64 {
        1.0 - self.0.abs()
    }

    /// Applies the adjustment to a base truth value.
    #[inline]
    pub fn apply(self, base: f64) -> f64 {
        if self.0 >= 0.0 {
            (1.0 - self.0) + self.0 * base
        } else {
            1.0 + self.0 * base
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TruthFunction {
    /// Same truth value everywhere: 1 is the tautology, 0 the contradiction.
    Constant(f64),
    /// Non-fuzzy predicate: 1 on the listed labels, 0 elsewhere.
    Crisp(BTreeSet<String>),
    /// `exp(-(x - center)^2 / (2 stddev^2))` at the numeric position of the evidence.
    Gaussian { center: f64, stddev: f64 },
    /// Explicit truth values, one per alphabet position.
    Tabular(Vec<f64>),
    /// Zadeh complement `1 - T`.
    Negated(Box<TruthFunction>),
    BeliefAdjusted {
        base: Box<TruthFunction>,
        belief: Belief,
    },
}

impl TruthFunction {
    pub fn tautology() -> Self {
        TruthFunction::Constant(1.0)
    }

    pub fn contradiction() -> Self {
        TruthFunction::Constant(0.0)
    }

    pub fn constant(value: f64) -> Result<Self> {
        check_unit(value)?;
        Ok(TruthFunction::Constant(value))
    }

    pub fn crisp<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        TruthFunction::Crisp(labels.into_iter().map(Into::into).collect())
    }

    pub fn gaussian(center: f64, stddev: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::NonFinite(center));
        }
        if !(stddev > 0.0 && stddev.is_finite()) {
            return Err(Error::InvalidStddev(stddev));
        }
        Ok(TruthFunction::Gaussian { center, stddev })
    }

    pub fn tabular(values: Vec<f64>) -> Result<Self> {
        for &v in &values {
            check_unit(v)?;
        }
        Ok(TruthFunction::Tabular(values))
    }

    /// Truth value at the evidence with the given alphabet index.
    pub fn evaluate(&self, alphabet: &Alphabet, index: usize) -> Result<f64> {
        Ok(match self {
            TruthFunction::Constant(c) => *c,
            TruthFunction::Crisp(set) => {
                if set.contains(alphabet.label(index)) {
                    1.0
                } else {
                    0.0
                }
            }
            TruthFunction::Gaussian { center, stddev } => {
                gaussian_truth(alphabet.position(index)? - center, *stddev)
            }
            TruthFunction::Tabular(values) => {
                if values.len() != alphabet.len() {
                    return Err(Error::AlphabetMismatch);
                }
                values[index]
            }
            TruthFunction::Negated(inner) => 1.0 - inner.evaluate(alphabet, index)?,
            TruthFunction::BeliefAdjusted { base, belief } => {
                belief.apply(base.evaluate(alphabet, index)?)
            }
        })
    }

    pub fn evaluate_label(&self, alphabet: &Alphabet, label: &str) -> Result<f64> {
        self.evaluate(alphabet, alphabet.index_of(label)?)
    }

    /// Truth value at a real-valued point. Only defined for functions built
    /// from constants and Gaussians.
    pub fn evaluate_real(&self, x: f64) -> Result<f64> {
        Ok(match self {
            TruthFunction::Constant(c) => *c,
            TruthFunction::Gaussian { center, stddev } => gaussian_truth(x - center, *stddev),
            TruthFunction::Negated(inner) => 1.0 - inner.evaluate_real(x)?,
            TruthFunction::BeliefAdjusted { base, belief } => belief.apply(base.evaluate_real(x)?),
            TruthFunction::Crisp(_) | TruthFunction::Tabular(_) => return Err(Error::NotRealValued),
        })
    }

    /// Truth values over the whole alphabet, in alphabet order.
    ///
    /// Crisp sets naming labels outside the alphabet are rejected here so
    /// that typos do not silently turn into all-zero predicates.
    pub fn values_on(&self, alphabet: &Alphabet) -> Result<Vec<f64>> {
        self.check_labels(alphabet)?;
        (0..alphabet.len())
            .map(|i| self.evaluate(alphabet, i))
            .collect()
    }

    fn check_labels(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            TruthFunction::Crisp(set) => {
                for label in set {
                    alphabet.index_of(label)?;
                }
                Ok(())
            }
            TruthFunction::Negated(inner) => inner.check_labels(alphabet),
            TruthFunction::BeliefAdjusted { base, .. } => base.check_labels(alphabet),
            _ => Ok(()),
        }
    }
}

#[inline]
pub(crate) fn gaussian_truth(deviation: f64, stddev: f64) -> f64 {
    (-(deviation * deviation) / (2.0 * stddev * stddev)).exp()
}

fn check_unit(v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFinite(v));
    }
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidProbability(v));
    }
    Ok(())
}

/// Logical probability `T(A_j) = sum_i P(e_i) T(A_j|e_i)`.
pub fn logical_probability(tf: &TruthFunction, prior: &Distribution) -> Result<f64> {
    let truth = tf.values_on(prior.alphabet())?;
    Ok(dot(prior.probs(), &truth))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Semantic Bayes prediction `P(e_i|A_j) = P(e_i) T(A_j|e_i) / T(A_j)`.
pub fn semantic_bayes(prior: &Distribution, tf: &TruthFunction) -> Result<Distribution> {
    let truth = tf.values_on(prior.alphabet())?;
    likelihood_from_truth(prior, &truth)
}

pub(crate) fn likelihood_from_truth(prior: &Distribution, truth: &[f64]) -> Result<Distribution> {
    let lp = dot(prior.probs(), truth);
    if !(lp > 0.0) {
        return Err(Error::ZeroLogicalProbability);
    }
    let probs = prior
        .probs()
        .iter()
        .zip(truth)
        .map(|(p, t)| p * t / lp)
        .collect();
    Ok(Distribution::from_parts_unchecked(prior.alphabet().clone(), probs))
}

/// Zadeh negation `1 - T`. Constants and double negations are folded.
pub fn negate(tf: &TruthFunction) -> TruthFunction {
    match tf {
        TruthFunction::Constant(c) => TruthFunction::Constant(1.0 - c),
        TruthFunction::Negated(inner) => (**inner).clone(),
        other => TruthFunction::Negated(Box::new(other.clone())),
    }
}

/// Wraps `tf` with degree of belief `b`.
///
/// Nested adjustments compose by evaluation: the outer belief is applied to
/// the inner function's truth values.
pub fn belief_adjust(tf: &TruthFunction, b: f64) -> Result<TruthFunction> {
    let belief = Belief::new(b)?;
    Ok(TruthFunction::BeliefAdjusted {
        base: Box::new(tf.clone()),
        belief,
    })
}

impl fmt::Display for TruthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthFunction::Constant(c) if *c == 1.0 => write!(f, "taut"),
            TruthFunction::Constant(c) if *c == 0.0 => write!(f, "contra"),
            TruthFunction::Constant(c) => write!(f, "const:{c}"),
            TruthFunction::Crisp(set) => {
                write!(f, "crisp:")?;
                for (i, label) in set.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{label}")?;
                }
                Ok(())
            }
            TruthFunction::Gaussian { center, stddev } => write!(f, "gauss:{center},{stddev}"),
            TruthFunction::Tabular(values) => {
                write!(f, "table:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            TruthFunction::Negated(inner) => write!(f, "not:{inner}"),
            TruthFunction::BeliefAdjusted { base, belief } => {
                write!(f, "belief:{}:{base}", belief.value())
            }
        }
    }
}

/// Error from parsing a truth-function spec string.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseTruthFunctionError {
    #[error("unknown truth function kind `{0}` (expected crisp, gauss, table, belief, const, not or taut)")]
    UnknownKind(String),
    #[error("malformed `{kind}` spec: {detail}")]
    Malformed { kind: &'static str, detail: String },
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl FromStr for TruthFunction {
    type Err = ParseTruthFunctionError;

    /// Parses `crisp:a|b`, `gauss:center,stddev`, `table:v1,v2,...`,
    /// `belief:b:<inner>`, `not:<inner>`, `const:c`, `taut` and `contra`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "taut" || s == "tautology" {
            return Ok(TruthFunction::tautology());
        }
        if s == "contra" || s == "contradiction" {
            return Ok(TruthFunction::contradiction());
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| ParseTruthFunctionError::UnknownKind(s.to_string()))?;
        let number = |kind: &'static str, text: &str| {
            text.trim()
                .parse::<f64>()
                .map_err(|e| ParseTruthFunctionError::Malformed {
                    kind,
                    detail: format!("`{text}`: {e}"),
                })
        };
        match kind {
            "crisp" => {
                let labels: Vec<&str> = rest.split('|').map(str::trim).filter(|l| !l.is_empty()).collect();
                if labels.is_empty() {
                    return Err(ParseTruthFunctionError::Malformed {
                        kind: "crisp",
                        detail: "no labels".into(),
                    });
                }
                Ok(TruthFunction::crisp(labels))
            }
            "gauss" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 2 {
                    return Err(ParseTruthFunctionError::Malformed {
                        kind: "gauss",
                        detail: "expected center,stddev".into(),
                    });
                }
                Ok(TruthFunction::gaussian(number("gauss", parts[0])?, number("gauss", parts[1])?)?)
            }
            "table" => {
                let values = rest
                    .split(',')
                    .map(|v| number("table", v))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(TruthFunction::tabular(values)?)
            }
            "const" => Ok(TruthFunction::constant(number("const", rest)?)?),
            "not" => Ok(negate(&rest.parse()?)),
            "belief" => {
                let (b, inner) = rest.split_once(':').ok_or_else(|| ParseTruthFunctionError::Malformed {
                    kind: "belief",
                    detail: "expected belief:b:<inner>".into(),
                })?;
                Ok(belief_adjust(&inner.parse()?, number("belief", b)?)?)
            }
            other => Err(ParseTruthFunctionError::UnknownKind(other.to_string())),
        }
    }
}

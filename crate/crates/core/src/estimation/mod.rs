//! Maximum semantic information estimation.
//!
//! Truth functions are fitted by matching them to a Shannon channel: the
//! optimal truth function of a hypothesis is its selecting-rule row
//! `P(h_j|E)` scaled so its maximum is one. Beliefs in general (fuzzy)
//! hypotheses are fitted numerically.

mod golden;
pub mod gps;

use crate::confirmation::{DocCase, DocResult};
use crate::distributions::{bayes_invert, Alphabet, Distribution, NORMALIZATION_TOLERANCE};
use crate::error::{Error, Result};
use crate::semantic_info::average_info_raw;
use crate::truth_functions::{Belief, TruthFunction};

pub use gps::{gps_cep_doc, gps_cep_doc_exact, gps_fit, gps_objective, CepDoc, GpsFit, GpsModel, RingGrid};

/// Shannon channel `P(H|E)`, stored as one selecting-rule row per hypothesis.
///
/// For each evidence `e_i` the values `P(h_j|e_i)` sum to one over `j`; a
/// single row need not sum to anything in particular.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    alphabet: Alphabet,
    hypotheses: Alphabet,
    rows: Vec<Vec<f64>>,
}

impl Channel {
    pub fn new(alphabet: Alphabet, hypotheses: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tolerance(alphabet, hypotheses, rows, NORMALIZATION_TOLERANCE)
    }

    pub fn with_tolerance(
        alphabet: Alphabet,
        hypotheses: Vec<String>,
        rows: Vec<Vec<f64>>,
        tolerance: f64,
    ) -> Result<Self> {
        let hypotheses = Alphabet::new(hypotheses)?;
        if rows.len() != hypotheses.len() {
            return Err(Error::IndexMismatch {
                expected: hypotheses.len(),
                found: rows.len(),
            });
        }
        for row in &rows {
            if row.len() != alphabet.len() {
                return Err(Error::LengthMismatch {
                    expected: alphabet.len(),
                    found: row.len(),
                });
            }
            for &v in row {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidProbability(v));
                }
            }
        }
        for i in 0..alphabet.len() {
            let sum: f64 = rows.iter().map(|r| r[i]).sum();
            if (sum - 1.0).abs() > tolerance {
                return Err(Error::NotNormalized { sum });
            }
        }
        Ok(Self {
            alphabet,
            hypotheses,
            rows,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn hypotheses(&self) -> &Alphabet {
        &self.hypotheses
    }

    pub fn hypothesis_count(&self) -> usize {
        self.rows.len()
    }

    /// Selecting-rule function `P(h_j|E)`.
    pub fn row(&self, j: usize) -> &[f64] {
        &self.rows[j]
    }

    /// `P(h_j) = sum_i P(e_i) P(h_j|e_i)` for every hypothesis.
    pub fn selection_probabilities(&self, prior: &Distribution) -> Result<Vec<f64>> {
        prior.alphabet().ensure_same(&self.alphabet)?;
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().zip(prior.probs()).map(|(r, p)| r * p).sum())
            .collect())
    }

    /// Shannon mutual information `I(E; H)` in bits.
    pub fn shannon_mutual_info(&self, prior: &Distribution) -> Result<f64> {
        let selection = self.selection_probabilities(prior)?;
        let mut total = 0.0;
        for (row, &ph) in self.rows.iter().zip(&selection) {
            for (&r, &p) in row.iter().zip(prior.probs()) {
                if r > 0.0 && p > 0.0 {
                    total += p * r * (r / ph).log2();
                }
            }
        }
        Ok(total.max(0.0))
    }

    /// Sampling distribution `P(E|h_j)`.
    pub fn sampling(&self, j: usize, prior: &Distribution) -> Result<Distribution> {
        prior.alphabet().ensure_same(&self.alphabet)?;
        bayes_invert(prior, &self.rows[j])
    }
}

/// Labelled observations `(condition, evidence)`. Each distinct condition
/// tag selects one hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    alphabet: Alphabet,
    conditions: Vec<String>,
    records: Vec<(usize, usize)>,
}

impl SampleSet {
    pub fn new<I, C, L>(alphabet: Alphabet, records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (C, L)>,
        C: Into<String>,
        L: AsRef<str>,
    {
        let mut conditions: Vec<String> = Vec::new();
        let mut out = Vec::new();
        for (condition, label) in records {
            let condition = condition.into();
            let label = alphabet.index_of(label.as_ref())?;
            let c = match conditions.iter().position(|c| *c == condition) {
                Some(c) => c,
                None => {
                    conditions.push(condition);
                    conditions.len() - 1
                }
            };
            out.push((c, label));
        }
        Ok(Self {
            alphabet,
            conditions,
            records: out,
        })
    }

    /// Builds the alphabet from the labels in order of first appearance.
    pub fn from_records<C: Into<String>, L: Into<String>>(records: Vec<(C, L)>) -> Result<Self> {
        let records: Vec<(String, String)> = records.into_iter().map(|(c, l)| (c.into(), l.into())).collect();
        let mut labels: Vec<String> = Vec::new();
        for (_, l) in &records {
            if !labels.contains(l) {
                labels.push(l.clone());
            }
        }
        Self::new(Alphabet::new(labels)?, records)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Condition tags in order of first appearance.
    pub fn conditions(&self) -> &[String] {
        &self.conditions
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Evidence counts `w_i` over records whose condition is in `subset`.
    pub fn counts<S: AsRef<str>>(&self, subset: &[S]) -> Vec<f64> {
        let selected: Vec<bool> = self
            .conditions
            .iter()
            .map(|c| subset.iter().any(|s| s.as_ref() == c))
            .collect();
        let mut counts = vec![0.0; self.alphabet.len()];
        for &(c, l) in &self.records {
            if selected[c] {
                counts[l] += 1.0;
            }
        }
        counts
    }

    /// Evidence frequencies over all records.
    pub fn marginal(&self) -> Result<Distribution> {
        empirical_conditional(self, &self.conditions)
    }

    /// Channel `P(H|E)` synthesized from the per-condition frequencies and
    /// the condition frequencies by Bayes inversion.
    #[allow(clippy::needless_range_loop)]
    pub fn channel(&self) -> Result<Channel> {
        if self.records.is_empty() {
            return Err(Error::EmptyConditionSubset);
        }
        let condition_alphabet = Alphabet::new(self.conditions.iter().cloned())?;
        let mut condition_counts = vec![0.0; self.conditions.len()];
        for &(c, _) in &self.records {
            condition_counts[c] += 1.0;
        }
        let selection = Distribution::from_weights(condition_alphabet, &condition_counts)?;
        let conditionals: Vec<Distribution> = self
            .conditions
            .iter()
            .map(|c| empirical_conditional(self, std::slice::from_ref(c)))
            .collect::<Result<_>>()?;
        let mut rows = vec![vec![0.0; self.alphabet.len()]; self.conditions.len()];
        for i in 0..self.alphabet.len() {
            let likelihoods: Vec<f64> = conditionals.iter().map(|d| d.probs()[i]).collect();
            let posterior = bayes_invert(&selection, &likelihoods)?;
            for (j, p) in posterior.probs().iter().enumerate() {
                rows[j][i] = *p;
            }
        }
        Channel::new(self.alphabet.clone(), self.conditions.clone(), rows)
    }
}

/// Relative frequencies `w_i / w` of the evidence among records whose
/// condition belongs to `condition_subset`.
pub fn empirical_conditional<S: AsRef<str>>(samples: &SampleSet, condition_subset: &[S]) -> Result<Distribution> {
    let counts = samples.counts(condition_subset);
    if counts.iter().all(|&c| c == 0.0) {
        return Err(Error::EmptyConditionSubset);
    }
    Distribution::from_weights(samples.alphabet.clone(), &counts)
}

/// Collapses max-normalized truth values to the simplest equivalent form.
fn simplify(alphabet: &Alphabet, values: Vec<f64>) -> TruthFunction {
    if values.iter().all(|&v| v == 1.0) {
        TruthFunction::tautology()
    } else if values.iter().all(|&v| v == 0.0 || v == 1.0) {
        TruthFunction::crisp(
            values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 1.0)
                .map(|(i, _)| alphabet.label(i).to_string()),
        )
    } else {
        TruthFunction::Tabular(values)
    }
}

fn max_normalize(values: &[f64]) -> Option<Vec<f64>> {
    let max = values.iter().cloned().fold(0.0, f64::max);
    if max > 0.0 {
        Some(values.iter().map(|v| (v / max).min(1.0)).collect())
    } else {
        None
    }
}

/// Optimal truth function of hypothesis `j`: `P(h_j|E) / max_E P(h_j|E)`.
pub fn optimal_truth_function(channel: &Channel, j: usize) -> Result<TruthFunction> {
    if j >= channel.hypothesis_count() {
        return Err(Error::IndexMismatch {
            expected: channel.hypothesis_count(),
            found: j + 1,
        });
    }
    let values = max_normalize(channel.row(j)).ok_or(Error::ZeroRow(j))?;
    Ok(simplify(channel.alphabet(), values))
}

/// Optimal truth function from a sampling distribution and the prior:
/// `[P(E|h_j)/P(E)]` scaled to maximum one. Evidence the prior never
/// produces gets truth value zero.
pub fn optimal_truth_function_from_sampling(sampling: &Distribution, prior: &Distribution) -> Result<TruthFunction> {
    prior.alphabet().ensure_same(sampling.alphabet())?;
    let mut ratios = Vec::with_capacity(prior.len());
    for (i, (&q, &p)) in sampling.probs().iter().zip(prior.probs()).enumerate() {
        if p == 0.0 {
            if q > 0.0 {
                return Err(Error::AbsoluteContinuityViolated {
                    label: prior.alphabet().label(i).to_string(),
                });
            }
            ratios.push(0.0);
        } else {
            ratios.push(q / p);
        }
    }
    let values = max_normalize(&ratios).ok_or(Error::ZeroRow(0))?;
    Ok(simplify(prior.alphabet(), values))
}

/// Bracket width at which the belief search stops.
pub const BELIEF_TOLERANCE: f64 = 1e-9;
const BELIEF_SCAN: usize = 64;
const BELIEF_TIE: f64 = 1e-12;

/// Degree of confirmation of a general hypothesis: the belief `b` in
/// `[-1, 1]` that maximizes the average semantic information of
/// `belief_adjust(base, b)` against `sampling`.
///
/// Each sign branch is searched separately (scan, then golden section);
/// ties with the uninformative `b = 0` resolve to zero.
pub fn optimize_belief(base: &TruthFunction, prior: &Distribution, sampling: &Distribution) -> Result<DocResult> {
    prior.alphabet().ensure_same(sampling.alphabet())?;
    let truth = base.values_on(prior.alphabet())?;
    if truth.iter().all(|&t| t == 0.0) {
        return Err(Error::DegenerateInput("base truth function is identically zero"));
    }
    let mut adjusted = vec![0.0; truth.len()];
    let mut objective = |b: f64| {
        let belief = Belief::new(b.clamp(-1.0, 1.0)).expect("clamped");
        for (a, &t) in adjusted.iter_mut().zip(&truth) {
            *a = belief.apply(t);
        }
        average_info_raw(prior.probs(), &adjusted, sampling.probs()).unwrap_or(f64::NEG_INFINITY)
    };
    let at_zero = objective(0.0);
    let positive = golden::maximize_scanned(&mut objective, 0.0, 1.0, BELIEF_SCAN, BELIEF_TOLERANCE);
    let negative = golden::maximize_scanned(&mut objective, -1.0, 0.0, BELIEF_SCAN, BELIEF_TOLERANCE);
    let (mut b, mut info) = if negative.1 > positive.1 { negative } else { positive };
    // flat objectives (tautologies, sampling equal to the prior) tie with zero
    if !(info > at_zero + BELIEF_TIE * at_zero.abs().max(1.0)) {
        b = 0.0;
        info = at_zero;
    }
    let case = if b >= 0.0 {
        DocCase::ProperAffirmation
    } else {
        DocCase::ExcessiveAffirmation
    };
    Ok(DocResult {
        b_star: b,
        b_prime_star: 1.0 - b.abs(),
        case,
        information_bits: info,
    })
}

/// Fitted reading of one hypothesis in a sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisEstimate {
    pub condition: String,
    pub samples: usize,
    pub sampling: Distribution,
    pub truth_function: TruthFunction,
    /// Average semantic information of the optimal truth function.
    pub information_bits: f64,
    /// Evidence the crisp reading of the hypothesis points at.
    pub target: String,
    /// Degree of confirmation of the crisp reading `{target}`.
    pub doc: DocResult,
}

/// Runs the estimator on every condition of a sample set. The prior
/// defaults to the overall evidence frequencies.
pub fn estimate_hypotheses(samples: &SampleSet, prior: Option<&Distribution>) -> Result<Vec<HypothesisEstimate>> {
    let marginal;
    let prior = match prior {
        Some(p) => {
            p.alphabet().ensure_same(samples.alphabet())?;
            p
        }
        None => {
            marginal = samples.marginal()?;
            &marginal
        }
    };
    samples
        .conditions()
        .iter()
        .map(|condition| {
            let sampling = empirical_conditional(samples, std::slice::from_ref(condition))?;
            let truth_function = optimal_truth_function_from_sampling(&sampling, prior)?;
            let truth = truth_function.values_on(prior.alphabet())?;
            let information_bits = average_info_raw(prior.probs(), &truth, sampling.probs())?;
            let target_index = truth.iter().position(|&t| t == 1.0).unwrap_or(0);
            let target = prior.alphabet().label(target_index).to_string();
            let doc = optimize_belief(&TruthFunction::crisp([target.clone()]), prior, &sampling)?;
            Ok(HypothesisEstimate {
                condition: condition.clone(),
                samples: samples.counts(std::slice::from_ref(condition)).iter().sum::<f64>() as usize,
                sampling,
                truth_function,
                information_bits,
                target,
                doc,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confirmation::{doc_from_rates, RateSpec};
    use crate::distributions::kl_divergence;
    use crate::truth_functions::semantic_bayes;

    fn birds() -> SampleSet {
        let mut records = Vec::new();
        for (c, l, n) in [("yellow", "e1", 83), ("yellow", "e0", 57), ("other", "e1", 17), ("other", "e0", 686)] {
            records.extend(std::iter::repeat_n((c, l), n));
        }
        SampleSet::new(Alphabet::binary(), records).unwrap()
    }

    #[test]
    fn empirical_conditional_examples() {
        let samples = birds();
        let d = empirical_conditional(&samples, &["yellow"]).unwrap();
        assert!((d.probs()[0] - 0.5929).abs() < 1e-4);
        assert!((d.probs()[1] - 0.4071).abs() < 1e-4);

        let one = SampleSet::new(Alphabet::binary(), [("z", "e1")]).unwrap();
        assert_eq!(empirical_conditional(&one, &["z"]).unwrap().probs(), &[1.0, 0.0]);
        assert_eq!(
            empirical_conditional(&samples, &["missing"]),
            Err(Error::EmptyConditionSubset)
        );
        assert!(matches!(
            SampleSet::new(Alphabet::binary(), [("z", "e7")]),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn optimal_truth_function_examples() {
        let a = Alphabet::binary();
        let channel = Channel::new(
            a.clone(),
            vec!["h1".into(), "h0".into()],
            vec![vec![0.830, 0.0767], vec![0.170, 0.9233]],
        )
        .unwrap();
        let tf = optimal_truth_function(&channel, 0).unwrap();
        let v = tf.values_on(&a).unwrap();
        assert_eq!(v[0], 1.0);
        assert!((v[1] - 0.0924).abs() < 1e-4);

        let flat = Channel::new(a.clone(), vec!["h".into(), "g".into()], vec![vec![0.4, 0.4], vec![0.6, 0.6]]).unwrap();
        assert_eq!(optimal_truth_function(&flat, 0).unwrap(), TruthFunction::tautology());

        let onehot = Channel::new(a.clone(), vec!["h".into(), "g".into()], vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(optimal_truth_function(&onehot, 0).unwrap(), TruthFunction::crisp(["e0"]));

        let zero = Channel::new(a, vec!["h".into(), "g".into()], vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(optimal_truth_function(&zero, 0), Err(Error::ZeroRow(0)));
    }

    #[test]
    fn channel_rejects_unnormalized_columns() {
        let r = Channel::new(Alphabet::binary(), vec!["h".into()], vec![vec![0.5, 1.0]]);
        assert!(matches!(r, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn samples_channel_reproduces_birds_table() {
        let channel = birds().channel().unwrap();
        assert!((channel.row(0)[0] - 0.830).abs() < 1e-3);
        assert!((channel.row(0)[1] - 0.0767).abs() < 1e-4);
        let tf = optimal_truth_function(&channel, 0).unwrap();
        assert!((tf.values_on(channel.alphabet()).unwrap()[1] - 0.0924).abs() < 5e-4);
    }

    #[test]
    fn estimates_for_birds() {
        let estimates = estimate_hypotheses(&birds(), None).unwrap();
        let yellow = &estimates[0];
        assert_eq!(yellow.condition, "yellow");
        assert_eq!(yellow.samples, 140);
        assert_eq!(yellow.target, "e1");
        assert!((yellow.doc.b_star - 0.908).abs() < 5e-4);
        assert!((yellow.information_bits - yellow.doc.information_bits).abs() < 1e-9);
    }

    #[test]
    fn single_uniform_condition_is_a_tautology() {
        let a = Alphabet::new(["x", "y", "z"]).unwrap();
        let samples = SampleSet::new(a, [("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
        let est = estimate_hypotheses(&samples, None).unwrap();
        assert_eq!(est[0].truth_function, TruthFunction::tautology());
        assert_eq!(est[0].doc.b_star, 0.0);
        assert_eq!(est[0].information_bits, 0.0);
    }

    #[test]
    fn optimize_belief_matches_closed_form() {
        // P0/P1 = 0.8/0.2 against Q0/Q1 = 0.25/0.75: the negative branch
        let spec = RateSpec::new(0.8, 0.2, 0.25, 0.75).unwrap();
        let closed = doc_from_rates(&spec).unwrap();
        let numeric = optimize_belief(&TruthFunction::crisp(["e1"]), &spec.prior(), &spec.sampling()).unwrap();
        assert!((numeric.b_star - closed.b_star).abs() < 1e-6);
        assert!((numeric.information_bits - closed.information_bits).abs() < 1e-9);
        assert_eq!(numeric.case, closed.case);
    }

    #[test]
    fn optimize_belief_on_tautology_returns_zero() {
        let prior = Distribution::binary(0.3).unwrap();
        let sampling = Distribution::binary(0.6).unwrap();
        let doc = optimize_belief(&TruthFunction::tautology(), &prior, &sampling).unwrap();
        assert_eq!(doc.b_star, 0.0);
        assert_eq!(doc.information_bits, 0.0);
        assert!(matches!(
            optimize_belief(&TruthFunction::contradiction(), &prior, &sampling),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn optimize_belief_keeps_an_already_optimal_base() {
        let a = Alphabet::indexed(4).unwrap();
        let prior = Distribution::new(a, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let base = TruthFunction::tabular(vec![1.0, 0.5, 0.2, 0.05]).unwrap();
        let sampling = semantic_bayes(&prior, &base).unwrap();
        let doc = optimize_belief(&base, &prior, &sampling).unwrap();
        assert!((doc.b_star - 1.0).abs() < 1e-6);
        let kl = kl_divergence(&sampling, &prior).unwrap();
        assert!((doc.information_bits - kl).abs() < 1e-9);
    }
}

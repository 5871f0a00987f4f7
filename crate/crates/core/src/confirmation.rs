//! Degree of confirmation for universal hypotheses.
//!
//! A universal hypothesis "if E is in S1 then E is in S2" is scored over the
//! binary evidence alphabet `[e1, e0]` (in S2, not in S2). The degree of
//! confirmation `b*` is the degree of belief that maximizes average semantic
//! information; it has closed forms in every sign case, collected here.

use crate::distributions::{bayes_invert, Distribution};
use crate::error::{Error, Result};
use crate::semantic_info::average_info_raw;
use crate::truth_functions::Belief;

/// Whether a hypothesis asserts the positive evidence `e1` or denies it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stance {
    Affirmation,
    Negation,
}

/// The four sign cases of a degree of confirmation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DocCase {
    /// Counterexamples are rarer than the prior suggests; `b* >= 0`.
    ProperAffirmation,
    /// The hypothesis overstates its case; `b* <= 0`.
    ExcessiveAffirmation,
    ProperNegation,
    ExcessiveNegation,
}

impl DocCase {
    pub fn as_str(self) -> &'static str {
        match self {
            DocCase::ProperAffirmation => "proper-affirmation",
            DocCase::ExcessiveAffirmation => "excessive-affirmation",
            DocCase::ProperNegation => "proper-negation",
            DocCase::ExcessiveNegation => "excessive-negation",
        }
    }

    fn of(stance: Stance, proper: bool) -> Self {
        match (stance, proper) {
            (Stance::Affirmation, true) => DocCase::ProperAffirmation,
            (Stance::Affirmation, false) => DocCase::ExcessiveAffirmation,
            (Stance::Negation, true) => DocCase::ProperNegation,
            (Stance::Negation, false) => DocCase::ExcessiveNegation,
        }
    }

    pub fn is_proper(self) -> bool {
        matches!(self, DocCase::ProperAffirmation | DocCase::ProperNegation)
    }
}

impl std::fmt::Display for DocCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Optimized belief without the information it achieves. This is all that
/// is defined when no prior over the evidence is at hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Confirmation {
    pub b_star: f64,
    pub b_prime_star: f64,
    pub case: DocCase,
}

impl Confirmation {
    /// Closed form from a selecting rule: `on_positive` and `on_counter` are
    /// `P(h|positive example)` and `P(h|counterexample)`, up to a common
    /// positive factor.
    pub fn from_selecting_rule(on_positive: f64, on_counter: f64, stance: Stance) -> Result<Self> {
        if !(on_positive >= 0.0 && on_counter >= 0.0) || !on_positive.is_finite() || !on_counter.is_finite() {
            return Err(Error::DegenerateRates("selecting rule must be finite and non-negative"));
        }
        if on_positive == 0.0 && on_counter == 0.0 {
            return Err(Error::DegenerateRates("hypothesis is never selected"));
        }
        if on_counter <= on_positive {
            let b_prime = on_counter / on_positive;
            Ok(Self {
                b_star: 1.0 - b_prime,
                b_prime_star: b_prime,
                case: DocCase::of(stance, true),
            })
        } else {
            let b_prime = on_positive / on_counter;
            Ok(Self {
                b_star: b_prime - 1.0,
                b_prime_star: b_prime,
                case: DocCase::of(stance, false),
            })
        }
    }

    pub fn belief(&self) -> Belief {
        Belief::new(self.b_star.clamp(-1.0, 1.0)).expect("clamped")
    }

    pub fn with_information(self, information_bits: f64) -> DocResult {
        DocResult {
            b_star: self.b_star,
            b_prime_star: self.b_prime_star,
            case: self.case,
            information_bits,
        }
    }
}

/// Degree of confirmation with the average semantic information it attains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DocResult {
    pub b_star: f64,
    pub b_prime_star: f64,
    pub case: DocCase,
    pub information_bits: f64,
}

impl DocResult {
    pub fn confirmation(&self) -> Confirmation {
        Confirmation {
            b_star: self.b_star,
            b_prime_star: self.b_prime_star,
            case: self.case,
        }
    }
}

/// Prior and posterior odds of counterexamples: `P0 = P(e0)`, `P1 = P(e1)`,
/// `Q0 = P(e0|h1)`, `Q1 = P(e1|h1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSpec {
    pub p0: f64,
    pub p1: f64,
    pub q0: f64,
    pub q1: f64,
}

impl RateSpec {
    pub fn new(p0: f64, p1: f64, q0: f64, q1: f64) -> Result<Self> {
        let prior = Distribution::new(crate::distributions::Alphabet::binary(), vec![p1, p0])?;
        let posterior = Distribution::new(crate::distributions::Alphabet::binary(), vec![q1, q0])?;
        Ok(Self {
            p0: prior.probs()[1],
            p1: prior.probs()[0],
            q0: posterior.probs()[1],
            q1: posterior.probs()[0],
        })
    }

    /// Prior `P(E)` over `[e1, e0]`.
    pub fn prior(&self) -> Distribution {
        Distribution::from_parts_unchecked(crate::distributions::Alphabet::binary(), vec![self.p1, self.p0])
    }

    /// Sampling distribution `P(E|h1)` over `[e1, e0]`.
    pub fn sampling(&self) -> Distribution {
        Distribution::from_parts_unchecked(crate::distributions::Alphabet::binary(), vec![self.q1, self.q0])
    }

    /// Swaps the roles of `e1` and `e0`.
    pub fn transposed(&self) -> Self {
        Self {
            p0: self.p1,
            p1: self.p0,
            q0: self.q1,
            q1: self.q0,
        }
    }

    fn check_prior(&self) -> Result<()> {
        if self.p1 <= 0.0 || self.p0 <= 0.0 {
            Err(Error::DegenerateRates("prior must give both e1 and e0 positive mass"))
        } else {
            Ok(())
        }
    }
}

/// Average information of a crisp binary hypothesis at belief `b`.
/// `asserts_e1` picks the base `[1, 0]` (h1) or `[0, 1]` (its denial).
fn binary_information(rates: &RateSpec, asserts_e1: bool, belief: Belief) -> Result<f64> {
    let base = if asserts_e1 { [1.0, 0.0] } else { [0.0, 1.0] };
    let truth = [belief.apply(base[0]), belief.apply(base[1])];
    average_info_raw(&[rates.p1, rates.p0], &truth, &[rates.q1, rates.q0])
}

/// Degree of confirmation of `h1` from prior and posterior rates.
///
/// When `Q0/Q1 <= P0/P1` the degree of disbelief is `(Q0/Q1)/(P0/P1)` and
/// `b* = 1 - b'*`; otherwise it is `(P0/P1)/(Q0/Q1)` and `b* = b'* - 1`.
pub fn doc_from_rates(spec: &RateSpec) -> Result<DocResult> {
    spec.check_prior()?;
    // cross-multiplied to keep the boundary exact
    let confirmation =
        Confirmation::from_selecting_rule(spec.q1 * spec.p0, spec.q0 * spec.p1, Stance::Affirmation)?;
    let info = binary_information(spec, true, confirmation.belief())?;
    Ok(confirmation.with_information(info))
}

/// Degree of confirmation of the denial `h0 = not h1` under the same rates.
pub fn doc_denial_from_rates(spec: &RateSpec) -> Result<DocResult> {
    spec.check_prior()?;
    let counter_odds = spec.q0 * spec.p1; // (Q0/Q1)/(P0/P1), numerator
    let prior_odds = spec.q1 * spec.p0; // ... and denominator
    let confirmation = if counter_odds <= prior_odds {
        let ratio = counter_odds / prior_odds;
        Confirmation {
            b_star: ratio - 1.0,
            b_prime_star: ratio,
            case: DocCase::ExcessiveNegation,
        }
    } else {
        let ratio = prior_odds / counter_odds;
        Confirmation {
            b_star: 1.0 - ratio,
            b_prime_star: ratio,
            case: DocCase::ProperNegation,
        }
    };
    let info = binary_information(spec, false, confirmation.belief())?;
    Ok(confirmation.with_information(info))
}

/// 2x2 table of evidence counts for "if in S1 then in S2".
///
/// `n11`: in S1 and S2; `n10`: in S1, not S2 (counterexamples);
/// `n01`: not S1, in S2; `n00`: neither. Counts are real-valued so that
/// derivatives with respect to them make sense.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContingencyTable {
    pub n11: f64,
    pub n10: f64,
    pub n01: f64,
    pub n00: f64,
}

impl ContingencyTable {
    pub fn new(n11: f64, n10: f64, n01: f64, n00: f64) -> Result<Self> {
        for n in [n11, n10, n01, n00] {
            if !(n.is_finite() && n >= 0.0) {
                return Err(Error::InvalidCount(n));
            }
        }
        if n11 + n10 + n01 + n00 <= 0.0 {
            return Err(Error::DegenerateInput("contingency table is empty"));
        }
        Ok(Self { n11, n10, n01, n00 })
    }

    /// Expected counts for a diagnostic test applied to `total` subjects of
    /// whom a fraction `prevalence` carry the condition.
    pub fn from_test(sensitivity: f64, specificity: f64, prevalence: f64, total: f64) -> Result<Self> {
        let sick = total * prevalence;
        let healthy = total - sick;
        Self::new(
            sick * sensitivity,
            healthy * (1.0 - specificity),
            sick * (1.0 - sensitivity),
            healthy * specificity,
        )
    }

    pub fn total(&self) -> f64 {
        self.n11 + self.n10 + self.n01 + self.n00
    }

    /// The table seen by the contrapositive `not S2 -> not S1`: positive and
    /// negative examples trade places.
    pub fn contrapositive(&self) -> Self {
        Self {
            n11: self.n00,
            n10: self.n10,
            n01: self.n01,
            n00: self.n11,
        }
    }

    fn check_margins(&self) -> Result<()> {
        if self.n11 + self.n10 <= 0.0 {
            return Err(Error::EmptyRow);
        }
        if self.n11 + self.n01 <= 0.0 || self.n10 + self.n00 <= 0.0 {
            return Err(Error::EmptyColumn);
        }
        Ok(())
    }

    /// Column marginals as prior, the S1 row as sampling distribution.
    pub fn rates(&self) -> Result<RateSpec> {
        self.check_margins()?;
        let n = self.total();
        let row = self.n11 + self.n10;
        Ok(RateSpec {
            p0: (self.n10 + self.n00) / n,
            p1: (self.n11 + self.n01) / n,
            q0: self.n10 / row,
            q1: self.n11 / row,
        })
    }
}

/// Degree of confirmation of `h1 = s1 -> s2` from counts:
/// `b'* = [n10/(n00+n10)] / [n11/(n01+n11)]`.
pub fn doc_h1_from_table(t: &ContingencyTable) -> Result<DocResult> {
    let rates = t.rates()?;
    let confirmation = Confirmation::from_selecting_rule(
        t.n11 * (t.n00 + t.n10),
        t.n10 * (t.n01 + t.n11),
        Stance::Affirmation,
    )?;
    let info = binary_information(&rates, true, confirmation.belief())?;
    Ok(confirmation.with_information(info))
}

/// Degree of confirmation of the contrapositive `h2 = not s2 -> not s1`:
/// `b2'* = [n10/(n11+n10)] / [n00/(n01+n00)]`. Differs from `h1` in general.
pub fn doc_h2_from_table(t: &ContingencyTable) -> Result<DocResult> {
    doc_h1_from_table(&t.contrapositive())
}

/// Degrees of confirmation for both outcomes of a diagnostic test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestDoc {
    pub sensitivity: f64,
    pub specificity: f64,
    /// The positive result, read as "has the condition".
    pub positive: Confirmation,
    /// The negative result, read as "does not have the condition".
    pub negative: Confirmation,
}

/// `b+* = 1 - (1 - specificity)/sensitivity` and
/// `b-* = 1 - (1 - sensitivity)/specificity`, switching to the negative
/// branch when a ratio exceeds one. No prior enters.
pub fn doc_from_test(sensitivity: f64, specificity: f64) -> Result<TestDoc> {
    if !(sensitivity > 0.0) {
        return Err(Error::ZeroSensitivity);
    }
    for v in [sensitivity, specificity] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidProbability(v));
        }
    }
    let positive = Confirmation::from_selecting_rule(sensitivity, 1.0 - specificity, Stance::Affirmation)?;
    let negative = Confirmation::from_selecting_rule(specificity, 1.0 - sensitivity, Stance::Negation)?;
    Ok(TestDoc {
        sensitivity,
        specificity,
        positive,
        negative,
    })
}

impl TestDoc {
    /// Attaches the information each result conveys when the condition has
    /// prevalence `prior_e1`.
    pub fn with_prior(&self, prior_e1: f64) -> Result<(DocResult, DocResult)> {
        if !(prior_e1 > 0.0 && prior_e1 < 1.0) {
            return Err(Error::InvalidProbability(prior_e1));
        }
        let prior = Distribution::binary(prior_e1)?;
        let positive_sampling = bayes_invert(&prior, &[self.sensitivity, 1.0 - self.specificity])?;
        let negative_sampling = bayes_invert(&prior, &[1.0 - self.sensitivity, self.specificity])?;
        let rates_for = |s: &Distribution| RateSpec {
            p0: prior.probs()[1],
            p1: prior.probs()[0],
            q0: s.probs()[1],
            q1: s.probs()[0],
        };
        let pos_info = binary_information(&rates_for(&positive_sampling), true, self.positive.belief())?;
        let neg_info = binary_information(&rates_for(&negative_sampling), false, self.negative.belief())?;
        Ok((
            self.positive.with_information(pos_info),
            self.negative.with_information(neg_info),
        ))
    }
}

/// Predicted probability of `e1` once the hypothesis is believed to degree
/// `1 - b'*`: `P(e1) / (P(e1) + b'* P(e0))`.
pub fn predicted_probability(p_e1: f64, b_prime_star: f64) -> Result<f64> {
    for v in [p_e1, b_prime_star] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidProbability(v));
        }
    }
    let denominator = p_e1 + b_prime_star * (1.0 - p_e1);
    if denominator == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(p_e1 / denominator)
}

/// How much one more `e11` or one more `e00` raises `b1*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RavenIncrements {
    pub d_b1_d_n11: f64,
    pub d_b1_d_n00: f64,
}

/// Partial derivatives of `b1* = 1 - b1'*` with respect to `n11` and `n00`.
pub fn raven_increments(t: &ContingencyTable) -> Result<RavenIncrements> {
    if t.n11 <= 0.0 {
        return Err(Error::ZeroPositiveExamples);
    }
    let e0_column = t.n00 + t.n10;
    if e0_column <= 0.0 {
        return Err(Error::EmptyColumn);
    }
    Ok(RavenIncrements {
        d_b1_d_n11: t.n10 * t.n01 / (e0_column * t.n11 * t.n11),
        d_b1_d_n00: t.n10 * (t.n01 + t.n11) / (t.n11 * e0_column * e0_column),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::kl_divergence;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn rates_positive_case() {
        let spec = RateSpec::new(0.2, 0.8, 0.01, 0.99).unwrap();
        let doc = doc_from_rates(&spec).unwrap();
        close(doc.b_prime_star, 0.0404, 1e-4);
        close(doc.b_star, 0.9596, 1e-4);
        assert_eq!(doc.case, DocCase::ProperAffirmation);
        close(doc.information_bits, 0.2611, 1e-3);
    }

    #[test]
    fn rates_negative_case() {
        let spec = RateSpec::new(0.01, 0.99, 0.05, 0.95).unwrap();
        let doc = doc_from_rates(&spec).unwrap();
        close(doc.b_prime_star, 0.192, 1e-3);
        close(doc.b_star, -0.808, 1e-3);
        assert_eq!(doc.case, DocCase::ExcessiveAffirmation);
        close(doc.information_bits, 0.060, 1e-3);
    }

    #[test]
    fn rates_boundary_is_uninformative() {
        let spec = RateSpec::new(0.3, 0.7, 0.3, 0.7).unwrap();
        let doc = doc_from_rates(&spec).unwrap();
        assert_eq!(doc.b_star, 0.0);
        assert_eq!(doc.b_prime_star, 1.0);
        assert_eq!(doc.case, DocCase::ProperAffirmation);
        assert_eq!(doc.information_bits, 0.0);
    }

    #[test]
    fn rates_extremes() {
        // no counterexamples at all
        let doc = doc_from_rates(&RateSpec::new(0.4, 0.6, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!((doc.b_star, doc.b_prime_star), (1.0, 0.0));
        // only counterexamples
        let spec = RateSpec::new(0.4, 0.6, 1.0, 0.0).unwrap();
        let doc = doc_from_rates(&spec).unwrap();
        assert_eq!((doc.b_star, doc.b_prime_star), (-1.0, 0.0));
        close(doc.information_bits, kl_divergence(&spec.sampling(), &spec.prior()).unwrap(), 1e-12);

        assert!(matches!(
            doc_from_rates(&RateSpec::new(0.0, 1.0, 0.0, 1.0).unwrap()),
            Err(Error::DegenerateRates(_))
        ));
        assert!(RateSpec::new(0.5, 0.6, 0.1, 0.9).is_err());
    }

    #[test]
    fn denial_mirrors_affirmation() {
        let spec = RateSpec::new(0.2, 0.8, 0.01, 0.99).unwrap();
        let h1 = doc_from_rates(&spec).unwrap();
        let h0 = doc_denial_from_rates(&spec).unwrap();
        close(h0.b_star, -h1.b_star, 1e-15);
        assert_eq!(h0.case, DocCase::ExcessiveNegation);
        close(h0.information_bits, h1.information_bits, 1e-12);

        let spec = RateSpec::new(0.01, 0.99, 0.05, 0.95).unwrap();
        let h0 = doc_denial_from_rates(&spec).unwrap();
        assert_eq!(h0.case, DocCase::ProperNegation);
        close(h0.b_star, 0.808, 1e-3);
    }

    #[test]
    fn birds_table() {
        let t = ContingencyTable::new(83.0, 57.0, 17.0, 686.0).unwrap();
        let doc = doc_h1_from_table(&t).unwrap();
        close(doc.b_prime_star, 0.0924, 5e-4);
        close(doc.b_star, 0.908, 5e-4);
        let kl = kl_divergence(&t.rates().unwrap().sampling(), &t.rates().unwrap().prior()).unwrap();
        close(doc.information_bits, kl, 1e-9);
        close(doc.information_bits, 0.921, 2e-3);

        let h2 = doc_h2_from_table(&t).unwrap();
        close(h2.b_prime_star, (57.0 / 140.0) / (686.0 / 703.0), 1e-12);
        close(h2.b_prime_star, 0.4173, 1e-3);
    }

    #[test]
    fn fatty_liver_table() {
        let t = ContingencyTable::new(25.0, 16.0, 41.0, 60.0).unwrap();
        let doc = doc_h1_from_table(&t).unwrap();
        close(doc.b_star, 0.444, 1e-3);
    }

    #[test]
    fn table_without_counterexamples() {
        let t = ContingencyTable::new(12.0, 0.0, 5.0, 40.0).unwrap();
        assert_eq!(doc_h1_from_table(&t).unwrap().b_star, 1.0);
        assert_eq!(doc_h2_from_table(&t).unwrap().b_star, 1.0);
    }

    #[test]
    fn symmetric_table_has_equal_contrapositive() {
        let t = ContingencyTable::new(30.0, 4.0, 4.0, 30.0).unwrap();
        close(
            doc_h1_from_table(&t).unwrap().b_star,
            doc_h2_from_table(&t).unwrap().b_star,
            1e-15,
        );
    }

    #[test]
    fn table_errors() {
        assert_eq!(
            doc_h1_from_table(&ContingencyTable::new(0.0, 0.0, 3.0, 4.0).unwrap()),
            Err(Error::EmptyRow)
        );
        assert_eq!(
            doc_h1_from_table(&ContingencyTable::new(3.0, 0.0, 3.0, 0.0).unwrap()),
            Err(Error::EmptyColumn)
        );
        assert!(ContingencyTable::new(-1.0, 0.0, 3.0, 0.0).is_err());
        assert!(ContingencyTable::new(0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn hiv_test() {
        let doc = doc_from_test(0.917, 0.999).unwrap();
        close(doc.positive.b_star, 0.9989, 1e-4);
        close(doc.negative.b_star, 0.917, 1e-3);
        assert_eq!(doc.negative.case, DocCase::ProperNegation);

        let (pos, _neg) = doc.with_prior(0.004).unwrap();
        close(pos.information_bits, 5.52, 0.01);
    }

    #[test]
    fn specificity_dominates_positive_doc() {
        for s in [0.1, 0.5, 0.9] {
            assert_eq!(doc_from_test(s, 1.0).unwrap().positive.b_star, 1.0);
        }
        close(doc_from_test(1.0, 0.5).unwrap().positive.b_star, 0.5, 1e-15);
        assert_eq!(doc_from_test(0.0, 0.9), Err(Error::ZeroSensitivity));
        // worse than chance
        let doc = doc_from_test(0.2, 0.3).unwrap();
        assert_eq!(doc.positive.case, DocCase::ExcessiveAffirmation);
        assert!(doc.positive.b_star < 0.0);
    }

    #[test]
    fn predicted_probability_examples() {
        close(predicted_probability(0.1, 0.0011).unwrap(), 0.991, 1e-3);
        close(predicted_probability(0.37, 1.0).unwrap(), 0.37, 1e-15);
        assert_eq!(predicted_probability(0.37, 0.0).unwrap(), 1.0);
        assert_eq!(predicted_probability(0.0, 0.0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn raven_examples() {
        let t = ContingencyTable::new(40.0, 0.0, 7.0, 1000.0).unwrap();
        let inc = raven_increments(&t).unwrap();
        assert_eq!((inc.d_b1_d_n11, inc.d_b1_d_n00), (0.0, 0.0));

        // n11 = n01 = 10 n10 and n11 > n00 / 1.9
        let t = ContingencyTable::new(100.0, 10.0, 100.0, 180.0).unwrap();
        let inc = raven_increments(&t).unwrap();
        assert!(inc.d_b1_d_n00 > inc.d_b1_d_n11);
        let t = ContingencyTable::new(100.0, 10.0, 100.0, 200.0).unwrap();
        let inc = raven_increments(&t).unwrap();
        assert!(inc.d_b1_d_n00 < inc.d_b1_d_n11);

        assert_eq!(
            raven_increments(&ContingencyTable::new(0.0, 1.0, 2.0, 3.0).unwrap()),
            Err(Error::ZeroPositiveExamples)
        );
    }

    #[test]
    fn raven_matches_finite_differences() {
        let t = ContingencyTable::new(10.0, 1.0, 10.0, 100.0).unwrap();
        let inc = raven_increments(&t).unwrap();
        let h = 1e-4;
        let b = |t: ContingencyTable| doc_h1_from_table(&t).unwrap().b_star;
        let d11 = (b(ContingencyTable { n11: t.n11 + h, ..t }) - b(ContingencyTable { n11: t.n11 - h, ..t })) / (2.0 * h);
        let d00 = (b(ContingencyTable { n00: t.n00 + h, ..t }) - b(ContingencyTable { n00: t.n00 - h, ..t })) / (2.0 * h);
        close(inc.d_b1_d_n11, d11, 1e-6);
        close(inc.d_b1_d_n00, d00, 1e-6);
    }
}

//! Worked examples with their published values, recomputed from scratch.
//!
//! Two published figures disagree with the formulas applied to their own
//! inputs; those checks carry a note and never count as failures.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::confirmation::{
    doc_from_rates, doc_from_test, doc_h1_from_table, predicted_probability, ContingencyTable, RateSpec,
};
use crate::distributions::{bayes_invert, kl_divergence, Distribution};
use crate::error::Result;
use crate::estimation::gps_cep_doc;

/// Bird counts `n11, n10, n01, n00`.
pub const BIRDS: [f64; 4] = [83.0, 57.0, 17.0, 686.0];
/// Fatty liver counts.
pub const FATTY_LIVER: [f64; 4] = [25.0, 16.0, 41.0, 60.0];
/// HIV test: sensitivity, specificity, prevalence.
pub const HIV_TEST: [f64; 3] = [0.917, 0.999, 0.004];

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Exact(BigRational),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Real(v) => *v,
            Value::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Real(v) => write!(f, "{v}"),
            Value::Exact(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Match,
    Mismatch,
    /// The published figure is known not to follow from its inputs.
    Discrepancy,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Match => "match",
            CheckStatus::Mismatch => "mismatch",
            CheckStatus::Discrepancy => "discrepancy",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCheck {
    pub case: &'static str,
    pub quantity: &'static str,
    pub published: Value,
    pub computed: Value,
    pub tolerance: f64,
    pub status: CheckStatus,
    pub note: Option<&'static str>,
}

impl ReferenceCheck {
    /// Absolute difference; exactly zero for equal rationals.
    pub fn delta(&self) -> f64 {
        match (&self.published, &self.computed) {
            (Value::Exact(a), Value::Exact(b)) => (a - b).to_f64().unwrap_or(f64::NAN).abs(),
            (a, b) => (a.to_f64() - b.to_f64()).abs(),
        }
    }
}

struct Builder(Vec<ReferenceCheck>);

impl Builder {
    fn real(&mut self, case: &'static str, quantity: &'static str, published: f64, computed: f64, tolerance: f64) {
        self.push(case, quantity, Value::Real(published), Value::Real(computed), tolerance, None);
    }

    fn known(&mut self, case: &'static str, quantity: &'static str, published: f64, computed: f64, note: &'static str) {
        self.push(case, quantity, Value::Real(published), Value::Real(computed), 0.0, Some(note));
    }

    fn push(
        &mut self,
        case: &'static str,
        quantity: &'static str,
        published: Value,
        computed: Value,
        tolerance: f64,
        note: Option<&'static str>,
    ) {
        let mut check = ReferenceCheck {
            case,
            quantity,
            published,
            computed,
            tolerance,
            status: CheckStatus::Match,
            note,
        };
        check.status = if note.is_some() {
            CheckStatus::Discrepancy
        } else if check.delta() <= tolerance {
            CheckStatus::Match
        } else {
            CheckStatus::Mismatch
        };
        self.0.push(check);
    }
}

pub const FATTY_LIVER_NOTE: &str = "published 0.025 bit does not follow from the table counts";
pub const HIV_NEGATIVE_NOTE: &str = "published 0.04 bit; prevalence 0.004 gives about 0.004 bit";

fn table(counts: [f64; 4]) -> Result<ContingencyTable> {
    ContingencyTable::new(counts[0], counts[1], counts[2], counts[3])
}

/// Recomputes every published number.
pub fn reference_checks() -> Result<Vec<ReferenceCheck>> {
    let mut b = Builder(Vec::new());

    let birds = table(BIRDS)?;
    let doc = doc_h1_from_table(&birds)?;
    let h1_given_e1 = BIRDS[0] / (BIRDS[0] + BIRDS[2]);
    let h1_given_e0 = BIRDS[1] / (BIRDS[1] + BIRDS[3]);
    b.real("birds", "P(h1|e1)", 0.830, h1_given_e1, 1e-3);
    b.real("birds", "P(h1|e0)", 0.0767, h1_given_e0, 1e-4);
    b.real("birds", "b'*", 0.0924, doc.b_prime_star, 5e-4);
    b.real("birds", "b*", 0.908, doc.b_star, 5e-4);
    b.real("birds", "information (bit)", 0.923, doc.information_bits, 3e-3);

    let liver = table(FATTY_LIVER)?;
    let doc = doc_h1_from_table(&liver)?;
    b.real("fatty-liver", "b'*", 0.556, doc.b_prime_star, 1e-3);
    b.real("fatty-liver", "b*", 0.444, doc.b_star, 1e-3);
    b.known("fatty-liver", "information (bit)", 0.025, doc.information_bits, FATTY_LIVER_NOTE);

    let [sens, spec, prevalence] = HIV_TEST;
    let test = doc_from_test(sens, spec)?;
    let (positive, negative) = test.with_prior(prevalence)?;
    b.real("hiv", "b+'*", 0.0011, test.positive.b_prime_star, 1e-4);
    b.real("hiv", "b+*", 0.9989, test.positive.b_star, 1e-4);
    b.real("hiv", "b-'*", 0.083, test.negative.b_prime_star, 1e-3);
    b.real("hiv", "b-*", 0.917, test.negative.b_star, 1e-3);
    let sampling = bayes_invert(&Distribution::binary(prevalence)?, &[sens, 1.0 - spec])?;
    b.real("hiv", "P(e1|+)", 0.786, sampling.probs()[0], 2e-3);
    b.real("hiv", "information of + (bit)", 5.52, positive.information_bits, 1e-2);
    b.known("hiv", "information of - (bit)", 0.04, negative.information_bits, HIV_NEGATIVE_NOTE);
    b.real(
        "hiv",
        "P(e1|+) at prevalence 0.1",
        0.991,
        predicted_probability(0.1, test.positive.b_prime_star)?,
        1e-3,
    );

    let rates = RateSpec::new(0.2, 0.8, 0.01, 0.99)?;
    let swans = doc_from_rates(&rates)?;
    b.real("swans-positive", "b'*", 0.0404, swans.b_prime_star, 1e-4);
    b.real("swans-positive", "b*", 0.9596, swans.b_star, 1e-4);
    let kl = kl_divergence(&rates.sampling(), &rates.prior())?;
    b.real("swans-positive", "KL information (bit)", 0.2611, kl, 1e-3);
    b.real("swans-positive", "information (bit)", 0.2611, swans.information_bits, 1e-3);

    let rates = RateSpec::new(0.01, 0.99, 0.05, 0.95)?;
    let swans = doc_from_rates(&rates)?;
    b.real("swans-negative", "b''", 0.192, swans.b_prime_star, 1e-3);
    b.real("swans-negative", "b*", -0.808, swans.b_star, 1e-3);
    let kl = kl_divergence(&rates.sampling(), &rates.prior())?;
    b.real("swans-negative", "KL information (bit)", 0.060, kl, 1e-3);
    b.real("swans-negative", "information (bit)", 0.060, swans.information_bits, 1e-3);

    let cep = gps_cep_doc(0.5, 7, 7000)?;
    let ratio = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    b.push(
        "gps-cep",
        "b*",
        Value::Exact(ratio(998, 999)),
        Value::Exact(cep.b_star_exact),
        0.0,
        None,
    );
    b.push(
        "gps-cep",
        "b'*",
        Value::Exact(ratio(1, 999)),
        Value::Exact(cep.b_prime_star_exact),
        0.0,
        None,
    );
    Ok(b.0)
}

/// Published information figure for a known table, if any.
pub fn published_information(t: &ContingencyTable) -> Option<f64> {
    let counts = [t.n11, t.n10, t.n01, t.n00];
    if counts == BIRDS {
        Some(0.923)
    } else if counts == FATTY_LIVER {
        Some(0.025)
    } else {
        None
    }
}

use std::fs;
use std::path::Path;

use semcal::casebook::{self, CheckStatus};
use semcal::*;
use serde::Deserialize;

use crate::input;
use crate::report::{format_number, Reference, ReportRecord, Unit, Value};
use crate::CliError;

fn push_doc(r: &mut ReportRecord, prefix: &str, d: &DocResult) {
    r.output(format!("{prefix}.b_star"), d.b_star, Unit::Dimensionless);
    r.output(format!("{prefix}.b_prime_star"), d.b_prime_star, Unit::Dimensionless);
    r.output(format!("{prefix}.case"), d.case.as_str(), Unit::Label);
    r.output(format!("{prefix}.information_bits"), d.information_bits, Unit::Bits);
}

fn push_confirmation(r: &mut ReportRecord, prefix: &str, c: &Confirmation) {
    r.output(format!("{prefix}.b_star"), c.b_star, Unit::Dimensionless);
    r.output(format!("{prefix}.b_prime_star"), c.b_prime_star, Unit::Dimensionless);
    r.output(format!("{prefix}.case"), c.case.as_str(), Unit::Label);
}

pub fn doc_table(text: &str) -> Result<ReportRecord, CliError> {
    let [n11, n10, n01, n00] = input::numbers::<4>(text, "--table")?;
    let table = ContingencyTable::new(n11, n10, n01, n00)?;
    let mut r = ReportRecord::new("doc");
    r.input("table", text.trim());
    let h1 = doc_h1_from_table(&table)?;
    push_doc(&mut r, "h1", &h1);
    match doc_h2_from_table(&table) {
        Ok(h2) => push_doc(&mut r, "h2", &h2),
        Err(e) => r.warn(format!("h2: {e}")),
    }
    match raven_increments(&table) {
        Ok(inc) => {
            r.output("raven.d_b1_d_n11", inc.d_b1_d_n11, Unit::Dimensionless);
            r.output("raven.d_b1_d_n00", inc.d_b1_d_n00, Unit::Dimensionless);
            if h1.b_star < 0.0 {
                r.warn("raven increments describe the positive branch; h1 has negative belief here");
            }
        }
        Err(e) => r.warn(format!("raven increments: {e}")),
    }
    if let Some(published) = casebook::published_information(&table) {
        let delta = (published - h1.information_bits).abs();
        let mut w = format!(
            "published information {published} bit differs from the recomputed {} bit by {}",
            format_number(h1.information_bits),
            format_number(delta)
        );
        if published == 0.025 {
            w.push_str(&format!("; {}", casebook::FATTY_LIVER_NOTE));
        }
        r.warn(w);
    }
    Ok(r)
}

fn pair(a: f64, b: f64, tolerance: f64) -> Result<(f64, f64), CliError> {
    let d = Distribution::with_tolerance(Alphabet::binary(), vec![a, b], tolerance)?;
    Ok((d.probs()[0], d.probs()[1]))
}

pub fn doc_rates(text: &str, tolerance: f64) -> Result<ReportRecord, CliError> {
    let [p0, p1, q0, q1] = input::numbers::<4>(text, "--rates")?;
    let (p0, p1) = pair(p0, p1, tolerance)?;
    let (q0, q1) = pair(q0, q1, tolerance)?;
    let rates = RateSpec::new(p0, p1, q0, q1)?;
    let mut r = ReportRecord::new("doc");
    r.input("rates", text.trim());
    push_doc(&mut r, "h1", &doc_from_rates(&rates)?);
    push_doc(&mut r, "h0", &doc_denial_from_rates(&rates)?);
    Ok(r)
}

pub fn doc_test(text: &str, prior_e1: Option<f64>) -> Result<ReportRecord, CliError> {
    let [sens, spec] = input::numbers::<2>(text, "--test")?;
    let test = doc_from_test(sens, spec)?;
    let mut r = ReportRecord::new("doc");
    r.input("test", text.trim());
    push_confirmation(&mut r, "positive", &test.positive);
    push_confirmation(&mut r, "negative", &test.negative);
    if let Some(p) = prior_e1 {
        r.input("prior_e1", format_number(p));
        let (positive, negative) = test.with_prior(p)?;
        r.output("positive.information_bits", positive.information_bits, Unit::Bits);
        r.output("negative.information_bits", negative.information_bits, Unit::Bits);
        r.output(
            "positive.predicted_p_e1",
            predicted_probability(p, test.positive.b_prime_star)?,
            Unit::Dimensionless,
        );
        if [sens, spec, p] == casebook::HIV_TEST {
            r.warn(format!(
                "negative result: {} (recomputed {} bit)",
                casebook::HIV_NEGATIVE_NOTE,
                format_number(negative.information_bits)
            ));
        }
    }
    Ok(r)
}

pub fn info(prior: &Path, sampling: Option<&Path>, tf: &str, tolerance: f64) -> Result<ReportRecord, CliError> {
    let prior_d = input::distribution(prior, tolerance)?;
    let tf: TruthFunction = tf
        .parse()
        .map_err(|e: ParseTruthFunctionError| CliError::Parse(format!("--tf: {e}")))?;
    let mut r = ReportRecord::new("info");
    r.input("prior", prior.display().to_string());
    if let Some(s) = sampling {
        r.input("sampling", s.display().to_string());
    }
    r.input("tf", tf.to_string());
    r.output("logical_probability", logical_probability(&tf, &prior_d)?, Unit::Dimensionless);
    for label in prior_d.alphabet().labels() {
        r.output(
            format!("pointwise.{label}"),
            pointwise_semantic_info(&tf, &prior_d, label)?,
            Unit::Bits,
        );
    }
    if let Some(path) = sampling {
        let sampling_d = input::align(input::distribution(path, tolerance)?, prior_d.alphabet())?;
        r.output(
            "average_information",
            average_semantic_info(&tf, &prior_d, &sampling_d)?,
            Unit::Bits,
        );
        let parts = gkl_decomposition(&tf, &prior_d, &sampling_d)?;
        r.output("kl_information", parts.kl_info, Unit::Bits);
        r.output("prediction_divergence", parts.penalty, Unit::Bits);
    }
    Ok(r)
}

pub fn msie_samples(samples: &Path, prior: Option<&Path>, tolerance: f64) -> Result<ReportRecord, CliError> {
    let prior_d = prior.map(|p| input::distribution(p, tolerance)).transpose()?;
    let set = input::samples(samples, prior_d.as_ref().map(|d| d.alphabet()))?;
    let estimates = estimate_hypotheses(&set, prior_d.as_ref())?;
    let mut r = ReportRecord::new("msie");
    r.input("samples", samples.display().to_string());
    r.input(
        "prior",
        prior.map_or_else(|| "evidence frequencies".to_string(), |p| p.display().to_string()),
    );
    r.output("records", set.len() as f64, Unit::Count);
    r.output("conditions", set.conditions().len() as f64, Unit::Count);
    for e in &estimates {
        let c = &e.condition;
        r.output(format!("{c}.samples"), e.samples as f64, Unit::Count);
        r.output(format!("{c}.truth_function"), e.truth_function.to_string(), Unit::Label);
        r.output(format!("{c}.information_bits"), e.information_bits, Unit::Bits);
        r.output(format!("{c}.target"), e.target.as_str(), Unit::Label);
        r.output(format!("{c}.b_star"), e.doc.b_star, Unit::Dimensionless);
        r.output(format!("{c}.b_prime_star"), e.doc.b_prime_star, Unit::Dimensionless);
        r.output(format!("{c}.case"), e.doc.case.as_str(), Unit::Label);
        r.output(format!("{c}.doc_information_bits"), e.doc.information_bits, Unit::Bits);
    }
    Ok(r)
}

/// Synthetic positioning scenario: a ring of `cells` cells `step` apart and
/// a deviation model given either by its floor `c` or by `tail_ratio = c/k`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GpsScenario {
    cells: usize,
    #[serde(default = "unit_step")]
    step: f64,
    #[serde(default)]
    delta_e: f64,
    d: f64,
    c: Option<f64>,
    tail_ratio: Option<f64>,
}

fn unit_step() -> f64 {
    1.0
}

pub fn msie_gps(path: &Path) -> Result<ReportRecord, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let s: GpsScenario =
        toml::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {}", path.display(), e.message())))?;
    let grid = RingGrid::new(s.cells, s.step)?;
    let model = match (s.c, s.tail_ratio) {
        (Some(c), None) => GpsModel::new(grid, s.delta_e, s.d, c)?,
        (None, Some(ratio)) => GpsModel::with_tail_ratio(grid, s.delta_e, s.d, ratio)?,
        _ => {
            return Err(CliError::Parse(format!(
                "{}: give exactly one of c and tail_ratio",
                path.display()
            )))
        }
    };
    let fit = gps_fit(&model.channel()?, &Distribution::uniform(grid.alphabet()), &grid)?;
    let mut r = ReportRecord::new("msie");
    r.input("gps", path.display().to_string());
    r.input("cells", s.cells.to_string());
    r.input("step", format_number(s.step));
    r.input("delta_e", format_number(s.delta_e));
    r.input("d", format_number(s.d));
    r.output("model.k", model.k, Unit::Dimensionless);
    r.output("model.c", model.c, Unit::Dimensionless);
    r.output("model.expected_b", model.expected_belief(), Unit::Dimensionless);
    r.output("delta_e_hat", fit.delta_e, Unit::Distance);
    r.output("d_hat", fit.d, Unit::Distance);
    r.output("b_hat", fit.b, Unit::Dimensionless);
    r.output("information_bits", fit.information_bits, Unit::Bits);
    Ok(r)
}

fn value(v: &casebook::Value) -> Value {
    match v {
        casebook::Value::Real(x) => Value::Number(*x),
        casebook::Value::Exact(q) => Value::Text(q.to_string()),
    }
}

/// Returns the report and the number of mismatched checks.
pub fn reproduce() -> Result<(ReportRecord, usize), CliError> {
    let checks = casebook::reference_checks()?;
    let mut r = ReportRecord::new("reproduce");
    let mut mismatches = 0;
    for c in &checks {
        let unit = if c.quantity.contains("(bit)") {
            Unit::Bits
        } else {
            Unit::Dimensionless
        };
        r.outputs.push(crate::report::Output {
            name: format!("{} {}", c.case, c.quantity),
            value: value(&c.computed),
            unit,
            reference: Some(Reference {
                published: value(&c.published),
                delta: Value::Number(c.delta()),
                tolerance: Value::Number(c.tolerance),
                status: c.status.as_str().to_string(),
            }),
        });
        match c.status {
            CheckStatus::Mismatch => {
                mismatches += 1;
                r.warn(format!(
                    "{} {}: published {}, computed {}, outside tolerance {}",
                    c.case,
                    c.quantity,
                    value(&c.published).render(),
                    value(&c.computed).render(),
                    format_number(c.tolerance)
                ));
            }
            CheckStatus::Discrepancy => r.warn(format!(
                "{} {}: published {}, computed {}, documented discrepancy ({})",
                c.case,
                c.quantity,
                value(&c.published).render(),
                format_number(c.computed.to_f64()),
                c.note.unwrap_or("")
            )),
            CheckStatus::Match => {}
        }
    }
    Ok((r, mismatches))
}

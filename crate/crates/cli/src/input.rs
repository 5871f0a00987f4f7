//! Input parsing: number lists, distribution files and sample files.
//!
//! Files are two-column CSV. Blank lines and lines starting with `#` are
//! skipped. A distribution file may start with a header row (any row whose
//! second field is not a number); a sample file may start with the header
//! `condition,label`.

use std::fs;
use std::path::Path;

use semcal::{Alphabet, Distribution, SampleSet};

use crate::CliError;

pub fn numbers<const N: usize>(text: &str, what: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(CliError::Parse(format!(
            "{what}: expected {N} comma-separated numbers, got {}",
            parts.len()
        )));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .parse()
            .map_err(|_| CliError::Parse(format!("{what}: '{part}' is not a number")))?;
    }
    Ok(out)
}

fn rows(path: &Path) -> Result<Vec<(usize, String, String)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(CliError::Parse(format!(
                "{}:{line}: expected two columns, found {}",
                path.display(),
                record.len()
            )));
        }
        out.push((line, record[0].to_string(), record[1].to_string()));
    }
    Ok(out)
}

/// Reads `label,probability` rows, renormalizing within `tolerance`.
pub fn distribution(path: &Path, tolerance: f64) -> Result<Distribution, CliError> {
    let mut rows = rows(path)?;
    if rows.first().is_some_and(|(_, _, p)| p.parse::<f64>().is_err()) {
        rows.remove(0);
    }
    if rows.is_empty() {
        return Err(CliError::Parse(format!("{}: no rows", path.display())));
    }
    let mut labels = Vec::with_capacity(rows.len());
    let mut probs = Vec::with_capacity(rows.len());
    for (line, label, p) in rows {
        let p: f64 = p
            .parse()
            .map_err(|_| CliError::Parse(format!("{}:{line}: '{p}' is not a number", path.display())))?;
        labels.push(label);
        probs.push(p);
    }
    Ok(Distribution::with_tolerance(Alphabet::new(labels)?, probs, tolerance)?)
}

/// Reorders `d` to follow `alphabet` when both hold the same labels.
pub fn align(d: Distribution, alphabet: &Alphabet) -> Result<Distribution, CliError> {
    if d.alphabet() == alphabet {
        return Ok(d);
    }
    if d.len() != alphabet.len() {
        return Err(semcal::Error::AlphabetMismatch.into());
    }
    let mut probs = Vec::with_capacity(d.len());
    for label in alphabet.labels() {
        probs.push(d.prob(label).map_err(|_| semcal::Error::AlphabetMismatch)?);
    }
    Ok(Distribution::new(alphabet.clone(), probs)?)
}

/// Reads `condition,label` rows. Labels must belong to `alphabet` when
/// one is given.
pub fn samples(path: &Path, alphabet: Option<&Alphabet>) -> Result<SampleSet, CliError> {
    let mut rows = rows(path)?;
    if rows
        .first()
        .is_some_and(|(_, c, l)| c.eq_ignore_ascii_case("condition") && l.eq_ignore_ascii_case("label"))
    {
        rows.remove(0);
    }
    if rows.is_empty() {
        return Err(CliError::Parse(format!("{}: no samples", path.display())));
    }
    let records: Vec<(String, String)> = rows.into_iter().map(|(_, c, l)| (c, l)).collect();
    Ok(match alphabet {
        Some(a) => SampleSet::new(a.clone(), records)?,
        None => SampleSet::from_records(records)?,
    })
}

//! Positioning-error models: the circular-error-probability reduction and
//! the Gaussian-plus-floor deviation channel on a ring of cells.
//!
//! The ring wraps around so every cell sees the same neighbourhood and rows
//! need no boundary renormalization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::golden;
use super::Channel;
use crate::confirmation::{doc_from_rates, DocResult, RateSpec};
use crate::distributions::{Alphabet, Distribution};
use crate::error::{Error, Result};
use crate::truth_functions::gaussian_truth;

/// `cells` positions spaced `step` distance units apart, wrapping around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingGrid {
    cells: usize,
    step: f64,
}

impl RingGrid {
    pub fn new(cells: usize, step: f64) -> Result<Self> {
        if cells < 3 {
            return Err(Error::DegenerateGeometry("a ring needs at least three cells"));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::DegenerateGeometry("cell step must be positive"));
        }
        Ok(Self { cells, step })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Labels `0..cells`.
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::indexed(self.cells).expect("cells >= 3")
    }

    /// Wraps an offset measured in cells into `[-cells/2, cells/2)`.
    pub fn wrap(&self, offset: f64) -> f64 {
        let n = self.cells as f64;
        (offset + n / 2.0).rem_euclid(n) - n / 2.0
    }
}

/// Deviation model `P(estimate|position) = k exp(-|estimate - delta_e - position|^2 / (2 d^2)) + c`.
///
/// `k` is not free: it is whatever makes each row sum to one given `d`
/// and `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpsModel {
    pub grid: RingGrid,
    /// Systematic deviation, in distance units.
    pub delta_e: f64,
    /// Standard deviation, in distance units.
    pub d: f64,
    /// Long-tail floor, probability per cell.
    pub c: f64,
    /// Peak coefficient, probability per cell.
    pub k: f64,
}

impl GpsModel {
    pub fn new(grid: RingGrid, delta_e: f64, d: f64, c: f64) -> Result<Self> {
        let mass = Self::check(grid, delta_e, d)?;
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidModel("floor c must be non-negative"));
        }
        let k = (1.0 - grid.cells as f64 * c) / mass;
        if !(k > 0.0) {
            return Err(Error::InvalidModel("floor c leaves no mass for the peak"));
        }
        Ok(Self {
            grid,
            delta_e,
            d,
            c,
            k,
        })
    }

    /// Model with `c = ratio * k`.
    pub fn with_tail_ratio(grid: RingGrid, delta_e: f64, d: f64, ratio: f64) -> Result<Self> {
        let mass = Self::check(grid, delta_e, d)?;
        if !(ratio >= 0.0 && ratio.is_finite()) {
            return Err(Error::InvalidModel("tail ratio must be non-negative"));
        }
        let k = 1.0 / (mass + grid.cells as f64 * ratio);
        Ok(Self {
            grid,
            delta_e,
            d,
            c: ratio * k,
            k,
        })
    }

    fn check(grid: RingGrid, delta_e: f64, d: f64) -> Result<f64> {
        if !delta_e.is_finite() {
            return Err(Error::NonFinite(delta_e));
        }
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidStddev(d));
        }
        if d < 2.0 * grid.step {
            return Err(Error::GridTooCoarse { d });
        }
        let shift = delta_e / grid.step;
        let sd = d / grid.step;
        Ok((0..grid.cells)
            .map(|o| gaussian_truth(grid.wrap(o as f64 - shift), sd))
            .sum())
    }

    /// `P(estimate|position)` as a function of `estimate - position` in cells.
    pub fn deviation_probability(&self, offset_cells: f64) -> f64 {
        let dev = self.grid.wrap(offset_cells - self.delta_e / self.grid.step);
        self.k * gaussian_truth(dev, self.d / self.grid.step) + self.c
    }

    /// Channel with one hypothesis per estimated cell.
    pub fn channel(&self) -> Result<Channel> {
        let n = self.grid.cells;
        let by_offset: Vec<f64> = (0..n).map(|o| self.deviation_probability(o as f64)).collect();
        let rows = (0..n)
            .map(|j| (0..n).map(|i| by_offset[(j + n - i) % n]).collect())
            .collect();
        Channel::new(self.grid.alphabet(), self.grid.alphabet().labels().to_vec(), rows)
    }

    /// Degree of confirmation the fitted truth functions should reach:
    /// `1 - c/(k + c)`.
    pub fn expected_belief(&self) -> f64 {
        1.0 - self.c / (self.k + self.c)
    }
}

/// Result of [`gps_cep_doc`]: the floating-point degree of confirmation
/// plus the exact rational values.
#[derive(Debug, Clone, PartialEq)]
pub struct CepDoc {
    pub doc: DocResult,
    pub b_star_exact: BigRational,
    pub b_prime_star_exact: BigRational,
}

/// Degree of confirmation of a position fix given that a fraction
/// `cep_fraction` of fixes land inside the `in_circle_cells` cells of the
/// error circle, out of `total_cells` possible cells.
pub fn gps_cep_doc(cep_fraction: f64, in_circle_cells: u64, total_cells: u64) -> Result<CepDoc> {
    if !(cep_fraction > 0.0 && cep_fraction < 1.0) {
        return Err(Error::InvalidProbability(cep_fraction));
    }
    let exact = BigRational::from_float(cep_fraction).ok_or(Error::NonFinite(cep_fraction))?;
    gps_cep_doc_exact(&exact, in_circle_cells, total_cells)
}

/// [`gps_cep_doc`] with the fraction given as an exact rational.
pub fn gps_cep_doc_exact(cep_fraction: &BigRational, in_circle_cells: u64, total_cells: u64) -> Result<CepDoc> {
    if !(cep_fraction.is_positive() && *cep_fraction < BigRational::one()) {
        return Err(Error::InvalidProbability(cep_fraction.to_f64().unwrap_or(f64::NAN)));
    }
    if in_circle_cells == 0 || total_cells <= in_circle_cells {
        return Err(Error::DegenerateGeometry("need 0 < cells in circle < total cells"));
    }
    let n = BigRational::from_integer(BigInt::from(in_circle_cells));
    let total = BigRational::from_integer(BigInt::from(total_cells));
    let one = BigRational::one();
    let p1 = cep_fraction / &n;
    let p0 = (&one - cep_fraction) / (&total - &n);
    let (b_prime, b) = if p0 <= p1 {
        let bp = &p0 / &p1;
        (bp.clone(), &one - bp)
    } else {
        let bp = &p1 / &p0;
        (bp.clone(), bp - &one)
    };
    let f = cep_fraction.to_f64().expect("in (0, 1)");
    let share = in_circle_cells as f64 / total_cells as f64;
    let rates = RateSpec::new(1.0 - share, share, 1.0 - f, f)?;
    let doc = doc_from_rates(&rates)?;
    debug_assert!(b.is_zero() || (doc.b_star - b.to_f64().unwrap()).abs() < 1e-9);
    Ok(CepDoc {
        doc,
        b_star_exact: b,
        b_prime_star_exact: b_prime,
    })
}

/// Parameters of the fitted family
/// `T(estimate j | E) = b exp(-|j - delta_e - E|^2 / (2 d^2)) + 1 - b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpsFit {
    pub delta_e: f64,
    pub d: f64,
    pub b: f64,
    pub information_bits: f64,
}

/// Joint `P(e_i) P(h_j|e_i)` arranged for fast objective evaluation.
struct Joint {
    n: usize,
    prior: Vec<f64>,
    joint: Vec<f64>,
    selection: Vec<f64>,
}

impl Joint {
    fn new(channel: &Channel, prior: &Distribution, grid: &RingGrid) -> Result<Self> {
        prior.alphabet().ensure_same(channel.alphabet())?;
        let n = grid.cells;
        if channel.alphabet().len() != n || channel.hypothesis_count() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: channel.alphabet().len(),
            });
        }
        let mut joint = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                joint[j * n + i] = prior.probs()[i] * channel.row(j)[i];
            }
        }
        let selection = channel.selection_probabilities(prior)?;
        Ok(Self {
            n,
            prior: prior.probs().to_vec(),
            joint,
            selection,
        })
    }

    /// Semantic mutual information with shift and spread in cells.
    fn objective(&self, grid: &RingGrid, shift: f64, sd: f64, b: f64) -> f64 {
        let n = self.n;
        let mut truth = vec![0.0; n];
        let mut log_truth = vec![0.0; n];
        for o in 0..n {
            let t = (1.0 - b) + b * gaussian_truth(grid.wrap(o as f64 - shift), sd);
            truth[o] = t;
            log_truth[o] = if t > 0.0 { t.log2() } else { f64::NEG_INFINITY };
        }
        let mut total = 0.0;
        for j in 0..n {
            if self.selection[j] == 0.0 {
                continue;
            }
            let mut lp = 0.0;
            let mut weighted = 0.0;
            for i in 0..n {
                let o = (j + n - i) % n;
                lp += self.prior[i] * truth[o];
                let w = self.joint[j * n + i];
                if w > 0.0 {
                    weighted += w * log_truth[o];
                }
            }
            if !(lp > 0.0) {
                return f64::NEG_INFINITY;
            }
            total += weighted - self.selection[j] * lp.log2();
        }
        total
    }
}

/// Semantic mutual information of `channel` read through the Gaussian
/// family with the given systematic deviation, spread and belief.
pub fn gps_objective(
    channel: &Channel,
    prior: &Distribution,
    grid: &RingGrid,
    delta_e: f64,
    d: f64,
    b: f64,
) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidStddev(d));
    }
    crate::truth_functions::Belief::new(b)?;
    let joint = Joint::new(channel, prior, grid)?;
    Ok(joint.objective(grid, delta_e / grid.step, d / grid.step, b))
}

const FIT_TOLERANCE: f64 = 1e-9;
const FIT_ROUNDS: usize = 60;

/// Fits systematic deviation, spread and degree of confirmation by
/// coordinate ascent on the semantic mutual information.
///
/// The deviation is scanned over whole cells and then refined within one
/// cell; spread and belief use scanned golden-section search.
pub fn gps_fit(channel: &Channel, prior: &Distribution, grid: &RingGrid) -> Result<GpsFit> {
    let joint = Joint::new(channel, prior, grid)?;
    let n = grid.cells as f64;
    let max_sd = (n / 4.0).max(2.0);
    let mut sd = (n / 20.0).max(2.0);
    let mut b = 0.5;
    let best_shift = |sd: f64, b: f64| {
        let mut best = (0.0, f64::NEG_INFINITY);
        for s in 0..grid.cells {
            let shift = grid.wrap(s as f64);
            let v = joint.objective(grid, shift, sd, b);
            if v > best.1 {
                best = (shift, v);
            }
        }
        best
    };
    let (mut shift, mut value) = best_shift(sd, b);
    for _ in 0..FIT_ROUNDS {
        let previous = (shift, sd, b, value);
        sd = golden::maximize_scanned(|x| joint.objective(grid, shift, x, b), 0.5, max_sd, 32, FIT_TOLERANCE).0;
        b = golden::maximize_scanned(|x| joint.objective(grid, shift, sd, x), 0.0, 1.0, 32, FIT_TOLERANCE).0;
        let whole = best_shift(sd, b).0;
        let refined = golden::maximize(|x| joint.objective(grid, x, sd, b), whole - 1.0, whole + 1.0, FIT_TOLERANCE);
        shift = grid.wrap(refined.0);
        value = refined.1;
        let moved = (shift - previous.0).abs() + (sd - previous.1).abs() + (b - previous.2).abs();
        if moved < 1e-7 && (value - previous.3).abs() < 1e-12 {
            break;
        }
    }
    if sd < 2.0 {
        return Err(Error::GridTooCoarse { d: sd * grid.step });
    }
    Ok(GpsFit {
        delta_e: shift * grid.step,
        d: sd * grid.step,
        b,
        information_bits: value,
    })
}

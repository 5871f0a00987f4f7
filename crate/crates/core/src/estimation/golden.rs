//! One-dimensional maximization by golden-section search.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[lo, hi]`, shrinking the bracket until it is narrower
/// than `tol`. Assumes `f` is unimodal on the interval. NaN counts as
/// negative infinity. Endpoints are always considered.
pub(crate) fn maximize<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d);
        }
    }
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [lo, hi] {
        let v = eval(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Scans `samples + 1` evenly spaced points first, then runs golden-section
/// search in the bracket around the best one. Guards against objectives
/// that are only unimodal near their peak.
pub(crate) fn maximize_scanned<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    samples: usize,
    tol: f64,
) -> (f64, f64) {
    let samples = samples.max(2);
    let h = (hi - lo) / samples as f64;
    let mut best_k = 0;
    let mut best_v = f64::NEG_INFINITY;
    for k in 0..=samples {
        let x = if k == samples { hi } else { lo + h * k as f64 };
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_k = k;
        }
    }
    let a = (lo + h * best_k.saturating_sub(1) as f64).max(lo);
    let b = (lo + h * (best_k + 1) as f64).min(hi);
    let (x, v) = maximize(&mut f, a, b, tol);
    if v >= best_v {
        (x, v)
    } else {
        let x = if best_k == samples { hi } else { lo + h * best_k as f64 };
        (x, best_v)
    }
}

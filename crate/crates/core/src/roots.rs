//! Bracketing root finders for the monotone resonance conditions.

/// Bisection on [lo, hi] for a continuous `f` with a sign change.
/// Returns `None` if the endpoints do not bracket a root.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, abs_tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return None;
    }
    // 200 halvings exhaust any f64 bracket
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= abs_tol || mid == lo || mid == hi {
            return Some(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Finds a root of `f` on [start, ∞) by doubling the upper end of the
/// bracket until the sign changes, then bisecting. Gives up after
/// `max_expansions` doublings.
pub fn bisect_expanding<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    initial_width: f64,
    abs_tol: f64,
    max_expansions: usize,
) -> Option<f64> {
    let f0 = f(start);
    if f0 == 0.0 {
        return Some(start);
    }
    let mut width = initial_width.max(f64::MIN_POSITIVE);
    let mut lo = start;
    for _ in 0..max_expansions {
        let hi = start + width;
        let fh = f(hi);
        if fh.signum() != f0.signum() || fh == 0.0 {
            return bisect(&f, lo, hi, abs_tol);
        }
        lo = hi;
        width *= 2.0;
    }
    None
}

//! Bisection on monotone predicates.
//!
//! Every infimum in this crate is taken over a set of the form
//! `{t : pred(t)}` where `pred` switches from `false` to `true` exactly once.
//! The helpers here bracket that switch point and shrink the bracket, so the
//! returned upper end always satisfies the predicate.

/// Hard cap on bisection steps.
pub const MAX_ITERATIONS: usize = 200;

/// Default relative width at which a bracket counts as converged.
pub const DEFAULT_RTOL: f64 = 1e-10;

/// Stopping rule for [`shrink`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Stop when `hi - lo <= rtol * |hi|`.
    Relative(f64),
    /// Stop when `hi - lo <= atol`.
    Absolute(f64),
    /// Stop only when `lo` and `hi` are adjacent floats.
    Adjacent,
}

/// A bracket `[lo, hi]` with `pred(lo) == false` and `pred(hi) == true`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
}

/// Shrinks `[lo, hi]` around the switch point of a monotone predicate.
///
/// The end points are never evaluated; the caller vouches for
/// `pred(lo) == false` and `pred(hi) == true` (either by evaluation or as a
/// sentinel, e.g. the open end of `(0, 1)`).
pub fn shrink<P: FnMut(f64) -> bool>(mut pred: P, lo: f64, hi: f64, tol: Tolerance) -> Bracket {
    let (mut lo, mut hi) = (lo, hi);
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        let done = match tol {
            Tolerance::Relative(r) => hi - lo <= r * hi.abs(),
            Tolerance::Absolute(a) => hi - lo <= a,
            Tolerance::Adjacent => false,
        };
        if done {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Bracket { lo, hi, iterations }
}

/// Infimum of `{t > 0 : pred(t)}` for a predicate monotone in `t`.
///
/// Returns `Some(0.0)` when the predicate holds arbitrarily close to zero and
/// `None` when it never holds (the set is empty, the infimum is `+inf`).
/// `scale` is a hint for the magnitude of the answer.
pub fn infimum_positive<P: FnMut(f64) -> bool>(mut pred: P, scale: f64, tol: Tolerance) -> Option<f64> {
    let mut probe = if scale.is_finite() && scale > 0.0 { scale } else { 1.0 };
    let (lo, hi);
    if pred(probe) {
        let mut upper = probe;
        loop {
            probe *= 0.5;
            if probe == 0.0 {
                return Some(0.0);
            }
            if !pred(probe) {
                break;
            }
            upper = probe;
        }
        lo = probe;
        hi = upper;
    } else {
        let mut lower = probe;
        loop {
            probe *= 2.0;
            if !probe.is_finite() {
                return None;
            }
            if pred(probe) {
                break;
            }
            lower = probe;
        }
        lo = lower;
        hi = probe;
    }
    Some(shrink(pred, lo, hi, tol).hi)
}

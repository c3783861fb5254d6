//! Fuzzy α-anti-convergence and α-anti-Cauchy diagnostics on sequences.
//!
//! A sequence is either an explicit finite list or a generator
//! `x_n = b + r(n)·v` with a known rate `r`. Generators get closed-form limits
//! of `ν(x_n - x, t)` and so sound verdicts. Lists only give a window of
//! terms; their verdicts are estimates and may be inconclusive.
//!
//! Convergence uses the strict threshold `< 1 - α`, Cauchy the non-strict
//! `<= 1 - α`, both with a margin of [`MARGIN`].

use serde::Serialize;

use crate::alphacut::{AlphaNormFamily, ExtendedNonneg};
use crate::antinorm::FuzzyAntiNorm;
use crate::error::{check_alpha, invalid, Error, Result};
use crate::space::{self, is_zero};

pub const MARGIN: f64 = 1e-9;
/// An α-norm sequence below this is taken to have reached 0.
pub const ALPHA_NORM_TOL: f64 = 1e-6;
/// Two limits closer than this in base norm count as the same.
pub const UNIQUENESS_TOL: f64 = 1e-8;

/// `{10^k : k = -3..3}`
pub fn default_t_grid() -> Vec<f64> {
    (-3..=3).map(|k| 10f64.powi(k)).collect()
}

/// The coefficient `r(n)` of a generator, for `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Rate {
    /// `1/n`
    Harmonic,
    /// `1/n²`
    InverseSquare,
    /// `q^n` with `0 < q < 1`
    Geometric { q: f64 },
    /// `1`, a constant offset
    Constant,
}

impl Rate {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Rate::Geometric { q } if !(q > 0.0 && q < 1.0) => Err(invalid("q", format!("{q} is not in (0, 1)"))),
            _ => Ok(()),
        }
    }

    pub fn at(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            Rate::Harmonic => 1.0 / n,
            Rate::InverseSquare => 1.0 / (n * n),
            Rate::Geometric { q } => q.powf(n),
            Rate::Constant => 1.0,
        }
    }

    pub fn vanishes(&self) -> bool {
        !matches!(self, Rate::Constant)
    }

    pub fn name(&self) -> String {
        match *self {
            Rate::Harmonic => "1/n".into(),
            Rate::InverseSquare => "1/n^2".into(),
            Rate::Geometric { q } => format!("{q}^n"),
            Rate::Constant => "1".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SequenceData {
    Explicit {
        terms: Vec<Vec<f64>>,
    },
    Generator {
        base: Vec<f64>,
        direction: Vec<f64>,
        rate: Rate,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VectorSequence {
    pub data: SequenceData,
    pub candidate_limit: Option<Vec<f64>>,
}

impl VectorSequence {
    pub fn explicit(terms: Vec<Vec<f64>>, limit: Option<Vec<f64>>) -> Result<Self> {
        let dim = terms
            .first()
            .map(Vec::len)
            .ok_or_else(|| invalid("terms", "an explicit sequence needs at least one term"))?;
        if let Some(bad) = terms.iter().find(|t| t.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: bad.len(),
            });
        }
        Self::checked(SequenceData::Explicit { terms }, limit)
    }

    /// `x_n = base + rate(n)·direction` for `n = 1, 2, ...`
    pub fn generator(base: Vec<f64>, direction: Vec<f64>, rate: Rate, limit: Option<Vec<f64>>) -> Result<Self> {
        rate.validate()?;
        if base.len() != direction.len() {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                actual: direction.len(),
            });
        }
        Self::checked(SequenceData::Generator { base, direction, rate }, limit)
    }

    fn checked(data: SequenceData, limit: Option<Vec<f64>>) -> Result<Self> {
        let s = Self {
            data,
            candidate_limit: None,
        };
        s.with_limit(limit)
    }

    pub fn with_limit(mut self, limit: Option<Vec<f64>>) -> Result<Self> {
        if let Some(l) = &limit {
            if l.len() != self.dimension() {
                return Err(Error::DimensionMismatch {
                    expected: self.dimension(),
                    actual: l.len(),
                });
            }
        }
        self.candidate_limit = limit;
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        match &self.data {
            SequenceData::Explicit { terms } => terms[0].len(),
            SequenceData::Generator { base, .. } => base.len(),
        }
    }

    /// Number of terms, `None` for generators.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match &self.data {
            SequenceData::Explicit { terms } => Some(terms.len()),
            SequenceData::Generator { .. } => None,
        }
    }

    /// Term `x_n`, 1-based.
    pub fn term(&self, n: usize) -> Option<Vec<f64>> {
        match &self.data {
            SequenceData::Explicit { terms } => n.checked_sub(1).and_then(|i| terms.get(i)).cloned(),
            SequenceData::Generator { base, direction, rate } => {
                (n >= 1).then(|| space::axpy(base, rate.at(n), direction))
            }
        }
    }

    fn limit(&self) -> Result<&[f64]> {
        self.candidate_limit.as_deref().ok_or(Error::MissingLimit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    TailWindow,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceVerdict {
    pub check: &'static str,
    pub verdict: Verdict,
    pub alpha: f64,
    pub method: Method,
    /// Empty for α-norm checks.
    pub t_grid: Vec<f64>,
    pub tail: usize,
    pub threshold: f64,
    /// Limit estimate per grid point (one entry for α-norm checks).
    pub estimates: Vec<f64>,
    pub worst: f64,
    /// `(t, n)` of the worst term when the verdict is not `Holds`.
    pub witness: Option<(f64, usize)>,
}

fn check_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(invalid("t_grid", "must not be empty"));
    }
    if let Some(t) = t_grid.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(invalid("t_grid", format!("{t} is not a positive real")));
    }
    Ok(())
}

fn check_common(nu: &FuzzyAntiNorm, s: &VectorSequence, alpha: f64, tail: usize) -> Result<()> {
    check_alpha(alpha)?;
    if tail == 0 {
        return Err(invalid("tail", "must be positive"));
    }
    if s.dimension() != nu.dimension() {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// Per-point limit estimate from a window: the maximum over the window, the
/// maximum over its later half, and the index of the window maximum.
#[derive(Debug, Clone, Copy)]
struct Window {
    max: f64,
    earlier: f64,
    later: f64,
    argmax: usize,
}

fn window<F: FnMut(usize) -> f64>(ns: std::ops::RangeInclusive<usize>, mut value: F) -> Window {
    let ns: Vec<usize> = ns.collect();
    let half = ns.len() / 2;
    let mut w = Window {
        max: f64::NEG_INFINITY,
        earlier: f64::NEG_INFINITY,
        later: f64::NEG_INFINITY,
        argmax: ns[0],
    };
    for (i, &n) in ns.iter().enumerate() {
        let v = value(n);
        if v > w.max || v.is_nan() {
            w.max = v;
            w.argmax = n;
        }
        if i < half {
            w.earlier = w.earlier.max(v);
        } else {
            w.later = w.later.max(v);
        }
    }
    if half == 0 {
        w.earlier = w.later;
    }
    w
}

/// Verdict from a window. `strict` selects `<` against the threshold.
fn classify(w: &Window, threshold: f64, strict: bool) -> Verdict {
    let below = if strict {
        w.max < threshold - MARGIN
    } else {
        w.max <= threshold + MARGIN
    };
    if below && w.later <= w.earlier + MARGIN {
        Verdict::Holds
    } else if w.later > threshold + MARGIN && w.later >= w.earlier - MARGIN {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    }
}

/// Verdict from an exact limit.
fn classify_limit(limit: f64, threshold: f64, strict: bool) -> Verdict {
    let holds = if strict { limit < threshold } else { limit <= threshold };
    if holds {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}

fn combine(verdicts: &[Verdict]) -> Verdict {
    if verdicts.contains(&Verdict::Fails) {
        Verdict::Fails
    } else if verdicts.contains(&Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Holds
    }
}

/// Index range of the last `tail` terms of a list, each with `p_max` lagged
/// partners available.
fn tail_range(len: usize, tail: usize, p_max: usize) -> Result<std::ops::RangeInclusive<usize>> {
    if len < tail + p_max {
        return Err(Error::InsufficientData(format!(
            "{len} terms, need at least tail + lag = {}",
            tail + p_max
        )));
    }
    let last = len - p_max;
    Ok(last + 1 - tail..=last)
}

/// Exact `lim ν(d + r(n)v, t)` for a generator with `d = base - limit`.
/// `None` when the limit sits on a jump of the profile.
fn generator_membership_limit(nu: &FuzzyAntiNorm, d: &[f64], v: &[f64], rate: &Rate, t: f64) -> Option<f64> {
    let offset = if rate.vanishes() { d.to_vec() } else { space::add(d, v) };
    let norm = nu.base_norm(&offset);
    if norm == 0.0 {
        // ν(y_n, t) -> 0 since ‖y_n‖ -> 0 and f(u) -> 0 as u -> inf
        return Some(0.0);
    }
    let u = t / norm;
    if rate.vanishes() && !nu.profile.is_continuous() && nu.profile.breakpoints().contains(&u) {
        return None;
    }
    Some(nu.membership_at_norm(norm, t))
}

/// Fuzzy α-anti-convergence to the candidate limit: `lim ν(x_n - x, t) < 1 - α`
/// at every `t` in the grid.
pub fn fuzzy_alpha_converges(
    nu: &FuzzyAntiNorm,
    s: &VectorSequence,
    alpha: f64,
    t_grid: &[f64],
    tail: usize,
) -> Result<SequenceVerdict> {
    check_common(nu, s, alpha, tail)?;
    check_grid(t_grid)?;
    let x = s.limit()?;
    let threshold = 1.0 - alpha;
    let mut estimates = Vec::with_capacity(t_grid.len());
    let mut verdicts = Vec::with_capacity(t_grid.len());
    let mut worst = (f64::NEG_INFINITY, None);
    let method = match &s.data {
        SequenceData::Generator { base, direction, rate } => {
            let d = space::sub(base, x);
            for &t in t_grid {
                let (e, v) = match generator_membership_limit(nu, &d, direction, rate, t) {
                    Some(e) => (e, classify_limit(e, threshold, true)),
                    None => (nu.membership(&d, t), Verdict::Inconclusive),
                };
                if e > worst.0 {
                    worst = (e, Some((t, 0)));
                }
                estimates.push(e);
                verdicts.push(v);
            }
            Method::ClosedForm
        }
        SequenceData::Explicit { terms } => {
            let range = tail_range(terms.len(), tail, 0)?;
            for &t in t_grid {
                let w = window(range.clone(), |n| nu.membership(&space::sub(&terms[n - 1], x), t));
                if w.max > worst.0 {
                    worst = (w.max, Some((t, w.argmax)));
                }
                estimates.push(w.later);
                verdicts.push(classify(&w, threshold, true));
            }
            Method::TailWindow
        }
    };
    let verdict = combine(&verdicts);
    Ok(SequenceVerdict {
        check: "fuzzy-convergence",
        verdict,
        alpha,
        method,
        t_grid: t_grid.to_vec(),
        tail,
        threshold,
        estimates,
        worst: worst.0,
        witness: if verdict == Verdict::Holds { None } else { worst.1 },
    })
}

/// Fuzzy α-anti-Cauchy: `lim_n max_{p <= p_max} ν(x_n - x_{n+p}, t) <= 1 - α`.
pub fn fuzzy_alpha_cauchy(
    nu: &FuzzyAntiNorm,
    s: &VectorSequence,
    alpha: f64,
    t_grid: &[f64],
    tail: usize,
    p_max: usize,
) -> Result<SequenceVerdict> {
    check_common(nu, s, alpha, tail)?;
    check_grid(t_grid)?;
    if p_max == 0 {
        return Err(invalid("p_max", "must be positive"));
    }
    let threshold = 1.0 - alpha;
    let mut estimates = Vec::with_capacity(t_grid.len());
    let mut verdicts = Vec::with_capacity(t_grid.len());
    let mut worst = (f64::NEG_INFINITY, None);
    let method = match &s.data {
        // x_n - x_{n+p} = (r(n) - r(n+p))·v -> θ for every rate
        SequenceData::Generator { .. } => {
            for _ in t_grid {
                estimates.push(0.0);
                verdicts.push(Verdict::Holds);
            }
            worst.0 = 0.0;
            Method::ClosedForm
        }
        SequenceData::Explicit { terms } => {
            let range = tail_range(terms.len(), tail, p_max)?;
            for &t in t_grid {
                let w = window(range.clone(), |n| {
                    (1..=p_max)
                        .map(|p| nu.membership(&space::sub(&terms[n - 1], &terms[n + p - 1]), t))
                        .fold(f64::NEG_INFINITY, f64::max)
                });
                if w.max > worst.0 {
                    worst = (w.max, Some((t, w.argmax)));
                }
                estimates.push(w.later);
                verdicts.push(classify(&w, threshold, false));
            }
            Method::TailWindow
        }
    };
    let verdict = combine(&verdicts);
    Ok(SequenceVerdict {
        check: "fuzzy-cauchy",
        verdict,
        alpha,
        method,
        t_grid: t_grid.to_vec(),
        tail,
        threshold,
        estimates,
        worst: worst.0,
        witness: if verdict == Verdict::Holds { None } else { worst.1 },
    })
}

fn alpha_value(a: &AlphaNormFamily, y: &[f64], alpha: f64) -> Result<f64> {
    Ok(match a.norm(y, alpha)? {
        ExtendedNonneg::Finite(v) => v,
        ExtendedNonneg::Infinite => f64::INFINITY,
    })
}

fn crisp_verdict(
    check: &'static str,
    alpha: f64,
    tail: usize,
    method: Method,
    w: &Window,
    exact: Option<f64>,
) -> SequenceVerdict {
    let (verdict, estimate) = match exact {
        Some(e) => (classify_limit(e, ALPHA_NORM_TOL, false), e),
        None => (classify(w, ALPHA_NORM_TOL, false), w.later),
    };
    SequenceVerdict {
        check,
        verdict,
        alpha,
        method,
        t_grid: Vec::new(),
        tail,
        threshold: ALPHA_NORM_TOL,
        estimates: vec![estimate],
        worst: exact.unwrap_or(w.max),
        witness: match (verdict, exact) {
            (Verdict::Holds, _) => None,
            (_, Some(_)) => Some((f64::NAN, 0)),
            (_, None) => Some((f64::NAN, w.argmax)),
        },
    }
}

const NO_WINDOW: Window = Window {
    max: 0.0,
    earlier: 0.0,
    later: 0.0,
    argmax: 0,
};

/// `‖x_n - x‖*_α -> 0`.
pub fn alpha_norm_converges(
    a: &AlphaNormFamily,
    s: &VectorSequence,
    alpha: f64,
    tail: usize,
) -> Result<SequenceVerdict> {
    check_common(a.source(), s, alpha, tail)?;
    let x = s.limit()?;
    Ok(match &s.data {
        SequenceData::Generator { base, direction, rate } => {
            let d = space::sub(base, x);
            let offset = if rate.vanishes() { d } else { space::add(&d, direction) };
            let limit = alpha_value(a, &offset, alpha)?;
            crisp_verdict(
                "alpha-norm-convergence",
                alpha,
                tail,
                Method::ClosedForm,
                &NO_WINDOW,
                Some(limit),
            )
        }
        SequenceData::Explicit { terms } => {
            let range = tail_range(terms.len(), tail, 0)?;
            let mut err = None;
            let w = window(range, |n| {
                alpha_value(a, &space::sub(&terms[n - 1], x), alpha).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    f64::NAN
                })
            });
            if let Some(e) = err {
                return Err(e);
            }
            crisp_verdict("alpha-norm-convergence", alpha, tail, Method::TailWindow, &w, None)
        }
    })
}

/// `max_{p <= p_max} ‖x_n - x_{n+p}‖*_α -> 0`.
pub fn alpha_norm_cauchy(
    a: &AlphaNormFamily,
    s: &VectorSequence,
    alpha: f64,
    tail: usize,
    p_max: usize,
) -> Result<SequenceVerdict> {
    check_common(a.source(), s, alpha, tail)?;
    if p_max == 0 {
        return Err(invalid("p_max", "must be positive"));
    }
    Ok(match &s.data {
        SequenceData::Generator { .. } => crisp_verdict(
            "alpha-norm-cauchy",
            alpha,
            tail,
            Method::ClosedForm,
            &NO_WINDOW,
            Some(0.0),
        ),
        SequenceData::Explicit { terms } => {
            let range = tail_range(terms.len(), tail, p_max)?;
            let w = window(range, |n| {
                (1..=p_max)
                    .map(|p| alpha_value(a, &space::sub(&terms[n - 1], &terms[n + p - 1]), alpha).unwrap_or(f64::NAN))
                    .fold(f64::NEG_INFINITY, f64::max)
            });
            crisp_verdict("alpha-norm-cauchy", alpha, tail, Method::TailWindow, &w, None)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceRow {
    pub alpha: f64,
    pub fuzzy: SequenceVerdict,
    pub crisp: SequenceVerdict,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub rows: Vec<EquivalenceRow>,
    pub passed: bool,
}

/// Fuzzy α-anti-convergence against α-norm convergence, per α.
pub fn equivalence_check(
    nu: &FuzzyAntiNorm,
    a: &AlphaNormFamily,
    s: &VectorSequence,
    alphas: &[f64],
    t_grid: &[f64],
    tail: usize,
) -> Result<EquivalenceReport> {
    if a.source() != nu {
        return Err(Error::SpaceMismatch);
    }
    let mut rows = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let fuzzy = fuzzy_alpha_converges(nu, s, alpha, t_grid, tail)?;
        let crisp = alpha_norm_converges(a, s, alpha, tail)?;
        rows.push(EquivalenceRow {
            alpha,
            agree: fuzzy.verdict == crisp.verdict,
            fuzzy,
            crisp,
        });
    }
    Ok(EquivalenceReport {
        passed: rows.iter().all(|r| r.agree),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImplicationReport {
    pub alpha: f64,
    pub convergence: SequenceVerdict,
    pub cauchy: SequenceVerdict,
    pub alpha_norm_cauchy: SequenceVerdict,
    /// Convergent implies Cauchy.
    pub convergent_implies_cauchy: bool,
    /// α-norm Cauchy implies fuzzy α-anti-Cauchy.
    pub crisp_cauchy_implies_fuzzy: bool,
    pub alternative_limit: Vec<f64>,
    pub alternative: SequenceVerdict,
    /// Both limits accepted only when they coincide.
    pub limit_unique: bool,
    pub passed: bool,
}

/// Default second candidate for the uniqueness probe: `x + v` for
/// generators with `v ≠ θ`, otherwise `x + e_1`.
pub fn default_alternative(s: &VectorSequence, limit: &[f64]) -> Vec<f64> {
    match &s.data {
        SequenceData::Generator { direction, .. } if !is_zero(direction) => space::add(limit, direction),
        _ => {
            let mut y = limit.to_vec();
            y[0] += 1.0;
            y
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn implication_suite(
    nu: &FuzzyAntiNorm,
    s: &VectorSequence,
    alpha: f64,
    t_grid: &[f64],
    tail: usize,
    p_max: usize,
    alternative: Option<Vec<f64>>,
) -> Result<ImplicationReport> {
    let x = s.limit()?.to_vec();
    let family = AlphaNormFamily::new(nu.clone());
    let convergence = fuzzy_alpha_converges(nu, s, alpha, t_grid, tail)?;
    let cauchy = fuzzy_alpha_cauchy(nu, s, alpha, t_grid, tail, p_max)?;
    let crisp = alpha_norm_cauchy(&family, s, alpha, tail, p_max)?;
    let y = alternative.unwrap_or_else(|| default_alternative(s, &x));
    let other = s.clone().with_limit(Some(y.clone()))?;
    let alt = fuzzy_alpha_converges(nu, &other, alpha, t_grid, tail)?;

    let a = convergence.verdict != Verdict::Holds || cauchy.verdict == Verdict::Holds;
    let b = crisp.verdict != Verdict::Holds || cauchy.verdict == Verdict::Holds;
    let both = convergence.verdict == Verdict::Holds && alt.verdict == Verdict::Holds;
    let c = !both || nu.base_norm(&space::sub(&x, &y)) <= UNIQUENESS_TOL;
    Ok(ImplicationReport {
        alpha,
        convergence,
        cauchy,
        alpha_norm_cauchy: crisp,
        convergent_implies_cauchy: a,
        crisp_cauchy_implies_fuzzy: b,
        alternative_limit: y,
        alternative: alt,
        limit_unique: c,
        passed: a && b && c,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub n: usize,
    pub t: f64,
    pub nu: f64,
}

/// `ν(x_n - x, t)` for `n = 1..=terms` (capped at the list length) and every
/// `t` in the grid.
pub fn membership_trace(nu: &FuzzyAntiNorm, s: &VectorSequence, t_grid: &[f64], terms: usize) -> Result<Vec<TraceRow>> {
    if s.dimension() != nu.dimension() {
        return Err(Error::SpaceMismatch);
    }
    check_grid(t_grid)?;
    let x = s.limit()?;
    let count = s.len().map_or(terms, |len| len.min(terms));
    let mut rows = Vec::with_capacity(count * t_grid.len());
    for n in 1..=count {
        let d = space::sub(&s.term(n).expect("n within range"), x);
        for &t in t_grid {
            rows.push(TraceRow {
                n,
                t,
                nu: nu.membership(&d, t),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::DecayProfile;
    use crate::space::VectorSpaceSpec;
    use crate::tconorm::TConorm;
    use proptest::prelude::*;

    fn recip(n: usize) -> FuzzyAntiNorm {
        FuzzyAntiNorm::new(
            VectorSpaceSpec::euclidean(n).unwrap(),
            DecayProfile::reciprocal(1.0).unwrap(),
            TConorm::Maximum,
        )
        .unwrap()
    }

    fn listed(rate: impl Fn(usize) -> f64, n: usize, x: &[f64], v: &[f64]) -> VectorSequence {
        let terms = (1..=n).map(|i| space::axpy(x, rate(i), v)).collect();
        VectorSequence::explicit(terms, Some(x.to_vec())).unwrap()
    }

    const X: [f64; 2] = [1.0, -2.0];
    const V: [f64; 2] = [0.6, 0.8];

    #[test]
    fn harmonic_list_converges() {
        let s = listed(|n| 1.0 / n as f64, 10_000, &X, &V);
        let r = fuzzy_alpha_converges(&recip(2), &s, 0.5, &[0.1, 1.0, 10.0], 1000).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.method, Method::TailWindow);
        // tail max sits at the first window term n = 9001: f(t·n) = 1/(1 + t·n)
        let expect = 1.0 / (1.0 + 0.1 * 9001.0);
        assert!((r.worst - expect).abs() < 1e-12, "{} vs {expect}", r.worst);
    }

    #[test]
    fn constant_sequences_converge_and_are_cauchy() {
        let nu = recip(2);
        let s = listed(|_| 0.0, 50, &X, &V);
        for a in [0.01, 0.5, 0.99] {
            let c = fuzzy_alpha_converges(&nu, &s, a, &default_t_grid(), 10).unwrap();
            assert_eq!(c.verdict, Verdict::Holds);
            assert!(c.estimates.iter().all(|e| *e == 0.0));
            let k = fuzzy_alpha_cauchy(&nu, &s, a, &default_t_grid(), 10, 5).unwrap();
            assert_eq!(k.verdict, Verdict::Holds);
        }
    }

    #[test]
    fn constant_offset_fails_with_witness() {
        let nu = recip(2);
        let s = VectorSequence::generator(X.to_vec(), V.to_vec(), Rate::Constant, Some(X.to_vec())).unwrap();
        let r = fuzzy_alpha_converges(&nu, &s, 0.5, &[0.01, 1.0, 100.0], 10).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let (t, _) = r.witness.unwrap();
        assert_eq!(t, 0.01);
        assert!((r.worst - 1.0 / 1.01).abs() < 1e-15);
        let listed = listed(|_| 1.0, 100, &X, &V);
        let r = fuzzy_alpha_converges(&nu, &listed, 0.5, &[0.01, 1.0, 100.0], 10).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
    }

    #[test]
    fn alternating_is_not_cauchy() {
        let terms = (1..=200)
            .map(|n| space::scale(if n % 2 == 0 { 1.0 } else { -1.0 }, &V))
            .collect();
        let s = VectorSequence::explicit(terms, None).unwrap();
        let r = fuzzy_alpha_cauchy(&recip(2), &s, 0.5, &[0.01], 20, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        // ‖x_n - x_{n+1}‖ = 2
        assert!((r.worst - 2.0 / 2.01).abs() < 1e-15);
        assert!(r.witness.is_some());
    }

    #[test]
    fn cauchy_needs_enough_terms() {
        let s = listed(|n| 1.0 / n as f64, 10, &X, &V);
        let e = fuzzy_alpha_cauchy(&recip(2), &s, 0.5, &[1.0], 8, 3).unwrap_err();
        assert!(matches!(e, Error::InsufficientData(_)));
    }

    #[test]
    fn missing_limit_is_an_error() {
        let s = VectorSequence::explicit(vec![vec![0.0, 0.0]], None).unwrap();
        assert_eq!(
            fuzzy_alpha_converges(&recip(2), &s, 0.5, &[1.0], 1).unwrap_err(),
            Error::MissingLimit
        );
    }

    #[test]
    fn alpha_norm_closed_forms() {
        let nu = recip(2);
        let fam = AlphaNormFamily::new(nu.clone());
        let g = VectorSequence::generator(X.to_vec(), V.to_vec(), Rate::Harmonic, Some(X.to_vec())).unwrap();
        let r = alpha_norm_converges(&fam, &g, 0.5, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.estimates, vec![0.0]);
        let off = VectorSequence::generator(X.to_vec(), V.to_vec(), Rate::Constant, Some(X.to_vec())).unwrap();
        let r = alpha_norm_converges(&fam, &off, 0.75, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        // Q(0.75)·‖v‖ = 3
        assert!((r.estimates[0] - 3.0).abs() < 1e-15);
        // listed: the window maximum is Q(0.5)·‖v‖/n at the window start
        let l = listed(|n| 0.01 / n as f64, 20_000, &X, &V);
        let r = alpha_norm_converges(&fam, &l, 0.5, 100).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!((r.worst - 0.01 / 19_901.0).abs() < 1e-15);
        // still above tolerance but shrinking: no verdict either way
        let l = listed(|n| 1.0 / n as f64, 20_000, &X, &V);
        let r = alpha_norm_converges(&fam, &l, 0.5, 100).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn equivalence_on_generators() {
        let nu = recip(2);
        let fam = AlphaNormFamily::new(nu.clone());
        for rate in [Rate::Harmonic, Rate::InverseSquare, Rate::Geometric { q: 0.5 }] {
            let g = VectorSequence::generator(X.to_vec(), V.to_vec(), rate, Some(X.to_vec())).unwrap();
            let r = equivalence_check(&nu, &fam, &g, &[0.1, 0.5, 0.9], &default_t_grid(), 100).unwrap();
            assert!(r.passed);
            assert!(r.rows.iter().all(|row| row.fuzzy.verdict == Verdict::Holds));
        }
        let off = VectorSequence::generator(X.to_vec(), V.to_vec(), Rate::Constant, Some(X.to_vec())).unwrap();
        let r = equivalence_check(&nu, &fam, &off, &[0.1, 0.5, 0.9], &default_t_grid(), 100).unwrap();
        assert!(r.passed);
        assert!(r.rows.iter().all(|row| row.fuzzy.verdict == Verdict::Fails));
    }

    #[test]
    fn implication_rejects_shifted_limit() {
        let nu = recip(2);
        let g = VectorSequence::generator(X.to_vec(), V.to_vec(), Rate::Harmonic, Some(X.to_vec())).unwrap();
        let r = implication_suite(&nu, &g, 0.5, &default_t_grid(), 100, 5, None).unwrap();
        assert!(r.passed);
        assert_eq!(r.alternative_limit, vec![1.6, -1.2]);
        assert_eq!(r.alternative.verdict, Verdict::Fails);
        assert!(r.limit_unique);
    }

    #[test]
    fn implication_flags_two_limits() {
        // a step profile cannot separate limits closer than the smallest grid t
        let nu = FuzzyAntiNorm::new(
            VectorSpaceSpec::euclidean(2).unwrap(),
            DecayProfile::Step,
            TConorm::Maximum,
        )
        .unwrap();
        let g = VectorSequence::generator(X.to_vec(), V.to_vec(), Rate::Harmonic, Some(X.to_vec())).unwrap();
        let y = space::axpy(&X, 1e-6, &V);
        let r = implication_suite(&nu, &g, 0.5, &[1.0], 10, 2, Some(y)).unwrap();
        assert_eq!(r.alternative.verdict, Verdict::Holds);
        assert!(!r.limit_unique && !r.passed);
    }

    #[test]
    fn step_limit_on_jump_is_inconclusive() {
        let nu = FuzzyAntiNorm::new(
            VectorSpaceSpec::euclidean(2).unwrap(),
            DecayProfile::Step,
            TConorm::Maximum,
        )
        .unwrap();
        // ‖d‖ = 1 and t = 1 puts the limit on the jump of the step
        let g =
            VectorSequence::generator(vec![0.6, 0.8], vec![1.0, 0.0], Rate::Harmonic, Some(vec![0.0, 0.0])).unwrap();
        let r = fuzzy_alpha_converges(&nu, &g, 0.5, &[1.0], 10).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn trace_rows() {
        let g = VectorSequence::generator(X.to_vec(), V.to_vec(), Rate::Harmonic, Some(X.to_vec())).unwrap();
        let rows = membership_trace(&recip(2), &g, &[1.0, 2.0], 3).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[5].n, 3);
        assert!((rows[5].nu - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(VectorSequence::generator(vec![0.0], vec![1.0], Rate::Geometric { q: 1.0 }, None).is_err());
        assert!(VectorSequence::explicit(vec![vec![0.0], vec![0.0, 1.0]], None).is_err());
        assert!(VectorSequence::explicit(vec![], None).is_err());
        let s = listed(|n| 1.0 / n as f64, 10, &X, &V);
        assert!(fuzzy_alpha_converges(&recip(2), &s, 0.5, &[0.0], 2).is_err());
        assert!(fuzzy_alpha_converges(&recip(3), &s, 0.5, &[1.0], 2).is_err());
        assert!(fuzzy_alpha_converges(&recip(2), &s, 0.5, &[1.0], 11).is_err());
    }

    proptest! {
        #[test]
        fn convergence_is_monotone_in_alpha(a1 in 0.01f64..0.99, a2 in 0.01f64..0.99, q in 0.05f64..0.95, offset in 0.0f64..2.0) {
            let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
            let nu = recip(2);
            let s = listed(|n| offset + q.powi(n as i32), 200, &X, &V);
            let r_hi = fuzzy_alpha_converges(&nu, &s, hi, &default_t_grid(), 50).unwrap();
            let r_lo = fuzzy_alpha_converges(&nu, &s, lo, &default_t_grid(), 50).unwrap();
            if r_hi.verdict == Verdict::Holds {
                prop_assert_eq!(r_lo.verdict, Verdict::Holds);
            }
        }

        #[test]
        fn convergent_lists_are_cauchy(q in 0.05f64..0.95, a in 0.01f64..0.99, scale in 0.1f64..10.0) {
            let nu = recip(2);
            let v = space::scale(scale, &V);
            let s = listed(|n| q.powi(n as i32), 300, &X, &v);
            let r = implication_suite(&nu, &s, a, &default_t_grid(), 50, 5, None).unwrap();
            prop_assert!(r.convergent_implies_cauchy && r.crisp_cauchy_implies_fuzzy);
        }
    }
}

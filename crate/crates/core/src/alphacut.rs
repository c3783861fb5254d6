//! The ascending α-norm family of a fuzzy anti-norm and its inverse.
//!
//! For `α ∈ (0, 1)`, `‖x‖*_α = inf {t : ν(x, t) <= 1 - α}`. For profile
//! anti-norms this is `Q(α)·‖x‖` with `Q(α) = inf {u > 0 : f(u) <= 1 - α}`,
//! the generalized inverse of the profile. Conversely the anti-norm is
//! recovered as `ν'(x, t) = inf {1 - α : ‖x‖*_α <= t}`.
//!
//! Every infimum here is computed by bisection on a monotone predicate,
//! never by grid minimization.

use serde::Serialize;

use crate::antinorm::FuzzyAntiNorm;
use crate::bisect::{self, Tolerance, DEFAULT_RTOL};
use crate::error::{check_alpha, invalid, Result};
use crate::sampling;
use crate::space::{self, is_zero};
use crate::tconorm::UnitValue;

/// Agreement required between `ν` and its reconstruction.
pub const ROUND_TRIP_TOL: f64 = 1e-6;
/// Tolerance on `|ν(x, ‖x‖*_α) - (1 - α)|` and the converse root.
pub const LEMMA_TOL: f64 = 1e-8;
/// Width of the boundary band excluded from the unit anti-ball comparison.
pub const BOUNDARY_BAND: f64 = 1e-8;
/// Bound on the α-norm change at the last step of a continuity probe.
pub const CONTINUITY_TOL: f64 = 1e-6;

/// A value in `[0, +inf]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub enum ExtendedNonneg {
    Finite(f64),
    Infinite,
}

impl ExtendedNonneg {
    pub fn from_option(v: Option<f64>) -> Self {
        v.map_or(ExtendedNonneg::Infinite, ExtendedNonneg::Finite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedNonneg::Finite(v) => Some(v),
            ExtendedNonneg::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedNonneg::Infinite)
    }

    /// `self <= t` in extended arithmetic.
    pub fn le(self, t: f64) -> bool {
        match self {
            ExtendedNonneg::Finite(v) => v <= t,
            ExtendedNonneg::Infinite => false,
        }
    }

    /// Product with a finite, strictly positive factor.
    pub fn times(self, c: f64) -> Self {
        match self {
            ExtendedNonneg::Finite(v) => ExtendedNonneg::Finite(v * c),
            ExtendedNonneg::Infinite => ExtendedNonneg::Infinite,
        }
    }
}

impl std::fmt::Display for ExtendedNonneg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedNonneg::Finite(v) => v.fmt(f),
            ExtendedNonneg::Infinite => f.write_str("inf"),
        }
    }
}

/// How `Q(α)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScaleRoute {
    /// Closed form where the profile has one, bisection otherwise.
    ClosedForm,
    /// Always bisect the profile.
    Bisection,
}

/// `Q(α)` by bisection on the non-increasing profile.
pub fn scale_by_bisection(nu: &FuzzyAntiNorm, alpha: f64) -> ExtendedNonneg {
    let level = 1.0 - alpha;
    ExtendedNonneg::from_option(bisect::infimum_positive(
        |u| nu.profile.value(u) <= level,
        1.0,
        Tolerance::Relative(DEFAULT_RTOL),
    ))
}

/// `‖x‖*_α` by bisection on `t -> ν(x, t)` directly, without using the
/// profile form. This is the oracle route for the closed forms.
pub fn alpha_norm_by_bisection(nu: &FuzzyAntiNorm, x: &[f64], alpha: f64) -> Result<ExtendedNonneg> {
    nu.space.check_dim(x)?;
    check_alpha(alpha)?;
    let level = 1.0 - alpha;
    let hint = nu.base_norm(x);
    Ok(ExtendedNonneg::from_option(bisect::infimum_positive(
        |t| nu.membership(x, t) <= level,
        hint,
        Tolerance::Relative(DEFAULT_RTOL),
    )))
}

/// `‖x‖*_α = inf {t > 0 : ν(x, t) <= 1 - α}`; zero for `x = θ`.
pub fn alpha_norm(nu: &FuzzyAntiNorm, x: &[f64], alpha: f64) -> Result<ExtendedNonneg> {
    nu.space.check_dim(x)?;
    check_alpha(alpha)?;
    let family = AlphaNormFamily::borrowed(nu, ScaleRoute::ClosedForm);
    Ok(family.norm_at(nu.base_norm(x), alpha))
}

/// The family `{‖·‖*_α : α ∈ (0, 1)}` induced by a profile anti-norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaNormFamily {
    source: FuzzyAntiNorm,
    route: ScaleRoute,
}

impl AlphaNormFamily {
    pub fn new(source: FuzzyAntiNorm) -> Self {
        Self::with_route(source, ScaleRoute::ClosedForm)
    }

    pub fn with_route(source: FuzzyAntiNorm, route: ScaleRoute) -> Self {
        Self { source, route }
    }

    fn borrowed(nu: &FuzzyAntiNorm, route: ScaleRoute) -> FamilyRef<'_> {
        FamilyRef { source: nu, route }
    }

    pub fn source(&self) -> &FuzzyAntiNorm {
        &self.source
    }

    pub fn route(&self) -> ScaleRoute {
        self.route
    }

    fn as_ref(&self) -> FamilyRef<'_> {
        FamilyRef {
            source: &self.source,
            route: self.route,
        }
    }

    /// `Q(α)`, the α-norm of any vector of unit base norm.
    pub fn scale(&self, alpha: f64) -> ExtendedNonneg {
        self.as_ref().scale(alpha)
    }

    pub fn norm(&self, x: &[f64], alpha: f64) -> Result<ExtendedNonneg> {
        self.source.space.check_dim(x)?;
        check_alpha(alpha)?;
        Ok(self.as_ref().norm_at(self.source.base_norm(x), alpha))
    }

    /// `ν'(x, t) = inf {1 - α : ‖x‖*_α <= t}`, and `1` at `(θ, 0)` or when
    /// no α qualifies.
    pub fn reconstruct(&self, x: &[f64], t: f64) -> Result<UnitValue> {
        self.source.space.check_dim(x)?;
        UnitValue::new(self.as_ref().reconstruct_at(self.source.base_norm(x), t))
    }

    /// `ν'` for a vector with base norm `norm`.
    pub fn reconstruct_at_norm(&self, norm: f64, t: f64) -> f64 {
        self.as_ref().reconstruct_at(norm, t)
    }
}

#[derive(Clone, Copy)]
struct FamilyRef<'a> {
    source: &'a FuzzyAntiNorm,
    route: ScaleRoute,
}

impl FamilyRef<'_> {
    fn scale(&self, alpha: f64) -> ExtendedNonneg {
        match self.route {
            ScaleRoute::ClosedForm => self
                .source
                .profile
                .scale_closed_form(alpha)
                .unwrap_or_else(|| scale_by_bisection(self.source, alpha)),
            ScaleRoute::Bisection => scale_by_bisection(self.source, alpha),
        }
    }

    fn norm_at(&self, base: f64, alpha: f64) -> ExtendedNonneg {
        if base == 0.0 {
            ExtendedNonneg::Finite(0.0)
        } else {
            self.scale(alpha).times(base)
        }
    }

    fn reconstruct_at(&self, base: f64, t: f64) -> f64 {
        if base == 0.0 {
            // ‖θ‖*_α = 0 for every α
            return if t > 0.0 { 0.0 } else { 1.0 };
        }
        // {α : Q(α)·‖x‖ <= t} is a down-set of (0, 1); find its supremum
        let fails = |a: f64| !self.norm_at(base, a).le(t);
        let b = bisect::shrink(fails, 0.0, 1.0, Tolerance::Adjacent);
        1.0 - b.lo
    }
}

/// Outcome of the two lemmas linking `ν` and `‖·‖*_α` at one `(x, α)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub alpha: f64,
    pub alpha_norm: f64,
    /// `ν(x, ‖x‖*_α)`
    pub membership_at_norm: f64,
    /// `ν(x, ‖x‖*_α) <= 1 - α` up to [`LEMMA_TOL`].
    pub upper_bound_holds: bool,
    /// `|ν(x, ‖x‖*_α) - (1 - α)|`
    pub level_gap: f64,
    /// Root of `ν(x, s) = 1 - α` found by bisection on `s`.
    pub converse_root: f64,
    pub converse_rel_error: f64,
    pub passed: bool,
}

/// Checks `ν(x, ‖x‖*_α) <= 1 - α` and `‖x‖*_α = s ⇔ ν(x, s) = 1 - α`.
///
/// Requires condition (vii); step profiles are refused.
pub fn verify_alpha_lemmas(nu: &FuzzyAntiNorm, x: &[f64], alpha: f64) -> Result<LemmaReport> {
    nu.require_condition_vii()?;
    nu.space.check_dim(x)?;
    check_alpha(alpha)?;
    if is_zero(x) {
        return Err(invalid("x", "the lemmas concern nonzero vectors"));
    }
    let level = 1.0 - alpha;
    let s = alpha_norm(nu, x, alpha)?
        .finite()
        .ok_or_else(|| invalid("alpha", "α-norm is infinite"))?;
    let at_s = nu.membership(x, s);
    let root = alpha_norm_by_bisection(nu, x, alpha)?
        .finite()
        .ok_or_else(|| invalid("alpha", "no root of ν(x, s) = 1 - α"))?;
    let gap = (at_s - level).abs();
    let rel = (root - s).abs() / s;
    let upper = at_s <= level + LEMMA_TOL;
    Ok(LemmaReport {
        alpha,
        alpha_norm: s,
        membership_at_norm: at_s,
        upper_bound_holds: upper,
        level_gap: gap,
        converse_root: root,
        converse_rel_error: rel,
        passed: upper && gap <= LEMMA_TOL && rel <= LEMMA_TOL,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPoint {
    pub x_index: usize,
    pub t: f64,
    pub nu: f64,
    pub nu_prime: f64,
    pub error: f64,
}

/// `ν` against its reconstruction `ν'` over a grid of `(x, t)` samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructionResult {
    pub xs: Vec<Vec<f64>>,
    pub ts: Vec<f64>,
    pub points: Vec<GridPoint>,
    pub sup_error: f64,
    /// Set when the profile violates condition (vii): the reconstruction is
    /// then not guaranteed at discontinuities of `ν(x, ·)`.
    pub continuity_caveat: bool,
}

impl ReconstructionResult {
    pub fn passed(&self) -> bool {
        self.sup_error <= ROUND_TRIP_TOL
    }
}

/// `sup |ν'(x, t) - ν(x, t)|` over the given points.
pub fn round_trip_on_grid(nu: &FuzzyAntiNorm, xs: &[Vec<f64>], ts: &[f64]) -> Result<ReconstructionResult> {
    for x in xs {
        nu.space.check_dim(x)?;
    }
    let family = AlphaNormFamily::borrowed(nu, ScaleRoute::ClosedForm);
    let mut points = Vec::with_capacity(xs.len() * ts.len());
    let mut sup = 0.0f64;
    for (i, x) in xs.iter().enumerate() {
        let base = nu.base_norm(x);
        for &t in ts {
            let direct = nu.membership_at_norm(base, t);
            let recovered = family.reconstruct_at(base, t);
            let error = (direct - recovered).abs();
            sup = sup.max(error);
            points.push(GridPoint {
                x_index: i,
                t,
                nu: direct,
                nu_prime: recovered,
                error,
            });
        }
    }
    Ok(ReconstructionResult {
        xs: xs.to_vec(),
        ts: ts.to_vec(),
        points,
        sup_error: sup,
        continuity_caveat: !nu.satisfies_condition_vii(),
    })
}

/// Seeded random grid: `x_samples` vectors with base norm in `[0.1, 10]`
/// times `t_samples` times in `[0.01, 100]`.
pub fn round_trip_error(
    nu: &FuzzyAntiNorm,
    x_samples: usize,
    t_samples: usize,
    seed: u64,
) -> Result<ReconstructionResult> {
    if x_samples == 0 || t_samples == 0 {
        return Err(invalid("samples", "grid sizes must be positive"));
    }
    let mut rng = sampling::rng(seed);
    let n = nu.dimension();
    let xs: Vec<Vec<f64>> = (0..x_samples)
        .map(|_| sampling::scaled_vector(&mut rng, n, &nu.space.base_norm, 0.1, 10.0))
        .collect();
    let ts: Vec<f64> = (0..t_samples)
        .map(|_| sampling::log_uniform(&mut rng, 1e-2, 1e2))
        .collect();
    round_trip_on_grid(nu, &xs, &ts)
}

/// Continuity of `α -> ‖x‖*_α` along monotone sequences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub alpha: f64,
    pub n_max: usize,
    /// `(n, |‖x‖*_{α_n} - ‖x‖*_α|)` for `α_n = α - α(1-α)/n` (increasing).
    pub increasing: Vec<(usize, f64)>,
    /// Same for `α_n = α + α(1-α)/n` (decreasing).
    pub decreasing: Vec<(usize, f64)>,
    pub increasing_error: f64,
    pub decreasing_error: f64,
    /// Both error sequences are non-increasing in `n`.
    pub monotone_decay: bool,
    /// `Q` is constant for this profile; continuity holds trivially.
    pub trivial: bool,
    pub passed: bool,
}

fn probe_schedule(n_max: usize) -> Vec<usize> {
    let mut ns = Vec::new();
    let mut n = 1usize;
    while n < n_max {
        ns.push(n);
        n = n.saturating_mul(10);
    }
    ns.push(n_max);
    ns
}

/// Probes `‖x‖*_{α_n} -> ‖x‖*_α` for `α_n = α ∓ α(1-α)/n`, both staying in
/// `(0, 1)` for every `n >= 1`.
pub fn alpha_continuity_probe(
    family: &AlphaNormFamily,
    x: &[f64],
    alpha: f64,
    n_max: usize,
) -> Result<ContinuityReport> {
    check_alpha(alpha)?;
    if n_max == 0 {
        return Err(invalid("n_max", "must be positive"));
    }
    let nu = family.source();
    nu.space.check_dim(x)?;
    let trivial = matches!(nu.profile, crate::profile::DecayProfile::Step);
    if !trivial {
        nu.require_condition_vii()?;
    }
    let target = family
        .norm(x, alpha)?
        .finite()
        .ok_or_else(|| invalid("alpha", "α-norm is infinite"))?;
    let err = |a: f64| -> Result<f64> {
        Ok(match family.norm(x, a)? {
            ExtendedNonneg::Finite(v) => (v - target).abs(),
            ExtendedNonneg::Infinite => f64::INFINITY,
        })
    };
    let step = alpha * (1.0 - alpha);
    let mut increasing = Vec::new();
    let mut decreasing = Vec::new();
    for n in probe_schedule(n_max) {
        increasing.push((n, err(alpha - step / n as f64)?));
        decreasing.push((n, err(alpha + step / n as f64)?));
    }
    let decays = |v: &[(usize, f64)]| v.windows(2).all(|w| w[1].1 <= w[0].1);
    let monotone_decay = decays(&increasing) && decays(&decreasing);
    let increasing_error = increasing.last().map_or(0.0, |p| p.1);
    let decreasing_error = decreasing.last().map_or(0.0, |p| p.1);
    Ok(ContinuityReport {
        alpha,
        n_max,
        passed: increasing_error <= CONTINUITY_TOL && decreasing_error <= CONTINUITY_TOL,
        increasing,
        decreasing,
        increasing_error,
        decreasing_error,
        monotone_decay,
        trivial,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub x_index: usize,
    pub alpha: f64,
    pub direct: f64,
    pub recovered: f64,
    pub error: f64,
}

/// `‖x‖'_α` re-extracted from the reconstructed anti-norm against `‖x‖*_α`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRoundTripReport {
    pub xs: Vec<Vec<f64>>,
    pub rows: Vec<FamilyRow>,
    pub sup_error: f64,
    pub passed: bool,
}

/// Defines `ν` from the family by reconstruction, re-extracts
/// `‖x‖'_α = inf {t : ν(x, t) <= 1 - α}` by bisection and compares.
///
/// Samples `x_samples` pairs `(x, α)` with `α ∈ [0.05, 0.95]` and base norm
/// in `[0.1, 10]`; the first row is always `x = θ`.
pub fn family_round_trip(family: &AlphaNormFamily, x_samples: usize, seed: u64) -> Result<FamilyRoundTripReport> {
    if x_samples == 0 {
        return Err(invalid("x_samples", "must be positive"));
    }
    let nu = family.source();
    let n = nu.dimension();
    let mut rng = sampling::rng(seed);
    let mut xs = Vec::with_capacity(x_samples);
    let mut rows = Vec::with_capacity(x_samples);
    let mut sup = 0.0f64;
    for i in 0..x_samples {
        let x = if i == 0 {
            nu.space.zero()
        } else {
            sampling::scaled_vector(&mut rng, n, &nu.space.base_norm, 0.1, 10.0)
        };
        let alpha = sampling::uniform(&mut rng, 0.05, 0.95);
        let base = nu.base_norm(&x);
        let direct = family.norm(&x, alpha)?;
        let level = 1.0 - alpha;
        let recovered = ExtendedNonneg::from_option(bisect::infimum_positive(
            |t| family.reconstruct_at_norm(base, t) <= level,
            if base > 0.0 { base } else { 1.0 },
            Tolerance::Relative(DEFAULT_RTOL),
        ));
        let error = match (direct, recovered) {
            (ExtendedNonneg::Finite(a), ExtendedNonneg::Finite(b)) => (a - b).abs(),
            (ExtendedNonneg::Infinite, ExtendedNonneg::Infinite) => 0.0,
            _ => f64::INFINITY,
        };
        sup = sup.max(error);
        rows.push(FamilyRow {
            x_index: i,
            alpha,
            direct: direct.finite().unwrap_or(f64::INFINITY),
            recovered: recovered.finite().unwrap_or(f64::INFINITY),
            error,
        });
        xs.push(x);
    }
    Ok(FamilyRoundTripReport {
        xs,
        rows,
        sup_error: sup,
        passed: sup <= ROUND_TRIP_TOL,
    })
}

/// Agreement of `{x : ν(x, 1) <= 1 - α}` with `{x : ‖x‖*_α <= 1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntiBallReport {
    pub alpha: f64,
    pub samples: usize,
    pub inside: usize,
    pub in_band: usize,
    pub disagreements: usize,
    pub first_disagreement: Option<Vec<f64>>,
    /// Largest base-norm radius of the set, by ray bisection on `ν`.
    pub bounding_radius: f64,
    /// `1 / Q(α)`
    pub expected_radius: f64,
    pub passed: bool,
}

/// Number of rays used to measure the bounding radius.
pub const RADIUS_RAYS: usize = 64;

/// Sup of `r` with `ν(r·d, 1) <= 1 - α` along a direction `d`.
pub(crate) fn ray_radius(nu: &FuzzyAntiNorm, d: &[f64], alpha: f64) -> f64 {
    let level = 1.0 - alpha;
    let dn = nu.base_norm(d);
    bisect::infimum_positive(
        |r| nu.membership_at_norm(r * dn, 1.0) > level,
        1.0,
        Tolerance::Relative(1e-12),
    )
    .map_or(f64::INFINITY, |r| r * dn)
}

pub fn unit_anti_ball_identity(nu: &FuzzyAntiNorm, alpha: f64, samples: usize, seed: u64) -> Result<AntiBallReport> {
    check_alpha(alpha)?;
    if samples == 0 {
        return Err(invalid("samples", "must be positive"));
    }
    let family = AlphaNormFamily::borrowed(nu, ScaleRoute::ClosedForm);
    let q = family
        .scale(alpha)
        .finite()
        .filter(|q| *q > 0.0)
        .ok_or_else(|| invalid("alpha", "Q(α) must be finite and positive"))?;
    let expected = 1.0 / q;
    let level = 1.0 - alpha;
    let n = nu.dimension();
    let mut rng = sampling::rng(seed);
    let (mut inside, mut in_band, mut disagreements) = (0, 0, 0);
    let mut first = None;
    for i in 0..samples {
        let x = if i == 0 {
            nu.space.zero()
        } else {
            let r = sampling::uniform(&mut rng, 0.0, 2.0 * expected);
            space::scale(r, &sampling::unit_direction(&mut rng, n, &nu.space.base_norm))
        };
        let base = nu.base_norm(&x);
        let by_nu = nu.membership_at_norm(base, 1.0) <= level;
        let norm = family.norm_at(base, alpha);
        if norm.finite().is_some_and(|v| (v - 1.0).abs() <= BOUNDARY_BAND) {
            in_band += 1;
            continue;
        }
        let by_norm = norm.le(1.0);
        if by_nu {
            inside += 1;
        }
        if by_nu != by_norm {
            disagreements += 1;
            first.get_or_insert(x);
        }
    }
    let radius = (0..RADIUS_RAYS)
        .map(|_| ray_radius(nu, &sampling::unit_direction(&mut rng, n, &nu.space.base_norm), alpha))
        .fold(0.0f64, f64::max);
    Ok(AntiBallReport {
        alpha,
        samples,
        inside,
        in_band,
        disagreements,
        first_disagreement: first,
        bounding_radius: radius,
        expected_radius: expected,
        passed: disagreements == 0 && (radius - expected).abs() <= 1e-6,
    })
}

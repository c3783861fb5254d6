//! Riesz-lemma witnesses for the α-norms of a fuzzy anti-norm.
//!
//! Given a proper subspace `W` and `ε ∈ (0, 1)`, find `y` with `‖y‖*_α = 1`
//! and `inf_{w ∈ W} ‖y - w‖*_α > 1 - ε`. In membership form this reads
//! `ν(y, 1) <= 1 - α` and `ν(y - w, 1 - ε) > 1 - α` for every `w ∈ W`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::alphacut::{ray_radius, AlphaNormFamily, ExtendedNonneg};
use crate::antinorm::FuzzyAntiNorm;
use crate::error::{check_alpha, invalid, Error, Result};
use crate::sampling;
use crate::space::{self, is_zero, BaseNorm};

/// Relative singular value cut-off for rank decisions.
pub const RANK_TOL: f64 = 1e-10;
/// Tolerance on `‖y‖*_α = 1` and on the membership checks.
pub const WITNESS_TOL: f64 = 1e-8;
/// Slack allowed on the distance lower bound of a constructed witness.
pub const DISTANCE_SLACK: f64 = 1e-6;
/// Coordinate descent stops when a sweep gains less than this.
pub const DESCENT_TOL: f64 = 1e-10;
pub const DESCENT_MAX_ITERATIONS: usize = 10_000;
/// Vertex enumeration is used for the ℓ1 and ℓ∞ base norms up to this many
/// candidate vertices; beyond it coordinate descent takes over.
pub const MAX_VERTICES: usize = 1_000_000;

/// Span of a list of linearly independent vectors in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Subspace {
    dimension: usize,
    basis: Vec<Vec<f64>>,
}

fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > RANK_TOL * top).count()
}

impl Subspace {
    pub fn new(dimension: usize, basis: Vec<Vec<f64>>) -> Result<Self> {
        if dimension == 0 {
            return Err(invalid("dimension", "must be positive"));
        }
        if let Some(b) = basis.iter().find(|b| b.len() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                actual: b.len(),
            });
        }
        if basis.iter().flatten().any(|v| !v.is_finite()) {
            return Err(invalid("basis", "entries must be finite"));
        }
        let s = Self { dimension, basis };
        let rank = numerical_rank(&s.matrix());
        if rank < s.basis.len() {
            return Err(Error::RankDeficient {
                rank,
                len: s.basis.len(),
            });
        }
        Ok(s)
    }

    /// `{θ}`
    pub fn trivial(dimension: usize) -> Result<Self> {
        Self::new(dimension, Vec::new())
    }

    /// Span of `rank` Gaussian vectors.
    pub fn random(dimension: usize, rank: usize, seed: u64) -> Result<Self> {
        let mut rng = sampling::rng(seed);
        let basis = (0..rank)
            .map(|_| sampling::unit_direction(&mut rng, dimension, &BaseNorm::Euclidean))
            .collect();
        Self::new(dimension, basis)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_proper(&self) -> bool {
        self.rank() < self.dimension
    }

    /// Basis vectors as columns.
    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dimension, self.basis.len(), |i, j| self.basis[j][i])
    }

    /// Smallest singular value of the basis matrix, `inf` for `{θ}`.
    pub fn sigma_min(&self) -> f64 {
        if self.basis.is_empty() {
            return f64::INFINITY;
        }
        self.matrix().svd(false, false).singular_values.min()
    }

    pub fn point(&self, coefficients: &[f64]) -> Vec<f64> {
        let mut w = vec![0.0; self.dimension];
        for (c, b) in coefficients.iter().zip(&self.basis) {
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi += c * bi;
            }
        }
        w
    }

    /// Membership by rank test at [`RANK_TOL`].
    pub fn contains(&self, v: &[f64]) -> bool {
        if is_zero(v) {
            return true;
        }
        let mut m = self.matrix();
        m = m.insert_column(self.basis.len(), 0.0);
        m.set_column(self.basis.len(), &DVector::from_column_slice(v));
        numerical_rank(&m) == self.rank()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Trivial,
    NormalEquations,
    VertexEnumeration,
    CoordinateDescent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceDistance {
    /// `inf_w ‖v - w‖*_α`
    pub distance: f64,
    /// `inf_w ‖v - w‖` in the base norm.
    pub base_distance: f64,
    pub minimizer: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub method: DistanceMethod,
    pub iterations: usize,
    pub in_subspace: bool,
}

fn residual(v: &[f64], w: &Subspace, c: &[f64]) -> Vec<f64> {
    space::sub(v, &w.point(c))
}

fn least_squares(v: &[f64], w: &Subspace) -> Vec<f64> {
    let b = w.matrix();
    let gram = b.transpose() * &b;
    let rhs = b.transpose() * DVector::from_column_slice(v);
    match gram.clone().cholesky() {
        Some(ch) => ch.solve(&rhs).as_slice().to_vec(),
        // ill-conditioned but full rank: fall back to SVD
        None => gram
            .svd(true, true)
            .solve(&rhs, 0.0)
            .map(|c| c.as_slice().to_vec())
            .unwrap_or_else(|_| vec![0.0; w.rank()]),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n.saturating_sub(k));
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn solve_square(m: DMatrix<f64>, rhs: DVector<f64>) -> Option<DVector<f64>> {
    let lu = m.lu();
    lu.solve(&rhs).filter(|x| x.iter().all(|v| v.is_finite()))
}

/// `min_c ‖v - Bc‖∞` as a linear program; the optimum sits on a vertex where
/// `k + 1` of the constraints `±(v_i - b_i·c) <= s` are active.
fn chebyshev(v: &[f64], w: &Subspace) -> Option<Vec<f64>> {
    let n = w.dimension;
    let k = w.rank();
    let b = w.matrix();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for_each_combination(2 * n, k + 1, |rows| {
        let mut m = DMatrix::zeros(k + 1, k + 1);
        let mut rhs = DVector::zeros(k + 1);
        for (r, &row) in rows.iter().enumerate() {
            let (i, sign) = (row / 2, if row % 2 == 0 { 1.0 } else { -1.0 });
            for j in 0..k {
                m[(r, j)] = sign * b[(i, j)];
            }
            m[(r, k)] = 1.0;
            rhs[r] = sign * v[i];
        }
        let Some(sol) = solve_square(m, rhs) else { return };
        let c = &sol.as_slice()[..k];
        let obj = BaseNorm::Maximum.norm(&residual(v, w, c));
        if best.as_ref().is_none_or(|(o, _)| obj < *o) {
            best = Some((obj, c.to_vec()));
        }
    });
    best.map(|b| b.1)
}

/// `min_c ‖v - Bc‖_1`; some optimum interpolates `v` on `k` independent rows.
fn least_absolute(v: &[f64], w: &Subspace) -> Option<Vec<f64>> {
    let k = w.rank();
    let b = w.matrix();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for_each_combination(w.dimension, k, |rows| {
        let m = DMatrix::from_fn(k, k, |r, j| b[(rows[r], j)]);
        let rhs = DVector::from_fn(k, |r, _| v[rows[r]]);
        let Some(c) = solve_square(m, rhs) else { return };
        let obj = BaseNorm::P { p: 1.0 }.norm(&residual(v, w, c.as_slice()));
        if best.as_ref().is_none_or(|(o, _)| obj < *o) {
            best = Some((obj, c.as_slice().to_vec()));
        }
    });
    best.map(|b| b.1)
}

/// Minimizes the convex `φ(λ) = g(c + λd)` by golden section on a bracket
/// that provably contains the minimizer. Returns the new point if it does
/// not increase the objective.
fn line_search(v: &[f64], w: &Subspace, norm: &BaseNorm, c: &[f64], d: &[f64]) -> Option<(Vec<f64>, f64)> {
    let r = residual(v, w, c);
    let bd = w.point(d);
    let step_norm = norm.norm(&bd);
    if step_norm == 0.0 {
        return None;
    }
    let g0 = norm.norm(&r);
    let phi = |l: f64| norm.norm(&space::axpy(&r, -l, &bd));
    // φ(λ) >= |λ|·‖Bd‖ - ‖r‖ > φ(0) outside [-L, L]
    let (mut lo, mut hi) = (-2.0 * g0 / step_norm, 2.0 * g0 / step_norm);
    let inv = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv * (hi - lo);
    let mut x2 = lo + inv * (hi - lo);
    let (mut f1, mut f2) = (phi(x1), phi(x2));
    for _ in 0..120 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv * (hi - lo);
            f1 = phi(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv * (hi - lo);
            f2 = phi(x2);
        }
    }
    let (l, g) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    (g <= g0).then(|| (space::axpy(c, l, d), g))
}

/// Cyclic coordinate descent with exact line searches and a pattern move
/// along the last sweep. Each accepted step is non-increasing.
fn coordinate_descent(v: &[f64], w: &Subspace, norm: &BaseNorm) -> (Vec<f64>, usize) {
    let k = w.rank();
    let mut c = least_squares(v, w);
    let mut g = norm.norm(&residual(v, w, &c));
    for it in 1..=DESCENT_MAX_ITERATIONS {
        let start = c.clone();
        let g_start = g;
        for j in 0..k {
            let mut e = vec![0.0; k];
            e[j] = 1.0;
            if let Some((next, gn)) = line_search(v, w, norm, &c, &e) {
                c = next;
                g = gn;
            }
        }
        let d = space::sub(&c, &start);
        if let Some((next, gn)) = line_search(v, w, norm, &c, &d) {
            c = next;
            g = gn;
        }
        if g_start - g < DESCENT_TOL {
            return (c, it);
        }
    }
    (c, DESCENT_MAX_ITERATIONS)
}

/// `inf_{w ∈ W} ‖v - w‖*_α = Q(α) · inf_{w ∈ W} ‖v - w‖`.
pub fn distance_to_subspace(a: &AlphaNormFamily, alpha: f64, v: &[f64], w: &Subspace) -> Result<SubspaceDistance> {
    check_alpha(alpha)?;
    let nu = a.source();
    nu.space.check_dim(v)?;
    if w.dimension != nu.dimension() {
        return Err(Error::SpaceMismatch);
    }
    let q = match a.scale(alpha) {
        ExtendedNonneg::Finite(q) => q,
        ExtendedNonneg::Infinite => return Err(invalid("alpha", "Q(α) is infinite")),
    };
    let norm = &nu.space.base_norm;
    let k = w.rank();
    let (c, method, iterations) = if k == 0 {
        (Vec::new(), DistanceMethod::Trivial, 0)
    } else if norm.is_euclidean() {
        (least_squares(v, w), DistanceMethod::NormalEquations, 0)
    } else {
        let enumerated = match norm {
            BaseNorm::Maximum if binomial(2 * w.dimension, k + 1) <= MAX_VERTICES => chebyshev(v, w),
            BaseNorm::P { p } if *p == 1.0 && binomial(w.dimension, k) <= MAX_VERTICES => least_absolute(v, w),
            _ => None,
        };
        match enumerated {
            Some(c) => (c, DistanceMethod::VertexEnumeration, 0),
            None => {
                let (c, it) = coordinate_descent(v, w, norm);
                (c, DistanceMethod::CoordinateDescent, it)
            }
        }
    };
    let minimizer = w.point(&c);
    let in_subspace = w.contains(v);
    let base = if in_subspace {
        0.0
    } else {
        norm.norm(&space::sub(v, &minimizer))
    };
    Ok(SubspaceDistance {
        distance: q * base,
        base_distance: base,
        minimizer,
        coefficients: c,
        method,
        iterations,
        in_subspace,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RieszWitness {
    pub y: Vec<f64>,
    pub alpha: f64,
    pub eps: f64,
    /// Index `i` of the standard basis vector `v = e_i` used.
    pub v_index: usize,
    pub minimizer: Vec<f64>,
    pub achieved_unit_norm: f64,
    pub achieved_distance_lower_bound: f64,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(invalid("eps", format!("{eps} is not in (0, 1)")))
    }
}

/// Builds `y = (v - w₀) / ‖v - w₀‖*_α` from the first standard basis vector
/// `v ∉ W` and its nearest point `w₀ ∈ W`, then re-checks the result.
pub fn riesz_witness(nu: &FuzzyAntiNorm, alpha: f64, w: &Subspace, eps: f64) -> Result<RieszWitness> {
    check_alpha(alpha)?;
    check_eps(eps)?;
    if w.dimension != nu.dimension() {
        return Err(Error::SpaceMismatch);
    }
    if !w.is_proper() {
        return Err(Error::NotProper(w.rank()));
    }
    nu.require_condition_vii()?;
    let family = AlphaNormFamily::new(nu.clone());
    let (v_index, v) = (0..w.dimension)
        .map(|i| (i, nu.space.basis_vector(i)))
        .find(|(_, e)| !w.contains(e))
        .ok_or(Error::NotProper(w.rank()))?;
    let d = distance_to_subspace(&family, alpha, &v, w)?;
    let offset = space::sub(&v, &d.minimizer);
    let scale = family
        .norm(&offset, alpha)?
        .finite()
        .filter(|s| *s > 0.0)
        .ok_or_else(|| Error::WitnessInvariant("‖v - w₀‖*_α is not positive and finite".into()))?;
    let y = space::scale(1.0 / scale, &offset);
    let unit = family.norm(&y, alpha)?.finite().unwrap_or(f64::INFINITY);
    let lower = distance_to_subspace(&family, alpha, &y, w)?.distance;
    if (unit - 1.0).abs() > WITNESS_TOL {
        return Err(Error::WitnessInvariant(format!("‖y‖*_α = {unit}")));
    }
    if lower <= 1.0 - eps - DISTANCE_SLACK {
        return Err(Error::WitnessInvariant(format!(
            "distance {lower} <= 1 - ε = {}",
            1.0 - eps
        )));
    }
    Ok(RieszWitness {
        y,
        alpha,
        eps,
        v_index,
        minimizer: d.minimizer,
        achieved_unit_norm: unit,
        achieved_distance_lower_bound: lower,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub alpha: f64,
    pub eps: f64,
    pub degenerate: bool,
    /// `‖y‖*_α`
    pub unit_norm: f64,
    pub unit_norm_ok: bool,
    /// `ν(y, 1)`, must be `<= 1 - α`.
    pub membership_at_one: f64,
    pub membership_ok: bool,
    pub samples: usize,
    /// `min_w ν(y - w, 1 - ε) - (1 - α)` over the checked `w`; must be
    /// positive up to [`WITNESS_TOL`].
    pub worst_margin: f64,
    pub worst_w: Vec<f64>,
    /// `min_w ‖y - w‖*_α` over the checked `w`.
    pub min_alpha_distance: f64,
    /// Margin at the nearest point of `W`, checked separately.
    pub minimizer_margin: f64,
    pub minimizer: Vec<f64>,
    pub distance_ok: bool,
    pub passed: bool,
}

/// Checks `‖y‖*_α = 1`, `ν(y, 1) <= 1 - α` and `ν(y - w, 1 - ε) > 1 - α` on
/// the nearest point of `W` and on `samples` random points of `W`.
///
/// Half of the random points have coefficients uniform in `[-R, R]` with
/// `R = 10·√n / σ_min`, covering the base-norm ball of radius 10 in `W`; the
/// other half are small perturbations of the nearest point.
#[allow(clippy::too_many_arguments)]
pub fn verify_witness(
    nu: &FuzzyAntiNorm,
    alpha: f64,
    eps: f64,
    y: &[f64],
    w: &Subspace,
    samples: usize,
    seed: u64,
) -> Result<WitnessReport> {
    check_alpha(alpha)?;
    check_eps(eps)?;
    nu.space.check_dim(y)?;
    if w.dimension != nu.dimension() {
        return Err(Error::SpaceMismatch);
    }
    if samples == 0 {
        return Err(invalid("samples", "must be positive"));
    }
    let family = AlphaNormFamily::new(nu.clone());
    let level = 1.0 - alpha;
    let t = 1.0 - eps;
    let unit = family.norm(y, alpha)?.finite().unwrap_or(f64::INFINITY);
    let at_one = nu.membership(y, 1.0);
    let nearest = distance_to_subspace(&family, alpha, y, w)?;

    let mut worst = f64::INFINITY;
    let mut worst_w = nearest.minimizer.clone();
    let mut min_dist = f64::INFINITY;
    let mut observe = |p: Vec<f64>| {
        let diff = space::sub(y, &p);
        let margin = nu.membership(&diff, t) - level;
        min_dist = min_dist.min(
            family
                .norm(&diff, alpha)
                .ok()
                .and_then(|v| v.finite())
                .unwrap_or(f64::INFINITY),
        );
        if margin < worst || margin.is_nan() {
            worst = margin;
            worst_w = p;
        }
    };
    let minimizer_margin = nu.membership(&space::sub(y, &nearest.minimizer), t) - level;
    observe(nearest.minimizer.clone());

    let k = w.rank();
    let mut rng = sampling::rng(seed);
    let n = w.dimension as f64;
    let sigma = w.sigma_min();
    let wide = 10.0 * n.sqrt() / sigma;
    let narrow = 0.1 / sigma;
    for i in 0..samples {
        let c: Vec<f64> = if i % 2 == 0 {
            (0..k).map(|_| sampling::uniform(&mut rng, -wide, wide)).collect()
        } else {
            nearest
                .coefficients
                .iter()
                .map(|c0| c0 + sampling::uniform(&mut rng, -narrow, narrow))
                .collect()
        };
        observe(w.point(&c));
    }

    let degenerate = is_zero(y);
    let unit_ok = (unit - 1.0).abs() <= WITNESS_TOL;
    let membership_ok = at_one <= level + WITNESS_TOL;
    let distance_ok = worst >= -WITNESS_TOL && minimizer_margin >= -WITNESS_TOL;
    Ok(WitnessReport {
        alpha,
        eps,
        degenerate,
        unit_norm: unit,
        unit_norm_ok: unit_ok,
        membership_at_one: at_one,
        membership_ok,
        samples: samples + 1,
        worst_margin: worst,
        worst_w,
        min_alpha_distance: min_dist,
        minimizer_margin,
        minimizer: nearest.minimizer,
        distance_ok,
        passed: !degenerate && unit_ok && membership_ok && distance_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactnessReport {
    pub alpha: f64,
    pub dimension: usize,
    /// `1 / Q(α)`
    pub expected_radius: f64,
    pub samples: usize,
    pub members: usize,
    /// Largest base norm among sampled members of `{x : ν(x, 1) <= 1 - α}`.
    pub max_member_norm: f64,
    pub bounded: bool,
    pub boundary_rays: usize,
    /// Largest boundary radius found by ray bisection.
    pub max_boundary_radius: f64,
    /// Every boundary point has a member within `1e-4` along its ray.
    pub closed: bool,
    pub passed: bool,
}

/// Resolution of the closedness probe.
pub const CLOSEDNESS_RESOLUTION: f64 = 1e-4;

/// Samples `{x : ν(x, 1) <= 1 - α}` to show it is bounded by `1/Q(α)` and
/// that its boundary is approached from inside.
pub fn compactness_probe(nu: &FuzzyAntiNorm, alpha: f64, samples: usize, seed: u64) -> Result<CompactnessReport> {
    check_alpha(alpha)?;
    if samples == 0 {
        return Err(invalid("samples", "must be positive"));
    }
    nu.require_condition_vii()?;
    let q = AlphaNormFamily::new(nu.clone())
        .scale(alpha)
        .finite()
        .filter(|q| *q > 0.0)
        .ok_or_else(|| invalid("alpha", "Q(α) must be finite and positive"))?;
    let radius = 1.0 / q;
    let level = 1.0 - alpha;
    let n = nu.dimension();
    let norm = &nu.space.base_norm;
    let mut rng = sampling::rng(seed);
    let (mut members, mut max_norm) = (0, 0.0f64);
    for _ in 0..samples {
        let r = sampling::uniform(&mut rng, 0.0, 1.5 * radius);
        let x = space::scale(r, &sampling::unit_direction(&mut rng, n, norm));
        if nu.membership(&x, 1.0) <= level {
            members += 1;
            max_norm = max_norm.max(nu.base_norm(&x));
        }
    }
    let rays = if n == 1 { 2 } else { 64 };
    let mut closed = true;
    let mut max_boundary = 0.0f64;
    for i in 0..rays {
        let d = if n == 1 {
            vec![if i == 0 { 1.0 } else { -1.0 }]
        } else {
            sampling::unit_direction(&mut rng, n, norm)
        };
        let r = ray_radius(nu, &d, alpha);
        max_boundary = max_boundary.max(r);
        let inside = space::scale((r - CLOSEDNESS_RESOLUTION).max(0.0) / nu.base_norm(&d), &d);
        closed &= nu.membership(&inside, 1.0) <= level;
    }
    let bounded = max_norm <= radius + 1e-8 && max_boundary <= radius + 1e-8;
    Ok(CompactnessReport {
        alpha,
        dimension: n,
        expected_radius: radius,
        samples,
        members,
        max_member_norm: max_norm,
        bounded,
        boundary_rays: rays,
        max_boundary_radius: max_boundary,
        closed,
        passed: bounded && closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::DecayProfile;
    use crate::space::VectorSpaceSpec;
    use crate::tconorm::TConorm;
    use approx::assert_relative_eq;

    fn anti(n: usize, norm: BaseNorm, k: f64) -> FuzzyAntiNorm {
        FuzzyAntiNorm::new(
            VectorSpaceSpec::new(n, norm).unwrap(),
            DecayProfile::reciprocal(k).unwrap(),
            TConorm::Maximum,
        )
        .unwrap()
    }

    /// `α` with `Q(α) = 2` for `k = 1`.
    const A_Q2: f64 = 2.0 / 3.0;

    #[test]
    fn subspace_validation() {
        assert!(matches!(
            Subspace::new(2, vec![vec![1.0, 1.0], vec![2.0, 2.0]]),
            Err(Error::RankDeficient { rank: 1, len: 2 })
        ));
        assert!(Subspace::new(2, vec![vec![1.0]]).is_err());
        let w = Subspace::new(3, vec![vec![1.0, 1.0, 0.0]]).unwrap();
        assert!(w.contains(&[2.0, 2.0, 0.0]));
        assert!(!w.contains(&[1.0, 0.0, 0.0]));
        assert!(w.is_proper());
        assert!(Subspace::trivial(2).unwrap().contains(&[0.0, 0.0]));
    }

    #[test]
    fn combinations_are_complete() {
        let mut seen = Vec::new();
        for_each_combination(5, 3, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), binomial(5, 3));
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
        let mut count = 0;
        for_each_combination(4, 0, |c| {
            assert!(c.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn distance_examples() {
        let nu = anti(2, BaseNorm::Euclidean, 1.0);
        let fam = AlphaNormFamily::new(nu);
        let w = Subspace::new(2, vec![vec![1.0, 0.0]]).unwrap();
        let d = distance_to_subspace(&fam, 0.5, &[0.0, 1.0], &w).unwrap();
        assert_eq!(d.distance, 1.0);
        assert_eq!(d.minimizer, vec![0.0, 0.0]);
        let d = distance_to_subspace(&fam, 0.5, &[3.0, 0.0], &w).unwrap();
        assert_eq!(d.distance, 0.0);
        assert!(d.in_subspace);

        let fam = AlphaNormFamily::new(anti(3, BaseNorm::Euclidean, 1.0));
        let w = Subspace::new(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let d = distance_to_subspace(&fam, A_Q2, &[1.0, 2.0, 3.0], &w).unwrap();
        assert_relative_eq!(d.distance, 6.0, max_relative = 1e-14);
        assert_relative_eq!(d.minimizer.as_slice(), [1.0, 2.0, 0.0].as_slice(), epsilon = 1e-14);
    }

    #[test]
    fn chebyshev_and_l1_distances() {
        // distance from (0, 1) to span{(1, 1)}: ℓ∞ gives 1/2 at w = (1/2, 1/2),
        // ℓ1 gives 1 at any w = (s, s) with s in [0, 1]
        let w = Subspace::new(2, vec![vec![1.0, 1.0]]).unwrap();
        let inf = AlphaNormFamily::new(anti(2, BaseNorm::Maximum, 1.0));
        let d = distance_to_subspace(&inf, 0.5, &[0.0, 1.0], &w).unwrap();
        assert_eq!(d.method, DistanceMethod::VertexEnumeration);
        assert_relative_eq!(d.base_distance, 0.5, epsilon = 1e-15);
        let one = AlphaNormFamily::new(anti(2, BaseNorm::P { p: 1.0 }, 1.0));
        let d = distance_to_subspace(&one, 0.5, &[0.0, 1.0], &w).unwrap();
        assert_relative_eq!(d.base_distance, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn p_norm_descent_matches_brute_force() {
        let w = Subspace::new(3, vec![vec![1.0, 2.0, 0.5]]).unwrap();
        let v = [0.3, -1.0, 2.0];
        let fam = AlphaNormFamily::new(anti(3, BaseNorm::P { p: 3.0 }, 1.0));
        let d = distance_to_subspace(&fam, 0.5, &v, &w).unwrap();
        assert_eq!(d.method, DistanceMethod::CoordinateDescent);
        // scan the single coefficient finely around the reported optimum
        let p3 = BaseNorm::P { p: 3.0 };
        let c0 = d.coefficients[0];
        let brute = (-20_000..=20_000)
            .map(|i| p3.norm(&space::sub(&v, &w.point(&[c0 + i as f64 * 1e-5]))))
            .fold(f64::INFINITY, f64::min);
        assert!(d.base_distance <= brute + 1e-12, "{} vs {brute}", d.base_distance);
        assert!(d.base_distance >= brute - 1e-9);
    }

    #[test]
    fn witness_orthogonal_case() {
        let nu = anti(2, BaseNorm::Euclidean, 1.0);
        let w = Subspace::new(2, vec![vec![1.0, 0.0]]).unwrap();
        let wit = riesz_witness(&nu, 0.5, &w, 0.1).unwrap();
        assert_eq!(wit.v_index, 1);
        assert_eq!(wit.y, vec![0.0, 1.0]);
        assert_eq!(wit.achieved_distance_lower_bound, 1.0);
        let r = verify_witness(&nu, 0.5, 0.1, &wit.y, &w, 1000, 5).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.worst_margin > 0.0);
    }

    #[test]
    fn witness_for_trivial_subspace() {
        let nu = anti(3, BaseNorm::Euclidean, 2.0);
        let w = Subspace::trivial(3).unwrap();
        let wit = riesz_witness(&nu, 0.3, &w, 0.01).unwrap();
        assert_eq!(wit.v_index, 0);
        assert_relative_eq!(wit.achieved_distance_lower_bound, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn witness_refusals() {
        let nu = anti(2, BaseNorm::Euclidean, 1.0);
        let full = Subspace::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(riesz_witness(&nu, 0.5, &full, 0.1).unwrap_err(), Error::NotProper(2));
        let step = FuzzyAntiNorm::new(
            VectorSpaceSpec::euclidean(2).unwrap(),
            DecayProfile::Step,
            TConorm::Maximum,
        )
        .unwrap();
        let w = Subspace::trivial(2).unwrap();
        assert!(riesz_witness(&step, 0.5, &w, 0.1).is_err());
        assert!(riesz_witness(&nu, 0.5, &w, 1.0).is_err());
    }

    #[test]
    fn scaled_witnesses_fail() {
        let nu = anti(3, BaseNorm::Euclidean, 1.0);
        let w = Subspace::new(3, vec![vec![1.0, 1.0, 0.0]]).unwrap();
        let wit = riesz_witness(&nu, A_Q2, &w, 0.2).unwrap();
        assert!(verify_witness(&nu, A_Q2, 0.2, &wit.y, &w, 10_000, 1).unwrap().passed);

        let big = verify_witness(&nu, A_Q2, 0.2, &space::scale(2.0, &wit.y), &w, 1000, 1).unwrap();
        assert!(!big.passed && !big.unit_norm_ok && !big.membership_ok);
        let small = verify_witness(&nu, A_Q2, 0.2, &space::scale(0.5, &wit.y), &w, 1000, 1).unwrap();
        assert!(!small.passed && !small.distance_ok);
        assert!(small.minimizer_margin < 0.0);
        let zero = verify_witness(&nu, A_Q2, 0.2, &[0.0; 3], &w, 10, 1).unwrap();
        assert!(zero.degenerate && !zero.passed);
    }

    #[test]
    fn compactness_examples() {
        let r = compactness_probe(&anti(3, BaseNorm::Euclidean, 1.0), 0.5, 5000, 3).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.expected_radius, 1.0);
        let r = compactness_probe(&anti(3, BaseNorm::Euclidean, 1.0), 0.9, 5000, 3).unwrap();
        assert!(r.passed);
        assert!((r.max_boundary_radius - 1.0 / 9.0).abs() < 1e-8);
        let r = compactness_probe(&anti(1, BaseNorm::Euclidean, 1.0), 0.75, 1000, 3).unwrap();
        assert!(r.passed);
        assert_eq!(r.boundary_rays, 2);
        assert!((r.max_boundary_radius - 1.0 / 3.0).abs() < 1e-8);
    }
}

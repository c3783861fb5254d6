//! Fuzzy anti-norms of profile form over a crisp base norm.
//!
//! `ν(x, t) = 1` for `t <= 0`, `ν(θ, t) = 0` for `t > 0`, and
//! `ν(x, t) = f(t / ‖x‖)` otherwise. Homogeneity `ν(cx, t) = ν(x, t/|c|)`
//! therefore holds by construction, and the triangle-type axiom follows from
//! the triangle inequality of the base norm whenever `f` is non-increasing.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::profile::DecayProfile;
use crate::report::{AxiomEntry, AxiomReport, Status, Tracker, Witness};
use crate::sampling::{self, SampleRng};
use crate::space::{self, VectorSpaceSpec};
use crate::tconorm::{ConormRule, TConorm, UnitValue};

/// Tolerance for every numeric axiom entry.
pub const AXIOM_TOL: f64 = 1e-12;

/// Multiples of `‖x‖` at which the vanishing limit is probed.
pub const LIMIT_PROBES: [f64; 3] = [1024.0, 1_048_576.0, 1_073_741_824.0];

/// Largest admissible `f` at the last limit probe.
pub const LIMIT_THRESHOLD: f64 = 1e-3;

/// Number of log-spaced knots used by [`combine_max`].
pub const COMBINE_GRID: usize = 8001;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyAntiNorm {
    pub space: VectorSpaceSpec,
    pub profile: DecayProfile,
    pub conorm: TConorm,
}

impl FuzzyAntiNorm {
    pub fn new(space: VectorSpaceSpec, profile: DecayProfile, conorm: TConorm) -> Result<Self> {
        space.base_norm.validate()?;
        profile.validate()?;
        Ok(Self { space, profile, conorm })
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension
    }

    pub fn base_norm(&self, x: &[f64]) -> f64 {
        self.space.norm(x)
    }

    pub fn describe(&self) -> String {
        format!(
            "R^{} / {} / {} / {}",
            self.space.dimension,
            self.space.base_norm.name(),
            self.profile.name(),
            self.conorm.name()
        )
    }

    /// `ν(x, t)`, failing on a dimension mismatch.
    pub fn evaluate(&self, x: &[f64], t: f64) -> Result<UnitValue> {
        self.space.check_dim(x)?;
        UnitValue::new(self.membership(x, t))
    }

    /// `ν(x, t)` without the dimension check.
    pub fn membership(&self, x: &[f64], t: f64) -> f64 {
        self.membership_at_norm(self.space.norm(x), t)
    }

    /// `ν` for a vector with base norm `norm`.
    pub fn membership_at_norm(&self, norm: f64, t: f64) -> f64 {
        if t <= 0.0 {
            1.0
        } else if norm == 0.0 {
            0.0
        } else {
            self.profile.value(t / norm)
        }
    }

    pub fn satisfies_condition_vii(&self) -> bool {
        self.profile.satisfies_condition_vii()
    }

    /// Guards operations whose guarantees rest on condition (vii).
    pub fn require_condition_vii(&self) -> Result<()> {
        if self.satisfies_condition_vii() {
            Ok(())
        } else {
            Err(Error::ConditionViolated {
                condition: "vii",
                detail: format!(
                    "profile {} is not continuous and strictly decreasing where 0 < ν < 1",
                    self.profile.name()
                ),
            })
        }
    }
}

struct Sampler<'a> {
    rng: SampleRng,
    space: &'a VectorSpaceSpec,
}

impl Sampler<'_> {
    fn nonzero(&mut self) -> Vec<f64> {
        sampling::scaled_vector(&mut self.rng, self.space.dimension, &self.space.base_norm, 1e-2, 1e2)
    }

    fn vector(&mut self) -> Vec<f64> {
        if self.rng.random_range(0..20u32) == 0 {
            self.space.zero()
        } else {
            self.nonzero()
        }
    }

    fn positive_time(&mut self) -> f64 {
        sampling::log_uniform(&mut self.rng, 1e-2, 1e2)
    }

    fn time(&mut self) -> f64 {
        match self.rng.random_range(0..10u32) {
            0 => 0.0,
            1 => -sampling::log_uniform(&mut self.rng, 1e-3, 1e2),
            _ => self.positive_time(),
        }
    }
}

fn flagged(axiom: &'static str, samples: usize, witness: Witness, note: String) -> AxiomEntry {
    AxiomEntry {
        axiom,
        status: Status::Flagged,
        samples,
        worst_violation: 0.0,
        witness: Some(witness),
        note: Some(note),
    }
}

fn passed(axiom: &'static str, samples: usize, note: String) -> AxiomEntry {
    AxiomEntry {
        axiom,
        status: Status::Pass,
        samples,
        worst_violation: 0.0,
        witness: None,
        note: Some(note),
    }
}

/// Statistical check of the anti-norm axioms.
///
/// Entries `i`..`v` and `monotone` (non-increasing in `t`) are sampled and
/// fail on any violation beyond [`AXIOM_TOL`]. Entries `vi` and `vii` are
/// decided per profile kind and reported as `Pass` or `Flagged`, with a
/// concrete witness when flagged. Entry `ii` is `Flagged` when only its weak
/// reading holds, i.e. `ν(x, t) = 0` for some `x ≠ θ` and large `t`.
pub fn verify_antinorm_axioms(nu: &FuzzyAntiNorm, sample_count: usize, seed: u64) -> Result<AxiomReport> {
    if sample_count == 0 {
        return Err(crate::error::invalid("sample_count", "must be at least 1"));
    }
    let mut s = Sampler {
        rng: sampling::rng(seed),
        space: &nu.space,
    };
    let mut boundary = Tracker::new("i", AXIOM_TOL);
    let mut zero = Tracker::new("ii", AXIOM_TOL);
    let mut homog = Tracker::new("iii", AXIOM_TOL);
    let mut tri = Tracker::new("iv", AXIOM_TOL);
    let mut limit = Tracker::new("v", 0.0);
    let mut mono = Tracker::new("monotone", AXIOM_TOL);

    for _ in 0..sample_count {
        // (i) t <= 0 gives membership 1
        let x = s.vector();
        let t = if s.rng.random::<bool>() {
            0.0
        } else {
            -sampling::log_uniform(&mut s.rng, 1e-6, 1e6)
        };
        boundary.observe((nu.membership(&x, t) - 1.0).abs(), || {
            Witness::new().with("x", x.clone()).scalar("t", t)
        });

        // (ii) ν(θ, t) = 0 for t > 0, and ν(x, ·) is not identically 0 for x ≠ θ
        let t = s.positive_time();
        let theta = nu.space.zero();
        zero.observe(nu.membership(&theta, t), || {
            Witness::new().with("x", theta.clone()).scalar("t", t)
        });
        let x = s.nonzero();
        let nx = nu.base_norm(&x);
        let somewhere_positive = (0..=60).any(|k| nu.membership(&x, nx * 0.5f64.powi(k)) > 0.0);
        zero.observe(if somewhere_positive { 0.0 } else { 1.0 }, || {
            Witness::new().with("x", x.clone())
        });

        // (iii) ν(cx, t) = ν(x, t/|c|)
        let x = s.nonzero();
        let c = sampling::signed_scalar(&mut s.rng, 1e-2, 1e2);
        let t = s.positive_time();
        let cx = space::scale(c, &x);
        let gap = (nu.membership(&cx, t) - nu.membership(&x, t / c.abs())).abs();
        homog.observe(gap, || {
            Witness::new().with("x", x.clone()).scalar("c", c).scalar("t", t)
        });

        // (iv) ν(x + y, s + t) <= ν(x, s) <> ν(y, t)
        let x = s.vector();
        let (y, ts, tt);
        if s.rng.random_range(0..4u32) == 0 {
            // parallel vectors with proportional times sit on the equality case
            let lambda = sampling::log_uniform(&mut s.rng, 1e-2, 1e2);
            y = space::scale(lambda, &x);
            ts = s.positive_time();
            tt = lambda * ts;
        } else {
            y = s.vector();
            ts = s.time();
            tt = s.time();
        }
        let lhs = nu.membership(&space::add(&x, &y), ts + tt);
        let rhs = nu.conorm.combine(nu.membership(&x, ts), nu.membership(&y, tt));
        tri.observe(lhs - rhs, || {
            Witness::new()
                .with("x", x.clone())
                .with("y", y.clone())
                .scalar("s", ts)
                .scalar("t", tt)
        });

        // (v) decay to 0 along the probe schedule
        let x = s.nonzero();
        let nx = nu.base_norm(&x);
        let probes: Vec<f64> = LIMIT_PROBES.iter().map(|m| nu.membership(&x, m * nx)).collect();
        let rising = probes.windows(2).map(|w| w[1] - w[0]).fold(0.0f64, f64::max);
        let excess = probes[probes.len() - 1] - LIMIT_THRESHOLD;
        limit.observe(rising.max(excess), || {
            Witness::new().with("x", x.clone()).with("probes", probes.clone())
        });

        // non-increasing in t
        let x = s.vector();
        let t1 = s.time();
        let t2 = t1 + sampling::log_uniform(&mut s.rng, 1e-6, 1e2);
        let up = nu.membership(&x, t2) - nu.membership(&x, t1);
        mono.observe(up, || {
            Witness::new().with("x", x.clone()).scalar("t1", t1).scalar("t2", t2)
        });
    }

    // tabulated profiles: probe every pair of adjacent knots on a few rays
    if let DecayProfile::Tabulated(table) = &nu.profile {
        for _ in 0..8 {
            let x = s.nonzero();
            let nx = nu.base_norm(&x);
            for w in table.knots().windows(2) {
                let (t1, t2) = (w[0].0 * nx, w[1].0 * nx);
                let up = nu.membership(&x, t2) - nu.membership(&x, t1);
                mono.observe(up, || {
                    Witness::new().with("x", x.clone()).scalar("t1", t1).scalar("t2", t2)
                });
            }
        }
    }

    let probe_x = s.nonzero();
    let nx = nu.base_norm(&probe_x);
    let mut zero_entry = zero.finish();
    if zero_entry.status == Status::Pass {
        if let Some(end) = nu.profile.support_end() {
            let t = 2.0 * end * nx;
            zero_entry.status = Status::Flagged;
            zero_entry.witness = Some(Witness::new().with("x", probe_x.clone()).scalar("t", t));
            zero_entry.note = Some(format!(
                "only the weak reading holds: ν(x, t) = {} with x ≠ θ for t beyond {}·‖x‖",
                nu.membership(&probe_x, t),
                end
            ));
        }
    }

    let vi = match nu.profile.unit_plateau() {
        Some(u) => passed("vi", 1, format!("ν(x, t) = 1 for 0 < t <= {u}·‖x‖")),
        None => {
            let t = nx * 1e-3;
            flagged(
                "vi",
                1,
                Witness::new().with("x", probe_x.clone()).scalar("t", t),
                format!(
                    "ν(x, t) < 1 for every t > 0 although x ≠ θ (e.g. ν(x, {t:e}) = {})",
                    nu.membership(&probe_x, t)
                ),
            )
        }
    };

    let vii = match nu.profile.condition_vii_witness() {
        None => passed(
            "vii",
            1,
            "ν(x, ·) continuous and strictly decreasing where 0 < ν < 1".into(),
        ),
        Some(u) => {
            let t = u * nx;
            let below = nu.membership(&probe_x, t * (1.0 - 1e-9));
            let above = nu.membership(&probe_x, t * (1.0 + 1e-9));
            flagged(
                "vii",
                1,
                Witness::new().with("x", probe_x.clone()).scalar("t", t),
                format!(
                    "not continuous and strictly decreasing near t = {t}: ν jumps or stalls from {below} to {above}"
                ),
            )
        }
    };

    Ok(AxiomReport {
        subject: nu.describe(),
        entries: vec![
            boundary.finish(),
            zero_entry,
            homog.finish(),
            tri.finish(),
            limit.finish(),
            mono.finish(),
            vi,
            vii,
        ],
    })
}

/// Pointwise maximum of two profiles over the same space and conorm,
/// tabulated on a log-spaced grid over `[1e-8, 1e8]` merged with both
/// profiles' breakpoints.
pub fn combine_max(a: &FuzzyAntiNorm, b: &FuzzyAntiNorm) -> Result<FuzzyAntiNorm> {
    if a.space != b.space || a.conorm != b.conorm {
        return Err(Error::SpaceMismatch);
    }
    let (lo, hi) = (1e-8f64, 1e8f64);
    let step = (hi / lo).ln() / (COMBINE_GRID - 1) as f64;
    let mut grid: Vec<f64> = (0..COMBINE_GRID).map(|i| lo * (step * i as f64).exp()).collect();
    for u in a.profile.breakpoints().into_iter().chain(b.profile.breakpoints()) {
        grid.push(u);
        grid.push(u.next_up());
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let value = |u: f64| a.profile.value(u).max(b.profile.value(u));
    let mut knots: Vec<(f64, f64)> = grid.iter().map(|&u| (u, value(u))).collect();
    if knots[0].1 < 1.0 {
        knots.insert(0, (0.5 * knots[0].0, 1.0));
    }
    let (u_last, f_last) = knots[knots.len() - 1];
    if f_last > 0.0 {
        knots.push((2.0 * u_last, 0.0));
    }
    let profile = DecayProfile::tabulated(knots)?;
    FuzzyAntiNorm::new(a.space.clone(), profile, a.conorm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::BaseNorm;
    use proptest::prelude::*;

    fn anti(n: usize, profile: DecayProfile, conorm: TConorm) -> FuzzyAntiNorm {
        FuzzyAntiNorm::new(VectorSpaceSpec::euclidean(n).unwrap(), profile, conorm).unwrap()
    }

    fn recip(k: f64) -> DecayProfile {
        DecayProfile::reciprocal(k).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let nu = anti(2, recip(1.0), TConorm::Maximum);
        assert_eq!(nu.evaluate(&[0.3, 0.4], -1.0).unwrap().get(), 1.0);
        assert_eq!(nu.evaluate(&[0.0, 0.0], 5.0).unwrap().get(), 0.0);
        assert_eq!(nu.evaluate(&[0.6, 0.8], 1.0).unwrap().get(), 0.5);
        assert_eq!(nu.evaluate(&[0.0, 0.0], 0.0).unwrap().get(), 1.0);
        let step = anti(2, DecayProfile::Step, TConorm::Maximum);
        assert_eq!(step.evaluate(&[0.0, 2.0], 3.0).unwrap().get(), 0.0);
        assert_eq!(step.evaluate(&[0.0, 2.0], 2.0).unwrap().get(), 1.0);
        assert_eq!(
            nu.evaluate(&[1.0], 1.0),
            Err(Error::DimensionMismatch { expected: 2, actual: 1 })
        );
    }

    #[test]
    fn reciprocal_matches_example_formula() {
        let k = 2.5;
        let nu = anti(3, recip(k), TConorm::ProbabilisticSum);
        let x = [1.0, -2.0, 0.5];
        let n = BaseNorm::Euclidean.norm(&x);
        for t in [0.01, 0.7, 3.0, 40.0] {
            let expected = k * n / (t + k * n);
            assert!((nu.membership(&x, t) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn reciprocal_passes_all_numeric_axioms() {
        let nu = anti(3, recip(2.0), TConorm::Maximum);
        let r = verify_antinorm_axioms(&nu, 10_000, 5).unwrap();
        assert!(r.passed(), "{r:#?}");
        for id in ["i", "ii", "iii", "iv", "v", "monotone", "vii"] {
            assert_eq!(r.status(id), Some(Status::Pass), "{id}");
        }
        // ν(x, t) = k‖x‖/(t + k‖x‖) < 1 for all t > 0, so (vi) cannot hold
        assert_eq!(r.status("vi"), Some(Status::Flagged));
    }

    #[test]
    fn step_profile_flags_vii_only_among_conditions() {
        let nu = anti(2, DecayProfile::Step, TConorm::Maximum);
        let r = verify_antinorm_axioms(&nu, 5000, 6).unwrap();
        assert!(r.passed(), "{r:#?}");
        for id in ["i", "iii", "iv", "v", "monotone", "vi"] {
            assert_eq!(r.status(id), Some(Status::Pass), "{id}");
        }
        assert_eq!(r.status("ii"), Some(Status::Flagged));
        let vii = r.entry("vii").unwrap();
        assert_eq!(vii.status, Status::Flagged);
        let w = vii.witness.as_ref().unwrap();
        let (x, t) = (w.get("x").unwrap(), w.value("t").unwrap());
        assert_eq!(nu.membership(x, t), 1.0);
        assert_eq!(nu.membership(x, t * (1.0 + 1e-9)), 0.0);
    }

    #[test]
    fn increasing_table_breaks_monotonicity() {
        let p = DecayProfile::tabulated(vec![(1.0, 1.0), (2.0, 0.3), (3.0, 0.6), (4.0, 0.0)]).unwrap();
        let nu = anti(2, p, TConorm::Maximum);
        let r = verify_antinorm_axioms(&nu, 2000, 7).unwrap();
        assert!(!r.passed());
        let e = r.entry("monotone").unwrap();
        assert_eq!(e.status, Status::Fail);
        let w = e.witness.as_ref().unwrap();
        let (x, t1, t2) = (w.get("x").unwrap(), w.value("t1").unwrap(), w.value("t2").unwrap());
        assert!(t1 < t2);
        assert_eq!(nu.membership(x, t2) - nu.membership(x, t1), e.worst_violation);
        assert!(e.worst_violation > 0.2);
    }

    #[test]
    fn all_conorms_and_profiles_pass() {
        let profiles = [
            recip(0.5),
            DecayProfile::exponential(1.5).unwrap(),
            DecayProfile::Step,
            DecayProfile::tabulated(vec![(0.5, 1.0), (1.0, 0.6), (2.0, 0.1), (3.0, 0.0)]).unwrap(),
        ];
        for p in profiles {
            for c in TConorm::ALL {
                for norm in [BaseNorm::Maximum, BaseNorm::P { p: 1.5 }] {
                    let nu = FuzzyAntiNorm::new(VectorSpaceSpec::new(3, norm).unwrap(), p.clone(), c).unwrap();
                    let r = verify_antinorm_axioms(&nu, 2000, 8).unwrap();
                    assert!(r.passed(), "{}: {r:#?}", nu.describe());
                }
            }
        }
    }

    #[test]
    fn combine_with_itself_round_trips() {
        let a = anti(2, recip(1.0), TConorm::Maximum);
        let c = combine_max(&a, &a).unwrap();
        let DecayProfile::Tabulated(t) = &c.profile else {
            panic!()
        };
        for &(u, f) in t.knots() {
            assert!((f - a.profile.value(u)).abs() <= 1e-6, "u = {u}");
        }
        let mut rng = sampling::rng(1);
        for _ in 0..2000 {
            let u = sampling::log_uniform(&mut rng, 1e-6, 1e6);
            assert!((c.profile.value(u) - a.profile.value(u)).abs() <= 1e-6, "u = {u}");
        }
        assert!(c.satisfies_condition_vii());
        assert!(verify_antinorm_axioms(&c, 2000, 3).unwrap().passed());
    }

    #[test]
    fn combine_larger_k_dominates() {
        let a = anti(2, recip(1.0), TConorm::Maximum);
        let b = anti(2, recip(3.0), TConorm::Maximum);
        let c = combine_max(&a, &b).unwrap();
        let DecayProfile::Tabulated(t) = &c.profile else {
            panic!()
        };
        for &(u, f) in t.knots() {
            if (1e-8..=1e8).contains(&u) {
                assert_eq!(f, 3.0 / (3.0 + u));
            }
        }
    }

    #[test]
    fn combine_step_with_reciprocal() {
        let a = anti(2, DecayProfile::Step, TConorm::Maximum);
        let b = anti(2, recip(1.0), TConorm::Maximum);
        let c = combine_max(&a, &b).unwrap();
        for u in [1e-3, 0.5, 0.999, 1.0] {
            assert_eq!(c.profile.value(u), 1.0, "u = {u}");
        }
        for u in [1.001, 2.0, 10.0, 1e3] {
            assert!((c.profile.value(u) - 1.0 / (1.0 + u)).abs() < 1e-6, "u = {u}");
        }
        assert!(!c.satisfies_condition_vii());
        assert!(verify_antinorm_axioms(&c, 2000, 4).unwrap().passed());
    }

    #[test]
    fn combine_rejects_mismatch() {
        let a = anti(2, recip(1.0), TConorm::Maximum);
        let b = anti(3, recip(1.0), TConorm::Maximum);
        let c = anti(2, recip(1.0), TConorm::BoundedSum);
        assert_eq!(combine_max(&a, &b), Err(Error::SpaceMismatch));
        assert_eq!(combine_max(&a, &c), Err(Error::SpaceMismatch));
    }

    #[test]
    fn report_is_deterministic() {
        let nu = anti(2, recip(1.0), TConorm::BoundedSum);
        assert_eq!(
            verify_antinorm_axioms(&nu, 300, 1).unwrap(),
            verify_antinorm_axioms(&nu, 300, 1).unwrap()
        );
    }

    proptest! {
        #[test]
        fn homogeneity_along_rays(x in prop::collection::vec(-50.0f64..50.0, 3), c in 0.01f64..100.0, t in 1e-3f64..1e3) {
            prop_assume!(!space::is_zero(&x));
            let nu = anti(3, recip(1.3), TConorm::Maximum);
            let lhs = nu.membership(&space::scale(c, &x), t);
            let rhs = nu.membership(&x, t / c);
            prop_assert!((lhs - rhs).abs() <= 1e-15);
            // non-decreasing in λ along {λx}
            prop_assert!(nu.membership(&space::scale(c * 1.5, &x), t) >= lhs);
        }

        #[test]
        fn conorm_triangle_implied_by_max(
            x in prop::collection::vec(-5.0f64..5.0, 2),
            y in prop::collection::vec(-5.0f64..5.0, 2),
            s in 1e-3f64..10.0,
            t in 1e-3f64..10.0,
        ) {
            let nu = anti(2, DecayProfile::exponential(0.7).unwrap(), TConorm::Maximum);
            let lhs = nu.membership(&space::add(&x, &y), s + t);
            let (a, b) = (nu.membership(&x, s), nu.membership(&y, t));
            prop_assert!(lhs <= a.max(b) + AXIOM_TOL);
            for c in TConorm::ALL {
                prop_assert!(a.max(b) <= c.combine(a, b));
            }
        }
    }
}

//! t-conorms: commutative, associative, monotone aggregations on `[0, 1]`
//! with identity `0`.
//!
//! Three archetypes ship: the idempotent maximum, the strict probabilistic
//! sum and the nilpotent bounded sum.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bisect::{self, Tolerance};
use crate::error::{invalid, Error, Result};
use crate::report::{AxiomReport, Tracker, Witness};
use crate::sampling::{self, SampleRng};

/// Absolute tolerance for associativity in floating point.
pub const ASSOCIATIVITY_TOL: f64 = 1e-12;

/// A real number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::OutOfUnitInterval(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Binary rule on `[0, 1]` that the axiom checker can audit.
///
/// Implemented by [`TConorm`]; [`CustomRule`] wraps arbitrary closures so
/// candidate rules that are not t-conorms can be refuted.
pub trait ConormRule {
    fn combine(&self, a: f64, b: f64) -> f64;
    fn label(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TConorm {
    /// `max(a, b)`
    Maximum,
    /// `a + b - ab`
    ProbabilisticSum,
    /// `min(1, a + b)`
    BoundedSum,
}

impl TConorm {
    pub const ALL: [TConorm; 3] = [TConorm::Maximum, TConorm::ProbabilisticSum, TConorm::BoundedSum];

    pub fn apply(self, a: UnitValue, b: UnitValue) -> UnitValue {
        UnitValue(self.combine(a.0, b.0))
    }

    pub fn name(self) -> &'static str {
        match self {
            TConorm::Maximum => "maximum",
            TConorm::ProbabilisticSum => "probabilistic-sum",
            TConorm::BoundedSum => "bounded-sum",
        }
    }
}

impl std::str::FromStr for TConorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TConorm::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid("conorm", format!("unknown conorm `{s}`")))
    }
}

impl ConormRule for TConorm {
    fn combine(&self, a: f64, b: f64) -> f64 {
        match self {
            TConorm::Maximum => a.max(b),
            TConorm::ProbabilisticSum => {
                if a == 0.0 {
                    b
                } else if b == 0.0 {
                    a
                } else {
                    // 1 - (1-a)(1-b) is a composition of monotone roundings;
                    // the outer max restores a+b-ab >= max(a, b) lost to rounding.
                    a.max(b).max(1.0 - (1.0 - a) * (1.0 - b))
                }
            }
            TConorm::BoundedSum => (a + b).min(1.0),
        }
    }

    fn label(&self) -> String {
        self.name().to_string()
    }
}

/// A rule given by an arbitrary closure.
pub struct CustomRule<F> {
    pub name: String,
    pub rule: F,
}

impl<F: Fn(f64, f64) -> f64> CustomRule<F> {
    pub fn new(name: impl Into<String>, rule: F) -> Self {
        Self {
            name: name.into(),
            rule,
        }
    }
}

impl<F: Fn(f64, f64) -> f64> ConormRule for CustomRule<F> {
    fn combine(&self, a: f64, b: f64) -> f64 {
        (self.rule)(a, b)
    }

    fn label(&self) -> String {
        self.name.clone()
    }
}

fn draw(rng: &mut SampleRng) -> f64 {
    // a few exact boundary values mixed into the uniform stream
    match rng.random_range(0..40u32) {
        0 => 0.0,
        1 => 1.0,
        _ => rng.random::<f64>(),
    }
}

/// Samples the t-conorm axioms: closure in `[0, 1]`, commutativity,
/// associativity (within [`ASSOCIATIVITY_TOL`]), identity `a <> 0 = a`, and
/// monotonicity. Deterministic for a fixed seed.
pub fn verify_tconorm_axioms<R: ConormRule + ?Sized>(rule: &R, sample_count: usize, seed: u64) -> Result<AxiomReport> {
    if sample_count == 0 {
        return Err(invalid("sample_count", "must be at least 1"));
    }
    let mut rng = sampling::rng(seed);
    let mut closure = Tracker::new("closure", 0.0);
    let mut comm = Tracker::new("commutativity", 0.0);
    let mut assoc = Tracker::new("associativity", ASSOCIATIVITY_TOL);
    let mut ident = Tracker::new("identity", 0.0);
    let mut mono = Tracker::new("monotonicity", 0.0);

    for _ in 0..sample_count {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let ab = rule.combine(a, b);
        let ba = rule.combine(b, a);
        let w3 = || Witness::new().scalar("a", a).scalar("b", b).scalar("c", c);

        let out_of_range = if ab.is_nan() {
            f64::INFINITY
        } else {
            (-ab).max(ab - 1.0)
        };
        closure.observe(out_of_range, w3);
        comm.observe((ab - ba).abs(), w3);
        let left = rule.combine(ab, c);
        let right = rule.combine(a, rule.combine(b, c));
        assoc.observe((left - right).abs(), w3);
        let id = (rule.combine(a, 0.0) - a).abs().max((rule.combine(0.0, a) - a).abs());
        ident.observe(id, w3);

        // a <= a2, b <= b2; half the time a2 is a neighbouring float
        let a2 = if rng.random::<bool>() {
            draw(&mut rng).max(a)
        } else {
            a.next_up().min(1.0)
        };
        let b2 = draw(&mut rng).max(b);
        let drop = rule.combine(a, b) - rule.combine(a2, b2);
        mono.observe(drop, || {
            Witness::new()
                .scalar("a", a)
                .scalar("b", b)
                .scalar("c", a2)
                .scalar("d", b2)
        });
    }

    Ok(AxiomReport {
        subject: rule.label(),
        entries: vec![
            closure.finish(),
            comm.finish(),
            assoc.finish(),
            ident.finish(),
            mono.finish(),
        ],
    })
}

fn check_open_unit(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("{v} is not in (0, 1)")))
    }
}

/// Returns `r5` in `(0, 1)` with `r5 <> r5 <= r4`.
///
/// Bisects the monotone map `r -> r <> r` (which is `0` at `0`) down to
/// adjacent floats and returns the largest sampled point meeting the bound.
pub fn find_idempotent_bound(c: TConorm, r4: UnitValue) -> Result<UnitValue> {
    check_open_unit("r4", r4.0)?;
    let exceeds = |r: f64| c.combine(r, r) > r4.0;
    let r5 = if exceeds(1.0) {
        bisect::shrink(exceeds, 0.0, 1.0, Tolerance::Adjacent).lo
    } else {
        0.5
    };
    debug_assert!(c.combine(r5, r5) <= r4.0);
    if r5 <= 0.0 || r5 >= 1.0 || c.combine(r5, r5) > r4.0 {
        return Err(invalid("r4", format!("no idempotent bound found below {}", r4.0)));
    }
    Ok(UnitValue(r5))
}

/// Returns `r` in `(0, 1)` with `r1 > r <> r2`, bisecting the monotone map
/// `r -> r <> r2` from below.
pub fn find_dominated_operand(c: TConorm, r1: UnitValue, r2: UnitValue) -> Result<UnitValue> {
    check_open_unit("r1", r1.0)?;
    check_open_unit("r2", r2.0)?;
    if r1.0 <= r2.0 {
        return Err(invalid("r1", format!("{} must exceed r2 = {}", r1.0, r2.0)));
    }
    let too_big = |r: f64| c.combine(r, r2.0) >= r1.0;
    let r = if too_big(1.0) {
        bisect::shrink(too_big, 0.0, 1.0, Tolerance::Adjacent).lo
    } else {
        0.5
    };
    if r <= 0.0 || r >= 1.0 || c.combine(r, r2.0) >= r1.0 {
        return Err(Error::NoDominatedOperand { r1: r1.0, r2: r2.0 });
    }
    Ok(UnitValue(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use proptest::prelude::*;

    fn u(v: f64) -> UnitValue {
        UnitValue::new(v).unwrap()
    }

    #[test]
    fn unit_value_rejects_out_of_range() {
        assert!(UnitValue::new(-0.1).is_err());
        assert!(UnitValue::new(1.0 + 1e-15).is_err());
        assert!(UnitValue::new(f64::NAN).is_err());
        assert_eq!(UnitValue::new(1.0).unwrap(), UnitValue::ONE);
    }

    #[test]
    fn apply_examples() {
        assert_eq!(TConorm::Maximum.apply(u(0.3), u(0.7)).get(), 0.7);
        for c in TConorm::ALL {
            assert_eq!(c.apply(u(0.42), UnitValue::ZERO).get(), 0.42);
        }
        assert_eq!(TConorm::ProbabilisticSum.apply(u(0.5), u(0.5)).get(), 0.75);
        assert_eq!(TConorm::BoundedSum.apply(u(0.7), u(0.6)).get(), 1.0);
    }

    #[test]
    fn parse_names() {
        for c in TConorm::ALL {
            assert_eq!(c.name().parse::<TConorm>().unwrap(), c);
        }
        assert!("min".parse::<TConorm>().is_err());
    }

    #[test]
    fn builtin_conorms_pass_sampled_axioms() {
        for c in TConorm::ALL {
            let r = verify_tconorm_axioms(&c, 10_000, 1).unwrap();
            assert!(r.passed(), "{c:?}: {r:#?}");
            for e in &r.entries {
                if e.axiom != "associativity" {
                    assert_eq!(e.worst_violation, 0.0, "{c:?} {}", e.axiom);
                }
                assert!(e.worst_violation <= ASSOCIATIVITY_TOL);
            }
        }
        let r = verify_tconorm_axioms(&TConorm::Maximum, 10_000, 2).unwrap();
        assert!(r.entries.iter().all(|e| e.worst_violation == 0.0));
    }

    #[test]
    fn product_is_not_a_conorm() {
        let broken = CustomRule::new("product", |a, b| a * b);
        let r = verify_tconorm_axioms(&broken, 1000, 3).unwrap();
        assert!(!r.passed());
        let e = r.entry("identity").unwrap();
        assert_eq!(e.status, Status::Fail);
        let a = e.witness.as_ref().unwrap().value("a").unwrap();
        assert!(a > 0.0);
        assert_eq!(((a * 0.0) - a).abs(), e.worst_violation);
    }

    #[test]
    fn zero_samples_is_an_error() {
        assert!(verify_tconorm_axioms(&TConorm::Maximum, 0, 0).is_err());
    }

    #[test]
    fn report_is_deterministic() {
        let a = verify_tconorm_axioms(&TConorm::ProbabilisticSum, 500, 9).unwrap();
        let b = verify_tconorm_axioms(&TConorm::ProbabilisticSum, 500, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn idempotent_bound_examples() {
        assert_eq!(find_idempotent_bound(TConorm::Maximum, u(0.6)).unwrap().get(), 0.6);
        // 2r - r^2 = 0.75 at r = 0.5
        let r = find_idempotent_bound(TConorm::ProbabilisticSum, u(0.75)).unwrap().get();
        assert!((r - 0.5).abs() < 1e-12, "{r}");
        let r = find_idempotent_bound(TConorm::BoundedSum, u(0.5)).unwrap().get();
        assert!(r <= 0.25 && 0.25 - r < 1e-15, "{r}");
        assert!(find_idempotent_bound(TConorm::Maximum, UnitValue::ONE).is_err());
    }

    #[test]
    fn dominated_operand_examples() {
        let r = find_dominated_operand(TConorm::Maximum, u(0.8), u(0.5)).unwrap().get();
        assert!(r.max(0.5) < 0.8);
        let r = find_dominated_operand(TConorm::ProbabilisticSum, u(0.8), u(0.5))
            .unwrap()
            .get();
        assert!(r < 0.6 && 0.6 - r < 1e-12, "{r}");
        let r = find_dominated_operand(TConorm::BoundedSum, u(0.9), u(0.5))
            .unwrap()
            .get();
        assert!(r < 0.4 && 0.4 - r < 1e-12, "{r}");
        assert!(find_dominated_operand(TConorm::Maximum, u(0.5), u(0.8)).is_err());
        // the smallest subnormal added to itself already reaches its successor
        let r2 = f64::from_bits(1);
        let r1 = r2.next_up();
        assert_eq!(
            find_dominated_operand(TConorm::BoundedSum, u(r1), u(r2)),
            Err(Error::NoDominatedOperand { r1, r2 })
        );
    }

    proptest! {
        #[test]
        fn exact_monotonicity_and_identity(a in 0.0f64..=1.0, b in 0.0f64..=1.0, da in 0.0f64..1.0, db in 0.0f64..1.0) {
            let c = (a + da * (1.0 - a)).min(1.0);
            let d = (b + db * (1.0 - b)).min(1.0);
            for t in TConorm::ALL {
                prop_assert!(t.combine(a, b) <= t.combine(c, d));
                prop_assert!(t.combine(a, b) <= t.combine(a.next_up().min(1.0), b));
                prop_assert_eq!(t.combine(a, 0.0), a);
                prop_assert_eq!(t.combine(a, b), t.combine(b, a));
                let v = t.combine(a, b);
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert!(v >= a.max(b));
            }
        }

        #[test]
        fn idempotent_bound_post_condition(r4 in 1e-6f64..0.999999) {
            for t in TConorm::ALL {
                let r5 = find_idempotent_bound(t, u(r4)).unwrap().get();
                prop_assert!(r5 > 0.0 && r5 < 1.0);
                prop_assert!(t.combine(r5, r5) <= r4);
            }
        }
    }
}

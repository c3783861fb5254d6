//! Decay profiles `f : (0, inf) -> [0, 1]`.
//!
//! A profile anti-norm evaluates `ν(x, t) = f(t / ‖x‖)` for `x ≠ θ, t > 0`,
//! so every property of `ν` along a ray reduces to a property of `f`.

use serde::Serialize;

use crate::alphacut::ExtendedNonneg;
use crate::error::{invalid, Result};

/// Piecewise-linear table of `(u, f(u))` knots.
///
/// Knot abscissae are positive and strictly increasing; values lie in
/// `[0, 1]`. Left of the first knot the profile is `1`, right of the last
/// knot it is `0`. Monotonicity is *not* enforced so that broken tables can
/// be audited.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    knots: Vec<(f64, f64)>,
}

impl Table {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(invalid("knots", "at least one knot is required"));
        }
        for (i, &(u, f)) in knots.iter().enumerate() {
            if !(u.is_finite() && u > 0.0) {
                return Err(invalid("knots", format!("knot {i}: u = {u} must be a positive real")));
            }
            if !(0.0..=1.0).contains(&f) {
                return Err(invalid("knots", format!("knot {i}: f = {f} must lie in [0, 1]")));
            }
            if i > 0 && u <= knots[i - 1].0 {
                return Err(invalid(
                    "knots",
                    format!("knot {i}: u = {u} is not strictly increasing"),
                ));
            }
        }
        Ok(Self { knots })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn value(&self, u: f64) -> f64 {
        let k = &self.knots;
        let i = k.partition_point(|&(ku, _)| ku <= u);
        if i == 0 {
            return 1.0;
        }
        if i == k.len() {
            return if u == k[i - 1].0 { k[i - 1].1 } else { 0.0 };
        }
        let (u0, f0) = k[i - 1];
        let (u1, f1) = k[i];
        f0 + (f1 - f0) * ((u - u0) / (u1 - u0))
    }

    fn is_non_increasing(&self) -> bool {
        self.knots.windows(2).all(|w| w[1].1 <= w[0].1)
    }

    /// Index of the first segment (or `None` for a good table) where the
    /// table is not strictly decreasing while its values lie in `(0, 1)`.
    fn first_non_strict_segment(&self) -> Option<usize> {
        self.knots.windows(2).position(|w| {
            let (a, b) = (w[0].1, w[1].1);
            let flat_at_bound = a == b && (a == 0.0 || a == 1.0);
            b >= a && !flat_at_bound
        })
    }

    /// Index of the first segment spanning adjacent floats with a drop:
    /// linear interpolation cannot bridge it, so it is a jump.
    fn first_jump(&self) -> Option<usize> {
        self.knots
            .windows(2)
            .position(|w| w[1].0 <= w[0].0.next_up() && w[1].1 != w[0].1)
    }

    fn inverse(&self, level: f64) -> f64 {
        let k = &self.knots;
        if k[0].1 <= level {
            return k[0].0;
        }
        for w in k.windows(2) {
            let ((u0, f0), (u1, f1)) = (w[0], w[1]);
            if f1 <= level {
                return u0 + (f0 - level) / (f0 - f1) * (u1 - u0);
            }
        }
        k[k.len() - 1].0
    }
}

/// Non-increasing decay profile over a crisp base norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DecayProfile {
    /// `f(u) = k / (k + u)`, i.e. `ν(x,t) = k‖x‖ / (t + k‖x‖)`.
    Reciprocal {
        k: f64,
    },
    /// `f(u) = 1` for `u <= 1`, else `0`, i.e. `ν(x,t) = 1` iff `t <= ‖x‖`.
    Step,
    /// `f(u) = exp(-λu)`.
    Exponential {
        lambda: f64,
    },
    Tabulated(Table),
}

impl DecayProfile {
    pub fn reciprocal(k: f64) -> Result<Self> {
        if k.is_finite() && k > 0.0 {
            Ok(DecayProfile::Reciprocal { k })
        } else {
            Err(invalid("k", format!("{k} must be a positive real")))
        }
    }

    pub fn exponential(lambda: f64) -> Result<Self> {
        if lambda.is_finite() && lambda > 0.0 {
            Ok(DecayProfile::Exponential { lambda })
        } else {
            Err(invalid("lambda", format!("{lambda} must be a positive real")))
        }
    }

    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        Table::new(knots).map(DecayProfile::Tabulated)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DecayProfile::Reciprocal { k } => Self::reciprocal(*k).map(drop),
            DecayProfile::Exponential { lambda } => Self::exponential(*lambda).map(drop),
            DecayProfile::Step => Ok(()),
            DecayProfile::Tabulated(t) => Table::new(t.knots.clone()).map(drop),
        }
    }

    pub fn name(&self) -> String {
        match self {
            DecayProfile::Reciprocal { k } => format!("reciprocal(k={k})"),
            DecayProfile::Step => "step".into(),
            DecayProfile::Exponential { lambda } => format!("exponential(lambda={lambda})"),
            DecayProfile::Tabulated(t) => format!("tabulated({} knots)", t.knots.len()),
        }
    }

    /// `f(u)` for `u >= 0`.
    pub fn value(&self, u: f64) -> f64 {
        match self {
            DecayProfile::Reciprocal { k } => k / (k + u),
            DecayProfile::Step => {
                if u <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            DecayProfile::Exponential { lambda } => (-lambda * u).exp(),
            DecayProfile::Tabulated(t) => t.value(u),
        }
    }

    pub fn is_non_increasing(&self) -> bool {
        match self {
            DecayProfile::Tabulated(t) => t.is_non_increasing(),
            _ => true,
        }
    }

    /// Whether `f` is continuous on `(0, inf)` and joins the value `1` at
    /// `0+` without a jump.
    pub fn is_continuous(&self) -> bool {
        match self {
            DecayProfile::Reciprocal { .. } | DecayProfile::Exponential { .. } => true,
            DecayProfile::Step => false,
            DecayProfile::Tabulated(t) => {
                t.knots[0].1 == 1.0 && t.knots[t.knots.len() - 1].1 == 0.0 && t.first_jump().is_none()
            }
        }
    }

    /// Whether `f` is strictly decreasing on `{u : 0 < f(u) < 1}`.
    pub fn is_strict_where_fuzzy(&self) -> bool {
        match self {
            DecayProfile::Tabulated(t) => t.first_non_strict_segment().is_none(),
            _ => true,
        }
    }

    /// Condition (vii): `ν(x, ·)` continuous and strictly decreasing where
    /// its values lie strictly between 0 and 1.
    pub fn satisfies_condition_vii(&self) -> bool {
        self.is_continuous() && self.is_strict_where_fuzzy()
    }

    /// A point `u > 0` where condition (vii) breaks down, if any.
    pub fn condition_vii_witness(&self) -> Option<f64> {
        match self {
            DecayProfile::Step => Some(1.0),
            DecayProfile::Tabulated(t) => {
                if t.knots[0].1 != 1.0 {
                    Some(t.knots[0].0)
                } else if let Some(i) = t.first_jump() {
                    Some(t.knots[i].0)
                } else if let Some(i) = t.first_non_strict_segment() {
                    Some(0.5 * (t.knots[i].0 + t.knots[i + 1].0))
                } else if t.knots[t.knots.len() - 1].1 != 0.0 {
                    Some(t.knots[t.knots.len() - 1].0)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// `sup {u > 0 : f(u) = 1}` when that set is nonempty. Its existence is
    /// condition (vi) for profile anti-norms: every `x ≠ θ` has some `t > 0`
    /// with `ν(x, t) = 1`.
    pub fn unit_plateau(&self) -> Option<f64> {
        match self {
            DecayProfile::Reciprocal { .. } | DecayProfile::Exponential { .. } => None,
            DecayProfile::Step => Some(1.0),
            DecayProfile::Tabulated(t) => {
                let ones = t.knots.iter().take_while(|(_, f)| *f == 1.0).count();
                Some(t.knots[ones.saturating_sub(1)].0)
            }
        }
    }

    /// `inf {u > 0 : f(u) = 0}` when `f` reaches zero at a finite argument.
    pub fn support_end(&self) -> Option<f64> {
        match self {
            DecayProfile::Reciprocal { .. } | DecayProfile::Exponential { .. } => None,
            DecayProfile::Step => Some(1.0),
            DecayProfile::Tabulated(t) => {
                let k = &t.knots;
                let mut end = k[k.len() - 1].0;
                for &(u, f) in k.iter().rev() {
                    if f == 0.0 {
                        end = u;
                    } else {
                        break;
                    }
                }
                Some(end)
            }
        }
    }

    /// Points where the profile has a kink or jump.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            DecayProfile::Step => vec![1.0],
            DecayProfile::Tabulated(t) => t.knots.iter().map(|k| k.0).collect(),
            _ => Vec::new(),
        }
    }

    /// Closed-form generalized inverse `Q(α) = inf {u > 0 : f(u) <= 1 - α}`.
    ///
    /// `None` when no closed form applies (a non-monotone table).
    pub fn scale_closed_form(&self, alpha: f64) -> Option<ExtendedNonneg> {
        let q = match self {
            DecayProfile::Reciprocal { k } => k * alpha / (1.0 - alpha),
            DecayProfile::Step => 1.0,
            DecayProfile::Exponential { lambda } => -(-alpha).ln_1p() / lambda,
            DecayProfile::Tabulated(t) if t.is_non_increasing() => t.inverse(1.0 - alpha),
            DecayProfile::Tabulated(_) => return None,
        };
        Some(ExtendedNonneg::Finite(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(knots: &[(f64, f64)]) -> DecayProfile {
        DecayProfile::tabulated(knots.to_vec()).unwrap()
    }

    #[test]
    fn example_values() {
        let r = DecayProfile::reciprocal(1.0).unwrap();
        assert_eq!(r.value(1.0), 0.5);
        assert_eq!(DecayProfile::Step.value(1.0), 1.0);
        assert_eq!(DecayProfile::Step.value(1.5), 0.0);
        let e = DecayProfile::exponential(2.0).unwrap();
        assert!((e.value(0.5) - (-1f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(DecayProfile::reciprocal(-1.0).is_err());
        assert!(DecayProfile::reciprocal(0.0).is_err());
        assert!(DecayProfile::exponential(f64::NAN).is_err());
        assert!(DecayProfile::tabulated(vec![]).is_err());
        assert!(DecayProfile::tabulated(vec![(1.0, 0.5), (1.0, 0.2)]).is_err());
        assert!(DecayProfile::tabulated(vec![(0.0, 0.5)]).is_err());
        assert!(DecayProfile::tabulated(vec![(1.0, 1.5)]).is_err());
    }

    #[test]
    fn table_interpolates_and_extends() {
        let t = table(&[(1.0, 1.0), (3.0, 0.5), (5.0, 0.0)]);
        assert_eq!(t.value(0.2), 1.0);
        assert_eq!(t.value(1.0), 1.0);
        assert_eq!(t.value(2.0), 0.75);
        assert_eq!(t.value(3.0), 0.5);
        assert_eq!(t.value(5.0), 0.0);
        assert_eq!(t.value(50.0), 0.0);
        let open = table(&[(1.0, 0.8), (2.0, 0.4)]);
        assert_eq!(open.value(0.5), 1.0);
        assert_eq!(open.value(2.0), 0.4);
        assert_eq!(open.value(2.0000001), 0.0);
    }

    #[test]
    fn condition_flags() {
        assert!(DecayProfile::reciprocal(2.0).unwrap().satisfies_condition_vii());
        assert!(DecayProfile::exponential(1.0).unwrap().satisfies_condition_vii());
        assert!(!DecayProfile::Step.satisfies_condition_vii());
        assert_eq!(DecayProfile::Step.condition_vii_witness(), Some(1.0));

        let good = table(&[(1.0, 1.0), (2.0, 0.5), (3.0, 0.0), (4.0, 0.0)]);
        assert!(good.satisfies_condition_vii());
        assert_eq!(good.unit_plateau(), Some(1.0));
        assert_eq!(good.support_end(), Some(3.0));

        let flat = table(&[(1.0, 1.0), (2.0, 0.5), (3.0, 0.5), (4.0, 0.0)]);
        assert!(!flat.satisfies_condition_vii());
        assert_eq!(flat.condition_vii_witness(), Some(2.5));

        let rising = table(&[(1.0, 0.8), (2.0, 0.3), (3.0, 0.6), (4.0, 0.0)]);
        assert!(!rising.is_non_increasing());
        assert!(!rising.satisfies_condition_vii());
        assert_eq!(rising.scale_closed_form(0.5), None);

        assert_eq!(DecayProfile::reciprocal(1.0).unwrap().unit_plateau(), None);
        assert_eq!(DecayProfile::Step.unit_plateau(), Some(1.0));
    }

    #[test]
    fn closed_form_scales() {
        let q = |p: &DecayProfile, a: f64| p.scale_closed_form(a).unwrap().finite().unwrap();
        assert_eq!(q(&DecayProfile::reciprocal(1.0).unwrap(), 0.5), 1.0);
        assert_eq!(q(&DecayProfile::reciprocal(2.0).unwrap(), 0.25), 2.0 / 3.0);
        assert_eq!(q(&DecayProfile::Step, 0.3), 1.0);
        let e = q(&DecayProfile::exponential(2.0).unwrap(), 0.5);
        assert!((e - 2f64.ln() / 2.0).abs() < 1e-16);
        let t = table(&[(1.0, 1.0), (3.0, 0.5), (5.0, 0.0)]);
        assert_eq!(q(&t, 0.25), 2.0);
        assert_eq!(q(&t, 0.5), 3.0);
        // a table that never drops to 1 - α inside its range ends at the last knot
        let short = table(&[(1.0, 1.0), (2.0, 0.9)]);
        assert_eq!(q(&short, 0.5), 2.0);
    }
}

//! Soft probabilities of events on continuous random variables.
//!
//! An exact-value event `X = x` has soft probability `f_X(x)·0̄` rather than
//! 0, which separates `X < x` from `X ≤ x` and ranks points by density.

use serde::{Deserialize, Serialize};

use crate::distributions::{ContinuousDistribution, JointModel};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::soft::SoftNumber;

/// A finite set of points `{x₁, …, xₙ}`, kept in input order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSetEvent {
    points: Vec<f64>,
}

impl PointSetEvent {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::domain(format!("event points must be finite, got {p}")));
        }
        Ok(PointSetEvent { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Points in ascending order; fails if any value repeats.
    pub fn canonical(&self) -> Result<Vec<f64>> {
        let mut sorted = self.points.clone();
        sorted.sort_by(f64::total_cmp);
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::domain(format!("duplicate point {} in point set", w[0])));
        }
        Ok(sorted)
    }
}

/// `a < X < b` when `strict`, else `a ≤ X ≤ b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalEvent {
    pub lo: f64,
    pub hi: f64,
    pub strict: bool,
}

impl IntervalEvent {
    pub fn new(lo: f64, hi: f64, strict: bool) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::domain(format!(
                "interval bounds must be finite with lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(IntervalEvent { lo, hi, strict })
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true)
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false)
    }

    pub fn contains(&self, x: f64) -> bool {
        if self.strict {
            x > self.lo && x < self.hi
        } else {
            x >= self.lo && x <= self.hi
        }
    }

    fn reject_endpoint(&self, x: f64) -> Result<()> {
        if x == self.lo || x == self.hi {
            return Err(Error::domain(format!(
                "point {x} coincides with an endpoint of ({}, {})",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

/// Per-axis relation for two-variable events.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Lt,
    Leq,
    Eq,
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain(format!("event value must be finite, got {x}")));
    }
    Ok(())
}

/// `Ps(X = x) = f_X(x)·0̄`.
pub fn ps_eq(d: &dyn ContinuousDistribution, x: f64) -> Result<SoftNumber> {
    check_x(x)?;
    SoftNumber::try_new(d.pdf(x), 0.0)
}

/// `Ps(X < x) = 0·0̄ ∔ F_X(x)`.
pub fn ps_lt(d: &dyn ContinuousDistribution, x: f64) -> Result<SoftNumber> {
    check_x(x)?;
    SoftNumber::try_new(0.0, d.cdf(x))
}

/// `Ps(X ≤ x) = f_X(x)·0̄ ∔ F_X(x)`.
pub fn ps_leq(d: &dyn ContinuousDistribution, x: f64) -> Result<SoftNumber> {
    Ok(ps_eq(d, x)? + ps_lt(d, x)?)
}

/// `Ps(X ≠ x) = (−f_X(x))·0̄ ∔ 1`.
pub fn ps_neq(d: &dyn ContinuousDistribution, x: f64) -> Result<SoftNumber> {
    Ok(SoftNumber::ONE - ps_eq(d, x)?)
}

/// Soft probability of the interval event itself.
///
/// A closed interval carries the endpoint masses `[f(a) + f(b)]·0̄`.
pub fn ps_interval(d: &dyn ContinuousDistribution, iv: &IntervalEvent) -> Result<SoftNumber> {
    let mass = d.mass(iv.lo, iv.hi);
    let soft = if iv.strict { 0.0 } else { d.pdf(iv.lo) + d.pdf(iv.hi) };
    SoftNumber::try_new(soft, mass)
}

/// `Ps(⋃ᵢ {X = xᵢ}) = (Σᵢ f_X(xᵢ))·0̄` over distinct points.
pub fn ps_points_union(d: &dyn ContinuousDistribution, e: &PointSetEvent) -> Result<SoftNumber> {
    let points = e.canonical()?;
    let soft: f64 = points.iter().map(|&x| d.pdf(x)).sum();
    SoftNumber::try_new(soft, 0.0)
}

/// `Ps(⋂ᵢ {X = xᵢ})`: `f_X(x)·0̄` when every point equals `x`, else absolute zero.
pub fn ps_points_intersection(d: &dyn ContinuousDistribution, e: &PointSetEvent) -> Result<SoftNumber> {
    match e.points() {
        [] => Ok(SoftNumber::ZERO),
        [first, rest @ ..] => {
            if rest.iter().all(|p| p == first) {
                ps_eq(d, *first)
            } else {
                Ok(SoftNumber::ZERO)
            }
        }
    }
}

/// `Ps({X = x} ∪ interval) = Ps(X = x) + Ps(interval) − Ps({X = x} ∩ interval)`;
/// the point must not sit on an endpoint.
pub fn ps_union_point_interval(
    d: &dyn ContinuousDistribution,
    x: f64,
    iv: &IntervalEvent,
) -> Result<SoftNumber> {
    let overlap = ps_intersect_point_interval(d, x, iv)?;
    Ok(ps_eq(d, x)? + ps_interval(d, iv)? - overlap)
}

/// `Ps({X = x} ∩ interval) = 𝟙_{x ∈ interval}·f_X(x)·0̄`.
pub fn ps_intersect_point_interval(
    d: &dyn ContinuousDistribution,
    x: f64,
    iv: &IntervalEvent,
) -> Result<SoftNumber> {
    check_x(x)?;
    iv.reject_endpoint(x)?;
    if iv.contains(x) {
        ps_eq(d, x)
    } else {
        Ok(SoftNumber::ZERO)
    }
}

/// `Ps(X = x | interval)` in the Kolmogorov form `Ps(A ∩ B) / Ps(B)`.
///
/// Soft division by the interval's soft probability discards its endpoint
/// masses, leaving `𝟙·f_X(x) / (F(b) − F(a))·0̄`.
pub fn ps_cond_point_given_interval(
    d: &dyn ContinuousDistribution,
    x: f64,
    iv: &IntervalEvent,
) -> Result<SoftNumber> {
    let condition = ps_interval(d, iv)?;
    if condition.real() <= 0.0 {
        return Err(Error::domain(format!(
            "conditioning interval ({}, {}) has zero probability",
            iv.lo, iv.hi
        )));
    }
    ps_intersect_point_interval(d, x, iv)?.checked_div(condition)
}

/// The same conditional in the Bayes form `Ps(B | A)·Ps(A) / Ps(B)`.
pub fn ps_cond_point_given_interval_bayes(
    d: &dyn ContinuousDistribution,
    x: f64,
    iv: &IntervalEvent,
) -> Result<SoftNumber> {
    check_x(x)?;
    iv.reject_endpoint(x)?;
    let condition = ps_interval(d, iv)?;
    if condition.real() <= 0.0 {
        return Err(Error::domain(format!(
            "conditioning interval ({}, {}) has zero probability",
            iv.lo, iv.hi
        )));
    }
    let likelihood = SoftNumber::from_real(if iv.contains(x) { 1.0 } else { 0.0 });
    (likelihood * ps_eq(d, x)?).checked_div(condition)
}

/// `Ps(X = x | X = y) = 𝟙_{x = y}` via the soft-zero ratio rule.
pub fn ps_cond_point_given_point(d: &dyn ContinuousDistribution, x: f64, y: f64) -> Result<f64> {
    check_x(x)?;
    let condition = ps_eq(d, y)?;
    if condition.soft() <= 0.0 {
        return Err(Error::domain(format!(
            "cannot condition on the impossible point {y}"
        )));
    }
    let joint = ps_points_intersection(d, &PointSetEvent::new(vec![x, y])?)?;
    let ratio = joint.checked_div(condition)?;
    Ok(ratio.real())
}

/// Bayes form of [`ps_cond_point_given_point`].
pub fn ps_cond_point_given_point_bayes(d: &dyn ContinuousDistribution, x: f64, y: f64) -> Result<f64> {
    check_x(x)?;
    let condition = ps_eq(d, y)?;
    if condition.soft() <= 0.0 {
        return Err(Error::domain(format!(
            "cannot condition on the impossible point {y}"
        )));
    }
    let likelihood = SoftNumber::from_real(if x == y { 1.0 } else { 0.0 });
    Ok((likelihood * ps_eq(d, x)?).checked_div(condition)?.real())
}

/// Two-variable soft probability `Ps(X rx x, Y ry y)`.
///
/// Equality on one axis contributes the matching partial derivative of the
/// joint CDF on the zero axis, equality on both contributes the joint
/// density, and the strict part `F_{X,Y}(x, y)` stays on the real axis.
pub fn ps2(
    j: &dyn JointModel,
    x: f64,
    y: f64,
    rx: Relation,
    ry: Relation,
    cfg: &QuadratureConfig,
) -> Result<SoftNumber> {
    check_x(x)?;
    check_x(y)?;
    use Relation::*;
    // which of the four disjoint pieces {<,=}×{<,=} the event covers
    let has = |r: Relation, strict_part: bool| match r {
        Lt => strict_part,
        Eq => !strict_part,
        Leq => true,
    };
    let mut soft = 0.0;
    let mut real = 0.0;
    if has(rx, true) && has(ry, false) {
        soft += j.cdf_dy(x, y, cfg)?;
    }
    if has(rx, false) && has(ry, true) {
        soft += j.cdf_dx(x, y, cfg)?;
    }
    if has(rx, false) && has(ry, false) {
        soft += j.joint_pdf(x, y);
    }
    if has(rx, true) && has(ry, true) {
        real = j.joint_cdf(x, y, cfg)?;
    }
    SoftNumber::try_new(soft, real)
}

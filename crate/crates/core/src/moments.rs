//! Soft expectation and soft variance over a mixed point/interval set.

use serde::{Deserialize, Serialize};

use crate::distributions::ContinuousDistribution;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_1d, QuadratureConfig};
use crate::soft::SoftNumber;

/// A disjoint union of distinct points and disjoint open intervals.
///
/// Points are kept ascending and intervals sorted by their lower bound. No
/// point may lie inside an interval; a point on an interval's boundary is
/// disjoint from the open interval and allowed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMixedSet", into = "RawMixedSet")]
pub struct MixedSet {
    points: Vec<f64>,
    intervals: Vec<(f64, f64)>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawMixedSet {
    #[serde(default)]
    points: Vec<f64>,
    #[serde(default)]
    intervals: Vec<[f64; 2]>,
}

impl TryFrom<RawMixedSet> for MixedSet {
    type Error = Error;

    fn try_from(raw: RawMixedSet) -> Result<Self> {
        MixedSet::new(raw.points, raw.intervals.into_iter().map(|[a, b]| (a, b)).collect())
    }
}

impl From<MixedSet> for RawMixedSet {
    fn from(ms: MixedSet) -> Self {
        RawMixedSet {
            points: ms.points,
            intervals: ms.intervals.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl MixedSet {
    /// Validates and canonicalises a set of points and open intervals.
    pub fn new(mut points: Vec<f64>, mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::domain(format!("set points must be finite, got {p}")));
        }
        for &(a, b) in &intervals {
            if !(a.is_finite() && b.is_finite()) || a >= b {
                return Err(Error::domain(format!(
                    "set intervals must be finite with lo < hi, got ({a}, {b})"
                )));
            }
        }
        points.sort_by(f64::total_cmp);
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::domain(format!("duplicate point {}", w[0])));
        }
        intervals.sort_by(|l, r| l.0.total_cmp(&r.0).then(l.1.total_cmp(&r.1)));
        if let Some(w) = intervals.windows(2).find(|w| w[1].0 < w[0].1) {
            return Err(Error::domain(format!(
                "intervals ({}, {}) and ({}, {}) overlap",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
        for &p in &points {
            if let Some(&(a, b)) = intervals.iter().find(|&&(a, b)| p > a && p < b) {
                return Err(Error::domain(format!("point {p} lies inside ({a}, {b})")));
            }
        }
        Ok(MixedSet { points, intervals })
    }

    /// Accepts closed intervals `[a, b]`, moving each endpoint into the point
    /// set and keeping the open interior.
    pub fn with_closed_intervals(points: Vec<f64>, closed: Vec<(f64, f64)>) -> Result<Self> {
        let mut pts = points;
        for &(a, b) in &closed {
            pts.push(a);
            pts.push(b);
        }
        // shared endpoints of adjacent closed intervals appear once
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Self::new(pts, closed)
    }

    pub fn empty() -> Self {
        MixedSet::default()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.intervals.is_empty()
    }

    /// Returns the canonical form, re-checking every invariant.
    pub fn validate(&self) -> Result<MixedSet> {
        MixedSet::new(self.points.clone(), self.intervals.clone())
    }
}

/// Intermediate terms of the soft variance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SoftMoments {
    /// Soft coefficient of the expectation.
    pub nu: f64,
    /// Real part of the expectation.
    pub kappa: f64,
    /// `Σᵢ (κ − xᵢ)² f(xᵢ)`.
    pub gamma1_sq: f64,
    /// `Σⱼ ∫ (κ − x) f(x) dx = −κ·(1 − coverage)`.
    pub gamma2: f64,
    /// `Σⱼ ∫ (κ − x)² f(x) dx`.
    pub lambda_sq: f64,
    /// Soft coefficient of the variance, `γ₁² + 2νγ₂`.
    pub gamma: f64,
    /// `Σⱼ (F(bⱼ) − F(aⱼ))`.
    pub coverage: f64,
}

/// `Es(g(X) | X ∈ set) = Σᵢ g(xᵢ)f(xᵢ)·0̄ ∔ Σⱼ ∫ g(x)f(x) dx`.
pub fn soft_expectation_of<G>(
    d: &dyn ContinuousDistribution,
    ms: &MixedSet,
    g: G,
    cfg: &QuadratureConfig,
) -> Result<SoftNumber>
where
    G: Fn(f64) -> f64,
{
    let mut soft = 0.0;
    for &x in &ms.points {
        let f = d.pdf(x);
        if f == 0.0 {
            continue;
        }
        let gx = g(x);
        if !gx.is_finite() {
            return Err(Error::domain(format!("function is not finite at point {x} ({gx})")));
        }
        soft += gx * f;
    }
    let mut real = 0.0;
    for &(a, b) in &ms.intervals {
        real += integrate_1d(
            |x| {
                let f = d.pdf(x);
                if f == 0.0 {
                    0.0
                } else {
                    g(x) * f
                }
            },
            a,
            b,
            cfg,
        )?;
    }
    SoftNumber::try_new(soft, real)
}

/// `Es(X | X ∈ set) = ν·0̄ ∔ κ`.
pub fn soft_expectation(
    d: &dyn ContinuousDistribution,
    ms: &MixedSet,
    cfg: &QuadratureConfig,
) -> Result<SoftNumber> {
    soft_expectation_of(d, ms, |x| x, cfg)
}

/// `Vs(X | X ∈ set) = γ·0̄ ∔ λ²` together with its components.
pub fn soft_variance(
    d: &dyn ContinuousDistribution,
    ms: &MixedSet,
    cfg: &QuadratureConfig,
) -> Result<(SoftNumber, SoftMoments)> {
    let e = soft_expectation(d, ms, cfg)?;
    let (nu, kappa) = (e.soft(), e.real());
    let gamma1_sq: f64 = ms
        .points
        .iter()
        .map(|&x| (kappa - x).powi(2) * d.pdf(x))
        .sum();
    let coverage: f64 = ms.intervals.iter().map(|&(a, b)| d.mass(a, b)).sum();
    let gamma2 = -kappa * (1.0 - coverage);
    let mut lambda_sq = 0.0;
    for &(a, b) in &ms.intervals {
        lambda_sq += integrate_1d(|x| (kappa - x).powi(2) * d.pdf(x), a, b, cfg)?;
    }
    // expanding ((x − κ) − ν·0̄)² leaves −2ν(x − κ) on the zero axis of each
    // interval integrand, i.e. +2ν·γ₂ in total
    let gamma = gamma1_sq + 2.0 * nu * gamma2;
    let moments = SoftMoments {
        nu,
        kappa,
        gamma1_sq,
        gamma2,
        lambda_sq,
        gamma,
        coverage,
    };
    Ok((SoftNumber::try_new(gamma, lambda_sq)?, moments))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Gaussian, Uniform, UniformParams};

    fn unit() -> Uniform {
        Uniform::new(UniformParams { lo: 0.0, hi: 1.0 }).unwrap()
    }

    #[test]
    fn validation() {
        assert!(MixedSet::new(vec![0.5], vec![(0.0, 0.25)]).is_ok());
        assert!(MixedSet::new(vec![0.1], vec![(0.0, 0.25)]).is_err());
        assert!(MixedSet::new(vec![0.25], vec![(0.0, 0.25)]).is_ok());
        assert!(MixedSet::new(vec![], vec![(0.0, 0.5), (0.4, 1.0)]).is_err());
        assert!(MixedSet::new(vec![0.2, 0.2], vec![]).is_err());
        // touching open intervals and their shared endpoint are disjoint
        assert!(MixedSet::new(vec![0.5], vec![(0.5, 1.0), (0.0, 0.5)]).is_ok());
        let ms = MixedSet::new(vec![2.0, -1.0], vec![(0.5, 1.0), (0.0, 0.5)]).unwrap();
        assert_eq!(ms.points(), &[-1.0, 2.0]);
        assert_eq!(ms.intervals(), &[(0.0, 0.5), (0.5, 1.0)]);
    }

    #[test]
    fn closed_intervals_move_endpoints() {
        let ms = MixedSet::with_closed_intervals(vec![3.0], vec![(0.0, 1.0), (1.0, 2.0)]).unwrap();
        assert_eq!(ms.points(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(ms.intervals(), &[(0.0, 1.0), (1.0, 2.0)]);
    }

    #[test]
    fn serde_form() {
        let ms: MixedSet = serde_json::from_str(r#"{"points":[0.5],"intervals":[[0,0.25]]}"#).unwrap();
        assert_eq!(ms.points(), &[0.5]);
        assert_eq!(
            serde_json::to_string(&ms).unwrap(),
            r#"{"points":[0.5],"intervals":[[0.0,0.25]]}"#
        );
        assert!(serde_json::from_str::<MixedSet>(r#"{"points":[0.1],"intervals":[[0,0.25]]}"#).is_err());
    }

    #[test]
    fn expectation_examples() {
        let cfg = QuadratureConfig::default_1d();
        let ms = MixedSet::new(vec![0.5], vec![(0.0, 0.25)]).unwrap();
        let e = soft_expectation(&unit(), &ms, &cfg).unwrap();
        assert_eq!(e.soft(), 0.5);
        assert!((e.real() - 0.03125).abs() < 1e-15);
        assert!(soft_expectation(&unit(), &MixedSet::empty(), &cfg)
            .unwrap()
            .is_absolute_zero());
        let e = soft_expectation(&Gaussian::standard(), &MixedSet::new(vec![0.0], vec![]).unwrap(), &cfg)
            .unwrap();
        assert!(e.is_absolute_zero());

        let ones = soft_expectation_of(&unit(), &ms, |_| 1.0, &cfg).unwrap();
        assert_eq!(ones.soft(), 1.0);
        assert!((ones.real() - 0.25).abs() < 1e-15);
        let u = unit();
        let logf = soft_expectation_of(&u, &ms, |x| u.pdf(x).ln(), &cfg).unwrap();
        assert!(logf.is_absolute_zero());
        assert!(soft_expectation_of(&u, &ms, |_| f64::NAN, &cfg).is_err());
    }

    #[test]
    fn variance_full_coverage() {
        let cfg = QuadratureConfig::default_1d();
        let ms = MixedSet::new(vec![0.5], vec![(0.0, 0.5), (0.5, 1.0)]).unwrap();
        let (v, m) = soft_variance(&unit(), &ms, &cfg).unwrap();
        assert!(m.gamma1_sq < 1e-30);
        assert_eq!(m.gamma2, 0.0);
        assert!(v.soft().abs() < 1e-15);
        assert!((v.real() - 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn variance_points_at_kappa() {
        let cfg = QuadratureConfig::default_1d();
        // κ = ∫_0.5^1 x dx = 0.375
        let ms = MixedSet::new(vec![0.375], vec![(0.5, 1.0)]).unwrap();
        let (_, m) = soft_variance(&unit(), &ms, &cfg).unwrap();
        assert!((m.kappa - 0.375).abs() < 1e-15);
        assert!(m.gamma1_sq < 1e-30);
        assert!((m.gamma2 + 0.375 * 0.5).abs() < 1e-15);
        assert!((m.gamma - (m.gamma1_sq + 2.0 * m.nu * m.gamma2)).abs() == 0.0);
    }
}

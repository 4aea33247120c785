//! Continuous distributions and bivariate joint models.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};
use libm::erfc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_1d, integrate_2d, QuadratureConfig};

/// Number of standard scales kept when an integral to −∞ is truncated.
pub const TRUNCATION_SCALES: f64 = 10.0;

/// A univariate continuous distribution.
pub trait ContinuousDistribution: Send + Sync + Debug {
    fn pdf(&self, x: f64) -> f64;

    /// Natural log of the density; `-inf` outside the support.
    fn ln_pdf(&self, x: f64) -> f64 {
        self.pdf(x).ln()
    }

    fn cdf(&self, x: f64) -> f64;

    /// Survival function `1 − F(x)`.
    fn sf(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    /// `F(b) − F(a)`, taken from whichever tail keeps its precision.
    fn mass(&self, a: f64, b: f64) -> f64 {
        if a > self.location() {
            self.sf(a) - self.sf(b)
        } else {
            self.cdf(b) - self.cdf(a)
        }
    }

    /// Closure of the support, possibly unbounded.
    fn support(&self) -> (f64, f64);

    /// Centre used when truncating unbounded integrals.
    fn location(&self) -> f64;

    /// Spread used when truncating unbounded integrals.
    fn scale(&self) -> f64;

    /// Finite range carrying all but a negligible tail of the mass.
    fn effective_range(&self) -> (f64, f64) {
        let (lo, hi) = self.support();
        let c = self.location();
        let s = TRUNCATION_SCALES * self.scale();
        (lo.max(c - s), hi.min(c + s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub mean: f64,
    pub variance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformParams {
    pub lo: f64,
    pub hi: f64,
}

/// Normal distribution `N(μ, σ²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gaussian {
    mean: f64,
    variance: f64,
    sd: f64,
    norm: f64,
    ln_norm: f64,
}

impl Gaussian {
    pub fn new(params: GaussianParams) -> Result<Self> {
        let GaussianParams { mean, variance } = params;
        if !mean.is_finite() {
            return Err(Error::domain(format!("gaussian mean must be finite, got {mean}")));
        }
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::domain(format!(
                "gaussian variance must be positive, got {variance}"
            )));
        }
        Ok(Gaussian {
            mean,
            variance,
            sd: variance.sqrt(),
            norm: 1.0 / (2.0 * PI * variance).sqrt(),
            ln_norm: -0.5 * (2.0 * PI * variance).ln(),
        })
    }

    pub fn standard() -> Self {
        Self::new(GaussianParams { mean: 0.0, variance: 1.0 }).expect("unit variance is valid")
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn params(&self) -> GaussianParams {
        GaussianParams {
            mean: self.mean,
            variance: self.variance,
        }
    }
}

impl ContinuousDistribution for Gaussian {
    fn pdf(&self, x: f64) -> f64 {
        let d = x - self.mean;
        self.norm * (-0.5 * d * d / self.variance).exp()
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        let d = x - self.mean;
        self.ln_norm - 0.5 * d * d / self.variance
    }

    fn cdf(&self, x: f64) -> f64 {
        0.5 * erfc(-(x - self.mean) / (self.sd * SQRT_2))
    }

    fn sf(&self, x: f64) -> f64 {
        0.5 * erfc((x - self.mean) / (self.sd * SQRT_2))
    }

    fn support(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }

    fn location(&self) -> f64 {
        self.mean
    }

    fn scale(&self) -> f64 {
        self.sd
    }
}

/// Uniform distribution on the open interval `(lo, hi)`; the density is 0 at
/// both endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Uniform {
    lo: f64,
    hi: f64,
    density: f64,
}

impl Uniform {
    pub fn new(params: UniformParams) -> Result<Self> {
        let UniformParams { lo, hi } = params;
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::domain(format!(
                "uniform bounds must be finite with lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Uniform {
            lo,
            hi,
            density: 1.0 / (hi - lo),
        })
    }

    pub fn params(&self) -> UniformParams {
        UniformParams {
            lo: self.lo,
            hi: self.hi,
        }
    }
}

impl ContinuousDistribution for Uniform {
    fn pdf(&self, x: f64) -> f64 {
        if x > self.lo && x < self.hi {
            self.density
        } else {
            0.0
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= self.lo {
            0.0
        } else if x >= self.hi {
            1.0
        } else {
            (x - self.lo) * self.density
        }
    }

    fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    fn location(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn scale(&self) -> f64 {
        (self.hi - self.lo) / 12f64.sqrt()
    }
}

/// Structured-text descriptor of a univariate distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistributionSpec {
    Gaussian { mean: f64, variance: f64 },
    Uniform { lo: f64, hi: f64 },
}

impl DistributionSpec {
    pub fn build(&self) -> Result<Box<dyn ContinuousDistribution>> {
        Ok(match *self {
            DistributionSpec::Gaussian { mean, variance } => {
                Box::new(Gaussian::new(GaussianParams { mean, variance })?)
            }
            DistributionSpec::Uniform { lo, hi } => Box::new(Uniform::new(UniformParams { lo, hi })?),
        })
    }
}

/// A bivariate continuous model `(X, Y)`.
///
/// The default 2-D CDF and its partial derivatives integrate the joint density
/// from the lower edge of each marginal's effective range.
pub trait JointModel: Send + Sync + Debug {
    fn marginal_x(&self) -> &dyn ContinuousDistribution;

    fn marginal_y(&self) -> &dyn ContinuousDistribution;

    /// `f_{Y|X}(y | x)`.
    fn conditional_pdf(&self, y: f64, x: f64) -> f64;

    fn ln_conditional_pdf(&self, y: f64, x: f64) -> f64 {
        self.conditional_pdf(y, x).ln()
    }

    fn joint_pdf(&self, x: f64, y: f64) -> f64 {
        self.conditional_pdf(y, x) * self.marginal_x().pdf(x)
    }

    fn ln_joint_pdf(&self, x: f64, y: f64) -> f64 {
        self.joint_pdf(x, y).ln()
    }

    /// `F_{X,Y}(x, y)`.
    fn joint_cdf(&self, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let (xl, _) = self.marginal_x().effective_range();
        let (yl, _) = self.marginal_y().effective_range();
        if x <= xl || y <= yl {
            return Ok(0.0);
        }
        integrate_2d(|s, t| self.joint_pdf(s, t), xl, x, yl, y, cfg)
    }

    /// `∂F/∂x = ∫_{-∞}^{y} f(x, t) dt`.
    fn cdf_dx(&self, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let (yl, _) = self.marginal_y().effective_range();
        if y <= yl {
            return Ok(0.0);
        }
        integrate_1d(|t| self.joint_pdf(x, t), yl, y, cfg)
    }

    /// `∂F/∂y = ∫_{-∞}^{x} f(s, y) ds`.
    fn cdf_dy(&self, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
        let (xl, _) = self.marginal_x().effective_range();
        if x <= xl {
            return Ok(0.0);
        }
        integrate_1d(|s| self.joint_pdf(s, y), xl, x, cfg)
    }
}

/// Bivariate normal model described by means, variances and covariance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BivariateGaussian {
    x: Gaussian,
    y: Gaussian,
    cov: f64,
    rho: f64,
    // Y | X = x ~ N(mean_y + slope_yx (x - mean_x), cond_var_y)
    slope_yx: f64,
    cond_var_y: f64,
    slope_xy: f64,
    cond_var_x: f64,
}

impl BivariateGaussian {
    pub fn new(x: GaussianParams, y: GaussianParams, cov: f64) -> Result<Self> {
        let gx = Gaussian::new(x)?;
        let gy = Gaussian::new(y)?;
        if !cov.is_finite() {
            return Err(Error::domain(format!("covariance must be finite, got {cov}")));
        }
        let rho = cov / (gx.sd * gy.sd);
        if rho.abs() >= 1.0 {
            return Err(Error::Degenerate(format!(
                "correlation {rho} leaves no joint density"
            )));
        }
        Ok(BivariateGaussian {
            x: gx,
            y: gy,
            cov,
            rho,
            slope_yx: cov / x.variance,
            cond_var_y: y.variance - cov * cov / x.variance,
            slope_xy: cov / y.variance,
            cond_var_x: x.variance - cov * cov / y.variance,
        })
    }

    /// `Y = X + W` with `X ⟂ W`.
    pub fn additive(input: GaussianParams, noise: GaussianParams) -> Result<Self> {
        Gaussian::new(input)?;
        Gaussian::new(noise)?;
        let y = GaussianParams {
            mean: input.mean + noise.mean,
            variance: input.variance + noise.variance,
        };
        Self::new(input, y, input.variance)
    }

    pub fn covariance(&self) -> f64 {
        self.cov
    }

    pub fn correlation(&self) -> f64 {
        self.rho
    }

    pub fn x(&self) -> &Gaussian {
        &self.x
    }

    pub fn y(&self) -> &Gaussian {
        &self.y
    }

    /// Distribution of `Y` given `X = x`.
    pub fn conditional_y(&self, x: f64) -> Gaussian {
        let mean = self.y.mean + self.slope_yx * (x - self.x.mean);
        Gaussian::new(GaussianParams {
            mean,
            variance: self.cond_var_y,
        })
        .expect("conditional variance is positive when |rho| < 1")
    }

    /// Distribution of `X` given `Y = y`.
    pub fn conditional_x(&self, y: f64) -> Gaussian {
        let mean = self.x.mean + self.slope_xy * (y - self.y.mean);
        Gaussian::new(GaussianParams {
            mean,
            variance: self.cond_var_x,
        })
        .expect("conditional variance is positive when |rho| < 1")
    }
}

impl JointModel for BivariateGaussian {
    fn marginal_x(&self) -> &dyn ContinuousDistribution {
        &self.x
    }

    fn marginal_y(&self) -> &dyn ContinuousDistribution {
        &self.y
    }

    fn conditional_pdf(&self, y: f64, x: f64) -> f64 {
        self.conditional_y(x).pdf(y)
    }

    fn ln_conditional_pdf(&self, y: f64, x: f64) -> f64 {
        self.conditional_y(x).ln_pdf(y)
    }

    fn joint_pdf(&self, x: f64, y: f64) -> f64 {
        if self.cov == 0.0 {
            return self.x.pdf(x) * self.y.pdf(y);
        }
        self.ln_joint_pdf(x, y).exp()
    }

    fn ln_joint_pdf(&self, x: f64, y: f64) -> f64 {
        if self.cov == 0.0 {
            return self.x.ln_pdf(x) + self.y.ln_pdf(y);
        }
        let zx = (x - self.x.mean) / self.x.sd;
        let zy = (y - self.y.mean) / self.y.sd;
        let one_m = 1.0 - self.rho * self.rho;
        let q = (zx * zx - 2.0 * self.rho * zx * zy + zy * zy) / one_m;
        -(2.0 * PI * self.x.sd * self.y.sd * one_m.sqrt()).ln() - 0.5 * q
    }

    fn joint_cdf(&self, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if self.cov == 0.0 {
            return Ok(self.x.cdf(x) * self.y.cdf(y));
        }
        let (xl, _) = self.x.effective_range();
        if x <= xl {
            return Ok(0.0);
        }
        integrate_1d(|s| self.x.pdf(s) * self.conditional_y(s).cdf(y), xl, x, cfg)
    }

    fn cdf_dx(&self, x: f64, y: f64, _cfg: &QuadratureConfig) -> Result<f64> {
        Ok(self.x.pdf(x) * self.conditional_y(x).cdf(y))
    }

    fn cdf_dy(&self, x: f64, y: f64, _cfg: &QuadratureConfig) -> Result<f64> {
        Ok(self.y.pdf(y) * self.conditional_x(y).cdf(x))
    }
}

/// Structured-text descriptor of a joint model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JointSpec {
    JointGaussianAdditive {
        input: GaussianParams,
        noise: GaussianParams,
    },
    BivariateGaussian {
        x: GaussianParams,
        y: GaussianParams,
        cov: f64,
    },
}

impl JointSpec {
    pub fn build(&self) -> Result<BivariateGaussian> {
        match *self {
            JointSpec::JointGaussianAdditive { input, noise } => BivariateGaussian::additive(input, noise),
            JointSpec::BivariateGaussian { x, y, cov } => BivariateGaussian::new(x, y, cov),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(mean: f64, variance: f64) -> GaussianParams {
        GaussianParams { mean, variance }
    }

    #[test]
    fn gaussian_closed_forms() {
        let n = Gaussian::standard();
        assert!((n.pdf(0.0) - 0.398_942_280_401_432_7).abs() < 1e-15);
        assert_eq!(n.cdf(0.0), 0.5);
        assert!((n.cdf(1.959_963_984_540_054) - 0.975).abs() < 1e-15);
        assert!((n.ln_pdf(1.3) - n.pdf(1.3).ln()).abs() < 1e-14);
        assert!((n.sf(-1.959_963_984_540_054) - 0.975).abs() < 1e-15);
        // upper-tail mass survives where 1 - F has cancelled to zero
        let tail = n.mass(11.0, 12.0);
        assert!(n.cdf(12.0) - n.cdf(11.0) == 0.0);
        assert!((tail / 1.910_641_809_677_555e-28 - 1.0).abs() < 1e-12, "{tail:e}");
        let g = Gaussian::new(gp(2.5, 0.3)).unwrap();
        for x in [-1.0, 2.0, 2.4, 2.6, 3.0] {
            assert!(g.pdf(2.5) > g.pdf(x));
        }
        assert!(Gaussian::new(gp(0.0, 0.0)).is_err());
        assert!(Gaussian::new(gp(0.0, -1.0)).is_err());
    }

    #[test]
    fn uniform_open_interval() {
        let u = Uniform::new(UniformParams { lo: 0.0, hi: 1.0 }).unwrap();
        assert_eq!(u.pdf(0.5), 1.0);
        assert_eq!(u.pdf(0.0), 0.0);
        assert_eq!(u.pdf(1.0), 0.0);
        assert_eq!(u.cdf(1.0), 1.0);
        assert_eq!(u.cdf(0.25), 0.25);
        let u2 = Uniform::new(UniformParams { lo: 0.0, hi: 2.0 }).unwrap();
        assert_eq!(u2.pdf(3.0), 0.0);
        assert!(Uniform::new(UniformParams { lo: 1.0, hi: 1.0 }).is_err());
    }

    #[test]
    fn additive_model_matches_remark_setup() {
        let j = BivariateGaussian::additive(gp(0.0, 1.0), gp(0.0, 1.0)).unwrap();
        assert_eq!(j.y().params(), gp(0.0, 2.0));
        let c = j.conditional_y(0.7);
        assert_eq!(c.mean(), 0.7);
        assert_eq!(c.variance(), 1.0);
        let ind = BivariateGaussian::new(gp(0.0, 1.0), gp(0.0, 1.0), 0.0).unwrap();
        assert!((ind.joint_pdf(0.0, 0.0) - 1.0 / (2.0 * PI)).abs() < 1e-16);
        // the additive model at the origin: φ(0)·φ(0) as well
        assert!((j.joint_pdf(0.0, 0.0) - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn bayes_identity_pointwise() {
        let j = BivariateGaussian::new(gp(0.3, 1.7), gp(-1.0, 0.8), 0.6).unwrap();
        for &(x, y) in &[(0.0, 0.0), (1.2, -0.4), (-2.0, 1.5), (3.0, -3.0)] {
            let lhs = j.joint_pdf(x, y);
            let rhs = j.conditional_pdf(y, x) * j.marginal_x().pdf(x);
            assert!((lhs - rhs).abs() < 1e-12 * lhs.max(1e-300), "{x},{y}");
        }
    }

    #[test]
    fn closed_form_partials_match_quadrature_defaults() {
        #[derive(Debug)]
        struct Generic(BivariateGaussian);
        impl JointModel for Generic {
            fn marginal_x(&self) -> &dyn ContinuousDistribution {
                self.0.marginal_x()
            }
            fn marginal_y(&self) -> &dyn ContinuousDistribution {
                self.0.marginal_y()
            }
            fn conditional_pdf(&self, y: f64, x: f64) -> f64 {
                self.0.conditional_pdf(y, x)
            }
        }
        let j = BivariateGaussian::new(gp(0.3, 1.7), gp(-1.0, 0.8), 0.6).unwrap();
        let g = Generic(j);
        let cfg = QuadratureConfig::default_1d();
        let cfg2 = QuadratureConfig::default_2d().with_rel_tol(1e-10);
        for &(x, y) in &[(0.0, 0.0), (1.2, -0.4), (-1.0, -1.5)] {
            let a = j.cdf_dx(x, y, &cfg).unwrap();
            let b = g.cdf_dx(x, y, &cfg).unwrap();
            assert!((a - b).abs() < 1e-10, "dx {a} {b}");
            let a = j.cdf_dy(x, y, &cfg).unwrap();
            let b = g.cdf_dy(x, y, &cfg).unwrap();
            assert!((a - b).abs() < 1e-10, "dy {a} {b}");
            let a = j.joint_cdf(x, y, &cfg).unwrap();
            let b = g.joint_cdf(x, y, &cfg2).unwrap();
            assert!((a - b).abs() < 1e-8, "cdf {a} {b}");
        }
    }

    #[test]
    fn descriptors_parse() {
        let d: DistributionSpec = serde_json::from_str(r#"{"kind":"gaussian","mean":0,"variance":1}"#).unwrap();
        assert_eq!(d.build().unwrap().pdf(0.0), Gaussian::standard().pdf(0.0));
        let d: DistributionSpec = serde_json::from_str(r#"{"kind":"uniform","lo":0,"hi":1}"#).unwrap();
        assert_eq!(d.build().unwrap().pdf(0.5), 1.0);
        let j: JointSpec = serde_json::from_str(
            r#"{"kind":"joint_gaussian_additive","input":{"mean":0,"variance":1},"noise":{"mean":0,"variance":1}}"#,
        )
        .unwrap();
        assert_eq!(j.build().unwrap().y().variance(), 2.0);
        let bad: DistributionSpec = serde_json::from_str(r#"{"kind":"uniform","lo":1,"hi":0}"#).unwrap();
        assert!(bad.build().is_err());
    }
}

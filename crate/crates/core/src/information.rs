//! Soft entropy, cross entropy, KL divergence and mutual information.
//!
//! Point terms land on the zero axis (and, for entropies, on the `0̄log0̄`
//! axis); interval terms are integrated onto the real axis. Logarithms are
//! taken in natural base internally and rescaled by `1 / ln(base)` at the end.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::distributions::{ContinuousDistribution, JointModel};
use crate::error::{Error, Result};
use crate::moments::MixedSet;
use crate::quadrature::{integrate_1d, integrate_2d, QuadratureConfig};
use crate::soft::{ExtendedSoftNumber, SoftNumber, ZlogzMode};

/// Densities below this are treated as 0 in `f·log f`-type integrands.
pub const DENSITY_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfoConfig {
    pub log_base: f64,
    pub zlogz_mode: ZlogzMode,
    /// Used for interval integrals.
    pub quadrature: QuadratureConfig,
    /// Used for interval-pair integrals in mutual information.
    pub quadrature_2d: QuadratureConfig,
}

impl Default for InfoConfig {
    fn default() -> Self {
        InfoConfig {
            log_base: std::f64::consts::E,
            zlogz_mode: ZlogzMode::Axis,
            quadrature: QuadratureConfig::default_1d(),
            quadrature_2d: QuadratureConfig::default_2d(),
        }
    }
}

impl InfoConfig {
    pub fn with_log_base(self, log_base: f64) -> Self {
        InfoConfig { log_base, ..self }
    }

    pub fn with_zlogz_mode(self, zlogz_mode: ZlogzMode) -> Self {
        InfoConfig { zlogz_mode, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.log_base > 0.0 && self.log_base.is_finite()) || self.log_base == 1.0 {
            return Err(Error::domain(format!(
                "log base must be positive and different from 1, got {}",
                self.log_base
            )));
        }
        self.quadrature.validate()?;
        self.quadrature_2d.validate()
    }

    fn ln_base(&self) -> f64 {
        self.log_base.ln()
    }
}

/// Which factorisation of the joint density mutual information is evaluated in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MiForm {
    /// `f_{X,Y} log(f_{X,Y} / (f_X f_Y))`
    #[default]
    Symmetric,
    /// `f_{Y|X} f_X log(f_{Y|X} / f_Y)`
    Conditional,
}

/// Integrates `f·h` over each interval where `h` may be undefined on
/// negligible density. The first failure reported by `h` aborts the sum.
fn interval_sum<W, H>(ms: &MixedSet, weight: W, h: H, cfg: &QuadratureConfig) -> Result<f64>
where
    W: Fn(f64) -> f64,
    H: Fn(f64) -> std::result::Result<f64, String>,
{
    let failure: Cell<Option<String>> = Cell::new(None);
    let mut total = 0.0;
    for &(a, b) in ms.intervals() {
        let value = integrate_1d(
            |x| {
                let w = weight(x);
                if w < DENSITY_FLOOR {
                    return 0.0;
                }
                match h(x) {
                    Ok(v) => w * v,
                    Err(msg) => {
                        let prev = failure.take();
                        failure.set(prev.or(Some(msg)));
                        0.0
                    }
                }
            },
            a,
            b,
            cfg,
        );
        if let Some(msg) = failure.take() {
            return Err(Error::Domain(msg));
        }
        total += value?;
    }
    Ok(total)
}

fn positive_density(d: &dyn ContinuousDistribution, x: f64, what: &str) -> Result<f64> {
    let f = d.pdf(x);
    if f > 0.0 {
        Ok(f)
    } else {
        Err(Error::domain(format!("{what} density is zero at point {x}")))
    }
}

/// Soft entropy `h₁·(0̄log0̄) ∔ h₂·0̄ ∔ h₃`.
///
/// `h₁ = −Σᵢ f(xᵢ)`, `h₂ = −Σᵢ f(xᵢ) log f(xᵢ)`, `h₃ = −Σⱼ ∫ f log f`.
pub fn soft_entropy(
    d: &dyn ContinuousDistribution,
    ms: &MixedSet,
    cfg: &InfoConfig,
) -> Result<ExtendedSoftNumber> {
    cfg.validate()?;
    let mut h1 = 0.0;
    let mut h2 = 0.0;
    for &x in ms.points() {
        let f = positive_density(d, x, "entropy")?;
        h1 -= f;
        h2 -= f * d.ln_pdf(x);
    }
    let h3 = -interval_sum(ms, |x| d.pdf(x), |x| Ok(d.ln_pdf(x)), &cfg.quadrature)?;
    let lb = cfg.ln_base();
    Ok(ExtendedSoftNumber::try_new(h1, h2 / lb, h3 / lb)?.with_mode(cfg.zlogz_mode))
}

/// Soft cross entropy of `d` against the guess `d_hat`.
///
/// The `0̄log0̄` coefficient `−Σᵢ f(xᵢ)` does not depend on `d_hat`.
pub fn soft_cross_entropy(
    d: &dyn ContinuousDistribution,
    d_hat: &dyn ContinuousDistribution,
    ms: &MixedSet,
    cfg: &InfoConfig,
) -> Result<ExtendedSoftNumber> {
    cfg.validate()?;
    let mut h1 = 0.0;
    let mut h2 = 0.0;
    for &x in ms.points() {
        let f = d.pdf(x);
        if f == 0.0 {
            continue;
        }
        positive_density(d_hat, x, "guessed")?;
        h1 -= f;
        h2 -= f * d_hat.ln_pdf(x);
    }
    let h3 = -interval_sum(
        ms,
        |x| d.pdf(x),
        |x| {
            let l = d_hat.ln_pdf(x);
            if l.is_finite() {
                Ok(l)
            } else {
                Err(format!("guessed density is zero at {x} where the true density is not"))
            }
        },
        &cfg.quadrature,
    )?;
    let lb = cfg.ln_base();
    Ok(ExtendedSoftNumber::try_new(h1, h2 / lb, h3 / lb)?.with_mode(cfg.zlogz_mode))
}

/// Soft KL divergence `[Σᵢ f log(f/f̂)]·0̄ ∔ Σⱼ ∫ f log(f/f̂)`.
pub fn soft_kld(
    d: &dyn ContinuousDistribution,
    d_hat: &dyn ContinuousDistribution,
    ms: &MixedSet,
    cfg: &InfoConfig,
) -> Result<SoftNumber> {
    cfg.validate()?;
    let mut soft = 0.0;
    for &x in ms.points() {
        let f = d.pdf(x);
        if f == 0.0 {
            continue;
        }
        positive_density(d_hat, x, "guessed")?;
        soft += f * (d.ln_pdf(x) - d_hat.ln_pdf(x));
    }
    let real = interval_sum(
        ms,
        |x| d.pdf(x),
        |x| {
            let l = d_hat.ln_pdf(x);
            if l.is_finite() {
                Ok(d.ln_pdf(x) - l)
            } else {
                Err(format!("guessed density is zero at {x} where the true density is not"))
            }
        },
        &cfg.quadrature,
    )?;
    let lb = cfg.ln_base();
    SoftNumber::try_new(soft / lb, real / lb)
}

/// Integrand weight and log-ratio at `(x, y)` for the chosen form.
fn mi_terms(j: &dyn JointModel, x: f64, y: f64, form: MiForm) -> (f64, f64) {
    let mx = j.marginal_x();
    let my = j.marginal_y();
    match form {
        MiForm::Symmetric => {
            let w = j.joint_pdf(x, y);
            if w < DENSITY_FLOOR {
                return (0.0, 0.0);
            }
            (w, j.ln_joint_pdf(x, y) - (mx.ln_pdf(x) + my.ln_pdf(y)))
        }
        MiForm::Conditional => {
            let w = j.conditional_pdf(y, x) * mx.pdf(x);
            if w < DENSITY_FLOOR {
                return (0.0, 0.0);
            }
            (w, j.ln_conditional_pdf(y, x) - my.ln_pdf(y))
        }
    }
}

/// Soft mutual information `Is(Y; X | Y ∈ 𝒴, X ∈ 𝒳)`.
///
/// The zero axis sums every point pair `(xᵢ, yⱼ)`; the real axis integrates
/// every interval pair. Point–interval cross pairs do not contribute.
pub fn soft_mutual_information(
    j: &dyn JointModel,
    sx: &MixedSet,
    sy: &MixedSet,
    cfg: &InfoConfig,
    form: MiForm,
) -> Result<SoftNumber> {
    cfg.validate()?;
    let mx = j.marginal_x();
    let my = j.marginal_y();
    for &x in sx.points() {
        positive_density(mx, x, "marginal X")?;
    }
    for &y in sy.points() {
        positive_density(my, y, "marginal Y")?;
    }

    let mut soft = 0.0;
    for &y in sy.points() {
        for &x in sx.points() {
            let (w, lr) = mi_terms(j, x, y, form);
            if w > 0.0 {
                soft += w * lr;
            }
        }
    }

    let failure: Cell<Option<String>> = Cell::new(None);
    let mut real = 0.0;
    for &(ya, yb) in sy.intervals() {
        for &(xa, xb) in sx.intervals() {
            let value = integrate_2d(
                |x, y| {
                    let (w, lr) = mi_terms(j, x, y, form);
                    if w == 0.0 {
                        return 0.0;
                    }
                    if !lr.is_finite() {
                        let prev = failure.take();
                        failure.set(prev.or(Some(format!(
                            "log density ratio undefined at ({x}, {y})"
                        ))));
                        return 0.0;
                    }
                    w * lr
                },
                xa,
                xb,
                ya,
                yb,
                &cfg.quadrature_2d,
            );
            if let Some(msg) = failure.take() {
                return Err(Error::Domain(msg));
            }
            real += value?;
        }
    }

    let lb = cfg.ln_base();
    if !soft.is_finite() {
        return Err(Error::domain("log density ratio undefined at a point pair"));
    }
    SoftNumber::try_new(soft / lb, real / lb)
}

//! Reference values for soft mutual information in the additive Gaussian model
//! `X ~ N(0,1)`, `W ~ N(0,1)`, `Y = X + W`.
//!
//! Each row pairs `𝒳 = {x₀} ∪ (a,b)` with `𝒴 = {y₀} ∪ (A,B)`.

use serde::Serialize;

use crate::distributions::{BivariateGaussian, GaussianParams};
use crate::error::Result;
use crate::information::{soft_mutual_information, InfoConfig, MiForm};
use crate::moments::MixedSet;
use crate::soft::SoftNumber;

/// How a computed component is compared with its reference.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
}

impl Tolerance {
    pub fn accepts(&self, computed: f64, reference: f64) -> bool {
        let delta = (computed - reference).abs();
        match *self {
            Tolerance::Absolute(t) => delta <= t,
            Tolerance::Relative(t) => delta <= t * reference.abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Row {
    pub x0: f64,
    pub y0: f64,
    pub x_interval: (f64, f64),
    pub y_interval: (f64, f64),
    pub reference: SoftNumber,
    pub soft_tolerance: Tolerance,
    pub real_tolerance: Tolerance,
}

impl Row {
    pub fn sets(&self) -> Result<(MixedSet, MixedSet)> {
        Ok((
            MixedSet::new(vec![self.x0], vec![self.x_interval])?,
            MixedSet::new(vec![self.y0], vec![self.y_interval])?,
        ))
    }
}

const ABS: Tolerance = Tolerance::Absolute(1e-5);

pub const ROWS: [Row; 5] = [
    Row {
        x0: 0.0,
        y0: 0.0,
        x_interval: (1.0, 2.0),
        y_interval: (1.0, 2.0),
        reference: SoftNumber::new(0.055159, 0.042381),
        soft_tolerance: ABS,
        real_tolerance: ABS,
    },
    Row {
        x0: 0.0,
        y0: 1.0,
        x_interval: (1.0, 2.0),
        y_interval: (2.0, 3.0),
        reference: SoftNumber::new(0.0093225, 0.037941),
        soft_tolerance: ABS,
        real_tolerance: ABS,
    },
    Row {
        x0: 1.0,
        y0: 0.0,
        x_interval: (2.0, 3.0),
        y_interval: (1.0, 3.0),
        reference: SoftNumber::new(-0.0089831, 0.018353),
        soft_tolerance: ABS,
        real_tolerance: ABS,
    },
    Row {
        x0: 1.0,
        y0: 0.0,
        x_interval: (20.0, 30.0),
        y_interval: (10.0, 30.0),
        reference: SoftNumber::new(-0.0089831, 2.7404e-87),
        soft_tolerance: Tolerance::Absolute(1e-6),
        real_tolerance: Tolerance::Relative(1e-2),
    },
    Row {
        x0: 20.0,
        y0: 30.0,
        x_interval: (2.0, 3.0),
        y_interval: (1.0, 3.0),
        reference: SoftNumber::new(7.4494e-108, 0.018353),
        soft_tolerance: ABS,
        real_tolerance: ABS,
    },
];

pub fn model() -> BivariateGaussian {
    let std_normal = GaussianParams { mean: 0.0, variance: 1.0 };
    BivariateGaussian::additive(std_normal, std_normal).expect("unit variances are valid")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowResult {
    pub row: Row,
    pub computed: SoftNumber,
    pub soft_ok: bool,
    pub real_ok: bool,
}

impl RowResult {
    pub fn passed(&self) -> bool {
        self.soft_ok && self.real_ok
    }

    pub fn soft_delta(&self) -> f64 {
        self.computed.soft() - self.row.reference.soft()
    }

    pub fn real_delta(&self) -> f64 {
        self.computed.real() - self.row.reference.real()
    }

    pub fn real_relative_delta(&self) -> f64 {
        self.real_delta() / self.row.reference.real()
    }
}

pub fn evaluate(row: &Row, cfg: &InfoConfig) -> Result<RowResult> {
    let (sx, sy) = row.sets()?;
    let computed = soft_mutual_information(&model(), &sx, &sy, cfg, MiForm::Symmetric)?;
    Ok(RowResult {
        row: *row,
        computed,
        soft_ok: row.soft_tolerance.accepts(computed.soft(), row.reference.soft()),
        real_ok: row.real_tolerance.accepts(computed.real(), row.reference.real()),
    })
}

pub fn evaluate_all(cfg: &InfoConfig) -> Result<Vec<RowResult>> {
    ROWS.iter().map(|r| evaluate(r, cfg)).collect()
}

//! Soft numbers and soft probability for continuous random variables.
//!
//! A soft number `a·0̄ ∔ b` carries a coefficient on the zero axis next to an
//! ordinary real part. Probabilities of exact-value events on a continuous
//! random variable become soft zeros `f(x)·0̄` instead of collapsing to 0,
//! which lets expectations, entropies, divergences and mutual information be
//! evaluated over sets that mix single points with intervals.
//!
//! The crate is organised bottom-up:
//!
//! * [`soft`]: the soft-number algebra.
//! * [`quadrature`]: adaptive Gauss–Legendre integration in one and two dimensions.
//! * [`distributions`]: continuous distributions and bivariate joint models.
//! * [`probability`]: soft probabilities of point, interval and 2-D events.
//! * [`moments`]: soft expectation and variance over a [`MixedSet`].
//! * [`information`]: soft entropy, cross entropy, KL divergence and mutual information.
//! * [`table1`]: the additive Gaussian reference rows for soft mutual information.
//! * [`tree`]: a decision-tree inducer that splits on soft mutual information.

pub mod distributions;
pub mod error;
pub mod information;
pub mod moments;
pub mod probability;
pub mod quadrature;
pub mod soft;
pub mod table1;
pub mod tree;

pub use distributions::{
    BivariateGaussian, ContinuousDistribution, DistributionSpec, Gaussian, GaussianParams,
    JointModel, JointSpec, Uniform, UniformParams,
};
pub use error::{Error, Result};
pub use information::{InfoConfig, MiForm};
pub use moments::{MixedSet, SoftMoments};
pub use quadrature::QuadratureConfig;
pub use tree::{Dataset, Observation, TreeConfig, TreeModel, TreeNode};
pub use soft::{
    AbsMode, BridgeNumber, BridgeSide, ExtendedSoftNumber, SoftNumber, SymmetricPair, ZlogzMode,
};

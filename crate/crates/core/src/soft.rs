//! Soft-number algebra.
//!
//! A [`SoftNumber`] is written `a·0̄ ∔ b`: `a` is the coefficient on the zero
//! axis and `b` the ordinary real part. Multiplication obeys the nullity rule
//! `0̄·0̄ = 0`, so the algebra behaves like dual numbers with the zero axis
//! playing the role of the nilpotent unit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A value `soft·0̄ ∔ real`.
///
/// Both coefficients are finite at construction. Arithmetic follows `f64`
/// semantics, so an overflowing product may leave the finite range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSoft")]
pub struct SoftNumber {
    soft: f64,
    real: f64,
}

#[derive(Deserialize)]
struct RawSoft {
    soft: f64,
    real: f64,
}

impl TryFrom<RawSoft> for SoftNumber {
    type Error = Error;

    fn try_from(raw: RawSoft) -> Result<Self> {
        SoftNumber::try_new(raw.soft, raw.real)
    }
}

/// How the absolute value of a soft number treats the soft coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsMode {
    /// Lift `|x|` with derivative `sign(x)`: `|a·0̄ ∔ x| = a·sign(x)·0̄ ∔ |x|`.
    SignRule,
    /// Multiply by the soft conjugate `(-a)·0̄ ∔ x`; the soft part vanishes.
    Conjugate,
}

impl SoftNumber {
    /// The absolute zero `0·0̄ ∔ 0`.
    pub const ZERO: SoftNumber = SoftNumber { soft: 0.0, real: 0.0 };
    /// The multiplicative identity `0·0̄ ∔ 1`.
    pub const ONE: SoftNumber = SoftNumber { soft: 0.0, real: 1.0 };
    /// The unit soft zero `1·0̄ ∔ 0`.
    pub const SOFT_ONE: SoftNumber = SoftNumber { soft: 1.0, real: 0.0 };

    /// Builds `soft·0̄ ∔ real`.
    ///
    /// # Panics
    ///
    /// Panics if either coefficient is NaN or infinite. Use
    /// [`SoftNumber::try_new`] for untrusted input.
    pub const fn new(soft: f64, real: f64) -> Self {
        assert!(
            soft.is_finite() && real.is_finite(),
            "soft number coefficients must be finite"
        );
        SoftNumber { soft, real }
    }

    pub fn try_new(soft: f64, real: f64) -> Result<Self> {
        if !soft.is_finite() || !real.is_finite() {
            return Err(Error::domain(format!(
                "soft number coefficients must be finite (soft={soft}, real={real})"
            )));
        }
        Ok(SoftNumber { soft, real })
    }

    /// `0·0̄ ∔ real`.
    pub fn from_real(real: f64) -> Self {
        Self::new(0.0, real)
    }

    /// The soft zero `soft·0̄`.
    pub fn soft_zero(soft: f64) -> Self {
        Self::new(soft, 0.0)
    }

    #[inline]
    pub fn soft(&self) -> f64 {
        self.soft
    }

    #[inline]
    pub fn real(&self) -> f64 {
        self.real
    }

    pub fn is_absolute_zero(&self) -> bool {
        self.soft == 0.0 && self.real == 0.0
    }

    /// Nonzero soft coefficient with a zero real part.
    pub fn is_soft_zero(&self) -> bool {
        self.soft != 0.0 && self.real == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.soft.is_finite() && self.real.is_finite()
    }

    /// Multiplies both coefficients by a real scalar.
    pub fn scale(self, k: f64) -> Self {
        SoftNumber {
            soft: self.soft * k,
            real: self.real * k,
        }
    }

    /// `(a·0̄ ∔ b)ⁿ = n·a·bⁿ⁻¹·0̄ ∔ bⁿ`.
    pub fn powi(self, n: u32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let bn1 = pow_u32(self.real, n - 1);
        SoftNumber {
            soft: n as f64 * self.soft * bn1,
            real: bn1 * self.real,
        }
    }

    /// Lifts a differentiable scalar function: `f(a·0̄ ∔ x) = a·f'(x)·0̄ ∔ f(x)`.
    pub fn lift<F, D>(self, f: F, df: D) -> Result<Self>
    where
        F: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        let value = f(self.real);
        let slope = df(self.real);
        if !value.is_finite() || !slope.is_finite() {
            return Err(Error::domain(format!(
                "lifted function is not finite at {} (f={value}, f'={slope})",
                self.real
            )));
        }
        Ok(SoftNumber {
            soft: self.soft * slope,
            real: value,
        })
    }

    pub fn abs(self, mode: AbsMode) -> Result<Self> {
        match mode {
            AbsMode::Conjugate => Ok(SoftNumber {
                soft: 0.0,
                real: self.real.abs(),
            }),
            AbsMode::SignRule => {
                if self.real == 0.0 {
                    return Err(Error::domain(
                        "sign-rule absolute value is undefined at a zero real part",
                    ));
                }
                Ok(SoftNumber {
                    soft: self.soft * self.real.signum(),
                    real: self.real.abs(),
                })
            }
        }
    }

    /// Soft division.
    ///
    /// With a nonzero real denominator this rationalises by the soft
    /// conjugate, giving `(a·0̄ ∔ b) / (c·0̄ ∔ d) = ((a·d − b·c)/d²)·0̄ ∔ b/d`;
    /// a pure soft-zero numerator reduces to `(a/d)·0̄`. Two pure soft zeros
    /// cancel the zero axis and give the real ratio `a/c`.
    pub fn checked_div(self, den: SoftNumber) -> Result<Self> {
        if den.is_absolute_zero() {
            return Err(Error::domain("division by absolute zero"));
        }
        if den.real != 0.0 {
            if self.real == 0.0 {
                return Ok(SoftNumber {
                    soft: self.soft / den.real,
                    real: 0.0,
                });
            }
            let d2 = den.real * den.real;
            return Ok(SoftNumber {
                soft: (self.soft * den.real - self.real * den.soft) / d2,
                real: self.real / den.real,
            });
        }
        if self.real != 0.0 {
            return Err(Error::domain(
                "a soft-zero denominator needs a soft-zero numerator",
            ));
        }
        Ok(SoftNumber {
            soft: 0.0,
            real: self.soft / den.soft,
        })
    }

    /// Symmetric-pair coordinates: height `A = soft + real`, width `B = real / A`.
    pub fn to_sp(self) -> Result<SymmetricPair> {
        let height = self.soft + self.real;
        if height == 0.0 {
            return Err(Error::domain("absolute-zero height has no width"));
        }
        SymmetricPair::new(height, self.real / height)
    }

    pub fn from_sp(p: SymmetricPair) -> Self {
        SoftNumber {
            soft: (1.0 - p.width) * p.height,
            real: p.width * p.height,
        }
    }

    /// Total order: real parts first, soft coefficients break ties.
    ///
    /// On pure soft zeros this is the ordering `a < b ⇒ a·0̄ < b·0̄`.
    pub fn total_cmp(&self, other: &SoftNumber) -> Ordering {
        cmp_f64(self.real, other.real).then_with(|| cmp_f64(self.soft, other.soft))
    }

    /// The two bridge numbers `soft·0̄ ⊥ real` and `real ⊥ soft·0̄`.
    pub fn bridges(self) -> (BridgeNumber, BridgeNumber) {
        (
            BridgeNumber::new(BridgeSide::Left, self.soft, self.real),
            BridgeNumber::new(BridgeSide::Right, self.soft, self.real),
        )
    }

    /// Reassembles a soft number from its left and right bridge numbers.
    pub fn from_bridges(left: BridgeNumber, right: BridgeNumber) -> Result<Self> {
        if left.side != BridgeSide::Left || right.side != BridgeSide::Right {
            return Err(Error::domain("expected one left and one right bridge number"));
        }
        if left.soft != right.soft || left.real != right.real {
            return Err(Error::domain("bridge numbers do not describe the same pair"));
        }
        Self::try_new(left.soft, left.real)
    }
}

fn pow_u32(x: f64, n: u32) -> f64 {
    // i32::MAX exponents are far past overflow for any |x| > 1
    x.powi(n.min(i32::MAX as u32) as i32)
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    // -0.0 and 0.0 compare equal; NaN never occurs for finite inputs
    a.partial_cmp(&b).unwrap_or_else(|| a.total_cmp(&b))
}

impl PartialOrd for SoftNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl Add for SoftNumber {
    type Output = SoftNumber;
    fn add(self, rhs: SoftNumber) -> SoftNumber {
        SoftNumber {
            soft: self.soft + rhs.soft,
            real: self.real + rhs.real,
        }
    }
}

impl Sub for SoftNumber {
    type Output = SoftNumber;
    fn sub(self, rhs: SoftNumber) -> SoftNumber {
        SoftNumber {
            soft: self.soft - rhs.soft,
            real: self.real - rhs.real,
        }
    }
}

impl Neg for SoftNumber {
    type Output = SoftNumber;
    fn neg(self) -> SoftNumber {
        SoftNumber {
            soft: -self.soft,
            real: -self.real,
        }
    }
}

impl Mul for SoftNumber {
    type Output = SoftNumber;
    /// `(a·0̄ ∔ b)(c·0̄ ∔ d) = (a·d + b·c)·0̄ ∔ b·d`
    fn mul(self, rhs: SoftNumber) -> SoftNumber {
        SoftNumber {
            soft: self.soft * rhs.real + self.real * rhs.soft,
            real: self.real * rhs.real,
        }
    }
}

impl AddAssign for SoftNumber {
    fn add_assign(&mut self, rhs: SoftNumber) {
        *self = *self + rhs;
    }
}

impl SubAssign for SoftNumber {
    fn sub_assign(&mut self, rhs: SoftNumber) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for SoftNumber {
    fn sum<I: Iterator<Item = SoftNumber>>(iter: I) -> Self {
        iter.fold(SoftNumber::ZERO, |acc, s| acc + s)
    }
}

/// Shortest round-trip text for a coefficient, switching to scientific
/// notation for very small or very large magnitudes.
pub struct Coef(pub f64);

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.0.abs();
        if m == 0.0 {
            write!(f, "0")
        } else if (1e-4..1e15).contains(&m) {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{:e}", self.0)
        }
    }
}

impl fmt::Display for SoftNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*0~ + {}", Coef(self.soft), Coef(self.real))
    }
}

/// Whether the `0̄log0̄` coefficient is kept on its own axis or evaluated as
/// an absolute zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZlogzMode {
    #[default]
    Axis,
    Collapse,
}

/// A value `zlogz·(0̄log0̄) ∔ soft·0̄ ∔ real`, the codomain of soft entropy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawExtended")]
pub struct ExtendedSoftNumber {
    zlogz: f64,
    soft: f64,
    real: f64,
}

#[derive(Deserialize)]
struct RawExtended {
    zlogz: f64,
    soft: f64,
    real: f64,
}

impl TryFrom<RawExtended> for ExtendedSoftNumber {
    type Error = Error;

    fn try_from(raw: RawExtended) -> Result<Self> {
        ExtendedSoftNumber::try_new(raw.zlogz, raw.soft, raw.real)
    }
}

impl ExtendedSoftNumber {
    pub const ZERO: ExtendedSoftNumber = ExtendedSoftNumber {
        zlogz: 0.0,
        soft: 0.0,
        real: 0.0,
    };

    /// # Panics
    ///
    /// Panics on a non-finite coefficient.
    pub fn new(zlogz: f64, soft: f64, real: f64) -> Self {
        match Self::try_new(zlogz, soft, real) {
            Ok(e) => e,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_new(zlogz: f64, soft: f64, real: f64) -> Result<Self> {
        if !(zlogz.is_finite() && soft.is_finite() && real.is_finite()) {
            return Err(Error::domain(format!(
                "extended soft number coefficients must be finite ({zlogz}, {soft}, {real})"
            )));
        }
        Ok(ExtendedSoftNumber { zlogz, soft, real })
    }

    #[inline]
    pub fn zlogz(&self) -> f64 {
        self.zlogz
    }

    #[inline]
    pub fn soft(&self) -> f64 {
        self.soft
    }

    #[inline]
    pub fn real(&self) -> f64 {
        self.real
    }

    /// The `0̄` and real components as a plain soft number.
    pub fn soft_part(&self) -> SoftNumber {
        SoftNumber {
            soft: self.soft,
            real: self.real,
        }
    }

    /// Applies the `0̄log0̄` evaluation mode; `Collapse` zeroes that axis only.
    pub fn with_mode(self, mode: ZlogzMode) -> Self {
        match mode {
            ZlogzMode::Axis => self,
            ZlogzMode::Collapse => ExtendedSoftNumber { zlogz: 0.0, ..self },
        }
    }

    /// Weighted componentwise sum over all three axes.
    pub fn combine<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (f64, ExtendedSoftNumber)>,
    {
        terms
            .into_iter()
            .fold(ExtendedSoftNumber::ZERO, |acc, (w, e)| ExtendedSoftNumber {
                zlogz: acc.zlogz + w * e.zlogz,
                soft: acc.soft + w * e.soft,
                real: acc.real + w * e.real,
            })
    }
}

impl fmt::Display for ExtendedSoftNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*0log0~ + {}*0~ + {}",
            Coef(self.zlogz),
            Coef(self.soft),
            Coef(self.real)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BridgeSide {
    /// `a·0̄ ⊥ b`
    Left,
    /// `b ⊥ a·0̄`
    Right,
}

/// One side of the bridge between the zero axis and the real axis.
///
/// Bridge numbers are representational only: the side takes part in
/// equality, and no arithmetic is defined on them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeNumber {
    pub side: BridgeSide,
    pub soft: f64,
    pub real: f64,
}

impl BridgeNumber {
    pub fn new(side: BridgeSide, soft: f64, real: f64) -> Self {
        BridgeNumber { side, soft, real }
    }
}

impl fmt::Display for BridgeNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            BridgeSide::Left => write!(f, "{}*0~ _|_ {}", Coef(self.soft), Coef(self.real)),
            BridgeSide::Right => write!(f, "{} _|_ {}*0~", Coef(self.real), Coef(self.soft)),
        }
    }
}

/// Height/width coordinates of a soft number on the soft-numbers strip.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricPair {
    height: f64,
    width: f64,
}

impl SymmetricPair {
    pub fn new(height: f64, width: f64) -> Result<Self> {
        if !height.is_finite() {
            return Err(Error::domain(format!("height must be finite, got {height}")));
        }
        if !(0.0..=1.0).contains(&width) {
            return Err(Error::domain(format!("width must lie in [0, 1], got {width}")));
        }
        Ok(SymmetricPair { height, width })
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn width(&self) -> f64 {
        self.width
    }
}

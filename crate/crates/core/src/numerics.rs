//! Sign + base-10 exponent arithmetic for quantities that span hundreds of
//! decades (t_P^{4/3} E^2, e^{-10^9}, ...), where native `f64` would
//! overflow or underflow.
//!
//! A [`LogScalar`] stores `sign * 10^log10`. Multiplication, division and
//! rational powers are exact up to the rounding of one `f64` exponent;
//! addition uses a shift-and-sum on the exponent gap.

use std::cmp::Ordering;
use std::f64::consts::LN_10;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opposite-sign sums whose magnitude falls this many decades below both
/// operands are returned as canonical zero.
pub const CANCELLATION_DECADES: f64 = 15.0;

/// Which side of the native range a conversion landed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeFlag {
    ExactRange,
    UnderflowClampedToZero,
    OverflowClampedToInf,
}

/// Rational exponent `num/den`, kept as integers so 4/3 or 3/7 stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponent {
    num: i64,
    den: i64,
}

impl Exponent {
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "exponent denominator must be nonzero");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Exponent { num, den }
    }

    pub fn int(n: i64) -> Self {
        Exponent { num: n, den: 1 }
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn recip(self) -> Self {
        Exponent::new(self.den, self.num)
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// A signed real stored as `sign * 10^log10`.
///
/// Zero is the unique value with `sign == 0`, and it always carries
/// `log10 == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLogScalar", into = "RawLogScalar")]
pub struct LogScalar {
    sign: i8,
    log10: f64,
}

#[derive(Serialize, Deserialize)]
struct RawLogScalar {
    sign: i8,
    log10: f64,
}

impl TryFrom<RawLogScalar> for LogScalar {
    type Error = Error;

    fn try_from(raw: RawLogScalar) -> Result<Self> {
        LogScalar::from_parts(raw.sign, raw.log10)
    }
}

impl From<LogScalar> for RawLogScalar {
    fn from(v: LogScalar) -> Self {
        RawLogScalar {
            sign: v.sign,
            log10: v.log10,
        }
    }
}

impl LogScalar {
    pub const ZERO: LogScalar = LogScalar {
        sign: 0,
        log10: 0.0,
    };
    pub const ONE: LogScalar = LogScalar {
        sign: 1,
        log10: 0.0,
    };

    /// Builds a value from its sign and base-10 exponent.
    ///
    /// `sign` must be -1, 0 or +1; the exponent must be finite unless the
    /// sign is zero, in which case it is ignored.
    pub fn from_parts(sign: i8, log10: f64) -> Result<Self> {
        match sign {
            0 => Ok(Self::ZERO),
            1 | -1 if log10.is_finite() => Ok(LogScalar { sign, log10 }),
            1 | -1 => Err(Error::domain(format!("non-finite exponent {log10}"))),
            _ => Err(Error::domain(format!(
                "sign must be -1, 0 or 1, got {sign}"
            ))),
        }
    }

    /// `10^log10`, positive.
    pub fn pow10(log10: f64) -> Self {
        debug_assert!(log10.is_finite());
        LogScalar { sign: 1, log10 }
    }

    /// Panics on NaN or infinite input; see [`LogScalar::try_from_real`].
    pub fn from_real(x: f64) -> Self {
        Self::try_from_real(x).expect("LogScalar::from_real needs a finite value")
    }

    pub fn try_from_real(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain(format!("cannot represent {x}")));
        }
        if x == 0.0 {
            return Ok(Self::ZERO);
        }
        Ok(LogScalar {
            sign: if x > 0.0 { 1 } else { -1 },
            log10: x.abs().log10(),
        })
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Base-10 exponent of |self|. Meaningful only for nonzero values.
    pub fn log10(self) -> f64 {
        self.log10
    }

    /// Natural logarithm of |self|.
    pub fn ln(self) -> f64 {
        self.log10 * LN_10
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn is_positive(self) -> bool {
        self.sign > 0
    }

    pub fn abs(self) -> Self {
        LogScalar {
            sign: self.sign.abs(),
            log10: self.log10,
        }
    }

    /// Converts to `f64`, reporting whether the value had to be clamped.
    ///
    /// Values below the smallest normal `f64` are reported as underflow
    /// (subnormals lose relative precision).
    pub fn to_real(self) -> (f64, RangeFlag) {
        if self.sign == 0 {
            return (0.0, RangeFlag::ExactRange);
        }
        let s = f64::from(self.sign);
        if self.log10 < f64::MIN_POSITIVE.log10() {
            return (0.0 * s, RangeFlag::UnderflowClampedToZero);
        }
        let v = 10f64.powf(self.log10);
        if v.is_infinite() {
            return (s * f64::INFINITY, RangeFlag::OverflowClampedToInf);
        }
        if v < f64::MIN_POSITIVE {
            return (0.0 * s, RangeFlag::UnderflowClampedToZero);
        }
        (s * v, RangeFlag::ExactRange)
    }

    /// The native value when it is representable without clamping.
    pub fn to_f64(self) -> Option<f64> {
        match self.to_real() {
            (v, RangeFlag::ExactRange) => Some(v),
            _ => None,
        }
    }

    /// Raises to a rational power.
    ///
    /// Negative bases are only allowed with integer exponents; zero cannot
    /// be raised to a negative power.
    pub fn pow(self, p: Exponent) -> Result<Self> {
        if p.numer() == 0 {
            return Ok(Self::ONE);
        }
        match self.sign {
            0 if p.numer() > 0 => Ok(Self::ZERO),
            0 => Err(Error::domain("zero raised to a negative power")),
            -1 if !p.is_integer() => Err(Error::domain(format!(
                "negative base with non-integer exponent {}/{}",
                p.numer(),
                p.denom()
            ))),
            _ => {
                let sign = if self.sign < 0 && p.numer() % 2 != 0 {
                    -1
                } else {
                    1
                };
                Ok(LogScalar {
                    sign,
                    log10: self.log10 * p.numer() as f64 / p.denom() as f64,
                })
            }
        }
    }

    /// `self^(num/den)`.
    pub fn powr(self, num: i64, den: i64) -> Result<Self> {
        self.pow(Exponent::new(num, den))
    }

    pub fn sqrt(self) -> Result<Self> {
        self.powr(1, 2)
    }

    pub fn recip(self) -> Result<Self> {
        self.pow(Exponent::int(-1))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(self * rhs.recip()?)
    }

    /// Total order on values (no NaN is representable).
    pub fn compare(self, other: Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                1 => self.log10.total_cmp(&other.log10),
                _ => other.log10.total_cmp(&self.log10),
            },
            ord => ord,
        }
    }
}

impl PartialOrd for LogScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(*other))
    }
}

impl Mul for LogScalar {
    type Output = LogScalar;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        LogScalar {
            sign: self.sign * rhs.sign,
            log10: self.log10 + rhs.log10,
        }
    }
}

/// Panics when dividing by zero; use [`LogScalar::checked_div`] otherwise.
impl Div for LogScalar {
    type Output = LogScalar;

    fn div(self, rhs: Self) -> Self {
        self.checked_div(rhs).expect("LogScalar division by zero")
    }
}

impl Neg for LogScalar {
    type Output = LogScalar;

    fn neg(self) -> Self {
        LogScalar {
            sign: -self.sign,
            log10: self.log10,
        }
    }
}

impl Add for LogScalar {
    type Output = LogScalar;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        // Shift so the larger magnitude leads; gap <= 0.
        let (big, small) = if self.log10 >= rhs.log10 {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let gap = small.log10 - big.log10;
        if big.sign == small.sign {
            let ratio = (gap * LN_10).exp();
            return LogScalar {
                sign: big.sign,
                log10: big.log10 + ratio.ln_1p() / LN_10,
            };
        }
        if gap == 0.0 {
            return Self::ZERO;
        }
        // 1 - 10^gap, evaluated without cancellation.
        let rest = -(gap * LN_10).exp_m1();
        let log10 = big.log10 + rest.log10();
        if !log10.is_finite() || log10 < small.log10 - CANCELLATION_DECADES {
            return Self::ZERO;
        }
        LogScalar {
            sign: big.sign,
            log10,
        }
    }
}

impl Sub for LogScalar {
    type Output = LogScalar;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl std::iter::Sum for LogScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

impl std::iter::Product for LogScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |acc, x| acc * x)
    }
}

impl fmt::Display for LogScalar {
    /// `m.mm ×10^k` with three significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut k = self.log10.floor();
        let mut mantissa = 10f64.powf(self.log10 - k);
        if (mantissa * 100.0).round() >= 1000.0 {
            mantissa /= 10.0;
            k += 1.0;
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        write!(f, "{sign}{mantissa:.2} ×10^{k}")
    }
}

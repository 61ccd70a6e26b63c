//! Arithmetic modes.
//!
//! Every algorithm in the crate is generic over a [`Scalar`]. Two modes are
//! provided: `f64` for performance runs and [`BigRational`] for exact
//! certification. The mode is chosen when a system is constructed and
//! propagates through every derived quantity. Default tolerances are part of
//! the mode: strictly positive thresholds for floating point, all zero for
//! exact rationals (where comparisons are exact).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::linalg;

/// Thresholds used by feasibility, rank, and stopping decisions.
///
/// `active`: slack magnitude below which a constraint counts as tight.
/// `zero`: rank / null-space threshold for the active-matrix factorizations.
/// `opt`: stopping threshold for the steepest-descent rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances<S> {
    pub active: S,
    pub zero: S,
    pub opt: S,
}

impl<S: Scalar> Default for Tolerances<S> {
    fn default() -> Self {
        S::default_tolerances()
    }
}

/// Scalar field the solver runs over.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Signed + Send + Sync + 'static {
    /// True when arithmetic is exact and tolerances default to zero.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Nonnegative square root. Exact mode returns the exact root for perfect
    /// rational squares and a deterministic 128-bit dyadic approximation
    /// otherwise; the approximation cancels wherever the crate relies on
    /// exactness (ratio-test points, objective values).
    fn sqrt(&self) -> Self;

    fn to_f64(&self) -> f64;

    /// Parses `p/q`, integer, or plain decimal literals.
    fn parse_literal(text: &str) -> Result<Self, Error>;

    /// Canonical text form used in CSV and report output.
    fn literal(&self) -> String {
        format!("{self}")
    }

    /// Canonical JSON value: a number for floats, a quoted `p/q` string for
    /// exact rationals.
    fn json_value(&self) -> String;

    fn default_tolerances() -> Tolerances<Self>;

    /// Basis of the null space of the given rows (each of length `ncols`).
    /// Floating mode uses Householder QR with column pivoting and threshold
    /// `tol`; exact mode uses fraction-exact Gaussian elimination.
    fn null_space(rows: &[Vec<Self>], ncols: usize, tol: &Self) -> Vec<Vec<Self>>;

    /// Tolerance for merging coincident vertices in the oracle.
    fn vertex_merge_tol() -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_literal(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let n: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
            let d: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
            if d == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(n / d)
        } else {
            text.parse()
                .map_err(|_| Error::Parse(format!("bad numeric literal {text:?}")))
        }
    }

    fn json_value(&self) -> String {
        format!("{self}")
    }

    fn default_tolerances() -> Tolerances<Self> {
        Tolerances {
            active: 1e-9,
            zero: 1e-10,
            opt: 1e-9,
        }
    }

    fn null_space(rows: &[Vec<Self>], ncols: usize, tol: &Self) -> Vec<Vec<Self>> {
        linalg::qrcp_null_space(rows, ncols, *tol)
    }

    fn vertex_merge_tol() -> Self {
        1e-8
    }
}

/// Bits of precision for the dyadic approximation of irrational square roots.
const SQRT_PRECISION_BITS: u32 = 128;

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn sqrt(&self) -> Self {
        assert!(
            !self.is_negative(),
            "square root of a negative rational: {self}"
        );
        if self.is_zero() {
            return BigRational::zero();
        }
        let numer = self.numer();
        let denom = self.denom();
        let sn = numer.sqrt();
        let sd = denom.sqrt();
        if &(&sn * &sn) == numer && &(&sd * &sd) == denom {
            return BigRational::new(sn, sd);
        }
        // sqrt(p/q) = sqrt(p*q)/q, approximated as isqrt(p*q*4^B) / (q*2^B).
        let scaled = (numer * denom) << (2 * SQRT_PRECISION_BITS);
        let root = scaled.sqrt();
        BigRational::new(root, denom << SQRT_PRECISION_BITS)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_literal(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let n = BigInt::from_str(num.trim())
                .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
            let d = BigInt::from_str(den.trim())
                .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            return Ok(BigRational::new(n, d));
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            let digits = frac_part.trim();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad decimal literal {text:?}")));
            }
            let negative = int_part.trim_start().starts_with('-');
            let whole = if int_part.trim() == "-" || int_part.trim().is_empty() {
                BigInt::zero()
            } else {
                BigInt::from_str(int_part.trim())
                    .map_err(|_| Error::Parse(format!("bad decimal literal {text:?}")))?
            };
            let frac = BigInt::from_str(digits)
                .map_err(|_| Error::Parse(format!("bad decimal literal {text:?}")))?;
            let scale = BigInt::from(10u32).pow(digits.len() as u32);
            let magnitude = whole.abs() * &scale + frac;
            let signed = if negative { -magnitude } else { magnitude };
            return Ok(BigRational::new(signed, scale));
        }
        let n = BigInt::from_str(text)
            .map_err(|_| Error::Parse(format!("bad integer literal {text:?}")))?;
        Ok(BigRational::from_integer(n))
    }

    fn json_value(&self) -> String {
        format!("\"{self}\"")
    }

    fn default_tolerances() -> Tolerances<Self> {
        Tolerances {
            active: BigRational::zero(),
            zero: BigRational::zero(),
            opt: BigRational::zero(),
        }
    }

    fn null_space(rows: &[Vec<Self>], ncols: usize, tol: &Self) -> Vec<Vec<Self>> {
        linalg::gauss_null_space(rows, ncols, tol)
    }

    fn vertex_merge_tol() -> Self {
        BigRational::zero()
    }
}

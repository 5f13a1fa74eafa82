//! Exact arithmetic in the quadratic field `Q[√2]`.
//!
//! Every threshold the discharging argument compares against (`q`,
//! `3q - 2Δ`, `Δ - q - c`, ...) lives in this field, so comparisons are
//! decided exactly and floating point only appears when printing.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// `rational + sqrt2 * √2` with both coefficients exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactReal {
    rational: BigRational,
    sqrt2: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl ExactReal {
    pub fn new(rational: BigRational, sqrt2: BigRational) -> Self {
        ExactReal { rational, sqrt2 }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        ExactReal::new(ratio(n, 1), BigRational::zero())
    }

    /// `num / den`; panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactReal::new(ratio(num, den), BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactReal::new(r, BigRational::zero())
    }

    pub fn sqrt2() -> Self {
        ExactReal::new(BigRational::zero(), BigRational::one())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.sqrt2
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt2.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt2.is_zero()
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&BigRational::zero());
        let b = self.sqrt2.cmp(&BigRational::zero());
        use Ordering::*;
        match (a, b) {
            (Equal, s) | (s, Equal) => s,
            (Greater, Greater) => Greater,
            (Less, Less) => Less,
            (Greater, Less) => {
                // a > -b√2 > 0  iff  a^2 > 2 b^2
                let lhs = &self.rational * &self.rational;
                let rhs = &self.sqrt2 * &self.sqrt2 * ratio(2, 1);
                lhs.cmp(&rhs)
            }
            (Less, Greater) => {
                let lhs = &self.sqrt2 * &self.sqrt2 * ratio(2, 1);
                let rhs = &self.rational * &self.rational;
                lhs.cmp(&rhs)
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `a - b√2`.
    pub fn conjugate(&self) -> Self {
        ExactReal::new(self.rational.clone(), -&self.sqrt2)
    }

    /// Field norm `a^2 - 2 b^2`; zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational - &self.sqrt2 * &self.sqrt2 * ratio(2, 1)
    }

    pub fn checked_div(&self, rhs: &ExactReal) -> Option<ExactReal> {
        if rhs.is_zero() {
            return None;
        }
        let norm = rhs.norm();
        let num = self * &rhs.conjugate();
        Some(ExactReal::new(num.rational / &norm, num.sqrt2 / norm))
    }

    /// Greatest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rational.floor().to_integer();
        }
        // s = b√2 lies in [lo, lo + 2) with lo an integer, so floor(self) is
        // one of three candidates; pick the largest c with c <= self.
        let b2 = &self.sqrt2 * &self.sqrt2 * ratio(2, 1);
        let root = b2.floor().to_integer().sqrt();
        let lo = if self.sqrt2.is_positive() {
            root
        } else {
            -(root + BigInt::one())
        };
        let base = (&self.rational + BigRational::from_integer(lo)).floor().to_integer();
        for bump in (0..=2).rev() {
            let c = &base + BigInt::from(bump);
            if ExactReal::from_rational(BigRational::from_integer(c.clone())) <= *self {
                return c;
            }
        }
        unreachable!("floor candidate window is exhaustive")
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.sqrt2.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Decimal expansion with `digits` fractional digits, rounded half to even.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = self * &ExactReal::from_rational(BigRational::from_integer(scale));
        let f = scaled.floor();
        let frac = &scaled - &ExactReal::from_rational(BigRational::from_integer(f.clone()));
        let half = ExactReal::from_ratio(1, 2);
        let rounded = match frac.cmp(&half) {
            Ordering::Less => f,
            Ordering::Greater => f + 1,
            Ordering::Equal => {
                if (&f % BigInt::from(2)).is_zero() {
                    f
                } else {
                    f + 1
                }
            }
        };
        let negative = rounded.is_negative();
        let mut body = rounded.abs().to_string();
        if digits > 0 {
            let d = digits as usize;
            if body.len() <= d {
                body = format!("{}{}", "0".repeat(d + 1 - body.len()), body);
            }
            body.insert(body.len() - d, '.');
        }
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        ExactReal::from_integer(n)
    }
}

impl From<usize> for ExactReal {
    fn from(n: usize) -> Self {
        ExactReal::from_rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialEq<i64> for ExactReal {
    fn eq(&self, other: &i64) -> bool {
        *self == ExactReal::from_integer(*other)
    }
}

impl PartialOrd<i64> for ExactReal {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&ExactReal::from_integer(*other)))
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.sqrt2.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "({})√2", self.sqrt2),
            (false, false) => write!(f, "{} + ({})√2", self.rational, self.sqrt2),
        }
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as an exact rational (expected `p`, `p/q` or a decimal)")]
pub struct ParseExactError(String);

impl FromStr for ExactReal {
    type Err = ParseExactError;

    /// Accepts integers, `p/q` fractions and finite decimals such as `46.75`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseExactError(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(ExactReal::from_rational(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let whole: BigInt = if int.is_empty() || int == "-" {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let digits: BigInt = frac.parse().map_err(|_| bad())?;
            let mag = whole.abs() * &scale + digits;
            let num = if negative { -mag } else { mag };
            return Ok(ExactReal::from_rational(BigRational::new(num, scale)));
        }
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(ExactReal::from_rational(BigRational::from_integer(n)))
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal::new(-&self.rational, -&self.sqrt2)
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

impl Add<&ExactReal> for &ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &ExactReal) -> ExactReal {
        ExactReal::new(&self.rational + &rhs.rational, &self.sqrt2 + &rhs.sqrt2)
    }
}

impl Sub<&ExactReal> for &ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &ExactReal) -> ExactReal {
        ExactReal::new(&self.rational - &rhs.rational, &self.sqrt2 - &rhs.sqrt2)
    }
}

impl Mul<&ExactReal> for &ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &ExactReal) -> ExactReal {
        let two = ratio(2, 1);
        ExactReal::new(
            &self.rational * &rhs.rational + &self.sqrt2 * &rhs.sqrt2 * two,
            &self.rational * &rhs.sqrt2 + &self.sqrt2 * &rhs.rational,
        )
    }
}

impl Div<&ExactReal> for &ExactReal {
    type Output = ExactReal;
    fn div(self, rhs: &ExactReal) -> ExactReal {
        self.checked_div(rhs).expect("division by zero in Q[√2]")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: ExactReal) -> ExactReal { (&self).$m(&rhs) }
        }
        impl $tr<&ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: &ExactReal) -> ExactReal { (&self).$m(rhs) }
        }
        impl $tr<ExactReal> for &ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: ExactReal) -> ExactReal { self.$m(&rhs) }
        }
        impl $tr<i64> for ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: i64) -> ExactReal { (&self).$m(&ExactReal::from_integer(rhs)) }
        }
        impl $tr<i64> for &ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: i64) -> ExactReal { self.$m(&ExactReal::from_integer(rhs)) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactReal {
        ExactReal::from_ratio(n, d)
    }

    #[test]
    fn ordering_against_irrationals() {
        let s = ExactReal::sqrt2();
        assert!(s > r(141, 100));
        assert!(s < r(142, 100));
        // 3 - 2√2 is tiny but positive
        let tiny = ExactReal::from_integer(3) - &s * 2;
        assert!(tiny.is_positive());
        assert!(tiny < r(18, 100));
        // (1 + √2)(√2 - 1) = 1
        let one = (&s + 1) * (&s - 1);
        assert_eq!(one, ExactReal::one());
    }

    #[test]
    fn division_and_norm() {
        let s = ExactReal::sqrt2();
        let d = &s * 2 + 1;
        let x = (&s * 130 - 2) / &d;
        assert_eq!(&x * &d, &s * 130 - 2);
        assert!(ExactReal::one().checked_div(&ExactReal::zero()).is_none());
    }

    #[test]
    fn floors_and_decimals() {
        let s = ExactReal::sqrt2();
        assert_eq!(s.floor(), BigInt::from(1));
        assert_eq!((-&s).floor(), BigInt::from(-2));
        assert_eq!(r(-3, 2).floor(), BigInt::from(-2));
        assert_eq!(r(7, 2).ceil(), BigInt::from(4));
        assert_eq!(s.to_decimal(10), "1.4142135624");
        assert_eq!((-&s).to_decimal(3), "-1.414");
        assert_eq!(r(1, 8).to_decimal(2), "0.12");
        assert_eq!(r(3, 8).to_decimal(2), "0.38");
        assert_eq!(r(5, 1).to_decimal(0), "5");
        assert_eq!(r(1, 200).to_decimal(1), "0.0");
        // 50-digit expansion of √2
        assert_eq!(
            s.to_decimal(50),
            "1.41421356237309504880168872420969807856967187537695"
        );
    }

    #[test]
    fn parses_inputs() {
        assert_eq!("7".parse::<ExactReal>().unwrap(), ExactReal::from_integer(7));
        assert_eq!("46.75".parse::<ExactReal>().unwrap(), r(187, 4));
        assert_eq!("-0.5".parse::<ExactReal>().unwrap(), r(-1, 2));
        assert_eq!("3/4".parse::<ExactReal>().unwrap(), r(3, 4));
        assert!("1/0".parse::<ExactReal>().is_err());
        assert!("x".parse::<ExactReal>().is_err());
    }
}

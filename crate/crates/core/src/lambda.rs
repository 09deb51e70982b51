//! Exact arithmetic for the regularized objective.
//!
//! The regularization parameter is held as a reduced fraction `num / den`.
//! With `N` samples, every objective value and bound has the form
//! `mistakes / N + lambda * K`, which equals an integer number of units of
//! `1 / (N * den)`:
//!
//! ```text
//! mistakes * den + K * num * N
//! ```
//!
//! All pruning comparisons happen on these integers, so incremental and
//! from-scratch evaluation agree exactly and ties are real ties.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Non-negative rational regularization parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lambda {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Lambda {
    pub const ZERO: Lambda = Lambda { num: 0, den: 1 };

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidLambda(format!("{num}/{den}")));
        }
        let g = gcd(num, den).max(1);
        Ok(Lambda {
            num: num / g,
            den: den / g,
        })
    }

    /// Converts through the shortest decimal representation of `x`, so
    /// `Lambda::from_f64(0.005)` is exactly `1/200`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidLambda(format!("{x}")));
        }
        format!("{x}").parse()
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `count / n < lambda`, exactly.
    pub fn exceeds_fraction(&self, count: usize, n: usize) -> bool {
        (count as u128) * (self.den as u128) < (self.num as u128) * (n as u128)
    }

    /// `count / n > 1 - lambda`, exactly.
    pub fn below_complement(&self, count: usize, n: usize) -> bool {
        if self.num >= self.den {
            return true;
        }
        (count as u128) * (self.den as u128) > ((self.den - self.num) as u128) * (n as u128)
    }

    /// `floor(1 / (2 lambda))`, or `None` for `lambda = 0`.
    pub fn half_inverse_floor(&self) -> Option<u64> {
        if self.is_zero() {
            None
        } else {
            Some(self.den / (2 * self.num))
        }
    }
}

impl Default for Lambda {
    fn default() -> Self {
        Lambda::ZERO
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Print as a terminating decimal when possible.
        let mut den = self.den;
        let mut twos = 0u32;
        let mut fives = 0u32;
        while den.is_multiple_of(2) {
            den /= 2;
            twos += 1;
        }
        while den.is_multiple_of(5) {
            den /= 5;
            fives += 1;
        }
        if den != 1 {
            return write!(f, "{}/{}", self.num, self.den);
        }
        let digits = twos.max(fives);
        let scale = 10u128.pow(digits);
        let scaled = self.num as u128 * scale / self.den as u128;
        let int = scaled / scale;
        let frac = scaled % scale;
        if digits == 0 {
            write!(f, "{int}")
        } else {
            let frac = format!("{:0width$}", frac, width = digits as usize);
            write!(f, "{int}.{}", frac.trim_end_matches('0'))
        }
    }
}

impl FromStr for Lambda {
    type Err = Error;

    /// Accepts decimals (`0.005`), scientific notation (`5e-3`) and
    /// fractions (`1/200`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidLambda(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return Lambda::from_ratio(n, d).map_err(|_| bad());
        }
        let t = t.strip_prefix('+').unwrap_or(t);
        let (mantissa, exp) = match t.find(['e', 'E']) {
            Some(i) => {
                let e: i32 = t[i + 1..].parse().map_err(|_| bad())?;
                (&t[..i], e)
            }
            None => (t, 0),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: String = int.chars().chain(frac.chars()).collect();
        let digits = digits.trim_start_matches('0');
        let mut num: u64 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let mut pow10 = frac.len() as i32 - exp;
        let mut den: u64 = 1;
        while pow10 > 0 {
            den = den.checked_mul(10).ok_or_else(bad)?;
            pow10 -= 1;
        }
        while pow10 < 0 {
            num = num.checked_mul(10).ok_or_else(bad)?;
            pow10 += 1;
        }
        Lambda::from_ratio(num, den)
    }
}

/// A regularized risk in units of `1 / (N * den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScaledRisk(pub u64);

impl core::ops::Add for ScaledRisk {
    type Output = ScaledRisk;
    fn add(self, rhs: ScaledRisk) -> ScaledRisk {
        ScaledRisk(self.0 + rhs.0)
    }
}

impl core::ops::Sub for ScaledRisk {
    type Output = ScaledRisk;
    fn sub(self, rhs: ScaledRisk) -> ScaledRisk {
        ScaledRisk(self.0 - rhs.0)
    }
}

/// Converts mistake counts and prefix lengths into [`ScaledRisk`] units for
/// one problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RiskScale {
    n: u64,
    lambda: Lambda,
}

impl RiskScale {
    pub fn new(n_samples: usize, lambda: Lambda) -> Result<Self> {
        let n = n_samples as u64;
        // Worst case: every sample misclassified by a prefix of u16::MAX rules.
        let worst = n
            .checked_mul(lambda.den)
            .and_then(|a| {
                n.checked_mul(lambda.num)
                    .and_then(|p| p.checked_mul(u16::MAX as u64 + 1))
                    .and_then(|b| a.checked_add(b))
            })
            .and_then(|w| w.checked_mul(4));
        if worst.is_none() || n == 0 {
            return Err(Error::Overflow {
                n: n_samples,
                lambda: lambda.to_string(),
            });
        }
        Ok(RiskScale { n, lambda })
    }

    pub fn lambda(&self) -> Lambda {
        self.lambda
    }

    pub fn n_samples(&self) -> usize {
        self.n as usize
    }

    /// `count / N`.
    #[inline]
    pub fn count(&self, count: usize) -> ScaledRisk {
        ScaledRisk(count as u64 * self.lambda.den)
    }

    /// `lambda * K`.
    #[inline]
    pub fn penalty(&self, length: usize) -> ScaledRisk {
        ScaledRisk(length as u64 * self.lambda.num * self.n)
    }

    /// One rule's worth of regularization, `lambda`.
    #[inline]
    pub fn lambda_units(&self) -> u64 {
        self.lambda.num * self.n
    }

    /// `mistakes / N + lambda * K`.
    #[inline]
    pub fn risk(&self, mistakes: usize, length: usize) -> ScaledRisk {
        ScaledRisk(self.count(mistakes).0 + self.penalty(length).0)
    }

    pub fn to_f64(&self, r: ScaledRisk) -> f64 {
        r.0 as f64 / (self.n as f64 * self.lambda.den as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_forms() {
        assert_eq!("0.005".parse::<Lambda>().unwrap(), Lambda::from_ratio(1, 200).unwrap());
        assert_eq!("5e-3".parse::<Lambda>().unwrap(), Lambda::from_ratio(1, 200).unwrap());
        assert_eq!("1/200".parse::<Lambda>().unwrap(), Lambda::from_ratio(1, 200).unwrap());
        assert_eq!("0".parse::<Lambda>().unwrap(), Lambda::ZERO);
        assert_eq!(".25".parse::<Lambda>().unwrap(), Lambda::from_ratio(1, 4).unwrap());
        assert_eq!("2".parse::<Lambda>().unwrap(), Lambda::from_ratio(2, 1).unwrap());
        assert!("-0.01".parse::<Lambda>().is_err());
        assert!("abc".parse::<Lambda>().is_err());
        assert!(".".parse::<Lambda>().is_err());
    }

    #[test]
    fn from_f64_is_exact_for_decimal_literals() {
        assert_eq!(Lambda::from_f64(0.0025).unwrap(), Lambda::from_ratio(1, 400).unwrap());
        assert_eq!(Lambda::from_f64(0.01).unwrap(), Lambda::from_ratio(1, 100).unwrap());
        assert!(Lambda::from_f64(-1.0).is_err());
        assert!(Lambda::from_f64(f64::NAN).is_err());
    }

    #[test]
    fn displays_as_decimal() {
        assert_eq!(Lambda::from_ratio(1, 200).unwrap().to_string(), "0.005");
        assert_eq!(Lambda::from_ratio(1, 3).unwrap().to_string(), "1/3");
        assert_eq!(Lambda::ZERO.to_string(), "0");
        assert_eq!(Lambda::from_ratio(5, 2).unwrap().to_string(), "2.5");
    }

    #[test]
    fn support_thresholds_are_exact() {
        let l = Lambda::from_ratio(1, 200).unwrap();
        // 1/200 of 1000 samples is exactly 5.
        assert!(l.exceeds_fraction(4, 1000));
        assert!(!l.exceeds_fraction(5, 1000));
        assert!(!l.below_complement(995, 1000));
        assert!(l.below_complement(996, 1000));
        assert_eq!(l.half_inverse_floor(), Some(100));
        assert_eq!(Lambda::from_ratio(1, 3).unwrap().half_inverse_floor(), Some(1));
    }

    #[test]
    fn risk_units() {
        let s = RiskScale::new(100, "0.01".parse().unwrap()).unwrap();
        // 3 mistakes, 2 rules: 0.03 + 0.02.
        assert_eq!(s.risk(3, 2), s.risk(5, 0));
        assert!((s.to_f64(s.risk(3, 2)) - 0.05).abs() < 1e-12);
        assert_eq!(s.lambda_units(), s.risk(0, 1).0);
    }
}

//! Exact parsing of terminating decimal literals.
//!
//! Accepts `[+-]digits[.digits][e[+-]digits]` (or `.digits`). Nothing is
//! routed through binary floating point, so `0.1` is exactly one tenth.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest decimal exponent magnitude accepted by the parser.
pub const MAX_EXPONENT: i64 = 4096;

/// `mantissa × 10^exponent`, with trailing zeros of the mantissa folded into
/// the exponent. Zero is always `0 × 10^0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: BigInt,
    exponent: i64,
}

impl Decimal {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Decimal { mantissa, exponent };
        d.canonicalize();
        d
    }

    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            Some(_) => (false, s),
            None => return Err(Error::parse(input, "empty string")),
        };
        let (number, exp_part) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let (int_digits, frac_digits) = match number.find('.') {
            Some(i) => (&number[..i], &number[i + 1..]),
            None => (number, ""),
        };
        if int_digits.is_empty() && frac_digits.is_empty() {
            return Err(Error::parse(input, "no digits"));
        }
        if !int_digits
            .bytes()
            .chain(frac_digits.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(Error::parse(input, "unexpected character"));
        }

        let mut exponent: i64 = match exp_part {
            None => 0,
            Some(e) => {
                let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::parse(input, "malformed exponent"));
                }
                let magnitude: i64 = digits
                    .parse()
                    .ok()
                    .filter(|m| *m <= MAX_EXPONENT)
                    .ok_or_else(|| Error::parse(input, "exponent out of range"))?;
                if e.starts_with('-') {
                    -magnitude
                } else {
                    magnitude
                }
            }
        };
        exponent -= frac_digits.len() as i64;
        if exponent.abs() > 2 * MAX_EXPONENT {
            return Err(Error::parse(input, "exponent out of range"));
        }

        let digits: String = [int_digits, frac_digits].concat();
        let magnitude =
            BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| Error::parse(input, "no digits"))?;
        let mantissa = if negative { -magnitude } else { magnitude };
        Ok(Decimal::new(mantissa, exponent))
    }

    fn canonicalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let ten = BigInt::from(10u8);
        loop {
            let (q, r) = self.mantissa.div_rem(&ten);
            if !r.is_zero() {
                break;
            }
            self.mantissa = q;
            self.exponent += 1;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    /// Power of ten carried by the value once the mantissa has no trailing zeros.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Number of decimal digits in the mantissa.
    pub fn digit_count(&self) -> u64 {
        if self.mantissa.is_zero() {
            1
        } else {
            self.mantissa.magnitude().to_str_radix(10).len() as u64
        }
    }

    pub fn to_rational(&self) -> BigRational {
        let m = BigRational::from_integer(self.mantissa.clone());
        m * pow10(self.exponent)
    }
}

/// `10^p` as an exact rational; `p` may be negative.
pub fn pow10(p: i64) -> BigRational {
    let base = num_traits::pow(BigInt::from(10u8), p.unsigned_abs() as usize);
    if p >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

impl std::str::FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Decimal::parse(s)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa.sign() == Sign::Minus {
            f.write_str("-")?;
        }
        let digits = self.mantissa.magnitude().to_str_radix(10);
        if self.exponent >= 0 {
            f.write_str(&digits)?;
            for _ in 0..self.exponent {
                f.write_str("0")?;
            }
            return Ok(());
        }
        let frac = self.exponent.unsigned_abs() as usize;
        if digits.len() > frac {
            let (int, rest) = digits.split_at(digits.len() - frac);
            write!(f, "{int}.{rest}")
        } else {
            write!(f, "0.{}{}", "0".repeat(frac - digits.len()), digits)
        }
    }
}

/// Renders a rational as a terminating decimal when it has one.
pub fn rational_to_decimal(r: &BigRational) -> Option<Decimal> {
    let mut denom = r.denom().clone();
    let mut twos = 0i64;
    let mut fives = 0i64;
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    while (&denom % &two).is_zero() {
        denom /= &two;
        twos += 1;
    }
    while (&denom % &five).is_zero() {
        denom /= &five;
        fives += 1;
    }
    if !denom.is_one() {
        return None;
    }
    let p = twos.max(fives);
    let scaled = r * pow10(p);
    debug_assert!(scaled.is_integer());
    Some(Decimal::new(scaled.to_integer(), -p))
}

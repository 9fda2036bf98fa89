//! Arithmetic abstraction letting the birational formulas run over exact
//! rationals (geometry suites) and over configurable-precision reals
//! (orbits fed from the orthogonal-polynomial pipeline) from one
//! transcription of the formulas.

use rug::{ops::Pow, Float, Rational};

pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
    fn int_like(&self, v: i64) -> Self {
        Rational::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        Rational::from(self / rhs)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
}

impl Scalar for Float {
    fn zero_like(&self) -> Self {
        Float::with_val(self.prec(), 0)
    }
    fn one_like(&self) -> Self {
        Float::with_val(self.prec(), 1)
    }
    fn int_like(&self, v: i64) -> Self {
        Float::with_val(self.prec(), v)
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec().max(rhs.prec()), self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec().max(rhs.prec()), self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec().max(rhs.prec()), self * rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec().max(rhs.prec()), self / rhs)
    }
    fn neg(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }
}

/// Parse a decimal string like "-1.5" or "3/2" into an exact rational.
pub fn parse_decimal_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: Rational = num
            .trim()
            .parse()
            .map_err(|_| format!("invalid rational numerator in {s:?}"))?;
        let d: Rational = den
            .trim()
            .parse()
            .map_err(|_| format!("invalid rational denominator in {s:?}"))?;
        if d == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(n / d);
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" { "0" } else { int_part };
        let i: Rational = int_part
            .parse()
            .map_err(|_| format!("invalid decimal {s:?}"))?;
        if frac_part.is_empty() {
            return Ok(i);
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid decimal {s:?}"));
        }
        let frac_num: Rational = frac_part
            .parse()
            .map_err(|_| format!("invalid decimal {s:?}"))?;
        let scale = Rational::from(10).pow(frac_part.len() as u32);
        let frac = frac_num / scale;
        return Ok(if neg { i - frac } else { i + frac });
    }
    s.parse().map_err(|_| format!("invalid number {s:?}"))
}

/// Round an exact rational to a float at the given bit precision.
pub fn rational_to_float(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q)
}

/// Decimal-digit to bit-precision conversion with guard bits.
pub fn digits_to_prec(digits: u32) -> u32 {
    // log2(10) ~ 3.3219...; 32 guard bits
    ((digits as f64) * 3.3219280948873626).ceil() as u32 + 32
}

/// Format a float in scientific notation with `sig` significant digits.
/// Deterministic for fixed input and precision.
pub fn format_float(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_owned()
        } else if x.is_sign_negative() {
            "-inf".to_owned()
        } else {
            "inf".to_owned()
        };
    }
    let (sign, digits, exp) = {
        let (s, d, e) = x.to_sign_string_exp(10, Some(sig));
        (s, d, e.unwrap_or(0))
    };
    let mantissa = if digits.len() > 1 {
        format!("{}.{}", &digits[..1], &digits[1..])
    } else {
        digits
    };
    format!("{}{}e{}", if sign { "-" } else { "" }, mantissa, exp - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal_rational("1.5").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_decimal_rational("-0.25").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_decimal_rational("3/2").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_decimal_rational("7").unwrap(), Rational::from(7));
        assert!(parse_decimal_rational("1.5.2").is_err());
        assert!(parse_decimal_rational("1/0").is_err());
    }

    #[test]
    fn float_formatting() {
        let x = Float::with_val(128, 1) / Float::with_val(128, 3);
        assert_eq!(format_float(&x, 4), "3.333e-1");
        let y = Float::with_val(64, -1500);
        assert_eq!(format_float(&y, 3), "-1.50e3");
        assert_eq!(format_float(&Float::with_val(64, 0), 3), "0");
    }

    #[test]
    fn digits_prec_monotone() {
        assert!(digits_to_prec(80) > digits_to_prec(60));
        assert!(digits_to_prec(60) >= 199 + 32);
    }
}

//! Exact rational arithmetic helpers.
//!
//! Scores and certificates are computed over arbitrary-precision rationals so
//! that strict-inequality verdicts can never be flipped by rounding. The
//! number type itself is [`num_rational::BigRational`], which keeps values in
//! canonical reduced form with a positive denominator.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used throughout the crate.
pub type Rational = num_rational::BigRational;

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `v` as a rational.
pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 0..k {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// True when the value is exactly zero.
pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}

/// Lossy conversion for reporting; exact comparisons must stay rational.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, an integer, or a plain decimal (`0.25`) into an exact
/// rational. Returns `None` on malformed input.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.strip_prefix(['-', '+']).unwrap_or(int_part);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) || int_digits.is_empty() {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mantissa: BigInt = format!("{int_digits}{frac_part}").parse().ok()?;
        let value = Rational::new(mantissa, scale);
        return Some(if negative { -value } else { value });
    }
    text.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Renders a rational as a plain decimal with `sig_digits` significant digits
/// (round half up). Trailing fractional zeros are trimmed.
pub fn format_decimal(value: &Rational, sig_digits: usize) -> String {
    let sig = sig_digits.max(1);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let abs = value.abs();

    // Decimal exponent e with 10^e <= abs < 10^{e+1}.
    let ten = Rational::from_integer(BigInt::from(10));
    let one = Rational::one();
    let mut e: i64 = 0;
    let mut scaled = abs.clone();
    if scaled < one {
        while scaled < one {
            scaled *= ten.clone();
            e -= 1;
        }
    } else {
        while scaled >= ten {
            scaled /= ten.clone();
            e += 1;
        }
    }

    // Round to `sig` digits: digits = round(abs * 10^{sig-1-e}).
    let shift = sig as i64 - 1 - e;
    let shifted = if shift >= 0 {
        abs * Rational::from_integer(BigInt::from(10u32).pow(shift as u32))
    } else {
        abs / Rational::from_integer(BigInt::from(10u32).pow((-shift) as u32))
    };
    let mut digits = (shifted + rat(1, 2)).floor().to_integer();
    let limit = BigInt::from(10u32).pow(sig as u32);
    if digits >= limit {
        digits /= BigInt::from(10);
        e += 1;
    }
    let digit_str = digits.to_string();

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if e >= sig as i64 - 1 {
        // Pure integer, possibly with trailing zeros.
        out.push_str(&digit_str);
        for _ in 0..(e - sig as i64 + 1) {
            out.push('0');
        }
    } else if e >= 0 {
        let point = (e + 1) as usize;
        out.push_str(&digit_str[..point]);
        let frac = digit_str[point..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(digit_str.trim_end_matches('0'));
    }
    out
}

/// Renders either an exact `p/q` form or a decimal, depending on `exact`.
pub fn render(value: &Rational, exact: bool, sig_digits: usize) -> String {
    if exact {
        if value.denom().is_one() {
            value.numer().to_string()
        } else {
            format!("{}/{}", value.numer(), value.denom())
        }
    } else {
        format_decimal(value, sig_digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(4, 7), BigUint::zero());
        assert_eq!(binomial(1000, 2), BigUint::from(499500u32));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&rat(1, 6), 6), "0.166667");
        assert_eq!(format_decimal(&rat(1, 2), 6), "0.5");
        assert_eq!(format_decimal(&rat(3, 1), 6), "3");
        assert_eq!(format_decimal(&rat(-1, 3), 3), "-0.333");
        assert_eq!(format_decimal(&rat(1, 100000), 3), "0.00001");
        assert_eq!(format_decimal(&rat(999999, 1000), 3), "1000");
        assert_eq!(format_decimal(&Rational::zero(), 6), "0");
        assert_eq!(format_decimal(&rat(1234567, 1), 4), "1235000");
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rational("2/6"), Some(rat(1, 3)));
        assert_eq!(parse_rational("-7"), Some(rat_int(-7)));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(render(&rat(1, 3), true, 6), "1/3");
        assert_eq!(render(&rat(4, 2), true, 6), "2");
    }
}

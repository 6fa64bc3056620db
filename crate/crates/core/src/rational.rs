//! Exact decimal parameters.
//!
//! Thresholds such as νn are compared exactly, so user-facing parameters are
//! parsed from their decimal spelling into `Ratio<i64>` rather than kept as
//! binary floats (`0.05` is exactly `1/20` here, not `0.05000000000000000277`).

use alloc::format;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

pub type Frac = Ratio<i64>;

/// Parses `[-]digits[.digits]` (optionally with an exponent, e.g. `5e-3`).
pub fn parse_decimal(s: &str) -> Option<Frac> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let mut num: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        num = num.checked_mul(10)?.checked_add(i64::from(b - b'0'))?;
    }
    let scale = exp - i32::try_from(frac_part.len()).ok()?;
    let pow = 10i64.checked_pow(scale.unsigned_abs())?;
    let value = if scale >= 0 {
        Frac::from_integer(num.checked_mul(pow)?)
    } else {
        Frac::new(num, pow)
    };
    Some(if neg { -value } else { value })
}

/// Exact rational equal to the shortest decimal that round-trips `x`.
pub fn frac_from_f64(x: f64) -> Option<Frac> {
    if !x.is_finite() {
        return None;
    }
    parse_decimal(&format!("{x:e}"))
}

pub fn to_f64(x: Frac) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer `k` with `k ≥ x`.
pub fn ceil_nonneg(x: Frac) -> usize {
    if x <= Frac::zero() {
        0
    } else {
        x.ceil().to_integer() as usize
    }
}

/// Largest integer `k` with `k ≤ x`, clamped at zero.
pub fn floor_nonneg(x: Frac) -> usize {
    if x <= Frac::zero() {
        0
    } else {
        x.floor().to_integer() as usize
    }
}

/// Parses `p/q` or a decimal.
pub fn parse_frac(s: &str) -> Option<Frac> {
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (p.trim().parse::<i64>().ok()?, q.trim().parse::<i64>().ok()?);
            (q != 0).then(|| Frac::new(p, q))
        }
        None => parse_decimal(s),
    }
}

/// Serializes a [`Frac`] as the string `"p/q"` (or `"p"` for integers).
#[cfg(feature = "serde")]
pub mod serde_frac {
    use super::{parse_frac, Frac};
    use alloc::format;
    use alloc::string::String;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Frac, s: S) -> Result<S::Ok, S::Error> {
        if x.is_integer() {
            s.serialize_str(&format!("{}", x.numer()))
        } else {
            s.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Frac, D::Error> {
        let s = String::deserialize(d)?;
        parse_frac(&s).ok_or_else(|| D::Error::custom(format!("invalid fraction {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.05"), Some(Frac::new(1, 20)));
        assert_eq!(parse_decimal("1/3"), None);
        assert_eq!(parse_decimal("5e-3"), Some(Frac::new(1, 200)));
        assert_eq!(parse_decimal("-2.5"), Some(Frac::new(-5, 2)));
        assert_eq!(parse_decimal(".5"), Some(Frac::new(1, 2)));
        assert_eq!(parse_decimal(""), None);
        assert_eq!(frac_from_f64(0.1), Some(Frac::new(1, 10)));
        assert_eq!(frac_from_f64(0.005), Some(Frac::new(1, 200)));
        assert_eq!(parse_frac("3/10"), Some(Frac::new(3, 10)));
        assert_eq!(parse_frac("1/0"), None);
    }
}

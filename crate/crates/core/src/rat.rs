//! Exact rational arithmetic helpers.
//!
//! All dimensioning math is carried out on `Ratio<i128>` so that table cells
//! and conversion identities hold exactly; rounding happens only at display
//! time.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rat = Ratio<i128>;

pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

pub fn int(n: i128) -> Rat {
    Ratio::from_integer(n)
}

/// Parse a plain decimal literal ("8", "1.4", "-0.25") into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Config(format!("invalid decimal value: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1i128, rest),
        None => (1i128, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac_part.len() > 18 {
        return Err(bad());
    }
    let int_val: i128 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
    let mut num = int_val;
    let mut den = 1i128;
    for c in frac_part.chars() {
        num = num.checked_mul(10).ok_or_else(bad)?;
        num += (c as u8 - b'0') as i128;
        den *= 10;
    }
    Ok(Ratio::new(sign * num, den))
}

/// Round to `dp` decimal places, ties away from zero (matches the tables'
/// printed precision).
pub fn round_dp(r: Rat, dp: u32) -> Rat {
    let scale = int(10i128.pow(dp));
    let scaled = r * scale;
    let floor = scaled.floor();
    let frac = scaled - floor;
    let half = rat(1, 2);
    // frac is in [0, 1); on a tie, away-from-zero keeps the floor for
    // negatives (-2.5 -> -3) and bumps for positives (2.5 -> 3).
    let rounded = if frac > half || (frac == half && !scaled.is_negative()) {
        floor + int(1)
    } else {
        floor
    };
    rounded / scale
}

/// Format with exactly `dp` decimal places.
pub fn format_dp(r: Rat, dp: u32) -> String {
    let scale = 10i128.pow(dp);
    let rounded = round_dp(r, dp) * int(scale);
    debug_assert!(rounded.is_integer());
    let v = rounded.to_integer();
    let sign = if v < 0 { "-" } else { "" };
    let v = v.abs();
    if dp == 0 {
        format!("{sign}{v}")
    } else {
        format!("{sign}{}.{:0width$}", v / scale, v % scale, width = dp as usize)
    }
}

pub fn to_f64(r: Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_zero(r: Rat) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals() {
        assert_eq!(parse_decimal("1.4").unwrap(), rat(7, 5));
        assert_eq!(parse_decimal("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("8").unwrap(), int(8));
        assert_eq!(parse_decimal("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("abc").is_err());
    }

    #[test]
    fn rounds_ties_away_from_zero() {
        assert_eq!(round_dp(rat(75, 100), 1), rat(8, 10));
        assert_eq!(round_dp(rat(-75, 100), 1), rat(-8, 10));
        assert_eq!(round_dp(rat(16, 15), 1), rat(11, 10));
        assert_eq!(format_dp(rat(32, 6), 1), "5.3");
        assert_eq!(format_dp(int(16), 1), "16.0");
    }

    #[test]
    fn formats_fixed_width() {
        assert_eq!(format_dp(rat(511, 1000), 3), "0.511");
        assert_eq!(format_dp(rat(4165, 1000), 3), "4.165");
        assert_eq!(format_dp(rat(6048, 1000), 1), "6.0");
    }
}

//! Bit strings and exact rational helpers shared by the other modules.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An ordered sequence of bits, printed as a string of `0` and `1`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.0.extend_from_slice(&other.0);
    }

    /// Append the `width` low bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u64, width: u32) {
        for shift in (0..width).rev() {
            self.0.push((value >> shift) & 1 == 1);
        }
    }

    pub fn prefix(&self, n: usize) -> BitString {
        BitString(self.0[..n.min(self.len())].to_vec())
    }

    pub fn slice(&self, start: usize, end: usize) -> BitString {
        BitString(self.0[start..end].to_vec())
    }

    pub fn starts_with(&self, other: &BitString) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &BitString) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Strict parse: only `0` and `1`, nothing else.
    fn from_str(s: &str) -> Result<Self> {
        s.char_indices()
            .map(|(offset, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                found => Err(Error::MalformedCharacter { offset, found }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Big-endian value of a bit sequence.
pub fn bin2dec(chunk: &[bool]) -> u64 {
    chunk.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
}

/// First `count` bits of the binary expansion of `x` after the radix point.
///
/// Only the fractional part is expanded; dyadic values terminate and
/// continue with zeros. Computed by long division on `numer / denom`.
pub fn binary_expansion(x: &BigRational, count: usize) -> BitString {
    let frac = x - x.floor();
    let (num, den) = (frac.numer(), frac.denom());
    let mut out = BitString::new();
    if let (Some(mut r), Some(d)) = (num.to_u128(), den.to_u128()) {
        if d < (1u128 << 126) {
            for _ in 0..count {
                r <<= 1;
                let bit = r >= d;
                if bit {
                    r -= d;
                }
                out.push(bit);
            }
            return out;
        }
    }
    let mut r = num.clone();
    for _ in 0..count {
        r <<= 1u32;
        let bit = &r >= den;
        if bit {
            r -= den;
        }
        out.push(bit);
    }
    out
}

/// Value of `0.b1b2b3...` as an exact rational.
pub fn bits_value(bits: &BitString) -> BigRational {
    let mut num = BigInt::zero();
    for b in bits.iter() {
        num = (num << 1u32) + BigInt::from(u8::from(b));
    }
    BigRational::new(num, BigInt::one() << bits.len())
}

/// `2^-exp` as an exact rational.
pub fn pow2_neg(exp: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << exp)
}

/// Format a rational as `numerator/denominator` in lowest terms.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `numerator/denominator` (or a bare integer).
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::schema("rational", format!("`{s}` is not num/den"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Serde adapter for rationals stored as `"num/den"` strings.
pub mod ratio_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for lists of `"num/den"` strings.
pub mod ratio_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[BigRational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_ratio))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_ratio(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bin2dec_examples() {
        let b = |s: &str| s.parse::<BitString>().unwrap();
        assert_eq!(bin2dec(b("1011").as_slice()), 11);
        assert_eq!(bin2dec(b("0000").as_slice()), 0);
        assert_eq!(bin2dec(b("11").as_slice()), 3);
    }

    #[test]
    fn expansion_of_seven_over_128() {
        assert_eq!(binary_expansion(&r(7, 128), 7).to_string(), "0000111");
        assert_eq!(binary_expansion(&r(7, 128), 10).to_string(), "0000111000");
        assert_eq!(binary_expansion(&r(1, 3), 6).to_string(), "010101");
        assert_eq!(binary_expansion(&r(7, 3), 4).to_string(), "0101");
        let huge = BigRational::new(BigInt::one(), (BigInt::one() << 200u32) * 3);
        let bits = binary_expansion(&huge, 204);
        assert_eq!(bits.prefix(200).iter().filter(|&b| b).count(), 0);
        assert_eq!(bits.slice(200, 204).to_string(), "0101");
    }

    #[test]
    fn ratio_round_trip() {
        assert_eq!(format_ratio(&r(6, 10)), "3/5");
        assert_eq!(format_ratio(&r(0, 7)), "0/1");
        assert_eq!(parse_ratio("3/5").unwrap(), r(3, 5));
        assert_eq!(parse_ratio("4").unwrap(), r(4, 1));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x/2").is_err());
    }

    #[test]
    fn strict_parse_reports_offset() {
        match "01a1".parse::<BitString>() {
            Err(Error::MalformedCharacter { offset, found }) => {
                assert_eq!((offset, found), (2, 'a'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

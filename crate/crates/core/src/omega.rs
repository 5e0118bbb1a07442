//! Bit sequences drawn from a halting-probability approximation or from a
//! user-supplied file, with the boundary of certified-stable bits tracked.

use std::fs;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits::{self, BitString};
use crate::error::{Error, Result};
use crate::machine::OmegaApproximation;

pub use crate::machine::tail_mass;

/// Where a bit sequence came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BitSource {
    Computed {
        machine_id: String,
        max_level: u32,
        max_steps: u64,
    },
    External {
        sha256: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedBits {
    pub bits: BitString,
    pub stable_prefix_len: usize,
    pub source: BitSource,
}

/// A prefix read out of [`CertifiedBits`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitsPrefix {
    pub bits: BitString,
    /// Every bit of the prefix lies inside the stable region.
    pub certified: bool,
}

impl CertifiedBits {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let parsed: CertifiedBits = serde_json::from_str(s)?;
        if parsed.stable_prefix_len > parsed.bits.len() {
            return Err(Error::schema(
                "stable_prefix_len",
                "exceeds the number of bits",
            ));
        }
        Ok(parsed)
    }
}

/// The first `count` bits of `lower_bound`'s binary expansion. Bits are
/// stable as far as the expansions of the lower bound and of
/// `lower_bound + pending_mass + tail_mass` agree.
pub fn extract_bits(approx: &OmegaApproximation, count: usize) -> Result<CertifiedBits> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "bit count must be at least 1".into(),
        ));
    }
    let bits = bits::binary_expansion(&approx.lower_bound, count);
    let upper = bits::binary_expansion(&approx.upper_bound(), count);
    Ok(CertifiedBits {
        stable_prefix_len: bits.common_prefix_len(&upper),
        bits,
        source: BitSource::Computed {
            machine_id: approx.machine_id.clone(),
            max_level: approx.max_level,
            max_steps: approx.max_steps,
        },
    })
}

/// Parse `0`/`1` text with arbitrary whitespace. The bits are trusted as-is
/// and marked fully stable.
pub fn parse_bits_text(raw: &[u8]) -> Result<CertifiedBits> {
    let mut bits = BitString::new();
    for (offset, &byte) in raw.iter().enumerate() {
        match byte {
            b'0' => bits.push(false),
            b'1' => bits.push(true),
            b if b.is_ascii_whitespace() => {}
            other => {
                return Err(Error::MalformedCharacter {
                    offset,
                    found: char::from(other),
                })
            }
        }
    }
    if bits.is_empty() {
        return Err(Error::EmptyBitFile);
    }
    Ok(CertifiedBits {
        stable_prefix_len: bits.len(),
        bits,
        source: BitSource::External {
            sha256: hex::encode(Sha256::digest(raw)),
        },
    })
}

pub fn load_bits_file(path: impl AsRef<Path>) -> Result<CertifiedBits> {
    parse_bits_text(&fs::read(path)?)
}

pub fn bits_prefix(source: &CertifiedBits, n: usize) -> Result<BitsPrefix> {
    if n > source.len() {
        return Err(Error::InsufficientBits {
            have: source.len(),
            need: n,
        });
    }
    Ok(BitsPrefix {
        bits: source.bits.prefix(n),
        certified: n <= source.stable_prefix_len,
    })
}

/// Exact value of the emitted bits read as a binary fraction.
pub fn bits_value(source: &CertifiedBits) -> BigRational {
    bits::bits_value(&source.bits)
}

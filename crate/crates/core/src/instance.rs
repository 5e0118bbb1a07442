//! Coefficient instances built from halting-probability bits.
//!
//! Given `n` and a coefficient policy, `s` coefficients each take a `t`-bit
//! chunk of the bit source, `t = ceil(log2 s)`. Chunk `i` read big-endian is
//! `B_i`; the weights are `b_i = B_i / K_b` with `K_b = sum B_i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::{self, BitString};
use crate::error::{Error, Result};
use crate::omega::{self, BitSource, CertifiedBits};
use crate::partitions::{coefficient_count, CoefficientPolicy};

/// Width in bits of each coefficient chunk: `ceil(log2 s)`, and 1 for `s = 1`.
pub fn chunk_width(s: u64) -> Result<u32> {
    match s {
        0 => Err(Error::InvalidArgument("s must be at least 1".into())),
        1 => Ok(1),
        s => Ok(64 - (s - 1).leading_zeros()),
    }
}

pub use crate::bits::bin2dec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChaitinInstance {
    pub n: usize,
    pub policy: CoefficientPolicy,
    pub s: usize,
    pub t: u32,
    pub bits: BitString,
    pub coefficients: Vec<u64>,
    pub k_b: u64,
    pub weights: Vec<BigRational>,
    pub bits_certified: bool,
    pub source: BitSource,
}

/// Number of `(n, policy)` coefficients as a machine integer, with its width.
pub fn instance_shape(n: usize, policy: CoefficientPolicy) -> Result<(usize, u32)> {
    let s_big = coefficient_count(n, policy)?;
    let s = s_big
        .to_u64()
        .filter(|&s| s <= (usize::MAX >> 8) as u64)
        .ok_or_else(|| Error::cap("s", &s_big, usize::MAX >> 8))?;
    Ok((s as usize, chunk_width(s)?))
}

pub fn build_instance(
    n: usize,
    policy: CoefficientPolicy,
    source: &CertifiedBits,
) -> Result<ChaitinInstance> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let (s, t) = instance_shape(n, policy)?;
    let need = s
        .checked_mul(t as usize)
        .ok_or_else(|| Error::cap("s*t", format!("{s}*{t}"), usize::MAX))?;
    let prefix = omega::bits_prefix(source, need)?;
    from_bits(
        n,
        policy,
        prefix.bits,
        prefix.certified,
        source.source.clone(),
    )
}

fn from_bits(
    n: usize,
    policy: CoefficientPolicy,
    bits: BitString,
    bits_certified: bool,
    source: BitSource,
) -> Result<ChaitinInstance> {
    let (s, t) = instance_shape(n, policy)?;
    let coefficients = chunk(&bits, t);
    debug_assert_eq!(coefficients.len(), s);
    let k_b: u64 = coefficients.iter().sum();
    if k_b == 0 {
        return Err(Error::AllZeroCoefficients);
    }
    let kb = BigInt::from(k_b);
    let weights = coefficients
        .iter()
        .map(|&b| BigRational::new(BigInt::from(b), kb.clone()))
        .collect();
    Ok(ChaitinInstance {
        n,
        policy,
        s,
        t,
        bits,
        coefficients,
        k_b,
        weights,
        bits_certified,
        source,
    })
}

/// Split into consecutive `t`-bit big-endian values.
pub fn chunk(bits: &BitString, t: u32) -> Vec<u64> {
    bits.as_slice()
        .chunks(t as usize)
        .map(bits::bin2dec)
        .collect()
}

/// Concatenate `t`-bit big-endian encodings.
pub fn concat_chunks(values: &[u64], t: u32) -> BitString {
    let mut out = BitString::new();
    for &v in values {
        out.push_uint(v, t);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct InstanceDocument {
    n: usize,
    policy: CoefficientPolicy,
    s: usize,
    t: u32,
    bits: BitString,
    #[serde(rename = "B")]
    coefficients: Vec<u64>,
    k_b: u64,
    #[serde(with = "bits::ratio_vec")]
    b: Vec<BigRational>,
    bits_certified: bool,
    source: BitSource,
}

impl ChaitinInstance {
    pub fn to_json(&self) -> Result<String> {
        let doc = InstanceDocument {
            n: self.n,
            policy: self.policy,
            s: self.s,
            t: self.t,
            bits: self.bits.clone(),
            coefficients: self.coefficients.clone(),
            k_b: self.k_b,
            b: self.weights.clone(),
            bits_certified: self.bits_certified,
            source: self.source.clone(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    /// Parse and check every invariant, naming the first field that fails.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: InstanceDocument =
            serde_json::from_str(s).map_err(|e| Error::schema("document", e.to_string()))?;
        if doc.n < 2 {
            return Err(Error::schema("n", "must be at least 2"));
        }
        let (s_expected, t_expected) =
            instance_shape(doc.n, doc.policy).map_err(|e| Error::schema("n", e.to_string()))?;
        if doc.s != s_expected {
            return Err(Error::schema(
                "s",
                format!("expected {s_expected}, found {}", doc.s),
            ));
        }
        if doc.t != t_expected {
            return Err(Error::schema(
                "t",
                format!("expected {t_expected}, found {}", doc.t),
            ));
        }
        if doc.bits.len() != doc.s * doc.t as usize {
            return Err(Error::schema(
                "bits",
                format!(
                    "length {} differs from s*t = {}",
                    doc.bits.len(),
                    doc.s * doc.t as usize
                ),
            ));
        }
        if doc.coefficients != chunk(&doc.bits, doc.t) {
            return Err(Error::schema("B", "does not match the chunked bits"));
        }
        if doc.k_b != doc.coefficients.iter().sum::<u64>() {
            return Err(Error::schema("k_b", "is not the sum of B"));
        }
        if doc.b.len() != doc.s {
            return Err(Error::schema("b", format!("expected {} weights", doc.s)));
        }
        let total: BigRational = doc.b.iter().sum();
        if !total.is_one() {
            return Err(Error::schema("b", format!("weights sum to {total}, not 1")));
        }
        let inst = from_bits(doc.n, doc.policy, doc.bits, doc.bits_certified, doc.source)
            .map_err(|e| Error::schema("B", e.to_string()))?;
        if inst.weights != doc.b {
            return Err(Error::schema("b", "weights differ from B / k_b"));
        }
        Ok(inst)
    }

    pub fn weight_sum(&self) -> BigRational {
        self.weights.iter().fold(BigRational::zero(), |a, b| a + b)
    }
}

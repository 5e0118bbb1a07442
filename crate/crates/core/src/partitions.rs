//! Term structure of the general N-way disentangled decomposition.
//!
//! Each summatory of the decomposition corresponds to one set partition of
//! the N subsystems into blocks that may be internally entangled. The
//! single-block partition is the fully entangled case and is excluded, so a
//! catalog for `n` subsystems holds `Bell(n) - 1` terms.

use std::fmt;
use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_partitions`] unless overridden.
pub const DEFAULT_PARTITION_CAP: usize = 12;

/// A partition of `{1..n}` in canonical form: blocks ordered by their
/// smallest element, elements ascending within a block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes the given blocks of `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &e in b {
                if e == 0 || e > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} outside 1..={n}"
                    )));
                }
                if seen[e] {
                    return Err(Error::InvalidPartition(format!("element {e} repeated")));
                }
                seen[e] = true;
            }
        }
        if let Some(missing) = (1..=n).find(|&e| !seen[e]) {
            return Err(Error::InvalidPartition(format!(
                "element {missing} missing"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    /// Build from block labels in first-occurrence order (`labels[i]` is the
    /// block of element `i + 1`).
    fn from_labels(labels: &[u8]) -> Self {
        let count = labels.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l as usize].push(i + 1);
        }
        Self { blocks }
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            f.write_str("{")?;
            for (i, e) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::new(n, blocks).map_err(serde::de::Error::custom)
    }
}

/// Every partition of `{1..n}` except `{{1..n}}`, in canonical order.
///
/// Partitions are stored as packed block labels, `n` bytes each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCatalog {
    n: usize,
    labels: Vec<u8>,
}

impl PartitionCatalog {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<SetPartition> {
        (index < self.len())
            .then(|| SetPartition::from_labels(&self.labels[index * self.n..(index + 1) * self.n]))
    }

    pub fn iter(&self) -> impl Iterator<Item = SetPartition> + '_ {
        self.labels.chunks(self.n).map(SetPartition::from_labels)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.iter().collect::<Vec<_>>())?)
    }
}

pub fn enumerate_partitions(n: usize) -> Result<PartitionCatalog> {
    enumerate_partitions_capped(n, DEFAULT_PARTITION_CAP)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<PartitionCatalog> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > cap || n > u8::MAX as usize {
        return Err(Error::cap("n", n, cap));
    }
    let mut out = Vec::new();
    let mut labels = vec![u8::MAX; n];
    emit_block_lists(&mut labels, 0, &mut out);
    // The single-block partition is the only one whose labels are all zero.
    let single = vec![0u8; n];
    let pos = out
        .chunks(n)
        .position(|c| c == single.as_slice())
        .expect("single-block partition is always generated");
    out.drain(pos * n..(pos + 1) * n);
    Ok(PartitionCatalog { n, labels: out })
}

/// Depth-first generation in lexicographic order of block lists: open a new
/// block at the smallest unassigned element, grow it through every
/// lexicographically ordered choice of further elements, and recurse on
/// what remains after each choice.
fn emit_block_lists(labels: &mut [u8], block: u8, out: &mut Vec<u8>) {
    let Some(first) = labels.iter().position(|&l| l == u8::MAX) else {
        out.extend_from_slice(labels);
        return;
    };
    labels[first] = block;
    grow_block(labels, block, first, out);
    labels[first] = u8::MAX;
}

fn grow_block(labels: &mut [u8], block: u8, last: usize, out: &mut Vec<u8>) {
    // Closing the block here gives the shortest (smallest) continuation.
    emit_block_lists(labels, block + 1, out);
    for next in last + 1..labels.len() {
        if labels[next] == u8::MAX {
            labels[next] = block;
            grow_block(labels, block, next, out);
            labels[next] = u8::MAX;
        }
    }
}

/// Bell numbers `Bell(0..=n)` via the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigUint> {
    let mut bells = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("row is never empty").clone());
        for v in &row {
            let s = next.last().expect("just pushed") + v;
            next.push(s);
        }
        bells.push(next[0].clone());
        row = next;
    }
    bells
}

pub fn bell(n: usize) -> BigUint {
    bell_numbers(n).pop().expect("nonempty")
}

/// Number of summatories, `Bell(n) - 1`.
pub fn term_count(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    bell(n) - 1u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientPolicy {
    /// One coefficient per term.
    TermsOnly,
    /// `4^n` coefficients per term, the squared Hilbert-space dimension.
    UniformCaratheodory,
}

impl CoefficientPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientPolicy::TermsOnly => "terms-only",
            CoefficientPolicy::UniformCaratheodory => "uniform-caratheodory",
        }
    }
}

impl fmt::Display for CoefficientPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CoefficientPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "terms-only" => Ok(CoefficientPolicy::TermsOnly),
            "uniform-caratheodory" => Ok(CoefficientPolicy::UniformCaratheodory),
            other => Err(Error::InvalidArgument(format!("unknown policy `{other}`"))),
        }
    }
}

pub fn coefficient_count(n: usize, policy: CoefficientPolicy) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "coefficient count needs n >= 2".into(),
        ));
    }
    let terms = term_count(n);
    Ok(match policy {
        CoefficientPolicy::TermsOnly => terms,
        CoefficientPolicy::UniformCaratheodory => terms << (2 * n),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub terms: BigUint,
    pub pow2: BigUint,
    pub s_terms_only: BigUint,
    pub s_uniform_caratheodory: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
}

pub const GROWTH_CSV_HEADER: [&str; 5] = [
    "n",
    "terms",
    "pow2",
    "S_terms_only",
    "S_uniform_caratheodory",
];

impl GrowthReport {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(GROWTH_CSV_HEADER)?;
        for r in &self.rows {
            wr.write_record([
                r.n.to_string(),
                r.terms.to_string(),
                r.pow2.to_string(),
                r.s_terms_only.to_string(),
                r.s_uniform_caratheodory.to_string(),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }
}

/// Rows for `n = 2..=n_max`.
pub fn growth_table(n_max: usize, cap: usize) -> Result<GrowthReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("n_max must be at least 2".into()));
    }
    if n_max > cap {
        return Err(Error::cap("n_max", n_max, cap));
    }
    let bells = bell_numbers(n_max);
    let rows = (2..=n_max)
        .map(|n| {
            let terms = &bells[n] - 1u32;
            GrowthRow {
                n,
                pow2: BigUint::one() << n,
                s_terms_only: terms.clone(),
                s_uniform_caratheodory: &terms << (2 * n),
                terms,
            }
        })
        .collect();
    Ok(GrowthReport { rows })
}

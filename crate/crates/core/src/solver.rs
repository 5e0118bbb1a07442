//! Candidate verification, exhaustive search against an equality oracle,
//! and growth measurement over `n`.

use std::io::Write;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::instance::{self, build_instance, concat_chunks};
use crate::machine::OmegaApproximation;
use crate::omega::{extract_bits, CertifiedBits};
use crate::partitions::CoefficientPolicy;

/// Default bound on the number of candidates a search may enumerate.
pub const DEFAULT_CANDIDATE_CAP: u64 = 1 << 24;

/// Whole-sequence equality queries against a hidden coefficient vector.
#[derive(Debug)]
pub struct EqualityOracle {
    target: Vec<u64>,
    queries: AtomicU64,
}

impl EqualityOracle {
    pub fn new(target: Vec<u64>) -> Self {
        Self {
            target,
            queries: AtomicU64::new(0),
        }
    }

    pub fn query(&self, candidate: &[u64]) -> bool {
        self.queries.fetch_add(1, Ordering::Relaxed);
        candidate == self.target.as_slice()
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }
}

/// True iff the `t`-bit encodings of `candidate` concatenate to `reference`.
pub fn verify_candidate(candidate: &[u64], reference: &BitString, t: u32) -> Result<bool> {
    if t == 0 || t > 63 {
        return Err(Error::InvalidArgument(format!(
            "chunk width {t} outside 1..=63"
        )));
    }
    if candidate.len() * t as usize != reference.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values of {t} bits against {} reference bits",
            candidate.len(),
            reference.len()
        )));
    }
    if let Some(v) = candidate.iter().find(|&&v| v >> t != 0) {
        return Err(Error::InvalidArgument(format!(
            "value {v} does not fit in {t} bits"
        )));
    }
    Ok(concat_chunks(candidate, t) == *reference)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub early_exit: bool,
    pub workers: usize,
    pub candidate_cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            early_exit: true,
            workers: 1,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub candidates_tested: u64,
    /// Candidates the oracle accepted.
    pub accepted: u64,
    pub wall_time: Duration,
    pub found: bool,
    pub space_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub stats: SolveStats,
    pub coefficients: Option<Vec<u64>>,
}

/// `(2^t)^s` as an exact integer.
pub fn space_size(s: usize, t: u32) -> BigUint {
    BigUint::one() << (s as u64 * u64::from(t))
}

fn decode_rank(rank: u64, s: usize, t: u32, out: &mut [u64]) {
    let mask = (1u64 << t) - 1;
    for (i, slot) in out.iter_mut().enumerate() {
        let shift = t as usize * (s - 1 - i);
        *slot = (rank >> shift) & mask;
    }
}

/// Enumerate every sequence of `s` values in `[0, 2^t)` in lexicographic
/// order and ask the oracle about each one.
pub fn brute_force(
    s: usize,
    t: u32,
    oracle: &EqualityOracle,
    opts: &SearchOptions,
) -> Result<Solution> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidArgument("s and t must be at least 1".into()));
    }
    if opts.workers == 0 {
        return Err(Error::InvalidArgument("workers must be at least 1".into()));
    }
    if oracle.len() != s {
        return Err(Error::DimensionMismatch(format!(
            "oracle holds {} values, search expects {s}",
            oracle.len()
        )));
    }
    let total_bits = s as u64 * u64::from(t);
    let space = 1u64
        .checked_shl(total_bits as u32)
        .filter(|_| total_bits < 64)
        .filter(|&sz| sz <= opts.candidate_cap)
        .ok_or_else(|| Error::cap("space_size", space_size(s, t), opts.candidate_cap))?;

    let start = Instant::now();
    let stop = AtomicBool::new(false);
    let tested = AtomicU64::new(0);
    let accepted = AtomicU64::new(0);
    let winner = AtomicU64::new(u64::MAX);
    let workers = (opts.workers as u64).min(space);
    let shard = space.div_ceil(workers);

    std::thread::scope(|scope| {
        for w in 0..workers {
            let (lo, hi) = (w * shard, ((w + 1) * shard).min(space));
            let (stop, tested, accepted, winner) = (&stop, &tested, &accepted, &winner);
            scope.spawn(move || {
                let mut candidate = vec![0u64; s];
                let mut local = 0u64;
                for rank in lo..hi {
                    if opts.early_exit && local.is_multiple_of(1024) && stop.load(Ordering::Relaxed)
                    {
                        break;
                    }
                    decode_rank(rank, s, t, &mut candidate);
                    local += 1;
                    if oracle.query(&candidate) {
                        accepted.fetch_add(1, Ordering::Relaxed);
                        winner.fetch_min(rank, Ordering::Relaxed);
                        if opts.early_exit {
                            stop.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                }
                tested.fetch_add(local, Ordering::Relaxed);
            });
        }
    });

    let rank = winner.load(Ordering::Relaxed);
    let coefficients = (rank != u64::MAX).then(|| {
        let mut c = vec![0u64; s];
        decode_rank(rank, s, t, &mut c);
        c
    });
    Ok(Solution {
        stats: SolveStats {
            candidates_tested: tested.load(Ordering::Relaxed),
            accepted: accepted.load(Ordering::Relaxed),
            wall_time: start.elapsed(),
            found: coefficients.is_some(),
            space_size: space,
        },
        coefficients,
    })
}

/// Where a growth benchmark gets its bits.
#[derive(Debug, Clone)]
pub enum BenchSource {
    /// No bits: rows report sizes only.
    None,
    Bits(CertifiedBits),
    /// Expand as many bits of the lower bound as each row needs.
    Approx(OmegaApproximation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Yes,
    OverCap,
    BitsUnavailable,
    AllZero,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Yes => "yes",
            SearchStatus::OverCap => "over-cap",
            SearchStatus::BitsUnavailable => "bits-unavailable",
            SearchStatus::AllZero => "all-zero",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthBenchRow {
    pub n: usize,
    pub s: usize,
    pub t: u32,
    pub bits_read: u64,
    pub space_exponent: u64,
    pub wall_ms: f64,
    pub searched: SearchStatus,
}

impl GrowthBenchRow {
    pub fn space_size(&self) -> BigUint {
        BigUint::one() << self.space_exponent
    }
}

pub const BENCH_CSV_HEADER: [&str; 7] = [
    "n",
    "s",
    "t",
    "bits_read",
    "space_size",
    "wall_ms",
    "searched",
];

// Above this many bits the space size is written as `2^E` rather than in
// decimal digits.
const DECIMAL_SPACE_LIMIT: u64 = 1 << 16;

pub fn format_space_size(exponent: u64) -> String {
    if exponent <= DECIMAL_SPACE_LIMIT {
        (BigUint::one() << exponent).to_string()
    } else {
        format!("2^{exponent}")
    }
}

/// Parse either form written by [`format_space_size`].
pub fn parse_space_size(field: &str) -> Result<BigUint> {
    if let Some(e) = field.strip_prefix("2^") {
        let e: u64 = e
            .parse()
            .map_err(|_| Error::schema("space_size", field.to_string()))?;
        return Ok(BigUint::one() << e);
    }
    field
        .parse()
        .map_err(|_| Error::schema("space_size", field.to_string()))
}

pub fn growth_benchmark(
    n_min: usize,
    n_max: usize,
    policy: CoefficientPolicy,
    source: &BenchSource,
    opts: &SearchOptions,
) -> Result<Vec<GrowthBenchRow>> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "invalid n range {n_min}..={n_max}"
        )));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let (s, t) = instance::instance_shape(n, policy)?;
        let bits_read = s as u64 * u64::from(t);
        let start = Instant::now();
        let bits = match source {
            BenchSource::None => None,
            BenchSource::Bits(b) => Some(b.clone()),
            BenchSource::Approx(a) => Some(extract_bits(a, bits_read as usize)?),
        };
        let searched = match bits.map(|b| build_instance(n, policy, &b)) {
            None | Some(Err(Error::InsufficientBits { .. })) => SearchStatus::BitsUnavailable,
            Some(Err(Error::AllZeroCoefficients)) => SearchStatus::AllZero,
            Some(Err(e)) => return Err(e),
            Some(Ok(inst)) => {
                let oracle = EqualityOracle::new(inst.coefficients.clone());
                match brute_force(s, t, &oracle, opts) {
                    Ok(sol) => {
                        debug_assert_eq!(sol.coefficients.as_ref(), Some(&inst.coefficients));
                        SearchStatus::Yes
                    }
                    Err(Error::CapExceeded { .. }) => SearchStatus::OverCap,
                    Err(e) => return Err(e),
                }
            }
        };
        rows.push(GrowthBenchRow {
            n,
            s,
            t,
            bits_read,
            space_exponent: bits_read,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
            searched,
        });
    }
    Ok(rows)
}

pub fn write_growth_csv<W: Write>(rows: &[GrowthBenchRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(BENCH_CSV_HEADER)?;
    for r in rows {
        wr.write_record([
            r.n.to_string(),
            r.s.to_string(),
            r.t.to_string(),
            r.bits_read.to_string(),
            format_space_size(r.space_exponent),
            format!("{:.3}", r.wall_ms),
            r.searched.as_str().to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

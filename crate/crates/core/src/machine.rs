//! A fixed eight-opcode register machine with self-delimiting program codes,
//! and a dovetailer that bounds its halting probability from below.
//!
//! Programs are bodies of `k` three-bit opcodes, encoded as `1^{3k} 0 body`,
//! so a level-`k` program is `6k + 1` bits long and weighs `2^-(6k+1)`.
//! The machine is not universal; its halting probability is a well-defined
//! computable-from-below number, nothing more.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, BitString};
use crate::error::{Error, Result};

/// Identifier written into every artifact derived from this machine.
pub const MACHINE_ID: &str = "toy8-unary-falloff-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Opcode {
    Halt = 0b000,
    Inc = 0b001,
    Dec = 0b010,
    Right = 0b011,
    Left = 0b100,
    SkipZ = 0b101,
    JmpStart = 0b110,
    Nop = 0b111,
}

impl Opcode {
    pub const ALL: [Opcode; 8] = [
        Opcode::Halt,
        Opcode::Inc,
        Opcode::Dec,
        Opcode::Right,
        Opcode::Left,
        Opcode::SkipZ,
        Opcode::JmpStart,
        Opcode::Nop,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Opcode> {
        Opcode::ALL.get(usize::from(code)).copied()
    }

    fn bits(self) -> [bool; 3] {
        let c = self.code();
        [c & 0b100 != 0, c & 0b010 != 0, c & 0b001 != 0]
    }
}

impl fmt::Display for Opcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Opcode::Halt => "HALT",
            Opcode::Inc => "INC",
            Opcode::Dec => "DEC",
            Opcode::Right => "RIGHT",
            Opcode::Left => "LEFT",
            Opcode::SkipZ => "SKIPZ",
            Opcode::JmpStart => "JMPSTART",
            Opcode::Nop => "NOP",
        };
        f.write_str(name)
    }
}

/// A nonempty opcode sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProgramBody(Vec<Opcode>);

impl ProgramBody {
    pub fn new(ops: Vec<Opcode>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidArgument(
                "program body must be nonempty".into(),
            ));
        }
        Ok(Self(ops))
    }

    pub fn ops(&self) -> &[Opcode] {
        &self.0
    }

    /// Number of opcodes, i.e. the program's level.
    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn body_bits(&self) -> BitString {
        BitString::from_bools(self.0.iter().flat_map(|op| op.bits()).collect())
    }

    /// The `index`-th body of level `k` in lexicographic bit order.
    fn at(k: u32, mut index: u64) -> Self {
        let mut ops = vec![Opcode::Halt; k as usize];
        for slot in ops.iter_mut().rev() {
            *slot = Opcode::ALL[(index & 7) as usize];
            index >>= 3;
        }
        Self(ops)
    }
}

/// Encoding `1^{|p|} 0 p` of a body `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EncodedProgram(BitString);

impl EncodedProgram {
    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn into_bits(self) -> BitString {
        self.0
    }
}

pub fn encode_program(body: &ProgramBody) -> EncodedProgram {
    let payload = body.body_bits();
    let mut out = BitString::new();
    for _ in 0..payload.len() {
        out.push(true);
    }
    out.push(false);
    out.extend_from(&payload);
    EncodedProgram(out)
}

/// Inverse of [`encode_program`]; `None` for anything outside its image.
pub fn decode_program(bits: &BitString) -> Option<ProgramBody> {
    let raw = bits.as_slice();
    let unary = raw.iter().take_while(|&&b| b).count();
    if unary == 0 || unary % 3 != 0 || raw.len() != 2 * unary + 1 {
        return None;
    }
    let body = &raw[unary + 1..];
    let ops = body
        .chunks(3)
        .map(|c| Opcode::from_code(bits::bin2dec(c) as u8))
        .collect::<Option<Vec<_>>>()?;
    Some(ProgramBody(ops))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    Halted { steps: u64 },
    StillRunning { steps: u64 },
    Invalid,
}

impl RunOutcome {
    pub fn halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }
}

/// Tape, pointers and step counter of one execution.
#[derive(Debug, Clone, Default)]
pub struct MachineState {
    tape: Vec<u64>,
    dp: usize,
    ip: usize,
    steps: u64,
}

impl MachineState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cell(&self, index: usize) -> u64 {
        self.tape.get(index).copied().unwrap_or(0)
    }

    pub fn data_pointer(&self) -> usize {
        self.dp
    }

    pub fn instruction_pointer(&self) -> usize {
        self.ip
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn cell_mut(&mut self) -> &mut u64 {
        if self.dp >= self.tape.len() {
            self.tape.resize(self.dp + 1, 0);
        }
        &mut self.tape[self.dp]
    }

    /// Execute one instruction. Returns `true` once the machine has halted,
    /// either on `HALT` or by running off the end of the body.
    pub fn step(&mut self, body: &[Opcode]) -> bool {
        let op = body[self.ip];
        self.steps += 1;
        let mut next = self.ip + 1;
        match op {
            Opcode::Halt => return true,
            Opcode::Inc => *self.cell_mut() += 1,
            Opcode::Dec => {
                let c = self.cell_mut();
                *c = c.saturating_sub(1);
            }
            Opcode::Right => self.dp += 1,
            Opcode::Left => self.dp = self.dp.saturating_sub(1),
            Opcode::SkipZ => {
                if self.cell(self.dp) == 0 {
                    next += 1;
                }
            }
            Opcode::JmpStart => next = 0,
            Opcode::Nop => {}
        }
        self.ip = next;
        self.ip >= body.len()
    }
}

pub fn run(body: &ProgramBody, max_steps: u64) -> RunOutcome {
    let mut state = MachineState::new();
    while state.steps < max_steps {
        if state.step(body.ops()) {
            return RunOutcome::Halted { steps: state.steps };
        }
    }
    RunOutcome::StillRunning { steps: max_steps }
}

/// Decode and run a raw bitstring.
pub fn run_encoded(bits: &BitString, max_steps: u64) -> RunOutcome {
    match decode_program(bits) {
        Some(body) => run(&body, max_steps),
        None => RunOutcome::Invalid,
    }
}

/// All `8^k` bodies of exactly `k` opcodes, lexicographic by opcode bits.
pub fn enumerate_bodies(k: u32) -> Result<Vec<ProgramBody>> {
    if k == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    if k > 10 {
        return Err(Error::cap("level", k, 10));
    }
    Ok((0..8u64.pow(k)).map(|i| ProgramBody::at(k, i)).collect())
}

/// `8^k · 2^-(6k+1) = 2^-(3k+1)`: total weight of all level-`k` programs.
pub fn level_mass(k: u32) -> BigRational {
    bits::pow2_neg(3 * u64::from(k) + 1)
}

/// Weight `2^-(6k+1)` of a single level-`k` program.
pub fn program_weight(k: u32) -> BigRational {
    bits::pow2_neg(6 * u64::from(k) + 1)
}

/// Mass of every level above `k`: `2^-(3k+1) / 7`.
pub fn tail_mass(k: u32) -> BigRational {
    bits::pow2_neg(3 * u64::from(k) + 1) / BigRational::from_integer(BigInt::from(7))
}

/// Exact lower bound on the halting probability plus the unresolved mass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaApproximation {
    pub machine_id: String,
    pub max_level: u32,
    pub max_steps: u64,
    #[serde(with = "bits::ratio_str")]
    pub lower_bound: BigRational,
    #[serde(with = "bits::ratio_str")]
    pub pending_mass: BigRational,
    #[serde(with = "bits::ratio_str")]
    pub tail_mass: BigRational,
    pub halted_count: u64,
    pub pending_count: u64,
}

impl OmegaApproximation {
    /// Hand-built approximation, mostly useful in tests.
    pub fn from_parts(
        lower_bound: BigRational,
        pending_mass: BigRational,
        tail_mass: BigRational,
    ) -> Self {
        Self {
            machine_id: MACHINE_ID.to_string(),
            max_level: 0,
            max_steps: 0,
            lower_bound,
            pending_mass,
            tail_mass,
            halted_count: 0,
            pending_count: 0,
        }
    }

    /// `lower_bound + pending_mass + tail_mass`.
    pub fn upper_bound(&self) -> BigRational {
        &self.lower_bound + &self.pending_mass + &self.tail_mass
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Kraft inequality: the three masses together never exceed one.
pub fn kraft_check(approx: &OmegaApproximation) -> bool {
    approx.upper_bound() <= BigRational::one()
}

/// Resource caps applied by [`Dovetailer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MachineLimits {
    pub max_level: u32,
    pub max_steps: u64,
}

impl Default for MachineLimits {
    fn default() -> Self {
        Self {
            max_level: 7,
            max_steps: 1_000_000,
        }
    }
}

// Bodies dovetailed together in one batch.
const BATCH: u64 = 4096;

#[derive(Debug, Clone)]
pub struct Dovetailer {
    max_level: u32,
    max_steps: u64,
    workers: usize,
    limits: MachineLimits,
}

impl Dovetailer {
    pub fn new(max_level: u32, max_steps: u64) -> Self {
        Self {
            max_level,
            max_steps,
            workers: 1,
            limits: MachineLimits::default(),
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn limits(mut self, limits: MachineLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn run(&self) -> Result<OmegaApproximation> {
        if self.max_level == 0 || self.max_steps == 0 {
            return Err(Error::InvalidArgument(
                "max_level and max_steps must be at least 1".into(),
            ));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        if self.max_level > self.limits.max_level {
            return Err(Error::cap(
                "max_level",
                self.max_level,
                self.limits.max_level,
            ));
        }
        if self.max_steps > self.limits.max_steps {
            return Err(Error::cap(
                "max_steps",
                self.max_steps,
                self.limits.max_steps,
            ));
        }

        let batches: Vec<(u32, u64, u64)> = (1..=self.max_level)
            .flat_map(|k| {
                let total = 8u64.pow(k);
                (0..total)
                    .step_by(BATCH as usize)
                    .map(move |start| (k, start, (start + BATCH).min(total)))
            })
            .collect();

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let steps = self.max_steps;
        let counts: Vec<(u32, u64, u64)> = pool.install(|| {
            batches
                .par_iter()
                .map(|&(k, start, end)| {
                    let (h, p) = dovetail_batch(k, start, end, steps);
                    (k, h, p)
                })
                .collect()
        });

        let mut halted = vec![0u64; self.max_level as usize + 1];
        let mut pending = vec![0u64; self.max_level as usize + 1];
        for (k, h, p) in counts {
            halted[k as usize] += h;
            pending[k as usize] += p;
        }
        let mut lower_bound = BigRational::zero();
        let mut pending_mass = BigRational::zero();
        for k in 1..=self.max_level {
            let w = program_weight(k);
            lower_bound += &w * BigRational::from_integer(halted[k as usize].into());
            pending_mass += &w * BigRational::from_integer(pending[k as usize].into());
        }
        Ok(OmegaApproximation {
            machine_id: MACHINE_ID.to_string(),
            max_level: self.max_level,
            max_steps: self.max_steps,
            lower_bound,
            pending_mass,
            tail_mass: tail_mass(self.max_level),
            halted_count: halted.iter().sum(),
            pending_count: pending.iter().sum(),
        })
    }
}

/// Interleave bodies `start..end` of level `k`, one step per live program
/// per round, for `max_steps` rounds. Returns (halted, still running).
fn dovetail_batch(k: u32, start: u64, end: u64, max_steps: u64) -> (u64, u64) {
    let mut live: Vec<(ProgramBody, MachineState)> = (start..end)
        .map(|i| (ProgramBody::at(k, i), MachineState::new()))
        .collect();
    let mut halted = 0u64;
    for _ in 0..max_steps {
        if live.is_empty() {
            break;
        }
        let before = live.len();
        live.retain_mut(|(body, state)| !state.step(body.ops()));
        halted += (before - live.len()) as u64;
    }
    (halted, live.len() as u64)
}

/// Sequential dovetailing with default caps.
pub fn dovetail(max_level: u32, max_steps: u64) -> Result<OmegaApproximation> {
    Dovetailer::new(max_level, max_steps).run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn body(ops: &[Opcode]) -> ProgramBody {
        ProgramBody::new(ops.to_vec()).unwrap()
    }

    #[test]
    fn encodes_single_halt() {
        let enc = encode_program(&body(&[Opcode::Halt]));
        assert_eq!(enc.bits().to_string(), "1110000");
        let enc = encode_program(&body(&[Opcode::Inc, Opcode::Halt]));
        assert_eq!(enc.bits().to_string(), "1111110001000");
    }

    #[test]
    fn decode_rejects_malformed() {
        let b = |s: &str| s.parse::<BitString>().unwrap();
        assert_eq!(decode_program(&b("1110000")), Some(body(&[Opcode::Halt])));
        assert_eq!(decode_program(&b("0")), None);
        assert_eq!(decode_program(&b("101")), None);
        assert_eq!(decode_program(&b("100")), None);
        assert_eq!(decode_program(&b("")), None);
        assert_eq!(decode_program(&b("111")), None);
        assert_eq!(decode_program(&b("11100000")), None);
        assert_eq!(decode_program(&b("111000")), None);
        assert_eq!(run_encoded(&b("0"), 10), RunOutcome::Invalid);
    }

    #[test]
    fn round_trip_small_bodies() {
        for k in 1..=2 {
            for b in enumerate_bodies(k).unwrap() {
                assert_eq!(decode_program(encode_program(&b).bits()), Some(b));
            }
        }
    }

    #[test]
    fn opcode_codes_unique() {
        for (i, op) in Opcode::ALL.iter().enumerate() {
            assert_eq!(op.code() as usize, i);
            assert_eq!(Opcode::from_code(op.code()), Some(*op));
        }
        assert_eq!(Opcode::from_code(8), None);
    }

    #[test]
    fn run_examples() {
        assert_eq!(
            run(&body(&[Opcode::Halt]), 10),
            RunOutcome::Halted { steps: 1 }
        );
        assert_eq!(
            run(&body(&[Opcode::JmpStart]), 1000),
            RunOutcome::StillRunning { steps: 1000 }
        );
        assert_eq!(
            run(&body(&[Opcode::Nop]), 10),
            RunOutcome::Halted { steps: 1 }
        );
    }

    #[test]
    fn skipz_and_floors() {
        // SKIPZ on a zero cell jumps over JMPSTART and falls off.
        let p = body(&[Opcode::SkipZ, Opcode::JmpStart]);
        assert_eq!(run(&p, 10), RunOutcome::Halted { steps: 1 });
        // With a nonzero cell the loop is taken forever.
        let p = body(&[Opcode::Inc, Opcode::SkipZ, Opcode::JmpStart]);
        assert_eq!(run(&p, 100), RunOutcome::StillRunning { steps: 100 });

        let mut st = MachineState::new();
        let ops = [Opcode::Dec, Opcode::Left, Opcode::Nop];
        st.step(&ops);
        st.step(&ops);
        assert_eq!(st.cell(0), 0);
        assert_eq!(st.data_pointer(), 0);
    }

    #[test]
    fn straight_line_program_counts_steps() {
        let p = body(&[Opcode::Inc, Opcode::Right, Opcode::Inc, Opcode::Halt]);
        assert_eq!(run(&p, 10), RunOutcome::Halted { steps: 4 });
    }

    #[test]
    fn enumerate_counts_and_order() {
        assert_eq!(enumerate_bodies(1).unwrap().len(), 8);
        assert_eq!(enumerate_bodies(2).unwrap().len(), 64);
        assert_eq!(enumerate_bodies(1).unwrap()[0], body(&[Opcode::Halt]));
        let k2 = enumerate_bodies(2).unwrap();
        assert_eq!(k2[1], body(&[Opcode::Halt, Opcode::Inc]));
        assert_eq!(k2[8], body(&[Opcode::Inc, Opcode::Halt]));
        assert!(enumerate_bodies(0).is_err());
    }

    #[test]
    fn dovetail_level_one() {
        let a = dovetail(1, 10).unwrap();
        assert_eq!(a.lower_bound, r(7, 128));
        assert_eq!(a.pending_mass, r(1, 128));
        assert_eq!(a.tail_mass, r(1, 112));
        assert_eq!((a.halted_count, a.pending_count), (7, 1));
        assert!(kraft_check(&a));
        let a1 = dovetail(1, 1).unwrap();
        assert!(a1.lower_bound <= a.lower_bound);
    }

    #[test]
    fn kraft_violation_detected() {
        let a = OmegaApproximation::from_parts(r(1, 1), r(0, 1), r(1, 2));
        assert!(!kraft_check(&a));
    }

    #[test]
    fn caps_enforced() {
        let e = Dovetailer::new(3, 10)
            .limits(MachineLimits {
                max_level: 2,
                max_steps: 10,
            })
            .run();
        assert!(matches!(e, Err(Error::CapExceeded { .. })));
        assert!(dovetail(0, 10).is_err());
        assert!(dovetail(1, 0).is_err());
    }

    #[test]
    fn tail_mass_closed_form() {
        assert_eq!(tail_mass(0), r(1, 14));
        assert_eq!(tail_mass(1), r(1, 112));
        for k in 0..6 {
            assert_eq!(tail_mass(k), tail_mass(k + 1) * r(8, 1));
            assert_eq!(tail_mass(k), level_mass(k + 1) + tail_mass(k + 1));
        }
    }

    #[test]
    fn json_is_bit_exact() {
        let a = dovetail(1, 10).unwrap();
        let json = a.to_json().unwrap();
        assert!(json.contains("\"lower_bound\": \"7/128\""));
        assert!(json.contains("\"tail_mass\": \"1/112\""));
        assert_eq!(OmegaApproximation::from_json(&json).unwrap(), a);
    }
}

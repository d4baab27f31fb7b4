//! Rate-1/3 parallel concatenation of two identical constituent encoders.

use serde::{Deserialize, Serialize};

use crate::convcode::{ConstituentSpec, State, TerminationMode};
use crate::error::{Error, Result};
use crate::permpoly::{permutation, ModPolynomial, Qpp};

/// Which way the permutation polynomial maps between the two encoders.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InterleaverDirection {
    /// Lower input at time `t` is `input[f(t)]`.
    #[default]
    Forward,
    /// Lower input at time `f(t)` is `input[t]`.
    Inverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurboCodeword {
    pub systematic: Vec<bool>,
    pub parity_upper: Vec<bool>,
    pub parity_lower: Vec<bool>,
    pub termination: TerminationMode,
}

impl TurboCodeword {
    pub fn weight(&self) -> u32 {
        [&self.systematic, &self.parity_upper, &self.parity_lower]
            .iter()
            .map(|v| v.iter().filter(|&&b| b).count() as u32)
            .sum()
    }
}

/// The `2 nu` linear conditions an input must meet so that both encoders,
/// started in the zero state, also end there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualConstraints {
    nu: u32,
    // Bit i (< nu): upper end-state contribution; bit nu + i: lower.
    columns: Vec<u32>,
    rank: u32,
}

impl DualConstraints {
    /// Rank of the constraint system, `2 nu` for generic lengths.
    pub fn dimension(&self) -> u32 {
        self.rank
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// Combined end states `(upper | lower << nu)` caused by the given input positions.
    pub fn syndrome<I: IntoIterator<Item = usize>>(&self, positions: I) -> u32 {
        positions.into_iter().fold(0, |acc, i| acc ^ self.columns[i])
    }

    pub fn is_satisfied(&self, input: &[bool]) -> bool {
        self.syndrome(input.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)) == 0
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }
}

fn gf2_rank(vectors: &[u32]) -> u32 {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let reduced = basis.iter().fold(v, |x, &b| x.min(x ^ b));
        if reduced != 0 {
            basis.push(reduced);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len() as u32
}

/// A turbo code with a fixed interleaver, ready for repeated encoding.
#[derive(Debug, Clone)]
pub struct TurboCode {
    spec: ConstituentSpec,
    qpp: Qpp,
    direction: InterleaverDirection,
    // Input index read by the lower encoder at each time.
    lower_source: Vec<u32>,
    // Time at which each input index enters the lower encoder.
    lower_time: Vec<u32>,
}

impl TurboCode {
    pub fn new(qpp: Qpp, spec: ConstituentSpec, direction: InterleaverDirection) -> Result<Self> {
        let n = qpp.modulus();
        if n > u32::MAX as u64 {
            return Err(Error::OutOfRange {
                value: n,
                min: 1,
                max: u32::MAX as u64,
            });
        }
        let perm: Vec<u32> = permutation(&qpp)?.into_iter().map(|v| v as u32).collect();
        let mut inv = vec![0u32; perm.len()];
        for (t, &p) in perm.iter().enumerate() {
            inv[p as usize] = t as u32;
        }
        let (lower_source, lower_time) = match direction {
            InterleaverDirection::Forward => (perm, inv),
            InterleaverDirection::Inverse => (inv, perm),
        };
        Ok(Self {
            spec,
            qpp,
            direction,
            lower_source,
            lower_time,
        })
    }

    pub fn lte(qpp: Qpp) -> Result<Self> {
        Self::new(qpp, ConstituentSpec::lte(), InterleaverDirection::Forward)
    }

    pub fn len(&self) -> usize {
        self.lower_source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower_source.is_empty()
    }

    pub fn spec(&self) -> &ConstituentSpec {
        &self.spec
    }

    pub fn qpp(&self) -> &Qpp {
        &self.qpp
    }

    pub fn direction(&self) -> InterleaverDirection {
        self.direction
    }

    /// Time at which input index `i` enters the lower encoder.
    #[inline]
    pub fn lower_time(&self, i: usize) -> usize {
        self.lower_time[i] as usize
    }

    /// Input index read by the lower encoder at time `t`.
    #[inline]
    pub fn lower_source(&self, t: usize) -> usize {
        self.lower_source[t] as usize
    }

    /// The input as seen by the lower encoder.
    pub fn interleave(&self, input: &[bool]) -> Vec<bool> {
        self.lower_source.iter().map(|&i| input[i as usize]).collect()
    }

    pub fn dual_constraints(&self) -> DualConstraints {
        let n = self.len();
        let (after_one, _) = self.spec.step(0, true);
        let nu = self.spec.nu();
        let columns: Vec<u32> = (0..n)
            .map(|i| {
                let upper = self.spec.skip_zeros(after_one, n - 1 - i).0 as u32;
                let lower = self.spec.skip_zeros(after_one, n - 1 - self.lower_time(i)).0 as u32;
                upper | lower << nu
            })
            .collect();
        let rank = gf2_rank(&columns);
        DualConstraints { nu, columns, rank }
    }

    /// Encodes `input`; `None` when the termination cannot be met.
    pub fn encode(&self, mode: TerminationMode, input: &[bool]) -> Result<Option<TurboCodeword>> {
        if input.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: input.len(),
            });
        }
        let lower_input = self.interleave(input);
        let parities = match mode {
            TerminationMode::Dual => {
                let (pu, su) = self.spec.encode_from_state(input, 0);
                let (pl, sl) = self.spec.encode_from_state(&lower_input, 0);
                (su == 0 && sl == 0).then_some((pu, pl))
            }
            TerminationMode::Tailbiting => self
                .spec
                .encode_tailbiting(input)
                .zip(self.spec.encode_tailbiting(&lower_input)),
        };
        Ok(parities.map(|(parity_upper, parity_lower)| TurboCodeword {
            systematic: input.to_vec(),
            parity_upper,
            parity_lower,
            termination: mode,
        }))
    }

    /// Codeword weight for the input with ones at the sorted `positions`,
    /// computed without materialising the block.
    pub fn sparse_weight(&self, mode: TerminationMode, positions: &[usize]) -> Option<u32> {
        let n = self.len();
        let mut lower: Vec<usize> = positions.iter().map(|&i| self.lower_time(i)).collect();
        lower.sort_unstable();
        let upper_parity = self.constituent_parity(mode, positions, n)?;
        let lower_parity = self.constituent_parity(mode, &lower, n)?;
        Some(positions.len() as u32 + upper_parity + lower_parity)
    }

    fn constituent_parity(&self, mode: TerminationMode, positions: &[usize], n: usize) -> Option<u32> {
        let (w, end) = self.spec.sparse_parity(positions, 0, n);
        match mode {
            TerminationMode::Dual => (end == 0).then_some(w),
            TerminationMode::Tailbiting => {
                if end == 0 {
                    return Some(w);
                }
                let start: State = self.spec.circulation_state(n, end)?;
                Some(self.spec.sparse_parity(positions, start, n).0)
            }
        }
    }
}

/// One-shot encoding of `input` through the turbo code defined by `qpp` and `spec`.
pub fn turbo_encode(
    qpp: &Qpp,
    spec: &ConstituentSpec,
    mode: TerminationMode,
    input: &[bool],
) -> Result<Option<TurboCodeword>> {
    TurboCode::new(*qpp, spec.clone(), InterleaverDirection::Forward)?.encode(mode, input)
}

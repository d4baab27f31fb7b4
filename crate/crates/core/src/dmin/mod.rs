//! Minimum distance and multiplicity of QPP turbo codes.

mod estimate;
mod exact;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use estimate::{estimate_dmin, EstimateConfig};
pub use exact::{exact_dmin, ExactConfig};

/// Outcome of a distance computation. Witnesses are sorted input positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DminResult {
    /// Least weight found; `None` when nothing at or below the cap exists.
    pub dmin: Option<u32>,
    pub multiplicity: u64,
    pub exact: bool,
    pub witnesses: Vec<Vec<u32>>,
    pub weight_cap_used: u32,
    pub nodes: u64,
}

impl DminResult {
    /// Expands a witness into a dense input word of length `n`.
    pub fn witness_word(witness: &[u32], n: usize) -> Vec<bool> {
        let mut word = vec![false; n];
        for &i in witness {
            word[i as usize] = true;
        }
        word
    }
}

/// Least weight seen, how many codewords attain it, and a few of them.
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    best: u32,
    count: u64,
    witnesses: BTreeSet<Vec<u32>>,
    max_witnesses: usize,
}

impl Tally {
    pub(crate) fn new(max_witnesses: usize) -> Self {
        Self {
            best: u32::MAX,
            count: 0,
            witnesses: BTreeSet::new(),
            max_witnesses,
        }
    }

    pub(crate) fn best(&self) -> Option<u32> {
        (self.best != u32::MAX).then_some(self.best)
    }

    pub(crate) fn count(&self) -> u64 {
        self.count
    }

    pub(crate) fn record(&mut self, weight: u32, copies: u64, witness: impl FnOnce() -> Vec<u32>) {
        if weight > self.best {
            return;
        }
        if weight < self.best {
            self.best = weight;
            self.count = 0;
            self.witnesses.clear();
        }
        self.count += copies;
        if self.max_witnesses > 0 {
            self.witnesses.insert(witness());
            if self.witnesses.len() > self.max_witnesses {
                self.witnesses.pop_last();
            }
        }
    }

    pub(crate) fn merge(mut self, other: Self) -> Self {
        if other.best < self.best {
            return other.merge(self);
        }
        if other.best == self.best && other.best != u32::MAX {
            self.count += other.count;
            self.witnesses.extend(other.witnesses);
            while self.witnesses.len() > self.max_witnesses {
                self.witnesses.pop_last();
            }
        }
        self
    }

    pub(crate) fn into_witnesses(self) -> Vec<Vec<u32>> {
        self.witnesses.into_iter().collect()
    }
}

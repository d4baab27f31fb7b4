//! Exhaustive minimum-distance search.
//!
//! Every codeword of weight `W = w + p1 + p2 <= T` has `w + 2 p1 <= T` or
//! `w + 2 p2 < T`. The search walks the upper trellis over all terminated
//! paths obeying the first inequality, then the lower trellis over those
//! obeying the second, evaluating the opposite encoder sparsely at each
//! leaf. The side with the smaller parity owns the codeword, so each one is
//! counted exactly once.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DminResult, Tally};
use crate::convcode::{ConstituentSpec, State, TerminationMode};
use crate::error::{Error, Result};
use crate::turbo::TurboCode;

const NODE_BATCH: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactConfig {
    /// Largest codeword weight searched for.
    pub weight_cap: u32,
    /// Abort after this many search nodes.
    pub budget_nodes: Option<u64>,
    /// A known codeword weight; the search then runs a single pass at this threshold.
    pub initial_upper: Option<u32>,
    /// Under tailbiting, search one representative per quasi-cyclic orbit.
    pub quasi_cyclic: bool,
    pub max_witnesses: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            weight_cap: 60,
            budget_nodes: None,
            initial_upper: None,
            quasi_cyclic: true,
            max_witnesses: 8,
        }
    }
}

struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    fn charge(&self, nodes: u64) -> bool {
        let total = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if self.limit.is_some_and(|l| total > l) {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }
}

/// Least cost `w + 2 p` from a state to a target state in a given number of sections.
enum CostToGo {
    // Target is the zero state: rows indexed by min(r, last).
    Zero(Vec<Vec<u32>>),
    // rows[r][from][to]
    Exact(Vec<Vec<Vec<u32>>>),
}

impl CostToGo {
    #[inline]
    fn get(&self, remaining: usize, from: State, to: State) -> u32 {
        match self {
            Self::Zero(rows) => rows[remaining.min(rows.len() - 1)][from as usize],
            Self::Exact(rows) => rows[remaining][from as usize][to as usize],
        }
    }
}

/// One of the two passes: a trellis walked explicitly plus the map to the other side.
struct Pass<'a> {
    spec: &'a ConstituentSpec,
    n: usize,
    mode: TerminationMode,
    // Primary time -> time on the other encoder.
    to_other: Vec<u32>,
    // Primary time -> input index.
    to_input: Vec<u32>,
    // Codewords owned by this pass satisfy p_primary <= p_other (or < when strict).
    strict: bool,
    threshold: u32,
    cost: &'a CostToGo,
    qc_period: Option<usize>,
    budget: &'a Budget,
}

struct Walk {
    ones: Vec<usize>,
    nodes: u64,
    alive: bool,
    tally: Tally,
}

impl Pass<'_> {
    fn limit(&self) -> u32 {
        if self.strict {
            self.threshold.saturating_sub(1)
        } else {
            self.threshold
        }
    }

    fn tick(&self, walk: &mut Walk) -> bool {
        walk.nodes += 1;
        if walk.nodes % NODE_BATCH == 0 {
            walk.alive = self.budget.charge(NODE_BATCH);
        }
        walk.alive
    }

    /// Walk from section `t` in `state`; `cost` is `w + 2 p` so far.
    fn walk(&self, t: usize, state: State, target: State, cost: u32, parity: u32, walk: &mut Walk) {
        if !self.tick(walk) {
            return;
        }
        let limit = self.limit();
        if state == 0 {
            if target == 0 && !walk.ones.is_empty() && t <= self.n {
                self.leaf(parity, walk);
            }
            let end = match (self.qc_period, walk.ones.is_empty()) {
                (Some(p), true) => p.min(self.n),
                _ => self.n,
            };
            let (after, bit) = self.spec.step(0, true);
            let step_cost = cost + 1 + 2 * u32::from(bit);
            for q in t..end {
                let rest = self.n - q - 1;
                let lb = self.cost.get(rest, after, target);
                if lb == u32::MAX || step_cost + lb > limit {
                    if matches!(self.cost, CostToGo::Zero(_)) {
                        break;
                    }
                    continue;
                }
                walk.ones.push(q);
                self.walk(q + 1, after, target, step_cost, parity + u32::from(bit), walk);
                walk.ones.pop();
                if !walk.alive {
                    return;
                }
            }
            return;
        }
        if t == self.n {
            if state == target {
                self.leaf(parity, walk);
            }
            return;
        }
        if walk.ones.is_empty() && self.qc_period.is_some_and(|p| t >= p) {
            return;
        }
        let rest = self.n - t - 1;
        for bit in [false, true] {
            let (next, out) = self.spec.step(state, bit);
            let c = cost + u32::from(bit) + 2 * u32::from(out);
            let lb = self.cost.get(rest, next, target);
            if lb == u32::MAX || c + lb > limit {
                continue;
            }
            if bit {
                walk.ones.push(t);
            }
            self.walk(t + 1, next, target, c, parity + u32::from(out), walk);
            if bit {
                walk.ones.pop();
            }
            if !walk.alive {
                return;
            }
        }
    }

    fn leaf(&self, parity: u32, walk: &mut Walk) {
        let ones = &walk.ones;
        let w = ones.len() as u32;
        if w + 2 * parity > self.limit() {
            return;
        }
        let mut other: Vec<usize> = ones.iter().map(|&t| self.to_other[t] as usize).collect();
        other.sort_unstable();
        let Some(other_parity) = self.other_parity(&other) else {
            return;
        };
        let owned = if self.strict {
            parity < other_parity
        } else {
            parity <= other_parity
        };
        let weight = w + parity + other_parity;
        if !owned || weight > self.threshold {
            return;
        }
        let copies = match self.qc_period {
            Some(p) => match orbit_size(ones, p, self.n) {
                Some(size) => size,
                None => return,
            },
            None => 1,
        };
        walk.tally.record(weight, copies, || {
            let mut input: Vec<u32> = ones.iter().map(|&t| self.to_input[t]).collect();
            input.sort_unstable();
            input
        });
    }

    fn other_parity(&self, positions: &[usize]) -> Option<u32> {
        let (w, end) = self.spec.sparse_parity(positions, 0, self.n);
        match self.mode {
            TerminationMode::Dual => (end == 0).then_some(w),
            TerminationMode::Tailbiting if end == 0 => Some(w),
            TerminationMode::Tailbiting => {
                let start = self.spec.circulation_state(self.n, end)?;
                Some(self.spec.sparse_parity(positions, start, self.n).0)
            }
        }
    }

    fn run(&self, seeds: &[(State, Option<usize>)], max_witnesses: usize) -> (Tally, u64) {
        let results: Vec<(Tally, u64)> = seeds
            .par_iter()
            .map(|&(s0, first)| {
                let mut walk = Walk {
                    ones: Vec::new(),
                    nodes: 0,
                    alive: true,
                    tally: Tally::new(max_witnesses),
                };
                match first {
                    Some(q) => {
                        let (after, bit) = self.spec.step(0, true);
                        let cost = 1 + 2 * u32::from(bit);
                        let lb = self.cost.get(self.n - q - 1, after, s0);
                        if lb != u32::MAX && cost + lb <= self.limit() {
                            walk.ones.push(q);
                            self.walk(q + 1, after, s0, cost, u32::from(bit), &mut walk);
                        }
                    }
                    None => self.walk(0, s0, s0, 0, 0, &mut walk),
                }
                self.budget.charge(walk.nodes % NODE_BATCH);
                (walk.tally, walk.nodes)
            })
            .collect();
        results
            .into_iter()
            .fold((Tally::new(max_witnesses), 0), |(t, n), (t2, n2)| (t.merge(t2), n + n2))
    }
}

/// Orbit size under cyclic shifts by multiples of `period`, or `None` when
/// `ones` is not the lexicographically least member of its orbit.
fn orbit_size(ones: &[usize], period: usize, n: usize) -> Option<u64> {
    let shifts = n / period;
    let mut stabilizer = 1u64;
    let mut shifted = Vec::with_capacity(ones.len());
    for k in 1..shifts {
        shifted.clear();
        shifted.extend(ones.iter().map(|&t| (t + k * period) % n));
        shifted.sort_unstable();
        match shifted.as_slice().cmp(ones) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Equal => stabilizer += 1,
            std::cmp::Ordering::Greater => {}
        }
    }
    Some(shifts as u64 / stabilizer)
}

/// Exact minimum distance and multiplicity of `code`, searching codewords up
/// to `config.weight_cap`.
pub fn exact_dmin(code: &TurboCode, mode: TerminationMode, config: &ExactConfig) -> Result<DminResult> {
    let n = code.len();
    let spec = code.spec();
    if config.weight_cap == 0 {
        return Err(Error::OutOfRange {
            value: 0,
            min: 1,
            max: u32::MAX as u64,
        });
    }
    let qc_period = match mode {
        TerminationMode::Tailbiting => {
            if spec.circulation_state(n, 1).is_none() {
                return Err(Error::TailbitingUnsolvable(n));
            }
            config.quasi_cyclic.then(|| code.qpp().qc_period() as usize)
        }
        TerminationMode::Dual => None,
    };
    let states = spec.num_states() as State;
    let seeds: Vec<(State, Option<usize>)> = {
        let first_limit = qc_period.unwrap_or(n).min(n);
        let mut seeds: Vec<_> = (0..first_limit).map(|q| (0, Some(q))).collect();
        if mode == TerminationMode::Tailbiting {
            seeds.extend((1..states).map(|s| (s, None)));
        }
        seeds
    };
    let cost = match mode {
        TerminationMode::Dual => CostToGo::Zero(spec.return_cost_table(1, 2)),
        TerminationMode::Tailbiting => CostToGo::Exact(spec.exact_step_costs(n, 1, 2)),
    };
    let upper_to_lower: Vec<u32> = (0..n).map(|i| code.lower_time(i) as u32).collect();
    let lower_to_input: Vec<u32> = (0..n).map(|t| code.lower_source(t) as u32).collect();
    let identity: Vec<u32> = (0..n as u32).collect();
    let budget = Budget {
        limit: config.budget_nodes,
        used: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };

    let cap = config.weight_cap;
    let thresholds: Vec<u32> = match config.initial_upper {
        Some(u) if u <= cap => vec![u],
        _ => {
            let mut ts = Vec::new();
            let mut t = cap.min(16);
            loop {
                ts.push(t);
                if t >= cap {
                    break;
                }
                t = (t + 6).min(cap);
            }
            ts
        }
    };

    let mut nodes = 0;
    for &threshold in &thresholds {
        log::debug!("exact search N={n} threshold={threshold}");
        let make = |strict: bool| Pass {
            spec,
            n,
            mode,
            to_other: if strict { lower_to_input.clone() } else { upper_to_lower.clone() },
            to_input: if strict { lower_to_input.clone() } else { identity.clone() },
            strict,
            threshold,
            cost: &cost,
            qc_period,
            budget: &budget,
        };
        let (upper, n_upper) = make(false).run(&seeds, config.max_witnesses);
        let (lower, n_lower) = make(true).run(&seeds, config.max_witnesses);
        nodes += n_upper + n_lower;
        if budget.exhausted.load(Ordering::Relaxed) {
            let best = upper.clone().merge(lower.clone()).best();
            return Err(Error::BudgetExhausted {
                budget: config.budget_nodes.unwrap_or(0),
                best_upper: config.initial_upper.or(best),
            });
        }
        let tally = upper.merge(lower);
        if let Some(d) = tally.best() {
            return Ok(DminResult {
                dmin: Some(d),
                multiplicity: tally.count(),
                exact: true,
                witnesses: tally.into_witnesses(),
                weight_cap_used: threshold,
                nodes,
            });
        }
    }
    Ok(DminResult {
        dmin: None,
        multiplicity: 0,
        exact: false,
        witnesses: Vec::new(),
        weight_cap_used: cap,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permpoly::Qpp;

    fn lte(n: u64, f1: u64, f2: u64) -> TurboCode {
        TurboCode::lte(Qpp::new(n, f1, f2).unwrap()).unwrap()
    }

    #[test]
    fn shortest_lte_rows() {
        let r = exact_dmin(&lte(40, 3, 10), TerminationMode::Dual, &ExactConfig::default()).unwrap();
        assert_eq!((r.dmin, r.multiplicity, r.exact), (Some(17), 11, true));
        let r = exact_dmin(&lte(48, 7, 12), TerminationMode::Dual, &ExactConfig::default()).unwrap();
        assert_eq!((r.dmin, r.multiplicity), (Some(17), 16));
    }

    #[test]
    fn witnesses_are_codewords_of_the_reported_weight() {
        let code = lte(64, 7, 16);
        let r = exact_dmin(&code, TerminationMode::Dual, &ExactConfig::default()).unwrap();
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            let word = DminResult::witness_word(w, code.len());
            let cw = code.encode(TerminationMode::Dual, &word).unwrap().unwrap();
            assert_eq!(Some(cw.weight()), r.dmin);
        }
    }

    #[test]
    fn initial_upper_does_not_change_the_answer() {
        let code = lte(56, 19, 42);
        let plain = exact_dmin(&code, TerminationMode::Dual, &ExactConfig::default()).unwrap();
        let seeded = ExactConfig {
            initial_upper: Some(plain.dmin.unwrap() + 3),
            ..ExactConfig::default()
        };
        let again = exact_dmin(&code, TerminationMode::Dual, &seeded).unwrap();
        assert_eq!((again.dmin, again.multiplicity), (plain.dmin, plain.multiplicity));
    }

    #[test]
    fn tailbiting_needs_a_circulation_state() {
        let err = exact_dmin(&lte(56, 19, 42), TerminationMode::Tailbiting, &ExactConfig::default()).unwrap_err();
        assert_eq!(err, Error::TailbitingUnsolvable(56));
    }

    #[test]
    fn budget_is_reported() {
        let config = ExactConfig {
            budget_nodes: Some(5),
            ..ExactConfig::default()
        };
        let err = exact_dmin(&lte(40, 3, 10), TerminationMode::Dual, &config).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { budget: 5, .. }));
    }
}

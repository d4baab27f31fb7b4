//! Distance estimation by matching constituent detours through the interleaver.
//!
//! Low-weight codewords of long codes split, on each encoder, into a few
//! short self-terminating detours. Starting from one input position per
//! quasi-cyclic class, the search repeatedly takes an input that is not yet
//! explained on one encoder and tries every inventory detour through it;
//! positions the detour adds become unexplained on the other encoder.
//! Closed sets are re-encoded at every orbit shift under the requested
//! termination, so each reported weight belongs to a real codeword.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{DminResult, Tally};
use crate::convcode::{Event, TerminationMode};
use crate::error::{Error, Result};
use crate::patterns::{critical_patterns, place_pattern};
use crate::turbo::{InterleaverDirection, TurboCode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateConfig {
    /// Initial weight threshold; codewords above it are never reported.
    pub weight_cap: u32,
    /// Largest total input weight of a matched codeword.
    pub max_input_weight: u32,
    /// Largest input weight of a single detour (weight-2 detours are always included).
    pub max_event_weight: u32,
    /// Largest span of detours with input weight three or more.
    pub max_event_span: u32,
    /// Weight-2 detours with separations `k (2^nu - 1)`, `k` up to this.
    pub weight2_multiples: u32,
    /// Codes up to this length get a second pass with a richer inventory.
    pub short_code_length: u32,
    /// Detour input weight, detour span and total input weight used by that second pass.
    pub short_event_weight: u32,
    pub short_event_span: u32,
    pub short_input_weight: u32,
    /// Node limit per root branch; the estimate stays an upper bound when hit.
    pub max_nodes_per_branch: Option<u64>,
    /// Additional candidate inputs (sorted positions), such as placed critical patterns.
    pub seeds: Vec<Vec<u32>>,
    pub max_witnesses: usize,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        Self {
            weight_cap: 60,
            max_input_weight: 9,
            max_event_weight: 3,
            max_event_span: 32,
            weight2_multiples: 6,
            short_code_length: 256,
            short_event_weight: 6,
            short_event_span: 32,
            short_input_weight: 7,
            max_nodes_per_branch: Some(2_000_000),
            seeds: Vec::new(),
            max_witnesses: 8,
        }
    }
}

#[derive(Debug, Clone)]
struct Detour {
    offsets: Vec<u32>,
    parity: u32,
}

impl Detour {
    fn span(&self) -> u32 {
        *self.offsets.last().expect("nonempty")
    }
}

#[derive(Debug, Clone, Copy)]
struct Input {
    pos: u32,
    times: [u32; 2],
    covered: [bool; 2],
}

struct Matcher<'a> {
    code: &'a TurboCode,
    mode: TerminationMode,
    period: u32,
    n: u32,
    detours: Vec<Detour>,
    max_span: u32,
    max_inputs: usize,
    // Least cost of explaining an input whose encoder has no other open input within reach.
    isolated_cost: u32,
    // Least parity per input over all detours, as a fraction.
    share: (u32, u32),
    max_nodes: Option<u64>,
}

struct Node {
    inputs: Vec<Input>,
    claimed: [Vec<(u32, u32)>; 2],
    cost: u32,
}

struct AnchorRun {
    threshold: u32,
    nodes: u64,
    seen: BTreeSet<Vec<u32>>,
    found: BTreeMap<Vec<u32>, u32>,
}

impl Matcher<'_> {
    fn time(&self, side: usize, pos: u32) -> u32 {
        if side == 0 {
            pos
        } else {
            self.code.lower_time(pos as usize) as u32
        }
    }

    fn source(&self, side: usize, time: u32) -> u32 {
        if side == 0 {
            time
        } else {
            self.code.lower_source(time as usize) as u32
        }
    }

    /// Forward cyclic distance from `a` to `b`.
    #[inline]
    fn ahead(&self, a: u32, b: u32) -> u32 {
        if b >= a {
            b - a
        } else {
            b + self.n - a
        }
    }

    fn overlaps(&self, a: (u32, u32), b: (u32, u32)) -> bool {
        // Intervals [start, start + span] on the cycle.
        self.ahead(a.0, b.0) <= a.1 || self.ahead(b.0, a.0) <= b.1
    }

    fn lower_bound(&self, inputs: &[Input]) -> u32 {
        let mut isolated = 0;
        let mut shared = 0;
        for side in 0..2 {
            for (i, a) in inputs.iter().enumerate() {
                if a.covered[side] {
                    continue;
                }
                let near = inputs.iter().enumerate().any(|(j, b)| {
                    j != i && !b.covered[side] && {
                        let d = self.ahead(a.times[side], b.times[side]);
                        d.min(self.n - d) <= self.max_span
                    }
                });
                if near {
                    shared += 1;
                } else {
                    isolated += 1;
                }
            }
        }
        isolated * self.isolated_cost + (shared * self.share.0).div_ceil(self.share.1)
    }

    fn search(&self, node: &mut Node, run: &mut AnchorRun) {
        run.nodes += 1;
        if self.max_nodes.is_some_and(|m| run.nodes > m) {
            return;
        }
        if node.inputs.iter().all(|i| i.covered == [true; 2]) {
            let mut key: Vec<u32> = node.inputs.iter().map(|i| i.pos).collect();
            key.sort_unstable();
            if node.cost <= run.threshold && run.seen.insert(key.clone()) {
                record_orbit(self.code, self.mode, &key, self.period, &mut run.found);
                run.threshold = run.threshold.min(least(&run.found));
            }
            return;
        }
        let threshold = run.threshold;
        self.expand(
            node,
            &mut |child, _| {
                self.search(child, run);
                run.threshold
            },
            threshold,
        );
    }

    /// Applies every admissible detour through the first unexplained input,
    /// handing each child to `visit`, which returns the threshold to continue with.
    fn expand(&self, node: &mut Node, visit: &mut dyn FnMut(&mut Node, u32) -> u32, mut threshold: u32) {
        let Some((idx, side)) = node
            .inputs
            .iter()
            .enumerate()
            .find_map(|(i, inp)| (0..2).find(|&s| !inp.covered[s]).map(|s| (i, s)))
        else {
            return;
        };
        let t = node.inputs[idx].times[side];
        // Every codeword orbit has a shift whose least residue input is the root.
        let anchor = node.inputs[0].pos % self.period;
        let open: Vec<(u32, usize)> = node
            .inputs
            .iter()
            .enumerate()
            .filter(|(j, inp)| *j != idx && !inp.covered[side])
            .map(|(j, inp)| (inp.times[side], j))
            .collect();
        let mut claim: Vec<usize> = Vec::with_capacity(8);
        let mut added: Vec<u32> = Vec::with_capacity(8);
        for detour in &self.detours {
            if node.cost + detour.parity > threshold {
                break;
            }
            let span = detour.span();
            let weight = detour.offsets.len();
            if node.cost + detour.parity + (weight - 1).saturating_sub(open.len()) as u32 > threshold {
                continue;
            }
            for &o in &detour.offsets {
                let start = self.ahead(o, t);
                let interval = (start, span);
                if node.claimed[side].iter().any(|&c| self.overlaps(c, interval)) {
                    continue;
                }
                // Open inputs inside the interval must sit on detour positions;
                // every other detour position is a new input.
                claim.clear();
                let mut stray = false;
                for &(time, j) in &open {
                    let d = self.ahead(start, time);
                    if d <= span {
                        if detour.offsets.binary_search(&d).is_ok() {
                            claim.push(j);
                        } else {
                            stray = true;
                            break;
                        }
                    }
                }
                if stray {
                    continue;
                }
                let fresh = weight - 1 - claim.len();
                let cost = node.cost + detour.parity + fresh as u32;
                if cost > threshold || node.inputs.len() + fresh > self.max_inputs {
                    continue;
                }
                added.clear();
                let mut below_anchor = false;
                for &d in &detour.offsets {
                    let time = self.ahead(self.n - d, start);
                    if time != t && !open.iter().any(|&(ot, _)| ot == time) {
                        let pos = self.source(side, time);
                        below_anchor |= pos % self.period < anchor;
                        added.push(pos);
                    }
                }
                if below_anchor {
                    continue;
                }
                let before = node.inputs.len();
                claim.push(idx);
                for &j in &claim {
                    node.inputs[j].covered[side] = true;
                }
                for &pos in &added {
                    let mut covered = [false; 2];
                    covered[side] = true;
                    node.inputs.push(Input {
                        pos,
                        times: [self.time(0, pos), self.time(1, pos)],
                        covered,
                    });
                }
                if cost + self.lower_bound(&node.inputs) <= threshold {
                    node.claimed[side].push(interval);
                    let saved = node.cost;
                    node.cost = cost;
                    threshold = visit(node, threshold);
                    node.cost = saved;
                    node.claimed[side].pop();
                }
                node.inputs.truncate(before);
                for &j in &claim {
                    node.inputs[j].covered[side] = false;
                }
            }
        }
    }
}

/// Detours of input weight up to `max_weight` whose weight `w + p` stays within `cap`.
fn inventory(code: &TurboCode, multiples: u32, max_weight: u32, max_span: u32, cap: u32) -> Vec<Detour> {
    let spec = code.spec();
    let period = spec.period() as u32;
    let mut detours: Vec<Detour> = (1..=multiples)
        .map(|k| Detour {
            offsets: vec![0, k * period],
            parity: spec.weight2_event_weight(k),
        })
        .collect();
    if max_weight >= 3 {
        let longer: Vec<Event> = spec.events(max_weight, cap.saturating_sub(3), max_span + 1);
        detours.extend(longer.into_iter().filter(|e| e.input_weight() >= 3).map(|e| Detour {
            offsets: e.inputs,
            parity: e.parity_weight,
        }));
    }
    detours.retain(|d| (d.span() as usize) < code.len() && d.parity + d.offsets.len() as u32 <= cap);
    detours.sort_by(|a, b| (a.parity, a.offsets.len(), &a.offsets).cmp(&(b.parity, b.offsets.len(), &b.offsets)));
    detours
}

/// Some codeword, however heavy, so that the estimate always carries a witness.
fn fallback(code: &TurboCode, mode: TerminationMode) -> Result<Vec<u32>> {
    let n = code.len();
    match mode {
        TerminationMode::Tailbiting => {
            if code.spec().circulation_state(n, 1).is_none() {
                return Err(Error::TailbitingUnsolvable(n));
            }
            Ok(vec![0])
        }
        TerminationMode::Dual => {
            // More columns than constraint rows forces a dependency.
            let constraints = code.dual_constraints();
            let mut basis: Vec<(u32, Vec<u32>)> = Vec::new();
            for (i, &col) in constraints.columns().iter().enumerate() {
                let mut v = col;
                let mut set = BTreeSet::from([i as u32]);
                for (b, members) in &basis {
                    if v ^ b < v {
                        v ^= b;
                        for m in members {
                            if !set.remove(m) {
                                set.insert(*m);
                            }
                        }
                    }
                }
                if v == 0 {
                    return Ok(set.into_iter().collect());
                }
                basis.push((v, set.into_iter().collect()));
                basis.sort_by(|a, b| b.0.cmp(&a.0));
            }
            Err(Error::Unsupported(format!("no dual-terminated codeword found for N={n}")))
        }
    }
}

/// Evaluates every quasi-cyclic shift of `positions` and records the valid codewords.
fn record_orbit(code: &TurboCode, mode: TerminationMode, positions: &[u32], period: u32, found: &mut BTreeMap<Vec<u32>, u32>) {
    let n = code.len() as u32;
    let mut shifted: Vec<usize> = Vec::with_capacity(positions.len());
    for k in 0..n / period {
        shifted.clear();
        shifted.extend(positions.iter().map(|&p| ((p + k * period) % n) as usize));
        shifted.sort_unstable();
        let key: Vec<u32> = shifted.iter().map(|&p| p as u32).collect();
        if found.contains_key(&key) {
            continue;
        }
        if let Some(w) = code.sparse_weight(mode, &shifted) {
            found.insert(key, w);
        }
    }
}

fn run_matching(
    code: &TurboCode,
    mode: TerminationMode,
    config: &EstimateConfig,
    detours: Vec<Detour>,
    max_inputs: u32,
    threshold: u32,
    found: &mut BTreeMap<Vec<u32>, u32>,
) -> u64 {
    let n = code.len() as u32;
    let period = code.qpp().qc_period() as u32;
    let isolated_cost = detours
        .iter()
        .map(|d| d.parity + d.offsets.len() as u32 - 1)
        .min()
        .unwrap_or(u32::MAX / 4);
    let share = detours
        .iter()
        .map(|d| (d.parity, d.offsets.len() as u32))
        .min_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)))
        .unwrap_or((1, 1));
    let max_span = detours.iter().map(Detour::span).max().unwrap_or(0);
    let matcher = Matcher {
        code,
        mode,
        period,
        n,
        detours,
        max_span,
        max_inputs: max_inputs as usize,
        isolated_cost,
        share,
        max_nodes: config.max_nodes_per_branch,
    };
    let mut roots: Vec<Node> = Vec::new();
    for anchor in 0..period.min(n) {
        let mut node = Node {
            inputs: vec![Input {
                pos: anchor,
                times: [matcher.time(0, anchor), matcher.time(1, anchor)],
                covered: [false; 2],
            }],
            claimed: [Vec::new(), Vec::new()],
            cost: 1,
        };
        matcher.expand(
            &mut node,
            &mut |child, t| {
                roots.push(Node {
                    inputs: child.inputs.clone(),
                    claimed: child.claimed.clone(),
                    cost: child.cost,
                });
                t
            },
            threshold,
        );
    }
    let runs: Vec<AnchorRun> = roots
        .into_par_iter()
        .map(|mut node| {
            let mut run = AnchorRun {
                threshold,
                nodes: 0,
                seen: BTreeSet::new(),
                found: BTreeMap::new(),
            };
            matcher.search(&mut node, &mut run);
            run
        })
        .collect();
    let nodes = runs.iter().map(|r| r.nodes).sum();
    for run in runs {
        found.extend(run.found);
    }
    nodes
}

/// Thresholds 16, 24, 32, ... capped by and ending at `cap`.
fn ladder(cap: u32) -> Vec<u32> {
    let mut steps: Vec<u32> = (2..).map(|k| 8 * k).take_while(|&t| t < cap).collect();
    steps.push(cap);
    steps
}

fn least(found: &BTreeMap<Vec<u32>, u32>) -> u32 {
    found.values().copied().min().unwrap_or(u32::MAX)
}

/// Upper bound on the minimum distance with an estimated multiplicity.
pub fn estimate_dmin(code: &TurboCode, mode: TerminationMode, config: &EstimateConfig) -> Result<DminResult> {
    let n = code.len() as u32;
    let period = code.qpp().qc_period() as u32;

    // Seeds give every anchor a common starting threshold.
    let mut found: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    let mut seeds = config.seeds.clone();
    if code.direction() == InterleaverDirection::Forward {
        let patterns = critical_patterns(code.qpp(), code.spec(), 2)?;
        seeds.extend(patterns.iter().filter_map(place_pattern).map(|p| p.input_positions));
    }
    for seed in &seeds {
        if seed.iter().all(|&p| p < n) && !seed.is_empty() {
            record_orbit(code, mode, seed, period, &mut found);
        }
    }
    let threshold = config.weight_cap.min(least(&found));
    // Independent branches cannot share a shrinking threshold, so raise it in steps.
    let mut nodes = 0;
    for step in ladder(threshold) {
        let detours = inventory(
            code,
            config.weight2_multiples,
            config.max_event_weight,
            config.max_event_span,
            step,
        );
        let detour_count = detours.len();
        nodes += run_matching(code, mode, config, detours, config.max_input_weight, step, &mut found);
        log::debug!("estimate N={n} threshold={step} detours={detour_count} nodes={nodes} best={:?}", least(&found));
        if least(&found) <= step {
            break;
        }
    }

    if n <= config.short_code_length {
        let threshold = threshold.min(least(&found));
        let span = config.short_event_span.min(n - 1);
        let multiples = config.weight2_multiples.max(span / code.spec().period() as u32);
        let detours = inventory(code, multiples, config.short_event_weight, span, threshold);
        nodes += run_matching(code, mode, config, detours, config.short_input_weight, threshold, &mut found);
    }

    if found.is_empty() {
        let witness = fallback(code, mode)?;
        record_orbit(code, mode, &witness, period, &mut found);
    }
    let threshold = threshold.min(least(&found));
    found.retain(|_, w| *w <= threshold);

    let mut tally = Tally::new(config.max_witnesses);
    for (positions, w) in &found {
        tally.record(*w, 1, || positions.clone());
    }
    Ok(DminResult {
        dmin: tally.best(),
        multiplicity: tally.count(),
        exact: false,
        witnesses: tally.into_witnesses(),
        weight_cap_used: config.weight_cap,
        nodes,
    })
}

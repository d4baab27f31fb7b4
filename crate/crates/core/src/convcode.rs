//! Rate-1 recursive systematic convolutional constituent encoder.
//!
//! The state is the `nu`-bit content of the feedback shift register. Bit 0
//! holds the most recent register value `a[t-1]`, bit `i` holds `a[t-1-i]`.
//! Polynomials are bitmasks with bit `i` the coefficient of `D^i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type State = u16;

pub const MAX_NU: u32 = 12;

/// How both constituent trellises are closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TerminationMode {
    /// Start state equals end state.
    Tailbiting,
    /// Both trellises start and end in the zero state.
    Dual,
}

impl std::str::FromStr for TerminationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tailbiting" | "tb" => Ok(Self::Tailbiting),
            "dual" => Ok(Self::Dual),
            other => Err(Error::Unsupported(format!("unknown termination mode {other:?}"))),
        }
    }
}

/// A self-terminating detour from the zero state back to the zero state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Event {
    /// Input offsets relative to the first input one (so `inputs[0] == 0`).
    pub inputs: Vec<u32>,
    pub parity_weight: u32,
}

impl Event {
    /// Trellis sections covered; the state returns to zero on the last input one.
    pub fn length(&self) -> u32 {
        self.inputs.last().map_or(0, |&l| l + 1)
    }

    pub fn span(&self) -> u32 {
        self.inputs.last().copied().unwrap_or(0)
    }

    pub fn input_weight(&self) -> u32 {
        self.inputs.len() as u32
    }

    /// Systematic plus parity weight.
    pub fn weight(&self) -> u32 {
        self.input_weight() + self.parity_weight
    }
}

/// Degree `nu`, primitive feedback and monic feedforward polynomials.
#[derive(Debug, Clone)]
pub struct ConstituentSpec {
    nu: u32,
    feedback: u32,
    feedforward: u32,
    next: Vec<[State; 2]>,
    out: Vec<[u8; 2]>,
    period: usize,
    // cycle_state[s][j]: state after j zero-input steps from s, j < period.
    cycle_state: Vec<Vec<State>>,
    // cycle_weight[s][j]: parity weight emitted by those j steps, j <= period.
    cycle_weight: Vec<Vec<u32>>,
}

impl PartialEq for ConstituentSpec {
    fn eq(&self, other: &Self) -> bool {
        (self.nu, self.feedback, self.feedforward) == (other.nu, other.feedback, other.feedforward)
    }
}

impl Eq for ConstituentSpec {}

impl ConstituentSpec {
    /// Feedback `1 + D^2 + D^3`, feedforward `1 + D + D^3`.
    pub fn lte() -> Self {
        Self::new(3, 0b1101, 0b1011).expect("LTE polynomials are valid")
    }

    /// A stock encoder of degree `nu` (2 to 6): the LTE pair for 3, otherwise a
    /// primitive trinomial feedback with feedforward `1 + D^nu`.
    pub fn with_degree(nu: u32) -> Result<Self> {
        let feedback = match nu {
            2 => 0b111,
            3 => return Ok(Self::lte()),
            4 => 0b1_0011,
            5 => 0b10_0101,
            6 => 0b100_0011,
            _ => return Err(Error::InvalidEncoder(format!("no stock encoder of degree {nu}"))),
        };
        Self::new(nu, feedback, 1 << nu | 1)
    }

    pub fn new(nu: u32, feedback: u32, feedforward: u32) -> Result<Self> {
        if !(2..=MAX_NU).contains(&nu) {
            return Err(Error::InvalidEncoder(format!("degree {nu} outside [2, {MAX_NU}]")));
        }
        let top = 1u32 << nu;
        for (name, poly) in [("feedback", feedback), ("feedforward", feedforward)] {
            if poly >> (nu + 1) != 0 || poly & top == 0 || poly & 1 == 0 {
                return Err(Error::InvalidEncoder(format!(
                    "{name} polynomial {poly:#b} must have degree {nu} with unit constant term"
                )));
            }
        }
        let states = 1usize << nu;
        let mask = (states - 1) as u32;
        let fb_taps = (feedback >> 1) & mask;
        let ff_taps = (feedforward >> 1) & mask;
        let mut next = vec![[0; 2]; states];
        let mut out = vec![[0; 2]; states];
        for s in 0..states {
            for u in 0..2u32 {
                let a = u ^ ((s as u32 & fb_taps).count_ones() & 1);
                let p = a ^ ((s as u32 & ff_taps).count_ones() & 1);
                next[s][u as usize] = (((s as u32) << 1 | a) & mask) as State;
                out[s][u as usize] = p as u8;
            }
        }
        let period = states - 1;
        // Primitive feedback: zero-input evolution from state 1 visits every nonzero state.
        let mut s = 1usize;
        for step in 1..=period {
            s = next[s][0] as usize;
            if s == 1 && step < period || s == 0 {
                return Err(Error::InvalidEncoder(format!("feedback polynomial {feedback:#b} is not primitive")));
            }
        }
        if s != 1 {
            return Err(Error::InvalidEncoder(format!("feedback polynomial {feedback:#b} is not primitive")));
        }
        let mut cycle_state = vec![vec![0; period]; states];
        let mut cycle_weight = vec![vec![0; period + 1]; states];
        for s0 in 0..states {
            let mut s = s0;
            for j in 0..period {
                cycle_state[s0][j] = s as State;
                cycle_weight[s0][j + 1] = cycle_weight[s0][j] + u32::from(out[s][0]);
                s = next[s][0] as usize;
            }
        }
        Ok(Self {
            nu,
            feedback,
            feedforward,
            next,
            out,
            period,
            cycle_state,
            cycle_weight,
        })
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn feedback(&self) -> u32 {
        self.feedback
    }

    pub fn feedforward(&self) -> u32 {
        self.feedforward
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    /// `2^nu - 1`, the period of the zero-input state sequence.
    pub fn period(&self) -> usize {
        self.period
    }

    /// The 8-state pair used by the LTE turbo code.
    pub fn is_lte(&self) -> bool {
        (self.nu, self.feedback, self.feedforward) == (3, 0b1101, 0b1011)
    }

    /// One trellis section: `(next_state, parity_bit)`.
    #[inline]
    pub fn step(&self, state: State, bit: bool) -> (State, u8) {
        let s = state as usize;
        (self.next[s][bit as usize], self.out[s][bit as usize])
    }

    /// Runs `len` zero-input sections from `state`: `(end_state, parity_weight)`.
    #[inline]
    pub fn skip_zeros(&self, state: State, len: usize) -> (State, u32) {
        let s = state as usize;
        let full = (len / self.period) as u32;
        let rem = len % self.period;
        (self.cycle_state[s][rem], full * self.cycle_weight[s][self.period] + self.cycle_weight[s][rem])
    }

    /// Parity weight and end state for the input with ones exactly at the
    /// sorted `positions`, over `len` sections starting from `start`.
    pub fn sparse_parity(&self, positions: &[usize], start: State, len: usize) -> (u32, State) {
        let mut state = start;
        let mut weight = 0;
        let mut t = 0;
        for &p in positions {
            debug_assert!(p >= t && p < len);
            let (s, w) = self.skip_zeros(state, p - t);
            let (s, bit) = self.step(s, true);
            state = s;
            weight += w + u32::from(bit);
            t = p + 1;
        }
        let (s, w) = self.skip_zeros(state, len - t);
        (weight + w, s)
    }

    /// Encodes `input` from `start_state`: `(parity, end_state)`.
    pub fn encode_from_state(&self, input: &[bool], start_state: State) -> (Vec<bool>, State) {
        let mut state = start_state & (self.num_states() - 1) as State;
        let parity = input
            .iter()
            .map(|&u| {
                let (s, p) = self.step(state, u);
                state = s;
                p == 1
            })
            .collect();
        (parity, state)
    }

    /// State reached after `len` zero-input sections, applied to every basis state.
    fn power_columns(&self, len: usize) -> Vec<State> {
        (0..self.nu).map(|i| self.skip_zeros(1 << i, len).0).collect()
    }

    /// Start state `s` with `s == A^len s + zero_start_end`, when unique.
    pub fn circulation_state(&self, len: usize, zero_start_end: State) -> Option<State> {
        // Columns of I + A^len.
        let cols: Vec<u32> = self
            .power_columns(len)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (c ^ (1 << i)) as u32)
            .collect();
        solve_gf2(&cols, zero_start_end as u32, self.nu).map(|s| s as State)
    }

    /// Tailbiting encoding; `None` when `I + A^N` is singular for this length.
    pub fn encode_tailbiting(&self, input: &[bool]) -> Option<Vec<bool>> {
        let (_, zsr) = self.encode_from_state(input, 0);
        let start = self.circulation_state(input.len(), zsr)?;
        let (parity, end) = self.encode_from_state(input, start);
        debug_assert_eq!(end, start);
        Some(parity)
    }

    /// Parity weight of the weight-2 detour with separation `k * (2^nu - 1)`.
    pub fn weight2_event_weight(&self, multiple: u32) -> u32 {
        let sep = multiple as usize * self.period;
        let (w, end) = self.sparse_parity(&[0, sep], 0, sep + 1);
        debug_assert_eq!(end, 0);
        w
    }

    /// All detours with input weight, parity weight and length within the limits.
    pub fn events(&self, max_input_weight: u32, max_parity: u32, max_length: u32) -> Vec<Event> {
        let mut found = Vec::new();
        if max_input_weight < 2 || max_length < 2 {
            return found;
        }
        let (s0, p0) = self.step(0, true);
        let mut inputs = vec![0u32];
        self.extend_events(
            s0,
            u32::from(p0),
            1,
            &mut inputs,
            (max_input_weight, max_parity, max_length),
            &mut found,
        );
        found.sort_by(|a, b| (a.weight(), a.length(), &a.inputs).cmp(&(b.weight(), b.length(), &b.inputs)));
        found
    }

    fn extend_events(
        &self,
        state: State,
        parity: u32,
        t: u32,
        inputs: &mut Vec<u32>,
        limits: (u32, u32, u32),
        found: &mut Vec<Event>,
    ) {
        let (max_w, max_p, max_len) = limits;
        if t >= max_len || parity > max_p {
            return;
        }
        for bit in [false, true] {
            if bit && inputs.len() as u32 >= max_w {
                continue;
            }
            let (s, p) = self.step(state, bit);
            let parity = parity + u32::from(p);
            if parity > max_p {
                continue;
            }
            if bit {
                inputs.push(t);
            }
            if s == 0 {
                found.push(Event {
                    inputs: inputs.clone(),
                    parity_weight: parity,
                });
            } else {
                self.extend_events(s, parity, t + 1, inputs, limits, found);
            }
            if bit {
                inputs.pop();
            }
        }
    }

    /// `table[r][s]`: least `input_cost * inputs + parity_cost * parity` needed
    /// to drive state `s` to zero within `r` sections (`u32::MAX` if impossible).
    /// Rows stop once they converge; index with `r.min(table.len() - 1)`.
    pub fn return_cost_table(&self, input_cost: u32, parity_cost: u32) -> Vec<Vec<u32>> {
        let states = self.num_states();
        let mut row = vec![u32::MAX; states];
        row[0] = 0;
        let mut table = vec![row];
        loop {
            let prev = table.last().expect("nonempty");
            let mut cur = prev.clone();
            for s in 0..states {
                for bit in [false, true] {
                    let (n, p) = self.step(s as State, bit);
                    let rest = prev[n as usize];
                    if rest != u32::MAX {
                        let c = rest + input_cost * u32::from(bit) + parity_cost * u32::from(p);
                        cur[s] = cur[s].min(c);
                    }
                }
            }
            if &cur == prev {
                break;
            }
            table.push(cur);
        }
        table
    }

    /// `table[r][a][b]`: least cost of a path from `a` to `b` in exactly `r` sections.
    pub(crate) fn exact_step_costs(&self, max_len: usize, input_cost: u32, parity_cost: u32) -> Vec<Vec<Vec<u32>>> {
        let states = self.num_states();
        let mut table = Vec::with_capacity(max_len + 1);
        let mut first = vec![vec![u32::MAX; states]; states];
        for (s, row) in first.iter_mut().enumerate() {
            row[s] = 0;
        }
        table.push(first);
        for _ in 0..max_len {
            let prev = table.last().expect("nonempty");
            let mut cur = vec![vec![u32::MAX; states]; states];
            for a in 0..states {
                for bit in [false, true] {
                    let (n, p) = self.step(a as State, bit);
                    let c = input_cost * u32::from(bit) + parity_cost * u32::from(p);
                    for b in 0..states {
                        let rest = prev[n as usize][b];
                        if rest != u32::MAX {
                            cur[a][b] = cur[a][b].min(rest + c);
                        }
                    }
                }
            }
            table.push(cur);
        }
        table
    }
}

/// Solves `M x = rhs` over GF(2) for a square matrix given by columns;
/// `None` when singular.
pub(crate) fn solve_gf2(cols: &[u32], rhs: u32, n: u32) -> Option<u32> {
    // Row-major augmented matrix.
    let n = n as usize;
    let mut rows: Vec<(u32, u32)> = (0..n)
        .map(|r| {
            let bits = cols
                .iter()
                .enumerate()
                .fold(0u32, |acc, (c, &col)| acc | (((col >> r) & 1) << c));
            (bits, (rhs >> r) & 1)
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n).find(|&r| rows[r].0 >> c & 1 == 1)?;
        rows.swap(c, pivot);
        let (pb, pr) = rows[c];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != c && row.0 >> c & 1 == 1 {
                row.0 ^= pb;
                row.1 ^= pr;
            }
        }
    }
    Some(rows.iter().enumerate().fold(0u32, |acc, (c, row)| acc | (row.1 << c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stock_encoders() {
        for nu in 2..=6 {
            let spec = ConstituentSpec::with_degree(nu).unwrap();
            assert_eq!(spec.nu(), nu);
            assert_eq!(spec.period(), (1 << nu) - 1);
        }
        assert!(ConstituentSpec::with_degree(3).unwrap().is_lte());
        assert!(ConstituentSpec::with_degree(7).is_err());
    }

    fn ones_at(len: usize, positions: &[usize]) -> Vec<bool> {
        let mut v = vec![false; len];
        for &p in positions {
            v[p] = true;
        }
        v
    }

    fn weight(bits: &[bool]) -> usize {
        bits.iter().filter(|&&b| b).count()
    }

    #[test]
    fn zero_input_is_silent() {
        let spec = ConstituentSpec::lte();
        let (parity, end) = spec.encode_from_state(&[false; 16], 0);
        assert_eq!(weight(&parity), 0);
        assert_eq!(end, 0);
    }

    #[test]
    fn weight_two_detours() {
        let spec = ConstituentSpec::lte();
        let (parity, end) = spec.encode_from_state(&ones_at(12, &[0, 7]), 0);
        assert_eq!((weight(&parity), end), (6, 0));
        let (parity, end) = spec.encode_from_state(&ones_at(20, &[0, 14]), 0);
        assert_eq!((weight(&parity), end), (10, 0));
        assert_eq!(spec.weight2_event_weight(1), 6);
        assert_eq!(spec.weight2_event_weight(2), 10);
        let nu4 = ConstituentSpec::new(4, 0b10011, 0b11111).unwrap();
        let (parity, end) = nu4.encode_from_state(&ones_at(16, &[0, 15]), 0);
        assert_eq!((weight(&parity), end), (10, 0));
        assert_eq!(nu4.weight2_event_weight(1), 10);
    }

    #[test]
    fn sparse_matches_dense() {
        let spec = ConstituentSpec::lte();
        let pos = [3usize, 9, 10, 31, 50];
        let (dense, end) = spec.encode_from_state(&ones_at(64, &pos), 5);
        assert_eq!(spec.sparse_parity(&pos, 5, 64), (weight(&dense) as u32, end));
    }

    #[test]
    fn rejects_bad_polynomials() {
        // 1 + D + D^2 + D^3 is not primitive.
        assert!(ConstituentSpec::new(3, 0b1111, 0b1011).is_err());
        // Feedforward without D^3 term is not monic of degree 3.
        assert!(ConstituentSpec::new(3, 0b1101, 0b0011).is_err());
        assert!(ConstituentSpec::new(1, 0b11, 0b11).is_err());
    }

    #[test]
    fn tailbiting() {
        let spec = ConstituentSpec::lte();
        let zero = spec.encode_tailbiting(&[false; 40]).unwrap();
        assert_eq!(weight(&zero), 0);
        let input = ones_at(40, &[0, 7]);
        let (direct, _) = spec.encode_from_state(&input, 0);
        assert_eq!(spec.encode_tailbiting(&input).unwrap(), direct);
        assert!(spec.encode_tailbiting(&ones_at(56, &[3])).is_none());
        // A nonzero circulation state round-trips.
        let input = ones_at(40, &[1, 5, 22]);
        let parity = spec.encode_tailbiting(&input).unwrap();
        assert_eq!(parity.len(), 40);
    }

    #[test]
    fn event_inventory_contains_known_detours() {
        let spec = ConstituentSpec::lte();
        let events = spec.events(3, 12, 16);
        assert!(events.iter().any(|e| e.inputs == [0, 7] && e.parity_weight == 6));
        assert!(events.iter().any(|e| e.inputs == [0, 8, 12] && e.parity_weight == 7));
        assert!(events.iter().any(|e| e.inputs == [0, 2, 3] && e.parity_weight == 3));
        for e in &events {
            let len = e.length() as usize;
            let pos: Vec<usize> = e.inputs.iter().map(|&i| i as usize).collect();
            assert_eq!(spec.sparse_parity(&pos, 0, len), (e.parity_weight, 0));
        }
    }

    #[test]
    fn return_costs() {
        let spec = ConstituentSpec::lte();
        let table = spec.return_cost_table(1, 2);
        let last = table.last().unwrap();
        assert_eq!(last[0], 0);
        assert!(last.iter().all(|&c| c < u32::MAX));
        assert_eq!(table[0][1], u32::MAX);
    }
}

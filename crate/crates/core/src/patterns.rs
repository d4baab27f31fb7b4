//! Critical low input-weight codeword templates and their placement.
//!
//! Each template is a set of short fundamental paths on both encoders whose
//! input positions are tied together by the interleaver `f` and an inverse
//! polynomial `g`. A template is a codeword exactly when a modular
//! congruence in `f1`, `f2` and the coefficients of `g` holds, and that
//! congruence does not depend on where the template starts.
//!
//! Positions follow the forward convention of [`TurboCode`](crate::TurboCode):
//! the template's input positions are upper-encoder times, and the lower
//! encoder sees input position `i` at time `g(i)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{add_mod, mul_mod, reduce_signed};
use crate::convcode::ConstituentSpec;
use crate::error::{Error, Result};
use crate::permpoly::{ModPolynomial, PermPoly, Qpp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    /// Input weight 6: three weight-2 paths against two weight-3 paths.
    Fig1,
    /// Input weight 9: three weight-3 paths on each encoder.
    Fig2,
    /// Input weight 4: two weight-2 paths on each encoder.
    Fig3,
    /// Input weight 6: weight-2 paths of separations `a, 2a, a` on both encoders.
    Fig4,
    /// Like `Fig4` with the long path moved to the start of the lower encoder.
    Fig5,
}

impl Figure {
    pub fn input_weight(self) -> usize {
        match self {
            Self::Fig1 | Self::Fig4 | Self::Fig5 => 6,
            Self::Fig2 => 9,
            Self::Fig3 => 4,
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
        };
        f.write_str(s)
    }
}

/// The `(|a'|, |b'|)` pairs of the weight-4 template, in table order.
pub const TABLE_I_ROWS: [(u32, u32); 6] = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)];

/// Offsets of the weight-3 paths used by the first two templates.
const B: i64 = 8;
const C: i64 = 12;

/// One fundamental path: a start time and signed offsets (the first is zero).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Path {
    start: u64,
    offsets: Vec<i64>,
}

impl Path {
    fn new(start: u64, offsets: &[i64]) -> Self {
        Self {
            start,
            offsets: offsets.to_vec(),
        }
    }

    fn points(&self, n: u64) -> impl Iterator<Item = u64> + '_ {
        self.offsets
            .iter()
            .map(move |&o| reduce_signed(self.start as i128 + o as i128, n))
    }

    fn wraps(&self, n: u64) -> bool {
        self.offsets.iter().any(|&o| {
            let t = self.start as i128 + o as i128;
            t < 0 || t >= n as i128
        })
    }

    /// First and last trellis section touched, for a path that does not wrap.
    fn interval(&self) -> (i128, i128) {
        let lo = *self.offsets.iter().min().expect("nonempty");
        let hi = *self.offsets.iter().max().expect("nonempty");
        (self.start as i128 + lo as i128, self.start as i128 + hi as i128)
    }

    fn span(&self) -> u64 {
        let lo = *self.offsets.iter().min().expect("nonempty");
        let hi = *self.offsets.iter().max().expect("nonempty");
        (hi - lo) as u64
    }

    /// Offsets shifted to start at zero, as trellis positions.
    fn shape(&self) -> Vec<usize> {
        let lo = *self.offsets.iter().min().expect("nonempty");
        let mut s: Vec<usize> = self.offsets.iter().map(|&o| (o - lo) as usize).collect();
        s.sort_unstable();
        s
    }
}

/// Paths on the upper encoder (times are input positions) and on the lower
/// encoder (times are `g` of input positions).
#[derive(Debug, Clone)]
struct Layout {
    upper: Vec<Path>,
    lower: Vec<Path>,
}

/// A critical codeword template for one interleaver.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalPattern {
    pub figure: Figure,
    /// Signed path offsets (`a`, `b`, `c`, `d`), plus `l`, `a'` and `b'` where they apply.
    pub params: BTreeMap<String, i64>,
    /// Input positions with the template started at zero (paths may wrap).
    pub input_positions: Vec<u64>,
    /// Sum of the path weights; the codeword weight when no paths overlap.
    pub predicted_weight_cap: u32,
    pub congruence_holds: bool,
    #[serde(skip)]
    qpp: Qpp,
    #[serde(skip)]
    inverse: PermPoly,
    #[serde(skip)]
    spec: ConstituentSpec,
}

/// A template started at offset `x` with no path crossing the block end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub x: u64,
    pub input_positions: Vec<u32>,
    /// Paths on one encoder share trellis sections, so the encoded weight
    /// can differ from the summed path weights.
    pub overlapping: bool,
}

impl Placement {
    pub fn input_word(&self, n: usize) -> Vec<bool> {
        let mut word = vec![false; n];
        for &p in &self.input_positions {
            word[p as usize] = true;
        }
        word
    }
}

/// `g1 + g2 t + ... + gL t^(L-1) (mod N)`.
fn g_tail(g: &PermPoly, t: i64) -> u64 {
    let n = g.modulus();
    let t = reduce_signed(t as i128, n);
    g.coeffs().iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, t, n), c, n))
}

/// Product of signed factors modulo `n`.
fn prod(n: u64, factors: &[i128]) -> u64 {
    factors
        .iter()
        .fold(1 % n, |acc, &f| mul_mod(acc, reduce_signed(f, n), n))
}

fn check_inverse(q: &Qpp, g: &PermPoly) -> Result<()> {
    if g.is_inverse_of(q) {
        Ok(())
    } else {
        Err(Error::NotInverse(q.modulus()))
    }
}

fn require_lte(spec: &ConstituentSpec, figure: Figure) -> Result<()> {
    if spec.is_lte() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{figure} is defined for the 1 + D^2 + D^3 / 1 + D + D^3 encoder pair only"
        )))
    }
}

fn param(p: &BTreeMap<String, i64>, key: &str) -> i64 {
    p.get(key).copied().unwrap_or(0)
}

impl CriticalPattern {
    fn build(
        figure: Figure,
        params: &[(&str, i64)],
        q: &Qpp,
        g: &PermPoly,
        spec: &ConstituentSpec,
        congruence_holds: bool,
    ) -> Self {
        let mut pattern = Self {
            figure,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            input_positions: Vec::new(),
            predicted_weight_cap: 0,
            congruence_holds,
            qpp: *q,
            inverse: g.clone(),
            spec: spec.clone(),
        };
        let layout = pattern.layout(0);
        let n = q.modulus();
        let mut positions: Vec<u64> = layout.upper.iter().flat_map(|p| p.points(n)).collect();
        positions.sort_unstable();
        pattern.input_positions = positions;
        pattern.predicted_weight_cap = figure.input_weight() as u32
            + layout
                .upper
                .iter()
                .chain(&layout.lower)
                .map(|p| pattern.path_parity(p))
                .sum::<u32>();
        pattern
    }

    pub fn qpp(&self) -> &Qpp {
        &self.qpp
    }

    pub fn inverse(&self) -> &PermPoly {
        &self.inverse
    }

    fn path_parity(&self, path: &Path) -> u32 {
        let shape = path.shape();
        let len = shape.last().expect("nonempty") + 1;
        let (w, end) = self.spec.sparse_parity(&shape, 0, len);
        debug_assert_eq!(end, 0, "fundamental paths return to the zero state");
        w
    }

    /// Paths of the template started at `x`.
    fn layout(&self, x: u64) -> Layout {
        let n = self.qpp.modulus();
        let f = |v: i128| self.qpp.eval(reduce_signed(v, n)) as i128;
        let g = |v: i128| self.inverse.eval(reduce_signed(v, n)) as i128;
        let at = |v: i128| reduce_signed(v, n);
        let p = &self.params;
        let (a, b, c, d) = (param(p, "a"), param(p, "b"), param(p, "c"), param(p, "d"));
        let x = x as i128;
        let (ai, bi, ci) = (a as i128, b as i128, c as i128);
        match self.figure {
            Figure::Fig1 => {
                let y = f(g(x) + ai);
                Layout {
                    upper: vec![Path::new(at(x), &[0, b, c]), Path::new(at(y), &[0, b, c])],
                    lower: [x, x + bi, x + ci].iter().map(|&t| Path::new(at(g(t)), &[0, a])).collect(),
                }
            }
            Figure::Fig2 => {
                let starts = [x, f(g(x) + bi), f(g(x) + ci)];
                Layout {
                    upper: starts.iter().map(|&s| Path::new(at(s), &[0, b, c])).collect(),
                    lower: [x, x + bi, x + ci].iter().map(|&t| Path::new(at(g(t)), &[0, b, c])).collect(),
                }
            }
            Figure::Fig3 => {
                let y = f(g(x) + ci);
                Layout {
                    upper: vec![Path::new(at(x), &[0, a]), Path::new(at(y), &[0, d])],
                    lower: vec![Path::new(at(g(x)), &[0, c]), Path::new(at(g(x + ai)), &[0, b])],
                }
            }
            // For the last two templates `x` is the first lower-encoder time.
            Figure::Fig4 => {
                let u = g(f(x) + ai);
                let v = g(f(x + ai) + 2 * ai);
                Layout {
                    upper: vec![
                        Path::new(at(f(x)), &[0, a]),
                        Path::new(at(f(x + ai)), &[0, 2 * a]),
                        Path::new(at(f(u + 2 * ai)), &[0, a]),
                    ],
                    lower: vec![
                        Path::new(at(x), &[0, a]),
                        Path::new(at(u), &[0, 2 * a]),
                        Path::new(at(v), &[0, a]),
                    ],
                }
            }
            Figure::Fig5 => {
                let u = g(f(x) + 2 * ai);
                let v = g(f(x + ai) + ai);
                Layout {
                    upper: vec![
                        Path::new(at(f(x)), &[0, 2 * a]),
                        Path::new(at(f(x + ai)), &[0, a]),
                        Path::new(at(f(v - 2 * ai)), &[0, a]),
                    ],
                    lower: vec![
                        Path::new(at(x), &[0, a]),
                        Path::new(at(u), &[0, -a]),
                        Path::new(at(v), &[0, -2 * a]),
                    ],
                }
            }
        }
    }

    /// Whether the template started at `x` is a codeword: the lower-encoder
    /// paths, mapped back through `f`, hit exactly the upper-encoder inputs.
    pub fn is_codeword_at(&self, x: u64) -> bool {
        let n = self.qpp.modulus();
        let layout = self.layout(x % n);
        let mut upper: Vec<u64> = layout.upper.iter().flat_map(|p| p.points(n)).collect();
        let mut mapped: Vec<u64> = layout
            .lower
            .iter()
            .flat_map(|p| p.points(n))
            .map(|t| self.qpp.eval(t))
            .collect();
        upper.sort_unstable();
        mapped.sort_unstable();
        upper == mapped
    }

    /// Least length for which some start leaves every path unwrapped.
    pub fn wrap_free_threshold(&self) -> u64 {
        let layout = self.layout(0);
        layout.upper.iter().chain(&layout.lower).map(Path::span).sum::<u64>() + 1
    }
}

/// Weight-6 congruences: `2 b a f2 G(b)` and `2 c a f2 G(c)` with `G(t) = g1 + g2 t + ...`.
fn fig1_congruence(q: &Qpp, g: &PermPoly, a: i64) -> bool {
    let n = q.modulus();
    let f2 = q.f2() as i128;
    [B, C].iter().all(|&t| {
        let lhs = prod(n, &[2, t as i128, a as i128, f2]);
        mul_mod(lhs, g_tail(g, t), n) == 0
    })
}

fn fig2_congruence(q: &Qpp, g: &PermPoly) -> bool {
    let n = q.modulus();
    let f2 = q.f2() as i128;
    [(B, B), (B, C), (C, B), (C, C)].iter().all(|&(s, t)| {
        let lhs = prod(n, &[2, s as i128, t as i128, f2]);
        mul_mod(lhs, g_tail(g, t), n) == 0
    })
}

/// Weight-4 congruence for signed path separations.
pub fn fig3_congruence(q: &Qpp, g: &PermPoly, a: i64, b: i64, c: i64, d: i64) -> bool {
    let n = q.modulus();
    let (f1, f2) = (q.f1() as i128, q.f2() as i128);
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    let linear = reduce_signed((b * b - c * c) * f2 + (b - c) * f1 + a - d, n);
    let cross = mul_mod(prod(n, &[2, a, b, f2]), g_tail(g, a as i64), n);
    add_mod(linear, cross, n) == 0
}

/// Simplified sufficient condition for a table row: `(2^nu - 1)^2 * k * f2 = 0 (mod N)`.
pub fn table_i_simplified(q: &Qpp, nu: u32, row: (u32, u32)) -> bool {
    let n = q.modulus();
    let a = (1i128 << nu) - 1;
    let k = match row {
        (1, 1) => 2,
        (1, 2) | (2, 1) | (2, 2) => 4,
        (1, 3) | (3, 1) => 6,
        _ => return false,
    };
    let f2 = q.f2() as i128;
    prod(n, &[a, a, k, f2]) == 0 && (row != (2, 2) || prod(n, &[a, a, 8, f2]) == 0)
}

/// Weight-50 congruence for a quadratic inverse, in its `sign = 1` and `sign = -1` forms.
fn fig45_congruence(q: &Qpp, g: &PermPoly, a: i64, sign: i128) -> bool {
    let n = q.modulus();
    let (f1, f2) = (q.f1() as i128, q.f2() as i128);
    let a = a as i128;
    let g2 = g.coeff(2) as i128;
    let inner = 1 + sign * (2 * f1 + 2 * a * f2);
    prod(n, &[4, a, a, a, f2, g2, inner]) == 0
}

/// Cubic-inverse form of the `sign = 1` weight-50 congruence.
fn fig4_cubic_congruence(q: &Qpp, g: &PermPoly, a: i64) -> bool {
    let n = q.modulus();
    let (f1, f2) = (q.f1() as i128, q.f2() as i128);
    let a = a as i128;
    let (g2, g3) = (g.coeff(2) as i128, g.coeff(3) as i128);
    let first = prod(n, &[g2, 1 + 2 * f1 + 2 * a * f2]);
    let t = reduce_signed(1 + f1 + a * f2, n) as i128;
    let second = prod(n, &[3, g3, a, t, t]);
    let inner = add_mod(first, second, n) as i128;
    prod(n, &[4, a, a, a, f2, inner]) == 0
}

/// Input-weight 6 template with `a = 7 * 2^l`; `None` when its congruences fail.
pub fn fig1_check(q: &Qpp, g: &PermPoly, l: u32) -> Result<Option<CriticalPattern>> {
    Ok(Some(fig1_pattern(q, g, l)?).filter(|p| p.congruence_holds))
}

/// The `Fig1` template whether or not its congruence holds.
pub fn fig1_pattern(q: &Qpp, g: &PermPoly, l: u32) -> Result<CriticalPattern> {
    let spec = ConstituentSpec::lte();
    check_inverse(q, g)?;
    let a = 7i64
        .checked_shl(l)
        .filter(|&a| a > 0 && (a as u64) < q.modulus())
        .ok_or(Error::OutOfRange {
            value: l as u64,
            min: 0,
            max: (q.modulus() / 7).max(1).ilog2() as u64,
        })?;
    let holds = fig1_congruence(q, g, a);
    Ok(CriticalPattern::build(
        Figure::Fig1,
        &[("a", a), ("b", B), ("c", C), ("l", l as i64)],
        q,
        g,
        &spec,
        holds,
    ))
}

/// Input-weight 9 template; `None` when its congruences fail.
pub fn fig2_check(q: &Qpp, g: &PermPoly) -> Result<Option<CriticalPattern>> {
    Ok(Some(fig2_pattern(q, g)?).filter(|p| p.congruence_holds))
}

pub fn fig2_pattern(q: &Qpp, g: &PermPoly) -> Result<CriticalPattern> {
    let spec = ConstituentSpec::lte();
    require_lte(&spec, Figure::Fig2)?;
    check_inverse(q, g)?;
    let holds = fig2_congruence(q, g);
    Ok(CriticalPattern::build(Figure::Fig2, &[("b", B), ("c", C)], q, g, &spec, holds))
}

/// Input-weight 4 template for a table row `(|a'|, |b'|)`, with `c = b` and
/// `d = a`. All sign choices are tried; the first that satisfies the congruence wins.
pub fn fig3_check(q: &Qpp, g: &PermPoly, spec: &ConstituentSpec, row: (u32, u32)) -> Result<Option<CriticalPattern>> {
    check_inverse(q, g)?;
    if !TABLE_I_ROWS.contains(&row) {
        return Err(Error::Unsupported(format!("no table row ({}, {})", row.0, row.1)));
    }
    let period = spec.period() as i64;
    for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let a = sa * period * row.0 as i64;
        let b = sb * period * row.1 as i64;
        if fig3_congruence(q, g, a, b, b, a) {
            return Ok(Some(fig3_pattern(q, g, spec, row, (sa, sb), true)));
        }
    }
    Ok(None)
}

/// The `Fig3` template for a row and sign choice, without checking its congruence.
pub fn fig3_pattern(
    q: &Qpp,
    g: &PermPoly,
    spec: &ConstituentSpec,
    row: (u32, u32),
    signs: (i64, i64),
    holds: bool,
) -> CriticalPattern {
    let period = spec.period() as i64;
    let a = signs.0 * period * row.0 as i64;
    let b = signs.1 * period * row.1 as i64;
    CriticalPattern::build(
        Figure::Fig3,
        &[
            ("a", a),
            ("b", b),
            ("c", b),
            ("d", a),
            ("a'", row.0 as i64),
            ("b'", row.1 as i64),
        ],
        q,
        g,
        spec,
        holds,
    )
}

fn fig45_a(spec: &ConstituentSpec) -> i64 {
    spec.period() as i64
}

/// The `Fig4` or `Fig5` template for a quadratic inverse `g`.
///
/// At least one of the two sign forms holds for every such interleaver; the
/// `Fig5` template is returned with `congruence_holds = false` otherwise.
pub fn fig45_check(q: &Qpp, g: &PermPoly, spec: &ConstituentSpec) -> Result<CriticalPattern> {
    check_inverse(q, g)?;
    if g.degree() > 2 {
        return Err(Error::Unsupported(format!("inverse of degree {} is not quadratic", g.degree())));
    }
    let a = fig45_a(spec);
    let params = [("a", a)];
    if fig45_congruence(q, g, a, 1) {
        return Ok(CriticalPattern::build(Figure::Fig4, &params, q, g, spec, true));
    }
    let holds = fig45_congruence(q, g, a, -1);
    Ok(CriticalPattern::build(Figure::Fig5, &params, q, g, spec, holds))
}

/// The `Fig4` template for an inverse of degree at most three; `None` when its congruence fails.
pub fn fig4_cubic_check(q: &Qpp, g: &PermPoly, spec: &ConstituentSpec) -> Result<Option<CriticalPattern>> {
    check_inverse(q, g)?;
    if g.degree() > 3 {
        return Err(Error::Unsupported(format!("inverse of degree {} is not cubic", g.degree())));
    }
    let a = fig45_a(spec);
    Ok(fig4_cubic_congruence(q, g, a).then(|| CriticalPattern::build(Figure::Fig4, &[("a", a)], q, g, spec, true)))
}

/// The closed-form congruence of a pattern, evaluated at start zero.
pub fn closed_form_holds(p: &CriticalPattern) -> bool {
    let (q, g) = (&p.qpp, &p.inverse);
    let a = param(&p.params, "a");
    match p.figure {
        Figure::Fig1 => fig1_congruence(q, g, a),
        Figure::Fig2 => fig2_congruence(q, g),
        Figure::Fig3 => fig3_congruence(
            q,
            g,
            a,
            param(&p.params, "b"),
            param(&p.params, "c"),
            param(&p.params, "d"),
        ),
        Figure::Fig4 if g.degree() <= 2 => fig45_congruence(q, g, a, 1),
        Figure::Fig4 => fig4_cubic_congruence(q, g, a),
        Figure::Fig5 => fig45_congruence(q, g, a, -1),
    }
}

/// Whether the paths on one encoder occupy pairwise disjoint trellis sections,
/// so that their parity weights add up.
fn disjoint(paths: &[Path]) -> bool {
    let mut spans: Vec<(i128, i128)> = paths.iter().map(Path::interval).collect();
    spans.sort_unstable();
    spans.windows(2).all(|w| w[0].1 < w[1].0)
}

/// Starts the template at the least `x` for which no path crosses the block
/// end, the paths on each encoder do not overlap, and all input positions are
/// distinct; the placed input then encodes to exactly `predicted_weight_cap`.
/// When no such start exists, the least wrap-free start is used with
/// coinciding inputs cancelled, and the placement is marked `overlapping`.
pub fn place_pattern(p: &CriticalPattern) -> Option<Placement> {
    let n = p.qpp.modulus();
    if !p.congruence_holds || n < p.wrap_free_threshold() {
        return None;
    }
    let wrap_free = |x: &u64| {
        let layout = p.layout(*x);
        !layout.upper.iter().chain(&layout.lower).any(|path| path.wraps(n))
    };
    let separated = (0..n).filter(wrap_free).find_map(|x| {
        let layout = p.layout(x);
        if !disjoint(&layout.upper) || !disjoint(&layout.lower) {
            return None;
        }
        let mut positions: Vec<u64> = layout.upper.iter().flat_map(|path| path.points(n)).collect();
        positions.sort_unstable();
        positions.dedup();
        (positions.len() == p.figure.input_weight() && p.is_codeword_at(x)).then(|| Placement {
            x,
            input_positions: positions.into_iter().map(|v| v as u32).collect(),
            overlapping: false,
        })
    });
    separated.or_else(|| {
        (0..n).filter(wrap_free).find_map(|x| {
            let layout = p.layout(x);
            let mut odd = BTreeSet::new();
            for t in layout.upper.iter().flat_map(|path| path.points(n)) {
                if !odd.insert(t) {
                    odd.remove(&t);
                }
            }
            (!odd.is_empty() && p.is_codeword_at(x)).then(|| Placement {
                x,
                input_positions: odd.into_iter().map(|v| v as u32).collect(),
                overlapping: true,
            })
        })
    })
}

/// Every template that is a codeword for `q`, using its least-degree inverse.
/// Weight-6 templates are tried with `l` up to `max_l`.
pub fn critical_patterns(q: &Qpp, spec: &ConstituentSpec, max_l: u32) -> Result<Vec<CriticalPattern>> {
    let g = q.inverse();
    let mut out = Vec::new();
    if spec.is_lte() {
        for l in 0..=max_l {
            if 7u64 << l >= q.modulus() {
                break;
            }
            out.extend(fig1_check(q, &g, l)?);
        }
        out.extend(fig2_check(q, &g)?);
    }
    for row in TABLE_I_ROWS {
        out.extend(fig3_check(q, &g, spec, row)?);
    }
    if g.degree() <= 2 {
        out.push(fig45_check(q, &g, spec)?);
    } else if g.degree() == 3 {
        out.extend(fig4_cubic_check(q, &g, spec)?);
    }
    out.retain(|p| p.congruence_holds);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convcode::TerminationMode;
    use crate::turbo::TurboCode;

    fn qpp(n: u64, f1: u64, f2: u64) -> Qpp {
        Qpp::new(n, f1, f2).unwrap()
    }

    fn placed_weight(p: &CriticalPattern) -> Option<u32> {
        let placement = place_pattern(p)?;
        let positions: Vec<usize> = placement.input_positions.iter().map(|&v| v as usize).collect();
        TurboCode::lte(*p.qpp()).unwrap().sparse_weight(TerminationMode::Dual, &positions)
    }

    #[test]
    fn fig1_lte_length_496() {
        let q = qpp(496, 157, 62);
        let p = fig1_check(&q, &q.inverse(), 0).unwrap().expect("congruence holds");
        assert_eq!(p.predicted_weight_cap, 38);
        assert!(placed_weight(&p).unwrap() <= 38);
    }

    #[test]
    fn fig1_fails_at_2048() {
        let q = qpp(2048, 21, 128);
        assert!(fig1_check(&q, &q.inverse(), 0).unwrap().is_none());
    }

    #[test]
    fn fig1_sufficient_condition() {
        // 2 b a f2 and 2 c a f2 both vanish: the congruence holds for any inverse.
        let q = qpp(448, 3, 56);
        let (n, f2) = (448u64, 56u64);
        assert_eq!(2 * 8 * 7 * f2 % n, 0);
        assert_eq!(2 * 12 * 7 * f2 % n, 0);
        assert!(fig1_pattern(&q, &q.inverse(), 0).unwrap().congruence_holds);
    }

    #[test]
    fn fig1_caps() {
        let q = qpp(496, 157, 62);
        let g = q.inverse();
        assert_eq!(fig1_pattern(&q, &g, 1).unwrap().predicted_weight_cap, 50);
    }

    #[test]
    fn fig2_cases() {
        let q = qpp(4288, 33, 134);
        let p = fig2_check(&q, &q.inverse()).unwrap().expect("96 f2 = 0 mod N");
        assert_eq!(p.predicted_weight_cap, 51);
        assert!(placed_weight(&p).unwrap() <= 51);
        let q = qpp(40, 3, 10);
        assert!(fig2_check(&q, &q.inverse()).unwrap().is_some());
    }

    #[test]
    fn fig3_caps_follow_table() {
        let q = qpp(496, 157, 62);
        let g = q.inverse();
        let spec = ConstituentSpec::lte();
        let caps: Vec<u32> = TABLE_I_ROWS
            .iter()
            .map(|&row| fig3_pattern(&q, &g, &spec, row, (1, 1), false).predicted_weight_cap)
            .collect();
        assert_eq!(caps, vec![28, 36, 36, 44, 44, 44]);
    }

    #[test]
    fn fig3_simplified_implies_full() {
        let spec = ConstituentSpec::lte();
        for (n, f1, f2) in [(98, 3, 14), (196, 3, 98), (392, 3, 98), (40, 3, 10), (784, 5, 392)] {
            let q = qpp(n, f1, f2);
            for row in TABLE_I_ROWS {
                if table_i_simplified(&q, 3, row) {
                    assert!(fig3_check(&q, &q.inverse(), &spec, row).unwrap().is_some(), "{n} {row:?}");
                }
            }
        }
        assert!(table_i_simplified(&qpp(98, 3, 14), 3, (1, 1)));
    }

    #[test]
    fn fig45_given_inverse() {
        let q = qpp(2048, 21, 128);
        let g = PermPoly::new(2048, vec![1853, 1408]).unwrap();
        let spec = ConstituentSpec::lte();
        let p = fig45_check(&q, &g, &spec).unwrap();
        assert!(p.congruence_holds);
        assert_eq!(p.predicted_weight_cap, 50);
        assert!(placed_weight(&p).unwrap() <= 50);
        let q = qpp(1920, 31, 120);
        let p = fig45_check(&q, &q.inverse(), &spec).unwrap();
        assert!(placed_weight(&p).unwrap() <= 50);
    }

    #[test]
    fn fig45_with_27_dividing_n() {
        let spec = ConstituentSpec::lte();
        let mut seen = [false; 2];
        for f1 in (1..216).filter(|f1| f1 % 2 == 1 && f1 % 3 != 0) {
            for f2 in [6, 36, 72] {
                let q = qpp(216, f1, f2);
                if q.least_inverse_degree().degree > 2 {
                    continue;
                }
                seen[(f1 % 3 - 1) as usize] = true;
                assert!(fig45_check(&q, &q.inverse(), &spec).unwrap().congruence_holds);
            }
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn fig4_cubic_evaluates() {
        let q = qpp(1504, 49, 658);
        let g = PermPoly::new(1504, vec![353, 470, 1128]).unwrap();
        let spec = ConstituentSpec::lte();
        if let Some(p) = fig4_cubic_check(&q, &g, &spec).unwrap() {
            assert!(placed_weight(&p).unwrap() <= 50);
        }
    }

    #[test]
    fn fig4_cubic_degenerates_to_quadratic() {
        let q = qpp(2048, 21, 128);
        let g = q.inverse();
        let spec = ConstituentSpec::lte();
        let a = spec.period() as i64;
        assert_eq!(fig4_cubic_congruence(&q, &g, a), fig45_congruence(&q, &g, a, 1));
    }

    #[test]
    fn wrong_inverse_rejected() {
        let q = qpp(40, 3, 10);
        let g = PermPoly::new(40, vec![1]).unwrap();
        assert_eq!(fig2_check(&q, &g).unwrap_err(), Error::NotInverse(40));
    }

    #[test]
    fn wrap_free_threshold() {
        let spec = ConstituentSpec::lte();
        let q = qpp(496, 157, 62);
        let p = fig45_check(&q, &q.inverse(), &spec).unwrap();
        assert_eq!(p.wrap_free_threshold(), 57);
        let q = qpp(56, 3, 14);
        assert!(q.least_inverse_degree().degree <= 2);
        let p = fig45_check(&q, &q.inverse(), &spec).unwrap();
        assert!(place_pattern(&p).is_none());
    }

    #[test]
    fn non_lte_pattern_refused() {
        let spec = ConstituentSpec::new(4, 0b10011, 0b11111).unwrap();
        let q = qpp(480, 7, 60);
        assert!(matches!(require_lte(&spec, Figure::Fig2), Err(Error::Unsupported(_))));
        let p = fig45_check(&q, &q.inverse(), &spec).unwrap();
        assert_eq!(p.predicted_weight_cap, 82);
        assert!(p.congruence_holds);
    }
}

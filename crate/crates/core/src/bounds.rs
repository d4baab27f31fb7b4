//! Upper bounds on the best achievable minimum distance for a length `N`.
//!
//! Every evaluator is a pure function of the factorization of `N`, the
//! encoder degree and the inverse-degree class of the interleaver.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::convcode::ConstituentSpec;
use crate::error::{Error, Result};
use crate::permpoly::{factorize, inverse_degree_exponent_floor, Factorization};

/// Restriction on the least degree of the inverse permutation polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InverseClass {
    Any,
    /// Inverse degree at most two.
    Quadratic,
    /// Inverse degree at most three.
    Cubic,
    /// Least inverse degree exactly `k`.
    Degree(u32),
}

impl InverseClass {
    /// Largest inverse degree admitted, if the class bounds it.
    pub fn max_degree(self) -> Option<u32> {
        match self {
            Self::Any => None,
            Self::Quadratic => Some(2),
            Self::Cubic => Some(3),
            Self::Degree(k) => Some(k),
        }
    }

    /// Whether a least inverse degree `l` belongs to the class.
    pub fn admits(self, l: u32) -> bool {
        match self {
            Self::Any => true,
            Self::Quadratic => l <= 2,
            Self::Cubic => l <= 3,
            Self::Degree(k) => l == k,
        }
    }

    /// The narrowest class containing least inverse degree `l`.
    pub fn of_degree(l: u32) -> Self {
        match l {
            0..=2 => Self::Quadratic,
            3 => Self::Cubic,
            k => Self::Degree(k),
        }
    }

    fn quadratic_results_apply(self) -> bool {
        self.max_degree().is_some_and(|d| d <= 2)
    }

    fn cubic_results_apply(self) -> bool {
        self.max_degree().is_some_and(|d| d <= 3)
    }
}

impl fmt::Display for InverseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Any => write!(f, "any"),
            Self::Quadratic => write!(f, "quadratic"),
            Self::Cubic => write!(f, "cubic"),
            Self::Degree(k) => write!(f, "degree-{k}"),
        }
    }
}

impl std::str::FromStr for InverseClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(Self::Any),
            "quadratic" | "2" => Ok(Self::Quadratic),
            "cubic" | "3" => Ok(Self::Cubic),
            other => other
                .strip_prefix("degree-")
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 1)
                .map(Self::Degree)
                .ok_or_else(|| Error::Unsupported(format!("unknown inverse class {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundId {
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
    Theorem5,
    Theorem6,
    TableII,
    TableIII,
    Weight9Class,
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Theorem1 => "theorem-1",
            Self::Theorem2 => "theorem-2",
            Self::Theorem3 => "theorem-3",
            Self::Theorem4 => "theorem-4",
            Self::Theorem5 => "theorem-5",
            Self::Theorem6 => "theorem-6",
            Self::TableII => "table-II",
            Self::TableIII => "table-III",
            Self::Weight9Class => "weight-9-class",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub id: BoundId,
    pub applicable: bool,
    pub bound: Option<u32>,
    pub params: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub modulus: u64,
    pub nu: u32,
    pub inverse_class: InverseClass,
    pub entries: Vec<BoundEntry>,
    pub combined_bound: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOptions {
    /// The `theorem-6` prime-power condition repeats one expression for two
    /// branches; this switch drops the theorem altogether.
    pub theorem6: bool,
    /// Use `n2 <= ceil(3 l / 2) + 4` for `theorem-5` instead of
    /// `floor(3 l / 2) + 4`.
    pub theorem5_ceil: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            theorem6: true,
            theorem5_ceil: false,
        }
    }
}

/// Exponent limits: `(p = 2, p = 3, p = 7, any other prime)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Limits {
    two: u32,
    three: u32,
    seven: u32,
    other: u32,
}

impl Limits {
    fn holds(&self, fact: &Factorization) -> bool {
        fact.iter().all(|(p, e)| {
            e <= match p {
                2 => self.two,
                3 => self.three,
                7 => self.seven,
                _ => self.other,
            }
        })
    }
}

/// Odd-prime part of a limit set with the power of two left free.
fn odd_part_holds(fact: &Factorization, three: u32, seven: u32, other: u32) -> bool {
    Limits {
        two: u32::MAX,
        three,
        seven,
        other,
    }
    .holds(fact)
}

fn weight_38(l: u32) -> u32 {
    38 + 12 * l
}

/// Smallest `l >= 0` with `n2 <= limit(l)`, for nondecreasing unbounded `limit`.
fn least_level(n2: u32, limit: impl Fn(u32) -> u32) -> u32 {
    (0..).find(|&l| n2 <= limit(l)).expect("limit grows without bound")
}

/// `(l, 38 + 12 l)` with `n2 <= l + 4`, `n7 <= 2`, other odd exponents at most one.
pub fn thm1_bound(n: u64) -> Result<Option<(u32, u32)>> {
    let fact = factorize(n)?;
    if !odd_part_holds(&fact, 1, 2, 1) {
        return Ok(None);
    }
    let l = least_level(fact.exponent(2), |l| l + 4);
    Ok(Some((l, weight_38(l))))
}

/// 51 when `n2 <= 6`, `n3 <= 2` and other exponents are at most one.
pub fn thm2_bound(n: u64) -> Result<Option<u32>> {
    let fact = factorize(n)?;
    let limits = Limits {
        two: 6,
        three: 2,
        seven: 1,
        other: 1,
    };
    Ok(limits.holds(&fact).then_some(51))
}

/// `2 (2^(nu+1) + 9)`, valid for every length when the inverse is quadratic.
pub fn thm3_bound(nu: u32) -> u32 {
    2 * ((1 << (nu + 1)) + 9)
}

/// `(l, 38 + 12 l)` with `n2 <= 2 l + 5`, `n7 <= 3`, others at most one.
pub fn thm4_bound(n: u64) -> Result<Option<(u32, u32)>> {
    let fact = factorize(n)?;
    if !odd_part_holds(&fact, 1, 3, 1) {
        return Ok(None);
    }
    let l = least_level(fact.exponent(2), |l| 2 * l + 5);
    Ok(Some((l, weight_38(l))))
}

/// `(l, 38 + 12 l)` with `n2 <= floor(3 l / 2) + 4`, `n7 <= 2`, others at most one.
///
/// The floor comes from requiring `n2 <= l + 3 + max(ceil((n2 - 3) / 3), 1)`;
/// [`thm5_bound_ceil`] uses the rounded-up closed form instead, which admits
/// `n2 = 6` at `l = 1` although cubic-inverse interleavers of such lengths
/// reach distance 51.
pub fn thm5_bound(n: u64) -> Result<Option<(u32, u32)>> {
    thm5_with(n, |l| 3 * l / 2 + 4)
}

/// `theorem-5` with `n2 <= ceil(3 l / 2) + 4`.
pub fn thm5_bound_ceil(n: u64) -> Result<Option<(u32, u32)>> {
    thm5_with(n, |l| (3 * l).div_ceil(2) + 4)
}

fn thm5_with(n: u64, limit: impl Fn(u32) -> u32) -> Result<Option<(u32, u32)>> {
    let fact = factorize(n)?;
    if !odd_part_holds(&fact, 1, 2, 1) {
        return Ok(None);
    }
    let l = least_level(fact.exponent(2), limit);
    Ok(Some((l, weight_38(l))))
}

/// `2 (2^(nu+1) + 9)` when `n2 <= 4` and every odd `p` has
/// `n_p <= ceil(9 n_{2^nu - 1, p} / 2) + 2`.
pub fn thm6_bound(n: u64, nu: u32) -> Result<Option<u32>> {
    let fact = factorize(n)?;
    let a = factorize((1u64 << nu) - 1)?;
    let ok = fact.iter().all(|(p, e)| {
        if p == 2 {
            e <= 4
        } else {
            e <= (9 * a.exponent(p)).div_ceil(2) + 2
        }
    });
    Ok(ok.then(|| thm3_bound(nu)))
}

/// Every `(l, 38 + 12 l)` pair a level-type theorem admits, for `l` up to `max_l`.
pub fn levels(id: BoundId, n: u64, max_l: u32) -> Result<Vec<(u32, u32)>> {
    let least = match id {
        BoundId::Theorem1 => thm1_bound(n)?,
        BoundId::Theorem4 => thm4_bound(n)?,
        BoundId::Theorem5 => thm5_bound(n)?,
        other => return Err(Error::Unsupported(format!("{other} has no level parameter"))),
    };
    Ok(least
        .map(|(l0, _)| (l0..=max_l.max(l0)).map(|l| (l, weight_38(l))).collect())
        .unwrap_or_default())
}

struct TableRow {
    limits: Limits,
    bound: u32,
    first_source_row: u64,
}

fn table_rows(quadratic: bool) -> [TableRow; 4] {
    let seven = if quadratic { 5 } else { 3 };
    let row = |two, three, bound, first_source_row| TableRow {
        limits: Limits {
            two,
            three,
            seven,
            other: 1,
        },
        bound,
        first_source_row,
    };
    [
        row(2, 1, 28, 2),
        row(3, 1, 36, 3),
        row(if quadratic { 5 } else { 4 }, 1, 44, 5),
        row(2, 2, 44, 6),
    ]
}

/// Rows `(bound, row id)` of the `nu = 3` condition tables that hold for `n`;
/// the quadratic table is used for classes with inverse degree at most two.
pub fn table_bounds_nu3(n: u64, class: InverseClass) -> Result<Vec<(u32, u32)>> {
    let fact = factorize(n)?;
    Ok(table_rows(class.quadratic_results_apply())
        .iter()
        .enumerate()
        .filter(|(_, r)| r.limits.holds(&fact))
        .map(|(i, r)| (r.bound, i as u32 + 1))
        .collect())
}

/// Least prime exponents of `f2` for interleavers in `class` (Prop. 1 plus the
/// inverse-degree condition), or `None` when no interleaver is in the class.
pub fn class_min_f2_exponents(fact: &Factorization, class: InverseClass) -> Option<BTreeMap<u64, u32>> {
    let prop1: BTreeMap<u64, u32> = fact
        .iter()
        .map(|(p, e)| (p, if p == 2 && e == 1 { 0 } else { 1 }))
        .collect();
    let need = |degree: u32| -> BTreeMap<u64, u32> {
        let floor = inverse_degree_exponent_floor(fact, degree);
        prop1.iter().map(|(&p, &e)| (p, e.max(floor.get(&p).copied().unwrap_or(0)))).collect()
    };
    match class {
        InverseClass::Any => Some(prop1),
        InverseClass::Quadratic | InverseClass::Cubic => class.max_degree().map(need),
        InverseClass::Degree(k) => {
            // Degree exactly k needs f2 at least as divisible as for degree k, and the
            // class is empty when even those exponents force a smaller degree.
            let mins = need(k);
            let smaller = k > 1 && need(k - 1) == mins;
            (!smaller).then_some(mins)
        }
    }
}

/// 51 when `96 f2 = 0 (mod N)` for every `f2` the class admits.
pub fn weight9_class_bound(n: u64, class: InverseClass) -> Result<Option<u32>> {
    let fact = factorize(n)?;
    let Some(mins) = class_min_f2_exponents(&fact, class) else {
        return Ok(None);
    };
    let ok = fact.iter().all(|(p, e)| {
        let from96 = match p {
            2 => 5,
            3 => 1,
            _ => 0,
        };
        from96 + mins.get(&p).copied().unwrap_or(0) >= e
    });
    Ok(ok.then_some(51))
}

fn entry(id: BoundId, bound: Option<u32>, params: &[(&str, u64)]) -> BoundEntry {
    BoundEntry {
        id,
        applicable: bound.is_some(),
        bound,
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

fn level_entry(id: BoundId, result: Option<(u32, u32)>) -> BoundEntry {
    match result {
        Some((l, b)) => entry(id, Some(b), &[("l", l as u64)]),
        None => entry(id, None, &[]),
    }
}

/// All bounds that apply to `n` for the given encoder and inverse class, and their minimum.
pub fn best_bound(n: u64, spec: &ConstituentSpec, class: InverseClass, options: &BoundOptions) -> Result<BoundReport> {
    let fact = factorize(n)?;
    let nu = spec.nu();
    let lte = spec.is_lte();
    let mut entries = Vec::new();
    if lte {
        entries.push(level_entry(BoundId::Theorem1, thm1_bound(n)?));
        entries.push(entry(BoundId::Theorem2, thm2_bound(n)?, &[]));
        let rows = table_rows(false);
        for (i, row) in rows.iter().enumerate() {
            let ok = row.limits.holds(&fact);
            entries.push(entry(
                BoundId::TableII,
                ok.then_some(row.bound),
                &[("row", i as u64 + 1), ("source_row", row.first_source_row)],
            ));
        }
    }
    if class.quadratic_results_apply() {
        entries.push(entry(BoundId::Theorem3, Some(thm3_bound(nu)), &[("nu", nu as u64)]));
        if lte {
            entries.push(level_entry(BoundId::Theorem4, thm4_bound(n)?));
            for (i, row) in table_rows(true).iter().enumerate() {
                let ok = row.limits.holds(&fact);
                entries.push(entry(
                    BoundId::TableIII,
                    ok.then_some(row.bound),
                    &[("row", i as u64 + 1), ("source_row", row.first_source_row)],
                ));
            }
        }
    }
    if class.cubic_results_apply() {
        if lte {
            let thm5 = if options.theorem5_ceil {
                thm5_bound_ceil(n)?
            } else {
                thm5_bound(n)?
            };
            entries.push(level_entry(BoundId::Theorem5, thm5));
        }
        if options.theorem6 {
            entries.push(entry(BoundId::Theorem6, thm6_bound(n, nu)?, &[("nu", nu as u64)]));
        }
    }
    if lte && class != InverseClass::Any {
        let degree = class.max_degree().unwrap_or(0) as u64;
        entries.push(entry(BoundId::Weight9Class, weight9_class_bound(n, class)?, &[("degree", degree)]));
    }
    let combined_bound = entries.iter().filter_map(|e| e.bound).min();
    Ok(BoundReport {
        modulus: n,
        nu,
        inverse_class: class,
        entries,
        combined_bound,
    })
}

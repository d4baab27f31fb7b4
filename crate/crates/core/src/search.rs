//! Exhaustive search over the QPPs of one length, ranked by minimum distance.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{best_bound, BoundOptions, BoundReport, InverseClass};
use crate::convcode::{ConstituentSpec, TerminationMode};
use crate::dmin::{estimate_dmin, exact_dmin, DminResult, EstimateConfig, ExactConfig};
use crate::error::{Error, Result};
use crate::permpoly::{factorize, is_quadratic_pp, Qpp};
use crate::turbo::{InterleaverDirection, TurboCode};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: u64,
    /// Skip QPPs that generate the same permutation as a linear polynomial.
    pub irreducible_only: bool,
    pub inverse_class: InverseClass,
    pub spec: ConstituentSpec,
    pub mode: TerminationMode,
    pub weight_cap: u32,
    /// Node budget for each exact evaluation.
    pub exact_budget: Option<u64>,
    /// At most this many survivors of the estimator phase are evaluated exactly.
    pub max_exact: Option<usize>,
    pub estimate: EstimateConfig,
    pub bound_options: BoundOptions,
}

impl SearchConfig {
    pub fn new(n: u64) -> Self {
        Self {
            n,
            irreducible_only: true,
            inverse_class: InverseClass::Any,
            spec: ConstituentSpec::lte(),
            mode: TerminationMode::Dual,
            weight_cap: 60,
            exact_budget: None,
            max_exact: None,
            estimate: EstimateConfig::default(),
            bound_options: BoundOptions::default(),
        }
    }
}

/// All QPPs of length `config.n` that pass the irreducibility and inverse-class filters,
/// ordered by `(f2, f1)`.
pub fn enumerate_qpps(config: &SearchConfig) -> Result<Vec<Qpp>> {
    let n = config.n;
    if n < 8 {
        return Err(Error::OutOfRange {
            value: n,
            min: 8,
            max: crate::permpoly::MAX_MODULUS,
        });
    }
    let fact = factorize(n)?;
    // Every odd prime divides f2; so does 2 unless it divides n exactly once.
    let step = fact
        .primes()
        .filter(|&p| p != 2 || fact.exponent(2) != 1)
        .product::<u64>();
    let mut out = Vec::new();
    for f2 in (step..n).step_by(step as usize) {
        for f1 in 1..n {
            if !is_quadratic_pp(n, f1, f2) {
                continue;
            }
            let q = Qpp::new(n, f1, f2)?;
            if config.irreducible_only && !q.is_irreducible() {
                continue;
            }
            if config.inverse_class != InverseClass::Any
                && !config.inverse_class.admits(q.least_inverse_degree().degree)
            {
                continue;
            }
            out.push(q);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Exact distance and multiplicity.
    Exact,
    /// Not evaluated exactly; the distance is an estimator upper bound.
    Estimated,
    /// A witness lighter than an exactly evaluated candidate was found.
    Rejected,
    /// The exact evaluation ran out of budget; the estimator result is kept.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEntry {
    pub qpp: Qpp,
    pub inverse_degree: u32,
    pub result: DminResult,
    pub verdict: Verdict,
    /// Combined bound for the narrowest class containing this QPP.
    pub bound: BoundReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: u64,
    pub nu: u32,
    pub irreducible_only: bool,
    pub inverse_class: InverseClass,
    /// Linear permutation polynomials are never enumerated.
    pub linear_excluded: bool,
    pub candidates: usize,
    pub exact_evaluations: usize,
    /// Combined bound for the searched class.
    pub class_bound: BoundReport,
    /// Best first.
    pub entries: Vec<SearchEntry>,
}

impl SearchReport {
    pub fn best(&self) -> Option<&SearchEntry> {
        self.entries.first()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == Verdict::BudgetExhausted)
    }
}

fn distance_key(r: &DminResult) -> u32 {
    r.dmin.unwrap_or(u32::MAX)
}

/// Distance descending, then multiplicity, `f2` and `f1` ascending.
pub fn rank(a: &Qpp, ra: &DminResult, b: &Qpp, rb: &DminResult) -> Ordering {
    distance_key(rb)
        .cmp(&distance_key(ra))
        .then(ra.multiplicity.cmp(&rb.multiplicity))
        .then(a.f2().cmp(&b.f2()))
        .then(a.f1().cmp(&b.f1()))
}

fn estimate_one(q: Qpp, config: &SearchConfig) -> Result<DminResult> {
    let code = TurboCode::new(q, config.spec.clone(), InterleaverDirection::Forward)?;
    let est = EstimateConfig {
        weight_cap: config.weight_cap,
        ..config.estimate.clone()
    };
    estimate_dmin(&code, config.mode, &est)
}

/// Estimates every candidate, then evaluates exactly, best estimate first, each
/// candidate whose estimate is not already beaten by an exact result.
pub fn run_search(config: &SearchConfig) -> Result<SearchReport> {
    let candidates = enumerate_qpps(config)?;
    let estimates: Vec<DminResult> = candidates
        .par_iter()
        .map(|&q| estimate_one(q, config))
        .collect::<Result<_>>()?;
    log::info!("search N={}: {} candidates estimated", config.n, candidates.len());

    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&i, &j| rank(&candidates[i], &estimates[i], &candidates[j], &estimates[j]));

    let exact_config = ExactConfig {
        weight_cap: config.weight_cap,
        budget_nodes: config.exact_budget,
        ..ExactConfig::default()
    };
    let mut results: Vec<(DminResult, Verdict)> = estimates.into_iter().map(|r| (r, Verdict::Estimated)).collect();
    let mut best_exact: Option<u32> = None;
    let mut exact_evaluations = 0;
    for &i in &order {
        let (est, verdict) = &mut results[i];
        let est_d = distance_key(est);
        if best_exact.is_some_and(|b| est_d < b) {
            *verdict = Verdict::Rejected;
            continue;
        }
        if config.max_exact.is_some_and(|m| exact_evaluations >= m) {
            continue;
        }
        exact_evaluations += 1;
        let code = TurboCode::new(candidates[i], config.spec.clone(), InterleaverDirection::Forward)?;
        let cfg = ExactConfig {
            initial_upper: est.dmin,
            ..exact_config.clone()
        };
        match exact_dmin(&code, config.mode, &cfg) {
            Ok(r) => {
                let d = distance_key(&r);
                if best_exact.is_none_or(|b| d > b) {
                    best_exact = Some(d);
                }
                *est = r;
                *verdict = Verdict::Exact;
            }
            Err(Error::BudgetExhausted { .. }) => *verdict = Verdict::BudgetExhausted,
            Err(e) => return Err(e),
        }
    }

    let mut bounds: BTreeMap<u32, BoundReport> = BTreeMap::new();
    let mut entries = Vec::with_capacity(candidates.len());
    for (q, (result, verdict)) in candidates.into_iter().zip(results) {
        let degree = q.least_inverse_degree().degree;
        let bound = match bounds.get(&degree) {
            Some(b) => b.clone(),
            None => {
                let b = best_bound(config.n, &config.spec, InverseClass::of_degree(degree), &config.bound_options)?;
                bounds.insert(degree, b.clone());
                b
            }
        };
        entries.push(SearchEntry {
            qpp: q,
            inverse_degree: degree,
            result,
            verdict,
            bound,
        });
    }
    entries.sort_by(|a, b| rank(&a.qpp, &a.result, &b.qpp, &b.result));

    Ok(SearchReport {
        n: config.n,
        nu: config.spec.nu(),
        irreducible_only: config.irreducible_only,
        inverse_class: config.inverse_class,
        linear_excluded: true,
        candidates: entries.len(),
        exact_evaluations,
        class_bound: best_bound(config.n, &config.spec, config.inverse_class, &config.bound_options)?,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permpoly::count_valid_pairs;

    #[test]
    fn enumeration_counts() {
        let mut config = SearchConfig::new(256);
        config.irreducible_only = false;
        let all = enumerate_qpps(&config).unwrap();
        assert_eq!(all.len() as u64, count_valid_pairs(256).unwrap());
        assert_eq!(all.len(), 16256);

        config.irreducible_only = true;
        let irr = enumerate_qpps(&config).unwrap();
        assert!(irr.iter().all(|q| (2 * q.f2()) % 256 != 0));
        assert_eq!(irr.len(), 16256 - 128);
    }

    #[test]
    fn squarefree_lengths_have_no_irreducible_qpps() {
        for n in [30, 42, 105, 110] {
            assert!(enumerate_qpps(&SearchConfig::new(n)).unwrap().is_empty(), "N={n}");
        }
    }

    #[test]
    fn class_filter() {
        let mut config = SearchConfig::new(1024);
        config.inverse_class = InverseClass::Cubic;
        let cubic = enumerate_qpps(&config).unwrap();
        assert!(!cubic.is_empty());
        assert!(cubic.iter().all(|q| q.least_inverse_degree().degree <= 3));
    }

    #[test]
    fn search_40() {
        let report = run_search(&SearchConfig::new(40)).unwrap();
        let lte = report
            .entries
            .iter()
            .find(|e| e.qpp.f1() == 3 && e.qpp.f2() == 10)
            .unwrap();
        // Beaten by 13x + 10x^2 (d_min 18), so only its estimate is kept.
        assert_eq!(lte.result.dmin, Some(17));
        assert_eq!(report.candidates, 32);
        let best = report.best().unwrap();
        assert_eq!(best.verdict, Verdict::Exact);
        assert_eq!((best.qpp.f1(), best.qpp.f2()), (13, 10));
        assert_eq!((best.result.dmin, best.result.multiplicity), (Some(18), 20));
        assert!(best.result.dmin <= report.class_bound.combined_bound.or(Some(u32::MAX)));
        for w in report.entries.windows(2) {
            assert_eq!(rank(&w[0].qpp, &w[0].result, &w[1].qpp, &w[1].result), Ordering::Less);
        }
        // Rejections are backed by a witness lighter than the best exact distance.
        let best_d = best.result.dmin.unwrap();
        for e in report.entries.iter().filter(|e| e.verdict == Verdict::Rejected) {
            assert!(e.result.dmin.unwrap() < best_d);
            assert!(!e.result.witnesses.is_empty());
        }
    }
}

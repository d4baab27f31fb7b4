//! Report types and command implementations behind the `qpp` binary.

use serde::{Deserialize, Serialize};

use qpp_core::bounds::{best_bound, BoundOptions, BoundReport, InverseClass};
use qpp_core::dataset::{self, LteRow, RegressionConfig, RegressionReport, TABLE_SHA256, TABLE_VERSION};
use qpp_core::permpoly::{inverse_degree_exponent_floor, ModPolynomial};
use qpp_core::search::{run_search, SearchConfig, SearchReport};
use qpp_core::{
    estimate_dmin, exact_dmin, factorize, ConstituentSpec, DminResult, Error, EstimateConfig, ExactConfig, PermPoly,
    Qpp, Result, TerminationMode, TurboCode,
};

pub mod render;

/// Everything one invocation produced. `timing_ms` is the only field that
/// varies between runs with identical arguments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub dataset_version: u32,
    pub result: Outcome,
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Check(CheckReport),
    Inverse(InverseReport),
    Bounds(BoundReport),
    Dmin(DminReport),
    Search(SearchReport),
    Regress(RegressionReport),
    LteTable(LteTableReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    BudgetExhausted,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::BudgetExhausted => 3,
            Status::Mismatch => 4,
        }
    }
}

impl Outcome {
    pub fn status(&self) -> Status {
        match self {
            Outcome::Dmin(d) if d.budget_exhausted => Status::BudgetExhausted,
            Outcome::Search(s) if s.budget_exhausted() => Status::BudgetExhausted,
            Outcome::Regress(r) => {
                if r.rows.iter().any(|row| !row.pass && !row.budget_exhausted) {
                    Status::Mismatch
                } else if r.budget_exhausted() {
                    Status::BudgetExhausted
                } else {
                    Status::Ok
                }
            }
            _ => Status::Ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub n: u64,
    pub f1: u64,
    pub f2: u64,
    pub factorization: String,
    pub valid: bool,
    pub reason: Option<String>,
    pub irreducible: Option<bool>,
    pub inverse_degree: Option<u32>,
    /// Number of inverse polynomials of the least degree, in decimal.
    pub inverse_count: Option<String>,
    pub qc_period: Option<u64>,
}

pub fn cmd_check(n: u64, f1: u64, f2: u64) -> Result<CheckReport> {
    let factorization = factorize(n)?.to_string();
    let mut report = CheckReport {
        n,
        f1,
        f2,
        factorization,
        valid: false,
        reason: None,
        irreducible: None,
        inverse_degree: None,
        inverse_count: None,
        qc_period: None,
    };
    match Qpp::new(n, f1, f2) {
        Ok(q) => {
            let degree = q.least_inverse_degree();
            report.valid = true;
            report.irreducible = Some(q.is_irreducible());
            report.inverse_degree = Some(degree.degree);
            report.inverse_count = Some(degree.inverse_count.to_string());
            report.qc_period = Some(q.qc_period());
        }
        Err(e @ Error::NotPermutation { .. }) => report.reason = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// `(prime, exponent)` pairs; kept as a list so the report survives JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentFloors {
    pub degree: u32,
    pub exponents: Vec<(u64, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseReport {
    pub n: u64,
    pub f1: u64,
    pub f2: u64,
    pub degree: u32,
    pub inverse_count: String,
    /// Coefficients of `x, x^2, ...` of one least-degree inverse.
    pub inverse: Vec<u64>,
    pub inverse_text: String,
    /// Least exponent of each prime of N in f2 for an inverse of each degree to exist.
    pub f2_exponent_floors: Vec<ExponentFloors>,
    /// Outcome of checking a caller-supplied inverse over every residue.
    pub verified: Option<bool>,
}

/// `candidate` lists the coefficients of `x, x^2, ...`.
pub fn cmd_inverse(n: u64, f1: u64, f2: u64, candidate: Option<&[u64]>) -> Result<InverseReport> {
    let q = Qpp::new(n, f1, f2)?;
    let fact = q.factorization();
    let degree = q.least_inverse_degree();
    let g = q.inverse();
    let floors = (2..=degree.degree.max(3))
        .map(|degree| ExponentFloors {
            degree,
            exponents: inverse_degree_exponent_floor(&fact, degree).into_iter().collect(),
        })
        .collect();
    let verified = match candidate {
        Some(c) => {
            let poly = PermPoly::new(n, c.to_vec())?;
            Some((0..n).all(|x| poly.eval(q.eval(x)) == x))
        }
        None => None,
    };
    Ok(InverseReport {
        n,
        f1,
        f2,
        degree: degree.degree,
        inverse_count: degree.inverse_count.to_string(),
        inverse: g.coeffs().to_vec(),
        inverse_text: g.to_string(),
        f2_exponent_floors: floors,
        verified,
    })
}

pub fn cmd_bounds(n: u64, nu: u32, class: InverseClass, options: &BoundOptions) -> Result<BoundReport> {
    best_bound(n, &ConstituentSpec::with_degree(nu)?, class, options)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DminMethod {
    Exact,
    Estimate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DminReport {
    pub n: u64,
    pub f1: u64,
    pub f2: u64,
    pub nu: u32,
    pub mode: TerminationMode,
    pub method: DminMethod,
    pub weight_cap: u32,
    pub budget_nodes: Option<u64>,
    pub result: Option<DminResult>,
    pub budget_exhausted: bool,
    /// Lightest codeword seen before the budget ran out.
    pub best_upper: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct DminArgs {
    pub n: u64,
    pub f1: u64,
    pub f2: u64,
    pub nu: u32,
    pub mode: TerminationMode,
    pub method: DminMethod,
    pub weight_cap: u32,
    pub budget_nodes: Option<u64>,
    pub max_witnesses: usize,
}

pub fn cmd_dmin(args: &DminArgs) -> Result<DminReport> {
    let q = Qpp::new(args.n, args.f1, args.f2)?;
    let spec = ConstituentSpec::with_degree(args.nu)?;
    let code = TurboCode::new(q, spec, qpp_core::InterleaverDirection::Forward)?;
    let outcome = match args.method {
        DminMethod::Exact => exact_dmin(
            &code,
            args.mode,
            &ExactConfig {
                weight_cap: args.weight_cap,
                budget_nodes: args.budget_nodes,
                max_witnesses: args.max_witnesses,
                ..ExactConfig::default()
            },
        ),
        DminMethod::Estimate => estimate_dmin(
            &code,
            args.mode,
            &EstimateConfig {
                weight_cap: args.weight_cap,
                max_nodes_per_branch: args.budget_nodes,
                max_witnesses: args.max_witnesses,
                ..EstimateConfig::default()
            },
        ),
    };
    let mut report = DminReport {
        n: args.n,
        f1: args.f1,
        f2: args.f2,
        nu: args.nu,
        mode: args.mode,
        method: args.method,
        weight_cap: args.weight_cap,
        budget_nodes: args.budget_nodes,
        result: None,
        budget_exhausted: false,
        best_upper: None,
    };
    match outcome {
        Ok(r) => report.result = Some(r),
        Err(Error::BudgetExhausted { best_upper, .. }) => {
            report.budget_exhausted = true;
            report.best_upper = best_upper;
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SearchArgs {
    pub n: u64,
    pub nu: u32,
    pub include_reducible: bool,
    pub class: InverseClass,
    pub weight_cap: u32,
    pub budget_nodes: Option<u64>,
    pub max_exact: Option<usize>,
}

pub fn cmd_search(args: &SearchArgs) -> Result<SearchReport> {
    let mut config = SearchConfig::new(args.n);
    config.spec = ConstituentSpec::with_degree(args.nu)?;
    config.irreducible_only = !args.include_reducible;
    config.inverse_class = args.class;
    config.weight_cap = args.weight_cap;
    config.exact_budget = args.budget_nodes;
    config.max_exact = args.max_exact;
    run_search(&config)
}

pub fn cmd_regress(
    min_n: u64,
    max_n: u64,
    exact_max_n: u64,
    weight_cap: u32,
    budget_nodes: Option<u64>,
) -> Result<RegressionReport> {
    let config = RegressionConfig {
        min_n,
        max_n,
        exact_max_n,
        exact: ExactConfig {
            weight_cap,
            budget_nodes,
            ..ExactConfig::default()
        },
        estimate: EstimateConfig {
            weight_cap,
            ..EstimateConfig::default()
        },
    };
    dataset::lte_regression(&config)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LteTableReport {
    pub version: u32,
    pub sha256: String,
    pub rows: Vec<LteRow>,
}

pub fn cmd_lte_table() -> Result<LteTableReport> {
    Ok(LteTableReport {
        version: TABLE_VERSION,
        sha256: TABLE_SHA256.to_string(),
        rows: dataset::lte_table()?,
    })
}

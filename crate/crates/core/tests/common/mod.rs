#![allow(dead_code)]

use qpp_core::permpoly::{inverse_degree_exponent_floor, is_quadratic_pp};
use qpp_core::{factorize, Qpp};

/// Some QPP of length `n`, scanning coefficient pairs from the given seeds.
pub fn qpp_near(n: u64, s1: u64, s2: u64) -> Option<Qpp> {
    let fact = factorize(n).ok()?;
    let step = fact.primes().filter(|&p| p != 2 || fact.exponent(2) != 1).product::<u64>();
    let slots = (n - 1) / step;
    if slots == 0 {
        return None;
    }
    for i in 0..slots {
        let f2 = ((s2 + i) % slots + 1) * step;
        for j in 0..n {
            let f1 = (s1 + j) % n;
            if is_quadratic_pp(n, f1, f2) {
                return Qpp::new(n, f1, f2).ok();
            }
        }
    }
    None
}

/// Some QPP of length `n` with an inverse polynomial of degree at most two.
pub fn quadratic_inverse_qpp(n: u64, s1: u64, s2: u64) -> Option<Qpp> {
    let fact = factorize(n).ok()?;
    let base: u64 = inverse_degree_exponent_floor(&fact, 2)
        .into_iter()
        .map(|(p, need)| p.pow(need.min(fact.exponent(p))))
        .product();
    let slots = (n - 1) / base;
    if slots == 0 {
        return None;
    }
    for i in 0..slots {
        let f2 = ((s2 + i) % slots + 1) * base;
        for j in 0..n {
            let f1 = (s1 + j) % n;
            if is_quadratic_pp(n, f1, f2) {
                let q = Qpp::new(n, f1, f2).ok()?;
                if q.least_inverse_degree().degree <= 2 {
                    return Some(q);
                }
                break;
            }
        }
    }
    None
}

use std::collections::BTreeSet;

use qpp_core::patterns::{critical_patterns, fig1_pattern, fig2_pattern, fig45_check, place_pattern};
use qpp_core::permpoly::{permutation, ModPolynomial};
use qpp_core::{ConstituentSpec, TerminationMode, TurboCode};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn xor(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

/// The coefficient criterion and `permutation` agree with evaluating every residue.
pub fn check_bijectivity(n: u64, f1: u64, f2: u64) -> Check {
    let values: Vec<u64> = (0..n).map(|x| (f1 * x + f2 * x * x) % n).collect();
    let mut sorted = values.clone();
    sorted.sort_unstable();
    let bijective = sorted.iter().enumerate().all(|(i, &v)| v == i as u64);
    ensure!(is_quadratic_pp(n, f1, f2) == bijective, "criterion disagrees at N={n} f={f1},{f2}");
    if f2 != 0 {
        match Qpp::new(n, f1, f2) {
            Ok(q) => ensure!(
                bijective && permutation(&q).ok() == Some(values),
                "permutation mismatch at N={n} f={f1},{f2}"
            ),
            Err(_) => ensure!(!bijective, "valid pair rejected at N={n} f={f1},{f2}"),
        }
    }
    Ok(())
}

pub fn check_encoder_linearity(nu: u32, a: &[bool], b: &[bool]) -> Check {
    let spec = ConstituentSpec::with_degree(nu).map_err(|e| e.to_string())?;
    let (pa, sa) = spec.encode_from_state(a, 0);
    let (pb, sb) = spec.encode_from_state(b, 0);
    let (pab, sab) = spec.encode_from_state(&xor(a, b), 0);
    ensure!(pab == xor(&pa, &pb) && sab == sa ^ sb, "constituent encoder not linear (nu={nu})");
    Ok(())
}

pub fn check_turbo_linearity(q: Qpp, a: &[bool], b: &[bool]) -> Check {
    let code = TurboCode::lte(q).map_err(|e| e.to_string())?;
    for mode in [TerminationMode::Tailbiting, TerminationMode::Dual] {
        let enc = |w: &[bool]| code.encode(mode, w).map_err(|e| e.to_string());
        if let (Some(ea), Some(eb)) = (enc(a)?, enc(b)?) {
            let Some(eab) = enc(&xor(a, b))? else {
                return Err(format!("sum of codewords not a codeword for {q} {mode:?}"));
            };
            ensure!(
                eab.parity_upper == xor(&ea.parity_upper, &eb.parity_upper)
                    && eab.parity_lower == xor(&ea.parity_lower, &eb.parity_lower),
                "turbo encoder not linear for {q} {mode:?}"
            );
        }
    }
    Ok(())
}

/// A weight-2 input spanning `k` zero-input periods has parity weight `2 + k 2^(nu-1)`.
pub fn check_weight2_parity(nu: u32, k: u32) -> Check {
    let spec = ConstituentSpec::with_degree(nu).map_err(|e| e.to_string())?;
    let sep = k as usize * ((1 << nu) - 1);
    let (parity, end) = spec.sparse_parity(&[0, sep], 0, sep + 1);
    ensure!(end == 0, "weight-2 input does not terminate (nu={nu}, k={k})");
    ensure!(parity == 2 + k * (1 << (nu - 1)), "parity {parity} for nu={nu}, k={k}");
    ensure!(spec.weight2_event_weight(k) == parity, "weight2_event_weight disagrees");
    Ok(())
}

/// Shifting any input by the quasi-cyclic period keeps its tailbiting codeword weight.
pub fn check_qc_shift(q: Qpp, positions: &BTreeSet<usize>) -> Check {
    let n = q.modulus();
    if n % 7 == 0 {
        return Ok(());
    }
    let code = TurboCode::lte(q).map_err(|e| e.to_string())?;
    let positions: Vec<usize> = positions.iter().copied().collect();
    let base = code.sparse_weight(TerminationMode::Tailbiting, &positions);
    let period = q.qc_period();
    for shift in [period, 2 * period % n, n - period] {
        let mut moved: Vec<usize> = positions.iter().map(|&p| ((p as u64 + shift) % n) as usize).collect();
        moved.sort_unstable();
        ensure!(
            code.sparse_weight(TerminationMode::Tailbiting, &moved) == base,
            "shift by {shift} changes the weight for {q}"
        );
    }
    Ok(())
}

/// Each template is a codeword at every start or at none.
pub fn check_x_independence(q: Qpp, xs: &[u64]) -> Check {
    let n = q.modulus();
    let g = q.inverse();
    let spec = ConstituentSpec::lte();
    let err = |e: qpp_core::Error| e.to_string();
    let mut patterns = Vec::new();
    if g.degree() <= 2 {
        patterns.push(fig45_check(&q, &g, &spec).map_err(err)?);
    }
    for l in 0..=2 {
        if 7u64 << l < n {
            patterns.push(fig1_pattern(&q, &g, l).map_err(err)?);
        }
    }
    patterns.push(fig2_pattern(&q, &g).map_err(err)?);
    for p in &patterns {
        for &x in xs {
            ensure!(
                p.is_codeword_at(x % n) == p.congruence_holds,
                "{:?} for {q} depends on the start (x={})",
                p.figure,
                x % n
            );
        }
    }
    Ok(())
}

/// Placed templates are codewords; separated ones weigh exactly the prediction.
pub fn check_placed_patterns(q: Qpp) -> Check {
    let code = TurboCode::lte(q).map_err(|e| e.to_string())?;
    let n = q.modulus() as usize;
    for p in critical_patterns(&q, &ConstituentSpec::lte(), 2).map_err(|e| e.to_string())? {
        if let Some(placed) = place_pattern(&p) {
            let weight = code
                .encode(TerminationMode::Dual, &placed.input_word(n))
                .map_err(|e| e.to_string())?
                .map(|c| c.weight());
            ensure!(
                weight.is_some() && (placed.overlapping || weight == Some(p.predicted_weight_cap)),
                "{:?} for {q} encodes to {weight:?}, predicted {}",
                p.figure,
                p.predicted_weight_cap
            );
        }
    }
    Ok(())
}

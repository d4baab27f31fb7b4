//! Permutation polynomials over the integer ring Z_N.
//!
//! Quadratic permutation polynomials `f(x) = f1*x + f2*x^2 (mod N)` are the
//! interleavers; general-degree polynomials appear only as their inverses.
//! Everything here is a pure function of its inputs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, gcd, inv_mod, mul_mod, pow_mod, valuation};
use crate::error::{Error, Result};

/// Largest modulus accepted by the ring code.
pub const MAX_MODULUS: u64 = 1 << 50;

/// Upper limit on the inverse degree scanned when applying the
/// inverse-degree criterion; far above anything reachable for `N <= 2^50`.
const MAX_INVERSE_DEGREE: u32 = 256;

/// Prime factorization `n = prod p^e` with every stored exponent `>= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Factorization {
    exponents: BTreeMap<u64, u32>,
}

impl Factorization {
    /// Exponent of `p`; zero for primes that do not divide the number.
    pub fn exponent(&self, p: u64) -> u32 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.exponents.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The factored integer.
    pub fn value(&self) -> u64 {
        self.iter().map(|(p, e)| p.pow(e)).product()
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// Largest exponent among primes not listed in `excluded` (0 if none).
    pub fn max_exponent_excluding(&self, excluded: &[u64]) -> u32 {
        self.iter()
            .filter(|(p, _)| !excluded.contains(p))
            .map(|(_, e)| e)
            .max()
            .unwrap_or(0)
    }

    pub fn as_map(&self) -> &BTreeMap<u64, u32> {
        &self.exponents
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Trial division with a 2-3-5 wheel. `n` must lie in `[1, 2^50]`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 || n > MAX_MODULUS {
        return Err(Error::OutOfRange {
            value: n,
            min: 1,
            max: MAX_MODULUS,
        });
    }
    let mut exponents = BTreeMap::new();
    let mut rest = n;
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            exponents.insert(p, e);
        }
    }
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut i = 0;
    while d * d <= rest {
        let mut e = 0;
        while rest % d == 0 {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            exponents.insert(d, e);
        }
        d += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if rest > 1 {
        *exponents.entry(rest).or_insert(0) += 1;
    }
    Ok(Factorization { exponents })
}

/// Exponent of `p` in `k!` (Legendre).
fn factorial_valuation(k: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = p;
    while q <= k {
        v += (k / q) as u32;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    v
}

/// Exponent of `p` in `phi(k) = k * (k+1) * ... * (2k-2)`.
fn phi_valuation(k: u64, p: u64) -> u32 {
    (k..=2 * k - 2).map(|l| valuation(l, p)).sum()
}

/// Whether `f1*x + f2*x^2` permutes `Z_n`, via the coefficient criterion.
///
/// `f2 = 0` is accepted whenever the linear part alone permutes; out-of-range
/// moduli (below 2 or above `2^50`) are reported as not permuting.
pub fn is_quadratic_pp(n: u64, f1: u64, f2: u64) -> bool {
    if n < 2 {
        return false;
    }
    let Ok(fact) = factorize(n) else {
        return false;
    };
    is_quadratic_pp_with(&fact, n, f1 % n, f2 % n)
}

fn is_quadratic_pp_with(fact: &Factorization, n: u64, f1: u64, f2: u64) -> bool {
    if fact.exponent(2) != 1 {
        gcd(f1, n) == 1 && fact.primes().all(|p| f2 % p == 0)
    } else {
        (f1 + f2) % 2 == 1 && gcd(f1, n / 2) == 1 && fact.primes().filter(|&p| p != 2).all(|p| f2 % p == 0)
    }
}

/// Number of genuinely quadratic (`f2 != 0`) coefficient pairs in `[0, n)^2`
/// that make `f1*x + f2*x^2` a permutation of `Z_n`.
pub fn count_valid_pairs(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::OutOfRange {
            value: n,
            min: 2,
            max: MAX_MODULUS,
        });
    }
    let fact = factorize(n)?;
    let totient = |fact: &Factorization| -> u64 { fact.iter().map(|(p, e)| (p - 1) * p.pow(e - 1)).product() };
    if fact.exponent(2) != 1 {
        // f1 coprime to n, f2 a nonzero multiple of rad(n).
        Ok(totient(&fact) * (n / fact.radical() - 1))
    } else {
        // Half of the residues coprime to n/2 have the parity that makes f1 + f2 odd.
        let odd = factorize(n / 2)?;
        Ok(totient(&odd) * (n / odd.radical() - 1))
    }
}

/// Smallest exponent of each prime of `n` that the inverse-degree criterion
/// requires of `f2` for an inverse of degree `degree` to exist.
pub fn inverse_degree_exponent_floor(fact: &Factorization, degree: u32) -> BTreeMap<u64, u32> {
    let l = degree as i64;
    fact.iter()
        .map(|(p, e)| {
            let need = if p == 2 && e <= 1 {
                0
            } else {
                let nphi = phi_valuation(degree as u64 + 1, p) as i64;
                ceil_div(e as i64 - nphi, l).max(1)
            };
            (p, need as u32)
        })
        .collect()
}

/// Anything that evaluates as a polynomial over `Z_N`.
pub trait ModPolynomial {
    fn modulus(&self) -> u64;
    fn eval(&self, x: u64) -> u64;
}

/// Least inverse degree `L` and the number of inverse polynomials of degree at most `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseDegree {
    pub degree: u32,
    pub inverse_count: BigUint,
}

/// `f(x) = f1*x + f2*x^2 (mod N)`, validated as a permutation at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Qpp {
    modulus: u64,
    f1: u64,
    f2: u64,
}

impl Qpp {
    pub fn new(modulus: u64, f1: u64, f2: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(Error::OutOfRange {
                value: modulus,
                min: 2,
                max: MAX_MODULUS,
            });
        }
        let (f1, f2) = (f1 % modulus, f2 % modulus);
        if !is_quadratic_pp(modulus, f1, f2) {
            return Err(Error::NotPermutation { modulus, f1, f2 });
        }
        Ok(Self { modulus, f1, f2 })
    }

    pub fn f1(&self) -> u64 {
        self.f1
    }

    pub fn f2(&self) -> u64 {
        self.f2
    }

    pub fn factorization(&self) -> Factorization {
        factorize(self.modulus).expect("modulus validated at construction")
    }

    /// A QPP is irreducible when no linear polynomial yields the same permutation.
    pub fn is_irreducible(&self) -> bool {
        qc_period(self) != 1
    }

    /// Period of the quasi-cyclic symmetry of the tailbiting turbo code.
    pub fn qc_period(&self) -> u64 {
        qc_period(self)
    }

    pub fn least_inverse_degree(&self) -> InverseDegree {
        least_inverse_degree(self)
    }

    /// An inverse polynomial of least degree.
    pub fn inverse(&self) -> PermPoly {
        let degree = self.least_inverse_degree().degree;
        find_inverse(self, degree).expect("inverse-degree criterion guarantees an inverse")
    }

    pub fn to_perm_poly(&self) -> PermPoly {
        PermPoly::new(self.modulus, vec![self.f1, self.f2]).expect("a permutation is never the zero polynomial")
    }
}

impl ModPolynomial for Qpp {
    fn modulus(&self) -> u64 {
        self.modulus
    }

    fn eval(&self, x: u64) -> u64 {
        let n = self.modulus;
        let x = x % n;
        mul_mod(x, (self.f1 + mul_mod(self.f2, x, n)) % n, n)
    }
}

impl fmt::Display for Qpp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}x^2 (mod {})", self.f1, self.f2, self.modulus)
    }
}

/// `g(x) = g1*x + ... + gL*x^L (mod N)` with `gL != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl PermPoly {
    /// Coefficients are listed from `g1` upwards; trailing zeros are dropped.
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(Error::OutOfRange {
                value: modulus,
                min: 2,
                max: MAX_MODULUS,
            });
        }
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Unsupported("the zero polynomial has no degree".into()));
        }
        Ok(Self { modulus, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `[g1, ..., gL]`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (`k >= 1`), zero beyond the degree.
    pub fn coeff(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.coeffs.get(k - 1).copied().unwrap_or(0)
        }
    }

    /// Whether `self(q(x)) == x` for every `x` in `Z_N`.
    ///
    /// `self(q(x)) - x` has degree at most `2L`, and an integer polynomial of
    /// degree `d` vanishes on all of `Z_N` iff it vanishes at `0..=d` (its
    /// forward differences then all vanish), so `2L + 1` points suffice.
    pub fn is_inverse_of(&self, q: &Qpp) -> bool {
        if self.modulus != q.modulus() {
            return false;
        }
        (0..=2 * self.degree() as u64).all(|x| self.eval(q.eval(x)) == x % self.modulus)
    }
}

impl ModPolynomial for PermPoly {
    fn modulus(&self) -> u64 {
        self.modulus
    }

    fn eval(&self, x: u64) -> u64 {
        let n = self.modulus;
        let x = x % n;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = mul_mod((acc + c) % n, x, n);
        }
        acc
    }
}

impl fmt::Display for PermPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{}", k + 1)?,
            }
        }
        write!(f, " (mod {})", self.modulus)
    }
}

/// `N / gcd(2*f2, N)`.
pub fn qc_period(q: &Qpp) -> u64 {
    let n = q.modulus();
    n / gcd((2 * q.f2()) % n, n)
}

/// Whether `q` is irreducible, i.e. not equivalent to a linear permutation polynomial.
pub fn is_irreducible(q: &Qpp) -> bool {
    q.is_irreducible()
}

/// Least degree of an inverse polynomial, from the prime-exponent criterion.
pub fn least_inverse_degree(q: &Qpp) -> InverseDegree {
    let fact = q.factorization();
    let f2 = q.f2();
    let degree = (1..=MAX_INVERSE_DEGREE)
        .find(|&l| {
            inverse_degree_exponent_floor(&fact, l)
                .into_iter()
                .all(|(p, need)| valuation(f2, p) >= need)
        })
        .expect("every valid QPP has an inverse of bounded degree");
    let mut inverse_count = BigUint::from(1u32);
    for k in 1..=degree as u64 {
        // gcd(k!, N) from prime exponents.
        let g: u64 = fact
            .iter()
            .map(|(p, e)| p.pow(factorial_valuation(k, p).min(e)))
            .product();
        inverse_count *= g;
    }
    InverseDegree { degree, inverse_count }
}

/// Some inverse `g` of degree at most `max_degree` with `g(f(x)) == x` on
/// `Z_N`, or `None` when no such polynomial exists.
///
/// The unknown coefficients enter linearly, so the identity at `x = 1..=2L`
/// is a linear system over `Z_N`. It is solved separately over each
/// prime-power component by Smith reduction and recombined by the Chinese
/// remainder theorem. The result is deterministic but is only one of the
/// possibly many inverses.
pub fn find_inverse(q: &Qpp, max_degree: u32) -> Option<PermPoly> {
    if max_degree == 0 {
        return None;
    }
    let n = q.modulus();
    let l = max_degree as usize;
    let mut combined = vec![0u64; l];
    let mut modulus_so_far = 1u64;
    for (p, e) in q.factorization().iter() {
        let m = p.pow(e);
        let rows: Vec<Vec<u64>> = (1..=2 * l as u64)
            .map(|x| {
                let fx = q.eval(x) % m;
                (1..=l as u64).map(|k| pow_mod(fx, k, m)).collect()
            })
            .collect();
        let rhs: Vec<u64> = (1..=2 * l as u64).map(|x| x % m).collect();
        let local = solve_prime_power(rows, rhs, p, m)?;
        for (acc, &r) in combined.iter_mut().zip(&local) {
            *acc = crt_pair(*acc, modulus_so_far, r, m);
        }
        modulus_so_far *= m;
    }
    debug_assert_eq!(modulus_so_far, n);
    PermPoly::new(n, combined).ok()
}

fn crt_pair(a: u64, m1: u64, b: u64, m2: u64) -> u64 {
    // x = a + m1 * t with m1 * t == b - a (mod m2).
    let inv = inv_mod(m1 % m2, m2).expect("coprime moduli");
    let diff = (b as i128 - a as i128).rem_euclid(m2 as i128) as u64;
    let t = mul_mod(diff, inv, m2);
    a + m1 * t
}

/// Solves `A y == b (mod p^e)` through a Smith decomposition `P A Q = D`,
/// picking the zero lift for every free parameter.
fn solve_prime_power(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, p: u64, m: u64) -> Option<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut q: Vec<Vec<u64>> = (0..cols)
        .map(|i| (0..cols).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, &v) in row.iter().enumerate().skip(rank) {
                if v != 0 {
                    let val = valuation(v, p);
                    if best.is_none_or(|(bv, _, _)| val < bv) {
                        best = Some((val, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(rank, pi);
        b.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        for row in q.iter_mut() {
            row.swap(rank, pj);
        }
        let pv = p.pow(v);
        let unit_inv = inv_mod((a[rank][rank] / pv) % m, m).expect("unit part is invertible");
        for i in 0..rows {
            if i == rank || a[i][rank] == 0 {
                continue;
            }
            let factor = mul_mod(a[i][rank] / pv, unit_inv, m);
            for j in 0..cols {
                let sub = mul_mod(factor, a[rank][j], m);
                a[i][j] = (a[i][j] + m - sub) % m;
            }
            b[i] = (b[i] + m - mul_mod(factor, b[rank], m)) % m;
        }
        for j in 0..cols {
            if j == rank || a[rank][j] == 0 {
                continue;
            }
            let factor = mul_mod(a[rank][j] / pv, unit_inv, m);
            for row in a.iter_mut() {
                let sub = mul_mod(factor, row[rank], m);
                row[j] = (row[j] + m - sub) % m;
            }
            for row in q.iter_mut() {
                let sub = mul_mod(factor, row[rank], m);
                row[j] = (row[j] + m - sub) % m;
            }
        }
        rank += 1;
    }
    if b.iter().skip(rank).any(|&r| r != 0) {
        return None;
    }
    let mut y = vec![0u64; cols];
    for k in 0..rank {
        let d = a[k][k];
        let v = valuation(d, p);
        let pv = p.pow(v);
        if b[k] % pv != 0 {
            return None;
        }
        let reduced = m / pv;
        let unit_inv = inv_mod((d / pv) % reduced, reduced).unwrap_or(0);
        y[k] = mul_mod((b[k] / pv) % reduced, unit_inv, reduced);
    }
    Some(
        (0..cols)
            .map(|i| {
                q[i].iter()
                    .zip(&y)
                    .fold(0u64, |acc, (&qij, &yj)| (acc + mul_mod(qij, yj, m)) % m)
            })
            .collect(),
    )
}

/// Materializes the index map `x -> p(x)` and checks that it is a bijection.
pub fn permutation<P: ModPolynomial + ?Sized>(poly: &P) -> Result<Vec<u64>> {
    let n = poly.modulus();
    let len = usize::try_from(n).map_err(|_| Error::OutOfRange {
        value: n,
        min: 2,
        max: usize::MAX as u64,
    })?;
    let mut seen = vec![false; len];
    let mut out = Vec::with_capacity(len);
    for x in 0..n {
        let y = poly.eval(x);
        if std::mem::replace(&mut seen[y as usize], true) {
            return Err(Error::NotBijective(n));
        }
        out.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_is_perm(n: u64, f1: u64, f2: u64) -> bool {
        let mut seen = vec![false; n as usize];
        (0..n).all(|x| {
            let y = ((f1 * x + f2 * x * x) % n) as usize;
            !std::mem::replace(&mut seen[y], true)
        })
    }

    #[test]
    fn factorization_examples() {
        let f = factorize(3888).unwrap();
        assert_eq!(f.as_map(), &BTreeMap::from([(2, 4), (3, 5)]));
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(5504).unwrap().as_map(), &BTreeMap::from([(2, 7), (43, 1)]));
        assert_eq!(factorize(MAX_MODULUS).unwrap().exponent(2), 50);
        let big = factorize(MAX_MODULUS - 1).unwrap();
        assert_eq!(big.value(), MAX_MODULUS - 1);
        assert!(matches!(factorize(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(factorize(MAX_MODULUS + 1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn validity_examples() {
        assert!(is_quadratic_pp(256, 15, 32));
        assert!(!is_quadratic_pp(256, 2, 32));
        assert!(!brute_is_perm(256, 2, 32));
        assert!(is_quadratic_pp(90, 2, 15));
        assert!(brute_is_perm(90, 2, 15));
    }

    #[test]
    fn pair_counts() {
        assert_eq!(count_valid_pairs(256).unwrap(), 16256);
        for n in [2u64, 40, 6, 18, 90, 97, 100] {
            let brute = (0..n)
                .flat_map(|f1| (1..n).map(move |f2| (f1, f2)))
                .filter(|&(f1, f2)| brute_is_perm(n, f1, f2))
                .count() as u64;
            assert_eq!(count_valid_pairs(n).unwrap(), brute, "n = {n}");
        }
        assert_eq!(count_valid_pairs(2).unwrap(), 1);
    }

    #[test]
    fn irreducibility_and_period() {
        let q = Qpp::new(40, 3, 10).unwrap();
        assert!(q.is_irreducible());
        assert_eq!(q.qc_period(), 2);
        let q = Qpp::new(12, 1, 6).unwrap();
        assert!(!q.is_irreducible());
        assert_eq!(q.qc_period(), 1);
        assert!(!Qpp::new(8, 3, 0).unwrap().is_irreducible());
        assert_eq!(Qpp::new(2048, 31, 128).unwrap().qc_period(), 8);
    }

    #[test]
    fn inverse_degree_examples() {
        assert_eq!(Qpp::new(5504, 21, 172).unwrap().least_inverse_degree().degree, 3);
        assert_eq!(Qpp::new(2048, 21, 128).unwrap().least_inverse_degree().degree, 2);
        assert_eq!(Qpp::new(5504, 21, 1118).unwrap().least_inverse_degree().degree, 4);
        let fact = factorize(5504).unwrap();
        assert_eq!(inverse_degree_exponent_floor(&fact, 3), BTreeMap::from([(2, 2), (43, 1)]));
        // prod_{k=1}^{2} gcd(k!, 640) = 1 * 2
        let d = Qpp::new(640, 141, 120).unwrap().least_inverse_degree();
        assert_eq!(d.inverse_count, BigUint::from(2u32));
    }

    #[test]
    fn inverse_examples() {
        let q = Qpp::new(640, 141, 120).unwrap();
        let g = find_inverse(&q, 2).unwrap();
        assert!(g.is_inverse_of(&q));
        assert!(PermPoly::new(640, vec![581, 360]).unwrap().is_inverse_of(&q));

        let q = Qpp::new(1504, 49, 658).unwrap();
        assert!(find_inverse(&q, 2).is_none());
        let g = find_inverse(&q, 3).unwrap();
        assert_eq!(g.degree(), 3);
        assert!(g.is_inverse_of(&q));
        assert!(PermPoly::new(1504, vec![353, 470, 1128]).unwrap().is_inverse_of(&q));

        let id = Qpp::new(8, 1, 0).unwrap();
        assert_eq!(find_inverse(&id, 1).unwrap().coeffs(), &[1]);
        assert!(find_inverse(&id, 0).is_none());
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(permutation(&Qpp::new(4, 1, 0).unwrap()).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(permutation(&Qpp::new(8, 1, 2).unwrap()).unwrap(), vec![0, 3, 2, 5, 4, 7, 6, 1]);
        let not_perm = PermPoly::new(8, vec![2]).unwrap();
        assert_eq!(permutation(&not_perm), Err(Error::NotBijective(8)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Qpp::new(40, 3, 10).unwrap().to_string(), "3x + 10x^2 (mod 40)");
        assert_eq!(
            PermPoly::new(1504, vec![353, 470, 1128]).unwrap().to_string(),
            "353x + 470x^2 + 1128x^3 (mod 1504)"
        );
    }

    #[test]
    fn rejects_invalid_construction() {
        assert!(matches!(Qpp::new(256, 2, 32), Err(Error::NotPermutation { .. })));
        assert!(Qpp::new(1, 0, 0).is_err());
        assert!(PermPoly::new(8, vec![0, 0]).is_err());
    }
}

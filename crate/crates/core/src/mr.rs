//! The conditional independence oracle for MR(m, n, a, b) over Q: pattern scaling into a
//! tensor of rational Reed-Solomon codes, decided by structural certificates, ranks modulo
//! a fixed prime ladder, kernel reconstruction and exact elimination. Also a randomized
//! reference oracle built from random codes over a large prime field.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{random_linear_code, LinearCode};
use crate::error::{invalid, Error, Result};
use crate::field::{format_rational, Field, Gf, Rationals};
use crate::integer::{bareiss_rank, IntMatrix};
use crate::matrix::Matrix;
use crate::ntheory::{derive_seed, is_prime, pow_mod};
use crate::poly::Poly;
use crate::subspace::combinations;
use crate::tensor::{all_patterns, is_correctable, ErasurePattern, MatroidOracle, OracleProvenance};

/// Smallest prime the reference oracle accepts by default.
pub const DEFAULT_GENERIC_FLOOR: u64 = (1 << 61) - 1;
/// Cap on rows * unknowns^2 for one modular elimination.
pub const DEFAULT_MODULAR_GUARD: f64 = 5e9;
/// Cap on rows * unknowns^2 * (entry bits / 64) for exact elimination.
pub const DEFAULT_EXACT_GUARD: f64 = 2e9;
const LADDER_LEN: usize = 16;

/// The 16 largest primes not exceeding 2^61 - 1, in decreasing order.
pub fn prime_ladder() -> &'static [u64] {
    static LADDER: OnceLock<Vec<u64>> = OnceLock::new();
    LADDER.get_or_init(|| {
        let mut out = Vec::with_capacity(LADDER_LEN);
        let mut p = DEFAULT_GENERIC_FLOOR;
        while out.len() < LADDER_LEN {
            if is_prime(p) {
                out.push(p);
            }
            p -= 2;
        }
        out
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Paper,
    Reduced,
    Modular,
}

/// Values for reduced mode; unset entries fall back to the full-size formulas.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub d: Option<usize>,
    pub d_prime: Option<usize>,
}

impl Overrides {
    /// The smallest values meeting both margins:
    /// d = (m-1)(n-b)+1, t = d m + 1, d' = (t n - 1)(m - a) + 1, s = d' t n + 1.
    pub fn minimal(m: usize, n: usize, a: usize, b: usize) -> Self {
        let d = (m - 1) * (n - b) + 1;
        let t = d * m + 1;
        let d_prime = (t * n - 1) * (m - a) + 1;
        let s = d_prime * t * n + 1;
        Overrides { s: Some(s), t: Some(t), d: Some(d), d_prime: Some(d_prime) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Algorithm1Params {
    pub m: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub t: usize,
    pub d: usize,
    pub d_prime: usize,
    pub a_prime: usize,
    pub b_prime: usize,
    pub gamma: i64,
    pub alphas: Vec<i64>,
    pub betas: Vec<i64>,
    pub mode: Mode,
    pub primes: Vec<u64>,
    /// False when a = 1 or m - a <= 3, where the underlying conjecture is proved.
    pub conditional: bool,
}

impl Algorithm1Params {
    /// s = 8 m^5 n^4, t = 2 m^2 n, d = m n, d' = 2 m^3 n^2.
    pub fn paper(m: usize, n: usize, a: usize, b: usize) -> Result<Self> {
        Self::build(m, n, a, b, Overrides::default(), Mode::Paper, prime_ladder().to_vec())
    }

    pub fn reduced(m: usize, n: usize, a: usize, b: usize, o: Overrides) -> Result<Self> {
        Self::build(m, n, a, b, o, Mode::Reduced, prime_ladder().to_vec())
    }

    /// Full-size formulas with a caller-chosen prime list.
    pub fn modular(m: usize, n: usize, a: usize, b: usize, primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() {
            return invalid("modular mode needs at least one prime");
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        Self::build(m, n, a, b, Overrides::default(), Mode::Modular, primes)
    }

    fn build(m: usize, n: usize, a: usize, b: usize, o: Overrides, mode: Mode, primes: Vec<u64>) -> Result<Self> {
        if m == 0 || n == 0 {
            return invalid("the grid must be nonempty");
        }
        if a > m || b > n {
            return invalid(format!("need a <= m and b <= n, got (m, n, a, b) = ({m}, {n}, {a}, {b})"));
        }
        let s = o.s.unwrap_or(8 * m.pow(5) * n.pow(4));
        let t = o.t.unwrap_or(2 * m * m * n);
        let d = o.d.unwrap_or(m * n);
        let d_prime = o.d_prime.unwrap_or(2 * m.pow(3) * n * n);
        if d * m >= t {
            return Err(Error::Precondition(format!("row margin d < t/m fails: d = {d}, t = {t}, m = {m}")));
        }
        if d <= (m - 1) * (n - b) {
            return Err(Error::Precondition(format!("row margin d > (m-1)(n-b) fails: d = {d}")));
        }
        if d_prime * t * n >= s {
            return Err(Error::Precondition(format!(
                "column margin d' < s/(t n) fails: d' = {d_prime}, s = {s}, t n = {}",
                t * n
            )));
        }
        if d_prime <= (t * n - 1) * (m - a) {
            return Err(Error::Precondition(format!("column margin d' > (t n - 1)(m - a) fails: d' = {d_prime}")));
        }
        Ok(Algorithm1Params {
            m,
            n,
            a,
            b,
            s,
            t,
            d,
            d_prime,
            a_prime: s * a + d_prime,
            b_prime: t * b + d,
            gamma: 2,
            alphas: (0..m as i64).map(|i| 2 * i + 1).collect(),
            betas: (0..n as i64).map(|j| 2 * j + 1).collect(),
            mode,
            primes,
            conditional: !(a == 1 || m - a <= 3),
        })
    }

    pub fn k_col(&self) -> usize {
        (self.s * self.m).saturating_sub(self.a_prime)
    }

    pub fn k_row(&self) -> usize {
        (self.t * self.n).saturating_sub(self.b_prime)
    }

    /// gamma^x alpha_i for block i, x < s, then the same for rows with beta and t.
    pub fn tensor(&self) -> RationalTensor {
        let pts = |bases: &[i64], reps: usize| -> Vec<BigInt> {
            bases.iter().flat_map(|&c| (0..reps).map(move |x| BigInt::from(c) << x)).collect()
        };
        RationalTensor {
            col_points: pts(&self.alphas, self.s),
            k_col: self.k_col(),
            row_points: pts(&self.betas, self.t),
            k_row: self.k_row(),
        }
    }

    /// Odd distinct bases with gamma = 2 give pairwise distinct points gamma^x * base.
    pub fn points_distinct(&self) -> bool {
        let ok = |v: &[i64]| v.iter().all(|x| x % 2 != 0) && (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]));
        self.gamma == 2 && ok(&self.alphas) && ok(&self.betas)
    }
}

/// C_col ⊗ C_row for rational RS codes with Vandermonde generators over integer points.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalTensor {
    pub col_points: Vec<BigInt>,
    pub k_col: usize,
    pub row_points: Vec<BigInt>,
    pub k_row: usize,
}

impl RationalTensor {
    pub fn unknowns(&self) -> usize {
        self.k_col * self.k_row
    }
    pub fn rows(&self) -> usize {
        self.col_points.len()
    }
    pub fn cols(&self) -> usize {
        self.row_points.len()
    }

    fn outside(&self, erased: &(dyn Fn(usize, usize) -> bool + Sync)) -> Vec<(usize, usize)> {
        (0..self.rows()).flat_map(|r| (0..self.cols()).map(move |c| (r, c))).filter(|&(r, c)| !erased(r, c)).collect()
    }

    /// The integer constraint matrix reduced mod p (entrywise reduction commutes with products).
    pub fn modular_constraints(&self, erased: &(dyn Fn(usize, usize) -> bool + Sync), p: u64) -> Result<Matrix<Gf>> {
        let field = Gf::prime(p)?;
        let powers = |pts: &[BigInt], k: usize| -> Vec<Vec<u64>> {
            pts.iter()
                .map(|x| {
                    let x = field.from_bigint(x);
                    (0..k as u64).map(|e| pow_mod(x, e, p)).collect()
                })
                .collect()
        };
        let (cp, rp) = (powers(&self.col_points, self.k_col), powers(&self.row_points, self.k_row));
        let outside = self.outside(erased);
        let mut data = Vec::with_capacity(outside.len() * self.unknowns());
        for (r, c) in outside {
            for a in &cp[r] {
                for b in &rp[c] {
                    data.push(field.mul(a, b));
                }
            }
        }
        Matrix::new(field, data.len() / self.unknowns().max(1), self.unknowns(), data)
    }

    pub fn integer_constraints(&self, erased: &(dyn Fn(usize, usize) -> bool + Sync)) -> IntMatrix {
        let powers = |pts: &[BigInt], k: usize| -> Vec<Vec<BigInt>> {
            pts.iter().map(|x| (0..k as u32).map(|e| x.pow(e)).collect()).collect()
        };
        let (cp, rp) = (powers(&self.col_points, self.k_col), powers(&self.row_points, self.k_row));
        let outside = self.outside(erased);
        let mut data = Vec::with_capacity(outside.len() * self.unknowns());
        for &(r, c) in &outside {
            for a in &cp[r] {
                for b in &rp[c] {
                    data.push(a * b);
                }
            }
        }
        IntMatrix { rows: outside.len(), cols: self.unknowns(), data }
    }

    fn bits(&self) -> u64 {
        let b = |pts: &[BigInt], k: usize| pts.iter().map(|x| x.bits()).max().unwrap_or(0) * k.saturating_sub(1) as u64;
        b(&self.col_points, self.k_col) + b(&self.row_points, self.k_row) + 1
    }

    fn constraint_rows(&self, erased: &(dyn Fn(usize, usize) -> bool + Sync)) -> usize {
        (0..self.rows()).map(|r| (0..self.cols()).filter(|&c| !erased(r, c)).count()).sum()
    }

    pub fn modular_cost(&self, erased: &(dyn Fn(usize, usize) -> bool + Sync)) -> f64 {
        let u = self.unknowns() as f64;
        self.constraint_rows(erased) as f64 * u * u
    }

    pub fn exact_cost(&self, erased: &(dyn Fn(usize, usize) -> bool + Sync)) -> f64 {
        let u = self.unknowns() as f64;
        self.constraint_rows(erased) as f64 * u * u * (self.bits() as f64 * u / 64.0).max(1.0)
    }

    /// Kernel vector with the first free unknown set to 1 and the other free ones to 0,
    /// with the pivot columns of the reduction.
    pub fn canonical_kernel_mod(&self, erased: &(dyn Fn(usize, usize) -> bool + Sync), p: u64) -> Result<Option<(Vec<usize>, Vec<u64>)>> {
        let a = self.modular_constraints(erased, p)?;
        let rref = a.rref();
        let field = a.field().clone();
        let Some(free) = (0..a.cols()).find(|c| !rref.pivots.contains(c)) else {
            return Ok(None);
        };
        let mut x = vec![0u64; a.cols()];
        x[free] = 1;
        for (r, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = field.neg(rref.matrix.get(r, free));
        }
        Ok(Some((rref.pivots, x)))
    }

    /// Combines canonical kernels over the primes by CRT and rational reconstruction, and
    /// returns the first candidate that passes exact verification.
    pub fn reconstruct_kernel(
        &self,
        erased: &(dyn Fn(usize, usize) -> bool + Sync),
        primes: &[u64],
    ) -> Result<Option<(Vec<BigRational>, Vec<u64>)>> {
        let mut used: Vec<u64> = Vec::new();
        let mut pivots: Option<Vec<usize>> = None;
        let mut modulus = BigInt::one();
        let mut residues: Vec<BigInt> = Vec::new();
        let mut last: Option<Vec<BigRational>> = None;
        for &p in primes {
            let Some((piv, x)) = self.canonical_kernel_mod(erased, p)? else {
                // full rank mod p would have certified independence
                return Ok(None);
            };
            match &pivots {
                Some(prev) if prev.len() > piv.len() || (prev.len() == piv.len() && *prev != piv) => continue,
                Some(prev) if prev.len() < piv.len() => {
                    used.clear();
                    modulus = BigInt::one();
                    residues.clear();
                    last = None;
                }
                _ => {}
            }
            pivots = Some(piv);
            let pb = BigInt::from(p);
            if residues.is_empty() {
                residues = x.iter().map(|&v| BigInt::from(v)).collect();
            } else {
                for (r, &v) in residues.iter_mut().zip(&x) {
                    *r = crt_pair(r, &modulus, &BigInt::from(v), &pb);
                }
            }
            modulus *= &pb;
            used.push(p);
            let cand: Option<Vec<BigRational>> = residues.iter().map(|r| rational_reconstruct(r, &modulus)).collect();
            if let Some(c) = cand {
                if last.as_ref() == Some(&c) && self.verify_kernel(erased, &c) {
                    return Ok(Some((c, used)));
                }
                last = Some(c);
            }
        }
        Ok(None)
    }

    /// X != 0 and (Gc^T X Gr) vanishes off the erased cells, in exact integer arithmetic.
    pub fn verify_kernel(&self, erased: &(dyn Fn(usize, usize) -> bool + Sync), x: &[BigRational]) -> bool {
        if x.len() != self.unknowns() || x.iter().all(|v| v.is_zero()) {
            return false;
        }
        let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let xi: Vec<BigInt> = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        // z[a][c] = sum_b X[a][b] * row_point_c^b
        let z: Vec<Vec<BigInt>> = (0..self.k_col)
            .map(|a| {
                self.row_points
                    .iter()
                    .map(|y| horner(&xi[a * self.k_row..(a + 1) * self.k_row], y))
                    .collect()
            })
            .collect();
        self.outside(erased).par_iter().all(|&(r, c)| {
            let coeffs: Vec<BigInt> = (0..self.k_col).map(|a| z[a][c].clone()).collect();
            horner(&coeffs, &self.col_points[r]).is_zero()
        })
    }
}

fn horner(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    // r = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let inv = mod_inverse(&(m1 % m2), m2).expect("distinct primes are coprime");
    let k = ((r2 - r1) * inv).mod_floor(m2);
    r1 + m1 * k
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// The fraction n/d with |n|, d <= sqrt(M/2) and n = d r mod M, when one exists.
pub fn rational_reconstruct(r: &BigInt, modulus: &BigInt) -> Option<BigRational> {
    let bound = (modulus / 2u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), r.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let v = BigRational::new(r1, t1);
    (v.denom().gcd(modulus).is_one()).then_some(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    Independent,
    Dependent,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    Row,
    Column,
}

/// Clears one block line of the unscaled grid: a column block with at most a erased
/// cells (s c_j <= s a + d' erasures in each of its t columns) or a row block with at
/// most b (t r_i <= t b + d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    pub axis: Axis,
    /// 1-indexed.
    pub index: usize,
    pub erased: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    EmptyPattern,
    /// One of the scaled codes is zero, so every pattern is correctable.
    ZeroCode,
    Peeling {
        steps: Vec<PeelStep>,
    },
    /// u ⊗ v with u = prod of (X - x) over the column points outside the row blocks,
    /// and v likewise; rows and cols are 1-indexed blocks.
    RankOne {
        rows: Vec<usize>,
        cols: Vec<usize>,
        col_degree: usize,
        row_degree: usize,
    },
    /// dim of codewords supported on the R x C blocks exceeds the constraints imposed
    /// by the cells of (R x C) \ E.
    DimensionCount {
        rows: Vec<usize>,
        cols: Vec<usize>,
        kappa: usize,
        sigma: usize,
        missing_cells: usize,
        constraints: u128,
    },
    ModularRank {
        prime: u64,
        rank: usize,
        unknowns: usize,
    },
    /// X in message coordinates (row-major k_col x k_row).
    Kernel {
        primes: Vec<u64>,
        #[serde(serialize_with = "ser_rationals")]
        message: Vec<BigRational>,
    },
    ExactRank {
        rank: usize,
        unknowns: usize,
    },
    None,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub decision: Decision,
    pub certificate: Certificate,
    pub conditional: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptions {
    /// Try peeling, rank-one and dimension-count certificates before any elimination.
    pub structural: bool,
    pub modular_guard: f64,
    pub exact_guard: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { structural: true, modular_guard: DEFAULT_MODULAR_GUARD, exact_guard: DEFAULT_EXACT_GUARD }
    }
}

fn check_pattern(e: &ErasurePattern, p: &Algorithm1Params) -> Result<()> {
    if e.m() != p.m || e.n() != p.n {
        return Err(Error::Dimension(format!("pattern is {} x {}, parameters are {} x {}", e.m(), e.n(), p.m, p.n)));
    }
    Ok(())
}

fn peel(e: &ErasurePattern, a: usize, b: usize) -> (Vec<PeelStep>, bool) {
    let mut left = e.clone();
    let mut steps = Vec::new();
    loop {
        if left.is_empty() {
            return (steps, true);
        }
        let col = (0..e.n()).map(|j| (j, left.column_set(j).len())).find(|&(_, c)| c > 0 && c <= a);
        let row = || (0..e.m()).map(|i| (i, left.row_set(i).len())).find(|&(_, r)| r > 0 && r <= b);
        if let Some((j, c)) = col {
            steps.push(PeelStep { axis: Axis::Column, index: j + 1, erased: c });
            for i in left.column_set(j) {
                left = left.without((i, j));
            }
        } else if let Some((i, r)) = row() {
            steps.push(PeelStep { axis: Axis::Row, index: i + 1, erased: r });
            for j in left.row_set(i) {
                left = left.without((i, j));
            }
        } else {
            return (steps, false);
        }
    }
}

fn rank_one(e: &ErasurePattern, p: &Algorithm1Params) -> Option<Certificate> {
    if p.a + 1 > p.m || p.b + 1 > p.n {
        return None;
    }
    for rows in combinations(p.m, p.a + 1) {
        for cols in combinations(p.n, p.b + 1) {
            if rows.iter().all(|&i| cols.iter().all(|&j| e.contains(i, j))) {
                return Some(Certificate::RankOne {
                    rows: rows.iter().map(|i| i + 1).collect(),
                    cols: cols.iter().map(|j| j + 1).collect(),
                    col_degree: p.s * (p.m - p.a - 1),
                    row_degree: p.t * (p.n - p.b - 1),
                });
            }
        }
    }
    None
}

fn count_for(e: &ErasurePattern, p: &Algorithm1Params, rows: &[usize], cols: &[usize]) -> (usize, usize, usize, u128) {
    let kappa = p.k_col().saturating_sub(p.s * (p.m - rows.len()));
    let sigma = p.k_row().saturating_sub(p.t * (p.n - cols.len()));
    let missing = rows.iter().map(|&i| cols.iter().filter(|&&j| !e.contains(i, j)).count()).sum::<usize>();
    (kappa, sigma, missing, (p.s * p.t) as u128 * missing as u128)
}

fn dimension_count(e: &ErasurePattern, p: &Algorithm1Params) -> Option<Certificate> {
    for rsize in 1..=p.m {
        for rows in combinations(p.m, rsize) {
            for csize in 1..=p.n {
                for cols in combinations(p.n, csize) {
                    let (kappa, sigma, missing, constraints) = count_for(e, p, &rows, &cols);
                    if (kappa as u128) * (sigma as u128) > constraints {
                        return Some(Certificate::DimensionCount {
                            rows: rows.iter().map(|i| i + 1).collect(),
                            cols: cols.iter().map(|j| j + 1).collect(),
                            kappa,
                            sigma,
                            missing_cells: missing,
                            constraints,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Decides whether E^{s,t} is correctable in C_col^RS ⊗ C_row^RS.
pub fn mr_independent(e: &ErasurePattern, p: &Algorithm1Params, opts: OracleOptions) -> Result<OracleVerdict> {
    check_pattern(e, p)?;
    let verdict = |decision, certificate, reason: Option<String>| OracleVerdict {
        decision,
        certificate,
        conditional: p.conditional,
        reason,
    };
    if e.is_empty() {
        return Ok(verdict(Decision::Independent, Certificate::EmptyPattern, None));
    }
    if p.k_col() == 0 || p.k_row() == 0 {
        return Ok(verdict(Decision::Independent, Certificate::ZeroCode, None));
    }
    if opts.structural {
        let (steps, cleared) = peel(e, p.a, p.b);
        if cleared {
            return Ok(verdict(Decision::Independent, Certificate::Peeling { steps }, None));
        }
        if let Some(c) = rank_one(e, p).or_else(|| dimension_count(e, p)) {
            return Ok(verdict(Decision::Dependent, c, None));
        }
    }
    let tensor = p.tensor();
    let (s, t) = (p.s, p.t);
    let erased = move |r: usize, c: usize| e.contains(r / s, c / t);
    let cost = tensor.modular_cost(&erased);
    if cost > opts.modular_guard {
        return Ok(verdict(
            Decision::Undecided,
            Certificate::None,
            Some(format!("modular elimination needs about {cost:.3e} steps, guard is {:.3e}", opts.modular_guard)),
        ));
    }
    let unknowns = tensor.unknowns();
    for &prime in &p.primes {
        let rank = tensor.modular_constraints(&erased, prime)?.rank();
        if rank == unknowns {
            return Ok(verdict(Decision::Independent, Certificate::ModularRank { prime, rank, unknowns }, None));
        }
    }
    if let Some((message, primes)) = tensor.reconstruct_kernel(&erased, &p.primes)? {
        return Ok(verdict(Decision::Dependent, Certificate::Kernel { primes, message }, None));
    }
    let cost = tensor.exact_cost(&erased);
    if cost > opts.exact_guard {
        return Ok(verdict(
            Decision::Undecided,
            Certificate::None,
            Some(format!(
                "rank deficient modulo every ladder prime, no kernel reconstructed, and exact elimination needs about {cost:.3e} steps (guard {:.3e})",
                opts.exact_guard
            )),
        ));
    }
    let rank = bareiss_rank(&tensor.integer_constraints(&erased));
    if rank == unknowns {
        return Ok(verdict(Decision::Independent, Certificate::ExactRank { rank, unknowns }, None));
    }
    Ok(verdict(Decision::Dependent, Certificate::ExactRank { rank, unknowns }, None))
}

/// Coefficients of u ⊗ v for a rank-one certificate, row-major in message coordinates.
pub fn expand_rank_one(p: &Algorithm1Params, rows: &[usize], cols: &[usize]) -> Result<Vec<BigRational>> {
    let tensor = p.tensor();
    let roots = |pts: &[BigInt], reps: usize, keep: &[usize]| -> Vec<BigRational> {
        pts.iter()
            .enumerate()
            .filter(|(i, _)| !keep.contains(&(i / reps + 1)))
            .map(|(_, x)| BigRational::from_integer(x.clone()))
            .collect()
    };
    let u = Poly::from_roots(Rationals, &roots(&tensor.col_points, p.s, rows));
    let v = Poly::from_roots(Rationals, &roots(&tensor.row_points, p.t, cols));
    let pad = |f: &Poly<Rationals>, k: usize| -> Result<Vec<BigRational>> {
        let mut c = f.coeffs().to_vec();
        if c.len() > k {
            return invalid(format!("degree {} does not fit below k = {k}", c.len() - 1));
        }
        c.resize(k, BigRational::zero());
        Ok(c)
    };
    let (u, v) = (pad(&u, p.k_col())?, pad(&v, p.k_row())?);
    Ok(u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect())
}

impl OracleVerdict {
    /// Re-checks the certificate against the pattern and parameters, independently of
    /// the search that produced it.
    pub fn verify(&self, e: &ErasurePattern, p: &Algorithm1Params) -> Result<bool> {
        check_pattern(e, p)?;
        let (s, t) = (p.s, p.t);
        let erased = move |r: usize, c: usize| e.contains(r / s, c / t);
        let ok = match (&self.decision, &self.certificate) {
            (Decision::Independent, Certificate::EmptyPattern) => e.is_empty(),
            (Decision::Independent, Certificate::ZeroCode) => p.k_col() == 0 || p.k_row() == 0,
            (Decision::Independent, Certificate::Peeling { steps }) => {
                let mut left = e.clone();
                let mut valid = p.points_distinct();
                for st in steps {
                    let idx = st.index.wrapping_sub(1);
                    let line: Vec<(usize, usize)> = match st.axis {
                        Axis::Column if idx < p.n => left.column_set(idx).into_iter().map(|i| (i, idx)).collect(),
                        Axis::Row if idx < p.m => left.row_set(idx).into_iter().map(|j| (idx, j)).collect(),
                        _ => return Ok(false),
                    };
                    // erasures per scaled line against the scaled code distance
                    let fits = match st.axis {
                        Axis::Column => p.s * line.len() <= p.a_prime,
                        Axis::Row => p.t * line.len() <= p.b_prime,
                    };
                    valid &= fits && line.len() == st.erased;
                    for c in line {
                        left = left.without(c);
                    }
                }
                valid && left.is_empty()
            }
            (Decision::Dependent, Certificate::RankOne { rows, cols, col_degree, row_degree }) => {
                let in_range = rows.iter().all(|&i| (1..=p.m).contains(&i)) && cols.iter().all(|&j| (1..=p.n).contains(&j));
                in_range
                    && p.points_distinct()
                    && rows.len() == p.a + 1
                    && cols.len() == p.b + 1
                    && rows.iter().all(|&i| cols.iter().all(|&j| e.contains(i - 1, j - 1)))
                    && *col_degree == p.s * (p.m - rows.len())
                    && *row_degree == p.t * (p.n - cols.len())
                    && *col_degree < p.k_col()
                    && *row_degree < p.k_row()
            }
            (Decision::Dependent, Certificate::DimensionCount { rows, cols, kappa, sigma, missing_cells, constraints }) => {
                let in_range = rows.iter().all(|&i| (1..=p.m).contains(&i)) && cols.iter().all(|&j| (1..=p.n).contains(&j));
                if !in_range || !p.points_distinct() {
                    return Ok(false);
                }
                let r0: Vec<usize> = rows.iter().map(|i| i - 1).collect();
                let c0: Vec<usize> = cols.iter().map(|j| j - 1).collect();
                let again = count_for(e, p, &r0, &c0);
                again == (*kappa, *sigma, *missing_cells, *constraints) && (*kappa as u128) * (*sigma as u128) > *constraints
            }
            (Decision::Independent, Certificate::ModularRank { prime, rank, unknowns }) => {
                let tensor = p.tensor();
                *unknowns == tensor.unknowns()
                    && *rank == *unknowns
                    && is_prime(*prime)
                    && tensor.modular_constraints(&erased, *prime)?.rank() == *rank
            }
            (Decision::Dependent, Certificate::Kernel { message, .. }) => p.tensor().verify_kernel(&erased, message),
            (d, Certificate::ExactRank { rank, unknowns }) => {
                let tensor = p.tensor();
                let r = bareiss_rank(&tensor.integer_constraints(&erased));
                r == *rank && *unknowns == tensor.unknowns() && ((r == *unknowns) == (*d == Decision::Independent))
            }
            (Decision::Undecided, Certificate::None) => true,
            _ => false,
        };
        Ok(ok)
    }
}

/// The parameterized oracle as a matroid oracle; undecided queries surface as errors.
pub struct Algorithm1Oracle {
    pub params: Algorithm1Params,
    pub options: OracleOptions,
}

impl MatroidOracle for Algorithm1Oracle {
    fn grid(&self) -> (usize, usize) {
        (self.params.m, self.params.n)
    }
    fn is_independent(&self, e: &ErasurePattern) -> Result<bool> {
        let v = mr_independent(e, &self.params, self.options)?;
        match v.decision {
            Decision::Independent => Ok(true),
            Decision::Dependent => Ok(false),
            Decision::Undecided => Err(Error::GuardExceeded {
                what: v.reason.unwrap_or_else(|| "undecided query".into()),
                estimate: f64::INFINITY,
                guard: self.options.modular_guard,
            }),
        }
    }
    fn provenance(&self) -> OracleProvenance {
        OracleProvenance::Algorithm1
    }
}

/// Random [m, m-a] and [n, n-b] codes over F_p, drawn once per trial.
pub struct GenericOracle {
    pub m: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub prime: u64,
    pub seed: u64,
    pub trial_seeds: Vec<(u64, u64)>,
    codes: Vec<(LinearCode<Gf>, LinearCode<Gf>)>,
}

impl GenericOracle {
    pub fn new(m: usize, n: usize, a: usize, b: usize, prime: u64, trials: usize, seed: u64) -> Result<Self> {
        Self::with_floor(m, n, a, b, prime, trials, seed, DEFAULT_GENERIC_FLOOR)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_floor(m: usize, n: usize, a: usize, b: usize, prime: u64, trials: usize, seed: u64, floor: u64) -> Result<Self> {
        if prime < floor {
            return invalid(format!("prime {prime} is below the floor {floor}"));
        }
        if a > m || b > n {
            return invalid("need a <= m and b <= n");
        }
        if trials == 0 {
            return invalid("need at least one trial");
        }
        let field = Gf::prime(prime)?;
        let mut codes = Vec::with_capacity(trials);
        let mut trial_seeds = Vec::with_capacity(trials);
        for i in 0..trials as u64 {
            let (cs, rs) = (derive_seed(seed, 2 * i), derive_seed(seed, 2 * i + 1));
            codes.push((random_linear_code(&field, m, m - a, cs)?.code, random_linear_code(&field, n, n - b, rs)?.code));
            trial_seeds.push((cs, rs));
        }
        Ok(GenericOracle { m, n, a, b, prime, seed, trial_seeds, codes })
    }

    /// Trials in which E was correctable.
    pub fn correctable_trials(&self, e: &ErasurePattern) -> Result<usize> {
        let mut count = 0;
        for (c, r) in &self.codes {
            count += usize::from(is_correctable(c, r, e)?.correctable);
        }
        Ok(count)
    }

    pub fn verdict(&self, e: &ErasurePattern) -> Result<Decision> {
        Ok(if self.correctable_trials(e)? > 0 { Decision::Independent } else { Decision::Dependent })
    }
}

impl MatroidOracle for GenericOracle {
    fn grid(&self) -> (usize, usize) {
        (self.m, self.n)
    }
    fn is_independent(&self, e: &ErasurePattern) -> Result<bool> {
        Ok(self.verdict(e)? == Decision::Independent)
    }
    fn provenance(&self) -> OracleProvenance {
        OracleProvenance::GenericRandomized
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    /// 1-indexed cells of the greedy basis.
    pub basis: Vec<(usize, usize)>,
    pub expected_full_rank: usize,
}

/// Rank of E by greedy augmentation over oracle queries.
pub fn mr_rank(e: &ErasurePattern, p: &Algorithm1Params, opts: OracleOptions) -> Result<RankReport> {
    check_pattern(e, p)?;
    let oracle = Algorithm1Oracle { params: p.clone(), options: opts };
    let basis = oracle.greedy_basis(e)?;
    Ok(RankReport { rank: basis.len(), basis: basis.one_indexed(), expected_full_rank: p.b * p.m + p.a * p.n - p.a * p.b })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Disagreement {
    pub pattern: Vec<(usize, usize)>,
    pub algorithm1: Decision,
    pub generic: Decision,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub m: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub patterns: usize,
    pub seeds: Vec<u64>,
    pub trials: usize,
    pub prime: u64,
    pub independent: usize,
    pub dependent: usize,
    pub undecided: usize,
    pub certificates_verified: usize,
    pub certificate_failures: usize,
    pub disagreements: Vec<Disagreement>,
    pub conditional: bool,
    pub passes: bool,
}

/// Runs the oracle on every pattern of the grid and compares with the reference oracle
/// for each seed.
pub fn crosscheck(
    p: &Algorithm1Params,
    opts: OracleOptions,
    prime: u64,
    trials: usize,
    seeds: &[u64],
    guard_patterns: f64,
) -> Result<CrosscheckReport> {
    let patterns: Vec<ErasurePattern> = all_patterns(p.m, p.n, guard_patterns)?.collect();
    let verdicts: Vec<(OracleVerdict, bool)> = patterns
        .par_iter()
        .map(|e| {
            let v = mr_independent(e, p, opts)?;
            let ok = v.verify(e, p)?;
            Ok((v, ok))
        })
        .collect::<Result<_>>()?;
    let mut disagreements = Vec::new();
    for &seed in seeds {
        let g = GenericOracle::new(p.m, p.n, p.a, p.b, prime, trials, seed)?;
        let gen: Vec<Decision> = patterns.par_iter().map(|e| g.verdict(e)).collect::<Result<_>>()?;
        for ((e, (v, _)), gd) in patterns.iter().zip(&verdicts).zip(gen) {
            if v.decision != gd {
                disagreements.push(Disagreement { pattern: e.one_indexed(), algorithm1: v.decision, generic: gd, seed });
            }
        }
    }
    let count = |d| verdicts.iter().filter(|(v, _)| v.decision == d).count();
    let certificate_failures = verdicts.iter().filter(|(_, ok)| !ok).count();
    let undecided = count(Decision::Undecided);
    Ok(CrosscheckReport {
        m: p.m,
        n: p.n,
        a: p.a,
        b: p.b,
        patterns: patterns.len(),
        seeds: seeds.to_vec(),
        trials,
        prime,
        independent: count(Decision::Independent),
        dependent: count(Decision::Dependent),
        undecided,
        certificates_verified: verdicts.len() - certificate_failures,
        certificate_failures,
        passes: disagreements.is_empty() && certificate_failures == 0 && undecided == 0,
        disagreements,
        conditional: p.conditional,
    })
}

/// Raw rational RS tensor on the given integer points, for direct experiments.
pub fn rs_tensor(col_points: &[i64], k_col: usize, row_points: &[i64], k_row: usize) -> Result<RationalTensor> {
    if k_col > col_points.len() || k_row > row_points.len() {
        return invalid("dimension exceeds the number of points");
    }
    Ok(RationalTensor {
        col_points: col_points.iter().map(|&x| BigInt::from(x)).collect(),
        k_col,
        row_points: row_points.iter().map(|&x| BigInt::from(x)).collect(),
        k_row,
    })
}

/// Largest entry size in bits of the integer constraint system of a scaled pattern.
pub fn entry_bits(p: &Algorithm1Params) -> u64 {
    p.tensor().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_is_prime_and_decreasing() {
        let l = prime_ladder();
        assert_eq!(l.len(), 16);
        assert_eq!(l[0], (1 << 61) - 1);
        assert!(l.windows(2).all(|w| w[0] > w[1]) && l.iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn paper_parameters() {
        let p = Algorithm1Params::paper(2, 2, 1, 1).unwrap();
        assert_eq!((p.s, p.t, p.a_prime, p.b_prime), (4096, 16, 4160, 20));
        assert_eq!(Algorithm1Params::paper(3, 3, 1, 1).unwrap().t, 54);
        assert!(!p.conditional);
    }

    #[test]
    fn reduced_margins() {
        let ok = Overrides { t: Some(10), d: Some(4), ..Default::default() };
        assert!(Algorithm1Params::reduced(2, 2, 1, 1, ok).is_ok());
        let bad = Overrides { t: Some(6), d: Some(4), ..Default::default() };
        assert!(matches!(Algorithm1Params::reduced(2, 2, 1, 1, bad), Err(Error::Precondition(_))));
        let m = Overrides::minimal(2, 2, 1, 1);
        assert_eq!((m.d, m.t, m.d_prime, m.s), (Some(2), Some(5), Some(10), Some(101)));
        let m = Overrides::minimal(3, 3, 1, 1);
        assert_eq!((m.d, m.t, m.d_prime, m.s), (Some(5), Some(16), Some(95), Some(4561)));
        assert!(Algorithm1Params::reduced(3, 3, 1, 1, m).is_ok());
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let v = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let r = (v.numer() * mod_inverse(v.denom(), &m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruct(&r, &m), Some(v));
    }

    #[test]
    fn conditionality_flag() {
        let o = Overrides::minimal(6, 2, 2, 1);
        assert!(Algorithm1Params::reduced(6, 2, 2, 1, o).unwrap().conditional);
        let o = Overrides::minimal(5, 2, 2, 1);
        assert!(!Algorithm1Params::reduced(5, 2, 2, 1, o).unwrap().conditional);
    }
}

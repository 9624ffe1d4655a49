//! Local profiles, their potential and threshold rate, containment in codes,
//! list recovery, and Monte Carlo experiments on random codes.

use std::borrow::Cow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{random_folded_linear_code, random_linear_code, LinearCode};
use crate::designs::{audit_design, design_from_code};
use crate::error::{check_guard, invalid, Error, Result};
use crate::field::{Field, FiniteField};
use crate::io::ser_rational;
use crate::matrix::Matrix;
use crate::ntheory::derive_seed;
use crate::subspace::{combinations, enumerate_all_subspaces, gaussian_binomial, Subspace};

/// Default cap on message tuples visited by a containment search.
pub const DEFAULT_CONTAINMENT_GUARD: f64 = 1e8;

/// A b-local profile (V_1, ..., V_n) of subspaces of F^b.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalProfile<F: Field> {
    field: F,
    b: usize,
    subspaces: Vec<Subspace<F>>,
}

impl<F: Field> LocalProfile<F> {
    pub fn new(field: F, b: usize, subspaces: Vec<Subspace<F>>) -> Result<Self> {
        for (i, v) in subspaces.iter().enumerate() {
            v.field().same_as(&field)?;
            if v.ambient() != b {
                return Err(Error::Dimension(format!("V_{} lives in F^{}, expected F^{b}", i + 1, v.ambient())));
            }
        }
        Ok(LocalProfile { field, b, subspaces })
    }

    /// n copies of the same subspace.
    pub fn constant(v: Subspace<F>, n: usize) -> Self {
        LocalProfile { field: v.field().clone(), b: v.ambient(), subspaces: vec![v; n] }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn b(&self) -> usize {
        self.b
    }
    pub fn n(&self) -> usize {
        self.subspaces.len()
    }
    pub fn subspaces(&self) -> &[Subspace<F>] {
        &self.subspaces
    }

    /// sum_i dim(V_i ∩ U).
    pub fn meet_sum(&self, u: &Subspace<F>) -> Result<usize> {
        self.subspaces.iter().map(|v| v.meet_dim(u)).sum()
    }
}

/// True iff every pair of coordinates is separated by some vector of U.
pub fn is_distinct_rows<F: Field>(u: &Subspace<F>) -> bool {
    let cols: Vec<Vec<F::Elem>> = (0..u.ambient()).map(|c| u.basis().column(c)).collect();
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            if cols[i] == cols[j] {
                return false;
            }
        }
    }
    true
}

/// Phi(V, U, R) = -n dim U + sum_i dim(V_i ∩ U) + R n dim U.
pub fn potential<F: Field>(profile: &LocalProfile<F>, u: &Subspace<F>, rate: &BigRational) -> Result<BigRational> {
    if u.ambient() != profile.b {
        return Err(Error::Dimension(format!("U lives in F^{}, profile has b = {}", u.ambient(), profile.b)));
    }
    let n = BigInt::from(profile.n());
    let d = BigInt::from(u.dim());
    let s = BigInt::from(profile.meet_sum(u)?);
    Ok(BigRational::from_integer(s - &n * &d) + rate * BigRational::from_integer(n * d))
}

/// The threshold rate with the minimizing U and its best proper subspace W.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdResult<F: Field> {
    pub rate: BigRational,
    pub u: Option<Subspace<F>>,
    pub w: Option<Subspace<F>>,
    /// True when no U of positive dimension has distinct rows, so the rate is 1 by vacuity.
    pub vacuous: bool,
    pub pairs_evaluated: u64,
}

/// rho(U, W) = 1 - S / (n (dim U - dim W)) with S = sum_i dim(V_i ∩ U) - dim(V_i ∩ W).
pub fn crossing_rate<F: Field>(profile: &LocalProfile<F>, u: &Subspace<F>, w: &Subspace<F>) -> Result<BigRational> {
    let du = u.dim();
    let dw = w.dim();
    if dw >= du {
        return invalid("W must be a proper subspace of U");
    }
    let s = profile.meet_sum(u)? - profile.meet_sum(w)?;
    Ok(BigRational::one() - BigRational::new(BigInt::from(s), BigInt::from(profile.n() * (du - dw))))
}

/// R_V = min over U in L_Dist with dim U >= 1 of max over proper W ⊊ U of rho(U, W).
pub fn threshold_rate<F: FiniteField>(profile: &LocalProfile<F>, guard: f64) -> Result<ThresholdResult<F>> {
    let q = profile.field.order();
    let b = profile.b;
    let lattice: f64 = (0..=b).map(|d| gaussian_binomial(b, d, q)).sum();
    check_guard("threshold rate (pairs of subspaces)", lattice * lattice, guard)?;
    let mut best: Option<(BigRational, Subspace<F>, Subspace<F>)> = None;
    let mut pairs = 0u64;
    for u in enumerate_all_subspaces(&profile.field, b, guard)? {
        if u.dim() == 0 || !is_distinct_rows(&u) {
            continue;
        }
        let sum_u = profile.meet_sum(&u)?;
        let mut inner: Option<(BigRational, Subspace<F>)> = None;
        for c in enumerate_all_subspaces(&profile.field, u.dim(), guard)? {
            if c.dim() == u.dim() {
                continue;
            }
            let w = c.image(u.basis())?;
            let s = sum_u - profile.meet_sum(&w)?;
            let rho = BigRational::one() - BigRational::new(BigInt::from(s), BigInt::from(profile.n() * (u.dim() - w.dim())));
            debug_assert!(rho >= BigRational::zero() && rho <= BigRational::one());
            pairs += 1;
            if inner.as_ref().is_none_or(|(r, _)| rho > *r) {
                inner = Some((rho, w));
            }
        }
        let (rho, w) = inner.expect("U of positive dimension has the zero subspace below it");
        if best.as_ref().is_none_or(|(r, _, _)| rho < *r) {
            best = Some((rho, u, w));
        }
    }
    Ok(match best {
        Some((rate, u, w)) => ThresholdResult { rate, u: Some(u), w: Some(w), vacuous: false, pairs_evaluated: pairs },
        None => ThresholdResult { rate: BigRational::one(), u: None, w: None, vacuous: true, pairs_evaluated: pairs },
    })
}

/// V^(s): each V_i repeated s times in place.
pub fn duplicate_profile<F: Field>(profile: &LocalProfile<F>, s: usize) -> Result<LocalProfile<F>> {
    if s == 0 {
        return invalid("duplication factor must be at least 1");
    }
    let subspaces = profile.subspaces.iter().flat_map(|v| std::iter::repeat_n(v.clone(), s)).collect();
    Ok(LocalProfile { field: profile.field.clone(), b: profile.b, subspaces })
}

/// Messages f_1..f_b whose codewords form the columns of M, and U = row span of M.
#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentWitness<F: Field> {
    pub messages: Vec<Vec<F::Elem>>,
    /// (s n) x b over the unfolded coordinates.
    pub matrix: Matrix<F>,
    pub u: Subspace<F>,
    /// U = 0, only possible for b = 1 with the zero codeword.
    pub trivial: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct ContainmentOptions {
    pub guard: f64,
    /// Skip the zero-codeword witness of b = 1 profiles.
    pub exclude_trivial: bool,
}

impl Default for ContainmentOptions {
    fn default() -> Self {
        ContainmentOptions { guard: DEFAULT_CONTAINMENT_GUARD, exclude_trivial: false }
    }
}

/// The profile matched against unfolded coordinates.
fn unfolded_profile<F: Field>(code: &LinearCode<F>, profile: &LocalProfile<F>) -> Result<LocalProfile<F>> {
    code.field().same_as(profile.field())?;
    if profile.n() == code.length() {
        Ok(profile.clone())
    } else if profile.n() == code.n() {
        duplicate_profile(profile, code.s())
    } else {
        Err(Error::Dimension(format!(
            "profile of length {} against a code with n = {} and s = {}",
            profile.n(),
            code.n(),
            code.s()
        )))
    }
}

/// Searches tuples of pairwise distinct messages in lexicographic order and returns the
/// first tuple whose codewords satisfy (c_1[i], ..., c_b[i]) ∈ V_i at every unfolded coordinate.
pub fn contains_profile<F: FiniteField>(
    code: &LinearCode<F>,
    profile: &LocalProfile<F>,
    opts: ContainmentOptions,
) -> Result<Option<ContainmentWitness<F>>> {
    let prof = unfolded_profile(code, profile)?;
    let (b, k, len) = (prof.b, code.k(), code.length());
    if b == 0 {
        return invalid("profiles need b >= 1");
    }
    let field = code.field().clone();
    let q = field.order();
    check_guard("containment search", (q as f64).powi((k * b) as i32), opts.guard)?;
    // checks[i][j]: parity checks of the projection of V_i onto its first j+1 coordinates
    let checks: Vec<Vec<Matrix<F>>> = prof
        .subspaces
        .iter()
        .map(|v| (1..=b).map(|j| v.project(&(0..j).collect::<Vec<_>>()).annihilator().basis().clone()).collect())
        .collect();
    let total = q.pow(k as u32);
    // b = 1 visits each word once, so encode on demand; deeper searches revisit them
    let cache: Option<Vec<Vec<F::Elem>>> =
        (b > 1).then(|| code.messages().iter().map(|m| code.encode(m).expect("length k")).collect());
    let word = |c: usize| -> Cow<'_, [F::Elem]> {
        match &cache {
            Some(words) => Cow::Borrowed(&words[c]),
            None => Cow::Owned(code.encode(&code.message(c as u64)).expect("length k")),
        }
    };
    let prefix_ok = |chosen: &[usize]| -> bool {
        let j = chosen.len();
        let ws: Vec<Cow<'_, [F::Elem]>> = chosen.iter().map(|&c| word(c)).collect();
        (0..len).all(|i| {
            let p = &checks[i][j - 1];
            (0..p.rows()).all(|r| {
                let mut acc = field.zero();
                for (t, w) in ws.iter().enumerate() {
                    acc = field.mul_add(&acc, p.get(r, t), &w[i]);
                }
                field.is_zero(&acc)
            })
        })
    };
    fn extend(chosen: &mut Vec<usize>, b: usize, total: u64, ok: &dyn Fn(&[usize]) -> bool) -> bool {
        if chosen.len() == b {
            return true;
        }
        for m in 0..total as usize {
            if chosen.contains(&m) {
                continue;
            }
            chosen.push(m);
            if ok(chosen) && extend(chosen, b, total, ok) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let skip_zero = opts.exclude_trivial && b == 1;
    let found = (0..total as usize).into_par_iter().find_map_first(|first| {
        if skip_zero && first == 0 {
            return None;
        }
        let mut chosen = vec![first];
        (prefix_ok(&chosen) && extend(&mut chosen, b, total, &prefix_ok)).then_some(chosen)
    });
    Ok(found.map(|chosen| {
        let cols: Vec<Vec<F::Elem>> = chosen.iter().map(|&c| word(c).into_owned()).collect();
        let matrix = Matrix::from_rows(field.clone(), len, cols).expect("codeword length").transpose();
        let u = Subspace::from_matrix(&matrix);
        let trivial = u.dim() == 0;
        ContainmentWitness { messages: chosen.iter().map(|&c| code.message(c as u64)).collect(), matrix, u, trivial }
    }))
}

/// Independent check of the three conditions on M plus codeword membership of every column.
pub fn validate_witness<F: Field>(code: &LinearCode<F>, profile: &LocalProfile<F>, w: &ContainmentWitness<F>) -> Result<bool> {
    let prof = unfolded_profile(code, profile)?;
    let m = &w.matrix;
    if m.rows() != code.length() || m.cols() != prof.b {
        return Ok(false);
    }
    let cols: Vec<Vec<F::Elem>> = (0..m.cols()).map(|c| m.column(c)).collect();
    let distinct = (0..cols.len()).all(|i| (i + 1..cols.len()).all(|j| cols[i] != cols[j]));
    let codewords = cols.iter().all(|c| code.contains(c));
    let rows_ok = (0..m.rows()).all(|i| prof.subspaces[i].contains(m.row(i)) && w.u.contains(m.row(i)));
    let span_ok = Subspace::from_matrix(m) == w.u;
    Ok(distinct && codewords && rows_ok && span_ok)
}

/// Outcome of the list-recovery search; `violating` holds L+1 codewords when not recoverable.
#[derive(Clone, Debug, PartialEq)]
pub struct ListRecoveryResult<E> {
    pub recoverable: bool,
    pub violating: Option<Vec<Vec<E>>>,
    pub tuples_checked: u64,
}

/// (rho, l, L) list recovery over the n positions (symbols are the s-blocks).
pub fn is_list_recoverable<F: FiniteField>(
    code: &LinearCode<F>,
    rho: &BigRational,
    ell: usize,
    list: usize,
    guard: f64,
) -> Result<ListRecoveryResult<F::Elem>> {
    if ell == 0 {
        return invalid("input lists need l >= 1");
    }
    if rho < &BigRational::zero() || rho > &BigRational::one() {
        return invalid("rho must lie in [0, 1]");
    }
    let words = code.codewords();
    let tuples = crate::codes::binomial_f64(words.len(), list + 1);
    check_guard("list-recovery search", tuples, guard)?;
    let n = code.n();
    let s = code.s();
    let budget = (rho * BigInt::from(n)).floor().to_integer().to_usize().expect("small");
    let mut checked = 0u64;
    for subset in combinations(words.len(), list + 1) {
        checked += 1;
        let symbols: Vec<Vec<&[F::Elem]>> =
            subset.iter().map(|&c| (0..n).map(|i| &words[c][i * s..(i + 1) * s]).collect()).collect();
        let mut misses = vec![0usize; subset.len()];
        if lists_exist(&symbols, 0, ell, budget, &mut misses) {
            let violating = subset.iter().map(|&c| words[c].clone()).collect();
            return Ok(ListRecoveryResult { recoverable: false, violating: Some(violating), tuples_checked: checked });
        }
    }
    Ok(ListRecoveryResult { recoverable: true, violating: None, tuples_checked: checked })
}

/// Chooses lists S_i (|S_i| <= l) coordinate by coordinate, tracking per-codeword misses.
fn lists_exist<E: PartialEq>(symbols: &[Vec<&[E]>], i: usize, ell: usize, budget: usize, misses: &mut [usize]) -> bool {
    let Some(n) = symbols.first().map(|w| w.len()) else {
        return true;
    };
    if i == n {
        return true;
    }
    let mut distinct: Vec<&[E]> = Vec::new();
    for w in symbols {
        if !distinct.contains(&w[i]) {
            distinct.push(w[i]);
        }
    }
    if distinct.len() <= ell {
        return lists_exist(symbols, i + 1, ell, budget, misses);
    }
    for keep in combinations(distinct.len(), ell) {
        let kept: Vec<&[E]> = keep.iter().map(|&t| distinct[t]).collect();
        let missed: Vec<usize> = (0..symbols.len()).filter(|&c| !kept.contains(&symbols[c][i])).collect();
        if missed.iter().any(|&c| misses[c] + 1 > budget) {
            continue;
        }
        for &c in &missed {
            misses[c] += 1;
        }
        let ok = lists_exist(symbols, i + 1, ell, budget, misses);
        for &c in &missed {
            misses[c] -= 1;
        }
        if ok {
            return true;
        }
    }
    false
}

/// Containment frequency over seeded random [n, k] codes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_rational")]
    pub rate: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub threshold: BigRational,
    pub trials: usize,
    pub contained: usize,
    pub frequency: f64,
    pub seed: u64,
    pub trivial_excluded: bool,
    /// q^{-eps n + b^2} with eps = |R - R_V|, the error term of the threshold theorem.
    pub theorem_error: f64,
    pub resamples: usize,
}

/// Runs `trials` random [n, k] codes; trial t uses seed `derive_seed(seed, t)`.
pub fn monte_carlo_threshold<F: FiniteField>(
    profile: &LocalProfile<F>,
    k: usize,
    trials: usize,
    seed: u64,
    opts: ContainmentOptions,
) -> Result<MonteCarloReport> {
    let n = profile.n();
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n = {n}"));
    }
    let threshold = threshold_rate(profile, opts.guard)?.rate;
    let outcomes: Vec<Result<(bool, usize)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let rc = random_linear_code(profile.field(), n, k, derive_seed(seed, t as u64))?;
            Ok((contains_profile(&rc.code, profile, opts)?.is_some(), rc.resamples))
        })
        .collect();
    let mut contained = 0;
    let mut resamples = 0;
    for o in outcomes {
        let (c, r) = o?;
        contained += usize::from(c);
        resamples += r;
    }
    let rate = BigRational::new(BigInt::from(k), BigInt::from(n));
    let eps = (&rate - &threshold).to_f64().unwrap_or(0.0).abs();
    let q = profile.field().order() as f64;
    let b = profile.b() as f64;
    Ok(MonteCarloReport {
        n,
        k,
        rate,
        threshold,
        trials,
        contained,
        frequency: if trials == 0 { 0.0 } else { contained as f64 / trials as f64 },
        seed,
        trivial_excluded: opts.exclude_trivial,
        theorem_error: q.powf(-eps * n as f64 + b * b),
        resamples,
    })
}

/// How often a random folded code is a (d, (R + eps) d n) subspace designable code.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DesignRateReport {
    pub trials: usize,
    pub successes: usize,
    pub frequency: f64,
    /// 1 - q^{-eps s d n + 3 d^2 n + 3 n}; may be negative (vacuous).
    pub theorem_bound: f64,
    pub seed: u64,
}

#[allow(clippy::too_many_arguments)]
pub fn random_design_rate<F: FiniteField>(
    field: &F,
    n: usize,
    k: usize,
    s: usize,
    d: usize,
    eps: &BigRational,
    trials: usize,
    seed: u64,
    guard: f64,
) -> Result<DesignRateReport> {
    if d == 0 {
        return invalid("d must be at least 1");
    }
    if d >= s {
        return invalid(format!("need d < s, got d = {d}, s = {s}"));
    }
    if d > k {
        return invalid(format!("need d <= k, got d = {d}, k = {k}"));
    }
    check_guard("design audit", gaussian_binomial(k, d, field.order()), guard)?;
    let rate = BigRational::new(BigInt::from(k), BigInt::from(s * n));
    let bound = (&rate + eps) * BigInt::from(d * n);
    let outcomes: Vec<Result<bool>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let rc = random_folded_linear_code(field, n, k, s, derive_seed(seed, t as u64))?;
            let audit = audit_design(&design_from_code(&rc.code), d, guard)?;
            Ok(BigRational::from_integer(BigInt::from(audit.a_strong)) <= bound)
        })
        .collect();
    let mut successes = 0;
    for o in outcomes {
        successes += usize::from(o?);
    }
    let q = field.order() as f64;
    let e = eps.to_f64().unwrap_or(0.0);
    let (s, d, n) = (s as f64, d as f64, n as f64);
    Ok(DesignRateReport {
        trials,
        successes,
        frequency: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
        theorem_bound: 1.0 - q.powf(-e * s * d * n + 3.0 * d * d * n + 3.0 * n),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;

    fn f3() -> Gf {
        Gf::prime(3).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn distinct_rows_examples() {
        let f = f3();
        assert!(is_distinct_rows(&Subspace::full(f.clone(), 3)));
        assert!(!is_distinct_rows(&Subspace::zero(f.clone(), 2)));
        let u = Subspace::from_vectors(f, 3, vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(!is_distinct_rows(&u));
    }

    #[test]
    fn potential_examples() {
        let f = f3();
        let full = LocalProfile::constant(Subspace::full(f.clone(), 2), 4);
        let zero = LocalProfile::constant(Subspace::zero(f.clone(), 2), 4);
        let u = Subspace::from_vectors(f.clone(), 2, vec![vec![1, 2]]).unwrap();
        let r = rat(1, 3);
        assert_eq!(potential(&full, &Subspace::zero(f.clone(), 2), &r).unwrap(), rat(0, 1));
        assert_eq!(potential(&full, &u, &r).unwrap(), rat(4, 3));
        assert_eq!(potential(&zero, &u, &r).unwrap(), rat(-8, 3));
    }

    #[test]
    fn threshold_examples() {
        let f = f3();
        let full = LocalProfile::constant(Subspace::full(f.clone(), 2), 4);
        assert_eq!(threshold_rate(&full, 1e7).unwrap().rate, rat(0, 1));
        let zero = LocalProfile::constant(Subspace::zero(f.clone(), 2), 4);
        assert_eq!(threshold_rate(&zero, 1e7).unwrap().rate, rat(1, 1));
        let line = Subspace::full(f.clone(), 1);
        let mut vs = vec![line; 2];
        vs.extend(vec![Subspace::zero(f.clone(), 1); 3]);
        let weight = LocalProfile::new(f, 1, vs).unwrap();
        assert_eq!(threshold_rate(&weight, 1e7).unwrap().rate, rat(3, 5));
    }

    #[test]
    fn zero_code_contains_no_b2_profile() {
        let f = f3();
        let zero_code = LinearCode::new(Matrix::zeros(f.clone(), 0, 3), 1).unwrap();
        let p = LocalProfile::constant(Subspace::full(f.clone(), 2), 3);
        assert!(contains_profile(&zero_code, &p, ContainmentOptions::default()).unwrap().is_none());
    }

    #[test]
    fn b1_zero_witness_is_flagged() {
        let f = f3();
        let code = crate::codes::rs_code(&f, &[0, 1, 2], 1).unwrap();
        let p = LocalProfile::constant(Subspace::zero(f.clone(), 1), 3);
        let w = contains_profile(&code, &p, ContainmentOptions::default()).unwrap().unwrap();
        assert!(w.trivial && w.u.dim() == 0);
        assert!(validate_witness(&code, &p, &w).unwrap());
        let opts = ContainmentOptions { exclude_trivial: true, ..Default::default() };
        assert!(contains_profile(&code, &p, opts).unwrap().is_none());
    }

    #[test]
    fn full_code_contains_full_profile() {
        let f = f3();
        let code = LinearCode::new(Matrix::identity(f.clone(), 3), 1).unwrap();
        let p = LocalProfile::constant(Subspace::full(f.clone(), 2), 3);
        let w = contains_profile(&code, &p, ContainmentOptions::default()).unwrap().unwrap();
        assert!(validate_witness(&code, &p, &w).unwrap());
    }

    #[test]
    fn list_recovery_edges() {
        let f = f3();
        let rep = LinearCode::new(Matrix::from_i64_rows(f.clone(), &[vec![1, 1, 1, 1]]).unwrap(), 1).unwrap();
        assert!(is_list_recoverable(&rep, &rat(1, 2), 1, 2, 1e6).unwrap().recoverable);
        assert!(!is_list_recoverable(&rep, &rat(1, 1), 1, 1, 1e6).unwrap().recoverable);
        assert!(is_list_recoverable(&rep, &rat(0, 1), 1, 1, 1e6).unwrap().recoverable);
    }

    #[test]
    fn design_rate_preconditions() {
        let f = f3();
        assert!(random_design_rate(&f, 2, 2, 3, 0, &rat(1, 2), 1, 0, 1e6).is_err());
        assert!(random_design_rate(&f, 2, 2, 2, 2, &rat(1, 2), 1, 0, 1e6).is_err());
    }
}

//! Erasure patterns on tensor codes, the correctability matroid, the potential matroid
//! M(C_col, n, b), matroid audits and pattern scaling.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::LinearCode;
use crate::error::{check_guard, invalid, Error, Result};
use crate::field::{Field, Gf, Rationals};
use crate::matrix::Matrix;
use crate::subspace::{enumerate_all_subspaces, Subspace};

/// Default cap on the number of patterns (2^{mn}) an exhaustive audit visits.
pub const DEFAULT_PATTERN_GUARD: f64 = 65536.0;

/// A set of cells of the m x n grid, stored 0-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ErasurePattern {
    m: usize,
    n: usize,
    cells: BTreeSet<(usize, usize)>,
}

impl ErasurePattern {
    pub fn new(m: usize, n: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let cells: BTreeSet<_> = cells.into_iter().collect();
        if let Some(&(i, j)) = cells.iter().find(|&&(i, j)| i >= m || j >= n) {
            return Err(Error::Dimension(format!("cell ({i}, {j}) outside the {m} x {n} grid")));
        }
        Ok(ErasurePattern { m, n, cells })
    }

    /// Cells given 1-indexed, as in pattern files.
    pub fn from_one_indexed(m: usize, n: usize, cells: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(i, j)) = cells.iter().find(|&&(i, j)| i == 0 || j == 0) {
            return Err(Error::Dimension(format!("cell ({i}, {j}) is not 1-indexed")));
        }
        Self::new(m, n, cells.iter().map(|&(i, j)| (i - 1, j - 1)))
    }

    pub fn empty(m: usize, n: usize) -> Self {
        ErasurePattern { m, n, cells: BTreeSet::new() }
    }

    pub fn full(m: usize, n: usize) -> Self {
        ErasurePattern { m, n, cells: (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect() }
    }

    /// Bit i*n + j of `mask` selects cell (i, j).
    pub fn from_mask(m: usize, n: usize, mask: u64) -> Self {
        let cells = (0..m * n).filter(|b| mask >> b & 1 == 1).map(|b| (b / n, b % n)).collect();
        ErasurePattern { m, n, cells }
    }

    pub fn mask(&self) -> u64 {
        assert!(self.m * self.n <= 64, "grid too large for a bit mask");
        self.cells.iter().fold(0, |acc, &(i, j)| acc | 1 << (i * self.n + j))
    }

    /// A x B.
    pub fn rectangle(m: usize, n: usize, rows: &[usize], cols: &[usize]) -> Result<Self> {
        Self::new(m, n, rows.iter().flat_map(|&i| cols.iter().map(move |&j| (i, j))))
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> usize {
        self.cells.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
    pub fn cells(&self) -> &BTreeSet<(usize, usize)> {
        &self.cells
    }
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.cells.contains(&(i, j))
    }
    pub fn one_indexed(&self) -> Vec<(usize, usize)> {
        self.cells.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }

    /// E_j = {i : (i, j) ∈ E}.
    pub fn column_set(&self, j: usize) -> Vec<usize> {
        self.cells.iter().filter(|c| c.1 == j).map(|c| c.0).collect()
    }

    pub fn row_set(&self, i: usize) -> Vec<usize> {
        self.cells.range((i, 0)..(i + 1, 0)).map(|c| c.1).collect()
    }

    pub fn complement(&self) -> Self {
        let cells = (0..self.m).flat_map(|i| (0..self.n).map(move |j| (i, j))).filter(|c| !self.cells.contains(c)).collect();
        ErasurePattern { m: self.m, n: self.n, cells }
    }

    pub fn with(&self, cell: (usize, usize)) -> Self {
        let mut e = self.clone();
        e.cells.insert(cell);
        e
    }

    pub fn without(&self, cell: (usize, usize)) -> Self {
        let mut e = self.clone();
        e.cells.remove(&cell);
        e
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.cells.is_subset(&other.cells)
    }
}

/// E^{s,t}: cell (i, j) becomes the block {(s i + x, t j + y)}.
pub fn scale_pattern(e: &ErasurePattern, s: usize, t: usize) -> Result<ErasurePattern> {
    if s == 0 || t == 0 {
        return invalid("scaling factors must be at least 1");
    }
    let cells = e.cells.iter().flat_map(|&(i, j)| (0..s).flat_map(move |x| (0..t).map(move |y| (s * i + x, t * j + y))));
    ErasurePattern::new(e.m * s, e.n * t, cells)
}

/// Outcome of the correctability test; `certificate` is a nonzero m x n tensor codeword
/// supported on E when the pattern is not correctable.
#[derive(Clone, Debug, PartialEq)]
pub struct Correctability<F: Field> {
    pub correctable: bool,
    pub rank: usize,
    pub unknowns: usize,
    pub certificate: Option<Matrix<F>>,
}

/// Rows are the cells off E, columns the entries of X; entry Gc[e][i] * Gr[f][j].
pub fn constraint_matrix<F: Field>(col: &LinearCode<F>, row: &LinearCode<F>, e: &ErasurePattern) -> Result<Matrix<F>> {
    col.field().same_as(row.field())?;
    if col.s() != 1 || row.s() != 1 {
        return invalid("correctability is defined for unfolded codes");
    }
    if col.length() != e.m() || row.length() != e.n() {
        return Err(Error::Dimension(format!(
            "pattern is {} x {}, codes have lengths {} and {}",
            e.m(),
            e.n(),
            col.length(),
            row.length()
        )));
    }
    let field = col.field();
    let (kc, kr) = (col.k(), row.k());
    let (gc, gr) = (col.generator(), row.generator());
    let outside = e.complement();
    let mut data = Vec::with_capacity(outside.len() * kc * kr);
    for &(i, j) in outside.cells() {
        for a in 0..kc {
            for b in 0..kr {
                data.push(field.mul(gc.get(a, i), gr.get(b, j)));
            }
        }
    }
    Matrix::new(field.clone(), outside.len(), kc * kr, data)
}

/// The codeword Gc^T X Gr for X given row-major.
pub fn codeword_from_message<F: Field>(col: &LinearCode<F>, row: &LinearCode<F>, x: &[F::Elem]) -> Result<Matrix<F>> {
    let xm = Matrix::new(col.field().clone(), col.k(), row.k(), x.to_vec())?;
    col.generator().transpose().mul(&xm)?.mul(row.generator())
}

/// E is correctable iff no nonzero codeword of C_col ⊗ C_row is supported on E.
pub fn is_correctable<F: Field>(col: &LinearCode<F>, row: &LinearCode<F>, e: &ErasurePattern) -> Result<Correctability<F>> {
    let a = constraint_matrix(col, row, e)?;
    let unknowns = a.cols();
    let kernel = a.kernel();
    let rank = unknowns - kernel.dim();
    let certificate = if kernel.dim() == 0 {
        None
    } else {
        Some(codeword_from_message(col, row, kernel.basis().row(0))?)
    };
    Ok(Correctability { correctable: kernel.dim() == 0, rank, unknowns, certificate })
}

/// Checks a certificate: nonzero, supported on E, columns in C_col and rows in C_row.
pub fn verify_tensor_certificate<F: Field>(
    col: &LinearCode<F>,
    row: &LinearCode<F>,
    e: &ErasurePattern,
    y: &Matrix<F>,
) -> bool {
    if y.rows() != e.m() || y.cols() != e.n() || y.is_zero() {
        return false;
    }
    let field = y.field();
    let support_ok = (0..e.m()).all(|i| (0..e.n()).all(|j| e.contains(i, j) || field.is_zero(y.get(i, j))));
    support_ok && (0..e.n()).all(|j| col.contains(&y.column(j))) && (0..e.m()).all(|i| row.contains(y.row(i)))
}

/// Fields whose subspaces can be listed for the potential maximization.
pub trait EnumerableField: Field {
    fn list_subspaces(&self, k: usize, guard: f64) -> Result<Vec<Subspace<Self>>>;
}

impl EnumerableField for Gf {
    fn list_subspaces(&self, k: usize, guard: f64) -> Result<Vec<Subspace<Self>>> {
        Ok(enumerate_all_subspaces(self, k, guard)?.collect())
    }
}

impl EnumerableField for Rationals {
    /// Only k <= 1 has finitely many subspaces.
    fn list_subspaces(&self, k: usize, _guard: f64) -> Result<Vec<Subspace<Self>>> {
        match k {
            0 => Ok(vec![Subspace::zero(Rationals, 0)]),
            1 => Ok(vec![Subspace::zero(Rationals, 1), Subspace::full(Rationals, 1)]),
            _ => Err(Error::Precondition(format!(
                "cannot enumerate subspaces of Q^{k}; use a large prime field stand-in"
            ))),
        }
    }
}

/// The potential matroid M(C_col, n, b) with its subcodes listed once.
#[derive(Clone, Debug)]
pub struct PotentialMatroid<F: Field> {
    col: LinearCode<F>,
    n: usize,
    b: usize,
    subcodes: Vec<Subspace<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiResult<F: Field> {
    pub phi: i64,
    /// A maximizing subcode of C_col, as a subspace of F^m.
    pub u: Subspace<F>,
}

impl<F: EnumerableField> PotentialMatroid<F> {
    pub fn new(col: LinearCode<F>, n: usize, b: usize, guard: f64) -> Result<Self> {
        if col.s() != 1 {
            return invalid("the column code must be unfolded");
        }
        if b > n {
            return invalid(format!("need b <= n, got b = {b}, n = {n}"));
        }
        let g = col.generator().clone();
        let subcodes = col.field().list_subspaces(col.k(), guard)?.iter().map(|u| u.image(&g)).collect::<Result<_>>()?;
        Ok(PotentialMatroid { col, n, b, subcodes })
    }
}

impl<F: Field> PotentialMatroid<F> {
    pub fn m(&self) -> usize {
        self.col.length()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn b(&self) -> usize {
        self.b
    }

    /// Φ(E) = max_U [ -b dim U + Σ_j dim(U ∩ F^{E_j}) ].
    pub fn phi(&self, e: &ErasurePattern) -> Result<PhiResult<F>> {
        self.check_grid(e)?;
        let supports: Vec<Vec<bool>> = (0..self.n)
            .map(|j| {
                let mut s = vec![false; self.m()];
                for i in e.column_set(j) {
                    s[i] = true;
                }
                s
            })
            .collect();
        let mut best: Option<(i64, &Subspace<F>)> = None;
        for u in &self.subcodes {
            let v = -((self.b * u.dim()) as i64) + supports.iter().map(|s| u.supported_dim(s) as i64).sum::<i64>();
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, u));
            }
        }
        let (phi, u) = best.expect("the zero subcode is always listed");
        Ok(PhiResult { phi, u: u.clone() })
    }

    /// r(E) = |E| - Φ(E).
    pub fn rank(&self, e: &ErasurePattern) -> Result<i64> {
        Ok(e.len() as i64 - self.phi(e)?.phi)
    }

    fn check_grid(&self, e: &ErasurePattern) -> Result<()> {
        if e.m() != self.m() || e.n() != self.n {
            return Err(Error::Dimension(format!("pattern is {} x {}, matroid is {} x {}", e.m(), e.n(), self.m(), self.n)));
        }
        Ok(())
    }
}

pub fn potential_phi<F: EnumerableField>(col: &LinearCode<F>, n: usize, b: usize, e: &ErasurePattern, guard: f64) -> Result<PhiResult<F>> {
    PotentialMatroid::new(col.clone(), n, b, guard)?.phi(e)
}

pub fn potential_rank<F: EnumerableField>(col: &LinearCode<F>, n: usize, b: usize, e: &ErasurePattern, guard: f64) -> Result<i64> {
    PotentialMatroid::new(col.clone(), n, b, guard)?.rank(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleProvenance {
    TensorCorrectability,
    Potential,
    GenericRandomized,
    Algorithm1,
}

/// Independence oracle on the cells of an m x n grid.
pub trait MatroidOracle: Sync {
    fn grid(&self) -> (usize, usize);
    fn is_independent(&self, e: &ErasurePattern) -> Result<bool>;
    fn provenance(&self) -> OracleProvenance;

    /// Greedy augmentation in row-major cell order.
    fn rank(&self, e: &ErasurePattern) -> Result<usize> {
        Ok(self.greedy_basis(e)?.len())
    }

    fn greedy_basis(&self, e: &ErasurePattern) -> Result<ErasurePattern> {
        let (m, n) = self.grid();
        let mut basis = ErasurePattern::empty(m, n);
        for &c in e.cells() {
            let next = basis.with(c);
            if self.is_independent(&next)? {
                basis = next;
            }
        }
        Ok(basis)
    }
}

pub struct CorrectabilityOracle<F: Field> {
    pub col: LinearCode<F>,
    pub row: LinearCode<F>,
}

impl<F: Field> MatroidOracle for CorrectabilityOracle<F> {
    fn grid(&self) -> (usize, usize) {
        (self.col.length(), self.row.length())
    }
    fn is_independent(&self, e: &ErasurePattern) -> Result<bool> {
        Ok(is_correctable(&self.col, &self.row, e)?.correctable)
    }
    fn provenance(&self) -> OracleProvenance {
        OracleProvenance::TensorCorrectability
    }
}

impl<F: Field> MatroidOracle for PotentialMatroid<F> {
    fn grid(&self) -> (usize, usize) {
        (self.m(), self.n)
    }
    fn is_independent(&self, e: &ErasurePattern) -> Result<bool> {
        Ok(self.phi(e)?.phi == 0)
    }
    fn provenance(&self) -> OracleProvenance {
        OracleProvenance::Potential
    }
}

/// All 2^{mn} patterns in mask order, after the guard.
pub fn all_patterns(m: usize, n: usize, guard: f64) -> Result<impl Iterator<Item = ErasurePattern>> {
    let cells = m * n;
    check_guard("pattern enumeration", 2f64.powi(cells as i32), guard)?;
    if cells >= 64 {
        return invalid("grid too large for exhaustive enumeration");
    }
    Ok((0..1u64 << cells).map(move |mask| ErasurePattern::from_mask(m, n, mask)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Bounded,
    Nonnegative,
    Monotone,
    Submodular,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// 1-indexed cells of the sets involved.
    pub sets: Vec<Vec<(usize, usize)>>,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub m: usize,
    pub n: usize,
    pub patterns: u64,
    /// Every (A, B) pair compared, rather than the equivalent single-element forms.
    pub pairwise: bool,
    pub comparisons: u64,
    pub violation: Option<AxiomViolation>,
    pub passes: bool,
}

/// Checks 0 <= r(E) <= |E|, monotonicity and submodularity over all subsets of the grid.
/// With at most `pair_guard` pairs every pair is compared; otherwise the single-element
/// forms r(A) <= r(A+x) and r(A+x) + r(A+y) >= r(A+x+y) + r(A), which are equivalent.
pub fn matroid_axiom_audit<R>(rank: R, m: usize, n: usize, guard: f64, pair_guard: f64) -> Result<AxiomReport>
where
    R: Fn(&ErasurePattern) -> Result<i64> + Sync,
{
    let cells = m * n;
    let ranks: Vec<i64> = all_patterns(m, n, guard)?.collect::<Vec<_>>().par_iter().map(&rank).collect::<Result<_>>()?;
    let total = ranks.len() as u64;
    let set = |mask: u64| ErasurePattern::from_mask(m, n, mask).one_indexed();
    let viol = |axiom, masks: &[u64]| AxiomViolation {
        axiom,
        sets: masks.iter().map(|&x| set(x)).collect(),
        values: masks.iter().map(|&x| ranks[x as usize]).collect(),
    };
    let done = |comparisons, pairwise, violation: Option<AxiomViolation>| AxiomReport {
        m,
        n,
        patterns: total,
        pairwise,
        comparisons,
        passes: violation.is_none(),
        violation,
    };
    for mask in 0..total {
        let r = ranks[mask as usize];
        if r < 0 {
            return Ok(done(mask, false, Some(viol(Axiom::Nonnegative, &[mask]))));
        }
        if r > mask.count_ones() as i64 {
            return Ok(done(mask, false, Some(viol(Axiom::Bounded, &[mask]))));
        }
    }
    let pairwise = (total as f64) * (total as f64) <= pair_guard;
    let mut comparisons = total;
    if pairwise {
        let found = (0..total).into_par_iter().find_map_first(|a| {
            for b in 0..total {
                let (ra, rb) = (ranks[a as usize], ranks[b as usize]);
                if a & b == a && ra > rb {
                    return Some(viol(Axiom::Monotone, &[a, b]));
                }
                if ranks[(a | b) as usize] + ranks[(a & b) as usize] > ra + rb {
                    return Some(viol(Axiom::Submodular, &[a, b, a | b, a & b]));
                }
            }
            None
        });
        comparisons += total * total;
        return Ok(done(comparisons, true, found));
    }
    let found = (0..total).into_par_iter().find_map_first(|a| {
        let ra = ranks[a as usize];
        for x in (0..cells).filter(|x| a >> x & 1 == 0) {
            let ax = a | 1 << x;
            if ra > ranks[ax as usize] {
                return Some(viol(Axiom::Monotone, &[a, ax]));
            }
            for y in (x + 1..cells).filter(|y| a >> y & 1 == 0) {
                let ay = a | 1 << y;
                let axy = ax | ay;
                if ranks[axy as usize] + ra > ranks[ax as usize] + ranks[ay as usize] {
                    return Some(viol(Axiom::Submodular, &[ax, ay, axy, a]));
                }
            }
        }
        None
    });
    comparisons += total * (cells * cells) as u64 / 2;
    Ok(done(comparisons, false, found))
}

/// 1-indexed cells.
pub type Cells = Vec<(usize, usize)>;

/// Downward closure and augmentation over the independent sets of an oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndependenceAudit {
    pub independent_sets: usize,
    pub downward_closed: bool,
    pub exchange: bool,
    /// 1-indexed cells of the first offending pair (A, B), when any.
    pub counterexample: Option<(Cells, Cells)>,
}

pub fn independence_audit<O: MatroidOracle + ?Sized>(oracle: &O, guard: f64) -> Result<IndependenceAudit> {
    let (m, n) = oracle.grid();
    let patterns: Vec<ErasurePattern> = all_patterns(m, n, guard)?.collect();
    let flags: Vec<bool> = patterns.par_iter().map(|e| oracle.is_independent(e)).collect::<Result<_>>()?;
    let indep: HashMap<u64, bool> = patterns.iter().map(|e| e.mask()).zip(flags.iter().copied()).collect();
    let independent: Vec<u64> = patterns.iter().zip(&flags).filter(|(_, &f)| f).map(|(e, _)| e.mask()).collect();
    let set = |mask: u64| ErasurePattern::from_mask(m, n, mask).one_indexed();
    for &a in &independent {
        let mut sub = a;
        loop {
            if !indep[&sub] {
                return Ok(IndependenceAudit {
                    independent_sets: independent.len(),
                    downward_closed: false,
                    exchange: false,
                    counterexample: Some((set(sub), set(a))),
                });
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & a;
        }
    }
    let bad = independent.par_iter().find_map_first(|&a| {
        independent.iter().find(|&&b| b.count_ones() > a.count_ones() && {
            let extra = b & !a;
            (0..64).filter(|x| extra >> x & 1 == 1).all(|x| !indep[&(a | 1 << x)])
        }).map(|&b| (set(a), set(b)))
    });
    Ok(IndependenceAudit {
        independent_sets: independent.len(),
        downward_closed: true,
        exchange: bad.is_none(),
        counterexample: bad,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BirigidityReport {
    pub m: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub rank: usize,
    pub expected_rank: usize,
    pub rectangles: usize,
    /// No (a+1) x (b+1) rectangle fits in the grid.
    pub vacuous: bool,
    /// 1-indexed rows and columns of the first rectangle that is not a circuit.
    pub failure: Option<(Vec<usize>, Vec<usize>)>,
    pub passes: bool,
    pub provenance: OracleProvenance,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::subspace::combinations(n, k)
}

/// Rank bm + an - ab and every (a+1) x (b+1) rectangle a circuit.
pub fn abstract_birigidity_audit<O: MatroidOracle + ?Sized>(oracle: &O, a: usize, b: usize) -> Result<BirigidityReport> {
    let (m, n) = oracle.grid();
    if a > m || b > n {
        return invalid(format!("need a <= m and b <= n, got a = {a}, b = {b} on {m} x {n}"));
    }
    let rank = oracle.rank(&ErasurePattern::full(m, n))?;
    let expected_rank = b * m + a * n - a * b;
    let mut rectangles = 0;
    let mut failure = None;
    let vacuous = a + 1 > m || b + 1 > n;
    if !vacuous {
        'outer: for rows in subsets(m, a + 1) {
            for cols in subsets(n, b + 1) {
                rectangles += 1;
                let rect = ErasurePattern::rectangle(m, n, &rows, &cols)?;
                let mut circuit = !oracle.is_independent(&rect)?;
                for &c in rect.cells() {
                    if !circuit {
                        break;
                    }
                    circuit = oracle.is_independent(&rect.without(c))?;
                }
                if !circuit {
                    failure = Some((rows.iter().map(|r| r + 1).collect(), cols.iter().map(|c| c + 1).collect()));
                    break 'outer;
                }
            }
        }
    }
    Ok(BirigidityReport {
        m,
        n,
        a,
        b,
        rank,
        expected_rank,
        rectangles,
        vacuous,
        passes: rank == expected_rank && failure.is_none(),
        failure,
        provenance: oracle.provenance(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub patterns: usize,
    pub correctable: usize,
    pub independent: usize,
    /// 1-indexed cells of a correctable pattern that is dependent in the potential matroid.
    pub violation: Option<Vec<(usize, usize)>>,
    pub passes: bool,
}

/// Correctable in C_col ⊗ C_row implies independent in M(C_col, n, b), over every pattern.
pub fn monotonicity_check<F: EnumerableField>(
    col: &LinearCode<F>,
    row: &LinearCode<F>,
    b: usize,
    guard_subspaces: f64,
    guard_patterns: f64,
) -> Result<MonotonicityReport> {
    let n = row.length();
    let pm = PotentialMatroid::new(col.clone(), n, b, guard_subspaces)?;
    let patterns: Vec<ErasurePattern> = all_patterns(col.length(), n, guard_patterns)?.collect();
    let rows: Vec<(bool, bool)> = patterns
        .par_iter()
        .map(|e| Ok((is_correctable(col, row, e)?.correctable, pm.rank(e)? == e.len() as i64)))
        .collect::<Result<_>>()?;
    let violation = patterns.iter().zip(&rows).find(|(_, &(c, i))| c && !i).map(|(e, _)| e.one_indexed());
    Ok(MonotonicityReport {
        patterns: patterns.len(),
        correctable: rows.iter().filter(|r| r.0).count(),
        independent: rows.iter().filter(|r| r.1).count(),
        passes: violation.is_none(),
        violation,
    })
}

/// The two inequalities the scaling argument consumes: d m < t and d > (m-1)(n-b).
pub fn scaling_margins(m: usize, n: usize, b: usize, t: usize, d: usize) -> Result<()> {
    if d * m >= t {
        return Err(Error::Precondition(format!("margin d < t/m fails: d = {d}, t = {t}, m = {m}")));
    }
    if d <= (m - 1) * (n - b) {
        return Err(Error::Precondition(format!("margin d > (m-1)(n-b) fails: d = {d}, (m-1)(n-b) = {}", (m - 1) * (n - b))));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub m: usize,
    pub n: usize,
    pub b: usize,
    pub t: usize,
    pub d: usize,
    pub b_prime: usize,
    pub patterns: usize,
    pub independent: usize,
    /// 1-indexed cells of the first pattern where the two sides disagree.
    pub mismatch: Option<Vec<(usize, usize)>>,
    pub passes: bool,
}

/// E independent in M(C_col, n, b) iff E^{1,t} is correctable in C_col ⊗ C_row, where C_row
/// has length t n and codimension b' = b t + d. Refuses parameters outside the margins.
#[allow(clippy::too_many_arguments)]
pub fn scaling_lemma_check<F: EnumerableField>(
    col: &LinearCode<F>,
    row: &LinearCode<F>,
    n: usize,
    b: usize,
    t: usize,
    d: usize,
    guard_subspaces: f64,
    guard_patterns: f64,
) -> Result<ScalingReport> {
    let m = col.length();
    if b > n {
        return invalid(format!("need b <= n, got b = {b}, n = {n}"));
    }
    scaling_margins(m, n, b, t, d)?;
    let b_prime = b * t + d;
    if row.length() != t * n || row.length() < b_prime || row.k() != row.length() - b_prime {
        return Err(Error::Dimension(format!(
            "row code must be [{}, {}], got [{}, {}]",
            t * n,
            (t * n).saturating_sub(b_prime),
            row.length(),
            row.k()
        )));
    }
    let pm = PotentialMatroid::new(col.clone(), n, b, guard_subspaces)?;
    let patterns: Vec<ErasurePattern> = all_patterns(m, n, guard_patterns)?.collect();
    let sides: Vec<(bool, bool)> = patterns
        .par_iter()
        .map(|e| {
            let left = pm.is_independent(e)?;
            let right = is_correctable(col, row, &scale_pattern(e, 1, t)?)?.correctable;
            Ok((left, right))
        })
        .collect::<Result<_>>()?;
    let mismatch = patterns.iter().zip(&sides).find(|(_, (l, r))| l != r).map(|(e, _)| e.one_indexed());
    Ok(ScalingReport {
        m,
        n,
        b,
        t,
        d,
        b_prime,
        patterns: patterns.len(),
        independent: sides.iter().filter(|s| s.0).count(),
        passes: mismatch.is_none(),
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::rs_code;
    use crate::field::FiniteField;

    fn rs7(k: usize) -> LinearCode<Gf> {
        let f = Gf::prime(7).unwrap();
        rs_code(&f, &[1, 2, 3], k).unwrap()
    }

    #[test]
    fn scaling_single_cell() {
        let e = ErasurePattern::new(1, 1, [(0, 0)]).unwrap();
        let s = scale_pattern(&e, 2, 2).unwrap();
        assert_eq!(s.one_indexed(), vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(scale_pattern(&e, 1, 1).unwrap(), e);
    }

    #[test]
    fn correctability_edges() {
        let (c, r) = (rs7(2), rs7(2));
        assert!(is_correctable(&c, &r, &ErasurePattern::empty(3, 3)).unwrap().correctable);
        let full = ErasurePattern::full(3, 3);
        let res = is_correctable(&c, &r, &full).unwrap();
        assert!(!res.correctable);
        assert!(verify_tensor_certificate(&c, &r, &full, res.certificate.as_ref().unwrap()));
        let rect = ErasurePattern::rectangle(3, 3, &[0, 1], &[0, 2]).unwrap();
        assert!(!is_correctable(&c, &r, &rect).unwrap().correctable);
        assert!(is_correctable(&c, &r, &rect.without((1, 2))).unwrap().correctable);
    }

    #[test]
    fn phi_values() {
        let c = rs7(2);
        assert_eq!(potential_phi(&c, 3, 1, &ErasurePattern::empty(3, 3), 1e6).unwrap().phi, 0);
        assert_eq!(potential_phi(&c, 3, 1, &ErasurePattern::full(3, 3), 1e6).unwrap().phi, 4);
        let rect = ErasurePattern::rectangle(3, 3, &[0, 1], &[1, 2]).unwrap();
        let r = potential_phi(&c, 3, 1, &rect, 1e6).unwrap();
        assert_eq!((r.phi, r.u.dim()), (1, 1));
        assert_eq!(potential_rank(&c, 3, 1, &ErasurePattern::full(3, 3), 1e6).unwrap(), 5);
    }

    #[test]
    fn free_and_uniform_pass_axioms() {
        let free = matroid_axiom_audit(|e| Ok(e.len() as i64), 2, 3, 1e5, 1e6).unwrap();
        assert!(free.passes && free.pairwise);
        let uniform = matroid_axiom_audit(|e| Ok(e.len().min(3) as i64), 2, 3, 1e5, 0.0).unwrap();
        assert!(uniform.passes && !uniform.pairwise);
        let bad = matroid_axiom_audit(|e| Ok(if e.len() == 2 { 0 } else { e.len().min(1) as i64 }), 2, 2, 1e5, 1e6).unwrap();
        assert_eq!(bad.violation.unwrap().axiom, Axiom::Monotone);
    }

    #[test]
    fn rational_enumeration_is_limited() {
        assert_eq!(Rationals.list_subspaces(1, 1e6).unwrap().len(), 2);
        assert!(Rationals.list_subspaces(2, 1e6).is_err());
    }

    #[test]
    fn margins() {
        assert!(scaling_margins(2, 2, 1, 10, 4).is_ok());
        assert!(scaling_margins(2, 2, 1, 6, 4).is_err());
        assert!(scaling_margins(2, 2, 1, 16, 1).is_err());
    }

    #[test]
    fn degenerate_birigidity_is_vacuous() {
        let f = Gf::prime(7).unwrap();
        let zero_col = LinearCode::new(Matrix::zeros(f.clone(), 0, 2), 1).unwrap();
        let row = rs_code(&f, &[1, 2], 1).unwrap();
        let o = CorrectabilityOracle { col: zero_col, row };
        let rep = abstract_birigidity_audit(&o, 2, 1).unwrap();
        assert!(rep.vacuous && rep.passes && rep.rank == 4);
        assert_eq!(f.order(), 7);
    }
}

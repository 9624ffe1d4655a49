//! Canonical subspaces of F^k and their enumeration.

use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::error::{check_guard, Error, Result};
use crate::field::{Field, FiniteField};
use crate::matrix::Matrix;

/// Default cap on the number of subspaces an enumeration may visit.
pub const DEFAULT_SUBSPACE_GUARD: f64 = 1e7;

/// A subspace stored as the RREF of a basis. Two subspaces are equal exactly when
/// their stored bases are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> Hash for Subspace<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.cols().hash(state);
        self.basis.data().hash(state);
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let pivots = (0..ambient).collect();
        Subspace { basis: Matrix::identity(field, ambient), pivots }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix<F>) -> Self {
        let mut r = m.clone();
        let pivots = r.rref_in_place();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace { basis, pivots }
    }

    pub fn from_vectors(field: F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        Ok(Subspace::from_matrix(&Matrix::from_rows(field, ambient, vectors)?))
    }

    /// Trusts that `basis` is already in RREF with no zero rows.
    pub(crate) fn from_rref_unchecked(basis: Matrix<F>, pivots: Vec<usize>) -> Self {
        Subspace { basis, pivots }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        self.field().same_as(other.field())?;
        if self.ambient() != other.ambient() {
            return Err(Error::Dimension(format!(
                "ambient dimensions {} and {} differ",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        if v.len() != self.ambient() {
            return false;
        }
        let f = self.field();
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let neg = f.neg(&c);
            for (j, x) in w.iter_mut().enumerate().skip(p) {
                *x = f.mul_add(x, &neg, self.basis.get(r, j));
            }
        }
        w.iter().all(|x| f.is_zero(x))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient() == other.ambient() && self.basis.to_rows().iter().all(|v| other.contains(v))
    }

    /// A + B.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// A ∩ B by the Zassenhaus construction.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = self.field().clone();
        let k = self.ambient();
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zeros(f.clone(), other.dim(), k))?;
        let r = top.vstack(&bottom)?.rref();
        let rows: Vec<Vec<F::Elem>> = (0..r.rank)
            .filter(|&i| r.pivots[i] >= k)
            .map(|i| r.matrix.row(i)[k..].to_vec())
            .collect();
        Subspace::from_vectors(f, k, rows)
    }

    /// dim(A ∩ B), computed as dim A + dim B - dim(A + B).
    pub fn meet_dim(&self, other: &Self) -> Result<usize> {
        self.compatible(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(0);
        }
        let sum = self.basis.vstack(&other.basis)?.rank();
        Ok(self.dim() + other.dim() - sum)
    }

    /// Image of the subspace under `v -> v * m` (rows of the basis times m).
    pub fn image(&self, m: &Matrix<F>) -> Result<Self> {
        Ok(Subspace::from_matrix(&self.basis.mul(m)?))
    }

    /// Projection onto the listed coordinates.
    pub fn project(&self, coords: &[usize]) -> Self {
        Subspace::from_matrix(&self.basis.select_columns(coords))
    }

    /// The subspace of vectors supported on `support`, i.e. vanishing elsewhere.
    pub fn supported_on(&self, support: &[bool]) -> Self {
        let off: Vec<usize> = (0..self.ambient()).filter(|&c| !support[c]).collect();
        let restricted = self.basis.select_columns(&off);
        // coefficient vectors y with y * restricted = 0, mapped back through the basis
        let coeffs = restricted.left_kernel();
        Subspace::from_matrix(&coeffs.basis.mul(&self.basis).expect("shapes agree"))
    }

    /// Dimension of the vectors supported on `support`.
    pub fn supported_dim(&self, support: &[bool]) -> usize {
        let off: Vec<usize> = (0..self.ambient()).filter(|&c| !support[c]).collect();
        self.dim() - self.basis.select_columns(&off).rank()
    }

    /// Orthogonal complement under the standard bilinear form (a parity-check space).
    pub fn annihilator(&self) -> Self {
        self.basis.kernel()
    }
}

impl<F: FiniteField> Subspace<F> {
    /// All vectors of the subspace, in lexicographic order of coefficient indices.
    pub fn vectors(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let q = f.order();
        let d = self.dim();
        let total = q.pow(d as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; d];
        for _ in 0..total {
            let coeffs: Vec<F::Elem> = digits.iter().map(|&i| f.element(i)).collect();
            out.push(self.basis.left_mul_vec(&coeffs).expect("length d"));
            for x in digits.iter_mut().rev() {
                *x += 1;
                if *x < q {
                    break;
                }
                *x = 0;
            }
        }
        out
    }

    /// A uniformly random subspace of the given dimension.
    pub fn random<R: Rng + ?Sized>(field: F, ambient: usize, dim: usize, rng: &mut R) -> Self {
        assert!(dim <= ambient);
        loop {
            let m = Matrix::random(field.clone(), dim, ambient, rng);
            let s = Subspace::from_matrix(&m);
            if s.dim() == dim {
                return s;
            }
        }
    }
}

/// Number of d-dimensional subspaces of F_q^k, as a float for guard checks.
pub fn gaussian_binomial(k: usize, d: usize, q: u64) -> f64 {
    if d > k {
        return 0.0;
    }
    let q = q as f64;
    (0..d).map(|i| (q.powi((k - i) as i32) - 1.0) / (q.powi((i + 1) as i32) - 1.0)).product()
}

/// All d-subsets of 0..k in lexicographic order.
pub fn combinations(k: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d > k {
        return out;
    }
    let mut c: Vec<usize> = (0..d).collect();
    loop {
        out.push(c.clone());
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < k - d + i {
                c[i] += 1;
                for j in i + 1..d {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Iterator over the subspaces whose RREF has a fixed pivot set.
pub struct PivotCellIter<F: FiniteField> {
    field: F,
    ambient: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u64>,
    done: bool,
}

impl<F: FiniteField> PivotCellIter<F> {
    pub fn new(field: F, ambient: usize, pivots: Vec<usize>) -> Self {
        let mut free = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..ambient {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let digits = vec![0; free.len()];
        PivotCellIter { field, ambient, pivots, free, digits, done: false }
    }

    /// Number of subspaces in this cell.
    pub fn len(&self) -> f64 {
        (self.field.order() as f64).powi(self.free.len() as i32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl<F: FiniteField> Iterator for PivotCellIter<F> {
    type Item = Subspace<F>;

    fn next(&mut self) -> Option<Subspace<F>> {
        if self.done {
            return None;
        }
        let f = &self.field;
        let mut m = Matrix::zeros(f.clone(), self.pivots.len(), self.ambient);
        for (r, &p) in self.pivots.iter().enumerate() {
            m.set(r, p, f.one());
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            m.set(r, c, f.element(d));
        }
        let q = f.order();
        self.done = true;
        for x in self.digits.iter_mut().rev() {
            *x += 1;
            if *x < q {
                self.done = false;
                break;
            }
            *x = 0;
        }
        Some(Subspace::from_rref_unchecked(m, self.pivots.clone()))
    }
}

/// Pivot cells of the d-dimensional subspaces of F^k, in canonical order.
pub fn subspace_cells<F: FiniteField>(field: &F, k: usize, d: usize) -> Vec<PivotCellIter<F>> {
    combinations(k, d).into_iter().map(|p| PivotCellIter::new(field.clone(), k, p)).collect()
}

/// Every d-dimensional subspace of F_q^k exactly once, ordered by pivot set and then
/// by free entries. Fails when the count exceeds `guard`.
pub fn enumerate_subspaces<F: FiniteField>(
    field: &F,
    k: usize,
    d: usize,
    guard: f64,
) -> Result<impl Iterator<Item = Subspace<F>>> {
    if d > k {
        return Err(Error::InvalidParameter(format!("dimension {d} exceeds ambient {k}")));
    }
    check_guard("subspace enumeration", gaussian_binomial(k, d, field.order()), guard)?;
    Ok(subspace_cells(field, k, d).into_iter().flatten())
}

/// Every subspace of F_q^k of every dimension (dimension-major order).
pub fn enumerate_all_subspaces<F: FiniteField>(
    field: &F,
    k: usize,
    guard: f64,
) -> Result<impl Iterator<Item = Subspace<F>>> {
    let total: f64 = (0..=k).map(|d| gaussian_binomial(k, d, field.order())).sum();
    check_guard("subspace lattice enumeration", total, guard)?;
    let field = field.clone();
    Ok((0..=k).flat_map(move |d| subspace_cells(&field, k, d).into_iter().flatten()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;

    #[test]
    fn counts_match_gaussian_binomials() {
        let f3 = Gf::prime(3).unwrap();
        assert_eq!(enumerate_subspaces(&f3, 4, 2, 1e7).unwrap().count(), 130);
        let f11 = Gf::prime(11).unwrap();
        assert_eq!(enumerate_subspaces(&f11, 3, 2, 1e7).unwrap().count(), 133);
        for k in 0..4 {
            assert_eq!(enumerate_subspaces(&f11, k, 0, 1e7).unwrap().count(), 1);
        }
    }

    #[test]
    fn guard_refuses() {
        let f = Gf::prime(101).unwrap();
        let err = enumerate_subspaces(&f, 6, 3, 1e7).err().unwrap();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }

    #[test]
    fn meet_of_axes_is_zero() {
        let f3 = Gf::prime(3).unwrap();
        let a = Subspace::from_vectors(f3.clone(), 2, vec![vec![1, 0]]).unwrap();
        let b = Subspace::from_vectors(f3.clone(), 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(a.meet(&b).unwrap().dim(), 0);
        assert_eq!(a.meet(&a).unwrap(), a);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(a.join(&b).unwrap(), Subspace::full(f3, 2));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f3 = Gf::prime(3).unwrap();
        let a = Subspace::full(f3.clone(), 2);
        let b = Subspace::full(f3, 3);
        assert!(a.meet(&b).is_err());
        assert!(a.join(&b).is_err());
    }

    #[test]
    fn supported_on_picks_codewords_with_small_support() {
        let f7 = Gf::prime(7).unwrap();
        // [3,2] RS on points 1,2,3
        let c = Subspace::from_vectors(f7.clone(), 3, vec![vec![1, 1, 1], vec![1, 2, 3]]).unwrap();
        let s = c.supported_on(&[true, true, false]);
        assert_eq!(s.dim(), 1);
        assert_eq!(c.supported_dim(&[true, true, false]), 1);
        assert_eq!(c.supported_dim(&[true, false, false]), 0);
        let v = &s.basis().to_rows()[0];
        assert_eq!(v[2], 0);
        assert!(c.contains(v));
    }

    #[test]
    fn vectors_lists_every_element() {
        let f3 = Gf::prime(3).unwrap();
        let s = Subspace::from_vectors(f3, 3, vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let v = s.vectors();
        assert_eq!(v.len(), 9);
        assert!(v.iter().all(|x| s.contains(x)));
    }
}

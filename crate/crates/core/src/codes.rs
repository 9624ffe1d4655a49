//! Linear codes given by generator matrices: Reed-Solomon, folded RS, random and tensor codes.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_guard, invalid, Error, Result};
use crate::field::{Field, FiniteField, Rationals};
use crate::matrix::Matrix;
use crate::subspace::{combinations, Subspace};

/// Default cap on k x k minors examined by `is_mds`.
pub const DEFAULT_MDS_GUARD: f64 = 1e6;

/// A code C: F^k -> (F^s)^n given by a k x (s n) generator of full row rank.
/// Position i occupies generator columns `i*s .. (i+1)*s`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCode<F: Field> {
    generator: Matrix<F>,
    n: usize,
    s: usize,
    points: Option<Vec<F::Elem>>,
}

impl<F: Field> LinearCode<F> {
    pub fn new(generator: Matrix<F>, s: usize) -> Result<Self> {
        if s == 0 || !generator.cols().is_multiple_of(s) {
            return invalid(format!("{} columns cannot be folded by s = {s}", generator.cols()));
        }
        let rank = generator.rank();
        if rank != generator.rows() {
            return invalid(format!("generator has rank {rank} < k = {}", generator.rows()));
        }
        let n = generator.cols() / s;
        Ok(LinearCode { generator, n, s, points: None })
    }

    pub fn field(&self) -> &F {
        self.generator.field()
    }
    pub fn k(&self) -> usize {
        self.generator.rows()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn s(&self) -> usize {
        self.s
    }
    /// Unfolded block length s*n.
    pub fn length(&self) -> usize {
        self.generator.cols()
    }
    pub fn generator(&self) -> &Matrix<F> {
        &self.generator
    }
    /// Flattened evaluation points for evaluation codes.
    pub fn points(&self) -> Option<&[F::Elem]> {
        self.points.as_deref()
    }

    pub fn rate(&self) -> BigRational {
        BigRational::new(BigInt::from(self.k()), BigInt::from(self.length()))
    }

    /// Generator columns of position i.
    pub fn block(&self, i: usize) -> Vec<usize> {
        (i * self.s..(i + 1) * self.s).collect()
    }

    /// The k x s matrix of the encoder pi_i.
    pub fn position_encoder(&self, i: usize) -> Matrix<F> {
        self.generator.select_columns(&self.block(i))
    }

    /// ker(pi_i) as a subspace of the message space F^k.
    pub fn position_kernel(&self, i: usize) -> Subspace<F> {
        self.position_encoder(i).left_kernel()
    }

    pub fn encode(&self, message: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.generator.left_mul_vec(message)
    }

    /// The code as a subspace of F^{sn}.
    pub fn as_subspace(&self) -> Subspace<F> {
        self.generator.row_space()
    }

    pub fn contains(&self, word: &[F::Elem]) -> bool {
        self.as_subspace().contains(word)
    }

    /// (sn - k) x sn parity-check matrix.
    pub fn parity_check(&self) -> Matrix<F> {
        self.generator.kernel().basis().clone()
    }
}

/// Points gamma^j alpha_i, the layout shared by folded RS codes and the GK design.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationScheme<F: Field> {
    field: F,
    gamma: F::Elem,
    alphas: Vec<F::Elem>,
    s: usize,
}

impl<F: Field> EvaluationScheme<F> {
    /// Checks eagerly that gamma and every alpha are nonzero and the s*n points are distinct.
    pub fn new(field: F, gamma: F::Elem, alphas: Vec<F::Elem>, s: usize) -> Result<Self> {
        if field.is_zero(&gamma) {
            return invalid("gamma must be nonzero");
        }
        if alphas.iter().any(|a| field.is_zero(a)) {
            return invalid("alphas must be nonzero");
        }
        if s == 0 {
            return invalid("fold parameter must be at least 1");
        }
        let scheme = EvaluationScheme { field, gamma, alphas, s };
        let mut pts = scheme.points();
        pts.sort();
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return invalid("evaluation points gamma^j alpha_i are not pairwise distinct");
        }
        Ok(scheme)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn gamma(&self) -> &F::Elem {
        &self.gamma
    }
    pub fn alphas(&self) -> &[F::Elem] {
        &self.alphas
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    /// gamma^j alpha_i for position i.
    pub fn block_points(&self, i: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.s);
        let mut x = self.alphas[i].clone();
        for _ in 0..self.s {
            out.push(x.clone());
            x = f.mul(&x, &self.gamma);
        }
        out
    }

    /// All points, position-major.
    pub fn points(&self) -> Vec<F::Elem> {
        (0..self.n()).flat_map(|i| self.block_points(i)).collect()
    }
}

impl EvaluationScheme<Rationals> {
    /// gamma = 2 and alpha_i = 2i - 1, the rational layout of the MR oracle.
    pub fn odd_integers(n: usize, s: usize) -> Result<Self> {
        let q = Rationals;
        let alphas = (0..n).map(|i| q.from_i64(2 * i as i64 + 1)).collect();
        EvaluationScheme::new(q, q.from_i64(2), alphas, s)
    }
}

impl<F: FiniteField> EvaluationScheme<F> {
    /// gamma = the smallest primitive element and alpha_i = gamma^{s i}; needs s n < q.
    pub fn primitive(field: F, n: usize, s: usize) -> Result<Self> {
        if (s * n) as u64 >= field.order() {
            return invalid(format!("need s*n = {} < q = {}", s * n, field.order()));
        }
        let g = field.primitive_element();
        let alphas = (0..n).map(|i| field.pow(&g, (s * i) as u64)).collect();
        EvaluationScheme::new(field, g, alphas, s)
    }
}

/// Reed-Solomon code: generator row i is (points[j]^i)_j.
pub fn rs_code<F: Field>(field: &F, points: &[F::Elem], k: usize) -> Result<LinearCode<F>> {
    if k > points.len() {
        return invalid(format!("k = {k} exceeds the {} points", points.len()));
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return invalid("repeated evaluation point");
    }
    let n = points.len();
    let mut g = Matrix::zeros(field.clone(), k, n);
    for (j, x) in points.iter().enumerate() {
        let mut v = field.one();
        for i in 0..k {
            g.set(i, j, v.clone());
            v = field.mul(&v, x);
        }
    }
    Ok(LinearCode { generator: g, n, s: 1, points: Some(points.to_vec()) })
}

/// Folded RS: position i holds (f(alpha_i), f(gamma alpha_i), ..., f(gamma^{s-1} alpha_i)).
pub fn folded_rs_code<F: Field>(scheme: &EvaluationScheme<F>, k: usize) -> Result<LinearCode<F>> {
    let flat = rs_code(scheme.field(), &scheme.points(), k)?;
    Ok(LinearCode { s: scheme.s(), n: scheme.n(), ..flat })
}

/// Same generator read with s = 1.
pub fn unfold<F: Field>(code: &LinearCode<F>) -> LinearCode<F> {
    LinearCode { n: code.length(), s: 1, ..code.clone() }
}

/// C_col ⊗ C_row. Codeword coordinate (r, c) sits at index r * n_row + c.
pub fn tensor_code<F: Field>(col: &LinearCode<F>, row: &LinearCode<F>) -> Result<LinearCode<F>> {
    col.field().same_as(row.field())?;
    if col.s() != 1 || row.s() != 1 {
        return invalid("tensor products need unfolded codes");
    }
    let g = col.generator().kronecker(row.generator())?;
    Ok(LinearCode { generator: g, n: col.n() * row.n(), s: 1, points: None })
}

/// Restriction to the kept positions; the dimension is the rank of the restriction.
pub fn puncture<F: Field>(code: &LinearCode<F>, kept: &[usize]) -> Result<LinearCode<F>> {
    if kept.is_empty() {
        return invalid("puncturing needs at least one kept position");
    }
    if let Some(&bad) = kept.iter().find(|&&i| i >= code.n()) {
        return Err(Error::Dimension(format!("position {bad} outside block length {}", code.n())));
    }
    let cols: Vec<usize> = kept.iter().flat_map(|&i| code.block(i)).collect();
    let restricted = code.generator().select_columns(&cols);
    let basis = restricted.row_space().basis().clone();
    let points = code.points().map(|p| cols.iter().map(|&c| p[c].clone()).collect());
    Ok(LinearCode { generator: basis, n: kept.len(), s: code.s(), points })
}

/// True iff every k x k minor of the unfolded generator is nonsingular.
pub fn is_mds<F: Field>(code: &LinearCode<F>, guard: f64) -> Result<bool> {
    let (k, len) = (code.k(), code.length());
    check_guard("MDS minor check", binomial_f64(len, k), guard)?;
    for cols in combinations(len, k) {
        if code.generator().select_columns(&cols).rank() < k {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

/// A random code with the number of rank-deficient draws that were discarded.
#[derive(Clone, Debug)]
pub struct RandomCode<F: Field> {
    pub code: LinearCode<F>,
    pub resamples: usize,
}

/// Uniform k x (s n) generator from a seeded ChaCha stream, redrawn until it has rank k.
pub fn random_folded_linear_code<F: FiniteField>(
    field: &F,
    n: usize,
    k: usize,
    s: usize,
    seed: u64,
) -> Result<RandomCode<F>> {
    if s == 0 || k > s * n {
        return invalid(format!("need 1 <= s and k <= s n, got k = {k}, s = {s}, n = {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut resamples = 0;
    loop {
        let g = Matrix::random(field.clone(), k, s * n, &mut rng);
        if g.rank() == k {
            return Ok(RandomCode { code: LinearCode { generator: g, n, s, points: None }, resamples });
        }
        resamples += 1;
    }
}

pub fn random_linear_code<F: FiniteField>(field: &F, n: usize, k: usize, seed: u64) -> Result<RandomCode<F>> {
    random_folded_linear_code(field, n, k, 1, seed)
}

impl<F: FiniteField> LinearCode<F> {
    /// Every codeword, in lexicographic message order.
    pub fn codewords(&self) -> Vec<Vec<F::Elem>> {
        self.as_subspace().vectors()
    }

    /// Messages in lexicographic index order, for small codes.
    pub fn messages(&self) -> Vec<Vec<F::Elem>> {
        Subspace::full(self.field().clone(), self.k()).vectors()
    }

    /// The message at position `idx` of `messages()`: base-q digits, most significant first.
    pub fn message(&self, mut idx: u64) -> Vec<F::Elem> {
        let f = self.field();
        let q = f.order();
        let mut digits = vec![0u64; self.k()];
        for d in digits.iter_mut().rev() {
            *d = idx % q;
            idx /= q;
        }
        digits.into_iter().map(|d| f.element(d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;

    #[test]
    fn rs_generator_is_vandermonde() {
        let f = Gf::prime(7).unwrap();
        let c = rs_code(&f, &[1, 2, 3], 2).unwrap();
        assert_eq!(c.generator(), &Matrix::from_i64_rows(f.clone(), &[vec![1, 1, 1], vec![1, 2, 3]]).unwrap());
        assert!(rs_code(&f, &[1, 1, 3], 2).is_err());
        assert!(rs_code(&f, &[1, 2], 3).is_err());
        assert_eq!(rs_code(&f, &[1, 2, 3], 3).unwrap().as_subspace(), Subspace::full(f, 3));
    }

    #[test]
    fn folded_rs_over_f11() {
        let f = Gf::prime(11).unwrap();
        let sch = EvaluationScheme::new(f.clone(), 2, vec![1, 4], 2).unwrap();
        assert_eq!(sch.points(), vec![1, 2, 4, 8]);
        let c = folded_rs_code(&sch, 3).unwrap();
        assert_eq!((c.n(), c.s(), c.k()), (2, 2, 3));
        let h = c.position_kernel(0);
        assert_eq!(h.dim(), 1);
        // f vanishes at 1 and 2
        let v = &h.basis().to_rows()[0];
        let p = crate::poly::Poly::new(f.clone(), v.clone());
        assert_eq!(p.eval(&1), 0);
        assert_eq!(p.eval(&2), 0);
        assert_eq!(unfold(&c).generator(), rs_code(&f, &[1, 2, 4, 8], 3).unwrap().generator());
    }

    #[test]
    fn scheme_rejects_collisions() {
        let f = Gf::prime(11).unwrap();
        // 2^5 = 32 = 10 and 10 is alpha_2
        assert!(EvaluationScheme::new(f.clone(), 2, vec![1, 10], 6).is_err());
        assert!(EvaluationScheme::new(f, 0, vec![1], 2).is_err());
    }

    #[test]
    fn tensor_of_repetition_codes() {
        let f = Gf::prime(5).unwrap();
        let rep = LinearCode::new(Matrix::from_i64_rows(f.clone(), &[vec![1, 1]]).unwrap(), 1).unwrap();
        let t = tensor_code(&rep, &rep).unwrap();
        assert_eq!(t.k(), 1);
        assert!(t.generator().data().iter().all(|&x| x == 1));
    }

    #[test]
    fn puncture_one_coordinate() {
        let f = Gf::prime(7).unwrap();
        let c = rs_code(&f, &[1, 2, 3], 2).unwrap();
        assert_eq!(puncture(&c, &[1]).unwrap().k(), 1);
        assert_eq!(puncture(&c, &[0, 1, 2]).unwrap().as_subspace(), c.as_subspace());
        assert!(puncture(&c, &[]).is_err());
    }

    #[test]
    fn zero_column_is_not_mds() {
        let f = Gf::prime(5).unwrap();
        let c = LinearCode::new(Matrix::from_i64_rows(f.clone(), &[vec![1, 0, 1], vec![0, 0, 1]]).unwrap(), 1)
            .unwrap();
        assert!(!is_mds(&c, 1e6).unwrap());
        assert!(is_mds(&rs_code(&f, &[1, 2, 3, 4], 2).unwrap(), 1e6).unwrap());
    }

    #[test]
    fn random_codes_are_deterministic() {
        let f = Gf::prime(2).unwrap();
        let a = random_linear_code(&f, 8, 8, 17).unwrap();
        let b = random_linear_code(&f, 8, 8, 17).unwrap();
        assert_eq!(a.code, b.code);
        assert_eq!(a.resamples, b.resamples);
        assert_eq!(a.code.generator().rank(), 8);
    }
}

//! Dense univariate polynomials over an exact field.

use crate::error::{Error, Result};
use crate::field::Field;

/// Coefficients are stored constant term first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// c * X^d.
    pub fn monomial(field: F, c: F::Elem, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = c;
        Poly::new(field, coeffs)
    }

    /// X - beta.
    pub fn linear_root(field: F, beta: &F::Elem) -> Self {
        let c0 = field.neg(beta);
        let one = field.one();
        Poly::new(field, vec![c0, one])
    }

    /// prod (X - r) over the roots.
    pub fn from_roots(field: F, roots: &[F::Elem]) -> Self {
        roots.iter().fold(Poly::constant(field.clone(), field.one()), |acc, r| {
            acc.mul(&Poly::linear_root(field.clone(), r))
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f.clone(), (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f.clone(), (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(&out[i + j], a, b);
            }
        }
        Poly::new(f.clone(), out)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// f(gamma * X).
    pub fn scale_argument(&self, gamma: &F::Elem) -> Self {
        let f = &self.field;
        let mut g = f.one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(f.mul(c, &g));
            g = f.mul(&g, gamma);
        }
        Poly::new(f.clone(), out)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let Some(dd) = divisor.degree() else {
            return Err(Error::InvalidParameter("division by the zero polynomial".into()));
        };
        let lead_inv = f.inv(&divisor.coeffs[dd]).expect("leading coefficient nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            let neg = f.neg(&c);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.mul_add(&rem[idx], &neg, d);
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        self.div_rem_unchecked(other).1.is_zero()
    }

    fn div_rem_unchecked(&self, numerator: &Self) -> (Self, Self) {
        numerator.div_rem(self).expect("nonzero divisor")
    }

    /// Largest m with (X - beta)^m dividing self; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, beta: &F::Elem) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin = Poly::linear_root(self.field.clone(), beta);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_rem(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                return Some(m);
            }
            p = q;
            m += 1;
        }
    }

    /// Largest m with X^m dividing self; `None` for the zero polynomial.
    pub fn x_adic_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }
}

/// Determinant of a square polynomial matrix by fraction-free elimination over F[X].
pub fn poly_det<F: Field>(field: &F, m: &[Vec<Poly<F>>]) -> Result<Poly<F>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("polynomial matrix is not square".into()));
    }
    if n == 0 {
        return Ok(Poly::constant(field.clone(), field.one()));
    }
    let mut a: Vec<Vec<Poly<F>>> = m.to_vec();
    let mut prev = Poly::constant(field.clone(), field.one());
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(Poly::zero(field.clone()));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                let (q, r) = v.div_rem(&prev)?;
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                a[i][j] = q;
            }
            a[i][k] = Poly::zero(field.clone());
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.scale(&field.neg(&field.one())) } else { det })
}

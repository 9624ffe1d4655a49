//! Integer matrices: fraction-free rank over Q and certified ranks modulo primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Gf, Rationals};
use crate::matrix::Matrix;
use crate::ntheory::is_prime;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    /// Scales each row of a rational matrix by the lcm of its denominators.
    pub fn from_rational(m: &Matrix<Rationals>) -> Self {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            for x in row {
                data.push(x.numer() * (&l / x.denom()));
            }
        }
        IntMatrix { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn to_rational(&self) -> Matrix<Rationals> {
        let data = self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        Matrix::new(Rationals, self.rows, self.cols, data).expect("shape preserved")
    }

    /// Entrywise reduction into F_p.
    pub fn reduce(&self, field: &Gf) -> Matrix<Gf> {
        let data = self.data.iter().map(|x| field.from_bigint(x)).collect();
        Matrix::new(field.clone(), self.rows, self.cols, data).expect("shape preserved")
    }

    /// Largest absolute entry, in bits.
    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(|x| x.bits()).max().unwrap_or(0)
    }
}

/// Exact rank by Bareiss fraction-free elimination; every intermediate entry is a
/// minor of the input, and each division is exact.
pub fn bareiss_rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = &piv * &a[i * cols + j] - &lead * &a[r * cols + j];
                a[i * cols + j] = if prev.is_one() { v } else { v / &prev };
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Exact rank of a rational matrix through the fraction-free integer path.
pub fn rational_rank(m: &Matrix<Rationals>) -> usize {
    bareiss_rank(&IntMatrix::from_rational(m))
}

/// Rank of the reduction modulo a prime; never exceeds the rational rank.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(m.reduce(&Gf::prime(p)?).rank())
}

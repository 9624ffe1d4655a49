use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subdesign::field::{Field, FiniteField, Gf, Rationals};
use subdesign::integer::{bareiss_rank, rank_mod_p, rational_rank, IntMatrix};
use subdesign::subspace::{enumerate_subspaces, Subspace};
use subdesign::Matrix;

// Determinant mod p by permutation expansion; only for tiny minors.
fn det_mod(m: &[Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0u64;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<u64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, &x)| x).collect()).collect();
        let term = m[0][c] * det_mod(&minor, p) % p;
        total = if c % 2 == 0 { (total + term) % p } else { (total + p - term) % p };
    }
    total
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|x| x.count_ones() as usize == r).map(|x| (0..n).filter(|i| x >> i & 1 == 1).collect()).collect()
}

fn minors_rank(m: &[Vec<u64>], p: u64) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    for r in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, r) {
            for cs in subsets(cols, r) {
                let sub: Vec<Vec<u64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                if det_mod(&sub, p) != 0 {
                    return r;
                }
            }
        }
    }
    0
}

#[test]
fn rank_agrees_with_minors() {
    let f = Gf::prime(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..20 {
        // low-rank products keep the deficient cases in play
        let inner = if trial % 2 == 0 { 6 } else { rng.gen_range(1..6) };
        let a = Matrix::random(f.clone(), 6, inner, &mut rng);
        let b = Matrix::random(f.clone(), inner, 9, &mut rng);
        let m = a.mul(&b).unwrap();
        let raw: Vec<Vec<u64>> = m.to_rows().into_iter().map(|r| r.into_iter().map(|x| f.index(&x)).collect()).collect();
        assert_eq!(m.rank(), minors_rank(&raw, 7));
    }
}

#[test]
fn rank_two_example() {
    let f = Gf::prime(5).unwrap();
    let r = Matrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap().rref();
    assert_eq!(r.rank, 1);
    assert_eq!(r.matrix.to_rows(), vec![vec![1, 2], vec![0, 0]]);
}

fn element_set(u: &Subspace<Gf>) -> BTreeSet<Vec<u64>> {
    u.vectors().into_iter().collect()
}

#[test]
fn meet_and_join_by_enumeration() {
    let f = Gf::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let a = Subspace::random(f.clone(), 5, rng.gen_range(0..=5), &mut rng);
        let b = Subspace::random(f.clone(), 5, rng.gen_range(0..=5), &mut rng);
        let (ea, eb) = (element_set(&a), element_set(&b));
        let meet: BTreeSet<_> = ea.intersection(&eb).cloned().collect();
        let join: BTreeSet<Vec<u64>> =
            ea.iter().flat_map(|x| eb.iter().map(move |y| x.iter().zip(y).map(|(p, q)| (p + q) % 3).collect())).collect();
        let (m, j) = (a.meet(&b).unwrap(), a.join(&b).unwrap());
        assert_eq!(meet, element_set(&m));
        assert_eq!(join, element_set(&j));
        assert_eq!(a.dim() + b.dim(), m.dim() + j.dim());
    }
}

#[test]
fn supermodularity_of_intersections() {
    let f = Gf::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let mut pick = || Subspace::random(f.clone(), 5, rng.gen_range(0..=5), &mut rng);
        let (x1, x2, y1, y2) = (pick(), pick(), pick(), pick());
        let lhs = x1.meet_dim(&y1).unwrap() + x2.meet_dim(&y2).unwrap();
        let rhs = x1.meet(&x2).unwrap().meet_dim(&y1.meet(&y2).unwrap()).unwrap()
            + x1.join(&x2).unwrap().meet_dim(&y1.join(&y2).unwrap()).unwrap();
        assert!(lhs <= rhs);
    }
}

// Row spaces of every d x k matrix over F_q, deduplicated by element set.
fn brute_subspace_count(q: u64, k: usize, d: usize) -> usize {
    let entries = d * k;
    let mut seen = BTreeSet::new();
    for code in 0..q.pow(entries as u32) {
        let mut x = code;
        let rows: Vec<Vec<u64>> = (0..d)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        let v = x % q;
                        x /= q;
                        v
                    })
                    .collect()
            })
            .collect();
        let mut span = BTreeSet::new();
        for c in 0..q.pow(d as u32) {
            let mut y = c;
            let mut v = vec![0u64; k];
            for r in &rows {
                let a = y % q;
                y /= q;
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi = (*vi + a * ri) % q;
                }
            }
            span.insert(v);
        }
        if span.len() == q.pow(d as u32) as usize {
            seen.insert(span);
        }
    }
    seen.len()
}

#[test]
fn enumeration_counts_match_brute_force() {
    let count = |q: u64, k: usize, d: usize| {
        let f = Gf::prime(q).unwrap();
        let mut n = 0usize;
        let mut distinct = BTreeSet::new();
        for u in enumerate_subspaces(&f, k, d, 1e7).unwrap() {
            assert_eq!(u.dim(), d);
            n += 1;
            distinct.insert(u.basis().to_rows());
        }
        assert_eq!(n, distinct.len());
        n
    };
    assert_eq!(count(3, 4, 2), 130);
    assert_eq!(brute_subspace_count(3, 4, 2), 130);
    assert_eq!(count(11, 3, 2), 133);
    assert_eq!(count(5, 3, 2), brute_subspace_count(5, 3, 2));
    assert_eq!(count(5, 3, 0), 1);
    assert_eq!(count(2, 5, 3), brute_subspace_count(2, 5, 3));
}

#[test]
fn modular_rank_matches_rational_rank() {
    let p = (1u64 << 61) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..50 {
        let rows: Vec<Vec<i64>> = (0..8).map(|_| (0..12).map(|_| rng.gen_range(-100..=100)).collect()).collect();
        let mut rows = rows;
        if trial % 3 == 0 {
            // force a dependency
            let combo: Vec<i64> = (0..12).map(|j| rows[0][j] - 2 * rows[1][j]).collect();
            rows[7] = combo;
        }
        let im = IntMatrix::from_i64_rows(&rows).unwrap();
        let q = Matrix::from_i64_rows(Rationals, &rows).unwrap();
        assert_eq!(rank_mod_p(&im, p).unwrap(), rational_rank(&q));
        assert_eq!(bareiss_rank(&im), q.rank());
    }
}

#[test]
fn one_sided_small_prime() {
    let im = IntMatrix::from_i64_rows(&[vec![2], vec![4]]).unwrap();
    assert_eq!(rank_mod_p(&im, 2).unwrap(), 0);
    assert_eq!(bareiss_rank(&im), 1);
    assert!(rank_mod_p(&im, 4).is_err());
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #[test]
    fn rank_mod_p_never_exceeds_rational_rank(rows in int_matrix(), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let im = IntMatrix::from_i64_rows(&rows).unwrap();
        prop_assert!(rank_mod_p(&im, p).unwrap() <= bareiss_rank(&im));
    }

    #[test]
    fn rref_is_idempotent(rows in int_matrix()) {
        let f = Gf::prime(5).unwrap();
        let m = Matrix::from_i64_rows(f, &rows).unwrap();
        let once = m.rref().matrix;
        prop_assert_eq!(once.rref().matrix, once.clone());
        prop_assert_eq!(m.row_space(), once.row_space());
    }

    #[test]
    fn kernel_is_annihilated(rows in int_matrix()) {
        let m = Matrix::from_i64_rows(Rationals, &rows).unwrap();
        let k = m.kernel();
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis().to_rows() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| Rationals.is_zero(x)));
        }
    }

    #[test]
    fn bigint_entries_roundtrip(rows in int_matrix()) {
        let im = IntMatrix::from_i64_rows(&rows).unwrap();
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                prop_assert_eq!(im.get(i, j), &BigInt::from(x));
            }
        }
    }
}

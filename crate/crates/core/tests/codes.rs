use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subdesign::codes::{folded_rs_code, is_mds, puncture, random_folded_linear_code, random_linear_code, rs_code, tensor_code, unfold, EvaluationScheme, LinearCode};
use subdesign::field::{Field, Gf, Rationals};
use subdesign::mr::{Algorithm1Params, Overrides};
use subdesign::{Matrix, Subspace};

#[test]
fn rational_rs_minors_are_nonzero() {
    let pts: Vec<BigRational> = [1, 3, 5, 7, 9].iter().map(|&x| Rationals.from_i64(x)).collect();
    let c = rs_code(&Rationals, &pts, 3).unwrap();
    let mut minors = 0;
    for a in 0..5 {
        for b in a + 1..5 {
            for d in b + 1..5 {
                let det = c.generator().select_columns(&[a, b, d]).det().unwrap();
                assert!(!Rationals.is_zero(&det));
                minors += 1;
            }
        }
    }
    assert_eq!(minors, 10);
}

#[test]
fn folded_rs_kernel_over_f11() {
    let f = Gf::prime(11).unwrap();
    let scheme = EvaluationScheme::new(f.clone(), 2, vec![1, 4], 2).unwrap();
    assert_eq!(scheme.points(), vec![1, 2, 4, 8]);
    let c = folded_rs_code(&scheme, 3).unwrap();
    let ker = c.position_kernel(0);
    assert_eq!(ker.dim(), 1);
    // f(1) = f(2) = 0 solved by hand: f = (X - 1)(X - 2) = 2 - 3X + X^2
    let v = ker.basis().row(0).to_vec();
    let lead = v[2];
    let norm: Vec<u64> = v.iter().map(|x| f.div(x, &lead).unwrap()).collect();
    assert_eq!(norm, vec![2, 8, 1]);
    let flat = rs_code(&f, &scheme.points(), 3).unwrap();
    assert_eq!(unfold(&c).generator(), flat.generator());
}

#[test]
fn algorithm_one_row_code_shape() {
    let p = Algorithm1Params::paper(2, 2, 1, 1).unwrap();
    let t = p.tensor();
    assert_eq!((t.row_points.len(), t.k_row), (32, 12));
    let p = Algorithm1Params::reduced(2, 2, 1, 1, Overrides::minimal(2, 2, 1, 1)).unwrap();
    assert_eq!(p.tensor().row_points.len(), p.t * 2);
}

#[test]
fn folded_kernels_have_codimension_s() {
    let f = Gf::prime(13).unwrap();
    for (n, s, k) in [(3, 4, 6), (2, 3, 5), (3, 2, 2), (2, 4, 8)] {
        let c = folded_rs_code(&EvaluationScheme::primitive(f.clone(), n, s).unwrap(), k).unwrap();
        for i in 0..n {
            assert_eq!(c.position_kernel(i).dim(), k - s.min(k));
        }
    }
}

#[test]
fn tensor_codewords_have_codeword_rows_and_columns() {
    let f = Gf::prime(7).unwrap();
    let a = random_linear_code(&f, 4, 2, 1).unwrap().code;
    let b = random_linear_code(&f, 4, 2, 2).unwrap().code;
    let t = tensor_code(&a, &b).unwrap();
    assert_eq!(t.k(), 4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let msg: Vec<u64> = (0..4).map(|_| rng.gen_range(0..7)).collect();
        let w = t.encode(&msg).unwrap();
        let m = Matrix::new(f.clone(), 4, 4, w).unwrap();
        for i in 0..4 {
            assert!(b.contains(m.row(i)));
            assert!(a.contains(&m.column(i)));
        }
    }
    let c43 = random_linear_code(&f, 4, 3, 5).unwrap().code;
    let c32 = rs_code(&f, &[1, 2, 3], 2).unwrap();
    assert_eq!(tensor_code(&c43, &c32).unwrap().k(), 6);
}

#[test]
fn puncture_dimension_counts_restrictions() {
    let f = Gf::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..40 {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(1..=n);
        let c = random_linear_code(&f, n, k, trial).unwrap().code;
        let kept: Vec<usize> = loop {
            let v: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if !v.is_empty() {
                break v;
            }
        };
        let restricted: BTreeSet<Vec<u64>> = c.codewords().into_iter().map(|w| kept.iter().map(|&i| w[i]).collect()).collect();
        let p = puncture(&c, &kept).unwrap();
        assert_eq!(3usize.pow(p.k() as u32), restricted.len());
    }
}

fn min_weight(c: &LinearCode<Gf>) -> usize {
    c.codewords().iter().map(|w| w.iter().filter(|&&x| x != 0).count()).filter(|&w| w > 0).min().unwrap()
}

#[test]
fn mds_matches_weight_enumeration() {
    let f = Gf::prime(2).unwrap();
    for seed in 0..30 {
        let c = random_linear_code(&f, 6, 3, seed).unwrap().code;
        assert_eq!(is_mds(&c, 1e6).unwrap(), min_weight(&c) == 6 - 3 + 1);
    }
    let f5 = Gf::prime(5).unwrap();
    for seed in 0..30 {
        let c = random_linear_code(&f5, 4, 2, seed).unwrap().code;
        assert_eq!(is_mds(&c, 1e6).unwrap(), min_weight(&c) == 3);
    }
}

#[test]
fn singular_rate_over_f2() {
    // exact count of singular 3x3 binary matrices by enumeration
    let f = Gf::prime(2).unwrap();
    let singular3 = (0u32..512)
        .filter(|&x| Matrix::new(f.clone(), 3, 3, (0..9).map(|i| u64::from(x >> i & 1)).collect()).unwrap().rank() < 3)
        .count();
    assert_eq!(singular3, 512 - 168);
    for (k, p_singular, codes) in [(3usize, singular3 as f64 / 512.0, 3000u64), (8, 1.0 - (1..=8).map(|i| 1.0 - 0.5f64.powi(i)).product::<f64>(), 3000)] {
        let mut draws = 0usize;
        for seed in 0..codes {
            let r = random_linear_code(&f, k, k, seed).unwrap();
            assert_eq!(r.code.generator().rank(), k);
            draws += r.resamples + 1;
        }
        let observed = 1.0 - codes as f64 / draws as f64;
        let sigma = (p_singular * (1.0 - p_singular) / draws as f64).sqrt();
        assert!((observed - p_singular).abs() <= 3.0 * sigma, "k = {k}: {observed} vs {p_singular}");
    }
}

#[test]
fn random_codes_keep_rate() {
    let f = Gf::prime(5).unwrap();
    let c = random_folded_linear_code(&f, 3, 4, 2, 9).unwrap().code;
    assert_eq!(c.rate(), BigRational::new(BigInt::from(4), BigInt::from(6)));
    assert_eq!(unfold(&c).rate(), c.rate());
    assert_eq!(unfold(&c).length(), 6);
}

proptest! {
    #[test]
    fn unfold_preserves_codewords(seed in any::<u64>(), k in 1usize..=4, s in 1usize..=3) {
        let f = Gf::prime(3).unwrap();
        let n = 2;
        prop_assume!(k <= s * n);
        let c = random_folded_linear_code(&f, n, k, s, seed).unwrap().code;
        let u = unfold(&c);
        prop_assert_eq!(u.s(), 1);
        let a: BTreeSet<_> = c.codewords().into_iter().collect();
        let b: BTreeSet<_> = u.codewords().into_iter().collect();
        prop_assert_eq!(a.len(), 3usize.pow(k as u32));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rs_codes_are_mds(k in 1usize..=5, extra in 0usize..=4) {
        let f = Gf::prime(11).unwrap();
        let pts: Vec<u64> = (1..=(k + extra) as u64).collect();
        prop_assert!(is_mds(&rs_code(&f, &pts, k).unwrap(), 1e6).unwrap());
    }

    #[test]
    fn tensor_dimension_multiplies(ka in 1usize..=3, kb in 1usize..=3, seed in any::<u64>()) {
        let f = Gf::prime(5).unwrap();
        let a = random_linear_code(&f, 3, ka, seed).unwrap().code;
        let b = random_linear_code(&f, 4, kb, seed ^ 1).unwrap().code;
        let t = tensor_code(&a, &b).unwrap();
        prop_assert_eq!(t.k(), ka * kb);
        prop_assert_eq!(t.as_subspace().dim(), ka * kb);
    }
}

#[test]
fn full_rank_square_code_is_everything() {
    let f = Gf::prime(3).unwrap();
    let c = random_linear_code(&f, 4, 4, 11).unwrap().code;
    assert_eq!(c.as_subspace(), Subspace::full(f, 4));
}

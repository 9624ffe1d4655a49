//! Brute-force list recovery of small Reed-Solomon codes, and a folded code that avoids
//! every sampled high-threshold profile.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subdesign::codes::{folded_rs_code, rs_code, EvaluationScheme};
use subdesign::designs::slacked_designable;
use subdesign::field::Gf;
use subdesign::profiles::{contains_profile, is_list_recoverable, threshold_rate, ContainmentOptions, LocalProfile};
use subdesign::Subspace;

fn main() -> subdesign::Result<()> {
    let f = Gf::prime(5)?;
    let code = rs_code(&f, &[0, 1, 2, 3, 4], 2)?;
    for (num, ell, list) in [(0, 1, 1), (1, 1, 1), (1, 2, 2), (2, 2, 3), (2, 2, 5)] {
        let rho = BigRational::new(BigInt::from(num), BigInt::from(5));
        let r = is_list_recoverable(&code, &rho, ell, list, 1e8)?;
        println!("[5,2] RS, rho = {rho}, l = {ell}, L = {list}: {} ({} tuples)", r.recoverable, r.tuples_checked);
        if let Some(v) = r.violating {
            println!("  violating tuple: {v:?}");
        }
    }

    let f13 = Gf::prime(13)?;
    let folded = folded_rs_code(&EvaluationScheme::primitive(f13.clone(), 3, 4)?, 3)?;
    let mu = BigRational::new(BigInt::from(1), BigInt::from(100));
    println!("folded RS q = 13, s = 4, n = 3, k = 3: mu-slacked 2-designable = {}", slacked_designable(&folded, 2, &mu, 1e7)?.holds);
    let need = folded.rate() + &mu + BigRational::new(BigInt::from(1), BigInt::from(3));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut tried, mut hits) = (0, 0);
    while tried < 10 {
        let vs = (0..3).map(|_| Subspace::random(f13.clone(), 2, rng.gen_range(0..=2), &mut rng)).collect();
        let p = LocalProfile::new(f13.clone(), 2, vs)?;
        if threshold_rate(&p, 1e7)?.rate < need {
            continue;
        }
        tried += 1;
        hits += usize::from(contains_profile(&folded, &p, ContainmentOptions::default())?.is_some());
    }
    println!("{tried} profiles with R_V >= {need}: {hits} contained");
    Ok(())
}

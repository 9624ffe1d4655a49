//! Exact threshold rates of local profiles and their invariance under duplication.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subdesign::field::Gf;
use subdesign::profiles::{duplicate_profile, threshold_rate, LocalProfile};
use subdesign::Subspace;

fn main() -> subdesign::Result<()> {
    let f = Gf::prime(3)?;
    let full = LocalProfile::constant(Subspace::full(f.clone(), 2), 4);
    let zero = LocalProfile::constant(Subspace::zero(f.clone(), 2), 4);
    println!("all V_i = F^2: R_V = {}", threshold_rate(&full, 1e6)?.rate);
    println!("all V_i = 0:   R_V = {}", threshold_rate(&zero, 1e6)?.rate);
    for w in 0..=5 {
        let vs = (0..5).map(|i| if i < w { Subspace::full(f.clone(), 1) } else { Subspace::zero(f.clone(), 1) }).collect();
        println!("weight {w} of 5: R_V = {}", threshold_rate(&LocalProfile::new(f.clone(), 1, vs)?, 1e6)?.rate);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let n = rng.gen_range(2..=5);
        let vs = (0..n).map(|_| Subspace::random(f.clone(), 2, rng.gen_range(0..=2), &mut rng)).collect();
        let p = LocalProfile::new(f.clone(), 2, vs)?;
        let t = threshold_rate(&p, 1e6)?;
        let dims: Vec<usize> = p.subspaces().iter().map(|v| v.dim()).collect();
        let dup: Vec<String> = [2, 3].iter().map(|&s| threshold_rate(&duplicate_profile(&p, s).unwrap(), 1e6).unwrap().rate.to_string()).collect();
        println!(
            "dims {dims:?}: R_V = {} via U = {:?}, W of dim {}; duplicated x2, x3: {}",
            t.rate,
            t.u.as_ref().map(|u| u.basis().to_rows()),
            t.w.as_ref().map_or(0, |w| w.dim()),
            dup.join(", ")
        );
    }
    Ok(())
}

//! Containment frequency of a fixed profile in random linear codes, swept across rates.

use subdesign::field::Gf;
use subdesign::profiles::{monte_carlo_threshold, ContainmentOptions, LocalProfile};
use subdesign::Subspace;

fn main() -> subdesign::Result<()> {
    let f = Gf::prime(11)?;
    let (n, w) = (6, 3);
    let vs = (0..n).map(|i| if i < w { Subspace::full(f.clone(), 1) } else { Subspace::zero(f.clone(), 1) }).collect();
    let p = LocalProfile::new(f, 1, vs)?;
    let opts = ContainmentOptions { exclude_trivial: true, ..Default::default() };
    for k in 1..=n {
        let r = monte_carlo_threshold(&p, k, 200, 42, opts)?;
        println!(
            "R = {:>3}  R_V = {}  contained {:>3}/{}  error term {}",
            r.rate.to_string(),
            r.threshold,
            r.contained,
            r.trials,
            if r.theorem_error < 1.0 { format!("{:.3}", r.theorem_error) } else { "vacuous".into() }
        );
    }
    Ok(())
}

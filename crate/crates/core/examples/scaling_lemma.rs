//! Independence in the potential matroid of a 2 x 2 grid against correctability of the
//! (1, t)-scaled pattern with a Reed-Solomon row code over Q.

use subdesign::codes::rs_code;
use subdesign::field::{Field, Rationals};
use subdesign::tensor::{scaling_lemma_check, scaling_margins};

fn main() -> subdesign::Result<()> {
    let (n, b, t, d) = (2, 1, 10, 4);
    println!("margins at t = 16: {:?}", scaling_margins(2, n, b, 16, d).is_ok());
    println!("margins at t = 10: {:?}", scaling_margins(2, n, b, t, d).is_ok());
    println!("margins at t = 6:  {}", scaling_margins(2, n, b, 6, d).unwrap_err());

    let q = Rationals;
    let col = rs_code(&q, &[q.from_i64(1), q.from_i64(3)], 1)?;
    let pts: Vec<_> = (0..n as i64).flat_map(|j| (0..t as u32).map(move |y| (2 * j + 1) << y)).map(|x| q.from_i64(x)).collect();
    let row = rs_code(&q, &pts, n * t - (b * t + d))?;
    let r = scaling_lemma_check(&col, &row, n, b, t, d, 1e6, 1e6)?;
    println!(
        "{} patterns, {} independent, b' = {}, equivalence holds: {}",
        r.patterns, r.independent, r.b_prime, r.passes
    );
    Ok(())
}

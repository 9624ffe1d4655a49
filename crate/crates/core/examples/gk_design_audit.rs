//! Builds folded Reed-Solomon subspace designs and compares the exhaustive audit with
//! the improved and the earlier bound.

use subdesign::codes::EvaluationScheme;
use subdesign::designs::{audit_design, design_bound, gk_design, gk_old_bound};
use subdesign::field::Gf;

fn main() -> subdesign::Result<()> {
    println!("{:>4} {:>2} {:>2} {:>2} {:>2} {:>9} {:>8} {:>5} {:>5}", "q", "k", "s", "n", "l", "checked", "A_strong", "new", "old");
    for (q, k, s, n, ell) in [(11, 3, 2, 2, 1), (11, 3, 2, 2, 2), (13, 4, 3, 3, 2), (7, 5, 3, 2, 2), (7, 5, 3, 2, 3), (23, 4, 3, 3, 2)] {
        let scheme = EvaluationScheme::primitive(Gf::prime(q)?, n, s)?;
        let design = gk_design(&scheme, k)?;
        let a = audit_design(&design, ell, 1e7)?;
        println!(
            "{q:>4} {k:>2} {s:>2} {n:>2} {ell:>2} {:>9} {:>8} {:>5} {:>5}",
            a.subspaces_checked,
            a.a_strong,
            design_bound(k, s, ell)?,
            gk_old_bound(k, s, ell)?
        );
    }
    Ok(())
}

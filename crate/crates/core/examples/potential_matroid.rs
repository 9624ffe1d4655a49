//! The potential matroid of a [3,2] Reed-Solomon column code on a 3 x 3 grid, against the
//! correctability matroid of the tensor code.

use subdesign::codes::rs_code;
use subdesign::field::Gf;
use subdesign::tensor::{
    abstract_birigidity_audit, is_correctable, matroid_axiom_audit, monotonicity_check, CorrectabilityOracle,
    ErasurePattern, MatroidOracle, PotentialMatroid,
};

fn main() -> subdesign::Result<()> {
    let f = Gf::prime(7)?;
    let col = rs_code(&f, &[1, 2, 3], 2)?;
    let row = rs_code(&f, &[1, 2, 3], 2)?;
    let pm = PotentialMatroid::new(col.clone(), 3, 1, 1e6)?;

    let hexagon = ErasurePattern::from_one_indexed(3, 3, &[(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 1)])?;
    let square = ErasurePattern::from_one_indexed(3, 3, &[(1, 1), (1, 2), (2, 1), (2, 2)])?;
    for (name, e) in [("square", &square), ("hexagon", &hexagon), ("full", &ErasurePattern::full(3, 3))] {
        let phi = pm.phi(e)?;
        println!(
            "{name:>8}: |E| = {}, Phi = {}, rank = {}, correctable = {}",
            e.len(),
            phi.phi,
            pm.rank(e)?,
            is_correctable(&col, &row, e)?.correctable
        );
    }

    let axioms = matroid_axiom_audit(|e| pm.rank(e), 3, 3, 1e6, 1e6)?;
    println!("rank axioms over {} patterns: {}", axioms.patterns, axioms.passes);
    let mono = monotonicity_check(&col, &row, 1, 1e6, 1e6)?;
    println!("correctable => independent: {} ({} correctable, {} independent)", mono.passes, mono.correctable, mono.independent);
    let oracle = CorrectabilityOracle { col, row };
    for (name, o) in [("potential", &pm as &dyn MatroidOracle), ("tensor", &oracle)] {
        let b = abstract_birigidity_audit(o, 1, 1)?;
        println!("{name}: rank {} (expected {}), {} rectangles all circuits: {}", b.rank, b.expected_rank, b.rectangles, b.passes);
    }
    Ok(())
}

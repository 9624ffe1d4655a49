//! Oracle verdicts with their certificates, in paper and reduced mode, and a
//! cross-check against random codes over a 61-bit prime field.

use subdesign::mr::{crosscheck, entry_bits, mr_independent, mr_rank, prime_ladder, Algorithm1Params, OracleOptions, Overrides};
use subdesign::tensor::ErasurePattern;

fn main() -> subdesign::Result<()> {
    let opts = OracleOptions::default();
    let paper = Algorithm1Params::paper(2, 2, 1, 1)?;
    println!(
        "paper (2,2,1,1): s = {}, t = {}, a' = {}, b' = {}, entries up to {} bits",
        paper.s,
        paper.t,
        paper.a_prime,
        paper.b_prime,
        entry_bits(&paper)
    );
    let cell = ErasurePattern::from_one_indexed(2, 2, &[(1, 1)])?;
    let v = mr_independent(&cell, &paper, opts)?;
    println!("  single cell: {:?} by {}", v.decision, kind(&v.certificate));

    let p = Algorithm1Params::reduced(3, 3, 1, 1, Overrides::minimal(3, 3, 1, 1))?;
    println!("reduced (3,3,1,1): s = {}, t = {}, d = {}, d' = {}", p.s, p.t, p.d, p.d_prime);
    let hexagon = ErasurePattern::from_one_indexed(3, 3, &[(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 1)])?;
    let path = hexagon.without((2, 0));
    for (name, e) in [("path", &path), ("hexagon", &hexagon), ("square", &ErasurePattern::rectangle(3, 3, &[0, 1], &[0, 1])?)] {
        let v = mr_independent(e, &p, opts)?;
        println!("  {name:>7}: {:?}, verified {}, {}", v.decision, v.verify(e, &p)?, kind(&v.certificate));
    }
    println!("  rank of the grid: {}", mr_rank(&ErasurePattern::full(3, 3), &p, opts)?.rank);

    let small = Algorithm1Params::reduced(2, 2, 1, 1, Overrides::minimal(2, 2, 1, 1))?;
    let modular = OracleOptions { structural: false, ..opts };
    let v = mr_independent(&ErasurePattern::from_one_indexed(2, 2, &[(1, 1), (2, 2)])?, &small, modular)?;
    println!("reduced (2,2,1,1) diagonal without shortcuts: {:?} by {}", v.decision, kind(&v.certificate));

    let r = crosscheck(&p, opts, prime_ladder()[0], 3, &[1, 2, 3], 1e6)?;
    println!(
        "crosscheck (3,3,1,1): {} patterns, {} independent, {} dependent, {} disagreements",
        r.patterns,
        r.independent,
        r.dependent,
        r.disagreements.len()
    );
    Ok(())
}

fn kind(c: &subdesign::mr::Certificate) -> String {
    let v = serde_json::to_value(c).unwrap();
    v["kind"].as_str().unwrap_or("none").to_string()
}

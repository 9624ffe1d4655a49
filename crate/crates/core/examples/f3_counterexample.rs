//! Four planes in F_3^4 that no 2-dimensional subspace meets all at once, and the
//! same planes over F_9 where one does.

use subdesign::designs::{audit_design, closed_field_floor, counterexample_design, f3_counterexample};
use subdesign::field::Gf;

fn main() -> subdesign::Result<()> {
    let d = f3_counterexample();
    for (i, h) in d.subspaces().iter().enumerate() {
        println!("H_{} = rowspace {:?}", i + 1, h.basis().to_rows());
    }
    let a = audit_design(&d, 2, 1e7)?;
    println!(
        "F_3: {} planes checked, A_weak = {}, A_strong = {}, closed-field floor = {}",
        a.subspaces_checked,
        a.a_weak,
        a.a_strong,
        closed_field_floor(4, 2, 2)?
    );

    let f9 = Gf::new(3, 2)?;
    let a9 = audit_design(&counterexample_design(f9), 2, 1e7)?;
    println!("F_9: {} planes checked, A_weak = {}", a9.subspaces_checked, a9.a_weak);
    if let Some(u) = a9.weak_witness {
        println!("plane meeting all four: {:?}", u.basis().to_rows());
    }
    Ok(())
}

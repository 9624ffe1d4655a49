//! Folded Wronskians: the independence criterion, the degree and vanishing-order bounds,
//! and root multiplicities at design points, on random instances.

use subdesign::designs::{independence_via_wronskian, wronskian_det, wronskian_suite};
use subdesign::field::{FiniteField, Gf};
use subdesign::poly::Poly;

fn main() -> subdesign::Result<()> {
    let f = Gf::prime(5)?;
    let x = Poly::monomial(f.clone(), 1, 1);
    let one = Poly::constant(f.clone(), 1);
    let p = wronskian_det(&[one.clone(), x.clone()], &2)?;
    println!("W_2(1, X) over F_5 = {:?}", p.coeffs());
    println!("(1, X) independent: {}", independence_via_wronskian(&[one, x.clone()], &2, 2)?);
    println!("(X, 2X) independent: {}", independence_via_wronskian(&[x.clone(), x.scale(&2)], &2, 2)?);

    for q in [11, 17, 101] {
        let field = Gf::prime(q)?;
        let r = wronskian_suite(&field, 300, 7)?;
        println!(
            "F_{q} (gamma order up to {}): {} tuples, {} independent, {} root checks, failures: criterion {} degree {} divisibility {} roots {}",
            q - 1,
            r.instances,
            r.independent,
            r.root_checks,
            r.criterion_failures,
            r.degree_failures,
            r.divisibility_failures,
            r.root_failures
        );
        assert_eq!(field.order(), q);
    }
    Ok(())
}

//! Symmetric splits of star vectors: the generic `p - q` split and the two
//! splits of an h*-vector.

use polybinom::order::{interior_hstar, lattice_hstar};
use polybinom::stapledon::{check_partial_sum_inequalities, Family};
use polybinom::{stapledon_ab, stapledon_ca, symmetric_split, Poset, StarVector, Start};

fn main() -> polybinom::Result<()> {
    let v = StarVector::from_i64s(&[0, 0, 2, 4], 3, Start::Zero)?;
    let s = symmetric_split(v.entries(), 3)?;
    println!("{v} = {:?} - {:?}", s.p, s.q);

    // the unit cube as the order polytope of a 3-element antichain
    let cube = Poset::antichain(3);
    let h = lattice_hstar(&cube)?;
    let ab = stapledon_ab(&h)?;
    let ca = stapledon_ca(&h, Some(&interior_hstar(&cube)?))?;
    println!("cube h* = {h}");
    println!("  a = {:?}, b = {:?} (degree {}, codegree {})", ab.a, ab.b, ab.s, ab.l);
    println!("  c = {:?}, a = {:?}", ca.c, ca.a);
    for c in ca.checks {
        println!("  {}: {}", c.name, c.holds);
    }

    let audit = check_partial_sum_inequalities(h.entries(), 3, Family::TopSumsBelowLow);
    println!("{} on the cube: {:?}", audit.family, audit.verdict);
    Ok(())
}

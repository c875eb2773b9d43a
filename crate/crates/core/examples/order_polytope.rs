//! Order polynomial of a poset, three routes to its order polytope h*-vector,
//! and lattice-point reciprocity.

use polybinom::order::{analyze_poset, order_polytope_points};
use polybinom::{Mode, Poset};

fn main() -> polybinom::Result<()> {
    // the "N" poset: 0 < 2, 1 < 2, 1 < 3
    let n_poset = Poset::parse("elements 4\ncover 0 2\ncover 1 2\ncover 1 3\n")?;
    let r = analyze_poset(&n_poset, Mode::Verify)?;
    println!("strict order polynomial: {}", r.omega);
    println!("Omega*:                  {}", r.omega_star);
    println!("h* from lattice points:  {}", r.hstar);
    println!("h* from descents:        {}", r.hstar_descents);
    println!("interior h*:             {}", r.hstar_interior);
    for row in &r.reciprocity {
        println!("  n = {}: (-1)^d ehr(-n) = {}, interior points = {}", row.n, row.reciprocal, row.interior);
    }
    println!("points in 3 * O: {}", order_polytope_points(&n_poset, 3, false)?);
    println!("{} checks, all hold: {}", r.checks.len(), r.holds());
    Ok(())
}

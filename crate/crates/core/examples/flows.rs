//! Modular and integral flow polynomials with their orientation anchors.

use polybinom::flows::{flow_polynomials, kochol_orientation_counts};
use polybinom::{Mode, Multigraph};

fn main() -> polybinom::Result<()> {
    for (name, g) in [("theta", Multigraph::theta()), ("K4", Multigraph::complete(4)), ("wheel W4", Multigraph::wheel(4))] {
        let r = flow_polynomials(&g, Mode::Verify)?;
        println!("{name} (cyclomatic number {})", r.xi);
        println!("  phi(n) = {}    phi* = {}", r.phi, r.phi_star);
        println!("  f(n)   = {}    f*   = {}", r.f, r.f_star);
        println!(
            "  totally cyclic orientations = {}, their in-degree sequences = {}",
            r.tc_orientation_count, r.indegree_sequence_count
        );
    }

    // integral flows split by sign pattern into positive flows on orientations
    let theta = Multigraph::theta();
    for (o, count) in kochol_orientation_counts(&theta, 4)? {
        println!("  theta, n = 4, orientation {}: {count} positive flows", o.describe());
    }
    Ok(())
}

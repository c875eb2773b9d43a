//! Chromatic polynomial, its star vector, and the symmetric split anchored at
//! the number of acyclic orientations.

use polybinom::chromatic::chromatic_decomposition;
use polybinom::{Mode, Multigraph};

fn show(v: &[num_bigint::BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn main() -> polybinom::Result<()> {
    let graphs = [
        ("K4", Multigraph::complete(4)),
        ("C5", Multigraph::cycle(5)),
        ("wheel with 5 spokes", Multigraph::wheel(5)),
        ("two disjoint edges", Multigraph::new(4, vec![(0, 1), (2, 3)])?),
    ];
    for (name, g) in graphs {
        let r = chromatic_decomposition(&g, Mode::Verify)?;
        println!("{name}");
        println!("  chi(n) = {}", r.chi);
        println!("  chi*   = {}", r.chi_star);
        println!("  a = {}", show(&r.split.p));
        println!("  b = {}", show(&r.split.q));
        println!("  acyclic orientations = {}", r.acyclic_count);
    }
    Ok(())
}

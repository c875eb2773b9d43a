//! The mirrored partial-sum inequalities rewritten in the monomial basis of a
//! monic polynomial with zero constant term.

use polybinom::report::{cmd_table1, render_table1};

fn main() -> polybinom::Result<()> {
    print!("{}", render_table1(&cmd_table1()?));
    Ok(())
}

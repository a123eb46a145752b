//! Three determinant formulas for the same family, and their sizes.

use krall::constructors::determinant_sizes;
use krall::exact::{rat, IndexSet};
use krall::measures::NuParams;
use krall::verify::{all_pass, orthogonality::equivalence_reports};

fn main() -> krall::Result<()> {
    let p = NuParams::new(3, 2, 4, vec![rat(2), rat(5)])?;
    let u = IndexSet::new(vec![-4, 1]);
    let reps = equivalence_reports(&p, &u, None)?;
    println!("{} proportionality checks, all exact: {}", reps.len(), all_pass(&reps));

    let s = determinant_sizes(5, 2, 6, &IndexSet::new(vec![-2, 0, 1, 5, 6]))?;
    println!("sizes: {} {} {}", s.basic, s.alt6_structural, s.sec7);
    Ok(())
}

//! Dual Hahn polynomials R_n^{a,b,N} and their Gram matrix under ρ_{a,b,N}.

use krall::exact::rat;
use krall::verify::{all_pass, orthogonality::classical_report};

fn main() -> krall::Result<()> {
    let (a, b, nn) = (3, 2, 4);
    for n in 0..=2 {
        let r = krall::classical::dual_hahn_poly(n, &rat(a), &rat(b), &rat(nn));
        println!("R_{n}(λ) = {:?}", r.coeffs().iter().map(krall::exact::fmt_rat).collect::<Vec<_>>());
    }
    let reps = classical_report(a, b, nn)?;
    println!("{} Gram entries, all exact: {}", reps.len(), all_pass(&reps));
    Ok(())
}

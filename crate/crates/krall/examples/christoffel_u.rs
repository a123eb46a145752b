//! ν^{M,U}: orthogonal polynomials after multiplying by ∏(x - λ(u)), and their recurrence.

use krall::constructors::construct_basic;
use krall::exact::{fmt_rat, frac, rat};
use krall::measures::{nu_u, NuParams};
use krall::verify::{all_pass, orthogonality::{orthogonality_report, recurrence_reports}};

fn main() -> krall::Result<()> {
    let p = NuParams::new(2, 1, 3, vec![frac(1, 2)])?;
    let u = [rat(1), frac(7, 3)];
    let nu = nu_u(&p, &u)?;
    println!("support {} atoms, {} killed by U", nu.n_s, nu.n_minus);
    let fam = construct_basic(&p, &u, None)?;
    println!("gram exact: {}", all_pass(&orthogonality_report(&fam)));
    for r in recurrence_reports(&fam, 3)?.iter().filter(|r| r.id == "recurrence-a") {
        println!("{}: a = {}", r.params, fmt_rat(&r.rhs));
    }
    Ok(())
}

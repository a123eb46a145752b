//! Finds the higher order difference operator of a Krall family by exact linear algebra.

use krall::exact::{fmt_rat, rat};
use krall::measures::NuParams;
use krall::verify::operator::{operator_search, perturb, krall_search_family, SearchOptions};

fn main() -> krall::Result<()> {
    let p = NuParams::new(1, 1, 3, vec![rat(2)])?;
    let fam = krall_search_family(&p, 7)?;
    let out = operator_search(&fam, &rat(1), &rat(1), 2, &SearchOptions::for_order(2))?;
    for a in &out.attempts {
        println!("{:?} degree {} nullity {}", a.form, a.degree, a.nullity);
    }
    let op = out.operator.expect("operator");
    for (n, g) in &op.gammas {
        println!("γ_{n} = {}", fmt_rat(g));
    }

    let none = operator_search(&perturb(&fam), &rat(1), &rat(1), 2, &SearchOptions::for_order(2))?;
    println!("perturbed family: {}", if none.operator.is_some() { "found" } else { "none" });
    Ok(())
}

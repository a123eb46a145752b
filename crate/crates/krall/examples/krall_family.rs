//! The basic Krall dual Hahn family for ν^M and its norms.

use krall::constructors::{construct_plain, FamilyJson};
use krall::exact::{fmt_rat, rat};
use krall::measures::NuParams;

fn main() -> krall::Result<()> {
    let p = NuParams::new(2, 1, 3, vec![rat(2)])?;
    let fam = construct_plain(&p, None)?;
    for (n, (q, k)) in fam.polys.iter().zip(&fam.norms).enumerate() {
        let c: Vec<_> = q.coeffs().iter().map(fmt_rat).collect();
        println!("q_{n} = {c:?}  <q_{n},q_{n}> = {}", fmt_rat(k));
    }
    let json = serde_json::to_string(&FamilyJson::from(&fam)).expect("serializable");
    println!("{} bytes of JSON", json.len());
    Ok(())
}

//! Moment identities behind the orthogonality proofs.

use krall::exact::rat;
use krall::measures::NuParams;
use krall::verify::identities::{moment_suite, triangular_reports, MomentContext, MomentId};

fn main() -> krall::Result<()> {
    let p = NuParams::new(3, 2, 4, vec![rat(2), rat(-3)])?;
    let ctx = MomentContext::basic(&p)?;
    let r = ctx.check(MomentId::L41a, Some(1), 2)?;
    println!("{} {}: {} = {}", r.id, r.params, r.lhs, r.rhs);

    let all = moment_suite(&ctx, 4)?;
    let tri = triangular_reports(&p)?;
    println!(
        "{} moment checks and {} triangular checks, failures: {}",
        all.len(),
        tri.len(),
        all.iter().chain(&tri).filter(|r| !r.pass).count()
    );
    Ok(())
}

//! The case a < b: flipped measure, W symmetry and orthogonality.

use krall::exact::rat;
use krall::measures::NuParams;
use krall::verify::orthogonality::flip_reports;

fn main() -> krall::Result<()> {
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        let p = NuParams::new(a, b, 4, vec![rat(3); a as usize])?;
        let reps = flip_reports(&p)?;
        println!("a={a} b={b}: {} checks, failures {}", reps.len(), reps.iter().filter(|r| !r.pass).count());
    }
    Ok(())
}

//! s -> 0 degenerations computed over Q(s).

use krall::exact::{fmt_rat, rat, IndexSet};
use krall::verify::limits::{measure_alt, verify_limits, LimitKind};

fn main() -> krall::Result<()> {
    let m = rat(2);
    for kind in [LimitKind::MeasureMu, LimitKind::W39, LimitKind::W310, LimitKind::Eval76, LimitKind::Quotient77] {
        let reps = verify_limits(kind, 3, 2, 4, &m, &IndexSet::default())?;
        println!("{:<13} {:>3} checks, pass: {}", kind.name(), reps.len(), reps.iter().all(|r| r.pass));
    }
    let alt = measure_alt(2, 2, 4, &m, &IndexSet::new(vec![-3, 2]))?;
    println!("shifted measure limit constant: {}", fmt_rat(&alt.constant));
    Ok(())
}

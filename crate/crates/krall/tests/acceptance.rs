//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

use std::time::{Duration, Instant};

use krall::constructors::{
    alt_params, construct_basic, construct_plain, determinant_sizes,
};
use krall::exact::{fmt_rat, frac, rat, IndexSet, Rational};
use krall::measures::{nu_basic, nu_u, u_p, NuParams};
use krall::verify::identities::{identity_suite, standard_grid};
use krall::verify::limits::limit_suite;
use krall::verify::operator::{operator_search, perturb, krall_search_family, SearchOptions};
use krall::verify::orthogonality::{
    classical_report, equivalence_reports, flip_reports, geronimus_reports, gram_schmidt, gram_schmidt_reports,
    orthogonality_report, recurrence_reports,
};
use krall::verify::IdentityReport;
use krall::KrallError;

struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn add(&mut self, reps: &[IdentityReport]) {
        self.checks += reps.len();
        for r in reps.iter().filter(|r| !r.pass) {
            self.failures.push(format!("{} {}: {} != {}", r.id, r.params, r.lhs, r.rhs));
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn error(&mut self, what: &str, e: KrallError) {
        self.failures.push(format!("{what}: {e}"));
    }
}

fn list(v: &[Rational]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
}

/// 1 <= b <= a <= N <= 5.
fn grid5() -> Vec<(i64, i64, i64)> {
    let mut v = Vec::new();
    for nn in 1..=5 {
        for a in 1..=nn {
            for b in 1..=a {
                v.push((a, b, nn));
            }
        }
    }
    v
}

fn m_tuples(b: i64) -> Vec<Vec<Rational>> {
    let vals = [rat(2), frac(1, 2), rat(5), rat(-3)];
    let mut out = vec![vec![]];
    for _ in 0..b {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Rational>| {
                vals.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn positive_m(b: i64) -> Vec<Vec<Rational>> {
    let vals = [rat(2), frac(1, 2), rat(5)];
    (0..3).map(|k| (0..b).map(|i| vals[((k + i) % 3) as usize].clone()).collect()).collect()
}

fn c1() -> Tally {
    let mut t = Tally::new();
    for (a, b, nn) in grid5() {
        match classical_report(a, b, nn) {
            Ok(r) => t.add(&r),
            Err(e) => t.error(&format!("a={a} b={b} N={nn}"), e),
        }
    }
    t
}

fn c2() -> Tally {
    let mut t = Tally::new();
    for (a, b, nn) in grid5() {
        for m in positive_m(b).into_iter().chain([vec![rat(-3); b as usize]]) {
            match NuParams::new(a, b, nn, m).and_then(|p| geronimus_reports(&p)) {
                Ok(r) => t.add(&r),
                Err(e) => t.error(&format!("a={a} b={b} N={nn}"), e),
            }
        }
    }
    t
}

fn c3() -> Tally {
    let mut t = Tally::new();
    let (mut pos, mut mixed_ok) = (0, 0);
    let mut degenerate = Vec::new();
    for (a, b, nn) in standard_grid(5) {
        for m in m_tuples(b) {
            let positive = m.iter().all(|x| *x > rat(0));
            let label = format!("a={a} b={b} N={nn} M={}", list(&m));
            let p = NuParams::new(a, b, nn, m).expect("valid M");
            match construct_plain(&p, None) {
                Ok(fam) => {
                    t.add(&orthogonality_report(&fam));
                    t.expect(fam.polys.iter().enumerate().all(|(n, q)| q.degree() == Some(n)), format!("{label}: degree"));
                    if positive {
                        pos += 1;
                        match gram_schmidt_reports(&fam) {
                            Ok(r) => t.add(&r),
                            Err(e) => t.error(&label, e),
                        }
                    } else {
                        mixed_ok += 1;
                    }
                }
                Err(KrallError::Degenerate(e)) if !positive => {
                    // the oracle must break down too
                    let mu = nu_basic(&p).expect("ν");
                    t.expect(gram_schmidt(&mu, mu.len() - 1).is_err(), format!("{label}: Gram–Schmidt succeeds where Φ vanishes"));
                    degenerate.push(format!("{label}: {e}"));
                }
                Err(e) => t.error(&label, e),
            }
        }
    }
    t.notes.push(format!("{pos} positive, {mixed_ok} mixed constructed, {} mixed degenerate", degenerate.len()));
    t.notes.extend(degenerate);
    t
}

fn c4() -> Tally {
    let mut t = Tally::new();
    let (mut used, mut with_kill) = (0, 0);
    for (a, b, nn) in standard_grid(5) {
        let us = [vec![], vec![rat(1)], vec![rat(-a - 1)], vec![rat(1), rat(2)]];
        for m in positive_m(b) {
            let p = NuParams::new(a, b, nn, m).expect("valid M");
            let base = nu_basic(&p).expect("ν");
            for u in &us {
                let label = format!("a={a} b={b} N={nn} U={}", list(u));
                let nuu = match nu_u(&p, u) {
                    Ok(v) => v,
                    Err(KrallError::Precondition(_)) => continue,
                    Err(e) => {
                        t.error(&label, e);
                        continue;
                    }
                };
                used += 1;
                let killed = u_p(a, b, u);
                if !killed.is_empty() {
                    with_kill += 1;
                }
                let hit = u.iter().filter(|v| base.atoms.iter().any(|x| x.point == p.lambda(v))).count();
                t.expect(nuu.n_s + hit == base.len(), format!("{label}: support count"));
                t.expect(nuu.n_minus == killed.len(), format!("{label}: n_minus"));
                for v in &killed {
                    let pt = p.lambda(v);
                    t.expect(base.atoms.iter().any(|x| x.point == pt), format!("{label}: λ(u) not an atom of ν"));
                    t.expect(!nuu.measure.atoms.iter().any(|x| x.point == pt), format!("{label}: mass at λ(u) survives"));
                }
                match construct_basic(&p, u, None) {
                    Ok(fam) => {
                        t.expect(fam.measure == nuu.measure, format!("{label}: family measure"));
                        t.add(&orthogonality_report(&fam));
                    }
                    Err(e) => t.error(&label, e),
                }
            }
        }
    }
    t.notes.push(format!("{used} (params, U) cases, {with_kill} with U_p nonempty"));
    t
}

fn c5() -> Tally {
    let mut t = Tally::new();
    for (a, b, nn) in standard_grid(5) {
        for u in [vec![], vec![rat(1)]] {
            let p = NuParams::new(a, b, nn, positive_m(b).remove(0)).expect("valid M");
            match construct_basic(&p, &u, None).and_then(|f| recurrence_reports(&f, 3)) {
                Ok(r) => t.add(&r),
                Err(e) => t.error(&format!("a={a} b={b} N={nn}"), e),
            }
        }
    }
    t
}

fn c6() -> Tally {
    let mut t = Tally::new();
    let mut used = 0;
    for (a, b, nn) in standard_grid(5) {
        let p = NuParams::new(a, b, nn, positive_m(b).remove(0)).expect("valid M");
        for u in krall::verify::identities::alt_u_candidates(a, b, nn) {
            if alt_params(a, b, nn, &u).is_err() {
                continue;
            }
            used += 1;
            match equivalence_reports(&p, &u, None) {
                Ok(r) => t.add(&r),
                Err(e) => t.error(&format!("a={a} b={b} N={nn} U={u:?}"), e),
            }
        }
    }
    match determinant_sizes(5, 2, 6, &IndexSet::new(vec![-2, 0, 1, 5, 6])) {
        Ok(s) => t.expect(
            (s.basic, s.alt6_structural, s.sec7) == (11, 9, 8),
            format!("sizes {} {} {}", s.basic, s.alt6_structural, s.sec7),
        ),
        Err(e) => t.error("sizes", e),
    }
    t.notes.push(format!("{used} (params, U) cases"));
    t
}

fn c7() -> Tally {
    let mut t = Tally::new();
    match limit_suite(4) {
        Ok(r) => t.add(&r),
        Err(e) => t.error("limit suite", e),
    }
    t
}

fn c8() -> Tally {
    let mut t = Tally::new();
    match identity_suite(5, 4) {
        Ok(r) => {
            let phi0 = r.iter().filter(|x| x.id == "L41-phi0").count();
            t.expect(phi0 > 0, "no Φ_0 checks");
            t.add(&r);
        }
        Err(e) => t.error("identity suite", e),
    }
    t
}

fn c9() -> Tally {
    let mut t = Tally::new();
    for (a, b) in [(1, 1), (2, 1)] {
        let r = (a * b + 1) as usize;
        for nn in [3, 4] {
            let label = format!("a={a} b={b} N={nn}");
            let p = NuParams::new(a, b, nn, vec![rat(2); b as usize]).expect("valid M");
            let fam = match krall_search_family(&p, 8) {
                Ok(f) => f,
                Err(e) => {
                    t.error(&label, e);
                    continue;
                }
            };
            let opts = SearchOptions::for_order(r);
            match operator_search(&fam, &rat(a), &rat(b), r, &opts) {
                Ok(out) => match out.operator {
                    Some(op) => {
                        t.expect(op.r == r, format!("{label}: shift range {}", op.r));
                        t.expect(op.gammas_distinct(), format!("{label}: eigenvalues collide"));
                        t.expect(op.gammas.len() == fam.len(), format!("{label}: not all members are eigenfunctions"));
                    }
                    None => t.expect(false, format!("{label}: no operator")),
                },
                Err(e) => t.error(&label, e),
            }
            if nn == 3 {
                match operator_search(&perturb(&fam), &rat(a), &rat(b), r, &opts) {
                    Ok(out) => t.expect(out.operator.is_none(), format!("{label}: perturbed family has an operator")),
                    Err(e) => t.error(&label, e),
                }
            }
        }
    }
    t
}

fn c10() -> Tally {
    let mut t = Tally::new();
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        for nn in b..=4 {
            for m in positive_m(a) {
                match NuParams::new(a, b, nn, m).and_then(|p| flip_reports(&p)) {
                    Ok(r) => t.add(&r),
                    Err(e) => t.error(&format!("a={a} b={b} N={nn}"), e),
                }
            }
        }
    }
    t.notes.push("W_g(x) (-1)^g = W~_g(-x-N-2), g = deg W_g".into());
    t
}

type Criterion = (&'static str, fn() -> Tally, Option<u64>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("classical orthogonality", c1, Some(5)),
        ("Geronimus relation", c2, None),
        ("Krall family under ν^M", c3, Some(60)),
        ("Christoffel transform ν^{M,U}", c4, None),
        ("three-term recurrence", c5, None),
        ("representation equivalence and sizes", c6, None),
        ("s -> 0 limits", c7, Some(60)),
        ("moment identities", c8, None),
        ("difference operator search", c9, Some(120)),
        ("a < b flip", c10, None),
    ];
    let mut failed = 0;
    for (k, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let t = f();
        let el = start.elapsed();
        let slow = limit.is_some_and(|s| el > Duration::from_secs(s));
        let ok = t.failures.is_empty() && !slow && t.checks > 0;
        if !ok {
            failed += 1;
        }
        let notes = if t.notes.is_empty() { String::new() } else { format!(" [{}]", t.notes.join("; ")) };
        let budget = limit.map_or(String::new(), |s| format!(" (limit {s}s)"));
        println!(
            "{} {:>2} {name}: {} checks, {} failures, {:.2}s{budget}{notes}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            t.checks,
            t.failures.len(),
            el.as_secs_f64()
        );
        for f in t.failures.iter().take(5) {
            println!("       {f}");
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Cross-checks against independent computations.

use krall::classical::{dual_hahn_poly, hahn_poly};
use krall::constructors::{construct_plain, dh};
use krall::exact::{factorial, frac, pochhammer, rat, Rational};
use krall::measures::{dh_norm, dual_hahn_measure, inner_product, nu_basic, NuParams};
use krall::verify::all_pass;
use krall::verify::orthogonality::{corrupt, gram_schmidt, gram_schmidt_reports, orthogonality_report};

/// (a+1)_n (-N)_n / n! · 3F2(-n, -x, x+a+b+1; a+1, -N; 1), summed term by term.
fn r_direct(n: i64, a: i64, b: i64, nn: i64, x: i64) -> Rational {
    let mut s = rat(0);
    for k in 0..=n {
        let num = pochhammer(&rat(-n), k as usize) * pochhammer(&rat(-x), k as usize) * pochhammer(&rat(x + a + b + 1), k as usize);
        let den = pochhammer(&rat(a + 1), k as usize) * pochhammer(&rat(-nn), k as usize) * factorial(k);
        s += num / den;
    }
    s * pochhammer(&rat(a + 1), n as usize) * pochhammer(&rat(-nn), n as usize) / factorial(n)
}

#[test]
fn dual_hahn_matches_hypergeometric_sum() {
    let (a, b, nn) = (3, 2, 4);
    for n in 0..=nn {
        let r = dual_hahn_poly(n, &rat(a), &rat(b), &rat(nn));
        for x in 0..=nn {
            let lam = rat(x * (x + a + b + 1));
            assert_eq!(r.eval(&lam), r_direct(n, a, b, nn, x), "n={n} x={x}");
        }
    }
}

/// With the normalizations stripped both sides are the same 3F2 with n and x exchanged.
#[test]
fn duality_between_hahn_and_dual_hahn() {
    let (a, b, nn) = (2, 1, 3);
    let norm = |k: i64| pochhammer(&rat(a + 1), k as usize) * pochhammer(&rat(-nn), k as usize);
    for n in 0..=nn {
        for x in 0..=nn {
            let r = dual_hahn_poly(n, &rat(a), &rat(b), &rat(nn)).eval(&rat(x * (x + a + b + 1)));
            let h = hahn_poly(x, &rat(a), &rat(b), &rat(nn)).eval(&rat(n));
            assert_eq!(r * factorial(n) / norm(n), h / norm(x), "n={n} x={x}");
        }
    }
}

#[test]
fn classical_norms_match_gram_schmidt() {
    let (a, b, nn) = (frac(5, 2), frac(3, 2), 4);
    let mu = dual_hahn_measure(&a, &b, nn).unwrap();
    let gs = gram_schmidt(&mu, nn as usize).unwrap();
    for n in 0..=nn {
        let r = dual_hahn_poly(n, &a, &b, &rat(nn));
        let k = r.lead();
        assert_eq!(r, gs[n as usize].scale(&k));
        assert_eq!(inner_product(&r, &r, &mu), dh_norm(n, &a, &b, nn).unwrap());
    }
    assert_eq!(dh(2, 2, 1, 3), dual_hahn_poly(2, &rat(2), &rat(1), &rat(3)));
}

#[test]
fn krall_family_matches_gram_schmidt_with_mixed_signs() {
    let p = NuParams::new(3, 2, 4, vec![rat(2), rat(-3)]).unwrap();
    let fam = construct_plain(&p, None).unwrap();
    assert_eq!(fam.measure, nu_basic(&p).unwrap());
    assert!(all_pass(&orthogonality_report(&fam)));
    assert!(all_pass(&gram_schmidt_reports(&fam).unwrap()));
}

#[test]
fn corrupted_family_fails() {
    let p = NuParams::new(2, 2, 3, vec![rat(5), frac(1, 2)]).unwrap();
    let fam = construct_plain(&p, None).unwrap();
    assert!(!all_pass(&orthogonality_report(&corrupt(&fam))));
}

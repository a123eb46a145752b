use proptest::prelude::*;

use krall::constructors::{construct_basic, construct_plain};
use krall::exact::{det_cofactor, fmt_rat, frac, involution, parse_rat, IndexSet, Matrix, Poly, Rational};
use krall::measures::NuParams;
use krall::verify::all_pass;
use krall::KrallError;
use krall::verify::orthogonality::{equivalence_reports, orthogonality_report};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..8).prop_map(|(n, d)| frac(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(Poly::new)
}

/// M_i > 0 and != 1.
fn positive_m() -> impl Strategy<Value = Rational> {
    (1i64..12, 1i64..5).prop_filter_map("M = 1", |(n, d)| (n != d).then(|| frac(n, d)))
}

fn grid_case() -> impl Strategy<Value = (i64, i64, i64)> {
    (1i64..=3).prop_flat_map(|a| (Just(a), 1..=a, a..=a + 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_strings_round_trip(x in small_rat()) {
        prop_assert_eq!(parse_rat(&fmt_rat(&x)).unwrap(), x);
    }

    #[test]
    fn exact_division_inverts_product(p in poly(4), q in poly(3)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
    }

    #[test]
    fn eval_is_multiplicative(p in poly(4), q in poly(4), x in small_rat()) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn bareiss_matches_cofactor(n in 1usize..6, seed in prop::collection::vec(small_rat(), 25)) {
        let m = Matrix::from_fn(n, n, |i, j| seed[i * 5 + j].clone());
        let c = det_cofactor(&m).unwrap();
        prop_assert_eq!(m.det_exact().unwrap(), c.clone());
        prop_assert_eq!(m.det_field().unwrap(), c);
    }

    #[test]
    fn involution_is_an_involution(v in prop::collection::btree_set(1i64..10, 0..6)) {
        let f = IndexSet::new(v.into_iter().collect());
        prop_assert_eq!(involution(&involution(&f).unwrap()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn krall_family_is_orthogonal((a, b, nn) in grid_case(), m in prop::collection::vec(positive_m(), 3)) {
        let p = NuParams::new(a, b, nn, m[..b as usize].to_vec()).unwrap();
        let fam = construct_plain(&p, None).unwrap();
        prop_assert!(all_pass(&orthogonality_report(&fam)));
    }

    #[test]
    fn christoffel_family_is_orthogonal((a, b, nn) in grid_case(), m in prop::collection::vec(positive_m(), 3), u in small_rat()) {
        // a non-integer u avoids every lattice point; 2u = -a-b-1 is the excluded self pair
        prop_assume!(u.denom() != &1.into() && u.clone() * frac(2, 1) != frac(-a - b - 1, 1));
        let p = NuParams::new(a, b, nn, m[..b as usize].to_vec()).unwrap();
        match construct_basic(&p, &[u], None) {
            Ok(fam) => prop_assert!(all_pass(&orthogonality_report(&fam))),
            Err(KrallError::Degenerate(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn representations_are_proportional((a, b, nn) in grid_case(), m in prop::collection::vec(positive_m(), 3), k in 0usize..4) {
        let p = NuParams::new(a, b, nn, m[..b as usize].to_vec()).unwrap();
        let cands = krall::verify::identities::alt_u_candidates(a, b, nn);
        let u = &cands[k % cands.len()];
        prop_assume!(krall::constructors::alt_params(a, b, nn, u).is_ok());
        prop_assert!(all_pass(&equivalence_reports(&p, u, None).unwrap()));
    }
}

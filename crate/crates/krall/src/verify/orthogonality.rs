//! Gram matrices, an independent Gram–Schmidt oracle and cross-representation comparisons.

use num_traits::Zero;

use super::IdentityReport;
use crate::classical::dual_hahn_poly;
use crate::constructors::{
    construct_alt6, construct_basic, construct_sec7, construct_plain, recurrence_coeffs, Family,
    Representation,
};
use crate::error::{KrallError, Result};
use crate::exact::{fmt_rat, pochhammer, rat, IndexSet, Poly, Rational};
use crate::measures::{dh_norm, dual_hahn_measure, inner_product, nu_basic, DiscreteMeasure, NuParams};
use crate::wpoly::w_family;

pub fn family_label(fam: &Family) -> String {
    let p = &fam.params;
    let list = |v: &[Rational]| v.iter().map(fmt_rat).collect::<Vec<_>>().join(",");
    let rep = serde_json::to_value(fam.representation).ok().and_then(|v| v.as_str().map(String::from));
    format!(
        "rep={} a={} b={} N={} M=[{}] U=[{}]",
        rep.unwrap_or_default(),
        p.a,
        p.b,
        p.n,
        list(&p.m),
        list(&fam.u)
    )
}

/// Every entry ⟨q_n, q_m⟩ (m <= n) against δ_{nm} norm_n.
pub fn gram_reports(
    id: &str,
    label: &str,
    polys: &[Poly<Rational>],
    norms: &[Rational],
    mu: &DiscreteMeasure<Rational>,
) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..polys.len() {
        for m in 0..=n {
            let v = inner_product(&polys[n], &polys[m], mu);
            let want = if n == m { norms[n].clone() } else { Rational::zero() };
            out.push(IdentityReport::new(id, format!("{label} n={n} m={m}"), v, want));
        }
    }
    out
}

/// Gram matrix of a constructed family against its stored norms.
pub fn orthogonality_report(fam: &Family) -> Vec<IdentityReport> {
    gram_reports("gram", &family_label(fam), &fam.polys, &fam.norms, &fam.measure)
}

/// R_0..R_N under ρ_{a,b,N} with the closed-form norms.
pub fn classical_report(a: i64, b: i64, nn: i64) -> Result<Vec<IdentityReport>> {
    let (ar, br) = (rat(a), rat(b));
    let mu = dual_hahn_measure(&ar, &br, nn)?;
    let polys: Vec<_> = (0..=nn).map(|n| dual_hahn_poly(n, &ar, &br, &rat(nn))).collect();
    let norms: Vec<_> = (0..=nn).map(|n| dh_norm(n, &ar, &br, nn)).collect::<Result<_>>()?;
    Ok(gram_reports("classical-gram", &format!("a={a} b={b} N={nn}"), &polys, &norms, &mu))
}

/// Monic orthogonal polynomials of μ by exact Gram–Schmidt on 1, x, x², …
pub fn gram_schmidt(mu: &DiscreteMeasure<Rational>, n_max: usize) -> Result<Vec<Poly<Rational>>> {
    let mut out: Vec<Poly<Rational>> = Vec::new();
    let mut sq: Vec<Rational> = Vec::new();
    for n in 0..=n_max {
        let xn = Poly::x().pow(n);
        let mut p = xn.clone();
        for (pk, nk) in out.iter().zip(&sq) {
            p = &p - &pk.scale(&(inner_product(&xn, pk, mu) / nk.clone()));
        }
        let nrm = inner_product(&p, &p, mu);
        if nrm.is_zero() {
            return Err(KrallError::Degenerate(format!("Gram–Schmidt breaks down at degree {n}")));
        }
        out.push(p);
        sq.push(nrm);
    }
    Ok(out)
}

/// q_n = lead(q_n) · p_n for the Gram–Schmidt polynomials p_n, coefficientwise.
pub fn gram_schmidt_reports(fam: &Family) -> Result<Vec<IdentityReport>> {
    let label = family_label(fam);
    let gs = gram_schmidt(&fam.measure, fam.n_max())?;
    let mut out = Vec::new();
    for (n, (q, p)) in fam.polys.iter().zip(&gs).enumerate() {
        let scaled = p.scale(&q.lead());
        for k in 0..=n {
            out.push(IdentityReport::new("gram-schmidt", format!("{label} n={n} coeff={k}"), q.coeff(k), scaled.coeff(k)));
        }
    }
    Ok(out)
}

/// The family with q_1 replaced by q_1 + q_0; its Gram matrix must show a nonzero off-diagonal entry.
pub fn corrupt(fam: &Family) -> Family {
    let mut bad = fam.clone();
    if bad.polys.len() > 1 {
        bad.polys[1] = &bad.polys[1] + &bad.polys[0];
    }
    bad
}

/// Recurrence with the closed-form a_{n+1}, c_n for n <= n_max: one report per coefficient of
/// x q_n - a_{n+1} q_{n+1} - b_n q_n - c_n q_{n-1}, plus the leading coefficient ratio
/// lead(q_n)/lead(q_{n+1}) = a_{n+1}.
pub fn recurrence_reports(fam: &Family, n_max: usize) -> Result<Vec<IdentityReport>> {
    let label = family_label(fam);
    let mut out = Vec::new();
    for n in 0..=n_max.min(fam.n_max().saturating_sub(1)) {
        let rec = recurrence_coeffs(fam, n)?;
        let q = &fam.polys;
        let mut rhs = &q[n + 1].scale(&rec.a_next) + &q[n].scale(&rec.b);
        if n > 0 {
            rhs = &rhs + &q[n - 1].scale(&rec.c);
        }
        let lhs = &Poly::x() * &q[n];
        for k in 0..=n + 1 {
            out.push(IdentityReport::new("recurrence", format!("{label} n={n} coeff={k}"), lhs.coeff(k), rhs.coeff(k)));
        }
        out.push(IdentityReport::new(
            "recurrence-a",
            format!("{label} n={n}"),
            q[n].lead() / q[n + 1].lead(),
            rec.a_next.clone(),
        ));
        if n > 0 {
            // c_n = a_n <q_n,q_n>/<q_{n-1},q_{n-1}>
            let a_n = q[n - 1].lead() / q[n].lead();
            out.push(IdentityReport::new(
                "recurrence-c",
                format!("{label} n={n}"),
                a_n * fam.norms[n].clone() / fam.norms[n - 1].clone(),
                rec.c.clone(),
            ));
        }
    }
    Ok(out)
}

/// The three determinantal families for ν^{M,U} (U integer, satisfying the shift condition) agree
/// up to a scalar κ_n per degree, and the norms scale by κ_n².
pub fn equivalence_reports(p: &NuParams, u: &IndexSet, n_max: Option<usize>) -> Result<Vec<IdentityReport>> {
    let ur: Vec<Rational> = u.iter().map(rat).collect();
    let basic = construct_basic(p, &ur, n_max)?;
    let others = [construct_alt6(p, u, n_max)?, construct_sec7(p, &ur, n_max)?];
    let label = family_label(&basic);
    let mut out = Vec::new();
    for other in &others {
        let tag = match other.representation {
            Representation::Alt6 => "alt6",
            _ => "sec7",
        };
        for (n, (q0, q1)) in basic.polys.iter().zip(&other.polys).enumerate() {
            let kappa = q1.lead() / q0.lead();
            let scaled = q0.scale(&kappa);
            for k in 0..=n {
                out.push(IdentityReport::new(
                    "equivalence",
                    format!("{label} vs={tag} n={n} coeff={k}"),
                    q1.coeff(k),
                    scaled.coeff(k),
                ));
            }
            out.push(IdentityReport::new(
                "equivalence-norm",
                format!("{label} vs={tag} n={n}"),
                other.norms[n].clone(),
                kappa.clone() * kappa * basic.norms[n].clone(),
            ));
        }
    }
    Ok(out)
}

/// ∏_{i=0}^{b-1}(x - λ(i-b)) ν^M = ((N+1)_b²/(b+1)_{a-b}) ρ_{b,a,N}, atom by atom (with the Gamma
/// reading of (b+1)_{a-b} when a < b).
pub fn geronimus_reports(p: &NuParams) -> Result<Vec<IdentityReport>> {
    let (a, b, nn) = (p.a, p.b, p.n);
    let nu = nu_basic(p)?;
    let lat = p.lattice();
    let factor = Poly::from_roots(&(0..b).map(|i| lat.at_int(i - b)).collect::<Vec<_>>());
    let pb = pochhammer(&rat(nn + 1), b as usize);
    let c = pb.clone() * pb * crate::exact::gpoch(&rat(b + 1), a - b)?.recip();
    let rho = dual_hahn_measure(&rat(b), &rat(a), nn)?;
    let label = format!("a={a} b={b} N={nn}");
    let mut out = Vec::new();
    for at in &nu.atoms {
        let lhs = factor.eval(&at.point) * at.mass.clone();
        let rhs = rho.atoms.iter().find(|r| r.i == at.i).map_or_else(Rational::zero, |r| c.clone() * r.mass.clone());
        out.push(IdentityReport::new("geronimus", format!("{label} i={}", at.i), lhs, rhs));
    }
    Ok(out)
}

/// The flipped case a < b: W symmetry with sign (-1)^g (g = deg W_g), orthogonality
/// and norms over the flipped measure, and its Geronimus relation.
pub fn flip_reports(p: &NuParams) -> Result<Vec<IdentityReport>> {
    if p.b <= p.a {
        return Err(KrallError::Precondition("flip checks need a < b".into()));
    }
    let (a, b, nn) = (p.a, p.b, p.n);
    let w = w_family(p)?;
    let q = NuParams::new(b, a, nn, p.inverse_m())?;
    let wq = w_family(&q)?;
    let reflect = Poly::new(vec![rat(-2 - nn), rat(-1)]);
    let label = format!("a={a} b={b} N={nn} M=[{}]", p.m.iter().map(fmt_rat).collect::<Vec<_>>().join(","));
    let mut out = Vec::new();
    for (g, wg) in &w.polys {
        let lhs = wg.scale(&rat(crate::exact::sign(*g)));
        let rhs = wq.get(*g).compose(&reflect);
        for k in 0..=*g as usize {
            out.push(IdentityReport::new("flip-symmetry", format!("{label} g={g} coeff={k}"), lhs.coeff(k), rhs.coeff(k)));
        }
    }
    out.extend(geronimus_reports(p)?);
    let fam = construct_plain(p, None)?;
    out.extend(orthogonality_report(&fam));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::all_pass;

    #[test]
    fn classical_gram_is_diagonal() {
        assert!(all_pass(&classical_report(3, 2, 4).unwrap()));
    }

    #[test]
    fn basic_family_matches_gram_schmidt() {
        let p = NuParams::new(2, 1, 3, vec![rat(2)]).unwrap();
        let fam = construct_basic(&p, &[], None).unwrap();
        assert!(all_pass(&orthogonality_report(&fam)));
        assert!(all_pass(&gram_schmidt_reports(&fam).unwrap()));
    }

    #[test]
    fn corrupted_family_is_flagged() {
        let p = NuParams::new(1, 1, 2, vec![rat(2)]).unwrap();
        let fam = construct_plain(&p, None).unwrap();
        let reps = orthogonality_report(&corrupt(&fam));
        assert!(reps.iter().any(|r| !r.pass && r.params.ends_with("n=1 m=0")));
    }

    #[test]
    fn three_representations_agree() {
        let p = NuParams::new(3, 2, 4, vec![rat(2), rat(5)]).unwrap();
        let reps = equivalence_reports(&p, &IndexSet::new(vec![-4, 1]), None).unwrap();
        assert!(all_pass(&reps), "{:?}", reps.iter().find(|r| !r.pass));
    }

    #[test]
    fn recurrence_with_u() {
        let p = NuParams::new(2, 1, 3, vec![rat(2)]).unwrap();
        let fam = construct_basic(&p, &[rat(1)], None).unwrap();
        assert!(all_pass(&recurrence_reports(&fam, 3).unwrap()));
    }

    #[test]
    fn flip_cases() {
        let p = NuParams::new(1, 2, 3, vec![rat(2)]).unwrap();
        let reps = flip_reports(&p).unwrap();
        assert!(all_pass(&reps), "{:?}", reps.iter().find(|r| !r.pass));
    }
}

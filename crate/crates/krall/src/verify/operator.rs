//! Search for a higher order difference operator having a polynomial family as eigenfunctions.
//!
//! The operator is T = Σ_{j=-r}^{r} (h_j(x)/D(x)) S_j with S_j f(x) = f(x+j). The h_j are
//! polynomials of bounded degree and D is either 1 or a fixed product of linear factors, so the
//! eigen-equations T(q_n∘λ) = γ_n q_n∘λ are linear in the unknown coefficients and the γ_n.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::modp;
use crate::constructors::q_plain;
use crate::error::{KrallError, Result};
use crate::exact::{rat, Poly, Rational};
use crate::measures::NuParams;
use crate::wpoly::w_family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorForm {
    Polynomial,
    Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeOperator {
    pub r: usize,
    pub a: Rational,
    pub b: Rational,
    pub form: OperatorForm,
    pub denominator: Poly<Rational>,
    /// h_j for j = -r..=r
    pub numerators: Vec<Poly<Rational>>,
    /// (n, γ_n)
    pub gammas: Vec<(i64, Rational)>,
}

impl LatticeOperator {
    fn lam_shift(&self, j: i64) -> Poly<Rational> {
        let x = Poly::new(vec![rat(j), rat(1)]);
        let y = Poly::new(vec![rat(j) + self.a.clone() + self.b.clone() + rat(1), rat(1)]);
        &x * &y
    }

    /// D(x) · T(q∘λ)(x) as a polynomial in x.
    pub fn apply_numerator(&self, q: &Poly<Rational>) -> Poly<Rational> {
        let r = self.r as i64;
        (-r..=r).fold(Poly::zero(), |acc, j| {
            &acc + &(&self.numerators[(j + r) as usize] * &q.compose(&self.lam_shift(j)))
        })
    }

    /// T applied to f at the point x (D(x) must not vanish).
    pub fn apply(&self, f: impl Fn(&Rational) -> Rational, x: &Rational) -> Result<Rational> {
        let d = self.denominator.eval(x);
        if d.is_zero() {
            return Err(KrallError::Pole);
        }
        let r = self.r as i64;
        let s = (-r..=r).fold(Rational::zero(), |acc, j| {
            acc + self.numerators[(j + r) as usize].eval(x) * f(&(x.clone() + rat(j)))
        });
        Ok(s / d)
    }

    /// Exact eigen check as a polynomial identity in x.
    pub fn is_eigen(&self, q: &Poly<Rational>, gamma: &Rational) -> bool {
        let rhs = (&self.denominator * &q.compose(&self.lam_shift(0))).scale(gamma);
        self.apply_numerator(q) == rhs
    }

    /// The eigenvalue of q if q∘λ is an eigenfunction.
    pub fn eigenvalue_of(&self, q: &Poly<Rational>) -> Option<Rational> {
        let base = &self.denominator * &q.compose(&self.lam_shift(0));
        if base.is_zero() {
            return None;
        }
        let lhs = self.apply_numerator(q);
        let g = lhs.lead() / base.lead();
        (lhs == base.scale(&g)).then_some(g)
    }

    /// T(λ^k) is a polynomial in λ for every k <= kmax.
    pub fn preserves_lattice_polys(&self, kmax: usize) -> bool {
        let reflect = Poly::new(vec![-(self.a.clone() + self.b.clone() + rat(1)), rat(-1)]);
        (0..=kmax).all(|k| {
            let lam_k = Poly::x().pow(k);
            match self.apply_numerator(&lam_k).div_rem(&self.denominator) {
                Ok((t, rem)) => rem.is_zero() && t.compose(&reflect) == t,
                Err(_) => false,
            }
        })
    }

    pub fn gammas_distinct(&self) -> bool {
        let g: Vec<&Rational> = self.gammas.iter().map(|(_, g)| g).collect();
        (0..g.len()).all(|i| (0..i).all(|j| g[i] != g[j]))
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// largest coefficient degree tried
    pub degree_cap: usize,
    /// the shared denominator is prod_{k=-K}^{K} (2x+a+b+1+k)
    pub denominator_half_width: usize,
    /// the last `held_out` members are not used to build the system
    pub held_out: usize,
    pub max_primes: usize,
}

impl SearchOptions {
    pub fn for_order(r: usize) -> Self {
        SearchOptions { degree_cap: 6 * r + 2, denominator_half_width: 2 * r, held_out: 1, max_primes: 96 }
    }
}

/// One attempted (form, degree) with the nullity found modulo the first prime.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Attempt {
    pub form: OperatorForm,
    pub degree: usize,
    pub nullity: usize,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub operator: Option<LatticeOperator>,
    pub attempts: Vec<Attempt>,
}

fn degree_schedule(r: usize, cap: usize) -> Vec<(OperatorForm, usize)> {
    let mut v = vec![(OperatorForm::Polynomial, 2 * r + 2)];
    for d in [2 * r + 2, 4 * r + 2, 6 * r + 2] {
        v.push((OperatorForm::Rational, d));
    }
    let mut d = 6 * r + 2;
    while d < cap {
        d = (d + 2 * r).min(cap);
        v.push((OperatorForm::Rational, d));
    }
    v.retain(|(_, d)| *d <= cap);
    v
}

struct System<'a> {
    fam: &'a [(i64, Poly<Rational>)],
    a: Rational,
    b: Rational,
    r: usize,
    d: usize,
    den: Poly<Rational>,
    points: Vec<i64>,
}

impl System<'_> {
    fn n_h(&self) -> usize {
        (2 * self.r + 1) * (self.d + 1)
    }

    fn ncols(&self) -> usize {
        self.n_h() + self.fam.len() - 1
    }

    fn rows_mod(&self, p: u64) -> Option<Vec<Vec<u64>>> {
        let (ap, bp) = (modp::reduce(&self.a, p)?, modp::reduce(&self.b, p)?);
        let s = modp::add(modp::add(ap, bp, p), 1, p);
        let lam = |x: u64| modp::mul(x, modp::add(x, s, p), p);
        let den = modp::reduce_poly(&self.den, p)?;
        let qs: Vec<Vec<u64>> = self.fam.iter().map(|(_, q)| modp::reduce_poly(q, p)).collect::<Option<_>>()?;
        let r = self.r as i64;
        let mut rows = Vec::with_capacity(qs.len() * self.points.len());
        for (idx, q) in qs.iter().enumerate() {
            for &x in &self.points {
                let xp = modp::from_i64(x, p);
                let mut row = vec![0u64; self.ncols()];
                for j in -r..=r {
                    let v = modp::eval(q, lam(modp::from_i64(x + j, p)), p);
                    let mut xk = 1;
                    for k in 0..=self.d {
                        row[(j + r) as usize * (self.d + 1) + k] = modp::mul(v, xk, p);
                        xk = modp::mul(xk, xp, p);
                    }
                }
                if idx > 0 {
                    let v = modp::mul(modp::eval(&den, xp, p), modp::eval(q, lam(xp), p), p);
                    row[self.n_h() + idx - 1] = modp::sub(0, v, p);
                }
                rows.push(row);
            }
        }
        Some(rows)
    }

    fn assemble(&self, v: &[Rational], form: OperatorForm) -> LatticeOperator {
        let numerators = (0..=2 * self.r)
            .map(|j| Poly::new(v[j * (self.d + 1)..(j + 1) * (self.d + 1)].to_vec()))
            .collect();
        let mut gammas = vec![(self.fam[0].0, Rational::zero())];
        gammas.extend(self.fam[1..].iter().enumerate().map(|(i, (n, _))| (*n, v[self.n_h() + i].clone())));
        LatticeOperator {
            r: self.r,
            a: self.a.clone(),
            b: self.b.clone(),
            form,
            denominator: self.den.clone(),
            numerators,
            gammas,
        }
    }
}

/// Nullspace of the system over Q: modular RREF, CRT and rational reconstruction, one vector per
/// free column. Returns the nullity modulo the first prime and the lifted vectors that could be
/// reconstructed.
fn lift_nullspace(sys: &System, max_primes: usize) -> (usize, Vec<Vec<Rational>>) {
    let ncols = sys.ncols();
    let mut pivots: Option<Vec<usize>> = None;
    let mut acc: Vec<Vec<BigUint>> = Vec::new();
    let mut modulus = BigUint::one();
    let mut nullity = 0;
    let mut last: Option<Vec<Vec<Rational>>> = None;
    for &p in modp::PRIMES.iter().take(max_primes) {
        let Some(mut rows) = sys.rows_mod(p) else { continue };
        let piv = modp::rref(&mut rows, ncols, p);
        match &pivots {
            None => {
                nullity = ncols - piv.len();
                if nullity == 0 {
                    return (0, vec![]);
                }
                pivots = Some(piv.clone());
                acc = vec![vec![BigUint::zero(); ncols]; nullity];
            }
            Some(prev) if *prev != piv => {
                if piv.len() > prev.len() || (piv.len() == prev.len() && piv < *prev) {
                    // the earlier primes were unlucky; restart with this one
                    nullity = ncols - piv.len();
                    if nullity == 0 {
                        return (0, vec![]);
                    }
                    pivots = Some(piv.clone());
                    acc = vec![vec![BigUint::zero(); ncols]; nullity];
                    modulus = BigUint::one();
                    last = None;
                } else {
                    continue;
                }
            }
            _ => {}
        }
        let basis = modp::nullspace(&rows, &piv, ncols, p);
        for (a, v) in acc.iter_mut().zip(&basis) {
            for (x, r) in a.iter_mut().zip(v) {
                *x = modp::crt(x, &modulus, *r, p);
            }
        }
        modulus *= BigUint::from(p);
        let rec: Option<Vec<Vec<Rational>>> = acc
            .iter()
            .map(|v| v.iter().map(|x| modp::rational_reconstruct(x, &modulus)).collect())
            .collect();
        if let Some(rec) = rec {
            if last.as_ref() == Some(&rec) {
                return (nullity, rec);
            }
            last = Some(rec);
        }
    }
    (nullity, last.unwrap_or_default())
}

pub fn shared_denominator(a: &Rational, b: &Rational, half_width: usize) -> Poly<Rational> {
    let k = half_width as i64;
    (-k..=k).fold(Poly::one(), |acc, j| {
        &acc * &Poly::new(vec![a.clone() + b.clone() + rat(1 + j), rat(2)])
    })
}

/// Searches for T with shift range ±r. `family` lists (n, q_n), starting with a constant q_0.
/// Every returned operator has been checked exactly: eigen-relations as polynomial identities
/// for all members (held-out ones included), distinct eigenvalues and T(λ^k) ∈ P^λ for k <= 3.
pub fn operator_search(
    family: &[(i64, Poly<Rational>)],
    a: &Rational,
    b: &Rational,
    r: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if family.len() < opts.held_out + 2 || family[0].1.degree() != Some(0) {
        return Err(KrallError::Precondition("family must start with a constant and have members to fit".into()));
    }
    let fit = &family[..family.len() - opts.held_out];
    let max_n = fit.iter().map(|(_, q)| q.degree().unwrap_or(0)).max().unwrap_or(0);
    let mut attempts = Vec::new();
    for (form, d) in degree_schedule(r, opts.degree_cap) {
        let den = match form {
            OperatorForm::Polynomial => Poly::one(),
            OperatorForm::Rational => shared_denominator(a, b, opts.denominator_half_width),
        };
        let dd = den.degree().unwrap_or(0);
        let npts = d.max(dd) + 2 * max_n + 8;
        let start = -3 * r as i64 - 5;
        let sys = System {
            fam: fit,
            a: a.clone(),
            b: b.clone(),
            r,
            d,
            den,
            points: (start..start + npts as i64).collect(),
        };
        let (nullity, vecs) = lift_nullspace(&sys, opts.max_primes);
        attempts.push(Attempt { form, degree: d, nullity });
        for v in vecs {
            let mut op = sys.assemble(&v, form);
            if !fit.iter().zip(&op.gammas).all(|((_, q), (_, g))| op.is_eigen(q, g)) {
                continue;
            }
            let mut held_ok = true;
            for (n, q) in &family[fit.len()..] {
                match op.eigenvalue_of(q) {
                    Some(g) => op.gammas.push((*n, g)),
                    None => held_ok = false,
                }
            }
            if held_ok && op.gammas_distinct() && op.preserves_lattice_polys(3) {
                return Ok(SearchOutcome { operator: Some(op), attempts });
            }
        }
    }
    Ok(SearchOutcome { operator: None, attempts })
}

/// The members used for the Krall family: n in 0..=N+b, then N+a+b+1..=N+a+b+`tail` (the last
/// one is meant to be held out). Indices where the determinant normalization vanishes are skipped.
pub fn krall_search_family(p: &NuParams, tail: i64) -> Result<Vec<(i64, Poly<Rational>)>> {
    let w = w_family(p)?;
    let top = p.n + p.a + p.b;
    let mut out = Vec::new();
    for n in (0..=p.n + p.b).chain(top + 1..=top + tail) {
        if let Some(q) = q_plain(n, &w)? {
            if !q.is_zero() {
                out.push((n, q));
            }
        }
    }
    Ok(out)
}

/// Deterministic perturbation used as a negative control: q_2 += q_1/3, q_4 += (2/7) q_3.
pub fn perturb(family: &[(i64, Poly<Rational>)]) -> Vec<(i64, Poly<Rational>)> {
    let find = |n: i64| family.iter().find(|(m, _)| *m == n).map(|(_, q)| q.clone());
    family
        .iter()
        .map(|(n, q)| {
            let extra = match n {
                2 => find(1).map(|p| p.scale(&(rat(1) / rat(3)))),
                4 => find(3).map(|p| p.scale(&(rat(2) / rat(7)))),
                _ => None,
            };
            (*n, extra.map_or_else(|| q.clone(), |e| q + &e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::dual_hahn_poly;
    use crate::exact::frac;

    #[test]
    fn classical_three_term_operator() {
        let (a, b) = (rat(2), rat(1));
        let fam: Vec<_> = (0..=8).map(|n| (n, dual_hahn_poly(n, &a, &b, &rat(8)))).collect();
        let out = operator_search(&fam, &a, &b, 1, &SearchOptions::for_order(1)).unwrap();
        let op = out.operator.expect("classical operator");
        // eigenvalues are affine in n
        let g: Vec<_> = op.gammas.iter().map(|(_, g)| g.clone()).collect();
        for w in g.windows(3) {
            assert_eq!(w[2].clone() - w[1].clone(), w[1].clone() - w[0].clone());
        }
    }

    #[test]
    fn krall_family_a1_b1() {
        let p = NuParams::new(1, 1, 2, vec![rat(2)]).unwrap();
        let fam = krall_search_family(&p, 7).unwrap();
        let out = operator_search(&fam, &rat(1), &rat(1), 2, &SearchOptions::for_order(2)).unwrap();
        let op = out.operator.expect("order four operator");
        assert_eq!(op.gammas.len(), fam.len());
        assert!(fam.iter().zip(&op.gammas).all(|((_, q), (_, g))| op.is_eigen(q, g)));
    }

    #[test]
    fn perturbed_classical_family_has_no_operator() {
        let (a, b) = (frac(1, 2), rat(1));
        let fam: Vec<_> = (0..=8).map(|n| (n, dual_hahn_poly(n, &a, &b, &rat(8)))).collect();
        let out = operator_search(&perturb(&fam), &a, &b, 1, &SearchOptions::for_order(1)).unwrap();
        assert!(out.operator.is_none());
    }
}

//! Exact s → 0 degenerations: measures, W polynomials, evaluations and the quotient identity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::IdentityReport;
use crate::classical::{dual_hahn_poly, lambda_map};
use crate::constructors::{alt_params, dh};
use crate::error::{KrallError, Result};
use crate::exact::{
    ceil_half, factorial, fmt_rat, limit_at_zero, pochhammer, rat, sign, Field, IndexSet, Poly, RatFunc, Rational,
};
use crate::measures::{nu_basic, nu_u, rho_f, NuParams};
use crate::wpoly::{w_closed_m, w_explicit, w_limit_anchor, w_limit_m, w_phi_difference, w_poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum LimitKind {
    #[serde(rename = "measure-mu")]
    MeasureMu,
    #[serde(rename = "W-3.9")]
    W39,
    #[serde(rename = "W-3.10")]
    W310,
    #[serde(rename = "eval-7.6")]
    Eval76,
    #[serde(rename = "quotient-7.7")]
    Quotient77,
    #[serde(rename = "measure-alt")]
    MeasureAlt,
}

impl LimitKind {
    pub fn name(self) -> &'static str {
        match self {
            LimitKind::MeasureMu => "measure-mu",
            LimitKind::W39 => "W-3.9",
            LimitKind::W310 => "W-3.10",
            LimitKind::Eval76 => "eval-7.6",
            LimitKind::Quotient77 => "quotient-7.7",
            LimitKind::MeasureAlt => "measure-alt",
        }
    }
}

fn r(v: i64) -> Rational {
    rat(v)
}

fn rf(v: Rational) -> RatFunc {
    RatFunc::from_rat(v)
}

fn poly_reports(id: &str, params: &str, lhs: &Poly<Rational>, rhs: &Poly<Rational>) -> Vec<IdentityReport> {
    let top = lhs.degree().max(rhs.degree()).unwrap_or(0);
    (0..=top)
        .map(|k| IdentityReport::new(id, format!("{params} coeff={k}"), lhs.coeff(k), rhs.coeff(k)))
        .collect()
}

/// c_{a,b} = (-1)^{a+b+1}(b-1)!(N+b+1)_a²/(a-1)!.
pub fn c_ab(a: i64, b: i64, nn: i64) -> Rational {
    let p = pochhammer(&r(nn + b + 1), a as usize);
    r(sign(a + b + 1)) * factorial(b - 1) * p.clone() * p / factorial(a - 1)
}

/// Limit of ρ^F_{a-s/M, b+s, N}, masses summed per lattice point λ^{a,b}(i) (indices i and
/// -i-a-b-1 share a point).
fn deformed_rho_limit(a: i64, b: i64, nn: i64, m: &Rational, f: &IndexSet) -> Result<BTreeMap<Rational, Rational>> {
    let s = RatFunc::s();
    let a_s = rf(r(a)) - s.clone() / rf(m.clone());
    let b_s = rf(r(b)) + s;
    let mu = rho_f(&a_s, &b_s, nn, f)?;
    let mut out: BTreeMap<Rational, Rational> = BTreeMap::new();
    for at in &mu.atoms {
        let l = limit_at_zero(&at.mass)?;
        *out.entry(lambda_map(&r(a), &r(b), &r(at.i))).or_insert_with(Rational::zero) += l;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Per-point comparison of a limit measure with k·target, including points missing from the target.
fn compare_by_point(
    id: &str,
    label: &str,
    lim: &BTreeMap<Rational, Rational>,
    target: &crate::measures::DiscreteMeasure<Rational>,
    k: &Rational,
) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for at in &target.atoms {
        let l = lim.get(&at.point).cloned().unwrap_or_else(Rational::zero);
        out.push(IdentityReport::new(id, format!("{label} x={}", fmt_rat(&at.point)), l, k.clone() * at.mass.clone()));
    }
    for (x, l) in lim {
        if !target.atoms.iter().any(|at| at.point == *x) {
            out.push(IdentityReport::new(id, format!("{label} x={}", fmt_rat(x)), l.clone(), Rational::zero()));
        }
    }
    out
}

/// The deformed measures tend to (c_{a,b}/M) ν^M with all M_i = M.
pub fn measure_mu(a: i64, b: i64, nn: i64, m: &Rational) -> Result<Vec<IdentityReport>> {
    let p = NuParams::new(a, b, nn, vec![m.clone(); b as usize])?;
    let lim = deformed_rho_limit(a, b, nn, m, &IndexSet::range(a, a + b - 1))?;
    let label = format!("a={a} b={b} N={nn} M={}", fmt_rat(m));
    Ok(compare_by_point(LimitKind::MeasureMu.name(), &label, &lim, &nu_basic(&p)?, &(c_ab(a, b, nn) / m.clone())))
}

/// Result of the shifted-measure limit: the per-point comparison and the proportionality constant.
#[derive(Clone, Debug)]
pub struct AltMeasureLimit {
    pub constant: Rational,
    pub reports: Vec<IdentityReport>,
}

/// ρ^{F_U}_{a_U-s/M, b_U+s, N_U}, moved by s_U, tends to a multiple of ν^{M,U}. The constant is
/// read off the first atom; every other atom (and the absence of extra atoms) is then checked.
pub fn measure_alt(a: i64, b: i64, nn: i64, m: &Rational, u: &IndexSet) -> Result<AltMeasureLimit> {
    let ap = alt_params(a, b, nn, u)?;
    let p = NuParams::new(a, b, nn, vec![m.clone(); b as usize])?;
    let ur: Vec<Rational> = u.iter().map(r).collect();
    let target = nu_u(&p, &ur)?.measure;
    let lim: BTreeMap<Rational, Rational> = deformed_rho_limit(ap.a_u, ap.b_u, ap.n_u, m, &ap.f_u)?
        .into_iter()
        .map(|(x, l)| (x + ap.s_u.clone(), l))
        .collect();
    let first = target.atoms.first().ok_or_else(|| KrallError::Precondition("empty target measure".into()))?;
    let constant = lim.get(&first.point).cloned().unwrap_or_else(Rational::zero) / first.mass.clone();
    let label = format!(
        "a={a} b={b} N={nn} M={} U={{{}}}",
        fmt_rat(m),
        u.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    );
    let reports = compare_by_point(LimitKind::MeasureAlt.name(), &label, &lim, &target, &constant);
    Ok(AltMeasureLimit { constant, reports })
}

/// The M-dependent W_g as a limit against its closed form, g in a..a+b-1.
pub fn w_39(a: i64, b: i64, nn: i64, m: &Rational) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for g in a..a + b {
        let lim = w_limit_m(g, a, b, nn, m)?;
        let label = format!("a={a} b={b} N={nn} M={} g={g}", fmt_rat(m));
        out.extend(poly_reports(LimitKind::W39.name(), &label, &lim, &w_closed_m(g, a, b, nn, m)));
    }
    Ok(out)
}

/// The middle-range W_g (b <= a, ⌈(a+b)/2⌉ <= g <= a-1) as a limit, against the φ difference and
/// the explicit two-sum expression.
pub fn w_310(a: i64, b: i64, nn: i64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for g in ceil_half(a + b)..a {
        let lim = w_limit_anchor(g, a, b, nn, 0)?;
        let label = format!("a={a} b={b} N={nn} g={g}");
        out.extend(poly_reports(LimitKind::W310.name(), &format!("{label} vs=phi"), &lim, &w_phi_difference(g, a, b, nn)?));
        out.extend(poly_reports(LimitKind::W310.name(), &format!("{label} vs=sum"), &lim, &w_explicit(g, a, b, nn)));
    }
    Ok(out)
}

/// lim (1/s) R_n^{-b-s/M, -a+s, N+a+b}(λ(f)) against its closed form in W^{a,b,-2-N-a-b;1/M}.
pub fn eval_76(a: i64, b: i64, nn: i64, m: &Rational, n: i64, f: i64) -> Result<IdentityReport> {
    let s = RatFunc::s();
    let ah = rf(r(-b)) - s.clone() / rf(m.clone());
    let bh = rf(r(-a)) + s;
    let rn = dual_hahn_poly(n, &ah, &bh, &rf(r(nn + a + b)));
    let val = rn.eval(&lambda_map(&ah, &bh, &rf(r(f))));
    let lhs = limit_at_zero(&val.div_by_s())?;
    let np = -2 - nn - a - b;
    let w = w_poly(f, a, b, np, &vec![Rational::one() / m.clone(); b as usize])?;
    let pn = |k: i64| pochhammer(&r(-nn - a - b), k as usize);
    let rhs = (r(1) - m.clone()) * pn(n) * w.eval(&r(nn + a + b - n))
        / (r(sign(f)) * m.clone() * pochhammer(&r(n - b + 1), b as usize) * factorial(f - b) * pn(f));
    Ok(IdentityReport::new(
        LimitKind::Eval76.name(),
        format!("a={a} b={b} N={nn} M={} n={n} f={f}", fmt_rat(m)),
        lhs,
        rhs,
    ))
}

/// R_n^{-b,-a,N+a+b}(x+a+b) (n-b+1)_b = R_{n-b}^{b,a,N}(x) ∏_{f=a}^{a+b-1}(x+a+b-λ^{-a,-b}(f)),
/// compared coefficientwise.
pub fn quotient_77(a: i64, b: i64, nn: i64, n: i64) -> Result<Vec<IdentityReport>> {
    if n < b {
        return Err(KrallError::Precondition(format!("need n >= b, got n={n}, b={b}")));
    }
    let shift = Poly::new(vec![r(a + b), Rational::one()]);
    let lhs = dh(n, -b, -a, nn + a + b).compose(&shift).scale(&pochhammer(&r(n - b + 1), b as usize));
    let den = (a..a + b).fold(Poly::one(), |acc, f| {
        &acc * &Poly::new(vec![r(a + b) - lambda_map(&r(-a), &r(-b), &r(f)), Rational::one()])
    });
    let rhs = &dh(n - b, b, a, nn) * &den;
    Ok(poly_reports(LimitKind::Quotient77.name(), &format!("a={a} b={b} N={nn} n={n}"), &lhs, &rhs))
}

/// Dispatches one limit check over its natural index range for the given parameters. `m` is the
/// common value of all M_i and `u` is only used by the shifted measure.
pub fn verify_limits(which: LimitKind, a: i64, b: i64, nn: i64, m: &Rational, u: &IndexSet) -> Result<Vec<IdentityReport>> {
    match which {
        LimitKind::MeasureMu => measure_mu(a, b, nn, m),
        LimitKind::W39 => w_39(a, b, nn, m),
        LimitKind::W310 => w_310(a, b, nn),
        LimitKind::Eval76 => {
            let mut out = Vec::new();
            for n in b..=b + 2 {
                for f in a..a + b {
                    out.push(eval_76(a, b, nn, m, n, f)?);
                }
            }
            Ok(out)
        }
        LimitKind::Quotient77 => {
            let mut out = Vec::new();
            for n in b..=nn + b {
                out.extend(quotient_77(a, b, nn, n)?);
            }
            Ok(out)
        }
        LimitKind::MeasureAlt => Ok(measure_alt(a, b, nn, m, u)?.reports),
    }
}

/// All limits for b <= a <= 3, a <= N <= n_cap, with M in {2, -5/2}.
pub fn limit_suite(n_cap: i64) -> Result<Vec<IdentityReport>> {
    let ms = [rat(2), rat(-5) / rat(2)];
    let mut out = Vec::new();
    for a in 1..=3 {
        for b in 1..=a {
            for nn in a..=n_cap {
                for m in &ms {
                    for kind in [LimitKind::MeasureMu, LimitKind::W39, LimitKind::Eval76] {
                        out.extend(verify_limits(kind, a, b, nn, m, &IndexSet::default())?);
                    }
                    for u in [vec![], vec![1], vec![-a - 1]] {
                        let u = IndexSet::new(u);
                        if alt_params(a, b, nn, &u).is_ok() {
                            out.extend(verify_limits(LimitKind::MeasureAlt, a, b, nn, m, &u)?);
                        }
                    }
                }
                out.extend(w_310(a, b, nn)?);
                out.extend(verify_limits(LimitKind::Quotient77, a, b, nn, &ms[0], &IndexSet::default())?);
            }
        }
    }
    Ok(out)
}

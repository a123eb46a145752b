//! Moment identities: inner products of dual Hahn polynomials against powers, computed once over
//! the measure and once from ψ-weighted sums of W (or Hahn) polynomials.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::IdentityReport;
use crate::classical::{dual_hahn_poly, hahn_poly};
use crate::constructors::{alt_params, dh, phi_plain, AltParams};
use crate::error::{KrallError, Result};
use crate::exact::{factorial, fmt_rat, gpoch, pochhammer, rat, sign, IndexSet, Matrix, Poly, Rational};
use crate::measures::{inner_product, nu_basic, nu_u, rho_f, DiscreteMeasure, NuParams};
use crate::wpoly::{w_family, w_poly, w_set, PsiArg, PsiContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MomentId {
    #[serde(rename = "L41-a")]
    L41a,
    #[serde(rename = "L41-b")]
    L41b,
    #[serde(rename = "R9-a")]
    R9a,
    #[serde(rename = "R9-b")]
    R9b,
    #[serde(rename = "S7-a")]
    S7a,
    #[serde(rename = "S7-b")]
    S7b,
    #[serde(rename = "S6-a")]
    S6a,
    #[serde(rename = "S6-b")]
    S6b,
}

impl MomentId {
    pub fn name(self) -> &'static str {
        match self {
            MomentId::L41a => "L41-a",
            MomentId::L41b => "L41-b",
            MomentId::R9a => "R9-a",
            MomentId::R9b => "R9-b",
            MomentId::S7a => "S7-a",
            MomentId::S7b => "S7-b",
            MomentId::S6a => "S6-a",
            MomentId::S6b => "S6-b",
        }
    }

    /// Whether the identity takes a pair (m, s) or a single n.
    pub fn is_pair(self) -> bool {
        matches!(self, MomentId::L41a | MomentId::R9a | MomentId::S7a | MomentId::S6a)
    }
}

fn r(v: i64) -> Rational {
    rat(v)
}

fn fmt_list(v: &[Rational]) -> String {
    format!("[{}]", v.iter().map(fmt_rat).collect::<Vec<_>>().join(","))
}

fn fmt_set(s: &IndexSet) -> String {
    format!("{{{}}}", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

enum Kind {
    /// ν^M with its W family
    Basic { p: NuParams },
    /// ρ^F with generic rational a, b
    Generic { a: Rational, b: Rational, c_f: Rational, n_g: i64 },
    /// ν^M against R^{b,a,N}(x) and (x+a+b)^m, W with M^{-1}
    Sec7 { p: NuParams },
    /// ν^{M,U} with the shifted parameters
    Alt { p: NuParams, alt: AltParams, n_u: i64 },
}

/// Everything needed to evaluate one family of moment identities at any index.
pub struct MomentContext {
    kind: Kind,
    label: String,
    mu: DiscreteMeasure<Rational>,
    psi: PsiContext,
    ws: BTreeMap<i64, Poly<Rational>>,
}

impl MomentContext {
    /// L41-a/b over ν^M.
    pub fn basic(p: &NuParams) -> Result<Self> {
        let w = w_family(p)?;
        let psi = PsiContext::basic(&w)?;
        Ok(MomentContext {
            label: format!("a={} b={} N={} M={}", p.a, p.b, p.n, fmt_list(&p.m)),
            mu: nu_basic(p)?,
            ws: w.polys,
            psi,
            kind: Kind::Basic { p: p.clone() },
        })
    }

    /// R9-a/b over ρ^F; a and b must satisfy a, b >= max F + 1 and be non-integers.
    pub fn generic(a: &Rational, b: &Rational, nn: i64, f: &IndexSet) -> Result<Self> {
        let mf = f.max();
        let bound = r(mf + 1);
        if *a < bound || *b < bound || a.is_integer() || b.is_integer() {
            return Err(KrallError::Precondition(format!(
                "need non-integer a, b >= max F + 1 = {}",
                mf + 1
            )));
        }
        let g = crate::exact::involution(f)?;
        let n_g = g.len() as i64;
        let psi = PsiContext::tilde(a, b, nn, &g)?;
        let ws = g.iter().map(|v| (v, hahn_poly(v, &-a.clone(), &-b.clone(), &r(-2 - nn)))).collect();
        let c_f = r(sign(n_g + 1)) * gpoch(&(b.clone() - r(mf)), nn + mf + 2)? * factorial(nn + 1)
            / (gpoch(&(a.clone() - r(mf)), mf)? * factorial(nn + mf + 1) * factorial(nn + mf + 1));
        Ok(MomentContext {
            label: format!("a={} b={} N={nn} F={}", fmt_rat(a), fmt_rat(b), fmt_set(f)),
            mu: rho_f(a, b, nn, f)?,
            psi,
            ws,
            kind: Kind::Generic { a: a.clone(), b: b.clone(), c_f, n_g },
        })
    }

    /// S7-a/b over ν^M.
    pub fn sec7(p: &NuParams) -> Result<Self> {
        let (a, b, nn) = (p.a, p.b, p.n);
        let mi = p.inverse_m();
        let np = -2 - nn - a - b;
        let ws: BTreeMap<i64, Poly<Rational>> =
            (a..a + b).map(|f| Ok((f, w_poly(f, a, b, np, &mi)?))).collect::<Result<_>>()?;
        Ok(MomentContext {
            label: format!("a={a} b={b} N={nn} M={}", fmt_list(&p.m)),
            mu: nu_basic(p)?,
            psi: PsiContext::sec7(a, b, nn, &ws)?,
            ws,
            kind: Kind::Sec7 { p: p.clone() },
        })
    }

    /// S6-a/b over ν^{M,U} for integer U satisfying the shift condition.
    pub fn alt(p: &NuParams, u: &IndexSet) -> Result<Self> {
        let alt = alt_params(p.a, p.b, p.n, u)?;
        let ur: Vec<Rational> = u.iter().map(r).collect();
        let mu = nu_u(p, &ur)?.measure;
        let ws = w_set(alt.a_u, alt.b_u, alt.n_u, &p.m, &alt.g_u)?;
        let psi = PsiContext::u_version(alt.a_u, alt.b_u, alt.n_u, &alt.g_u, &ws)?;
        Ok(MomentContext {
            label: format!("a={} b={} N={} M={} U={}", p.a, p.b, p.n, fmt_list(&p.m), fmt_set(u)),
            mu,
            psi,
            ws,
            kind: Kind::Alt { p: p.clone(), n_u: u.len() as i64, alt },
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn supports(&self, id: MomentId) -> bool {
        matches!(
            (&self.kind, id),
            (Kind::Basic { .. }, MomentId::L41a | MomentId::L41b)
                | (Kind::Generic { .. }, MomentId::R9a | MomentId::R9b)
                | (Kind::Sec7 { .. }, MomentId::S7a | MomentId::S7b)
                | (Kind::Alt { .. }, MomentId::S6a | MomentId::S6b)
        )
    }

    /// Σ_g ψ_g(arg) W_g(x).
    fn psi_sum(&self, m: usize, x: i64) -> Result<Rational> {
        let arg = PsiArg::Power(m);
        let x = r(x);
        self.ws.iter().try_fold(Rational::zero(), |acc, (g, w)| Ok(acc + self.psi.psi(*g, &arg)? * w.eval(&x)))
    }

    fn n_g(&self) -> i64 {
        self.ws.len() as i64
    }

    /// The admissible (m, s) pairs or n values of an identity, limited by `n_max` (= max n for
    /// pair identities, where m <= n and s <= n).
    pub fn index_range(&self, id: MomentId, n_max: i64) -> Vec<(Option<usize>, i64)> {
        if !self.supports(id) {
            return vec![];
        }
        let pairs = |shift: i64, s_floor: Option<i64>| {
            let mut v = Vec::new();
            for m in 0..=n_max {
                let lo = m - shift + 1;
                let lo = s_floor.map_or(lo, |f| lo.max(f));
                for s in lo..=n_max {
                    v.push((Some(m as usize), s));
                }
            }
            v
        };
        let single = |lo: i64, hi: i64| (lo..=hi).map(|n| (None, n)).collect();
        match (&self.kind, id) {
            (Kind::Basic { p, .. }, MomentId::L41a) => pairs(p.a, None),
            (Kind::Basic { p, .. }, MomentId::L41b) => single(p.a, p.n + p.a),
            (Kind::Generic { n_g, .. }, MomentId::R9a) => pairs(*n_g, Some(0)),
            (Kind::Generic { n_g, .. }, MomentId::R9b) => single(*n_g, self.nn() + n_g),
            (Kind::Sec7 { p }, MomentId::S7a) => pairs(p.b, None),
            (Kind::Sec7 { p }, MomentId::S7b) => single(p.b, p.n + p.b),
            (Kind::Alt { .. }, MomentId::S6a) => pairs(self.n_g(), None),
            (Kind::Alt { p, n_u, .. }, MomentId::S6b) => single(self.n_g(), p.a + p.n - n_u + 1),
            _ => vec![],
        }
    }

    fn nn(&self) -> i64 {
        self.psi.nn()
    }

    fn check_range(&self, id: MomentId, m: Option<usize>, k: i64) -> Result<()> {
        let ok = match m {
            Some(m) => {
                let lo = match &self.kind {
                    Kind::Basic { p, .. } => m as i64 - p.a + 1,
                    Kind::Generic { n_g, .. } => (m as i64 - n_g + 1).max(0),
                    Kind::Sec7 { p } => m as i64 - p.b + 1,
                    Kind::Alt { .. } => m as i64 - self.n_g() + 1,
                };
                id.is_pair() && k >= lo
            }
            None => {
                !id.is_pair()
                    && match (&self.kind, id) {
                        (Kind::Basic { p, .. }, _) => (p.a..=p.n + p.a).contains(&k),
                        (Kind::Generic { n_g, .. }, _) => (*n_g..=self.nn() + n_g).contains(&k),
                        (Kind::Sec7 { p }, _) => (p.b..=p.n + p.b).contains(&k),
                        (Kind::Alt { p, n_u, .. }, _) => (self.n_g()..=p.a + p.n - n_u + 1).contains(&k),
                    }
            }
        };
        if ok && self.supports(id) {
            Ok(())
        } else {
            Err(KrallError::Precondition(format!(
                "{} at m={m:?}, index {k} is outside its range for {}",
                id.name(),
                self.label
            )))
        }
    }

    /// Evaluates identity `id` at (m, s) for pair identities or at n (with `m = None`).
    pub fn check(&self, id: MomentId, m: Option<usize>, k: i64) -> Result<IdentityReport> {
        self.check_range(id, m, k)?;
        let params = match m {
            Some(m) => format!("{} m={m} s={k}", self.label),
            None => format!("{} n={k}", self.label),
        };
        let (lhs, rhs) = match &self.kind {
            Kind::Basic { p, .. } => self.l41(p, m, k)?,
            Kind::Generic { a, b, c_f, n_g } => self.r9(a, b, c_f, *n_g, m, k)?,
            Kind::Sec7 { p } => self.s7(p, m, k)?,
            Kind::Alt { p, alt, n_u } => self.s6(p, alt, *n_u, m, k)?,
        };
        Ok(IdentityReport::new(id.name(), params, lhs, rhs))
    }

    fn l41(&self, p: &NuParams, m: Option<usize>, k: i64) -> Result<(Rational, Rational)> {
        let (a, b, nn) = (p.a, p.b, p.n);
        let base = factorial(a - 1) * pochhammer(&r(nn + 2), (b - 1) as usize);
        match m {
            Some(m) => {
                let sum = self.psi_sum(m, -k - 1)?;
                if k < 0 {
                    return Ok((Rational::zero(), sum));
                }
                let ip = inner_product(&dh(k, a, b, nn), &Poly::x().pow(m), &self.mu);
                let lhs = r(sign(a + k + 1)) * ip / base;
                Ok((lhs, pochhammer(&r(b + nn - k + 1), k as usize) * sum))
            }
            None => {
                let n = k;
                let ip = inner_product(&dh(n - a, a, b, nn), &Poly::x().pow(n as usize), &self.mu);
                let lhs = r(sign(n + 1)) * ip / (base * pochhammer(&r(b + nn - n + a + 1), (n - a) as usize));
                let rhs = r(sign(n + 1)) * factorial(n) * factorial(nn + 1)
                    / (factorial(a - 1) * factorial(nn + a - n))
                    + self.psi_sum(n as usize, -n + a - 1)?;
                Ok((lhs, rhs))
            }
        }
    }

    fn r9(
        &self,
        a: &Rational,
        b: &Rational,
        c_f: &Rational,
        n_g: i64,
        m: Option<usize>,
        k: i64,
    ) -> Result<(Rational, Rational)> {
        let nn = self.nn();
        let rs = |s: i64| dual_hahn_poly(s, a, b, &r(nn));
        match m {
            Some(m) => {
                let lhs = inner_product(&rs(k), &Poly::x().pow(m), &self.mu);
                let rhs = pochhammer(&(b.clone() + r(nn - k + 1)), (k + 1) as usize)
                    / (r(sign(k)) * c_f.clone())
                    * self.psi_sum(m, -k - 1)?;
                Ok((lhs, rhs))
            }
            None => {
                let n = k;
                let ip = inner_product(&rs(n - n_g), &Poly::x().pow(n as usize), &self.mu);
                let lhs = r(sign(n - n_g)) * c_f.clone() * ip
                    / gpoch(&(b.clone() + r(nn - n + n_g + 1)), n - n_g + 1)?;
                let rhs = r(sign(n + 1)) * gpoch(a, n + 1 - n_g)? * factorial(nn + 1) / factorial(nn + n_g - n)
                    + self.psi_sum(n as usize, -n + n_g - 1)?;
                Ok((lhs, rhs))
            }
        }
    }

    fn s7(&self, p: &NuParams, m: Option<usize>, k: i64) -> Result<(Rational, Rational)> {
        let (a, b, nn) = (p.a, p.b, p.n);
        let shifted = Poly::new(vec![r(a + b), Rational::one()]);
        let den = r(sign(b)) * pochhammer(&r(b + nn + 1), a as usize);
        let common = factorial(b - 1) * pochhammer(&r(nn + 2), (b - 1) as usize);
        match m {
            Some(m) => {
                let sum = self.psi_sum(m, a + nn - k)?;
                if k < 0 {
                    return Ok((Rational::zero(), sum));
                }
                let lhs = inner_product(&dh(k, b, a, nn), &shifted.pow(m), &self.mu);
                let pref = common * pochhammer(&r(-a - b - nn), (k + b) as usize) / den;
                Ok((lhs, pref * sum))
            }
            None => {
                let n = k;
                let lhs = inner_product(&dh(n - b, b, a, nn), &shifted.pow(n as usize), &self.mu);
                let pn = pochhammer(&r(-a - b - nn), n as usize);
                let pa = pochhammer(&r(b + nn + 1), a as usize);
                let rhs = factorial(n) * pochhammer(&r(b + nn + 1 - n), a as usize) * pn.clone() * pn.clone()
                    / (pa.clone() * pa)
                    + common * pn / den * self.psi_sum(n as usize, a + b + nn - n)?;
                Ok((lhs, rhs))
            }
        }
    }

    fn s6(&self, p: &NuParams, alt: &AltParams, n_u: i64, m: Option<usize>, k: i64) -> Result<(Rational, Rational)> {
        let (a, b, nn) = (p.a, p.b, p.n);
        let (au, bu, nnu) = (alt.a_u, alt.b_u, alt.n_u);
        let n_g = self.n_g();
        let xs = Poly::new(vec![-alt.s_u.clone(), Rational::one()]);
        let rs = |s: i64| dh(s, au, bu, nnu).compose(&xs);
        match m {
            Some(m) => {
                let sum = self.psi_sum(m, -k - 1)?;
                if k < 0 {
                    return Ok((Rational::zero(), sum));
                }
                let ip = inner_product(&rs(k), &xs.pow(m), &self.mu);
                let lhs = factorial(nnu + 1) * ip
                    / (r(sign(n_g + k + 1)) * factorial(au - 1) * factorial(nn + b));
                Ok((lhs, pochhammer(&r(b + nn - k + 1), k as usize) * sum))
            }
            None => {
                let n = k;
                let ip = inner_product(&rs(n - n_g), &xs.pow(n as usize), &self.mu);
                let lhs = r(sign(n + 1)) * factorial(nnu + 1) * ip
                    / (factorial(au - 1)
                        * factorial(nn + b)
                        * pochhammer(&r(b + nn - n + n_g + 1), (n - n_g) as usize));
                let kk = factorial(n + n_u) * pochhammer(&r(nn + a - n - n_u + 1), n as usize)
                    / (r(sign(n + 1)) * factorial(au - 1) * gpoch(&r(nnu + 2), au - 1 - n_u)?);
                Ok((lhs, kk + self.psi_sum(n as usize, -n + n_g - 1)?))
            }
        }
    }
}

/// Dispatches one identity. `params` picks the context; see [`MomentContext`].
pub fn verify_moment_identity(ctx: &MomentContext, id: MomentId, m: Option<usize>, k: i64) -> Result<IdentityReport> {
    ctx.check(id, m, k)
}

/// Every supported identity of `ctx` over its index range with n <= `n_max` for the pair forms.
pub fn moment_suite(ctx: &MomentContext, n_max: i64) -> Result<Vec<IdentityReport>> {
    let ids = [
        MomentId::L41a,
        MomentId::L41b,
        MomentId::R9a,
        MomentId::R9b,
        MomentId::S7a,
        MomentId::S7b,
        MomentId::S6a,
        MomentId::S6b,
    ];
    let mut out = Vec::new();
    for id in ids {
        for (m, k) in ctx.index_range(id, n_max) {
            out.push(ctx.check(id, m, k)?);
        }
    }
    Ok(out)
}

/// The a×a matrix [Σ_g ψ_g^{a-i} W_g(l-1)]_{i,l}: zero below the diagonal, with known diagonal
/// entries, and Φ_0 = ∏ diag / det[ψ_g^{a-i}] (which forces Φ_0 ≠ 0).
pub fn triangular_reports(p: &NuParams) -> Result<Vec<IdentityReport>> {
    let w = w_family(p)?;
    let psi = PsiContext::basic(&w)?;
    let (a, nn) = (p.a, p.n);
    let label = format!("a={} b={} N={nn} M={}", a, p.b, fmt_list(&p.m));
    let gs: Vec<i64> = w.polys.keys().copied().collect();
    let psi_rows: Vec<Vec<Rational>> = (1..=a)
        .map(|i| gs.iter().map(|&g| psi.psi(g, &PsiArg::Power((a - i) as usize))).collect())
        .collect::<Result<_>>()?;
    let diag = |l: i64| {
        r(sign(a - l)) * factorial(a - l) * factorial(nn + 1) / (factorial(a - 1) * factorial(nn + l))
    };
    let mut out = Vec::new();
    for i in 1..=a {
        for l in 1..=i {
            let entry = gs
                .iter()
                .zip(&psi_rows[(i - 1) as usize])
                .fold(Rational::zero(), |acc, (g, ps)| acc + ps.clone() * w.get(*g).eval(&r(l - 1)));
            let expected = if l == i { diag(l) } else { Rational::zero() };
            out.push(IdentityReport::new("L41-triangular", format!("{label} i={i} l={l}"), entry, expected));
        }
    }
    let det_psi = Matrix::from_rows(psi_rows).det_exact()?;
    let prod: Rational = (1..=a).map(diag).product();
    out.push(IdentityReport::new("L41-phi0", label, phi_plain(0, &w) * det_psi, prod));
    Ok(out)
}

/// M patterns of length b drawn cyclically from [2, 1/2, -3].
pub fn m_patterns(b: i64) -> Vec<Vec<Rational>> {
    let base = [rat(2), rat(1) / rat(2), rat(-3)];
    (0..3).map(|k| (0..b).map(|i| base[((k + i) % 3) as usize].clone()).collect()).collect()
}

/// (a, b, N) with 1 <= b <= a <= 3 and a <= N <= n_cap.
pub fn standard_grid(n_cap: i64) -> Vec<(i64, i64, i64)> {
    let mut v = Vec::new();
    for a in 1..=3 {
        for b in 1..=a {
            for nn in a..=n_cap {
                v.push((a, b, nn));
            }
        }
    }
    v
}

/// Candidate U sets for the shifted representation; only those passing its checks are used.
pub fn alt_u_candidates(a: i64, b: i64, nn: i64) -> Vec<IndexSet> {
    let mut v = vec![IndexSet::default(), IndexSet::new(vec![1])];
    if b >= 2 {
        v.push(IndexSet::new(vec![-a - 1]));
        v.push(IndexSet::new(vec![-a - 1, 1]));
    }
    if nn >= 2 {
        v.push(IndexSet::new(vec![1, 2]));
    }
    v
}

/// All moment identities over the standard grids; `n_cap` bounds N and `n_max` the indices.
pub fn identity_suite(n_cap: i64, n_max: i64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for (a, b, nn) in standard_grid(n_cap) {
        for m in m_patterns(b) {
            let p = NuParams::new(a, b, nn, m)?;
            out.extend(moment_suite(&MomentContext::basic(&p)?, n_max)?);
            out.extend(triangular_reports(&p)?);
            out.extend(moment_suite(&MomentContext::sec7(&p)?, n_max)?);
        }
        let p = NuParams::new(a, b, nn, m_patterns(b).remove(0))?;
        for u in alt_u_candidates(a, b, nn) {
            if alt_params(a, b, nn, &u).is_err() {
                continue;
            }
            out.extend(moment_suite(&MomentContext::alt(&p, &u)?, n_max)?);
        }
    }
    for (a, b, nn) in [(rat(9) / rat(2), rat(13) / rat(3), 3), (rat(13) / rat(3), rat(17) / rat(4), 4)] {
        for mask in 0..8 {
            let f: IndexSet = (1..=3).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            out.extend(moment_suite(&MomentContext::generic(&a, &b, nn, &f)?, n_max)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::all_pass;

    #[test]
    fn l41_small_example() {
        let p = NuParams::new(2, 1, 2, vec![rat(2)]).unwrap();
        let ctx = MomentContext::basic(&p).unwrap();
        let rep = verify_moment_identity(&ctx, MomentId::L41a, Some(0), 0).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(!rep.lhs.is_zero());
    }

    #[test]
    fn all_families_small() {
        let p = NuParams::new(3, 2, 4, vec![rat(2), rat(-3)]).unwrap();
        for ctx in [
            MomentContext::basic(&p).unwrap(),
            MomentContext::sec7(&p).unwrap(),
            MomentContext::alt(&p, &IndexSet::new(vec![-4, 1])).unwrap(),
            MomentContext::generic(&(rat(9) / rat(2)), &(rat(13) / rat(3)), 3, &IndexSet::new(vec![1, 3])).unwrap(),
        ] {
            let reps = moment_suite(&ctx, 4).unwrap();
            assert!(!reps.is_empty());
            let bad: Vec<_> = reps.iter().filter(|r| !r.pass).collect();
            assert!(bad.is_empty(), "{}: {bad:?}", ctx.label());
        }
        assert!(all_pass(&triangular_reports(&p).unwrap()));
    }

    #[test]
    fn empty_f_gives_classical_orthogonality() {
        let ctx = MomentContext::generic(&(rat(9) / rat(2)), &(rat(13) / rat(3)), 3, &IndexSet::default()).unwrap();
        for s in 1..=3 {
            let rep = ctx.check(MomentId::R9a, Some(0), s).unwrap();
            assert!(rep.pass && rep.lhs.is_zero());
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        let p = NuParams::new(2, 1, 2, vec![rat(2)]).unwrap();
        let ctx = MomentContext::basic(&p).unwrap();
        assert!(ctx.check(MomentId::L41a, Some(3), 0).is_err());
        assert!(ctx.check(MomentId::L41b, None, 1).is_err());
        assert!(ctx.check(MomentId::S7b, None, 2).is_err());
    }
}

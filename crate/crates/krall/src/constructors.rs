//! Orthogonal families from the determinantal representations, with norms and recurrences.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::{dual_hahn_poly, lambda_map};
use crate::error::{KrallError, Result};
use crate::exact::{
    ceil_half, det_poly_row, factorial, fmt_rat, involution, pochhammer, pow_i, rat, serde_rat,
    serde_rat_vec, sign, IndexSet, Matrix, Poly, Rational,
};
use crate::measures::{
    check_u_pairs, inner_product, measure_transform, nu_basic, nu_u, DiscreteMeasure, NuParams,
    Orientation, Transform,
};
use crate::wpoly::{w_family, w_poly, WFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    /// size a+1 determinant with U empty, either orientation
    Plain,
    /// size a+n_U+1, general U
    Basic,
    /// rows over a subset G of {b..a+b-1}
    G,
    /// shifted parameters a_U, b_U, N_U
    Alt6,
    /// size b+n_U+1, parameters M^{-1}
    Sec7,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub representation: Representation,
    pub params: NuParams,
    pub u: Vec<Rational>,
    pub g: Option<IndexSet>,
    pub polys: Vec<Poly<Rational>>,
    /// Φ_n (or Φ̃_n, Ψ_n) for n = 0..=n_max+1
    pub phi: Vec<Rational>,
    pub norms: Vec<Rational>,
    pub measure: DiscreteMeasure<Rational>,
}

impl Family {
    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn n_u(&self) -> usize {
        self.u.len()
    }
}

fn r(v: i64) -> Rational {
    rat(v)
}

fn fact(n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(KrallError::Internal(format!("factorial of {n} in a norm formula")));
    }
    Ok(factorial(n))
}

/// R_n^{a,b,N}, zero for n < 0.
pub fn dh(n: i64, a: i64, b: i64, nn: i64) -> Poly<Rational> {
    if n < 0 {
        return Poly::zero();
    }
    dual_hahn_poly(n, &r(a), &r(b), &r(nn))
}

fn lam(a: i64, b: i64, x: &Rational) -> Rational {
    lambda_map(&r(a), &r(b), x)
}

fn det_num(rows: Vec<Vec<Rational>>) -> Result<Rational> {
    if rows.is_empty() {
        return Ok(Rational::one());
    }
    Matrix::from_rows(rows).det_exact()
}

fn det_top(top: Vec<Poly<Rational>>, rest: Vec<Vec<Rational>>) -> Result<Poly<Rational>> {
    if rest.is_empty() {
        return Ok(top[0].clone());
    }
    det_poly_row(&top, &Matrix::from_rows(rest))
}

fn christoffel(a: i64, b: i64, u: &[Rational]) -> Poly<Rational> {
    Poly::from_roots(&u.iter().map(|v| lam(a, b, v)).collect::<Vec<_>>())
}

fn resolve_nmax(n_max: Option<usize>, n_s: usize) -> Result<usize> {
    match n_max {
        None => Ok(n_s - 1),
        Some(n) if n < n_s => Ok(n),
        Some(n) => Err(KrallError::Precondition(format!(
            "n_max = {n} exceeds n_S - 1 = {}",
            n_s - 1
        ))),
    }
}

fn require_nonzero(phi: &[Rational], what: &str) -> Result<()> {
    if let Some(n) = phi.iter().position(|v| v.is_zero()) {
        return Err(KrallError::Degenerate(format!(
            "{what}_{n} = 0: no orthogonal family for these parameters"
        )));
    }
    Ok(())
}

fn check_shape(polys: &[Poly<Rational>], lead: impl Fn(usize) -> Option<Rational>) -> Result<()> {
    for (n, q) in polys.iter().enumerate() {
        if q.degree() != Some(n) {
            return Err(KrallError::Internal(format!("deg q_{n} = {:?}", q.degree())));
        }
        if let Some(l) = lead(n) {
            if q.lead() != l {
                return Err(KrallError::Internal(format!(
                    "leading coefficient of q_{n} is {}, expected {}",
                    fmt_rat(&q.lead()),
                    fmt_rat(&l)
                )));
            }
        }
    }
    Ok(())
}

fn check_u_distinct(u: &[Rational]) -> Result<()> {
    for (k, x) in u.iter().enumerate() {
        if u[..k].contains(x) {
            return Err(KrallError::InvalidParams(format!("U repeats {}", fmt_rat(x))));
        }
    }
    Ok(())
}

/// Φ_n = det[W_g(-n+j-1)], g in {b..a+b-1}, 1 <= j <= a.
pub fn phi_plain(n: i64, w: &WFamily) -> Rational {
    let a = w.params.a;
    let rows = w
        .polys
        .values()
        .map(|p| (1..=a).map(|j| p.eval(&r(-n + j - 1))).collect())
        .collect();
    det_num(rows).expect("square")
}

/// The size a+1 determinant; `None` when a normalizing Pochhammer in the top row vanishes.
pub fn q_plain(n: i64, w: &WFamily) -> Result<Option<Poly<Rational>>> {
    let (a, b, nn) = (w.params.a, w.params.b, w.params.n);
    let mut top = Vec::with_capacity(a as usize + 1);
    for j in 1..=a + 1 {
        let d = pochhammer(&r(b + nn - n + j), (a + 1 - j) as usize);
        if d.is_zero() {
            return Ok(None);
        }
        top.push(dh(n - j + 1, a, b, nn).scale(&(r(sign(j - 1)) / d)));
    }
    let rest = w
        .polys
        .values()
        .map(|p| (1..=a + 1).map(|j| p.eval(&r(-n + j - 2))).collect())
        .collect();
    det_top(top, rest).map(Some)
}

/// q_n, Φ_n and the norms for ν^M, orthogonal with respect to ν (either orientation).
pub fn construct_plain(p: &NuParams, n_max: Option<usize>) -> Result<Family> {
    let w = w_family(p)?;
    let measure = nu_basic(p)?;
    let n_max = resolve_nmax(n_max, measure.len())?;
    let (a, b, nn) = (p.a, p.b, p.n);
    let phi: Vec<Rational> = (0..=n_max as i64 + 1).map(|n| phi_plain(n, &w)).collect();
    require_nonzero(&phi, "Φ")?;
    let mut polys = Vec::new();
    let mut norms = Vec::new();
    for n in 0..=n_max as i64 {
        let q = q_plain(n, &w)?
            .ok_or_else(|| KrallError::Internal(format!("top row normalization vanishes at n={n}")))?;
        polys.push(q);
        let pc = pochhammer(&r(nn + b - n + 1), a as usize);
        let k = fact(nn + b)? * fact(nn + b)?
            / (fact(nn + a - n)? * fact(nn + b - n)? * pc.clone() * pc);
        norms.push(k * phi[n as usize].clone() * phi[n as usize + 1].clone());
    }
    check_shape(&polys, |n| {
        let n = n as i64;
        Some(phi[n as usize].clone() / (pochhammer(&r(b + nn - n + 1), a as usize) * factorial(n)))
    })?;
    Ok(Family {
        representation: Representation::Plain,
        params: p.clone(),
        u: vec![],
        g: None,
        polys,
        phi,
        norms,
        measure,
    })
}

struct GData<'a> {
    p: &'a NuParams,
    ws: &'a BTreeMap<i64, Poly<Rational>>,
    g: Vec<i64>,
    u: &'a [Rational],
}

impl GData<'_> {
    fn phi(&self, n: i64) -> Rational {
        let (a, b, nn) = (self.p.a, self.p.b, self.p.n);
        let nu = self.u.len() as i64;
        let k = self.g.len() as i64 + nu;
        let mut rows: Vec<Vec<Rational>> = self
            .g
            .iter()
            .map(|g| {
                (1..=k)
                    .map(|j| {
                        pochhammer(&r(b + nn - n - nu + j + 1), (a + nu - j) as usize)
                            * self.ws[g].eval(&r(-n - nu + j - 1))
                    })
                    .collect()
            })
            .collect();
        for u in self.u {
            let l = lam(a, b, u);
            rows.push((1..=k).map(|j| r(sign(j)) * dh(n + nu - j, a, b, nn).eval(&l)).collect());
        }
        det_num(rows).expect("square")
    }

    fn q(&self, n: i64) -> Result<Poly<Rational>> {
        let (a, b, nn) = (self.p.a, self.p.b, self.p.n);
        let nu = self.u.len() as i64;
        let k = self.g.len() as i64 + nu + 1;
        let top = (1..=k).map(|j| dh(n + nu - j + 1, a, b, nn).scale(&r(sign(j - 1)))).collect();
        let mut rest: Vec<Vec<Rational>> = self
            .g
            .iter()
            .map(|g| {
                (1..=k)
                    .map(|j| {
                        pochhammer(&r(b + nn - n - nu + j), (a + nu + 1 - j) as usize)
                            * self.ws[g].eval(&r(-n - nu + j - 2))
                    })
                    .collect()
            })
            .collect();
        for u in self.u {
            let l = lam(a, b, u);
            rest.push((1..=k).map(|j| r(sign(j - 1)) * dh(n + nu - j + 1, a, b, nn).eval(&l)).collect());
        }
        det_top(top, rest)?.div_exact(&christoffel(a, b, self.u))
    }
}

fn check_standard(p: &NuParams, what: &str) -> Result<()> {
    if p.orientation() != Orientation::Standard {
        return Err(KrallError::InvalidParams(format!("{what} needs b <= a")));
    }
    Ok(())
}

/// Size a+n_U+1 with general U (U empty gives a rescaled `construct_plain` family).
pub fn construct_basic(p: &NuParams, u: &[Rational], n_max: Option<usize>) -> Result<Family> {
    let full = IndexSet::range(p.b, p.a + p.b - 1);
    let mut fam = construct_g_inner(p, &full, u, n_max)?;
    fam.representation = Representation::Basic;
    fam.g = None;
    Ok(fam)
}

/// H_G = {b..a+b-1} \ G with the multiplicity condition on its middle-range elements.
pub fn h_set(a: i64, b: i64, g: &IndexSet) -> Result<IndexSet> {
    let full = IndexSet::range(b, a + b - 1);
    if let Some(v) = g.iter().find(|v| !full.contains(*v)) {
        return Err(KrallError::InvalidParams(format!("G must lie in {{{b}..{}}}, got {v}", a + b - 1)));
    }
    let h = full.difference(g);
    let c = ceil_half(a + b);
    for v in h.iter().filter(|v| *v < c) {
        if !h.contains(a + b - 1 - v) {
            return Err(KrallError::Precondition(format!(
                "multiplicity condition: h={v} in H_G needs {} in H_G",
                a + b - 1 - v
            )));
        }
    }
    Ok(h)
}

/// Rows over G, orthogonal with respect to prod (x-λ(u)) prod_{h in H_G} (x-λ(-h-1)) ν.
pub fn construct_g(p: &NuParams, g: &IndexSet, u: &[Rational], n_max: Option<usize>) -> Result<Family> {
    construct_g_inner(p, g, u, n_max)
}

fn construct_g_inner(p: &NuParams, g: &IndexSet, u: &[Rational], n_max: Option<usize>) -> Result<Family> {
    check_standard(p, "this representation")?;
    check_u_pairs(p.a, p.b, u)?;
    check_u_distinct(u)?;
    let h = h_set(p.a, p.b, g)?;
    let (a, b, nn) = (p.a, p.b, p.n);
    let w = w_family(p)?;
    let mut roots: Vec<Rational> = u.iter().map(|v| lam(a, b, v)).collect();
    roots.extend(h.iter().map(|v| lam(a, b, &r(-v - 1))));
    let measure = measure_transform(&nu_basic(p)?, &Transform::Christoffel(Poly::from_roots(&roots)));
    if measure.is_empty() {
        return Err(KrallError::Precondition("n_S = 0: the transformed measure is empty".into()));
    }
    let n_max = resolve_nmax(n_max, measure.len())?;
    let data = GData { p, ws: &w.polys, g: g.iter().collect(), u };
    let phi: Vec<Rational> = (0..=n_max as i64 + 1).map(|n| data.phi(n)).collect();
    require_nonzero(&phi, "Φ")?;
    let nu = u.len() as i64;
    let ng = g.len() as i64;
    let mut polys = Vec::new();
    let mut norms = Vec::new();
    for n in 0..=n_max as i64 {
        polys.push(data.q(n)?);
        let k = r(sign(nu)) * factorial(n) * pochhammer(&r(n + 1), (a - ng) as usize)
            * fact(nn + b)?
            * fact(nn + b)?
            * pow_i(&r(nn + a + b - n), ng as usize)
            / (fact(n + nu)? * fact(nn + ng - n)? * fact(nn + ng + b - n)?);
        norms.push(k * phi[n as usize].clone() * phi[n as usize + 1].clone());
    }
    check_shape(&polys, |n| Some(phi[n].clone() / factorial(n as i64 + nu)))?;
    Ok(Family {
        representation: Representation::G,
        params: p.clone(),
        u: u.to_vec(),
        g: Some(g.clone()),
        polys,
        phi,
        norms,
        measure,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AltParams {
    pub a_u: i64,
    pub b_u: i64,
    pub n_u: i64,
    #[serde(with = "serde_rat")]
    pub s_u: Rational,
    pub f_u: IndexSet,
    pub g_u: IndexSet,
}

fn alt_params_unchecked(a: i64, b: i64, nn: i64, u: &IndexSet) -> Result<AltParams> {
    let k = u.iter().max().unwrap_or(-1).max(-1) + 1;
    let f_u: IndexSet = (a..a + b).chain(u.iter().map(|v| a + b + v)).collect();
    let g_u = involution(&f_u)?;
    Ok(AltParams { a_u: a + k, b_u: b + k, n_u: nn - k, s_u: lam(a, b, &r(k)), f_u, g_u })
}

/// a_U, b_U, N_U, s_U, F_U and G_U = I(F_U); U must lie in the shift range.
pub fn alt_params(a: i64, b: i64, nn: i64, u: &IndexSet) -> Result<AltParams> {
    for v in u.iter() {
        if !((-a - b + 1..=-a - 1).contains(&v) || (1..=nn).contains(&v)) {
            return Err(KrallError::Precondition(format!(
                "shift condition violated: u={v} not in {{{}..{}}} or {{1..{nn}}}",
                -a - b + 1,
                -a - 1
            )));
        }
    }
    alt_params_unchecked(a, b, nn, u)
}

/// Rows over G_U with the shifted parameters.
pub fn construct_alt6(p: &NuParams, u: &IndexSet, n_max: Option<usize>) -> Result<Family> {
    check_standard(p, "the shifted representation")?;
    let ap = alt_params(p.a, p.b, p.n, u)?;
    let (b, nn) = (p.b, p.n);
    let ur: Vec<Rational> = u.iter().map(r).collect();
    let measure = nu_u(p, &ur)?.measure;
    let n_max = resolve_nmax(n_max, measure.len())?;
    let gs: Vec<i64> = ap.g_u.iter().collect();
    let ws: BTreeMap<i64, Poly<Rational>> =
        gs.iter().map(|&g| Ok((g, w_poly(g, ap.a_u, ap.b_u, ap.n_u, &p.m)?))).collect::<Result<_>>()?;
    let ng = gs.len() as i64;
    let nu = u.len() as i64;
    let phi_t = |n: i64| {
        det_num(gs.iter().map(|g| (1..=ng).map(|j| ws[g].eval(&r(-n + j - 1))).collect()).collect())
    };
    let phi: Vec<Rational> = (0..=n_max as i64 + 1).map(phi_t).collect::<Result<_>>()?;
    require_nonzero(&phi, "Φ̃")?;
    let mut polys = Vec::new();
    let mut norms = Vec::new();
    for n in 0..=n_max as i64 {
        let mut top = Vec::new();
        for j in 1..=ng + 1 {
            let d = pochhammer(&r(b + nn - n + j), (ng + 1 - j) as usize);
            let rp = dh(n - j + 1, ap.a_u, ap.b_u, ap.n_u).shift(&-ap.s_u.clone());
            top.push(rp.scale(&(r(sign(j - 1)) / d)));
        }
        let rest = gs.iter().map(|g| (1..=ng + 1).map(|j| ws[g].eval(&r(-n + j - 2))).collect()).collect();
        polys.push(det_top(top, rest)?);
        let nb = fact(nn + b - n + ng)?;
        let k = fact(n + nu)? * fact(nn + b)? * fact(nn + b)? * fact(nn + b - n)?
            / (factorial(n) * fact(nn + p.a - n - nu)? * nb.clone() * nb);
        norms.push(k * phi[n as usize].clone() * phi[n as usize + 1].clone());
    }
    check_shape(&polys, |_| None)?;
    Ok(Family {
        representation: Representation::Alt6,
        params: p.clone(),
        u: ur,
        g: Some(ap.g_u),
        polys,
        phi,
        norms,
        measure,
    })
}

/// Size b+n_U+1 with W^{a,b,-2-N-a-b;M^{-1}} rows.
pub fn construct_sec7(p: &NuParams, u: &[Rational], n_max: Option<usize>) -> Result<Family> {
    check_standard(p, "this representation")?;
    check_u_distinct(u)?;
    let (a, b, nn) = (p.a, p.b, p.n);
    let measure = nu_u(p, u)?.measure;
    let n_max = resolve_nmax(n_max, measure.len())?;
    let mi = p.inverse_m();
    let np = -2 - nn - a - b;
    let ws: Vec<Poly<Rational>> = (a..a + b).map(|f| w_poly(f, a, b, np, &mi)).collect::<Result<_>>()?;
    let nu = u.len() as i64;
    let lu: Vec<Rational> = u.iter().map(|v| lam(a, b, v)).collect();
    let rows = |n: i64, k: i64| -> Vec<Vec<Rational>> {
        let mut rows: Vec<Vec<Rational>> = ws
            .iter()
            .map(|w| {
                (1..=k)
                    .map(|j| pochhammer(&r(-nn - a - b), (n + j - 1) as usize) * w.eval(&r(nn + a + b - n - j + 1)))
                    .collect()
            })
            .collect();
        for l in &lu {
            rows.push((1..=k).map(|j| dh(n - b + j - 1, b, a, nn).eval(l)).collect());
        }
        rows
    };
    let phi: Vec<Rational> = (0..=n_max as i64 + 1).map(|n| det_num(rows(n, b + nu))).collect::<Result<_>>()?;
    require_nonzero(&phi, "Ψ")?;
    let den = christoffel(a, b, u);
    let mut polys = Vec::new();
    let mut norms = Vec::new();
    for n in 0..=n_max as i64 {
        let top = (1..=b + nu + 1).map(|j| dh(n - b + j - 1, b, a, nn)).collect();
        polys.push(det_top(top, rows(n, b + nu + 1))?.div_exact(&den)?);
        let pn = pochhammer(&r(-nn - a - b), n as usize);
        let pa = pochhammer(&r(nn + b + 1), a as usize);
        let k = factorial(n) * pn.clone() * pn * pochhammer(&r(nn + b + 1 - n), a as usize)
            / (r(sign(nu + b)) * fact(n + nu)? * pa.clone() * pa);
        norms.push(k * phi[n as usize].clone() * phi[n as usize + 1].clone());
    }
    check_shape(&polys, |_| None)?;
    Ok(Family {
        representation: Representation::Sec7,
        params: p.clone(),
        u: u.to_vec(),
        g: None,
        polys,
        phi,
        norms,
        measure,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeterminantSizes {
    pub basic: i64,
    /// max{a+b-1, a+b+max U} - n_U + 1 as printed
    pub alt6_printed: i64,
    /// n_{G_U} + 1 with F_U taken as a set
    pub alt6_structural: i64,
    pub sec7: i64,
}

pub fn determinant_sizes(a: i64, b: i64, nn: i64, u: &IndexSet) -> Result<DeterminantSizes> {
    let nu = u.len() as i64;
    let top = u.iter().max().map_or(a + b - 1, |m| (a + b - 1).max(a + b + m));
    let ap = alt_params_unchecked(a, b, nn, u)?;
    Ok(DeterminantSizes {
        basic: a + nu + 1,
        alt6_printed: top - nu + 1,
        alt6_structural: ap.g_u.len() as i64 + 1,
        sec7: b + nu + 1,
    })
}

/// Coefficients of x q_n = a_{n+1} q_{n+1} + b_n q_n + c_n q_{n-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub n: usize,
    /// (n+1+n_U) Φ_n / Φ_{n+1}
    pub a_next: Rational,
    /// <x q_n, q_n> / <q_n, q_n>
    pub b: Rational,
    /// closed form, zero at n = 0
    pub c: Rational,
}

pub fn recurrence_coeffs(fam: &Family, n: usize) -> Result<Recurrence> {
    if fam.representation != Representation::Basic {
        return Err(KrallError::Precondition("recurrence needs the basic representation".into()));
    }
    if n + 1 > fam.n_max() {
        return Err(KrallError::Precondition(format!("recurrence at n={n} needs q_{}", n + 1)));
    }
    let (a, b, nn) = (fam.params.a, fam.params.b, fam.params.n);
    let ph = &fam.phi;
    let nu = fam.n_u() as i64;
    let ni = n as i64;
    let a_next = r(ni + 1 + nu) * ph[n].clone() / ph[n + 1].clone();
    let q = &fam.polys[n];
    let xq = &Poly::x() * q;
    let b_n = inner_product(&xq, q, &fam.measure) / inner_product(q, q, &fam.measure);
    let ratio = r(a + b + nn - ni) / r(a + b + nn - ni + 1);
    let c = r(ni) * r(a + nn - ni + 1) * r(a + b + nn - ni + 1) * pow_i(&ratio, a as usize)
        * ph[n + 1].clone()
        / ph[n].clone();
    Ok(Recurrence { n, a_next, b: b_n, c })
}

/// Checks the three-term recurrence as a polynomial identity.
pub fn recurrence_holds(fam: &Family, rec: &Recurrence) -> bool {
    let n = rec.n;
    let q = &fam.polys;
    let lhs = &Poly::x() * &q[n];
    let mut rhs = &q[n + 1].scale(&rec.a_next) + &q[n].scale(&rec.b);
    if n > 0 {
        rhs = &rhs + &q[n - 1].scale(&rec.c);
    }
    lhs == rhs
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub n: usize,
    #[serde(with = "serde_rat_vec")]
    pub q: Vec<Rational>,
    #[serde(with = "serde_rat")]
    pub phi: Rational,
    #[serde(with = "serde_rat")]
    pub norm: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub representation: Representation,
    pub a: i64,
    pub b: i64,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "M", with = "serde_rat_vec")]
    pub m: Vec<Rational>,
    #[serde(rename = "U", with = "serde_rat_vec")]
    pub u: Vec<Rational>,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none", default)]
    pub g: Option<Vec<i64>>,
    pub terms: Vec<TermJson>,
}

impl From<&Family> for FamilyJson {
    fn from(f: &Family) -> Self {
        FamilyJson {
            representation: f.representation,
            a: f.params.a,
            b: f.params.b,
            n: f.params.n,
            m: f.params.m.clone(),
            u: f.u.clone(),
            g: f.g.as_ref().map(|g| g.elements().to_vec()),
            terms: f
                .polys
                .iter()
                .enumerate()
                .map(|(n, q)| TermJson {
                    n,
                    q: q.coeffs().to_vec(),
                    phi: f.phi[n].clone(),
                    norm: f.norms[n].clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn nu(a: i64, b: i64, n: i64, m: &[Rational]) -> NuParams {
        NuParams::new(a, b, n, m.to_vec()).unwrap()
    }

    fn orthogonal_with_norms(f: &Family) {
        for n in 0..f.polys.len() {
            for k in 0..n {
                assert!(inner_product(&f.polys[n], &f.polys[k], &f.measure).is_zero(), "<q_{n}, q_{k}>");
            }
            assert_eq!(inner_product(&f.polys[n], &f.polys[n], &f.measure), f.norms[n], "norm {n}");
        }
    }

    #[test]
    fn plain_small() {
        let f = construct_plain(&nu(1, 1, 2, &[rat(2)]), None).unwrap();
        assert_eq!(f.polys.len(), 4);
        assert_eq!(f.polys[0].degree(), Some(0));
        orthogonal_with_norms(&f);
    }

    #[test]
    fn plain_flipped() {
        for (a, b, n, m) in [(1, 2, 3, vec![rat(2)]), (2, 3, 3, vec![rat(2), frac(1, 2)])] {
            let f = construct_plain(&nu(a, b, n, &m), None).unwrap();
            orthogonal_with_norms(&f);
        }
    }

    #[test]
    fn basic_with_u() {
        for (a, b, n, m, u) in [
            (1, 1, 2, vec![rat(2)], vec![rat(1)]),
            (2, 1, 3, vec![rat(2)], vec![rat(-3)]),
            (2, 2, 3, vec![rat(2), rat(5)], vec![rat(1), rat(2)]),
            (3, 1, 3, vec![frac(1, 2)], vec![frac(7, 3)]),
        ] {
            let f = construct_basic(&nu(a, b, n, &m), &u, None).unwrap();
            orthogonal_with_norms(&f);
            for k in 0..f.n_max() {
                let rec = recurrence_coeffs(&f, k).unwrap();
                assert!(recurrence_holds(&f, &rec));
            }
        }
    }

    #[test]
    fn g_version() {
        for (a, b, n, m, g, u) in [
            (2, 1, 3, vec![rat(2)], vec![2], vec![]),
            (2, 2, 3, vec![rat(2), rat(5)], vec![3], vec![rat(-3)]),
            (3, 1, 4, vec![rat(2)], vec![1, 3], vec![]),
            (3, 2, 4, vec![rat(2), rat(3)], vec![2, 4], vec![rat(1)]),
        ] {
            let f = construct_g(&nu(a, b, n, &m), &IndexSet::new(g), &u, None).unwrap();
            orthogonal_with_norms(&f);
        }
        // h=1 in H_G without its partner 2
        assert!(construct_g(&nu(3, 1, 4, &[rat(2)]), &IndexSet::new(vec![2, 3]), &[], None).is_err());
    }

    #[test]
    fn alt6_and_sec7() {
        for (a, b, n, m, u) in [
            (1, 1, 2, vec![rat(2)], vec![]),
            (2, 1, 3, vec![rat(2)], vec![1]),
            (3, 2, 4, vec![rat(2), rat(3)], vec![-4]),
            (2, 2, 4, vec![rat(2), rat(5)], vec![-3, 2]),
            (3, 2, 5, vec![rat(2), rat(-3)], vec![-4, 1]),
        ] {
            let p = nu(a, b, n, &m);
            let us = IndexSet::new(u);
            orthogonal_with_norms(&construct_alt6(&p, &us, None).unwrap());
            let ur: Vec<Rational> = us.iter().map(rat).collect();
            orthogonal_with_norms(&construct_sec7(&p, &ur, None).unwrap());
        }
    }

    #[test]
    fn alt_params_examples() {
        let ap = alt_params(3, 2, 5, &IndexSet::default()).unwrap();
        assert_eq!((ap.a_u, ap.b_u, ap.n_u, ap.s_u.clone()), (3, 2, 5, rat(0)));
        assert_eq!(ap.g_u, IndexSet::range(2, 4));
        let ap = alt_params(3, 2, 5, &IndexSet::new(vec![1])).unwrap();
        assert_eq!((ap.a_u, ap.b_u, ap.n_u), (5, 4, 3));
        assert_eq!(ap.s_u, lam(3, 2, &rat(2)));
        assert!(alt_params(3, 2, 5, &IndexSet::new(vec![0])).is_err());
    }

    #[test]
    fn sizes_example() {
        let s = determinant_sizes(5, 2, 6, &IndexSet::new(vec![-2, 0, 1, 5, 6])).unwrap();
        assert_eq!((s.basic, s.alt6_printed, s.sec7), (11, 9, 8));
        assert_eq!(s.alt6_structural, 9);
    }

    #[test]
    fn degenerate_m_is_reported() {
        // Φ_1 for a=b=1 is linear in 1/(M-1); find the zero by solving and check the error
        let w = |m: Rational| phi_plain(1, &w_family(&nu(1, 1, 2, &[m])).unwrap());
        let (f2, f3) = (w(rat(2)), w(rat(3)));
        // Φ_1(M) = α + β/(M-1)
        let beta = (f2.clone() - f3.clone()) / (rat(1) - frac(1, 2));
        let alpha = f2 - beta.clone();
        let m0 = rat(1) - beta / alpha;
        let err = construct_plain(&nu(1, 1, 2, &[m0]), None).unwrap_err();
        assert!(matches!(err, KrallError::Degenerate(_)), "{err:?}");
    }
}

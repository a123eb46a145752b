//! The W polynomials and the auxiliary polynomials and ψ sequences built from them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::classical::{hahn_poly, lambda_map, phi_pair};
use crate::error::{KrallError, Result};
use crate::exact::{
    ceil_half, factorial, limit_at_zero, pochhammer, pow_i, rat, residue_inv, sign, Field,
    IndexSet, Poly, RatFunc, Rational,
};
use crate::measures::{NuParams, Orientation};

fn r(v: i64) -> Rational {
    rat(v)
}

fn rf(v: Rational) -> RatFunc {
    RatFunc::from_rat(v)
}

/// Coefficientwise lim_{s->0} p(s, x)/s.
pub fn lim_over_s(p: &Poly<RatFunc>) -> Result<Poly<Rational>> {
    let c: Result<Vec<Rational>> = p.coeffs().iter().map(|c| limit_at_zero(&c.div_by_s())).collect();
    Ok(Poly::new(c?))
}

fn h_int(g: i64, a: i64, b: i64, nn: i64) -> Poly<Rational> {
    hahn_poly(g, &r(a), &r(b), &r(nn))
}

/// h_g^{-a,-b,-2-N}.
pub fn h_anchor(g: i64, a: i64, b: i64, nn: i64) -> Poly<Rational> {
    h_int(g, -a, -b, -2 - nn)
}

/// (M/(M-1)) lim (1/s) h_g^{-a+s/M,-b-s,-2-N}.
pub fn w_limit_m(g: i64, a: i64, b: i64, nn: i64, m: &Rational) -> Result<Poly<Rational>> {
    if m.is_zero() || m.is_one() {
        return Err(KrallError::InvalidParams("M_i != 0, 1 violated".into()));
    }
    let s = RatFunc::s();
    let ap = rf(r(-a)) + s.clone() / rf(m.clone());
    let bp = rf(r(-b)) - s;
    let h = hahn_poly(g, &ap, &bp, &rf(r(-2 - nn)));
    Ok(lim_over_s(&h)?.scale(&(m.clone() / (m.clone() - r(1)))))
}

/// lim (1/s)( h_g - h_g(t)/h_{g'}(t) h_{g'} ), parameters (-a-s,-b,-2-N), g' = a+b-g-1,
/// anchored at t = 0 (standard) or t = -2-N (flipped).
pub fn w_limit_anchor(g: i64, a: i64, b: i64, nn: i64, anchor: i64) -> Result<Poly<Rational>> {
    let gp = a + b - g - 1;
    let ap = rf(r(-a)) - RatFunc::s();
    let (bp, np) = (rf(r(-b)), rf(r(-2 - nn)));
    let hg = hahn_poly(g, &ap, &bp, &np);
    let hgp = hahn_poly(gp, &ap, &bp, &np);
    let t = rf(r(anchor));
    let d = hgp.eval(&t);
    if d.is_zero() {
        return Err(KrallError::ZeroDivisor(format!("h_{gp}({anchor}) vanishes identically in s")));
    }
    let k = hg.eval(&t) / d;
    lim_over_s(&(&hg - &hgp.scale(&k)))
}

/// ∂_s φ_g^{a,b,-2-N}(0,x) - ∂_s φ_{a+b-g-1}^{a,b,-2-N}(0,x).
pub fn w_phi_difference(g: i64, a: i64, b: i64, nn: i64) -> Result<Poly<Rational>> {
    let (_, d1) = phi_pair(g, &r(a), &r(b), &r(-2 - nn))?;
    let (_, d2) = phi_pair(a + b - g - 1, &r(a), &r(b), &r(-2 - nn))?;
    Ok(&d1 - &d2)
}

/// (c - x)_j as a polynomial in x.
fn poch_minus_x(c: Rational, j: i64) -> Poly<Rational> {
    (0..j).fold(Poly::one(), |acc, i| &acc * &Poly::new(vec![c.clone() + r(i), r(-1)]))
}

fn binomial(n: i64, k: i64) -> Rational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// The explicit two-sum expression for the middle-range W_g.
pub fn w_explicit(g: i64, a: i64, b: i64, nn: i64) -> Poly<Rational> {
    let gp = a + b - g;
    let d = 2 * g - a - b;
    let mut t1 = Poly::zero();
    for j in 0..=d.max(-1) {
        let c = pochhammer(&r(j + 2 + nn + a + b - g), (d - j) as usize)
            * pochhammer(&r(j + b - g + 1), (d - j) as usize)
            * pochhammer(&r(a + b - 2 * g), j as usize)
            / (r(a + b - g) * binomial(j + a + b - g, j));
        t1 = &t1 + &poch_minus_x(r(a + b - g), j).scale(&c);
    }
    let pre = pochhammer(&r(-g), gp as usize) * r(sign(gp));
    let t1 = &poch_minus_x(r(0), gp) * &t1.scale(&pre);
    let mut t2 = Poly::zero();
    for j in 0..gp {
        let inner: Rational = (0..j)
            .map(|i| r(2 * g - a - b + 1) / (r(-g + i) * r(g - a - b + 1 + i)))
            .sum();
        if inner.is_zero() {
            continue;
        }
        let c = pochhammer(&r(j + 2 + nn), (g - j) as usize)
            * pochhammer(&r(-a + j + 1), (g - j) as usize)
            * pochhammer(&r(-g), j as usize)
            * pochhammer(&r(g - a - b + 1), j as usize)
            / factorial(j)
            * inner;
        t2 = &t2 + &poch_minus_x(r(0), j).scale(&c);
    }
    &t1 + &t2
}

/// Closed form of the M-dependent W_g (a <= g <= a+b-1), with the (g-a)!(N+a+b+1-g)_{2g-a-b+1}/(M-1) term.
pub fn w_closed_m(g: i64, a: i64, b: i64, nn: i64, m: &Rational) -> Poly<Rational> {
    let x_minus_a = poch_minus_x(r(0), a);
    let first = &x_minus_a * &h_int(g - a, a, -b, -2 - nn - a).shift(&r(-a));
    let first = first.scale(&factorial(a + b - g - 1));
    let k = factorial(g - a) * pochhammer(&r(nn + a + b + 1 - g), (2 * g - a - b + 1) as usize)
        / (m.clone() - r(1));
    let second = h_anchor(a + b - g - 1, a, b, nn).scale(&k);
    (&first + &second).scale(&(r(sign(b + g)) * factorial(g - b)))
}

/// W_g^{a,b,N;M}. For b <= a the middle and M-dependent cases are cross-checked against
/// their alternative expressions; any mismatch is an error.
pub fn w_poly(g: i64, a: i64, b: i64, nn: i64, m: &[Rational]) -> Result<Poly<Rational>> {
    let c = ceil_half(a + b);
    let m_at = |i: i64| {
        m.get(i as usize).cloned().ok_or_else(|| {
            KrallError::InvalidParams(format!("W_{g} needs M_{i} but only {} given", m.len()))
        })
    };
    if b <= a {
        if (a..a + b).contains(&g) {
            let mg = m_at(g - a)?;
            let w = w_limit_m(g, a, b, nn, &mg)?;
            if w != w_closed_m(g, a, b, nn, &mg) {
                return Err(KrallError::Internal(format!(
                    "W_{g}: limit and closed form disagree (a={a}, b={b}, N={nn})"
                )));
            }
            return Ok(w);
        }
        if c <= g && g < a {
            let w = w_phi_difference(g, a, b, nn)?;
            if w != w_limit_anchor(g, a, b, nn, 0)? || w != w_explicit(g, a, b, nn) {
                return Err(KrallError::Internal(format!(
                    "W_{g}: phi difference, limit and explicit sum disagree (a={a}, b={b}, N={nn})"
                )));
            }
            return Ok(w);
        }
        return Ok(h_anchor(g, a, b, nn));
    }
    if (b..a + b).contains(&g) {
        return w_limit_m(g, a, b, nn, &m_at(g - b)?);
    }
    if c <= g && g < b {
        return w_limit_anchor(g, a, b, nn, -2 - nn);
    }
    Ok(h_anchor(g, a, b, nn))
}

/// W_g for g in {b..a+b-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct WFamily {
    pub params: NuParams,
    pub orientation: Orientation,
    pub polys: BTreeMap<i64, Poly<Rational>>,
}

impl WFamily {
    pub fn get(&self, g: i64) -> &Poly<Rational> {
        &self.polys[&g]
    }
}

pub fn w_family(p: &NuParams) -> Result<WFamily> {
    p.validate()?;
    let mut polys = BTreeMap::new();
    for g in p.b..p.a + p.b {
        let w = w_poly(g, p.a, p.b, p.n, &p.m)?;
        if w.degree() != Some(g as usize) {
            return Err(KrallError::Internal(format!("deg W_{g} = {:?}, expected {g}", w.degree())));
        }
        polys.insert(g, w);
    }
    Ok(WFamily { params: p.clone(), orientation: p.orientation(), polys })
}

/// W polynomials for an arbitrary index set (no degree requirement).
pub fn w_set(a: i64, b: i64, nn: i64, m: &[Rational], g: &IndexSet) -> Result<BTreeMap<i64, Poly<Rational>>> {
    g.iter().map(|v| Ok((v, w_poly(v, a, b, nn, m)?))).collect()
}

/// Anchor polynomials of the ψ sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxVariant {
    /// P = prod_{j=b}^{a+b-1} (x + λ(-j-1))
    P,
    /// Q = prod_{j=a}^{a+b-1} (x - a - b - λ(-j-1))
    Q,
    /// p = prod_{g in G} (x + λ(-g-1))
    PSimple,
    /// P_U over G_U with the shifted parameters
    PU,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuxPoly {
    pub poly: Poly<Rational>,
    /// (i, P_i) for the double-root indices.
    pub deflated: Vec<(i64, Poly<Rational>)>,
}

fn lam_i(a: &Rational, b: &Rational, x: i64) -> Rational {
    lambda_map(a, b, &r(x))
}

/// prod_{g in G} (x + λ^{a,b}(-g-1)).
pub fn product_over(a: &Rational, b: &Rational, g: &IndexSet) -> Poly<Rational> {
    let roots: Vec<Rational> = g.iter().map(|v| -lam_i(a, b, -v - 1)).collect();
    Poly::from_roots(&roots)
}

/// P_i = (2i+1-a-b) P / (x + λ(-i-1))^2.
pub fn deflate(p: &Poly<Rational>, a: i64, b: i64, i: i64) -> Result<Poly<Rational>> {
    let z = -lam_i(&r(a), &r(b), -i - 1);
    let sq = Poly::from_roots(&[z.clone(), z]);
    let (q, rem) = p.scale(&r(2 * i + 1 - a - b)).div_rem(&sq)?;
    if !rem.is_zero() {
        return Err(KrallError::Internal(format!("-λ(-{}-1) is not a double root", i)));
    }
    Ok(q)
}

/// b <= i <= c-2, or i = c-1 with a+b even.
pub fn in_middle_range(i: i64, a: i64, b: i64) -> bool {
    let c = ceil_half(a + b);
    (b..=c - 2).contains(&i) || (i == c - 1 && a + b == 2 * c)
}

/// Builds P (or P_U / p / Q) and checks the root structure claimed for it.
pub fn aux_poly(variant: AuxVariant, a: i64, b: i64, g: &IndexSet) -> Result<AuxPoly> {
    let (ar, br) = (r(a), r(b));
    match variant {
        AuxVariant::Q => {
            let roots: Vec<Rational> = (a..a + b).map(|j| r(a + b) + lam_i(&ar, &br, -j - 1)).collect();
            let poly = Poly::from_roots(&roots);
            for z in &roots {
                if poly.derivative().eval(z).is_zero() {
                    return Err(KrallError::Internal("Q has a multiple root".into()));
                }
            }
            Ok(AuxPoly { poly, deflated: vec![] })
        }
        AuxVariant::PSimple => Ok(AuxPoly { poly: product_over(&ar, &br, g), deflated: vec![] }),
        AuxVariant::P | AuxVariant::PU => {
            let set = if variant == AuxVariant::P { IndexSet::range(b, a + b - 1) } else { g.clone() };
            let poly = product_over(&ar, &br, &set);
            let mut deflated = Vec::new();
            for i in set.iter() {
                let partner = a + b - 1 - i;
                if partner != i && set.contains(partner) {
                    let pi = deflate(&poly, a, b, i)?;
                    let z = -lam_i(&ar, &br, -i - 1);
                    if pi.eval(&z).is_zero() {
                        return Err(KrallError::Internal(format!("root for i={i} has multiplicity > 2")));
                    }
                    deflated.push((i, pi));
                }
            }
            // antisymmetry P_i = -P_{a+b-1-i}
            for (i, pi) in &deflated {
                if let Some((_, pj)) = deflated.iter().find(|(j, _)| *j == a + b - 1 - i) {
                    if *pi != -pj {
                        return Err(KrallError::Internal(format!("P_{i} != -P_{}", a + b - 1 - i)));
                    }
                }
            }
            Ok(AuxPoly { poly, deflated })
        }
    }
}

/// Argument of ψ: a power x^m or a general polynomial r.
#[derive(Clone, Debug, PartialEq)]
pub enum PsiArg {
    Power(usize),
    Poly(Poly<Rational>),
}

impl PsiArg {
    fn value(&self, l: &Rational) -> Rational {
        match self {
            PsiArg::Power(m) => pow_i(l, *m),
            PsiArg::Poly(p) => p.eval(l),
        }
    }

    fn deriv(&self, l: &Rational) -> Rational {
        match self {
            PsiArg::Power(0) => Rational::zero(),
            PsiArg::Power(m) => r(*m as i64) * pow_i(l, m - 1),
            PsiArg::Poly(p) => p.derivative().eval(l),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiVariant {
    Basic,
    Tilde,
    UVersion,
    Sec7,
}

/// Shared data for one family of ψ sequences.
#[derive(Clone, Debug)]
pub struct PsiContext {
    pub variant: PsiVariant,
    a: Rational,
    b: Rational,
    nn: i64,
    pub g_set: IndexSet,
    anchor: Poly<Rational>,
    /// normalizing value per g: W_g(0), h_g^{-a,-b,-2-N}(0) or W_f(a+N+1)
    norm: BTreeMap<i64, Rational>,
}

impl PsiContext {
    /// ψ_g^m of the basic lemma, from the W family of ν.
    pub fn basic(w: &WFamily) -> Result<Self> {
        let p = &w.params;
        let g = IndexSet::range(p.b, p.a + p.b - 1);
        Self::integer_case(PsiVariant::Basic, p.a, p.b, p.n, g, &w.polys)
    }

    /// ψ_{U,g}^m with the shifted parameters and the W polynomials over G_U.
    pub fn u_version(a: i64, b: i64, nn: i64, g: &IndexSet, ws: &BTreeMap<i64, Poly<Rational>>) -> Result<Self> {
        Self::integer_case(PsiVariant::UVersion, a, b, nn, g.clone(), ws)
    }

    fn integer_case(
        variant: PsiVariant,
        a: i64,
        b: i64,
        nn: i64,
        g: IndexSet,
        ws: &BTreeMap<i64, Poly<Rational>>,
    ) -> Result<Self> {
        let aux = aux_poly(if variant == PsiVariant::Basic { AuxVariant::P } else { AuxVariant::PU }, a, b, &g)?;
        let c = ceil_half(a + b);
        let mut norm = BTreeMap::new();
        for v in g.iter() {
            let val = if c <= v && v < a {
                h_anchor(v, a, b, nn).eval(&Rational::zero())
            } else {
                ws.get(&v)
                    .ok_or_else(|| KrallError::Internal(format!("missing W_{v}")))?
                    .eval(&Rational::zero())
            };
            if val.is_zero() {
                return Err(KrallError::ZeroDivisor(format!("normalizing value vanishes for g={v}")));
            }
            norm.insert(v, val);
        }
        Ok(PsiContext { variant, a: r(a), b: r(b), nn, g_set: g, anchor: aux.poly, norm })
    }

    /// ψ̃_g^m over G = I(F), generic rational a, b.
    pub fn tilde(a: &Rational, b: &Rational, nn: i64, g: &IndexSet) -> Result<Self> {
        let anchor = product_over(a, b, g);
        let mut norm = BTreeMap::new();
        for v in g.iter() {
            let val = hahn_poly(v, &-a.clone(), &-b.clone(), &r(-2 - nn)).eval(&Rational::zero());
            if val.is_zero() {
                return Err(KrallError::ZeroDivisor(format!("h_{v}(0) vanishes")));
            }
            norm.insert(v, val);
        }
        Ok(PsiContext { variant: PsiVariant::Tilde, a: a.clone(), b: b.clone(), nn, g_set: g.clone(), anchor, norm })
    }

    /// ψ_f^m for the M^{-1} representation; `ws` are W_f^{a,b,-2-N-a-b;M^{-1}}.
    pub fn sec7(a: i64, b: i64, nn: i64, ws: &BTreeMap<i64, Poly<Rational>>) -> Result<Self> {
        let g = IndexSet::range(a, a + b - 1);
        let anchor = aux_poly(AuxVariant::Q, a, b, &g)?.poly;
        let mut norm = BTreeMap::new();
        for f in g.iter() {
            let val = ws[&f].eval(&r(a + nn + 1));
            if val.is_zero() {
                return Err(KrallError::ZeroDivisor(format!("W_{f}(a+N+1) vanishes")));
            }
            norm.insert(f, val);
        }
        Ok(PsiContext { variant: PsiVariant::Sec7, a: r(a), b: r(b), nn, g_set: g, anchor, norm })
    }

    fn lam(&self, x: i64) -> Rational {
        lam_i(&self.a, &self.b, x)
    }

    fn int_ab(&self) -> (i64, i64) {
        let a = crate::exact::as_integer(&self.a).expect("integer a");
        let b = crate::exact::as_integer(&self.b).expect("integer b");
        (a, b)
    }

    /// u_i^r: zero unless i is in the middle range.
    pub fn u_term(&self, i: i64, arg: &PsiArg) -> Result<Rational> {
        let (a, b) = self.int_ab();
        if !in_middle_range(i, a, b) {
            return Ok(Rational::zero());
        }
        let l = self.lam(-i - 1);
        let d = arg.deriv(&l);
        if d.is_zero() {
            return Ok(d);
        }
        let pi = deflate(&self.anchor, a, b, i)?;
        let z = -l;
        let den = pi.derivative().eval(&z);
        if den.is_zero() {
            return Err(KrallError::ZeroDivisor(format!("P_{i}'(z) vanishes")));
        }
        Ok(d * pi.eval(&z) / den)
    }

    pub fn psi(&self, g: i64, arg: &PsiArg) -> Result<Rational> {
        if !self.g_set.contains(g) {
            return Err(KrallError::Precondition(format!("g={g} outside the index set")));
        }
        let nv = &self.norm[&g];
        match self.variant {
            PsiVariant::Tilde => {
                let l = self.lam(-g - 1);
                let dz = self.anchor.derivative().eval(&-l.clone());
                if dz.is_zero() {
                    return Err(KrallError::ZeroDivisor(format!("p'(z) vanishes for g={g}")));
                }
                Ok(arg.value(&l) / (dz * nv.clone()))
            }
            PsiVariant::Sec7 => {
                let z = self.a.clone() + self.b.clone() + self.lam(-g - 1);
                let dz = self.anchor.derivative().eval(&z);
                Ok(arg.value(&z) / (dz * nv.clone()))
            }
            PsiVariant::Basic | PsiVariant::UVersion => {
                let (a, b) = self.int_ab();
                let c = ceil_half(a + b);
                let l = self.lam(-g - 1);
                let z = -l.clone();
                if b <= g && g < c {
                    let res = residue_inv(&self.anchor, &z)?;
                    Ok((arg.value(&l) + self.u_term(g, arg)?) * res / nv.clone())
                } else if c <= g && g < a {
                    let pg = deflate(&self.anchor, a, b, g)?;
                    Ok(arg.value(&l) / (pg.eval(&z) * nv.clone()))
                } else {
                    let res = residue_inv(&self.anchor, &z)?;
                    Ok(arg.value(&l) * res / nv.clone())
                }
            }
        }
    }

    pub fn nn(&self) -> i64 {
        self.nn
    }
}

/// ψ values for every g and every argument.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiTable {
    pub variant: PsiVariant,
    pub g: Vec<i64>,
    /// values[k][idx] = ψ_{g[idx]}^{args[k]}
    pub values: Vec<Vec<Rational>>,
}

pub fn psi_table(ctx: &PsiContext, args: &[PsiArg]) -> Result<PsiTable> {
    let g: Vec<i64> = ctx.g_set.iter().collect();
    let values = args
        .iter()
        .map(|arg| g.iter().map(|&v| ctx.psi(v, arg)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(PsiTable { variant: ctx.variant, g, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::DifferenceOperator2;
    use crate::exact::frac;

    fn params(a: i64, b: i64, n: i64, m: &[Rational]) -> NuParams {
        NuParams::new(a, b, n, m.to_vec()).unwrap()
    }

    #[test]
    fn degrees_and_plain_case() {
        for (a, b, n) in [(1, 1, 2), (2, 1, 3), (3, 1, 4), (3, 2, 4), (4, 2, 5), (3, 3, 5)] {
            let m: Vec<Rational> = [rat(2), frac(1, 2), rat(-3)][..b as usize].to_vec();
            let w = w_family(&params(a, b, n, &m)).unwrap();
            for g in b..a + b {
                assert_eq!(w.get(g).degree(), Some(g as usize));
                if g < ceil_half(a + b) {
                    assert_eq!(*w.get(g), h_anchor(g, a, b, n));
                }
            }
        }
    }

    #[test]
    fn m_case_is_scaled_limit() {
        let m = rat(2);
        let w = w_family(&params(1, 1, 3, std::slice::from_ref(&m))).unwrap();
        let s = RatFunc::s();
        let h = hahn_poly(1, &(rf(rat(-1)) + s.clone() / rf(m.clone())), &(rf(rat(-1)) - s), &rf(rat(-5)));
        let want = lim_over_s(&h).unwrap().scale(&(m.clone() / (m - rat(1))));
        assert_eq!(*w.get(1), want);
    }

    #[test]
    fn only_w_a_plus_i_depends_on_m_i() {
        let w1 = w_family(&params(3, 2, 4, &[rat(2), rat(5)])).unwrap();
        let w2 = w_family(&params(3, 2, 4, &[rat(2), rat(7)])).unwrap();
        for g in 2..5 {
            assert_eq!(w1.get(g) == w2.get(g), g != 4, "g={g}");
        }
    }

    #[test]
    fn eigen_relations() {
        for (a, b, n, m) in [(3, 1, 4, vec![rat(2)]), (4, 1, 4, vec![rat(2)]), (5, 2, 5, vec![rat(2), rat(3)]), (2, 2, 3, vec![rat(2), rat(5)])] {
            let p = params(a, b, n, &m);
            let w = w_family(&p).unwrap();
            let op = DifferenceOperator2::d_aux(a, b, n);
            let c = ceil_half(a + b);
            for g in b..a + b {
                let f = w.get(g).compose_linear(&rat(-1), &rat(-1));
                let mut d = &op.apply_poly(&f) - &f.scale(&lam_i(&r(a), &r(b), -g - 1));
                if c <= g && g < a {
                    let k = r(a + b - 2 * g - 1)
                        * pochhammer(&r(b - g), (2 * g - a - b + 1) as usize)
                        * pochhammer(&r(n + a + b - g + 1), (2 * g - a - b + 1) as usize);
                    let hh = h_anchor(a + b - g - 1, a, b, n).compose_linear(&rat(-1), &rat(-1));
                    d = &d - &hh.scale(&k);
                }
                assert!(d.is_zero(), "(a,b,N,g)=({a},{b},{n},{g})");
            }
            let op7 = DifferenceOperator2::d_aux_sec7(a, b, n);
            let np = -2 - n - a - b;
            let mi = p.inverse_m();
            for f in a..a + b {
                let wf = w_poly(f, a, b, np, &mi).unwrap().compose_linear(&rat(-1), &r(a + n));
                let d = &op7.apply_poly(&wf) - &wf.scale(&lam_i(&r(a), &r(b), -f - 1));
                assert!(d.is_zero());
            }
        }
    }

    #[test]
    fn flip_symmetry_sign_is_g() {
        for (a, b, n, m) in [(1, 2, 3, vec![rat(2)]), (1, 3, 3, vec![rat(3)]), (2, 3, 3, vec![rat(2), rat(5)]), (2, 5, 4, vec![rat(2), rat(3)])] {
            let mi: Vec<Rational> = m.iter().map(|v| v.recip()).collect();
            for g in 0..a + b + 2 {
                let l = w_poly(g, a, b, n, &m).unwrap();
                let rr = w_poly(g, b, a, n, &mi).unwrap().compose_linear(&rat(-1), &r(-2 - n));
                let l = if g % 2 == 1 { -&l } else { l };
                assert_eq!(l, rr, "(a,b,g)=({a},{b},{g})");
            }
        }
    }

    #[test]
    fn aux_examples() {
        let p = aux_poly(AuxVariant::P, 2, 1, &IndexSet::default()).unwrap();
        assert_eq!(p.poly, Poly::from_roots(&[rat(4), rat(3)]));
        assert!(p.deflated.is_empty());
        let p = aux_poly(AuxVariant::P, 3, 1, &IndexSet::default()).unwrap();
        assert_eq!(p.poly, Poly::from_roots(&[rat(6), rat(6), rat(4)]));
        assert_eq!(p.deflated.len(), 2);
        let q = aux_poly(AuxVariant::Q, 3, 2, &IndexSet::default()).unwrap();
        assert_eq!(q.poly.degree(), Some(2));
    }

    #[test]
    fn psi_u_zero_cases() {
        let p = params(4, 2, 5, &[rat(2), rat(-3)]);
        let w = w_family(&p).unwrap();
        let ctx = PsiContext::basic(&w).unwrap();
        for i in 2..6 {
            assert!(ctx.u_term(i, &PsiArg::Power(0)).unwrap().is_zero());
        }
        // i=2 is in the middle range for a=4, b=2; i=4 is not
        assert!(!ctx.u_term(2, &PsiArg::Power(2)).unwrap().is_zero());
        assert!(ctx.u_term(4, &PsiArg::Power(2)).unwrap().is_zero());
    }

    #[test]
    fn psi_is_linear_in_the_argument() {
        let p = params(4, 2, 5, &[rat(2), frac(1, 2)]);
        let w = w_family(&p).unwrap();
        let ctx = PsiContext::basic(&w).unwrap();
        let rpoly = Poly::new(vec![rat(3), frac(-1, 2), rat(0), rat(2)]);
        for g in 2..6 {
            let whole = ctx.psi(g, &PsiArg::Poly(rpoly.clone())).unwrap();
            let parts: Rational = (0..4)
                .map(|m| rpoly.coeff(m) * ctx.psi(g, &PsiArg::Power(m)).unwrap())
                .sum();
            assert_eq!(whole, parts);
        }
    }

    #[test]
    fn psi_table_a2_b1() {
        // hand evaluation: P = (x-4)(x-3), W_1 = h_1^{-2,-1,-4}, W_2 from the M case
        let p = params(2, 1, 2, &[rat(2)]);
        let w = w_family(&p).unwrap();
        let t = psi_table(&PsiContext::basic(&w).unwrap(), &[PsiArg::Power(0)]).unwrap();
        assert_eq!(t.g, vec![1, 2]);
        // g=1: z = -λ(-2) = 4, Res = 1/P'(4) = 1; g=2: z = 3, Res = -1
        assert_eq!(t.values[0][0], rat(1) / w.get(1).eval(&rat(0)));
        assert_eq!(t.values[0][1], rat(-1) / w.get(2).eval(&rat(0)));
    }
}

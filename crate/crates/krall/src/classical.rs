//! Dual Hahn and Hahn polynomials, the quadratic lattice, φ and the second order operators.

use num_traits::{One, Zero};

use crate::error::{KrallError, Result};
use crate::exact::{factorial, pochhammer, rat, Field, Poly, RatFunc, Rational};

/// λ(x) = x(x+a+b+1).
pub fn lambda_map<F: Field>(a: &F, b: &F, x: &F) -> F {
    x.clone() * (x.clone() + a.clone() + b.clone() + F::one())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeMap<F> {
    pub a: F,
    pub b: F,
}

impl<F: Field> LatticeMap<F> {
    pub fn new(a: F, b: F) -> Self {
        LatticeMap { a, b }
    }

    pub fn at(&self, x: &F) -> F {
        lambda_map(&self.a, &self.b, x)
    }

    pub fn at_int(&self, x: i64) -> F {
        self.at(&F::from_i64(x))
    }

    /// The partner index -x-a-b-1 with the same λ value.
    pub fn reflect(&self, x: &F) -> F {
        -x.clone() - self.a.clone() - self.b.clone() - F::one()
    }
}

fn fi<F: Field>(v: i64) -> F {
    F::from_i64(v)
}

/// R_n^{a,b,N} as a polynomial in the λ-variable; zero for n < 0.
pub fn dual_hahn_poly<F: Field>(n: i64, a: &F, b: &F, nn: &F) -> Poly<F> {
    if n < 0 {
        return Poly::zero();
    }
    let nu = n as usize;
    let nfact = F::from_rat(factorial(n));
    let ab1 = a.clone() + b.clone() + F::one();
    let mut basis = Poly::<F>::one();
    let mut out = Poly::zero();
    for j in 0..=nu {
        let jf: F = fi(j as i64);
        let c: F = pochhammer(&fi::<F>(-n), j)
            * pochhammer(&(jf.clone() - nn.clone()), nu - j)
            * pochhammer(&(a.clone() + jf.clone() + F::one()), nu - j)
            / (nfact.clone() * F::from_rat(factorial(j as i64)));
        let c = if j % 2 == 1 { -c } else { c };
        if !c.is_zero() {
            out = &out + &basis.scale(&c);
        }
        // next basis factor: x - j(a+b+1+j)
        let root = jf.clone() * (ab1.clone() + jf);
        basis = &basis * &Poly::linear_root(&root);
    }
    out
}

/// h_n^{a,b,N}(x) from its terminating hypergeometric sum; zero for n < 0.
pub fn hahn_poly<F: Field>(n: i64, a: &F, b: &F, nn: &F) -> Poly<F> {
    if n < 0 {
        return Poly::zero();
    }
    let nu = n as usize;
    let abn1 = a.clone() + b.clone() + fi(n + 1);
    let mut basis = Poly::<F>::one();
    let mut out = Poly::zero();
    for j in 0..=nu {
        let jf: F = fi(j as i64);
        let c: F = pochhammer(&fi::<F>(-n), j)
            * pochhammer(&abn1, j)
            * pochhammer(&(jf.clone() - nn.clone()), nu - j)
            * pochhammer(&(a.clone() + jf.clone() + F::one()), nu - j)
            / F::from_rat(factorial(j as i64));
        if !c.is_zero() {
            out = &out + &basis.scale(&c);
        }
        // (-x)_{j+1} = (-x)_j (j - x)
        basis = &basis * &Poly::new(vec![jf, -F::one()]);
    }
    out
}

/// φ_u^{a,b,N}(s,x) and its s-derivative at s = 0.
pub fn phi_pair(
    u: i64,
    a: &Rational,
    b: &Rational,
    nn: &Rational,
) -> Result<(Poly<RatFunc>, Poly<Rational>)> {
    if u < 0 {
        return Err(KrallError::Precondition(format!("phi needs u >= 0, got {u}")));
    }
    let uu = u as usize;
    let k = {
        let other = a.clone() + b.clone() - rat(u) - rat(1);
        let other = crate::exact::as_integer(&other).ok_or_else(|| {
            KrallError::InvalidParams("phi needs integer a+b".into())
        })?;
        u.max(other).max(0) as usize
    };
    let s = RatFunc::s();
    let rf = |r: Rational| RatFunc::from_rat(r);
    let pre_a = pochhammer(&(rat(1) - a.clone()), k);
    let mut basis = Poly::<RatFunc>::one();
    let mut phi = Poly::<RatFunc>::zero();
    for j in 0..=uu {
        let jr = rat(j as i64);
        // (-N)_k / (-N)_j = (-N+j)_{k-j}, no division needed since j <= u <= k
        let n_part = pochhammer(&(jr.clone() - nn.clone()), k - j);
        let top = pochhammer(&rf(rat(-u)), j)
            * pochhammer(&(rf(rat(u) - a.clone() - b.clone() + rat(1)) - s.clone()), j);
        let bottom = pochhammer(&(rf(rat(1) - a.clone()) - s.clone()), j)
            * rf(factorial(j as i64));
        if bottom.is_zero() {
            return Err(KrallError::Pole);
        }
        let c = top * rf(pre_a.clone() * n_part) / bottom;
        if !c.is_zero() {
            phi = &phi + &basis.scale(&c);
        }
        basis = &basis * &Poly::new(vec![rf(jr), -RatFunc::one()]);
    }
    let deriv: Result<Vec<Rational>> = phi.coeffs().iter().map(|c| c.derivative_at_zero()).collect();
    Ok((phi, Poly::new(deriv?)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    GammaHahn,
    DAux,
    DAuxSec7,
}

/// Second order operator  up(x) f(x+1) + mid(x) f(x) + down(x) f(x-1).
///
/// For the auxiliary operators the eigen-relations hold with `A` on f(x+1) and `C` on f(x-1),
/// and `mid = -A(x-1) - C(x+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceOperator2 {
    pub kind: OperatorKind,
    pub up: Poly<Rational>,
    pub mid: Poly<Rational>,
    pub down: Poly<Rational>,
}

fn lin(c0: Rational, c1: i64) -> Poly<Rational> {
    Poly::new(vec![c0, rat(c1)])
}

impl DifferenceOperator2 {
    /// Γ with a(x) = (x+a+1)(x-N), b(x) = x(x-b-N-1); eigenvalue λ(n) on h_n.
    pub fn gamma_hahn(a: &Rational, b: &Rational, nn: &Rational) -> Self {
        let ax = &lin(a.clone() + rat(1), 1) * &lin(-nn.clone(), 1);
        let bx = &Poly::x() * &lin(-b.clone() - nn.clone() - rat(1), 1);
        let mid = -&(&ax + &bx);
        DifferenceOperator2 { kind: OperatorKind::GammaHahn, up: ax, mid, down: bx }
    }

    fn aux(kind: OperatorKind, up: Poly<Rational>, down: Poly<Rational>) -> Self {
        let mid = -&(&up.shift(&rat(-1)) + &down.shift(&rat(1)));
        DifferenceOperator2 { kind, up, mid, down }
    }

    /// A = (x+1)(x-b-N), C = (x-N-1)(x+a); acts on W_g(-x-1).
    pub fn d_aux(a: i64, b: i64, nn: i64) -> Self {
        Self::aux(
            OperatorKind::DAux,
            &lin(rat(1), 1) * &lin(rat(-b - nn), 1),
            &lin(rat(-nn - 1), 1) * &lin(rat(a), 1),
        )
    }

    /// A = (x+1)(x-a-N), C = (x-N-1)(x+b); acts on W_f^{a,b,-2-N-a-b;1/M}(a+N-x).
    pub fn d_aux_sec7(a: i64, b: i64, nn: i64) -> Self {
        Self::aux(
            OperatorKind::DAuxSec7,
            &lin(rat(1), 1) * &lin(rat(-a - nn), 1),
            &lin(rat(-nn - 1), 1) * &lin(rat(b), 1),
        )
    }

    pub fn apply(&self, f: impl Fn(&Rational) -> Rational, x: &Rational) -> Rational {
        self.up.eval(x) * f(&(x.clone() + rat(1)))
            + self.mid.eval(x) * f(x)
            + self.down.eval(x) * f(&(x.clone() - rat(1)))
    }

    pub fn apply_poly(&self, f: &Poly<Rational>) -> Poly<Rational> {
        &(&(&self.up * &f.shift(&rat(1))) + &(&self.mid * f)) + &(&self.down * &f.shift(&rat(-1)))
    }
}

/// Applies `op` to a lattice function at an integer point.
pub fn apply_operator(
    op: &DifferenceOperator2,
    f: impl Fn(&Rational) -> Rational,
    x: i64,
) -> Rational {
    op.apply(f, &rat(x))
}

//! Discrete measures on the quadratic lattice.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::LatticeMap;
use crate::error::{KrallError, Result};
use crate::exact::{
    factorial, fmt_rat, pochhammer, rat, serde_rat, Field, IndexSet, Poly, Rational,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Atom<F> {
    pub i: i64,
    pub point: F,
    pub mass: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure<F> {
    pub lattice: LatticeMap<F>,
    pub atoms: Vec<Atom<F>>,
}

impl<F: Field> DiscreteMeasure<F> {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn points(&self) -> Vec<F> {
        self.atoms.iter().map(|a| a.point.clone()).collect()
    }

    pub fn scale(&self, k: &F) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom { i: a.i, point: a.point.clone(), mass: a.mass.clone() * k.clone() })
            .filter(|a| !a.mass.is_zero())
            .collect();
        DiscreteMeasure { lattice: self.lattice.clone(), atoms }
    }
}

#[derive(Clone, Debug)]
pub enum Transform<F> {
    Translate(i64),
    Christoffel(Poly<F>),
}

/// τ_u moves the mass at index i to index i-u; a Christoffel factor multiplies masses by r(point).
pub fn measure_transform<F: Field>(mu: &DiscreteMeasure<F>, kind: &Transform<F>) -> DiscreteMeasure<F> {
    let atoms = match kind {
        Transform::Translate(u) => mu
            .atoms
            .iter()
            .map(|a| Atom {
                i: a.i - u,
                point: mu.lattice.at_int(a.i - u),
                mass: a.mass.clone(),
            })
            .collect(),
        Transform::Christoffel(r) => mu
            .atoms
            .iter()
            .map(|a| Atom { i: a.i, point: a.point.clone(), mass: r.eval(&a.point) * a.mass.clone() })
            .filter(|a| !a.mass.is_zero())
            .collect(),
    };
    DiscreteMeasure { lattice: mu.lattice.clone(), atoms }
}

pub fn inner_product<F: Field>(p: &Poly<F>, q: &Poly<F>, mu: &DiscreteMeasure<F>) -> F {
    mu.atoms.iter().fold(F::zero(), |acc, a| {
        acc + p.eval(&a.point) * q.eval(&a.point) * a.mass.clone()
    })
}

/// ρ_{a,b,N}.
pub fn dual_hahn_measure<F: Field>(a: &F, b: &F, nn: i64) -> Result<DiscreteMeasure<F>> {
    if nn < 0 {
        return Err(KrallError::InvalidParams(format!("N must be >= 0, got {nn}")));
    }
    let lattice = LatticeMap::new(a.clone(), b.clone());
    let nf = F::from_rat(factorial(nn));
    let mut atoms = Vec::with_capacity(nn as usize + 1);
    for x in 0..=nn {
        let xf = F::from_i64(x);
        let ab1 = a.clone() + b.clone() + F::one();
        let den = pochhammer(&(xf.clone() + ab1.clone()), (nn + 1) as usize)
            * pochhammer(&(b.clone() + F::one()), x as usize)
            * F::from_rat(factorial(x));
        if den.is_zero() {
            return Err(KrallError::InvalidParams(format!(
                "dual Hahn weight undefined at x={x} (a={a:?}, b={b:?}, N={nn})"
            )));
        }
        let num = (xf.clone() + xf.clone() + ab1)
            * pochhammer(&(a.clone() + F::one()), x as usize)
            * pochhammer(&F::from_i64(-nn), x as usize)
            * nf.clone();
        let mass = if x % 2 == 1 { -(num / den) } else { num / den };
        atoms.push(Atom { i: x, point: lattice.at(&xf), mass });
    }
    Ok(DiscreteMeasure { lattice, atoms })
}

/// ⟨R_n, R_n⟩ = (-N)_n^2 C(a+n, n) / C(b+N-n, N-n).
pub fn dh_norm(n: i64, a: &Rational, b: &Rational, nn: i64) -> Result<Rational> {
    if n < 0 || n > nn {
        return Err(KrallError::Precondition(format!("norm needs 0 <= n <= N, got n={n}, N={nn}")));
    }
    let m = (nn - n) as usize;
    let pn = pochhammer(&rat(-nn), n as usize);
    let top = pn.clone() * pn * pochhammer(&(a.clone() + rat(1)), n as usize) / factorial(n);
    let bottom = pochhammer(&(b.clone() + rat(1)), m) / factorial(nn - n);
    if bottom.is_zero() {
        return Err(KrallError::InvalidParams("binomial denominator vanishes".into()));
    }
    Ok(top / bottom)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// b <= a, the standard orientation.
    Standard,
    /// a <= b, the flipped measure.
    Flipped,
}

/// a, b, N and the free masses M.
#[derive(Clone, Debug, PartialEq)]
pub struct NuParams {
    pub a: i64,
    pub b: i64,
    pub n: i64,
    pub m: Vec<Rational>,
}

impl NuParams {
    pub fn new(a: i64, b: i64, n: i64, m: Vec<Rational>) -> Result<Self> {
        let p = NuParams { a, b, n, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b, n) = (self.a, self.b, self.n);
        if a < 1 || b < 1 {
            return Err(KrallError::InvalidParams(format!("need a, b >= 1, got a={a}, b={b}")));
        }
        if a.max(b) > n {
            return Err(KrallError::InvalidParams(format!(
                "need max(a,b) <= N, got a={a}, b={b}, N={n}"
            )));
        }
        let want = a.min(b) as usize;
        if self.m.len() != want {
            return Err(KrallError::InvalidParams(format!(
                "expected {want} parameters M, got {}",
                self.m.len()
            )));
        }
        if let Some((i, v)) = self.m.iter().enumerate().find(|(_, v)| v.is_zero() || v.is_one()) {
            return Err(KrallError::InvalidParams(format!(
                "M_i != 0, 1 violated: M_{i} = {}",
                fmt_rat(v)
            )));
        }
        Ok(())
    }

    pub fn orientation(&self) -> Orientation {
        if self.b <= self.a {
            Orientation::Standard
        } else {
            Orientation::Flipped
        }
    }

    pub fn lattice(&self) -> LatticeMap<Rational> {
        LatticeMap::new(rat(self.a), rat(self.b))
    }

    pub fn lambda(&self, x: &Rational) -> Rational {
        self.lattice().at(x)
    }

    pub fn inverse_m(&self) -> Vec<Rational> {
        self.m.iter().map(|v| v.recip()).collect()
    }
}

/// ν^M_{a,b,N}; uses the flipped form when a < b.
pub fn nu_basic(p: &NuParams) -> Result<DiscreteMeasure<Rational>> {
    p.validate()?;
    let (a, b, nn) = (p.a, p.b, p.n);
    let lattice = p.lattice();
    let neg = a.min(b);
    let mut atoms = Vec::with_capacity((neg + nn + 1) as usize);
    for x in -neg..0 {
        let mass = rat(2 * x + a + b + 1) * pochhammer(&rat(nn + 1 - x), (x + b) as usize)
            / pochhammer(&rat(nn + b + 1), (x + a + 1) as usize)
            * p.m[(x + neg) as usize].clone();
        atoms.push(Atom { i: x, point: lattice.at_int(x), mass });
    }
    let c = geronimus_constant(a, b, nn);
    let rho = dual_hahn_measure(&rat(b), &rat(a), nn)?;
    for at in rho.atoms {
        let x = at.i;
        let mut pr = rat(1);
        for i in 0..b {
            pr *= rat((x + a + i + 1) * (x + b - i));
        }
        atoms.push(Atom { i: x, point: lattice.at_int(x), mass: c.clone() * at.mass / pr });
    }
    Ok(DiscreteMeasure { lattice, atoms })
}

/// (N+1)_b^2/(b+1)_{a-b}, with the Gamma reading when a < b.
pub fn geronimus_constant(a: i64, b: i64, nn: i64) -> Rational {
    let p = pochhammer(&rat(nn + 1), b as usize);
    let p2 = p.clone() * p;
    if a >= b {
        p2 / pochhammer(&rat(b + 1), (a - b) as usize)
    } else {
        p2 * pochhammer(&rat(a + 1), (b - a) as usize)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NuU {
    pub measure: DiscreteMeasure<Rational>,
    pub n_s: usize,
    pub n_minus: usize,
}

/// Checks u + v != -a-b-1 for all u, v in U.
pub fn check_u_pairs(a: i64, b: i64, u: &[Rational]) -> Result<()> {
    let forbidden = rat(-a - b - 1);
    for (k, x) in u.iter().enumerate() {
        for y in &u[k..] {
            if x.clone() + y.clone() == forbidden {
                return Err(KrallError::Precondition(format!(
                    "U pair ({}, {}) sums to -a-b-1",
                    fmt_rat(x),
                    fmt_rat(y)
                )));
            }
        }
    }
    Ok(())
}

/// U_p: the elements whose factor kills a mass of ν.
pub fn u_p(a: i64, b: i64, u: &[Rational]) -> Vec<Rational> {
    u.iter()
        .filter(|v| {
            crate::exact::as_integer(v)
                .is_some_and(|k| (-a - b + 1..=-a - 1).contains(&k) || (-b..=-1).contains(&k))
        })
        .cloned()
        .collect()
}

pub fn christoffel_factor(p: &NuParams, u: &[Rational]) -> Poly<Rational> {
    let roots: Vec<Rational> = u.iter().map(|v| p.lambda(v)).collect();
    Poly::from_roots(&roots)
}

/// ν^{M,U} = prod (x - λ(u)) ν^M.
pub fn nu_u(p: &NuParams, u: &[Rational]) -> Result<NuU> {
    check_u_pairs(p.a, p.b, u)?;
    let base = nu_basic(p)?;
    let measure = measure_transform(&base, &Transform::Christoffel(christoffel_factor(p, u)));
    if measure.is_empty() {
        return Err(KrallError::Precondition("n_S = 0: the transformed measure is empty".into()));
    }
    let n_s = measure.len();
    Ok(NuU { measure, n_s, n_minus: u_p(p.a, p.b, u).len() })
}

/// ρ^F_{a,b,N} = τ_{max F+1}( prod_{f in F} (x - λ^{â,b̂}(f)) ρ_{â,b̂,N̂} ).
pub fn rho_f<F: Field>(a: &F, b: &F, nn: i64, f: &IndexSet) -> Result<DiscreteMeasure<F>> {
    let k = f.max() + 1;
    let kf = F::from_i64(k);
    let (ah, bh) = (a.clone() - kf.clone(), b.clone() - kf);
    let base = dual_hahn_measure(&ah, &bh, nn + k)?;
    let hat = LatticeMap::new(ah, bh);
    let roots: Vec<F> = f.iter().map(|v| hat.at_int(v)).collect();
    let lattice = LatticeMap::new(a.clone(), b.clone());
    let factor = Poly::from_roots(&roots);
    let atoms = base
        .atoms
        .into_iter()
        .map(|at| Atom {
            i: at.i - k,
            point: lattice.at_int(at.i - k),
            mass: factor.eval(&at.point) * at.mass,
        })
        .filter(|at| !at.mass.is_zero())
        .collect();
    Ok(DiscreteMeasure { lattice, atoms })
}

pub fn is_positive_measure(mu: &DiscreteMeasure<Rational>) -> bool {
    mu.atoms.iter().all(|a| a.mass.is_positive())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeJson {
    #[serde(with = "serde_rat")]
    pub a: Rational,
    #[serde(with = "serde_rat")]
    pub b: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomJson {
    pub i: i64,
    #[serde(with = "serde_rat")]
    pub point: Rational,
    #[serde(with = "serde_rat")]
    pub mass: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub lattice: LatticeJson,
    pub atoms: Vec<AtomJson>,
}

impl From<&DiscreteMeasure<Rational>> for MeasureJson {
    fn from(m: &DiscreteMeasure<Rational>) -> Self {
        MeasureJson {
            lattice: LatticeJson { a: m.lattice.a.clone(), b: m.lattice.b.clone() },
            atoms: m
                .atoms
                .iter()
                .map(|a| AtomJson { i: a.i, point: a.point.clone(), mass: a.mass.clone() })
                .collect(),
        }
    }
}

impl From<MeasureJson> for DiscreteMeasure<Rational> {
    fn from(m: MeasureJson) -> Self {
        DiscreteMeasure {
            lattice: LatticeMap::new(m.lattice.a, m.lattice.b),
            atoms: m.atoms.into_iter().map(|a| Atom { i: a.i, point: a.point, mass: a.mass }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::dual_hahn_poly;
    use crate::exact::frac;

    #[test]
    fn rho_111() {
        let mu = dual_hahn_measure(&rat(1), &rat(1), 1).unwrap();
        let pts: Vec<_> = mu.atoms.iter().map(|a| (a.point.clone(), a.mass.clone())).collect();
        assert_eq!(pts, vec![(rat(0), frac(1, 4)), (rat(4), frac(1, 4))]);
        let one = Poly::one();
        assert_eq!(inner_product(&one, &one, &mu), frac(1, 2));
        let r1 = dual_hahn_poly(1, &rat(1), &rat(1), &rat(1));
        assert_eq!(inner_product(&r1, &r1, &mu), rat(2));
        assert_eq!(inner_product(&one, &r1, &mu), rat(0));
        assert_eq!(dh_norm(0, &rat(1), &rat(1), 1).unwrap(), frac(1, 2));
        assert_eq!(dh_norm(1, &rat(1), &rat(1), 1).unwrap(), rat(2));
        assert!(dh_norm(2, &rat(1), &rat(1), 1).is_err());
    }

    #[test]
    fn transforms() {
        let mu = dual_hahn_measure(&rat(1), &rat(1), 1).unwrap();
        assert_eq!(measure_transform(&mu, &Transform::Translate(0)), mu);
        assert_eq!(measure_transform(&mu, &Transform::Christoffel(Poly::one())), mu);
        let c = measure_transform(&mu, &Transform::Christoffel(Poly::x()));
        assert_eq!(c.atoms, vec![Atom { i: 1, point: rat(4), mass: rat(1) }]);
    }

    #[test]
    fn nu_examples() {
        for nn in 1..5 {
            let p = NuParams::new(1, 1, nn, vec![frac(7, 3)]).unwrap();
            let mu = nu_basic(&p).unwrap();
            assert_eq!(mu.atoms[0].i, -1);
            assert_eq!(mu.atoms[0].mass, frac(7, 3) / rat(nn + 2));
            assert_eq!(mu.len() as i64, nn + 2);
        }
        assert!(NuParams::new(1, 1, 2, vec![rat(1)]).is_err());
        assert!(NuParams::new(1, 1, 2, vec![rat(0)]).is_err());
        assert!(NuParams::new(2, 1, 1, vec![rat(2)]).is_err());
    }

    #[test]
    fn nu_u_example() {
        let p = NuParams::new(1, 1, 2, vec![rat(2)]).unwrap();
        let r = nu_u(&p, &[rat(1)]).unwrap();
        assert_eq!(r.n_s, 3);
        assert!(r.measure.atoms.iter().all(|a| a.point != rat(4)));
        assert_eq!(nu_u(&p, &[]).unwrap().measure, nu_basic(&p).unwrap());
        assert!(nu_u(&p, &[rat(-1), rat(-2)]).is_err());
    }

    #[test]
    fn rho_f_empty_is_rho() {
        let (a, b) = (frac(3, 2), frac(5, 3));
        assert_eq!(
            rho_f(&a, &b, 3, &IndexSet::default()).unwrap(),
            dual_hahn_measure(&a, &b, 3).unwrap()
        );
    }
}

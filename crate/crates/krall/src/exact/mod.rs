//! Exact scalars, polynomials, rational functions, matrices and index sets.

mod matrix;
mod poly;
mod ratfunc;
mod set;

pub use matrix::{det_cofactor, det_poly_row, Matrix};
pub use poly::Poly;
pub use ratfunc::{limit_at_zero, RatFunc};
pub use set::{involution, vandermonde, IndexSet};

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{KrallError, Result};

pub type Rational = num_rational::BigRational;

/// Coefficient field: `Rational`, or `RatFunc` for objects depending on the deformation parameter s.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rat(r: Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rat(rat(v))
    }
}

impl Field for Rational {
    fn from_rat(r: Rational) -> Self {
        r
    }
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or an integer literal.
pub fn parse_rat(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || KrallError::Parse(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| err()),
    }
}

/// Canonical `"num/den"` form; integers keep the `/1`.
pub fn fmt_rat(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub mod serde_rat {
    use super::{fmt_rat, parse_rat, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rat_vec {
    use super::{fmt_rat, parse_rat, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Rising factorial (x)_m.
pub fn pochhammer<F: Field>(x: &F, m: usize) -> F {
    let mut acc = F::one();
    for i in 0..m {
        acc = acc * (x.clone() + F::from_i64(i as i64));
    }
    acc
}

/// Gamma(x+m)/Gamma(x) for any integer m, i.e. (x)_{-m} = 1/(x-m)_m.
pub fn gpoch<F: Field>(x: &F, m: i64) -> Result<F> {
    if m >= 0 {
        return Ok(pochhammer(x, m as usize));
    }
    let d = pochhammer(&(x.clone() - F::from_i64(-m)), (-m) as usize);
    if d.is_zero() {
        return Err(KrallError::ZeroDivisor(format!("({x:?})_{m}")));
    }
    Ok(F::one() / d)
}

pub fn factorial(n: i64) -> Rational {
    assert!(n >= 0, "factorial of negative integer {n}");
    pochhammer(&rat(1), n as usize)
}

pub fn pow_i<F: Field>(x: &F, e: usize) -> F {
    let mut acc = F::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Integer value of a rational, if it is one.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        i64::try_from(r.to_integer()).ok()
    } else {
        None
    }
}

pub fn ceil_half(v: i64) -> i64 {
    v.div_euclid(2) + v.rem_euclid(2)
}

/// Residue of 1/P at a root z0 of multiplicity one or two.
pub fn residue_inv(p: &Poly<Rational>, z0: &Rational) -> Result<Rational> {
    let root = Poly::new(vec![-z0.clone(), Rational::one()]);
    let mut q = p.clone();
    let mut mult = 0;
    while !q.is_zero() && q.eval(z0).is_zero() {
        q = q.div_exact(&root)?;
        mult += 1;
        if mult > 2 {
            return Err(KrallError::Multiplicity(mult));
        }
    }
    match mult {
        0 => Err(KrallError::NotARoot(fmt_rat(z0))),
        1 => Ok(q.eval(z0).recip()),
        _ => {
            let v = q.eval(z0);
            Ok(-q.derivative().eval(z0) / (v.clone() * v))
        }
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Poly, Rational};
use crate::error::{KrallError, Result};

/// Rational function in the deformation parameter s, kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFunc {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let l = den.lead();
        RatFunc {
            num: num.scale(&(Rational::one() / l.clone())),
            den: den.scale(&(Rational::one() / l)),
        }
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// The variable s.
    pub fn s() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn eval(&self, s: &Rational) -> Result<Rational> {
        let d = self.den.eval(s);
        if d.is_zero() {
            return Err(KrallError::Pole);
        }
        Ok(self.num.eval(s) / d)
    }

    /// d/ds at s = 0.
    pub fn derivative_at_zero(&self) -> Result<Rational> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(KrallError::Pole);
        }
        let n0 = self.num.coeff(0);
        Ok((self.num.coeff(1) * d0.clone() - n0 * self.den.coeff(1)) / (d0.clone() * d0))
    }

    pub fn div_by_s(&self) -> Self {
        self.clone() / RatFunc::s()
    }
}

/// Limit s -> 0; common factors of s cancel during normalization.
pub fn limit_at_zero(f: &RatFunc) -> Result<Rational> {
    f.eval(&Rational::zero())
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly<Rational>| {
            p.coeffs()
                .iter()
                .map(super::fmt_rat)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "[{}]/[{}]", show(&self.num), show(&self.den))
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den);
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self + (-o)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, o: RatFunc) -> RatFunc {
        assert!(!o.num.is_zero(), "rational function division by zero");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
}

impl Field for RatFunc {
    fn from_rat(r: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(r))
    }
}

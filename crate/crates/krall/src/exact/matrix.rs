use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, Poly, Rational};
use crate::error::{KrallError, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix shape mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<F> = rows.into_iter().flatten().collect();
        Self::new(r, c, data)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(rows, cols, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(KrallError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    /// Bareiss elimination carried out directly in the field.
    pub fn det_field(&self) -> Result<F> {
        let n = self.square()?;
        let mut a: Vec<Vec<F>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        bareiss(&mut a, |u, v| u / v)
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let rows = (0..self.rows)
            .filter(|&r| r != i)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| c != j)
                    .map(|c| self.get(r, c).clone())
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }
}

impl Matrix<Rational> {
    /// Fraction-free determinant: rows are scaled to integers, then integer Bareiss.
    pub fn det_exact(&self) -> Result<Rational> {
        let n = self.square()?;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let l = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            a.push(
                self.row(i)
                    .iter()
                    .map(|v| v.numer() * (&l / v.denom()))
                    .collect(),
            );
            scale *= l;
        }
        let d = bareiss(&mut a, |u, v| {
            let (q, r) = u.div_rem(&v);
            debug_assert!(r.is_zero());
            q
        })?;
        Ok(Rational::new(d, scale))
    }
}

/// Shared Bareiss recurrence with row pivoting; `exact_div` must divide exactly.
fn bareiss<T>(a: &mut [Vec<T>], exact_div: impl Fn(T, T) -> T) -> Result<T>
where
    T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Sub<Output = T> + std::ops::Neg<Output = T>,
{
    let n = a.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = exact_div(v, prev.clone());
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Laplace expansion along the first row; used as an independent oracle on small matrices.
pub fn det_cofactor<F: Field>(m: &Matrix<F>) -> Result<F> {
    let n = m.square()?;
    if n == 0 {
        return Ok(F::one());
    }
    if n == 1 {
        return Ok(m.get(0, 0).clone());
    }
    let mut acc = F::zero();
    for j in 0..n {
        let c = m.get(0, j).clone();
        if c.is_zero() {
            continue;
        }
        let t = c * det_cofactor(&m.minor(0, j))?;
        acc = if j % 2 == 0 { acc + t } else { acc - t };
    }
    Ok(acc)
}

/// Determinant whose first row holds polynomials and whose other rows are numbers,
/// expanded along the polynomial row with fraction-free numeric cofactors.
pub fn det_poly_row(top: &[Poly<Rational>], rest: &Matrix<Rational>) -> Result<Poly<Rational>> {
    let n = top.len();
    if rest.rows() + 1 != n || rest.cols() != n {
        return Err(KrallError::NotSquare { rows: rest.rows() + 1, cols: n });
    }
    let mut acc = Poly::zero();
    for (j, t) in top.iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
            rest.get(r, if c < j { c } else { c + 1 }).clone()
        });
        let d = minor.det_exact()?;
        if d.is_zero() {
            continue;
        }
        let term = t.scale(&d);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

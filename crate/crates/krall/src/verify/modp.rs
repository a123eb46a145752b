//! Arithmetic modulo word-size primes, CRT and rational reconstruction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{Poly, Rational};

/// Primes just below 2^62, largest first.
pub const PRIMES: [u64; 96] = [
    0x3fffffffffffffc7, 0x3fffffffffffffa9, 0x3fffffffffffff8b,
    0x3fffffffffffff71, 0x3fffffffffffff67, 0x3fffffffffffff59,
    0x3fffffffffffff55, 0x3fffffffffffff3d, 0x3fffffffffffff35,
    0x3ffffffffffffeef, 0x3ffffffffffffee1, 0x3ffffffffffffec3,
    0x3ffffffffffffe45, 0x3ffffffffffffe1d, 0x3ffffffffffffe11,
    0x3ffffffffffffdc1, 0x3ffffffffffffdbb, 0x3ffffffffffffda5,
    0x3ffffffffffffd87, 0x3ffffffffffffd69, 0x3ffffffffffffd03,
    0x3ffffffffffffcfb, 0x3ffffffffffffcf7, 0x3ffffffffffffce9,
    0x3ffffffffffffcd3, 0x3ffffffffffffcc1, 0x3ffffffffffffc65,
    0x3ffffffffffffc2b, 0x3ffffffffffffc1f, 0x3ffffffffffffc17,
    0x3ffffffffffffc11, 0x3ffffffffffffc07, 0x3ffffffffffffb53,
    0x3ffffffffffffb27, 0x3ffffffffffffaf3, 0x3ffffffffffffab7,
    0x3ffffffffffffa67, 0x3ffffffffffffa15, 0x3ffffffffffff9ef,
    0x3ffffffffffff9d9, 0x3ffffffffffff9d3, 0x3ffffffffffff9c5,
    0x3ffffffffffff9af, 0x3ffffffffffff977, 0x3ffffffffffff95f,
    0x3ffffffffffff95b, 0x3ffffffffffff959, 0x3ffffffffffff8e1,
    0x3ffffffffffff8a7, 0x3ffffffffffff889, 0x3ffffffffffff87d,
    0x3ffffffffffff805, 0x3ffffffffffff7e7, 0x3ffffffffffff7c9,
    0x3ffffffffffff7a3, 0x3ffffffffffff775, 0x3ffffffffffff757,
    0x3ffffffffffff739, 0x3ffffffffffff713, 0x3ffffffffffff6d1,
    0x3ffffffffffff6c1, 0x3ffffffffffff6b9, 0x3ffffffffffff6a3,
    0x3ffffffffffff68b, 0x3ffffffffffff631, 0x3ffffffffffff613,
    0x3ffffffffffff5e9, 0x3ffffffffffff59b, 0x3ffffffffffff58d,
    0x3ffffffffffff53f, 0x3ffffffffffff527, 0x3ffffffffffff517,
    0x3ffffffffffff4d3, 0x3ffffffffffff4b5, 0x3ffffffffffff491,
    0x3ffffffffffff431, 0x3ffffffffffff41f, 0x3ffffffffffff36b,
    0x3ffffffffffff34d, 0x3ffffffffffff349, 0x3ffffffffffff347,
    0x3ffffffffffff341, 0x3ffffffffffff30b, 0x3ffffffffffff2cf,
    0x3ffffffffffff23f, 0x3ffffffffffff22f, 0x3ffffffffffff227,
    0x3ffffffffffff221, 0x3ffffffffffff215, 0x3ffffffffffff1a9,
    0x3ffffffffffff187, 0x3ffffffffffff149, 0x3ffffffffffff12b,
    0x3ffffffffffff125, 0x3ffffffffffff0df, 0x3ffffffffffff0a3,
];

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn reduce_int(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

pub fn from_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// r mod p; `None` when p divides the denominator.
pub fn reduce(r: &Rational, p: u64) -> Option<u64> {
    let d = reduce_int(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(r.numer(), p), inv(d, p), p))
}

pub fn reduce_poly(q: &Poly<Rational>, p: u64) -> Option<Vec<u64>> {
    q.coeffs().iter().map(|c| reduce(c, p)).collect()
}

pub fn eval(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, v| add(mul(acc, x, p), *v, p))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let iv = inv(rows[r][c], p);
        for v in rows[r][c..].iter_mut() {
            *v = mul(*v, iv, p);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if *pv != 0 {
                    *v = sub(*v, mul(f, *pv, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Nullspace basis from an RREF: one vector per free column, in column order.
pub fn nullspace(rows: &[Vec<u64>], pivots: &[usize], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, rows[i][f], p);
            }
            v
        })
        .collect()
}

/// Incremental CRT: combine x mod m with r mod p.
pub fn crt(x: &BigUint, m: &BigUint, r: u64, p: u64) -> BigUint {
    let xp = (x % p).to_u64().expect("fits");
    let mp = (m % p).to_u64().expect("fits");
    let t = mul(sub(r, xp, p), inv(mp, p), p);
    x + m * BigUint::from(t)
}

/// n/d with |n|, d <= sqrt(m/2) and n = d u mod m, if it exists.
pub fn rational_reconstruct(u: &BigUint, m: &BigUint) -> Option<Rational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (BigInt::from(m.clone()), BigInt::from(u.clone()));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    let bound = BigInt::from(bound);
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    /// Miller–Rabin with the first twelve prime bases, deterministic below 3.3e24.
    fn is_prime(p: u64) -> bool {
        let (mut d, mut s) = (p - 1, 0);
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37].iter().all(|&a| {
            let mut x = pow(a, d, p);
            if x == 1 || x == p - 1 {
                return true;
            }
            for _ in 1..s {
                x = mul(x, x, p);
                if x == p - 1 {
                    return true;
                }
            }
            false
        })
    }

    #[test]
    fn table_is_prime() {
        assert!(PRIMES.iter().all(|&p| is_prime(p)));
        assert!(!is_prime(3215031751) && !is_prime((1 << 61) + 1));
        assert!(PRIMES.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn reconstruct_after_crt() {
        let v = frac(-123_456_789, 987_654_321_987);
        let (mut x, mut m) = (BigUint::zero(), BigUint::one());
        for &p in &PRIMES[..3] {
            x = crt(&x, &m, reduce(&v, p).unwrap(), p);
            m *= BigUint::from(p);
        }
        assert_eq!(rational_reconstruct(&x, &m), Some(v));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let p = PRIMES[0];
        let mut rows = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let piv = rref(&mut rows, 3, p);
        assert_eq!(piv, vec![0]);
        let ns = nullspace(&rows, &piv, 3, p);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(add(v[0], add(mul(2, v[1], p), mul(3, v[2], p), p), p), 0);
        }
    }
}

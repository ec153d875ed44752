//! Dense exact-rational vectors and matrices.
//!
//! Everything here is deterministic: Gaussian elimination pivots on the
//! first nonzero entry, and canonical bases come out of reduced row echelon
//! form so repeated runs produce identical output.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::num::Q;

pub type Vector = Vec<Q>;
pub type Matrix = Vec<Vec<Q>>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Q::is_zero)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Q]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(t: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| t * x).collect()
}

/// a + t * b
pub fn vec_axpy(a: &[Q], t: &Q, b: &[Q]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + &(t * y)).collect()
}

pub fn mat_vec(m: &[Vec<Q>], x: &[Q]) -> Vector {
    m.iter().map(|row| dot(row, x)).collect()
}

pub fn transpose(m: &[Vec<Q>], cols: usize) -> Matrix {
    let mut out = vec![zero_vec(m.len()); cols];
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.clone();
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    let mut m = vec![zero_vec(n); n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn lex_cmp(a: &[Q], b: &[Q]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Scales a nonzero rational vector to the unique coprime-integer
/// representative with the same orientation. Zero vectors pass through.
pub fn primitive(v: &[Q]) -> Vector {
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|n| Q::from_bigint(n / &gcd))
        .collect()
}

/// The positive factor `t` with `t * v = primitive(v)`, as applied by
/// [`primitive`]; used to rescale attached right-hand sides consistently.
pub fn primitive_scale(v: &[Q]) -> Q {
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut gcd = BigInt::zero();
    for x in v {
        if !x.is_zero() {
            gcd = gcd.gcd(&(x.numer() * (&lcm / x.denom())));
        }
    }
    if gcd.is_zero() {
        Q::one()
    } else {
        Q::from_bigint(lcm) / Q::from_bigint(gcd)
    }
}

/// Reduced row echelon form. Returns the echelon matrix together with the
/// pivot column of each nonzero row; zero rows are dropped.
pub fn rref(rows: &[Vec<Q>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    rref(rows).1.len()
}

/// Canonical basis of `{x : rows * x = 0}` in dimension `dim`, one basis
/// vector per free column of the echelon form.
pub fn nullspace(rows: &[Vec<Q>], dim: usize) -> Matrix {
    if rows.is_empty() {
        return identity(dim);
    }
    debug_assert!(rows.iter().all(|r| r.len() == dim));
    let (m, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = zero_vec(dim);
        v[free] = Q::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(primitive(&v));
    }
    basis
}

/// Canonical row-space basis: the nonzero rows of the echelon form.
pub fn rowspace(rows: &[Vec<Q>]) -> Matrix {
    rref(rows).0.into_iter().map(|r| primitive(&r)).collect()
}

/// Solves the square system `a * x = b` by Gaussian elimination.
/// Returns `None` when `a` is singular.
pub fn solve_square(a: &[Vec<Q>], b: &[Q]) -> Option<Vector> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, pr);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = &f * &m[c][j];
                    m[i][j] -= &t;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn qv(vals: &[i64]) -> Vector {
        vals.iter().map(|&n| Q::from_int(n)).collect()
    }

    #[test]
    fn primitive_normalization() {
        assert_eq!(primitive(&[q(1, 2), q(1, 3)]), qv(&[3, 2]));
        assert_eq!(primitive(&[q(-4, 1), q(6, 1)]), qv(&[-2, 3]));
        assert_eq!(primitive(&[Q::zero(), Q::zero()]), qv(&[0, 0]));
        let v = [q(-3, 4), q(5, 6)];
        let s = primitive_scale(&v);
        assert_eq!(vec_scale(&s, &v), primitive(&v));
    }

    #[test]
    fn nullspace_of_plane() {
        // x + y + z = 0 in dim 3 has a 2-dimensional null space.
        let basis = nullspace(&[qv(&[1, 1, 1])], 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(dot(&qv(&[1, 1, 1]), v).is_zero());
        }
    }

    #[test]
    fn solve_small_system() {
        let a = vec![qv(&[2, 1]), qv(&[1, -1])];
        let x = solve_square(&a, &qv(&[3, 0])).unwrap();
        assert_eq!(x, vec![Q::one(), Q::one()]);
        let singular = vec![qv(&[1, 2]), qv(&[2, 4])];
        assert!(solve_square(&singular, &qv(&[1, 2])).is_none());
    }

    #[test]
    fn rref_detects_rank() {
        assert_eq!(rank(&[qv(&[1, 2]), qv(&[2, 4]), qv(&[0, 1])]), 2);
        assert_eq!(rank(&[qv(&[0, 0])]), 0);
    }
}

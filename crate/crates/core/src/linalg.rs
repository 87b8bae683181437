//! Small dense exact linear algebra: determinants, rank, kernels and solves.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// Sign of the determinant of a square matrix.
///
/// Rows are cleared of denominators by positive factors and the integer
/// matrix is reduced with fraction-free Bareiss elimination.
pub fn det_sign(rows: &[Vec<Rational>]) -> i8 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), n);
            let l = common_denominator(r);
            r.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    let d = bareiss(&mut m);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact determinant.
pub fn det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = common_denominator(r);
            let row = r.iter().map(|x| (x * &l).to_integer()).collect();
            scale *= l;
            row
        })
        .collect();
    let d = bareiss(&mut m);
    Rational::new(d, scale)
}

/// Integer determinant by Bareiss elimination; destroys `m`.
pub fn bareiss(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn transpose(m: &[Vec<Rational>]) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        // 2*(3-2) - 0 + 1*(1-3) = 0
        assert_eq!(det(&a), int(0));
        assert_eq!(det_sign(&a), 0);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&b), int(-1));
        let c = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]];
        assert_eq!(det(&c), rat(1, 10) - rat(1, 12));
        assert_eq!(det_sign(&c), 1);
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 1, 1], &[0, 1, 2]]);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            assert_eq!(dot(row, &k[0]), int(0));
        }
        let s = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&s, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inv = inverse(&s).unwrap();
        assert_eq!(inv[0][0], rat(3, 5));
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(1)]).is_none());
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }
}

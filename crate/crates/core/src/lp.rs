//! Exact linear programming.
//!
//! A revised simplex method with an explicit basis inverse over rationals and
//! Bland's anti-cycling rule. Every strict feasibility question in the crate
//! (regularity, visibility, contraction charts, shared witnesses) reduces to
//! Gordan's alternative, which is answered by a single phase-one solve.

use num_traits::{One, Signed, Zero};

use crate::linalg::dot;
use crate::rational::{primitive_integer_vector, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum PhaseOne {
    /// `x >= 0` with `A x = b`.
    Feasible(Vec<Rational>),
    /// `pi` with `pi . A_j <= 0` for every column and `pi . b > 0`.
    Infeasible(Vec<Rational>),
}

/// Decides `{x >= 0 : A x = b}` where `A` is given column by column.
pub fn phase_one(columns: &[Vec<Rational>], b: &[Rational]) -> PhaseOne {
    let m = b.len();
    let n = columns.len();
    // Row signs making the right hand side nonnegative.
    let flip: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
    let col = |j: usize| -> Vec<Rational> {
        if j < n {
            columns[j]
                .iter()
                .zip(&flip)
                .map(|(a, &f)| if f { -a.clone() } else { a.clone() })
                .collect()
        } else {
            let mut e = vec![Rational::zero(); m];
            e[j - n] = Rational::one();
            e
        }
    };
    let cost = |j: usize| -> Rational {
        if j < n {
            Rational::zero()
        } else {
            Rational::one()
        }
    };

    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut binv: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|k| if i == k { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let mut xb: Vec<Rational> = b.iter().map(|x| x.abs()).collect();
    let mut in_basis = vec![false; n + m];
    for &j in &basis {
        in_basis[j] = true;
    }
    let mut left_artificial = vec![false; m];

    loop {
        let pi: Vec<Rational> = (0..m)
            .map(|k| {
                (0..m)
                    .filter(|&i| basis[i] >= n)
                    .map(|i| &binv[i][k] * cost(basis[i]))
                    .sum()
            })
            .collect();
        // Bland: lowest index with negative reduced cost.
        let entering = (0..n + m).find(|&j| {
            if in_basis[j] || (j >= n && left_artificial[j - n]) {
                return false;
            }
            let d = cost(j) - dot(&pi, &col(j));
            d.is_negative()
        });
        let Some(j) = entering else {
            let value: Rational = (0..m)
                .filter(|&i| basis[i] >= n)
                .map(|i| xb[i].clone())
                .sum();
            if value.is_positive() {
                let farkas = pi
                    .into_iter()
                    .zip(&flip)
                    .map(|(p, &f)| if f { -p } else { p })
                    .collect();
                return PhaseOne::Infeasible(farkas);
            }
            let mut x = vec![Rational::zero(); n];
            for (i, &bj) in basis.iter().enumerate() {
                if bj < n {
                    x[bj] = xb[i].clone();
                }
            }
            return PhaseOne::Feasible(x);
        };
        let a = col(j);
        let u: Vec<Rational> = binv.iter().map(|row| dot(row, &a)).collect();
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !u[i].is_positive() {
                continue;
            }
            let ratio = &xb[i] / &u[i];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below, so a blocking row always exists.
        let (r, _) = leave.expect("phase one objective is bounded");
        let piv = u[r].clone();
        for x in binv[r].iter_mut() {
            *x /= &piv;
        }
        xb[r] = &xb[r] / &piv;
        for i in 0..m {
            if i == r || u[i].is_zero() {
                continue;
            }
            let f = u[i].clone();
            for k in 0..m {
                let v = &binv[r][k] * &f;
                binv[i][k] -= v;
            }
            let v = &xb[r] * &f;
            xb[i] -= v;
        }
        let old = basis[r];
        in_basis[old] = false;
        if old >= n {
            left_artificial[old - n] = true;
        }
        basis[r] = j;
        in_basis[j] = true;
    }
}

/// Outcome of Gordan's alternative for a system of rows `G`.
#[derive(Debug, Clone, PartialEq)]
pub enum Gordan {
    /// `x` with `g . x > 0` for every row `g`.
    Strict(Vec<Rational>),
    /// `y >= 0`, summing to one, with `sum_i y_i g_i = 0`.
    Certificate(Vec<Rational>),
}

/// Exactly one of `G x > 0` or `y^T G = 0, y >= 0, y != 0` is solvable.
pub fn gordan(rows: &[Vec<Rational>], dim: usize) -> Gordan {
    if rows.is_empty() {
        return Gordan::Strict(vec![Rational::zero(); dim]);
    }
    // Positive row scaling does not change either side of the alternative.
    let scaled: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            primitive_integer_vector(r)
                .into_iter()
                .map(Rational::from_integer)
                .collect()
        })
        .collect();
    let columns: Vec<Vec<Rational>> = scaled
        .iter()
        .map(|g| {
            let mut c = g.clone();
            c.push(Rational::one());
            c
        })
        .collect();
    let mut b = vec![Rational::zero(); dim + 1];
    b[dim] = Rational::one();
    match phase_one(&columns, &b) {
        PhaseOne::Feasible(y) => {
            // Undo the scaling: y'_i g'_i = (y'_i c_i) g_i.
            let mut y: Vec<Rational> = y
                .into_iter()
                .zip(rows.iter().zip(&scaled))
                .map(|(yi, (orig, sc))| {
                    if yi.is_zero() {
                        return yi;
                    }
                    let k = orig
                        .iter()
                        .zip(sc)
                        .find(|(o, _)| !o.is_zero())
                        .map(|(o, s)| s / o)
                        .unwrap_or_else(Rational::one);
                    yi * k
                })
                .collect();
            let total: Rational = y.iter().sum();
            for v in y.iter_mut() {
                *v /= &total;
            }
            Gordan::Certificate(y)
        }
        PhaseOne::Infeasible(pi) => {
            let x: Vec<Rational> = pi[..dim].iter().map(|v| -v.clone()).collect();
            debug_assert!(rows.iter().all(|g| dot(g, &x).is_positive()));
            Gordan::Strict(x)
        }
    }
}

/// Solution of `G x > 0`, if one exists.
pub fn strict_solution(rows: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    match gordan(rows, dim) {
        Gordan::Strict(x) => Some(x),
        Gordan::Certificate(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn phase_one_finds_feasible_point() {
        // x1 + x2 = 2, x1 - x2 = 1  ->  x = (3/2, 1/2)
        let cols = vec![v(&[1, 1]), v(&[1, -1])];
        match phase_one(&cols, &v(&[2, 1])) {
            PhaseOne::Feasible(x) => assert_eq!(x, vec![rat(3, 2), rat(1, 2)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phase_one_reports_farkas_vector() {
        // x1 + x2 = -1 with x >= 0 is infeasible.
        let cols = vec![v(&[1]), v(&[1])];
        let b = v(&[-1]);
        match phase_one(&cols, &b) {
            PhaseOne::Infeasible(pi) => {
                for c in &cols {
                    assert!(!dot(&pi, c).is_positive());
                }
                assert!(dot(&pi, &b).is_positive());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gordan_alternatives() {
        // x > 0 and y > 0 has a strict solution.
        let rows = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let Gordan::Strict(x) = gordan(&rows, 2) else { panic!() };
        assert!(rows.iter().all(|g| dot(g, &x).is_positive()));
        // x > 0 and -x > 0 is impossible.
        let rows = vec![v(&[1, 0]), v(&[-2, 0])];
        let Gordan::Certificate(y) = gordan(&rows, 2) else { panic!() };
        assert_eq!(y.iter().sum::<Rational>(), int(1));
        let combo: Vec<Rational> = (0..2)
            .map(|k| rows.iter().zip(&y).map(|(g, yi)| &g[k] * yi).sum())
            .collect();
        assert_eq!(combo, v(&[0, 0]));
    }
}

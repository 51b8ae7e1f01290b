//! Exact linear algebra over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

/// Integer row-echelon form produced by Bareiss elimination, together with
/// the pivot columns in order.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn integer_rows(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            let l = rational::lcm_denominators(r.iter());
            r.iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|c| !c.is_zero()))
        .collect()
}

fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            if a[i][col].is_zero() {
                // the update still has to rescale the row to keep divisions exact
                for j in col + 1..ncols {
                    if !a[i][j].is_zero() {
                        a[i][j] = &a[r][col] * &a[i][j] / &prev;
                    }
                }
                continue;
            }
            for j in col + 1..ncols {
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = rational::lcm_denominators(v.iter());
    let ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect()
}

/// Basis of `{v : A v = 0}` for the matrix with the given rows and `ncols`
/// columns. One vector per non-pivot column, each primitive with positive
/// leading entry.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = bareiss(integer_rows(rows, ncols), ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (k, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[k];
            let mut s = Rational::zero();
            for j in pc + 1..ncols {
                if !row[j].is_zero() && !v[j].is_zero() {
                    s += Rational::from_integer(row[j].clone()) * &v[j];
                }
            }
            v[pc] = -s / Rational::from_integer(row[pc].clone());
        }
        basis.push(primitive(&v));
    }
    basis
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    bareiss(integer_rows(rows, ncols), ncols).pivots.len()
}

/// Some solution of `A v = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len(), "row count mismatch");
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let ech = bareiss(integer_rows(&augmented, ncols + 1), ncols + 1);
    if ech.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut v = vec![Rational::zero(); ncols];
    for (k, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[k];
        let mut s = Rational::from_integer(row[ncols].clone());
        for j in pc + 1..ncols {
            if !row[j].is_zero() && !v[j].is_zero() {
                s -= Rational::from_integer(row[j].clone()) * &v[j];
            }
        }
        v[pc] = s / Rational::from_integer(row[pc].clone());
    }
    Some(v)
}

/// Matrix-vector product, used for verification.
pub fn mat_vec(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect()
    }

    fn v(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn small_nullspaces() {
        assert_eq!(nullspace(&m(&[&[1, 1]]), 2), vec![v(&[1, -1])]);
        assert!(nullspace(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3).is_empty());
        assert_eq!(nullspace(&m(&[&[1, 2], &[2, 4]]), 2), vec![v(&[2, -1])]);
        assert_eq!(nullspace(&[], 2), vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn zero_column_in_the_middle() {
        let a = m(&[&[0, 1, 0, 2], &[0, 0, 0, 3], &[1, 0, 0, 0]]);
        let n = nullspace(&a, 4);
        assert_eq!(n, vec![v(&[0, 0, 1, 0])]);
        assert_eq!(rank(&a, 4), 3);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &v(&[3, 4]), 2).unwrap();
        assert_eq!(x, v(&[1, 1]));
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &v(&[1, 3]), 2).is_none());
        let x = solve(&a, &v(&[1, 2]), 2).unwrap();
        assert_eq!(mat_vec(&a, &x), v(&[1, 2]));
    }

    #[test]
    fn fractions_are_cleared() {
        let a = vec![vec![rational::frac(1, 2), rational::frac(1, 3)]];
        assert_eq!(nullspace(&a, 2), vec![v(&[2, -3])]);
    }
}

//! Integer solutions of `A x = b` by unimodular column reduction.
//!
//! `A` is brought to column echelon form `H = A U` with `U` unimodular
//! (extended-gcd column operations, as in a column Hermite reduction). The
//! triangular system `H y = b` is then solved by forward substitution with
//! exact-divisibility checks, and `x = U y`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

type Matrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Replaces columns `(i, j)` of `m` by `(s c_i + t c_j, u c_i + v c_j)`.
fn combine_columns(m: &mut Matrix, i: usize, j: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
    for row in m.iter_mut() {
        let (a, b) = (row[i].clone(), row[j].clone());
        row[i] = s * &a + t * &b;
        row[j] = u * &a + v * &b;
    }
}

fn swap_columns(m: &mut Matrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Some integer solution of `a x = b`, or `None` if there is none.
///
/// `a` has `m` rows of equal length `n`; `b` has length `m`.
pub fn solve_integer_system(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    let mut h: Matrix = a.to_vec();
    let mut u = identity(n);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut col = 0;
    for r in 0..h.len() {
        if col == n {
            break;
        }
        for j in col + 1..n {
            if h[r][j].is_zero() {
                continue;
            }
            if h[r][col].is_zero() {
                swap_columns(&mut h, col, j);
                swap_columns(&mut u, col, j);
                continue;
            }
            let (x, y) = (h[r][col].clone(), h[r][j].clone());
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            // [[s, -y/g], [t, x/g]] has determinant (s x + t y) / g = 1
            let (uu, vv) = (-(&y / &g), &x / &g);
            combine_columns(&mut h, col, j, &s, &t, &uu, &vv);
            combine_columns(&mut u, col, j, &s, &t, &uu, &vv);
        }
        if !h[r][col].is_zero() {
            pivots.push((r, col));
            col += 1;
        }
    }

    let mut y = vec![BigInt::zero(); n];
    for &(r, c) in &pivots {
        let partial: BigInt = (0..c).map(|j| &h[r][j] * &y[j]).sum();
        let residual = &b[r] - partial;
        let (q, rem) = residual.div_rem(&h[r][c]);
        if !rem.is_zero() {
            return None;
        }
        y[c] = q;
    }
    for (row, rhs) in h.iter().zip(b) {
        let lhs: BigInt = row.iter().zip(&y).map(|(a, b)| a * b).sum();
        if &lhs != rhs {
            return None;
        }
    }
    Some(u.iter().map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum()).collect())
}

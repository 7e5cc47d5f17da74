//! Hermite and Smith normal forms over ℤ.
//!
//! Both routines use the "smallest remainder first" Euclidean strategy: the
//! entry of least absolute value in the working column is brought to the pivot
//! position and the others are reduced against it until only one survives.
//! This keeps intermediate growth modest for the matrix sizes this crate
//! meets (a few hundred columns, a handful of rows after saturation).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{abs_lt, axpy_neg, negate_row, IntMatrix};

/// Row-style Hermite normal form.
///
/// The result spans the same row lattice as `m`, has strictly increasing pivot
/// columns, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, and no zero rows. Two matrices have the same row span if and
/// only if their Hermite forms are identical.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let cols = m.ncols();
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let n = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        if !bring_gcd_to_pivot(&mut a, r, c) {
            continue;
        }
        if a[r][c].is_negative() {
            negate_row(&mut a[r]);
        }
        let pivot_row = a[r].clone();
        for row in a.iter_mut().take(r) {
            if !row[c].is_zero() {
                let q = row[c].div_floor(&pivot_row[c]);
                axpy_neg(row, &q, &pivot_row, c);
            }
        }
        r += 1;
    }
    a.truncate(r);
    IntMatrix::from_rows(cols, a).expect("rows keep their length")
}

/// Euclid on column `c` among rows `r..`; afterwards `a[r][c]` holds a gcd of
/// the column and every row below has a zero there. Returns false if the
/// column was already zero below `r`.
fn bring_gcd_to_pivot(a: &mut [Vec<BigInt>], r: usize, c: usize) -> bool {
    loop {
        let mut best: Option<usize> = None;
        for i in r..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            match best {
                Some(b) if !abs_lt(&a[i][c], &a[b][c]) => {}
                _ => best = Some(i),
            }
        }
        let Some(b) = best else { return false };
        a.swap(r, b);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let mut finished = true;
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let q = row[c].div_floor(&pivot_row[c]);
            axpy_neg(row, &q, pivot_row, c);
            if !row[c].is_zero() {
                finished = false;
            }
        }
        if finished {
            return true;
        }
    }
}

/// Smith normal form together with unimodular transforms.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries `d_1 | d_2 | …`, nonnegative, of length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    /// Row transform: `u · m · v = diag`.
    pub u: IntMatrix,
    /// Column transform.
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries; the rank of the input.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form of an integer matrix, with transforms.
pub fn smith(m: &IntMatrix) -> Smith {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a = m.to_rows();
    let mut u = IntMatrix::identity(rows).to_rows();
    // Columns of v are tracked as rows of v^T, so column operations on `a`
    // become cheap row operations here.
    let mut vt = IntMatrix::identity(cols).to_rows();
    let steps = rows.min(cols);

    for t in 0..steps {
        // Find the smallest nonzero entry in the remaining block.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if !abs_lt(x, &a[bi][bj]) => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((bi, bj)) = best else {
                // The remaining block is zero.
                return finish(a, u, vt, rows, cols, steps);
            };
            a.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut a, t, bj);
            vt.swap(t, bj);

            let mut clean = true;
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                axpy_neg(&mut tail[0], &q, &head[t], 0);
                let (uh, ut) = u.split_at_mut(i);
                axpy_neg(&mut ut[0], &q, &uh[t], 0);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let s = row[t].clone();
                    if !s.is_zero() {
                        row[j] -= &q * s;
                    }
                }
                let (vh, vtl) = vt.split_at_mut(j);
                axpy_neg(&mut vtl[0], &q, &vh[t], 0);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: the pivot must divide the rest of the block.
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    let src = tail[0].clone();
                    for (d, s) in head[t].iter_mut().zip(&src) {
                        *d += s;
                    }
                    let (uh, ut) = u.split_at_mut(i);
                    let src = ut[0].clone();
                    for (d, s) in uh[t].iter_mut().zip(&src) {
                        *d += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a[t]);
            negate_row(&mut u[t]);
        }
    }
    finish(a, u, vt, rows, cols, steps)
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn finish(
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    vt: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    steps: usize,
) -> Smith {
    let diagonal = (0..steps).map(|t| a[t][t].clone()).collect::<Vec<_>>();
    let u = IntMatrix::from_rows(rows, u).expect("square transform");
    let v = IntMatrix::from_rows(cols, vt).expect("square transform").transpose();
    Smith { diagonal, u, v }
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_small_upper_triangular_example() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[0, 1]]);
        assert_eq!(hnf(&m), IntMatrix::from_i64(&[&[2, 0], &[0, 1]]));
    }

    #[test]
    fn hnf_of_identity_is_identity() {
        assert_eq!(hnf(&IntMatrix::identity(4)), IntMatrix::identity(4));
    }

    #[test]
    fn hnf_of_zero_matrix_has_no_rows() {
        let h = hnf(&IntMatrix::zeros(2, 2));
        assert_eq!(h.nrows(), 0);
        assert_eq!(h.ncols(), 2);
    }

    #[test]
    fn smith_of_a_classic_example() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&m);
        let expect: Vec<BigInt> = [2, 6, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.diagonal, expect);
        let d = s.u.mul(&m).unwrap().mul(&s.v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { expect[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &want);
            }
        }
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_i64(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]);
        assert_eq!(determinant(&m), BigInt::from(-3));
    }
}

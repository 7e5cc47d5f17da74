//! Rational solving and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactIntError, IntMatrix};

/// The unique rational solution `c` of `c · basis = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub coeffs: Vec<BigRational>,
    /// True when every coefficient is an integer.
    pub integral: bool,
}

impl Solution {
    /// The coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.integral {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.to_integer()).collect())
    }
}

/// Solves `c · basis = target` over ℚ.
///
/// The rows of `basis` must be linearly independent. Returns
/// [`ExactIntError::NoSolution`] when `target` is outside their rational span.
pub fn solve_integral(basis: &IntMatrix, target: &[BigInt]) -> Result<Solution, ExactIntError> {
    let r = basis.nrows();
    let n = basis.ncols();
    if target.len() != n {
        return Err(ExactIntError::DimensionMismatch {
            left: (1, target.len()),
            right: (r, n),
        });
    }
    // Equations are the columns: sum_i c_i basis[i][j] = target[j].
    let mut eq: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..r).map(|i| BigRational::from(basis.get(i, j).clone())).collect();
            row.push(BigRational::from(target[j].clone()));
            row
        })
        .collect();

    let mut pivot_cols = Vec::with_capacity(r);
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..n).find(|&i| !eq[i][col].is_zero()) else {
            return Err(ExactIntError::DependentRows);
        };
        eq.swap(row, p);
        let inv = eq[row][col].recip();
        for x in eq[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = eq[row].clone();
        for (i, other) in eq.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, y) in other.iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if eq[row..].iter().any(|e| !e[r].is_zero()) {
        return Err(ExactIntError::NoSolution);
    }
    let coeffs: Vec<BigRational> = (0..r).map(|i| eq[i][r].clone()).collect();
    let integral = coeffs.iter().all(|c| c.is_integer());
    Ok(Solution { coeffs, integral })
}

/// Finds `num/den` congruent to `a` modulo `m` with `|num|, den ≤ sqrt(m/2)`.
///
/// Such a fraction is unique when it exists. Returns `None` otherwise.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let a = a.mod_floor(m);
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if !num.gcd(&den).is_one() {
        return None;
    }
    Some((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn integral_solution_in_the_gamma_two_lattice() {
        let basis = IntMatrix::from_i64(&[&[8, 0], &[4, 2]]);
        let sol = solve_integral(&basis, &ints(&[4, 2])).unwrap();
        assert!(sol.integral);
        assert_eq!(sol.integer_coeffs().unwrap(), ints(&[0, 1]));
    }

    #[test]
    fn half_integral_solution_is_flagged() {
        let basis = IntMatrix::from_i64(&[&[8, 0], &[8, 4]]);
        let sol = solve_integral(&basis, &ints(&[4, 2])).unwrap();
        assert!(!sol.integral);
        assert_eq!(sol.coeffs[0], BigRational::zero());
        assert_eq!(sol.coeffs[1], BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn identity_basis_returns_target() {
        let sol = solve_integral(&IntMatrix::identity(3), &ints(&[5, -7, 0])).unwrap();
        assert_eq!(sol.integer_coeffs().unwrap(), ints(&[5, -7, 0]));
    }

    #[test]
    fn target_outside_span_is_an_error() {
        let basis = IntMatrix::from_i64(&[&[1, 0, 0]]);
        assert_eq!(solve_integral(&basis, &ints(&[0, 1, 0])), Err(ExactIntError::NoSolution));
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        for (n, d) in [(3i64, 7i64), (-22, 5), (0, 1), (1, 1), (-1, 12345)] {
            let inv = BigInt::from(d).modinv(&m).unwrap();
            let a = (BigInt::from(n) * inv).mod_floor(&m);
            assert_eq!(rational_reconstruction(&a, &m), Some((n.into(), d.into())));
        }
    }
}

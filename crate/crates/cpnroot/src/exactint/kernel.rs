//! Integer left kernels by multimodular elimination.
//!
//! For a matrix `A` with `r` rows we want the saturated lattice
//! `{v ∈ ℤ^r : v·A = 0}`. The rational kernel is found from reduced row
//! echelon forms of `Aᵀ` modulo several 62-bit primes, glued by the Chinese
//! remainder theorem and rational reconstruction. Every candidate is checked
//! exactly over ℤ before it is accepted, so an unlucky prime can cost time but
//! never correctness. Saturation then picks out the integer points of the
//! rational kernel.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::lattice::Lattice;
use super::matrix::IntMatrix;
use super::modular::{big_prime, inv_mod, two64, Limbs, Shoup};
use super::normal_form::hnf;
use super::rational::rational_reconstruction;

/// Echelon data of `Aᵀ mod p`: pivot columns and, for each pivot row, the
/// entries in the free columns.
struct ModEchelon {
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// `entries[i][f]` is the reduced entry of pivot row `i` in free column `free[f]`.
    entries: Vec<Vec<u64>>,
}

fn echelon_mod(at: &[Vec<Limbs>], ncols: usize, p: u64) -> ModEchelon {
    let two = two64(p);
    let mut rows: Vec<Vec<u64>> = at
        .iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .map(|row| row.iter().map(|x| x.reduce(p, two)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = Shoup::new(inv_mod(rows[r][c], p), p);
        for x in rows[r][c..].iter_mut() {
            *x = inv.mul(*x, p);
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row exists");
        for other in head.iter_mut().chain(below.iter_mut()) {
            let f = other[c];
            if f == 0 {
                continue;
            }
            let neg = Shoup::new(p - f, p);
            for (x, &y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    let t = *x + neg.mul(y, p);
                    *x = if t >= p { t - p } else { t };
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let entries = (0..pivots.len())
        .map(|i| free.iter().map(|&f| rows[i][f]).collect())
        .collect();
    ModEchelon { pivots, free, entries }
}

/// Incrementally CRT-combined residues of the echelon entries.
struct Accumulator {
    pivots: Vec<usize>,
    free: Vec<usize>,
    modulus: BigInt,
    values: Vec<Vec<BigInt>>,
}

impl Accumulator {
    fn start(e: ModEchelon, p: u64) -> Self {
        Accumulator {
            pivots: e.pivots,
            free: e.free,
            modulus: BigInt::from(p),
            values: e
                .entries
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect(),
        }
    }

    fn absorb(&mut self, e: ModEchelon, p: u64) {
        let pb = BigInt::from(p);
        let m_mod_p = u64::try_from(&self.modulus % &pb).expect("residue fits");
        let m_inv = inv_mod(m_mod_p, p);
        for (vals, residues) in self.values.iter_mut().zip(e.entries) {
            for (v, r) in vals.iter_mut().zip(residues) {
                let v_mod = u64::try_from(&*v % &pb).expect("residue fits");
                let diff = (r + p - v_mod) % p;
                let t = super::modular::mul_mod(diff, m_inv, p);
                if t != 0 {
                    *v += &self.modulus * t;
                }
            }
        }
        self.modulus *= pb;
    }

    /// Rational reconstruction of all entries; `None` at the first failure.
    fn reconstruct(&self) -> Option<Vec<Vec<(BigInt, BigInt)>>> {
        self.values
            .iter()
            .map(|row| row.iter().map(|v| rational_reconstruction(v, &self.modulus)).collect())
            .collect()
    }
}

/// Left kernel of `m` as a saturated lattice in `ℤ^{m.nrows()}`.
pub fn kernel_lattice(m: &IntMatrix) -> Lattice {
    let r = m.nrows();
    let c = m.ncols();
    if r == 0 {
        return Lattice::zero(0);
    }
    if m.is_zero() {
        return Lattice::full(r);
    }
    // Aᵀ in limb form, built once and reused for every prime.
    let at: Vec<Vec<Limbs>> = (0..c).map(|j| (0..r).map(|i| Limbs::new(m.get(i, j))).collect()).collect();

    let mut acc: Option<Accumulator> = None;
    let mut prime_index = 0;
    loop {
        let p = big_prime(prime_index);
        prime_index += 1;
        let e = echelon_mod(&at, r, p);
        if e.free.is_empty() {
            // Full rank modulo p forces full rank over ℚ.
            return Lattice::zero(r);
        }
        match &mut acc {
            None => acc = Some(Accumulator::start(e, p)),
            Some(a) => {
                let better = e.pivots.len() > a.pivots.len()
                    || (e.pivots.len() == a.pivots.len() && e.pivots < a.pivots);
                if better {
                    // Every prime used so far was unlucky.
                    acc = Some(Accumulator::start(e, p));
                } else if e.pivots == a.pivots {
                    a.absorb(e, p);
                } else {
                    continue;
                }
            }
        }
        let a = acc.as_ref().expect("accumulator initialised");
        if let Some(fracs) = a.reconstruct() {
            if let Some(basis) = rational_basis(a, &fracs, r) {
                if verify(m, &basis.0) {
                    return saturate(basis.0, &basis.1);
                }
            }
        }
    }
}

/// Integer rows `numerators / denominator` spanning the rational kernel. Row
/// `f` is the kernel vector with a one in free column `free[f]`.
fn rational_basis(a: &Accumulator, fracs: &[Vec<(BigInt, BigInt)>], r: usize) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let mut den = BigInt::one();
    for row in fracs {
        for (_, d) in row {
            den = den.lcm(d);
        }
    }
    let mut rows = vec![vec![BigInt::zero(); r]; a.free.len()];
    for (f, &fc) in a.free.iter().enumerate() {
        rows[f][fc] = den.clone();
        for (i, &pc) in a.pivots.iter().enumerate() {
            let (n, d) = &fracs[i][f];
            rows[f][pc] = -(n * (&den / d));
        }
    }
    Some((rows, den))
}

fn verify(m: &IntMatrix, rows: &[Vec<BigInt>]) -> bool {
    rows.iter()
        .all(|v| m.left_mul_vec(v).map(|w| w.iter().all(Zero::is_zero)).unwrap_or(false))
}

/// Integer points of the rational span of `rows / den`, where each row has
/// `den` in its own free coordinate and zero in the other free coordinates.
///
/// An integer kernel vector is determined by its free coordinates `c`, and
/// lies in ℤ^r exactly when `c · rows ≡ 0 (mod den)` columnwise. The set of
/// admissible `c` is cut out one column at a time.
fn saturate(rows: Vec<Vec<BigInt>>, den: &BigInt) -> Lattice {
    let t = rows.len();
    let r = rows.first().map(|row| row.len()).unwrap_or(0);
    // Strip any factor shared by the denominator and every numerator.
    let mut num = rows;
    let mut den = den.clone();
    let g = num
        .iter()
        .flat_map(|row| row.iter())
        .fold(den.clone(), |g, x| g.gcd(x));
    if !g.is_one() {
        for row in num.iter_mut() {
            for x in row.iter_mut() {
                *x /= &g;
            }
        }
        den /= &g;
    }

    let mut coeff_basis = IntMatrix::identity(t);
    if !den.is_one() {
        for col in 0..r {
            let w: Vec<BigInt> = (0..coeff_basis.nrows())
                .map(|i| {
                    let s = coeff_basis
                        .row(i)
                        .iter()
                        .zip(&num)
                        .fold(BigInt::zero(), |acc, (ci, row)| acc + ci * &row[col]);
                    s.mod_floor(&den)
                })
                .collect();
            if w.iter().all(Zero::is_zero) {
                continue;
            }
            // Lattice of y with y·w ≡ 0 (mod den): kernel part of the Hermite
            // form of [w | I ; den | 0].
            let k = coeff_basis.nrows();
            let mut aug = Vec::with_capacity(k + 1);
            for (i, wi) in w.iter().enumerate() {
                let mut row = vec![wi.clone()];
                row.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                aug.push(row);
            }
            let mut last = vec![den.clone()];
            last.extend((0..k).map(|_| BigInt::zero()));
            aug.push(last);
            let h = hnf(&IntMatrix::from_rows(k + 1, aug).expect("rectangular"));
            let ys: Vec<Vec<BigInt>> = h
                .rows_iter()
                .filter(|row| row[0].is_zero())
                .map(|row| row[1..].to_vec())
                .collect();
            let y = IntMatrix::from_rows(k, ys).expect("rectangular");
            coeff_basis = hnf(&y.mul(&coeff_basis).expect("compatible shapes"));
        }
    }

    let num_m = IntMatrix::from_rows(r, num).expect("rectangular");
    let mut out = coeff_basis.mul(&num_m).expect("compatible shapes");
    if !den.is_one() {
        for i in 0..out.nrows() {
            for x in out.row_mut(i) {
                debug_assert!(x.is_multiple_of(&den));
                *x /= &den;
            }
        }
    }
    Lattice::from_generators(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn symmetric_rank_one_kernel() {
        let k = kernel_lattice(&IntMatrix::from_i64(&[&[1, -1], &[-1, 1]]));
        assert_eq!(k, Lattice::from_rows(2, vec![row(&[1, 1])]).unwrap());
    }

    #[test]
    fn identity_has_zero_kernel() {
        assert_eq!(kernel_lattice(&IntMatrix::identity(3)), Lattice::zero(3));
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        assert_eq!(kernel_lattice(&IntMatrix::zeros(2, 2)), Lattice::full(2));
    }

    #[test]
    fn kernel_is_saturated_even_when_rational_basis_is_not() {
        // v·A = 0 means 2v0 + 3v1 = 0 and 6v1 = 9v2, so the rational kernel
        // is spanned by (-3/2, 1, 2/3) and its integer points by (9, -6, -4).
        let a = IntMatrix::from_i64(&[&[2, 0], &[3, 6], &[0, -9]]);
        let k = kernel_lattice(&a);
        assert_eq!(k.rank(), 1);
        assert!(k.is_saturated());
        let v = k.basis().row(0);
        assert!(a.left_mul_vec(v).unwrap().iter().all(Zero::is_zero));
        assert_eq!(v, row(&[9, -6, -4]).as_slice());
    }

    #[test]
    fn huge_entries_are_handled() {
        let big = BigInt::from(7).pow(300);
        let a = IntMatrix::from_rows(
            1,
            vec![vec![big.clone()], vec![-big.clone() * 3], vec![BigInt::from(5)]],
        )
        .unwrap();
        let k = kernel_lattice(&a);
        assert_eq!(k.rank(), 2);
        for v in k.basis().rows_iter() {
            assert!(a.left_mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        assert!(k.is_saturated());
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::normal_form::{hnf, smith};
use super::{ExactIntError, IntMatrix};

/// A sublattice of `ℤ^r`, stored by its Hermite normal form.
///
/// Because the stored basis is canonical, `==` on lattices is equality of
/// subgroups.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// The lattice spanned by the rows of `gens`.
    pub fn from_generators(gens: &IntMatrix) -> Self {
        Lattice {
            ambient_rank: gens.ncols(),
            basis: hnf(gens),
        }
    }

    pub fn from_rows(ambient_rank: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, ExactIntError> {
        Ok(Lattice::from_generators(&IntMatrix::from_rows(ambient_rank, rows)?))
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: IntMatrix::zeros(0, ambient_rank),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// The Hermite basis, one generator per row.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for row in self.basis.rows_iter() {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("Hermite rows are nonzero");
            // Everything left of this pivot must already be cleared.
            if rest[..pivot_col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[pivot_col].div_rem(&row[pivot_col]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(row) {
                    *x -= &q * b;
                }
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_sublattice_of(&self, sup: &Lattice) -> bool {
        self.ambient_rank == sup.ambient_rank && self.basis.rows_iter().all(|r| sup.contains(r))
    }

    /// True when `ℤ^r / self` is torsion-free.
    pub fn is_saturated(&self) -> bool {
        smith(&self.basis).diagonal.iter().all(|d| d.is_one())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(rank {} in Z^{}) {:?}", self.rank(), self.ambient_rank, self.basis)
    }
}

/// Index of one lattice in another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// The index `[sup : sub]`, as the product of the Smith invariants of `sub`
/// written in a basis of `sup`.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<Index, ExactIntError> {
    if sub.ambient_rank != sup.ambient_rank {
        return Err(ExactIntError::AmbientMismatch {
            left: sub.ambient_rank,
            right: sup.ambient_rank,
        });
    }
    let mut coords = Vec::with_capacity(sub.rank());
    for row in sub.basis.rows_iter() {
        coords.push(sup.coordinates(row).ok_or(ExactIntError::NotASublattice)?);
    }
    if sub.rank() != sup.rank() {
        return Ok(Index::Infinite);
    }
    if sub.rank() == 0 {
        return Ok(Index::Finite(BigInt::one()));
    }
    let m = IntMatrix::from_rows(sup.rank(), coords)?;
    let product = smith(&m).diagonal.iter().fold(BigInt::one(), |acc, d| acc * d);
    Ok(Index::Finite(product.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_generators(&IntMatrix::from_i64(rows))
    }

    #[test]
    fn index_of_doubled_plane() {
        let sub = lat(&[&[2, 0], &[0, 2]]);
        assert_eq!(lattice_index(&sub, &Lattice::full(2)).unwrap(), Index::Finite(4.into()));
    }

    #[test]
    fn index_of_lattice_in_itself_is_one() {
        let l = lat(&[&[3, 1], &[0, 5]]);
        assert_eq!(lattice_index(&l, &l).unwrap(), Index::Finite(1.into()));
    }

    #[test]
    fn rank_drop_gives_infinite_index() {
        let sub = lat(&[&[2, 0]]);
        assert_eq!(lattice_index(&sub, &Lattice::full(2)).unwrap(), Index::Infinite);
    }

    #[test]
    fn non_sublattice_is_reported() {
        let sub = lat(&[&[1, 0]]);
        let sup = lat(&[&[2, 0], &[0, 1]]);
        assert_eq!(lattice_index(&sub, &sup), Err(ExactIntError::NotASublattice));
    }

    #[test]
    fn equal_spans_compare_equal() {
        assert_eq!(lat(&[&[1, 1], &[0, 2]]), lat(&[&[1, -1], &[1, 1]]));
    }
}

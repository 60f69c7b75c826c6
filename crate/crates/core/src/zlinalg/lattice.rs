//! Finitely generated abelian groups and subquotients of free lattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{column_hnf, invariant_factors, transpose, Mat};
use crate::error::{Error, Result};

/// `Z^free ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m` with `t_1 | t_2 | ...` and all `t_i > 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn free(n: usize) -> Self {
        AbelianGroup { free: n, torsion: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// `Z^n / (image of invariant factors)`: rank minus nonzero factors,
    /// factors above one become torsion.
    pub fn from_factors(rank: usize, factors: &[BigInt]) -> Result<Self> {
        if factors.len() > rank {
            return Err(Error::Invariant("more factors than generators".into()));
        }
        let mut torsion = Vec::new();
        for f in factors {
            if !f.is_one() {
                torsion.push(f.to_u64().ok_or(Error::Overflow)?);
            }
        }
        Ok(AbelianGroup { free: rank - factors.len(), torsion })
    }

    /// Dimension of `G ⊗ Z/2`.
    pub fn dim_mod2(&self) -> usize {
        self.free + self.torsion.iter().filter(|t| *t % 2 == 0).count()
    }

    /// Number of `Z/2` summands of `Tor(G, Z/2)`.
    pub fn tor_mod2(&self) -> usize {
        self.torsion.iter().filter(|t| *t % 2 == 0).count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free > 0 {
            parts.push(if self.free == 1 { "Z".to_string() } else { format!("Z^{}", self.free) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A sublattice of `Z^n` given by independent basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub dim: usize,
    pub basis: Vec<Vec<BigInt>>,
}

fn columns_to_mat(vs: &[Vec<BigInt>], dim: usize) -> Mat {
    (0..dim).map(|i| vs.iter().map(|v| v[i].clone()).collect()).collect()
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: vec![] }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Lattice { dim, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The lattice spanned by arbitrary generators.
    pub fn span(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        if gens.is_empty() || dim == 0 {
            return Lattice::zero(dim);
        }
        let m = columns_to_mat(gens, dim);
        let (h, _, rank) = column_hnf(&m, gens.len());
        let basis = (0..rank).map(|c| (0..dim).map(|r| h[r][c].clone()).collect()).collect();
        Lattice { dim, basis }
    }

    /// Kernel of the `rows x cols` matrix `m` as a lattice in `Z^cols`.
    pub fn kernel(m: &Mat, cols: usize) -> Self {
        if m.is_empty() {
            return Lattice::full(cols);
        }
        let (_, u, rank) = column_hnf(m, cols);
        let basis = (rank..cols).map(|c| (0..cols).map(|r| u[r][c].clone()).collect()).collect();
        Lattice { dim: cols, basis }
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Lattice::span(self.dim, &g)
    }

    /// Coordinates of `sub`'s generators in this lattice's basis; errors if
    /// some generator does not lie in the lattice.
    fn coordinates(&self, gens: &[Vec<BigInt>]) -> Result<Mat> {
        let a = self.rank();
        if a == 0 {
            if gens.iter().any(|v| v.iter().any(|x| !x.is_zero())) {
                return Err(Error::Invariant("vector outside the zero lattice".into()));
            }
            return Ok(vec![]);
        }
        // Row echelon of the basis matrix: W * Z = T.
        let zt = self.basis.clone();
        let (ht, ut, rank) = column_hnf(&zt, self.dim);
        debug_assert_eq!(rank, a);
        let w = transpose(&ut, self.dim);
        let t = transpose(&ht, self.dim);
        let mut out = vec![vec![BigInt::zero(); gens.len()]; a];
        for (j, g) in gens.iter().enumerate() {
            let wb: Vec<BigInt> = w
                .iter()
                .map(|row| row.iter().zip(g).map(|(x, y)| x * y).sum())
                .collect();
            if wb[a..].iter().any(|x| !x.is_zero()) {
                return Err(Error::Invariant("vector outside the lattice".into()));
            }
            // Pivots of T sit in the first `a` rows; solve by substitution.
            let mut coords = vec![BigInt::zero(); a];
            for i in (0..a).rev() {
                let piv_col = (0..a).find(|&c| !t[i][c].is_zero()).expect("pivot");
                let mut rhs = wb[i].clone();
                for c in piv_col + 1..a {
                    rhs -= &t[i][c] * &coords[c];
                }
                let (q, r) = rhs.div_rem(&t[i][piv_col]);
                if !r.is_zero() {
                    return Err(Error::Invariant("vector outside the lattice".into()));
                }
                coords[piv_col] = q;
            }
            for i in 0..a {
                out[i][j] = coords[i].clone();
            }
        }
        Ok(out)
    }

    /// `self / sub` for a sublattice given by generators.
    pub fn quotient(&self, sub: &[Vec<BigInt>]) -> Result<AbelianGroup> {
        let a = self.rank();
        if sub.is_empty() {
            return Ok(AbelianGroup::free(a));
        }
        let c = self.coordinates(sub)?;
        if a == 0 {
            return Ok(AbelianGroup::default());
        }
        AbelianGroup::from_factors(a, &invariant_factors(&c, sub.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::snf::from_i64;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn quotients() {
        let full = Lattice::full(2);
        let g = full.quotient(&[v(&[2, 0]), v(&[0, 3])]).unwrap();
        assert_eq!(g, AbelianGroup { free: 0, torsion: vec![6] });
        let g = full.quotient(&[v(&[2, 2])]).unwrap();
        assert_eq!(g, AbelianGroup { free: 1, torsion: vec![2] });
        let l = Lattice::span(2, &[v(&[2, 0]), v(&[4, 0])]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.quotient(&[v(&[4, 0])]).unwrap(), AbelianGroup { free: 0, torsion: vec![2] });
        assert!(l.quotient(&[v(&[1, 0])]).is_err());
    }

    #[test]
    fn kernel_is_saturated() {
        let m = from_i64(&[vec![2, 4]]);
        let k = Lattice::kernel(&m, 2);
        assert_eq!(k.rank(), 1);
        let q = Lattice::full(2).quotient(&k.basis).unwrap();
        assert_eq!(q, AbelianGroup::free(1));
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup { free: 2, torsion: vec![2] }.to_string(), "Z^2 + Z/2");
        assert_eq!(AbelianGroup::default().to_string(), "0");
    }
}

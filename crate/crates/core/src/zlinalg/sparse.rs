//! Column-major sparse integer matrices.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A sparse `rows x cols` matrix over `i64`, one sorted entry list per column.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMat {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { rows: n, cols: (0..n).map(|i| vec![(i as u32, 1)]).collect() }
    }

    /// Builds a matrix from triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, mut t: Vec<(u32, u32, i64)>) -> Self {
        t.sort_unstable_by_key(|e| (e.1, e.0));
        let mut m = SparseMat::zeros(rows, cols);
        for (r, c, v) in t {
            let col = &mut m.cols[c as usize];
            match col.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => col.push((r, v)),
            }
        }
        for col in &mut m.cols {
            col.retain(|e| e.1 != 0);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, c: usize) -> &[(u32, i64)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        match self.cols[c].binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(i) => self.cols[c][i].1,
            Err(_) => 0,
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c as u32, v)))
    }

    pub fn transpose(&self) -> SparseMat {
        let t = self.triplets().map(|(r, c, v)| (c, r, v)).collect();
        SparseMat::from_triplets(self.ncols(), self.rows, t)
    }

    pub fn scale(&self, s: i64) -> SparseMat {
        let t = self.triplets().map(|(r, c, v)| (r, c, v * s)).collect();
        SparseMat::from_triplets(self.rows, self.ncols(), t)
    }

    pub fn add(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(Error::Dimension("matrix sizes differ".into()));
        }
        let t = self.triplets().chain(other.triplets()).collect();
        Ok(SparseMat::from_triplets(self.rows, self.ncols(), t))
    }

    pub fn sub(&self, other: &SparseMat) -> Result<SparseMat> {
        self.add(&other.scale(-1))
    }

    /// `self * other` with overflow detection.
    pub fn mul(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.ncols() != other.rows {
            return Err(Error::Dimension("inner dimensions differ".into()));
        }
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        let mut out = SparseMat::zeros(self.rows, other.ncols());
        for (c, col) in other.cols.iter().enumerate() {
            for &(k, b) in col {
                for &(r, a) in &self.cols[k as usize] {
                    let slot = &mut acc[r as usize];
                    if *slot == 0 {
                        touched.push(r);
                    }
                    let p = a.checked_mul(b).ok_or(Error::Overflow)?;
                    *slot = slot.checked_add(p).ok_or(Error::Overflow)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &r in &touched {
                let v = std::mem::take(&mut acc[r as usize]);
                if v != 0 {
                    out.cols[c].push((r, v));
                }
            }
            touched.clear();
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            if v[c] == 0 {
                continue;
            }
            for &(r, a) in col {
                out[r as usize] += a * v[c];
            }
        }
        out
    }

    /// Entrywise reduction modulo 2.
    pub fn mod2(&self) -> SparseMat {
        let t = self.triplets().filter(|e| e.2 % 2 != 0).map(|(r, c, _)| (r, c, 1)).collect();
        SparseMat::from_triplets(self.rows, self.ncols(), t)
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMat {
        let mut pos = vec![u32::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            pos[r] = i as u32;
        }
        let mut m = SparseMat::zeros(rows.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            let mut col: Vec<(u32, i64)> = self.cols[c]
                .iter()
                .filter(|e| pos[e.0 as usize] != u32::MAX)
                .map(|&(r, v)| (pos[r as usize], v))
                .collect();
            col.sort_unstable();
            m.cols[j] = col;
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::from(0); self.ncols()]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r as usize][c as usize] = BigInt::from(v);
        }
        d
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> SparseMat {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let mut t = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    t.push((r as u32, c as u32, v));
                }
            }
        }
        SparseMat::from_triplets(nr, nc, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseMat::from_dense(&[vec![1, 2], vec![0, 3]]);
        let b = SparseMat::from_dense(&[vec![4, 0], vec![-1, 1]]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, SparseMat::from_dense(&[vec![2, 2], vec![-3, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.get(0, 1), 2);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn overflow_is_reported() {
        let a = SparseMat::from_dense(&[vec![i64::MAX]]);
        assert_eq!(a.mul(&SparseMat::from_dense(&[vec![2]])), Err(Error::Overflow));
    }
}

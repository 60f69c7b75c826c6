//! Dense Smith and Hermite normal forms over arbitrary precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

pub fn matmul(a: &Mat, b: &Mat, inner: usize) -> Mat {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += &row[k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn transpose(m: &Mat, cols: usize) -> Mat {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `U * M * V = S` with `S` diagonal, diagonal entries nonnegative and each
/// dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub s: Mat,
    pub u: Mat,
    pub v: Mat,
}

impl Snf {
    /// Nonzero diagonal entries.
    pub fn factors(&self) -> Vec<BigInt> {
        (0..self.s.len().min(self.s.first().map_or(0, Vec::len)))
            .map(|i| self.s[i][i].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

struct Work {
    a: Mat,
    u: Option<Mat>,
    v: Option<Mat>,
    nr: usize,
    nc: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for r in v.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.nc {
            if !self.a[j][c].is_zero() {
                let t = &self.a[j][c] * q;
                self.a[i][c] -= t;
            }
        }
        if let Some(u) = &mut self.u {
            for c in 0..self.nr {
                if !u[j][c].is_zero() {
                    let t = &u[j][c] * q;
                    u[i][c] -= t;
                }
            }
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.nr {
            if !self.a[r][j].is_zero() {
                let t = &self.a[r][j] * q;
                self.a[r][i] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let t = &row[j] * q;
                    row[i] -= t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }
}

fn smith_impl(m: &Mat, ncols: usize, track: bool) -> Work {
    let nr = m.len();
    let nc = ncols;
    let mut w = Work {
        a: m.clone(),
        u: track.then(|| identity(nr)),
        v: track.then(|| identity(nc)),
        nr,
        nc,
    };
    for t in 0..nr.min(nc) {
        // Smallest nonzero entry of the remaining block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                let x = &w.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..nr {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_sub(i, t, &q);
                    if !w.a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..nc {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_sub(j, t, &q);
                    if !w.a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // Move the smallest remainder into the pivot position.
                let mut best = (t, t);
                for i in t + 1..nr {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..nc {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    w.swap_rows(t, best.0);
                }
                if best.1 != t {
                    w.swap_cols(t, best.1);
                }
                continue;
            }
            // Enforce divisibility of the rest of the block.
            let p = w.a[t][t].clone();
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let m1 = -BigInt::one();
                    w.row_sub(t, i, &m1);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    w
}

pub fn smith_normal_form(m: &Mat, ncols: usize) -> Snf {
    let w = smith_impl(m, ncols, true);
    Snf { s: w.a, u: w.u.unwrap(), v: w.v.unwrap() }
}

/// Nonzero invariant factors, in divisibility order.
pub fn invariant_factors(m: &Mat, ncols: usize) -> Vec<BigInt> {
    let w = smith_impl(m, ncols, false);
    (0..w.nr.min(w.nc)).map(|i| w.a[i][i].clone()).filter(|d| !d.is_zero()).collect()
}

/// Column Hermite form: returns `(H, U, rank)` with `M * U = H`, the first
/// `rank` columns of `H` in echelon form and the others zero.
pub fn column_hnf(m: &Mat, ncols: usize) -> (Mat, Mat, usize) {
    let nr = m.len();
    let mut a = m.clone();
    let mut u = identity(ncols);
    let mut piv = 0;
    for r in 0..nr {
        if piv == ncols {
            break;
        }
        for c in piv + 1..ncols {
            if a[r][c].is_zero() {
                continue;
            }
            let x0 = a[r][piv].clone();
            let y0 = a[r][c].clone();
            let e = x0.extended_gcd(&y0);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (p, q) = (&y0 / &g, &x0 / &g);
            // [col_piv, col_c] <- [x col_piv + y col_c, -p col_piv + q col_c]
            for row in a.iter_mut().chain(u.iter_mut()) {
                let (cp, cc) = (row[piv].clone(), row[c].clone());
                row[piv] = &x * &cp + &y * &cc;
                row[c] = &q * &cc - &p * &cp;
            }
        }
        if !a[r][piv].is_zero() {
            if a[r][piv].is_negative() {
                for row in a.iter_mut().chain(u.iter_mut()) {
                    row[piv] = -&row[piv];
                }
            }
            piv += 1;
        }
    }
    (a, u, piv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(invariant_factors(&from_i64(&[vec![2, 0], vec![0, 0]]), 2), big(&[2]));
        assert_eq!(invariant_factors(&from_i64(&[vec![1, 2], vec![3, 4]]), 2), big(&[1, 2]));
        assert!(invariant_factors(&from_i64(&[vec![0, 0], vec![0, 0]]), 2).is_empty());
        assert_eq!(
            invariant_factors(&from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), 3),
            big(&[2, 6, 12])
        );
    }

    #[test]
    fn transforms_multiply_back() {
        let m = from_i64(&[vec![4, 6, 2], vec![8, 3, 1], vec![0, 5, 7], vec![1, 1, 1]]);
        let s = smith_normal_form(&m, 3);
        let lhs = matmul(&matmul(&s.u, &m, 4), &s.v, 3);
        assert_eq!(lhs, s.s);
    }

    #[test]
    fn hnf_kernel() {
        let m = from_i64(&[vec![2, 4, 6], vec![1, 2, 3]]);
        let (h, u, rank) = column_hnf(&m, 3);
        assert_eq!(rank, 1);
        assert_eq!(matmul(&m, &u, 3), h);
        for row in &h {
            assert!(row[1].is_zero() && row[2].is_zero());
        }
    }
}

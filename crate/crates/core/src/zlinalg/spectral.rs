//! Spectral sequence of the `h` filtration over the integers.
//!
//! Filtration degree is `p = -h` and total degree is `j = δ`; the
//! differential maps `F_p A_j` into `F_{p-1} A_{j-2}`. Pages are computed
//! as lattice subquotients `Z^r / B^r` after cancelling unit entries of
//! `h`-length one, which leaves every page from `E^2` on unchanged.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::lattice::{AbelianGroup, Lattice};
use super::reduce::{cancel, Chain, Coefficients};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageTable {
    pub r_max: usize,
    /// `(r, p, q) -> E^r_{p,q}` for `0 <= r <= r_max`.
    pub entries: BTreeMap<(usize, i64, i64), AbelianGroup>,
    pub infinity: BTreeMap<(i64, i64), AbelianGroup>,
    /// First `r` from which `E^r_{p,q} ≅ E^∞_{p,q}`.
    pub stable_from: BTreeMap<(i64, i64), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageRow {
    pub page: String,
    pub p: i64,
    pub q: i64,
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl PageTable {
    pub fn page(&self, r: usize) -> BTreeMap<(i64, i64), AbelianGroup> {
        self.entries
            .iter()
            .filter(|((s, _, _), _)| *s == r)
            .map(|(&(_, p, q), g)| ((p, q), g.clone()))
            .collect()
    }

    pub fn rows(&self) -> Vec<PageRow> {
        let mut out: Vec<PageRow> = self
            .entries
            .iter()
            .map(|(&(r, p, q), g)| PageRow { page: r.to_string(), p, q, free: g.free, torsion: g.torsion.clone() })
            .collect();
        out.extend(self.infinity.iter().map(|(&(p, q), g)| PageRow {
            page: "inf".into(),
            p,
            q,
            free: g.free,
            torsion: g.torsion.clone(),
        }));
        out
    }

    /// `Σ (-1)^{(j - j0)/2} rank E^r_{p,q}` with `j = p + q`; the differential
    /// on each page moves `j` by `-2`, so this does not depend on `r`.
    pub fn euler(&self, r: usize) -> i64 {
        let page = self.page(r);
        let j0 = page.keys().map(|&(p, q)| p + q).min().unwrap_or(0);
        page.iter()
            .map(|(&(p, q), g)| {
                let s = if ((p + q - j0) / 2) % 2 == 0 { 1 } else { -1 };
                s * g.free as i64
            })
            .sum()
    }
}

/// The filtered complex after cancellation, indexed for lattice work.
pub struct Filtered {
    chain: Chain,
    /// Generator counts of the uncancelled complex per `(p, q)`.
    raw: BTreeMap<(i64, i64), usize>,
    by_j: BTreeMap<i64, Vec<usize>>,
}

fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()).collect()
}

impl Filtered {
    pub fn new(c: &Chain) -> Result<Self> {
        for (r, col, _) in c.d.triplets() {
            if c.h[r as usize] <= c.h[col as usize] || c.delta[r as usize] != c.delta[col as usize] - 2 {
                return Err(Error::Invariant("differential does not raise h and lower δ by 2".into()));
            }
        }
        let mut raw = BTreeMap::new();
        for i in 0..c.len() {
            *raw.entry((-c.h[i], c.delta[i] + c.h[i])).or_insert(0) += 1;
        }
        let chain = cancel(c, Coefficients::Z, |a, b| b - a == 1)?;
        if !chain.d.mul(&chain.d)?.is_zero() {
            return Err(Error::NotAComplex);
        }
        let mut by_j: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for i in 0..chain.len() {
            by_j.entry(chain.delta[i]).or_default().push(i);
        }
        Ok(Filtered { chain, raw, by_j })
    }

    pub fn reduced(&self) -> &Chain {
        &self.chain
    }

    fn gens(&self, j: i64, f: impl Fn(i64) -> bool) -> Vec<usize> {
        self.by_j.get(&j).map_or(vec![], |v| v.iter().copied().filter(|&i| f(self.chain.h[i])).collect())
    }

    fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<BigInt>> {
        self.chain.d.select(rows, cols).to_dense()
    }

    /// `{a ∈ F_p A_j : d(a) ∈ F_{p-r}}` over the generators of `F_p A_j`.
    fn k_lattice(&self, j: i64, p: i64, r: i64) -> (Vec<usize>, Lattice) {
        let vars = self.gens(j, |h| h >= -p);
        let cons = self.gens(j - 2, |h| h < r - p);
        if cons.is_empty() {
            return (vars.clone(), Lattice::full(vars.len()));
        }
        let m = self.block(&cons, &vars);
        let k = Lattice::kernel(&m, vars.len());
        (vars, k)
    }

    fn page_entry(&self, j: i64, p: i64, r: i64) -> Result<AbelianGroup> {
        let layer = self.gens(j, |h| h == -p);
        if layer.is_empty() {
            return Ok(AbelianGroup::default());
        }
        let (vars, k) = self.k_lattice(j, p, r);
        let pos: Vec<usize> = layer.iter().map(|g| vars.iter().position(|v| v == g).unwrap()).collect();
        let z_gens: Vec<Vec<BigInt>> = k.basis.iter().map(|v| pos.iter().map(|&i| v[i].clone()).collect()).collect();
        let z = Lattice::span(layer.len(), &z_gens);
        let (vars2, k2) = self.k_lattice(j + 2, p + r - 1, r - 1);
        let m = self.block(&layer, &vars2);
        let b: Vec<Vec<BigInt>> = k2.basis.iter().map(|a| mat_vec(&m, a)).collect();
        z.quotient(&b)
    }

    fn entry(&self, j: i64, p: i64, r: usize) -> Result<AbelianGroup> {
        if r <= 1 {
            return Ok(AbelianGroup::free(self.raw.get(&(p, j - p)).copied().unwrap_or(0)));
        }
        self.page_entry(j, p, r as i64)
    }

    /// Beyond this page every differential leaves the filtration range.
    pub fn stable_page(&self) -> usize {
        let hs = self.chain.h.iter();
        let span = match (hs.clone().min(), hs.max()) {
            (Some(a), Some(b)) => (b - a) as usize,
            _ => 0,
        };
        span + 2
    }

    pub fn pages(&self, r_max: usize) -> Result<PageTable> {
        let r_inf = self.stable_page();
        let top = r_max.max(r_inf);
        let keys: Vec<(i64, i64)> = self.raw.keys().copied().collect();
        let jobs: Vec<((i64, i64), usize)> =
            keys.iter().flat_map(|&k| (0..=top).map(move |r| (k, r))).collect();
        let results: Vec<(((i64, i64), usize), AbelianGroup)> = jobs
            .par_iter()
            .map(|&((p, q), r)| Ok((((p, q), r), self.entry(p + q, p, r)?)))
            .collect::<Result<_>>()?;
        let all: BTreeMap<((i64, i64), usize), AbelianGroup> = results.into_iter().collect();
        let mut t = PageTable {
            r_max,
            entries: BTreeMap::new(),
            infinity: BTreeMap::new(),
            stable_from: BTreeMap::new(),
        };
        for &(p, q) in &keys {
            let inf = all[&((p, q), top)].clone();
            let mut from = top;
            while from > 0 && all[&((p, q), from - 1)] == inf {
                from -= 1;
            }
            for r in 0..=r_max {
                t.entries.insert((r, p, q), all[&((p, q), r)].clone());
            }
            t.infinity.insert((p, q), inf);
            t.stable_from.insert((p, q), from);
        }
        Ok(t)
    }

    /// `G_p H_j / G_{p-1} H_j` with `G_p H_j` the image of `F_p A_j ∩ ker d`.
    pub fn graded_piece(&self, j: i64, p: i64) -> Result<AbelianGroup> {
        let vars = self.gens(j, |h| h >= -p);
        if vars.iter().all(|&i| self.chain.h[i] != -p) {
            return Ok(AbelianGroup::default());
        }
        let all_below = self.gens(j - 2, |_| true);
        let kernel = |cols: &[usize]| {
            if all_below.is_empty() {
                Lattice::full(cols.len())
            } else {
                Lattice::kernel(&self.block(&all_below, cols), cols.len())
            }
        };
        let n = kernel(&vars);
        let deeper: Vec<usize> = vars.iter().copied().filter(|&i| self.chain.h[i] > -p).collect();
        let mut rel: Vec<Vec<BigInt>> = kernel(&deeper)
            .basis
            .iter()
            .map(|v| {
                vars.iter()
                    .map(|g| deeper.iter().position(|x| x == g).map_or(BigInt::zero(), |i| v[i].clone()))
                    .collect()
            })
            .collect();
        // Boundaries landing in F_p.
        let above = self.gens(j + 2, |_| true);
        let outside = self.gens(j, |h| h < -p);
        let pre = if outside.is_empty() {
            Lattice::full(above.len())
        } else {
            Lattice::kernel(&self.block(&outside, &above), above.len())
        };
        let m = self.block(&vars, &above);
        rel.extend(pre.basis.iter().map(|a| mat_vec(&m, a)));
        n.quotient(&rel)
    }

    /// Compares `E^∞` with the associated graded of total homology.
    pub fn convergence(&self, pages: &PageTable) -> Result<Vec<ConvergenceRow>> {
        pages
            .infinity
            .par_iter()
            .map(|(&(p, q), e)| {
                let g = self.graded_piece(p + q, p)?;
                Ok(ConvergenceRow { p, q, e_infinity: e.clone(), graded: g.clone(), agree: *e == g })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceRow {
    pub p: i64,
    pub q: i64,
    pub e_infinity: AbelianGroup,
    pub graded: AbelianGroup,
    pub agree: bool,
}

pub fn spectral_pages(c: &Chain, r_max: usize) -> Result<PageTable> {
    Filtered::new(c)?.pages(r_max)
}

//! Graded free complexes and cancellation of invertible differential entries.
//!
//! Cancelling an entry `⟨dx, y⟩ = u` with `u = ±1` removes `x` and `y` and
//! changes the remaining differential to
//! `⟨d'z, w⟩ = ⟨dz, w⟩ - ⟨dz, y⟩ ⟨dx, w⟩ / u`. The result is chain homotopy
//! equivalent to the input. When only entries raising `h` by exactly one
//! are cancelled, the equivalence is filtered for the `h` filtration and the
//! homotopy moves filtration by one step, so spectral pages from `E^2` on
//! are preserved.

use std::collections::{HashMap, HashSet};

use super::sparse::SparseMat;
use crate::error::{Error, Result};

/// A free complex with one `(h, δ, q)` grading per generator. The
/// differential is stored column-wise: column `x` holds `d(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub h: Vec<i64>,
    pub delta: Vec<i64>,
    pub q: Vec<i64>,
    pub d: SparseMat,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// Keeps only the entries with `h(target) - h(source) == n`.
    pub fn part(&self, n: i64) -> Chain {
        let t = self
            .d
            .triplets()
            .filter(|&(r, c, _)| self.h[r as usize] - self.h[c as usize] == n)
            .collect();
        Chain { d: SparseMat::from_triplets(self.len(), self.len(), t), ..self.clone() }
    }

    pub fn mod2(&self) -> Chain {
        Chain { d: self.d.mod2(), ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Z,
    Z2,
}

struct Graph {
    out: Vec<HashMap<u32, i64>>,
    inn: Vec<HashSet<u32>>,
    alive: Vec<bool>,
    modulus: Coefficients,
}

impl Graph {
    fn new(c: &Chain, modulus: Coefficients) -> Graph {
        let n = c.len();
        let mut out = vec![HashMap::new(); n];
        let mut inn = vec![HashSet::new(); n];
        for (r, col, v) in c.d.triplets() {
            let v = match modulus {
                Coefficients::Z => v,
                Coefficients::Z2 => v.rem_euclid(2),
            };
            if v != 0 {
                out[col as usize].insert(r, v);
                inn[r as usize].insert(col);
            }
        }
        Graph { out, inn, alive: vec![true; n], modulus }
    }

    fn is_unit(&self, v: i64) -> bool {
        match self.modulus {
            Coefficients::Z => v == 1 || v == -1,
            Coefficients::Z2 => v % 2 != 0,
        }
    }

    fn cancel(&mut self, x: u32, y: u32) -> Result<()> {
        let u = self.out[x as usize][&y];
        let sources: Vec<u32> = self.inn[y as usize].iter().copied().filter(|&z| z != x).collect();
        let targets: Vec<(u32, i64)> =
            self.out[x as usize].iter().filter(|e| *e.0 != y).map(|(&w, &b)| (w, b)).collect();
        for &z in &sources {
            let a = self.out[z as usize][&y];
            for &(w, b) in &targets {
                let delta = a.checked_mul(b).and_then(|p| p.checked_mul(u)).ok_or(Error::Overflow)?;
                let entry = self.out[z as usize].entry(w).or_insert(0);
                *entry = entry.checked_sub(delta).ok_or(Error::Overflow)?;
                if self.modulus == Coefficients::Z2 {
                    *entry = entry.rem_euclid(2);
                }
                if *entry == 0 {
                    self.out[z as usize].remove(&w);
                    self.inn[w as usize].remove(&z);
                } else {
                    self.inn[w as usize].insert(z);
                }
            }
        }
        for v in [x, y] {
            let outs: Vec<u32> = self.out[v as usize].keys().copied().collect();
            for w in outs {
                self.inn[w as usize].remove(&v);
            }
            let ins: Vec<u32> = self.inn[v as usize].iter().copied().collect();
            for z in ins {
                self.out[z as usize].remove(&v);
            }
            self.out[v as usize].clear();
            self.inn[v as usize].clear();
            self.alive[v as usize] = false;
        }
        Ok(())
    }
}

/// Cancels invertible entries until none is left among those `allow`ed.
/// `allow` gets the `h` gradings of source and target.
pub fn cancel(c: &Chain, modulus: Coefficients, allow: impl Fn(i64, i64) -> bool) -> Result<Chain> {
    let n = c.len();
    let mut g = Graph::new(c, modulus);
    loop {
        let mut progress = false;
        for x in 0..n as u32 {
            while g.alive[x as usize] {
                let pick = g.out[x as usize]
                    .iter()
                    .filter(|&(&y, &v)| g.is_unit(v) && allow(c.h[x as usize], c.h[y as usize]))
                    .min_by_key(|&(&y, _)| (g.inn[y as usize].len(), y))
                    .map(|(&y, _)| y);
                match pick {
                    Some(y) => {
                        g.cancel(x, y)?;
                        progress = true;
                    }
                    None => break,
                }
            }
        }
        if !progress {
            break;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| g.alive[i]).collect();
    let mut pos = vec![u32::MAX; n];
    for (i, &k) in keep.iter().enumerate() {
        pos[k] = i as u32;
    }
    let mut t = Vec::new();
    for &x in &keep {
        for (&y, &v) in &g.out[x] {
            t.push((pos[y as usize], pos[x], v));
        }
    }
    Ok(Chain {
        h: keep.iter().map(|&i| c.h[i]).collect(),
        delta: keep.iter().map(|&i| c.delta[i]).collect(),
        q: keep.iter().map(|&i| c.q[i]).collect(),
        d: SparseMat::from_triplets(keep.len(), keep.len(), t),
    })
}

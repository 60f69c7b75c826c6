//! Reference computations that do not use the cube, sign or algebra code:
//! even Khovanov homology over `Z/2`, the Jones polynomial as a state sum,
//! and an enumerator of small configurations for exhaustive tests.
//!
//! Only the parsed crossing list of a [`PlanarDiagram`] is used. Strands,
//! orientations and circles are traced again here.

use std::collections::BTreeMap;

use crate::config::{Configuration, Face};
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Circles of a resolution: `circle[label]` numbered by smallest label.
struct State {
    circle: Vec<usize>,
    count: usize,
}

fn resolve(xs: &[[u32; 4]], unknots: usize, v: u32) -> State {
    let n = 2 * xs.len();
    let mut d = Dsu::new(n + 1);
    for (i, x) in xs.iter().enumerate() {
        let [a, b, c, e] = x.map(|l| l as usize);
        if v >> i & 1 == 0 {
            d.union(a, b);
            d.union(c, e);
        } else {
            d.union(b, c);
            d.union(e, a);
        }
    }
    let mut id = vec![usize::MAX; n + 1];
    let mut circle = vec![0; n + 1];
    let mut count = 0;
    for l in 1..=n {
        let r = d.find(l);
        if id[r] == usize::MAX {
            id[r] = count;
            count += 1;
        }
        circle[l] = id[r];
    }
    State { circle, count: count + unknots }
}

/// Crossing signs from a fresh walk along the strands: the under strand of
/// `X[a,b,c,d]` runs `a -> c`; the crossing is positive when the over strand
/// enters at `d`.
pub fn crossing_signs(d: &PlanarDiagram) -> Result<Vec<i8>> {
    let xs = d.crossings();
    let n = 2 * xs.len();
    let mut occ: Vec<Vec<(usize, usize)>> = vec![vec![]; n + 1];
    for (i, x) in xs.iter().enumerate() {
        for (s, &l) in x.iter().enumerate() {
            occ[l as usize].push((i, s));
        }
    }
    // entry[i][s]: Some(true) if a walk enters crossing i at slot s.
    let mut entered = vec![[None::<bool>; 4]; xs.len()];
    let mut seen = vec![false; n + 1];
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        // Walk with `start` traversed from occ[0] to occ[1].
        let mut passages = Vec::new();
        let mut label = start;
        let mut tail = occ[start][0];
        loop {
            seen[label] = true;
            let head = if occ[label][0] == tail { occ[label][1] } else { occ[label][0] };
            passages.push(head);
            let out = (head.0, (head.1 + 2) % 4);
            let next = xs[out.0][out.1] as usize;
            tail = out;
            label = next;
            if label == start && tail == occ[start][0] {
                break;
            }
        }
        let under_fwd = passages.iter().filter(|p| p.1 == 0).count();
        let under_back = passages.iter().filter(|p| p.1 == 2).count();
        let forward = if under_fwd + under_back > 0 {
            if under_fwd > 0 && under_back > 0 {
                return Err(Error::Orientation(passages[0].0));
            }
            under_fwd > 0
        } else {
            // Only over passages: follow increasing labels.
            let first = xs[passages[0].0][(passages[0].1 + 2) % 4] as usize;
            first == start % n + 1 || (start == n && first == 1) || first > start
        };
        for &(i, s) in &passages {
            let s = if forward { s } else { (s + 2) % 4 };
            entered[i][s] = Some(true);
        }
    }
    Ok(entered
        .iter()
        .map(|e| if e[3] == Some(true) { 1 } else { -1 })
        .collect())
}

fn counts(d: &PlanarDiagram) -> Result<(i64, i64)> {
    let s = crossing_signs(d)?;
    let p = s.iter().filter(|&&x| x > 0).count() as i64;
    Ok((p, s.len() as i64 - p))
}

/// The Jones polynomial in the normalization `q + q^{-1}` for the unknot:
/// `(-1)^{n-} q^{n+ - 2n-} Σ_v (-q)^{|v|} (q + q^{-1})^{c(v)}`.
pub fn kauffman_jones(d: &PlanarDiagram) -> Result<BTreeMap<i64, i64>> {
    let xs = d.crossings();
    let (np, nm) = counts(d)?;
    let mut p: BTreeMap<i64, i64> = BTreeMap::new();
    for v in 0..1u32 << xs.len() {
        let c = resolve(xs, d.unknots(), v).count as i64;
        let w = v.count_ones() as i64;
        // (q + q^{-1})^c = Σ binom(c, i) q^{c - 2i}
        let mut binom = 1i64;
        for i in 0..=c {
            let e = w + c - 2 * i + np - 2 * nm;
            let sign = if (w + nm) % 2 == 0 { 1 } else { -1 };
            *p.entry(e).or_insert(0) += sign * binom;
            binom = binom * (c - i) / (i + 1);
        }
    }
    p.retain(|_, c| *c != 0);
    Ok(p)
}

/// The even Khovanov complex with `Z/2` coefficients.
pub struct Mod2Complex {
    /// `(h, q)` of every generator.
    pub grades: Vec<(i64, i64)>,
    /// Targets of the differential, per generator.
    pub d: Vec<Vec<usize>>,
}

pub fn even_khovanov_mod2(d: &PlanarDiagram) -> Result<Mod2Complex> {
    let xs = d.crossings();
    let k = xs.len();
    let (np, nm) = counts(d)?;
    let states: Vec<State> = (0..1u32 << k).map(|v| resolve(xs, d.unknots(), v)).collect();
    let mut offset = Vec::with_capacity(states.len());
    let mut grades = Vec::new();
    for (v, st) in states.iter().enumerate() {
        offset.push(grades.len());
        let w = (v as u32).count_ones() as i64;
        for g in 0..1u64 << st.count {
            let xcount = g.count_ones() as i64;
            let ones = st.count as i64 - xcount;
            grades.push((w - nm, w + ones - xcount + np - 2 * nm));
        }
    }
    let n = 2 * k;
    let mut out = vec![Vec::new(); grades.len()];
    for v in 0..1usize << k {
        for i in 0..k {
            if v >> i & 1 == 1 {
                continue;
            }
            let w = v | 1 << i;
            let (s0, s1) = (&states[v], &states[w]);
            // Circles untouched by the change keep a label; map them.
            let mut map = vec![usize::MAX; s0.count];
            for l in 1..=n {
                map[s0.circle[l]] = s1.circle[l];
            }
            for u in 0..d.unknots() {
                map[s0.count - d.unknots() + u] = s1.count - d.unknots() + u;
            }
            let [a, b, c, _] = xs[i].map(|l| l as usize);
            let (ca, cc) = (s0.circle[a], s0.circle[c]);
            for g in 0..1u64 << s0.count {
                let rest: u64 = (0..s0.count)
                    .filter(|&j| j != ca && j != cc && g >> j & 1 == 1)
                    .fold(0, |m, j| m | 1 << map[j]);
                let src = offset[v] + g as usize;
                let mut targets = Vec::new();
                if ca != cc {
                    let m = s1.circle[a];
                    let (xa, xc) = (g >> ca & 1, g >> cc & 1);
                    match xa + xc {
                        0 => targets.push(rest),
                        1 => targets.push(rest | 1 << m),
                        _ => {}
                    }
                } else {
                    let (p, q) = (s1.circle[a], s1.circle[b]);
                    if g >> ca & 1 == 0 {
                        targets.push(rest | 1 << p);
                        targets.push(rest | 1 << q);
                    } else {
                        targets.push(rest | 1 << p | 1 << q);
                    }
                }
                for t in targets {
                    out[src].push(offset[w] + t as usize);
                }
            }
        }
    }
    Ok(Mod2Complex { grades, d: out })
}

/// Rank over `Z/2` of columns given as sorted index lists into `0..rows`.
fn gf2_rank(cols: &[Vec<usize>], rows: usize) -> usize {
    let words = rows.div_ceil(64);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; rows];
    let mut rank = 0;
    for col in cols {
        let mut v = vec![0u64; words];
        for &r in col {
            v[r / 64] ^= 1 << (r % 64);
        }
        loop {
            let top = (0..words).rev().find(|&i| v[i] != 0);
            let Some(i) = top else { break };
            let bit = i * 64 + 63 - v[i].leading_zeros() as usize;
            match &basis[bit] {
                Some(b) => {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
                None => {
                    basis[bit] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

impl Mod2Complex {
    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    /// `d∘d` over `Z/2`.
    pub fn squares_to_zero(&self) -> bool {
        (0..self.len()).all(|x| {
            let mut count: BTreeMap<usize, u32> = BTreeMap::new();
            for &y in &self.d[x] {
                for &z in &self.d[y] {
                    *count.entry(z).or_default() += 1;
                }
            }
            count.values().all(|c| c % 2 == 0)
        })
    }

    /// Homology dimensions per `(h, q)`.
    pub fn homology(&self) -> BTreeMap<(i64, i64), usize> {
        let mut groups: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, &g) in self.grades.iter().enumerate() {
            groups.entry(g).or_default().push(i);
        }
        let mut local = vec![0usize; self.len()];
        for idx in groups.values() {
            for (j, &i) in idx.iter().enumerate() {
                local[i] = j;
            }
        }
        let mut rank: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (&(h, q), idx) in &groups {
            let rows = groups.get(&(h + 1, q)).map_or(0, Vec::len);
            let cols: Vec<Vec<usize>> = idx
                .iter()
                .map(|&i| {
                    let mut c: Vec<usize> = self.d[i].iter().map(|&t| local[t]).collect();
                    c.sort_unstable();
                    // Pairs cancel mod 2.
                    let mut out: Vec<usize> = Vec::new();
                    for x in c {
                        if out.last() == Some(&x) {
                            out.pop();
                        } else {
                            out.push(x);
                        }
                    }
                    out
                })
                .collect();
            rank.insert((h, q), gf2_rank(&cols, rows));
        }
        groups
            .iter()
            .map(|(&(h, q), idx)| {
                let r_out = rank[&(h, q)];
                let r_in = rank.get(&(h - 1, q)).copied().unwrap_or(0);
                ((h, q), idx.len() - r_out - r_in)
            })
            .collect()
    }
}

/// All subconfigurations with `1..=max_arcs` arcs of the 0-smoothings of
/// the given diagrams, each with every orientation of its arcs.
pub fn enumerate_small_configs(diagrams: &[PlanarDiagram], max_arcs: usize) -> Vec<Configuration> {
    let mut out = Vec::new();
    for d in diagrams {
        let c = Configuration::zero_smoothing(d);
        let k = c.dim();
        for stars in 1u32..(1 << k) {
            let n = stars.count_ones() as usize;
            if n > max_arcs {
                continue;
            }
            let free = !stars & ((1u32 << k) - 1);
            let mut ones = 0u32;
            loop {
                let f = Face { len: k as u8, stars, ones };
                let sub = c.resolve(f).expect("face of the right length");
                for mask in 0..1u32 << n {
                    out.push(sub.reorient(mask));
                }
                if ones == free {
                    break;
                }
                ones = ones.wrapping_sub(free) & free;
            }
        }
    }
    out
}

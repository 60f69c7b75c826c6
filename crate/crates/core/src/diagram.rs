//! Planar diagram codes.
//!
//! A crossing `X[a,b,c,d]` lists the four incident edge labels in
//! counterclockwise order, starting with the incoming under strand. The
//! under strand therefore runs `a -> c` and the over strand joins `b` and `d`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<[u32; 4]>,
    unknots: usize,
    signs: Vec<i8>,
    components: usize,
}

#[derive(Deserialize)]
struct JsonPd {
    pd: Vec<[i64; 4]>,
    #[serde(default)]
    unknots: Option<usize>,
}

impl PlanarDiagram {
    /// Parses either `PD[X[..],..]` text or `{"pd": [[..]], "unknots": u}`.
    /// An empty text code denotes the unknot.
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        if s.starts_with('{') {
            let j: JsonPd = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            let mut xs = Vec::with_capacity(j.pd.len());
            for x in &j.pd {
                let mut c = [0u32; 4];
                for (i, v) in x.iter().enumerate() {
                    c[i] = u32::try_from(*v).map_err(|_| Error::Parse(format!("bad label {v}")))?;
                }
                xs.push(c);
            }
            let unknots = j.unknots.unwrap_or(if xs.is_empty() { 1 } else { 0 });
            return Self::new(xs, unknots);
        }
        let xs = parse_text(s)?;
        let unknots = if xs.is_empty() { 1 } else { 0 };
        Self::new(xs, unknots)
    }

    /// Builds a diagram from raw crossings plus a number of crossingless
    /// circles. Labels are renumbered monotonically to `1..=2k`.
    pub fn new(raw: Vec<[u32; 4]>, unknots: usize) -> Result<Self> {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &raw {
            for &l in x {
                *count.entry(l).or_default() += 1;
            }
        }
        if let Some((l, n)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(Error::Parse(format!("label {l} occurs {n} times, expected 2")));
        }
        let relabel: BTreeMap<u32, u32> =
            count.keys().enumerate().map(|(i, &l)| (l, i as u32 + 1)).collect();
        let crossings: Vec<[u32; 4]> = raw.iter().map(|x| x.map(|l| relabel[&l])).collect();
        let mut d = PlanarDiagram { crossings, unknots, signs: vec![], components: 0 };
        let (signs, comps) = d.orient()?;
        d.signs = signs;
        d.components = comps + unknots;
        d.check_planar()?;
        Ok(d)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn unknots(&self) -> usize {
        self.unknots
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `(n+, n-)`.
    pub fn sign_counts(&self) -> (usize, usize) {
        let p = self.signs.iter().filter(|&&s| s > 0).count();
        (p, self.signs.len() - p)
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// The mirror diagram, obtained by switching every crossing.
    pub fn mirror(&self) -> PlanarDiagram {
        let xs = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(x, &s)| {
                // The old over strand becomes the under strand; it enters at d
                // for positive crossings and at b for negative ones.
                if s > 0 {
                    [x[3], x[0], x[1], x[2]]
                } else {
                    [x[1], x[2], x[3], x[0]]
                }
            })
            .collect();
        PlanarDiagram::new(xs, self.unknots).expect("mirror of a valid diagram")
    }

    /// Occurrences `(crossing, slot)` of every label, indexed by label.
    pub fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let n = 2 * self.crossings.len() + 1;
        let mut occ = vec![Vec::with_capacity(2); n];
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &l) in x.iter().enumerate() {
                occ[l as usize].push((c, s));
            }
        }
        occ
    }

    fn other(occ: &[Vec<(usize, usize)>], l: u32, at: (usize, usize)) -> (usize, usize) {
        let o = &occ[l as usize];
        if o[0] == at {
            o[1]
        } else {
            o[0]
        }
    }

    /// Orients every component and returns crossing signs and the number of
    /// components that pass through crossings.
    fn orient(&self) -> Result<(Vec<i8>, usize)> {
        let occ = self.occurrences();
        let n = self.crossings.len();
        let nl = 2 * n;
        let mut seen = vec![false; nl + 1];
        // slot through which the over strand enters each crossing
        let mut over_in: Vec<Option<usize>> = vec![None; n];
        let mut comps = 0;
        for start in 1..=nl as u32 {
            if seen[start as usize] {
                continue;
            }
            comps += 1;
            // walk the component: arrive at occ[start][0], record passages
            let mut passages = Vec::new();
            let mut labels = Vec::new();
            let first = occ[start as usize][0];
            let mut at = first;
            let mut l = start;
            loop {
                seen[l as usize] = true;
                labels.push(l);
                let (c, s) = at;
                let out = (s + 2) % 4;
                passages.push((c, s));
                l = self.crossings[c][out];
                at = Self::other(&occ, l, (c, out));
                if at == first && l == start {
                    break;
                }
            }
            let fwd = passages.iter().any(|&(_, s)| s == 0);
            let bwd = passages.iter().any(|&(_, s)| s == 2);
            let forward = match (fwd, bwd) {
                (true, true) => {
                    let c = passages.iter().find(|&&(_, s)| s == 2).unwrap().0;
                    return Err(Error::Orientation(c));
                }
                (true, false) => true,
                (false, true) => false,
                // over-only component: follow increasing labels if possible
                (false, false) => {
                    let next = labels.get(1).copied().unwrap_or(start);
                    let prev = *labels.last().unwrap();
                    labels.len() < 2 || next < prev
                }
            };
            for &(c, s) in &passages {
                if s % 2 == 1 {
                    let entry = if forward { s } else { (s + 2) % 4 };
                    over_in[c] = Some(entry);
                }
            }
        }
        let signs = over_in
            .iter()
            .map(|o| match o {
                Some(3) => 1,
                Some(1) => -1,
                _ => unreachable!("every crossing has an over strand"),
            })
            .collect();
        Ok((signs, comps))
    }

    /// Euler characteristic check of the underlying 4-valent map.
    fn check_planar(&self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let occ = self.occurrences();
        let mut seen = vec![[false; 4]; n];
        let mut faces = 0usize;
        for c in 0..n {
            for s in 0..4 {
                if seen[c][s] {
                    continue;
                }
                faces += 1;
                let (mut cc, mut ss) = (c, s);
                while !seen[cc][ss] {
                    seen[cc][ss] = true;
                    let l = self.crossings[cc][ss];
                    let (c2, s2) = Self::other(&occ, l, (cc, ss));
                    cc = c2;
                    ss = (s2 + 1) % 4;
                }
            }
        }
        // connected components of the crossing graph
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for o in occ.iter().skip(1) {
            let (a, b) = (find(&mut parent, o[0].0), find(&mut parent, o[1].0));
            parent[a] = b;
        }
        let pieces = (0..n).filter(|&i| find(&mut parent, i) == i).count();
        let chi = n as i64 - 2 * n as i64 + faces as i64;
        if chi != 2 * pieces as i64 {
            return Err(Error::NotPlanar(format!(
                "V - E + F = {chi}, expected {} for {pieces} piece(s)",
                2 * pieces
            )));
        }
        Ok(())
    }

    /// JSON form accepted by [`PlanarDiagram::parse`].
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "pd": self.crossings, "unknots": self.unknots })
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[")?;
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "X[{},{},{},{}]", x[0], x[1], x[2], x[3])?;
        }
        write!(f, "]")
    }
}

fn parse_text(s: &str) -> Result<Vec<[u32; 4]>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = compact
        .strip_prefix("PD[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("expected PD[...]".into()))?;
    let mut out = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix("X[")
            .ok_or_else(|| Error::Parse(format!("expected X[ at `{rest}`")))?;
        let close = inner.find(']').ok_or_else(|| Error::Parse("unclosed X[".into()))?;
        let nums: Vec<&str> = inner[..close].split(',').collect();
        if nums.len() != 4 {
            return Err(Error::Parse(format!("crossing with {} labels", nums.len())));
        }
        let mut x = [0u32; 4];
        for (i, t) in nums.iter().enumerate() {
            x[i] = t.parse().map_err(|_| Error::Parse(format!("bad label `{t}`")))?;
        }
        out.push(x);
        rest = &inner[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err(Error::Parse("trailing comma".into()));
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(Error::Parse(format!("unexpected `{rest}`")));
        }
    }
    Ok(out)
}

/// Closure of a braid word on `strands` strands. Generator `i > 0` is a
/// positive crossing between positions `i` and `i+1`, `-i` its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PlanarDiagram> {
    let mut next = strands as u32 + 1;
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut xs: Vec<[u32; 4]> = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(Error::Parse(format!("generator {g} out of range")));
        }
        let (l, r) = (cur[i - 1], cur[i]);
        let (nl, nr) = (next, next + 1);
        next += 2;
        if g > 0 {
            // over strand goes from bottom left to top right
            xs.push([r, nr, nl, l]);
        } else {
            xs.push([l, r, nr, nl]);
        }
        cur[i - 1] = nl;
        cur[i] = nr;
    }
    // close up: final label at position p is identified with initial label p
    let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
    let mut unknots = 0;
    for (p, &l) in cur.iter().enumerate() {
        if l == p as u32 + 1 {
            unknots += 1;
        } else {
            rename.insert(l, p as u32 + 1);
        }
    }
    for x in xs.iter_mut() {
        for l in x.iter_mut() {
            if let Some(&r) = rename.get(l) {
                *l = r;
            }
        }
    }
    PlanarDiagram::new(xs, unknots)
}

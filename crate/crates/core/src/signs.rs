//! Edge assignments: ±1 labels on the edges of the cube whose products around
//! 2-faces follow the face types.
//!
//! Edges of the `k`-cube are indexed by `star * 2^(k-1) + rest`, where `rest`
//! is the 0/1 part of the edge with the star position removed (bit `j` of
//! `rest` is arc `j` for `j < star` and arc `j+1` otherwise). Serialized
//! assignments are bit strings in this order, `1` meaning `-1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::config::{classify_one_dim, classify_two_dim, Configuration, Face, FaceType, OneDim};
use crate::error::{Error, Result};
use crate::oddalg::check_path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    X,
    Y,
}

impl Kind {
    pub fn as_char(self) -> char {
        match self {
            Kind::X => 'X',
            Kind::Y => 'Y',
        }
    }

    /// Required value of `s(a)s(b)s(c)s(d)` on a face of type `t`.
    pub fn face_product(self, t: FaceType) -> i64 {
        match (self, t) {
            (_, FaceType::A) => 1,
            (_, FaceType::K) => -1,
            (Kind::X, FaceType::X) | (Kind::Y, FaceType::Y) => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "X" | "x" => Ok(Kind::X),
            "Y" | "y" => Ok(Kind::Y),
            _ => Err(Error::Parse(format!("unknown kind {s}"))),
        }
    }
}

pub fn edge_count(k: usize) -> usize {
    if k == 0 {
        0
    } else {
        k << (k - 1)
    }
}

pub fn edge_index(e: Face) -> usize {
    let k = e.len as usize;
    let star = e.stars.trailing_zeros() as usize;
    let low = e.ones & ((1 << star) - 1);
    let high = e.ones >> (star + 1);
    (star << (k - 1)) | (low | high << star) as usize
}

pub fn edge_at(k: usize, index: usize) -> Face {
    let star = index >> (k - 1);
    let rest = (index & ((1 << (k - 1)) - 1)) as u32;
    let low = rest & ((1 << star) - 1);
    let high = rest >> star;
    Face::edge(k, star, low | high << (star + 1))
}

/// The four edges `a=(*,0), b=(1,*), c=(0,*), d=(*,1)` of a 2-face.
pub fn square_edges(f: Face) -> [Face; 4] {
    let st = f.star_positions();
    let (i, j) = (st[0], st[1]);
    let k = f.len as usize;
    let (bi, bj) = (1u32 << i, 1u32 << j);
    [
        Face::edge(k, i, f.ones),
        Face::edge(k, j, f.ones | bi),
        Face::edge(k, j, f.ones),
        Face::edge(k, i, f.ones | bj),
    ]
}

/// All faces of a given dimension of the `k`-cube.
pub fn faces(k: usize, n: usize) -> Vec<Face> {
    let mut out = Vec::new();
    for stars in 0u32..(1 << k) {
        if stars.count_ones() as usize != n {
            continue;
        }
        let free = !stars & ((1u32 << k) - 1);
        let mut sub = 0u32;
        loop {
            out.push(Face { len: k as u8, stars, ones: sub });
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeAssignment {
    kind: Kind,
    k: usize,
    values: Vec<i8>,
}

impl EdgeAssignment {
    pub fn constant(k: usize, kind: Kind) -> Self {
        EdgeAssignment { kind, k, values: vec![1; edge_count(k)] }
    }

    pub fn from_values(k: usize, kind: Kind, values: Vec<i8>) -> Result<Self> {
        if values.len() != edge_count(k) || values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Dimension("edge values do not fit the cube".into()));
        }
        Ok(EdgeAssignment { kind, k, values })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, e: Face) -> i64 {
        self.values[edge_index(e)] as i64
    }

    pub fn set(&mut self, e: Face, v: i8) {
        self.values[edge_index(e)] = v;
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    /// `1` for `-1`, in edge index order.
    pub fn to_bits(&self) -> String {
        self.values.iter().map(|&v| if v < 0 { '1' } else { '0' }).collect()
    }

    pub fn face_product(&self, f: Face) -> i64 {
        square_edges(f).iter().map(|&e| self.value(e)).product()
    }

    /// The assignment induced on the cube of a face.
    pub fn restrict(&self, f: Face) -> Result<EdgeAssignment> {
        let n = f.dim();
        if f.len as usize != self.k || n == 0 {
            return Err(Error::Dimension(format!("cannot restrict to {f}")));
        }
        let pos = f.star_positions();
        let mut values = Vec::with_capacity(edge_count(n));
        for idx in 0..edge_count(n) {
            let lam = edge_at(n, idx);
            let mut ones = f.ones;
            for (j, &p) in pos.iter().enumerate() {
                if lam.ones >> j & 1 == 1 {
                    ones |= 1 << p;
                }
            }
            let star = pos[lam.stars.trailing_zeros() as usize];
            values.push(self.values[edge_index(Face::edge(self.k, star, ones))]);
        }
        Ok(EdgeAssignment { kind: self.kind, k: n, values })
    }

    /// Product of the values along an edge path.
    pub fn path_sign(&self, theta: &[Face]) -> Result<i64> {
        check_path(theta)?;
        if theta.iter().any(|e| e.len as usize != self.k) {
            return Err(Error::BrokenPath);
        }
        Ok(theta.iter().map(|&e| self.value(e)).product())
    }

    /// Checks every 2-face against the face types of `c`.
    pub fn validate(&self, c: &Configuration) -> Result<()> {
        if c.dim() != self.k {
            return Err(Error::Dimension("assignment and configuration differ".into()));
        }
        let bad = face_types(c)?
            .into_iter()
            .any(|(f, t)| self.face_product(f) != self.kind.face_product(t));
        if bad {
            Err(Error::InvalidAssignment(self.kind.as_char()))
        } else {
            Ok(())
        }
    }
}

/// Types of all 2-faces of `c`.
pub fn face_types(c: &Configuration) -> Result<Vec<(Face, FaceType)>> {
    faces(c.dim(), 2)
        .into_par_iter()
        .map(|f| Ok((f, classify_two_dim(&c.resolve(f)?)?)))
        .collect()
}

/// Incremental row echelon form over GF(2); rows are sorted variable lists.
#[derive(Default)]
struct Echelon {
    rows: HashMap<u32, (Vec<u32>, bool)>,
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Echelon {
    /// Adds an equation; `false` if it contradicts the earlier ones.
    fn insert(&mut self, mut row: Vec<u32>, mut rhs: bool) -> bool {
        row.sort_unstable();
        let mut dedup = Vec::with_capacity(row.len());
        for v in row {
            if dedup.last() == Some(&v) {
                dedup.pop();
            } else {
                dedup.push(v);
            }
        }
        let mut row = dedup;
        while let Some(&p) = row.last() {
            match self.rows.get(&p) {
                Some((r, b)) => {
                    row = xor_sorted(&row, r);
                    rhs ^= b;
                }
                None => {
                    self.rows.insert(p, (row, rhs));
                    return true;
                }
            }
        }
        !rhs
    }

    /// Solution with free variables set to 0.
    fn solve(&self, n: usize) -> Vec<bool> {
        let mut x = vec![false; n];
        let mut pivots: Vec<&u32> = self.rows.keys().collect();
        pivots.sort_unstable();
        for &p in pivots {
            let (r, b) = &self.rows[&p];
            let mut v = *b;
            for &q in &r[..r.len() - 1] {
                v ^= x[q as usize];
            }
            x[p as usize] = v;
        }
        x
    }
}

/// Finds an assignment of the given kind by elimination over GF(2).
pub fn solve_edge_assignment(c: &Configuration, kind: Kind) -> Result<EdgeAssignment> {
    let k = c.dim();
    let mut ech = Echelon::default();
    for (f, t) in face_types(c)? {
        let row = square_edges(f).iter().map(|&e| edge_index(e) as u32).collect();
        if !ech.insert(row, kind.face_product(t) == -1) {
            return Err(Error::Unsolvable(kind.as_char()));
        }
    }
    let x = ech.solve(edge_count(k));
    let values = x.into_iter().map(|b| if b { -1 } else { 1 }).collect();
    Ok(EdgeAssignment { kind, k, values })
}

/// A vertex potential `η` with `η(ε⁰)η(ε¹) = s(ε)t(ε)` on every edge,
/// normalized to `+1` at the zero vertex. Indexed by vertex mask.
pub fn gauge_compare(s: &EdgeAssignment, t: &EdgeAssignment) -> Result<Vec<i8>> {
    if s.k != t.k || s.kind != t.kind {
        return Err(Error::NotGaugeEquivalent);
    }
    let k = s.k;
    let mut eta = vec![0i8; 1 << k];
    eta[0] = 1;
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(v) = queue.pop_front() {
        for i in 0..k {
            let w = v ^ (1 << i);
            let e = Face::edge(k, i, v);
            let val = eta[v as usize] * (s.value(e) * t.value(e)) as i8;
            if eta[w as usize] == 0 {
                eta[w as usize] = val;
                queue.push_back(w);
            }
        }
    }
    for idx in 0..edge_count(k) {
        let e = edge_at(k, idx);
        let lhs = eta[e.start() as usize] * eta[e.end() as usize];
        if lhs as i64 != s.value(e) * t.value(e) {
            return Err(Error::NotGaugeEquivalent);
        }
    }
    Ok(eta)
}

/// The assignment for `c` with arc `i` reversed: sign flipped on split
/// edges through arc `i`.
pub fn reorient_correction(c: &Configuration, i: usize, s: &EdgeAssignment) -> Result<EdgeAssignment> {
    let k = c.dim();
    if i >= k || s.k != k {
        return Err(Error::Dimension(format!("no arc {i}")));
    }
    let mut t = s.clone();
    for rest in 0..(1u32 << k) {
        if rest >> i & 1 == 1 {
            continue;
        }
        let e = Face::edge(k, i, rest);
        if classify_one_dim(&c.resolve(e)?)? == OneDim::Split {
            t.values[edge_index(e)] = -t.values[edge_index(e)];
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::PlanarDiagram;

    fn zero(pd: &str) -> Configuration {
        Configuration::zero_smoothing(&PlanarDiagram::parse(pd).unwrap())
    }

    const TREFOIL: &str = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]";

    #[test]
    fn edge_index_round_trip() {
        for k in 1..6 {
            for i in 0..edge_count(k) {
                assert_eq!(edge_index(edge_at(k, i)), i);
            }
        }
        assert_eq!(faces(3, 2).len(), 3 * 2);
        assert_eq!(faces(4, 1).len(), edge_count(4));
    }

    #[test]
    fn small_assignments() {
        let s = EdgeAssignment::constant(0, Kind::Y);
        assert!(s.values().is_empty());
        let c = zero("PD[X[1,4,2,3],X[3,2,4,1]]");
        let s = solve_edge_assignment(&c, Kind::Y).unwrap();
        s.validate(&c).unwrap();
        assert!(s.values().iter().all(|&v| v == 1));
    }

    #[test]
    fn solver_outputs_validate_both_kinds() {
        let c = zero(TREFOIL);
        let mixed = face_types(&c).unwrap().iter().any(|(_, t)| matches!(t, FaceType::X | FaceType::Y));
        for kind in [Kind::X, Kind::Y] {
            let s = solve_edge_assignment(&c, kind).unwrap();
            s.validate(&c).unwrap();
            if mixed {
                s.clone().with_kind(kind).validate(&c.mirror().reverse()).unwrap_err();
            }
            let flipped = s.with_kind(if kind == Kind::X { Kind::Y } else { Kind::X });
            flipped.validate(&c.mirror().reverse()).unwrap();
        }
    }

    #[test]
    fn gauge_of_a_point_coboundary() {
        let c = zero(TREFOIL);
        let s = solve_edge_assignment(&c, Kind::Y).unwrap();
        let mut t = s.clone();
        for i in 0..3 {
            let e = Face::edge(3, i, 0b101 & !(1 << i));
            let e = if e.ones | 1 << i == 0b101 { e } else { continue };
            t.set(e, -t.value(e) as i8);
        }
        for i in 0..3 {
            if 0b101 >> i & 1 == 0 {
                let e = Face::edge(3, i, 0b101);
                t.set(e, -t.value(e) as i8);
            }
        }
        let eta = gauge_compare(&s, &t).unwrap();
        for v in 0..8 {
            assert_eq!(eta[v], if v == 0b101 { -1 } else { 1 });
        }
    }

    #[test]
    fn restriction_and_paths() {
        let c = zero(TREFOIL);
        let s = solve_edge_assignment(&c, Kind::Y).unwrap();
        assert_eq!(s.restrict(Face::full(3)).unwrap(), s);
        for f in faces(3, 2) {
            let r = s.restrict(f).unwrap();
            r.validate(&c.resolve(f).unwrap()).unwrap();
        }
        let mut t = EdgeAssignment::constant(2, Kind::Y);
        let p = crate::oddalg::perm_to_path(&[0, 1]);
        t.set(p[0], -1);
        assert_eq!(t.path_sign(&p).unwrap(), -1);
        assert_eq!(t.path_sign(&[]).unwrap(), 1);
        assert_eq!(t.path_sign(&[p[1], p[0]]), Err(Error::BrokenPath));
    }

    #[test]
    fn reorientation_keeps_validity() {
        let c = zero(TREFOIL);
        let s = solve_edge_assignment(&c, Kind::Y).unwrap();
        for i in 0..3 {
            let d = c.reverse_arc(i).unwrap();
            reorient_correction(&c, i, &s).unwrap().validate(&d).unwrap();
        }
    }
}

//! Classification of faces: fusion/split, the four kinds of 2-faces and the
//! families of configurations carrying higher maps.

use std::fmt;

use super::{Configuration, End, Face, Layout};
use crate::error::{Error, Result};
use crate::oddalg::{ExtElement, FaceRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OneDim {
    Fusion,
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceType {
    K,
    A,
    X,
    Y,
}

/// The families of active oriented configurations with a nonzero higher map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HigherType {
    A(usize),
    B(usize),
    C(usize, usize),
    D(usize, usize),
    F(usize, usize),
    G(usize, usize),
}

impl fmt::Display for HigherType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HigherType::A(k) => write!(f, "A_{k}"),
            HigherType::B(k) => write!(f, "B_{k}"),
            HigherType::C(p, q) => write!(f, "C_{{{p},{q}}}"),
            HigherType::D(p, q) => write!(f, "D_{{{p},{q}}}"),
            HigherType::F(p, q) => write!(f, "F_{{{p},{q}}}"),
            HigherType::G(p, q) => write!(f, "G_{{{p},{q}}}"),
        }
    }
}

/// Type of `m(C*)` given the type of `C`.
pub fn dual_type(t: HigherType) -> HigherType {
    match t {
        HigherType::A(k) => HigherType::B(k),
        HigherType::B(k) => HigherType::A(k),
        HigherType::C(p, q) => HigherType::D(p, q),
        HigherType::D(p, q) => HigherType::C(p, q),
        HigherType::F(p, q) => HigherType::G(q, p),
        HigherType::G(p, q) => HigherType::F(q, p),
    }
}

pub fn classify_one_dim(c: &Configuration) -> Result<OneDim> {
    if c.dim() != 1 {
        return Err(Error::Dimension(format!("expected 1 arc, found {}", c.dim())));
    }
    let l = c.layout();
    Ok(if l.source(0) == l.target(0) { OneDim::Split } else { OneDim::Fusion })
}

/// All types of the active part of `c`.
pub fn classify_higher(c: &Configuration) -> Vec<HigherType> {
    classify_higher_layout(&c.active_part().0)
}

/// All types of an active layout. Empty for disconnected or arcless layouts.
pub fn classify_higher_layout(l: &Layout) -> Vec<HigherType> {
    let k = l.arcs();
    if k == 0 || l.active_components() != 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if let Some(t) = type_a(l) {
        out.push(t);
    }
    if let Some(t) = type_b(l) {
        out.push(t);
    }
    if let Some(t) = type_c(l) {
        out.push(t);
    }
    if let Some(t) = type_d(l) {
        out.push(t);
    }
    if let Some((p, q, _)) = type_f(l) {
        out.push(HigherType::F(p, q));
    }
    if let Some((p, q, _)) = type_f(&l.reversed()) {
        out.push(HigherType::G(p, q));
    }
    debug_assert!(k < 3 || out.len() <= 1, "several types for {k} arcs: {out:?}");
    out
}

fn counts(l: &Layout, c: usize) -> (usize, usize) {
    let st = &l.circles[c].stations;
    let s = st.iter().filter(|x| x.end == End::Source).count();
    (s, st.len() - s)
}

fn type_a(l: &Layout) -> Option<HigherType> {
    if l.len() != 2 {
        return None;
    }
    let s = l.source(0);
    let all = (0..l.arcs()).all(|a| l.source(a) == s && l.target(a) != s);
    all.then_some(HigherType::A(l.arcs()))
}

fn type_b(l: &Layout) -> Option<HigherType> {
    let k = l.arcs();
    if l.len() != k || (0..l.len()).any(|c| counts(l, c) != (1, 1)) {
        return None;
    }
    Some(HigherType::B(k))
}

/// Reads the stations of circle `c` in either direction. Each entry is
/// `(arc, end, inside)` where inside means right of the walking direction.
fn read(l: &Layout, c: usize, forward: bool) -> Vec<(usize, End, bool)> {
    let st = &l.circles[c].stations;
    if forward {
        st.iter().map(|s| (s.arc, s.end, !s.left)).collect()
    } else {
        st.iter().rev().map(|s| (s.arc, s.end, s.left)).collect()
    }
}

fn type_c(l: &Layout) -> Option<HigherType> {
    let k = l.arcs();
    if l.len() != 1 || k < 2 {
        return None;
    }
    for forward in [true, false] {
        let seq = read(l, 0, forward);
        let m = seq.len();
        for r in 0..m {
            let at = |i: usize| seq[(r + i) % m];
            let p = (0..m).take_while(|&i| at(i).1 == End::Source && at(i).2).count();
            let q = (p..m).take_while(|&i| at(i).1 == End::Source && !at(i).2).count();
            if p == 0 || q == 0 || p + q != k {
                continue;
            }
            let inner = (0..p).all(|i| {
                let (a, e, ins) = at(k + i);
                e == End::Target && ins && a == at(p - 1 - i).0
            });
            let outer = (0..q).all(|i| {
                let (a, e, ins) = at(k + p + i);
                e == End::Target && !ins && a == at(p + q - 1 - i).0
            });
            if inner && outer {
                return Some(HigherType::C(p.min(q), p.max(q)));
            }
        }
    }
    None
}

fn type_d(l: &Layout) -> Option<HigherType> {
    let k = l.arcs();
    if k < 2 || l.len() != k - 1 {
        return None;
    }
    let mut z = None;
    for c in 0..l.len() {
        match counts(l, c) {
            (2, 2) if z.is_none() => z = Some(c),
            (1, 1) => {}
            _ => return None,
        }
    }
    let z = z?;
    let circle = &l.circles[z];
    // Follow the chain starting at each source station on z.
    let mut chains = Vec::new();
    for (i, st) in circle.stations.iter().enumerate() {
        if st.end != End::Source {
            continue;
        }
        let mut arcs = vec![st.arc];
        let mut a = st.arc;
        while l.target(a) != z {
            let c = l.target(a);
            let next = l.circles[c].stations.iter().find(|s| s.end == End::Source)?;
            a = next.arc;
            arcs.push(a);
            if arcs.len() > k {
                return None;
            }
        }
        let end = l.ends[a][1].1;
        if circle.stations[end].left != st.left {
            return None;
        }
        chains.push((i, end, st.left, arcs));
    }
    if chains.len() != 2 || chains[0].2 == chains[1].2 || chains[0].3.len() + chains[1].3.len() != k {
        return None;
    }
    let (g, d) = if !chains[0].2 { (&chains[0], &chains[1]) } else { (&chains[1], &chains[0]) };
    let m = circle.stations.len();
    let pos = |i: usize| (i + m - g.0) % m;
    if pos(d.0) == 1 && pos(g.1) == 2 && pos(d.1) == 3 {
        let (p, q) = (g.3.len(), d.3.len());
        return Some(HigherType::D(p.min(q), p.max(q)));
    }
    None
}

/// Checks the F family; the G family is this check on the reversed layout.
/// Returns `(p, q, y)`.
pub(crate) fn type_f(l: &Layout) -> Option<(usize, usize, usize)> {
    let qualifies = |c: usize| {
        l.circles[c]
            .stations
            .iter()
            .all(|s| s.end != End::Source || l.target(s.arc) == c)
    };
    let ys: Vec<usize> = (0..l.len()).filter(|&c| qualifies(c)).collect();
    let [y] = ys[..] else { return None };
    for c in 0..l.len() {
        if c == y {
            continue;
        }
        let st = &l.circles[c].stations;
        if st.len() != 1 || st[0].end != End::Source || l.target(st[0].arc) != y {
            return None;
        }
    }
    let st = &l.circles[y].stations;
    let m = st.len();
    let mut q = 0;
    for (i, s) in st.iter().enumerate() {
        if s.end != End::Source {
            continue;
        }
        q += 1;
        let j = if s.left { (i + m - 1) % m } else { (i + 1) % m };
        if st[j].arc != s.arc || st[j].end != End::Target {
            return None;
        }
    }
    Some((l.len() - 1, q, y))
}

/// Classifies a 2-dimensional configuration by comparing the two ways
/// around its square of 1-dimensional maps.
pub fn classify_two_dim(c: &Configuration) -> Result<FaceType> {
    if c.dim() != 2 {
        return Err(Error::Dimension(format!("expected 2 arcs, found {}", c.dim())));
    }
    let rule = |w: &str| -> Result<FaceRule> {
        let f = Face::parse(w)?;
        FaceRule::one_dim(&c.resolve(f)?)
    };
    let (a, b, cc, d) = (rule("*0")?, rule("1*")?, rule("0*")?, rule("*1")?);
    let n = c.resolve(Face::vertex(2, 0))?.circle_count();
    let mut same = true;
    let mut opposite = true;
    let mut zero = true;
    for mono in 0..(1u64 << n) {
        let one = ExtElement::basis(mono);
        let left = b.apply(&a.apply(&one));
        let right = d.apply(&cc.apply(&one));
        zero &= left.is_zero() && right.is_zero();
        same &= left == right;
        opposite &= left == right.neg();
    }
    if zero {
        let l = c.active_part().0;
        let c11 = type_c(&l) == Some(super::HigherType::C(1, 1));
        return Ok(if c11 { FaceType::Y } else { FaceType::X });
    }
    if same {
        Ok(FaceType::K)
    } else if opposite {
        Ok(FaceType::A)
    } else {
        Err(Error::Invariant(format!("square neither commutes nor anticommutes: {}", c.debug_json())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{PlanarGraph, Site};
    use crate::diagram::PlanarDiagram;
    use std::sync::Arc;

    fn zero(pd: &str) -> Configuration {
        Configuration::zero_smoothing(&PlanarDiagram::parse(pd).unwrap())
    }

    #[test]
    fn one_dim_types() {
        let c = zero("PD[X[1,4,2,3],X[3,2,4,1]]").resolve(Face::parse("*0").unwrap()).unwrap();
        assert_eq!(classify_one_dim(&c).unwrap(), OneDim::Fusion);
        let mut t = classify_higher(&c);
        t.sort();
        assert_eq!(t, vec![HigherType::A(1), HigherType::F(1, 0), HigherType::G(1, 0)]);
        let s = c.star();
        assert_eq!(classify_one_dim(&s).unwrap(), OneDim::Split);
        let mut t = classify_higher(&s);
        t.sort();
        assert_eq!(t, vec![HigherType::B(1), HigherType::F(0, 1), HigherType::G(0, 1)]);
    }

    #[test]
    fn hopf_square_is_a2() {
        let c = zero("PD[X[1,4,2,3],X[3,2,4,1]]");
        let t = classify_higher(&c);
        assert!(t.contains(&HigherType::A(2)) || t.contains(&HigherType::B(2)), "{t:?}");
    }

    #[test]
    fn interleaved_chords_are_c11_and_d11() {
        // Two crossings of a single-circle configuration with interleaved
        // chords on opposite sides: the 1-resolution of one Hopf arc composed
        // with reorientations covers both X and Y squares.
        let g = Arc::new(PlanarGraph::new(vec![[1, 4, 2, 3], [3, 2, 4, 1]], 0).unwrap());
        let mut found = std::collections::HashSet::new();
        for a in 0..4u8 {
            for b in 0..4u8 {
                let c = Configuration::new(g.clone(), vec![Site::Arc(a), Site::Arc(b)]).unwrap();
                let ft = classify_two_dim(&c).unwrap();
                found.insert(ft);
                let mut t = classify_higher(&c);
                t.sort();
                if ft == FaceType::Y {
                    assert_eq!(t, vec![HigherType::C(1, 1), HigherType::D(1, 1)]);
                }
                let rm = c.mirror().reverse();
                let swapped = match ft {
                    FaceType::X => FaceType::Y,
                    FaceType::Y => FaceType::X,
                    f => f,
                };
                assert_eq!(classify_two_dim(&rm).unwrap(), swapped);
            }
        }
        assert!(found.contains(&FaceType::X) && found.contains(&FaceType::Y), "{found:?}");
    }

    #[test]
    fn dual_table_is_an_involution() {
        for t in [
            HigherType::A(3),
            HigherType::B(2),
            HigherType::C(1, 2),
            HigherType::D(2, 2),
            HigherType::F(2, 1),
            HigherType::G(0, 3),
        ] {
            assert_eq!(dual_type(dual_type(t)), t);
        }
        assert_eq!(dual_type(HigherType::F(2, 1)), HigherType::G(1, 2));
    }
}

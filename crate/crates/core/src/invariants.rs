//! Structural checks on configurations and their maps, used by tests and by
//! the `verify` command.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Configuration, FaceType, Layout};
use crate::cube::{Complex, Flavor};
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::oddalg::{circles, face_rule, Monomial};
use crate::signs::{face_types, reorient_correction, solve_edge_assignment, EdgeAssignment, Kind};
use crate::zlinalg::{AbelianGroup, Filtered, PageTable, Table};

/// Number of 2-faces of each type in a 3-dimensional configuration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FaceCounts {
    pub a: usize,
    pub k: usize,
    pub x: usize,
    pub y: usize,
}

pub fn face_counts(c: &Configuration) -> Result<FaceCounts> {
    if c.dim() != 3 {
        return Err(Error::Dimension(format!("expected 3 arcs, found {}", c.dim())));
    }
    let mut n = FaceCounts::default();
    for (_, t) in face_types(c)? {
        match t {
            FaceType::A => n.a += 1,
            FaceType::K => n.k += 1,
            FaceType::X => n.x += 1,
            FaceType::Y => n.y += 1,
        }
    }
    Ok(n)
}

/// `a + x` and `a + y` are even on every 3-cube.
pub fn check_face_parity(c: &Configuration) -> Result<FaceCounts> {
    let n = face_counts(c)?;
    if (n.a + n.x) % 2 != 0 || (n.a + n.y) % 2 != 0 {
        return Err(Error::Invariant(format!("face counts {n:?} have odd parity")));
    }
    Ok(n)
}

/// Circle of a layout for every label of the underlying graph, `None` for
/// labels that are not on a circle.
fn label_circles(l: &Layout, labels: usize) -> Vec<Option<usize>> {
    (1..=labels as u32)
        .map(|e| {
            let c = l.circle_of(e);
            (c < l.len()).then_some(c)
        })
        .collect()
}

/// If a source monomial contains the circle through an edge, every target
/// monomial reached with nonzero coefficient contains the circle of the
/// starred configuration through the same edge.
pub fn check_filtration(c: &Configuration, s: &EdgeAssignment) -> Result<()> {
    let labels = c.graph().labels();
    let src = label_circles(&c.layout(), labels);
    let tgt = label_circles(&c.star().layout(), labels);
    for (alpha, beta, _) in face_rule(c, s, false)?.entries() {
        for (a, b) in src.iter().zip(&tgt) {
            if let (Some(a), Some(b)) = (a, b) {
                if alpha >> a & 1 == 1 && beta >> b & 1 == 0 {
                    return Err(Error::Invariant(format!(
                        "entry {alpha:b} -> {beta:b} leaves the filtration of circle {a}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Bijection from circles of `a` to circles of `b` through shared labels;
/// free circles are matched in order.
fn match_circles(a: &Layout, b: &Layout) -> Result<Vec<usize>> {
    let mut free_b = (0..b.len()).filter(|&i| b.circles[i].labels.is_empty());
    let map: Vec<usize> = a
        .circles
        .iter()
        .map(|c| if c.labels.is_empty() { free_b.next().unwrap_or(usize::MAX) } else { b.circle_of(c.min_label()) })
        .collect();
    let mut seen = vec![false; b.len()];
    for &m in &map {
        if m >= b.len() || std::mem::replace(&mut seen[m], true) {
            return Err(Error::Invariant("circles do not match".into()));
        }
    }
    Ok(map)
}

fn transport(m: Monomial, map: &[usize]) -> Monomial {
    circles(m).into_iter().fold(0, |acc, c| acc | 1 << map[c])
}

/// `|⟨d_C α, β⟩| = |⟨d_{m(C*)} β*, α*⟩|`, where `*` is the complementary
/// monomial and both maps use edge assignments of kind `Y`.
pub fn check_duality(c: &Configuration) -> Result<()> {
    let dual = c.star().mirror();
    let s = solve_edge_assignment(c, Kind::Y)?;
    let t = solve_edge_assignment(&dual, Kind::Y)?;
    let (lc, ls) = (c.layout(), c.star().layout());
    let (ld, lds) = (dual.layout(), dual.star().layout());
    // Sources of the dual map are circles of C*, targets circles of C.
    let to_dual_src = match_circles(&ls, &ld)?;
    let to_dual_tgt = match_circles(&lc, &lds)?;
    let full_c = (1u64 << lc.len()) - 1;
    let full_s = (1u64 << ls.len()) - 1;
    let mut forward: Vec<(Monomial, Monomial, i64)> = face_rule(c, &s, false)?
        .entries()
        .into_iter()
        .map(|(a, b, v)| (transport(full_s & !b, &to_dual_src), transport(full_c & !a, &to_dual_tgt), v.abs()))
        .collect();
    let mut backward: Vec<(Monomial, Monomial, i64)> =
        face_rule(&dual, &t, false)?.entries().into_iter().map(|(a, b, v)| (a, b, v.abs())).collect();
    forward.sort_unstable();
    backward.sort_unstable();
    if forward != backward {
        return Err(Error::Invariant(format!(
            "dual map differs: {} entries against {}",
            forward.len(),
            backward.len()
        )));
    }
    Ok(())
}

/// Reverses arc `i` of a configuration and checks that `id + H_i` is a chain
/// map between the two complexes: `d_C - d_D = d_D H_i - H_i d_C`, with
/// `H_i^2 = 0` so that `id - H_i` is its inverse.
pub fn check_reorientation(c: &Configuration, s: &EdgeAssignment, i: usize, shift: (usize, usize)) -> Result<()> {
    let a = Complex::build(c, s, Flavor::Omega, shift)?;
    let t = reorient_correction(c, i, s)?;
    let b = Complex::build(&c.reverse_arc(i)?, &t, Flavor::Omega, shift)?;
    let h = a.homotopy(i)?;
    let (dc, dd) = (&a.chain().d, &b.chain().d);
    let lhs = dc.sub(dd)?;
    if lhs != dd.mul(&h)?.sub(&h.mul(dc)?)? {
        return Err(Error::Invariant(format!("id + H_{i} is not a chain map")));
    }
    if !h.mul(&h)?.is_zero() {
        return Err(Error::Invariant(format!("H_{i} does not square to zero")));
    }
    Ok(())
}

/// [`check_reorientation`] for a random orientation of the 0-smoothing and a
/// random arc, both drawn from `seed`.
pub fn check_random_reorientation(d: &PlanarDiagram, seed: u64) -> Result<()> {
    let c = Configuration::zero_smoothing(d);
    let k = c.dim();
    if k == 0 {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = c.reorient(rng.gen::<u32>() & ((1u64 << k) - 1) as u32);
    let i = rng.gen_range(0..k);
    let s = solve_edge_assignment(&c, Kind::Y)?;
    check_reorientation(&c, &s, i, d.sign_counts())
}

/// Page entry key; `E^∞` uses `r = usize::MAX`.
pub type PageKey = (usize, i64, i64);

/// Nonzero entries of pages `r >= from`, `E^∞` included.
pub fn pages_from(t: &PageTable, from: usize) -> BTreeMap<PageKey, AbelianGroup> {
    let mut out: BTreeMap<PageKey, AbelianGroup> = t
        .entries
        .iter()
        .filter(|((r, _, _), g)| *r >= from && !g.is_zero())
        .map(|(&k, g)| (k, g.clone()))
        .collect();
    for (&(p, q), g) in &t.infinity {
        if !g.is_zero() {
            out.insert((usize::MAX, p, q), g.clone());
        }
    }
    out
}

/// `E^2_{p,q}` against the edge-map homology at `h = -p`, `δ = p + q`.
pub fn check_e2(pages: &PageTable, d1: &Table) -> Result<()> {
    let mut want: BTreeMap<(i64, i64), AbelianGroup> = BTreeMap::new();
    for (&(h, q), g) in d1 {
        if !g.is_zero() {
            let delta = q - 2 * h;
            want.insert((-h, delta + h), g.clone());
        }
    }
    let mut have = pages.page(2);
    have.retain(|_, g| !g.is_zero());
    if have != want {
        return Err(Error::Invariant("second page differs from edge-map homology".into()));
    }
    Ok(())
}

/// `E^∞` against the associated graded of total homology.
pub fn check_convergence(f: &Filtered, pages: &PageTable) -> Result<()> {
    match f.convergence(pages)?.into_iter().find(|r| !r.agree) {
        Some(r) => Err(Error::Invariant(format!("E^inf differs from graded homology at ({}, {})", r.p, r.q))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::enumerate_small_configs;

    fn configs(max_arcs: usize) -> Vec<Configuration> {
        let ds: Vec<_> = fixtures::small(4).into_iter().map(|(_, d)| d).collect();
        enumerate_small_configs(&ds, max_arcs)
    }

    #[test]
    fn parity_on_three_cubes() {
        let cs: Vec<_> = configs(3).into_iter().filter(|c| c.dim() == 3).collect();
        assert!(!cs.is_empty());
        for c in &cs {
            check_face_parity(c).unwrap();
        }
    }

    #[test]
    fn filtration_and_duality() {
        for c in configs(3) {
            let s = solve_edge_assignment(&c, Kind::Y).unwrap();
            check_filtration(&c, &s).unwrap();
            check_duality(&c).unwrap();
        }
    }
}

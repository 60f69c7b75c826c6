//! The cube of resolutions as one graded free complex.
//!
//! Generators are pairs `(vertex, monomial)`; monomials are wedge products of
//! the circles of the resolved configuration, with circles numbered as in its
//! layout. Inside a vertex the basis is in graded lexicographic order.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Configuration, Face};
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::oddalg::{circles, degree, face_rule, FaceRule, Monomial};
use crate::signs::{faces, solve_edge_assignment, EdgeAssignment, Kind};
use crate::zlinalg::{Chain, SparseMat};

/// Which differential to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Only the edge maps.
    Gamma,
    /// Edge maps plus all higher face maps; needs a kind Y assignment.
    Omega,
    /// The full differential of the reversed mirror; needs kind X.
    OmegaPrime,
}

#[derive(Clone, Debug)]
struct Vertex {
    circles: usize,
    offset: usize,
    monos: Vec<Monomial>,
    /// Position of each monomial in `monos`.
    pos: Vec<u32>,
}

/// One face block of the differential in global generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub face: Face,
    pub entries: Vec<(u32, u32, i64)>,
}

#[derive(Clone, Debug)]
pub struct Complex {
    config: Configuration,
    assignment: EdgeAssignment,
    flavor: Flavor,
    shift: (usize, usize),
    vertices: Vec<Vertex>,
    blocks: Vec<Block>,
    chain: Chain,
}

fn graded_lex(c: usize) -> Vec<Monomial> {
    let mut m: Vec<Monomial> = (0..1u64 << c).collect();
    m.sort_by_key(|&x| (degree(x), circles(x)));
    m
}

/// `(-1)^{|ε⁰| + (n+1) splits(ε⁰)}`.
fn global_sign(c: &Configuration, f: Face) -> Result<i64> {
    let k = f.len as usize;
    let n = f.dim();
    let sp = c.split_count(Face::vertex(k, f.start()))?;
    let e = f.start().count_ones() as usize + (n + 1) * sp;
    Ok(if e % 2 == 0 { 1 } else { -1 })
}

impl Complex {
    /// Builds the complex of `c` with edge assignment `s`. `shift` is
    /// `(n+, n-)`.
    pub fn build(c: &Configuration, s: &EdgeAssignment, flavor: Flavor, shift: (usize, usize)) -> Result<Self> {
        if s.dim() != c.dim() {
            return Err(Error::Dimension("assignment and configuration differ in dimension".into()));
        }
        let (c, s) = match flavor {
            Flavor::Gamma => (c.clone(), s.clone()),
            Flavor::Omega => {
                if s.kind() != Kind::Y {
                    return Err(Error::InvalidAssignment('Y'));
                }
                (c.clone(), s.clone())
            }
            Flavor::OmegaPrime => {
                if s.kind() != Kind::X {
                    return Err(Error::InvalidAssignment('X'));
                }
                (c.mirror().reverse(), s.clone().with_kind(Kind::Y))
            }
        };
        s.validate(&c)?;
        let k = c.dim();
        let mut vertices = Vec::with_capacity(1 << k);
        let mut offset = 0;
        for v in 0..1u32 << k {
            let n = c.resolve(Face::vertex(k, v))?.circle_count();
            let monos = graded_lex(n);
            let mut pos = vec![0u32; monos.len()];
            for (i, &m) in monos.iter().enumerate() {
                pos[m as usize] = i as u32;
            }
            vertices.push(Vertex { circles: n, offset, monos, pos });
            offset += 1 << n;
        }
        let dims: Vec<usize> = match flavor {
            Flavor::Gamma => vec![1],
            _ => (1..=k).collect(),
        };
        let all: Vec<Face> = dims.iter().flat_map(|&n| faces(k, n)).collect();
        let blocks: Vec<Block> = all
            .par_iter()
            .map(|&f| {
                let sub = c.resolve(f)?;
                let rule = if f.dim() == 1 {
                    FaceRule::one_dim(&sub)?.scaled(s.value(f))
                } else {
                    face_rule(&sub, &s.restrict(f)?, false)?
                };
                let sign = if flavor == Flavor::Gamma { 1 } else { global_sign(&c, f)? };
                let (src, dst) = (&vertices[f.start() as usize], &vertices[f.end() as usize]);
                let entries = rule
                    .entries()
                    .into_iter()
                    .map(|(a, b, v)| {
                        (
                            (dst.offset + dst.pos[b as usize] as usize) as u32,
                            (src.offset + src.pos[a as usize] as usize) as u32,
                            sign * v,
                        )
                    })
                    .collect();
                Ok(Block { face: f, entries })
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|b| !b.entries.is_empty())
            .collect();
        let (np, nm) = shift;
        let mut h = Vec::with_capacity(offset);
        let mut delta = Vec::with_capacity(offset);
        for (v, vert) in vertices.iter().enumerate() {
            let w = v.count_ones() as i64;
            for &m in &vert.monos {
                h.push(w - nm as i64);
                delta.push(vert.circles as i64 - 2 * degree(m) as i64 - w + np as i64);
            }
        }
        let q = h.iter().zip(&delta).map(|(a, b)| b + 2 * a).collect();
        let t = blocks.iter().flat_map(|b| b.entries.iter().copied()).collect();
        let chain = Chain { h, delta, q, d: SparseMat::from_triplets(offset, offset, t) };
        Ok(Complex { config: c, assignment: s, flavor, shift, vertices, blocks, chain })
    }

    /// The complex of a diagram: 0-smoothing, optionally reoriented at
    /// random, with a solved edge assignment.
    pub fn for_diagram(d: &PlanarDiagram, flavor: Flavor, kind: Kind, orient_seed: Option<u64>) -> Result<Self> {
        let mut c = Configuration::zero_smoothing(d);
        if let Some(seed) = orient_seed {
            let k = c.dim();
            let mask = ChaCha8Rng::seed_from_u64(seed).gen::<u32>() & ((1u64 << k) - 1) as u32;
            c = c.reorient(mask);
        }
        let kind = match flavor {
            Flavor::Gamma => kind,
            Flavor::Omega => Kind::Y,
            Flavor::OmegaPrime => Kind::X,
        };
        let s = solve_edge_assignment(&c, kind)?;
        let cx = Complex::build(&c, &s, flavor, d.sign_counts())?;
        cx.check_d_squared()?;
        Ok(cx)
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn assignment(&self) -> &EdgeAssignment {
        &self.assignment
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn shift(&self) -> (usize, usize) {
        self.shift
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Global index of a generator.
    pub fn index(&self, vertex: u32, m: Monomial) -> usize {
        let v = &self.vertices[vertex as usize];
        v.offset + v.pos[m as usize] as usize
    }

    /// `(vertex, monomial)` of a global index.
    pub fn generator(&self, i: usize) -> (u32, Monomial) {
        let v = self.vertices.partition_point(|v| v.offset <= i) - 1;
        let vert = &self.vertices[v];
        (v as u32, vert.monos[i - vert.offset])
    }

    /// The part of the differential raising `h` by `n`.
    pub fn part(&self, n: usize) -> SparseMat {
        self.chain.part(n as i64).d
    }

    pub fn check_d_squared(&self) -> Result<()> {
        if self.chain.d.mul(&self.chain.d)?.is_zero() {
            Ok(())
        } else {
            Err(Error::NotAComplex)
        }
    }

    /// Checks that the edge maps preserve `q` and each `d_n` raises `h` by `n`
    /// and lowers `δ` by 2.
    pub fn check_gradings(&self) -> Result<()> {
        let c = &self.chain;
        for b in &self.blocks {
            let n = b.face.dim() as i64;
            for &(r, col, _) in &b.entries {
                let (r, col) = (r as usize, col as usize);
                let ok = c.h[r] - c.h[col] == n
                    && c.delta[r] - c.delta[col] == -2
                    && c.q[r] - c.q[col] == 2 * (n - 1);
                if !ok {
                    return Err(Error::Invariant(format!("block {} breaks the gradings", b.face)));
                }
            }
        }
        Ok(())
    }

    /// Flips the sign of one edge entry so that `d² ≠ 0`. Test hook.
    pub fn inject_sign_fault(&mut self) -> bool {
        let d = self.chain.d.clone();
        let t: Vec<(u32, u32, i64)> = d.triplets().collect();
        for i in 0..t.len() {
            let mut u = t.clone();
            u[i].2 = -u[i].2;
            let m = SparseMat::from_triplets(d.nrows(), d.ncols(), u);
            if !m.mul(&m).map(|p| p.is_zero()).unwrap_or(false) {
                self.chain.d = m;
                return true;
            }
        }
        false
    }

    /// The homotopy `H_i = ⊕ s(ε)(-1)^{splits(ε⁰)} H_{C_ε}` over the edges in
    /// direction `i`.
    pub fn homotopy(&self, i: usize) -> Result<SparseMat> {
        let c = &self.config;
        let k = c.dim();
        if i >= k {
            return Err(Error::Dimension(format!("no arc {i}")));
        }
        let mut t = Vec::new();
        for rest in 0..1u32 << k {
            if rest >> i & 1 == 1 {
                continue;
            }
            let e = Face::edge(k, i, rest);
            let sub = c.resolve(e)?;
            let sp = c.split_count(Face::vertex(k, e.start()))?;
            let sign = self.assignment.value(e) * if sp % 2 == 0 { 1 } else { -1 };
            let rule = FaceRule::homotopy_one(&sub)?;
            for (a, b, v) in rule.entries() {
                t.push((self.index(e.end(), b) as u32, self.index(e.start(), a) as u32, sign * v));
            }
        }
        Ok(SparseMat::from_triplets(self.len(), self.len(), t))
    }

    /// Vertex dimensions and sparse blocks.
    pub fn to_json(&self) -> Value {
        let k = self.config.dim();
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(v, vert)| {
                json!({
                    "vertex": Face::vertex(k, v as u32).to_string(),
                    "circles": vert.circles,
                    "dim": vert.monos.len(),
                })
            })
            .collect();
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "n": b.face.dim(),
                    "face": b.face.to_string(),
                    "source": Face::vertex(k, b.face.start()).to_string(),
                    "entries": b.entries.iter().map(|&(r, c, v)| [c as i64, r as i64, v]).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "arcs": k,
            "shift": {"n_plus": self.shift.0, "n_minus": self.shift.1},
            "assignment": self.assignment.to_bits(),
            "kind": self.assignment.kind().to_string(),
            "vertices": vertices,
            "blocks": blocks,
        })
    }

    /// Number of nonzero blocks per face dimension.
    pub fn block_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            *out.entry(b.face.dim()).or_insert(0) += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signs::reorient_correction;

    const HOPF: &str = "PD[X[1,4,2,3],X[3,2,4,1]]";
    const TREFOIL: &str = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]";

    fn pd(s: &str) -> PlanarDiagram {
        PlanarDiagram::parse(s).unwrap()
    }

    #[test]
    fn unknot_has_one_vertex_and_no_differential() {
        let c = Complex::for_diagram(&pd("PD[]"), Flavor::Omega, Kind::Y, None).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.chain().d.is_zero());
        let mut q = c.chain().q.clone();
        q.sort();
        assert_eq!(q, vec![-1, 1]);
    }

    #[test]
    fn hopf_and_trefoil_square_to_zero() {
        for p in [HOPF, TREFOIL] {
            for flavor in [Flavor::Gamma, Flavor::Omega, Flavor::OmegaPrime] {
                let c = Complex::for_diagram(&pd(p), flavor, Kind::Y, None).unwrap();
                c.check_d_squared().unwrap();
                c.check_gradings().unwrap();
            }
        }
    }

    #[test]
    fn hopf_has_a_higher_block() {
        let c = Complex::for_diagram(&pd(HOPF), Flavor::Omega, Kind::Y, None).unwrap();
        assert!(c.block_counts().get(&2).copied().unwrap_or(0) > 0);
        assert_eq!(c.vertices.len(), 4);
    }

    #[test]
    fn shifts_follow_crossing_signs() {
        let t = Complex::for_diagram(&pd(TREFOIL), Flavor::Gamma, Kind::Y, None).unwrap();
        assert_eq!(t.shift(), (3, 0));
        assert_eq!(*t.chain().h.iter().min().unwrap(), 0);
        let m = Complex::for_diagram(&pd(TREFOIL).mirror(), Flavor::Gamma, Kind::Y, None).unwrap();
        assert_eq!(m.shift(), (0, 3));
        assert_eq!(*m.chain().h.iter().min().unwrap(), -3);
    }

    #[test]
    fn fault_injection_breaks_d_squared() {
        let mut c = Complex::for_diagram(&pd(TREFOIL), Flavor::Omega, Kind::Y, None).unwrap();
        assert!(c.inject_sign_fault());
        assert_eq!(c.check_d_squared(), Err(Error::NotAComplex));
    }

    #[test]
    fn generator_index_round_trip() {
        let c = Complex::for_diagram(&pd(TREFOIL), Flavor::Gamma, Kind::Y, None).unwrap();
        for i in 0..c.len() {
            let (v, m) = c.generator(i);
            assert_eq!(c.index(v, m), i);
        }
    }

    #[test]
    fn reorientation_homotopy_identity() {
        for p in [HOPF, TREFOIL] {
            let d = pd(p);
            let cfg = Configuration::zero_smoothing(&d);
            let s = solve_edge_assignment(&cfg, Kind::Y).unwrap();
            let a = Complex::build(&cfg, &s, Flavor::Omega, d.sign_counts()).unwrap();
            for i in 0..cfg.dim() {
                let t = reorient_correction(&cfg, i, &s).unwrap();
                let b = Complex::build(&cfg.reverse_arc(i).unwrap(), &t, Flavor::Omega, d.sign_counts()).unwrap();
                let h = a.homotopy(i).unwrap();
                let (dc, dd) = (&a.chain().d, &b.chain().d);
                let lhs = dc.sub(dd).unwrap();
                let rhs = dd.mul(&h).unwrap().sub(&h.mul(dc).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{p} arc {i}");
                assert!(h.mul(&h).unwrap().is_zero());
            }
        }
    }
}

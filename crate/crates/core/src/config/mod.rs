//! Oriented arc configurations on the sphere.
//!
//! A configuration is stored as a 4-valent planar graph (the shadow of a link
//! diagram) together with a [`Site`] at every vertex. A vertex is either
//! smoothed, or it carries an oriented arc joining its two smoothed strands.
//! Every configuration that occurs in a cube of resolutions has this shape,
//! and the graph's rotation system carries all sidedness information.

mod types;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};

pub use types::{
    classify_one_dim, classify_higher, classify_higher_layout, classify_two_dim, dual_type,
    FaceType, OneDim, HigherType,
};

/// Local state at one vertex of the graph.
///
/// Slots are numbered counterclockwise. `Smooth(0)` joins slots `{0,1}` and
/// `{2,3}`, `Smooth(1)` joins `{1,2}` and `{3,0}`. `Arc(j)` smooths like
/// `Smooth(j % 2)` and adds an arc from the strand through slots `{j, j+1}` to
/// the strand through `{j+2, j+3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Site {
    Smooth(u8),
    Arc(u8),
}

impl Site {
    pub fn smoothing(self) -> u8 {
        match self {
            Site::Smooth(b) => b & 1,
            Site::Arc(j) => j & 1,
        }
    }

    fn partner(self, slot: u8) -> u8 {
        if self.smoothing() == 0 {
            slot ^ 1
        } else {
            slot ^ 3
        }
    }
}

/// The underlying 4-valent graph. Labels `1..=2n` are graph edges, labels
/// `2n+1..` are crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarGraph {
    slots: Vec<[u32; 4]>,
    occ: Vec<[(u32, u8); 2]>,
    free: usize,
}

impl PlanarGraph {
    pub fn new(slots: Vec<[u32; 4]>, free: usize) -> Result<Self> {
        let n = 2 * slots.len();
        let mut occ = vec![[(u32::MAX, 0u8); 2]; n + 1];
        let mut seen = vec![0u8; n + 1];
        for (v, x) in slots.iter().enumerate() {
            for (s, &l) in x.iter().enumerate() {
                let l = l as usize;
                if l == 0 || l > n || seen[l] == 2 {
                    return Err(Error::Parse(format!("label {l} out of range or repeated")));
                }
                occ[l][seen[l] as usize] = (v as u32, s as u8);
                seen[l] += 1;
            }
        }
        if seen[1..].iter().any(|&c| c != 2) {
            return Err(Error::Parse("every label must occur twice".into()));
        }
        Ok(PlanarGraph { slots, occ, free })
    }

    pub fn from_diagram(d: &PlanarDiagram) -> Self {
        PlanarGraph::new(d.crossings().to_vec(), d.unknots()).expect("validated diagram")
    }

    pub fn vertices(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[[u32; 4]] {
        &self.slots
    }

    pub fn free_circles(&self) -> usize {
        self.free
    }

    /// Number of labels including crossingless circles.
    pub fn labels(&self) -> usize {
        2 * self.slots.len() + self.free
    }

    fn other(&self, label: u32, at: (u32, u8)) -> (u32, u8) {
        let o = &self.occ[label as usize];
        if o[0] == at {
            o[1]
        } else {
            o[0]
        }
    }

    fn mirrored(&self) -> PlanarGraph {
        let slots = self.slots.iter().map(|x| [x[0], x[3], x[2], x[1]]).collect();
        PlanarGraph::new(slots, self.free).expect("mirror keeps labels")
    }
}

/// A point of the resolution cube of a configuration, or a face of it.
///
/// Bit `i` refers to the `i`-th arc in arc order. `stars` marks the free
/// coordinates, `ones` the coordinates fixed to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub len: u8,
    pub stars: u32,
    pub ones: u32,
}

impl Face {
    pub fn new(len: usize, stars: u32, ones: u32) -> Result<Self> {
        let full = if len >= 32 { u32::MAX } else { (1u32 << len) - 1 };
        if len > 31 || stars & ones != 0 || (stars | ones) & !full != 0 {
            return Err(Error::Dimension(format!("bad face stars={stars:b} ones={ones:b} len={len}")));
        }
        Ok(Face { len: len as u8, stars, ones })
    }

    pub fn vertex(len: usize, ones: u32) -> Self {
        Face { len: len as u8, stars: 0, ones }
    }

    pub fn edge(len: usize, star: usize, ones: u32) -> Self {
        Face { len: len as u8, stars: 1 << star, ones: ones & !(1 << star) }
    }

    pub fn full(len: usize) -> Self {
        Face { len: len as u8, stars: ((1u64 << len) - 1) as u32, ones: 0 }
    }

    pub fn dim(&self) -> usize {
        self.stars.count_ones() as usize
    }

    /// Start vertex (stars replaced by 0), as a bit mask.
    pub fn start(&self) -> u32 {
        self.ones
    }

    /// End vertex (stars replaced by 1).
    pub fn end(&self) -> u32 {
        self.ones | self.stars
    }

    /// `|eps^0|`.
    pub fn weight(&self) -> usize {
        self.ones.count_ones() as usize
    }

    pub fn star_positions(&self) -> Vec<usize> {
        (0..self.len as usize).filter(|&i| self.stars >> i & 1 == 1).collect()
    }

    /// Parses words like `"1*0"`; the first character is arc 0.
    pub fn parse(word: &str) -> Result<Self> {
        let mut stars = 0;
        let mut ones = 0;
        for (i, c) in word.chars().enumerate() {
            match c {
                '*' => stars |= 1 << i,
                '1' => ones |= 1 << i,
                '0' => {}
                _ => return Err(Error::Parse(format!("bad face word {word}"))),
            }
        }
        Face::new(word.chars().count(), stars, ones)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            let c = if self.stars >> i & 1 == 1 {
                '*'
            } else if self.ones >> i & 1 == 1 {
                '1'
            } else {
                '0'
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Source,
    Target,
}

/// An arc endpoint met while walking along a circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Station {
    pub arc: usize,
    pub end: End,
    /// Whether the arc leaves the circle to the left of the walking direction.
    pub left: bool,
    /// Index into the circle's label list of the label walked just before.
    pub after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    /// Labels in walking order, starting with the smallest.
    pub labels: Vec<u32>,
    pub stations: Vec<Station>,
}

impl Circle {
    pub fn min_label(&self) -> u32 {
        self.labels[0]
    }

    pub fn is_active(&self) -> bool {
        !self.stations.is_empty()
    }
}

/// The circles of a configuration with the positions of all arc endpoints.
/// Circles are ordered by their smallest label, which is the order induced
/// by ordering edges by smallest label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub circles: Vec<Circle>,
    circle_of: Vec<u32>,
    /// Per arc: `[(circle, station index) of the source, same for the target]`.
    pub ends: Vec<[(usize, usize); 2]>,
}

impl Layout {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn arcs(&self) -> usize {
        self.ends.len()
    }

    /// Circle containing a label.
    pub fn circle_of(&self, label: u32) -> usize {
        self.circle_of[label as usize] as usize
    }

    pub fn source(&self, arc: usize) -> usize {
        self.ends[arc][0].0
    }

    pub fn target(&self, arc: usize) -> usize {
        self.ends[arc][1].0
    }

    pub fn active(&self) -> Vec<usize> {
        (0..self.circles.len()).filter(|&c| self.circles[c].is_active()).collect()
    }

    pub fn passive(&self) -> Vec<usize> {
        (0..self.circles.len()).filter(|&c| !self.circles[c].is_active()).collect()
    }

    /// Edges of the configuration: maximal label runs between arc endpoints,
    /// ordered by smallest label. A circle without endpoints is one edge.
    pub fn edges(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for c in &self.circles {
            if c.stations.is_empty() {
                out.push(c.labels.clone());
                continue;
            }
            let m = c.labels.len();
            let st = &c.stations;
            for i in 0..st.len() {
                let from = (st[i].after + 1) % m;
                let to = st[(i + 1) % st.len()].after;
                let mut run = Vec::new();
                let mut p = from;
                loop {
                    run.push(c.labels[p]);
                    if p == to {
                        break;
                    }
                    p = (p + 1) % m;
                }
                out.push(run);
            }
        }
        for r in &mut out {
            r.sort_unstable();
        }
        out.sort();
        out
    }

    /// Counts the components of the active part with a union-find over arcs.
    pub fn active_components(&self) -> usize {
        let n = self.circles.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for a in 0..self.ends.len() {
            let (x, y) = (find(&mut parent, self.source(a)), find(&mut parent, self.target(a)));
            parent[x] = y;
        }
        let act = self.active();
        let mut roots: Vec<usize> = act.iter().map(|&c| find(&mut parent, c)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Euler check of the active part: circles cut at arc endpoints plus the
    /// arcs form a graph whose rotation system must describe a sphere for
    /// every component.
    pub fn euler_check(&self) -> bool {
        // Darts: 3 per station (forward, backward, arc).
        let mut base = vec![0usize; self.circles.len()];
        let mut total = 0;
        for (i, c) in self.circles.iter().enumerate() {
            base[i] = total;
            total += c.stations.len();
        }
        if total == 0 {
            return true;
        }
        let node = |c: usize, i: usize| base[c] + i;
        let mut alpha = vec![0usize; 3 * total];
        let mut sigma = vec![0usize; 3 * total];
        for (ci, c) in self.circles.iter().enumerate() {
            let m = c.stations.len();
            for (i, st) in c.stations.iter().enumerate() {
                let v = node(ci, i);
                let w = node(ci, (i + 1) % m);
                alpha[3 * v] = 3 * w + 1;
                alpha[3 * w + 1] = 3 * v;
                let e = self.ends[st.arc];
                let other = if st.end == End::Source { e[1] } else { e[0] };
                alpha[3 * v + 2] = 3 * node(other.0, other.1) + 2;
                let (f, b, a) = (3 * v, 3 * v + 1, 3 * v + 2);
                if st.left {
                    sigma[f] = a;
                    sigma[a] = b;
                    sigma[b] = f;
                } else {
                    sigma[f] = b;
                    sigma[b] = a;
                    sigma[a] = f;
                }
            }
        }
        let mut seen = vec![false; 3 * total];
        let mut faces = 0;
        for d in 0..3 * total {
            if seen[d] {
                continue;
            }
            faces += 1;
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                x = sigma[alpha[x]];
            }
        }
        let k = self.ends.len();
        let (v, e) = (2 * k, 3 * k);
        v as i64 - e as i64 + faces as i64 == 2 * self.active_components() as i64
    }

    /// The same layout with every arc reversed.
    pub fn reversed(&self) -> Layout {
        let mut out = self.clone();
        for c in &mut out.circles {
            for st in &mut c.stations {
                st.end = match st.end {
                    End::Source => End::Target,
                    End::Target => End::Source,
                };
            }
        }
        for e in &mut out.ends {
            e.swap(0, 1);
        }
        out
    }

    pub fn debug_json(&self) -> Value {
        let circles: Vec<Value> = self
            .circles
            .iter()
            .map(|c| {
                let word: Vec<String> = c
                    .stations
                    .iter()
                    .map(|s| {
                        format!(
                            "{}{}{}",
                            s.arc,
                            if s.end == End::Source { "s" } else { "t" },
                            if s.left { "L" } else { "R" }
                        )
                    })
                    .collect();
                json!({"labels": c.labels, "word": word})
            })
            .collect();
        let arcs: Vec<Value> = self
            .ends
            .iter()
            .map(|e| json!({"source": e[0].0, "target": e[1].0}))
            .collect();
        json!({"circles": circles, "arcs": arcs})
    }
}

/// An oriented configuration with arc order given by vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    graph: Arc<PlanarGraph>,
    sites: Vec<Site>,
}

impl Configuration {
    pub fn new(graph: Arc<PlanarGraph>, sites: Vec<Site>) -> Result<Self> {
        if sites.len() != graph.vertices() {
            return Err(Error::Dimension(format!(
                "{} sites for {} vertices",
                sites.len(),
                graph.vertices()
            )));
        }
        if sites.iter().any(|s| match *s {
            Site::Smooth(b) => b > 1,
            Site::Arc(j) => j > 3,
        }) {
            return Err(Error::Parse("site out of range".into()));
        }
        Ok(Configuration { graph, sites })
    }

    /// The 0-smoothing of a diagram with one arc per crossing. Each arc
    /// points from the strand with the smaller labels to the other one.
    pub fn zero_smoothing(d: &PlanarDiagram) -> Self {
        let graph = Arc::new(PlanarGraph::from_diagram(d));
        let sites = d
            .crossings()
            .iter()
            .map(|x| {
                let a = (x[0].min(x[1]), x[0].max(x[1]));
                let b = (x[2].min(x[3]), x[2].max(x[3]));
                Site::Arc(if a <= b { 0 } else { 2 })
            })
            .collect();
        Configuration { graph, sites }
    }

    pub fn graph(&self) -> &Arc<PlanarGraph> {
        &self.graph
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Vertices carrying arcs, in arc order.
    pub fn arc_vertices(&self) -> Vec<usize> {
        (0..self.sites.len()).filter(|&v| matches!(self.sites[v], Site::Arc(_))).collect()
    }

    pub fn dim(&self) -> usize {
        self.sites.iter().filter(|s| matches!(s, Site::Arc(_))).count()
    }

    fn map_arcs(&self, f: impl Fn(u8) -> u8) -> Self {
        let sites = self
            .sites
            .iter()
            .map(|&s| match s {
                Site::Arc(j) => Site::Arc(f(j) % 4),
                s => s,
            })
            .collect();
        Configuration { graph: self.graph.clone(), sites }
    }

    /// Rotates every arc a quarter turn counterclockwise.
    pub fn star(&self) -> Self {
        self.map_arcs(|j| j + 1)
    }

    pub fn reverse(&self) -> Self {
        self.map_arcs(|j| j + 2)
    }

    /// Reverses the orientation of the `i`-th arc only.
    pub fn reverse_arc(&self, i: usize) -> Result<Self> {
        let v = *self
            .arc_vertices()
            .get(i)
            .ok_or_else(|| Error::Dimension(format!("no arc {i}")))?;
        let mut out = self.clone();
        if let Site::Arc(j) = out.sites[v] {
            out.sites[v] = Site::Arc((j + 2) % 4);
        }
        Ok(out)
    }

    /// Reorients arcs: bit `i` of `mask` reverses arc `i`.
    pub fn reorient(&self, mask: u32) -> Self {
        let mut out = self.clone();
        for (i, v) in self.arc_vertices().into_iter().enumerate() {
            if mask >> i & 1 == 1 {
                if let Site::Arc(j) = out.sites[v] {
                    out.sites[v] = Site::Arc((j + 2) % 4);
                }
            }
        }
        out
    }

    /// Reverses the orientation of the sphere.
    pub fn mirror(&self) -> Self {
        let graph = Arc::new(self.graph.mirrored());
        let sites = self
            .sites
            .iter()
            .map(|&s| match s {
                Site::Smooth(b) => Site::Smooth(1 - b),
                Site::Arc(j) => Site::Arc((3 + 4 - j) % 4),
            })
            .collect();
        Configuration { graph, sites }
    }

    /// Resolves the arcs fixed by `face` and drops them; starred arcs stay.
    pub fn resolve(&self, face: Face) -> Result<Self> {
        let arcs = self.arc_vertices();
        if face.len as usize != arcs.len() {
            return Err(Error::Dimension(format!(
                "face of length {} on a configuration with {} arcs",
                face.len,
                arcs.len()
            )));
        }
        let mut sites = self.sites.clone();
        for (i, &v) in arcs.iter().enumerate() {
            let Site::Arc(j) = sites[v] else { unreachable!() };
            if face.stars >> i & 1 == 1 {
                continue;
            }
            let b = if face.ones >> i & 1 == 1 { (j + 1) % 2 } else { j % 2 };
            sites[v] = Site::Smooth(b);
        }
        Ok(Configuration { graph: self.graph.clone(), sites })
    }

    /// Traces circles and records arc endpoints.
    pub fn layout(&self) -> Layout {
        let g = &*self.graph;
        let nl = g.labels();
        let mut circle_of = vec![u32::MAX; nl + 1];
        let arcs = self.arc_vertices();
        let mut arc_index = vec![usize::MAX; self.sites.len()];
        for (i, &v) in arcs.iter().enumerate() {
            arc_index[v] = i;
        }
        let mut ends = vec![[(usize::MAX, 0usize); 2]; arcs.len()];
        let mut circles = Vec::new();
        for start in 1..=(2 * g.vertices()) as u32 {
            if circle_of[start as usize] != u32::MAX {
                continue;
            }
            let ci = circles.len();
            let mut labels = Vec::new();
            let mut stations = Vec::new();
            let mut label = start;
            let mut head = g.occ[start as usize][1];
            loop {
                circle_of[label as usize] = ci as u32;
                labels.push(label);
                let (v, s) = head;
                let site = self.sites[v as usize];
                let t = site.partner(s);
                if let Site::Arc(j) = site {
                    let rel = (s + 4 - j) % 4;
                    let end = if rel < 2 { End::Source } else { End::Target };
                    let a = arc_index[v as usize];
                    let slot = if end == End::Source { 0 } else { 1 };
                    ends[a][slot] = (ci, stations.len());
                    stations.push(Station {
                        arc: a,
                        end,
                        left: t == (s + 1) % 4,
                        after: labels.len() - 1,
                    });
                }
                let next = g.slots[v as usize][t as usize];
                let nhead = g.other(next, (v, t));
                if next == start && nhead == g.occ[start as usize][1] {
                    break;
                }
                label = next;
                head = nhead;
            }
            circles.push(Circle { labels, stations });
        }
        for l in (2 * g.vertices() + 1)..=nl {
            circle_of[l] = circles.len() as u32;
            circles.push(Circle { labels: vec![l as u32], stations: vec![] });
        }
        Layout { circles, circle_of, ends }
    }

    /// Number of circles.
    pub fn circle_count(&self) -> usize {
        let g = &*self.graph;
        let mut seen = vec![false; 2 * g.vertices() + 1];
        let mut count = g.free;
        for start in 1..=(2 * g.vertices()) as u32 {
            if seen[start as usize] {
                continue;
            }
            count += 1;
            let mut label = start;
            let mut head = g.occ[start as usize][1];
            loop {
                seen[label as usize] = true;
                let (v, s) = head;
                let t = self.sites[v as usize].partner(s);
                let next = g.slots[v as usize][t as usize];
                let nhead = g.other(next, (v, t));
                if next == start && nhead == g.occ[start as usize][1] {
                    break;
                }
                label = next;
                head = nhead;
            }
        }
        count
    }

    /// The active part as a layout restricted to active circles, plus the
    /// indices of the passive circles in the full layout.
    pub fn active_part(&self) -> (Layout, Vec<usize>) {
        let lay = self.layout();
        let passive = lay.passive();
        let active = lay.active();
        let mut remap = vec![usize::MAX; lay.circles.len()];
        for (i, &c) in active.iter().enumerate() {
            remap[c] = i;
        }
        let circles = active.iter().map(|&c| lay.circles[c].clone()).collect();
        let circle_of = lay
            .circle_of
            .iter()
            .map(|&c| if c == u32::MAX { u32::MAX } else { remap[c as usize] as u32 })
            .collect();
        let ends = lay
            .ends
            .iter()
            .map(|e| [(remap[e[0].0], e[0].1), (remap[e[1].0], e[1].1)])
            .collect();
        (Layout { circles, circle_of, ends }, passive)
    }

    /// Splits on the way from the start to vertex `v`:
    /// `(circles at v - circles here + |v|) / 2`.
    pub fn split_count(&self, v: Face) -> Result<usize> {
        if v.dim() != 0 {
            return Err(Error::Dimension("split count needs a vertex".into()));
        }
        let a = self.resolve(v)?.circle_count() as i64;
        let b = self.circle_count() as i64;
        let x = a - b + v.weight() as i64;
        if x < 0 || x % 2 != 0 {
            return Err(Error::Invariant(format!("odd split count {x}")));
        }
        Ok(x as usize / 2)
    }

    pub fn debug_json(&self) -> Value {
        let mut v = self.layout().debug_json();
        v["sites"] = json!(self
            .sites
            .iter()
            .map(|s| match s {
                Site::Smooth(b) => format!("s{b}"),
                Site::Arc(j) => format!("a{j}"),
            })
            .collect::<Vec<_>>());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> Configuration {
        let d = PlanarDiagram::parse("PD[X[1,4,2,3],X[3,2,4,1]]").unwrap();
        Configuration::zero_smoothing(&d)
    }

    fn trefoil() -> Configuration {
        let d = PlanarDiagram::parse("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]").unwrap();
        Configuration::zero_smoothing(&d)
    }

    #[test]
    fn hopf_zero_smoothing_has_two_circles_joined_twice() {
        let c = hopf();
        let l = c.layout();
        assert_eq!(l.len(), 2);
        assert_eq!(l.arcs(), 2);
        for a in 0..2 {
            assert_ne!(l.source(a), l.target(a));
        }
        assert!(l.euler_check());
    }

    #[test]
    fn trefoil_zero_smoothing() {
        let l = trefoil().layout();
        assert_eq!(l.len(), 2);
        assert_eq!(l.arcs(), 3);
        assert!(l.euler_check());
    }

    #[test]
    fn resolving_one_hopf_arc_gives_a_split() {
        let c = hopf().resolve(Face::parse("1*").unwrap()).unwrap();
        let l = c.layout();
        assert_eq!(l.len(), 1);
        assert_eq!(l.source(0), l.target(0));
    }

    #[test]
    fn star_twice_is_reverse_and_mirror_law() {
        for c in [hopf(), trefoil()] {
            assert_eq!(c.star().star(), c.reverse());
            assert_eq!(c.reverse().reverse(), c);
            assert_eq!(c.mirror().mirror(), c);
            assert_eq!(c.star().mirror().star(), c.mirror());
        }
    }

    #[test]
    fn full_resolution_is_the_end_configuration() {
        let c = trefoil();
        let k = c.dim();
        let end = c.resolve(Face::vertex(k, (1 << k) - 1)).unwrap();
        let star_end = c.star().resolve(Face::vertex(k, 0)).unwrap();
        assert_eq!(end, star_end);
        assert_eq!(c.resolve(Face::full(k)).unwrap(), c);
    }

    #[test]
    fn sp_counts() {
        let c = hopf();
        assert_eq!(c.split_count(Face::vertex(2, 0)).unwrap(), 0);
        // 2 circles -> 1 (merge) -> 2 (split).
        assert_eq!(c.split_count(Face::vertex(2, 1)).unwrap(), 0);
        assert_eq!(c.split_count(Face::vertex(2, 3)).unwrap(), 1);
    }

    #[test]
    fn passive_circles_survive_the_star() {
        let d = PlanarDiagram::new(vec![[1, 4, 2, 3], [3, 2, 4, 1]], 1).unwrap();
        let c = Configuration::zero_smoothing(&d);
        let (act, pas) = c.active_part();
        assert_eq!(act.len(), 2);
        assert_eq!(pas.len(), 1);
        let (_, pas2) = c.star().active_part();
        assert_eq!(pas2.len(), 1);
    }

    #[test]
    fn edges_cover_all_labels() {
        let l = trefoil().layout();
        let k = l.edges();
        let mut all: Vec<u32> = k.concat();
        all.sort_unstable();
        assert_eq!(all, (1..=6).collect::<Vec<_>>());
    }

    #[test]
    fn face_words_round_trip() {
        let f = Face::parse("1*0*").unwrap();
        assert_eq!(f.to_string(), "1*0*");
        assert_eq!(f.dim(), 2);
        assert_eq!(f.start(), 1);
        assert_eq!(f.end(), 0b1011);
    }
}

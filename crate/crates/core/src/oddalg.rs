//! Exterior algebra on circles and the maps attached to faces of the cube.
//!
//! Monomials are bit masks over circle indices, read as the wedge of the set
//! circles in increasing order. Every face map used here has the same shape:
//! a few active terms `x -> c * y`, extended by wedging with passive circles.
//! [`FaceRule`] stores exactly that.

use std::collections::BTreeMap;

use crate::config::{classify_higher, Configuration, End, Face, Layout, HigherType};
use crate::error::{Error, Result};
use crate::signs::EdgeAssignment;

pub type Monomial = u64;

/// Sorts a wedge word into a mask. `None` if a circle repeats.
pub fn canon(word: &[usize]) -> Option<(Monomial, i64)> {
    let mut mask: Monomial = 0;
    let mut sign = 1i64;
    for &c in word {
        let bit = 1u64 << c;
        if mask & bit != 0 {
            return None;
        }
        if (mask >> c >> 1).count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= bit;
    }
    Some((mask, sign))
}

/// Sign of `a ∧ b = sign * (a | b)` for disjoint masks.
pub fn shuffle_sign(a: Monomial, b: Monomial) -> i64 {
    let mut inv = 0;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inv += (b & ((1u64 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn degree(m: Monomial) -> usize {
    m.count_ones() as usize
}

/// Circle indices of a monomial in increasing order.
pub fn circles(m: Monomial) -> Vec<usize> {
    let mut out = Vec::with_capacity(degree(m));
    let mut rest = m;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// An element of the exterior algebra with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtElement {
    terms: BTreeMap<Monomial, i64>,
}

impl ExtElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        ExtElement { terms }
    }

    pub fn generator(c: usize) -> Self {
        Self::basis(1 << c)
    }

    /// The wedge of a word of circles, `0` on repeats.
    pub fn word(w: &[usize]) -> Self {
        match canon(w) {
            Some((m, s)) => Self::basis(m).scale(s),
            None => Self::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, m: Monomial) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, s: i64) -> Self {
        if s == 0 {
            return Self::zero();
        }
        ExtElement { terms: self.terms.iter().map(|(&m, &c)| (m, c * s)).collect() }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if a & b == 0 {
                    out.add_term(a | b, shuffle_sign(a, b) * x * y);
                }
            }
        }
        out
    }
}

/// One active term `x -> coef * y` of a face map, both as wedge words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub coef: i64,
}

/// A face map `ΛV(source) -> ΛV(target)`.
///
/// A monomial `α` is mapped by a term iff `α ⊇ x` and the rest of `α` is
/// passive; then `x ∧ ω ↦ coef · y ∧ f(ω)` with `f` the passive matching.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceRule {
    pub terms: Vec<Term>,
    /// `(source circle, target circle)` for passive circles.
    pub passive: Vec<(usize, usize)>,
}

struct Prepared {
    x: Monomial,
    x_sign: i64,
    y: Vec<usize>,
    coef: i64,
}

impl FaceRule {
    fn passive_mask(&self) -> Monomial {
        self.passive.iter().fold(0, |m, &(s, _)| m | 1 << s)
    }

    fn prepared(&self) -> Vec<Prepared> {
        self.terms
            .iter()
            .filter_map(|t| {
                let (x, x_sign) = canon(&t.x)?;
                Some(Prepared { x, x_sign, y: t.y.clone(), coef: t.coef })
            })
            .collect()
    }

    fn map_passive(&self, m: Monomial) -> Vec<usize> {
        circles(m)
            .into_iter()
            .map(|c| self.passive.iter().find(|p| p.0 == c).expect("passive circle").1)
            .collect()
    }

    /// Image of one basis monomial as `(monomial, coefficient)` pairs.
    pub fn apply_mono(&self, alpha: Monomial) -> Vec<(Monomial, i64)> {
        let pm = self.passive_mask();
        let mut out = ExtElement::zero();
        for t in self.prepared() {
            self.push_term(&t, pm, alpha, &mut out);
        }
        out.terms().collect()
    }

    fn push_term(&self, t: &Prepared, pm: Monomial, alpha: Monomial, out: &mut ExtElement) {
        if alpha & t.x != t.x {
            return;
        }
        let rest = alpha & !t.x;
        if rest & !pm != 0 {
            return;
        }
        let s_in = t.x_sign * shuffle_sign(t.x, rest);
        let mut word = t.y.clone();
        word.extend(self.map_passive(rest));
        if let Some((m, s_out)) = canon(&word) {
            out.add_term(m, t.coef * s_in * s_out);
        }
    }

    pub fn apply(&self, v: &ExtElement) -> ExtElement {
        let pm = self.passive_mask();
        let prep = self.prepared();
        let mut out = ExtElement::zero();
        for (alpha, c) in v.terms() {
            let mut part = ExtElement::zero();
            for t in &prep {
                self.push_term(t, pm, alpha, &mut part);
            }
            out = out.add(&part.scale(c));
        }
        out
    }

    /// All nonzero matrix entries `(source monomial, target monomial, coef)`.
    pub fn entries(&self) -> Vec<(Monomial, Monomial, i64)> {
        let pm = self.passive_mask();
        let pcs = circles(pm);
        let mut out = Vec::new();
        for t in self.prepared() {
            for w in 0..(1u64 << pcs.len()) {
                let rest = circles(w).into_iter().fold(0u64, |m, i| m | 1 << pcs[i]);
                let alpha = t.x | rest;
                if t.x & rest != 0 {
                    continue;
                }
                let mut single = ExtElement::zero();
                self.push_term(&t, pm, alpha, &mut single);
                out.extend(single.terms().map(|(m, c)| (alpha, m, c)));
            }
        }
        // Terms sharing a source monomial are merged.
        out.sort_unstable();
        let mut merged: Vec<(Monomial, Monomial, i64)> = Vec::with_capacity(out.len());
        for e in out {
            match merged.last_mut() {
                Some(l) if l.0 == e.0 && l.1 == e.1 => l.2 += e.2,
                _ => merged.push(e),
            }
        }
        merged.retain(|e| e.2 != 0);
        merged
    }

    pub fn scaled(mut self, s: i64) -> Self {
        for t in &mut self.terms {
            t.coef *= s;
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The map of a 1-dimensional configuration: merge or split.
    pub fn one_dim(c: &Configuration) -> Result<FaceRule> {
        let (l, ls) = one_dim_layouts(c)?;
        let passive = passive_pairs(&l, &ls);
        let (a, b) = (l.source(0), l.target(0));
        let terms = if a != b {
            let y = ls.source(0);
            vec![
                Term { x: vec![], y: vec![], coef: 1 },
                Term { x: vec![a], y: vec![y], coef: 1 },
                Term { x: vec![b], y: vec![y], coef: 1 },
            ]
        } else {
            let (x1, x2) = (ls.source(0), ls.target(0));
            vec![
                Term { x: vec![], y: vec![x1], coef: 1 },
                Term { x: vec![], y: vec![x2], coef: -1 },
                Term { x: vec![a], y: vec![x1, x2], coef: 1 },
            ]
        };
        Ok(FaceRule { terms, passive })
    }

    /// The homotopy of a 1-dimensional configuration, going the same way as
    /// its differential.
    pub fn homotopy_one(c: &Configuration) -> Result<FaceRule> {
        let (l, ls) = one_dim_layouts(c)?;
        let passive = passive_pairs(&l, &ls);
        let (a, b) = (l.source(0), l.target(0));
        let terms = if a != b {
            vec![Term { x: vec![a, b], y: vec![ls.source(0)], coef: 1 }]
        } else {
            vec![Term { x: vec![], y: vec![], coef: 1 }]
        };
        Ok(FaceRule { terms, passive })
    }
}

fn one_dim_layouts(c: &Configuration) -> Result<(Layout, Layout)> {
    if c.dim() != 1 {
        return Err(Error::Dimension(format!("expected 1 arc, found {}", c.dim())));
    }
    Ok((c.layout(), c.star().layout()))
}

/// Matches passive circles of a configuration with circles of its star by
/// shared labels.
fn passive_pairs(l: &Layout, ls: &Layout) -> Vec<(usize, usize)> {
    l.passive()
        .into_iter()
        .map(|p| (p, ls.circle_of(l.circles[p].min_label())))
        .collect()
}

pub fn del_one(c: &Configuration, v: &ExtElement) -> Result<ExtElement> {
    Ok(FaceRule::one_dim(c)?.apply(v))
}

pub fn homotopy_one(c: &Configuration, v: &ExtElement) -> Result<ExtElement> {
    Ok(FaceRule::homotopy_one(c)?.apply(v))
}

/// The edge path of an arc order: step `i` resolves arc `sigma[i]`.
pub fn perm_to_path(sigma: &[usize]) -> Vec<Face> {
    let k = sigma.len();
    let mut ones = 0u32;
    let mut out = Vec::with_capacity(k);
    for &a in sigma {
        out.push(Face::edge(k, a, ones));
        ones |= 1 << a;
    }
    out
}

/// The arc order of a maximal edge path.
pub fn path_to_perm(theta: &[Face]) -> Result<Vec<usize>> {
    check_path(theta)?;
    let k = theta.len();
    if theta.iter().any(|e| e.len as usize != k) || (k > 0 && theta[0].start() != 0) {
        return Err(Error::Dimension("path is not maximal".into()));
    }
    Ok(theta.iter().map(|e| e.stars.trailing_zeros() as usize).collect())
}

pub fn check_path(theta: &[Face]) -> Result<()> {
    if theta.iter().any(|e| e.dim() != 1) {
        return Err(Error::BrokenPath);
    }
    for w in theta.windows(2) {
        if w[0].end() != w[1].start() || w[0].len != w[1].len {
            return Err(Error::BrokenPath);
        }
    }
    Ok(())
}

/// The split sign, for the path of the arc order `sigma`.
pub fn path_split_sign(c: &Configuration, sigma: &[usize]) -> Result<i64> {
    let k = c.dim();
    let mut ones = 0u32;
    let mut total = 0;
    for &a in sigma.iter().take(sigma.len().saturating_sub(1)) {
        ones |= 1 << a;
        total += c.split_count(Face::vertex(k, ones))?;
    }
    Ok(if total % 2 == 0 { 1 } else { -1 })
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let h = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, h);
            out.push(p);
        }
    }
    out
}

/// The two arcs ending on the circle with four endpoints, for the D family.
fn d_pair(l: &Layout) -> Result<(usize, [usize; 2])> {
    let z = (0..l.len())
        .find(|&c| l.circles[c].stations.len() == 4)
        .ok_or_else(|| Error::TypeMismatch("D".into()))?;
    let ab: Vec<usize> = (0..l.arcs()).filter(|&a| l.target(a) == z).collect();
    if ab.len() != 2 {
        return Err(Error::TypeMismatch("D".into()));
    }
    Ok((z, [ab[0], ab[1]]))
}

/// Arc orders whose paths are admissible for `tau`.
pub fn admissible_orders(c: &Configuration, tau: HigherType) -> Result<Vec<Vec<usize>>> {
    let k = c.dim();
    let all: Vec<usize> = (0..k).collect();
    if let HigherType::D(..) = tau {
        let (_, [a, b]) = d_pair(&c.layout())?;
        let rest: Vec<usize> = all.iter().copied().filter(|&i| i != a && i != b).collect();
        let mut out = Vec::new();
        for p in permutations(&rest) {
            for tail in [[a, b], [b, a]] {
                let mut o = p.clone();
                o.extend(tail);
                out.push(o);
            }
        }
        Ok(out)
    } else {
        Ok(permutations(&all))
    }
}

pub fn admissible_paths(c: &Configuration, tau: HigherType) -> Result<Vec<Vec<Face>>> {
    if !classify_higher(c).contains(&tau) {
        return Err(Error::TypeMismatch(tau.to_string()));
    }
    Ok(admissible_orders(c, tau)?.iter().map(|s| perm_to_path(s)).collect())
}

/// A canonical admissible arc order: arc order, with the two D arcs last.
fn default_order(c: &Configuration, tau: HigherType) -> Result<Vec<usize>> {
    let k = c.dim();
    if let HigherType::D(..) = tau {
        let (_, [a, b]) = d_pair(&c.layout())?;
        let mut o: Vec<usize> = (0..k).filter(|&i| i != a && i != b).collect();
        o.extend([a, b]);
        Ok(o)
    } else {
        Ok((0..k).collect())
    }
}

/// `x` and `y` as wedge words over circles of the full layouts of `C` and
/// `C*`, plus the scalar factor of `y`. `x` is `None` when it vanishes.
fn xy_words(
    l: &Layout,
    ls: &Layout,
    tau: HigherType,
    sigma: &[usize],
) -> Result<(Option<Vec<usize>>, Vec<usize>, i64)> {
    let k = l.arcs();
    let single_active = |lay: &Layout, pred: &dyn Fn(usize) -> bool| -> Result<usize> {
        let found: Vec<usize> = lay.active().into_iter().filter(|&c| pred(c)).collect();
        match found[..] {
            [y] => Ok(y),
            _ => Err(Error::TypeMismatch(tau.to_string())),
        }
    };
    let distinct = |w: Vec<usize>| canon(&w).map(|_| w);
    Ok(match tau {
        HigherType::A(_) => (Some(vec![]), vec![], if k % 2 == 1 { 1 } else { -1 }),
        HigherType::C(..) => (Some(vec![]), vec![], if k % 2 == 0 { 1 } else { -1 }),
        HigherType::B(_) => {
            let x = sigma.iter().map(|&a| l.target(a)).collect();
            (distinct(x), vec![ls.source(0), ls.target(0)], 1)
        }
        HigherType::D(..) => {
            let (z, [a, b]) = d_pair(l)?;
            let tail = [sigma[k - 2], sigma[k - 1]];
            if tail != [a, b] && tail != [b, a] {
                return Err(Error::InadmissiblePath(tau.to_string()));
            }
            let mut x: Vec<usize> = sigma[..k - 2].iter().map(|&i| l.target(i)).collect();
            x.push(z);
            let y = single_active(ls, &|_| true)?;
            (distinct(x), vec![y], 1)
        }
        HigherType::F(..) => {
            let x = sigma
                .iter()
                .filter(|&&a| l.source(a) != l.target(a))
                .map(|&a| l.source(a))
                .collect();
            let y = single_active(ls, &|c| {
                ls.circles[c]
                    .stations
                    .iter()
                    .all(|s| s.end != End::Target || ls.source(s.arc) == c)
            })?;
            (distinct(x), vec![y], 1)
        }
        HigherType::G(p, _) => {
            let x = sigma
                .iter()
                .filter(|&&a| l.source(a) != l.target(a))
                .map(|&a| l.target(a))
                .collect();
            let y = single_active(ls, &|c| {
                ls.circles[c]
                    .stations
                    .iter()
                    .all(|s| s.end != End::Source || ls.target(s.arc) == c)
            })?;
            (distinct(x), vec![y], if p % 2 == 1 { 1 } else { -1 })
        }
    })
}

/// `x_{C,τ,θ}` and `y_{C,τ}` for an admissible path.
pub fn xy_elements(
    c: &Configuration,
    tau: HigherType,
    theta: &[Face],
) -> Result<(ExtElement, ExtElement)> {
    if !classify_higher(c).contains(&tau) {
        return Err(Error::TypeMismatch(tau.to_string()));
    }
    let sigma = path_to_perm(theta)?;
    let (x, y, ys) = xy_words(&c.layout(), &c.star().layout(), tau, &sigma)?;
    let x = x.map(|w| ExtElement::word(&w)).unwrap_or_default();
    Ok((x, ExtElement::word(&y).scale(ys)))
}

/// The map of one type along the arc order `sigma`, local edge signs `s`.
fn type_rule_along(
    c: &Configuration,
    l: &Layout,
    ls: &Layout,
    tau: HigherType,
    s: &EdgeAssignment,
    sigma: &[usize],
) -> Result<Option<Term>> {
    let (x, y, ys) = xy_words(l, ls, tau, sigma)?;
    let Some(x) = x else { return Ok(None) };
    let coef = s.path_sign(&perm_to_path(sigma))? * path_split_sign(c, sigma)? * ys;
    Ok(Some(Term { x, y, coef }))
}

/// `d_{C,τ,s}` as a face rule. With `all_paths` every admissible path is
/// evaluated and the results must agree.
pub fn higher_rule(
    c: &Configuration,
    tau: HigherType,
    s: &EdgeAssignment,
    all_paths: bool,
) -> Result<FaceRule> {
    if s.dim() != c.dim() {
        return Err(Error::Dimension("assignment and configuration differ in dimension".into()));
    }
    let l = c.layout();
    let ls = c.star().layout();
    let passive = passive_pairs(&l, &ls);
    let first = default_order(c, tau)?;
    let term = type_rule_along(c, &l, &ls, tau, s, &first)?;
    let rule = FaceRule { terms: term.into_iter().collect(), passive };
    if all_paths {
        let reference = rule.entries();
        for sigma in admissible_orders(c, tau)? {
            let t = type_rule_along(c, &l, &ls, tau, s, &sigma)?;
            let other = FaceRule { terms: t.into_iter().collect(), passive: rule.passive.clone() };
            if other.entries() != reference {
                return Err(Error::Invariant(format!(
                    "{tau} map depends on the path {sigma:?}: {}",
                    c.debug_json()
                )));
            }
        }
    }
    Ok(rule)
}

/// `d_{C,s}`: the sum of the maps of all types of `c`.
pub fn face_rule(c: &Configuration, s: &EdgeAssignment, all_paths: bool) -> Result<FaceRule> {
    let types = classify_higher(c);
    let mut out = FaceRule::default();
    for tau in types {
        let r = higher_rule(c, tau, s, all_paths)?;
        out.passive = r.passive;
        out.terms.extend(r.terms);
    }
    Ok(out)
}

pub fn higher_diff(
    c: &Configuration,
    tau: HigherType,
    s: &EdgeAssignment,
    v: &ExtElement,
) -> Result<ExtElement> {
    if !classify_higher(c).contains(&tau) {
        return Err(Error::TypeMismatch(tau.to_string()));
    }
    Ok(higher_rule(c, tau, s, cfg!(debug_assertions))?.apply(v))
}

pub fn face_diff(c: &Configuration, s: &EdgeAssignment, v: &ExtElement) -> Result<ExtElement> {
    Ok(face_rule(c, s, cfg!(debug_assertions))?.apply(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::OneDim;
    use crate::diagram::PlanarDiagram;
    use crate::signs::Kind;

    fn hopf() -> Configuration {
        Configuration::zero_smoothing(&PlanarDiagram::parse("PD[X[1,4,2,3],X[3,2,4,1]]").unwrap())
    }

    #[test]
    fn wedge_signs() {
        let x1 = ExtElement::generator(1);
        let x2 = ExtElement::generator(2);
        let x3 = ExtElement::generator(3);
        assert_eq!(x1.wedge(&x2), x2.wedge(&x1).neg());
        assert!(x1.wedge(&x1).is_zero());
        assert_eq!(x1.add(&x2).wedge(&x3), x1.wedge(&x3).add(&x2.wedge(&x3)));
        assert_eq!(ExtElement::word(&[2, 1]), x1.wedge(&x2).neg());
    }

    #[test]
    fn merge_and_split_maps() {
        let merge = hopf().resolve(Face::parse("*0").unwrap()).unwrap();
        assert_eq!(crate::config::classify_one_dim(&merge).unwrap(), OneDim::Fusion);
        let l = merge.layout();
        let (a, b) = (l.source(0), l.target(0));
        let y = merge.star().layout().source(0);
        let d = |v: &ExtElement| del_one(&merge, v).unwrap();
        assert_eq!(d(&ExtElement::one()), ExtElement::one());
        assert_eq!(d(&ExtElement::generator(a)), ExtElement::generator(y));
        assert_eq!(d(&ExtElement::generator(b)), ExtElement::generator(y));
        assert!(d(&ExtElement::word(&[a, b])).is_zero());

        let split = merge.star();
        let ls = split.star().layout();
        let (x1, x2) = (ls.source(0), ls.target(0));
        let d = |v: &ExtElement| del_one(&split, v).unwrap();
        assert_eq!(d(&ExtElement::one()), ExtElement::generator(x1).sub(&ExtElement::generator(x2)));
        assert_eq!(d(&ExtElement::generator(0)), ExtElement::word(&[x1, x2]));
    }

    #[test]
    fn homotopy_on_merge_and_split() {
        let merge = hopf().resolve(Face::parse("*0").unwrap()).unwrap();
        let h = |v: &ExtElement| homotopy_one(&merge, v).unwrap();
        assert!(h(&ExtElement::generator(0)).is_zero());
        assert!(h(&ExtElement::one()).is_zero());
        assert_eq!(h(&ExtElement::basis(3)).terms().count(), 1);
        let split = merge.star();
        let h = |v: &ExtElement| homotopy_one(&split, v).unwrap();
        assert_eq!(h(&ExtElement::one()), ExtElement::one());
        assert!(h(&ExtElement::generator(0)).is_zero());
    }

    #[test]
    fn paths_and_orders_are_inverse() {
        for sigma in permutations(&[0, 1, 2, 3]) {
            assert_eq!(path_to_perm(&perm_to_path(&sigma)).unwrap(), sigma);
        }
        let p = perm_to_path(&[0, 1]);
        assert_eq!(p[0].to_string(), "*0");
        assert_eq!(p[1].to_string(), "1*");
    }

    #[test]
    fn one_dim_higher_map_is_the_differential() {
        let merge = hopf().resolve(Face::parse("*0").unwrap()).unwrap();
        for c in [merge.clone(), merge.star()] {
            let s = EdgeAssignment::constant(1, Kind::Y);
            let r = face_rule(&c, &s, true).unwrap();
            assert_eq!(r.entries(), FaceRule::one_dim(&c).unwrap().entries());
        }
    }

    #[test]
    fn a2_square_sends_one_to_minus_one() {
        let c = hopf();
        let t = classify_higher(&c);
        assert!(t.contains(&HigherType::A(2)), "{t:?}");
        let s = EdgeAssignment::constant(2, Kind::Y);
        let v = higher_diff(&c, HigherType::A(2), &s, &ExtElement::one()).unwrap();
        assert_eq!(v, ExtElement::one().neg());
    }
}

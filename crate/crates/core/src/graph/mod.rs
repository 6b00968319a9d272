//! Half-edge ("dart") graphs, graph morphisms and covering checks.
//!
//! A graph is a finite set of vertices together with a finite set of darts,
//! an origin map and a fixed-point-free reversal involution. A geometric edge
//! is a pair `{e, reverse(e)}`; a loop is two distinct darts with the same
//! origin. Everything is indexed by dense integer ids, and every iteration
//! happens in id order so that all constructions are reproducible.

pub mod fixtures;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DartId(pub u32);

impl VertexId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl DartId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v#{}", self.0)
    }
}

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    dart_names: Vec<String>,
    origin: Vec<VertexId>,
    reverse: Vec<DartId>,
    vertex_colour: Vec<Option<String>>,
    dart_colour: Vec<Option<String>>,
    stars: Vec<Vec<DartId>>,
}

/// A single invariant violation found by [`validate_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    FixedPointOfReversal(DartId),
    ReversalNotInvolutive(DartId),
    DanglingOrigin(DartId),
    DanglingReverse(DartId),
    DuplicateVertexId(String),
    DuplicateDartId(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FixedPointOfReversal(d) => write!(f, "fixed point of reversal at {d}"),
            Violation::ReversalNotInvolutive(d) => write!(f, "reversal not involutive at {d}"),
            Violation::DanglingOrigin(d) => write!(f, "origin of {d} is not a vertex"),
            Violation::DanglingReverse(d) => write!(f, "reverse of {d} is not a dart"),
            Violation::DuplicateVertexId(n) => write!(f, "duplicate vertex id {n:?}"),
            Violation::DuplicateDartId(n) => write!(f, "duplicate dart id {n:?}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Graph {
    /// Assembles a graph without checking any invariant; use
    /// [`validate_graph`] (or [`Graph::new`]) before relying on it.
    pub fn from_parts(
        vertex_names: Vec<String>,
        dart_names: Vec<String>,
        origin: Vec<VertexId>,
        reverse: Vec<DartId>,
        vertex_colour: Vec<Option<String>>,
        dart_colour: Vec<Option<String>>,
    ) -> Graph {
        let mut stars = vec![Vec::new(); vertex_names.len()];
        for (d, o) in origin.iter().enumerate() {
            if let Some(s) = stars.get_mut(o.idx()) {
                s.push(DartId(d as u32));
            }
        }
        Graph {
            vertex_names,
            dart_names,
            origin,
            reverse,
            vertex_colour,
            dart_colour,
            stars,
        }
    }

    pub fn new(
        vertex_names: Vec<String>,
        dart_names: Vec<String>,
        origin: Vec<VertexId>,
        reverse: Vec<DartId>,
        vertex_colour: Vec<Option<String>>,
        dart_colour: Vec<Option<String>>,
    ) -> Result<Graph> {
        let g = Graph::from_parts(vertex_names, dart_names, origin, reverse, vertex_colour, dart_colour);
        let report = validate_graph(&g);
        match report.violations.first() {
            None => Ok(g),
            Some(v) => Err(Error::InvalidGraph(v.to_string())),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_darts(&self) -> usize {
        self.dart_names.len()
    }

    /// Number of geometric edges (dart pairs).
    pub fn num_edges(&self) -> usize {
        self.dart_names.len() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn darts(&self) -> impl Iterator<Item = DartId> + '_ {
        (0..self.dart_names.len() as u32).map(DartId)
    }

    #[inline]
    pub fn origin(&self, d: DartId) -> VertexId {
        self.origin[d.idx()]
    }

    #[inline]
    pub fn reverse(&self, d: DartId) -> DartId {
        self.reverse[d.idx()]
    }

    /// `∂₁e`, the origin of the reverse dart.
    #[inline]
    pub fn terminus(&self, d: DartId) -> VertexId {
        self.origin(self.reverse(d))
    }

    /// Darts with origin `v`, in id order.
    #[inline]
    pub fn star(&self, v: VertexId) -> &[DartId] {
        &self.stars[v.idx()]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.stars[v.idx()].len()
    }

    pub fn max_degree(&self) -> usize {
        self.stars.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Position of `d` inside `star(origin(d))`.
    pub fn star_position(&self, d: DartId) -> usize {
        let s = self.star(self.origin(d));
        s.binary_search(&d).expect("dart belongs to the star of its origin")
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.idx()]
    }

    pub fn dart_name(&self, d: DartId) -> &str {
        &self.dart_names[d.idx()]
    }

    pub fn vertex_colour(&self, v: VertexId) -> Option<&str> {
        self.vertex_colour[v.idx()].as_deref()
    }

    pub fn dart_colour(&self, d: DartId) -> Option<&str> {
        self.dart_colour[d.idx()].as_deref()
    }

    pub fn has_colours(&self) -> bool {
        self.vertex_colour.iter().any(Option::is_some) || self.dart_colour.iter().any(Option::is_some)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(|i| VertexId(i as u32))
    }

    pub fn dart_by_name(&self, name: &str) -> Option<DartId> {
        self.dart_names.iter().position(|n| n == name).map(|i| DartId(i as u32))
    }

    /// Returns `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.stars.first().map(Vec::len)?;
        self.stars.iter().all(|s| s.len() == k).then_some(k)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![VertexId(s as u32)];
            comp[s] = id;
            let mut queue = VecDeque::from([VertexId(s as u32)]);
            while let Some(v) = queue.pop_front() {
                for &d in self.star(v) {
                    let w = self.terminus(d);
                    if comp[w.idx()] == usize::MAX {
                        comp[w.idx()] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices() > 0 && self.components().len() == 1
    }

    /// Breadth-first distances from `v` (usize::MAX when unreachable).
    pub fn distances_from(&self, v: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_vertices()];
        dist[v.idx()] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &d in self.star(u) {
                let w = self.terminus(d);
                if dist[w.idx()] == usize::MAX {
                    dist[w.idx()] = dist[u.idx()] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> usize {
        self.vertices()
            .flat_map(|v| self.distances_from(v))
            .filter(|&d| d != usize::MAX)
            .max()
            .unwrap_or(0)
    }

    /// The subgraph spanned by a union of components, with maps back to
    /// the ambient vertex and dart ids.
    pub fn induced(&self, vertices: &[VertexId]) -> (Graph, Vec<VertexId>, Vec<DartId>) {
        let mut vs: Vec<VertexId> = vertices.to_vec();
        vs.sort();
        vs.dedup();
        let mut vindex = HashMap::new();
        for (i, v) in vs.iter().enumerate() {
            vindex.insert(*v, VertexId(i as u32));
        }
        let ds: Vec<DartId> = self.darts().filter(|d| vindex.contains_key(&self.origin(*d))).collect();
        let mut dindex = HashMap::new();
        for (i, d) in ds.iter().enumerate() {
            dindex.insert(*d, DartId(i as u32));
        }
        let g = Graph::from_parts(
            vs.iter().map(|v| self.vertex_names[v.idx()].clone()).collect(),
            ds.iter().map(|d| self.dart_names[d.idx()].clone()).collect(),
            ds.iter().map(|d| vindex[&self.origin(*d)]).collect(),
            ds.iter().map(|d| dindex[&self.reverse(*d)]).collect(),
            vs.iter().map(|v| self.vertex_colour[v.idx()].clone()).collect(),
            ds.iter().map(|d| self.dart_colour[d.idx()].clone()).collect(),
        );
        (g, vs, ds)
    }

    /// Disjoint union; vertices and darts of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let nv = self.num_vertices() as u32;
        let nd = self.num_darts() as u32;
        let mut vertex_names: Vec<String> = self.vertex_names.iter().map(|n| format!("1:{n}")).collect();
        vertex_names.extend(other.vertex_names.iter().map(|n| format!("2:{n}")));
        let mut dart_names: Vec<String> = self.dart_names.iter().map(|n| format!("1:{n}")).collect();
        dart_names.extend(other.dart_names.iter().map(|n| format!("2:{n}")));
        let mut origin = self.origin.clone();
        origin.extend(other.origin.iter().map(|v| VertexId(v.0 + nv)));
        let mut reverse = self.reverse.clone();
        reverse.extend(other.reverse.iter().map(|d| DartId(d.0 + nd)));
        let mut vertex_colour = self.vertex_colour.clone();
        vertex_colour.extend(other.vertex_colour.iter().cloned());
        let mut dart_colour = self.dart_colour.clone();
        dart_colour.extend(other.dart_colour.iter().cloned());
        Graph::from_parts(vertex_names, dart_names, origin, reverse, vertex_colour, dart_colour)
    }

    /// Barycentric subdivision: every geometric edge gets a midpoint vertex.
    /// Original vertices keep their ids; midpoints follow in edge order.
    pub fn subdivide(&self) -> Graph {
        let mut b = GraphBuilder::new();
        for v in self.vertices() {
            b.vertex_with_colour(self.vertex_name(v), self.vertex_colour(v).map(str::to_string));
        }
        for d in self.darts() {
            let r = self.reverse(d);
            if d > r {
                continue;
            }
            let m = b.vertex(&format!("m[{}]", self.dart_name(d)));
            b.named_edge(self.origin(d), m, &format!("{}/0", self.dart_name(d)), &format!("{}/0", self.dart_name(r)));
            b.named_edge(m, self.terminus(d), &format!("{}/1", self.dart_name(d)), &format!("{}/1", self.dart_name(r)));
        }
        b.build_unchecked()
    }
}

/// Checks every graph invariant and names each violation.
pub fn validate_graph(g: &Graph) -> ValidationReport {
    let mut violations = Vec::new();
    let nv = g.num_vertices();
    let nd = g.num_darts();
    let mut seen = BTreeSet::new();
    for n in &g.vertex_names {
        if !seen.insert(n.as_str()) {
            violations.push(Violation::DuplicateVertexId(n.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for n in &g.dart_names {
        if !seen.insert(n.as_str()) {
            violations.push(Violation::DuplicateDartId(n.clone()));
        }
    }
    if g.origin.len() != nd || g.reverse.len() != nd {
        violations.push(Violation::DanglingOrigin(DartId(nd as u32)));
        return ValidationReport { violations };
    }
    for d in g.darts() {
        if g.origin[d.idx()].idx() >= nv {
            violations.push(Violation::DanglingOrigin(d));
        }
        let r = g.reverse[d.idx()];
        if r.idx() >= nd {
            violations.push(Violation::DanglingReverse(d));
            continue;
        }
        if r == d {
            violations.push(Violation::FixedPointOfReversal(d));
        } else if g.reverse[r.idx()] != d {
            violations.push(Violation::ReversalNotInvolutive(d));
        }
    }
    ValidationReport { violations }
}

/// The star of a vertex as a standalone value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub center: VertexId,
    pub darts: Vec<DartId>,
}

pub fn star(g: &Graph, v: VertexId) -> Result<Star> {
    if v.idx() >= g.num_vertices() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    Ok(Star {
        center: v,
        darts: g.star(v).to_vec(),
    })
}

#[derive(Default)]
pub struct GraphBuilder {
    vertex_names: Vec<String>,
    vertex_colour: Vec<Option<String>>,
    dart_names: Vec<String>,
    dart_colour: Vec<Option<String>>,
    origin: Vec<VertexId>,
    reverse: Vec<DartId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str) -> VertexId {
        self.vertex_with_colour(name, None)
    }

    pub fn vertex_with_colour(&mut self, name: &str, colour: Option<String>) -> VertexId {
        self.vertex_names.push(name.to_string());
        self.vertex_colour.push(colour);
        VertexId(self.vertex_names.len() as u32 - 1)
    }

    /// Adds a geometric edge `u -> v`, returning `(forward, backward)` darts.
    pub fn edge(&mut self, u: VertexId, v: VertexId) -> (DartId, DartId) {
        let k = self.dart_names.len();
        self.named_edge(u, v, &format!("d{k}"), &format!("d{}", k + 1))
    }

    pub fn named_edge(&mut self, u: VertexId, v: VertexId, fwd: &str, bwd: &str) -> (DartId, DartId) {
        self.coloured_edge(u, v, fwd, bwd, None, None)
    }

    pub fn coloured_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        fwd: &str,
        bwd: &str,
        fwd_colour: Option<String>,
        bwd_colour: Option<String>,
    ) -> (DartId, DartId) {
        let a = DartId(self.dart_names.len() as u32);
        let b = DartId(a.0 + 1);
        self.dart_names.push(fwd.to_string());
        self.dart_names.push(bwd.to_string());
        self.dart_colour.push(fwd_colour);
        self.dart_colour.push(bwd_colour);
        self.origin.push(u);
        self.origin.push(v);
        self.reverse.push(b);
        self.reverse.push(a);
        (a, b)
    }

    pub fn build(self) -> Result<Graph> {
        Graph::new(
            self.vertex_names,
            self.dart_names,
            self.origin,
            self.reverse,
            self.vertex_colour,
            self.dart_colour,
        )
    }

    /// For builders that only use [`GraphBuilder::edge`]-style insertion,
    /// which cannot break the involution; names are the caller's concern.
    pub(crate) fn build_unchecked(self) -> Graph {
        Graph::from_parts(
            self.vertex_names,
            self.dart_names,
            self.origin,
            self.reverse,
            self.vertex_colour,
            self.dart_colour,
        )
    }
}

/// Vertex and dart maps between two graphs. The graphs themselves are
/// passed alongside whenever the morphism is checked or applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphMorphism {
    pub vmap: Vec<VertexId>,
    pub dmap: Vec<DartId>,
}

impl GraphMorphism {
    pub fn identity(g: &Graph) -> GraphMorphism {
        GraphMorphism {
            vmap: g.vertices().collect(),
            dmap: g.darts().collect(),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphMorphism) -> GraphMorphism {
        GraphMorphism {
            vmap: self.vmap.iter().map(|v| next.vmap[v.idx()]).collect(),
            dmap: self.dmap.iter().map(|d| next.dmap[d.idx()]).collect(),
        }
    }

    #[inline]
    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vmap[v.idx()]
    }

    #[inline]
    pub fn dart(&self, d: DartId) -> DartId {
        self.dmap[d.idx()]
    }
}

/// Structural check: origin, reversal and (where present on both sides)
/// colours are preserved.
pub fn check_morphism(src: &Graph, tgt: &Graph, m: &GraphMorphism) -> Result<()> {
    if m.vmap.len() != src.num_vertices() || m.dmap.len() != src.num_darts() {
        return Err(Error::NotAMorphism("map sizes do not match the source graph".into()));
    }
    for v in src.vertices() {
        let w = m.vertex(v);
        if w.idx() >= tgt.num_vertices() {
            return Err(Error::NotAMorphism(format!("vertex {} maps outside the target", src.vertex_name(v))));
        }
        if let (Some(a), Some(b)) = (src.vertex_colour(v), tgt.vertex_colour(w)) {
            if a != b {
                return Err(Error::NotAMorphism(format!("vertex colour changes at {}", src.vertex_name(v))));
            }
        }
    }
    for d in src.darts() {
        let f = m.dart(d);
        if f.idx() >= tgt.num_darts() {
            return Err(Error::NotAMorphism(format!("dart {} maps outside the target", src.dart_name(d))));
        }
        if m.vertex(src.origin(d)) != tgt.origin(f) {
            return Err(Error::NotAMorphism(format!("origin not preserved at {}", src.dart_name(d))));
        }
        if m.dart(src.reverse(d)) != tgt.reverse(f) {
            return Err(Error::NotAMorphism(format!("reversal not preserved at {}", src.dart_name(d))));
        }
        if let (Some(a), Some(b)) = (src.dart_colour(d), tgt.dart_colour(f)) {
            if a != b {
                return Err(Error::NotAMorphism(format!("dart colour changes at {}", src.dart_name(d))));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringFailure {
    /// Two darts of `star(vertex)` share an image.
    StarNotInjective { vertex: VertexId },
    /// Some dart of the target star has no preimage in `star(vertex)`.
    StarNotSurjective { vertex: VertexId },
    VertexNotCovered(VertexId),
    DartNotCovered(DartId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringCheck {
    Covering,
    Fails(CoveringFailure),
}

impl CoveringCheck {
    pub fn holds(&self) -> bool {
        matches!(self, CoveringCheck::Covering)
    }
}

pub fn is_covering(src: &Graph, tgt: &Graph, m: &GraphMorphism) -> Result<CoveringCheck> {
    check_morphism(src, tgt, m)?;
    // injectivity everywhere first, so a folded star is reported as such
    // even when some other vertex also has a size mismatch
    for v in src.vertices() {
        let mut images: Vec<DartId> = src.star(v).iter().map(|&d| m.dart(d)).collect();
        images.sort();
        if images.windows(2).any(|w| w[0] == w[1]) {
            return Ok(CoveringCheck::Fails(CoveringFailure::StarNotInjective { vertex: v }));
        }
    }
    for v in src.vertices() {
        if src.degree(v) != tgt.degree(m.vertex(v)) {
            return Ok(CoveringCheck::Fails(CoveringFailure::StarNotSurjective { vertex: v }));
        }
    }
    let mut hit = vec![false; tgt.num_vertices()];
    for v in src.vertices() {
        hit[m.vertex(v).idx()] = true;
    }
    if let Some(w) = hit.iter().position(|h| !h) {
        return Ok(CoveringCheck::Fails(CoveringFailure::VertexNotCovered(VertexId(w as u32))));
    }
    let mut hit = vec![false; tgt.num_darts()];
    for d in src.darts() {
        hit[m.dart(d).idx()] = true;
    }
    if let Some(f) = hit.iter().position(|h| !h) {
        return Ok(CoveringCheck::Fails(CoveringFailure::DartNotCovered(DartId(f as u32))));
    }
    Ok(CoveringCheck::Covering)
}

/// Result of [`fiber_product`]: the pullback graph and its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub graph: Graph,
    pub proj1: GraphMorphism,
    pub proj2: GraphMorphism,
}

/// Pullback of two coverings `a -> q <- b`.
pub fn fiber_product(
    a: &Graph,
    m1: &GraphMorphism,
    b: &Graph,
    m2: &GraphMorphism,
    q: &Graph,
) -> Result<FiberProduct> {
    for (g, m) in [(a, m1), (b, m2)] {
        match is_covering(g, q, m) {
            Ok(c) if c.holds() => {}
            _ => return Err(Error::FiberProductRequiresCoverings),
        }
    }
    let mut vid = HashMap::new();
    let mut vertex_names = Vec::new();
    let mut vertex_colour = Vec::new();
    let mut vpairs = Vec::new();
    for u in a.vertices() {
        for v in b.vertices() {
            if m1.vertex(u) == m2.vertex(v) {
                vid.insert((u, v), VertexId(vpairs.len() as u32));
                vpairs.push((u, v));
                vertex_names.push(format!("({},{})", a.vertex_name(u), b.vertex_name(v)));
                vertex_colour.push(a.vertex_colour(u).or(b.vertex_colour(v)).map(str::to_string));
            }
        }
    }
    let mut did = HashMap::new();
    let mut dpairs = Vec::new();
    for e in a.darts() {
        for f in b.darts() {
            if m1.dart(e) == m2.dart(f) {
                did.insert((e, f), DartId(dpairs.len() as u32));
                dpairs.push((e, f));
            }
        }
    }
    let graph = Graph::from_parts(
        vertex_names,
        dpairs
            .iter()
            .map(|&(e, f)| format!("({},{})", a.dart_name(e), b.dart_name(f)))
            .collect(),
        dpairs.iter().map(|&(e, f)| vid[&(a.origin(e), b.origin(f))]).collect(),
        dpairs.iter().map(|&(e, f)| did[&(a.reverse(e), b.reverse(f))]).collect(),
        vertex_colour,
        dpairs
            .iter()
            .map(|&(e, f)| a.dart_colour(e).or(b.dart_colour(f)).map(str::to_string))
            .collect(),
    );
    let proj1 = GraphMorphism {
        vmap: vpairs.iter().map(|p| p.0).collect(),
        dmap: dpairs.iter().map(|p| p.0).collect(),
    };
    let proj2 = GraphMorphism {
        vmap: vpairs.iter().map(|p| p.1).collect(),
        dmap: dpairs.iter().map(|p| p.1).collect(),
    };
    Ok(FiberProduct { graph, proj1, proj2 })
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_fixtures() {
        for g in [cycle(3), path(3), rose(2), theta(3), complete(4), complete_bipartite(3, 3)] {
            assert!(validate_graph(&g).is_ok());
        }
    }

    #[test]
    fn validate_fixed_point() {
        let g = Graph::from_parts(
            vec!["a".into()],
            vec!["x".into(), "y".into()],
            vec![VertexId(0), VertexId(0)],
            vec![DartId(0), DartId(0)],
            vec![None],
            vec![None, None],
        );
        let r = validate_graph(&g);
        assert!(r.violations.contains(&Violation::FixedPointOfReversal(DartId(0))));
        assert!(r.violations.iter().any(|v| v.to_string().starts_with("fixed point of reversal")));
        assert!(r.violations.contains(&Violation::ReversalNotInvolutive(DartId(1))));
    }

    #[test]
    fn validate_not_involutive() {
        // 0 -> 1 -> 2 -> 0 is a 3-cycle, not an involution
        let g = Graph::from_parts(
            vec!["a".into()],
            vec!["x".into(), "y".into(), "z".into()],
            vec![VertexId(0); 3],
            vec![DartId(1), DartId(2), DartId(0)],
            vec![None],
            vec![None; 3],
        );
        let r = validate_graph(&g);
        assert!(r.violations.iter().any(|v| v.to_string().starts_with("reversal not involutive")));
        assert!(Graph::new(
            vec!["a".into()],
            vec!["x".into(), "y".into(), "z".into()],
            vec![VertexId(0); 3],
            vec![DartId(1), DartId(2), DartId(0)],
            vec![None],
            vec![None; 3],
        )
        .is_err());
    }

    #[test]
    fn duplicate_names_are_reported() {
        let g = Graph::from_parts(
            vec!["a".into(), "a".into()],
            vec!["x".into(), "y".into()],
            vec![VertexId(0), VertexId(1)],
            vec![DartId(1), DartId(0)],
            vec![None, None],
            vec![None, None],
        );
        assert_eq!(validate_graph(&g).violations, vec![Violation::DuplicateVertexId("a".into())]);
    }

    #[test]
    fn star_sizes() {
        let k4 = complete(4);
        for v in k4.vertices() {
            assert_eq!(star(&k4, v).unwrap().darts.len(), 3);
        }
        let r2 = rose(2);
        assert_eq!(star(&r2, VertexId(0)).unwrap().darts.len(), 4);
        let p3 = path(3);
        assert_eq!(star(&p3, VertexId(1)).unwrap().darts.len(), 2);
        assert_eq!(star(&p3, VertexId(7)), Err(Error::UnknownVertex("v#7".into())));
    }

    #[test]
    fn star_is_sorted_and_exact() {
        let g = complete_bipartite(3, 3);
        for v in g.vertices() {
            let s = g.star(v);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|&d| g.origin(d) == v));
        }
    }

    #[test]
    fn wrap_map_is_covering() {
        let c12 = cycle(12);
        let c3 = cycle(3);
        let m = wrap_cycle(12, 3);
        assert_eq!(is_covering(&c12, &c3, &m).unwrap(), CoveringCheck::Covering);
        let k4 = complete(4);
        assert!(is_covering(&k4, &k4, &GraphMorphism::identity(&k4)).unwrap().holds());
    }

    #[test]
    fn collapse_of_path_is_not_covering() {
        let p3 = path(3);
        let r1 = rose(1);
        // d0: v0->v1, d1: v1->v0, d2: v1->v2, d3: v2->v1; loop l = d0, l~ = d1
        let m = GraphMorphism {
            vmap: vec![VertexId(0); 3],
            dmap: vec![DartId(0), DartId(1), DartId(1), DartId(0)],
        };
        assert_eq!(
            is_covering(&p3, &r1, &m).unwrap(),
            CoveringCheck::Fails(CoveringFailure::StarNotInjective { vertex: VertexId(1) })
        );
    }

    #[test]
    fn malformed_morphism_is_an_error() {
        let c3 = cycle(3);
        let mut m = GraphMorphism::identity(&c3);
        m.dmap.swap(0, 1);
        assert!(matches!(is_covering(&c3, &c3, &m), Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn fiber_product_of_cycles() {
        let (c3, r1) = (cycle(3), rose(1));
        let c4 = cycle(4);
        let p = fiber_product(&c3, &wrap_cycle_to_rose(3), &c4, &wrap_cycle_to_rose(4), &r1).unwrap();
        assert_eq!(p.graph.num_vertices(), 12);
        assert!(p.graph.is_connected());
        assert_eq!(p.graph.regular_degree(), Some(2));
        assert!(is_covering(&p.graph, &c3, &p.proj1).unwrap().holds());
        assert!(is_covering(&p.graph, &c4, &p.proj2).unwrap().holds());

        let p = fiber_product(&c3, &wrap_cycle_to_rose(3), &c3, &wrap_cycle_to_rose(3), &r1).unwrap();
        let comps = p.graph.components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn fiber_product_of_identities_is_diagonal() {
        let k4 = complete(4);
        let id = GraphMorphism::identity(&k4);
        let p = fiber_product(&k4, &id, &k4, &id, &k4).unwrap();
        assert_eq!(p.graph.num_vertices(), 4);
        assert_eq!(p.graph.num_darts(), 12);
        assert!(p.proj1.vmap.iter().zip(&p.proj2.vmap).all(|(a, b)| a == b));
    }

    #[test]
    fn fiber_product_rejects_non_coverings() {
        let p3 = path(3);
        let r1 = rose(1);
        let m = GraphMorphism {
            vmap: vec![VertexId(0); 3],
            dmap: vec![DartId(0), DartId(1), DartId(1), DartId(0)],
        };
        assert_eq!(
            fiber_product(&p3, &m, &p3, &m, &r1).unwrap_err(),
            Error::FiberProductRequiresCoverings
        );
    }

    #[test]
    fn subdivision_doubles_edges() {
        let k4 = complete(4);
        let s = k4.subdivide();
        assert_eq!(s.num_vertices(), 4 + 6);
        assert_eq!(s.num_edges(), 12);
        assert!(validate_graph(&s).is_ok());
    }

    #[test]
    fn components_and_diameter() {
        let g = cycle(3).disjoint_union(&cycle(4));
        assert_eq!(g.components().len(), 2);
        assert_eq!(cycle(6).diameter(), 3);
        assert_eq!(complete(4).diameter(), 1);
    }
}

//! The universal cover of a based graph, modelled lazily as reduced dart
//! paths from the basepoint.
//!
//! A tree vertex is a reduced path; its projection is the path's endpoint.
//! The spanning tree is a breadth-first tree from the basepoint (stars are
//! scanned in id order), and the free generators of the fundamental group
//! are the non-tree geometric edges, each represented by its smaller dart.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DartId, Graph, VertexId};
use crate::refinement::JointBlocks;

pub type Path = Vec<DartId>;

/// A vertex of the universal cover: a reduced path from the basepoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeVertex(pub Path);

impl TreeVertex {
    pub fn root() -> TreeVertex {
        TreeVertex(Vec::new())
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

/// One letter of a deck word: generator `gen`, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

/// A word in the free generators of the fundamental group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DeckWord(pub Vec<Letter>);

impl DeckWord {
    pub fn identity() -> DeckWord {
        DeckWord(Vec::new())
    }

    pub fn inverse(&self) -> DeckWord {
        DeckWord(
            self.0
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen, inv: !l.inv })
                .collect(),
        )
    }

    /// Free reduction.
    pub fn reduced(&self) -> DeckWord {
        let mut out: Vec<Letter> = Vec::new();
        for &l in &self.0 {
            match out.last() {
                Some(p) if p.gen == l.gen && p.inv != l.inv => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        DeckWord(out)
    }
}

#[derive(Clone, Debug)]
pub struct UniversalCover<'g> {
    g: &'g Graph,
    base: VertexId,
    lifts: Vec<Path>,
    in_tree: Vec<bool>,
    gens: Vec<DartId>,
    gen_index: HashMap<DartId, usize>,
}

impl<'g> UniversalCover<'g> {
    pub fn new(g: &'g Graph, base: VertexId) -> Result<Self> {
        if base.idx() >= g.num_vertices() {
            return Err(Error::UnknownVertex(base.to_string()));
        }
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        let mut lifts: Vec<Option<Path>> = vec![None; g.num_vertices()];
        let mut in_tree = vec![false; g.num_darts()];
        lifts[base.idx()] = Some(Vec::new());
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for &d in g.star(v) {
                let w = g.terminus(d);
                if lifts[w.idx()].is_none() {
                    let mut p = lifts[v.idx()].clone().unwrap();
                    p.push(d);
                    lifts[w.idx()] = Some(p);
                    in_tree[d.idx()] = true;
                    in_tree[g.reverse(d).idx()] = true;
                    queue.push_back(w);
                }
            }
        }
        let gens: Vec<DartId> = g.darts().filter(|&d| !in_tree[d.idx()] && d < g.reverse(d)).collect();
        let gen_index = gens.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        Ok(UniversalCover {
            g,
            base,
            lifts: lifts.into_iter().map(Option::unwrap).collect(),
            in_tree,
            gens,
            gen_index,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn is_tree_dart(&self, d: DartId) -> bool {
        self.in_tree[d.idx()]
    }

    /// Non-tree darts, one per geometric edge, indexing the free generators.
    pub fn generators(&self) -> &[DartId] {
        &self.gens
    }

    /// Endpoint of a path that starts at `start`.
    pub fn endpoint_from(&self, start: VertexId, p: &[DartId]) -> VertexId {
        p.last().map_or(start, |&d| self.g.terminus(d))
    }

    pub fn project(&self, z: &TreeVertex) -> VertexId {
        self.endpoint_from(self.base, &z.0)
    }

    /// Checks that `p` is a composable reduced path from `start`.
    pub fn check_path_from(&self, start: VertexId, p: &[DartId]) -> Result<()> {
        let mut at = start;
        for (i, &d) in p.iter().enumerate() {
            if d.idx() >= self.g.num_darts() {
                return Err(Error::UnknownDart(d.to_string()));
            }
            if self.g.origin(d) != at {
                return Err(Error::BrokenPath(i));
            }
            if i > 0 && p[i - 1] == self.g.reverse(d) {
                return Err(Error::NonReducedPath);
            }
            at = self.g.terminus(d);
        }
        Ok(())
    }

    pub fn vertex(&self, p: Path) -> Result<TreeVertex> {
        self.check_path_from(self.base, &p)?;
        Ok(TreeVertex(p))
    }

    /// Reduced concatenation of two composable paths.
    pub fn concat(&self, a: &[DartId], b: &[DartId]) -> Path {
        let mut out = a.to_vec();
        for &d in b {
            if out.last() == Some(&self.g.reverse(d)) {
                out.pop();
            } else {
                out.push(d);
            }
        }
        out
    }

    pub fn inverse_path(&self, p: &[DartId]) -> Path {
        p.iter().rev().map(|&d| self.g.reverse(d)).collect()
    }

    /// The spanning-tree path from the basepoint to `v`.
    pub fn canonical_lift(&self, v: VertexId) -> TreeVertex {
        TreeVertex(self.lifts[v.idx()].clone())
    }

    /// The based loop of a single generator.
    pub fn generator_loop(&self, gen: usize) -> Result<Path> {
        let &d = self.gens.get(gen).ok_or(Error::GeneratorOutOfRange(gen))?;
        let mut p = self.lifts[self.g.origin(d).idx()].clone();
        p.push(d);
        Ok(self.concat(&p, &self.inverse_path(&self.lifts[self.g.terminus(d).idx()])))
    }

    /// The reduced based loop representing a deck word.
    pub fn word_loop(&self, w: &DeckWord) -> Result<Path> {
        let mut p = Vec::new();
        for l in &w.0 {
            let mut c = self.generator_loop(l.gen)?;
            if l.inv {
                c = self.inverse_path(&c);
            }
            p = self.concat(&p, &c);
        }
        Ok(p)
    }

    /// Reads a reduced based loop as a reduced word in the generators.
    pub fn word_of_loop(&self, p: &[DartId]) -> DeckWord {
        let mut out = Vec::new();
        for &d in p {
            if self.in_tree[d.idx()] {
                continue;
            }
            match self.gen_index.get(&d) {
                Some(&gen) => out.push(Letter { gen, inv: false }),
                None => out.push(Letter {
                    gen: self.gen_index[&self.g.reverse(d)],
                    inv: true,
                }),
            }
        }
        DeckWord(out)
    }

    /// Deck transformation by a based loop: `z -> reduce(c · z)`.
    pub fn apply_loop(&self, c: &[DartId], z: &TreeVertex) -> TreeVertex {
        TreeVertex(self.concat(c, &z.0))
    }

    pub fn deck_transport(&self, w: &DeckWord, z: &TreeVertex) -> Result<TreeVertex> {
        Ok(self.apply_loop(&self.word_loop(w)?, z))
    }

    /// The loop of the deck transformation carrying `from` to `to`; both
    /// must project to the same vertex.
    pub fn deck_between(&self, from: &TreeVertex, to: &TreeVertex) -> Path {
        debug_assert_eq!(self.project(from), self.project(to));
        self.concat(&to.0, &self.inverse_path(&from.0))
    }

    /// `z · σ` for a path `σ` starting at `project(z)`.
    pub fn walk(&self, z: &TreeVertex, sigma: &[DartId]) -> TreeVertex {
        TreeVertex(self.concat(&z.0, sigma))
    }

    /// Path from `a` to `b` inside the tree.
    pub fn relative(&self, a: &TreeVertex, b: &TreeVertex) -> Path {
        self.concat(&self.inverse_path(&a.0), &b.0)
    }

    pub fn ball(&self, z: &TreeVertex, radius: usize) -> Result<Ball> {
        self.check_path_from(self.base, &z.0)?;
        let shape = BallShape::new(self.g, self.project(z), radius);
        let vertices = (0..shape.len()).map(|i| self.walk(z, &shape.path(i))).collect();
        Ok(Ball {
            root: z.clone(),
            radius,
            shape,
            vertices,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeNode {
    pub parent: u32,
    /// Dart from the parent, labelled by its projection.
    pub dart: Option<DartId>,
    pub depth: u32,
}

/// The canonical enumeration of reduced paths of length at most `radius`
/// from a base vertex: root first, then breadth first, children in dart
/// id order. A ball in the universal cover is this shape translated to a
/// lift of its center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallShape {
    pub center: VertexId,
    pub radius: usize,
    pub nodes: Vec<ShapeNode>,
    children: Vec<Vec<(DartId, u32)>>,
    end: Vec<VertexId>,
}

impl BallShape {
    pub fn new(g: &Graph, center: VertexId, radius: usize) -> BallShape {
        let mut nodes = vec![ShapeNode {
            parent: 0,
            dart: None,
            depth: 0,
        }];
        let mut end = vec![center];
        let mut children: Vec<Vec<(DartId, u32)>> = vec![Vec::new()];
        let mut i = 0;
        while i < nodes.len() {
            if (nodes[i].depth as usize) < radius {
                let back = nodes[i].dart.map(|d| g.reverse(d));
                for &d in g.star(end[i]) {
                    if Some(d) == back {
                        continue;
                    }
                    let k = nodes.len() as u32;
                    nodes.push(ShapeNode {
                        parent: i as u32,
                        dart: Some(d),
                        depth: nodes[i].depth + 1,
                    });
                    end.push(g.terminus(d));
                    children.push(Vec::new());
                    children[i].push((d, k));
                }
            }
            i += 1;
        }
        BallShape {
            center,
            radius,
            nodes,
            children,
            end,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn endpoint(&self, i: usize) -> VertexId {
        self.end[i]
    }

    pub fn child(&self, i: usize, d: DartId) -> Option<usize> {
        self.children[i].iter().find(|(e, _)| *e == d).map(|&(_, k)| k as usize)
    }

    pub fn children(&self, i: usize) -> &[(DartId, u32)] {
        &self.children[i]
    }

    pub fn path(&self, mut i: usize) -> Path {
        let mut p = Vec::with_capacity(self.nodes[i].depth as usize);
        while let Some(d) = self.nodes[i].dart {
            p.push(d);
            i = self.nodes[i].parent as usize;
        }
        p.reverse();
        p
    }

    pub fn find(&self, p: &[DartId]) -> Option<usize> {
        let mut i = 0;
        for &d in p {
            i = self.child(i, d)?;
        }
        Some(i)
    }

    /// First dart of the path to node `i`.
    pub fn first_dart(&self, mut i: usize) -> Option<DartId> {
        let mut first = None;
        while let Some(d) = self.nodes[i].dart {
            first = Some(d);
            i = self.nodes[i].parent as usize;
        }
        first
    }
}

/// A materialized ball `B_R(z)`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub root: TreeVertex,
    pub radius: usize,
    pub shape: BallShape,
    /// Absolute tree vertices in shape order.
    pub vertices: Vec<TreeVertex>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Greedy state of the tree isomorphism at a vertex pair: the projections
/// and the darts leading back toward the basepoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThetaState {
    pub x: VertexId,
    pub y: VertexId,
    pub back1: Option<DartId>,
    pub back2: Option<DartId>,
}

/// The block-preserving isomorphism `θ: T1 -> T2`. At every vertex pair the
/// darts other than the back darts are sorted by (joint dart type, id) and
/// matched in order, so `θ` is a pure function of the path and is extended
/// on demand.
pub struct TreeIso<'a, 'g> {
    pub t1: &'a UniversalCover<'g>,
    pub t2: &'a UniversalCover<'g>,
    types1: Vec<usize>,
    types2: Vec<usize>,
}

pub fn build_theta<'a, 'g>(
    t1: &'a UniversalCover<'g>,
    t2: &'a UniversalCover<'g>,
    blocks: &JointBlocks,
) -> Result<TreeIso<'a, 'g>> {
    if !blocks.exists || blocks.block1(t1.base()) != blocks.block2(t2.base()) {
        return Err(Error::NoCommonUniversalCover);
    }
    Ok(TreeIso {
        t1,
        t2,
        types1: t1.graph().darts().map(|d| blocks.type1(d)).collect(),
        types2: t2.graph().darts().map(|d| blocks.type2(d)).collect(),
    })
}

impl<'a, 'g> TreeIso<'a, 'g> {
    pub fn root_state(&self) -> ThetaState {
        ThetaState {
            x: self.t1.base(),
            y: self.t2.base(),
            back1: None,
            back2: None,
        }
    }

    /// Dart pairing at a state, excluding back darts.
    pub fn pairing(&self, s: &ThetaState) -> Vec<(DartId, DartId)> {
        let g1 = self.t1.graph();
        let g2 = self.t2.graph();
        let mut a: Vec<DartId> = g1.star(s.x).iter().copied().filter(|&d| Some(d) != s.back1).collect();
        let mut b: Vec<DartId> = g2.star(s.y).iter().copied().filter(|&d| Some(d) != s.back2).collect();
        a.sort_by_key(|&d| (self.types1[d.idx()], d));
        b.sort_by_key(|&d| (self.types2[d.idx()], d));
        a.into_iter().zip(b).collect()
    }

    fn advance(&self, e: DartId, f: DartId) -> ThetaState {
        ThetaState {
            x: self.t1.graph().terminus(e),
            y: self.t2.graph().terminus(f),
            back1: Some(self.t1.graph().reverse(e)),
            back2: Some(self.t2.graph().reverse(f)),
        }
    }

    /// Image of dart `e` (leaving `s.x`) and the successor state.
    pub fn step(&self, s: &ThetaState, e: DartId) -> Option<(DartId, ThetaState)> {
        let f = self.pairing(s).into_iter().find(|p| p.0 == e)?.1;
        Some((f, self.advance(e, f)))
    }

    pub fn step_inverse(&self, s: &ThetaState, f: DartId) -> Option<(DartId, ThetaState)> {
        let e = self.pairing(s).into_iter().find(|p| p.1 == f)?.0;
        Some((e, self.advance(e, f)))
    }

    /// Image path together with the state at every prefix (index `i` is
    /// the state after `i` darts).
    pub fn trace(&self, z: &[DartId]) -> (Path, Vec<ThetaState>) {
        let mut s = self.root_state();
        let mut states = vec![s];
        let mut out = Vec::with_capacity(z.len());
        for &e in z {
            let (f, next) = self.step(&s, e).expect("θ is defined on every reduced path");
            out.push(f);
            s = next;
            states.push(s);
        }
        (out, states)
    }

    pub fn image(&self, z: &TreeVertex) -> TreeVertex {
        TreeVertex(self.trace(&z.0).0)
    }

    pub fn preimage(&self, w: &TreeVertex) -> TreeVertex {
        let mut s = self.root_state();
        let mut out = Vec::with_capacity(w.0.len());
        for &f in &w.0 {
            let (e, next) = self.step_inverse(&s, f).expect("θ⁻¹ is defined on every reduced path");
            out.push(e);
            s = next;
        }
        TreeVertex(out)
    }

    /// Checks, at every vertex of `B_radius(base)`, that the pairing is a
    /// bijection of the full stars which preserves joint dart types.
    pub fn check_ball(&self, radius: usize) -> Result<()> {
        let shape = BallShape::new(self.t1.graph(), self.t1.base(), radius);
        for i in 0..shape.len() {
            let p = shape.path(i);
            let (_, states) = self.trace(&p);
            let s = states.last().unwrap();
            let g1 = self.t1.graph();
            let g2 = self.t2.graph();
            if g1.degree(s.x) != g2.degree(s.y) {
                return Err(Error::Verification(format!("θ degree mismatch at depth {}", p.len())));
            }
            if let (Some(b1), Some(b2)) = (s.back1, s.back2) {
                if self.types1[b1.idx()] != self.types2[b2.idx()] {
                    return Err(Error::Verification("θ back darts differ in type".into()));
                }
            }
            for (e, f) in self.pairing(s) {
                if self.types1[e.idx()] != self.types2[f.idx()] {
                    return Err(Error::Verification(format!(
                        "θ pairs darts of different types at depth {}",
                        p.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

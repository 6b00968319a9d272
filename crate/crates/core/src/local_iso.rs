//! Double cosets of ball isomorphisms as index maps.
//!
//! A ball `B_R(z)` in the universal cover of `G_l` is enumerated through the
//! [`BallShape`] of `p_l(z)`, and that enumeration does not depend on which
//! lift `z` is used. An isomorphism `B_R(z) -> B_R(z')` modulo deck
//! transformations on both sides is therefore exactly a bijection between
//! the two shapes, stored as a vector of node indices. Edge neighbourhoods
//! `N_{R-1}(d)` are subsets of the shape at `∂₀d`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{DartId, Graph, VertexId};
use crate::groupoid::{Action, Arrow};
use crate::universal_cover::BallShape;

/// A vertex of `G1` (side 1) or `G2` (side 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Site {
    pub side: u8,
    pub v: VertexId,
}

/// A dart of `G1` (side 1) or `G2` (side 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SiteDart {
    pub side: u8,
    pub d: DartId,
}

impl Site {
    pub fn new(side: u8, v: VertexId) -> Site {
        Site { side, v }
    }
}

impl SiteDart {
    pub fn new(side: u8, d: DartId) -> SiteDart {
        SiteDart { side, d }
    }
}

/// A ball isomorphism class between two sites.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LocalIso {
    pub src: Site,
    pub tgt: Site,
    pub map: Vec<u32>,
}

impl Arrow for LocalIso {
    type Object = Site;
    fn src(&self) -> Site {
        self.src
    }
    fn tgt(&self) -> Site {
        self.tgt
    }
    fn after(&self, first: &Self) -> Self {
        debug_assert_eq!(first.tgt, self.src);
        LocalIso {
            src: first.src,
            tgt: self.tgt,
            map: first.map.iter().map(|&i| self.map[i as usize]).collect(),
        }
    }
    fn inverse(&self) -> Self {
        LocalIso {
            src: self.tgt,
            tgt: self.src,
            map: invert(&self.map),
        }
    }
}

/// An edge-neighbourhood isomorphism class; `map` acts on positions in
/// the sorted node lists of `N(src)` and `N(tgt)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeIso {
    pub src: SiteDart,
    pub tgt: SiteDart,
    pub map: Vec<u32>,
}

impl Arrow for EdgeIso {
    type Object = SiteDart;
    fn src(&self) -> SiteDart {
        self.src
    }
    fn tgt(&self) -> SiteDart {
        self.tgt
    }
    fn after(&self, first: &Self) -> Self {
        debug_assert_eq!(first.tgt, self.src);
        EdgeIso {
            src: first.src,
            tgt: self.tgt,
            map: first.map.iter().map(|&i| self.map[i as usize]).collect(),
        }
    }
    fn inverse(&self) -> Self {
        EdgeIso {
            src: self.tgt,
            tgt: self.src,
            map: invert(&self.map),
        }
    }
}

pub(crate) fn invert(map: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

struct SideTables {
    shapes: Vec<BallShape>,
    origin: Vec<VertexId>,
    reverse: Vec<DartId>,
    /// Per dart: sorted shape indices of `N(e)` inside the shape at `∂₀e`.
    nsub: Vec<Vec<u32>>,
    /// Per dart: shape index -> position in `nsub`, or `u32::MAX`.
    npos: Vec<Vec<u32>>,
    /// Per dart: position in `N(e)` -> position in `N(ē)`.
    flip: Vec<Vec<u32>>,
}

impl SideTables {
    fn new(g: &Graph, radius: usize) -> SideTables {
        let shapes: Vec<BallShape> = g.vertices().map(|v| BallShape::new(g, v, radius)).collect();
        let mut nsub = Vec::with_capacity(g.num_darts());
        let mut npos = Vec::with_capacity(g.num_darts());
        for e in g.darts() {
            let s = &shapes[g.origin(e).idx()];
            let mut sub = Vec::new();
            let mut pos = vec![u32::MAX; s.len()];
            for i in 0..s.len() {
                let depth = s.nodes[i].depth as usize;
                if depth + 1 <= radius || (depth <= radius && s.first_dart(i) == Some(e)) {
                    pos[i] = sub.len() as u32;
                    sub.push(i as u32);
                }
            }
            nsub.push(sub);
            npos.push(pos);
        }
        let mut flip = Vec::with_capacity(g.num_darts());
        for e in g.darts() {
            let r = g.reverse(e);
            let s = &shapes[g.origin(e).idx()];
            let t = &shapes[g.origin(r).idx()];
            let f: Vec<u32> = nsub[e.idx()]
                .iter()
                .map(|&i| {
                    let sigma = s.path(i as usize);
                    let tau: Vec<DartId> = if sigma.first() == Some(&e) {
                        sigma[1..].to_vec()
                    } else {
                        std::iter::once(r).chain(sigma).collect()
                    };
                    let k = t.find(&tau).expect("flipped node lies in the neighbouring ball");
                    npos[r.idx()][k]
                })
                .collect();
            debug_assert!(f.iter().all(|&p| p != u32::MAX));
            flip.push(f);
        }
        SideTables {
            shapes,
            origin: g.darts().map(|d| g.origin(d)).collect(),
            reverse: g.darts().map(|d| g.reverse(d)).collect(),
            nsub,
            npos,
            flip,
        }
    }
}

/// Precomputed shapes and edge neighbourhoods for both graphs at a radius.
pub struct BallContext {
    pub radius: usize,
    sides: [SideTables; 2],
}

impl BallContext {
    pub fn new(g1: &Graph, g2: &Graph, radius: usize) -> BallContext {
        assert!(radius >= 1, "balls need radius at least 1");
        BallContext {
            radius,
            sides: [SideTables::new(g1, radius), SideTables::new(g2, radius)],
        }
    }

    fn side(&self, s: u8) -> &SideTables {
        &self.sides[s as usize - 1]
    }

    pub fn shape(&self, s: Site) -> &BallShape {
        &self.side(s.side).shapes[s.v.idx()]
    }

    pub fn origin(&self, e: SiteDart) -> Site {
        Site::new(e.side, self.side(e.side).origin[e.d.idx()])
    }

    pub fn reverse(&self, e: SiteDart) -> SiteDart {
        SiteDart::new(e.side, self.side(e.side).reverse[e.d.idx()])
    }

    pub fn neighbourhood(&self, e: SiteDart) -> &[u32] {
        &self.side(e.side).nsub[e.d.idx()]
    }

    pub fn identity(&self, s: Site) -> LocalIso {
        LocalIso {
            src: s,
            tgt: s,
            map: (0..self.shape(s).len() as u32).collect(),
        }
    }

    pub fn edge_identity(&self, e: SiteDart) -> EdgeIso {
        EdgeIso {
            src: e,
            tgt: e,
            map: (0..self.neighbourhood(e).len() as u32).collect(),
        }
    }

    /// True when `g` is a rooted tree isomorphism between the two shapes.
    pub fn is_tree_iso(&self, g: &LocalIso) -> bool {
        let a = self.shape(g.src);
        let b = self.shape(g.tgt);
        if a.len() != b.len() || g.map.len() != a.len() || g.map.first() != Some(&0) {
            return false;
        }
        let mut hit = vec![false; b.len()];
        for (i, &j) in g.map.iter().enumerate() {
            if j as usize >= b.len() || std::mem::replace(&mut hit[j as usize], true) {
                return false;
            }
            if i > 0 && b.nodes[j as usize].parent != g.map[a.nodes[i].parent as usize] {
                return false;
            }
        }
        true
    }

    /// Image of the dart `d` (leaving the source root) under `g`.
    pub fn dart_image(&self, g: &LocalIso, d: DartId) -> DartId {
        let a = self.shape(g.src);
        let b = self.shape(g.tgt);
        let i = a.child(0, d).expect("dart leaves the root");
        b.nodes[g.map[i] as usize].dart.expect("children map to children")
    }

    /// `g · 1_d`: the restriction of `g` to `N(d)`.
    pub fn restrict(&self, g: &LocalIso, d: DartId) -> EdgeIso {
        let src = SiteDart::new(g.src.side, d);
        let f = self.dart_image(g, d);
        let tgt = SiteDart::new(g.tgt.side, f);
        let tpos = &self.side(tgt.side).npos[f.idx()];
        let map = self
            .neighbourhood(src)
            .iter()
            .map(|&i| {
                let p = tpos[g.map[i as usize] as usize];
                assert!(p != u32::MAX, "tree isomorphisms preserve edge neighbourhoods");
                p
            })
            .collect();
        EdgeIso { src, tgt, map }
    }

    /// `g · δ = g|_{N(t(δ))} ∘ δ`.
    pub fn act(&self, g: &LocalIso, delta: &EdgeIso) -> EdgeIso {
        debug_assert_eq!(self.origin(delta.tgt), g.src);
        let r = self.restrict(g, delta.tgt.d);
        r.after(delta)
    }

    /// The same neighbourhood map read from the reversed darts.
    pub fn bar(&self, delta: &EdgeIso) -> EdgeIso {
        let fe = &self.side(delta.src.side).flip[delta.src.d.idx()];
        let ff = &self.side(delta.tgt.side).flip[delta.tgt.d.idx()];
        let mut map = vec![0; delta.map.len()];
        for (i, &j) in delta.map.iter().enumerate() {
            map[fe[i] as usize] = ff[j as usize];
        }
        EdgeIso {
            src: self.reverse(delta.src),
            tgt: self.reverse(delta.tgt),
            map,
        }
    }

    /// All rooted tree isomorphisms between the shapes at `a` and `b`
    /// (used for cross-checks and divisor claims, not for construction).
    pub fn all_tree_isos(&self, a: Site, b: Site) -> Vec<LocalIso> {
        let sa = self.shape(a);
        let sb = self.shape(b);
        if sa.len() != sb.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut map = vec![u32::MAX; sa.len()];
        map[0] = 0;
        fn rec(sa: &BallShape, sb: &BallShape, order: &[usize], k: usize, map: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k == order.len() {
                out.push(map.clone());
                return;
            }
            let i = order[k];
            let pi = map[sa.nodes[i].parent as usize] as usize;
            let used: Vec<u32> = order[..k].iter().map(|&j| map[j]).collect();
            for &(_, c) in sb.children(pi) {
                if used.contains(&c) {
                    continue;
                }
                map[i] = c;
                rec(sa, sb, order, k + 1, map, out);
                map[i] = u32::MAX;
            }
        }
        let order: Vec<usize> = (1..sa.len()).collect();
        let mut maps = Vec::new();
        rec(sa, sb, &order, 0, &mut map, &mut maps);
        for m in maps {
            let g = LocalIso { src: a, tgt: b, map: m };
            if self.is_tree_iso(&g) {
                out.push(g);
            }
        }
        out.sort();
        out
    }
}

/// The restriction action of ball isomorphisms on edge isomorphisms.
pub struct RestrictionAction<'c>(pub &'c BallContext);

impl Action<LocalIso> for RestrictionAction<'_> {
    type Elem = EdgeIso;
    fn anchor(&self, a: &EdgeIso) -> Site {
        self.0.origin(a.tgt)
    }
    fn act(&self, g: &LocalIso, a: &EdgeIso) -> EdgeIso {
        self.0.act(g, a)
    }
}

/// Index of every arrow by value, for quick lookups outside a groupoid.
pub fn index_by_value<T: Clone + Eq + std::hash::Hash>(items: &[T]) -> HashMap<T, usize> {
    items.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()
}

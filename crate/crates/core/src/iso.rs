//! Backtracking graph isomorphism, pruned by joint degree refinement.

use crate::graph::{DartId, Graph, GraphMorphism, VertexId};
use crate::refinement::refine;

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    vcls: Vec<usize>,
    dcls: Vec<usize>,
    vmap: Vec<Option<VertexId>>,
    vinv: Vec<Option<VertexId>>,
    dmap: Vec<Option<DartId>>,
    dinv: Vec<Option<DartId>>,
}

impl<'a> Search<'a> {
    fn vclass_g(&self, v: VertexId) -> usize {
        self.vcls[v.idx()]
    }
    fn vclass_h(&self, v: VertexId) -> usize {
        self.vcls[self.g.num_vertices() + v.idx()]
    }
    fn dclass_g(&self, d: DartId) -> usize {
        self.dcls[d.idx()]
    }
    fn dclass_h(&self, d: DartId) -> usize {
        self.dcls[self.g.num_darts() + d.idx()]
    }

    fn next_open(&self) -> Option<DartId> {
        self.g
            .darts()
            .find(|&d| self.dmap[d.idx()].is_none() && self.vmap[self.g.origin(d).idx()].is_some())
    }

    fn extend(&mut self) -> bool {
        let Some(e) = self.next_open() else {
            return self.vmap.iter().all(Option::is_some);
        };
        let w = self.vmap[self.g.origin(e).idx()].unwrap();
        let er = self.g.reverse(e);
        let u = self.g.terminus(e);
        for &f in self.h.star(w) {
            let fr = self.h.reverse(f);
            if self.dinv[f.idx()].is_some() || self.dinv[fr.idx()].is_some() {
                continue;
            }
            if self.dclass_g(e) != self.dclass_h(f) {
                continue;
            }
            let t = self.h.terminus(f);
            let fresh = match self.vmap[u.idx()] {
                Some(x) if x != t => continue,
                Some(_) => false,
                None => {
                    if self.vinv[t.idx()].is_some() || self.vclass_g(u) != self.vclass_h(t) {
                        continue;
                    }
                    true
                }
            };
            self.dmap[e.idx()] = Some(f);
            self.dmap[er.idx()] = Some(fr);
            self.dinv[f.idx()] = Some(e);
            self.dinv[fr.idx()] = Some(er);
            if fresh {
                self.vmap[u.idx()] = Some(t);
                self.vinv[t.idx()] = Some(u);
            }
            if self.extend() {
                return true;
            }
            self.dmap[e.idx()] = None;
            self.dmap[er.idx()] = None;
            self.dinv[f.idx()] = None;
            self.dinv[fr.idx()] = None;
            if fresh {
                self.vmap[u.idx()] = None;
                self.vinv[t.idx()] = None;
            }
        }
        false
    }
}

/// An isomorphism `g -> h` of connected graphs, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<GraphMorphism> {
    if g.num_vertices() != h.num_vertices() || g.num_darts() != h.num_darts() || g.num_vertices() == 0 {
        return None;
    }
    if !g.is_connected() || !h.is_connected() {
        return None;
    }
    let joint = refine(&g.disjoint_union(h));
    let mut s = Search {
        g,
        h,
        vcls: joint.block.clone(),
        dcls: joint.dart_type.clone(),
        vmap: vec![None; g.num_vertices()],
        vinv: vec![None; h.num_vertices()],
        dmap: vec![None; g.num_darts()],
        dinv: vec![None; h.num_darts()],
    };
    let root = VertexId(0);
    for w in h.vertices() {
        if s.vclass_g(root) != s.vclass_h(w) {
            continue;
        }
        s.vmap[0] = Some(w);
        s.vinv[w.idx()] = Some(root);
        if s.extend() {
            return Some(GraphMorphism {
                vmap: s.vmap.iter().map(|v| v.unwrap()).collect(),
                dmap: s.dmap.iter().map(|d| d.unwrap()).collect(),
            });
        }
        s.vmap[0] = None;
        s.vinv[w.idx()] = None;
    }
    None
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.num_vertices() != h.num_vertices() || g.num_darts() != h.num_darts() {
        return false;
    }
    let cg = g.components();
    let ch = h.components();
    if cg.len() != ch.len() {
        return false;
    }
    let ch: Vec<Graph> = ch.iter().map(|c| h.induced(c).0).collect();
    let mut used = vec![false; ch.len()];
    for c in &cg {
        let sub = g.induced(c).0;
        let hit = (0..ch.len()).find(|&i| !used[i] && find_isomorphism(&sub, &ch[i]).is_some());
        match hit {
            Some(i) => used[i] = true,
            None => return false,
        }
    }
    true
}

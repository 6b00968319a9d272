//! Degree refinement: the coarsest equitable partition of a graph, and the
//! joint version on a disjoint union that decides whether two graphs share
//! a universal cover.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{DartId, Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Block index of every vertex.
    pub block: Vec<usize>,
    pub num_blocks: usize,
    /// `counts[i][j]`: darts from any vertex of block `i` into block `j`.
    pub counts: Vec<Vec<usize>>,
    /// Type of every dart: block of origin, block of terminus and the two
    /// dart colours, numbered canonically.
    pub dart_type: Vec<usize>,
}

impl Partition {
    pub fn block_of(&self, v: VertexId) -> usize {
        self.block[v.idx()]
    }

    pub fn members(&self, b: usize) -> Vec<VertexId> {
        self.block
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == b)
            .map(|(i, _)| VertexId(i as u32))
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.num_blocks];
        for &b in &self.block {
            s[b] += 1;
        }
        s
    }

    /// True when every vertex in each block sees the same number of
    /// neighbours (and dart colours) in every block.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let profile = |v: VertexId| {
            let mut p: Vec<usize> = g.star(v).iter().map(|&d| self.dart_type[d.idx()]).collect();
            p.sort_unstable();
            p
        };
        let mut seen: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in g.vertices() {
            let p = profile(v);
            match seen.get(&self.block[v.idx()]) {
                Some(q) if *q != p => return false,
                Some(_) => {}
                None => {
                    seen.insert(self.block[v.idx()], p);
                }
            }
        }
        true
    }
}

fn intern<T: Ord + Clone>(items: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    items.iter().map(|x| sorted.binary_search(x).unwrap()).collect()
}

/// Stable colour refinement without any connectivity requirement.
pub fn refine(g: &Graph) -> Partition {
    let n = g.num_vertices();
    let vcol: Vec<Option<&str>> = g.vertices().map(|v| g.vertex_colour(v)).collect();
    let dcol: Vec<(Option<&str>, Option<&str>)> = g
        .darts()
        .map(|d| (g.dart_colour(d), g.dart_colour(g.reverse(d))))
        .collect();
    let dcol = intern(&dcol);
    let mut class = intern(&vcol);
    let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let keys: Vec<(usize, Vec<(usize, usize)>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<(usize, usize)> = g
                    .star(v)
                    .iter()
                    .map(|&d| (class[g.terminus(d).idx()], dcol[d.idx()]))
                    .collect();
                nb.sort_unstable();
                (class[v.idx()], nb)
            })
            .collect();
        let next = intern(&keys);
        let next_count = next.iter().copied().max().map_or(0, |m| m + 1);
        class = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    canonicalize(g, &class, &dcol, n)
}

fn canonicalize(g: &Graph, class: &[usize], dcol: &[usize], n: usize) -> Partition {
    let k = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut size = vec![0usize; k];
    let mut first = vec![usize::MAX; k];
    let mut row: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        size[class[v]] += 1;
        first[class[v]] = first[class[v]].min(v);
    }
    for (c, r) in row.iter_mut().enumerate() {
        let v = VertexId(first[c] as u32);
        *r = g.star(v).iter().map(|&d| class[g.terminus(d).idx()]).collect();
    }
    // the row multiset of neighbour block sizes is numbering-independent
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| {
        let mut profile: Vec<usize> = row[c].iter().map(|&b| size[b]).collect();
        profile.sort_unstable();
        (size[c], profile, first[c])
    });
    let mut rank = vec![0; k];
    for (i, &c) in order.iter().enumerate() {
        rank[c] = i;
    }
    let block: Vec<usize> = class.iter().map(|&c| rank[c]).collect();
    let mut counts = vec![vec![0; k]; k];
    for c in 0..k {
        for &b in &row[c] {
            counts[rank[c]][rank[b]] += 1;
        }
    }
    let types: Vec<(usize, usize, usize)> = g
        .darts()
        .map(|d| (block[g.origin(d).idx()], block[g.terminus(d).idx()], dcol[d.idx()]))
        .collect();
    Partition {
        block,
        num_blocks: k,
        counts,
        dart_type: intern(&types),
    }
}

/// Coarsest equitable partition of a connected graph.
pub fn degree_refinement(g: &Graph) -> Result<Partition> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(refine(g))
}

/// Joint refinement of two graphs together with the induced correspondence.
#[derive(Clone, Debug)]
pub struct JointBlocks {
    pub exists: bool,
    /// Refinement of the disjoint union (g1's vertices and darts first).
    pub joint: Partition,
    pub n1: usize,
    pub d1: usize,
}

impl JointBlocks {
    pub fn block1(&self, v: VertexId) -> usize {
        self.joint.block[v.idx()]
    }

    pub fn block2(&self, v: VertexId) -> usize {
        self.joint.block[self.n1 + v.idx()]
    }

    pub fn type1(&self, d: DartId) -> usize {
        self.joint.dart_type[d.idx()]
    }

    pub fn type2(&self, d: DartId) -> usize {
        self.joint.dart_type[self.d1 + d.idx()]
    }

    /// For each joint block, its members in g1 and in g2.
    pub fn correspondence(&self) -> Vec<(Vec<VertexId>, Vec<VertexId>)> {
        let mut out = vec![(Vec::new(), Vec::new()); self.joint.num_blocks];
        for (i, &b) in self.joint.block.iter().enumerate() {
            if i < self.n1 {
                out[b].0.push(VertexId(i as u32));
            } else {
                out[b].1.push(VertexId((i - self.n1) as u32));
            }
        }
        out
    }
}

pub fn common_cover_exists(g1: &Graph, g2: &Graph) -> Result<JointBlocks> {
    if !g1.is_connected() || !g2.is_connected() {
        return Err(Error::NotConnected);
    }
    let u = g1.disjoint_union(g2);
    let joint = refine(&u);
    let n1 = g1.num_vertices();
    let mut has = vec![(false, false); joint.num_blocks];
    for (i, &b) in joint.block.iter().enumerate() {
        if i < n1 {
            has[b].0 = true;
        } else {
            has[b].1 = true;
        }
    }
    Ok(JointBlocks {
        exists: has.iter().all(|&(a, b)| a && b),
        joint,
        n1,
        d1: g1.num_darts(),
    })
}

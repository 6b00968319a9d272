//! Small common covers of regular graphs.
//!
//! A `2m`-regular graph splits into `m` spanning 2-regular factors, which
//! gives a covering onto the rose `R_m`: orient every factor along its
//! cycles and send the `i`-th factor to the `i`-th loop. The factors come
//! from an orientation with equal in- and out-degrees (closed trails) and
//! a decomposition of the resulting `m`-regular bipartite graph into
//! perfect matchings. A `k`-regular graph with `k` odd has a bipartite
//! double cover, whose `k` perfect matchings give a covering onto `Θ_k`.
//! Common covers are fiber products over `R_m` or `Θ_k`.

use crate::error::{Error, Result};
use crate::graph::fixtures::{rose, theta};
use crate::graph::{fiber_product, is_covering, CoveringCheck, DartId, Graph, GraphMorphism, VertexId};

#[derive(Clone, Debug)]
pub enum Factorization {
    Even {
        /// For every 2-factor, one dart per geometric edge, oriented along
        /// the factor's cycles.
        factors: Vec<Vec<DartId>>,
        /// Covering onto `R_{k/2}`.
        covering: GraphMorphism,
    },
    Odd {
        /// `G × K_2`: vertex `(v, s)` is `2v + s`, dart `(e, s)` is `2e + s`.
        double_cover: Graph,
        projection: GraphMorphism,
        /// For every perfect matching of the double cover, the darts leaving
        /// sheet 0.
        matchings: Vec<Vec<DartId>>,
        /// Covering of the double cover onto `Θ_k`.
        covering: GraphMorphism,
    },
}

impl Factorization {
    /// The graph that is covered onto the rose or theta graph.
    pub fn base(&self) -> Graph {
        match self {
            Factorization::Even { factors, .. } => rose(factors.len()),
            Factorization::Odd { matchings, .. } => theta(matchings.len()),
        }
    }
}

fn require_regular(g: &Graph) -> Result<usize> {
    match g.regular_degree() {
        Some(k) if k > 0 && g.num_vertices() > 0 => Ok(k),
        _ => Err(Error::NotRegular),
    }
}

/// Orients every geometric edge so that each vertex has equal in- and
/// out-degree, by walking closed trails.
fn balanced_orientation(g: &Graph) -> Vec<DartId> {
    let mut used = vec![false; g.num_darts()];
    let mut next = vec![0usize; g.num_vertices()];
    let mut out = Vec::with_capacity(g.num_edges());
    for start in g.vertices() {
        loop {
            let mut v = start;
            let mut moved = false;
            loop {
                let star = g.star(v);
                while next[v.idx()] < star.len() && used[star[next[v.idx()]].idx()] {
                    next[v.idx()] += 1;
                }
                let Some(&d) = star.get(next[v.idx()]) else { break };
                used[d.idx()] = true;
                used[g.reverse(d).idx()] = true;
                out.push(d);
                v = g.terminus(d);
                moved = true;
            }
            if !moved {
                break;
            }
        }
    }
    out.sort();
    out
}

/// A perfect matching of a bipartite multigraph with `n` vertices per side,
/// as one edge index per left vertex; edges with `alive[i] == false` are
/// ignored.
fn perfect_matching(n: usize, edges: &[(usize, usize)], alive: &[bool]) -> Option<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(l, _)) in edges.iter().enumerate() {
        if alive[i] {
            adj[l].push(i);
        }
    }
    let mut right: Vec<Option<usize>> = vec![None; n];
    fn augment(l: usize, adj: &[Vec<usize>], edges: &[(usize, usize)], right: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &i in &adj[l] {
            let r = edges[i].1;
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if right[r].is_none_or(|j| augment(edges[j].0, adj, edges, right, seen)) {
                right[r] = Some(i);
                return true;
            }
        }
        false
    }
    for l in 0..n {
        let mut seen = vec![false; n];
        if !augment(l, &adj, edges, &mut right, &mut seen) {
            return None;
        }
    }
    let mut by_left = vec![0; n];
    for i in right.into_iter().flatten() {
        by_left[edges[i].0] = i;
    }
    Some(by_left)
}

/// Splits the edges of a `k`-regular bipartite multigraph into `k` perfect
/// matchings.
fn one_factorize(n: usize, edges: &[(usize, usize)], k: usize) -> Result<Vec<Vec<usize>>> {
    let mut alive = vec![true; edges.len()];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let m = perfect_matching(n, edges, &alive)
            .ok_or_else(|| Error::Verification("regular bipartite graph without a perfect matching".into()))?;
        for &i in &m {
            alive[i] = false;
        }
        out.push(m);
    }
    Ok(out)
}

pub fn bipartite_double_cover(g: &Graph) -> (Graph, GraphMorphism) {
    let nv = g.num_vertices();
    let mut names = Vec::with_capacity(2 * nv);
    let mut vcol = Vec::with_capacity(2 * nv);
    for v in g.vertices() {
        for s in 0..2 {
            names.push(format!("{}.{s}", g.vertex_name(v)));
            vcol.push(g.vertex_colour(v).map(str::to_string));
        }
    }
    let mut dnames = Vec::new();
    let mut origin = Vec::new();
    let mut reverse = Vec::new();
    let mut dcol = Vec::new();
    for e in g.darts() {
        for s in 0..2u32 {
            dnames.push(format!("{}.{s}", g.dart_name(e)));
            origin.push(VertexId(2 * g.origin(e).0 + s));
            reverse.push(DartId(2 * g.reverse(e).0 + 1 - s));
            dcol.push(g.dart_colour(e).map(str::to_string));
        }
    }
    let d = Graph::from_parts(names, dnames, origin, reverse, vcol, dcol);
    let proj = GraphMorphism {
        vmap: d.vertices().map(|v| VertexId(v.0 / 2)).collect(),
        dmap: d.darts().map(|e| DartId(e.0 / 2)).collect(),
    };
    (d, proj)
}

pub fn factorize_regular(g: &Graph) -> Result<Factorization> {
    let k = require_regular(g)?;
    let n = g.num_vertices();
    if k % 2 == 0 {
        let oriented = balanced_orientation(g);
        let edges: Vec<(usize, usize)> = oriented.iter().map(|&d| (g.origin(d).idx(), g.terminus(d).idx())).collect();
        let matchings = one_factorize(n, &edges, k / 2)?;
        let mut dmap = vec![DartId(0); g.num_darts()];
        let mut factors = Vec::with_capacity(k / 2);
        for (i, m) in matchings.iter().enumerate() {
            let mut f: Vec<DartId> = m.iter().map(|&j| oriented[j]).collect();
            f.sort();
            for &d in &f {
                dmap[d.idx()] = DartId(2 * i as u32);
                dmap[g.reverse(d).idx()] = DartId(2 * i as u32 + 1);
            }
            factors.push(f);
        }
        let covering = GraphMorphism {
            vmap: vec![VertexId(0); n],
            dmap,
        };
        let fz = Factorization::Even { factors, covering };
        check_factors(g, &fz)?;
        Ok(fz)
    } else {
        let (d, projection) = bipartite_double_cover(g);
        let sheet0: Vec<DartId> = d.darts().filter(|e| e.0 % 2 == 0).collect();
        let edges: Vec<(usize, usize)> = sheet0.iter().map(|&e| (d.origin(e).idx() / 2, d.terminus(e).idx() / 2)).collect();
        let ms = one_factorize(n, &edges, k)?;
        let mut dmap = vec![DartId(0); d.num_darts()];
        let mut matchings = Vec::with_capacity(k);
        for (i, m) in ms.iter().enumerate() {
            let mut f: Vec<DartId> = m.iter().map(|&j| sheet0[j]).collect();
            f.sort();
            for &e in &f {
                dmap[e.idx()] = DartId(2 * i as u32);
                dmap[d.reverse(e).idx()] = DartId(2 * i as u32 + 1);
            }
            matchings.push(f);
        }
        let covering = GraphMorphism {
            vmap: d.vertices().map(|v| VertexId(v.0 % 2)).collect(),
            dmap,
        };
        let fz = Factorization::Odd {
            double_cover: d,
            projection,
            matchings,
            covering,
        };
        check_factors(g, &fz)?;
        Ok(fz)
    }
}

fn covers(src: &Graph, tgt: &Graph, m: &GraphMorphism, what: &str) -> Result<()> {
    match is_covering(src, tgt, m)? {
        CoveringCheck::Covering => Ok(()),
        CoveringCheck::Fails(f) => Err(Error::Verification(format!("{what} is not a covering: {f:?}"))),
    }
}

/// Checks every factor and the coverings of a factorization.
pub fn check_factors(g: &Graph, fz: &Factorization) -> Result<()> {
    match fz {
        Factorization::Even { factors, covering } => {
            let mut seen = vec![false; g.num_darts()];
            for (i, f) in factors.iter().enumerate() {
                let mut deg = vec![0usize; g.num_vertices()];
                for &d in f {
                    for x in [d, g.reverse(d)] {
                        if std::mem::replace(&mut seen[x.idx()], true) {
                            return Err(Error::Verification(format!("factor {i} reuses an edge")));
                        }
                    }
                    deg[g.origin(d).idx()] += 1;
                    deg[g.terminus(d).idx()] += 1;
                }
                if deg.iter().any(|&x| x != 2) {
                    return Err(Error::Verification(format!("factor {i} is not a spanning 2-regular subgraph")));
                }
            }
            if seen.iter().any(|&s| !s) {
                return Err(Error::Verification("factors miss an edge".into()));
            }
            covers(g, &rose(factors.len()), covering, "factor covering")
        }
        Factorization::Odd {
            double_cover,
            projection,
            matchings,
            covering,
        } => {
            let d = double_cover;
            let colour = bipartition(d).ok_or_else(|| Error::Verification("double cover is not bipartite".into()))?;
            let mut seen = vec![false; d.num_darts()];
            for (i, m) in matchings.iter().enumerate() {
                let mut hit = vec![0usize; d.num_vertices()];
                for &e in m {
                    for x in [e, d.reverse(e)] {
                        if std::mem::replace(&mut seen[x.idx()], true) {
                            return Err(Error::Verification(format!("matching {i} reuses an edge")));
                        }
                    }
                    hit[d.origin(e).idx()] += 1;
                    hit[d.terminus(e).idx()] += 1;
                    if colour[d.origin(e).idx()] == colour[d.terminus(e).idx()] {
                        return Err(Error::Verification("edge inside one side of the double cover".into()));
                    }
                }
                if hit.iter().any(|&x| x != 1) {
                    return Err(Error::Verification(format!("matching {i} is not perfect")));
                }
            }
            if seen.iter().any(|&s| !s) {
                return Err(Error::Verification("matchings miss an edge".into()));
            }
            covers(d, g, projection, "double cover projection")?;
            covers(d, &theta(matchings.len()), covering, "matching covering")
        }
    }
}

/// A proper 2-colouring, if one exists.
pub fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let mut colour = vec![u8::MAX; g.num_vertices()];
    for s in g.vertices() {
        if colour[s.idx()] != u8::MAX {
            continue;
        }
        colour[s.idx()] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &d in g.star(v) {
                let w = g.terminus(d);
                if colour[w.idx()] == u8::MAX {
                    colour[w.idx()] = 1 - colour[v.idx()];
                    stack.push(w);
                } else if colour[w.idx()] == colour[v.idx()] {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

#[derive(Clone, Debug)]
pub struct RegularCover {
    /// The full fiber product.
    pub graph: Graph,
    pub mu1: GraphMorphism,
    pub mu2: GraphMorphism,
    pub degree: usize,
    /// `|V1| |V2|` for even degree, `2 |V1| |V2|` for odd degree.
    pub bound: u64,
    pub component_sizes: Vec<usize>,
}

impl RegularCover {
    /// The smallest connected component with its projections.
    pub fn least_component(&self) -> (Graph, GraphMorphism, GraphMorphism) {
        let comps = self.graph.components();
        let keep = comps.iter().min_by_key(|c| (c.len(), c[0])).cloned().unwrap_or_default();
        let (sub, vs, ds) = self.graph.induced(&keep);
        let restrict = |m: &GraphMorphism| GraphMorphism {
            vmap: vs.iter().map(|&v| m.vertex(v)).collect(),
            dmap: ds.iter().map(|&d| m.dart(d)).collect(),
        };
        (sub.clone(), restrict(&self.mu1), restrict(&self.mu2))
    }
}

pub fn regular_common_cover(g1: &Graph, g2: &Graph) -> Result<RegularCover> {
    let k1 = require_regular(g1)?;
    let k2 = require_regular(g2)?;
    if k1 != k2 {
        return Err(Error::DegreeMismatch(k1, k2));
    }
    let f1 = factorize_regular(g1)?;
    let f2 = factorize_regular(g2)?;
    let base = f1.base();
    let (v1, v2) = (g1.num_vertices() as u64, g2.num_vertices() as u64);
    let (graph, mu1, mu2, bound) = match (&f1, &f2) {
        (Factorization::Even { covering: c1, .. }, Factorization::Even { covering: c2, .. }) => {
            let p = fiber_product(g1, c1, g2, c2, &base)?;
            (p.graph, p.proj1, p.proj2, v1 * v2)
        }
        (
            Factorization::Odd {
                double_cover: d1,
                projection: p1,
                covering: c1,
                ..
            },
            Factorization::Odd {
                double_cover: d2,
                projection: p2,
                covering: c2,
                ..
            },
        ) => {
            let p = fiber_product(d1, c1, d2, c2, &base)?;
            (p.graph, p.proj1.then(p1), p.proj2.then(p2), 2 * v1 * v2)
        }
        _ => unreachable!("equal degrees have equal parity"),
    };
    covers(&graph, g1, &mu1, "projection to G1")?;
    covers(&graph, g2, &mu2, "projection to G2")?;
    if graph.num_vertices() as u64 > bound {
        return Err(Error::Verification(format!(
            "fiber product has {} vertices, above {bound}",
            graph.num_vertices()
        )));
    }
    let component_sizes = graph.components().iter().map(Vec::len).collect();
    Ok(RegularCover {
        graph,
        mu1,
        mu2,
        degree: k1,
        bound,
        component_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::iso::are_isomorphic;

    #[test]
    fn k5_two_factors() {
        let g = complete(5);
        let Factorization::Even { factors, .. } = factorize_regular(&g).unwrap() else { panic!() };
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|f| f.len() == 5));
    }

    #[test]
    fn c6_is_its_own_factor() {
        let Factorization::Even { factors, .. } = factorize_regular(&cycle(6)).unwrap() else { panic!() };
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].len(), 6);
    }

    #[test]
    fn k4_double_cover_is_a_cube() {
        let Factorization::Odd {
            double_cover, matchings, ..
        } = factorize_regular(&complete(4)).unwrap()
        else {
            panic!()
        };
        assert_eq!(double_cover.num_vertices(), 8);
        assert!(double_cover.is_connected());
        assert_eq!(matchings.len(), 3);
        assert!(bipartition(&double_cover).is_some());
        // K4 × K2 is the cube Q3
        let mut b = crate::graph::GraphBuilder::new();
        let vs: Vec<VertexId> = (0..8).map(|i| b.vertex(&format!("q{i}"))).collect();
        for i in 0..8usize {
            for bit in [1, 2, 4] {
                if i & bit == 0 {
                    b.edge(vs[i], vs[i | bit]);
                }
            }
        }
        assert!(are_isomorphic(&double_cover, &b.build().unwrap()));
    }

    #[test]
    fn loops_and_multi_edges() {
        for g in [rose(3), theta(4), theta(3), rose(1)] {
            let fz = factorize_regular(&g).unwrap();
            check_factors(&g, &fz).unwrap();
        }
    }

    #[test]
    fn irregular_is_refused() {
        assert_eq!(factorize_regular(&path(3)).unwrap_err(), Error::NotRegular);
        assert_eq!(
            regular_common_cover(&complete(4), &complete(5)).unwrap_err(),
            Error::DegreeMismatch(3, 4)
        );
    }

    #[test]
    fn common_covers() {
        let c = regular_common_cover(&cycle(3), &cycle(4)).unwrap();
        assert_eq!(c.graph.num_vertices(), 12);
        assert!(c.graph.is_connected());
        let c = regular_common_cover(&complete(4), &complete_bipartite(3, 3)).unwrap();
        assert!(c.graph.num_vertices() <= 48);
        let (sub, m1, m2) = c.least_component();
        assert!(is_covering(&sub, &complete(4), &m1).unwrap().holds());
        assert!(is_covering(&sub, &complete_bipartite(3, 3), &m2).unwrap().holds());
        let c = regular_common_cover(&complete(5), &complete(5)).unwrap();
        assert!(c.graph.num_vertices() <= 25);
        for comp in c.graph.components() {
            let (sub, vs, ds) = c.graph.induced(&comp);
            let m = GraphMorphism {
                vmap: vs.iter().map(|&v| c.mu1.vertex(v)).collect(),
                dmap: ds.iter().map(|&d| c.mu1.dart(d)).collect(),
            };
            assert!(is_covering(&sub, &complete(5), &m).unwrap().holds());
        }
    }

    #[test]
    fn diagonal_component_for_even_self_cover() {
        let g = complete(5);
        let c = regular_common_cover(&g, &g).unwrap();
        let comps = c.graph.components();
        assert!(comps.iter().any(|comp| {
            let (sub, _, _) = c.graph.induced(comp);
            are_isomorphic(&sub, &g)
        }));
    }
}

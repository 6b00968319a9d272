//! Exhaustive ground truth for small inputs.
//!
//! Nothing here uses the refinement, groupoid or cover-building code: covers
//! of `G1` are enumerated from permutation voltages on the edges outside a
//! spanning tree, and coverings onto `G2` are searched by backtracking.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_covering, DartId, Graph, GraphMorphism, VertexId};

pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug)]
pub struct OracleCover {
    pub graph: Graph,
    /// Covering degree over `G1`.
    pub degree: usize,
    pub mu1: GraphMorphism,
    pub mu2: GraphMorphism,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleStats {
    pub max_degree: usize,
    pub covers_examined: u64,
    pub steps: u64,
}

struct Budget {
    left: u64,
    used: u64,
}

impl Budget {
    fn spend(&mut self, n: u64) -> Result<()> {
        if self.left < n {
            return Err(Error::BudgetExceeded);
        }
        self.left -= n;
        self.used += n;
        Ok(())
    }
}

/// Darts outside a breadth-first spanning forest, one per geometric edge.
fn cotree_darts(g: &Graph) -> Vec<DartId> {
    let mut seen = vec![false; g.num_vertices()];
    let mut tree = vec![false; g.num_darts()];
    for s in g.vertices() {
        if seen[s.idx()] {
            continue;
        }
        seen[s.idx()] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &d in g.star(v) {
                let w = g.terminus(d);
                if !seen[w.idx()] {
                    seen[w.idx()] = true;
                    tree[d.idx()] = true;
                    tree[g.reverse(d).idx()] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    g.darts().filter(|&d| !tree[d.idx()] && d < g.reverse(d)).collect()
}

/// The cover of `g` given by a permutation voltage on every dart.
fn voltage_cover(g: &Graph, m: usize, sigma: &[Vec<usize>]) -> (Graph, GraphMorphism) {
    let id = |d: DartId, i: usize| DartId((d.idx() * m + i) as u32);
    let mut vnames = Vec::new();
    let mut vcol = Vec::new();
    for v in g.vertices() {
        for i in 0..m {
            vnames.push(format!("{}#{i}", g.vertex_name(v)));
            vcol.push(g.vertex_colour(v).map(str::to_string));
        }
    }
    let mut dnames = Vec::new();
    let mut origin = Vec::new();
    let mut reverse = Vec::new();
    let mut dcol = Vec::new();
    for d in g.darts() {
        for i in 0..m {
            dnames.push(format!("{}#{i}", g.dart_name(d)));
            origin.push(VertexId((g.origin(d).idx() * m + i) as u32));
            reverse.push(id(g.reverse(d), sigma[d.idx()][i]));
            dcol.push(g.dart_colour(d).map(str::to_string));
        }
    }
    let h = Graph::from_parts(vnames, dnames, origin, reverse, vcol, dcol);
    let p = GraphMorphism {
        vmap: h.vertices().map(|v| VertexId((v.idx() / m) as u32)).collect(),
        dmap: h.darts().map(|d| DartId((d.idx() / m) as u32)).collect(),
    };
    (h, p)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn colours_match(a: Option<&str>, b: Option<&str>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    }
}

/// A covering `h -> g`, searched by backtracking.
pub fn find_covering(h: &Graph, g: &Graph, budget: &mut u64) -> Result<Option<GraphMorphism>> {
    let mut b = Budget { left: *budget, used: 0 };
    let r = covering_search(h, g, &mut b);
    *budget = b.left;
    r
}

fn covering_search(h: &Graph, g: &Graph, budget: &mut Budget) -> Result<Option<GraphMorphism>> {
    if h.num_vertices() == 0 || g.num_vertices() == 0 || !h.is_connected() || !g.is_connected() {
        return Ok(None);
    }
    if h.num_vertices() % g.num_vertices() != 0 || h.num_darts() * g.num_vertices() != g.num_darts() * h.num_vertices() {
        return Ok(None);
    }
    // darts in breadth-first order of their origins, so every origin is
    // placed before its darts are
    let mut order = Vec::with_capacity(h.num_darts());
    let mut seen = vec![false; h.num_vertices()];
    let mut queue = std::collections::VecDeque::from([VertexId(0)]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &d in h.star(u) {
            order.push(d);
            let w = h.terminus(d);
            if !seen[w.idx()] {
                seen[w.idx()] = true;
                queue.push_back(w);
            }
        }
    }
    let mut st = Search {
        h,
        g,
        order,
        vmap: vec![None; h.num_vertices()],
        dmap: vec![None; h.num_darts()],
        used: vec![Vec::new(); h.num_vertices()],
    };
    for v in g.vertices() {
        if !st.place_vertex(VertexId(0), v) {
            continue;
        }
        if st.step(0, budget)? {
            return Ok(Some(GraphMorphism {
                vmap: st.vmap.iter().map(|x| x.unwrap()).collect(),
                dmap: st.dmap.iter().map(|x| x.unwrap()).collect(),
            }));
        }
        st.vmap[0] = None;
    }
    Ok(None)
}

struct Search<'a> {
    h: &'a Graph,
    g: &'a Graph,
    order: Vec<DartId>,
    vmap: Vec<Option<VertexId>>,
    dmap: Vec<Option<DartId>>,
    /// Images already taken in the star of every vertex of `h`.
    used: Vec<Vec<DartId>>,
}

impl Search<'_> {
    fn place_vertex(&mut self, u: VertexId, v: VertexId) -> bool {
        if self.h.degree(u) != self.g.degree(v) || !colours_match(self.h.vertex_colour(u), self.g.vertex_colour(v)) {
            return false;
        }
        self.vmap[u.idx()] = Some(v);
        true
    }

    fn step(&mut self, i: usize, budget: &mut Budget) -> Result<bool> {
        let Some(&d) = self.order.get(i) else { return Ok(true) };
        if self.dmap[d.idx()].is_some() {
            return self.step(i + 1, budget);
        }
        let (h, g) = (self.h, self.g);
        let u = h.origin(d);
        let dr = h.reverse(d);
        let w = h.terminus(d);
        let v = self.vmap[u.idx()].expect("origin placed first");
        for &f in g.star(v) {
            budget.spend(1)?;
            let fr = g.reverse(f);
            if self.used[u.idx()].contains(&f)
                || !colours_match(h.dart_colour(d), g.dart_colour(f))
                || !colours_match(h.dart_colour(dr), g.dart_colour(fr))
            {
                continue;
            }
            let t = g.terminus(f);
            let fresh = self.vmap[w.idx()].is_none();
            if fresh {
                if !self.place_vertex(w, t) {
                    continue;
                }
            } else if self.vmap[w.idx()] != Some(t) {
                continue;
            }
            if (dr == d) != (fr == f) || (dr != d && self.used[w.idx()].contains(&fr)) {
                if fresh {
                    self.vmap[w.idx()] = None;
                }
                continue;
            }
            self.dmap[d.idx()] = Some(f);
            self.dmap[dr.idx()] = Some(fr);
            self.used[u.idx()].push(f);
            if dr != d {
                self.used[w.idx()].push(fr);
            }
            if self.step(i + 1, budget)? {
                return Ok(true);
            }
            if dr != d {
                self.used[w.idx()].pop();
            }
            self.used[u.idx()].pop();
            self.dmap[d.idx()] = None;
            self.dmap[dr.idx()] = None;
            if fresh {
                self.vmap[w.idx()] = None;
            }
        }
        Ok(false)
    }
}

/// The least connected common cover of `g1` and `g2` among covers of `g1`
/// of degree at most `max_degree`.
pub fn brute_common_cover(g1: &Graph, g2: &Graph, max_degree: usize, budget: u64) -> Result<(Option<OracleCover>, OracleStats)> {
    let mut b = Budget { left: budget, used: 0 };
    let mut examined = 0u64;
    let extra = cotree_darts(g1);
    for m in 1..=max_degree {
        let mut perms: Vec<Vec<usize>> = vec![(0..m).collect(); extra.len()];
        loop {
            b.spend(1)?;
            let mut sigma: Vec<Vec<usize>> = vec![(0..m).collect(); g1.num_darts()];
            for (k, &d) in extra.iter().enumerate() {
                let p = &perms[k];
                let mut inv = vec![0; m];
                for (i, &j) in p.iter().enumerate() {
                    inv[j] = i;
                }
                sigma[d.idx()] = p.clone();
                sigma[g1.reverse(d).idx()] = inv;
            }
            let (h, p1) = voltage_cover(g1, m, &sigma);
            if !is_covering(&h, g1, &p1)?.holds() {
                return Err(Error::Verification("voltage construction is not a covering".into()));
            }
            if h.is_connected() {
                examined += 1;
                if let Some(p2) = covering_search(&h, g2, &mut b)? {
                    if !is_covering(&h, g2, &p2)?.holds() {
                        return Err(Error::Verification("backtracking returned a non-covering".into()));
                    }
                    let stats = OracleStats {
                        max_degree,
                        covers_examined: examined,
                        steps: b.used,
                    };
                    return Ok((
                        Some(OracleCover {
                            graph: h,
                            degree: m,
                            mu1: p1,
                            mu2: p2,
                        }),
                        stats,
                    ));
                }
            }
            // odometer over the voltage permutations
            let mut k = 0;
            while k < perms.len() && !next_permutation(&mut perms[k]) {
                perms[k] = (0..m).collect();
                k += 1;
            }
            if k == perms.len() {
                break;
            }
        }
    }
    Ok((
        None,
        OracleStats {
            max_degree,
            covers_examined: examined,
            steps: b.used,
        },
    ))
}

/// Largest lcm over all partitions of `n`, by enumeration.
pub fn brute_landau(n: u64) -> Result<u64> {
    if n == 0 || n > 30 {
        return Err(Error::OutOfRange(format!("brute_landau needs 1 ≤ n ≤ 30, got {n}")));
    }
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    fn rec(rest: u64, max_part: u64, acc: u64) -> u64 {
        if rest == 0 {
            return acc;
        }
        let mut best = 0;
        for k in 1..=max_part.min(rest) {
            let l = acc / gcd(acc, k) * k;
            best = best.max(rec(rest - k, k, l));
        }
        best
    }
    Ok(rec(n, n, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn c3_c4_least_is_twelve() {
        let (c, stats) = brute_common_cover(&cycle(3), &cycle(4), 4, DEFAULT_BUDGET).unwrap();
        let c = c.unwrap();
        assert_eq!(c.graph.num_vertices(), 12);
        assert_eq!(c.degree, 4);
        assert!(stats.covers_examined >= 4);
    }

    #[test]
    fn self_cover_at_degree_one() {
        for g in [complete(4), theta(3), path(3)] {
            let (c, _) = brute_common_cover(&g, &g, 2, DEFAULT_BUDGET).unwrap();
            assert_eq!(c.unwrap().degree, 1);
        }
    }

    #[test]
    fn no_cover_for_different_universal_covers() {
        let (c, _) = brute_common_cover(&cycle(3), &complete(4), 3, DEFAULT_BUDGET).unwrap();
        assert!(c.is_none());
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(brute_common_cover(&complete(4), &theta(3), 6, 50).unwrap_err(), Error::BudgetExceeded);
    }

    #[test]
    fn k4_theta3() {
        let (c, _) = brute_common_cover(&complete(4), &theta(3), 2, DEFAULT_BUDGET).unwrap();
        let c = c.unwrap();
        assert_eq!(c.graph.num_vertices(), 8);
    }

    #[test]
    fn landau_by_partitions() {
        assert_eq!(brute_landau(1).unwrap(), 1);
        assert_eq!(brute_landau(7).unwrap(), 12);
        assert_eq!(brute_landau(10).unwrap(), 30);
        assert!(brute_landau(0).is_err());
        assert!(brute_landau(31).is_err());
    }
}

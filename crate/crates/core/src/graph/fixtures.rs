//! Small named graphs used throughout the tests, examples and CLI.

use super::{DartId, Graph, GraphBuilder, GraphMorphism, VertexId};

/// `C_n`: vertices `v0..v{n-1}`, edge `i` runs `v_i -> v_{i+1 mod n}`.
/// Edge `i` owns darts `2i` (forward) and `2i + 1`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 1);
    let mut b = GraphBuilder::new();
    let vs: Vec<VertexId> = (0..n).map(|i| b.vertex(&format!("v{i}"))).collect();
    for i in 0..n {
        b.edge(vs[i], vs[(i + 1) % n]);
    }
    b.build_unchecked()
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    assert!(n >= 1);
    let mut b = GraphBuilder::new();
    let vs: Vec<VertexId> = (0..n).map(|i| b.vertex(&format!("v{i}"))).collect();
    for i in 1..n {
        b.edge(vs[i - 1], vs[i]);
    }
    b.build_unchecked()
}

/// `R_d`: one vertex with `d` loops.
pub fn rose(d: usize) -> Graph {
    let mut b = GraphBuilder::new();
    let v = b.vertex("v");
    for _ in 0..d {
        b.edge(v, v);
    }
    b.build_unchecked()
}

/// `Θ_d`: vertices `a`, `b` joined by `d` parallel edges.
pub fn theta(d: usize) -> Graph {
    let mut b = GraphBuilder::new();
    let x = b.vertex("a");
    let y = b.vertex("b");
    for _ in 0..d {
        b.edge(x, y);
    }
    b.build_unchecked()
}

/// `K_n`, edges in lexicographic order of `(i, j)` with `i < j`.
pub fn complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new();
    let vs: Vec<VertexId> = (0..n).map(|i| b.vertex(&format!("v{i}"))).collect();
    for i in 0..n {
        for j in i + 1..n {
            b.edge(vs[i], vs[j]);
        }
    }
    b.build_unchecked()
}

/// `K_{p,q}` with parts `a0..` and `b0..`.
pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    let mut b = GraphBuilder::new();
    let xs: Vec<VertexId> = (0..p).map(|i| b.vertex(&format!("a{i}"))).collect();
    let ys: Vec<VertexId> = (0..q).map(|i| b.vertex(&format!("b{i}"))).collect();
    for &x in &xs {
        for &y in &ys {
            b.edge(x, y);
        }
    }
    b.build_unchecked()
}

/// The wrap map `C_n -> C_m` (index mod `m`); requires `m | n`.
pub fn wrap_cycle(n: usize, m: usize) -> GraphMorphism {
    assert!(m >= 1 && n % m == 0);
    GraphMorphism {
        vmap: (0..n).map(|i| VertexId((i % m) as u32)).collect(),
        dmap: (0..2 * n)
            .map(|d| DartId((2 * ((d / 2) % m) + d % 2) as u32))
            .collect(),
    }
}

/// `C_n -> R_1`, orienting every edge along the loop.
pub fn wrap_cycle_to_rose(n: usize) -> GraphMorphism {
    GraphMorphism {
        vmap: vec![VertexId(0); n],
        dmap: (0..2 * n).map(|d| DartId((d % 2) as u32)).collect(),
    }
}

/// Looks a fixture up by its short name (`c5`, `p3`, `r2`, `theta3`, `k4`, `k33`).
pub fn by_name(name: &str) -> Option<Graph> {
    let lower = name.to_ascii_lowercase();
    let num = |prefix: &str| -> Option<usize> { lower.strip_prefix(prefix)?.parse().ok() };
    if let Some(n) = num("theta") {
        return Some(theta(n));
    }
    if lower.len() == 3 && lower.starts_with('k') {
        let p = lower[1..2].parse().ok()?;
        let q = lower[2..3].parse().ok()?;
        return Some(complete_bipartite(p, q));
    }
    if let Some(n) = num("k") {
        return Some(complete(n));
    }
    if let Some(n) = num("c") {
        return (n >= 1).then(|| cycle(n));
    }
    if let Some(n) = num("p") {
        return (n >= 1).then(|| path(n));
    }
    if let Some(n) = num("r") {
        return Some(rose(n));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(cycle(5).num_darts(), 10);
        assert_eq!(rose(2).num_darts(), 4);
        assert_eq!(theta(3).num_vertices(), 2);
        assert_eq!(complete(4).num_edges(), 6);
        assert_eq!(complete_bipartite(3, 3).num_edges(), 9);
        assert_eq!(path(3).num_edges(), 2);
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("K33").unwrap(), complete_bipartite(3, 3));
        assert_eq!(by_name("k4").unwrap(), complete(4));
        assert_eq!(by_name("c3").unwrap(), cycle(3));
        assert_eq!(by_name("theta3").unwrap(), theta(3));
        assert!(by_name("zz").is_none());
    }
}

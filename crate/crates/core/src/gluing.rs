//! Common covers glued from weighted pairs.
//!
//! A pair class is a cross arrow `x -> y` of a local system, a face class
//! is a cross atom `(e, f)` at a positively oriented dart `e`. A pair lies
//! on the left of a face when its arrow sends `1_e` to the face atom, and on
//! the right when it sends `1_ē` to the bar of the atom. Each pair gets the
//! weight `ω = N / |Γ(x,-)|`; the gluing equations say that left and right
//! weights of every face agree. Assembly takes `ω` copies of every pair and
//! matches left and right slots of each face in sorted order.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cover_builder::{ComponentChoice, LocalSystem};
use crate::error::{Error, Result};
use crate::graph::{is_covering, DartId, Graph, GraphBuilder, GraphMorphism, VertexId};
use crate::groupoid::schedule_n;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceClass {
    /// Index of the cross atom at the positive dart.
    pub atom: usize,
    /// Pairs with the face on their `∂₀` side, sorted.
    pub left: Vec<usize>,
    /// Pairs with the face on their `∂₁` side, sorted.
    pub right: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairEnumeration {
    /// Positive darts of `G1` and `G2`.
    pub positive1: Vec<bool>,
    pub positive2: Vec<bool>,
    /// Cross-arrow indices of the system.
    pub pairs: Vec<usize>,
    pub faces: Vec<FaceClass>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Chooses an orientation of both graphs preserved by every atom, and
/// computes the incidence of pairs and faces.
pub fn enumerate_pairs(sys: &LocalSystem) -> Result<PairEnumeration> {
    let (g1, g2) = (&sys.g1, &sys.g2);
    let n1 = g1.num_darts();
    let total = n1 + g2.num_darts();
    let mut parent: Vec<usize> = (0..total).collect();
    for a in &sys.atoms {
        let (x, y) = (find(&mut parent, a.e.idx()), find(&mut parent, n1 + a.f.idx()));
        parent[x.max(y)] = x.min(y);
    }
    let rev = |i: usize| {
        if i < n1 {
            g1.reverse(DartId(i as u32)).idx()
        } else {
            n1 + g2.reverse(DartId((i - n1) as u32)).idx()
        }
    };
    let mut positive = vec![false; total];
    let mut decided = vec![None; total];
    for i in 0..total {
        let (r, rr) = (find(&mut parent, i), find(&mut parent, rev(i)));
        if r == rr {
            let name = if i < n1 {
                g1.dart_name(DartId(i as u32))
            } else {
                g2.dart_name(DartId((i - n1) as u32))
            };
            return Err(Error::OrientationRequired(format!("an identification inverts the edge of {name}")));
        }
        // the class of the smaller root is positive
        let pos = *decided[r].get_or_insert(r < rr);
        decided[rr].get_or_insert(!pos);
        positive[i] = pos;
    }
    let positive2 = positive.split_off(n1);
    let positive1 = positive;

    let pairs: Vec<usize> = (0..sys.arrows.len()).collect();
    let mut left: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut right: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (p, a) in sys.arrows.iter().enumerate() {
        for &t in &a.star {
            let atom = &sys.atoms[t];
            if positive1[atom.e.idx()] {
                left.entry(t).or_default().push(p);
            } else {
                right.entry(atom.bar).or_default().push(p);
            }
        }
    }
    let faces = (0..sys.atoms.len())
        .filter(|&t| positive1[sys.atoms[t].e.idx()])
        .map(|t| FaceClass {
            atom: t,
            left: left.remove(&t).unwrap_or_default(),
            right: right.remove(&t).unwrap_or_default(),
        })
        .collect();
    Ok(PairEnumeration {
        positive1,
        positive2,
        pairs,
        faces,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weights {
    pub n: String,
    /// `ω(P)` for every pair.
    pub omega: Vec<u64>,
    /// `(left sum, right sum, N/|Δ|)` for every face.
    pub face_sums: Vec<(u64, u64, u64)>,
}

pub fn gluing_weights(sys: &LocalSystem, en: &PairEnumeration) -> Result<Weights> {
    let mut sizes = sys.out_size.clone();
    sizes.extend(sys.atoms.iter().map(|a| a.orbit));
    let n = schedule_n(&sizes)?;
    let n64 = n.to_u64().ok_or_else(|| Error::OutOfRange(format!("N = {n} is too large to glue")))?;
    let omega: Vec<u64> = en.pairs.iter().map(|&p| n64 / sys.out_size[sys.arrows[p].src.idx()]).collect();
    let mut face_sums = Vec::with_capacity(en.faces.len());
    for f in &en.faces {
        let atom = &sys.atoms[f.atom];
        let l: u64 = f.left.iter().map(|&p| omega[p]).sum();
        let r: u64 = f.right.iter().map(|&p| omega[p]).sum();
        let want = n64 / atom.orbit;
        let label = format!("{}->{}", sys.g1.dart_name(atom.e), sys.g2.dart_name(atom.f));
        if l != r || l != want {
            return Err(Error::GluingImbalance(format!("{label}: left {l}, right {r}, expected {want}")));
        }
        let x = sys.g1.origin(atom.e);
        let count = sys.out_size[x.idx()] / atom.orbit;
        if f.left.len() as u64 != count || sys.out_size[x.idx()] % atom.orbit != 0 {
            return Err(Error::GluingImbalance(format!(
                "{label}: {} pairs on the left, |Γ(x,-)|/|Δ(e,-)| = {}/{}",
                f.left.len(),
                sys.out_size[x.idx()],
                atom.orbit
            )));
        }
        face_sums.push((l, r, want));
    }
    Ok(Weights {
        n: n.to_string(),
        omega,
        face_sums,
    })
}

#[derive(Clone, Debug)]
pub struct GluedCover {
    pub graph: Graph,
    pub mu1: GraphMorphism,
    pub mu2: GraphMorphism,
    /// `(pair, copy)` for every vertex, copies starting at 1.
    pub vertex_prov: Vec<(usize, u64)>,
    pub scale: u64,
    /// Vertex counts of the components of the full assembly.
    pub component_sizes: Vec<usize>,
    /// Vertex count of the full assembly.
    pub total_vertices: usize,
}

fn check_cover(g: &Graph, target: &Graph, m: &GraphMorphism, what: &str) -> Result<()> {
    if is_covering(g, target, m)?.holds() {
        Ok(())
    } else {
        Err(Error::Verification(format!("{what} is not a covering")))
    }
}

/// Glues `scale · ω(P)` copies of every pair.
pub fn assemble(sys: &LocalSystem, en: &PairEnumeration, w: &Weights, scale: u64, component: ComponentChoice) -> Result<GluedCover> {
    if scale == 0 {
        return Err(Error::OutOfRange("scale must be positive".into()));
    }
    let (g1, g2) = (&sys.g1, &sys.g2);
    let mut b = GraphBuilder::new();
    let mut first = Vec::with_capacity(en.pairs.len());
    let mut vertex_prov = Vec::new();
    let mut vmap1 = Vec::new();
    let mut vmap2 = Vec::new();
    for &p in &en.pairs {
        let a = &sys.arrows[p];
        first.push(vertex_prov.len());
        for j in 1..=w.omega[p] * scale {
            b.vertex_with_colour(&format!("p{p}.{j}"), g1.vertex_colour(a.src).map(str::to_string));
            vertex_prov.push((p, j));
            vmap1.push(a.src);
            vmap2.push(a.tgt);
        }
    }
    let mut dmap1 = Vec::new();
    let mut dmap2 = Vec::new();
    for (fi, f) in en.faces.iter().enumerate() {
        let atom = &sys.atoms[f.atom];
        let bar = &sys.atoms[atom.bar];
        let first = &first;
        let slots = |list: &[usize]| -> Vec<usize> {
            list.iter()
                .flat_map(|&p| (0..(w.omega[p] * scale) as usize).map(move |j| first[p] + j))
                .collect()
        };
        let (l, r) = (slots(&f.left), slots(&f.right));
        if l.len() != r.len() {
            return Err(Error::GluingImbalance(format!("face {fi} has {} left and {} right slots", l.len(), r.len())));
        }
        for (k, (&u, &v)) in l.iter().zip(&r).enumerate() {
            b.coloured_edge(
                VertexId(u as u32),
                VertexId(v as u32),
                &format!("f{fi}.{}+", k + 1),
                &format!("f{fi}.{}-", k + 1),
                g1.dart_colour(atom.e).map(str::to_string),
                g1.dart_colour(bar.e).map(str::to_string),
            );
            dmap1.extend([atom.e, bar.e]);
            dmap2.extend([atom.f, bar.f]);
        }
    }
    let graph = b.build_unchecked();
    let mu1 = GraphMorphism { vmap: vmap1, dmap: dmap1 };
    let mu2 = GraphMorphism { vmap: vmap2, dmap: dmap2 };
    check_cover(&graph, g1, &mu1, "projection to G1")?;
    check_cover(&graph, g2, &mu2, "projection to G2")?;

    let comps = graph.components();
    for c in &comps {
        let (sub, vs, ds) = graph.induced(c);
        let r1 = restrict(&mu1, &vs, &ds);
        let r2 = restrict(&mu2, &vs, &ds);
        check_cover(&sub, g1, &r1, "a component over G1")?;
        check_cover(&sub, g2, &r2, "a component over G2")?;
    }
    let component_sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    let total_vertices = graph.num_vertices();
    let keep: Vec<VertexId> = match component {
        ComponentChoice::All => graph.vertices().collect(),
        ComponentChoice::Least => comps.iter().min_by_key(|c| (c.len(), c[0])).cloned().unwrap_or_default(),
        ComponentChoice::ContainingArrow(p) => {
            let v = *first.get(p).ok_or_else(|| Error::OutOfRange(format!("pair {p} does not exist")))?;
            comps.iter().find(|c| c.binary_search(&VertexId(v as u32)).is_ok()).cloned().unwrap_or_default()
        }
    };
    let (sub, vs, ds) = graph.induced(&keep);
    Ok(GluedCover {
        mu1: restrict(&mu1, &vs, &ds),
        mu2: restrict(&mu2, &vs, &ds),
        vertex_prov: vs.iter().map(|v| vertex_prov[v.idx()]).collect(),
        graph: sub,
        scale,
        component_sizes,
        total_vertices,
    })
}

fn restrict(m: &GraphMorphism, vs: &[VertexId], ds: &[DartId]) -> GraphMorphism {
    GraphMorphism {
        vmap: vs.iter().map(|&v| m.vertex(v)).collect(),
        dmap: ds.iter().map(|&d| m.dart(d)).collect(),
    }
}

/// Subdivision whose darts are coloured by direction, original vertex to
/// midpoint `+` and back `-`, so that every colour-preserving
/// identification preserves that orientation.
pub fn subdivide_oriented(g: &Graph) -> Graph {
    let s = g.subdivide();
    let n = g.num_vertices() as u32;
    let mut b = GraphBuilder::new();
    for v in s.vertices() {
        b.vertex_with_colour(s.vertex_name(v), s.vertex_colour(v).map(str::to_string));
    }
    let tag = |d: DartId, sign: &str| match s.dart_colour(d) {
        Some(c) => format!("{c}{sign}"),
        None => sign.to_string(),
    };
    for d in s.darts() {
        let r = s.reverse(d);
        if d > r {
            continue;
        }
        let (u, v) = (s.origin(d), s.origin(r));
        let (pd, pr) = if u.0 < n { ("+", "-") } else { ("-", "+") };
        b.coloured_edge(u, v, s.dart_name(d), s.dart_name(r), Some(tag(d, pd)), Some(tag(r, pr)));
    }
    b.build_unchecked()
}

/// Total weight, as a check on scaling.
pub fn total_weight(w: &Weights) -> BigUint {
    w.omega.iter().map(|&x| BigUint::from(x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball_system::{build_ball_system, BallOptions};
    use crate::cover_builder::{build_cover, AxiomFlags, BuildOptions, CrossArrow, CrossAtom};
    use crate::graph::fixtures::*;
    use crate::iso::are_isomorphic;
    use crate::star_system::{build_star_system, Strategy};

    fn ball(g1: &Graph, g2: &Graph, radius: usize) -> LocalSystem {
        build_ball_system(g1, g2, &BallOptions { radius, ..Default::default() })
            .unwrap()
            .lower()
            .unwrap()
    }

    fn identity_system(g: &Graph) -> LocalSystem {
        let atoms = g
            .darts()
            .map(|d| CrossAtom {
                e: d,
                f: d,
                bar: g.reverse(d).idx(),
                orbit: 2,
                label: g.dart_name(d).to_string(),
            })
            .collect();
        let arrows = g
            .vertices()
            .map(|v| CrossArrow {
                src: v,
                tgt: v,
                star: g.star(v).iter().map(|d| d.idx()).collect(),
                label: g.vertex_name(v).to_string(),
            })
            .collect();
        LocalSystem {
            g1: g.clone(),
            g2: g.clone(),
            out_size: vec![2; g.num_vertices()],
            arrows,
            atoms,
            axioms: AxiomFlags {
                coverage: true,
                bar_closure: true,
                action: true,
            },
            backend: "identity".into(),
        }
    }

    #[test]
    fn c3_aligned_faces_balance() {
        let sys = ball(&cycle(3), &cycle(3), 1);
        let en = enumerate_pairs(&sys).unwrap();
        for f in &en.faces {
            assert!(!f.left.is_empty());
            assert_eq!(f.left.len(), f.right.len());
        }
        let w = gluing_weights(&sys, &en).unwrap();
        assert!(w.face_sums.iter().all(|&(l, r, x)| l == r && r == x));
    }

    #[test]
    fn identity_system_on_subdivided_loop() {
        let g = subdivide_oriented(&rose(1));
        let sys = identity_system(&g);
        let en = enumerate_pairs(&sys).unwrap();
        assert_eq!(en.pairs.len(), g.num_vertices());
        assert_eq!(en.faces.len(), g.num_edges());
        let w = gluing_weights(&sys, &en).unwrap();
        assert!(w.omega.iter().all(|&x| x == 1));
        let gc = assemble(&sys, &en, &w, 1, ComponentChoice::Least).unwrap();
        assert!(are_isomorphic(&gc.graph, &g));
    }

    #[test]
    fn flip_requires_subdivision() {
        let r = rose(1);
        let sys = build_star_system(&r, &r, Strategy::DrFull, None).unwrap();
        assert!(matches!(enumerate_pairs(&sys), Err(Error::OrientationRequired(_))));
        let s = subdivide_oriented(&r);
        let sys = build_star_system(&s, &s, Strategy::DrFull, None).unwrap();
        let en = enumerate_pairs(&sys).unwrap();
        let w = gluing_weights(&sys, &en).unwrap();
        assemble(&sys, &en, &w, 1, ComponentChoice::All).unwrap();
    }

    #[test]
    fn c3_c4_agrees_with_cover_builder() {
        for radius in 1..=2 {
            let sys = ball(&cycle(3), &cycle(4), radius);
            let en = enumerate_pairs(&sys).unwrap();
            let w = gluing_weights(&sys, &en).unwrap();
            let gc = assemble(&sys, &en, &w, 1, ComponentChoice::All).unwrap();
            let bc = build_cover(&sys, &BuildOptions { component: ComponentChoice::All, ..Default::default() }).unwrap();
            assert_eq!(gc.total_vertices, bc.graph.num_vertices());
            let mut a = gc.component_sizes.clone();
            let mut b = bc.component_sizes.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b);
            assert!(are_isomorphic(&gc.graph, &bc.graph));
        }
    }

    #[test]
    fn scaling_multiplies_vertices() {
        let (k4, t3) = (complete(4), theta(3));
        assert!(matches!(enumerate_pairs(&ball(&k4, &t3, 1)), Err(Error::OrientationRequired(_))));
        let sys = ball(&subdivide_oriented(&k4), &subdivide_oriented(&t3), 1);
        let en = enumerate_pairs(&sys).unwrap();
        let w = gluing_weights(&sys, &en).unwrap();
        let one = assemble(&sys, &en, &w, 1, ComponentChoice::All).unwrap();
        for c in [2, 3] {
            let many = assemble(&sys, &en, &w, c, ComponentChoice::All).unwrap();
            assert_eq!(many.total_vertices as u64, c * one.total_vertices as u64);
        }
        assert_eq!(total_weight(&w), BigUint::from(one.total_vertices));
    }
}

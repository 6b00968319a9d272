//! Local systems of star bijections.
//!
//! With [`Strategy::DrFull`] the groupoid consists of every bijection
//! `star(x) -> star(y)` that preserves joint dart types, between vertices
//! of the same joint block of the degree refinement. It is never
//! saturated: out-sizes and orbits are products of factorials and block
//! sizes. [`Strategy::Theta`] is the ball system at radius one, whose balls
//! are exactly the stars.

use std::collections::BTreeMap;

use crate::ball_system::{build_ball_system, BallOptions};
use crate::cover_builder::{AxiomFlags, CrossArrow, CrossAtom, LocalSystem};
use crate::error::{Error, Result};
use crate::graph::{DartId, Graph, VertexId};
use crate::groupoid::Arrow;
use crate::local_iso::Site;
use crate::refinement::{common_cover_exists, JointBlocks};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    DrFull,
    Theta,
}

/// A star bijection between two sites; `bij[k]` is the image of the
/// `k`-th dart of the source star.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarArrow {
    pub x: Site,
    pub y: Site,
    pub bij: Vec<DartId>,
    /// Source and target stars, carried so composition needs no graph.
    src_star: Vec<DartId>,
    tgt_star: Vec<DartId>,
}

impl StarArrow {
    pub fn new(x: Site, y: Site, src_star: Vec<DartId>, tgt_star: Vec<DartId>, bij: Vec<DartId>) -> StarArrow {
        StarArrow {
            x,
            y,
            bij,
            src_star,
            tgt_star,
        }
    }

    pub fn identity(x: Site, star: &[DartId]) -> StarArrow {
        StarArrow::new(x, x, star.to_vec(), star.to_vec(), star.to_vec())
    }

    pub fn image(&self, e: DartId) -> Option<DartId> {
        self.src_star.iter().position(|&d| d == e).map(|k| self.bij[k])
    }
}

impl Arrow for StarArrow {
    type Object = Site;
    fn src(&self) -> Site {
        self.x
    }
    fn tgt(&self) -> Site {
        self.y
    }
    fn after(&self, first: &Self) -> Self {
        StarArrow {
            x: first.x,
            y: self.y,
            bij: first.bij.iter().map(|&d| self.image(d).expect("composable")).collect(),
            src_star: first.src_star.clone(),
            tgt_star: self.tgt_star.clone(),
        }
    }
    fn inverse(&self) -> Self {
        StarArrow {
            x: self.y,
            y: self.x,
            bij: self
                .tgt_star
                .iter()
                .map(|&f| self.src_star[self.bij.iter().position(|&d| d == f).unwrap()])
                .collect(),
            src_star: self.tgt_star.clone(),
            tgt_star: self.src_star.clone(),
        }
    }
}

struct Union<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    jb: JointBlocks,
}

impl Union<'_> {
    fn graph(&self, side: u8) -> &Graph {
        if side == 1 {
            self.g1
        } else {
            self.g2
        }
    }
    fn block(&self, s: Site) -> usize {
        if s.side == 1 {
            self.jb.block1(s.v)
        } else {
            self.jb.block2(s.v)
        }
    }
    fn dtype(&self, side: u8, d: DartId) -> usize {
        if side == 1 {
            self.jb.type1(d)
        } else {
            self.jb.type2(d)
        }
    }
    fn profile(&self, s: Site) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &d in self.graph(s.side).star(s.v) {
            *m.entry(self.dtype(s.side, d)).or_insert(0) += 1;
        }
        m
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All type-preserving bijections `star(x) -> star(y)`, in lexicographic
/// order of the image sequence; empty unless `x` and `y` share a block.
fn bijections(u: &Union, x: Site, y: Site) -> Vec<StarArrow> {
    if u.block(x) != u.block(y) {
        return Vec::new();
    }
    let a: Vec<DartId> = u.graph(x.side).star(x.v).to_vec();
    let b: Vec<DartId> = u.graph(y.side).star(y.v).to_vec();
    if a.len() != b.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a.len());
    let mut used = vec![false; b.len()];
    fn rec(
        u: &Union,
        x: Site,
        y: Site,
        a: &[DartId],
        b: &[DartId],
        cur: &mut Vec<DartId>,
        used: &mut [bool],
        out: &mut Vec<StarArrow>,
    ) {
        let k = cur.len();
        if k == a.len() {
            out.push(StarArrow::new(x, y, a.to_vec(), b.to_vec(), cur.clone()));
            return;
        }
        let t = u.dtype(x.side, a[k]);
        for j in 0..b.len() {
            if used[j] || u.dtype(y.side, b[j]) != t {
                continue;
            }
            used[j] = true;
            cur.push(b[j]);
            rec(u, x, y, a, b, cur, used, out);
            cur.pop();
            used[j] = false;
        }
    }
    rec(u, x, y, &a, &b, &mut cur, &mut used, &mut out);
    out
}

/// The `dr_full` arrows from `x` to `y` (either side).
pub fn arrows_between(g1: &Graph, g2: &Graph, x: Site, y: Site) -> Result<Vec<StarArrow>> {
    let jb = common_cover_exists(g1, g2)?;
    Ok(bijections(&Union { g1, g2, jb }, x, y))
}

fn dr_full(g1: &Graph, g2: &Graph, jb: JointBlocks) -> Result<LocalSystem> {
    let u = Union { g1, g2, jb };
    let nblocks = u.jb.joint.num_blocks;
    let mut block_size = vec![0u64; nblocks];
    for x in g1.vertices() {
        block_size[u.block(Site::new(1, x))] += 1;
    }
    for y in g2.vertices() {
        block_size[u.block(Site::new(2, y))] += 1;
    }
    let mut type_count: BTreeMap<usize, u64> = BTreeMap::new();
    for d in g1.darts() {
        *type_count.entry(u.dtype(1, d)).or_insert(0) += 1;
    }
    for d in g2.darts() {
        *type_count.entry(u.dtype(2, d)).or_insert(0) += 1;
    }

    let mut out_size = Vec::with_capacity(g1.num_vertices());
    for x in g1.vertices() {
        let s = Site::new(1, x);
        let prof = u.profile(s);
        let auts: u64 = prof.values().map(|&m| factorial(m)).product();
        out_size.push(block_size[u.block(s)] * auts);
    }
    for y in g2.vertices() {
        let s = Site::new(2, y);
        let same = g1.vertices().find(|&x| u.block(Site::new(1, x)) == u.block(s));
        match same {
            Some(x) if u.profile(Site::new(1, x)) == u.profile(s) => {}
            _ => return Err(Error::Verification(format!("block of {} is not balanced", g2.vertex_name(y)))),
        }
    }

    let mut atoms = Vec::new();
    let mut atom_index: BTreeMap<(DartId, DartId), usize> = BTreeMap::new();
    for e in g1.darts() {
        for f in g2.darts() {
            if u.dtype(1, e) == u.dtype(2, f) {
                atom_index.insert((e, f), atoms.len());
                atoms.push((e, f));
            }
        }
    }
    let cross_atoms = atoms
        .iter()
        .map(|&(e, f)| CrossAtom {
            e,
            f,
            bar: atom_index[&(g1.reverse(e), g2.reverse(f))],
            orbit: type_count[&u.dtype(1, e)],
            label: format!("{}->{}", g1.dart_name(e), g2.dart_name(f)),
        })
        .collect();
    let mut arrows = Vec::new();
    let mut hit = vec![false; g2.num_vertices()];
    for x in g1.vertices() {
        for y in g2.vertices() {
            for a in bijections(&u, Site::new(1, x), Site::new(2, y)) {
                hit[y.idx()] = true;
                let star = g1
                    .star(x)
                    .iter()
                    .zip(&a.bij)
                    .map(|(&e, &f)| atom_index[&(e, f)])
                    .collect();
                let names: Vec<&str> = a.bij.iter().map(|&f| g2.dart_name(f)).collect();
                arrows.push(CrossArrow {
                    src: x,
                    tgt: y,
                    star,
                    label: format!("{}->{}:[{}]", g1.vertex_name(x), g2.vertex_name(y), names.join(",")),
                });
            }
        }
    }
    let coverage = g1.vertices().all(|x| arrows.iter().any(|a| a.src == x)) && hit.iter().all(|&h| h);
    let sys = LocalSystem {
        g1: g1.clone(),
        g2: g2.clone(),
        out_size,
        arrows,
        atoms: cross_atoms,
        axioms: AxiomFlags {
            coverage,
            bar_closure: true,
            action: true,
        },
        backend: "star(dr)".into(),
    };
    if !coverage {
        return Err(Error::ClosureAxioms {
            radius: 0,
            detail: "some vertex has no cross arrow".into(),
        });
    }
    sys.check_structure()?;
    Ok(sys)
}

/// Builds the star local system of `g1` and `g2`.
pub fn build_star_system(g1: &Graph, g2: &Graph, strategy: Strategy, explore: Option<usize>) -> Result<LocalSystem> {
    let jb = common_cover_exists(g1, g2)?;
    if !jb.exists {
        return Err(Error::NoCommonUniversalCover);
    }
    match strategy {
        Strategy::DrFull => dr_full(g1, g2, jb),
        Strategy::Theta => {
            let opts = BallOptions {
                radius: 1,
                explore,
                ..Default::default()
            };
            let mut sys = build_ball_system(g1, g2, &opts)?.lower()?;
            sys.backend = "star(theta)".into();
            Ok(sys)
        }
    }
}

/// Sizes `|Γ(x,-)|` per vertex of `g1` and the orbit partition of the
/// darts of both graphs, for comparing strategies.
pub fn dart_orbits(sys: &LocalSystem) -> Vec<Vec<(u8, DartId)>> {
    let mut parent: BTreeMap<(u8, DartId), (u8, DartId)> = BTreeMap::new();
    fn find(p: &mut BTreeMap<(u8, DartId), (u8, DartId)>, x: (u8, DartId)) -> (u8, DartId) {
        let mut r = x;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        p.insert(x, r);
        r
    }
    for d in sys.g1.darts() {
        parent.insert((1, d), (1, d));
    }
    for d in sys.g2.darts() {
        parent.insert((2, d), (2, d));
    }
    for a in &sys.atoms {
        let ra = find(&mut parent, (1, a.e));
        let rb = find(&mut parent, (2, a.f));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent.insert(hi, lo);
        }
    }
    let keys: Vec<(u8, DartId)> = parent.keys().copied().collect();
    let mut groups: BTreeMap<(u8, DartId), Vec<(u8, DartId)>> = BTreeMap::new();
    for k in keys {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(k);
    }
    groups.into_values().collect()
}

/// Vertices of `g1` without a cross arrow (empty when coverage holds).
pub fn uncovered(sys: &LocalSystem) -> Vec<VertexId> {
    sys.g1.vertices().filter(|&x| !sys.arrows.iter().any(|a| a.src == x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover_builder::{build_cover, BuildOptions};
    use crate::graph::fixtures::*;
    use crate::groupoid::{orbit, saturate_groupoid, stabilizer_size, Action};
    use crate::iso::are_isomorphic;

    #[test]
    fn c3_c4_arrows_are_pairs_of_bijections() {
        let (c3, c4) = (cycle(3), cycle(4));
        for x in c3.vertices() {
            for y in c4.vertices() {
                let a = arrows_between(&c3, &c4, Site::new(1, x), Site::new(2, y)).unwrap();
                assert_eq!(a.len(), 2);
            }
        }
        let sys = build_star_system(&c3, &c4, Strategy::DrFull, None).unwrap();
        assert!(sys.axioms.all());
        // one orbit holding all 14 darts
        assert_eq!(dart_orbits(&sys).len(), 1);
    }

    #[test]
    fn c3_c4_least_component_is_c12() {
        let (c3, c4) = (cycle(3), cycle(4));
        let sys = build_star_system(&c3, &c4, Strategy::DrFull, None).unwrap();
        let bc = build_cover(&sys, &BuildOptions::default()).unwrap();
        assert_eq!(bc.graph.num_vertices(), 12);
        assert_eq!(bc.degrees, (4, 3));
        assert!(are_isomorphic(&bc.graph, &cycle(12)));
    }

    #[test]
    fn mismatched_degrees_are_refused() {
        let err = build_star_system(&cycle(3), &complete(4), Strategy::DrFull, None).unwrap_err();
        assert_eq!(err, Error::NoCommonUniversalCover);
    }

    #[test]
    fn theta_identity_gives_the_graph_back() {
        for g in [cycle(3), complete(4), theta(3), path(3)] {
            let sys = build_star_system(&g, &g, Strategy::Theta, None).unwrap();
            let bc = build_cover(&sys, &BuildOptions::default()).unwrap();
            assert_eq!(bc.degrees, (1, 1));
            assert!(are_isomorphic(&bc.graph, &g));
        }
    }

    struct OnDarts;
    impl Action<StarArrow> for OnDarts {
        type Elem = (Site, DartId);
        fn anchor(&self, a: &(Site, DartId)) -> Site {
            a.0
        }
        fn act(&self, g: &StarArrow, a: &(Site, DartId)) -> (Site, DartId) {
            (g.y, g.image(a.1).unwrap())
        }
    }

    // The analytic lowering against saturating all bijections explicitly.
    #[test]
    fn dr_full_matches_saturation() {
        let pairs = [
            (cycle(3), cycle(4)),
            (complete(4), theta(3)),
            (path(3), path(3)),
            (complete_bipartite(2, 3), complete_bipartite(2, 3).subdivide().subdivide()),
        ];
        for (a, b) in pairs {
            let Ok(sys) = build_star_system(&a, &b, Strategy::DrFull, None) else {
                continue;
            };
            let u = Union {
                g1: &a,
                g2: &b,
                jb: common_cover_exists(&a, &b).unwrap(),
            };
            let sites: Vec<Site> = a
                .vertices()
                .map(|v| Site::new(1, v))
                .chain(b.vertices().map(|v| Site::new(2, v)))
                .collect();
            let mut atoms = Vec::new();
            for &x in &sites {
                for &y in &sites {
                    atoms.extend(bijections(&u, x, y));
                }
            }
            let gpd = saturate_groupoid(&sites, &atoms, |s| StarArrow::identity(s, u.graph(s.side).star(s.v))).unwrap();
            assert_eq!(gpd.len(), atoms.len());
            for x in a.vertices() {
                let s = Site::new(1, x);
                assert_eq!(gpd.out_arrows(s).len() as u64, sys.out_size[x.idx()]);
                for &e in a.star(x) {
                    let o = orbit(&gpd, &OnDarts, &(s, e));
                    let st = stabilizer_size(&gpd, &OnDarts, &(s, e)).unwrap();
                    assert_eq!(st.orbit, o.len());
                    for t in sys.atoms.iter().filter(|t| t.e == e) {
                        assert_eq!(t.orbit as usize, o.len());
                    }
                }
            }
        }
    }

    #[test]
    fn theta_atoms_satisfy_the_transition_identity() {
        use crate::ball_system::build_ball_system;
        let (g1, g2) = (complete(4), theta(3));
        let s = build_ball_system(&g1, &g2, &BallOptions { radius: 1, explore: Some(6), ..Default::default() }).unwrap();
        s.with_theta(|th| {
            for z in &s.discovery.lifts {
                let gz = crate::ball_system::theta_restriction(&s.ctx, th, z);
                for &e in g1.star(gz.src.v) {
                    let f = s.ctx.dart_image(&gz, e);
                    let y = th.t1.walk(z, &[e]);
                    let gy = crate::ball_system::theta_restriction(&s.ctx, th, &y);
                    assert_eq!(s.ctx.dart_image(&gy, g1.reverse(e)), g2.reverse(f));
                }
            }
        });
    }

    #[test]
    fn theta_orbits_refine_dr_orbits() {
        for (a, b) in [(cycle(3), cycle(4)), (complete(4), theta(3)), (path(3), path(3))] {
            let dr = dart_orbits(&build_star_system(&a, &b, Strategy::DrFull, None).unwrap());
            let th = dart_orbits(&build_star_system(&a, &b, Strategy::Theta, None).unwrap());
            assert!(th.len() >= dr.len());
            for o in &th {
                assert!(dr.iter().any(|p| o.iter().all(|d| p.contains(d))));
            }
        }
    }
}

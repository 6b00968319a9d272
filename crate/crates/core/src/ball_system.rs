//! The ball-restricted local system: double cosets `[θ_z]` of restrictions
//! of `θ` to `R`-balls, the groupoid `[Γ₀]` they generate, and the edge
//! neighbourhood maps `[Δ₀]` obtained as orbits of the identities `1_e`.
//!
//! Discovery walks `T1` breadth first. The class `[θ_z]` only depends on
//! the greedy state of `θ` at the ancestor of `z` at distance `R` together
//! with the last `R` darts of `z` (or on the whole path when `|z| < R`), and
//! the key of a child depends only on the key of its parent. Vertices whose
//! key was seen before are therefore not expanded, and when no new key
//! appears at the next depth every class `[θ_z]` has been found. The deck
//! groups are trivial in the double-coset quotient, so `[Γ₀]` is then the
//! whole of `[Γ]`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::cover_builder::{AxiomFlags, CrossArrow, CrossAtom, LocalSystem};
use crate::error::{Error, Result};
use crate::graph::{DartId, Graph, VertexId};
use crate::groupoid::{
    orbit, saturate_groupoid, stabilizer_size, verify_action, FiniteGroupoid, Witness, DEFAULT_CHECK_BUDGET,
};
use crate::local_iso::{index_by_value, BallContext, EdgeIso, LocalIso, RestrictionAction, Site, SiteDart};
use crate::refinement::{common_cover_exists, JointBlocks};
use crate::universal_cover::{build_theta, DeckWord, ThetaState, TreeIso, TreeVertex, UniversalCover};

#[derive(Clone, Debug)]
pub struct BallOptions {
    pub radius: usize,
    /// Exploration depth; defaults to `R + diam(G1) + diam(G2)`.
    pub explore: Option<usize>,
    /// Largest exploration depth reached by doubling retries.
    pub explore_cap: usize,
    /// Basepoints; defaults to vertex 0 of `G1` and the first vertex of
    /// `G2` in the same joint block.
    pub bases: Option<(VertexId, VertexId)>,
    pub check_budget: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            radius: 1,
            explore: None,
            explore_cap: 64,
            bases: None,
            check_budget: DEFAULT_CHECK_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    Short(Vec<DartId>),
    Long(ThetaState, Vec<DartId>),
}

/// Result of exploring `T1` to a given depth.
#[derive(Clone, Debug)]
pub struct Discovery {
    pub radius: usize,
    /// Distinct classes `[θ_z]`, in order of discovery.
    pub atoms: Vec<LocalIso>,
    /// The first tree vertex `z` found for each atom.
    pub lifts: Vec<TreeVertex>,
    /// Distinct restrictions `[θ|_{N(d)}]` of the atoms.
    pub edge_atoms: Vec<EdgeIso>,
    pub explored: usize,
    /// No unseen key exists one step beyond `explored`.
    pub exhausted: bool,
    /// Depth of the last vertex that contributed a new atom.
    pub last_new_depth: usize,
    pub keys: usize,
}

/// `[θ_z]` as a map between the canonical ball shapes.
pub fn theta_restriction(ctx: &BallContext, theta: &TreeIso, z: &TreeVertex) -> LocalIso {
    let t1 = theta.t1;
    let t2 = theta.t2;
    let src = Site::new(1, t1.project(z));
    let tz = theta.image(z);
    let tgt = Site::new(2, t2.project(&tz));
    let a = ctx.shape(src);
    let b = ctx.shape(tgt);
    let map = (0..a.len())
        .map(|i| {
            let w = theta.image(&t1.walk(z, &a.path(i)));
            let rel = t2.relative(&tz, &w);
            b.find(&rel).expect("θ maps balls onto balls") as u32
        })
        .collect();
    LocalIso { src, tgt, map }
}

fn key_of(theta: &TreeIso, z: &[DartId], radius: usize) -> Key {
    if z.len() < radius {
        return Key::Short(z.to_vec());
    }
    let cut = z.len() - radius;
    let (_, states) = theta.trace(&z[..cut]);
    Key::Long(*states.last().unwrap(), z[cut..].to_vec())
}

/// Explores `T1` to depth `rho`, collecting the classes `[θ_z]`.
pub fn discover_atoms(ctx: &BallContext, theta: &TreeIso, rho: usize) -> Discovery {
    let g1 = theta.t1.graph();
    let r = ctx.radius;
    let mut seen: HashSet<Key> = HashSet::new();
    let mut atoms: Vec<LocalIso> = Vec::new();
    let mut lifts = Vec::new();
    let mut atom_set: HashSet<LocalIso> = HashSet::new();
    let mut last_new_depth = 0;
    let mut exhausted = true;
    let root = TreeVertex::root();
    seen.insert(key_of(theta, &root.0, r));
    let mut queue = VecDeque::from([root]);
    while let Some(z) = queue.pop_front() {
        let a = theta_restriction(ctx, theta, &z);
        if atom_set.insert(a.clone()) {
            atoms.push(a);
            lifts.push(z.clone());
            last_new_depth = z.depth();
        }
        let back = z.0.last().map(|&d| g1.reverse(d));
        for &e in g1.star(theta.t1.project(&z)) {
            if Some(e) == back {
                continue;
            }
            let mut c = z.0.clone();
            c.push(e);
            let k = key_of(theta, &c, r);
            if seen.contains(&k) {
                continue;
            }
            if z.depth() >= rho {
                exhausted = false;
                continue;
            }
            seen.insert(k);
            queue.push_back(TreeVertex(c));
        }
    }
    let mut edge_set = BTreeSet::new();
    for a in &atoms {
        for &e in g1.star(a.src.v) {
            edge_set.insert(ctx.restrict(a, e));
        }
    }
    Discovery {
        radius: r,
        atoms,
        lifts,
        edge_atoms: edge_set.into_iter().collect(),
        explored: rho,
        exhausted,
        last_new_depth,
        keys: seen.len(),
    }
}

/// Evaluation of a witness word as an actual tree map.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessEvaluation {
    /// Deck transformations applied before each letter and at the end.
    pub decks: Vec<DeckWord>,
    /// Image of every source shape node in the target shape.
    pub map: Vec<Option<u32>>,
    /// Nodes where the evaluation disagrees with the arrow.
    pub mismatches: usize,
}

impl WitnessEvaluation {
    pub fn ok(&self) -> bool {
        self.mismatches == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemReport {
    pub radius: usize,
    pub explored: usize,
    pub exhausted: bool,
    pub last_new_depth: usize,
    pub keys: usize,
    pub atoms: usize,
    pub edge_atoms: usize,
    pub arrows: usize,
    pub edge_arrows: usize,
    pub retries: usize,
}

/// A saturated ball system with its discovery data.
pub struct BallSystem {
    pub g1: Graph,
    pub g2: Graph,
    pub bases: (VertexId, VertexId),
    pub blocks: JointBlocks,
    pub ctx: BallContext,
    pub discovery: Discovery,
    pub gpd: FiniteGroupoid<LocalIso>,
    /// `Δ(e,-)` for every dart of both graphs, sorted.
    pub edge_orbits: HashMap<SiteDart, Vec<EdgeIso>>,
    pub axioms: AxiomFlags,
    pub retries: usize,
}

fn sites(g1: &Graph, g2: &Graph) -> Vec<Site> {
    g1.vertices()
        .map(|v| Site::new(1, v))
        .chain(g2.vertices().map(|v| Site::new(2, v)))
        .collect()
}

fn site_darts(g1: &Graph, g2: &Graph) -> Vec<SiteDart> {
    g1.darts()
        .map(|d| SiteDart::new(1, d))
        .chain(g2.darts().map(|d| SiteDart::new(2, d)))
        .collect()
}

pub fn default_bases(g1: &Graph, jb: &JointBlocks) -> Result<(VertexId, VertexId)> {
    let b1 = VertexId(0);
    if g1.num_vertices() == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let n2 = jb.joint.block.len() - jb.n1;
    let b2 = (0..n2 as u32)
        .map(VertexId)
        .find(|&v| jb.block2(v) == jb.block1(b1))
        .ok_or(Error::NoCommonUniversalCover)?;
    Ok((b1, b2))
}

fn closure_err(radius: usize, detail: String) -> Error {
    Error::ClosureAxioms { radius, detail }
}

/// Saturates the atoms of `discovery` and checks the closure axioms.
pub fn assemble_system(
    g1: &Graph,
    g2: &Graph,
    bases: (VertexId, VertexId),
    blocks: JointBlocks,
    ctx: BallContext,
    discovery: Discovery,
    budget: usize,
) -> Result<BallSystem> {
    let rho = discovery.explored;
    let objects = sites(g1, g2);
    let gpd = saturate_groupoid(&objects, &discovery.atoms, |s| ctx.identity(s))?;
    let mut axioms = AxiomFlags::default();

    let mut hit2 = vec![false; g2.num_vertices()];
    for x in g1.vertices() {
        let mut any = false;
        for &i in gpd.out_arrows(Site::new(1, x)) {
            let t = gpd.arrow(i).tgt;
            if t.side == 2 {
                any = true;
                hit2[t.v.idx()] = true;
            }
        }
        if !any {
            return Err(closure_err(rho, format!("no cross arrow leaves {}", g1.vertex_name(x))));
        }
    }
    if let Some(y) = hit2.iter().position(|h| !h) {
        return Err(closure_err(rho, format!("no cross arrow reaches {}", g2.vertex_name(VertexId(y as u32)))));
    }
    axioms.coverage = true;

    let act = RestrictionAction(&ctx);
    let mut edge_orbits = HashMap::new();
    let mut all_edges = Vec::new();
    for e in site_darts(g1, g2) {
        let id = ctx.edge_identity(e);
        let o = orbit(&gpd, &act, &id);
        stabilizer_size(&gpd, &act, &id)?;
        all_edges.extend(o.iter().cloned());
        edge_orbits.insert(e, o);
    }
    for e in site_darts(g1, g2) {
        let target: HashSet<&EdgeIso> = edge_orbits[&ctx.reverse(e)].iter().collect();
        for d in &edge_orbits[&e] {
            if !target.contains(&ctx.bar(d)) {
                let g = if e.side == 1 { g1 } else { g2 };
                return Err(closure_err(
                    rho,
                    format!("bar of an edge map at {} is not reachable", g.dart_name(e.d)),
                ));
            }
        }
    }
    axioms.bar_closure = true;

    verify_action(&gpd, &act, &all_edges, budget)
        .map_err(|e| closure_err(rho, format!("action check: {e}")))?;
    axioms.action = true;

    Ok(BallSystem {
        g1: g1.clone(),
        g2: g2.clone(),
        bases,
        blocks,
        ctx,
        discovery,
        gpd,
        edge_orbits,
        axioms,
        retries: 0,
    })
}

/// Discovers atoms and saturates, doubling the exploration depth while
/// the closure axioms fail and the exploration was not exhaustive.
pub fn build_ball_system(g1: &Graph, g2: &Graph, opts: &BallOptions) -> Result<BallSystem> {
    if opts.radius == 0 {
        return Err(Error::OutOfRange("ball radius must be at least 1".into()));
    }
    if !g1.is_connected() || !g2.is_connected() {
        return Err(Error::NotConnected);
    }
    let jb = common_cover_exists(g1, g2)?;
    if !jb.exists {
        return Err(Error::NoCommonUniversalCover);
    }
    let bases = match opts.bases {
        Some(b) => b,
        None => default_bases(g1, &jb)?,
    };
    let t1 = UniversalCover::new(g1, bases.0)?;
    let t2 = UniversalCover::new(g2, bases.1)?;
    let theta = build_theta(&t1, &t2, &jb)?;
    let mut rho = opts
        .explore
        .unwrap_or(opts.radius + g1.diameter() + g2.diameter());
    let mut retries = 0;
    loop {
        let ctx = BallContext::new(g1, g2, opts.radius);
        let disc = discover_atoms(&ctx, &theta, rho);
        let exhausted = disc.exhausted;
        match assemble_system(g1, g2, bases, jb.clone(), ctx, disc, opts.check_budget) {
            Ok(mut sys) => {
                sys.retries = retries;
                return Ok(sys);
            }
            Err(Error::ClosureAxioms { .. }) if !exhausted && rho * 2 <= opts.explore_cap && rho > 0 => {
                rho *= 2;
                retries += 1;
            }
            Err(Error::ClosureAxioms { .. }) if !exhausted && rho == 0 && opts.explore_cap > 0 => {
                rho = 1;
                retries += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

impl BallSystem {
    pub fn radius(&self) -> usize {
        self.ctx.radius
    }

    pub fn report(&self) -> SystemReport {
        SystemReport {
            radius: self.radius(),
            explored: self.discovery.explored,
            exhausted: self.discovery.exhausted,
            last_new_depth: self.discovery.last_new_depth,
            keys: self.discovery.keys,
            atoms: self.discovery.atoms.len(),
            edge_atoms: self.discovery.edge_atoms.len(),
            arrows: self.gpd.len(),
            edge_arrows: self.edge_orbits.values().map(Vec::len).sum(),
            retries: self.retries,
        }
    }

    /// Runs `f` with the universal covers and `θ` used for discovery.
    pub fn with_theta<T>(&self, f: impl FnOnce(&TreeIso) -> T) -> T {
        let t1 = UniversalCover::new(&self.g1, self.bases.0).expect("validated at construction");
        let t2 = UniversalCover::new(&self.g2, self.bases.1).expect("validated at construction");
        let theta = build_theta(&t1, &t2, &self.blocks).expect("validated at construction");
        f(&theta)
    }

    /// Groupoid indices of the cross arrows `G1 -> G2`, in canonical order.
    pub fn cross_arrows(&self) -> Vec<usize> {
        (0..self.gpd.len())
            .filter(|&i| {
                let a = self.gpd.arrow(i);
                a.src.side == 1 && a.tgt.side == 2
            })
            .collect()
    }

    /// Evaluates the witness word of `arrow` through deck transformations
    /// and `θ^{±1}`, and compares the result with `arrow` node by node.
    pub fn verify_witness(&self, arrow: &LocalIso, witness: &Witness) -> Result<WitnessEvaluation> {
        self.with_theta(|theta| self.evaluate_witness(theta, arrow, witness))
    }

    pub fn evaluate_witness(&self, theta: &TreeIso, arrow: &LocalIso, witness: &Witness) -> Result<WitnessEvaluation> {
        let t = [theta.t1, theta.t2];
        let src = arrow.src;
        let shape = self.ctx.shape(src);
        let mut side = src.side;
        let mut center = t[side as usize - 1].canonical_lift(src.v);
        let mut images: Vec<TreeVertex> = (0..shape.len())
            .map(|i| t[side as usize - 1].walk(&center, &shape.path(i)))
            .collect();
        let mut decks = Vec::new();
        for l in witness {
            let z = self
                .discovery
                .lifts
                .get(l.atom)
                .ok_or_else(|| Error::Witness(format!("unknown atom {}", l.atom)))?;
            let (from_side, anchor) = if l.inv { (2, theta.image(z)) } else { (1, z.clone()) };
            if side != from_side {
                return Err(Error::Witness("letter applied on the wrong side".into()));
            }
            let cover = t[side as usize - 1];
            if cover.project(&center) != cover.project(&anchor) {
                return Err(Error::Witness("letter does not start at the current vertex".into()));
            }
            let lp = cover.deck_between(&center, &anchor);
            decks.push(cover.word_of_loop(&lp));
            for w in images.iter_mut() {
                *w = cover.apply_loop(&lp, w);
            }
            if l.inv {
                for w in images.iter_mut() {
                    *w = theta.preimage(w);
                }
                center = z.clone();
                side = 1;
            } else {
                for w in images.iter_mut() {
                    *w = theta.image(w);
                }
                center = theta.image(z);
                side = 2;
            }
        }
        let tgt = arrow.tgt;
        if side != tgt.side {
            return Err(Error::Witness("witness ends on the wrong side".into()));
        }
        let cover = t[side as usize - 1];
        if cover.project(&center) != tgt.v {
            return Err(Error::Witness("witness ends at the wrong vertex".into()));
        }
        let lift = cover.canonical_lift(tgt.v);
        let lp = cover.deck_between(&center, &lift);
        decks.push(cover.word_of_loop(&lp));
        let tshape = self.ctx.shape(tgt);
        let map: Vec<Option<u32>> = images
            .iter()
            .map(|w| {
                let w = cover.apply_loop(&lp, w);
                tshape.find(&cover.relative(&lift, &w)).map(|k| k as u32)
            })
            .collect();
        let mismatches = map
            .iter()
            .zip(&arrow.map)
            .filter(|(m, &a)| **m != Some(a))
            .count()
            + map.len().abs_diff(arrow.map.len());
        Ok(WitnessEvaluation { decks, map, mismatches })
    }

    /// Lowers the system for cover assembly.
    pub fn lower(&self) -> Result<LocalSystem> {
        let g1 = &self.g1;
        let mut atoms: Vec<EdgeIso> = Vec::new();
        for e in g1.darts() {
            atoms.extend(
                self.edge_orbits[&SiteDart::new(1, e)]
                    .iter()
                    .filter(|d| d.tgt.side == 2)
                    .cloned(),
            );
        }
        let index = index_by_value(&atoms);
        let mut cross_atoms = Vec::with_capacity(atoms.len());
        for d in &atoms {
            let bar = *index
                .get(&self.ctx.bar(d))
                .ok_or_else(|| closure_err(self.discovery.explored, "bar leaves the cross atoms".into()))?;
            cross_atoms.push(CrossAtom {
                e: d.src.d,
                f: d.tgt.d,
                bar,
                orbit: self.edge_orbits[&d.src].len() as u64,
                label: format!("{}->{}:{:?}", g1.dart_name(d.src.d), self.g2.dart_name(d.tgt.d), d.map),
            });
        }
        let mut arrows = Vec::new();
        for i in self.cross_arrows() {
            let a = self.gpd.arrow(i);
            let star = g1
                .star(a.src.v)
                .iter()
                .map(|&e| index[&self.ctx.restrict(a, e)])
                .collect();
            arrows.push(CrossArrow {
                src: a.src.v,
                tgt: a.tgt.v,
                star,
                label: format!("{}->{}:{:?}", g1.vertex_name(a.src.v), self.g2.vertex_name(a.tgt.v), a.map),
            });
        }
        let out_size = g1
            .vertices()
            .map(|x| self.gpd.out_arrows(Site::new(1, x)).len() as u64)
            .collect();
        let sys = LocalSystem {
            g1: self.g1.clone(),
            g2: self.g2.clone(),
            out_size,
            arrows,
            atoms: cross_atoms,
            axioms: self.axioms,
            backend: format!("ball(R={})", self.radius()),
        };
        sys.check_structure()?;
        Ok(sys)
    }

    /// Cross-arrow index (in [`Self::lower`] order) of `[θ_{base}]`.
    pub fn base_arrow(&self) -> usize {
        let a = &self.discovery.atoms[0];
        let i = self.gpd.index_of(a).expect("atoms lie in the groupoid");
        self.cross_arrows().binary_search(&i).expect("atoms are cross arrows")
    }

    /// `|[Γ₀](x,x)|` for every site.
    pub fn isotropy_sizes(&self) -> Vec<(Site, usize)> {
        self.gpd.objects().iter().map(|&s| (s, self.gpd.hom(s, s).len())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover_builder::{build_cover, BuildOptions};
    use crate::graph::fixtures::*;
    use crate::graph::is_covering;
    use crate::groupoid::Arrow;

    fn opts(r: usize) -> BallOptions {
        BallOptions {
            radius: r,
            ..Default::default()
        }
    }

    #[test]
    fn c3_self_is_exhausted_and_straight() {
        let c3 = cycle(3);
        let s = build_ball_system(&c3, &c3, &BallOptions { explore: Some(8), ..opts(1) }).unwrap();
        assert!(s.discovery.exhausted);
        // θ is the identity so every atom is the straight map between equal vertices
        assert_eq!(s.discovery.atoms.len(), 3);
        for a in &s.discovery.atoms {
            assert_eq!(a.src.v, a.tgt.v);
            assert_eq!(a.map, vec![0, 1, 2]);
        }
        for x in c3.vertices() {
            for y in c3.vertices() {
                assert!(s.gpd.hom(Site::new(1, x), Site::new(2, y)).len() <= 2);
            }
        }
    }

    #[test]
    fn rho_zero_gives_one_atom() {
        let (k4, t3) = (complete(4), theta(3));
        let jb = common_cover_exists(&k4, &t3).unwrap();
        let t1 = UniversalCover::new(&k4, VertexId(0)).unwrap();
        let t2 = UniversalCover::new(&t3, VertexId(0)).unwrap();
        let th = build_theta(&t1, &t2, &jb).unwrap();
        let ctx = BallContext::new(&k4, &t3, 1);
        let d = discover_atoms(&ctx, &th, 0);
        assert_eq!(d.atoms.len(), 1);
        assert!(!d.exhausted);
    }

    #[test]
    fn discovery_is_monotone() {
        let (c3, c4) = (cycle(3), cycle(4));
        let jb = common_cover_exists(&c3, &c4).unwrap();
        let t1 = UniversalCover::new(&c3, VertexId(0)).unwrap();
        let t2 = UniversalCover::new(&c4, VertexId(0)).unwrap();
        let th = build_theta(&t1, &t2, &jb).unwrap();
        let ctx = BallContext::new(&c3, &c4, 2);
        let mut prev: BTreeSet<LocalIso> = BTreeSet::new();
        for rho in 0..16 {
            let d = discover_atoms(&ctx, &th, rho);
            let cur: BTreeSet<LocalIso> = d.atoms.iter().cloned().collect();
            assert!(prev.is_subset(&cur));
            prev = cur;
        }
        assert!(discover_atoms(&ctx, &th, 15).exhausted);
    }

    #[test]
    fn empty_atoms_fail_coverage() {
        let c3 = cycle(3);
        let jb = common_cover_exists(&c3, &c3).unwrap();
        let ctx = BallContext::new(&c3, &c3, 1);
        let disc = Discovery {
            radius: 1,
            atoms: vec![],
            lifts: vec![],
            edge_atoms: vec![],
            explored: 0,
            exhausted: false,
            last_new_depth: 0,
            keys: 0,
        };
        let err = assemble_system(&c3, &c3, (VertexId(0), VertexId(0)), jb, ctx, disc, 1000)
            .err()
            .unwrap();
        assert!(matches!(err, Error::ClosureAxioms { .. }));
    }

    #[test]
    fn witnesses_verify_and_detect_corruption() {
        let (k4, t3) = (complete(4), theta(3));
        let s = build_ball_system(&k4, &t3, &opts(2)).unwrap();
        for i in 0..s.gpd.len() {
            let ev = s.verify_witness(s.gpd.arrow(i), s.gpd.witness(i)).unwrap();
            assert!(ev.ok(), "arrow {i}");
        }
        let i = s.cross_arrows()[0];
        let mut bad = s.gpd.arrow(i).clone();
        // swap two leaves below the same child
        let shape = s.ctx.shape(bad.src);
        let kids = shape.children(1);
        let (p, q) = (kids[0].1 as usize, kids[1].1 as usize);
        bad.map.swap(p, q);
        let ev = s.verify_witness(&bad, s.gpd.witness(i)).unwrap();
        assert_eq!(ev.mismatches, 2);
    }

    #[test]
    fn isotropy_bounded_by_ball_automorphisms() {
        let (k4, t3) = (complete(4), theta(3));
        for r in 1..=2 {
            let s = build_ball_system(&k4, &t3, &opts(r)).unwrap();
            for (site, n) in s.isotropy_sizes() {
                let all = s.ctx.all_tree_isos(site, site).len();
                assert!(n >= 1 && all % n == 0, "R={r} {site:?}: {n} vs {all}");
            }
        }
    }

    #[test]
    fn bar_is_an_involutive_automorphism() {
        let (c3, c4) = (cycle(3), cycle(4));
        let s = build_ball_system(&c3, &c4, &opts(2)).unwrap();
        for (e, o) in &s.edge_orbits {
            for d in o {
                let b = s.ctx.bar(d);
                assert_eq!(b.src, s.ctx.reverse(*e));
                assert_eq!(s.ctx.bar(&b), *d);
                for d2 in &s.edge_orbits[&d.tgt] {
                    // composition commutes with bar
                    assert_eq!(s.ctx.bar(&d2.after(d)), s.ctx.bar(d2).after(&b));
                }
            }
        }
    }

    #[test]
    fn lowered_systems_build_covers() {
        for (a, b) in [(cycle(3), cycle(3)), (cycle(3), cycle(4)), (complete(4), theta(3))] {
            for r in 1..=2 {
                let s = build_ball_system(&a, &b, &opts(r)).unwrap();
                let sys = s.lower().unwrap();
                let c = build_cover(&sys, &BuildOptions::default()).unwrap();
                assert!(is_covering(&c.graph, &a, &c.mu1).unwrap().holds());
                assert!(is_covering(&c.graph, &b, &c.mu2).unwrap().holds());
            }
        }
    }
}

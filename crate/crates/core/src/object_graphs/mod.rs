//! Graphs of finite objects and their common covers.
//!
//! Objects are finite labelled directed multigraphs ([`FiniteObject`]).
//! A graph of objects carries an object on every vertex, a shared object on
//! every geometric edge, and a morphism `φ^e_0: X_e -> X_{∂₀e}` for every
//! dart; `φ^e_1` is `φ^ē_0`. The groupoid `Γ` is generated by seed star
//! maps from `X¹` to `X²`; its cross arrows and the orbits `Δ` of the
//! triples `(e, f, b)` are lowered to a [`LocalSystem`] and assembled by
//! [`build_cover`], after which object data is attached to the result.

pub mod objects;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

pub use objects::{is_iso, is_morphism, isomorphisms, FiniteObject, ObjMap};

use crate::cover_builder::{build_cover, AxiomFlags, BuildOptions, BuiltCover, CrossArrow, CrossAtom, LocalSystem};
use crate::error::{Error, Result};
use crate::graph::{is_covering, validate_graph, CoveringCheck, DartId, Graph, GraphMorphism, VertexId};
use crate::groupoid::{orbit, saturate_groupoid, verify_action, Action, Arrow, FiniteGroupoid, DEFAULT_CHECK_BUDGET};
use crate::local_iso::{Site, SiteDart};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectGraph {
    pub graph: Graph,
    /// Object table; vertices and darts refer to it by index.
    pub objects: Vec<FiniteObject>,
    pub vertex_object: Vec<usize>,
    /// Object of every dart; a dart and its reverse share one object.
    pub edge_object: Vec<usize>,
    /// `φ^e_0: X_e -> X_{∂₀e}` for every dart `e`.
    pub edge_maps: Vec<ObjMap>,
}

impl ObjectGraph {
    /// Every vertex and edge carries `obj`, every edge map is the identity.
    pub fn constant(graph: Graph, obj: FiniteObject) -> ObjectGraph {
        let id = ObjMap::identity(&obj);
        ObjectGraph {
            vertex_object: vec![0; graph.num_vertices()],
            edge_object: vec![0; graph.num_darts()],
            edge_maps: vec![id; graph.num_darts()],
            objects: vec![obj],
            graph,
        }
    }

    pub fn vobj(&self, v: VertexId) -> &FiniteObject {
        &self.objects[self.vertex_object[v.idx()]]
    }

    pub fn eobj(&self, d: DartId) -> &FiniteObject {
        &self.objects[self.edge_object[d.idx()]]
    }

    pub fn phi0(&self, d: DartId) -> &ObjMap {
        &self.edge_maps[d.idx()]
    }

    pub fn phi1(&self, d: DartId) -> &ObjMap {
        &self.edge_maps[self.graph.reverse(d).idx()]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ObjectReport {
    pub violations: Vec<String>,
}

impl ObjectReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_object_graph(x: &ObjectGraph) -> ObjectReport {
    let mut violations: Vec<String> = validate_graph(&x.graph).violations.iter().map(|v| format!("{v:?}")).collect();
    let g = &x.graph;
    if x.vertex_object.len() != g.num_vertices() || x.edge_object.len() != g.num_darts() || x.edge_maps.len() != g.num_darts() {
        violations.push("object tables do not match the graph".into());
        return ObjectReport { violations };
    }
    let nobj = x.objects.len();
    if x.vertex_object.iter().chain(&x.edge_object).any(|&o| o >= nobj) {
        violations.push("object index out of range".into());
        return ObjectReport { violations };
    }
    for d in g.darts() {
        let name = g.dart_name(d);
        if x.edge_object[d.idx()] != x.edge_object[g.reverse(d).idx()] {
            violations.push(format!("edge object of {name} differs from that of its reverse"));
        }
        if !is_morphism(x.eobj(d), x.vobj(g.origin(d)), x.phi0(d)) {
            violations.push(format!("edge morphism not in A at {name}"));
        }
    }
    ObjectReport { violations }
}

/// A star map between a vertex `u` of `X¹` and a vertex `v` of `X²`, as
/// given by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarMap {
    pub u: VertexId,
    pub v: VertexId,
    /// `ŝ` on `star(u)`, in star order.
    pub hat: Vec<DartId>,
    /// `s_e` for every `e` in `star(u)`, in star order.
    pub edge_maps: Vec<ObjMap>,
    /// A compatible `s_u`; searched for when absent.
    pub vertex_map: Option<ObjMap>,
}

/// A star map between two sites, as an arrow of `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarMorphism {
    pub src: Site,
    pub tgt: Site,
    pub hat: Vec<DartId>,
    pub maps: Vec<ObjMap>,
    src_star: Vec<DartId>,
    tgt_star: Vec<DartId>,
}

impl StarMorphism {
    fn position(&self, e: DartId) -> usize {
        self.src_star.iter().position(|&d| d == e).expect("dart in source star")
    }

    pub fn image(&self, e: DartId) -> DartId {
        self.hat[self.position(e)]
    }

    pub fn map_at(&self, e: DartId) -> &ObjMap {
        &self.maps[self.position(e)]
    }
}

impl Arrow for StarMorphism {
    type Object = Site;
    fn src(&self) -> Site {
        self.src
    }
    fn tgt(&self) -> Site {
        self.tgt
    }
    fn after(&self, first: &Self) -> Self {
        let (hat, maps) = first
            .hat
            .iter()
            .zip(&first.maps)
            .map(|(&f, b)| {
                let k = self.position(f);
                (self.hat[k], self.maps[k].after(b))
            })
            .unzip();
        StarMorphism {
            src: first.src,
            tgt: self.tgt,
            hat,
            maps,
            src_star: first.src_star.clone(),
            tgt_star: self.tgt_star.clone(),
        }
    }
    fn inverse(&self) -> Self {
        let (hat, maps) = self
            .tgt_star
            .iter()
            .map(|f| {
                let k = self.hat.iter().position(|d| d == f).expect("bijective star map");
                (self.src_star[k], self.maps[k].inverse())
            })
            .unzip();
        StarMorphism {
            src: self.tgt,
            tgt: self.src,
            hat,
            maps,
            src_star: self.tgt_star.clone(),
            tgt_star: self.src_star.clone(),
        }
    }
}

/// An element `(e, f, b)` of `Δ` with `b: X_e -> X_f`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectAtom {
    pub e: SiteDart,
    pub f: SiteDart,
    pub b: ObjMap,
}

struct Pair<'a> {
    x1: &'a ObjectGraph,
    x2: &'a ObjectGraph,
}

impl Pair<'_> {
    fn side(&self, s: u8) -> &ObjectGraph {
        if s == 1 {
            self.x1
        } else {
            self.x2
        }
    }

    fn identity(&self, s: Site) -> StarMorphism {
        let x = self.side(s.side);
        let star = x.graph.star(s.v).to_vec();
        StarMorphism {
            src: s,
            tgt: s,
            maps: star.iter().map(|&d| ObjMap::identity(x.eobj(d))).collect(),
            hat: star.clone(),
            src_star: star.clone(),
            tgt_star: star,
        }
    }

    fn vertex_identity(&self, s: Site) -> ObjMap {
        ObjMap::identity(self.side(s.side).vobj(s.v))
    }

    fn sites(&self) -> Vec<Site> {
        let mut out: Vec<Site> = self.x1.graph.vertices().map(|v| Site::new(1, v)).collect();
        out.extend(self.x2.graph.vertices().map(|v| Site::new(2, v)));
        out
    }

    fn darts(&self) -> Vec<SiteDart> {
        let mut out: Vec<SiteDart> = self.x1.graph.darts().map(|d| SiteDart::new(1, d)).collect();
        out.extend(self.x2.graph.darts().map(|d| SiteDart::new(2, d)));
        out
    }

    /// `None` when `s_u ∘ φ^e_0 = φ^f_0 ∘ s_e`, else a description.
    fn square(&self, a: &StarMorphism, su: &ObjMap, e: DartId) -> Option<String> {
        let (xa, xb) = (self.side(a.src.side), self.side(a.tgt.side));
        let f = a.image(e);
        let lhs = su.after(xa.phi0(e));
        let rhs = xb.phi0(f).after(a.map_at(e));
        (lhs != rhs).then(|| {
            format!(
                "s_u ∘ φ^{}_0 ≠ φ^{}_0 ∘ s_{} from {} to {}",
                xa.graph.dart_name(e),
                xb.graph.dart_name(f),
                xa.graph.dart_name(e),
                xa.graph.vertex_name(a.src.v),
                xb.graph.vertex_name(a.tgt.v)
            )
        })
    }
}

struct DeltaAction<'a>(&'a Pair<'a>);

impl Action<StarMorphism> for DeltaAction<'_> {
    type Elem = ObjectAtom;
    fn anchor(&self, a: &ObjectAtom) -> Site {
        Site::new(a.f.side, self.0.side(a.f.side).graph.origin(a.f.d))
    }
    fn act(&self, g: &StarMorphism, a: &ObjectAtom) -> ObjectAtom {
        ObjectAtom {
            e: a.e,
            f: SiteDart::new(g.tgt.side, g.image(a.f.d)),
            b: g.map_at(a.f.d).after(&a.b),
        }
    }
}

/// The closed groupoid of star maps with its `Δ` orbits.
#[derive(Clone, Debug)]
pub struct ObjectSystem {
    pub x1: ObjectGraph,
    pub x2: ObjectGraph,
    pub gpd: FiniteGroupoid<StarMorphism>,
    /// The stored `s_u` of every arrow, composed along its witness.
    pub vertex_maps: Vec<ObjMap>,
    /// `Δ(e)` for every dart of both graphs, sorted.
    pub delta: BTreeMap<SiteDart, Vec<ObjectAtom>>,
    /// `|Υ_e|` for every dart of both graphs.
    pub isotropy: BTreeMap<SiteDart, usize>,
    pub axioms: AxiomFlags,
}

fn check_seed(p: &Pair, i: usize, s: &StarMap) -> Result<(StarMorphism, ObjMap)> {
    let reject = |m: String| Err(Error::SeedRejected(format!("seed {i}: {m}")));
    let (g1, g2) = (&p.x1.graph, &p.x2.graph);
    if s.u.idx() >= g1.num_vertices() || s.v.idx() >= g2.num_vertices() {
        return reject("vertex out of range".into());
    }
    let src_star = g1.star(s.u).to_vec();
    let tgt_star = g2.star(s.v).to_vec();
    if s.hat.len() != src_star.len() || s.edge_maps.len() != src_star.len() {
        return reject("star map does not cover the star".into());
    }
    let mut sorted = s.hat.clone();
    sorted.sort();
    let mut want = tgt_star.clone();
    want.sort();
    if sorted != want {
        return reject("ŝ is not a bijection of stars".into());
    }
    for (k, &e) in src_star.iter().enumerate() {
        if !is_iso(p.x1.eobj(e), p.x2.eobj(s.hat[k]), &s.edge_maps[k]) {
            return reject(format!("s_{} is not an isomorphism", g1.dart_name(e)));
        }
    }
    let a = StarMorphism {
        src: Site::new(1, s.u),
        tgt: Site::new(2, s.v),
        hat: s.hat.clone(),
        maps: s.edge_maps.clone(),
        src_star,
        tgt_star,
    };
    let (xu, yv) = (p.x1.vobj(s.u), p.x2.vobj(s.v));
    let first_failure = |su: &ObjMap| a.src_star.iter().find_map(|&e| p.square(&a, su, e));
    match &s.vertex_map {
        Some(su) => {
            if !is_iso(xu, yv, su) {
                return reject("s_u is not an isomorphism".into());
            }
            match first_failure(su) {
                Some(sq) => reject(sq),
                None => Ok((a, su.clone())),
            }
        }
        None => {
            let candidates = isomorphisms(xu, yv);
            if let Some(su) = candidates.iter().find(|su| first_failure(su).is_none()) {
                return Ok((a, su.clone()));
            }
            let detail = candidates
                .first()
                .and_then(first_failure)
                .unwrap_or_else(|| "the vertex objects are not isomorphic".into());
            reject(format!("no compatible s_u exists; {detail}"))
        }
    }
}

/// Closes `seeds` under composition and inverses and builds `Δ`.
pub fn close_star_maps(x1: &ObjectGraph, x2: &ObjectGraph, seeds: &[StarMap]) -> Result<ObjectSystem> {
    for (x, name) in [(x1, "X1"), (x2, "X2")] {
        let r = validate_object_graph(x);
        if !r.is_ok() {
            return Err(Error::InvalidGraph(format!("{name}: {}", r.violations[0])));
        }
    }
    let p = Pair { x1, x2 };
    let mut atoms = Vec::with_capacity(seeds.len());
    let mut seed_su = Vec::with_capacity(seeds.len());
    for (i, s) in seeds.iter().enumerate() {
        let (a, su) = check_seed(&p, i, s)?;
        atoms.push(a);
        seed_su.push(su);
    }
    let sites = p.sites();
    let gpd = saturate_groupoid(&sites, &atoms, |s| p.identity(s))?;

    let mut vertex_maps = Vec::with_capacity(gpd.len());
    for i in 0..gpd.len() {
        let mut su = p.vertex_identity(gpd.arrow(i).src);
        for l in gpd.witness(i) {
            let m = &seed_su[l.atom];
            su = if l.inv { m.inverse().after(&su) } else { m.after(&su) };
        }
        let a = gpd.arrow(i);
        if let Some(sq) = a.src_star.iter().find_map(|&e| p.square(a, &su, e)) {
            return Err(Error::Verification(format!("composite arrow {i}: {sq}")));
        }
        vertex_maps.push(su);
    }

    let act = DeltaAction(&p);
    let mut delta = BTreeMap::new();
    let mut isotropy = BTreeMap::new();
    let mut all = Vec::new();
    for e in p.darts() {
        let x = p.side(e.side);
        let unit = ObjectAtom {
            e,
            f: e,
            b: ObjMap::identity(x.eobj(e.d)),
        };
        let o = orbit(&gpd, &act, &unit);
        all.extend(o.iter().cloned());
        let site = Site::new(e.side, x.graph.origin(e.d));
        let ups: BTreeSet<&ObjMap> = gpd
            .hom(site, site)
            .into_iter()
            .map(|i| gpd.arrow(i))
            .filter(|g| g.image(e.d) == e.d)
            .map(|g| g.map_at(e.d))
            .collect();
        isotropy.insert(e, ups.len());
        delta.insert(e, o);
    }
    verify_action(&gpd, &act, &all, DEFAULT_CHECK_BUDGET)?;

    for (&e, de) in &delta {
        let x = p.side(e.side);
        let site = Site::new(e.side, x.graph.origin(e.d));
        for &i in gpd.out_arrows(site) {
            let g = gpd.arrow(i);
            let start = ObjectAtom {
                e,
                f: SiteDart::new(g.tgt.side, g.image(e.d)),
                b: g.map_at(e.d).clone(),
            };
            if orbit(&gpd, &act, &start) != *de {
                return Err(Error::Verification(format!("orbit law fails at {}", x.graph.dart_name(e.d))));
            }
        }
        let hom = gpd.hom(site, site).len();
        let deg = x.graph.degree(site.v);
        let bound: u128 = (1..=deg as u128).product::<u128>()
            * x.graph
                .star(site.v)
                .iter()
                .map(|&d| isotropy[&SiteDart::new(e.side, d)] as u128)
                .product::<u128>();
        if hom as u128 > bound {
            return Err(Error::Verification(format!(
                "|Γ(u,u)| = {hom} exceeds deg! × Π|Υ_e| = {bound} at {}",
                x.graph.vertex_name(site.v)
            )));
        }
    }

    let coverage = x1.graph.vertices().all(|v| {
        gpd.out_arrows(Site::new(1, v)).iter().any(|&i| gpd.arrow(i).tgt.side == 2)
    }) && x2.graph.vertices().all(|v| {
        gpd.out_arrows(Site::new(2, v)).iter().any(|&i| gpd.arrow(i).tgt.side == 1)
    });
    if !coverage {
        return Err(Error::InsufficientSeeds("some vertex has no star map to the other graph".into()));
    }
    for (&e, de) in &delta {
        let g = &p.side(e.side).graph;
        let ebar = SiteDart::new(e.side, g.reverse(e.d));
        for a in de {
            let bar = ObjectAtom {
                e: ebar,
                f: SiteDart::new(a.f.side, p.side(a.f.side).graph.reverse(a.f.d)),
                b: a.b.clone(),
            };
            if delta[&ebar].binary_search(&bar).is_err() {
                return Err(Error::InsufficientSeeds(format!(
                    "the reverse of a triple at {} is not in Δ",
                    g.dart_name(e.d)
                )));
            }
        }
    }
    Ok(ObjectSystem {
        x1: x1.clone(),
        x2: x2.clone(),
        gpd,
        vertex_maps,
        delta,
        isotropy,
        axioms: AxiomFlags {
            coverage,
            bar_closure: true,
            action: true,
        },
    })
}

impl ObjectSystem {
    /// Indices of arrows from `X¹` to `X²`.
    pub fn cross_arrows(&self) -> Vec<usize> {
        (0..self.gpd.len())
            .filter(|&i| {
                let a = self.gpd.arrow(i);
                a.src.side == 1 && a.tgt.side == 2
            })
            .collect()
    }

    /// Cross triples `(e₁, e₂, b)` in the order of the lowered atoms.
    pub fn cross_atoms(&self) -> Vec<ObjectAtom> {
        self.delta
            .iter()
            .filter(|(e, _)| e.side == 1)
            .flat_map(|(_, de)| de.iter().filter(|a| a.f.side == 2).cloned())
            .collect()
    }

    pub fn lower(&self) -> Result<LocalSystem> {
        let (g1, g2) = (&self.x1.graph, &self.x2.graph);
        let atoms = self.cross_atoms();
        let index: HashMap<&ObjectAtom, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut cross_atoms = Vec::with_capacity(atoms.len());
        for a in &atoms {
            let bar = ObjectAtom {
                e: SiteDart::new(1, g1.reverse(a.e.d)),
                f: SiteDart::new(2, g2.reverse(a.f.d)),
                b: a.b.clone(),
            };
            let bar = *index
                .get(&bar)
                .ok_or_else(|| Error::InsufficientSeeds("bar leaves the cross triples".into()))?;
            cross_atoms.push(CrossAtom {
                e: a.e.d,
                f: a.f.d,
                bar,
                orbit: self.delta[&a.e].len() as u64,
                label: format!("{}->{}:{:?}", g1.dart_name(a.e.d), g2.dart_name(a.f.d), a.b.points),
            });
        }
        let mut arrows = Vec::new();
        for i in self.cross_arrows() {
            let g = self.gpd.arrow(i);
            let star = g1
                .star(g.src.v)
                .iter()
                .map(|&e| {
                    let t = ObjectAtom {
                        e: SiteDart::new(1, e),
                        f: SiteDart::new(2, g.image(e)),
                        b: g.map_at(e).clone(),
                    };
                    index[&t]
                })
                .collect();
            let names: Vec<&str> = g.hat.iter().map(|&f| g2.dart_name(f)).collect();
            arrows.push(CrossArrow {
                src: g.src.v,
                tgt: g.tgt.v,
                star,
                label: format!("{}->{}:[{}]", g1.vertex_name(g.src.v), g2.vertex_name(g.tgt.v), names.join(",")),
            });
        }
        let sys = LocalSystem {
            g1: g1.clone(),
            g2: g2.clone(),
            out_size: g1
                .vertices()
                .map(|v| self.gpd.out_arrows(Site::new(1, v)).len() as u64)
                .collect(),
            arrows,
            atoms: cross_atoms,
            axioms: self.axioms,
            backend: "objects".into(),
        };
        sys.check_structure()?;
        Ok(sys)
    }
}

/// A morphism of graphs of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectMorphism {
    pub graph: GraphMorphism,
    /// `f_v: X_v -> Y_{f̂(v)}` for every vertex.
    pub vertex_maps: Vec<ObjMap>,
    /// `f_e: X_e -> Y_{f̂(e)}` for every dart.
    pub edge_maps: Vec<ObjMap>,
}

impl ObjectMorphism {
    pub fn identity(x: &ObjectGraph) -> ObjectMorphism {
        ObjectMorphism {
            graph: GraphMorphism::identity(&x.graph),
            vertex_maps: x.graph.vertices().map(|v| ObjMap::identity(x.vobj(v))).collect(),
            edge_maps: x.graph.darts().map(|d| ObjMap::identity(x.eobj(d))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectCoveringCheck {
    pub ok: bool,
    pub failures: usize,
    pub first_failure: Option<String>,
}

/// Checks that `f: x -> y` is a covering of graphs of objects.
pub fn verify_object_covering(x: &ObjectGraph, y: &ObjectGraph, f: &ObjectMorphism) -> ObjectCoveringCheck {
    let mut fails: Vec<String> = Vec::new();
    let (g, h) = (&x.graph, &y.graph);
    match is_covering(g, h, &f.graph) {
        Ok(CoveringCheck::Covering) => {}
        Ok(CoveringCheck::Fails(c)) => fails.push(format!("underlying map is not a covering: {c:?}")),
        Err(e) => fails.push(format!("underlying map is malformed: {e}")),
    }
    if !fails.is_empty() || f.vertex_maps.len() != g.num_vertices() || f.edge_maps.len() != g.num_darts() {
        if fails.is_empty() {
            fails.push("object maps do not match the graph".into());
        }
        return ObjectCoveringCheck {
            ok: false,
            failures: fails.len(),
            first_failure: fails.into_iter().next(),
        };
    }
    let vert_ok: Vec<bool> = g
        .vertices()
        .map(|v| {
            let ok = is_iso(x.vobj(v), y.vobj(f.graph.vertex(v)), &f.vertex_maps[v.idx()]);
            if !ok {
                fails.push(format!("f_{} is not an isomorphism", g.vertex_name(v)));
            }
            ok
        })
        .collect();
    for d in g.darts() {
        let fd = f.graph.dart(d);
        let fe = &f.edge_maps[d.idx()];
        if !is_iso(x.eobj(d), y.eobj(fd), fe) {
            fails.push(format!("f_{} is not an isomorphism", g.dart_name(d)));
            continue;
        }
        if *fe != f.edge_maps[g.reverse(d).idx()] {
            fails.push(format!("f_{} differs from the map on its reverse", g.dart_name(d)));
        }
        for (end, v, phi, phi_img) in [
            (0, g.origin(d), x.phi0(d), y.phi0(fd)),
            (1, g.terminus(d), x.phi1(d), y.phi1(fd)),
        ] {
            if !vert_ok[v.idx()] {
                continue;
            }
            if f.vertex_maps[v.idx()].after(phi) != phi_img.after(fe) {
                fails.push(format!(
                    "square f_{} ∘ φ^{}_{end} = φ^{}_{end} ∘ f_{} fails",
                    g.vertex_name(v),
                    g.dart_name(d),
                    h.dart_name(fd),
                    g.dart_name(d)
                ));
            }
        }
    }
    ObjectCoveringCheck {
        ok: fails.is_empty(),
        failures: fails.len(),
        first_failure: fails.into_iter().next(),
    }
}

#[derive(Clone, Debug)]
pub struct ObjectCover {
    pub w: ObjectGraph,
    pub mu1: ObjectMorphism,
    pub mu2: ObjectMorphism,
    pub built: BuiltCover,
}

/// Assembles `W` with its coverings onto `X¹` and `X²`, both verified.
pub fn build_object_cover(sys: &ObjectSystem, opts: &BuildOptions) -> Result<ObjectCover> {
    let low = sys.lower()?;
    let built = build_cover(&low, opts)?;
    let cross = sys.cross_arrows();
    let atoms = sys.cross_atoms();
    let x1 = &sys.x1;
    let g = &built.graph;
    let vertex_object = built
        .vertex_prov
        .iter()
        .map(|&(a, _)| x1.vertex_object[low.arrows[a].src.idx()])
        .collect();
    let edge_object = built.dart_prov.iter().map(|&(t, _)| x1.edge_object[atoms[t].e.d.idx()]).collect();
    let edge_maps = built
        .dart_prov
        .iter()
        .map(|&(t, _)| x1.edge_maps[atoms[t].e.d.idx()].clone())
        .collect();
    let w = ObjectGraph {
        graph: g.clone(),
        objects: x1.objects.clone(),
        vertex_object,
        edge_object,
        edge_maps,
    };
    let mu1 = ObjectMorphism {
        graph: built.mu1.clone(),
        vertex_maps: g.vertices().map(|v| ObjMap::identity(w.vobj(v))).collect(),
        edge_maps: g.darts().map(|d| ObjMap::identity(w.eobj(d))).collect(),
    };
    let mu2 = ObjectMorphism {
        graph: built.mu2.clone(),
        vertex_maps: built.vertex_prov.iter().map(|&(a, _)| sys.vertex_maps[cross[a]].clone()).collect(),
        edge_maps: built.dart_prov.iter().map(|&(t, _)| atoms[t].b.clone()).collect(),
    };
    for (target, mu, name) in [(&sys.x1, &mu1, "X1"), (&sys.x2, &mu2, "X2")] {
        let c = verify_object_covering(&w, target, mu);
        if !c.ok {
            return Err(Error::Verification(format!(
                "projection to {name}: {}",
                c.first_failure.unwrap_or_default()
            )));
        }
    }
    Ok(ObjectCover { w, mu1, mu2, built })
}

/// A loop carrying the directed `m`-cycle, with identity edge maps in `X¹`
/// and `φ^e_1` the rotation by one in `X²`, together with two seed star
/// maps. Every common cover has circuits of length divisible by `m`.
pub fn rotation_example(m: usize) -> (ObjectGraph, ObjectGraph, Vec<StarMap>) {
    let c = FiniteObject::directed_cycle(m);
    let x1 = ObjectGraph::constant(crate::graph::fixtures::rose(1), c);
    let mut x2 = x1.clone();
    x2.edge_maps[1] = ObjMap::rotation(m, 1);
    let v = VertexId(0);
    let seed = |i: usize| StarMap {
        u: v,
        v,
        hat: vec![DartId(0), DartId(1)],
        edge_maps: vec![ObjMap::rotation(m, i % m), ObjMap::rotation(m, (i + m - 1) % m)],
        vertex_map: Some(ObjMap::rotation(m, i % m)),
    };
    (x1, x2, vec![seed(0), seed(1)])
}

#[cfg(test)]
mod tests;

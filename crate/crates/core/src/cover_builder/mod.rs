//! Assembly of a finite common cover from a local system.
//!
//! Every backend (star, ball, objects) lowers its groupoid to a
//! [`LocalSystem`]: the cross arrows `x -> y` with `x ∈ V(G1)`, `y ∈ V(G2)`,
//! the cross atoms `(e, f)` acted on by them, the bar involution, and the
//! sizes `|Γ(x,-)|` and `|Δ(e,-)|`. Assembly is then the same for all of
//! them: `N/|Γ(x,-)|` copies of every cross arrow become vertices, and
//! `N/|Δ(e,-)|` copies of every cross atom become darts, matched to the
//! vertices whose arrow acts on `1_e` to give that atom.

pub mod phi;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_covering, CoveringCheck, DartId, Graph, GraphMorphism, VertexId};
use crate::groupoid::schedule_n;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossArrow {
    pub src: VertexId,
    pub tgt: VertexId,
    /// Atom index of `γ · 1_e` for every `e` in `star(src)`, in star order.
    pub star: Vec<usize>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossAtom {
    pub e: DartId,
    pub f: DartId,
    pub bar: usize,
    /// `|Δ(e,-)|`, counted over both graphs.
    pub orbit: u64,
    pub label: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomFlags {
    /// Every vertex of `G1` has a cross arrow and every vertex of `G2` is hit.
    pub coverage: bool,
    /// The bar involution maps atoms at `e` onto atoms at `ē`.
    pub bar_closure: bool,
    /// The action axioms hold.
    pub action: bool,
}

impl AxiomFlags {
    pub fn all(&self) -> bool {
        self.coverage && self.bar_closure && self.action
    }
}

#[derive(Clone, Debug)]
pub struct LocalSystem {
    pub g1: Graph,
    pub g2: Graph,
    /// `|Γ(x,-)|` for every vertex `x` of `G1`.
    pub out_size: Vec<u64>,
    pub arrows: Vec<CrossArrow>,
    pub atoms: Vec<CrossAtom>,
    pub axioms: AxiomFlags,
    pub backend: String,
}

impl LocalSystem {
    /// Structural consistency of the lowered data.
    pub fn check_structure(&self) -> Result<()> {
        let bad = |m: String| Err(Error::SystemRefused(m));
        if self.out_size.len() != self.g1.num_vertices() {
            return bad("out sizes do not cover G1".into());
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src.idx() >= self.g1.num_vertices() || a.tgt.idx() >= self.g2.num_vertices() {
                return bad(format!("arrow {i} has endpoints outside the graphs"));
            }
            let star = self.g1.star(a.src);
            if a.star.len() != star.len() {
                return bad(format!("arrow {i} does not act on the whole star"));
            }
            let mut images = Vec::new();
            for (k, &t) in a.star.iter().enumerate() {
                let atom = self.atoms.get(t).ok_or_else(|| Error::SystemRefused(format!("arrow {i} names atom {t}")))?;
                if atom.e != star[k] || self.g2.origin(atom.f) != a.tgt {
                    return bad(format!("arrow {i} sends {} to an atom at the wrong darts", self.g1.dart_name(star[k])));
                }
                images.push(atom.f);
            }
            images.sort();
            images.dedup();
            if images.len() != star.len() {
                return bad(format!("arrow {i} is not a star bijection"));
            }
        }
        for (i, a) in self.atoms.iter().enumerate() {
            let b = self.atoms.get(a.bar).ok_or_else(|| Error::SystemRefused(format!("atom {i} has no bar")))?;
            if b.bar != i || b.e != self.g1.reverse(a.e) || b.f != self.g2.reverse(a.f) || b.orbit != a.orbit {
                return bad(format!("bar of atom {i} is inconsistent"));
            }
            if a.orbit == 0 {
                return bad(format!("atom {i} has an empty orbit"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ComponentChoice {
    /// Smallest component, ties broken by first vertex.
    #[default]
    Least,
    All,
    /// Component of the vertex `(arrow, 1)`.
    ContainingArrow(usize),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    pub component: ComponentChoice,
    /// Refuse to materialize more vertices than this.
    pub max_vertices: Option<usize>,
}

/// Exact bookkeeping from the assembly, over the full (unselected) cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counting {
    pub n: String,
    pub vertices: usize,
    pub expected_vertices: String,
    pub darts: usize,
    pub expected_darts: String,
    /// Atoms whose matching list size differed from `N/|Δ(e,-)|`.
    pub matching_failures: usize,
}

#[derive(Clone, Debug)]
pub struct BuiltCover {
    pub graph: Graph,
    pub mu1: GraphMorphism,
    pub mu2: GraphMorphism,
    /// `(arrow index, j)` for every vertex, `j` starting at 1.
    pub vertex_prov: Vec<(usize, u64)>,
    /// `(atom index, k)` for every dart, `k` starting at 1.
    pub dart_prov: Vec<(usize, u64)>,
    pub n: BigUint,
    /// `(|V|/|V(G1)|, |V|/|V(G2)|)` for the emitted graph.
    pub degrees: (u64, u64),
    /// Vertex counts of all components of the full assembly, in order.
    pub component_sizes: Vec<usize>,
    pub counting: Counting,
}

impl BuiltCover {
    /// Vertex with provenance `(arrow, j)`.
    pub fn vertex_of(&self, arrow: usize, j: u64) -> Option<VertexId> {
        self.vertex_prov
            .iter()
            .position(|&p| p == (arrow, j))
            .map(|i| VertexId(i as u32))
    }
}

fn to_usize(x: &BigUint, what: &str) -> Result<usize> {
    x.to_usize().ok_or_else(|| Error::OutOfRange(format!("{what} {x} does not fit in memory")))
}

pub fn verify_pair(g: &Graph, sys: &LocalSystem, mu1: &GraphMorphism, mu2: &GraphMorphism) -> Result<()> {
    for (target, mu, name) in [(&sys.g1, mu1, "G1"), (&sys.g2, mu2, "G2")] {
        match is_covering(g, target, mu)? {
            CoveringCheck::Covering => {}
            CoveringCheck::Fails(f) => {
                return Err(Error::Verification(format!("projection to {name} is not a covering: {f:?}")));
            }
        }
    }
    Ok(())
}

/// Builds the full cover, verifies both projections, then selects components.
pub fn build_cover(sys: &LocalSystem, opts: &BuildOptions) -> Result<BuiltCover> {
    if !sys.axioms.all() {
        return Err(Error::SystemRefused(format!("axiom flags {:?}", sys.axioms)));
    }
    sys.check_structure()?;
    let mut sizes: Vec<u64> = sys.out_size.clone();
    sizes.extend(sys.atoms.iter().map(|a| a.orbit));
    let n = schedule_n(&sizes)?;

    let mut expected_vertices = BigUint::from(0u32);
    let mut copies = Vec::with_capacity(sys.arrows.len());
    for a in &sys.arrows {
        let c = &n / BigUint::from(sys.out_size[a.src.idx()]);
        expected_vertices += &c;
        copies.push(c);
    }
    let total = to_usize(&expected_vertices, "vertex count")?;
    if let Some(cap) = opts.max_vertices {
        if total > cap {
            return Err(Error::BudgetExceeded);
        }
    }
    let copies: Vec<usize> = copies.iter().map(|c| to_usize(c, "copy count")).collect::<Result<_>>()?;

    let mut vertex_prov = Vec::with_capacity(total);
    let mut lists: Vec<Vec<VertexId>> = vec![Vec::new(); sys.atoms.len()];
    for (ai, a) in sys.arrows.iter().enumerate() {
        for j in 1..=copies[ai] {
            let v = VertexId(vertex_prov.len() as u32);
            vertex_prov.push((ai, j as u64));
            for &t in &a.star {
                lists[t].push(v);
            }
        }
    }

    let mut expected_darts = BigUint::from(0u32);
    let mut matching_failures = 0;
    let mut offset = Vec::with_capacity(sys.atoms.len());
    let mut ndarts = 0usize;
    for (t, atom) in sys.atoms.iter().enumerate() {
        let want = &n / BigUint::from(atom.orbit);
        expected_darts += &want;
        if BigUint::from(lists[t].len()) != want {
            matching_failures += 1;
        }
        offset.push(ndarts);
        ndarts += lists[t].len();
    }
    if matching_failures > 0 {
        return Err(Error::Verification(format!(
            "{matching_failures} atoms have matching lists of the wrong size"
        )));
    }

    let mut origin = Vec::with_capacity(ndarts);
    let mut reverse = Vec::with_capacity(ndarts);
    let mut dart_prov = Vec::with_capacity(ndarts);
    for (t, atom) in sys.atoms.iter().enumerate() {
        for (k, &v) in lists[t].iter().enumerate() {
            origin.push(v);
            reverse.push(DartId((offset[atom.bar] + k) as u32));
            dart_prov.push((t, k as u64 + 1));
        }
    }
    let vertex_names = vertex_prov.iter().map(|(a, j)| format!("g{a}.{j}")).collect();
    let dart_names = dart_prov.iter().map(|(t, k)| format!("a{t}.{k}")).collect();
    let vertex_colour = vertex_prov
        .iter()
        .map(|&(a, _)| sys.g1.vertex_colour(sys.arrows[a].src).map(str::to_string))
        .collect();
    let dart_colour = dart_prov
        .iter()
        .map(|&(t, _)| sys.g1.dart_colour(sys.atoms[t].e).map(str::to_string))
        .collect();
    let graph = Graph::from_parts(vertex_names, dart_names, origin, reverse, vertex_colour, dart_colour);
    let report = crate::graph::validate_graph(&graph);
    if !report.is_ok() {
        return Err(Error::Verification(format!("assembled graph is malformed: {}", report.violations[0])));
    }
    let mu1 = GraphMorphism {
        vmap: vertex_prov.iter().map(|&(a, _)| sys.arrows[a].src).collect(),
        dmap: dart_prov.iter().map(|&(t, _)| sys.atoms[t].e).collect(),
    };
    let mu2 = GraphMorphism {
        vmap: vertex_prov.iter().map(|&(a, _)| sys.arrows[a].tgt).collect(),
        dmap: dart_prov.iter().map(|&(t, _)| sys.atoms[t].f).collect(),
    };
    verify_pair(&graph, sys, &mu1, &mu2)?;

    let counting = Counting {
        n: n.to_string(),
        vertices: graph.num_vertices(),
        expected_vertices: expected_vertices.to_string(),
        darts: graph.num_darts(),
        expected_darts: expected_darts.to_string(),
        matching_failures,
    };
    let comps = graph.components();
    let component_sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    let keep: Vec<VertexId> = match opts.component {
        ComponentChoice::All => graph.vertices().collect(),
        ComponentChoice::Least => comps
            .iter()
            .min_by_key(|c| (c.len(), c[0]))
            .cloned()
            .unwrap_or_default(),
        ComponentChoice::ContainingArrow(a) => {
            let v = vertex_prov
                .iter()
                .position(|&p| p == (a, 1))
                .ok_or_else(|| Error::OutOfRange(format!("arrow {a} is not a cross arrow of the system")))?;
            comps
                .iter()
                .find(|c| c.binary_search(&VertexId(v as u32)).is_ok())
                .cloned()
                .unwrap()
        }
    };
    let (sub, vs, ds) = graph.induced(&keep);
    let mu1 = GraphMorphism {
        vmap: vs.iter().map(|&v| mu1.vertex(v)).collect(),
        dmap: ds.iter().map(|&d| mu1.dart(d)).collect(),
    };
    let mu2 = GraphMorphism {
        vmap: vs.iter().map(|&v| mu2.vertex(v)).collect(),
        dmap: ds.iter().map(|&d| mu2.dart(d)).collect(),
    };
    verify_pair(&sub, sys, &mu1, &mu2)?;
    let nv = sub.num_vertices() as u64;
    Ok(BuiltCover {
        degrees: (nv / sys.g1.num_vertices() as u64, nv / sys.g2.num_vertices() as u64),
        vertex_prov: vs.iter().map(|v| vertex_prov[v.idx()]).collect(),
        dart_prov: ds.iter().map(|d| dart_prov[d.idx()]).collect(),
        graph: sub,
        mu1,
        mu2,
        n,
        component_sizes,
        counting,
    })
}

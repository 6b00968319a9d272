//! JSON file formats and dot export.
//!
//! Graphs are stored as vertex and dart tables keyed by string ids; the
//! terminus of a dart is derived from its reverse and never stored.
//! Morphisms are `id -> id` tables. Every table is written in a fixed order
//! so that identical inputs serialize to identical bytes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{validate_graph, DartId, Graph, GraphMorphism, VertexId};
use crate::object_graphs::{FiniteObject, ObjMap, ObjectGraph, ObjectMorphism, StarMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colour: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DartRecord {
    pub id: String,
    pub reverse: String,
    pub from: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colour: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub darts: Vec<DartRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub vmap: BTreeMap<String, String>,
    pub dmap: BTreeMap<String, String>,
}

/// Element-level maps of an object morphism, keyed like the graph part.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectMorphismFile {
    pub vmap: BTreeMap<String, String>,
    pub dmap: BTreeMap<String, String>,
    pub vertex_maps: BTreeMap<String, ObjMap>,
    pub edge_maps: BTreeMap<String, ObjMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectGraphFile {
    pub vertices: Vec<VertexRecord>,
    pub darts: Vec<DartRecord>,
    pub objects: BTreeMap<String, FiniteObject>,
    pub vertex_objects: BTreeMap<String, String>,
    pub edge_objects: BTreeMap<String, String>,
    /// `φ^e_0` for every dart `e`.
    pub edge_morphisms: BTreeMap<String, ObjMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedRecord {
    pub u: String,
    pub v: String,
    pub hat: BTreeMap<String, String>,
    pub edge_maps: BTreeMap<String, ObjMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_map: Option<ObjMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedsFile {
    pub seeds: Vec<SeedRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub vertices: BTreeMap<String, String>,
    pub darts: BTreeMap<String, String>,
}

/// A stored common cover `G -> A`, `G -> B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub kind: String,
    pub graph: GraphFile,
    pub mu1: MorphismFile,
    pub mu2: MorphismFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// A stored cover of graphs of objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectCoverFile {
    pub kind: String,
    pub graph: ObjectGraphFile,
    pub mu1: ObjectMorphismFile,
    pub mu2: ObjectMorphismFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn schema(location: impl Into<String>, detail: impl Into<String>) -> Error {
    Error::Schema {
        location: location.into(),
        detail: detail.into(),
    }
}

/// Deserializes `text`, reporting syntax and shape errors by line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| schema(format!("{what}:{}:{}", e.line(), e.column()), e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn graph_file(g: &Graph) -> GraphFile {
    GraphFile {
        vertices: g
            .vertices()
            .map(|v| VertexRecord {
                id: g.vertex_name(v).into(),
                colour: g.vertex_colour(v).map(str::to_string),
            })
            .collect(),
        darts: g
            .darts()
            .map(|d| DartRecord {
                id: g.dart_name(d).into(),
                reverse: g.dart_name(g.reverse(d)).into(),
                from: g.vertex_name(g.origin(d)).into(),
                colour: g.dart_colour(d).map(str::to_string),
            })
            .collect(),
    }
}

fn index(names: impl Iterator<Item = String>, table: &str) -> Result<HashMap<String, u32>> {
    let mut m = HashMap::new();
    for (i, n) in names.enumerate() {
        if m.insert(n.clone(), i as u32).is_some() {
            return Err(schema(format!("{table}[{i}].id"), format!("duplicate id {n:?}")));
        }
    }
    Ok(m)
}

pub fn graph_from_file(f: &GraphFile) -> Result<Graph> {
    let vid = index(f.vertices.iter().map(|v| v.id.clone()), "vertices")?;
    let did = index(f.darts.iter().map(|d| d.id.clone()), "darts")?;
    let mut origin = Vec::with_capacity(f.darts.len());
    let mut reverse = Vec::with_capacity(f.darts.len());
    for (i, d) in f.darts.iter().enumerate() {
        let o = vid
            .get(&d.from)
            .ok_or_else(|| schema(format!("darts[{i}].from"), format!("unknown vertex {:?}", d.from)))?;
        let r = did
            .get(&d.reverse)
            .ok_or_else(|| schema(format!("darts[{i}].reverse"), format!("unknown dart {:?}", d.reverse)))?;
        origin.push(VertexId(*o));
        reverse.push(DartId(*r));
    }
    let g = Graph::from_parts(
        f.vertices.iter().map(|v| v.id.clone()).collect(),
        f.darts.iter().map(|d| d.id.clone()).collect(),
        origin,
        reverse,
        f.vertices.iter().map(|v| v.colour.clone()).collect(),
        f.darts.iter().map(|d| d.colour.clone()).collect(),
    );
    let report = validate_graph(&g);
    if let Some(v) = report.violations.first() {
        return Err(schema("darts", v.to_string()));
    }
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    graph_from_file(&parse_json(text, "graph")?)
}

pub fn serialize_graph(g: &Graph) -> String {
    to_json(&graph_file(g))
}

pub fn morphism_file(src: &Graph, tgt: &Graph, m: &GraphMorphism) -> MorphismFile {
    MorphismFile {
        vmap: src
            .vertices()
            .map(|v| (src.vertex_name(v).into(), tgt.vertex_name(m.vertex(v)).into()))
            .collect(),
        dmap: src
            .darts()
            .map(|d| (src.dart_name(d).into(), tgt.dart_name(m.dart(d)).into()))
            .collect(),
    }
}

fn lookup_vertex(g: &Graph, name: &str, loc: impl Fn() -> String) -> Result<VertexId> {
    g.vertex_by_name(name)
        .ok_or_else(|| schema(loc(), format!("unknown vertex {name:?}")))
}

fn lookup_dart(g: &Graph, name: &str, loc: impl Fn() -> String) -> Result<DartId> {
    g.dart_by_name(name).ok_or_else(|| schema(loc(), format!("unknown dart {name:?}")))
}

/// Reads a morphism table; every vertex and dart of `src` must be mapped.
pub fn morphism_from_file(src: &Graph, tgt: &Graph, f: &MorphismFile, what: &str) -> Result<GraphMorphism> {
    let mut vmap = Vec::with_capacity(src.num_vertices());
    for v in src.vertices() {
        let name = src.vertex_name(v);
        let w = f
            .vmap
            .get(name)
            .ok_or_else(|| schema(format!("{what}.vmap"), format!("vertex {name:?} is not mapped")))?;
        vmap.push(lookup_vertex(tgt, w, || format!("{what}.vmap.{name}"))?);
    }
    let mut dmap = Vec::with_capacity(src.num_darts());
    for d in src.darts() {
        let name = src.dart_name(d);
        let e = f
            .dmap
            .get(name)
            .ok_or_else(|| schema(format!("{what}.dmap"), format!("dart {name:?} is not mapped")))?;
        dmap.push(lookup_dart(tgt, e, || format!("{what}.dmap.{name}"))?);
    }
    if f.vmap.len() != src.num_vertices() || f.dmap.len() != src.num_darts() {
        return Err(schema(what, "table names ids outside the source graph"));
    }
    Ok(GraphMorphism { vmap, dmap })
}

pub fn cover_file(
    g: &Graph,
    a: &Graph,
    b: &Graph,
    mu1: &GraphMorphism,
    mu2: &GraphMorphism,
    provenance: Option<Provenance>,
) -> CoverFile {
    CoverFile {
        kind: "graph-cover".into(),
        graph: graph_file(g),
        mu1: morphism_file(g, a, mu1),
        mu2: morphism_file(g, b, mu2),
        provenance,
    }
}

/// Parses a stored cover against its two targets.
pub fn cover_from_file(f: &CoverFile, a: &Graph, b: &Graph) -> Result<(Graph, GraphMorphism, GraphMorphism)> {
    if f.kind != "graph-cover" {
        return Err(schema("kind", format!("expected \"graph-cover\", found {:?}", f.kind)));
    }
    let g = graph_from_file(&f.graph).map_err(|e| relocate(e, "graph"))?;
    let mu1 = morphism_from_file(&g, a, &f.mu1, "mu1")?;
    let mu2 = morphism_from_file(&g, b, &f.mu2, "mu2")?;
    Ok((g, mu1, mu2))
}

fn relocate(e: Error, prefix: &str) -> Error {
    match e {
        Error::Schema { location, detail } => schema(format!("{prefix}.{location}"), detail),
        e => e,
    }
}

fn object_names(x: &ObjectGraph) -> Vec<String> {
    // zero-padded so the sorted table keeps the index order
    let w = x.objects.len().to_string().len();
    (0..x.objects.len()).map(|i| format!("X{i:0w$}")).collect()
}

pub fn object_graph_file(x: &ObjectGraph) -> ObjectGraphFile {
    let g = &x.graph;
    let names = object_names(x);
    let gf = graph_file(g);
    ObjectGraphFile {
        vertices: gf.vertices,
        darts: gf.darts,
        objects: names.iter().cloned().zip(x.objects.iter().cloned()).collect(),
        vertex_objects: g
            .vertices()
            .map(|v| (g.vertex_name(v).into(), names[x.vertex_object[v.idx()]].clone()))
            .collect(),
        edge_objects: g
            .darts()
            .map(|d| (g.dart_name(d).into(), names[x.edge_object[d.idx()]].clone()))
            .collect(),
        edge_morphisms: g.darts().map(|d| (g.dart_name(d).into(), x.phi0(d).clone())).collect(),
    }
}

pub fn object_graph_from_file(f: &ObjectGraphFile) -> Result<ObjectGraph> {
    let graph = graph_from_file(&GraphFile {
        vertices: f.vertices.clone(),
        darts: f.darts.clone(),
    })?;
    let names: Vec<&String> = f.objects.keys().collect();
    let obj_index = |n: &str, loc: String| -> Result<usize> {
        names
            .iter()
            .position(|k| k.as_str() == n)
            .ok_or_else(|| schema(loc, format!("unknown object {n:?}")))
    };
    let mut vertex_object = Vec::new();
    for v in graph.vertices() {
        let name = graph.vertex_name(v);
        let o = f
            .vertex_objects
            .get(name)
            .ok_or_else(|| schema("vertex_objects", format!("vertex {name:?} has no object")))?;
        vertex_object.push(obj_index(o, format!("vertex_objects.{name}"))?);
    }
    let mut edge_object = Vec::new();
    let mut edge_maps = Vec::new();
    for d in graph.darts() {
        let name = graph.dart_name(d);
        let o = f
            .edge_objects
            .get(name)
            .ok_or_else(|| schema("edge_objects", format!("dart {name:?} has no object")))?;
        edge_object.push(obj_index(o, format!("edge_objects.{name}"))?);
        let m = f
            .edge_morphisms
            .get(name)
            .ok_or_else(|| schema("edge_morphisms", format!("dart {name:?} has no morphism")))?;
        edge_maps.push(m.clone());
    }
    if f.vertex_objects.len() != graph.num_vertices()
        || f.edge_objects.len() != graph.num_darts()
        || f.edge_morphisms.len() != graph.num_darts()
    {
        return Err(schema("objects", "tables name ids outside the graph"));
    }
    let x = ObjectGraph {
        graph,
        objects: f.objects.values().cloned().collect(),
        vertex_object,
        edge_object,
        edge_maps,
    };
    let report = crate::object_graphs::validate_object_graph(&x);
    if let Some(v) = report.violations.first() {
        return Err(schema("edge_morphisms", v.clone()));
    }
    Ok(x)
}

pub fn parse_object_graph(text: &str) -> Result<ObjectGraph> {
    object_graph_from_file(&parse_json(text, "object graph")?)
}

pub fn seeds_file(x1: &ObjectGraph, x2: &ObjectGraph, seeds: &[StarMap]) -> SeedsFile {
    let (g1, g2) = (&x1.graph, &x2.graph);
    SeedsFile {
        seeds: seeds
            .iter()
            .map(|s| {
                let star = g1.star(s.u);
                SeedRecord {
                    u: g1.vertex_name(s.u).into(),
                    v: g2.vertex_name(s.v).into(),
                    hat: star
                        .iter()
                        .zip(&s.hat)
                        .map(|(&e, &f)| (g1.dart_name(e).into(), g2.dart_name(f).into()))
                        .collect(),
                    edge_maps: star
                        .iter()
                        .zip(&s.edge_maps)
                        .map(|(&e, m)| (g1.dart_name(e).into(), m.clone()))
                        .collect(),
                    vertex_map: s.vertex_map.clone(),
                }
            })
            .collect(),
    }
}

pub fn seeds_from_file(x1: &ObjectGraph, x2: &ObjectGraph, f: &SeedsFile) -> Result<Vec<StarMap>> {
    let (g1, g2) = (&x1.graph, &x2.graph);
    let mut out = Vec::new();
    for (i, s) in f.seeds.iter().enumerate() {
        let loc = |k: &str| format!("seeds[{i}].{k}");
        let u = lookup_vertex(g1, &s.u, || loc("u"))?;
        let v = lookup_vertex(g2, &s.v, || loc("v"))?;
        let star = g1.star(u);
        if s.hat.len() != star.len() || s.edge_maps.len() != star.len() {
            return Err(schema(loc("hat"), "tables must cover exactly the star of u"));
        }
        let mut hat = Vec::new();
        let mut edge_maps = Vec::new();
        for &e in star {
            let name = g1.dart_name(e);
            let f = s
                .hat
                .get(name)
                .ok_or_else(|| schema(loc("hat"), format!("dart {name:?} is not mapped")))?;
            hat.push(lookup_dart(g2, f, || loc(&format!("hat.{name}")))?);
            let m = s
                .edge_maps
                .get(name)
                .ok_or_else(|| schema(loc("edge_maps"), format!("dart {name:?} has no map")))?;
            edge_maps.push(m.clone());
        }
        out.push(StarMap {
            u,
            v,
            hat,
            edge_maps,
            vertex_map: s.vertex_map.clone(),
        });
    }
    Ok(out)
}

pub fn object_morphism_file(x: &ObjectGraph, y: &ObjectGraph, f: &ObjectMorphism) -> ObjectMorphismFile {
    let g = &x.graph;
    let m = morphism_file(g, &y.graph, &f.graph);
    ObjectMorphismFile {
        vmap: m.vmap,
        dmap: m.dmap,
        vertex_maps: g
            .vertices()
            .map(|v| (g.vertex_name(v).into(), f.vertex_maps[v.idx()].clone()))
            .collect(),
        edge_maps: g.darts().map(|d| (g.dart_name(d).into(), f.edge_maps[d.idx()].clone())).collect(),
    }
}

pub fn object_morphism_from_file(
    x: &ObjectGraph,
    y: &ObjectGraph,
    f: &ObjectMorphismFile,
    what: &str,
) -> Result<ObjectMorphism> {
    let g = &x.graph;
    let graph = morphism_from_file(
        g,
        &y.graph,
        &MorphismFile {
            vmap: f.vmap.clone(),
            dmap: f.dmap.clone(),
        },
        what,
    )?;
    let vertex_maps = g
        .vertices()
        .map(|v| {
            f.vertex_maps
                .get(g.vertex_name(v))
                .cloned()
                .ok_or_else(|| schema(format!("{what}.vertex_maps"), format!("vertex {:?} has no map", g.vertex_name(v))))
        })
        .collect::<Result<_>>()?;
    let edge_maps = g
        .darts()
        .map(|d| {
            f.edge_maps
                .get(g.dart_name(d))
                .cloned()
                .ok_or_else(|| schema(format!("{what}.edge_maps"), format!("dart {:?} has no map", g.dart_name(d))))
        })
        .collect::<Result<_>>()?;
    Ok(ObjectMorphism {
        graph,
        vertex_maps,
        edge_maps,
    })
}

pub fn object_cover_file(
    w: &ObjectGraph,
    x1: &ObjectGraph,
    x2: &ObjectGraph,
    mu1: &ObjectMorphism,
    mu2: &ObjectMorphism,
    provenance: Option<Provenance>,
) -> ObjectCoverFile {
    ObjectCoverFile {
        kind: "object-cover".into(),
        graph: object_graph_file(w),
        mu1: object_morphism_file(w, x1, mu1),
        mu2: object_morphism_file(w, x2, mu2),
        provenance,
    }
}

pub fn object_cover_from_file(
    f: &ObjectCoverFile,
    x1: &ObjectGraph,
    x2: &ObjectGraph,
) -> Result<(ObjectGraph, ObjectMorphism, ObjectMorphism)> {
    if f.kind != "object-cover" {
        return Err(schema("kind", format!("expected \"object-cover\", found {:?}", f.kind)));
    }
    let w = object_graph_from_file(&f.graph).map_err(|e| relocate(e, "graph"))?;
    let mu1 = object_morphism_from_file(&w, x1, &f.mu1, "mu1")?;
    let mu2 = object_morphism_from_file(&w, x2, &f.mu2, "mu2")?;
    Ok((w, mu1, mu2))
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected dot rendering with one edge per dart pair; colours become
/// `colour` attributes, and a dart pair with distinct colours records both.
pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = write!(s, "  {}", dot_id(g.vertex_name(v)));
        if let Some(c) = g.vertex_colour(v) {
            let _ = write!(s, " [colour={}]", dot_id(c));
        }
        s.push_str(";\n");
    }
    for d in g.darts() {
        let r = g.reverse(d);
        if r < d {
            continue;
        }
        let _ = write!(
            s,
            "  {} -- {} [darts={}",
            dot_id(g.vertex_name(g.origin(d))),
            dot_id(g.vertex_name(g.terminus(d))),
            dot_id(&format!("{}/{}", g.dart_name(d), g.dart_name(r)))
        );
        match (g.dart_colour(d), g.dart_colour(r)) {
            (Some(a), Some(b)) if a == b => {
                let _ = write!(s, ", colour={}", dot_id(a));
            }
            (None, None) => {}
            (a, b) => {
                let _ = write!(s, ", colour={}", dot_id(&format!("{}/{}", a.unwrap_or(""), b.unwrap_or(""))));
            }
        }
        s.push_str("];\n");
    }
    s.push_str("}\n");
    s
}

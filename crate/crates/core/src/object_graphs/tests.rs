use super::*;
use crate::cover_builder::ComponentChoice;
use crate::graph::fixtures::*;
use crate::iso::are_isomorphic;
use crate::star_system::{arrows_between, build_star_system, Strategy};

fn two_points() -> FiniteObject {
    FiniteObject {
        points: vec!["p".into(), "p".into()],
        arrows: vec![],
    }
}

fn swap() -> ObjMap {
    ObjMap {
        points: vec![1, 0],
        arrows: vec![],
    }
}

fn identity_seeds(x: &ObjectGraph) -> Vec<StarMap> {
    x.graph
        .vertices()
        .map(|v| {
            let star = x.graph.star(v);
            StarMap {
                u: v,
                v,
                hat: star.to_vec(),
                edge_maps: star.iter().map(|&d| ObjMap::identity(x.eobj(d))).collect(),
                vertex_map: None,
            }
        })
        .collect()
}

#[test]
fn validation() {
    let x = ObjectGraph::constant(rose(1), FiniteObject::directed_cycle(3));
    assert!(validate_object_graph(&x).is_ok());

    let mut split = x.clone();
    split.objects.push(FiniteObject::directed_cycle(3));
    split.edge_object[1] = 1;
    assert!(!validate_object_graph(&split).is_ok());

    let mut labelled = x.clone();
    let mut c = FiniteObject::directed_cycle(3);
    c.points[0] = "q".into();
    labelled.objects.push(c);
    labelled.edge_object = vec![1, 1];
    labelled.edge_maps[0] = ObjMap::rotation(3, 1);
    let r = validate_object_graph(&labelled);
    assert!(r.violations.iter().any(|v| v.starts_with("edge morphism not in A")));
}

#[test]
fn identity_seeds_give_identity_cover() {
    let x = ObjectGraph::constant(cycle(4), FiniteObject::directed_cycle(3));
    let sys = close_star_maps(&x, &x, &identity_seeds(&x)).unwrap();
    for (e, de) in &sys.delta {
        assert_eq!(de.len(), 2);
        assert!(de.iter().all(|a| a.f.d == e.d && a.b == ObjMap::identity(x.eobj(e.d))));
        assert_eq!(sys.isotropy[e], 1);
    }
    let oc = build_object_cover(&sys, &BuildOptions::default()).unwrap();
    assert_eq!(oc.built.degrees, (1, 1));
    assert!(are_isomorphic(&oc.w.graph, &x.graph));
    assert!(verify_object_covering(&x, &x, &ObjectMorphism::identity(&x)).ok);
}

#[test]
fn rotation_closure_and_cover() {
    let (x1, x2, seeds) = rotation_example(3);
    let sys = close_star_maps(&x1, &x2, &seeds).unwrap();
    let v1 = Site::new(1, VertexId(0));
    assert_eq!(sys.gpd.hom(v1, v1).len(), 3);
    assert_eq!(sys.gpd.out_arrows(v1).len(), 6);
    for n in sys.isotropy.values() {
        assert_eq!(3 % n, 0);
    }
    let oc = build_object_cover(&sys, &BuildOptions::default()).unwrap();
    let w = &oc.w.graph;
    assert!(w.is_connected());
    assert!(w.vertices().all(|v| w.degree(v) == 2));
    assert_eq!(w.num_vertices() % 3, 0);
    assert!(verify_object_covering(&oc.w, &x1, &oc.mu1).ok);
    assert!(verify_object_covering(&oc.w, &x2, &oc.mu2).ok);
}

#[test]
fn rotation_of_order_five() {
    let (x1, x2, seeds) = rotation_example(5);
    let sys = close_star_maps(&x1, &x2, &seeds).unwrap();
    let oc = build_object_cover(&sys, &BuildOptions::default()).unwrap();
    assert_eq!(oc.w.graph.num_vertices() % 5, 0);
}

#[test]
fn one_rotation_seed_is_insufficient() {
    let (x1, x2, seeds) = rotation_example(3);
    let err = close_star_maps(&x1, &x2, &seeds[..1]).unwrap_err();
    assert!(matches!(err, Error::InsufficientSeeds(_)), "{err}");
}

#[test]
fn missing_vertex_map_is_rejected_with_square() {
    let x1 = ObjectGraph::constant(rose(1), two_points());
    let mut x2 = x1.clone();
    x2.edge_maps[1] = swap();
    let id = ObjMap::identity(&two_points());
    let mut seed = StarMap {
        u: VertexId(0),
        v: VertexId(0),
        hat: vec![DartId(0), DartId(1)],
        edge_maps: vec![id.clone(), id.clone()],
        vertex_map: None,
    };
    let err = close_star_maps(&x1, &x2, &[seed.clone()]).unwrap_err();
    match err {
        Error::SeedRejected(m) => assert!(m.contains("no compatible s_u") && m.contains("φ^"), "{m}"),
        e => panic!("{e}"),
    }
    seed.vertex_map = Some(id);
    let err = close_star_maps(&x1, &x2, &[seed.clone()]).unwrap_err();
    match err {
        Error::SeedRejected(m) => assert!(m.contains("s_u ∘ φ^"), "{m}"),
        e => panic!("{e}"),
    }
    // swapping s_ē satisfies both squares, but then s_e ≠ s_ē breaks the bar
    seed.edge_maps[1] = swap();
    seed.vertex_map = None;
    let err = close_star_maps(&x1, &x2, &[seed]).unwrap_err();
    assert!(matches!(err, Error::InsufficientSeeds(_)), "{err}");
}

#[test]
fn singleton_objects_match_star_backend() {
    let (g1, g2) = (cycle(3), cycle(4));
    let x1 = ObjectGraph::constant(g1.clone(), FiniteObject::point());
    let x2 = ObjectGraph::constant(g2.clone(), FiniteObject::point());
    let mut seeds = Vec::new();
    for u in g1.vertices() {
        for v in g2.vertices() {
            for a in arrows_between(&g1, &g2, Site::new(1, u), Site::new(2, v)).unwrap() {
                seeds.push(StarMap {
                    u,
                    v,
                    edge_maps: vec![ObjMap::identity(&FiniteObject::point()); a.bij.len()],
                    hat: a.bij,
                    vertex_map: None,
                });
            }
        }
    }
    let sys = close_star_maps(&x1, &x2, &seeds).unwrap();
    let opts = BuildOptions {
        component: ComponentChoice::All,
        ..Default::default()
    };
    let oc = build_object_cover(&sys, &opts).unwrap();
    let star = build_cover(&build_star_system(&g1, &g2, Strategy::DrFull, None).unwrap(), &opts).unwrap();
    assert_eq!(oc.built.graph.num_vertices(), star.graph.num_vertices());
    assert!(are_isomorphic(&oc.w.graph, &star.graph));
    assert_eq!(oc.built.component_sizes, star.component_sizes);
}

#[test]
fn mutated_edge_map_fails_a_square() {
    let (x1, x2, seeds) = rotation_example(3);
    let sys = close_star_maps(&x1, &x2, &seeds).unwrap();
    let oc = build_object_cover(&sys, &BuildOptions::default()).unwrap();
    let mut bad = oc.mu2.clone();
    let d = DartId(0);
    let r = ObjMap::rotation(3, 1);
    let rd = oc.w.graph.reverse(d);
    bad.edge_maps[d.idx()] = r.after(&bad.edge_maps[d.idx()]);
    bad.edge_maps[rd.idx()] = bad.edge_maps[d.idx()].clone();
    let c = verify_object_covering(&oc.w, &x2, &bad);
    assert!(!c.ok);
    assert!(c.first_failure.unwrap().starts_with("square"));
}

#[test]
fn category_laws_on_closure() {
    let (x1, x2, seeds) = rotation_example(4);
    let sys = close_star_maps(&x1, &x2, &seeds).unwrap();
    let gpd = &sys.gpd;
    for i in 0..gpd.len() {
        let a = gpd.arrow(i);
        let inv = gpd.inverse(i).unwrap();
        assert_eq!(gpd.compose(inv, i), Some(gpd.identity(a.src)));
        assert_eq!(gpd.compose(i, gpd.identity(a.src)), Some(i));
    }
}

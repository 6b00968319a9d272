//! Acceptance suite: one check per criterion, each printing a PASS or FAIL
//! line with the measured quantities. The test fails if any criterion does.

use std::path::Path;
use std::process::Command;

use leighton::ball_system::{build_ball_system, BallOptions};
use leighton::bounds::{bound_report, check_ball_divisors, check_object_divisors, landau_exact, BoundKind, BoundParams};
use leighton::cover_builder::phi::extract_phi;
use leighton::cover_builder::{build_cover, BuildOptions, ComponentChoice};
use leighton::gluing::{assemble, enumerate_pairs, gluing_weights, subdivide_oriented};
use leighton::graph::fixtures::{complete, complete_bipartite, cycle, path, rose, theta};
use leighton::graph::{is_covering, DartId, Graph, GraphBuilder, GraphMorphism, VertexId};
use leighton::iso::are_isomorphic;
use leighton::object_graphs::{
    build_object_cover, close_star_maps, rotation_example, verify_object_covering, FiniteObject, ObjMap, ObjectGraph,
    StarMap,
};
use leighton::oracle::{brute_common_cover, brute_landau, DEFAULT_BUDGET};
use leighton::refinement::common_cover_exists;
use leighton::regular::{check_factors, factorize_regular, regular_common_cover};
use leighton::star_system::{build_star_system, Strategy};
use leighton::Error;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn covers(src: &Graph, tgt: &Graph, m: &GraphMorphism) -> bool {
    matches!(is_covering(src, tgt, m), Ok(c) if c.holds())
}

/// Random connected multigraph on `n` vertices with loops allowed and at
/// least one cycle, so that it has connected covers of every degree.
fn random_base(rng: &mut ChaCha8Rng, n: usize, max_deg: usize) -> Graph {
    loop {
        let mut b = GraphBuilder::new();
        let vs: Vec<VertexId> = (0..n).map(|i| b.vertex(&format!("b{i}"))).collect();
        let mut deg = vec![0usize; n];
        let mut k = 0;
        for i in 1..n {
            let j = rng.gen_range(0..i);
            b.named_edge(vs[j], vs[i], &format!("e{k}+"), &format!("e{k}-"));
            deg[i] += 1;
            deg[j] += 1;
            k += 1;
        }
        for _ in 0..rng.gen_range(0..=n + 1) {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if deg[x] + 1 > max_deg || deg[y] + 1 > max_deg || (x == y && deg[x] + 2 > max_deg) {
                continue;
            }
            b.named_edge(vs[x], vs[y], &format!("e{k}+"), &format!("e{k}-"));
            deg[x] += 1;
            deg[y] += 1;
            k += 1;
        }
        let g = b.build().unwrap();
        if g.num_edges() >= n {
            return g;
        }
    }
}

/// Random connected permutation-voltage cover of `g` of degree `m`.
fn random_cover(rng: &mut ChaCha8Rng, g: &Graph, m: usize, tag: &str) -> Graph {
    loop {
        let mut b = GraphBuilder::new();
        let vs: Vec<VertexId> = (0..g.num_vertices() * m)
            .map(|i| b.vertex(&format!("{tag}{}_{}", i / m, i % m)))
            .collect();
        for d in g.darts() {
            if g.reverse(d) < d {
                continue;
            }
            let mut p: Vec<usize> = (0..m).collect();
            p.shuffle(rng);
            let (u, w) = (g.origin(d).idx(), g.terminus(d).idx());
            for (i, &j) in p.iter().enumerate() {
                b.named_edge(
                    vs[u * m + i],
                    vs[w * m + j],
                    &format!("{tag}{}_{i}", g.dart_name(d)),
                    &format!("{tag}{}_{i}r", g.dart_name(d)),
                );
            }
        }
        let h = b.build().unwrap();
        if h.is_connected() {
            return h;
        }
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e16);
    let mut ok = 0;
    let mut largest = 0;
    for case in 0..50 {
        let n = rng.gen_range(1..=4);
        let base = random_base(&mut rng, n, 3);
        let m1 = rng.gen_range(1..=4);
        let m2 = rng.gen_range(1..=4);
        let g1 = random_cover(&mut rng, &base, m1, "x");
        let g2 = random_cover(&mut rng, &base, m2, "y");
        let sys = build_star_system(&g1, &g2, Strategy::DrFull, None).map_err(|e| format!("case {case}: {e}"))?;
        let bc = build_cover(&sys, &BuildOptions::default()).map_err(|e| format!("case {case}: {e}"))?;
        if !covers(&bc.graph, &g1, &bc.mu1) || !covers(&bc.graph, &g2, &bc.mu2) {
            return Err(format!("case {case}: output is not a common cover"));
        }
        let c = &bc.counting;
        if c.vertices.to_string() != c.expected_vertices
            || c.darts.to_string() != c.expected_darts
            || c.matching_failures != 0
            || bc.component_sizes.iter().sum::<usize>() != c.vertices
        {
            return Err(format!("case {case}: counting identities fail: {c:?}"));
        }
        // every vertex of G1 lifts to N/|Γ(x,-)| copies per cross arrow
        let n = bc.n.to_u64().unwrap();
        let mut per_vertex = vec![0u64; g1.num_vertices()];
        for a in &sys.arrows {
            per_vertex[a.src.idx()] += n / sys.out_size[a.src.idx()];
        }
        if per_vertex.iter().any(|&k| k != per_vertex[0]) {
            return Err(format!("case {case}: fibres over G1 have unequal sizes {per_vertex:?}"));
        }
        largest = largest.max(c.vertices);
        ok += 1;
    }
    Ok(format!("{ok}/50 random pairs verified, largest full assembly {largest} vertices"))
}

/// A vertex with a loop and a pendant edge.
fn lollipop() -> Graph {
    let mut b = GraphBuilder::new();
    let (x, y) = (b.vertex("x"), b.vertex("y"));
    b.named_edge(x, x, "l+", "l-");
    b.named_edge(x, y, "s+", "s-");
    b.build().unwrap()
}

fn criterion_2() -> Outcome {
    let pairs: Vec<(&str, Graph, Graph)> = vec![
        ("C1,C3", cycle(1), cycle(3)),
        ("C2,C3", cycle(2), cycle(3)),
        ("R1,C2", rose(1), cycle(2)),
        ("C3,C3", cycle(3), cycle(3)),
        ("R2,R2", rose(2), rose(2)),
        ("Θ3,Θ3", theta(3), theta(3)),
        ("P2,P2", path(2), path(2)),
        ("P3,P3", path(3), path(3)),
        ("P2,P3", path(2), path(3)),
        ("P3,P4", path(3), path(4)),
        ("R2,C3", rose(2), cycle(3)),
        ("Θ3,C2", theta(3), cycle(2)),
        ("L,L", lollipop(), lollipop()),
        ("L,P3", lollipop(), path(3)),
        ("L,C3", lollipop(), cycle(3)),
    ];
    let mut lines = Vec::new();
    for (name, a, b) in &pairs {
        if a.num_darts() > 6 || b.num_darts() > 6 {
            return Err(format!("{name}: fixture is not tiny"));
        }
        let exists = common_cover_exists(a, b).map_err(|e| format!("{name}: {e}"))?.exists;
        let (found, _) = brute_common_cover(a, b, 4, DEFAULT_BUDGET).map_err(|e| format!("{name}: {e}"))?;
        if exists != found.is_some() {
            return Err(format!("{name}: refinement says {exists}, oracle says {}", found.is_some()));
        }
        if let Some(c) = &found {
            let sys = build_star_system(a, b, Strategy::DrFull, None).map_err(|e| format!("{name}: {e}"))?;
            let bc = build_cover(&sys, &BuildOptions::default()).map_err(|e| format!("{name}: {e}"))?;
            if bc.graph.num_vertices() < c.graph.num_vertices() {
                return Err(format!("{name}: built cover smaller than the oracle minimum"));
            }
            lines.push(format!("{name}={}/{}", c.graph.num_vertices(), bc.graph.num_vertices()));
        }
    }
    let (c3, c4) = (cycle(3), cycle(4));
    let (found, _) = brute_common_cover(&c3, &c4, 4, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let oracle_min = found.map(|c| c.graph.num_vertices());
    let sys = build_star_system(&c3, &c4, Strategy::DrFull, None).map_err(|e| e.to_string())?;
    let built = build_cover(&sys, &BuildOptions::default()).map_err(|e| e.to_string())?.graph.num_vertices();
    if oracle_min != Some(12) || built != 12 {
        return Err(format!("C3,C4: oracle minimum {oracle_min:?}, built least component {built}"));
    }
    Ok(format!(
        "{} tiny pairs agree; oracle/built sizes {}; C3,C4 oracle 12, built 12",
        pairs.len(),
        lines.join(" ")
    ))
}

fn ball_fixtures() -> Vec<(&'static str, Graph, Graph)> {
    vec![
        ("C3,C3", cycle(3), cycle(3)),
        ("C3,C4", cycle(3), cycle(4)),
        ("K4,Θ3", complete(4), theta(3)),
    ]
}

fn criterion_3() -> Outcome {
    let mut lines = Vec::new();
    for (name, g1, g2) in ball_fixtures() {
        for r in [1, 2] {
            let tag = format!("{name} R={r}");
            let bs = build_ball_system(&g1, &g2, &BallOptions { radius: r, ..Default::default() })
                .map_err(|e| format!("{tag}: {e}"))?;
            let low = bs.lower().map_err(|e| format!("{tag}: {e}"))?;
            for based in [false, true] {
                let component = if based {
                    ComponentChoice::ContainingArrow(bs.base_arrow())
                } else {
                    ComponentChoice::Least
                };
                let bc = build_cover(&low, &BuildOptions { component, ..Default::default() })
                    .map_err(|e| format!("{tag}: {e}"))?;
                if !covers(&bc.graph, &g1, &bc.mu1) || !covers(&bc.graph, &g2, &bc.mu2) {
                    return Err(format!("{tag}: not a common cover"));
                }
                let cert = extract_phi(&bc, &bs, 3, based).map_err(|e| format!("{tag}: {e}"))?;
                let witness_bad: usize = cert.entries.iter().map(|e| e.witness_mismatches).sum();
                if cert.mismatched_darts != 0 || witness_bad != 0 {
                    return Err(format!(
                        "{tag}: {} mismatched darts, {witness_bad} witness mismatches",
                        cert.mismatched_darts
                    ));
                }
                if based && cert.fixes_base_ball != Some(true) {
                    return Err(format!("{tag}: based φ does not fix the base ball"));
                }
                if !based {
                    lines.push(format!("{tag}: {} vertices, {} balls", bc.graph.num_vertices(), cert.entries.len()));
                }
            }
        }
    }
    Ok(lines.join("; "))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for (name, g1, g2) in ball_fixtures() {
        for r in [1u32, 2] {
            let tag = format!("{name} R={r}");
            let bs = build_ball_system(&g1, &g2, &BallOptions { radius: r as usize, ..Default::default() })
                .map_err(|e| format!("{tag}: {e}"))?;
            let low = bs.lower().map_err(|e| e.to_string())?;
            let bc = build_cover(&low, &BuildOptions::default()).map_err(|e| e.to_string())?;
            let params = BoundParams {
                v: Some((g1.num_vertices() + g2.num_vertices()) as u64),
                d: Some(g1.max_degree().max(g2.max_degree()) as u64),
                r: Some(r),
                actual: Some(bc.graph.num_vertices() as u64),
                ..Default::default()
            };
            let rep = bound_report(BoundKind::Ball, &params).map_err(|e| e.to_string())?;
            if rep.satisfied != Some(true) {
                return Err(format!("{tag}: {} vertices exceed the ball bound", bc.graph.num_vertices()));
            }
            let div = check_ball_divisors(&bs).map_err(|e| e.to_string())?;
            if !div.ok() {
                return Err(format!("{tag}: divisor failures {:?}", div.failures));
            }
            checked += 1;
        }
    }
    for m in [3, 4, 5] {
        let (x1, x2, seeds) = rotation_example(m);
        let sys = close_star_maps(&x1, &x2, &seeds).map_err(|e| e.to_string())?;
        let div = check_object_divisors(&sys).map_err(|e| e.to_string())?;
        if !div.ok() {
            return Err(format!("rotation {m}: divisor failures {:?}", div.failures));
        }
        checked += 1;
    }
    for n in 1..=30u64 {
        let exact = landau_exact(n as usize);
        let brute = brute_landau(n).map_err(|e| e.to_string())?;
        if exact.to_u64() != Some(brute) {
            return Err(format!("g({n}): exact {exact}, partitions {brute}"));
        }
        let nf = n as f64;
        if (brute as f64).ln() > 1.05313 * (nf * nf.ln()).sqrt() {
            return Err(format!("g({n}) = {brute} exceeds exp(1.05313 sqrt(n ln n))"));
        }
    }
    Ok(format!("{checked} systems within bounds and divisors; landau agrees for n ≤ 30"))
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    for (name, g1, g2, cap) in [
        ("K4,K33", complete(4), complete_bipartite(3, 3), 48),
        ("K5,K5", complete(5), complete(5), 25),
        ("C5,C3", cycle(5), cycle(3), 15),
    ] {
        for g in [&g1, &g2] {
            let fz = factorize_regular(g).map_err(|e| format!("{name}: {e}"))?;
            check_factors(g, &fz).map_err(|e| format!("{name}: factor check: {e}"))?;
        }
        let rc = regular_common_cover(&g1, &g2).map_err(|e| format!("{name}: {e}"))?;
        if !covers(&rc.graph, &g1, &rc.mu1) || !covers(&rc.graph, &g2, &rc.mu2) {
            return Err(format!("{name}: not a common cover"));
        }
        let nv = rc.graph.num_vertices();
        if nv > cap {
            return Err(format!("{name}: {nv} vertices > {cap}"));
        }
        lines.push(format!("{name}: {nv} ≤ {cap}"));
    }
    Ok(lines.join("; "))
}

fn criterion_6() -> Outcome {
    let mut lines = Vec::new();
    let mut glued = 0;
    for (name, a, b) in ball_fixtures() {
        for subdivided in [false, true] {
            let (g1, g2) = if subdivided {
                (subdivide_oriented(&a), subdivide_oriented(&b))
            } else {
                (a.clone(), b.clone())
            };
            for r in [1, 2] {
                let tag = format!("{name}{} R={r}", if subdivided { " (subdivided)" } else { "" });
                let bs = match build_ball_system(&g1, &g2, &BallOptions { radius: r, ..Default::default() }) {
                    Ok(bs) if bs.axioms.all() => bs,
                    _ => continue,
                };
                let sys = bs.lower().map_err(|e| format!("{tag}: {e}"))?;
                let en = match enumerate_pairs(&sys) {
                    Ok(en) => en,
                    Err(Error::OrientationRequired(_)) if !subdivided => {
                        lines.push(format!("{tag}: needs subdivision"));
                        continue;
                    }
                    Err(e) => return Err(format!("{tag}: {e}")),
                };
                let w = gluing_weights(&sys, &en).map_err(|e| format!("{tag}: {e}"))?;
                let n: u64 = w.n.parse().unwrap();
                for (k, f) in en.faces.iter().enumerate() {
                    let left: u64 = f.left.iter().map(|&p| w.omega[p]).sum();
                    let right: u64 = f.right.iter().map(|&p| w.omega[p]).sum();
                    let want = n / sys.atoms[f.atom].orbit;
                    if left != right || left != want || w.face_sums[k] != (left, right, want) {
                        return Err(format!("{tag}: face {k} sums {left}/{right}, expected {want}"));
                    }
                }
                let gc = assemble(&sys, &en, &w, 1, ComponentChoice::All).map_err(|e| format!("{tag}: {e}"))?;
                if !covers(&gc.graph, &g1, &gc.mu1) || !covers(&gc.graph, &g2, &gc.mu2) {
                    return Err(format!("{tag}: assembly is not a common cover"));
                }
                let comps = gc.graph.components();
                if comps.iter().map(Vec::len).collect::<Vec<_>>() != gc.component_sizes {
                    return Err(format!("{tag}: reported component sizes disagree"));
                }
                for c in &comps {
                    let (sub, vs, ds) = gc.graph.induced(c);
                    let restrict = |m: &GraphMorphism| GraphMorphism {
                        vmap: vs.iter().map(|&v| m.vertex(v)).collect(),
                        dmap: ds.iter().map(|&d: &DartId| m.dart(d)).collect(),
                    };
                    if !covers(&sub, &g1, &restrict(&gc.mu1)) || !covers(&sub, &g2, &restrict(&gc.mu2)) {
                        return Err(format!("{tag}: a component does not verify"));
                    }
                }
                glued += 1;
                lines.push(format!("{tag}: {} faces, components {:?}", en.faces.len(), gc.component_sizes));
            }
        }
    }
    if glued == 0 {
        return Err("no fixture could be glued".into());
    }
    Ok(lines.join("; "))
}

fn criterion_7() -> Outcome {
    let (x1, x2, seeds) = rotation_example(3);
    let sys = close_star_maps(&x1, &x2, &seeds).map_err(|e| e.to_string())?;
    let oc = build_object_cover(&sys, &BuildOptions::default()).map_err(|e| e.to_string())?;
    let w = &oc.w.graph;
    let circuit = w.is_connected() && w.vertices().all(|v| w.degree(v) == 2);
    let len = w.num_vertices();
    if !circuit || len % 3 != 0 {
        return Err(format!("rotation cover is not a circuit of length ≡ 0 mod 3 ({len} vertices)"));
    }
    let c1 = verify_object_covering(&oc.w, &x1, &oc.mu1);
    let c2 = verify_object_covering(&oc.w, &x2, &oc.mu2);
    if c1.failures + c2.failures != 0 || !c1.ok || !c2.ok {
        return Err(format!("square failures: {:?} / {:?}", c1.first_failure, c2.first_failure));
    }

    let x = ObjectGraph::constant(cycle(4), FiniteObject::directed_cycle(3));
    let id_seeds: Vec<StarMap> = x
        .graph
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
        .collect();
    let sys = close_star_maps(&x, &x, &id_seeds).map_err(|e| e.to_string())?;
    let oc2 = build_object_cover(&sys, &BuildOptions::default()).map_err(|e| e.to_string())?;
    if !are_isomorphic(&oc2.w.graph, &x.graph) {
        return Err("identity seeds do not return the input".into());
    }
    let c3 = verify_object_covering(&oc2.w, &x, &oc2.mu1);
    if c3.failures != 0 {
        return Err(format!("identity cover has {} square failures", c3.failures));
    }
    Ok(format!("rotation circuit of length {len}; identity seeds return C4; zero square failures"))
}

fn run(bin: &str, dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(bin).current_dir(dir).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(())
}

fn artifacts(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    for e in walk(dir) {
        let rel = e.strip_prefix(dir).unwrap().display().to_string();
        out.push((rel, std::fs::read(&e).unwrap()));
    }
    out.sort();
    out
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut files = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            files.extend(walk(&p));
        } else {
            files.push(p);
        }
    }
    files
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_leighton");
    let runs: Vec<Vec<&str>> = vec![
        vec!["fixture", "c3", "-o", "c3.json"],
        vec!["fixture", "c4", "-o", "c4.json"],
        vec!["fixture", "k4", "-o", "k4.json"],
        vec!["fixture", "theta3", "-o", "theta3.json"],
        vec!["fixture", "k33", "-o", "k33.json"],
        vec!["fixture", "rotation-3", "-o", "rot"],
        vec!["build", "c3.json", "c4.json", "--backend", "star", "--strategy", "dr", "-o", "star"],
        vec!["build", "c3.json", "c4.json", "--backend", "star", "--strategy", "theta", "--component", "all", "-o", "theta"],
        vec!["build", "k4.json", "theta3.json", "--backend", "ball", "-R", "2", "-o", "ball"],
        vec!["build", "k4.json", "theta3.json", "--backend", "ball", "-R", "1", "--based", "-o", "based"],
        vec!["build", "k4.json", "theta3.json", "--backend", "glue", "--subdivide", "-o", "glue"],
        vec!["build-objects", "rot/x1.json", "rot/x2.json", "--seeds", "rot/seeds.json", "-o", "objects"],
        vec!["regular", "k4.json", "k33.json", "-o", "regular"],
        vec!["oracle", "c3.json", "c4.json", "--max", "4", "-o", "oracle"],
        vec!["export-dot", "star/cover.json", "-o", "star/cover.dot"],
    ];
    let mut snapshots = Vec::new();
    for _ in 0..2 {
        let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
        for args in &runs {
            run(bin, tmp.path(), args)?;
        }
        snapshots.push(artifacts(tmp.path()));
    }
    if snapshots[0] != snapshots[1] {
        let diff: Vec<&String> = snapshots[0]
            .iter()
            .zip(&snapshots[1])
            .filter(|(a, b)| a != b)
            .map(|(a, _)| &a.0)
            .collect();
        return Err(format!("artifacts differ: {diff:?}"));
    }
    let bytes: usize = snapshots[0].iter().map(|(_, b)| b.len()).sum();
    Ok(format!("{} artifacts ({bytes} bytes) byte-identical across two runs", snapshots[0].len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 leighton core", criterion_1),
        ("2 oracle equivalence", criterion_2),
        ("3 ball-restricted", criterion_3),
        ("4 bounds", criterion_4),
        ("5 regular fast path", criterion_5),
        ("6 gluing", criterion_6),
        ("7 graphs of objects", criterion_7),
        ("8 determinism", criterion_8),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let t = std::time::Instant::now();
        match f() {
            Ok(detail) => println!("PASS criterion {name} ({:.1}s): {detail}", t.elapsed().as_secs_f64()),
            Err(detail) => {
                println!("FAIL criterion {name} ({:.1}s): {detail}", t.elapsed().as_secs_f64());
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

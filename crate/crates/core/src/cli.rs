//! Command-line front end.
//!
//! Exit codes: 0 success or a positive answer, 1 a negative answer or a
//! refused construction, 2 an input error, 3 an internal verification
//! failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::ball_system::{build_ball_system, BallOptions};
use crate::bounds::{bound_report, BoundKind, BoundParams};
use crate::cover_builder::phi::extract_phi;
use crate::cover_builder::{build_cover, BuildOptions, BuiltCover, ComponentChoice, Counting, LocalSystem};
use crate::error::{Error, Result};
use crate::gluing::{assemble, enumerate_pairs, gluing_weights, subdivide_oriented};
use crate::graph::fixtures::by_name;
use crate::graph::{is_covering, CoveringCheck, Graph, GraphMorphism};
use crate::io::{self, CoverFile, ObjectCoverFile, Provenance, SeedsFile};
use crate::object_graphs::{build_object_cover, close_star_maps, rotation_example, verify_object_covering};
use crate::oracle::{brute_common_cover, DEFAULT_BUDGET};
use crate::refinement::common_cover_exists;
use crate::regular::regular_common_cover;
use crate::star_system::{build_star_system, Strategy};

#[derive(Parser, Debug)]
#[command(name = "leighton", version, about = "Common finite covers of finite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Star,
    Ball,
    Glue,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Dr,
    Theta,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComponentArg {
    Least,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Leighton,
    Ball,
    Objects,
    Regular,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether two graphs have a common finite cover.
    Check { a: PathBuf, b: PathBuf },
    /// Build, verify and store a common cover.
    Build {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "star")]
        backend: Backend,
        #[arg(long, value_enum, default_value = "dr")]
        strategy: StrategyArg,
        #[arg(short = 'R', long = "radius", default_value_t = 1)]
        radius: usize,
        #[arg(long)]
        explore: Option<usize>,
        #[arg(long, value_enum, default_value = "least")]
        component: ComponentArg,
        /// Keep the component through the base arrow and check that φ fixes the base ball.
        #[arg(long)]
        based: bool,
        #[arg(long, default_value_t = 3)]
        phi_radius: usize,
        /// Gluing: multiply every weight by this factor.
        #[arg(long, default_value_t = 1)]
        scale: u64,
        /// Gluing: subdivide both graphs with oriented colours first.
        #[arg(long)]
        subdivide: bool,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Close seed star maps between two graphs of objects and build the cover.
    BuildObjects {
        x1: PathBuf,
        x2: PathBuf,
        #[arg(long)]
        seeds: PathBuf,
        #[arg(long, value_enum, default_value = "least")]
        component: ComponentArg,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Re-verify a stored cover against its targets.
    Verify { cover: PathBuf, a: PathBuf, b: PathBuf },
    /// Evaluate a size bound.
    Bounds {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        e: Option<u64>,
        #[arg(long)]
        v_prime: Option<u64>,
        #[arg(long)]
        v: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(short = 'R', long = "radius")]
        r: Option<u32>,
        #[arg(long)]
        lcm: Option<u64>,
        #[arg(long)]
        v1: Option<u64>,
        #[arg(long)]
        v2: Option<u64>,
        #[arg(long)]
        odd: bool,
        #[arg(long)]
        actual: Option<u64>,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Fiber product over a common base for regular graphs of equal degree.
    Regular {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        component: ComponentArg,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Render a graph, cover or object-graph file in dot format.
    ExportDot {
        file: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Write a named fixture graph (`c5`, `p3`, `r2`, `theta3`, `k4`, `k33`)
    /// or, with `rotation-M`, the rotation object graphs and seeds into a directory.
    Fixture {
        name: String,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for a least common cover.
    Oracle {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "max", default_value_t = 4)]
        max: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

/// Exit code for an error value.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema { .. }
        | Error::Io(_)
        | Error::InvalidGraph(_)
        | Error::UnknownVertex(_)
        | Error::UnknownDart(_)
        | Error::MissingParameters(_)
        | Error::OutOfRange(_)
        | Error::NotRegular
        | Error::DegreeMismatch(..)
        | Error::NotConnected
        | Error::SeedRejected(_) => 2,
        Error::Verification(_) | Error::PhiEscaped(_) | Error::Witness(_) | Error::GluingImbalance(_) => 3,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut stdout = String::new();
    let code = match execute_command(&cli.command, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    print!("{stdout}");
    code
}

fn load_graph(p: &Path) -> Result<Graph> {
    io::parse_graph(&io::read_file(p)?).map_err(|e| with_file(e, p))
}

fn with_file(e: Error, p: &Path) -> Error {
    match e {
        Error::Schema { location, detail } => Error::Schema {
            location: format!("{}: {location}", p.display()),
            detail,
        },
        e => e,
    }
}

fn write_out(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let p = dir.join(name);
    std::fs::write(&p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

fn component(c: ComponentArg) -> ComponentChoice {
    match c {
        ComponentArg::Least => ComponentChoice::Least,
        ComponentArg::All => ComponentChoice::All,
    }
}

fn require_covering(src: &Graph, tgt: &Graph, m: &GraphMorphism, what: &str) -> Result<()> {
    match is_covering(src, tgt, m)? {
        CoveringCheck::Covering => Ok(()),
        CoveringCheck::Fails(f) => Err(Error::Verification(format!("{what}: {f:?}"))),
    }
}

fn provenance(sys: &LocalSystem, bc: &BuiltCover) -> Provenance {
    let g = &bc.graph;
    Provenance {
        vertices: g
            .vertices()
            .map(|v| (g.vertex_name(v).into(), sys.arrows[bc.vertex_prov[v.idx()].0].label.clone()))
            .collect(),
        darts: g
            .darts()
            .map(|d| (g.dart_name(d).into(), sys.atoms[bc.dart_prov[d.idx()].0].label.clone()))
            .collect(),
    }
}

#[derive(Serialize)]
struct BuildReport {
    backend: String,
    vertices: usize,
    darts: usize,
    degrees: (u64, u64),
    component_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counting: Option<Counting>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    details: BTreeMap<String, serde_json::Value>,
}

fn json_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

/// Runs one command, appending its standard output to `out`.
pub fn execute_command(cmd: &Command, out: &mut String) -> Result<i32> {
    match cmd {
        Command::Check { a, b } => {
            let (g1, g2) = (load_graph(a)?, load_graph(b)?);
            let jb = common_cover_exists(&g1, &g2)?;
            out.push_str(if jb.exists { "true\n" } else { "false\n" });
            for (x, y) in jb.correspondence() {
                let names1: Vec<&str> = x.iter().map(|&v| g1.vertex_name(v)).collect();
                let names2: Vec<&str> = y.iter().map(|&v| g2.vertex_name(v)).collect();
                out.push_str(&format!("{{{}}} <-> {{{}}}\n", names1.join(","), names2.join(",")));
            }
            Ok(if jb.exists { 0 } else { 1 })
        }
        Command::Build {
            a,
            b,
            backend,
            strategy,
            radius,
            explore,
            component: comp,
            based,
            phi_radius,
            scale,
            subdivide,
            max_vertices,
            out: dir,
        } => {
            let (mut g1, mut g2) = (load_graph(a)?, load_graph(b)?);
            if *subdivide {
                g1 = subdivide_oriented(&g1);
                g2 = subdivide_oriented(&g2);
            }
            let mut details = BTreeMap::new();
            let opts = BuildOptions {
                component: component(*comp),
                max_vertices: *max_vertices,
            };
            let ball_opts = BallOptions {
                radius: *radius,
                explore: *explore,
                ..Default::default()
            };
            let report = match backend {
                Backend::Star => {
                    let s = match strategy {
                        StrategyArg::Dr => Strategy::DrFull,
                        StrategyArg::Theta => Strategy::Theta,
                    };
                    let sys = build_star_system(&g1, &g2, s, *explore)?;
                    let bc = build_cover(&sys, &opts)?;
                    write_cover(dir, &bc.graph, &g1, &g2, &bc.mu1, &bc.mu2, Some(provenance(&sys, &bc)))?;
                    details.insert("n".into(), json_value(&bc.n.to_string()));
                    details.insert("axioms".into(), json_value(&sys.axioms));
                    built_report(&sys, &bc, details)
                }
                Backend::Ball => {
                    let bs = build_ball_system(&g1, &g2, &ball_opts)?;
                    let sys = bs.lower()?;
                    let opts = if *based {
                        BuildOptions {
                            component: ComponentChoice::ContainingArrow(bs.base_arrow()),
                            ..opts
                        }
                    } else {
                        opts
                    };
                    let bc = build_cover(&sys, &opts)?;
                    let cert = extract_phi(&bc, &bs, *phi_radius, *based)?;
                    write_cover(dir, &bc.graph, &g1, &g2, &bc.mu1, &bc.mu2, Some(provenance(&sys, &bc)))?;
                    write_out(dir, "phi.json", &io::to_json(&cert))?;
                    details.insert("n".into(), json_value(&bc.n.to_string()));
                    details.insert("system".into(), json_value(&bs.report()));
                    details.insert("phi_ok".into(), json_value(&cert.ok()));
                    let r = built_report(&sys, &bc, details);
                    if !cert.ok() {
                        write_out(dir, "report.json", &io::to_json(&r))?;
                        return Err(Error::Verification(format!(
                            "phi certificate has {} mismatched darts",
                            cert.mismatched_darts
                        )));
                    }
                    r
                }
                Backend::Glue => {
                    let bs = build_ball_system(&g1, &g2, &ball_opts)?;
                    let sys = bs.lower()?;
                    let en = enumerate_pairs(&sys)?;
                    let w = gluing_weights(&sys, &en)?;
                    let gc = assemble(&sys, &en, &w, *scale, component(*comp))?;
                    let prov = Provenance {
                        vertices: gc
                            .graph
                            .vertices()
                            .map(|v| {
                                let p = gc.vertex_prov[v.idx()].0;
                                (gc.graph.vertex_name(v).into(), sys.arrows[p].label.clone())
                            })
                            .collect(),
                        darts: BTreeMap::new(),
                    };
                    write_cover(dir, &gc.graph, &g1, &g2, &gc.mu1, &gc.mu2, Some(prov))?;
                    details.insert("weights".into(), json_value(&w));
                    details.insert("total_vertices".into(), json_value(&gc.total_vertices));
                    let nv = gc.graph.num_vertices() as u64;
                    BuildReport {
                        backend: "glue".into(),
                        vertices: gc.graph.num_vertices(),
                        darts: gc.graph.num_darts(),
                        degrees: (nv / g1.num_vertices() as u64, nv / g2.num_vertices() as u64),
                        component_sizes: gc.component_sizes.clone(),
                        counting: None,
                        details,
                    }
                }
            };
            write_out(dir, "report.json", &io::to_json(&report))?;
            out.push_str(&format!(
                "{} vertices, degrees {} and {}\n",
                report.vertices, report.degrees.0, report.degrees.1
            ));
            Ok(0)
        }
        Command::BuildObjects {
            x1,
            x2,
            seeds,
            component: comp,
            max_vertices,
            out: dir,
        } => {
            let load = |p: &PathBuf| io::parse_object_graph(&io::read_file(p)?).map_err(|e| with_file(e, p));
            let (x1, x2) = (load(x1)?, load(x2)?);
            let sf: SeedsFile = io::parse_json(&io::read_file(seeds)?, "seeds").map_err(|e| with_file(e, seeds))?;
            let seeds = io::seeds_from_file(&x1, &x2, &sf).map_err(|e| with_file(e, seeds))?;
            let sys = close_star_maps(&x1, &x2, &seeds)?;
            let oc = build_object_cover(
                &sys,
                &BuildOptions {
                    component: component(*comp),
                    max_vertices: *max_vertices,
                },
            )?;
            let low = sys.lower()?;
            let file = io::object_cover_file(&oc.w, &x1, &x2, &oc.mu1, &oc.mu2, Some(provenance(&low, &oc.built)));
            write_out(dir, "cover.json", &io::to_json(&file))?;
            let mut details = BTreeMap::new();
            details.insert(
                "isotropy".into(),
                json_value(
                    &sys.isotropy
                        .iter()
                        .map(|(e, n)| (format!("{}:{}", e.side, dart_name(&x1.graph, &x2.graph, e.side, e.d)), *n))
                        .collect::<BTreeMap<_, _>>(),
                ),
            );
            details.insert("arrows".into(), json_value(&sys.gpd.len()));
            let report = built_report(&low, &oc.built, details);
            write_out(dir, "report.json", &io::to_json(&report))?;
            out.push_str(&format!(
                "{} vertices, degrees {} and {}\n",
                report.vertices, report.degrees.0, report.degrees.1
            ));
            Ok(0)
        }
        Command::Verify { cover, a, b } => {
            let text = io::read_file(cover)?;
            let kind: serde_json::Value = io::parse_json(&text, "cover").map_err(|e| with_file(e, cover))?;
            if kind.get("kind").and_then(|k| k.as_str()) == Some("object-cover") {
                let load = |p: &PathBuf| io::parse_object_graph(&io::read_file(p)?).map_err(|e| with_file(e, p));
                let (x1, x2) = (load(a)?, load(b)?);
                let f: ObjectCoverFile = io::parse_json(&text, "cover").map_err(|e| with_file(e, cover))?;
                let (w, mu1, mu2) = io::object_cover_from_file(&f, &x1, &x2).map_err(|e| with_file(e, cover))?;
                let c1 = verify_object_covering(&w, &x1, &mu1);
                let c2 = verify_object_covering(&w, &x2, &mu2);
                for (name, c) in [("mu1", &c1), ("mu2", &c2)] {
                    match &c.first_failure {
                        None => out.push_str(&format!("{name}: object covering\n")),
                        Some(f) => out.push_str(&format!("{name}: {} failures, first: {f}\n", c.failures)),
                    }
                }
                return Ok(if c1.ok && c2.ok { 0 } else { 1 });
            }
            let (g1, g2) = (load_graph(a)?, load_graph(b)?);
            let f: CoverFile = io::parse_json(&text, "cover").map_err(|e| with_file(e, cover))?;
            let (g, mu1, mu2) = io::cover_from_file(&f, &g1, &g2).map_err(|e| with_file(e, cover))?;
            let mut ok = true;
            for (name, tgt, m) in [("mu1", &g1, &mu1), ("mu2", &g2, &mu2)] {
                match is_covering(&g, tgt, m) {
                    Ok(CoveringCheck::Covering) => out.push_str(&format!("{name}: covering\n")),
                    Ok(CoveringCheck::Fails(f)) => {
                        ok = false;
                        out.push_str(&format!("{name}: not a covering ({f:?})\n"));
                    }
                    Err(e) => {
                        ok = false;
                        out.push_str(&format!("{name}: {e}\n"));
                    }
                }
            }
            out.push_str(&format!("{} vertices\n", g.num_vertices()));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Bounds {
            kind,
            e,
            v_prime,
            v,
            d,
            r,
            lcm,
            v1,
            v2,
            odd,
            actual,
            json,
        } => {
            let kind = match kind {
                KindArg::Leighton => BoundKind::Leighton,
                KindArg::Ball => BoundKind::Ball,
                KindArg::Objects => BoundKind::Objects,
                KindArg::Regular => BoundKind::Regular,
            };
            let params = BoundParams {
                e: *e,
                v_prime: *v_prime,
                v: *v,
                d: *d,
                r: *r,
                lcm: *lcm,
                v1: *v1,
                v2: *v2,
                odd: (kind == BoundKind::Regular).then_some(*odd),
                actual: *actual,
            };
            let rep = bound_report(kind, &params)?;
            match (&rep.exact, rep.ceiling()) {
                (Some(x), _) => out.push_str(&format!("{x}\n")),
                (None, Some(c)) => out.push_str(&format!("{c}\n")),
                (None, None) => out.push_str(&format!("exp({:.6})\n", rep.ln_bound.hi)),
            }
            if *json {
                out.push_str(&io::to_json(&rep));
            }
            Ok(if rep.satisfied == Some(false) { 1 } else { 0 })
        }
        Command::Regular { a, b, component: comp, out: dir } => {
            let (g1, g2) = (load_graph(a)?, load_graph(b)?);
            let rc = regular_common_cover(&g1, &g2)?;
            let (g, mu1, mu2) = match comp {
                ComponentArg::All => (rc.graph.clone(), rc.mu1.clone(), rc.mu2.clone()),
                ComponentArg::Least => rc.least_component(),
            };
            require_covering(&g, &g1, &mu1, "projection to A")?;
            require_covering(&g, &g2, &mu2, "projection to B")?;
            write_cover(dir, &g, &g1, &g2, &mu1, &mu2, None)?;
            let mut details = BTreeMap::new();
            details.insert("degree".into(), json_value(&rc.degree));
            details.insert("bound".into(), json_value(&rc.bound));
            let nv = g.num_vertices() as u64;
            let report = BuildReport {
                backend: "regular".into(),
                vertices: g.num_vertices(),
                darts: g.num_darts(),
                degrees: (nv / g1.num_vertices() as u64, nv / g2.num_vertices() as u64),
                component_sizes: rc.component_sizes.clone(),
                counting: None,
                details,
            };
            write_out(dir, "report.json", &io::to_json(&report))?;
            out.push_str(&format!("{} vertices (bound {})\n", report.vertices, rc.bound));
            Ok(0)
        }
        Command::ExportDot { file, out: dest } => {
            let text = io::read_file(file)?;
            let v: serde_json::Value = io::parse_json(&text, "input").map_err(|e| with_file(e, file))?;
            let g = match v.get("kind").and_then(|k| k.as_str()) {
                Some("graph-cover") => {
                    let f: CoverFile = io::parse_json(&text, "cover").map_err(|e| with_file(e, file))?;
                    io::graph_from_file(&f.graph).map_err(|e| with_file(e, file))?
                }
                Some("object-cover") => {
                    let f: ObjectCoverFile = io::parse_json(&text, "cover").map_err(|e| with_file(e, file))?;
                    io::object_graph_from_file(&f.graph).map_err(|e| with_file(e, file))?.graph
                }
                _ if v.get("objects").is_some() => io::parse_object_graph(&text).map_err(|e| with_file(e, file))?.graph,
                _ => io::parse_graph(&text).map_err(|e| with_file(e, file))?,
            };
            let dot = io::to_dot(&g);
            match dest {
                Some(p) => std::fs::write(p, dot).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => out.push_str(&dot),
            }
            Ok(0)
        }
        Command::Fixture { name, out: dest } => {
            if let Some(m) = name.strip_prefix("rotation-") {
                let m: usize = m
                    .parse()
                    .ok()
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| Error::OutOfRange(format!("rotation order {m:?}")))?;
                let dir = dest
                    .as_ref()
                    .ok_or_else(|| Error::MissingParameters("-o DIR".into()))?;
                let (x1, x2, seeds) = rotation_example(m);
                write_out(dir, "x1.json", &io::to_json(&io::object_graph_file(&x1)))?;
                write_out(dir, "x2.json", &io::to_json(&io::object_graph_file(&x2)))?;
                write_out(dir, "seeds.json", &io::to_json(&io::seeds_file(&x1, &x2, &seeds)))?;
                return Ok(0);
            }
            let g = by_name(name).ok_or_else(|| Error::OutOfRange(format!("unknown fixture {name:?}")))?;
            let text = io::serialize_graph(&g);
            match dest {
                Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => out.push_str(&text),
            }
            Ok(0)
        }
        Command::Oracle {
            a,
            b,
            max,
            budget,
            out: dest,
        } => {
            let (g1, g2) = (load_graph(a)?, load_graph(b)?);
            let (found, stats) = brute_common_cover(&g1, &g2, *max, *budget)?;
            #[derive(Serialize)]
            struct OracleSummary<'a> {
                found: bool,
                vertices: Option<usize>,
                degree_over_a: Option<usize>,
                stats: &'a crate::oracle::OracleStats,
            }
            let summary = OracleSummary {
                found: found.is_some(),
                vertices: found.as_ref().map(|c| c.graph.num_vertices()),
                degree_over_a: found.as_ref().map(|c| c.degree),
                stats: &stats,
            };
            out.push_str(&io::to_json(&summary));
            if let (Some(c), Some(dir)) = (&found, dest) {
                write_cover(dir, &c.graph, &g1, &g2, &c.mu1, &c.mu2, None)?;
            }
            Ok(if found.is_some() { 0 } else { 1 })
        }
    }
}

fn dart_name(g1: &Graph, g2: &Graph, side: u8, d: crate::graph::DartId) -> String {
    if side == 1 { g1.dart_name(d) } else { g2.dart_name(d) }.to_string()
}

fn built_report(sys: &LocalSystem, bc: &BuiltCover, details: BTreeMap<String, serde_json::Value>) -> BuildReport {
    BuildReport {
        backend: sys.backend.clone(),
        vertices: bc.graph.num_vertices(),
        darts: bc.graph.num_darts(),
        degrees: bc.degrees,
        component_sizes: bc.component_sizes.clone(),
        counting: Some(bc.counting.clone()),
        details,
    }
}

fn write_cover(
    dir: &Path,
    g: &Graph,
    a: &Graph,
    b: &Graph,
    mu1: &GraphMorphism,
    mu2: &GraphMorphism,
    prov: Option<Provenance>,
) -> Result<()> {
    require_covering(g, a, mu1, "projection to A")?;
    require_covering(g, b, mu2, "projection to B")?;
    write_out(dir, "cover.json", &io::to_json(&io::cover_file(g, a, b, mu1, mu2, prov)))
}

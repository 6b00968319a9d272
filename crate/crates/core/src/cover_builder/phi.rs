//! The tree automorphism `φ` of a ball-system cover, on a finite ball.
//!
//! `ν1: T1 -> G` lifts `p1` through `μ1` starting at a chosen vertex `w0`,
//! and `ψ = ν2 ∘ ...` is read off by pushing lifted paths down with `μ2`
//! and lifting them to `T2` from `ψ(z0)`. Then `φ = θ⁻¹ ψ` and, at every
//! `z`, the restriction of `ψ` to `B_R(z)` is a ball map which must be the
//! arrow stored at `ν1(z)`.

use std::collections::HashMap;

use serde::Serialize;

use super::BuiltCover;
use crate::ball_system::BallSystem;
use crate::error::{Error, Result};
use crate::graph::{DartId, VertexId};
use crate::groupoid::Witness;
use crate::local_iso::{LocalIso, Site};
use crate::universal_cover::{BallShape, DeckWord, TreeVertex};

#[derive(Clone, Debug, Serialize)]
pub struct PhiEntry {
    /// Path of `z` from the basepoint of `T1`, as dart names.
    pub z: Vec<String>,
    /// Cover vertex `ν1(z)`.
    pub vertex: String,
    /// Cross-arrow index stored at `ν1(z)`.
    pub arrow: usize,
    /// Ball nodes where `ψ|B_R(z)` differs from the arrow.
    pub mismatched_darts: usize,
    pub witness: Witness,
    pub decks: Vec<DeckWord>,
    /// Ball nodes where the witness evaluation differs from the arrow.
    pub witness_mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiCertificate {
    pub radius: usize,
    pub test_radius: usize,
    pub based: bool,
    pub entries: Vec<PhiEntry>,
    pub mismatched_darts: usize,
    /// With basing: whether `φ` is the identity on `B_R(z0)`.
    pub fixes_base_ball: Option<bool>,
}

impl PhiCertificate {
    pub fn ok(&self) -> bool {
        self.mismatched_darts == 0 && self.fixes_base_ball != Some(false)
    }
}

/// Builds `φ` on `B_{test_radius + R}(z0)` and certifies every ball.
pub fn extract_phi(bc: &BuiltCover, sys: &BallSystem, test_radius: usize, based: bool) -> Result<PhiCertificate> {
    let g = &bc.graph;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let r = sys.radius();
    let cross = sys.cross_arrows();
    let (base1, _) = sys.bases;
    sys.with_theta(|theta| {
        let t1 = theta.t1;
        let t2 = theta.t2;
        let (w0, psi0) = if based {
            let a0 = sys.base_arrow();
            let w0 = bc
                .vertex_of(a0, 1)
                .ok_or_else(|| Error::Verification("the base arrow is not in the selected component".into()))?;
            (w0, theta.image(&TreeVertex::root()))
        } else {
            let w0 = g
                .vertices()
                .find(|&v| bc.mu1.vertex(v) == base1)
                .ok_or_else(|| Error::Verification("no vertex over the basepoint".into()))?;
            (w0, t2.canonical_lift(bc.mu2.vertex(w0)))
        };
        let lift: HashMap<(VertexId, DartId), DartId> = g
            .darts()
            .map(|d| ((g.origin(d), bc.mu1.dart(d)), d))
            .collect();

        let big = BallShape::new(t1.graph(), base1, test_radius + r);
        let mut nu = vec![w0; big.len()];
        let mut psi = vec![psi0.clone(); big.len()];
        for i in 1..big.len() {
            let node = &big.nodes[i];
            let p = node.parent as usize;
            let e = node.dart.unwrap();
            let d = lift[&(nu[p], e)];
            nu[i] = g.terminus(d);
            psi[i] = t2.walk(&psi[p], &[bc.mu2.dart(d)]);
        }

        let mut entries = Vec::new();
        let mut total = 0;
        let mut evals: HashMap<usize, (Vec<DeckWord>, usize)> = HashMap::new();
        for i in 0..big.len() {
            if big.nodes[i].depth as usize > test_radius {
                break;
            }
            let z = TreeVertex(big.path(i));
            let x = t1.project(&z);
            let y = bc.mu2.vertex(nu[i]);
            let a = bc.vertex_prov[nu[i].idx()].0;
            let gi = cross[a];
            let gamma = sys.gpd.arrow(gi);
            let src = Site::new(1, x);
            let tgt = Site::new(2, y);
            if gamma.src != src || gamma.tgt != tgt {
                return Err(Error::PhiEscaped(format!("vertex {} carries an arrow at other sites", g.vertex_name(nu[i]))));
            }
            let a_shape = sys.ctx.shape(src);
            let b_shape = sys.ctx.shape(tgt);
            let mut map = Vec::with_capacity(a_shape.len());
            for k in 0..a_shape.len() {
                let abs = t1.walk(&z, &a_shape.path(k));
                let j = big
                    .find(&abs.0)
                    .ok_or_else(|| Error::Verification("ball leaves the evaluated region".into()))?;
                let rel = t2.relative(&psi[i], &psi[j]);
                match b_shape.find(&rel) {
                    Some(p) => map.push(p as u32),
                    None => return Err(Error::PhiEscaped(format!("ψ is not a ball map at depth {}", z.depth()))),
                }
            }
            let seen = LocalIso { src, tgt, map };
            if !sys.gpd.contains(&seen) {
                return Err(Error::PhiEscaped(format!("ball at depth {} matches no arrow", z.depth())));
            }
            let mismatched = seen.map.iter().zip(&gamma.map).filter(|(u, v)| u != v).count();
            total += mismatched;
            let (decks, wm) = match evals.get(&gi) {
                Some(v) => v.clone(),
                None => {
                    let ev = sys.evaluate_witness(theta, gamma, sys.gpd.witness(gi))?;
                    let v = (ev.decks, ev.mismatches);
                    evals.insert(gi, v.clone());
                    v
                }
            };
            total += wm;
            entries.push(PhiEntry {
                z: z.0.iter().map(|&d| t1.graph().dart_name(d).to_string()).collect(),
                vertex: g.vertex_name(nu[i]).to_string(),
                arrow: a,
                mismatched_darts: mismatched,
                witness: sys.gpd.witness(gi).clone(),
                decks,
                witness_mismatches: wm,
            });
        }
        let fixes_base_ball = based.then(|| {
            (0..big.len())
                .take_while(|&i| big.nodes[i].depth as usize <= r)
                .all(|i| theta.image(&TreeVertex(big.path(i))) == psi[i])
        });
        Ok(PhiCertificate {
            radius: r,
            test_radius,
            based,
            entries,
            mismatched_darts: total,
            fixes_base_ball,
        })
    })
}

//! Finite labelled directed multigraphs and their morphisms.
//!
//! `A`-morphisms are label- and incidence-preserving maps, `B`-morphisms are
//! the bijective ones. The inverse of a bijective morphism is again a
//! morphism, so `B` is closed under inverses and `BAB = A`.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteObject {
    /// Label of every point.
    pub points: Vec<String>,
    /// `(source, target, label)` of every arrow.
    pub arrows: Vec<(u32, u32, String)>,
}

/// A map of points and arrows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjMap {
    pub points: Vec<u32>,
    pub arrows: Vec<u32>,
}

impl FiniteObject {
    /// The directed `n`-cycle with unlabelled points and arrows.
    pub fn directed_cycle(n: usize) -> FiniteObject {
        FiniteObject {
            points: vec!["p".into(); n],
            arrows: (0..n as u32).map(|i| (i, (i + 1) % n as u32, "a".into())).collect(),
        }
    }

    pub fn point() -> FiniteObject {
        FiniteObject {
            points: vec!["p".into()],
            arrows: vec![],
        }
    }
}

impl ObjMap {
    pub fn identity(x: &FiniteObject) -> ObjMap {
        ObjMap {
            points: (0..x.points.len() as u32).collect(),
            arrows: (0..x.arrows.len() as u32).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ObjMap) -> ObjMap {
        ObjMap {
            points: first.points.iter().map(|&i| self.points[i as usize]).collect(),
            arrows: first.arrows.iter().map(|&i| self.arrows[i as usize]).collect(),
        }
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> ObjMap {
        ObjMap {
            points: crate::local_iso::invert(&self.points),
            arrows: crate::local_iso::invert(&self.arrows),
        }
    }

    /// Rotation by `k` of [`FiniteObject::directed_cycle`].
    pub fn rotation(n: usize, k: usize) -> ObjMap {
        let r: Vec<u32> = (0..n).map(|i| ((i + k) % n) as u32).collect();
        ObjMap {
            points: r.clone(),
            arrows: r,
        }
    }
}

/// True when `m` is an `A`-morphism `a -> b`.
pub fn is_morphism(a: &FiniteObject, b: &FiniteObject, m: &ObjMap) -> bool {
    if m.points.len() != a.points.len() || m.arrows.len() != a.arrows.len() {
        return false;
    }
    for (i, &j) in m.points.iter().enumerate() {
        if j as usize >= b.points.len() || a.points[i] != b.points[j as usize] {
            return false;
        }
    }
    for (k, &l) in m.arrows.iter().enumerate() {
        let Some((s2, t2, lab2)) = b.arrows.get(l as usize) else {
            return false;
        };
        let (s, t, lab) = &a.arrows[k];
        if lab != lab2 || m.points[*s as usize] != *s2 || m.points[*t as usize] != *t2 {
            return false;
        }
    }
    true
}

fn is_bijection(m: &[u32], n: usize) -> bool {
    let mut hit = vec![false; n];
    m.len() == n && m.iter().all(|&j| (j as usize) < n && !std::mem::replace(&mut hit[j as usize], true))
}

/// True when `m` is a `B`-morphism `a -> b`.
pub fn is_iso(a: &FiniteObject, b: &FiniteObject, m: &ObjMap) -> bool {
    a.points.len() == b.points.len()
        && a.arrows.len() == b.arrows.len()
        && is_morphism(a, b, m)
        && is_bijection(&m.points, b.points.len())
        && is_bijection(&m.arrows, b.arrows.len())
}

/// All isomorphisms `a -> b`, in lexicographic order.
pub fn isomorphisms(a: &FiniteObject, b: &FiniteObject) -> Vec<ObjMap> {
    let mut out = Vec::new();
    if a.points.len() != b.points.len() || a.arrows.len() != b.arrows.len() {
        return out;
    }
    let n = a.points.len();
    let mut pts = vec![u32::MAX; n];
    let mut used = vec![false; n];
    point_rec(a, b, 0, &mut pts, &mut used, &mut out);
    out
}

fn point_rec(a: &FiniteObject, b: &FiniteObject, i: usize, pts: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<ObjMap>) {
    if i == pts.len() {
        let mut arr = vec![u32::MAX; a.arrows.len()];
        let mut aused = vec![false; b.arrows.len()];
        arrow_rec(a, b, 0, pts, &mut arr, &mut aused, out);
        return;
    }
    for j in 0..b.points.len() {
        if used[j] || a.points[i] != b.points[j] {
            continue;
        }
        pts[i] = j as u32;
        used[j] = true;
        point_rec(a, b, i + 1, pts, used, out);
        used[j] = false;
    }
}

fn arrow_rec(
    a: &FiniteObject,
    b: &FiniteObject,
    k: usize,
    pts: &[u32],
    arr: &mut Vec<u32>,
    used: &mut Vec<bool>,
    out: &mut Vec<ObjMap>,
) {
    if k == arr.len() {
        out.push(ObjMap {
            points: pts.to_vec(),
            arrows: arr.clone(),
        });
        return;
    }
    let (s, t, lab) = &a.arrows[k];
    for (l, (s2, t2, lab2)) in b.arrows.iter().enumerate() {
        if used[l] || lab != lab2 || pts[*s as usize] != *s2 || pts[*t as usize] != *t2 {
            continue;
        }
        arr[k] = l as u32;
        used[l] = true;
        arrow_rec(a, b, k + 1, pts, arr, used, out);
        used[l] = false;
    }
}

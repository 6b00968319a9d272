//! Finite groupoids generated by atoms, groupoid actions, orbits and
//! stabilizers.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An invertible morphism between objects of some ambient finite groupoid.
pub trait Arrow: Clone + Eq + Hash + Ord + Debug {
    type Object: Copy + Eq + Hash + Ord + Debug;
    fn src(&self) -> Self::Object;
    fn tgt(&self) -> Self::Object;
    /// `self ∘ first`; requires `first.tgt() == self.src()`.
    fn after(&self, first: &Self) -> Self;
    fn inverse(&self) -> Self;
}

/// A letter of a generation witness: atom `atom`, or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AtomLetter {
    pub atom: usize,
    pub inv: bool,
}

/// Letters in the order they are applied (the first letter acts first).
pub type Witness = Vec<AtomLetter>;

#[derive(Clone, Debug)]
pub struct FiniteGroupoid<A: Arrow> {
    objects: Vec<A::Object>,
    atoms: Vec<A>,
    arrows: Vec<A>,
    index: HashMap<A, usize>,
    witness: Vec<Witness>,
    identity: BTreeMap<A::Object, usize>,
    from: BTreeMap<A::Object, Vec<usize>>,
}

/// Associativity checks performed during saturation, at most.
pub const DEFAULT_CHECK_BUDGET: usize = 200_000;

/// The subgroupoid generated by `atoms` over `objects`, arrows in
/// canonical (sorted) order, each with a shortest witness word.
pub fn saturate_groupoid<A: Arrow>(
    objects: &[A::Object],
    atoms: &[A],
    identity: impl Fn(A::Object) -> A,
) -> Result<FiniteGroupoid<A>> {
    let objset: BTreeSet<A::Object> = objects.iter().copied().collect();
    for a in atoms {
        if !objset.contains(&a.src()) || !objset.contains(&a.tgt()) {
            return Err(Error::OutOfRange(format!("atom {a:?} leaves the object set")));
        }
    }
    let mut gens: HashMap<A::Object, Vec<(A, AtomLetter)>> = HashMap::new();
    for (i, a) in atoms.iter().enumerate() {
        gens.entry(a.src()).or_default().push((a.clone(), AtomLetter { atom: i, inv: false }));
        let b = a.inverse();
        gens.entry(b.src()).or_default().push((b, AtomLetter { atom: i, inv: true }));
    }
    let mut found: Vec<(A, Witness)> = Vec::new();
    let mut seen: HashMap<A, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &o in &objset {
        let id = identity(o);
        if seen.insert(id.clone(), found.len()).is_none() {
            found.push((id, Vec::new()));
            queue.push_back(found.len() - 1);
        }
    }
    while let Some(k) = queue.pop_front() {
        let (g, w) = found[k].clone();
        let Some(list) = gens.get(&g.tgt()) else { continue };
        for (a, letter) in list {
            let h = a.after(&g);
            if !seen.contains_key(&h) {
                let mut w2 = w.clone();
                w2.push(*letter);
                seen.insert(h.clone(), found.len());
                found.push((h, w2));
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let mut gpd = FiniteGroupoid {
        objects: objset.iter().copied().collect(),
        atoms: atoms.to_vec(),
        arrows: Vec::with_capacity(found.len()),
        index: HashMap::with_capacity(found.len()),
        witness: Vec::with_capacity(found.len()),
        identity: BTreeMap::new(),
        from: BTreeMap::new(),
    };
    for (i, (a, w)) in found.into_iter().enumerate() {
        gpd.index.insert(a.clone(), i);
        gpd.from.entry(a.src()).or_default().push(i);
        gpd.arrows.push(a);
        gpd.witness.push(w);
    }
    for &o in &gpd.objects {
        let i = gpd.index[&identity(o)];
        gpd.identity.insert(o, i);
    }
    gpd.check_axioms(DEFAULT_CHECK_BUDGET)?;
    Ok(gpd)
}

impl<A: Arrow> FiniteGroupoid<A> {
    pub fn objects(&self) -> &[A::Object] {
        &self.objects
    }

    pub fn atoms(&self) -> &[A] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[A] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &A {
        &self.arrows[i]
    }

    pub fn index_of(&self, a: &A) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn contains(&self, a: &A) -> bool {
        self.index.contains_key(a)
    }

    pub fn witness(&self, i: usize) -> &Witness {
        &self.witness[i]
    }

    pub fn identity(&self, o: A::Object) -> usize {
        self.identity[&o]
    }

    /// Indices of `Γ(o, -)`.
    pub fn out_arrows(&self, o: A::Object) -> &[usize] {
        self.from.get(&o).map_or(&[], Vec::as_slice)
    }

    pub fn hom(&self, x: A::Object, y: A::Object) -> Vec<usize> {
        self.out_arrows(x)
            .iter()
            .copied()
            .filter(|&i| self.arrows[i].tgt() == y)
            .collect()
    }

    /// Index of `arrows[j] ∘ arrows[i]`.
    pub fn compose(&self, j: usize, i: usize) -> Option<usize> {
        let (a, b) = (&self.arrows[i], &self.arrows[j]);
        if a.tgt() != b.src() {
            return None;
        }
        self.index_of(&b.after(a))
    }

    pub fn inverse(&self, i: usize) -> Option<usize> {
        self.index_of(&self.arrows[i].inverse())
    }

    /// Evaluates a witness word from the atoms.
    pub fn evaluate(&self, w: &Witness, start: A::Object) -> Option<A> {
        let mut cur = self.arrows[self.identity(start)].clone();
        for l in w {
            let a = self.atoms.get(l.atom)?;
            let g = if l.inv { a.inverse() } else { a.clone() };
            if g.src() != cur.tgt() {
                return None;
            }
            cur = g.after(&cur);
        }
        Some(cur)
    }

    /// Identity, inverse and closure laws on every arrow; associativity on
    /// composable triples, exhaustively when their number is within `budget`
    /// and otherwise on triples whose outer factors are atoms.
    pub fn check_axioms(&self, budget: usize) -> Result<()> {
        for (i, g) in self.arrows.iter().enumerate() {
            let s = &self.arrows[self.identity(g.src())];
            let t = &self.arrows[self.identity(g.tgt())];
            if g.after(s) != *g || t.after(g) != *g {
                return Err(Error::Verification(format!("identity law fails at arrow {i}")));
            }
            let inv = g.inverse();
            if !self.contains(&inv) || inv.after(g) != *s || g.after(&inv) != *t {
                return Err(Error::Verification(format!("inverse law fails at arrow {i}")));
            }
        }
        let triples: usize = self
            .arrows
            .iter()
            .map(|g| {
                let m = self.out_arrows(g.tgt()).len();
                m * m
            })
            .sum();
        let exhaustive = triples <= budget;
        let outer: Vec<usize> = if exhaustive {
            (0..self.arrows.len()).collect()
        } else {
            self.atoms
                .iter()
                .flat_map(|a| [self.index_of(a), self.index_of(&a.inverse())])
                .flatten()
                .collect()
        };
        for (i, a) in self.arrows.iter().enumerate() {
            for &j in self.out_arrows(a.tgt()) {
                if !exhaustive && !outer.contains(&j) {
                    continue;
                }
                let b = &self.arrows[j];
                let ba = b.after(a);
                if !self.contains(&ba) {
                    return Err(Error::Verification(format!("composite of {i} and {j} escapes the groupoid")));
                }
                for &k in self.out_arrows(b.tgt()) {
                    if !exhaustive && !outer.contains(&k) {
                        continue;
                    }
                    let c = &self.arrows[k];
                    if c.after(&ba) != c.after(b).after(a) {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }
}

/// An action of a groupoid on a set, anchored by `ε`.
pub trait Action<A: Arrow> {
    type Elem: Clone + Eq + Hash + Ord + Debug;
    fn anchor(&self, a: &Self::Elem) -> A::Object;
    fn act(&self, g: &A, a: &Self::Elem) -> Self::Elem;
}

/// Checks axioms (a), (b), (c) on `elems`; (b) exhaustively when the number
/// of composable pairs stays within `budget`, else with atoms as the outer
/// factor.
pub fn verify_action<A: Arrow, X: Action<A>>(
    gpd: &FiniteGroupoid<A>,
    act: &X,
    elems: &[X::Elem],
    budget: usize,
) -> Result<()> {
    let gens: Vec<A> = gpd.atoms().iter().flat_map(|a| [a.clone(), a.inverse()]).collect();
    let pairs: usize = elems
        .iter()
        .map(|e| {
            gpd.out_arrows(act.anchor(e))
                .iter()
                .map(|&i| gpd.out_arrows(gpd.arrow(i).tgt()).len())
                .sum::<usize>()
        })
        .sum();
    let exhaustive = pairs <= budget;
    for e in elems {
        let x = act.anchor(e);
        let id = gpd.arrow(gpd.identity(x));
        if act.act(id, e) != *e {
            return Err(Error::ActionAxiom {
                axiom: 'c',
                detail: format!("identity moves {e:?}"),
            });
        }
        for &i in gpd.out_arrows(x) {
            let g = gpd.arrow(i);
            let ge = act.act(g, e);
            if act.anchor(&ge) != g.tgt() {
                return Err(Error::ActionAxiom {
                    axiom: 'a',
                    detail: format!("anchor of arrow {i} applied to {e:?}"),
                });
            }
            let outer: Vec<A> = if exhaustive {
                gpd.out_arrows(g.tgt()).iter().map(|&j| gpd.arrow(j).clone()).collect()
            } else {
                gens.iter().filter(|h| h.src() == g.tgt()).cloned().collect()
            };
            for h in outer {
                if act.act(&h.after(g), e) != act.act(&h, &ge) {
                    return Err(Error::ActionAxiom {
                        axiom: 'b',
                        detail: format!("composition with arrow {i} on {e:?}"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Orbit of a single element, sorted.
pub fn orbit<A: Arrow, X: Action<A>>(gpd: &FiniteGroupoid<A>, act: &X, e: &X::Elem) -> Vec<X::Elem> {
    let set: BTreeSet<X::Elem> = gpd
        .out_arrows(act.anchor(e))
        .iter()
        .map(|&i| act.act(gpd.arrow(i), e))
        .collect();
    set.into_iter().collect()
}

/// Partition of `elems` into orbits, each sorted, ordered by least element.
pub fn orbit_partition<A: Arrow, X: Action<A>>(
    gpd: &FiniteGroupoid<A>,
    act: &X,
    elems: &[X::Elem],
) -> Result<Vec<Vec<X::Elem>>> {
    verify_action(gpd, act, elems, DEFAULT_CHECK_BUDGET)?;
    let all: BTreeSet<X::Elem> = elems.iter().cloned().collect();
    let mut placed: BTreeSet<X::Elem> = BTreeSet::new();
    let mut out = Vec::new();
    for e in &all {
        if placed.contains(e) {
            continue;
        }
        let o = orbit(gpd, act, e);
        if let Some(bad) = o.iter().find(|x| !all.contains(*x)) {
            return Err(Error::ActionAxiom {
                axiom: 'a',
                detail: format!("{bad:?} lies outside the acted set"),
            });
        }
        placed.extend(o.iter().cloned());
        out.push(o);
    }
    Ok(out)
}

/// Both sides of the orbit–stabilizer identity for one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitStabilizer {
    pub total: usize,
    pub stabilizer: usize,
    pub orbit: usize,
}

pub fn stabilizer_size<A: Arrow, X: Action<A>>(
    gpd: &FiniteGroupoid<A>,
    act: &X,
    e: &X::Elem,
) -> Result<OrbitStabilizer> {
    let out = gpd.out_arrows(act.anchor(e));
    let images: Vec<X::Elem> = out.iter().map(|&i| act.act(gpd.arrow(i), e)).collect();
    let stabilizer = images.iter().filter(|x| *x == e).count();
    let orbit = images.iter().collect::<BTreeSet<_>>().len();
    let r = OrbitStabilizer {
        total: out.len(),
        stabilizer,
        orbit,
    };
    if r.total != r.stabilizer * r.orbit {
        return Err(Error::OrbitStabilizer {
            total: r.total,
            stabilizer: r.stabilizer,
            orbit: r.orbit,
        });
    }
    Ok(r)
}

/// Least common multiple of `sizes` (1 for an empty list).
pub fn schedule_n(sizes: &[u64]) -> Result<BigUint> {
    let mut n = BigUint::one();
    for &s in sizes {
        if s == 0 {
            return Err(Error::OutOfRange("group sizes must be positive".into()));
        }
        n = n.lcm(&BigUint::from(s));
    }
    Ok(n)
}

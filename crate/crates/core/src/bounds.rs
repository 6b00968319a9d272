//! The Landau function and explicit size bounds for common covers.
//!
//! Real-valued parts are carried as enclosures `[lo, hi]` of natural
//! logarithms. Every floating-point result is widened by a relative margin
//! far above the accumulated rounding error of the few libm calls involved,
//! so a bound reported as satisfied is satisfied by the exact real number.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

const MARGIN: f64 = 1e-12;

/// A closed interval containing a real number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    fn around(x: f64) -> Enclosure {
        let w = x.abs() * MARGIN + f64::MIN_POSITIVE;
        Enclosure { lo: x - w, hi: x + w }
    }

    fn add(self, o: Enclosure) -> Enclosure {
        Enclosure {
            lo: Enclosure::around(self.lo + o.lo).lo,
            hi: Enclosure::around(self.hi + o.hi).hi,
        }
    }
}

/// Enclosure of `ln x` for a positive integer.
pub fn ln_big(x: &BigUint) -> Enclosure {
    let bits = x.bits();
    if bits <= 53 {
        return Enclosure::around((x.to_u64().unwrap() as f64).ln());
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().unwrap() as f64;
    // top ≤ x / 2^shift < top + 1
    let lo = top.ln() + shift as f64 * std::f64::consts::LN_2;
    let hi = (top + 1.0).ln() + shift as f64 * std::f64::consts::LN_2;
    Enclosure {
        lo: Enclosure::around(lo).lo,
        hi: Enclosure::around(hi).hi,
    }
}

/// Enclosure of `c · sqrt(n ln n)` for `n ≥ 1`.
fn c_sqrt_n_ln_n(c: f64, n: u64) -> Enclosure {
    let n = n as f64;
    Enclosure::around(c * (n * n.ln()).sqrt())
}

/// `e^x` rounded up, for the upper end of an enclosure.
fn exp_up(x: f64) -> f64 {
    Enclosure::around(x.exp()).hi
}

#[derive(Clone, Debug, PartialEq)]
pub enum Landau {
    Exact(BigUint),
    /// Upper-rounded values of `exp(1.05313 sqrt(n ln n))` and
    /// `exp(2 sqrt(n ln n))`.
    Bound { sharp: f64, coarse: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LandauMode {
    Exact,
    Bound,
}

fn primes_up_to(n: usize) -> Vec<usize> {
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if sieve[p] {
            out.push(p);
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
    }
    out
}

/// `g(n)`, the largest order of a permutation of `n` points.
pub fn landau_exact(n: usize) -> BigUint {
    // best[s]: largest product of prime powers of distinct primes with sum ≤ s
    let mut best = vec![BigUint::one(); n + 1];
    for p in primes_up_to(n) {
        for s in (p..=n).rev() {
            let mut q = p;
            let mut cand = best[s].clone();
            while q <= s {
                let v = &best[s - q] * BigUint::from(q);
                if v > cand {
                    cand = v;
                }
                q *= p;
            }
            best[s] = cand;
        }
    }
    best.swap_remove(n)
}

pub fn landau(n: i64, mode: LandauMode) -> Result<Landau> {
    if n <= 0 {
        return Err(Error::OutOfRange(format!("landau needs n ≥ 1, got {n}")));
    }
    Ok(match mode {
        LandauMode::Exact => Landau::Exact(landau_exact(n as usize)),
        LandauMode::Bound => Landau::Bound {
            sharp: exp_up(c_sqrt_n_ln_n(1.05313, n as u64).hi),
            coarse: exp_up(c_sqrt_n_ln_n(2.0, n as u64).hi),
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Leighton,
    Ball,
    Objects,
    Regular,
}

/// Inputs of the bound formulas; each kind reads the ones it needs.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoundParams {
    /// Geometric edges of the base graph.
    pub e: Option<u64>,
    /// Vertices of the second graph in the Leighton bound.
    pub v_prime: Option<u64>,
    /// `|V(G1)| + |V(G2)|`.
    pub v: Option<u64>,
    /// Maximal degree.
    pub d: Option<u64>,
    pub r: Option<u32>,
    /// Least common multiple of isotropy orders.
    pub lcm: Option<u64>,
    pub v1: Option<u64>,
    pub v2: Option<u64>,
    /// Odd common degree (regular kind).
    pub odd: Option<bool>,
    /// Vertex count of an actual cover to compare with.
    pub actual: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub context: String,
    pub inputs: BTreeMap<String, u64>,
    /// Exact integer factor of the bound.
    pub integer_factor: String,
    /// Enclosure of the exponent of the `exp` factor (zero when absent).
    pub exponent: Enclosure,
    /// Enclosure of the natural logarithm of the bound.
    pub ln_bound: Enclosure,
    /// Upper-rounded value, infinite when it exceeds `f64`.
    pub bound_upper: f64,
    /// Exact value when the bound is an integer.
    pub exact: Option<String>,
    pub actual: Option<u64>,
    /// `actual ≤ bound`, decided conservatively.
    pub satisfied: Option<bool>,
}

impl BoundReport {
    /// The bound as an integer rounded up, when it fits.
    pub fn ceiling(&self) -> Option<u64> {
        if let Some(x) = &self.exact {
            return x.parse().ok();
        }
        (self.bound_upper < 1.8e19).then(|| self.bound_upper.ceil() as u64)
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
}

const MAX_POW: u64 = 1 << 20;

fn pow(b: BigUint, e: u64) -> Result<BigUint> {
    if e > MAX_POW {
        return Err(Error::OutOfRange(format!("exponent {e} is too large")));
    }
    Ok(num_traits::pow(b, e as usize))
}

fn need(params: &BoundParams, names: &[&str]) -> Result<()> {
    let missing: Vec<&str> = names
        .iter()
        .copied()
        .filter(|&n| match n {
            "e" => params.e.is_none(),
            "v_prime" => params.v_prime.is_none(),
            "v" => params.v.is_none(),
            "d" => params.d.is_none(),
            "r" => params.r.is_none(),
            "lcm" => params.lcm.is_none(),
            "v1" => params.v1.is_none(),
            "v2" => params.v2.is_none(),
            "odd" => params.odd.is_none(),
            _ => false,
        })
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::MissingParameters(missing.join(", ")))
    }
}

pub fn bound_report(kind: BoundKind, params: &BoundParams) -> Result<BoundReport> {
    let mut inputs = BTreeMap::new();
    let (context, factor, exponent): (&str, BigUint, Option<Enclosure>) = match kind {
        BoundKind::Leighton => {
            need(params, &["e", "v_prime"])?;
            let (e, vp) = (params.e.unwrap(), params.v_prime.unwrap());
            if e == 0 {
                return Err(Error::OutOfRange("E must be positive".into()));
            }
            inputs.insert("E".into(), e);
            inputs.insert("V'".into(), vp);
            ("leighton: 2 V' exp(2 sqrt(E ln E))", BigUint::from(2 * vp), Some(c_sqrt_n_ln_n(2.0, e)))
        }
        BoundKind::Ball => {
            need(params, &["v", "d", "r"])?;
            let (v, d, r) = (params.v.unwrap(), params.d.unwrap(), params.r.unwrap());
            if v == 0 {
                return Err(Error::OutOfRange("V must be positive".into()));
            }
            inputs.insert("V".into(), v);
            inputs.insert("d".into(), d);
            inputs.insert("R".into(), r as u64);
            let dr = d.checked_pow(r).filter(|&x| x <= MAX_POW).ok_or_else(|| Error::OutOfRange("d^R is too large".into()))?;
            let f = pow(factorial(d), 2 * dr)? * BigUint::from(v * v);
            ("ball: (d!)^(2 d^R) V^2 exp(2 sqrt(V ln V))", f, Some(c_sqrt_n_ln_n(2.0, v)))
        }
        BoundKind::Objects => {
            need(params, &["v", "d", "lcm"])?;
            let (v, d, l) = (params.v.unwrap(), params.d.unwrap(), params.lcm.unwrap());
            if v == 0 {
                return Err(Error::OutOfRange("V must be positive".into()));
            }
            inputs.insert("V".into(), v);
            inputs.insert("d".into(), d);
            inputs.insert("lcm".into(), l);
            let f = pow(factorial(d), 2)? * pow(BigUint::from(l), 2 * d)? * BigUint::from(v * v);
            ("objects: (d!)^2 lcm^(2d) V^2 exp(2 sqrt(V ln V))", f, Some(c_sqrt_n_ln_n(2.0, v)))
        }
        BoundKind::Regular => {
            need(params, &["v1", "v2", "odd"])?;
            let (v1, v2, odd) = (params.v1.unwrap(), params.v2.unwrap(), params.odd.unwrap());
            inputs.insert("V1".into(), v1);
            inputs.insert("V2".into(), v2);
            inputs.insert("odd".into(), odd as u64);
            let f = BigUint::from(v1 * v2 * if odd { 2 } else { 1 });
            if odd {
                ("regular (odd degree): 2 |V1| |V2|", f, None)
            } else {
                ("regular (even degree): |V1| |V2|", f, None)
            }
        }
    };
    let ln_factor = ln_big(&factor);
    let (exponent, ln_bound, exact) = match exponent {
        Some(x) => (x, ln_factor.add(x), None),
        None => (Enclosure { lo: 0.0, hi: 0.0 }, ln_factor, Some(factor.to_string())),
    };
    let bound_upper = match (&exact, factor.to_f64()) {
        (Some(_), Some(f)) => f,
        (None, Some(f)) if f.is_finite() => Enclosure::around(Enclosure::around(f).hi * exp_up(exponent.hi)).hi,
        _ => f64::INFINITY,
    };
    let satisfied = params.actual.map(|a| {
        if exact.is_some() {
            BigUint::from(a) <= factor
        } else if a == 0 {
            true
        } else {
            ln_big(&BigUint::from(a)).hi <= ln_bound.lo
        }
    });
    Ok(BoundReport {
        context: context.into(),
        inputs,
        integer_factor: factor.to_string(),
        exponent,
        ln_bound,
        bound_upper,
        exact,
        actual: params.actual,
        satisfied,
    })
}

/// `d! · ((d-1)!)^(Σ_{i=0}^{R-2} d (d-1)^i)`, a multiple of the order of
/// any ball automorphism group at radius `R` in a tree of degree ≤ `d`.
pub fn ball_divisor(d: u64, r: u32) -> Result<BigUint> {
    let mut exp: u64 = 0;
    let mut term = d;
    for _ in 0..r.saturating_sub(1) {
        exp = exp.checked_add(term).filter(|&x| x <= MAX_POW).ok_or_else(|| Error::OutOfRange("exponent is too large".into()))?;
        term = term.saturating_mul(d.saturating_sub(1));
    }
    Ok(factorial(d) * pow(factorial(d.saturating_sub(1)), exp)?)
}

/// `d! · lcm^d`.
pub fn objects_divisor(d: u64, lcm: u64) -> Result<BigUint> {
    Ok(factorial(d) * pow(BigUint::from(lcm), d)?)
}

pub fn divides(a: u64, b: &BigUint) -> bool {
    a != 0 && (b % BigUint::from(a)).bits() == 0
}

/// Least common multiple of a list of orders.
pub fn lcm_of(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(1, |a, b| a.lcm(&b))
}

/// Result of checking a divisor claim at every object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorCheck {
    pub divisor: String,
    /// `(site label, |Γ(x,x)|)` for every object.
    pub orders: Vec<(String, u64)>,
    pub failures: Vec<String>,
}

impl DivisorCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every vertex group of a ball system divides the ball
/// divisor and the direct count of ball automorphisms.
pub fn check_ball_divisors(sys: &crate::ball_system::BallSystem) -> Result<DivisorCheck> {
    let d = sys.g1.max_degree().max(sys.g2.max_degree()) as u64;
    let div = ball_divisor(d, sys.radius() as u32)?;
    let mut orders = Vec::new();
    let mut failures = Vec::new();
    for &x in sys.gpd.objects() {
        let n = sys.gpd.hom(x, x).len() as u64;
        let g = if x.side == 1 { &sys.g1 } else { &sys.g2 };
        let label = format!("{}:{}", x.side, g.vertex_name(x.v));
        let auts = sys.ctx.all_tree_isos(x, x).len() as u64;
        if !divides(n, &div) {
            failures.push(format!("|Γ({label})| = {n} does not divide {div}"));
        }
        if !divides(auts, &div) {
            failures.push(format!("|Aut B_R({label})| = {auts} does not divide {div}"));
        }
        if auts % n != 0 {
            failures.push(format!("|Γ({label})| = {n} does not divide |Aut B_R| = {auts}"));
        }
        orders.push((label, n));
    }
    Ok(DivisorCheck {
        divisor: div.to_string(),
        orders,
        failures,
    })
}

/// Checks `|Γ(u,u)|` against `d! · lcm^d` for an object system.
pub fn check_object_divisors(sys: &crate::object_graphs::ObjectSystem) -> Result<DivisorCheck> {
    let d = sys.x1.graph.max_degree().max(sys.x2.graph.max_degree()) as u64;
    let l = lcm_of(sys.isotropy.values().map(|&n| n as u64));
    let div = objects_divisor(d, l)?;
    let mut orders = Vec::new();
    let mut failures = Vec::new();
    for &x in sys.gpd.objects() {
        let n = sys.gpd.hom(x, x).len() as u64;
        let g = if x.side == 1 { &sys.x1.graph } else { &sys.x2.graph };
        let label = format!("{}:{}", x.side, g.vertex_name(x.v));
        if !divides(n, &div) {
            failures.push(format!("|Γ({label})| = {n} does not divide {div}"));
        }
        orders.push((label, n));
    }
    Ok(DivisorCheck {
        divisor: div.to_string(),
        orders,
        failures,
    })
}

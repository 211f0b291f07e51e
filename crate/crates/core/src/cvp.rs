//! Components of the common-value-pair set of two cyclic words.
//!
//! For cyclic words `u = u_1..u_m` and `v = v_1..v_n` the base pairs `(k, l)`
//! form an `m x n` torus grid (subscripts mod `m`, `n`, 1-based). A parallel
//! step `(k, l) -> (k+1, l+1)` exists iff `u_{k+1} = v_{l+1}`; an antiparallel
//! step `(k, l+1) -> (k+1, l)` exists iff `u_{k+1} = v_{l+1}^-1`. Components
//! are the connected pieces of the resulting graph; cyclic reducedness keeps
//! every point on at most one kind of step.

use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cyclic::CyclicWord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// A single point, `q = 0`.
    Isolated,
    /// `q >= 1` parallel steps from the anchor.
    ParallelRun(usize),
    /// `q >= 1` antiparallel steps; written `-q`.
    AntiparallelRun(usize),
    InfiniteParallel,
    InfiniteAntiparallel,
}

impl ComponentKind {
    /// The signed run length, `None` for infinite components.
    pub fn signed_q(&self) -> Option<i64> {
        match *self {
            ComponentKind::Isolated => Some(0),
            ComponentKind::ParallelRun(q) => Some(q as i64),
            ComponentKind::AntiparallelRun(q) => Some(-(q as i64)),
            ComponentKind::InfiniteParallel | ComponentKind::InfiniteAntiparallel => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.signed_q().is_none()
    }

    fn order_rank(&self) -> i64 {
        match self.signed_q() {
            Some(q) => q,
            None if *self == ComponentKind::InfiniteParallel => i64::MAX - 1,
            None => i64::MAX,
        }
    }
}

impl std::fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentKind::InfiniteParallel => f.write_str("inf+"),
            ComponentKind::InfiniteAntiparallel => f.write_str("inf-"),
            k => write!(f, "{}", k.signed_q().unwrap()),
        }
    }
}

/// A component `(k, l, q)`.
///
/// Finite runs are anchored at their backward boundary point, so the matched
/// letters sit at offsets `r = 1..q`. A parallel run covers
/// `(k+λ, l+λ)`, an antiparallel run covers `(k+λ, l+q-λ)`, `λ = 0..q`.
/// Infinite components are anchored at their lexicographically least point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComponentData {
    pub anchor_k: usize,
    pub anchor_l: usize,
    pub kind: ComponentKind,
}

impl ComponentData {
    /// Grid points covered, 1-based.
    pub fn grid_points(&self, m: usize, n: usize) -> Vec<(usize, usize)> {
        let (k, l) = (self.anchor_k as i64, self.anchor_l as i64);
        let wrap = |a: i64, b: i64| {
            (
                ((a - 1).rem_euclid(m as i64) + 1) as usize,
                ((b - 1).rem_euclid(n as i64) + 1) as usize,
            )
        };
        let span = lcm(m, n) as i64;
        match self.kind {
            ComponentKind::Isolated => vec![wrap(k, l)],
            ComponentKind::ParallelRun(q) => (0..=q as i64).map(|r| wrap(k + r, l + r)).collect(),
            ComponentKind::AntiparallelRun(q) => {
                let q = q as i64;
                (0..=q).map(|r| wrap(k + r, l + q - r)).collect()
            }
            ComponentKind::InfiniteParallel => (0..span).map(|r| wrap(k + r, l + r)).collect(),
            ComponentKind::InfiniteAntiparallel => (0..span).map(|r| wrap(k + r, l - r)).collect(),
        }
    }

    /// The same component seen from `cvp(ν, μ)`.
    pub fn transposed(&self, m: usize, n: usize) -> ComponentData {
        match self.kind {
            ComponentKind::InfiniteParallel | ComponentKind::InfiniteAntiparallel => {
                let (l, k) = self
                    .grid_points(m, n)
                    .into_iter()
                    .map(|(k, l)| (l, k))
                    .min()
                    .expect("infinite component covers at least one point");
                ComponentData {
                    anchor_k: l,
                    anchor_l: k,
                    kind: self.kind,
                }
            }
            _ => ComponentData {
                anchor_k: self.anchor_l,
                anchor_l: self.anchor_k,
                kind: self.kind,
            },
        }
    }

    /// Deterministic output order: by anchor, then by signed `q`, infinite last.
    pub fn display_cmp(&self, other: &ComponentData) -> Ordering {
        (self.anchor_k, self.anchor_l, self.kind.order_rank()).cmp(&(
            other.anchor_k,
            other.anchor_l,
            other.kind.order_rank(),
        ))
    }
}

impl std::fmt::Display for ComponentData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.anchor_k, self.anchor_l, self.kind)
    }
}

impl Serialize for ComponentData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ComponentData", 3)?;
        s.serialize_field("k", &self.anchor_k)?;
        s.serialize_field("l", &self.anchor_l)?;
        match self.kind.signed_q() {
            Some(q) => s.serialize_field("q", &q)?,
            None => s.serialize_field("q", &self.kind.to_string())?,
        }
        s.end()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Partitions the `m x n` grid of `(mu, nu)` into components, sorted by
/// [`ComponentData::display_cmp`].
pub fn enumerate_components(mu: &CyclicWord, nu: &CyclicWord) -> Result<Vec<ComponentData>> {
    if mu.genus() != nu.genus() {
        return Err(Error::GenusMismatch(mu.genus().get(), nu.genus().get()));
    }
    for w in [mu, nu] {
        if w.is_empty() {
            return Err(Error::EmptyWord(w.to_string()));
        }
    }
    let (m, n) = (mu.len(), nu.len());
    let span = lcm(m, n) as i64;
    let u = |k: i64| mu.at(k);
    let v = |l: i64| nu.at(l);
    let par = |k: i64, l: i64| u(k) == v(l);
    let anti = |k: i64, l: i64| u(k) == v(l).inverse();
    let wrap = |k: i64, l: i64| {
        (
            ((k - 1).rem_euclid(m as i64) + 1) as usize,
            ((l - 1).rem_euclid(n as i64) + 1) as usize,
        )
    };

    let mut seen = vec![false; m * n];
    let mut out = Vec::new();
    let mark = |seen: &mut Vec<bool>, (k, l): (usize, usize)| {
        let cell = &mut seen[(k - 1) * n + (l - 1)];
        assert!(!*cell, "grid point ({k},{l}) covered twice");
        *cell = true;
    };

    for k0 in 1..=m as i64 {
        for l0 in 1..=n as i64 {
            if seen[(k0 as usize - 1) * n + (l0 as usize - 1)] {
                continue;
            }
            let has_par = par(k0 + 1, l0 + 1) || par(k0, l0);
            let has_anti = anti(k0 + 1, l0) || anti(k0, l0 + 1);
            assert!(
                !(has_par && has_anti),
                "point ({k0},{l0}) has both step kinds; input not cyclically reduced"
            );

            let comp = if has_par {
                let (mut a, mut b, mut steps) = (k0, l0, 0i64);
                while par(a, b) && steps <= span {
                    a -= 1;
                    b -= 1;
                    steps += 1;
                }
                if steps > span {
                    infinite(ComponentKind::InfiniteParallel, k0, l0, m, n)
                } else {
                    let mut q = 0i64;
                    while par(a + q + 1, b + q + 1) {
                        q += 1;
                    }
                    let (ak, al) = wrap(a, b);
                    ComponentData {
                        anchor_k: ak,
                        anchor_l: al,
                        kind: ComponentKind::ParallelRun(q as usize),
                    }
                }
            } else if has_anti {
                // walk from (k0, l0) towards the anchor's chain start (k, l+q)
                let (mut a, mut b, mut steps) = (k0, l0, 0i64);
                while anti(a, b + 1) && steps <= span {
                    a -= 1;
                    b += 1;
                    steps += 1;
                }
                if steps > span {
                    infinite(ComponentKind::InfiniteAntiparallel, k0, l0, m, n)
                } else {
                    let mut q = 0i64;
                    while anti(a + q + 1, b - q) {
                        q += 1;
                    }
                    let (ak, al) = wrap(a, b - q);
                    ComponentData {
                        anchor_k: ak,
                        anchor_l: al,
                        kind: ComponentKind::AntiparallelRun(q as usize),
                    }
                }
            } else {
                ComponentData {
                    anchor_k: k0 as usize,
                    anchor_l: l0 as usize,
                    kind: ComponentKind::Isolated,
                }
            };
            for p in comp.grid_points(m, n) {
                mark(&mut seen, p);
            }
            out.push(comp);
        }
    }
    debug_assert!(seen.iter().all(|&s| s));
    out.sort_by(|a, b| a.display_cmp(b));
    Ok(out)
}

fn infinite(kind: ComponentKind, k: i64, l: i64, m: usize, n: usize) -> ComponentData {
    let probe = ComponentData {
        anchor_k: k as usize,
        anchor_l: l as usize,
        kind,
    };
    let (ak, al) = probe
        .grid_points(m, n)
        .into_iter()
        .min()
        .expect("nonempty cycle");
    ComponentData {
        anchor_k: ak,
        anchor_l: al,
        kind,
    }
}

/// Components of `cvp(μ, μ)` over the full ordered grid, diagonal included.
pub fn self_components(mu: &CyclicWord) -> Result<Vec<ComponentData>> {
    enumerate_components(mu, mu)
}

//! Indices of components and the resulting minimal intersection counts.
//!
//! Every letter has a fixed endpoint on the boundary circle, one of the `4g`
//! points `e^{iπp/2g}`; the index of a component is read off from the cyclic
//! order of three such points at each end of the component. Everything here
//! is integer arithmetic on `Z_4g`.

use serde::{Serialize, Serializer};

use crate::cvp::{enumerate_components, self_components, ComponentData, ComponentKind};
use crate::cyclic::{cyclic_normal_form, prime_decomposition, CyclicWord};
use crate::error::Result;
use crate::word::{Genus, Letter, Word};

/// A point `e^{iπ·value/2g}` on the boundary circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CirclePosition {
    value: u32,
    genus: Genus,
}

impl CirclePosition {
    /// `value` is reduced mod `4g`.
    pub fn new(value: i64, genus: Genus) -> Self {
        let modulus = 4 * genus.get() as i64;
        CirclePosition {
            value: value.rem_euclid(modulus) as u32,
            genus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn genus(self) -> Genus {
        self.genus
    }

    pub fn modulus(self) -> u32 {
        4 * self.genus.get()
    }

    /// The antipodal point.
    pub fn opposite(self) -> Self {
        CirclePosition::new(self.value as i64 + 2 * self.genus.get() as i64, self.genus)
    }

    /// Angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        self.value as f64 * std::f64::consts::PI / (2.0 * self.genus.get() as f64)
    }
}

/// Local intersection number of a component, always `-1`, `0` or `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassIndex(i8);

impl ClassIndex {
    pub const ZERO: ClassIndex = ClassIndex(0);

    pub fn new(value: i8) -> Option<Self> {
        (-1..=1).contains(&value).then_some(ClassIndex(value))
    }

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn is_essential(self) -> bool {
        self.0 != 0
    }
}

impl Serialize for ClassIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.0)
    }
}

impl std::fmt::Display for ClassIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Boundary position of the endpoint `T(w)` of a letter:
/// `c_j -> j-1 + (1-(-1)^j)g`, `c_j^-1 -> j-1 + (1+(-1)^j)g`, mod `4g`.
/// The opposite endpoint `-T(w)` is `vartheta(w^-1)`.
pub fn vartheta(w: Letter, g: Genus) -> CirclePosition {
    let j = w.index() as i64;
    let gg = g.get() as i64;
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let value = if w.is_inverse() {
        j - 1 + (1 + sign) * gg
    } else {
        j - 1 + (1 - sign) * gg
    };
    CirclePosition::new(value, g)
}

/// Orientation of the triple `(a, b, c)`: `+1` if counterclockwise, `-1` if
/// clockwise, `0` if two points coincide.
pub fn theta(a: CirclePosition, b: CirclePosition, c: CirclePosition) -> i8 {
    assert!(
        a.genus == b.genus && b.genus == c.genus,
        "circle positions from different genera"
    );
    if a == b || b == c || a == c {
        return 0;
    }
    let m = a.modulus();
    let db = (b.value + m - a.value) % m;
    let dc = (c.value + m - a.value) % m;
    if db < dc {
        1
    } else {
        -1
    }
}

/// Index of component `c` of `cvp(mu, nu)`. Infinite components have index 0.
pub fn component_index(mu: &CyclicWord, nu: &CyclicWord, c: &ComponentData) -> ClassIndex {
    let g = mu.genus();
    let t = |w: Letter| vartheta(w, g);
    let neg = |w: Letter| vartheta(w.inverse(), g);
    let u = |k: i64| mu.at(k);
    let v = |l: i64| nu.at(l);
    let (k, l) = (c.anchor_k as i64, c.anchor_l as i64);

    let twice = match c.kind {
        ComponentKind::Isolated => {
            theta(neg(u(k)), neg(v(l)), t(u(k + 1))) + theta(t(u(k + 1)), t(v(l + 1)), neg(u(k)))
        }
        ComponentKind::ParallelRun(q) => {
            let q = q as i64;
            theta(neg(u(k)), neg(v(l)), t(u(k + 1)))
                + theta(t(u(k + q + 1)), t(v(l + q + 1)), neg(u(k + q)))
        }
        ComponentKind::AntiparallelRun(q) => {
            let q = q as i64;
            -(theta(neg(u(k)), t(v(l + q + 1)), t(u(k + 1)))
                + theta(t(u(k + q + 1)), neg(v(l)), neg(u(k + q))))
        }
        ComponentKind::InfiniteParallel | ComponentKind::InfiniteAntiparallel => 0,
    };
    assert!(
        twice % 2 == 0,
        "odd index sum {twice} for component {c} of ({mu}, {nu})"
    );
    ClassIndex(twice / 2)
}

/// Components of `cvp(mu, nu)` paired with their indices.
pub fn indexed_components(
    mu: &CyclicWord,
    nu: &CyclicWord,
) -> Result<Vec<(ComponentData, ClassIndex)>> {
    Ok(enumerate_components(mu, nu)?
        .into_iter()
        .map(|c| {
            let i = component_index(mu, nu, &c);
            (c, i)
        })
        .collect())
}

/// Number of components of `cvp(mu, nu)` with nonzero index.
pub fn essential_class_count(mu: &CyclicWord, nu: &CyclicWord) -> Result<usize> {
    Ok(indexed_components(mu, nu)?
        .iter()
        .filter(|(_, i)| i.is_essential())
        .count())
}

/// Minimal number of crossings between loops in the free homotopy classes
/// of `a` and `b`.
pub fn geometric_intersection(a: &Word, b: &Word) -> Result<usize> {
    Ok(intersection_report(a, b)?.result)
}

/// Minimal number of double points of a loop freely homotopic to `a`.
pub fn geometric_self_intersection(a: &Word) -> usize {
    self_intersection_report(a).result
}

/// True iff the class of `a` is not a proper power.
pub fn is_prime_class(a: &Word) -> Result<bool> {
    Ok(prime_decomposition(&cyclic_normal_form(a))?.exponent == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexedComponent {
    #[serde(flatten)]
    pub component: ComponentData,
    pub index: ClassIndex,
}

/// Full output of an intersection or self-intersection computation.
///
/// `exponents` holds one prime exponent per input (one entry in the self
/// case); `None` marks a trivial class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub representatives: Vec<CyclicWord>,
    pub exponents: Vec<Option<usize>>,
    pub essential_count: usize,
    pub result: usize,
    pub components: Vec<IndexedComponent>,
}

/// The input itself when already cyclically reduced, so component anchors
/// refer to the caller's letter positions; otherwise the least rotation of
/// its cyclic normal form.
fn representative(w: &Word) -> CyclicWord {
    CyclicWord::new(w.clone()).unwrap_or_else(|_| cyclic_normal_form(w))
}

fn exponent(cw: &CyclicWord) -> Option<usize> {
    prime_decomposition(cw).ok().map(|p| p.exponent)
}

fn wrap(list: Vec<(ComponentData, ClassIndex)>) -> Vec<IndexedComponent> {
    list.into_iter()
        .map(|(component, index)| IndexedComponent { component, index })
        .collect()
}

pub fn intersection_report(a: &Word, b: &Word) -> Result<IntersectionReport> {
    a.check_genus(b)?;
    let mu = representative(a);
    let nu = representative(b);
    let components = if mu.is_empty() || nu.is_empty() {
        Vec::new()
    } else {
        indexed_components(&mu, &nu)?
    };
    let essential_count = components.iter().filter(|(_, i)| i.is_essential()).count();
    Ok(IntersectionReport {
        exponents: vec![exponent(&mu), exponent(&nu)],
        representatives: vec![mu, nu],
        essential_count,
        result: essential_count,
        components: wrap(components),
    })
}

/// `si = N/2 + q - 1`, with `N` the essential count of the full cyclic word
/// against itself and `q` its prime exponent.
pub fn self_intersection_report(a: &Word) -> IntersectionReport {
    let cw = representative(a);
    let Ok(pd) = prime_decomposition(&cw) else {
        return IntersectionReport {
            representatives: vec![cw],
            exponents: vec![None],
            essential_count: 0,
            result: 0,
            components: Vec::new(),
        };
    };
    let components: Vec<_> = self_components(&cw)
        .expect("nonempty cyclic normal form")
        .into_iter()
        .map(|c| {
            let i = component_index(&cw, &cw, &c);
            (c, i)
        })
        .collect();
    let n = components.iter().filter(|(_, i)| i.is_essential()).count();
    assert!(n % 2 == 0, "odd essential self count {n} for {cw}");
    IntersectionReport {
        representatives: vec![cw],
        exponents: vec![Some(pd.exponent)],
        essential_count: n,
        result: n / 2 + pd.exponent - 1,
        components: wrap(components),
    }
}

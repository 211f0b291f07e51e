//! Floating-point model of the surface group as a Fuchsian group.
//!
//! The generator `c_j` acts on the upper half-plane as the hyperbolic
//! translation `δ_j = M^{-(j-1)} Q M^{j-1}`, where `M` is the rotation by
//! `(2g-1)π/4g` and `Q = diag(λ, 1/λ)`. A matrix acts through its inverse on
//! the left, so a word `w_1..w_m` corresponds to the product
//! `δ_{w_m} ⋯ δ_{w_1}`. This module is a cross-check only; the main pipeline
//! never touches floating point.
//!
//! Word products are accumulated in double-double arithmetic ([`PreciseMap`]).
//! Entries of a length-12 product reach `1e12`, where a single `f64` ulp is
//! already above `1e-6`, so comparisons of products are made before rounding.

use std::f64::consts::PI;

use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::index::vartheta;
use crate::word::{Genus, Letter, Word};

const TRACE_EPS: f64 = 1e-9;

/// A 2x2 real matrix of determinant 1, taken up to sign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MoebiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MoebiusMap {
    pub const IDENTITY: MoebiusMap = MoebiusMap {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        MoebiusMap { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Scales to determinant 1. Panics if the determinant is not positive.
    pub fn normalized(&self) -> Self {
        let det = self.det();
        assert!(det > 0.0, "determinant {det} is not positive");
        let s = det.sqrt();
        MoebiusMap::new(self.a / s, self.b / s, self.c / s, self.d / s)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, o: &MoebiusMap) -> MoebiusMap {
        MoebiusMap::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Inverse of a determinant-1 matrix.
    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap::new(self.d, -self.b, -self.c, self.a)
    }

    /// Largest entrywise difference, minimized over the sign ambiguity.
    pub fn distance_up_to_sign(&self, o: &MoebiusMap) -> f64 {
        let plus = [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d];
        let minus = [self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d];
        let norm = |v: [f64; 4]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        norm(plus).min(norm(minus))
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2.0 + TRACE_EPS
    }
}

/// A point on the boundary of the disk model, by angle in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPoint {
    angle: f64,
}

impl BoundaryPoint {
    pub fn new(angle: f64) -> Self {
        let a = angle.rem_euclid(2.0 * PI);
        // rem_euclid can round up to exactly 2π
        BoundaryPoint {
            angle: if a >= 2.0 * PI { 0.0 } else { a },
        }
    }

    /// Image of a point of the extended real line under `z -> (z-i)/(z+i)`;
    /// infinity maps to angle 0.
    pub fn from_real(x: f64) -> Self {
        if x.is_infinite() {
            return BoundaryPoint::new(0.0);
        }
        BoundaryPoint::new(-2.0 * 1f64.atan2(x))
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Arc distance, in `[0, π]`.
    pub fn distance(&self, other: &BoundaryPoint) -> f64 {
        let d = (self.angle - other.angle).abs();
        d.min(2.0 * PI - d)
    }
}

/// A determinant-1 matrix with double-double entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreciseMap {
    pub a: TwoFloat,
    pub b: TwoFloat,
    pub c: TwoFloat,
    pub d: TwoFloat,
}

impl PreciseMap {
    /// Trace, summed before rounding so conjugated words with large entries
    /// keep their accuracy.
    pub fn trace(&self) -> f64 {
        f64::from(self.a + self.d)
    }

    pub fn identity() -> Self {
        let (one, zero) = (TwoFloat::from(1.0), TwoFloat::from(0.0));
        PreciseMap {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn mul(&self, o: &PreciseMap) -> PreciseMap {
        PreciseMap {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> PreciseMap {
        PreciseMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn to_f64(&self) -> MoebiusMap {
        MoebiusMap::new(
            f64::from(self.a),
            f64::from(self.b),
            f64::from(self.c),
            f64::from(self.d),
        )
    }

    /// Largest entrywise difference, minimized over the sign ambiguity; the
    /// differences are formed in double-double before rounding.
    pub fn distance_up_to_sign(&self, o: &PreciseMap) -> f64 {
        let norm = |v: [TwoFloat; 4]| v.iter().fold(0.0f64, |m, x| m.max(f64::from(*x).abs()));
        let plus = [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d];
        let minus = [self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d];
        norm(plus).min(norm(minus))
    }
}

/// Double-double quotient with two correction steps; the library's own
/// division is only accurate to about `1e-17`.
fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q0 = a.hi() / b.hi();
    let r = a - b * TwoFloat::from(q0);
    let q1 = r.hi() / b.hi();
    let r = r - b * TwoFloat::from(q1);
    let q2 = r.hi() / b.hi();
    TwoFloat::new_add(q0, q1) + TwoFloat::from(q2)
}

/// `(sin, cos)` of `π·num/den` for even `den`. The quadrant is removed with
/// exact integer arithmetic and the remaining angle, below `π/2`, goes
/// through the Taylor series; the library's own `sin`/`cos` lose accuracy
/// away from zero.
fn sin_cos_pi(num: i64, den: i64) -> (TwoFloat, TwoFloat) {
    assert!(
        den > 0 && den % 2 == 0,
        "denominator must be positive and even"
    );
    let half = den / 2;
    let r = num.rem_euclid(2 * den);
    let (quadrant, rest) = (r / half, r % half);
    let t = dd_div(
        twofloat::consts::PI * TwoFloat::from(rest as f64),
        TwoFloat::from(den as f64),
    );
    let t2 = t * t;
    let (mut sin, mut cos) = (TwoFloat::from(0.0), TwoFloat::from(0.0));
    let (mut s_term, mut c_term) = (t, TwoFloat::from(1.0));
    for k in 0..30 {
        sin += s_term;
        cos += c_term;
        let k = k as f64;
        s_term = -dd_div(
            s_term * t2,
            TwoFloat::from((2.0 * k + 2.0) * (2.0 * k + 3.0)),
        );
        c_term = -dd_div(
            c_term * t2,
            TwoFloat::from((2.0 * k + 1.0) * (2.0 * k + 2.0)),
        );
    }
    match quadrant {
        0 => (sin, cos),
        1 => (cos, -sin),
        2 => (-sin, -cos),
        _ => (-cos, sin),
    }
}

/// `M^power`: rotation by `power·(2g-1)π/4g`.
fn rotation(g: Genus, power: i64) -> PreciseMap {
    let gg = g.get() as i64;
    let (s, c) = sin_cos_pi(power * (2 * gg - 1), 4 * gg);
    PreciseMap {
        a: c,
        b: s,
        c: -s,
        d: c,
    }
}

fn precise_stretch_factor(g: Genus) -> TwoFloat {
    let gg = g.get() as i64;
    let (s4, c4) = sin_cos_pi(1, 4 * gg);
    let (_, c2) = sin_cos_pi(1, 2 * gg);
    dd_div(c4 + c2.sqrt(), s4)
}

/// `λ = (cos(π/4g) + sqrt(cos(π/2g))) / sin(π/4g)`.
pub fn stretch_factor(g: Genus) -> f64 {
    f64::from(precise_stretch_factor(g))
}

fn precise_q(g: Genus) -> PreciseMap {
    let lambda = precise_stretch_factor(g);
    PreciseMap {
        a: lambda,
        b: TwoFloat::from(0.0),
        c: TwoFloat::from(0.0),
        d: dd_div(TwoFloat::from(1.0), lambda),
    }
}

/// `Q = diag(λ, 1/λ)`.
pub fn q_matrix(g: Genus) -> MoebiusMap {
    precise_q(g).to_f64()
}

/// `δ_j = M^{-(j-1)} Q M^{j-1}` in double-double. Panics unless
/// `1 <= j <= 2g`.
pub fn precise_generator_matrix(g: Genus, j: u32) -> PreciseMap {
    assert!(
        (1..=g.generators()).contains(&j),
        "generator index {j} outside 1..={}",
        g.generators()
    );
    let k = j as i64 - 1;
    rotation(g, -k).mul(&precise_q(g)).mul(&rotation(g, k))
}

pub fn generator_matrix(g: Genus, j: u32) -> MoebiusMap {
    precise_generator_matrix(g, j).to_f64()
}

fn precise_letter_matrix(g: Genus, l: Letter) -> PreciseMap {
    let m = precise_generator_matrix(g, l.index());
    if l.is_inverse() {
        m.inverse()
    } else {
        m
    }
}

pub fn letter_matrix(g: Genus, l: Letter) -> MoebiusMap {
    precise_letter_matrix(g, l).to_f64()
}

/// `δ_{w_m} ⋯ δ_{w_1}` in double-double; the identity for the empty word.
pub fn precise_word_matrix(w: &Word) -> PreciseMap {
    let g = w.genus();
    w.letters().iter().fold(PreciseMap::identity(), |acc, &l| {
        precise_letter_matrix(g, l).mul(&acc)
    })
}

/// `δ_{w_m} ⋯ δ_{w_1}`, rounded to `f64`.
pub fn word_matrix(w: &Word) -> MoebiusMap {
    precise_word_matrix(w).to_f64()
}

/// Entrywise distance up to sign between the matrices of two words,
/// computed before rounding to `f64`.
pub fn word_matrix_distance(a: &Word, b: &Word) -> f64 {
    precise_word_matrix(a).distance_up_to_sign(&precise_word_matrix(b))
}

/// Boundary fixed points of a hyperbolic element as `(expanding, shrinking)`.
///
/// The shrinking point is the one where the derivative of
/// `z -> (az+b)/(cz+d)` exceeds 1 in modulus; with matrices acting through
/// their inverse, that is the attracting end of the translation.
pub fn axis_endpoints_disk(m: &MoebiusMap) -> Result<(BoundaryPoint, BoundaryPoint)> {
    if !m.is_hyperbolic() {
        return Err(Error::NotHyperbolic(m.trace().abs()));
    }
    let m = m.normalized();
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    // roots of c x^2 + (d - a) x - b = 0, in the cancellation-free form
    let disc = ((a + d) * (a + d) - 4.0).sqrt();
    let bb = d - a;
    let qq = -0.5 * (bb + bb.signum() * disc);
    let x1 = if c == 0.0 { f64::INFINITY } else { qq / c };
    let x2 = -b / qq;
    // f'(x) = 1/(cx+d)^2; the two multipliers are reciprocal
    let mult2 = 1.0 / (d - b * c / qq).powi(2);
    let (p1, p2) = (BoundaryPoint::from_real(x1), BoundaryPoint::from_real(x2));
    if mult2 > 1.0 {
        Ok((p1, p2))
    } else {
        Ok((p2, p1))
    }
}

/// Angle of the shrinking endpoint of `c_j^{±1}` predicted by the fixed-point
/// formula `T(c_j) = (-1)^j e^{i(j-1)π/2g}`, `T(c_j^-1) = -T(c_j)`.
pub fn predicted_endpoint(g: Genus, l: Letter) -> BoundaryPoint {
    let j = l.index() as f64;
    let gf = g.get() as f64;
    let mut angle = (j - 1.0) * PI / (2.0 * gf);
    if l.index() % 2 == 1 {
        angle += PI;
    }
    if l.is_inverse() {
        angle += PI;
    }
    BoundaryPoint::new(angle)
}

/// `2 ln(cos(π/4g) + sqrt(cos(π/2g))) - 2 ln(sin(π/4g))`.
pub fn translation_length(g: Genus) -> f64 {
    let gf = g.get() as f64;
    2.0 * ((PI / (4.0 * gf)).cos() + (PI / (2.0 * gf)).cos().sqrt()).ln()
        - 2.0 * (PI / (4.0 * gf)).sin().ln()
}

/// Hyperbolic distance from `i` to `Q(i) = λ²i`, integrating the metric
/// `|dz|/Im z` along the imaginary axis with composite Simpson's rule.
pub fn integrated_translation_length(g: Genus, panels: usize) -> f64 {
    let panels = panels.max(2) & !1;
    let top = stretch_factor(g).powi(2);
    let h = (top - 1.0) / panels as f64;
    let f = |t: f64| 1.0 / t;
    let mut sum = f(1.0) + f(top);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(1.0 + i as f64 * h);
    }
    sum * h / 3.0
}

/// Hyperbolic distance between two points of the upper half-plane.
pub fn half_plane_distance(z: (f64, f64), w: (f64, f64)) -> f64 {
    let dx = z.0 - w.0;
    let dy = z.1 - w.1;
    (1.0 + (dx * dx + dy * dy) / (2.0 * z.1 * w.1)).acosh()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperbolicReport {
    pub genus: Genus,
    pub tolerance: f64,
    pub determinant_max_error: f64,
    pub fixed_point_max_error: f64,
    /// Largest gap between a generator's circle position and its shrinking
    /// endpoint; ties the integer positions to the geometry.
    pub circle_position_max_error: f64,
    pub relation_error: f64,
    pub translation_length: f64,
    pub translation_length_integrated: f64,
    pub translation_length_error: f64,
    pub failures: Vec<String>,
}

impl HyperbolicReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks generator fixed points, the defining relation and the
/// translation length for genus `g`, each against `tol`.
pub fn verify_hyperbolic(g: Genus, tol: f64) -> HyperbolicReport {
    let n = g.generators();
    let mut det_err = 0.0f64;
    let mut fp_err = 0.0f64;
    let mut pos_err = 0.0f64;
    let mut failures = Vec::new();
    for j in 1..=n {
        let m = generator_matrix(g, j);
        det_err = det_err.max((m.det() - 1.0).abs());
        match axis_endpoints_disk(&m) {
            Ok((expanding, shrinking)) => {
                let fwd = predicted_endpoint(g, Letter::gen(j));
                let back = predicted_endpoint(g, Letter::inv(j));
                fp_err = fp_err
                    .max(shrinking.distance(&fwd))
                    .max(expanding.distance(&back));
                let pos = vartheta(Letter::gen(j), g).angle();
                pos_err = pos_err.max(shrinking.distance(&BoundaryPoint::new(pos)));
            }
            Err(e) => failures.push(format!("generator {j}: {e}")),
        }
    }
    let forward = Word::new(g, (1..=n).map(Letter::gen).collect()).expect("in range");
    let backward = Word::new(g, (1..=n).rev().map(Letter::gen).collect()).expect("in range");
    let relation_error = word_matrix_distance(&forward, &backward);

    let closed = translation_length(g);
    let integrated = integrated_translation_length(g, 200_000);
    let lambda2 = stretch_factor(g).powi(2);
    let direct = half_plane_distance((0.0, 1.0), (0.0, lambda2));
    let tl_err = (closed - integrated).abs().max((closed - direct).abs());

    for (name, err) in [
        ("determinant", det_err),
        ("fixed points", fp_err),
        ("circle positions", pos_err),
        ("relation", relation_error),
        ("translation length", tl_err),
    ] {
        if err.is_nan() || err > tol {
            failures.push(format!("{name}: error {err:e} exceeds {tol:e}"));
        }
    }
    HyperbolicReport {
        genus: g,
        tolerance: tol,
        determinant_max_error: det_err,
        fixed_point_max_error: fp_err,
        circle_position_max_error: pos_err,
        relation_error,
        translation_length: closed,
        translation_length_integrated: integrated,
        translation_length_error: tl_err,
        failures,
    }
}

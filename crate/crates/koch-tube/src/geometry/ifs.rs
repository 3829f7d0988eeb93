//! The two-map similarity system of the Koch curve and queries on its
//! attractor: distance, ε-closeness and membership in the region under it.
//!
//! The hull triangle `T = (0, 1, ρ)` satisfies `f_i(T) ⊂ T`, which makes it a
//! pruning region for every branch of the IFS tree.

use super::RHO;
use num_complex::Complex64;

/// `z ↦ a·z + b`, or `z ↦ a·conj(z) + b` when `flip` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub a: Complex64,
    pub b: Complex64,
    pub flip: bool,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        flip: false,
    };

    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let z = if self.flip { z.conj() } else { z };
        self.a * z + self.b
    }

    /// `self ∘ inner`.
    #[inline]
    pub fn compose(&self, inner: &Similarity) -> Similarity {
        if self.flip {
            Similarity {
                a: self.a * inner.a.conj(),
                b: self.a * inner.b.conj() + self.b,
                flip: !inner.flip,
            }
        } else {
            Similarity {
                a: self.a * inner.a,
                b: self.a * inner.b + self.b,
                flip: inner.flip,
            }
        }
    }

    pub fn inverse(&self) -> Similarity {
        let ainv = 1.0 / self.a;
        if self.flip {
            // z = conj((w - b)/a)
            Similarity {
                a: ainv.conj(),
                b: -(self.b * ainv).conj(),
                flip: true,
            }
        } else {
            Similarity {
                a: ainv,
                b: -self.b * ainv,
                flip: false,
            }
        }
    }

    #[inline]
    pub fn ratio(&self) -> f64 {
        self.a.norm()
    }

    /// Image of the hull triangle, as `(S(0), S(1), S(ρ))`.
    #[inline]
    pub fn hull(&self) -> [Complex64; 3] {
        [self.b, self.a + self.b, self.apply(RHO)]
    }
}

/// `f1(z) = ρ conj(z)`.
pub const F1: Similarity = Similarity {
    a: RHO,
    b: Complex64::new(0.0, 0.0),
    flip: true,
};

/// `f2(z) = (1-ρ) conj(z) + ρ`.
pub const F2: Similarity = Similarity {
    a: Complex64::new(1.0 - RHO.re, -RHO.im),
    b: RHO,
    flip: true,
};

#[inline]
fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

#[inline]
fn seg_dist2(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let ap = p - a;
    let l2 = ab.norm_sqr();
    let t = if l2 > 0.0 {
        ((ap.re * ab.re + ap.im * ab.im) / l2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (ap - ab * t).norm_sqr()
}

/// Closed-triangle containment, either orientation.
#[inline]
pub fn in_triangle(p: Complex64, t: &[Complex64; 3]) -> bool {
    let d1 = cross(t[1] - t[0], p - t[0]);
    let d2 = cross(t[2] - t[1], p - t[1]);
    let d3 = cross(t[0] - t[2], p - t[2]);
    let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(neg && pos)
}

/// Euclidean distance from p to a filled triangle.
#[inline]
pub fn triangle_distance(p: Complex64, t: &[Complex64; 3]) -> f64 {
    if in_triangle(p, t) {
        return 0.0;
    }
    seg_dist2(p, t[0], t[1])
        .min(seg_dist2(p, t[1], t[2]))
        .min(seg_dist2(p, t[2], t[0]))
        .sqrt()
}

const STACK: usize = 160;
const MAX_DEPTH: usize = 150;

struct Stack {
    items: [(Similarity, f64, usize); STACK],
    len: usize,
}

impl Stack {
    fn new() -> Self {
        Self {
            items: [(Similarity::IDENTITY, 0.0, 0); STACK],
            len: 0,
        }
    }
    #[inline]
    fn push(&mut self, s: Similarity, lb: f64, depth: usize) {
        self.items[self.len] = (s, lb, depth);
        self.len += 1;
    }
    #[inline]
    fn pop(&mut self) -> Option<(Similarity, f64, usize)> {
        if self.len == 0 {
            None
        } else {
            self.len -= 1;
            Some(self.items[self.len])
        }
    }
}

/// Distance from p to `root(K)` within `tol`.
///
/// The returned value is the distance to an actual point of the attractor, so
/// it never undershoots; every discarded branch is at least `best - tol` away.
pub fn distance_to_image(root: &Similarity, p: Complex64, tol: f64) -> f64 {
    let tol = tol.max(1e-15);
    let h = root.hull();
    let mut best = (p - h[0]).norm().min((p - h[1]).norm());
    let mut st = Stack::new();
    st.push(*root, triangle_distance(p, &h), 0);
    while let Some((s, lb, depth)) = st.pop() {
        if lb >= best - tol {
            continue;
        }
        best = best.min((p - s.apply(RHO)).norm());
        if s.ratio() <= tol || depth >= MAX_DEPTH {
            continue;
        }
        let c1 = s.compose(&F1);
        let c2 = s.compose(&F2);
        let l1 = triangle_distance(p, &c1.hull());
        let l2 = triangle_distance(p, &c2.hull());
        if l1 <= l2 {
            st.push(c2, l2, depth + 1);
            st.push(c1, l1, depth + 1);
        } else {
            st.push(c1, l1, depth + 1);
            st.push(c2, l2, depth + 1);
        }
    }
    best
}

/// Decides whether `dist(p, root(K)) < r`.
///
/// Returns `None` when the answer depends on branches finer than `tol`.
pub fn within_image(root: &Similarity, p: Complex64, r: f64, tol: f64) -> Option<bool> {
    let h = root.hull();
    let lb = triangle_distance(p, &h);
    if lb >= r {
        return Some(false);
    }
    if (p - h[0]).norm() < r || (p - h[1]).norm() < r {
        return Some(true);
    }
    let tol = tol.max(1e-15);
    let mut unresolved = false;
    let mut st = Stack::new();
    st.push(*root, lb, 0);
    while let Some((s, _, depth)) = st.pop() {
        if (p - s.apply(RHO)).norm() < r {
            return Some(true);
        }
        if s.ratio() <= tol || depth >= MAX_DEPTH {
            unresolved = true;
            continue;
        }
        let c1 = s.compose(&F1);
        let c2 = s.compose(&F2);
        let l1 = triangle_distance(p, &c1.hull());
        let l2 = triangle_distance(p, &c2.hull());
        match (l1 < r, l2 < r) {
            (true, true) if l1 > l2 => {
                st.push(c1, l1, depth + 1);
                st.push(c2, l2, depth + 1);
            }
            (true, true) => {
                st.push(c2, l2, depth + 1);
                st.push(c1, l1, depth + 1);
            }
            (true, false) => st.push(c1, l1, depth + 1),
            (false, true) => st.push(c2, l2, depth + 1),
            (false, false) => {}
        }
    }
    if unresolved {
        None
    } else {
        Some(false)
    }
}

/// Distance from p to the Koch curve K within `tol`.
pub fn distance_to_k(p: Complex64, tol: f64) -> f64 {
    distance_to_image(&Similarity::IDENTITY, p, tol)
}

/// Whether z lies in the region R bounded by the base `[0, 1]` and K.
///
/// The hull splits into `f1(T)`, `f2(T)` and the middle triangle
/// `(1/3, 2/3, ρ)`, which lies in R. Inside `f_i(T)` the region R is the
/// complement of `f_i(R)`, so the query pulls z back and flips parity until
/// it lands in a middle triangle or leaves the hull. Returns `None` after
/// `max_depth` pull-backs.
pub fn region_contains(z: Complex64, max_depth: usize) -> Option<bool> {
    const T: [Complex64; 3] = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        RHO,
    ];
    const T1: [Complex64; 3] = [Complex64::new(0.0, 0.0), RHO, Complex64::new(1.0 / 3.0, 0.0)];
    const T2: [Complex64; 3] = [RHO, Complex64::new(1.0, 0.0), Complex64::new(2.0 / 3.0, 0.0)];
    let one_minus_rho = Complex64::new(1.0 - RHO.re, -RHO.im);
    let mut z = z;
    let mut flipped = false;
    if !in_triangle(z, &T) {
        return Some(false);
    }
    for _ in 0..max_depth {
        if in_triangle(z, &T1) {
            z = (z / RHO).conj();
        } else if in_triangle(z, &T2) {
            z = ((z - RHO) / one_minus_rho).conj();
        } else {
            return Some(!flipped);
        }
        flipped = !flipped;
        if !in_triangle(z, &T) {
            return Some(flipped);
        }
    }
    None
}
